#include <iostream>

#include "dbr/app.hpp"

int main(int argc, char** argv) { return dbr::app::run(argc, argv, std::cout, std::cerr); }
