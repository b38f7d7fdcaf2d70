#include "dbr/polyspace.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dbr/error.hpp"

namespace dbr {

// --- DirichletPolynomial --------------------------------------------------

DirichletPolynomial::DirichletPolynomial(double length_bound) : x_(length_bound) {
  if (!(length_bound >= 1.0)) throw Error(ErrorCode::invalid_argument, "length bound must be >= 1");
}

void DirichletPolynomial::set(std::uint64_t n, Complex a) {
  if (n == 0 || static_cast<double>(n) > x_) {
    throw Error(ErrorCode::index_out_of_range,
                "index " + std::to_string(n) + " outside [1, " + std::to_string(x_) + "]");
  }
  if (a == Complex{}) {
    terms_.erase(n);
  } else {
    terms_[n] = a;
  }
}

Complex DirichletPolynomial::coefficient(std::uint64_t n) const noexcept {
  auto it = terms_.find(n);
  return it == terms_.end() ? Complex{} : it->second;
}

double DirichletPolynomial::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [n, a] : terms_) s += std::abs(a);
  return s;
}

DirichletPolynomial DirichletPolynomial::scaled(Complex factor) const {
  DirichletPolynomial out(x_);
  for (const auto& [n, a] : terms_) out.set(n, a * factor);
  return out;
}

// --- PolydiscPolynomial ---------------------------------------------------

PolydiscPolynomial::PolydiscPolynomial(std::uint32_t dimension) : d_(dimension) {}

void PolydiscPolynomial::set(const MultiIndex& alpha, Complex c) {
  if (alpha.max_coordinate() > d_) {
    throw Error(ErrorCode::invalid_argument, "monomial uses coordinate " + std::to_string(alpha.max_coordinate()) +
                                                 " in dimension " + std::to_string(d_));
  }
  if (c == Complex{}) {
    terms_.erase(alpha);
  } else {
    terms_[alpha] = c;
  }
}

void PolydiscPolynomial::add(const MultiIndex& alpha, Complex c) { set(alpha, coefficient(alpha) + c); }

Complex PolydiscPolynomial::coefficient(const MultiIndex& alpha) const noexcept {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

double PolydiscPolynomial::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) s += std::abs(c);
  return s;
}

std::uint32_t PolydiscPolynomial::max_degree() const noexcept {
  std::uint32_t m = 0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, alpha.degree());
  return m;
}

std::uint32_t PolydiscPolynomial::max_coordinate() const noexcept {
  std::uint32_t m = 0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, alpha.max_coordinate());
  return m;
}

PolydiscPolynomial PolydiscPolynomial::scaled(Complex factor) const {
  PolydiscPolynomial out(d_);
  for (const auto& [alpha, c] : terms_) out.set(alpha, c * factor);
  return out;
}

PolydiscPolynomial PolydiscPolynomial::with_dimension(std::uint32_t dimension) const {
  PolydiscPolynomial out(dimension);
  for (const auto& [alpha, c] : terms_) out.set(alpha, c);
  return out;
}

// --- IndexSet --------------------------------------------------------------

IndexSet::IndexSet(std::vector<std::uint64_t> members, std::string label)
    : members_(std::move(members)), label_(std::move(label)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.front() == 0) {
    throw Error(ErrorCode::invalid_argument, "index sets contain positive integers only");
  }
}

bool IndexSet::contains(std::uint64_t n) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), n);
}

// --- lift / push ------------------------------------------------------------

PolydiscPolynomial lift(const DirichletPolynomial& D, const PrimeTable& table) {
  std::uint64_t dim = 0;
  try {
    dim = prime_pi(D.length_bound(), table);
  } catch (const Error& e) {
    throw Error(ErrorCode::lift_failure, e.what());
  }
  PolydiscPolynomial P(static_cast<std::uint32_t>(dim));
  for (const auto& [n, a] : D.terms()) {
    try {
      P.set(bohr_decode(n, table), a);
    } catch (const Error& e) {
      throw Error(ErrorCode::lift_failure, "cannot lift index " + std::to_string(n) + ": " + e.what());
    }
  }
  return P;
}

DirichletPolynomial push(const PolydiscPolynomial& P, double x, const PrimeTable& table) {
  DirichletPolynomial D(x);
  std::vector<std::string> offenders;
  for (const auto& [alpha, c] : P.terms()) {
    std::uint64_t n = 0;
    try {
      n = bohr_encode(alpha, table);
    } catch (const Error& e) {
      offenders.emplace_back(std::string("(overflow: ") + e.what() + ")");
      continue;
    }
    if (static_cast<double>(n) > x) {
      offenders.push_back(std::to_string(n));
      continue;
    }
    D.set(n, c);
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "monomials beyond x = " << x << ":";
    for (const auto& o : offenders) msg << ' ' << o;
    throw Error(ErrorCode::index_out_of_range, msg.str());
  }
  return D;
}

PolydiscPolynomial homogeneous_part(const PolydiscPolynomial& P, std::uint32_t m) {
  PolydiscPolynomial out(P.dimension());
  for (const auto& [alpha, c] : P.terms()) {
    if (alpha.degree() == m) out.set(alpha, c);
  }
  return out;
}

// --- index sets -------------------------------------------------------------

IndexSet kernel_dim(const IndexSet& J, std::uint32_t n, const PrimeTable& table) {
  const std::uint64_t pn = n == 0 ? 1 : table.nth(n);
  std::vector<std::uint64_t> keep;
  for (std::uint64_t k : J.members()) {
    if (factorize(k).largest_prime() <= pn) keep.push_back(k);
  }
  return IndexSet(std::move(keep), J.label() + "(" + std::to_string(n) + ")");
}

IndexSet kernel_hom(const IndexSet& J, std::uint32_t m) {
  std::vector<std::uint64_t> keep;
  for (std::uint64_t k : J.members()) {
    if (big_omega(k) == m) keep.push_back(k);
  }
  return IndexSet(std::move(keep), J.label() + "[" + std::to_string(m) + "]");
}

namespace {

void products_below(const std::vector<std::uint64_t>& primes, std::size_t from, std::uint64_t value,
                    std::uint64_t cap, std::vector<std::uint64_t>& out) {
  out.push_back(value);
  for (std::size_t i = from; i < primes.size(); ++i) {
    if (value > cap / primes[i]) continue;
    products_below(primes, i, value * primes[i], cap, out);
  }
}

}  // namespace

IndexSet block_index_set(const std::vector<std::vector<std::uint64_t>>& blocks, double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::invalid_argument, "block cap must be >= 1");
  if (x > static_cast<double>(kSieveCap)) throw Error(ErrorCode::resource_limit, "block cap exceeds 2^40");
  const auto cap = static_cast<std::uint64_t>(std::floor(x));

  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> members{1};
  for (const auto& block : blocks) {
    std::vector<std::uint64_t> primes = block;
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const auto f = factorize(primes[i] == 0 ? 1 : primes[i]);
      if (primes[i] < 2 || f.pairs.size() != 1 || f.pairs[0].second != 1) {
        throw Error(ErrorCode::invalid_argument, std::to_string(primes[i]) + " is not a prime");
      }
      if ((i > 0 && primes[i] == primes[i - 1]) || !seen.insert(primes[i]).second) {
        throw Error(ErrorCode::invalid_argument, "blocks are not disjoint at prime " + std::to_string(primes[i]));
      }
    }
    products_below(primes, 0, 1, cap, members);
  }
  std::ostringstream label;
  label << "blocks<=" << x;
  return IndexSet(std::move(members), label.str());
}

IndexSet enumerate_range(double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::invalid_argument, "range needs x >= 1");
  if (x > static_cast<double>(kSieveCap)) throw Error(ErrorCode::resource_limit, "range exceeds 2^40");
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  std::vector<std::uint64_t> members(top);
  for (std::uint64_t i = 0; i < top; ++i) members[i] = i + 1;
  return IndexSet(std::move(members), "range:1.." + std::to_string(top));
}

std::vector<MultiIndex> decode_set(const IndexSet& J, const PrimeTable& table) {
  std::vector<MultiIndex> out;
  out.reserve(J.size());
  for (std::uint64_t n : J.members()) out.push_back(bohr_decode(n, table));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> homogeneity_degrees(const IndexSet& J) {
  std::set<std::uint32_t> degrees;
  for (std::uint64_t n : J.members()) degrees.insert(big_omega(n));
  return {degrees.begin(), degrees.end()};
}

}  // namespace dbr
