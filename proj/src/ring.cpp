#include "specialprimes/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>
#include <utility>

namespace sprimes {

namespace {

Exponent checked_add(Exponent a, Exponent b) {
  std::uint64_t s = std::uint64_t{a} + b;
  if (s > kMaxExponent) throw OverflowError("monomial exponent overflow");
  return static_cast<Exponent>(s);
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Monomial Monomial::from_exponents(const std::vector<Exponent>& exps) {
  if (exps.size() > kMaxVars) throw ContextError("too many variables");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
  return m;
}

Monomial Monomial::variable(std::size_t index, Exponent power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, Exponent value) {
  if (i >= kMaxVars) throw ContextError("variable index out of range");
  if (value > kMaxExponent) throw OverflowError("monomial exponent overflow");
  std::uint64_t d = std::uint64_t{deg_} - exp_[i] + value;
  if (d > kMaxExponent) throw OverflowError("monomial degree overflow");
  exp_[i] = value;
  deg_ = static_cast<std::uint32_t>(d);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = checked_add(exp_[i], o.exp_[i]);
  r.deg_ = checked_add(deg_, o.deg_);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = exp_[i] - o.exp_[i];
  r.deg_ = deg_ - o.deg_;
  return r;
}

Monomial Monomial::scaled(std::uint64_t q) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint64_t v = std::uint64_t{exp_[i]} * q;
    if (v > kMaxExponent) throw OverflowError("exponent overflow in Frobenius power");
    r.exp_[i] = static_cast<Exponent>(v);
  }
  std::uint64_t d = std::uint64_t{deg_} * q;
  if (d > kMaxExponent) throw OverflowError("degree overflow in Frobenius power");
  r.deg_ = static_cast<std::uint32_t>(d);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp_[i] > o.exp_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp_[i] != 0 && o.exp_[i] != 0) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp_[i] = std::max(exp_[i], o.exp_[i]);
    d += r.exp_[i];
  }
  r.deg_ = d;
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp_[i] = std::min(exp_[i], o.exp_[i]);
    d += r.exp_[i];
  }
  r.deg_ = d;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = deg_;
  for (Exponent e : exp_) h = h * 1000003u ^ e;
  return h;
}

MonomialOrder MonomialOrder::lex(std::size_t n) {
  MonomialOrder o;
  o.kind_ = Kind::Lex;
  o.blocks_.assign(n, 1);
  return o;
}

MonomialOrder MonomialOrder::grevlex(std::size_t n) {
  MonomialOrder o;
  o.kind_ = Kind::Grevlex;
  o.blocks_ = {n};
  return o;
}

MonomialOrder MonomialOrder::blocks(std::vector<std::size_t> sizes) {
  MonomialOrder o;
  o.kind_ = Kind::Block;
  sizes.erase(std::remove(sizes.begin(), sizes.end(), std::size_t{0}), sizes.end());
  o.blocks_ = std::move(sizes);
  return o;
}

MonomialOrder MonomialOrder::elimination(std::size_t k, std::size_t n) {
  return blocks({k, n - k});
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::Grevlex: return "grevlex";
    case Kind::Block: break;
  }
  std::string s = "blocks(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(blocks_[i]);
  }
  return s + ")";
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (blocks_.size() == 1) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = blocks_[0]; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
  std::size_t start = 0;
  for (std::size_t len : blocks_) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = start; i < start + len; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = start + len; i-- > start;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    start += len;
  }
  return 0;
}

bool is_prime_number(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

RingPtr Ring::make(std::uint32_t p, std::vector<std::string> names, const std::string& order) {
  std::size_t n = names.size();
  if (order == "grevlex") return make(p, std::move(names), MonomialOrder::grevlex(n));
  if (order == "lex") return make(p, std::move(names), MonomialOrder::lex(n));
  throw ContextError("unknown monomial order '" + order + "'");
}

RingPtr Ring::make(std::uint32_t p, std::vector<std::string> names, MonomialOrder order) {
  if (!is_prime_number(p)) throw MathError("p must be prime");
  if (p >= (1u << 31)) throw MathError("p must fit in 31 bits");
  if (names.size() > kMaxVars)
    throw ContextError("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::set<std::string> seen;
  for (const auto& s : names) {
    if (!valid_identifier(s)) throw ContextError("invalid variable name '" + s + "'");
    if (!seen.insert(s).second) throw ContextError("duplicate variable name '" + s + "'");
  }
  std::size_t total = 0;
  for (std::size_t b : order.block_sizes()) total += b;
  if (total != names.size()) throw ContextError("monomial order does not match variable count");
  return RingPtr(new Ring(p, std::move(names), std::move(order)));
}

Ring::Ring(std::uint32_t p, std::vector<std::string> names, MonomialOrder order)
    : p_(p), names_(std::move(names)), order_(std::move(order)) {}

int Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

bool Ring::same_as(const Ring& o) const {
  return this == &o || (p_ == o.p_ && names_ == o.names_ && order_ == o.order_);
}

Coeff Ring::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Coeff>(r);
}

Coeff Ring::pow(Coeff a, std::uint64_t k) const {
  Coeff r = 1 % p_;
  Coeff b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

Coeff Ring::inv(Coeff a) const {
  if (a % p_ == 0) throw DivisionByZero();
  std::int64_t t = 0, nt = 1, r = p_, nr = a % p_;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return reduce(t);
}

std::uint64_t Ring::frobenius_q(unsigned e) const {
  if (e == 0) throw MathError("Frobenius exponent e must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p_;
    if (q > kMaxExponent) throw OverflowError("p^e exceeds the exponent bound");
  }
  return q;
}

std::string Ring::ring_line() const {
  std::string s = "ring p=" + std::to_string(p_) + " vars=";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) s += ",";
    s += names_[i];
  }
  return s + " order=" + order_.name();
}

void check_same_ring(const Ring& a, const Ring& b) {
  if (!a.same_as(b)) throw ContextError("objects belong to different rings");
}

}  // namespace sprimes
