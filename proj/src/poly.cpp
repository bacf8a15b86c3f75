#include "specialprimes/poly.hpp"

#include <algorithm>
#include <cctype>

namespace sprimes {

namespace {

const Ring& ring_of(const Poly& a, const Poly& b) {
  if (!a.ring() || !b.ring()) throw ContextError("polynomial without a ring");
  check_same_ring(*a.ring(), *b.ring());
  return *a.ring();
}

}  // namespace

Poly Poly::constant(RingPtr ring, std::int64_t c) {
  Coeff v = ring->reduce(c);
  Poly r(std::move(ring));
  if (v) r.terms_.push_back({Monomial{}, v});
  return r;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw ContextError("variable index out of range");
  Poly r(std::move(ring));
  r.terms_.push_back({Monomial::variable(index), 1});
  return r;
}

Poly Poly::term(RingPtr ring, const Monomial& m, Coeff c) {
  Coeff v = c % ring->characteristic();
  Poly r(std::move(ring));
  if (v) r.terms_.push_back({m, v});
  return r;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  const MonomialOrder& ord = ring->order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.mon, b.mon) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    Coeff c = t.coeff % ring->characteristic();
    if (!out.empty() && out.back().mon == t.mon) {
      out.back().coeff = ring->add(out.back().coeff, c);
      if (out.back().coeff == 0) out.pop_back();
    } else if (c != 0) {
      out.push_back({t.mon, c});
    }
  }
  Poly r(std::move(ring));
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Poly r(std::move(ring));
  r.terms_ = std::move(terms);
  return r;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mon.degree());
  return d;
}

Exponent Poly::degree_in(std::size_t var) const {
  Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mon[var]);
  return d;
}

std::vector<std::size_t> Poly::support() const {
  std::vector<std::size_t> s;
  if (!ring_) return s;
  for (std::size_t i = 0; i < ring_->nvars(); ++i)
    if (degree_in(i) > 0) s.push_back(i);
  return s;
}

Poly Poly::operator+(const Poly& o) const {
  const Ring& R = ring_of(*this, o);
  const MonomialOrder& ord = R.order();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ord.compare(terms_[i].mon, o.terms_[j].mon);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Coeff s = R.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s) out.push_back({terms_[i].mon, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), terms_.begin() + i, terms_.end());
  out.insert(out.end(), o.terms_.begin() + j, o.terms_.end());
  return from_sorted_terms(ring_, std::move(out));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = ring_->neg(t.coeff);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  ring_of(*this, o);
  if (is_zero() || o.is_zero()) return Poly(ring_);
  if (o.terms_.size() == 1) return times_term(o.terms_[0].mon, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times_term(terms_[0].mon, terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.mon * b.mon, ring_->mul(a.coeff, b.coeff)});
  return from_terms(ring_, std::move(prod));
}

Poly Poly::scaled(Coeff c) const {
  c %= ring_->characteristic();
  if (c == 0) return Poly(ring_);
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = ring_->mul(t.coeff, c);
  return r;
}

Poly Poly::times_term(const Monomial& m, Coeff c) const {
  c %= ring_->characteristic();
  if (c == 0) return Poly(ring_);
  Poly r = *this;
  for (auto& t : r.terms_) {
    t.mon = t.mon * m;
    t.coeff = ring_->mul(t.coeff, c);
  }
  return r;
}

Poly Poly::pow(std::uint64_t k) const {
  Poly r = constant(ring_, 1);
  Poly b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || lead_coeff() == 1) return *this;
  return scaled(ring_->inv(lead_coeff()));
}

Poly Poly::frobenius(unsigned e) const {
  std::uint64_t q = ring_->frobenius_q(e);
  Poly r = *this;
  for (auto& t : r.terms_) t.mon = t.mon.scaled(q);
  // Scaling exponents by q preserves every block-degree comparison, so the
  // term order is unchanged.
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Exponent e = t.mon[var];
    Coeff c = ring_->mul(t.coeff, e % ring_->characteristic());
    if (!c) continue;
    Monomial m = t.mon;
    m.set(var, e - 1);
    out.push_back({m, c});
  }
  return from_terms(ring_, std::move(out));
}

std::optional<Poly> Poly::divide_exact(const Poly& g) const {
  ring_of(*this, g);
  if (g.is_zero()) throw DivisionByZero();
  const Ring& R = *ring_;
  Coeff linv = R.inv(g.lead_coeff());
  Poly rem = *this;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    if (!g.lead_monomial().divides(lt.mon)) return std::nullopt;
    Monomial m = lt.mon / g.lead_monomial();
    Coeff c = R.mul(lt.coeff, linv);
    quot.push_back({m, c});
    rem = rem - g.times_term(m, c);
  }
  return from_sorted_terms(ring_, std::move(quot));
}

Poly Poly::mapped(RingPtr target, const std::vector<std::size_t>& var_map) const {
  if (target->characteristic() != ring_->characteristic())
    throw ContextError("cannot map between different characteristics");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (t.mon[i]) m.set(var_map.at(i), m[var_map.at(i)] + t.mon[i]);
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    if (k) s += '+';
    bool wrote = false;
    if (t.coeff != 1 || t.mon.is_one()) {
      s += std::to_string(t.coeff);
      wrote = true;
    }
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!t.mon[i]) continue;
      if (wrote) s += '*';
      s += ring_->name(i);
      if (t.mon[i] != 1) s += '^' + std::to_string(t.mon[i]);
      wrote = true;
    }
  }
  return s;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (ring_ && o.ring_ && !ring_->same_as(*o.ring_)) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mon != o.terms_[i].mon) return false;
  return true;
}

int compare_polys(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero() ? 0 : (a.is_zero() ? -1 : 1);
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
  const MonomialOrder& ord = a.ring()->order();
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = ord.compare(a.terms()[i].mon, b.terms()[i].mon);
    if (c) return c;
    if (a.terms()[i].coeff != b.terms()[i].coeff) return a.terms()[i].coeff < b.terms()[i].coeff ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos_), 0, static_cast<int>(pos_) + 1);
  }

  Poly expr() {
    bool negate = eat('-');
    if (!negate) eat('+');
    Poly acc = product();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+')) {
        acc = acc + product();
      } else if (eat('-')) {
        acc = acc - product();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly product() {
    Poly acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  Poly power() {
    Poly base = primary();
    if (eat('^')) {
      skip_ws();
      std::uint64_t k = integer();
      return base.pow(k);
    }
    return base;
  }

  std::uint64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > (1ull << 40)) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of polynomial");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = integer();
      return Poly::constant(ring_, static_cast<std::int64_t>(v % ring_->characteristic()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      int idx = ring_->index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Poly::variable(ring_, static_cast<std::size_t>(idx));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

}  // namespace sprimes
