#include <algorithm>
#include <numeric>
#include <sstream>

#include "chcv/linalg.hpp"

namespace chcv {

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// LinearTerm

LinearTerm& LinearTerm::operator+=(const LinearTerm& o) {
  for (const auto& [v, c] : o.coeffs_) {
    Rational& slot = coeffs_[v];
    slot += c;
    if (sgn(slot) == 0) coeffs_.erase(v);
  }
  constant_ += o.constant_;
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& o) { return *this += -o; }

LinearTerm& LinearTerm::operator*=(const Rational& k) {
  if (sgn(k) == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

// ---------------------------------------------------------------------------
// LinearConstraint

LinearConstraint::LinearConstraint(std::map<Var, Rational> coeffs, Rel rel, Rational bound)
    : coeffs_(std::move(coeffs)), bound_(std::move(bound)), rel_(rel) {
  std::erase_if(coeffs_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

LinearConstraint LinearConstraint::make(const LinearTerm& lhs, RelOp op, const LinearTerm& rhs) {
  LinearTerm d = lhs - rhs;  // d OP 0
  bool flip = op == RelOp::Ge || op == RelOp::Gt;
  if (flip) d = -d;
  Rel r = Rel::Le;
  switch (op) {
    case RelOp::Le:
    case RelOp::Ge: r = Rel::Le; break;
    case RelOp::Lt:
    case RelOp::Gt: r = Rel::Lt; break;
    case RelOp::Eq: r = Rel::Eq; break;
  }
  return LinearConstraint(d.coeffs(), r, -d.constant());
}

LinearConstraint LinearConstraint::falsum() { return LinearConstraint({}, Rel::Le, -1); }
LinearConstraint LinearConstraint::verum() { return LinearConstraint({}, Rel::Le, 0); }

Rational LinearConstraint::coeff(const Var& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

VarSet LinearConstraint::vars() const {
  VarSet s;
  for (const auto& [v, c] : coeffs_) s.insert(v);
  return s;
}

bool LinearConstraint::is_trivially_true() const {
  if (!coeffs_.empty()) return false;
  switch (rel_) {
    case Rel::Le: return sgn(bound_) >= 0;
    case Rel::Lt: return sgn(bound_) > 0;
    case Rel::Eq: return sgn(bound_) == 0;
  }
  return false;
}

bool LinearConstraint::is_trivially_false() const { return coeffs_.empty() && !is_trivially_true(); }

LinearConstraint LinearConstraint::closure() const {
  return rel_ == Rel::Lt ? with_rel(Rel::Le) : *this;
}

LinearConstraint LinearConstraint::with_rel(Rel r) const {
  LinearConstraint c = *this;
  c.rel_ = r;
  return c;
}

LinearConstraint LinearConstraint::negation() const {
  if (rel_ == Rel::Eq) throw std::logic_error("negation of an equality is a disjunction");
  std::map<Var, Rational> neg;
  for (const auto& [v, c] : coeffs_) neg[v] = -c;
  // not(t <= b) is -t < -b ; not(t < b) is -t <= -b
  return LinearConstraint(std::move(neg), rel_ == Rel::Le ? Rel::Lt : Rel::Le, -bound_);
}

LinearConstraint LinearConstraint::relaxed_negation() const { return negation().closure(); }

std::vector<LinearConstraint> LinearConstraint::as_inequalities() const {
  if (rel_ != Rel::Eq) return {*this};
  std::map<Var, Rational> neg;
  for (const auto& [v, c] : coeffs_) neg[v] = -c;
  return {with_rel(Rel::Le), LinearConstraint(std::move(neg), Rel::Le, -bound_)};
}

LinearConstraint LinearConstraint::normalized() const {
  if (coeffs_.empty()) {
    // Canonical trivial forms.
    return is_trivially_true() ? verum() : falsum();
  }
  // Multiply by lcm of denominators, divide by gcd of numerators.
  mpz_class l = 1;
  for (const auto& [v, c] : coeffs_) l = lcm(l, mpz_class(c.get_den()));
  l = lcm(l, mpz_class(bound_.get_den()));
  mpz_class g = 0;
  for (const auto& [v, c] : coeffs_) g = gcd(g, mpz_class(c.get_num() * (l / c.get_den())));
  g = gcd(g, mpz_class(bound_.get_num() * (l / bound_.get_den())));
  Rational k = Rational(l) / Rational(g);
  if (rel_ == Rel::Eq && sgn(coeffs_.begin()->second) < 0) k = -k;
  std::map<Var, Rational> out;
  for (const auto& [v, c] : coeffs_) out[v] = c * k;
  return LinearConstraint(std::move(out), rel_, bound_ * k);
}

LinearConstraint LinearConstraint::renamed(const Renaming& r) const {
  std::map<Var, Rational> out;
  for (const auto& [v, c] : coeffs_) {
    auto it = r.find(v);
    out[it == r.end() ? v : it->second] += c;
  }
  return LinearConstraint(std::move(out), rel_, bound_);
}

LinearConstraint LinearConstraint::substituted(const Var& v, const LinearTerm& term) const {
  auto it = coeffs_.find(v);
  if (it == coeffs_.end()) return *this;
  LinearTerm lhs;
  for (const auto& [w, c] : coeffs_) {
    if (w != v) lhs += LinearTerm(w) * c;
  }
  lhs += term * it->second;
  return LinearConstraint(lhs.coeffs(), rel_, bound_ - lhs.constant());
}

bool LinearConstraint::holds_at(const std::map<Var, Rational>& point) const {
  Rational s = 0;
  for (const auto& [v, c] : coeffs_) {
    auto it = point.find(v);
    if (it != point.end()) s += c * it->second;
  }
  switch (rel_) {
    case Rel::Le: return s <= bound_;
    case Rel::Lt: return s < bound_;
    case Rel::Eq: return s == bound_;
  }
  return false;
}

std::strong_ordering operator<=>(const LinearConstraint& a, const LinearConstraint& b) {
  if (a.rel_ != b.rel_) {
    // Equalities first.
    auto rank = [](Rel r) { return r == Rel::Eq ? 0 : r == Rel::Le ? 1 : 2; };
    return rank(a.rel_) <=> rank(b.rel_);
  }
  auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? std::strong_ordering::less
                                                                 : std::strong_ordering::greater;
  }
  if (ia != a.coeffs_.end()) return std::strong_ordering::greater;
  if (ib != b.coeffs_.end()) return std::strong_ordering::less;
  if (a.bound_ == b.bound_) return std::strong_ordering::equal;
  return a.bound_ < b.bound_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

namespace {

void print_coeff_term(std::ostream& os, const Rational& c, const std::string& v, bool first) {
  if (sgn(c) < 0) {
    os << '-';
  } else if (!first) {
    os << '+';
  }
  Rational a = abs(c);
  if (a != 1) os << a.get_str() << '*';
  os << v;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const LinearConstraint& c) {
  if (c.coeffs().empty()) return os << (c.is_trivially_true() ? "true" : "false");
  bool flip = c.rel() != Rel::Eq && sgn(c.coeffs().begin()->second) < 0;
  Rational k = flip ? -1 : 1;
  bool first = true;
  for (const auto& [v, a] : c.coeffs()) {
    print_coeff_term(os, a * k, v.name, first);
    first = false;
  }
  switch (c.rel()) {
    case Rel::Eq: os << '='; break;
    case Rel::Le: os << (flip ? ">=" : "=<"); break;
    case Rel::Lt: os << (flip ? ">" : "<"); break;
  }
  return os << Rational(c.bound() * k).get_str();
}

std::string to_string(const LinearConstraint& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

// ---------------------------------------------------------------------------
// ConstraintSet

ConstraintSet::ConstraintSet(std::initializer_list<LinearConstraint> cs) {
  for (const auto& c : cs) add(c);
}

ConstraintSet::ConstraintSet(std::vector<LinearConstraint> cs) {
  for (auto& c : cs) add(c);
}

void ConstraintSet::add(const LinearConstraint& c) {
  if (std::find(cs_.begin(), cs_.end(), c) == cs_.end()) cs_.push_back(c);
}

void ConstraintSet::add_all(const ConstraintSet& other) {
  for (const auto& c : other) add(c);
}

VarSet ConstraintSet::vars() const {
  VarSet s;
  for (const auto& c : cs_) {
    for (const auto& [v, k] : c.coeffs()) s.insert(v);
  }
  return s;
}

bool ConstraintSet::contains_trivially_false() const {
  return std::any_of(cs_.begin(), cs_.end(), [](const auto& c) { return c.is_trivially_false(); });
}

ConstraintSet ConstraintSet::renamed(const Renaming& r) const {
  ConstraintSet out;
  for (const auto& c : cs_) out.add(c.renamed(r));
  return out;
}

bool ConstraintSet::holds_at(const std::map<Var, Rational>& point) const {
  return std::all_of(cs_.begin(), cs_.end(), [&](const auto& c) { return c.holds_at(point); });
}

std::ostream& operator<<(std::ostream& os, const ConstraintSet& c) {
  if (c.empty()) return os << "true";
  bool first = true;
  for (const auto& k : c) {
    if (!first) os << ", ";
    os << k;
    first = false;
  }
  return os;
}

std::string to_string(const ConstraintSet& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

// ---------------------------------------------------------------------------
// Limits

namespace {
thread_local Limits tl_limits;
}

const Limits& current_limits() { return tl_limits; }

ScopedLimits::ScopedLimits(const Limits& l) : saved_(tl_limits) { tl_limits = l; }
ScopedLimits::~ScopedLimits() { tl_limits = saved_; }

}  // namespace chcv
