#pragma once

// Exact linear rational arithmetic: constraints, satisfiability, entailment,
// Fourier-Motzkin projection, simplification and Farkas refutations.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chcv {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// A named variable. Ordering is lexicographic on the name.
struct Var {
  std::string name;

  Var() = default;
  explicit Var(std::string n) : name(std::move(n)) {}

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var& a, const Var& b) { return a.name <=> b.name; }
};

using VarSet = std::set<Var>;
using Renaming = std::map<Var, Var>;

/// Thrown when an internal size cap (FM growth, PS fan-out, iteration count)
/// is exceeded. The driver folds it into an "unknown" verdict.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Affine expression sum(c_i * x_i) + constant. Used to build constraints.
class LinearTerm {
 public:
  LinearTerm() = default;
  LinearTerm(Rational constant) : constant_(std::move(constant)) {}  // NOLINT
  LinearTerm(const Var& v) { coeffs_[v] = 1; }                        // NOLINT

  const std::map<Var, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  bool is_constant() const { return coeffs_.empty(); }

  LinearTerm& operator+=(const LinearTerm& o);
  LinearTerm& operator-=(const LinearTerm& o);
  LinearTerm& operator*=(const Rational& k);
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, const Rational& k) { return a *= k; }
  friend LinearTerm operator*(const Rational& k, LinearTerm a) { return a *= k; }
  LinearTerm operator-() const { return *this * Rational(-1); }

 private:
  std::map<Var, Rational> coeffs_;
  Rational constant_{0};
};

enum class Rel { Le, Lt, Eq };

/// Relation as written in source text; Ge/Gt are flipped at construction.
enum class RelOp { Le, Lt, Eq, Ge, Gt };

/// sum(coeffs) REL bound with REL in {<=, <, =}. Zero coefficients are never
/// stored.
class LinearConstraint {
 public:
  LinearConstraint() = default;
  LinearConstraint(std::map<Var, Rational> coeffs, Rel rel, Rational bound);

  /// lhs OP rhs
  static LinearConstraint make(const LinearTerm& lhs, RelOp op, const LinearTerm& rhs);
  static LinearConstraint falsum();  // 0 <= -1
  static LinearConstraint verum();   // 0 <= 0

  const std::map<Var, Rational>& coeffs() const { return coeffs_; }
  const Rational& bound() const { return bound_; }
  Rel rel() const { return rel_; }
  bool is_strict() const { return rel_ == Rel::Lt; }
  bool is_equality() const { return rel_ == Rel::Eq; }

  Rational coeff(const Var& v) const;
  VarSet vars() const;
  bool has_var(const Var& v) const { return coeffs_.count(v) != 0; }

  /// Variable-free constraint that holds / fails.
  bool is_trivially_true() const;
  bool is_trivially_false() const;

  /// Closure: strict becomes non-strict.
  LinearConstraint closure() const;
  /// Same constraint with relation replaced.
  LinearConstraint with_rel(Rel r) const;
  /// For Le/Lt: the relaxed complement (t <= b  ->  t >= b; t < b -> t >= b).
  LinearConstraint relaxed_negation() const;
  /// Exact complement of an inequality (t <= b -> t > b). Not defined for Eq.
  LinearConstraint negation() const;
  /// Equality split into its two inequalities; inequalities pass through.
  std::vector<LinearConstraint> as_inequalities() const;

  /// Scale to coprime integer coefficients. Equalities additionally get a
  /// positive leading coefficient (variable-name order).
  LinearConstraint normalized() const;

  LinearConstraint renamed(const Renaming& r) const;
  /// Replace v by term everywhere (v must not occur in term).
  LinearConstraint substituted(const Var& v, const LinearTerm& term) const;

  bool holds_at(const std::map<Var, Rational>& point) const;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
  friend std::strong_ordering operator<=>(const LinearConstraint& a, const LinearConstraint& b);

 private:
  std::map<Var, Rational> coeffs_;
  Rational bound_{0};
  Rel rel_ = Rel::Le;
};

/// Conjunction of linear constraints; the empty set is `true`.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<LinearConstraint> cs);
  explicit ConstraintSet(std::vector<LinearConstraint> cs);

  static ConstraintSet falsum() { return ConstraintSet{LinearConstraint::falsum()}; }

  void add(const LinearConstraint& c);
  void add_all(const ConstraintSet& other);

  const std::vector<LinearConstraint>& constraints() const { return cs_; }
  std::size_t size() const { return cs_.size(); }
  bool empty() const { return cs_.empty(); }
  auto begin() const { return cs_.begin(); }
  auto end() const { return cs_.end(); }

  VarSet vars() const;
  bool contains_trivially_false() const;
  ConstraintSet renamed(const Renaming& r) const;
  bool holds_at(const std::map<Var, Rational>& point) const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
  friend ConstraintSet operator&(ConstraintSet a, const ConstraintSet& b) {
    a.add_all(b);
    return a;
  }

 private:
  std::vector<LinearConstraint> cs_;
};

std::ostream& operator<<(std::ostream& os, const LinearConstraint& c);
std::ostream& operator<<(std::ostream& os, const ConstraintSet& c);
std::string to_string(const LinearConstraint& c);
std::string to_string(const ConstraintSet& c);

// ---------------------------------------------------------------------------
// Decision procedures

bool is_satisfiable(const ConstraintSet& c);

/// A solution of c (strict constraints satisfied strictly), if any.
std::optional<std::map<Var, Rational>> find_model(const ConstraintSet& c);

bool entails(const ConstraintSet& c, const LinearConstraint& d);
bool entails(const ConstraintSet& c, const ConstraintSet& d);
bool equivalent(const ConstraintSet& a, const ConstraintSet& b);

/// Exact projection onto `keep` by Gaussian substitution and Fourier-Motzkin.
ConstraintSet project(const ConstraintSet& c, const VarSet& keep);

/// Equivalent canonical set: implicit equalities made explicit and reduced,
/// redundancies removed, coefficients scaled. Unsatisfiable input gives
/// {0 <= -1}.
ConstraintSet simplify(const ConstraintSet& c);

struct FarkasCertificate {
  /// One multiplier per constraint of c1 ++ c2. Inequality multipliers are
  /// nonnegative; equality multipliers may have either sign.
  std::vector<Rational> multipliers;
  std::size_t c1_size = 0;
  /// Weighted sum of all constraints: 0 <= negative, or 0 < nonpositive.
  LinearConstraint derived;
  /// Weighted sum over the c1 constraints only.
  LinearConstraint c1_part;
};

/// Requires c1 & c2 unsatisfiable; throws std::invalid_argument otherwise.
FarkasCertificate farkas_refutation(const ConstraintSet& c1, const ConstraintSet& c2);

/// Weighted sum of constraints (equalities contribute with sign, the result is
/// an equality only if every contributing row is an equality).
LinearConstraint combine(const std::vector<LinearConstraint>& rows,
                         const std::vector<Rational>& multipliers);

/// Re-multiplies and checks the certificate invariants.
bool validate(const FarkasCertificate& cert, const ConstraintSet& c1, const ConstraintSet& c2);

// ---------------------------------------------------------------------------
// Resource caps. Thread-local so independent verifications do not interfere.

struct Limits {
  std::size_t fm_max_constraints = 10000;
};

const Limits& current_limits();

class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& l);
  ~ScopedLimits();
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

}  // namespace chcv
