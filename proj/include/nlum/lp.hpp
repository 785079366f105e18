#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "nlum/rational.hpp"

namespace nlum {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Minimize, Maximize };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

/// Exact-rational linear program. Variable domains default to x >= 0 with no
/// upper bound; when the bound vectors are non-empty they carry one entry per
/// variable, with nullopt meaning unbounded on that side.
struct LinearProgram {
  Sense sense = Sense::Minimize;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<std::optional<Rational>> lower_bounds;
  std::vector<std::optional<Rational>> upper_bounds;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational optimum;  // meaningful when Optimal
  std::vector<Rational> solution;
};

/// Two-phase simplex over exact rationals with Bland's anti-cycling rule.
/// Optimal solutions are re-verified by substitution and certified against a
/// dual-feasible certificate before being returned; identical programs yield
/// identical solutions.
LPResult solve(const LinearProgram& lp);

/// Dictionary simplex over the canonical form  max c.x : A x <= b, x >= 0.
/// The constraint system is fixed at construction; the objective may be
/// swapped between optimizations, which re-uses the current feasible basis.
/// Used where one polytope is probed with many objectives (envelope checks).
class Simplex {
 public:
  struct Row {
    std::vector<Rational> coeffs;  // over the structural variables
    Rational rhs;
  };
  struct Opt {
    Rational value;
    std::vector<Rational> solution;  // structural variables only
  };

  Simplex(int num_vars, const std::vector<Row>& rows);

  /// Runs phase 1 once; later calls are free. False means the system has no
  /// feasible point.
  bool ensure_feasible();

  /// Requires a feasible system. nullopt means unbounded. Every optimal
  /// result carries an exact dual certificate, checked internally.
  std::optional<Opt> maximize(const std::vector<Rational>& objective);
  std::optional<Opt> minimize(const std::vector<Rational>& objective);

  /// Current basic solution (structural variables); feasible after
  /// ensure_feasible() returned true.
  std::vector<Rational> current_solution() const;

 private:
  int pick_entering() const;
  int pick_leaving(int col) const;
  void pivot(int row, int col);
  void price_objective(const std::vector<mpq_class>& costs);
  void drop_aux();
  void certify_optimum(const std::vector<mpq_class>& costs) const;

  int n_ = 0;                              // structural variable count
  std::vector<std::vector<mpq_class>> a_;  // original rows, for certificates
  std::vector<mpq_class> b_;

  // Dictionary: x_basis[i] = cons_[i] + sum_j tab_[i][j] * x_nonbasic[j].
  std::vector<int> basis_;
  std::vector<int> nonbasic_;
  std::vector<std::vector<mpq_class>> tab_;
  std::vector<mpq_class> cons_;
  std::vector<mpq_class> zrow_;
  mpq_class zconst_;

  int feasible_ = 0;  // 0 unknown, 1 feasible, -1 infeasible
};

}  // namespace nlum
