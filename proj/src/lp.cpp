#include "nlum/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlum {

namespace {

constexpr int kNoPick = -1;

}  // namespace

Simplex::Simplex(int num_vars, const std::vector<Row>& rows) : n_(num_vars) {
  if (n_ < 0) throw std::invalid_argument("negative variable count");
  const int m = static_cast<int>(rows.size());
  a_.resize(m);
  b_.resize(m);
  tab_.resize(m);
  cons_.resize(m);
  basis_.resize(m);
  nonbasic_.resize(n_);
  for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].coeffs.size()) != n_)
      throw std::invalid_argument("constraint width does not match variable count");
    a_[i].resize(n_);
    tab_[i].resize(n_);
    for (int j = 0; j < n_; ++j) {
      a_[i][j] = rows[i].coeffs[j].raw();
      tab_[i][j] = -a_[i][j];
    }
    b_[i] = rows[i].rhs.raw();
    cons_[i] = b_[i];
    basis_[i] = n_ + i;  // slack of row i
  }
}

void Simplex::pivot(int r, int c) {
  const mpq_class piv = tab_[r][c];
  const int nb = static_cast<int>(nonbasic_.size());
  mpq_class inv = 1 / piv;

  cons_[r] *= -inv;
  for (int k = 0; k < nb; ++k)
    if (k != c) tab_[r][k] *= -inv;
  tab_[r][c] = inv;
  std::swap(basis_[r], nonbasic_[c]);

  for (std::size_t i = 0; i < tab_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    if (sgn(tab_[i][c]) == 0) continue;
    mpq_class f = tab_[i][c];
    tab_[i][c] = 0;
    cons_[i] += f * cons_[r];
    for (int k = 0; k < nb; ++k)
      if (sgn(tab_[r][k]) != 0) tab_[i][k] += f * tab_[r][k];
  }
  if (!zrow_.empty() && sgn(zrow_[c]) != 0) {
    mpq_class f = zrow_[c];
    zrow_[c] = 0;
    zconst_ += f * cons_[r];
    for (int k = 0; k < nb; ++k)
      if (sgn(tab_[r][k]) != 0) zrow_[k] += f * tab_[r][k];
  }
}

int Simplex::pick_entering() const {
  // Bland: smallest variable id with a positive reduced cost.
  int best = kNoPick;
  for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
    if (sgn(zrow_[j]) <= 0) continue;
    if (best == kNoPick || nonbasic_[j] < nonbasic_[best]) best = static_cast<int>(j);
  }
  return best;
}

int Simplex::pick_leaving(int col) const {
  // Tightest ratio among rows that bound the entering variable; ties go to
  // the smallest basic variable id (Bland).
  int best = kNoPick;
  mpq_class best_ratio;
  for (std::size_t i = 0; i < tab_.size(); ++i) {
    if (sgn(tab_[i][col]) >= 0) continue;
    mpq_class ratio = cons_[i] / -tab_[i][col];
    if (best == kNoPick || ratio < best_ratio ||
        (ratio == best_ratio && basis_[i] < basis_[best])) {
      best = static_cast<int>(i);
      best_ratio = ratio;
    }
  }
  return best;
}

bool Simplex::ensure_feasible() {
  if (feasible_ != 0) return feasible_ > 0;

  int worst = kNoPick;
  for (std::size_t i = 0; i < cons_.size(); ++i) {
    if (sgn(cons_[i]) >= 0) continue;
    if (worst == kNoPick || cons_[i] < cons_[worst] ||
        (cons_[i] == cons_[worst] && basis_[i] < basis_[worst]))
      worst = static_cast<int>(i);
  }
  if (worst == kNoPick) {
    feasible_ = 1;
    return true;
  }

  // Auxiliary variable x0: rows become x_B = cons + ... + x0, objective -x0.
  const int aux = n_ + static_cast<int>(a_.size());
  const int nb = static_cast<int>(nonbasic_.size());
  nonbasic_.push_back(aux);
  for (auto& row : tab_) row.emplace_back(1);
  zrow_.assign(nb + 1, mpq_class(0));
  zrow_[nb] = -1;
  zconst_ = 0;

  pivot(worst, nb);  // makes every constant non-negative

  while (true) {
    int c = pick_entering();
    if (c == kNoPick) break;
    int r = pick_leaving(c);
    if (r == kNoPick)
      throw std::logic_error("auxiliary objective cannot be unbounded");
    pivot(r, c);
  }

  if (sgn(zconst_) != 0) {
    feasible_ = -1;
    return false;
  }
  drop_aux();
  feasible_ = 1;
  return true;
}

void Simplex::drop_aux() {
  const int aux = n_ + static_cast<int>(a_.size());

  // If the auxiliary variable ended up basic (at value zero), pivot it out,
  // or drop its row when the row carries no other variable.
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i] != aux) continue;
    int col = kNoPick;
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (nonbasic_[j] == aux || sgn(tab_[i][j]) == 0) continue;
      if (col == kNoPick || nonbasic_[j] < nonbasic_[col]) col = static_cast<int>(j);
    }
    if (col == kNoPick) {
      tab_.erase(tab_.begin() + i);
      cons_.erase(cons_.begin() + i);
      basis_.erase(basis_.begin() + i);
    } else {
      pivot(static_cast<int>(i), col);
    }
    break;
  }

  for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
    if (nonbasic_[j] != aux) continue;
    nonbasic_.erase(nonbasic_.begin() + j);
    for (auto& row : tab_) row.erase(row.begin() + j);
    break;
  }
  zrow_.clear();
  zconst_ = 0;
}

void Simplex::price_objective(const std::vector<mpq_class>& costs) {
  const int nb = static_cast<int>(nonbasic_.size());
  zrow_.assign(nb, mpq_class(0));
  zconst_ = 0;
  auto cost_of = [&](int var) -> const mpq_class* {
    return var < n_ ? &costs[var] : nullptr;
  };
  for (int j = 0; j < nb; ++j)
    if (const mpq_class* c = cost_of(nonbasic_[j])) zrow_[j] = *c;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const mpq_class* c = cost_of(basis_[i]);
    if (!c || sgn(*c) == 0) continue;
    zconst_ += *c * cons_[i];
    for (int j = 0; j < nb; ++j)
      if (sgn(tab_[i][j]) != 0) zrow_[j] += *c * tab_[i][j];
  }
}

std::optional<Simplex::Opt> Simplex::maximize(const std::vector<Rational>& objective) {
  if (static_cast<int>(objective.size()) != n_)
    throw std::invalid_argument("objective width does not match variable count");
  if (feasible_ == 0) ensure_feasible();
  if (feasible_ < 0) throw std::logic_error("maximize called on an infeasible system");

  std::vector<mpq_class> costs(n_);
  for (int j = 0; j < n_; ++j) costs[j] = objective[j].raw();
  price_objective(costs);

  while (true) {
    int c = pick_entering();
    if (c == kNoPick) break;
    int r = pick_leaving(c);
    if (r == kNoPick) return std::nullopt;  // unbounded
    pivot(r, c);
  }

  certify_optimum(costs);

  Opt out;
  out.value = Rational(zconst_);
  out.solution = current_solution();
  return out;
}

std::optional<Simplex::Opt> Simplex::minimize(const std::vector<Rational>& objective) {
  std::vector<Rational> neg(objective.size());
  for (std::size_t j = 0; j < objective.size(); ++j) neg[j] = -objective[j];
  auto opt = maximize(neg);
  if (!opt) return std::nullopt;
  opt->value = -opt->value;
  return opt;
}

std::vector<Rational> Simplex::current_solution() const {
  std::vector<Rational> x(n_, Rational(0));
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] < n_) x[basis_[i]] = Rational(cons_[i]);
  return x;
}

void Simplex::certify_optimum(const std::vector<mpq_class>& costs) const {
  // Dual values come from the reduced costs of the slack variables. The
  // certificate is exact: y >= 0, A'y >= c, and b.y equal to the optimum.
  const int m = static_cast<int>(a_.size());
  std::vector<mpq_class> y(m, mpq_class(0));
  for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
    int var = nonbasic_[j];
    if (var >= n_ && var < n_ + m) y[var - n_] = -zrow_[j];
  }
  mpq_class dual_value = 0;
  for (int i = 0; i < m; ++i) {
    if (sgn(y[i]) < 0) throw std::logic_error("negative dual multiplier at optimum");
    if (sgn(y[i]) != 0) dual_value += y[i] * b_[i];
  }
  for (int v = 0; v < n_; ++v) {
    mpq_class reduced = costs[v];
    for (int i = 0; i < m; ++i)
      if (sgn(y[i]) != 0 && sgn(a_[i][v]) != 0) reduced -= y[i] * a_[i][v];
    if (sgn(reduced) > 0) throw std::logic_error("dual-infeasible certificate at optimum");
  }
  if (dual_value != zconst_)
    throw std::logic_error("strong duality check failed at optimum");

  // Primal side: the basic solution must satisfy every original row exactly.
  std::vector<Rational> x = current_solution();
  for (int i = 0; i < m; ++i) {
    mpq_class lhs = 0;
    for (int v = 0; v < n_; ++v)
      if (sgn(a_[i][v]) != 0) lhs += a_[i][v] * x[v].raw();
    if (lhs > b_[i]) throw std::logic_error("optimal solution violates a constraint");
  }
  for (const auto& xv : x)
    if (xv.sign() < 0) throw std::logic_error("optimal solution violates a sign bound");
}

namespace {

struct Presolved {
  int num_vars = 0;
  std::vector<Simplex::Row> rows;
  // Mapping from original variable to internal representation:
  // plain (one var, shift) or split into positive/negative parts.
  struct VarMap {
    int pos = -1;
    int neg = -1;  // -1 unless the variable is free
    Rational shift;
  };
  std::vector<VarMap> vars;
};

Presolved presolve(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.objective.size());
  if (!lp.lower_bounds.empty() && static_cast<int>(lp.lower_bounds.size()) != n)
    throw std::invalid_argument("lower bound vector width mismatch");
  if (!lp.upper_bounds.empty() && static_cast<int>(lp.upper_bounds.size()) != n)
    throw std::invalid_argument("upper bound vector width mismatch");

  Presolved out;
  out.vars.resize(n);
  // Upper-bound rows are appended after the constraint rows.
  std::vector<std::pair<int, Rational>> upper_rows;
  for (int v = 0; v < n; ++v) {
    std::optional<Rational> lo = lp.lower_bounds.empty() ? std::optional<Rational>(Rational(0))
                                                         : lp.lower_bounds[v];
    std::optional<Rational> hi = lp.upper_bounds.empty() ? std::nullopt : lp.upper_bounds[v];
    auto& vm = out.vars[v];
    if (lo) {
      vm.pos = out.num_vars++;
      vm.shift = *lo;
    } else {
      vm.pos = out.num_vars++;
      vm.neg = out.num_vars++;
      vm.shift = Rational(0);
    }
    if (hi) {
      if (lo && *hi < *lo) throw std::invalid_argument("empty variable bound interval");
      upper_rows.emplace_back(v, *hi);
    }
  }

  auto expand = [&](const std::vector<Rational>& coeffs, Rational& rhs_shift,
                    std::vector<Rational>& row) {
    row.assign(out.num_vars, Rational(0));
    for (int v = 0; v < n; ++v) {
      const Rational& c = coeffs[v];
      if (c.sign() == 0) continue;
      const auto& vm = out.vars[v];
      row[vm.pos] += c;
      if (vm.neg >= 0) row[vm.neg] -= c;
      if (vm.shift.sign() != 0) rhs_shift += c * vm.shift;
    }
  };

  for (const auto& con : lp.constraints) {
    if (static_cast<int>(con.coeffs.size()) != n)
      throw std::invalid_argument("constraint width does not match objective width");
    Rational shift(0);
    std::vector<Rational> row;
    expand(con.coeffs, shift, row);
    Rational rhs = con.rhs - shift;
    if (con.rel == Relation::LessEq || con.rel == Relation::Equal)
      out.rows.push_back({row, rhs});
    if (con.rel == Relation::GreaterEq || con.rel == Relation::Equal) {
      std::vector<Rational> neg(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
      out.rows.push_back({neg, -rhs});
    }
  }
  for (const auto& [v, hi] : upper_rows) {
    std::vector<Rational> row(out.num_vars, Rational(0));
    const auto& vm = out.vars[v];
    row[vm.pos] = Rational(1);
    if (vm.neg >= 0) row[vm.neg] = Rational(-1);
    out.rows.push_back({row, hi - vm.shift});
  }
  return out;
}

void reverify(const LinearProgram& lp, const LPResult& res) {
  Rational obj(0);
  for (std::size_t v = 0; v < lp.objective.size(); ++v)
    obj += lp.objective[v] * res.solution[v];
  if (obj != res.optimum) throw std::logic_error("objective recomputation mismatch");
  for (const auto& con : lp.constraints) {
    Rational lhs(0);
    for (std::size_t v = 0; v < con.coeffs.size(); ++v)
      lhs += con.coeffs[v] * res.solution[v];
    bool ok = con.rel == Relation::LessEq    ? lhs <= con.rhs
              : con.rel == Relation::Equal   ? lhs == con.rhs
                                             : lhs >= con.rhs;
    if (!ok) throw std::logic_error("solution violates a constraint on re-check");
  }
  for (std::size_t v = 0; v < lp.objective.size(); ++v) {
    if (!lp.lower_bounds.empty()) {
      if (lp.lower_bounds[v] && res.solution[v] < *lp.lower_bounds[v])
        throw std::logic_error("solution violates a lower bound on re-check");
    } else if (res.solution[v].sign() < 0) {
      throw std::logic_error("solution violates a lower bound on re-check");
    }
    if (!lp.upper_bounds.empty() && lp.upper_bounds[v] &&
        res.solution[v] > *lp.upper_bounds[v])
      throw std::logic_error("solution violates an upper bound on re-check");
  }
}

}  // namespace

LPResult solve(const LinearProgram& lp) {
  Presolved pre = presolve(lp);
  Simplex simplex(pre.num_vars, pre.rows);

  LPResult res;
  if (!simplex.ensure_feasible()) {
    res.status = LPStatus::Infeasible;
    return res;
  }

  std::vector<Rational> internal_obj(pre.num_vars, Rational(0));
  Rational const_term(0);
  for (std::size_t v = 0; v < lp.objective.size(); ++v) {
    const Rational& c = lp.objective[v];
    if (c.sign() == 0) continue;
    const auto& vm = pre.vars[v];
    internal_obj[vm.pos] += c;
    if (vm.neg >= 0) internal_obj[vm.neg] -= c;
    if (vm.shift.sign() != 0) const_term += c * vm.shift;
  }

  std::optional<Simplex::Opt> opt = lp.sense == Sense::Maximize
                                        ? simplex.maximize(internal_obj)
                                        : simplex.minimize(internal_obj);
  if (!opt) {
    res.status = LPStatus::Unbounded;
    return res;
  }

  res.status = LPStatus::Optimal;
  res.optimum = opt->value + const_term;
  res.solution.resize(lp.objective.size());
  for (std::size_t v = 0; v < lp.objective.size(); ++v) {
    const auto& vm = pre.vars[v];
    res.solution[v] = opt->solution[vm.pos] + vm.shift;
    if (vm.neg >= 0) res.solution[v] -= opt->solution[vm.neg];
  }
  reverify(lp, res);
  return res;
}

}  // namespace nlum
