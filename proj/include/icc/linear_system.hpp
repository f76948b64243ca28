#pragma once

#include <boost/rational.hpp>
#include <string>
#include <utility>
#include <vector>

namespace icc {

using RateVar = std::string;
using Coeff = boost::rational<long long>;

/// One row  sum_j coeffs[j] * vars[j] <= rhs, with coeffs aligned to the
/// owning system's variable list.  Coefficients are exact rationals; only
/// the right-hand side is floating.
struct LinearInequality {
  std::vector<Coeff> coeffs;
  double rhs = 0.0;
};

/// Conjunction of <=-rows over an ordered variable list.  Equality
/// constraints are entered as row pairs by the caller.  `contradictory` is
/// set when elimination exposes 0 <= c with c < 0: the feasible set is empty
/// and no remaining variable can witness it.
struct LinearSystem {
  std::vector<RateVar> vars;
  std::vector<LinearInequality> rows;
  bool contradictory = false;

  LinearSystem() = default;
  explicit LinearSystem(std::vector<RateVar> variables) : vars(std::move(variables)) {}

  /// Index of v in vars, or -1.
  [[nodiscard]] int var_index(const RateVar& v) const;

  /// Appends a row given sparse (variable, coefficient) terms.  Unknown
  /// variable names are rejected.
  void add_row(const std::vector<std::pair<RateVar, Coeff>>& terms, double rhs);
};

}  // namespace icc
