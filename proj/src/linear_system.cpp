#include "icc/linear_system.hpp"

#include <stdexcept>

namespace icc {

int LinearSystem::var_index(const RateVar& v) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return static_cast<int>(i);
  return -1;
}

void LinearSystem::add_row(const std::vector<std::pair<RateVar, Coeff>>& terms, double rhs) {
  LinearInequality row;
  row.coeffs.assign(vars.size(), Coeff(0));
  row.rhs = rhs;
  for (const auto& [name, value] : terms) {
    const int idx = var_index(name);
    if (idx < 0) throw std::invalid_argument("LinearSystem: unknown variable '" + name + "'");
    row.coeffs[static_cast<std::size_t>(idx)] += value;
  }
  rows.push_back(std::move(row));
}

}  // namespace icc
