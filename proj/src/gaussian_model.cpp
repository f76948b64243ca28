#include "icc/gaussian_model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace icc {

namespace {

double clamp_information(double bits) {
  if (bits > -tol::kMi && bits < tol::kMi) return 0.0;
  return bits;
}

void require_disjoint(std::uint64_t a, std::uint64_t b, const char* what) {
  if ((a & b) != 0) throw std::invalid_argument(std::string(what) + ": variable sets overlap");
}

// log2 of the product of eigenvalues above the rank-support cutoff.
double log2_pdet_eigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > tol::kEigenvalueCutoff) acc += std::log2(ev);
  }
  return acc;
}

}  // namespace

GaussianModel::GaussianModel(std::vector<std::string> sources) : sources_(std::move(sources)) {
  if (sources_.empty()) throw std::invalid_argument("GaussianModel: no latent sources");
}

void GaussianModel::set_variable(const VariableId& id, std::vector<double> coeffs) {
  if (coeffs.size() != sources_.size())
    throw std::invalid_argument("GaussianModel: coefficient vector for '" + id +
                                "' has size " + std::to_string(coeffs.size()) +
                                ", expected " + std::to_string(sources_.size()));
  auto [it, inserted] = coeffs_.try_emplace(id, std::move(coeffs));
  if (inserted)
    order_.push_back(id);
  else
    it->second = std::move(coeffs);
}

bool GaussianModel::has_variable(const VariableId& id) const { return coeffs_.count(id) != 0; }

const std::vector<double>& GaussianModel::coefficients(const VariableId& id) const {
  auto it = coeffs_.find(id);
  if (it == coeffs_.end()) throw std::out_of_range("GaussianModel: unknown variable '" + id + "'");
  return it->second;
}

Eigen::MatrixXd build_covariance(const GaussianModel& model, const std::vector<VariableId>& vars) {
  const auto n = static_cast<Eigen::Index>(vars.size());
  Eigen::MatrixXd g(n, static_cast<Eigen::Index>(model.source_count()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = model.coefficients(vars[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < row.size(); ++k) g(i, static_cast<Eigen::Index>(k)) = row[k];
  }
  return g * g.transpose();
}

double mutual_information(const GaussianModel& model, const std::vector<VariableId>& a,
                          const std::vector<VariableId>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mutual_information: empty variable set");
  std::vector<VariableId> all = a;
  all.insert(all.end(), b.begin(), b.end());
  MiEvaluator ev(model, all);
  std::uint64_t ma = 0, mb = 0;
  for (const auto& id : a) ma |= std::uint64_t{1} << ev.index(id);
  for (const auto& id : b) mb |= std::uint64_t{1} << ev.index(id);
  return ev.mi(ma, mb);
}

double conditional_mutual_information(const GaussianModel& model, const std::vector<VariableId>& a,
                                      const std::vector<VariableId>& b,
                                      const std::vector<VariableId>& c) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("conditional_mutual_information: empty variable set");
  std::vector<VariableId> all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  MiEvaluator ev(model, all);
  std::uint64_t ma = 0, mb = 0, mc = 0;
  for (const auto& id : a) ma |= std::uint64_t{1} << ev.index(id);
  for (const auto& id : b) mb |= std::uint64_t{1} << ev.index(id);
  for (const auto& id : c) mc |= std::uint64_t{1} << ev.index(id);
  return ev.cmi(ma, mb, mc);
}

MiEvaluator::MiEvaluator(const GaussianModel& model, std::vector<VariableId> vars)
    : vars_(std::move(vars)) {
  if (vars_.empty()) throw std::invalid_argument("MiEvaluator: empty variable list");
  if (vars_.size() > 20) throw std::invalid_argument("MiEvaluator: variable list too large");
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j])
        throw std::invalid_argument("MiEvaluator: duplicate variable '" + vars_[i] + "'");
  memo_.assign(std::size_t{1} << vars_.size(), 0.0);
  memo_epoch_.assign(std::size_t{1} << vars_.size(), 0);
  rebind(model);
}

void MiEvaluator::rebind(const GaussianModel& model) {
  cov_ = build_covariance(model, vars_);
  ++epoch_;
}

int MiEvaluator::index(const VariableId& id) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == id) return static_cast<int>(i);
  throw std::out_of_range("MiEvaluator: unknown variable '" + id + "'");
}

double MiEvaluator::mi(std::uint64_t mask_a, std::uint64_t mask_b) {
  if (mask_a == 0 || mask_b == 0) throw std::invalid_argument("mi: empty variable set");
  require_disjoint(mask_a, mask_b, "mi");
  const double bits =
      0.5 * (log2_pdet(mask_a) + log2_pdet(mask_b) - log2_pdet(mask_a | mask_b));
  return clamp_information(bits);
}

double MiEvaluator::cmi(std::uint64_t mask_a, std::uint64_t mask_b, std::uint64_t mask_c) {
  if (mask_c == 0) return mi(mask_a, mask_b);
  if (mask_a == 0 || mask_b == 0) throw std::invalid_argument("cmi: empty variable set");
  require_disjoint(mask_a, mask_b, "cmi");
  require_disjoint(mask_a, mask_c, "cmi");
  require_disjoint(mask_b, mask_c, "cmi");
  return clamp_information(mi(mask_a, mask_b | mask_c) - mi(mask_a, mask_c));
}

double MiEvaluator::log2_pdet(std::uint64_t mask) {
  if (memo_epoch_[mask] == epoch_) return memo_[mask];

  // Zero-variance members contribute no eigenvalue mass; dropping them up
  // front keeps the fast Cholesky path applicable.
  int idx[20];
  int n = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const int i = std::countr_zero(m);
    if (cov_(i, i) > 0.0) idx[n++] = i;
  }

  double value = 0.0;
  if (n == 1) {
    const double v = cov_(idx[0], idx[0]);
    value = v > tol::kEigenvalueCutoff ? std::log2(v) : 0.0;
  } else if (n == 2) {
    const double a = cov_(idx[0], idx[0]), c = cov_(idx[1], idx[1]), b = cov_(idx[0], idx[1]);
    const double h = 0.5 * (a + c);
    const double s = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
    const double l1 = h + s, l2 = h - s;
    if (l1 > tol::kEigenvalueCutoff) value += std::log2(l1);
    if (l2 > tol::kEigenvalueCutoff) value += std::log2(l2);
  } else if (n >= 3) {
    Eigen::MatrixXd sub(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sub(i, j) = cov_(idx[i], idx[j]);
    Eigen::LLT<Eigen::MatrixXd> llt(sub);
    bool ok = llt.info() == Eigen::Success;
    double acc = 0.0;
    if (ok) {
      for (int i = 0; i < n; ++i) {
        const double d = llt.matrixLLT()(i, i);
        if (d < 1e-3) {  // near rank boundary: defer to the eigenvalue route
          ok = false;
          break;
        }
        acc += std::log2(d);
      }
    }
    value = ok ? 2.0 * acc : log2_pdet_eigen(sub);
  }

  memo_[mask] = value;
  memo_epoch_[mask] = epoch_;
  return value;
}

}  // namespace icc
