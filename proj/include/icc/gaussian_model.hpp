#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace icc {

using VariableId = std::string;

/// Zero-mean jointly Gaussian variables expressed as fixed linear maps of
/// independent unit-variance latent sources.  Every covariance and mutual
/// information below is an exact function of the coefficient rows; nothing
/// is estimated by sampling.
class GaussianModel {
public:
  explicit GaussianModel(std::vector<std::string> sources);

  /// Defines (or redefines) a variable as sum_k coeffs[k] * source_k.
  /// The coefficient vector must be aligned with the source list.
  void set_variable(const VariableId& id, std::vector<double> coeffs);

  [[nodiscard]] std::size_t source_count() const { return sources_.size(); }
  [[nodiscard]] const std::vector<std::string>& sources() const { return sources_; }
  [[nodiscard]] bool has_variable(const VariableId& id) const;
  [[nodiscard]] const std::vector<double>& coefficients(const VariableId& id) const;
  /// Variables in insertion order.
  [[nodiscard]] const std::vector<VariableId>& variable_ids() const { return order_; }

private:
  std::vector<std::string> sources_;
  std::vector<VariableId> order_;
  std::unordered_map<VariableId, std::vector<double>> coeffs_;
};

/// Covariance matrix of the listed variables, in list order.
[[nodiscard]] Eigen::MatrixXd build_covariance(const GaussianModel& model,
                                               const std::vector<VariableId>& vars);

/// I(A;B) in bits.  A and B must be non-empty and disjoint.  Determinants are
/// taken on the rank support, so zero-variance members simply drop out and
/// the value degrades continuously to 0 as layers are switched off.  A and B
/// must not be deterministically tied to each other (no linear functional of
/// A almost surely equal to one of B): such pairs carry infinite information
/// and are outside this kernel's domain.  Degeneracy inside one set is fine;
/// a collinear duplicate adds nothing.
[[nodiscard]] double mutual_information(const GaussianModel& model,
                                        const std::vector<VariableId>& a,
                                        const std::vector<VariableId>& b);

/// I(A;B|C) = I(A;B,C) - I(A;C) in bits.  Empty C reduces exactly to
/// mutual_information(A,B).
[[nodiscard]] double conditional_mutual_information(const GaussianModel& model,
                                                    const std::vector<VariableId>& a,
                                                    const std::vector<VariableId>& b,
                                                    const std::vector<VariableId>& c);

/// Batch evaluator over a fixed ordered subset of model variables.
/// Memoises log-pseudo-determinants of principal submatrices keyed by index
/// bitmask, so families of overlapping informations share their work.
/// rebind() refreshes the covariance for a new model with the same variable
/// layout without reallocating the memo.
class MiEvaluator {
public:
  MiEvaluator(const GaussianModel& model, std::vector<VariableId> vars);

  void rebind(const GaussianModel& model);

  [[nodiscard]] int index(const VariableId& id) const;
  [[nodiscard]] std::size_t size() const { return vars_.size(); }

  /// I(A;B) in bits for disjoint non-empty index masks.
  [[nodiscard]] double mi(std::uint64_t mask_a, std::uint64_t mask_b);
  /// I(A;B|C) in bits; mask_c may be 0.
  [[nodiscard]] double cmi(std::uint64_t mask_a, std::uint64_t mask_b, std::uint64_t mask_c);

private:
  [[nodiscard]] double log2_pdet(std::uint64_t mask);

  std::vector<VariableId> vars_;
  Eigen::MatrixXd cov_;
  std::vector<double> memo_;
  std::vector<std::uint32_t> memo_epoch_;
  std::uint32_t epoch_ = 0;
};

namespace tol {
inline constexpr double kEigenvalueCutoff = 1e-12;  // rank support threshold
inline constexpr double kMi = 1e-9;                 // clamp-to-zero band for MI values
inline constexpr double kGeom = 1e-9;               // vertex dedup / rhs comparisons
inline constexpr double kSlope = 1e-6;              // facet slope classification
}  // namespace tol

}  // namespace icc
