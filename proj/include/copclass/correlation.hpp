#pragma once

#include <Eigen/Dense>

namespace copclass {

// Symmetric positive-definite matrix with unit diagonal, carried together
// with its lower Cholesky factor and log-determinant. Construction validates
// (and if necessary repairs) the input; instances are immutable afterwards.
class CorrelationMatrix {
 public:
  // Validates symmetry and unit diagonal to 1e-10, then factorizes. A failed
  // factorization triggers an eigenvalue-clipping repair (clip below 1e-8,
  // rescale to unit diagonal) before retrying.
  static CorrelationMatrix from_entries(const Eigen::MatrixXd& entries);
  static CorrelationMatrix identity(int dim);
  static CorrelationMatrix exchangeable(int dim, double off_diagonal);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const Eigen::MatrixXd& cholesky() const { return chol_; }
  double log_det() const { return log_det_; }
  bool repaired() const { return repaired_; }

  // v' R^{-1} v through a triangular solve against the Cholesky factor.
  double mahalanobis(const Eigen::VectorXd& v) const;

 private:
  CorrelationMatrix() = default;

  Eigen::MatrixXd entries_;
  Eigen::MatrixXd chol_;  // lower triangular
  double log_det_ = 0.0;
  bool repaired_ = false;
};

}  // namespace copclass
