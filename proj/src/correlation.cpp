#include "copclass/correlation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace copclass {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kMinPivot = 1e-10;
constexpr double kEigenFloor = 1e-8;

// Lower Cholesky with an explicit pivot threshold; returns false rather than
// factorizing a matrix that is not safely positive definite.
bool cholesky_lower(const Eigen::MatrixXd& a, Eigen::MatrixXd& lower) {
  const int n = static_cast<int>(a.rows());
  lower = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double s = a(j, j);
    for (int k = 0; k < j; ++k) s -= lower(j, k) * lower(j, k);
    if (!(s > kMinPivot * kMinPivot)) return false;
    const double pivot = std::sqrt(s);
    lower(j, j) = pivot;
    for (int i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (int k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k);
      lower(i, j) = v / pivot;
    }
  }
  return true;
}

// Eigenvalue clipping followed by a rescale back to unit diagonal.
Eigen::MatrixXd repair_to_positive_definite(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("CorrelationMatrix: eigendecomposition failed during repair");
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(kEigenFloor);
  Eigen::MatrixXd fixed = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
  Eigen::VectorXd scale = fixed.diagonal().cwiseSqrt().cwiseInverse();
  fixed = scale.asDiagonal() * fixed * scale.asDiagonal();
  fixed = 0.5 * (fixed + fixed.transpose());
  fixed.diagonal().setOnes();
  return fixed;
}

}  // namespace

CorrelationMatrix CorrelationMatrix::from_entries(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw std::invalid_argument("CorrelationMatrix: entries must be square and nonempty");
  const int n = static_cast<int>(entries.rows());
  for (int i = 0; i < n; ++i) {
    if (std::fabs(entries(i, i) - 1.0) > kSymmetryTol)
      throw std::invalid_argument("CorrelationMatrix: diagonal entry deviates from 1 at index " +
                                  std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      if (std::fabs(entries(i, j) - entries(j, i)) > kSymmetryTol)
        throw std::invalid_argument("CorrelationMatrix: asymmetry beyond tolerance at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }

  CorrelationMatrix result;
  result.entries_ = 0.5 * (entries + entries.transpose());
  result.entries_.diagonal().setOnes();

  if (!cholesky_lower(result.entries_, result.chol_)) {
    result.entries_ = repair_to_positive_definite(result.entries_);
    result.repaired_ = true;
    if (!cholesky_lower(result.entries_, result.chol_))
      throw std::runtime_error("CorrelationMatrix: repair failed to restore positive definiteness");
  }
  result.log_det_ = 2.0 * result.chol_.diagonal().array().log().sum();
  return result;
}

CorrelationMatrix CorrelationMatrix::identity(int dim) {
  return from_entries(Eigen::MatrixXd::Identity(dim, dim));
}

CorrelationMatrix CorrelationMatrix::exchangeable(int dim, double off_diagonal) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dim, dim, off_diagonal);
  m.diagonal().setOnes();
  return from_entries(m);
}

double CorrelationMatrix::mahalanobis(const Eigen::VectorXd& v) const {
  if (v.size() != entries_.rows())
    throw std::invalid_argument("CorrelationMatrix::mahalanobis: dimension mismatch");
  Eigen::VectorXd w = chol_.triangularView<Eigen::Lower>().solve(v);
  return w.squaredNorm();
}

}  // namespace copclass
