#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "copclass/copula.hpp"
#include "copclass/estimation.hpp"
#include "copclass/marginals.hpp"

namespace copclass {

// Per-class generative model: one marginal per feature plus the copula that
// couples them.
struct ClassModel {
  int label = 0;
  double prior = 1.0;
  std::vector<Marginal> marginals;
  CopulaModel copula;
};

// Multivariate-normal baseline class model.
struct NormalClassModel {
  int label = 0;
  double prior = 1.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd chol;  // lower factor of (possibly ridged) covariance
  double log_det = 0.0;
};

struct Classifier {
  enum class Kind { kCopula, kNormal };
  Kind kind = Kind::kCopula;
  std::vector<ClassModel> copula_classes;        // populated iff kind == kCopula
  std::vector<NormalClassModel> normal_classes;  // populated iff kind == kNormal

  int dim() const;
  int class_count() const;
  int label_at(int index) const;
};

// ln c(F_1(x_1), ..., F_d(x_d)) + sum_k ln f_k(x_k) + ln P(class). Marginal
// cdf values are clamped to the open interval and log-density terms floored,
// so the result is always finite.
double copula_discriminant(const ClassModel& model, const Eigen::VectorXd& x);

// Gaussian discriminant: -(1/2)(x-mu)' Sigma^{-1} (x-mu) - (d/2) ln(2 pi)
// - (1/2) ln|Sigma| + ln P(class), quadratic form via Cholesky solve.
double normal_discriminant(const NormalClassModel& model, const Eigen::VectorXd& x);

// Label of the class with the largest discriminant; ties break toward the
// lowest class index.
int classify(const Classifier& clf, const Eigen::VectorXd& x);

struct TrainConfig {
  enum class MarginalMode { kParametric, kEmpirical };
  enum class Estimation { kEml, kCml };

  CopulaKind copula = CopulaKind::kGaussian;
  MarginalMode marginal_mode = MarginalMode::kEmpirical;
  std::vector<MarginalFamily> families;  // round-robin over features (parametric mode)
  Estimation estimation = Estimation::kEml;
  bool uniform_priors = false;
};

// Fits marginals, pseudo-transforms, and the per-class copula. Optional
// per-class fit reports (ordered by label) for diagnostics.
Classifier train_copula_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                                   const TrainConfig& config,
                                   std::vector<FitReport>* reports = nullptr);

Classifier train_normal_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                                   bool uniform_priors = false);

struct Evaluation {
  double accuracy = 0.0;
  Eigen::MatrixXi confusion;  // rows: true class index, cols: predicted
};

Evaluation evaluate(const Classifier& clf, const Eigen::MatrixXd& features,
                    const std::vector<int>& labels);

// JSON document round-trip; deserialization reproduces predictions exactly.
std::string classifier_to_json(const Classifier& clf);
Classifier classifier_from_json(const std::string& text);

}  // namespace copclass
