#include "copclass/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "copclass/special_functions.hpp"

namespace copclass {

namespace {

constexpr double kInteriorEps = 1e-15;    // clamp for parametric cdf outputs
constexpr double kLogFloor = -690.77552789821368;  // ln(1e-300)
constexpr std::size_t kMinClassSamples = 8;

double clamp_interior(double u) { return std::clamp(u, kInteriorEps, 1.0 - kInteriorEps); }

struct ClassIndex {
  std::vector<int> labels;                 // ascending
  std::vector<std::vector<Eigen::Index>> rows;  // per label
};

ClassIndex group_by_label(const Eigen::MatrixXd& features, const std::vector<int>& labels) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("training data: feature/label row counts differ");
  std::map<int, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < features.rows(); ++i) groups[labels[i]].push_back(i);
  if (groups.size() < 2)
    throw std::invalid_argument("training data: need at least 2 classes, got " +
                                std::to_string(groups.size()));
  ClassIndex index;
  for (auto& [label, rows] : groups) {
    index.labels.push_back(label);
    index.rows.push_back(std::move(rows));
  }
  return index;
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& features, const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = features.row(rows[i]);
  return out;
}

// Covariance factorization with escalating ridge on failure.
void factorize_covariance(NormalClassModel& model) {
  const int d = static_cast<int>(model.covariance.rows());
  double ridge = 0.0;
  const double base = 1e-8 * model.covariance.trace() / static_cast<double>(d);
  for (int attempt = 0; attempt < 9; ++attempt) {
    Eigen::MatrixXd work = model.covariance;
    work.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd lower = llt.matrixL();
      if ((lower.diagonal().array() > 0.0).all()) {
        model.chol = lower;
        model.log_det = 2.0 * lower.diagonal().array().log().sum();
        model.covariance = work;
        return;
      }
    }
    ridge = (ridge == 0.0) ? std::max(base, 1e-300) : ridge * 10.0;
  }
  throw std::runtime_error("train_normal_classifier: covariance not factorizable after ridge escalation");
}

}  // namespace

int Classifier::dim() const {
  if (kind == Kind::kCopula)
    return copula_classes.empty() ? 0 : static_cast<int>(copula_classes.front().marginals.size());
  return normal_classes.empty() ? 0 : static_cast<int>(normal_classes.front().mean.size());
}

int Classifier::class_count() const {
  return kind == Kind::kCopula ? static_cast<int>(copula_classes.size())
                               : static_cast<int>(normal_classes.size());
}

int Classifier::label_at(int index) const {
  return kind == Kind::kCopula ? copula_classes[index].label : normal_classes[index].label;
}

double copula_discriminant(const ClassModel& model, const Eigen::VectorXd& x) {
  const auto d = static_cast<Eigen::Index>(model.marginals.size());
  if (x.size() != d) throw std::invalid_argument("copula_discriminant: dimension mismatch");
  Eigen::VectorXd u(d);
  double marginal_sum = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    u[j] = clamp_interior(cdf(model.marginals[j], x[j]));
    marginal_sum += std::max(logpdf(model.marginals[j], x[j]), kLogFloor);
  }
  return model.copula.log_density(u) + marginal_sum + std::log(model.prior);
}

double normal_discriminant(const NormalClassModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.mean.size())
    throw std::invalid_argument("normal_discriminant: dimension mismatch");
  Eigen::VectorXd w = model.chol.triangularView<Eigen::Lower>().solve(x - model.mean);
  const double d = static_cast<double>(x.size());
  return -0.5 * w.squaredNorm() - 0.5 * d * std::log(2.0 * M_PI) - 0.5 * model.log_det +
         std::log(model.prior);
}

int classify(const Classifier& clf, const Eigen::VectorXd& x) {
  const int c = clf.class_count();
  if (c == 0) throw std::invalid_argument("classify: empty classifier");
  int best = 0;
  double best_score = clf.kind == Classifier::Kind::kCopula
                          ? copula_discriminant(clf.copula_classes[0], x)
                          : normal_discriminant(clf.normal_classes[0], x);
  for (int i = 1; i < c; ++i) {
    const double score = clf.kind == Classifier::Kind::kCopula
                             ? copula_discriminant(clf.copula_classes[i], x)
                             : normal_discriminant(clf.normal_classes[i], x);
    if (score > best_score) {  // ties keep the lowest class index
      best_score = score;
      best = i;
    }
  }
  return clf.label_at(best);
}

Classifier train_copula_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                                   const TrainConfig& config, std::vector<FitReport>* reports) {
  if (config.copula == CopulaKind::kStudentT && config.estimation == TrainConfig::Estimation::kEml)
    throw std::invalid_argument(
        "train_copula_classifier: joint EML for the t copula is not supported; use CML");
  if (config.marginal_mode == TrainConfig::MarginalMode::kParametric && config.families.empty())
    throw std::invalid_argument("train_copula_classifier: parametric mode needs a family list");

  const ClassIndex index = group_by_label(features, labels);
  const auto d = features.cols();
  const double total = static_cast<double>(features.rows());

  Classifier clf;
  clf.kind = Classifier::Kind::kCopula;
  if (reports) reports->clear();

  for (std::size_t ci = 0; ci < index.labels.size(); ++ci) {
    if (index.rows[ci].size() < kMinClassSamples)
      throw std::invalid_argument("train_copula_classifier: class " +
                                  std::to_string(index.labels[ci]) + " has only " +
                                  std::to_string(index.rows[ci].size()) + " samples (need >= 8)");
    const Eigen::MatrixXd block = gather_rows(features, index.rows[ci]);

    ClassModel model;
    model.label = index.labels[ci];
    model.prior = config.uniform_priors
                      ? 1.0 / static_cast<double>(index.labels.size())
                      : static_cast<double>(index.rows[ci].size()) / total;

    model.marginals.reserve(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      std::vector<double> column(block.col(j).data(), block.col(j).data() + block.rows());
      if (config.marginal_mode == TrainConfig::MarginalMode::kEmpirical)
        model.marginals.emplace_back(fit_empirical(column));
      else
        model.marginals.emplace_back(
            fit_parametric(config.families[j % config.families.size()], column));
    }

    FitReport report;
    if (config.estimation == TrainConfig::Estimation::kCml) {
      report = config.copula == CopulaKind::kStudentT ? cml_fit_t(block) : cml_fit_gaussian(block);
    } else {
      Eigen::MatrixXd pseudo(block.rows(), d);
      for (Eigen::Index i = 0; i < block.rows(); ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          pseudo(i, j) = clamp_interior(cdf(model.marginals[j], block(i, j)));
      report = eml_fit_gaussian(pseudo);
    }
    model.copula = report.model;
    if (reports) reports->push_back(std::move(report));
    clf.copula_classes.push_back(std::move(model));
  }
  return clf;
}

Classifier train_normal_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                                   bool uniform_priors) {
  const ClassIndex index = group_by_label(features, labels);
  const double total = static_cast<double>(features.rows());

  Classifier clf;
  clf.kind = Classifier::Kind::kNormal;
  for (std::size_t ci = 0; ci < index.labels.size(); ++ci) {
    if (index.rows[ci].size() < 2)
      throw std::invalid_argument("train_normal_classifier: class " +
                                  std::to_string(index.labels[ci]) + " has fewer than 2 samples");
    const Eigen::MatrixXd block = gather_rows(features, index.rows[ci]);
    const double n = static_cast<double>(block.rows());

    NormalClassModel model;
    model.label = index.labels[ci];
    model.prior = uniform_priors ? 1.0 / static_cast<double>(index.labels.size()) : n / total;
    model.mean = block.colwise().mean();
    Eigen::MatrixXd centered = block.rowwise() - model.mean.transpose();
    model.covariance = (centered.transpose() * centered) / n;  // 1/N convention
    factorize_covariance(model);
    clf.normal_classes.push_back(std::move(model));
  }
  return clf;
}

Evaluation evaluate(const Classifier& clf, const Eigen::MatrixXd& features,
                    const std::vector<int>& labels) {
  if (features.rows() == 0) throw std::invalid_argument("evaluate: empty test set");
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("evaluate: feature/label row counts differ");
  if (features.cols() != clf.dim()) throw std::invalid_argument("evaluate: dimension mismatch");

  const int c = clf.class_count();
  std::map<int, int> label_to_index;
  for (int i = 0; i < c; ++i) label_to_index[clf.label_at(i)] = i;

  Evaluation eval;
  eval.confusion = Eigen::MatrixXi::Zero(c, c);
  int correct = 0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const auto truth = label_to_index.find(labels[i]);
    if (truth == label_to_index.end())
      throw std::invalid_argument("evaluate: test label " + std::to_string(labels[i]) +
                                  " not present in the model");
    const int predicted = classify(clf, features.row(i).transpose());
    eval.confusion(truth->second, label_to_index[predicted]) += 1;
    if (predicted == labels[i]) ++correct;
  }
  eval.accuracy = static_cast<double>(correct) / static_cast<double>(features.rows());
  return eval;
}

}  // namespace copclass
