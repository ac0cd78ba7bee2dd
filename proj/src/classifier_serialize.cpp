#include <stdexcept>
#include <string>

#include <json.hpp>

#include "copclass/classifier.hpp"

namespace copclass {

namespace {

using nlohmann::json;

json marginal_to_json(const Marginal& m) {
  json j;
  if (const auto* p = std::get_if<ParametricMarginal>(&m)) {
    j["type"] = "parametric";
    j["family"] = family_name(p->family);
    j["params"] = p->params;
  } else {
    const auto& e = std::get<EmpiricalMarginal>(m);
    j["type"] = "empirical";
    j["sorted_samples"] = e.sorted_samples;
    j["grid_lo"] = e.grid_lo;
    j["grid_dx"] = e.grid_dx;
    j["grid_logpdf"] = e.grid_logpdf;
    j["density_floor"] = e.density_floor;
  }
  return j;
}

Marginal marginal_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "parametric") {
    ParametricMarginal p;
    p.family = family_from_name(j.at("family").get<std::string>());
    p.params = j.at("params").get<std::vector<double>>();
    p.validate();
    return p;
  }
  if (type == "empirical") {
    EmpiricalMarginal e;
    e.sorted_samples = j.at("sorted_samples").get<std::vector<double>>();
    e.grid_lo = j.at("grid_lo").get<double>();
    e.grid_dx = j.at("grid_dx").get<double>();
    e.grid_logpdf = j.at("grid_logpdf").get<std::vector<double>>();
    e.density_floor = j.at("density_floor").get<double>();
    if (e.sorted_samples.size() < 2 || e.grid_logpdf.size() < 2)
      throw std::invalid_argument("model document: empirical marginal grids too short");
    return e;
  }
  throw std::invalid_argument("model document: unknown marginal type '" + type + "'");
}

json correlation_to_json(const CorrelationMatrix& rho) {
  const auto& m = rho.entries();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return json{{"dim", rho.dim()}, {"entries", flat}};
}

CorrelationMatrix correlation_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto flat = j.at("entries").get<std::vector<double>>();
  if (flat.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
    throw std::invalid_argument("model document: correlation entry count mismatch");
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) m(i, k) = flat[static_cast<std::size_t>(i) * dim + k];
  return CorrelationMatrix::from_entries(m);
}

}  // namespace

std::string classifier_to_json(const Classifier& clf) {
  json doc;
  doc["format"] = "copclass-model";
  doc["version"] = 1;
  doc["kind"] = clf.kind == Classifier::Kind::kCopula ? "copula" : "normal";
  json classes = json::array();
  if (clf.kind == Classifier::Kind::kCopula) {
    for (const auto& cm : clf.copula_classes) {
      json jc;
      jc["label"] = cm.label;
      jc["prior"] = cm.prior;
      json marginals = json::array();
      for (const auto& m : cm.marginals) marginals.push_back(marginal_to_json(m));
      jc["marginals"] = std::move(marginals);
      json cop;
      cop["kind"] = cm.copula.kind == CopulaKind::kGaussian ? "gaussian" : "t";
      cop["rho"] = correlation_to_json(cm.copula.rho);
      if (cm.copula.kind == CopulaKind::kStudentT) cop["nu"] = cm.copula.nu;
      jc["copula"] = std::move(cop);
      classes.push_back(std::move(jc));
    }
  } else {
    for (const auto& nm : clf.normal_classes) {
      json jc;
      jc["label"] = nm.label;
      jc["prior"] = nm.prior;
      jc["mean"] = std::vector<double>(nm.mean.data(), nm.mean.data() + nm.mean.size());
      std::vector<double> cov;
      cov.reserve(static_cast<std::size_t>(nm.covariance.size()));
      for (Eigen::Index i = 0; i < nm.covariance.rows(); ++i)
        for (Eigen::Index j = 0; j < nm.covariance.cols(); ++j) cov.push_back(nm.covariance(i, j));
      jc["covariance"] = std::move(cov);
      classes.push_back(std::move(jc));
    }
  }
  doc["classes"] = std::move(classes);
  return doc.dump(2);
}

Classifier classifier_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (doc.at("format").get<std::string>() != "copclass-model")
    throw std::invalid_argument("model document: unrecognized format tag");
  const std::string kind = doc.at("kind").get<std::string>();

  Classifier clf;
  if (kind == "copula") {
    clf.kind = Classifier::Kind::kCopula;
    for (const auto& jc : doc.at("classes")) {
      ClassModel cm;
      cm.label = jc.at("label").get<int>();
      cm.prior = jc.at("prior").get<double>();
      for (const auto& jm : jc.at("marginals")) cm.marginals.push_back(marginal_from_json(jm));
      const auto& cop = jc.at("copula");
      CorrelationMatrix rho = correlation_from_json(cop.at("rho"));
      if (cop.at("kind").get<std::string>() == "t")
        cm.copula = CopulaModel::student_t(std::move(rho), cop.at("nu").get<double>());
      else
        cm.copula = CopulaModel::gaussian(std::move(rho));
      if (cm.marginals.size() != static_cast<std::size_t>(cm.copula.dim()))
        throw std::invalid_argument("model document: marginal count differs from copula dimension");
      clf.copula_classes.push_back(std::move(cm));
    }
  } else if (kind == "normal") {
    clf.kind = Classifier::Kind::kNormal;
    for (const auto& jc : doc.at("classes")) {
      NormalClassModel nm;
      nm.label = jc.at("label").get<int>();
      nm.prior = jc.at("prior").get<double>();
      const auto mean = jc.at("mean").get<std::vector<double>>();
      const auto cov = jc.at("covariance").get<std::vector<double>>();
      const auto d = static_cast<Eigen::Index>(mean.size());
      if (cov.size() != mean.size() * mean.size())
        throw std::invalid_argument("model document: covariance entry count mismatch");
      nm.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), d);
      nm.covariance.resize(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          nm.covariance(i, j) = cov[static_cast<std::size_t>(i) * d + j];
      Eigen::LLT<Eigen::MatrixXd> llt(nm.covariance);
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument("model document: stored covariance is not positive definite");
      nm.chol = llt.matrixL();
      nm.log_det = 2.0 * nm.chol.diagonal().array().log().sum();
      clf.normal_classes.push_back(std::move(nm));
    }
  } else {
    throw std::invalid_argument("model document: unknown classifier kind '" + kind + "'");
  }

  if (clf.class_count() < 2) throw std::invalid_argument("model document: fewer than 2 classes");
  double prior_sum = 0.0;
  for (int i = 0; i < clf.class_count(); ++i)
    prior_sum += clf.kind == Classifier::Kind::kCopula ? clf.copula_classes[i].prior
                                                       : clf.normal_classes[i].prior;
  if (std::fabs(prior_sum - 1.0) > 1e-9)
    throw std::invalid_argument("model document: class priors do not sum to 1");
  return clf;
}

}  // namespace copclass
