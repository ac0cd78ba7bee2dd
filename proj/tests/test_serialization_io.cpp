#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "copclass/classifier.hpp"
#include "copclass/datagen.hpp"
#include "copclass/dataset_io.hpp"

using namespace copclass;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("copclass_test_" + name)).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_double survives a parse round trip") {
  for (double v : {0.0, 1.0, -3.25, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.1}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("dataset CSV round trip is exact") {
  DatasetSpec spec = table1_preset(4, 7, 200, 606);
  const Dataset ds = generate(spec);
  const std::string path = temp_path("ds.csv");
  FileGuard guard{path};
  write_dataset_csv(path, ds.features, ds.labels);
  const LabeledData back = read_dataset_csv(path);
  CHECK(back.labels == ds.labels);
  CHECK((back.features - ds.features).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dataset CSV parse errors carry line numbers") {
  const std::string path = temp_path("bad.csv");
  FileGuard guard{path};
  write_text_file(path, "label,f1,f2\n0,1.5,2.5\n1,oops,3.0\n");
  try {
    read_dataset_csv(path);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }

  write_text_file(path, "label,f1,f2\n0,1.5\n");
  CHECK_THROWS_AS(read_dataset_csv(path), std::runtime_error);

  write_text_file(path, "f1,f2\n0,1\n");
  CHECK_THROWS_AS(read_dataset_csv(path), std::runtime_error);
}

TEST_CASE("predictions CSV round trip") {
  const std::string path = temp_path("preds.csv");
  FileGuard guard{path};
  const std::vector<int> labels{0, 1, 1, 0, 1};
  write_predictions_csv(path, labels);
  CHECK(read_predictions_csv(path) == labels);
}

TEST_CASE("copula classifier serialization reproduces predictions exactly") {
  DatasetSpec spec = table1_preset(1, 6, 600, 11);
  const Dataset ds = generate(spec);
  auto [train, test] = split_dataset(ds, 0.7, 5);

  TrainConfig config;  // gaussian + empirical + EML
  const Classifier clf = train_copula_classifier(train.features, train.labels, config);
  const Classifier back = classifier_from_json(classifier_to_json(clf));
  CHECK(back.kind == Classifier::Kind::kCopula);
  CHECK(back.dim() == clf.dim());
  for (Eigen::Index i = 0; i < test.features.rows(); ++i) {
    const Eigen::VectorXd x = test.features.row(i).transpose();
    CHECK(classify(back, x) == classify(clf, x));
  }
  // Discriminants themselves round-trip bit-exactly.
  for (Eigen::Index i = 0; i < 25; ++i) {
    const Eigen::VectorXd x = test.features.row(i).transpose();
    CHECK(copula_discriminant(back.copula_classes[0], x) ==
          copula_discriminant(clf.copula_classes[0], x));
  }
}

TEST_CASE("t copula model serialization keeps nu") {
  DatasetSpec spec = table1_preset(2, 3, 400, 21);
  const Dataset ds = generate(spec);
  TrainConfig config;
  config.copula = CopulaKind::kStudentT;
  config.estimation = TrainConfig::Estimation::kCml;
  const Classifier clf = train_copula_classifier(ds.features, ds.labels, config);
  const Classifier back = classifier_from_json(classifier_to_json(clf));
  CHECK(back.copula_classes[0].copula.kind == CopulaKind::kStudentT);
  CHECK(back.copula_classes[0].copula.nu == clf.copula_classes[0].copula.nu);
}

TEST_CASE("normal classifier serialization reproduces predictions exactly") {
  DatasetSpec spec = table1_preset(3, 5, 500, 33);
  const Dataset ds = generate(spec);
  const Classifier clf = train_normal_classifier(ds.features, ds.labels);
  const Classifier back = classifier_from_json(classifier_to_json(clf));
  CHECK(back.kind == Classifier::Kind::kNormal);
  for (Eigen::Index i = 0; i < ds.features.rows(); i += 7) {
    const Eigen::VectorXd x = ds.features.row(i).transpose();
    CHECK(classify(back, x) == classify(clf, x));
  }
}

TEST_CASE("parametric marginal models serialize by family name") {
  DatasetSpec spec = table1_preset(4, 4, 400, 44);
  const Dataset ds = generate(spec);
  TrainConfig config;
  config.marginal_mode = TrainConfig::MarginalMode::kParametric;
  config.families = {MarginalFamily::kGamma, MarginalFamily::kLogNormal};
  const Classifier clf = train_copula_classifier(ds.features, ds.labels, config);
  const Classifier back = classifier_from_json(classifier_to_json(clf));
  const auto& m = std::get<ParametricMarginal>(back.copula_classes[0].marginals[0]);
  CHECK(m.family == MarginalFamily::kGamma);
  CHECK(m.params == std::get<ParametricMarginal>(clf.copula_classes[0].marginals[0]).params);
}

TEST_CASE("malformed model documents are rejected") {
  CHECK_THROWS(classifier_from_json("{}"));
  CHECK_THROWS(classifier_from_json("not json at all"));
  CHECK_THROWS(classifier_from_json(R"({"format":"copclass-model","kind":"zebra","classes":[]})"));
}
