// Command-line frontend: gen / train / predict / eval / bench.
// Data artifacts go to files; a manifest with the resolved configuration is
// written next to each output. Diagnostics go to stderr only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copclass/classifier.hpp"
#include "copclass/datagen.hpp"
#include "copclass/dataset_io.hpp"
#include "copclass/rng.hpp"

namespace {

using nlohmann::json;

std::string format_accuracy(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

void write_manifest(const std::string& artifact_path, const json& config) {
  copclass::write_text_file(artifact_path + ".manifest.json", config.dump(2) + "\n");
}

json spec_to_json(const copclass::DatasetSpec& spec) {
  json j;
  j["preset"] = spec.preset_id;
  j["dim"] = spec.dim;
  j["n_samples"] = spec.n_samples;
  j["seed"] = spec.seed;
  j["split"] = spec.split;
  j["class_balance"] = spec.class_balance;
  json cops = json::array();
  for (const auto& c : spec.class_copulas) {
    json jc;
    jc["kind"] = c.kind == copclass::CopulaKind::kGaussian ? "gaussian" : "t";
    jc["rho_off"] = c.rho_off;
    jc["informative_dims"] = c.informative_dims;
    jc["rho_noise"] = c.rho_noise;
    if (c.kind == copclass::CopulaKind::kStudentT) jc["nu"] = c.nu;
    cops.push_back(jc);
  }
  j["class_copulas"] = cops;
  json cycle = json::array();
  for (const auto& m : spec.marginal_cycle)
    cycle.push_back({{"family", copclass::family_name(m.family)}, {"params", m.params}});
  j["marginal_cycle"] = cycle;
  return j;
}

struct GenOptions {
  int preset = 1;
  int dim = 100;
  int n = 4000;
  std::uint64_t seed = 0;
  double rho0 = copclass::kDefaultRhoClass0;
  double rho1 = copclass::kDefaultRhoClass1;
  int block = copclass::kDefaultInformativeDims;
  double rho_noise = copclass::kDefaultRhoNoise;
  double train_frac = 0.7;
  bool emit_split = false;
  std::string output;
};

int run_gen(const GenOptions& opt) {
  copclass::DatasetSpec spec = copclass::table1_preset(opt.preset, opt.dim, opt.n, opt.seed);
  spec.class_copulas[0].rho_off = opt.rho0;
  spec.class_copulas[1].rho_off = opt.rho1;
  spec.class_copulas[0].informative_dims = opt.block;
  spec.class_copulas[1].informative_dims = opt.block;
  spec.class_copulas[0].rho_noise = opt.rho_noise;
  spec.class_copulas[1].rho_noise = opt.rho_noise;
  spec.split = opt.train_frac;
  const copclass::Dataset ds = copclass::generate(spec);
  copclass::write_dataset_csv(opt.output, ds.features, ds.labels);

  json manifest;
  manifest["command"] = "gen";
  manifest["spec"] = spec_to_json(spec);
  manifest["output"] = opt.output;

  if (opt.emit_split) {
    const std::uint64_t split_seed = copclass::Rng::mix(spec.seed, 0x53504c4954ULL);
    auto [train, test] = copclass::split_dataset(ds, spec.split, split_seed);
    std::string stem = opt.output;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") stem.resize(stem.size() - 4);
    copclass::write_dataset_csv(stem + "-train.csv", train.features, train.labels);
    copclass::write_dataset_csv(stem + "-test.csv", test.features, test.labels);
    manifest["split_seed"] = split_seed;
    manifest["train_output"] = stem + "-train.csv";
    manifest["test_output"] = stem + "-test.csv";
  }
  write_manifest(opt.output, manifest);
  return 0;
}

struct TrainOptions {
  std::string data;
  std::string output;
  std::string copula = "gaussian";
  std::string marginals = "empirical";
  std::string estimation = "eml";
  std::string families;  // comma-separated names, parametric mode
  std::string baseline;  // "normal" selects the baseline classifier
  bool uniform_priors = false;
};

std::vector<copclass::MarginalFamily> parse_families(const std::string& csv) {
  std::vector<copclass::MarginalFamily> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string name =
        comma == std::string::npos ? csv.substr(start) : csv.substr(start, comma - start);
    if (!name.empty()) out.push_back(copclass::family_from_name(name));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_train(const TrainOptions& opt) {
  const copclass::LabeledData data = copclass::read_dataset_csv(opt.data);

  json manifest;
  manifest["command"] = "train";
  manifest["data"] = opt.data;
  manifest["output"] = opt.output;
  manifest["uniform_priors"] = opt.uniform_priors;

  copclass::Classifier clf;
  if (opt.baseline == "normal") {
    clf = copclass::train_normal_classifier(data.features, data.labels, opt.uniform_priors);
    manifest["model"] = "normal";
    std::cout << "trained normal baseline: " << clf.class_count() << " classes, dim " << clf.dim()
              << "\n";
  } else if (opt.baseline.empty()) {
    copclass::TrainConfig config;
    config.copula =
        opt.copula == "t" ? copclass::CopulaKind::kStudentT : copclass::CopulaKind::kGaussian;
    if (opt.copula != "t" && opt.copula != "gaussian")
      throw CLI::ValidationError("--copula must be 'gaussian' or 't'");
    if (opt.marginals == "empirical")
      config.marginal_mode = copclass::TrainConfig::MarginalMode::kEmpirical;
    else if (opt.marginals == "parametric")
      config.marginal_mode = copclass::TrainConfig::MarginalMode::kParametric;
    else
      throw CLI::ValidationError("--marginals must be 'empirical' or 'parametric'");
    if (opt.estimation == "eml")
      config.estimation = copclass::TrainConfig::Estimation::kEml;
    else if (opt.estimation == "cml")
      config.estimation = copclass::TrainConfig::Estimation::kCml;
    else
      throw CLI::ValidationError("--estimation must be 'eml' or 'cml'");
    config.families = parse_families(opt.families);
    config.uniform_priors = opt.uniform_priors;

    std::vector<copclass::FitReport> reports;
    clf = copclass::train_copula_classifier(data.features, data.labels, config, &reports);

    manifest["model"] = "copula";
    manifest["copula"] = opt.copula;
    manifest["marginals"] = opt.marginals;
    manifest["estimation"] = opt.estimation;
    if (!opt.families.empty()) manifest["families"] = opt.families;

    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      std::cout << "class " << clf.copula_classes[i].label << ": loglik "
                << copclass::format_double(r.loglik);
      if (r.model.kind == copclass::CopulaKind::kStudentT)
        std::cout << ", nu " << copclass::format_double(r.model.nu);
      std::cout << ", iterations " << r.iterations << (r.repaired ? ", correlation repaired" : "");
      if (!r.note.empty()) std::cout << " [" << r.note << "]";
      std::cout << "\n";
    }
  } else {
    throw CLI::ValidationError("--baseline only supports 'normal'");
  }

  copclass::write_text_file(opt.output, copclass::classifier_to_json(clf) + "\n");
  write_manifest(opt.output, manifest);
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& output) {
  const copclass::Classifier clf =
      copclass::classifier_from_json(copclass::read_text_file(model_path));
  const copclass::LabeledData data = copclass::read_dataset_csv(data_path);
  if (data.features.cols() != clf.dim())
    throw std::invalid_argument("predict: model dimension " + std::to_string(clf.dim()) +
                                " does not match data dimension " +
                                std::to_string(data.features.cols()));
  std::vector<int> predictions(static_cast<std::size_t>(data.features.rows()));
  for (Eigen::Index i = 0; i < data.features.rows(); ++i)
    predictions[static_cast<std::size_t>(i)] = copclass::classify(clf, data.features.row(i).transpose());
  copclass::write_predictions_csv(output, predictions);

  json manifest;
  manifest["command"] = "predict";
  manifest["model"] = model_path;
  manifest["data"] = data_path;
  manifest["output"] = output;
  write_manifest(output, manifest);
  return 0;
}

int run_eval(const std::string& model_path, const std::string& data_path,
             const std::string& output) {
  const copclass::Classifier clf =
      copclass::classifier_from_json(copclass::read_text_file(model_path));
  const copclass::LabeledData data = copclass::read_dataset_csv(data_path);
  const copclass::Evaluation eval = copclass::evaluate(clf, data.features, data.labels);

  std::string report = "accuracy: " + format_accuracy(eval.accuracy) + "\n";
  report += "confusion (rows: true, cols: predicted; labels";
  for (int i = 0; i < clf.class_count(); ++i) report += " " + std::to_string(clf.label_at(i));
  report += "):\n";
  for (int i = 0; i < eval.confusion.rows(); ++i) {
    for (int j = 0; j < eval.confusion.cols(); ++j)
      report += (j ? " " : "") + std::to_string(eval.confusion(i, j));
    report += "\n";
  }
  std::cout << report;

  json manifest;
  manifest["command"] = "eval";
  manifest["model"] = model_path;
  manifest["data"] = data_path;
  manifest["accuracy"] = format_accuracy(eval.accuracy);
  if (!output.empty()) {
    copclass::write_text_file(output, report);
    manifest["output"] = output;
    write_manifest(output, manifest);
  } else {
    std::cout << "manifest: " << manifest.dump() << "\n";
  }
  return 0;
}

struct BenchOptions {
  std::vector<int> presets{1};
  std::vector<int> dims{10, 25, 50, 100};
  int reps = 5;
  int n = 4000;
  std::uint64_t seed = 0;
  double rho0 = copclass::kDefaultRhoClass0;
  double rho1 = copclass::kDefaultRhoClass1;
  int block = copclass::kDefaultInformativeDims;
  double rho_noise = copclass::kDefaultRhoNoise;
  double train_frac = 0.7;
  std::string output;
};

int run_bench(const BenchOptions& opt) {
  struct Row {
    int preset, dim, rep;
    std::string method;
    double accuracy;  // NaN marks a failed stage
  };
  std::vector<Row> rows;
  int failures = 0;

  for (int preset : opt.presets) {
    for (int dim : opt.dims) {
      for (int rep = 0; rep < opt.reps; ++rep) {
        const std::uint64_t rep_seed =
            copclass::Rng::mix(opt.seed, (static_cast<std::uint64_t>(preset) << 40) +
                                             (static_cast<std::uint64_t>(dim) << 20) +
                                             static_cast<std::uint64_t>(rep));
        double cop_acc = std::nan("");
        double norm_acc = std::nan("");
        try {
          copclass::DatasetSpec spec = copclass::table1_preset(preset, dim, opt.n, rep_seed);
          spec.class_copulas[0].rho_off = opt.rho0;
          spec.class_copulas[1].rho_off = opt.rho1;
          spec.class_copulas[0].informative_dims = opt.block;
          spec.class_copulas[1].informative_dims = opt.block;
          spec.class_copulas[0].rho_noise = opt.rho_noise;
          spec.class_copulas[1].rho_noise = opt.rho_noise;
          const copclass::Dataset ds = copclass::generate(spec);
          auto [train, test] =
              copclass::split_dataset(ds, opt.train_frac, copclass::Rng::mix(rep_seed, 0x53504c4954ULL));

          copclass::TrainConfig config;  // gaussian copula, empirical marginals, EML
          const copclass::Classifier cop =
              copclass::train_copula_classifier(train.features, train.labels, config);
          cop_acc = copclass::evaluate(cop, test.features, test.labels).accuracy;

          const copclass::Classifier norm =
              copclass::train_normal_classifier(train.features, train.labels);
          norm_acc = copclass::evaluate(norm, test.features, test.labels).accuracy;
        } catch (const std::exception& e) {
          ++failures;
          std::cerr << "bench: preset " << preset << " dim " << dim << " rep " << rep
                    << " failed: " << e.what() << "\n";
        }
        rows.push_back({preset, dim, rep, "copula", cop_acc});
        rows.push_back({preset, dim, rep, "normal", norm_acc});
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.preset, a.dim, a.rep, a.method) < std::tie(b.preset, b.dim, b.rep, b.method);
  });

  std::string csv = "preset,dim,rep,method,accuracy\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.preset) + "," + std::to_string(r.dim) + "," + std::to_string(r.rep) +
           "," + r.method + "," + (std::isnan(r.accuracy) ? "nan" : format_accuracy(r.accuracy)) +
           "\n";
  }
  copclass::write_text_file(opt.output, csv);

  // Ensemble means per (preset, dim, method).
  std::map<std::tuple<int, int, std::string>, std::pair<double, int>> sums;
  for (const auto& r : rows) {
    if (std::isnan(r.accuracy)) continue;
    auto& [sum, count] = sums[{r.preset, r.dim, r.method}];
    sum += r.accuracy;
    count += 1;
  }
  std::cout << "preset dim method mean_accuracy\n";
  for (const auto& [key, val] : sums) {
    std::cout << std::get<0>(key) << " " << std::get<1>(key) << " " << std::get<2>(key) << " "
              << format_accuracy(val.first / val.second) << "\n";
  }

  json manifest;
  manifest["command"] = "bench";
  manifest["presets"] = opt.presets;
  manifest["dims"] = opt.dims;
  manifest["reps"] = opt.reps;
  manifest["n"] = opt.n;
  manifest["seed"] = opt.seed;
  manifest["rho0"] = opt.rho0;
  manifest["rho1"] = opt.rho1;
  manifest["block"] = opt.block;
  manifest["rho_noise"] = opt.rho_noise;
  manifest["train_frac"] = opt.train_frac;
  manifest["output"] = opt.output;
  manifest["failures"] = failures;
  write_manifest(opt.output, manifest);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"copula discriminant classification toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic dataset");
  cmd_gen->add_option("--preset", gen.preset, "benchmark preset id (1..8)")->required();
  cmd_gen->add_option("--dim", gen.dim, "feature dimension");
  cmd_gen->add_option("--n", gen.n, "number of samples");
  cmd_gen->add_option("--seed", gen.seed, "generator seed");
  cmd_gen->add_option("--rho0", gen.rho0, "class-0 copula correlation");
  cmd_gen->add_option("--rho1", gen.rho1, "class-1 copula correlation");
  cmd_gen->add_option("--block", gen.block, "informative feature block size (0 = all)");
  cmd_gen->add_option("--rho-noise", gen.rho_noise, "shared correlation outside the block");
  cmd_gen->add_option("--train-frac", gen.train_frac, "train fraction for --emit-split");
  cmd_gen->add_flag("--emit-split", gen.emit_split, "also write <stem>-train.csv / <stem>-test.csv");
  cmd_gen->add_option("-o,--output", gen.output, "dataset CSV path")->required();

  TrainOptions train;
  auto* cmd_train = app.add_subcommand("train", "fit a classifier from a dataset CSV");
  cmd_train->add_option("data", train.data, "training CSV")->required();
  cmd_train->add_option("--copula", train.copula, "gaussian | t");
  cmd_train->add_option("--marginals", train.marginals, "empirical | parametric");
  cmd_train->add_option("--estimation", train.estimation, "eml | cml");
  cmd_train->add_option("--families", train.families,
                        "comma-separated family names for parametric marginals");
  cmd_train->add_option("--baseline", train.baseline, "'normal' trains the baseline instead");
  cmd_train->add_flag("--uniform-priors", train.uniform_priors, "force equal class priors");
  cmd_train->add_option("-o,--output", train.output, "model JSON path")->required();

  std::string predict_model, predict_data, predict_out;
  auto* cmd_predict = app.add_subcommand("predict", "label a dataset with a trained model");
  cmd_predict->add_option("model", predict_model, "model JSON")->required();
  cmd_predict->add_option("data", predict_data, "dataset CSV")->required();
  cmd_predict->add_option("-o,--output", predict_out, "predictions CSV path")->required();

  std::string eval_model, eval_data, eval_out;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a model on labeled data");
  cmd_eval->add_option("model", eval_model, "model JSON")->required();
  cmd_eval->add_option("data", eval_data, "labeled dataset CSV")->required();
  cmd_eval->add_option("-o,--output", eval_out, "optional report path");

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "dimension/preset benchmark sweep");
  cmd_bench->add_option("--presets", bench.presets, "preset ids")->delimiter(',');
  cmd_bench->add_option("--dims", bench.dims, "dimensions")->delimiter(',');
  cmd_bench->add_option("--reps", bench.reps, "repetitions per cell");
  cmd_bench->add_option("--n", bench.n, "samples per dataset");
  cmd_bench->add_option("--seed", bench.seed, "base seed");
  cmd_bench->add_option("--rho0", bench.rho0, "class-0 copula correlation");
  cmd_bench->add_option("--rho1", bench.rho1, "class-1 copula correlation");
  cmd_bench->add_option("--block", bench.block, "informative feature block size (0 = all)");
  cmd_bench->add_option("--rho-noise", bench.rho_noise, "shared correlation outside the block");
  cmd_bench->add_option("--train-frac", bench.train_frac, "train fraction");
  cmd_bench->add_option("-o,--output", bench.output, "results CSV path")->required();

  try {
    app.parse(argc, argv);
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_train->parsed()) return run_train(train);
    if (cmd_predict->parsed()) return run_predict(predict_model, predict_data, predict_out);
    if (cmd_eval->parsed()) return run_eval(eval_model, eval_data, eval_out);
    if (cmd_bench->parsed()) return run_bench(bench);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
