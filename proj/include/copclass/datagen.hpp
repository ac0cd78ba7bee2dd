#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "copclass/copula.hpp"
#include "copclass/marginals.hpp"

namespace copclass {

// Copula driving one class: exchangeable correlation with the given
// off-diagonal value over the first informative_dims features; features
// beyond the block share the (class-independent) rho_noise correlation.
// nu is used only by the t kind.
struct ClassCopulaSpec {
  CopulaKind kind = CopulaKind::kGaussian;
  double rho_off = 0.0;
  int informative_dims = 0;  // 0 means every feature participates
  double rho_noise = 0.0;
  double nu = 5.0;
};

// Default class separation: shared marginals, classes differ in copula
// correlation strength over a fixed informative block. Keeping the block
// size fixed while the dimension grows means added features carry no class
// signal, which is what degrades the covariance baseline at high dimension.
constexpr double kDefaultRhoClass0 = 0.0;
constexpr double kDefaultRhoClass1 = 0.95;
constexpr int kDefaultInformativeDims = 10;
constexpr double kDefaultRhoNoise = 0.3;

struct DatasetSpec {
  int preset_id = 0;  // 1..8 for the built-in benchmark presets, 0 for custom
  int dim = 100;
  int n_samples = 4000;
  // Families assigned to features round-robin; shared by all classes unless
  // class_marginal_cycles overrides them per class.
  std::vector<ParametricMarginal> marginal_cycle;
  std::vector<std::vector<ParametricMarginal>> class_marginal_cycles;
  std::vector<ClassCopulaSpec> class_copulas;  // one per class
  std::vector<double> class_balance;           // sums to 1
  std::uint64_t seed = 0;
  double split = 0.7;  // train fraction used by downstream splits

  void validate() const;
  int class_count() const { return static_cast<int>(class_copulas.size()); }
  const std::vector<ParametricMarginal>& cycle_for_class(int cls) const;
};

struct Dataset {
  Eigen::MatrixXd features;  // n_samples x dim
  std::vector<int> labels;   // class ids from 0
  DatasetSpec spec;
};

// Draws copula samples per class and maps them through the marginal
// quantiles. Deterministic in spec.seed; class counts are exact up to
// rounding of the balance.
Dataset generate(const DatasetSpec& spec);

// Benchmark presets 1..8: marginal cycles from the standard table, Gaussian
// class copulas with the default correlation separation, split 0.7.
DatasetSpec table1_preset(int id, int dim, int n, std::uint64_t seed);

// One dataset per dimension, child seeds derived from (base seed, dim).
std::vector<Dataset> dimension_sweep(const DatasetSpec& base, const std::vector<int>& dims);

// Seeded shuffle then prefix split.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double train_fraction,
                                          std::uint64_t seed);

}  // namespace copclass
