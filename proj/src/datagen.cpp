#include "copclass/datagen.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "copclass/rng.hpp"

namespace copclass {

void DatasetSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("DatasetSpec: dim must be >= 1");
  if (n_samples < 16) throw std::invalid_argument("DatasetSpec: n_samples must be >= 16");
  if (!(split > 0.0 && split < 1.0)) throw std::invalid_argument("DatasetSpec: split must lie in (0, 1)");
  if (marginal_cycle.empty() && class_marginal_cycles.empty())
    throw std::invalid_argument("DatasetSpec: marginal cycle must be nonempty");
  if (class_copulas.empty()) throw std::invalid_argument("DatasetSpec: class copulas must be nonempty");
  if (class_balance.size() != class_copulas.size())
    throw std::invalid_argument("DatasetSpec: class balance and copulas must have equal size");
  if (!class_marginal_cycles.empty() && class_marginal_cycles.size() != class_copulas.size())
    throw std::invalid_argument("DatasetSpec: per-class marginal cycles must cover every class");
  double balance_sum = 0.0;
  for (double b : class_balance) {
    if (!(b > 0.0)) throw std::invalid_argument("DatasetSpec: class balance entries must be positive");
    balance_sum += b;
  }
  if (std::fabs(balance_sum - 1.0) > 1e-9)
    throw std::invalid_argument("DatasetSpec: class balance must sum to 1");
  for (int c = 0; c < class_count(); ++c) {
    for (const auto& m : cycle_for_class(c)) m.validate();
    const auto& cop = class_copulas[c];
    if (cop.kind == CopulaKind::kStudentT && !(cop.nu > 2.0))
      throw std::invalid_argument("DatasetSpec: t copula requires nu > 2");
    if (cop.informative_dims < 0)
      throw std::invalid_argument("DatasetSpec: informative_dims must be nonnegative");
  }
}

// Exchangeable correlation over the leading block; the remaining features
// share rho_noise among themselves and are uncorrelated with the block.
CorrelationMatrix class_correlation(int dim, const ClassCopulaSpec& spec) {
  const int block =
      spec.informative_dims == 0 ? dim : std::min(dim, spec.informative_dims);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
  m.topLeftCorner(block, block).setConstant(spec.rho_off);
  if (block < dim)
    m.bottomRightCorner(dim - block, dim - block).setConstant(spec.rho_noise);
  m.diagonal().setOnes();
  return CorrelationMatrix::from_entries(m);
}

const std::vector<ParametricMarginal>& DatasetSpec::cycle_for_class(int cls) const {
  if (!class_marginal_cycles.empty()) return class_marginal_cycles[cls];
  return marginal_cycle;
}

Dataset generate(const DatasetSpec& spec) {
  spec.validate();
  const int c = spec.class_count();
  const int d = spec.dim;

  // Exact class counts: floor the targets, then hand leftovers to the
  // largest fractional remainders.
  std::vector<int> counts(c);
  std::vector<std::pair<double, int>> remainders(c);
  int assigned = 0;
  for (int k = 0; k < c; ++k) {
    const double target = spec.class_balance[k] * spec.n_samples;
    counts[k] = static_cast<int>(target);
    remainders[k] = {target - counts[k], k};
    assigned += counts[k];
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; assigned < spec.n_samples; ++k, ++assigned) counts[remainders[k % c].second] += 1;

  Dataset ds;
  ds.spec = spec;
  ds.features.resize(spec.n_samples, d);
  ds.labels.resize(spec.n_samples);

  Eigen::Index row = 0;
  for (int k = 0; k < c; ++k) {
    const auto& cop_spec = spec.class_copulas[k];
    CorrelationMatrix rho = class_correlation(d, cop_spec);
    const CopulaModel copula = cop_spec.kind == CopulaKind::kStudentT
                                   ? CopulaModel::student_t(std::move(rho), cop_spec.nu)
                                   : CopulaModel::gaussian(std::move(rho));
    const Eigen::MatrixXd u = copula.sample(counts[k], Rng::mix(spec.seed, static_cast<std::uint64_t>(k)));
    const auto& cycle = spec.cycle_for_class(k);
    for (Eigen::Index i = 0; i < u.rows(); ++i, ++row) {
      ds.labels[row] = k;
      for (int j = 0; j < d; ++j)
        ds.features(row, j) = cycle[j % cycle.size()].quantile(u(i, j));
    }
  }
  return ds;
}

DatasetSpec table1_preset(int id, int dim, int n, std::uint64_t seed) {
  auto normal = [](double mu, double sigma) { return ParametricMarginal{MarginalFamily::kNormal, {mu, sigma}}; };
  (void)normal;
  auto t = [](double nu) { return ParametricMarginal{MarginalFamily::kStudentT, {nu}}; };
  auto gam = [](double shape, double scale) { return ParametricMarginal{MarginalFamily::kGamma, {shape, scale}}; };
  auto expo = [](double rate) { return ParametricMarginal{MarginalFamily::kExponential, {rate}}; };
  auto logn = [](double mu, double sigma) { return ParametricMarginal{MarginalFamily::kLogNormal, {mu, sigma}}; };
  auto chisq = [](double dof) { return ParametricMarginal{MarginalFamily::kChiSquare, {dof}}; };

  DatasetSpec spec;
  spec.preset_id = id;
  spec.dim = dim;
  spec.n_samples = n;
  spec.seed = seed;
  spec.split = 0.7;
  spec.class_balance = {0.5, 0.5};
  spec.class_copulas = {
      {CopulaKind::kGaussian, kDefaultRhoClass0, kDefaultInformativeDims, kDefaultRhoNoise, 0.0},
      {CopulaKind::kGaussian, kDefaultRhoClass1, kDefaultInformativeDims, kDefaultRhoNoise, 0.0}};
  switch (id) {
    case 1: spec.marginal_cycle = {t(2.0)}; break;
    case 2: spec.marginal_cycle = {gam(4.0, 2.0)}; break;
    case 3: spec.marginal_cycle = {expo(0.7)}; break;
    case 4: spec.marginal_cycle = {gam(4.3, 1.7), logn(0.64, 0.22)}; break;
    case 5: spec.marginal_cycle = {expo(0.6), gam(4.0, 2.0)}; break;
    case 6: spec.marginal_cycle = {logn(0.7, 0.2), gam(5.0, 3.0), expo(0.5)}; break;
    case 7: spec.marginal_cycle = {expo(0.32), gam(3.1, 4.3), chisq(3.2)}; break;
    case 8: spec.marginal_cycle = {logn(0.53, 0.36), gam(6.2, 3.3), expo(0.44), chisq(5.0)}; break;
    default:
      throw std::invalid_argument("table1_preset: id must lie in 1..8, got " + std::to_string(id));
  }
  spec.validate();
  return spec;
}

std::vector<Dataset> dimension_sweep(const DatasetSpec& base, const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dimension_sweep: dims must be nonempty");
  std::vector<Dataset> out;
  out.reserve(dims.size());
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("dimension_sweep: every dim must be >= 2");
    DatasetSpec spec = base;
    spec.dim = d;
    spec.seed = Rng::mix(base.seed, 0x5357454550ULL + static_cast<std::uint64_t>(d));
    out.push_back(generate(spec));
  }
  return out;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double train_fraction,
                                          std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("split_dataset: train fraction must lie in (0, 1)");
  const auto n = ds.features.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  const auto n_train = static_cast<Eigen::Index>(std::llround(train_fraction * static_cast<double>(n)));
  if (n_train < 1 || n_train >= n)
    throw std::invalid_argument("split_dataset: split leaves an empty part");

  auto take = [&](Eigen::Index from, Eigen::Index count) {
    Dataset part;
    part.spec = ds.spec;
    part.features.resize(count, ds.features.cols());
    part.labels.resize(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i) {
      part.features.row(i) = ds.features.row(order[static_cast<std::size_t>(from + i)]);
      part.labels[static_cast<std::size_t>(i)] = ds.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(from + i)])];
    }
    return part;
  };
  return {take(0, n_train), take(n_train, n - n_train)};
}

}  // namespace copclass
