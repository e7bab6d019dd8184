#include "persuasion/multidim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "persuasion/mixed_threshold.hpp"
#include "persuasion/standard.hpp"

namespace persuasion {

namespace {

void require_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw InstanceError("grid needs at least one dimension");
  for (std::size_t d : dims) {
    if (d == 0) throw InstanceError("every dimension needs a level");
  }
}

std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t j = dims.size(); j-- > 1;) s[j - 1] = s[j] * dims[j];
  return s;
}

std::vector<double> product_joint(const std::vector<std::size_t>& dims,
                                  const std::vector<std::vector<double>>& m) {
  const std::size_t n = grid_size(dims);
  const auto st = strides(dims);
  std::vector<double> joint(n, 1.0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    for (std::size_t j = 0; j < dims.size(); ++j) {
      joint[idx] *= m[j][(idx / st[j]) % dims[j]];
    }
  }
  return joint;
}

}  // namespace

std::size_t grid_size(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

GridInstance::GridInstance(
    std::vector<std::size_t> dims,
    std::optional<std::vector<std::vector<double>>> marginals, Prior prior,
    ReceiverUtility utility)
    : dims_(std::move(dims)),
      marginals_(std::move(marginals)),
      prior_(std::move(prior)),
      utility_(std::move(utility)) {
  if (utility_.size() != prior_.size()) {
    throw InstanceError("utility must have one entry per grid cell");
  }
}

GridInstance GridInstance::product(std::vector<std::size_t> dims,
                                   std::vector<std::vector<double>> marginals,
                                   std::vector<double> utility) {
  require_dims(dims);
  if (marginals.size() != dims.size()) {
    throw InstanceError("one marginal per dimension required");
  }
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (marginals[j].size() != dims[j]) {
      throw InstanceError("marginal length differs from its dimension");
    }
    Prior check(marginals[j]);  // validates positivity and normalization
  }
  Prior joint(product_joint(dims, marginals));
  return GridInstance(std::move(dims), std::move(marginals), std::move(joint),
                      ReceiverUtility(std::move(utility)));
}

GridInstance GridInstance::joint(std::vector<std::size_t> dims,
                                 std::vector<double> joint,
                                 std::vector<double> utility) {
  require_dims(dims);
  if (joint.size() != grid_size(dims)) {
    throw InstanceError("joint prior must have one entry per grid cell");
  }
  return GridInstance(std::move(dims), std::nullopt, Prior(std::move(joint)),
                      ReceiverUtility(std::move(utility)));
}

const std::vector<std::vector<double>>& GridInstance::marginals() const {
  if (!marginals_) throw InstanceError("prior is not a product");
  return *marginals_;
}

GridInstance GridInstance::with_utility(std::vector<double> utility) const {
  return GridInstance(dims_, marginals_, prior_,
                      ReceiverUtility(std::move(utility)));
}

std::size_t GridInstance::index(const std::vector<std::size_t>& c) const {
  if (c.size() != dims_.size()) throw InstanceError("coordinate rank differs");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (c[j] >= dims_[j]) throw InstanceError("coordinate out of range");
    idx = idx * dims_[j] + c[j];
  }
  return idx;
}

std::vector<std::size_t> GridInstance::coords(std::size_t index) const {
  std::vector<std::size_t> c(dims_.size());
  for (std::size_t j = dims_.size(); j-- > 0;) {
    c[j] = index % dims_[j];
    index /= dims_[j];
  }
  return c;
}

bool is_monotone(const std::vector<std::size_t>& dims,
                 std::span<const double> utility) {
  const std::size_t n = grid_size(dims);
  if (utility.size() != n) throw InstanceError("utility size differs from grid");
  const auto st = strides(dims);
  for (std::size_t idx = 0; idx < n; ++idx) {
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if ((idx / st[j]) % dims[j] + 1 < dims[j] &&
          utility[idx] > utility[idx + st[j]]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<double> median_high_masses(const GridInstance& inst) {
  const auto& m = inst.marginals();
  const auto& dims = inst.dims();
  // Per dimension, the part of each level's segment lying above 1/2.
  std::vector<std::vector<double>> upper(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) {
    double cum = 0.0;
    for (std::size_t l = 0; l < dims[j]; ++l) {
      const double next = l + 1 == dims[j] ? 1.0 : cum + m[j][l];
      upper[j].push_back(std::clamp(next - 0.5, 0.0, m[j][l]));
      cum = next;
    }
  }
  return product_joint(dims, upper);
}

FiniteScheme median_knapsack_scheme(const GridInstance& inst) {
  if (!inst.is_product()) {
    throw InstanceError("the median scheme needs a product prior");
  }
  const std::vector<double> high = median_high_masses(inst);
  std::vector<double> low(high.size());
  for (std::size_t i = 0; i < high.size(); ++i) {
    low[i] = std::max(inst.prior()[i] - high[i], 0.0);
  }
  return scheme_from_signal_masses({low, high});
}

MdRegretCheck md_regret_bound_check(const GridInstance& inst) {
  const FiniteScheme s = median_knapsack_scheme(inst);
  MdRegretCheck c{};
  c.regret = optimal_knapsack(inst.prior(), inst.utility()).optimal_utility -
             sender_utility(s, inst.utility());
  c.bound = 1.0 - std::ldexp(1.0, -static_cast<int>(inst.dims().size()));
  c.holds = c.regret <= c.bound + 1e-9;
  return c;
}

AntidiagonalEmbedding antidiagonal_embedding(std::size_t m, double eps) {
  if (m < 2) throw InstanceError("need m >= 2");
  if (!(eps > 0.0 && eps < 1.0)) throw InstanceError("eps must lie in (0,1)");
  std::vector<double> joint(m * m, eps / static_cast<double>(m * m - m));
  std::vector<std::size_t> diag;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t idx = r * m + (m - 1 - r);
    joint[idx] = (1.0 - eps) / static_cast<double>(m);
    diag.push_back(idx);
  }
  return {GridInstance::joint({m, m}, std::move(joint),
                              std::vector<double>(m * m, 0.0)),
          std::move(diag),
          Prior(std::vector<double>(m, 1.0 / static_cast<double>(m)))};
}

std::vector<double> embed_antidiagonal_utility(std::size_t m,
                                               std::span<const double> diag) {
  if (diag.size() != m) throw InstanceError("one utility per diagonal state");
  const double lo = *std::min_element(diag.begin(), diag.end());
  const double hi = *std::max_element(diag.begin(), diag.end());
  std::vector<double> u(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      u[i * m + j] = i + j < m - 1 ? lo : (i + j > m - 1 ? hi : diag[i]);
    }
  }
  return u;
}

std::vector<double> monotone_utility_from_increments(
    const std::vector<std::size_t>& dims, std::span<const double> increments,
    double offset) {
  const std::size_t n = grid_size(dims);
  if (increments.size() != n) throw InstanceError("one increment per cell");
  std::vector<double> u(increments.begin(), increments.end());
  for (double v : u) {
    if (!(v >= 0.0)) throw InstanceError("increments must be nonnegative");
  }
  const auto st = strides(dims);
  for (std::size_t j = 0; j < dims.size(); ++j) {
    for (std::size_t idx = 0; idx < n; ++idx) {
      if ((idx / st[j]) % dims[j] > 0) u[idx] += u[idx - st[j]];
    }
  }
  for (double& v : u) v -= offset;
  return u;
}

std::vector<double> sample_monotone_utility(const std::vector<std::size_t>& dims,
                                            std::uint64_t seed) {
  require_dims(dims);
  const std::size_t n = grid_size(dims);
  if (n > 10000) throw InstanceError("grid too large for sampling");
  std::mt19937_64 rng(seed);
  std::vector<double> inc(n);
  for (double& v : inc) {
    v = uniform01(rng) < 0.5 ? 0.0 : -std::log(1.0 - uniform01(rng));
  }
  auto u = monotone_utility_from_increments(dims, inc, 0.0);
  const double top = u.back();
  const double offset = uniform01(rng) * top;
  for (double& v : u) v -= offset;
  return u;
}

std::vector<std::vector<double>> sample_product_marginals(
    const std::vector<std::size_t>& dims, std::uint64_t seed) {
  require_dims(dims);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> m(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) {
    double total = 0.0;
    for (std::size_t l = 0; l < dims[j]; ++l) {
      m[j].push_back(uniform01(rng) + 0.01);
      total += m[j].back();
    }
    for (double& v : m[j]) v /= total;
  }
  return m;
}

MdSweepResult md_sweep(const std::vector<std::size_t>& dims, int priors,
                       int utilities, std::uint64_t seed) {
  MdSweepResult r{-1.0, 1.0 - std::ldexp(1.0, -static_cast<int>(dims.size())),
                  0, 0};
  const std::size_t n = grid_size(dims);
  for (int p = 0; p < priors; ++p) {
    const auto marg = sample_product_marginals(dims, seed + 1'000'003ULL * p);
    GridInstance inst =
        GridInstance::product(dims, marg, std::vector<double>(n, 0.0));
    for (int k = 0; k < utilities; ++k) {
      const auto u = sample_monotone_utility(
          dims, seed ^ (0x9e3779b97f4a7c15ULL * (1 + p * utilities + k)));
      const MdRegretCheck c = md_regret_bound_check(inst.with_utility(u));
      r.max_regret = std::max(r.max_regret, c.regret);
      ++r.instances;
      if (!c.holds) ++r.violations;
    }
  }
  return r;
}

}  // namespace persuasion
