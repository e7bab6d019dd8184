#include "persuasion/matrix_game.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "persuasion/approx.hpp"
#include "persuasion/monotone_regret.hpp"

namespace persuasion {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) throw InstanceError("payoff entries must be finite");
}

// Softmax of sign * eta * cum into p.
void softmax(const std::vector<double>& cum, double eta, double sign,
             std::vector<double>& p) {
  double top = -std::numeric_limits<double>::infinity();
  for (double c : cum) top = std::max(top, sign * c);
  double total = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    p[i] = std::exp(eta * (sign * cum[i] - top));
    total += p[i];
  }
  for (double& v : p) v /= total;
}

}  // namespace

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols,
                       std::vector<double> payoff)
    : rows_(rows), cols_(cols), a_(std::move(payoff)) {
  if (rows_ == 0 || cols_ == 0 || a_.size() != rows_ * cols_) {
    throw InstanceError("payoff matrix has inconsistent shape");
  }
  for (double v : a_) require_finite(v);
  auto [lo, hi] = std::minmax_element(a_.begin(), a_.end());
  lo_ = *lo;
  hi_ = *hi;
}

MatrixGame::MatrixGame(const std::vector<std::vector<double>>& payoff)
    : MatrixGame(payoff.size(), payoff.empty() ? 0 : payoff.front().size(),
                 [&] {
                   std::vector<double> flat;
                   for (const auto& row : payoff) {
                     if (row.size() != payoff.front().size()) {
                       throw InstanceError("ragged payoff matrix");
                     }
                     flat.insert(flat.end(), row.begin(), row.end());
                   }
                   return flat;
                 }()) {}

void MatrixGame::row_payoffs(std::span<const double> y,
                             std::span<double> out) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    const double* row = &a_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * y[j];
    out[i] = s;
  }
}

void MatrixGame::col_payoffs(std::span<const double> x,
                             std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = &a_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) out[j] += x[i] * row[j];
  }
}

ThresholdKernelGame::ThresholdKernelGame(const ThresholdKernel& k,
                                         std::vector<double> xs,
                                         std::vector<double> ys, double sign)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.empty() || ys_.empty()) throw InstanceError("empty action grid");
  if (!std::is_sorted(xs_.begin(), xs_.end()) ||
      !std::is_sorted(ys_.begin(), ys_.end())) {
    throw InstanceError("action grids must be sorted");
  }
  for (double x : xs_) {
    r_.push_back(sign * k.r(x));
    s_.push_back(sign * k.s(x));
    require_finite(r_.back());
    require_finite(s_.back());
    first_.push_back(static_cast<std::size_t>(
        std::lower_bound(ys_.begin(), ys_.end(), x) - ys_.begin()));
  }
  for (double y : ys_) {
    t_.push_back(k.t(y));
    require_finite(t_.back());
  }
  // Entry range: row i takes r_i on columns before first_[i] and
  // r_i + s_i t_j after, so suffix extremes of t suffice.
  const std::size_t n = ys_.size();
  std::vector<double> tmin(n + 1, std::numeric_limits<double>::infinity());
  std::vector<double> tmax(n + 1, -std::numeric_limits<double>::infinity());
  for (std::size_t j = n; j-- > 0;) {
    tmin[j] = std::min(tmin[j + 1], t_[j]);
    tmax[j] = std::max(tmax[j + 1], t_[j]);
  }
  lo_ = std::numeric_limits<double>::infinity();
  hi_ = -lo_;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (first_[i] > 0) {
      lo_ = std::min(lo_, r_[i]);
      hi_ = std::max(hi_, r_[i]);
    }
    if (first_[i] < n) {
      const double a = r_[i] + s_[i] * tmin[first_[i]];
      const double b = r_[i] + s_[i] * tmax[first_[i]];
      lo_ = std::min({lo_, a, b});
      hi_ = std::max({hi_, a, b});
    }
  }
}

double ThresholdKernelGame::entry(std::size_t i, std::size_t j) const {
  return j >= first_[i] ? r_[i] + s_[i] * t_[j] : r_[i];
}

void ThresholdKernelGame::row_payoffs(std::span<const double> y,
                                      std::span<double> out) const {
  const std::size_t n = ys_.size();
  // suffix[j] = sum_{l >= j} t_l y_l and mass[j] = sum_{l >= j} y_l
  std::vector<double> suffix(n + 1, 0.0), mass(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) {
    suffix[j] = suffix[j + 1] + t_[j] * y[j];
    mass[j] = mass[j + 1] + y[j];
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    out[i] = r_[i] * mass[0] + s_[i] * suffix[first_[i]];
  }
}

void ThresholdKernelGame::col_payoffs(std::span<const double> x,
                                      std::span<double> out) const {
  // Rows i with first_[i] <= j are active in column j; first_ is
  // nondecreasing in i because xs is sorted.
  double base = 0.0;
  for (std::size_t i = 0; i < xs_.size(); ++i) base += x[i] * r_[i];
  double active = 0.0;
  std::size_t i = 0;
  for (std::size_t j = 0; j < ys_.size(); ++j) {
    while (i < xs_.size() && first_[i] <= j) {
      active += x[i] * s_[i];
      ++i;
    }
    out[j] = base + active * t_[j];
  }
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t m) {
  if (m < 2) throw InstanceError("grid needs at least two points");
  if (!(lo <= hi)) throw InstanceError("empty grid interval");
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i] = lo + (hi - lo) * (static_cast<double>(i) / (m - 1));
  }
  g.back() = hi;
  return g;
}

MatrixGame discretize(const std::function<double(double, double)>& kernel,
                      double lo, double hi, std::size_t m) {
  const auto g = uniform_grid(lo, hi, m);
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i * m + j] = kernel(g[i], g[j]);
  }
  return MatrixGame(m, m, std::move(a));
}

GameReport solve_matrix_game(const PayoffOperator& game,
                             const SolverOptions& options) {
  if (!(options.eps > 0.0)) throw InstanceError("eps must be positive");
  if (options.max_iters < 1) throw InstanceError("max_iters must be positive");
  const std::size_t m = game.rows(), k = game.cols();
  const double lo = game.min_entry();
  const double range = std::max(game.max_entry() - lo, 1e-300);
  const double log_m = std::log(static_cast<double>(std::max(m, k)));
  const double eta_scale = std::sqrt(8.0 * std::max(log_m, 1.0));

  std::vector<double> cum_row(m, 0.0), cum_col(k, 0.0);
  std::vector<double> x(m), y(k), ux(m), uy(k);
  std::vector<double> sum_x(m, 0.0), sum_y(k, 0.0);
  std::vector<double> avg_x(m), avg_y(k);

  GameReport rep;
  auto evaluate = [&](std::int64_t t) {
    for (std::size_t i = 0; i < m; ++i) avg_x[i] = sum_x[i] / t;
    for (std::size_t j = 0; j < k; ++j) avg_y[j] = sum_y[j] / t;
    game.row_payoffs(avg_y, ux);
    game.col_payoffs(avg_x, uy);
    rep.row_best_response = *std::max_element(ux.begin(), ux.end());
    rep.col_best_response = *std::min_element(uy.begin(), uy.end());
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i) v += avg_x[i] * ux[i];
    rep.value_estimate = v;
    rep.duality_gap = std::max(rep.row_best_response - rep.col_best_response, 0.0);
    rep.iterations = t;
    return rep.duality_gap <= options.eps;
  };

  for (std::int64_t t = 1; t <= options.max_iters; ++t) {
    const double eta = eta_scale / std::sqrt(static_cast<double>(t));
    softmax(cum_row, eta, 1.0, x);
    softmax(cum_col, eta, -1.0, y);
    game.row_payoffs(y, ux);
    game.col_payoffs(x, uy);
    for (std::size_t i = 0; i < m; ++i) {
      cum_row[i] += (ux[i] - lo) / range;
      sum_x[i] += x[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
      cum_col[j] += (uy[j] - lo) / range;
      sum_y[j] += y[j];
    }
    if (t % options.check_every == 0 || t == options.max_iters) {
      if (evaluate(t)) {
        rep.converged = true;
        break;
      }
    }
  }
  rep.row_strategy = avg_x;
  rep.col_strategy = avg_y;
  return rep;
}

std::string kernel_name(KernelId k) {
  return k == KernelId::kRegret ? "g" : "h";
}

namespace {

// Mass of each of `bins` equal cells of [0, top] under a grid strategy.
std::vector<double> bin_grid(const std::vector<double>& grid,
                             const std::vector<double>& p, double top,
                             int bins) {
  std::vector<double> out(bins, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int b = static_cast<int>(grid[i] / top * bins);
    out[std::clamp(b, 0, bins - 1)] += p[i];
  }
  return out;
}

std::vector<double> bin_analytic(const MixedThreshold& s, double top,
                                 int bins) {
  std::vector<double> out(bins, 0.0);
  for (int b = 0; b < bins; ++b) {
    const double lo = top * b / bins;
    const double hi = top * (b + 1) / bins;
    out[b] = (b + 1 == bins ? s.cdf(hi) : s.cdf_left(hi)) -
             (b == 0 ? 0.0 : s.cdf_left(lo));
  }
  return out;
}

double tv(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return 0.5 * d;
}

}  // namespace

LemmaReport verify_lemma(KernelId kernel, double alpha, std::size_t m,
                         double eps, std::int64_t max_iters, int bins) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InstanceError("alpha must lie in (0,1)");
  }
  const auto start = std::chrono::steady_clock::now();
  const double top = 1.0 - alpha;
  const auto grid = uniform_grid(0.0, top, m);
  // x always indexes rows. For the ratio game the x-player minimizes, so the
  // game is solved with negated payoffs.
  const bool ratio = kernel == KernelId::kRatio;
  const ThresholdKernelGame game(ratio ? ratio_kernel() : regret_kernel(),
                                 grid, grid, ratio ? -1.0 : 1.0);
  LemmaReport rep{kernel, alpha, m, {}, 0, 0, 0, 0, 0, bins, 0};
  rep.game = solve_matrix_game(game, {eps, max_iters, 16});
  rep.value = ratio ? -rep.game.value_estimate : rep.game.value_estimate;
  rep.analytic = ratio ? apr_mon_value(alpha) : reg_mon_value(alpha);
  rep.abs_error = std::abs(rep.value - rep.analytic);

  const MixedThreshold ax = ratio ? approx_adversary_opt(alpha) : adversary_opt(alpha);
  const MixedThreshold ay = ratio ? approx_sender_opt(alpha) : sender_opt(alpha);
  rep.tv_x = tv(bin_grid(grid, rep.game.row_strategy, top, bins),
                bin_analytic(ax, top, bins));
  rep.tv_y = tv(bin_grid(grid, rep.game.col_strategy, top, bins),
                bin_analytic(ay, top, bins));
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace persuasion
