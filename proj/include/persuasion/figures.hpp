#pragma once

// Curve data behind the plots: regret and approximation values against the
// top-state mass, the optimal threshold density, and the binary reduction.

#include <string>
#include <vector>

namespace persuasion {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// (mu_n, Reg_MON) on an even grid over (0, 1], with 1/e inserted.
Table regret_curve(int points);
/// (y, density of sender_opt(alpha)) over the continuous part's support.
Table density_curve(double alpha, int points);
/// (mu_n, Apr_MON) on an even grid over (0, 1], with e^-1 and e^-2 inserted.
Table approx_curve(int points);
/// (q, u'(q), concavification) for the regret reduction at mu_n.
Table uprime_curve(double mu_n, int points);

/// (n, 1 - 2/sqrt(n), 1 - 1/(4n^2)) for n = 2..max_n.
Table thm2_bounds(int max_n);

}  // namespace persuasion
