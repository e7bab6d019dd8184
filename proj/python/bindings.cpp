#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "persuasion/approx.hpp"
#include "persuasion/arbitrary.hpp"
#include "persuasion/matrix_game.hpp"
#include "persuasion/mixed_threshold.hpp"
#include "persuasion/monotone_regret.hpp"
#include "persuasion/multidim.hpp"
#include "persuasion/standard.hpp"
#include "persuasion/verify.hpp"

namespace py = pybind11;
using namespace persuasion;

namespace {

using AtomList = std::vector<std::pair<std::vector<double>, double>>;

AtomList to_py(const FiniteScheme& s) {
  AtomList out;
  for (const auto& a : s.atoms()) {
    const auto p = a.posterior.probs();
    out.emplace_back(std::vector<double>(p.begin(), p.end()), a.weight);
  }
  return out;
}

FiniteScheme from_py(const AtomList& atoms) {
  std::vector<SchemeAtom> v;
  for (const auto& [p, w] : atoms) v.push_back({Posterior(p), w});
  return FiniteScheme(std::move(v));
}

KernelId kernel_id(const std::string& k) {
  if (k == "g") return KernelId::kRegret;
  if (k == "h") return KernelId::kRatio;
  throw InstanceError("kernel must be 'g' or 'h'");
}

GridInstance grid(std::vector<std::size_t> dims,
                  std::vector<std::vector<double>> marginals,
                  std::vector<double> utility) {
  return GridInstance::product(std::move(dims), std::move(marginals),
                               std::move(utility));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust signaling for binary-action persuasion";
  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);

  py::class_<MixedThreshold>(m, "MixedThreshold")
      .def_static("point", &MixedThreshold::point)
      .def("cdf", &MixedThreshold::cdf)
      .def("quantile", &MixedThreshold::quantile)
      .def("mean", &MixedThreshold::mean)
      .def("total_mass", &MixedThreshold::total_mass)
      .def("support_min", &MixedThreshold::support_min)
      .def("support_max", &MixedThreshold::support_max)
      .def_property_readonly("atoms",
                             [](const MixedThreshold& t) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& a : t.atoms()) {
                                 out.emplace_back(a.location, a.weight);
                               }
                               return out;
                             })
      .def("density",
           [](const MixedThreshold& t, double z) {
             double d = 0.0;
             for (const auto& p : t.pieces()) {
               if (z >= p.lo && z <= p.hi) d += p.density(z);
             }
             return d;
           })
      .def("sample",
           [](const MixedThreshold& t, std::uint64_t seed, std::size_t count) {
             return sample_mixed(t, seed, count);
           },
           py::arg("seed"), py::arg("count"));

  m.def("optimal_knapsack",
        [](std::vector<double> prior, std::vector<double> utility) {
          const Prior mu(std::move(prior));
          const KnapsackSolution s = optimal_knapsack(mu, ReceiverUtility(std::move(utility)));
          const auto order = s.ordering.order();
          py::dict d;
          d["threshold_x"] = s.threshold_x;
          d["optimal_utility"] = s.optimal_utility;
          d["ordering"] = std::vector<std::size_t>(order.begin(), order.end());
          d["scheme"] = to_py(optimal_scheme(s, mu));
          return d;
        },
        py::arg("prior"), py::arg("utility"),
        "Optimal threshold and two-signal scheme for a known utility.");
  m.def("sender_utility",
        [](const AtomList& scheme, std::vector<double> utility) {
          return sender_utility(from_py(scheme), ReceiverUtility(std::move(utility)));
        },
        py::arg("scheme"), py::arg("utility"));
  m.def("regret",
        [](const AtomList& scheme, std::vector<double> prior, std::vector<double> utility) {
          return regret_of_scheme(from_py(scheme), Prior(std::move(prior)),
                                  ReceiverUtility(std::move(utility)));
        },
        py::arg("scheme"), py::arg("prior"), py::arg("utility"));
  m.def("is_bayes_plausible",
        [](const AtomList& scheme, std::vector<double> prior) {
          return is_bayes_plausible(from_py(scheme), Prior(std::move(prior)));
        });

  m.def("reg_mon_value", &reg_mon_value, py::arg("mu_n"));
  m.def("apr_mon_value", &apr_mon_value, py::arg("mu_n"));
  m.def("sender_opt", &sender_opt, py::arg("alpha"));
  m.def("adversary_opt", &adversary_opt, py::arg("alpha"));
  m.def("approx_sender_opt", &approx_sender_opt, py::arg("alpha"));
  m.def("approx_adversary_opt", &approx_adversary_opt, py::arg("alpha"));
  m.def("expected_g", &expected_g, py::arg("x"), py::arg("y"));
  m.def("expected_h", &expected_h, py::arg("x"), py::arg("y"));
  m.def("robust_sender_utility",
        [](const MixedThreshold& t, std::vector<double> prior, std::vector<double> utility) {
          const Prior mu(std::move(prior));
          return mixed_sender_utility(t, StateOrdering::identity(mu), mu,
                                      ReceiverUtility(std::move(utility)));
        },
        py::arg("strategy"), py::arg("prior"), py::arg("utility"),
        "Exact adoption probability of a randomized threshold scheme, states in index order.");

  m.def("verify_lemma",
        [](const std::string& kernel, double alpha, std::size_t size, double eps) {
          const LemmaReport r = verify_lemma(kernel_id(kernel), alpha, size, eps);
          py::dict d;
          d["value"] = r.value;
          d["analytic"] = r.analytic;
          d["abs_error"] = r.abs_error;
          d["duality_gap"] = r.game.duality_gap;
          d["iterations"] = r.game.iterations;
          d["converged"] = r.game.converged;
          d["tv_x"] = r.tv_x;
          d["tv_y"] = r.tv_y;
          return d;
        },
        py::arg("kernel"), py::arg("alpha"), py::arg("size"), py::arg("eps"));

  m.def("prop1_scheme", [](std::vector<double> prior) {
    return to_py(prop1_scheme(Prior(std::move(prior))));
  });
  m.def("thm2_upper_scheme", [](std::vector<double> prior) {
    return to_py(thm2_upper_scheme(Prior(std::move(prior))));
  });
  m.def("thm2_lower_adoption_prob", &thm2_lower_adoption_prob);
  m.def("ternary_mass_in", [](std::array<double, 3> normal) {
    return ternary_mass_in(HalfPlaneAdoption(normal));
  });
  m.def("ternary_sweep", [](int grid) {
    const TernarySweepResult r = ternary_sweep(grid);
    py::dict d;
    d["sup_regret"] = r.sup_regret;
    d["d"] = r.d;
    d["e"] = r.e;
    d["lines"] = r.lines;
    return d;
  });

  m.def("median_knapsack_scheme",
        [](std::vector<std::size_t> dims, std::vector<std::vector<double>> marginals,
           std::vector<double> utility) {
          return to_py(median_knapsack_scheme(
              grid(std::move(dims), std::move(marginals), std::move(utility))));
        },
        py::arg("dims"), py::arg("marginals"), py::arg("utility"));
  m.def("md_regret",
        [](std::vector<std::size_t> dims, std::vector<std::vector<double>> marginals,
           std::vector<double> utility) {
          const MdRegretCheck c = md_regret_bound_check(
              grid(std::move(dims), std::move(marginals), std::move(utility)));
          return std::make_pair(c.regret, c.bound);
        },
        py::arg("dims"), py::arg("marginals"), py::arg("utility"));
  m.def("sample_monotone_utility", &sample_monotone_utility);

  m.def("run_suite", [](const std::string& name, std::uint64_t seed) {
    VerifyOptions o;
    o.seed = seed;
    py::list out;
    for (const auto& r : run_suite(name, o)) {
      py::dict d;
      d["check"] = r.name;
      d["measured"] = r.measured;
      d["expected"] = r.expected;
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  }, py::arg("name"), py::arg("seed") = 0);
}
