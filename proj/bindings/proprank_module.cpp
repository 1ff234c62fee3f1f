#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proprank/axioms.hpp"
#include "proprank/baselines.hpp"
#include "proprank/errors.hpp"
#include "proprank/flow.hpp"
#include "proprank/profile_io.hpp"
#include "proprank/rules.hpp"

namespace py = pybind11;
using namespace proprank;

namespace {

// Rationals cross the boundary as "p/q" strings; callers who want numerics
// can hand them to fractions.Fraction unchanged.
std::string rat(const Rational& r) { return r.str(); }

std::vector<std::string> rats(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(rat(r));
  return out;
}

py::dict trace_to_dict(const BudgetTrace& trace) {
  py::dict d;
  d["initial_budgets"] = rats(trace.initial_budgets);
  d["leftover"] = rat(trace.leftover);
  py::list rounds;
  for (const auto& round : trace.rounds) {
    py::dict r;
    r["index"] = round.index;
    r["chosen"] = round.chosen;
    r["payments"] = rats(round.payments);
    if (round.price) r["price"] = rat(*round.price);
    if (round.flow_value) r["flow_value"] = rat(*round.flow_value);
    rounds.append(std::move(r));
  }
  d["rounds"] = std::move(rounds);
  return d;
}

py::dict report_to_dict(const AxiomReport& report) {
  py::dict d;
  d["axiom"] = axiom_name(report.axiom);
  d["satisfied"] = report.satisfied;
  if (report.total_payment) d["total_payment"] = rat(*report.total_payment);
  if (report.witness) d["witness"] = report.witness->describe();
  return d;
}

py::tuple run_to_tuple(const RuleRun& run) {
  return py::make_tuple(run.ranking.order(), trace_to_dict(run.trace));
}

py::tuple swf_to_tuple(const SwfResult& res) {
  return py::make_tuple(res.ranking.order(), rat(res.score), res.tie_note);
}

Profile profile_from_entries(int m, const std::vector<std::pair<std::vector<int>, std::string>>&
                                        entries) {
  std::vector<std::pair<Ranking, Rational>> converted;
  converted.reserve(entries.size());
  for (const auto& [order, weight] : entries) {
    converted.emplace_back(Ranking{order}, Rational::parse(weight));
  }
  return Profile{m, std::move(converted)};
}

}  // namespace

PYBIND11_MODULE(proprank, mod) {
  mod.doc() = "Proportional rank aggregation (PSB, RMES, FB) with exact rational"
              " arithmetic, fairness checks, and priceability certificates.";

  py::register_exception<InvalidInputError>(mod, "InvalidInputError", PyExc_ValueError);
  py::register_exception<CapacityError>(mod, "CapacityError", PyExc_RuntimeError);

  py::class_<Profile>(mod, "Profile")
      .def(py::init(&profile_from_entries), py::arg("m"), py::arg("entries"),
           "Build from (ranking order, weight string) pairs; weights must sum to 1.")
      .def_property_readonly("m", &Profile::m)
      .def_property_readonly("support_size", &Profile::support_size)
      .def("entries",
           [](const Profile& p) {
             std::vector<std::pair<std::vector<int>, std::string>> out;
             for (const auto& [r, w] : p.entries()) out.emplace_back(r.order(), rat(w));
             return out;
           })
      .def("__repr__", [](const Profile& p) {
        return "<Profile m=" + std::to_string(p.m()) +
               " support=" + std::to_string(p.support_size()) + ">";
      });

  mod.def("parse_profile", [](const std::string& text) {
    ProfileDocument doc = parse_profile(text);
    return py::make_tuple(doc.profile, doc.names);
  });
  mod.def("render_profile", [](const Profile& p, const std::vector<std::string>& names) {
    return render_profile(ProfileDocument{names, p});
  });
  mod.def("default_names", &default_names);

  mod.def("utility", [](const std::vector<int>& a, const std::vector<int>& b) {
    return utility(Ranking{a}, Ranking{b});
  });
  mod.def("swap_distance", [](const std::vector<int>& a, const std::vector<int>& b) {
    return swap_distance(Ranking{a}, Ranking{b});
  });

  mod.def("run_psb", [](const Profile& p) { return run_to_tuple(run_psb(p)); });
  mod.def("run_rmes", [](const Profile& p) { return run_to_tuple(run_rmes(p)); });
  mod.def("run_fb", [](const Profile& p) { return run_to_tuple(run_fb(p)); });

  mod.def("sequential_borda", [](const Profile& p) { return swf_to_tuple(sequential_borda(p)); });
  mod.def("kemeny", [](const Profile& p, int cap) { return swf_to_tuple(kemeny(p, cap)); },
          py::arg("profile"), py::arg("cap") = kDefaultEnumerationCap);
  mod.def("squared_kemeny",
          [](const Profile& p, int cap) { return swf_to_tuple(squared_kemeny(p, cap)); },
          py::arg("profile"), py::arg("cap") = kDefaultEnumerationCap);
  mod.def("chamberlin_courant",
          [](const Profile& p) { return swf_to_tuple(chamberlin_courant(p)); });

  auto wrap_check = [](AxiomReport (*fn)(const Profile&, const Ranking&)) {
    return [fn](const Profile& p, const std::vector<int>& out) {
      return report_to_dict(fn(p, Ranking{out}));
    };
  };
  mod.def("check_ujr", wrap_check(&check_ujr));
  mod.def("check_upjr", wrap_check(&check_upjr));
  mod.def("check_pareto", wrap_check(&check_pareto));
  mod.def("verify_rank_priceability", wrap_check(&verify_rank_priceability));
  mod.def("verify_pair_priceability", wrap_check(&verify_pair_priceability));
  mod.def("check_spjr",
          [](const Profile& p, const std::vector<int>& out, int cap) {
            return report_to_dict(check_spjr(p, Ranking{out}, cap));
          },
          py::arg("profile"), py::arg("out"), py::arg("support_cap") = kDefaultSpjrSupportCap);

  mod.def("worst_group_margin",
          [](const Profile& p, const std::vector<int>& out, const std::string& bound) {
            BoundKind kind = bound == "psb"    ? BoundKind::Psb
                             : bound == "rmes" ? BoundKind::Rmes
                             : bound == "fb"   ? BoundKind::Fb
                                               : throw InvalidInputError("unknown bound");
            BoundCurve curve = worst_group_margin(p, Ranking{out}, kind);
            py::list rows;
            for (const auto& pt : curve.points) {
              rows.append(py::make_tuple(rat(pt.size), rat(pt.min_avg_utility),
                                         rat(pt.bound_value), rat(pt.margin())));
            }
            return py::make_tuple(rows, rat(curve.min_margin));
          });

  mod.def("gen_profile", [](const std::string& model, int m, int support, std::uint64_t seed,
                            const std::string& phi, const std::string& split) {
    GenSpec spec;
    spec.model = model == "ic"        ? GenModel::Ic
                 : model == "mallows" ? GenModel::Mallows
                 : model == "two-bloc" ? GenModel::TwoBloc
                                       : throw InvalidInputError("unknown model");
    spec.m = m;
    spec.support = support;
    spec.seed = seed;
    spec.phi = Rational::parse(phi);
    spec.split = Rational::parse(split);
    return gen_profile(spec);
  }, py::arg("model"), py::arg("m"), py::arg("support"), py::arg("seed"),
     py::arg("phi") = "1/2", py::arg("split") = "3/5");

#ifdef PROPRANK_VERSION
  mod.attr("__version__") = PROPRANK_VERSION;
#else
  mod.attr("__version__") = "dev";
#endif
}
