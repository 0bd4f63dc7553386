#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pruwalk/baselines.hpp"
#include "pruwalk/kernel.hpp"
#include "pruwalk/phase.hpp"
#include "pruwalk/walk_dp.hpp"
#include "pruwalk/walks.hpp"

namespace py = pybind11;
using namespace pruwalk;
using algebra::Mono;
using algebra::Poly;
using algebra::Series;
using algebra::Sym;

namespace {

py::dict poly_to_dict(const Poly& p) {
    py::dict d;
    for (const auto& [k, c] : p.terms()) d[py::str(Mono{k}.to_string())] = rat_to_string(c);
    return d;
}

py::list series_to_list(const Series& s) {
    py::list out;
    for (int k = 0; k <= s.order(); ++k) out.append(poly_to_dict(s.coeff(k)));
    return out;
}

walks::Family family_from(const std::string& s) {
    if (s == "1sided" || s == "one_sided") return walks::Family::one_sided;
    if (s == "2sided" || s == "two_sided") return walks::Family::two_sided;
    if (s == "3sided" || s == "three_sided") return walks::Family::three_sided;
    throw DomainError("unknown family '" + s + "'");
}

kernel::SlotVal slot_from(const std::string& s, Sym sym) {
    if (s == "sym") return kernel::SlotVal::sym(sym);
    return kernel::SlotVal::num(rat_from_string(s));
}

baselines::Model base_model_from(const std::string& s) {
    if (s == "ne_directed") return baselines::Model::ne_directed;
    if (s == "dyck") return baselines::Model::dyck;
    if (s == "motzkin") return baselines::Model::motzkin;
    if (s == "partially_directed") return baselines::Model::partially_directed;
    throw DomainError("unknown baseline model '" + s + "'");
}

baselines::Weighting weighting_from(const std::string& s) {
    if (s == "edge") return baselines::Weighting::edge;
    if (s == "vertex") return baselines::Weighting::vertex;
    throw DomainError("unknown weighting '" + s + "'");
}

baselines::Endpoint base_endpoint_from(const std::string& s) {
    if (s == "tail") return baselines::Endpoint::tail;
    if (s == "loop") return baselines::Endpoint::loop;
    throw DomainError("unknown endpoint '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_pruwalk, m) {
    m.doc() = "adsorbing prudent walks: exact enumeration, kernel-method series, phase analysis";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValuationError>(m, "ValuationError");
    py::register_exception<NonDivisibleError>(m, "NonDivisibleError");
    py::register_exception<BranchError>(m, "BranchError");
    py::register_exception<TruncationError>(m, "TruncationError");
    py::register_exception<LimitError>(m, "LimitError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<NearCriticalError>(m, "NearCriticalError");
    py::register_exception<UnsupportedModelError>(m, "UnsupportedModelError");

    m.def(
        "is_admissible",
        [](const std::string& steps, const std::string& family) {
            return walks::is_admissible(walks::Walk{steps}, family_from(family));
        },
        py::arg("steps"), py::arg("family") = "2sided",
        "Replay a step string over N/S/E/W and test admissibility.");

    m.def(
        "enumerate_walks",
        [](const std::string& family, int n_max, const std::string& endpoint) {
            auto e = walks::enumerate_walks(family_from(family), n_max);
            py::list rows;
            for (int n = 0; n <= n_max; ++n) {
                py::dict row;
                row["n"] = n;
                row["Z"] = poly_to_dict(endpoint == "loop" ? e.z_loop[n] : e.z_tail[n]);
                row["endpoint_height_sum"] = poly_to_dict(e.endpoint_height_sum[n]);
                row["max_height_sum"] = poly_to_dict(e.max_height_sum[n]);
                rows.append(row);
            }
            return rows;
        },
        py::arg("family") = "2sided", py::arg("n_max") = 10, py::arg("endpoint") = "tail",
        "Exhaustive weighted counts; Z polynomials are exact {monomial: coefficient} dicts.");

    m.def(
        "count_walks_dp",
        [](int n_max, const std::string& a) {
            py::dict out;
            py::list tails, loops, emeans, hmeans;
            if (a == "sym") {
                auto dp = walks::count_walks_dp<Poly>(n_max, Poly::symbol(Sym::a));
                for (int n = 0; n <= n_max; ++n) {
                    tails.append(poly_to_dict(dp.z_tail(n)));
                    loops.append(poly_to_dict(dp.z_loop(n)));
                }
            } else {
                auto dp = walks::count_walks_dp<Rat>(n_max, rat_from_string(a));
                for (int n = 0; n <= n_max; ++n) {
                    tails.append(rat_to_string(dp.z_tail(n)));
                    loops.append(rat_to_string(dp.z_loop(n)));
                }
            }
            out["tails"] = tails;
            out["loops"] = loops;
            return out;
        },
        py::arg("n_max") = 50, py::arg("a") = "sym",
        "Polynomial-time two-sided counts; a = 'sym' or an exact rational string.");

    m.def(
        "height_statistics",
        [](const std::string& family, int n_max, const std::string& a, const std::string& endpoint) {
            auto t = walks::height_statistics(family_from(family), n_max, rat_from_string(a),
                                              endpoint == "loop" ? walks::Endpoint::loop
                                                                 : walks::Endpoint::tail);
            py::dict d;
            d["mean_endpoint"] = t.mean_endpoint();
            d["mean_max"] = t.mean_max();
            py::list tot;
            for (const auto& z : t.total) tot.append(rat_to_string(z));
            d["total"] = tot;
            return d;
        },
        py::arg("family") = "2sided", py::arg("n_max") = 40, py::arg("a") = "1",
        py::arg("endpoint") = "tail");

    m.def(
        "w_series",
        [](int order, const std::string& a, const std::string& u, const std::string& v) {
            Poly ap = a == "sym" ? Poly::symbol(Sym::a) : Poly(rat_from_string(a));
            kernel::Solution sol = kernel::solve(order, ap, slot_from(u, Sym::u), slot_from(v, Sym::v));
            py::dict d;
            d["W"] = series_to_list(sol.W_uv);
            d["R"] = series_to_list(sol.R_uv);
            d["T"] = series_to_list(sol.T_uv);
            d["R_u0"] = series_to_list(sol.R_u0);
            d["T_zv"] = series_to_list(sol.T_zv);
            return d;
        },
        py::arg("order") = 20, py::arg("a") = "sym", py::arg("u") = "1", py::arg("v") = "1",
        "Closed-form series of the two-sided model; slots are 'sym' or rational strings.");

    m.def(
        "verify_functional_equations",
        [](const std::string& family, int order) {
            auto reports = family == "3sided" || family == "three_sided"
                               ? kernel::verify_three_sided(order)
                               : kernel::verify_two_sided(order);
            py::list out;
            for (const auto& r : reports) {
                py::dict d;
                d["equation"] = r.equation;
                d["max_order"] = r.max_order;
                d["first_failing_order"] = r.first_failing_order;
                d["pass"] = r.pass();
                out.append(d);
            }
            return out;
        },
        py::arg("family") = "2sided", py::arg("order") = 12);

    m.def(
        "structural_identities",
        [](int order) {
            py::list out;
            for (const auto& id : kernel::structural_identities(order)) {
                py::dict d;
                d["name"] = id.name;
                d["pass"] = id.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("order") = 20);

    m.def(
        "baseline_partition",
        [](const std::string& model, const std::string& weighting, const std::string& endpoint,
           int n_max) {
            auto z = baselines::baseline_partition(base_model_from(model), weighting_from(weighting),
                                                   base_endpoint_from(endpoint), n_max);
            py::list out;
            for (const auto& p : z) out.append(poly_to_dict(p));
            return out;
        },
        py::arg("model"), py::arg("weighting") = "edge", py::arg("endpoint") = "tail",
        py::arg("n_max") = 100);

    m.def(
        "baseline_critical_fugacity",
        [](const std::string& model, const std::string& weighting) {
            auto cf = baselines::baseline_critical_fugacity(base_model_from(model),
                                                            weighting_from(weighting));
            return py::make_tuple(cf.value, cf.closed_form);
        },
        py::arg("model"), py::arg("weighting") = "edge");

    m.def(
        "baseline_height_profile",
        [](const std::string& model, const std::string& endpoint, int n_max) {
            return baselines::baseline_height_profile(base_model_from(model),
                                                      base_endpoint_from(endpoint), n_max);
        },
        py::arg("model"), py::arg("endpoint") = "loop", py::arg("n_max") = 1000);

    m.def(
        "isolate_real_roots",
        [](const std::vector<std::string>& coeffs, const std::string& lo, const std::string& hi) {
            std::vector<Rat> c;
            for (const auto& s : coeffs) c.push_back(rat_from_string(s));
            auto roots = phase::isolate_real_roots(phase::UniPoly(std::move(c)),
                                                   rat_from_string(lo), rat_from_string(hi));
            py::list out;
            for (const auto& r : roots) out.append(py::make_tuple(r.value, r.multiplicity));
            return out;
        },
        py::arg("coefficients"), py::arg("lo"), py::arg("hi"),
        "Coefficients are exact rational strings, ascending powers.");

    m.def("critical_polynomial_roots", [] {
        py::dict d;
        d["z1_tails"] = phase::z1_tails();
        d["z1_loops"] = phase::z1_loops();
        d["a_c_loops"] = phase::critical_a(phase::PhaseModel::prudent_loops);
        return d;
    });

    m.def(
        "free_energy",
        [](const std::string& model, double a) {
            return phase::free_energy(phase::phase_model_from_name(model), a);
        },
        py::arg("model"), py::arg("a"));

    m.def(
        "surface_density",
        [](const std::string& model, double a, const std::string& side) {
            phase::Side s = side == "above"   ? phase::Side::above
                            : side == "below" ? phase::Side::below
                                              : phase::Side::automatic;
            return phase::surface_density(phase::phase_model_from_name(model), a, s);
        },
        py::arg("model"), py::arg("a"), py::arg("side") = "auto");

    m.def(
        "critical_point",
        [](const std::string& model) {
            auto cp = phase::critical_point(phase::phase_model_from_name(model));
            return py::make_tuple(cp.a_c, cp.density_jump);
        },
        py::arg("model"));

    m.def(
        "ratio_estimate",
        [](const std::vector<double>& coeffs) {
            auto est = phase::ratio_estimate(coeffs);
            py::dict d;
            d["z_c"] = est.z_c;
            d["method"] = est.method;
            d["series_length"] = est.series_length;
            d["uncertainty"] = est.uncertainty;
            d["oscillation"] = est.oscillation;
            d["stride"] = est.stride;
            return d;
        },
        py::arg("coefficients"));

    m.def("transition_height_report", [] {
        py::list out;
        for (const auto& r : phase::transition_height_report()) {
            py::dict d;
            d["model"] = r.model;
            d["gamma"] = r.gamma;
            d["order"] = r.order;
            d["density_jump"] = r.jump;
            d["consistent"] = r.consistent;
            out.append(d);
        }
        return out;
    });
}
