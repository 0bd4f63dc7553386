#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "pruwalk/baselines.hpp"
#include "pruwalk/io.hpp"
#include "pruwalk/kernel.hpp"
#include "pruwalk/phase.hpp"
#include "pruwalk/util.hpp"
#include "pruwalk/walk_dp.hpp"
#include "pruwalk/walks.hpp"

using namespace pruwalk;
using algebra::Poly;
using algebra::Series;
using algebra::Sym;
using nlohmann::json;

namespace {

walks::Family family_from(const std::string& s) {
    if (s == "1sided") return walks::Family::one_sided;
    if (s == "2sided") return walks::Family::two_sided;
    if (s == "3sided") return walks::Family::three_sided;
    throw DomainError("unknown family '" + s + "' (expected 1sided|2sided|3sided)");
}

kernel::SlotVal slot_from(const std::string& s, Sym sym) {
    if (s == "sym") return kernel::SlotVal::sym(sym);
    return kernel::SlotVal::num(rat_from_string(s));
}

struct EnumerateCmd {
    std::string family = "2sided", endpoint = "tail", out, format = "json";
    int max_n = 10;
    bool refined = false;
};

int run_enumerate(const EnumerateCmd& c) {
    walks::Family fam = family_from(c.family);
    if (c.endpoint != "tail" && c.endpoint != "loop")
        throw DomainError("unknown endpoint '" + c.endpoint + "'");
    walks::EnumResult e = walks::enumerate_walks(fam, c.max_n);
    json data = json::array();
    for (int n = 0; n <= c.max_n; ++n) {
        json row{{"n", n},
                 {"Z", io::poly_to_json(c.endpoint == "tail" ? e.z_tail[n] : e.z_loop[n])}};
        if (c.refined && fam == walks::Family::two_sided) {
            json right = json::array(), top = json::array();
            for (const auto& [ij, p] : e.right2[n])
                right.push_back({{"i", ij.first}, {"j", ij.second}, {"weight", io::poly_to_json(p)}});
            for (const auto& [ij, p] : e.top2[n])
                top.push_back({{"i", ij.first}, {"j", ij.second}, {"weight", io::poly_to_json(p)}});
            row["right"] = right;
            row["top"] = top;
        }
        data.push_back(row);
    }
    json flags{{"family", c.family}, {"max_n", c.max_n}, {"endpoint", c.endpoint},
               {"refined", c.refined}};
    json doc{{"meta", io::make_meta("enumerate", flags)}, {"data", data}};
    io::write_output(c.out, doc.dump(2));
    return 0;
}

struct SeriesCmd {
    int order = 20;
    std::string a = "sym", u = "sym", v = "sym", out;
};

int run_series(const SeriesCmd& c) {
    Poly a_poly = c.a == "sym" ? Poly::symbol(Sym::a) : Poly(rat_from_string(c.a));
    kernel::KernelContext ctx(c.order, a_poly, slot_from(c.v, Sym::v));
    kernel::Solution sol = kernel::full_solution(ctx, slot_from(c.u, Sym::u));
    json flags{{"order", c.order}, {"a", c.a}, {"u", c.u}, {"v", c.v}};
    json doc{{"meta", io::make_meta("series", flags)},
             {"data",
              {{"spec", {{"a", c.a}, {"u", c.u}, {"v", c.v}, {"order", c.order}}},
               {"R", io::series_to_json(sol.R_uv)},
               {"T", io::series_to_json(sol.T_uv)},
               {"W", io::series_to_json(sol.W_uv)},
               {"R_u0", io::series_to_json(sol.R_u0)},
               {"T_zv", io::series_to_json(sol.T_zv)}}}};
    io::write_output(c.out, doc.dump());
    return 0;
}

struct VerifyCmd {
    std::string family = "2sided", series_file, out;
    int order = 20;
};

int run_verify(const VerifyCmd& c) {
    std::vector<kernel::ResidualReport> reports;
    int order = c.order;
    if (!c.series_file.empty()) {
        std::ifstream in(c.series_file);
        if (!in) throw DomainError("cannot read series file '" + c.series_file + "'");
        json doc = json::parse(in);
        const json& data = doc.at("data");
        const json& spec = data.at("spec");
        if (spec.at("a") != "sym" || spec.at("u") != "sym" || spec.at("v") != "sym")
            throw DomainError("verify needs a fully symbolic series file");
        int file_order = spec.at("order").get<int>();
        order = std::min(order, file_order);
        kernel::KernelContext ctx(order, Poly::symbol(Sym::a), kernel::SlotVal::sym(Sym::v));
        reports = kernel::verify_two_sided_with(ctx, io::series_from_json(data.at("R")),
                                                io::series_from_json(data.at("T")),
                                                io::series_from_json(data.at("R_u0")), order);
    } else if (c.family == "2sided") {
        reports = kernel::verify_two_sided(order);
    } else if (c.family == "3sided") {
        reports = kernel::verify_three_sided(order);
    } else {
        throw DomainError("unknown family '" + c.family + "'");
    }
    json data = json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        data.push_back({{"equation", r.equation},
                        {"max_order", r.max_order},
                        {"first_failing_order", r.first_failing_order},
                        {"pass", r.pass()}});
        all_pass = all_pass && r.pass();
        std::cerr << r.equation << ": "
                  << (r.pass() ? "residual zero through z^" + std::to_string(r.max_order)
                               : "FIRST FAILURE at order " + std::to_string(r.first_failing_order))
                  << "\n";
    }
    json flags{{"family", c.family}, {"order", c.order}, {"series_file", c.series_file}};
    json doc{{"meta", io::make_meta("verify", flags)}, {"data", data}};
    io::write_output(c.out, doc.dump(2));
    return all_pass ? 0 : 2;
}

int run_roots(const std::string& out) {
    auto& cp = phase::critical_polynomials();
    double z1t = phase::z1_tails();
    double z1l = phase::z1_loops();
    double acl = phase::critical_a(phase::PhaseModel::prudent_loops);
    json data{{"tails_desorbed",
               {{"coefficients", {1, -2, -2, 2}}, {"root", io::format_double(z1t)}}},
              {"loops_desorbed",
               {{"coefficients", {1, -3, -1, 6, 0, 0, 0, -7, -1, 3, 1}},
                {"root", io::format_double(z1l)}}},
              {"loops_critical_a",
               {{"coefficients", {1, -7, 45, -143, 277, -346, 285, -155, 54, -11, 1}},
                {"root", io::format_double(acl)}}},
              {"adsorbed_at_loops_crossing", io::format_double(phase::adsorbed_F(z1l, acl))},
              {"crossover_phi_reported", 1.0}};
    (void)cp;
    json doc{{"meta", io::make_meta("roots", json::object())}, {"data", data}};
    io::write_output(out, doc.dump(2));
    return 0;
}

struct PhaseCmd {
    std::string model = "tails", out, format = "csv";
    double alpha_min = 0.0, alpha_max = 1.6;
    int steps = 100;
};

int run_phase(const PhaseCmd& c) {
    phase::PhaseModel m = phase::phase_model_from_name(c.model);
    std::vector<phase::PhasePoint> pts(static_cast<std::size_t>(c.steps) + 1);
    util::parallel_for(c.steps + 1, [&](int i) {
        double alpha = c.alpha_min + (c.alpha_max - c.alpha_min) * i / c.steps;
        pts[static_cast<std::size_t>(i)] = phase::phase_point(m, alpha);
    });
    if (c.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : pts)
            rows.push_back({io::format_double(p.alpha), io::format_double(p.f),
                            io::format_double(p.rho), p.phase});
        io::write_output(c.out, io::to_csv({"alpha", "f", "rho", "phase"}, rows));
    } else {
        json data = json::array();
        for (const auto& p : pts)
            data.push_back({{"alpha", p.alpha}, {"a", p.a}, {"f", p.f}, {"rho", p.rho},
                            {"phase", p.phase}});
        json flags{{"model", c.model}, {"alpha_min", c.alpha_min}, {"alpha_max", c.alpha_max},
                   {"steps", c.steps}};
        io::write_output(c.out, json{{"meta", io::make_meta("phase", flags)}, {"data", data}}.dump(2));
    }
    return 0;
}

struct EstimateCmd {
    std::string a = "1", out;
    int order = 50;
};

int run_estimate(const EstimateCmd& c) {
    Rat a = rat_from_string(c.a);
    if (a <= 0) throw DomainError("estimate: a must be positive");
    kernel::Solution sol = kernel::solve(c.order, Poly(a), kernel::SlotVal::num(Rat(1)),
                                         kernel::SlotVal::num(Rat(1)));
    std::vector<double> coeffs;
    for (int n = 0; n <= c.order; ++n)
        coeffs.push_back(rat_to_double(sol.W_uv.coeff(n).constant_value()));
    phase::SingularityEstimate est = phase::ratio_estimate(coeffs);
    double ad = rat_to_double(a);
    double conjectured = ad <= 2.0 ? phase::z1_tails() : [&] {
        double f = phase::free_energy(phase::PhaseModel::prudent_tails, ad);
        return std::exp(-f);
    }();
    json data{{"a", c.a},
              {"z_c_estimate", io::format_double(est.z_c)},
              {"z_c_conjectured", io::format_double(conjectured)},
              {"relative_error", io::format_double(std::fabs(est.z_c - conjectured) / conjectured)},
              {"uncertainty", io::format_double(est.uncertainty)},
              {"method", est.method},
              {"series_length", est.series_length},
              {"oscillation", est.oscillation},
              {"stride", est.stride}};
    json flags{{"a", c.a}, {"order", c.order}};
    io::write_output(c.out, json{{"meta", io::make_meta("estimate", flags)}, {"data", data}}.dump(2));
    return 0;
}

struct HeightsCmd {
    std::string model = "tails", a = "1", out, format = "csv";
    int max_n = 60;
};

int run_heights(const HeightsCmd& c) {
    std::vector<std::vector<std::string>> rows;
    if (c.model == "tails" || c.model == "loops") {
        walks::HeightTable t = walks::height_statistics(
            walks::Family::two_sided, c.max_n, rat_from_string(c.a),
            c.model == "tails" ? walks::Endpoint::tail : walks::Endpoint::loop);
        auto em = t.mean_endpoint();
        auto hm = t.mean_max();
        for (int n = 0; n <= c.max_n; ++n)
            rows.push_back({std::to_string(n), io::format_double(em[static_cast<std::size_t>(n)]),
                            io::format_double(hm[static_cast<std::size_t>(n)])});
    } else {
        phase::PhaseModel m = phase::phase_model_from_name(c.model);
        if (m == phase::PhaseModel::prudent_tails || m == phase::PhaseModel::prudent_loops)
            throw DomainError("unexpected model");
        if (rat_from_string(c.a) != 1)
            throw DomainError("baseline height profiles are computed at a = 1");
        auto prof = [&] {
            switch (m) {
                case phase::PhaseModel::ne_directed:
                    return baselines::baseline_height_profile(baselines::Model::ne_directed,
                                                              baselines::Endpoint::tail, c.max_n);
                case phase::PhaseModel::dyck:
                    return baselines::baseline_height_profile(baselines::Model::dyck,
                                                              baselines::Endpoint::loop, c.max_n);
                case phase::PhaseModel::motzkin:
                    return baselines::baseline_height_profile(baselines::Model::motzkin,
                                                              baselines::Endpoint::loop, c.max_n);
                default:
                    return baselines::baseline_height_profile(
                        baselines::Model::partially_directed, baselines::Endpoint::loop, c.max_n);
            }
        }();
        for (int n = 0; n <= c.max_n; ++n)
            rows.push_back({std::to_string(n), "",
                            io::format_double(prof[static_cast<std::size_t>(n)])});
    }
    io::write_output(c.out, io::to_csv({"n", "mean_endpoint_height", "mean_max_height"}, rows));
    return 0;
}

int run_report(const std::string& out, const std::string& format) {
    auto rows = phase::transition_height_report();
    if (format == "csv") {
        std::vector<std::vector<std::string>> table;
        for (const auto& r : rows)
            table.push_back({r.model, io::format_double(r.gamma), r.order,
                             io::format_double(r.jump), r.consistent ? "yes" : "no"});
        io::write_output(out, io::to_csv({"model", "gamma", "order", "density_jump", "consistent"},
                                         table));
    } else {
        json data = json::array();
        for (const auto& r : rows)
            data.push_back({{"model", r.model}, {"gamma", r.gamma}, {"order", r.order},
                            {"density_jump", r.jump}, {"consistent", r.consistent}});
        json doc{{"meta", io::make_meta("report", json::object())},
                 {"data", data},
                 {"notes", {{"crossover_phi_reported", 1.0}}}};
        io::write_output(out, doc.dump(2));
    }
    bool all = true;
    for (const auto& r : rows) all = all && r.consistent;
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adsorbing prudent walks: exact enumeration, kernel-method series and phase analysis"};
    app.require_subcommand(1);

    EnumerateCmd ec;
    auto* enumerate = app.add_subcommand("enumerate", "exhaustively count adsorbing walks");
    enumerate->add_option("--family", ec.family, "1sided|2sided|3sided");
    enumerate->add_option("--max-n", ec.max_n, "maximum length");
    enumerate->add_option("--endpoint", ec.endpoint, "tail|loop");
    enumerate->add_flag("--refined", ec.refined, "include (i,j)-refined tables");
    enumerate->add_option("--out", ec.out, "output file (default stdout)");
    enumerate->add_option("--format", ec.format, "json");

    SeriesCmd sc;
    auto* series = app.add_subcommand("series", "emit W/R/T series coefficients");
    series->add_option("--order", sc.order, "truncation order");
    series->add_option("--a", sc.a, "sym or a rational like 5/2");
    series->add_option("--u", sc.u, "sym or a rational");
    series->add_option("--v", sc.v, "sym or a rational");
    series->add_option("--out", sc.out, "output file");

    VerifyCmd vc;
    auto* verify = app.add_subcommand("verify", "check the functional-equation residuals");
    verify->add_option("--family", vc.family, "2sided|3sided");
    verify->add_option("--order", vc.order, "order checked");
    verify->add_option("--series-file", vc.series_file, "re-verify a series emitted by `series`");
    verify->add_option("--out", vc.out, "output file");

    std::string roots_out;
    auto* roots = app.add_subcommand("roots", "critical polynomials and their roots");
    roots->add_option("--out", roots_out, "output file");

    PhaseCmd pc;
    auto* ph = app.add_subcommand("phase", "free energy and surface density over an alpha grid");
    ph->add_option("--model", pc.model, "tails|loops|ne_directed|dyck|motzkin|partially_directed");
    ph->add_option("--alpha-min", pc.alpha_min);
    ph->add_option("--alpha-max", pc.alpha_max);
    ph->add_option("--steps", pc.steps);
    ph->add_option("--out", pc.out, "output file");
    ph->add_option("--format", pc.format, "csv|json");

    EstimateCmd xc;
    auto* estimate = app.add_subcommand("estimate", "ratio-method singularity estimate at fixed a");
    estimate->add_option("--a", xc.a, "surface fugacity (rational)");
    estimate->add_option("--order", xc.order, "series length");
    estimate->add_option("--out", xc.out, "output file");

    HeightsCmd hc;
    auto* heights = app.add_subcommand("heights", "mean endpoint/maximum height profiles");
    heights->add_option("--model", hc.model, "tails|loops|ne_directed|dyck|motzkin|partially_directed");
    heights->add_option("--max-n", hc.max_n);
    heights->add_option("--a", hc.a, "surface fugacity (rational, prudent models)");
    heights->add_option("--out", hc.out, "output file");
    heights->add_option("--format", hc.format, "csv");

    std::string report_out, report_format = "csv";
    auto* report = app.add_subcommand("report", "height exponents vs transition order");
    report->add_option("--out", report_out, "output file");
    report->add_option("--format", report_format, "csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*enumerate) return run_enumerate(ec);
        if (*series) return run_series(sc);
        if (*verify) return run_verify(vc);
        if (*roots) return run_roots(roots_out);
        if (*ph) return run_phase(pc);
        if (*estimate) return run_estimate(xc);
        if (*heights) return run_heights(hc);
        if (*report) return run_report(report_out, report_format);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnsupportedModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "internal check failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
