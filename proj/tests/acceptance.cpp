// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pruwalk/baselines.hpp"
#include "pruwalk/fits.hpp"
#include "pruwalk/kernel.hpp"
#include "pruwalk/phase.hpp"
#include "pruwalk/walk_dp.hpp"
#include "pruwalk/walks.hpp"

using namespace pruwalk;
using algebra::Mono;
using algebra::Poly;
using algebra::Series;
using algebra::Sym;

namespace {

int g_failures = 0;
using Clock = std::chrono::steady_clock;

void report(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

Poly v_zero_part(const Poly& p) {
    Poly out;
    for (const auto& [k, c] : p.terms())
        if (Mono{k}.exp(Sym::v) == 0) out += Poly::term(Mono{k}, c);
    return out;
}

// ---- criterion 1: exact oracle equivalence ------------------------------
void criterion1() {
    bool tails12 = true, loops12 = true;
    {
        auto dfs = walks::enumerate_walks(walks::Family::two_sided, 12);
        kernel::KernelContext ctx(12, Poly::symbol(Sym::a), kernel::SlotVal::sym(Sym::v));
        kernel::Solution sol = kernel::full_solution(ctx, kernel::SlotVal::num(Rat(1)));
        for (int n = 0; n <= 12; ++n) {
            tails12 = tails12 && sol.W_uv.coeff(n).substitute(Sym::v, Poly(1)) == dfs.z_tail[n];
            loops12 = loops12 && v_zero_part(sol.W_uv.coeff(n)) == dfs.z_loop[n];
        }
    }
    report(1, "W(z;1,1;a) = depth-first tails, polynomials in a, n <= 12", tails12);
    report(1, "W(z;1,0;a) = depth-first loops, polynomials in a, n <= 12", loops12);

    bool tails50 = true, loops50 = true;
    {
        auto dp = walks::count_walks_dp<Rat>(50, Rat(1));
        kernel::KernelContext ctx(50, Poly(1), kernel::SlotVal::sym(Sym::v));
        kernel::Solution sol = kernel::full_solution(ctx, kernel::SlotVal::num(Rat(1)));
        for (int n = 0; n <= 50; ++n) {
            Poly wt = sol.W_uv.coeff(n).substitute(Sym::v, Poly(1));
            tails50 = tails50 && wt.constant_value() == dp.z_tail(n);
            loops50 = loops50 && v_zero_part(sol.W_uv.coeff(n)).constant_value() == dp.z_loop(n);
        }
    }
    report(1, "W(z;1,1;1) = DP tails, exact, n <= 50", tails50);
    report(1, "W(z;1,0;1) = DP loops, exact, n <= 50", loops50);
}

// ---- criterion 2: functional-equation residuals -------------------------
void criterion2() {
    kernel::KernelContext ctx(20, Poly::symbol(Sym::a), kernel::SlotVal::sym(Sym::v));
    kernel::Solution sol = kernel::full_solution(ctx, kernel::SlotVal::sym(Sym::u));
    auto reps = kernel::verify_two_sided_with(ctx, sol.R_uv, sol.T_uv, sol.R_u0, 20);
    for (const auto& r : reps)
        report(2, r.equation + " residual zero through z^20", r.pass(),
               r.pass() ? "" : "first failure at order " + std::to_string(r.first_failing_order));

    auto reps3 = kernel::verify_three_sided(10);
    for (const auto& r : reps3)
        report(2, r.equation + " residual zero through z^10 (enumerated R*,T*)", r.pass());

    // single-coefficient fault injection must be caught at the right order
    bool inj_ok = true;
    for (int k : {4, 9}) {
        kernel::Series badT = sol.T_uv;
        badT.set_coeff(k, badT.coeff(k) + Poly(1));
        auto r1 = kernel::verify_two_sided_with(ctx, sol.R_uv, badT, sol.R_u0, 20);
        int first = 99;
        for (const auto& r : r1)
            if (!r.pass()) first = std::min(first, r.first_failing_order);
        inj_ok = inj_ok && first == k;

        kernel::Series badR = sol.R_uv;
        badR.set_coeff(k, badR.coeff(k) + Poly::symbol(Sym::u));
        auto r2 = kernel::verify_two_sided_with(ctx, badR, sol.T_uv, sol.R_u0, 20);
        first = 99;
        for (const auto& r : r2)
            if (!r.pass()) first = std::min(first, r.first_failing_order);
        inj_ok = inj_ok && first == k;
    }
    report(2, "injected single-coefficient faults detected at the perturbed order", inj_ok);
}

// ---- criterion 3: tails transition numerics ------------------------------
void criterion3() {
    double z1t = phase::z1_tails();
    report(3, "z1_tails root of 1-2z-2z^2+2z^3", std::fabs(z1t - 0.403032) < 1e-6,
           "z1t = " + std::to_string(z1t));
    bool factor = phase::adsorbed_poly(Rat(2)) == phase::critical_polynomials().tails_desorbed.negated();
    report(3, "adsorbed polynomial at a=2 factors as -(1-2z-2z^2+2z^3), exact", factor);

    double below = phase::surface_density(phase::PhaseModel::prudent_tails, 1.999999, phase::Side::below);
    double jump = phase::surface_density(phase::PhaseModel::prudent_tails, 2.0, phase::Side::above);
    bool jump_ok = below == 0.0 && std::fabs(jump - 0.33) < 0.01;
    report(3, "density jumps 0 -> ~0.33 at a=2", jump_ok, "jump = " + std::to_string(jump));

    bool agree = true;
    for (int i = 0; i < 50 && agree; ++i) {
        double a = 2.05 + 0.1 * i;
        double rho = phase::surface_density(phase::PhaseModel::prudent_tails, a);
        double h = 1e-5;
        double fd = (phase::free_energy(phase::PhaseModel::prudent_tails, a * std::exp(h)) -
                     phase::free_energy(phase::PhaseModel::prudent_tails, a * std::exp(-h))) /
                    (2 * h);
        agree = std::fabs(rho - fd) < 1e-6;
    }
    report(3, "implicit-differentiation and finite-difference densities agree to 1e-6", agree);
}

// ---- criterion 4: loops transition numerics ------------------------------
void criterion4() {
    double z1l = phase::z1_loops();
    report(4, "z1_loops root of the degree-10 polynomial", std::fabs(z1l - 0.412095) < 1e-6,
           "z1l = " + std::to_string(z1l));
    double acl = phase::critical_a(phase::PhaseModel::prudent_loops);
    report(4, "a_c_loops root of the degree-10 fugacity polynomial",
           std::fabs(acl - 1.82476) < 1e-5, "a_c = " + std::to_string(acl));
    double cross = std::fabs(phase::adsorbed_F(z1l, acl));
    report(4, "|adsorbed(z1_loops, a_c_loops)| < 1e-6", cross < 1e-6,
           "value = " + std::to_string(cross));
    double jump = phase::surface_density(phase::PhaseModel::prudent_loops, acl, phase::Side::above);
    report(4, "loops density jump positive at a_c", jump > 0.05, "jump = " + std::to_string(jump));
}

// ---- criterion 5: ratio estimates across the fugacity grid ---------------
void criterion5() {
    struct Pt {
        const char* label;
        Rat a;
    };
    Pt grid[] = {{"1/2", Rat(1, 2)}, {"1", Rat(1)},     {"3/2", Rat(3, 2)},
                 {"5/2", Rat(5, 2)}, {"3", Rat(3)},     {"4", Rat(4)}};
    for (const auto& pt : grid) {
        kernel::Solution sol = kernel::solve(50, Poly(pt.a), kernel::SlotVal::num(Rat(1)),
                                             kernel::SlotVal::num(Rat(1)));
        std::vector<double> coeffs;
        for (int n = 0; n <= 50; ++n)
            coeffs.push_back(rat_to_double(sol.W_uv.coeff(n).constant_value()));
        phase::SingularityEstimate est = phase::ratio_estimate(coeffs);
        double ad = rat_to_double(pt.a);
        double conj = std::exp(-phase::free_energy(phase::PhaseModel::prudent_tails, ad));
        double rel = std::fabs(est.z_c - conj) / conj;
        report(5, std::string("ratio estimate at a=") + pt.label + " within 1%", rel < 0.01,
               "relative error " + std::to_string(rel * 100) + "%");
    }
}

// ---- criterion 6: directed-model height table at n = 4000 ----------------
void criterion6() {
    using baselines::Endpoint;
    using baselines::Model;
    int N = 4000;
    struct Row {
        Model m;
        Endpoint ep;
        const char* name;
        double expect;
    };
    const Row rows[] = {
        {Model::dyck, Endpoint::loop, "dyck loops amplitude sqrt(pi/2)", std::sqrt(M_PI / 2)},
        {Model::motzkin, Endpoint::loop, "motzkin loops amplitude sqrt(pi/3)", std::sqrt(M_PI / 3)},
        {Model::motzkin, Endpoint::tail, "motzkin tails amplitude 1.418632", 1.418632},
        {Model::partially_directed, Endpoint::loop, "partially-directed loops amplitude 1.376996",
         1.376996},
        {Model::partially_directed, Endpoint::tail, "partially-directed tails amplitude 1.908922",
         1.908922},
    };
    double dyck_loops_A = 0, dyck_tails_A = 0;
    auto fit_amp = [&](Model m, Endpoint ep) {
        auto prof = baselines::baseline_height_profile(m, ep, N);
        int stride = m == Model::dyck ? 2 : 1;
        std::vector<double> ns, ys;
        for (int n = (N / 2 / stride) * stride; n <= N; n += 10 * stride) {
            ns.push_back(n);
            ys.push_back(prof[static_cast<std::size_t>(n)]);
        }
        return fits::fit_sqrt_amplitude(ns, ys);
    };
    for (const auto& r : rows) {
        auto f = fit_amp(r.m, r.ep);
        double rel = std::fabs(f.A - r.expect) / r.expect;
        report(6, std::string(r.name) + " within 2% at n=4000", rel < 0.02,
               "A = " + std::to_string(f.A));
        if (r.m == Model::dyck && r.ep == Endpoint::loop) dyck_loops_A = f.A;
    }
    dyck_tails_A = fit_amp(Model::dyck, Endpoint::tail).A;
    double ratio = dyck_tails_A / dyck_loops_A;
    double expect = 2 * std::log(2.0);
    report(6, "dyck tails/loops amplitude ratio = 2 log 2 within 2%",
           std::fabs(ratio - expect) / expect < 0.02, "ratio = " + std::to_string(ratio));

    // NE-directed tails: mean height exactly n/2 (checked exactly on the
    // integer DP at small n, and on the closed-form profile at n = 4000)
    bool ne_ok = true;
    auto sums = baselines::height_sums_exact_pair_dp(Model::ne_directed, Endpoint::tail, 40);
    auto tot = baselines::totals_exact(Model::ne_directed, Endpoint::tail, 40);
    for (int n = 0; n <= 40; ++n) ne_ok = ne_ok && sums[n] * 2 == tot[n] * n;
    auto prof = baselines::baseline_height_profile(Model::ne_directed, Endpoint::tail, N);
    for (int n = 0; n <= N; ++n) ne_ok = ne_ok && prof[static_cast<std::size_t>(n)] == n / 2.0;
    report(6, "NE-directed tails give exactly n/2 for all n", ne_ok);
}

// ---- criterion 7: prudent height linearity -------------------------------
void criterion7() {
    auto dp = walks::count_walks_dp<Rat>(60, Rat(1));
    struct Channel {
        const char* name;
        std::vector<double> ys;
    };
    std::vector<Channel> channels(3);
    channels[0].name = "tails <e_n>";
    channels[1].name = "tails <h_n>";
    channels[2].name = "loops <h_n>";
    std::vector<double> ns;
    for (int n = 20; n <= 60; ++n) {
        ns.push_back(n);
        Rat zt = dp.z_tail(n), zl = dp.z_loop(n);
        channels[0].ys.push_back(rat_to_double(dp.endpoint_sum(n) / zt));
        channels[1].ys.push_back(rat_to_double(dp.max_sum(n) / zt));
        channels[2].ys.push_back(rat_to_double(dp.max_sum_loop(n) / zl));
    }
    bool any_fail = false;
    for (const auto& ch : channels) {
        auto lf = fits::fit_linear(ns, ch.ys);
        double mean = 0;
        for (double y : ch.ys) mean += y;
        mean /= static_cast<double>(ch.ys.size());
        bool lin_ok = lf.slope > 0 && lf.residual_rms < 0.01 * mean;
        report(7, std::string(ch.name) + " linear fit over [20,60]: slope > 0, residual < 1% of mean",
               lin_ok, "slope " + std::to_string(lf.slope) + ", residual/mean " +
                           std::to_string(lf.residual_rms / mean));
        auto pf = fits::fit_power(ns, ch.ys);
        bool exp_ok = pf.exponent >= 0.9 && pf.exponent <= 1.1;
        report(7, std::string(ch.name) + " power-law exponent in [0.9, 1.1]", exp_ok,
               "exponent " + std::to_string(pf.exponent));
        any_fail = any_fail || !lin_ok || !exp_ok;
    }
    if (any_fail)
        std::printf(
            "       note: at n <= 60 these ensembles are still inside a slow crossover\n"
            "       (subleading corrections ~0.978^n for loops; O(1) intercepts bias any\n"
            "       power fit); longer series move the exponents toward 1. See README.\n");
}

// ---- criterion 8: structural identities at order 50 ----------------------
void criterion8() {
    for (const auto& id : kernel::structural_identities(50))
        report(8, id.name, id.pass);
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("acceptance total: %.1f s, %d failure(s)\n", dt, g_failures);
    return g_failures;
}
