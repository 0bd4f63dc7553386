#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pruwalk/kernel.hpp"
#include "pruwalk/walk_dp.hpp"
#include "pruwalk/walks.hpp"

using namespace pruwalk;
using namespace pruwalk::kernel;
using algebra::equal_to_order;
using algebra::Mono;
using algebra::Poly;
using algebra::Series;
using algebra::substitute;
using algebra::Sym;

TEST_CASE("lambda(v) leading terms via an undetermined-coefficient oracle") {
    int N = 10;
    Series lam = lambda_series_symbolic(N);
    // independent fixed-point oracle: lam = z (1 + lam^2) / (1 + z^2 - z v + z^3 v)
    Poly pv = Poly::symbol(Sym::v);
    Series B(N);
    B.set_coeff(0, Poly(1));
    B.set_coeff(2, Poly(1));
    B.set_coeff(1, -pv);
    B.set_coeff(3, pv);
    Series fix = Series::zero(N);
    for (int it = 0; it <= N + 1; ++it) {
        Series rhs = algebra::div(algebra::shift_up(algebra::add(Series::constant(1, N - 1),
                                                                 algebra::mul(fix, fix)),
                                                    1),
                                  B);
        fix = algebra::truncate(rhs, N);
    }
    CHECK(equal_to_order(lam, fix, N));
    CHECK(lam.valuation() == 1);
    CHECK(lam.coeff(1) == Poly(1));
    CHECK(lam.coeff(2) == pv);
    CHECK(lam.coeff(3) == pv * pv);
}

TEST_CASE("capital Lambda equals lambda at v=1 and solves the kernel quadratic") {
    int N = 30;
    Series Lam = capital_lambda(N);
    Series lam1 = substitute(lambda_series_symbolic(N), Sym::v, Poly(1));
    CHECK(equal_to_order(Lam, lam1, N));
    // numeric check at z = 0.2 against the quadratic root of L(u,1)=0:
    // -z u^2 + (1 + z^2 - z + z^3) u - z = 0
    double z = 0.2;
    double B = 1 + z * z - z + z * z * z;
    double root = (B - std::sqrt(B * B - 4 * z * z)) / (2 * z);
    CHECK(eval_double(Lam, z) == doctest::Approx(root).epsilon(1e-8));
}

TEST_CASE("structural identities at order 24") {
    for (const auto& id : structural_identities(24)) {
        INFO(id.name);
        CHECK(id.pass);
    }
}

TEST_CASE("H and I match their unsimplified forms") { CHECK(h_i_raw_forms_agree(12)); }

TEST_CASE("kernel pieces: M is symmetric, H and I leading terms") {
    KernelContext ctx(12, Poly::symbol(Sym::a), SlotVal::sym(Sym::v));
    int M = 12;
    Series us = Series::constant(Poly::symbol(Sym::u), M);
    Series vs = Series::constant(Poly::symbol(Sym::v), M);
    PieceValue Muv = kernel_piece(ctx, Piece::M, us, vs);
    PieceValue Mvu = kernel_piece(ctx, Piece::M, vs, us);
    CHECK(equal_to_order(Muv.num, Mvu.num, M));
    CHECK(equal_to_order(Muv.den, Mvu.den, M));
    // M(u,v) has no plain Series value with both slots symbolic
    CHECK_THROWS(Muv.value());

    Series uc = Series::constant(Poly::symbol(Sym::u), ctx.internal_order() + 2);
    Series H = ctx.H(uc, 2);
    CHECK(H.coeff(0) == Poly(1));
    CHECK(H.coeff(1) == Poly::symbol(Sym::a));
    Series I = ctx.I(uc, 5);
    CHECK(I.valuation() == 4);
    CHECK(I.coeff(4) == (Poly(1) - Poly::symbol(Sym::a)) * (Poly(1) - Poly::symbol(Sym::u)));
}

TEST_CASE("R(u,0) against the refined enumeration, side R with j=0") {
    int N = 10;
    auto e = walks::enumerate_walks(walks::Family::two_sided, N);
    KernelContext ctx(N, Poly::symbol(Sym::a), SlotVal::sym(Sym::v));
    // symbolic u
    Series uc = Series::constant(Poly::symbol(Sym::u), N + 1);
    Series R = ctx.r_u0(uc, N);
    CHECK(R.coeff(0) == Poly(1));
    CHECK(R.coeff(1) == Poly::symbol(Sym::a));  // the single E step along the surface
    for (int n = 0; n <= N; ++n) {
        Poly expect;
        for (const auto& [ij, p] : e.right2[n])
            if (ij.second == 0) expect += p.times_mono(Mono::sym(Sym::u, ij.first));
        CHECK(R.coeff(n) == expect);
    }
    // u = 1 collapses the distance index
    Series R1 = ctx.r_u0(Series::constant(1, N + 1), N);
    for (int n = 0; n <= N; ++n) CHECK(R1.coeff(n) == R.coeff(n).substitute(Sym::u, Poly(1)));
}

TEST_CASE("full solution matches enumeration for tails and loops, n <= 10") {
    int N = 10;
    auto e = walks::enumerate_walks(walks::Family::two_sided, N);
    KernelContext ctx(N, Poly::symbol(Sym::a), SlotVal::sym(Sym::v));
    Solution sol = full_solution(ctx, SlotVal::num(Rat(1)));
    CHECK(sol.W_uv.coeff(0) == Poly(1));
    for (int n = 0; n <= N; ++n) {
        CHECK(sol.W_uv.coeff(n).substitute(Sym::v, Poly(1)) == e.z_tail[n]);
        Poly loops;
        for (const auto& [k, c] : sol.W_uv.coeff(n).terms())
            if (Mono{k}.exp(Sym::v) == 0) loops += Poly::term(Mono{k}, c);
        CHECK(loops == e.z_loop[n]);
    }
}

TEST_CASE("endpoint-height derivative of W(z;1,v;1)") {
    int N = 12;
    Solution sol = solve(N, Poly(1), SlotVal::num(Rat(1)), SlotVal::sym(Sym::v));
    Series dW = algebra::derivative(sol.W_uv, Sym::v);
    Series dW1(N);
    for (int k = 0; k <= N; ++k) dW1.set_coeff(k, dW.coeff(k).substitute(Sym::v, Poly(1)));
    CHECK(dW1.coeff(1) == Poly(1));  // only the N step has endpoint height 1
    auto dp = walks::count_walks_dp<Rat>(N, Rat(1));
    for (int n = 0; n <= N; ++n) {
        CHECK(dW1.coeff(n).constant_value() == dp.endpoint_sum(n));
        CHECK(sol.W_uv.coeff(n).substitute(Sym::v, Poly(1)).constant_value() == dp.z_tail(n));
    }
}

TEST_CASE("loop max-height sums from R(z;u,0;1)") {
    int N = 14;
    KernelContext ctx(N, Poly(1), SlotVal::num(Rat(1)));
    Series uc = Series::constant(Poly::symbol(Sym::u), N + 1);
    Series R = ctx.r_u0(uc, N);
    Series dR = algebra::derivative(R, Sym::u);
    auto dp = walks::count_walks_dp<Rat>(N, Rat(1));
    for (int n = 0; n <= N; ++n) {
        Poly at1 = dR.coeff(n).substitute(Sym::u, Poly(1));
        CHECK(at1.constant_value() == dp.max_sum_loop(n));
    }
}

TEST_CASE("DP totals at a=1 match the closed form to order 40") {
    int N = 40;
    Solution sol = solve(N, Poly(1), SlotVal::num(Rat(1)), SlotVal::num(Rat(1)));
    auto dp = walks::count_walks_dp<Rat>(N, Rat(1));
    for (int n = 0; n <= N; ++n) CHECK(sol.W_uv.coeff(n).constant_value() == dp.z_tail(n));
}

TEST_CASE("functional equation residuals, two-sided order 12") {
    for (const auto& r : verify_two_sided(12)) {
        INFO(r.equation);
        CHECK(r.pass());
    }
}

TEST_CASE("fault injection is detected at the perturbed order") {
    int N = 10;
    KernelContext ctx(N, Poly::symbol(Sym::a), SlotVal::sym(Sym::v));
    Solution sol = full_solution(ctx, SlotVal::sym(Sym::u));
    for (int k : {3, 7}) {
        Series bad = sol.T_uv;
        bad.set_coeff(k, bad.coeff(k) + Poly(1));
        auto reports = verify_two_sided_with(ctx, sol.R_uv, bad, sol.R_u0, N);
        int first = N + 1;
        for (const auto& r : reports)
            if (!r.pass()) first = std::min(first, r.first_failing_order);
        CHECK(first == k);
        // the clean series still pass
        auto clean = verify_two_sided_with(ctx, sol.R_uv, sol.T_uv, sol.R_u0, N);
        for (const auto& r : clean) CHECK(r.pass());
    }
}

TEST_CASE("three-sided residuals from enumerated series, order 8") {
    for (const auto& r : verify_three_sided(8)) {
        INFO(r.equation);
        CHECK(r.pass());
    }
}

TEST_CASE("W(z;1,1;a) has non-negative integer coefficients") {
    Solution sol = solve(16, Poly::symbol(Sym::a), SlotVal::num(Rat(1)), SlotVal::num(Rat(1)));
    for (int n = 0; n <= 16; ++n)
        for (const auto& [k, c] : sol.W_uv.coeff(n).terms()) {
            CHECK(rat_is_integer(c));
            CHECK(c > 0);
        }
}

TEST_CASE("numeric specialization of a") {
    // exact rational a: coefficients of W(z;1,1;5/2) stay exact
    Solution sol = solve(12, Poly(Rat(5, 2)), SlotVal::num(Rat(1)), SlotVal::num(Rat(1)));
    auto e = walks::enumerate_walks(walks::Family::two_sided, 10);
    for (int n = 0; n <= 10; ++n)
        CHECK(sol.W_uv.coeff(n).constant_value() == e.z_tail[n].eval(Rat(5, 2), 1, 1, 1));
}
