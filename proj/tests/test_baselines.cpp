#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pruwalk/baselines.hpp"
#include "pruwalk/fits.hpp"
#include "pruwalk/walks.hpp"

using namespace pruwalk;
using namespace pruwalk::baselines;
using algebra::Poly;
using algebra::Sym;

TEST_CASE("dyck loops are Catalan numbers at a=1") {
    auto z = baseline_partition(Model::dyck, Weighting::vertex, Endpoint::loop, 8);
    long expect[5] = {1, 1, 2, 5, 14};
    for (int m = 0; m <= 4; ++m) CHECK(z[2 * m].eval(1, 1, 1, 1) == expect[m]);
    CHECK(z[1].is_zero());
    CHECK(z[3].is_zero());
}

TEST_CASE("motzkin loops are Motzkin numbers at a=1") {
    auto z = baseline_partition(Model::motzkin, Weighting::edge, Endpoint::loop, 4);
    long expect[5] = {1, 1, 2, 4, 9};
    for (int n = 0; n <= 4; ++n) CHECK(z[n].eval(1, 1, 1, 1) == expect[n]);
}

TEST_CASE("partially-directed growth approaches 1+sqrt(2)") {
    auto t = totals_exact(Model::partially_directed, Endpoint::tail, 60);
    double r = rat_to_double(t[60] / t[59]);
    CHECK(r == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("partially-directed equals one-sided prudent enumeration") {
    auto z_tail = baseline_partition(Model::partially_directed, Weighting::edge, Endpoint::tail, 10);
    auto z_loop = baseline_partition(Model::partially_directed, Weighting::edge, Endpoint::loop, 10);
    auto e = walks::enumerate_walks(walks::Family::one_sided, 10);
    for (int n = 0; n <= 10; ++n) {
        CHECK(z_tail[n] == e.z_tail[n]);
        CHECK(z_loop[n] == e.z_loop[n]);
    }
}

TEST_CASE("critical fugacities") {
    CHECK(baseline_critical_fugacity(Model::dyck, Weighting::vertex).value == 2.0);
    CHECK(baseline_critical_fugacity(Model::motzkin, Weighting::edge).value == 2.0);
    CHECK(baseline_critical_fugacity(Model::motzkin, Weighting::vertex).value == 1.5);
    CHECK(baseline_critical_fugacity(Model::partially_directed, Weighting::edge).value ==
          doctest::Approx(1.7071067811865475).epsilon(1e-14));
    CHECK(baseline_critical_fugacity(Model::partially_directed, Weighting::vertex).value ==
          doctest::Approx((1 + std::sqrt(2.0)) * (std::sqrt(5.0) - 1) / 2).epsilon(1e-14));
    CHECK_THROWS_AS(baseline_critical_fugacity(Model::dyck, Weighting::edge),
                    UnsupportedModelError);
}

TEST_CASE("exact height DPs agree with each other and the float path") {
    for (Model m : {Model::dyck, Model::motzkin, Model::partially_directed}) {
        for (Endpoint ep : {Endpoint::loop, Endpoint::tail}) {
            int N = 60;
            auto pair_dp = height_sums_exact_pair_dp(m, ep, N);
            auto cumul = height_sums_exact_cumulative(m, ep, N);
            auto totals = totals_exact(m, ep, N);
            auto prof = baseline_height_profile(m, ep, N);
            for (int n = 0; n <= N; ++n) {
                CHECK(pair_dp[n] == cumul[n]);
                if (totals[n] != 0) {
                    double mean = rat_to_double(pair_dp[n] / totals[n]);
                    CHECK(prof[n] == doctest::Approx(mean).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("ne_directed heights: tails n/2 exactly, loops zero") {
    auto tails = baseline_height_profile(Model::ne_directed, Endpoint::tail, 50);
    auto loops = baseline_height_profile(Model::ne_directed, Endpoint::loop, 50);
    for (int n = 0; n <= 50; ++n) {
        CHECK(tails[n] == doctest::Approx(n / 2.0).epsilon(1e-15));
        CHECK(loops[n] == 0.0);
    }
    // cross-check against the generic exact DP
    auto sums = height_sums_exact_pair_dp(Model::ne_directed, Endpoint::tail, 20);
    auto tot = totals_exact(Model::ne_directed, Endpoint::tail, 20);
    for (int n = 0; n <= 20; ++n) CHECK(sums[n] * 2 == tot[n] * n);
}

TEST_CASE("dyck loop height amplitude at moderate length") {
    // <h_n>/sqrt(n) approaches sqrt(pi/2); at n=1200 expect within ~3%
    auto prof = baseline_height_profile(Model::dyck, Endpoint::loop, 1200);
    double v = prof[1200] / std::sqrt(1200.0);
    CHECK(v == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(0.03));
}

TEST_CASE("log partition matches exact DP at numeric a") {
    auto z = baseline_partition(Model::motzkin, Weighting::edge, Endpoint::tail, 40);
    auto lp = log_partition(Model::motzkin, Weighting::edge, Endpoint::tail, 1.75, 40);
    for (int n = 0; n <= 40; ++n) {
        double exact = std::log(z[n].eval_double(1.75, 1, 1, 1));
        CHECK(lp[n] == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(baseline_partition(Model::dyck, Weighting::vertex, Endpoint::loop, 6000),
                    LimitError);
    CHECK_THROWS_AS(log_partition(Model::dyck, Weighting::vertex, Endpoint::loop, -1.0, 10),
                    DomainError);
}
