#include "pruwalk/baselines.hpp"

#include <cmath>

#include "pruwalk/errors.hpp"

namespace pruwalk::baselines {

namespace {

int channels(Model m) { return m == Model::partially_directed ? 3 : 1; }

void validate_weighting(Model m, Weighting w) {
    if (m == Model::dyck && w == Weighting::edge)
        throw UnsupportedModelError("dyck paths have no steps parallel to the surface; vertex weights only");
    if (m == Model::ne_directed && w == Weighting::vertex)
        throw UnsupportedModelError("ne_directed is implemented with edge weights only");
}

// Enumerate transitions from (h, channel); cb(dh, channel', earns_a).
// Channels matter only for partially-directed walks: 0 = E, 1 = N, 2 = S
// (no immediate N/S reversal).
template <class F>
void transitions(Model m, Weighting w, int h, int c, F&& cb) {
    switch (m) {
        case Model::ne_directed:
            cb(0, 0, h == 0);  // E along the surface
            cb(+1, 0, false);
            break;
        case Model::dyck:
            cb(+1, 0, false);
            if (h >= 1) cb(-1, 0, w == Weighting::vertex && h == 1);
            break;
        case Model::motzkin:
            cb(+1, 0, false);
            cb(0, 0, h == 0);  // surface edge, or arrival at a surface vertex
            if (h >= 1) cb(-1, 0, w == Weighting::vertex && h == 1);
            break;
        case Model::partially_directed:
            if (c == 0 || c == 1) cb(+1, 1, false);
            if ((c == 0 || c == 2) && h >= 1) cb(-1, 2, w == Weighting::vertex && h == 1);
            cb(0, 0, h == 0);
            break;
    }
}

}  // namespace

std::string model_name(Model m) {
    switch (m) {
        case Model::ne_directed: return "ne_directed";
        case Model::dyck: return "dyck";
        case Model::motzkin: return "motzkin";
        case Model::partially_directed: return "partially_directed";
    }
    return "?";
}

std::vector<Poly> baseline_partition(Model m, Weighting w, Endpoint ep, int n_max, int guard) {
    validate_weighting(m, w);
    if (n_max > guard)
        throw LimitError("baseline_partition: n_max " + std::to_string(n_max) +
                         " exceeds the guard " + std::to_string(guard));
    int C = channels(m);
    Poly a = Poly::symbol(algebra::Sym::a);
    std::vector<Poly> val(static_cast<std::size_t>(n_max + 2) * C), next(val.size());
    val[0] = Poly(1);  // h = 0, channel 0
    std::vector<Poly> out(n_max + 1);
    auto collect = [&](int n) {
        Poly z;
        int hmax = n;
        for (int h = 0; h <= (ep == Endpoint::loop ? 0 : hmax); ++h)
            for (int c = 0; c < C; ++c) z += val[static_cast<std::size_t>(h) * C + c];
        out[n] = z;
    };
    collect(0);
    for (int n = 1; n <= n_max; ++n) {
        for (auto& p : next) p = Poly();
        for (int h = 0; h <= n - 1; ++h)
            for (int c = 0; c < C; ++c) {
                const Poly& cur = val[static_cast<std::size_t>(h) * C + c];
                if (cur.is_zero()) continue;
                transitions(m, w, h, c, [&](int dh, int c2, bool earns_a) {
                    Poly add = earns_a ? cur * a : cur;
                    next[static_cast<std::size_t>(h + dh) * C + c2] += add;
                });
            }
        std::swap(val, next);
        collect(n);
    }
    return out;
}

std::vector<double> log_partition(Model m, Weighting w, Endpoint ep, double a, int n_max) {
    validate_weighting(m, w);
    if (a <= 0) throw DomainError("log_partition: a must be positive");
    int C = channels(m);
    std::vector<double> val(static_cast<std::size_t>(n_max + 2) * C, 0.0), next(val.size());
    val[0] = 1.0;
    double logscale = 0.0;
    std::vector<double> out(n_max + 1, -HUGE_VAL);
    auto collect = [&](int n) {
        double z = 0;
        for (int h = 0; h <= (ep == Endpoint::loop ? 0 : n); ++h)
            for (int c = 0; c < C; ++c) z += val[static_cast<std::size_t>(h) * C + c];
        out[n] = z > 0 ? logscale + std::log(z) : -HUGE_VAL;
    };
    collect(0);
    for (int n = 1; n <= n_max; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int h = 0; h <= n - 1; ++h)
            for (int c = 0; c < C; ++c) {
                double cur = val[static_cast<std::size_t>(h) * C + c];
                if (cur == 0) continue;
                transitions(m, w, h, c, [&](int dh, int c2, bool earns_a) {
                    next[static_cast<std::size_t>(h + dh) * C + c2] += earns_a ? cur * a : cur;
                });
            }
        std::swap(val, next);
        double s = 0;
        for (int h = 0; h <= n; ++h)
            for (int c = 0; c < C; ++c) s += val[static_cast<std::size_t>(h) * C + c];
        if (s > 0) {
            for (int h = 0; h <= n; ++h)
                for (int c = 0; c < C; ++c) val[static_cast<std::size_t>(h) * C + c] /= s;
            logscale += std::log(s);
        }
        collect(n);
    }
    return out;
}

CriticalFugacity baseline_critical_fugacity(Model m, Weighting w) {
    validate_weighting(m, w);
    switch (m) {
        case Model::ne_directed:
            // Z(z,a) = (1 + z/(1-2z)) / (1-az): singularities 1/2 and 1/a cross at a=2
            return {2.0, "2"};
        case Model::dyck:
            return {2.0, "2"};
        case Model::motzkin:
            return w == Weighting::edge ? CriticalFugacity{2.0, "2"}
                                        : CriticalFugacity{1.5, "3/2"};
        case Model::partially_directed:
            return w == Weighting::edge
                       ? CriticalFugacity{(2.0 + std::sqrt(2.0)) / 2.0, "(2+sqrt(2))/2"}
                       : CriticalFugacity{(1.0 + std::sqrt(2.0)) * (std::sqrt(5.0) - 1.0) / 2.0,
                                          "(1+sqrt(2))(sqrt(5)-1)/2"};
    }
    throw UnsupportedModelError("unknown model");
}

std::vector<Rat> totals_exact(Model m, Endpoint ep, int n_max) {
    int C = channels(m);
    std::vector<Rat> val(static_cast<std::size_t>(n_max + 2) * C), next(val.size());
    val[0] = 1;
    std::vector<Rat> out(n_max + 1);
    auto sum_states = [&](int n) {
        Rat z(0);
        for (int h = 0; h <= (ep == Endpoint::loop ? 0 : n); ++h)
            for (int c = 0; c < C; ++c) z += val[static_cast<std::size_t>(h) * C + c];
        return z;
    };
    out[0] = sum_states(0);
    for (int n = 1; n <= n_max; ++n) {
        for (auto& p : next) p = 0;
        for (int h = 0; h <= n - 1; ++h)
            for (int c = 0; c < C; ++c) {
                const Rat& cur = val[static_cast<std::size_t>(h) * C + c];
                if (cur == 0) continue;
                transitions(m, Weighting::edge, h, c, [&](int dh, int c2, bool) {
                    next[static_cast<std::size_t>(h + dh) * C + c2] += cur;
                });
            }
        std::swap(val, next);
        out[n] = sum_states(n);
    }
    return out;
}

// Exact (height, max-height) DP: sum over walks of their maximum height.
std::vector<Rat> height_sums_exact_pair_dp(Model m, Endpoint ep, int n_max) {
    int C = channels(m);
    auto idx = [&](int mx, int h, int c) {
        return (static_cast<std::size_t>(mx) * (n_max + 1) + h) * C + c;
    };
    std::vector<Rat> val(static_cast<std::size_t>(n_max + 1) * (n_max + 1) * C),
        next(val.size());
    val[idx(0, 0, 0)] = 1;
    std::vector<Rat> out(n_max + 1);
    auto collect = [&](int n) {
        Rat s(0);
        for (int mx = 0; mx <= n; ++mx)
            for (int h = 0; h <= (ep == Endpoint::loop ? 0 : mx); ++h)
                for (int c = 0; c < C; ++c) s += val[idx(mx, h, c)] * mx;
        out[n] = s;
    };
    collect(0);
    for (int n = 1; n <= n_max; ++n) {
        for (auto& p : next) p = 0;
        for (int mx = 0; mx <= n - 1; ++mx)
            for (int h = 0; h <= mx; ++h)
                for (int c = 0; c < C; ++c) {
                    const Rat& cur = val[idx(mx, h, c)];
                    if (cur == 0) continue;
                    transitions(m, Weighting::edge, h, c, [&](int dh, int c2, bool) {
                        int h2 = h + dh;
                        next[idx(std::max(mx, h2), h2, c2)] += cur;
                    });
                }
        std::swap(val, next);
        collect(n);
    }
    return out;
}

namespace {

// Strip-confined totals with max height <= lam, exact.
std::vector<Rat> strip_totals_exact(Model m, Endpoint ep, int n_max, int lam) {
    int C = channels(m);
    std::vector<Rat> val(static_cast<std::size_t>(lam + 1) * C), next(val.size());
    val[0] = 1;
    std::vector<Rat> out(n_max + 1);
    auto sum_states = [&](int) {
        Rat z(0);
        for (int h = 0; h <= (ep == Endpoint::loop ? 0 : lam); ++h)
            for (int c = 0; c < C; ++c) z += val[static_cast<std::size_t>(h) * C + c];
        return z;
    };
    out[0] = sum_states(0);
    for (int n = 1; n <= n_max; ++n) {
        for (auto& p : next) p = 0;
        for (int h = 0; h <= lam; ++h)
            for (int c = 0; c < C; ++c) {
                const Rat& cur = val[static_cast<std::size_t>(h) * C + c];
                if (cur == 0) continue;
                transitions(m, Weighting::edge, h, c, [&](int dh, int c2, bool) {
                    int h2 = h + dh;
                    if (h2 > lam) return;
                    next[static_cast<std::size_t>(h2) * C + c2] += cur;
                });
            }
        std::swap(val, next);
        out[n] = sum_states(n);
    }
    return out;
}

// Normalized strip DP in doubles; returns per-n strip mass on the log scale.
std::vector<double> strip_log_totals(Model m, Endpoint ep, int n_max, int lam) {
    int C = channels(m);
    std::vector<double> val(static_cast<std::size_t>(lam + 1) * C, 0.0), next(val.size());
    val[0] = 1.0;
    double logscale = 0.0;
    std::vector<double> out(n_max + 1, -HUGE_VAL);
    auto collect = [&](int n) {
        double z = 0;
        for (int h = 0; h <= (ep == Endpoint::loop ? 0 : lam); ++h)
            for (int c = 0; c < C; ++c) z += val[static_cast<std::size_t>(h) * C + c];
        out[n] = z > 0 ? logscale + std::log(z) : -HUGE_VAL;
    };
    collect(0);
    for (int n = 1; n <= n_max; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int h = 0; h <= lam; ++h)
            for (int c = 0; c < C; ++c) {
                double cur = val[static_cast<std::size_t>(h) * C + c];
                if (cur == 0) continue;
                transitions(m, Weighting::edge, h, c, [&](int dh, int c2, bool) {
                    int h2 = h + dh;
                    if (h2 > lam) return;
                    next[static_cast<std::size_t>(h2) * C + c2] += cur;
                });
            }
        std::swap(val, next);
        double s = 0;
        for (auto x : val) s += x;
        if (s > 0) {
            for (auto& x : val) x /= s;
            logscale += std::log(s);
        }
        collect(n);
    }
    return out;
}

}  // namespace

std::vector<Rat> height_sums_exact_cumulative(Model m, Endpoint ep, int n_max) {
    // sum over walks of max height = sum over lam >= 0 of (Total - C_lam)
    std::vector<Rat> total(n_max + 1);
    {
        auto t = strip_totals_exact(m, ep, n_max, n_max);
        total = t;
    }
    std::vector<Rat> sums(n_max + 1, Rat(0));
    for (int lam = 0; lam < n_max; ++lam) {
        auto confined = strip_totals_exact(m, ep, n_max, lam);
        for (int n = 0; n <= n_max; ++n) sums[n] += total[n] - confined[n];
    }
    return sums;
}

std::vector<double> baseline_height_profile(Model m, Endpoint ep, int n_max, int guard) {
    if (n_max > guard)
        throw LimitError("baseline_height_profile: n_max exceeds the guard");
    std::vector<double> mean(n_max + 1, 0.0);
    if (m == Model::ne_directed) {
        // exact: tails <h_n> = n/2 (h = number of N steps); loops are all-E
        if (ep == Endpoint::tail)
            for (int n = 0; n <= n_max; ++n) mean[n] = n / 2.0;
        return mean;
    }
    std::vector<double> logT = strip_log_totals(m, ep, n_max, n_max);
    std::vector<double> hsum(n_max + 1, 0.0);
    for (int lam = 0; lam < n_max; ++lam) {
        std::vector<double> logS = strip_log_totals(m, ep, n_max, lam);
        double tail_def = 0;
        for (int n = 0; n <= n_max; ++n) {
            if (logT[n] == -HUGE_VAL) continue;
            double deficit = 1.0 - std::exp(logS[n] - logT[n]);
            if (deficit < 0) deficit = 0;
            hsum[n] += deficit;
            if (n == n_max) tail_def = deficit;
        }
        if (lam > 4 && tail_def < 1e-13) break;  // deficits are monotone in lam
    }
    for (int n = 0; n <= n_max; ++n) mean[n] = (logT[n] == -HUGE_VAL) ? 0.0 : hsum[n];
    return mean;
}

}  // namespace pruwalk::baselines
