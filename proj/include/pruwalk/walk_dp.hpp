#pragma once

#include <vector>

#include "pruwalk/errors.hpp"
#include "pruwalk/poly.hpp"

namespace pruwalk::walks {

// Polynomial-time counter for two-sided walks, built from the
// last-inflating-step construction. States are (side in {R,T}, i, j):
// for right-enders i is the distance to the top of the box and j the
// endpoint height; for top-enders i is the distance to the right side.
// Each transition appends one inflating step plus a monotone run:
//   from (R,i,j): E step (weight a when j = 0) then k <= i climbs, or
//                 l <= j descents down the fresh east column;
//   from (T,i,j): N step then k <= i east moves along the fresh top row,
//                 or any number of west moves.
// Full climbs/east runs land on the NE corner and enter both tables, so
// R(n,0,j) = T(n,0,j) throughout.
template <class Coef>
struct DpTables {
    int n_max = 0;
    std::vector<std::vector<Coef>> right, top;  // [n], dense (n+1)*(n+1)

    const Coef& R(int n, int i, int j) const { return right[n][static_cast<std::size_t>(i) * (n + 1) + j]; }
    const Coef& T(int n, int i, int j) const { return top[n][static_cast<std::size_t>(i) * (n + 1) + j]; }

    Coef z_tail(int n) const {
        Coef s{};
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n - i; ++j) s += R(n, i, j) + T(n, i, j);
        for (int j = 0; j <= n; ++j) s -= T(n, 0, j);
        return s;
    }
    Coef z_loop(int n) const {
        Coef s{};
        for (int i = 0; i <= n; ++i) s += R(n, i, 0) + T(n, i, 0);
        s -= T(n, 0, 0);
        return s;
    }
    Coef endpoint_sum(int n) const {
        Coef s{};
        for (int i = 0; i <= n; ++i)
            for (int j = 1; j <= n - i; ++j) {
                Coef t = R(n, i, j) + T(n, i, j);
                if (i == 0) t -= T(n, 0, j);
                s += t * Coef(j);
            }
        return s;
    }
    // Max height is i+j for right-enders and j for top-enders (the top of
    // the box is always visited); corner walks agree between the tables.
    Coef max_sum(int n) const {
        Coef s{};
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n - i; ++j) {
                if (i + j > 0) s += R(n, i, j) * Coef(i + j);
                if (j > 0) s += T(n, i, j) * Coef(j);
            }
        for (int j = 1; j <= n; ++j) s -= T(n, 0, j) * Coef(j);
        return s;
    }
    Coef max_sum_loop(int n) const {
        Coef s{};
        for (int i = 1; i <= n; ++i) s += R(n, i, 0) * Coef(i);
        return s;
    }
};

namespace detail {
inline bool coef_is_zero(const Rat& c) { return c == 0; }
inline bool coef_is_zero(const algebra::Poly& c) { return c.is_zero(); }
}  // namespace detail

template <class Coef>
DpTables<Coef> count_walks_dp(int n_max, const Coef& a_value, int guard = 200) {
    if (n_max > guard)
        throw LimitError("count_walks_dp: n_max " + std::to_string(n_max) +
                         " exceeds the polynomial-cost guard " + std::to_string(guard));
    DpTables<Coef> dp;
    dp.n_max = n_max;
    dp.right.resize(static_cast<std::size_t>(n_max) + 1);
    dp.top.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        dp.right[n].assign(static_cast<std::size_t>(n + 1) * (n + 1), Coef{});
        dp.top[n].assign(static_cast<std::size_t>(n + 1) * (n + 1), Coef{});
    }
    auto R = [&](int n, int i, int j) -> Coef& {
        return dp.right[n][static_cast<std::size_t>(i) * (n + 1) + j];
    };
    auto T = [&](int n, int i, int j) -> Coef& {
        return dp.top[n][static_cast<std::size_t>(i) * (n + 1) + j];
    };

    R(0, 0, 0) = Coef(1);
    T(0, 0, 0) = Coef(1);
    // Walks with no inflating step: all-W along the surface.
    Coef apow(1);
    for (int n = 1; n <= n_max; ++n) {
        apow = apow * a_value;
        T(n, n, 0) += apow;
    }

    for (int m = 0; m < n_max; ++m) {
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m - i; ++j) {
                const Coef& wr = dp.right[m][static_cast<std::size_t>(i) * (m + 1) + j];
                if (!detail::coef_is_zero(wr)) {
                    Coef aw = (j == 0) ? wr * a_value : wr;
                    for (int k = 0; k <= i && m + 1 + k <= n_max; ++k) R(m + 1 + k, i - k, j + k) += aw;
                    if (m + 1 + i <= n_max) T(m + 1 + i, 0, j + i) += aw;
                    for (int l = 1; l <= j && m + 1 + l <= n_max; ++l) R(m + 1 + l, i + l, j - l) += wr;
                }
                const Coef& wt = dp.top[m][static_cast<std::size_t>(i) * (m + 1) + j];
                if (!detail::coef_is_zero(wt)) {
                    for (int k = 0; k <= i && m + 1 + k <= n_max; ++k) T(m + 1 + k, i - k, j + 1) += wt;
                    if (m + 1 + i <= n_max) R(m + 1 + i, 0, j + 1) += wt;
                    for (int l = 1; m + 1 + l <= n_max; ++l) T(m + 1 + l, i + l, j + 1) += wt;
                }
            }
        }
    }
    return dp;
}

}  // namespace pruwalk::walks
