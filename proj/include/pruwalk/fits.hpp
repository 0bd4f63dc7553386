#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pruwalk/errors.hpp"

namespace pruwalk::fits {

struct LinFit {
    double slope = 0, intercept = 0, residual_rms = 0;
};

inline LinFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw Error("fit_linear: bad input");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LinFit f;
    double det = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (f.slope * xs[i] + f.intercept);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / n);
    return f;
}

struct PowerFit {
    double amplitude = 0, exponent = 0, residual_rms = 0;
};

// y ~ amplitude * x^exponent via log-log least squares (y > 0 required).
inline PowerFit fit_power(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] <= 0 || xs[i] <= 0) throw Error("fit_power: inputs must be positive");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    LinFit f = fit_linear(lx, ly);
    return {std::exp(f.intercept), f.slope, f.residual_rms};
}

struct SqrtFit {
    double A = 0, B = 0, C = 0, residual_rms = 0;
};

// y ~ A sqrt(n) + B + C / sqrt(n) by 3-parameter least squares.
inline SqrtFit fit_sqrt_amplitude(const std::vector<double>& ns, const std::vector<double>& ys) {
    if (ns.size() != ys.size() || ns.size() < 3) throw Error("fit_sqrt_amplitude: bad input");
    double m[3][3] = {};
    double rhs[3] = {};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double s = std::sqrt(ns[i]);
        double b[3] = {s, 1.0, 1.0 / s};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += b[r] * ys[i];
            for (int c = 0; c < 3; ++c) m[r][c] += b[r] * b[c];
        }
    }
    // Gaussian elimination, 3x3
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int p = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[p][col])) p = r;
        for (int c = 0; c < 3; ++c) std::swap(m[col][c], m[p][c]);
        std::swap(rhs[col], rhs[p]);
        (void)idx;
        for (int r = col + 1; r < 3; ++r) {
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    double sol[3];
    for (int r = 2; r >= 0; --r) {
        double acc = rhs[r];
        for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * sol[c];
        sol[r] = acc / m[r][r];
    }
    SqrtFit f{sol[0], sol[1], sol[2], 0};
    double ss = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double s = std::sqrt(ns[i]);
        double r = ys[i] - (f.A * s + f.B + f.C / s);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / static_cast<double>(ns.size()));
    return f;
}



}  // namespace pruwalk::fits
