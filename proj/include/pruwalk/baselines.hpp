#pragma once

#include <string>
#include <vector>

#include "pruwalk/poly.hpp"

namespace pruwalk::baselines {

using algebra::Poly;

// Directed adsorption models above the surface, all height-indexed:
//  ne_directed        N/E steps on the square lattice
//  dyck               +-1 steps (45-degree rotated square lattice)
//  motzkin            +1/0/-1 steps (triangular lattice)
//  partially_directed N/S/E steps, no immediate reversal
enum class Model { ne_directed, dyck, motzkin, partially_directed };
enum class Weighting { edge, vertex };
enum class Endpoint { loop, tail };

std::string model_name(Model m);

// Exact partition functions Z_n(a) as polynomials in a (height-indexed DP).
// Dyck supports vertex weighting only; ne_directed edge only.
std::vector<Poly> baseline_partition(Model m, Weighting w, Endpoint ep, int n_max,
                                     int guard = 5000);

// log Z_n(a) at numeric a (scaled double DP), for ratio/free-energy work.
std::vector<double> log_partition(Model m, Weighting w, Endpoint ep, double a, int n_max);

struct CriticalFugacity {
    double value;
    std::string closed_form;
};
CriticalFugacity baseline_critical_fugacity(Model m, Weighting w);

// Mean maximum height <h_n> at a = 1 for n = 0..n_max.
// The large-n path sums strip-confinement deficits in scaled doubles; the
// two exact integer DPs below cross-validate it (and each other) at small n.
std::vector<double> baseline_height_profile(Model m, Endpoint ep, int n_max, int guard = 5000);
std::vector<Rat> height_sums_exact_pair_dp(Model m, Endpoint ep, int n_max);   // (height,max) DP
std::vector<Rat> height_sums_exact_cumulative(Model m, Endpoint ep, int n_max);
std::vector<Rat> totals_exact(Model m, Endpoint ep, int n_max);

}  // namespace pruwalk::baselines
