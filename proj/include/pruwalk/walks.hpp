#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "pruwalk/poly.hpp"

namespace pruwalk::walks {

using algebra::Mono;
using algebra::Poly;
using algebra::Sym;

// Walk families above the impenetrable surface y = 0. A walk is admissible
// when every prefix endpoint lies on the family's allowed sides of its
// bounding box (plus prudence, self-avoidance and y >= 0).
enum class Family { one_sided, two_sided, three_sided };
enum class Endpoint { tail, loop };

// A walk as a replayable step string over {N,S,E,W}, starting at (0,0).
struct Walk {
    std::string steps;
};

bool is_admissible(const Walk& w, Family fam);

// Exhaustive-enumeration output. Weights are polynomials in the surface
// fugacity a (one power of a per step with both endpoints at y = 0).
struct EnumResult {
    Family family = Family::two_sided;
    int n_max = 0;
    std::vector<Poly> z_tail;              // Z_n(a), all admissible walks
    std::vector<Poly> z_loop;              // endpoint on the surface
    std::vector<Poly> endpoint_height_sum; // sum of a^nu * endpoint height
    std::vector<Poly> max_height_sum;      // sum of a^nu * max height
    std::vector<Poly> max_height_sum_loop; // max-height sum over loops only

    // two_sided refinement: per length, (i,j) -> weight. Walks at the NE
    // corner of their box appear in both tables (i = 0), mirroring the
    // R/T double count that W = R + T - T(0,v) corrects.
    std::vector<std::map<std::pair<int, int>, Poly>> right2, top2;
    // three_sided refinement: (i,j,k); walks ending on the W side are
    // recorded reflected (k measured to the E side).
    std::vector<std::map<std::array<int, 3>, Poly>> right3, top3;
};

struct EnumLimits {
    int dfs_guard = 16;  // exponential search guard
};

EnumResult enumerate_walks(Family fam, int n_max, const EnumLimits& lim = {});

// Exact height statistics at a numeric fugacity.
struct HeightTable {
    std::vector<Rat> total;         // Z_n(a)
    std::vector<Rat> endpoint_sum;  // sum of a^nu * endpoint height
    std::vector<Rat> max_sum;       // sum of a^nu * max height
    std::vector<double> mean_endpoint() const;
    std::vector<double> mean_max() const;
};

// DFS for small n or any family; DP for two_sided up to the polynomial
// guard. endpoint selects the ensemble the means are taken over.
HeightTable height_statistics(Family fam, int n_max, const Rat& a, Endpoint ep = Endpoint::tail);

}  // namespace pruwalk::walks
