#pragma once

#include <string>
#include <vector>

#include "pruwalk/baselines.hpp"
#include "pruwalk/rational.hpp"

namespace pruwalk::phase {

// Exact univariate polynomial over Rat (variable z, or a for the critical-a
// polynomial).
struct UniPoly {
    std::vector<Rat> c;  // c[k] * x^k, trailing zeros trimmed

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs);
    static UniPoly from_longs(std::initializer_list<long> coeffs);
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Rat eval(const Rat& x) const;
    double eval_double(double x) const;
    UniPoly derivative() const;
    bool operator==(const UniPoly& o) const { return c == o.c; }
    UniPoly negated() const;
};

// The four exact polynomials controlling the singularity structure.
struct CriticalPolynomials {
    UniPoly tails_desorbed;    // 1 - 2z - 2z^2 + 2z^3
    UniPoly loops_desorbed;    // 1 - 3z - z^2 + 6z^3 - 7z^7 - z^8 + 3z^9 + z^10
    UniPoly loops_critical_a;  // degree 10 in a
};
const CriticalPolynomials& critical_polynomials();
// F(z,a) = 1 - a - a(1-a) z + a z^2 + a(1-a) z^3 as a polynomial in z.
UniPoly adsorbed_poly(const Rat& a);
double adsorbed_F(double z, double a);
double adsorbed_Fz(double z, double a);
double adsorbed_Fa(double z, double a);

struct Root {
    double value;
    int multiplicity;
};
// All real roots in (lo, hi), isolated by a Sturm chain over exact
// rationals and refined by bisection to ~1e-13 relative width.
std::vector<Root> isolate_real_roots(const UniPoly& p, const Rat& lo, const Rat& hi);

enum class PhaseModel { prudent_tails, prudent_loops, ne_directed, dyck, motzkin, partially_directed };
PhaseModel phase_model_from_name(const std::string& name);
std::string phase_model_name(PhaseModel m);

enum class Side { below, above, automatic };

// Reference roots (cached): z1t ~ 0.403032, z1l ~ 0.412095, acl ~ 1.82476.
double z1_tails();
double z1_loops();
double critical_a(PhaseModel m);

double free_energy(PhaseModel m, double a);
double surface_density(PhaseModel m, double a, Side side = Side::automatic);

struct CriticalPoint {
    double a_c;
    double density_jump;
};
CriticalPoint critical_point(PhaseModel m);

struct PhasePoint {
    double alpha, a, f, rho;
    std::string phase;  // "desorbed" | "adsorbed"
};
PhasePoint phase_point(PhaseModel m, double alpha);

struct SingularityEstimate {
    double z_c = 0;
    std::string method;       // "ratio" | "ratio+extrapolation"
    int series_length = 0;    // coefficients used
    double uncertainty = 0;   // extrapolation spread, never fabricated
    bool oscillation = false; // period-2 ratio handling engaged
    int stride = 1;           // nonzero-subsequence spacing
};
SingularityEstimate ratio_estimate(const std::vector<double>& coeffs);
// As above, with coeffs[i] the coefficient of z^(first_index+i): extrapolation
// corrections are calibrated against the true indices.
SingularityEstimate ratio_estimate_indexed(const std::vector<double>& coeffs, int first_index);

struct TransitionRow {
    std::string model;
    double gamma;        // fitted height exponent
    std::string order;   // "first" | "second" | "none"
    double jump;         // estimated density jump at a_c
    bool consistent;     // with the height-vs-order conjecture
};
std::vector<TransitionRow> transition_height_report();

}  // namespace pruwalk::phase
