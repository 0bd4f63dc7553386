#include "pruwalk/phase.hpp"

#include <algorithm>
#include <cmath>

#include "pruwalk/errors.hpp"
#include "pruwalk/fits.hpp"
#include "pruwalk/walk_dp.hpp"

namespace pruwalk::phase {

UniPoly::UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

UniPoly UniPoly::from_longs(std::initializer_list<long> coeffs) {
    std::vector<Rat> v;
    for (long x : coeffs) v.emplace_back(x);
    return UniPoly(std::move(v));
}

Rat UniPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double UniPoly::eval_double(double x) const {
    double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + rat_to_double(*it);
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<Rat> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<long>(k));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::negated() const {
    UniPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

const CriticalPolynomials& critical_polynomials() {
    static const CriticalPolynomials cp{
        UniPoly::from_longs({1, -2, -2, 2}),
        UniPoly::from_longs({1, -3, -1, 6, 0, 0, 0, -7, -1, 3, 1}),
        UniPoly::from_longs({1, -7, 45, -143, 277, -346, 285, -155, 54, -11, 1}),
    };
    return cp;
}

UniPoly adsorbed_poly(const Rat& a) {
    Rat om_a = 1 - a;
    return UniPoly({1 - a, -a * om_a, a, a * om_a});
}

double adsorbed_F(double z, double a) {
    return 1 - a - a * (1 - a) * z + a * z * z + a * (1 - a) * z * z * z;
}
double adsorbed_Fz(double z, double a) { return -a * (1 - a) + 2 * a * z + 3 * a * (1 - a) * z * z; }
double adsorbed_Fa(double z, double a) {
    return -1 - (1 - 2 * a) * z + z * z + (1 - 2 * a) * z * z * z;
}

namespace {

// -- exact polynomial helpers for the Sturm chain ------------------------

UniPoly poly_rem(UniPoly num, const UniPoly& den) {
    if (den.is_zero()) throw DegenerateError("poly_rem: zero divisor");
    while (!num.is_zero() && num.degree() >= den.degree()) {
        Rat f = num.c.back() / den.c.back();
        int shift = num.degree() - den.degree();
        for (int k = 0; k <= den.degree(); ++k) num.c[static_cast<std::size_t>(k + shift)] -= f * den.c[static_cast<std::size_t>(k)];
        while (!num.c.empty() && num.c.back() == 0) num.c.pop_back();
    }
    return num;
}

UniPoly poly_gcd(UniPoly x, UniPoly y) {
    while (!y.is_zero()) {
        UniPoly r = poly_rem(x, y);
        x = y;
        y = r;
    }
    if (!x.is_zero()) {  // monic normalization
        Rat lead = x.c.back();
        for (auto& cc : x.c) cc /= lead;
    }
    return x;
}

UniPoly poly_divide(const UniPoly& num, const UniPoly& den) {
    UniPoly rem = num;
    std::vector<Rat> q(static_cast<std::size_t>(std::max(0, num.degree() - den.degree() + 1)));
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
        Rat f = rem.c.back() / den.c.back();
        int shift = rem.degree() - den.degree();
        q[static_cast<std::size_t>(shift)] = f;
        for (int k = 0; k <= den.degree(); ++k) rem.c[static_cast<std::size_t>(k + shift)] -= f * den.c[static_cast<std::size_t>(k)];
        while (!rem.c.empty() && rem.c.back() == 0) rem.c.pop_back();
    }
    return UniPoly(std::move(q));
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        UniPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(r.negated());
    }
    return chain;
}

int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sign_variations(const std::vector<UniPoly>& chain, const Rat& x) {
    int v = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// Refine a sign-change bracket of a square-free polynomial by bisection.
double refine_root(const UniPoly& p, Rat lo, Rat hi) {
    int slo = sign_of(p.eval(lo));
    if (slo == 0) return rat_to_double(lo);
    if (sign_of(p.eval(hi)) == 0) return rat_to_double(hi);
    for (int it = 0; it < 64; ++it) {
        Rat mid = (lo + hi) / 2;
        int sm = sign_of(p.eval(mid));
        if (sm == 0) return rat_to_double(mid);
        if (sm == slo) lo = mid;
        else hi = mid;
        double w = rat_to_double(hi - lo);
        double scale = std::max(1.0, std::fabs(rat_to_double(lo)));
        if (w < 1e-14 * scale) break;
    }
    return rat_to_double((lo + hi) / 2);
}

}  // namespace

std::vector<Root> isolate_real_roots(const UniPoly& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) throw DegenerateError("isolate_real_roots: zero polynomial");
    if (!(lo < hi)) throw DomainError("isolate_real_roots: need lo < hi");
    // square-free part carries the distinct roots; the gcd chain carries
    // multiplicities
    std::vector<UniPoly> gchain{p};
    while (gchain.back().degree() > 0) {
        UniPoly g = poly_gcd(gchain.back(), gchain.back().derivative());
        if (g.degree() == 0) break;
        gchain.push_back(g);
    }
    UniPoly sf = gchain.size() > 1 ? poly_divide(gchain[0], gchain[1]) : gchain[0];
    auto chain = sturm_chain(sf);

    // nudge endpoints off exact roots of the square-free part
    Rat lo2 = lo, hi2 = hi;
    Rat eps(1, 1000000000000L);
    if (sf.eval(lo2) == 0) lo2 += eps;
    if (sf.eval(hi2) == 0) hi2 -= eps;

    std::vector<std::pair<Rat, Rat>> pending{{lo2, hi2}}, isolated;
    while (!pending.empty()) {
        auto [a, b] = pending.back();
        pending.pop_back();
        int count = sign_variations(chain, a) - sign_variations(chain, b);
        if (count <= 0) continue;
        if (count == 1) {
            isolated.emplace_back(a, b);
            continue;
        }
        Rat mid = (a + b) / 2;
        if (sf.eval(mid) == 0) {
            // split just past the midpoint root
            Rat d = (b - a) / 1000000;
            pending.emplace_back(a, mid + d);
            pending.emplace_back(mid + d, b);
        } else {
            pending.emplace_back(a, mid);
            pending.emplace_back(mid, b);
        }
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::vector<Root> roots;
    for (auto& [a, b] : isolated) {
        double r = refine_root(sf, a, b);
        // Newton polish on the square-free part
        for (int it = 0; it < 6; ++it) {
            double f = sf.eval_double(r), fp = sf.derivative().eval_double(r);
            if (fp == 0) break;
            double step = f / fp;
            r -= step;
            if (std::fabs(step) < 1e-16 * std::max(1.0, std::fabs(r))) break;
        }
        // multiplicity: deepest gcd-chain member whose square-free part
        // still changes sign on the bracket
        int mult = 1;
        for (std::size_t j = 1; j < gchain.size(); ++j) {
            UniPoly gsf = gchain.size() > j + 1 && gchain[j + 1].degree() > 0
                              ? poly_divide(gchain[j], poly_gcd(gchain[j], gchain[j].derivative()))
                              : gchain[j];
            if (sign_of(gsf.eval(a)) * sign_of(gsf.eval(b)) < 0) mult = static_cast<int>(j) + 1;
        }
        roots.push_back({r, mult});
    }
    return roots;
}

PhaseModel phase_model_from_name(const std::string& name) {
    if (name == "tails" || name == "prudent_tails") return PhaseModel::prudent_tails;
    if (name == "loops" || name == "prudent_loops") return PhaseModel::prudent_loops;
    if (name == "ne_directed") return PhaseModel::ne_directed;
    if (name == "dyck") return PhaseModel::dyck;
    if (name == "motzkin") return PhaseModel::motzkin;
    if (name == "partially_directed") return PhaseModel::partially_directed;
    throw UnsupportedModelError("unknown model '" + name + "'");
}

std::string phase_model_name(PhaseModel m) {
    switch (m) {
        case PhaseModel::prudent_tails: return "prudent_tails";
        case PhaseModel::prudent_loops: return "prudent_loops";
        case PhaseModel::ne_directed: return "ne_directed";
        case PhaseModel::dyck: return "dyck";
        case PhaseModel::motzkin: return "motzkin";
        case PhaseModel::partially_directed: return "partially_directed";
    }
    return "?";
}

namespace {

double unique_root_in(const UniPoly& p, const Rat& lo, const Rat& hi, const char* what) {
    auto roots = isolate_real_roots(p, lo, hi);
    if (roots.size() != 1)
        throw Error(std::string("expected a unique root for ") + what + ", found " +
                    std::to_string(roots.size()));
    return roots[0].value;
}

// smallest root of the adsorbed polynomial in (0, z_desorbed]; asserts
// uniqueness in that interval (decision D3)
double adsorbed_root(double a, double z_desorbed) {
    Rat ar(a);
    ar.canonicalize();
    UniPoly F = adsorbed_poly(ar);
    Rat hi(z_desorbed * (1 + 1e-9));
    auto roots = isolate_real_roots(F, Rat(0), hi);
    if (roots.empty()) throw Error("adsorbed_root: no root below the desorbed point");
    if (roots.size() > 1)
        throw Error("adsorbed_root: dominant-singularity root not unique in (0, z_desorbed]");
    return roots[0].value;
}

baselines::Weighting default_weighting(PhaseModel m) {
    return m == PhaseModel::dyck ? baselines::Weighting::vertex : baselines::Weighting::edge;
}

baselines::Model base_model(PhaseModel m) {
    switch (m) {
        case PhaseModel::ne_directed: return baselines::Model::ne_directed;
        case PhaseModel::dyck: return baselines::Model::dyck;
        case PhaseModel::motzkin: return baselines::Model::motzkin;
        case PhaseModel::partially_directed: return baselines::Model::partially_directed;
        default: throw Error("base_model: not a baseline model");
    }
}

bool is_prudent(PhaseModel m) {
    return m == PhaseModel::prudent_tails || m == PhaseModel::prudent_loops;
}

// numeric free energy for baseline models from coefficient ratios taken
// near the end of a long exact-DP series (window passed on the log scale)
double baseline_free_energy(PhaseModel m, double a, int n_max = 1400) {
    auto lp = baselines::log_partition(base_model(m), default_weighting(m),
                                       baselines::Endpoint::tail, a, n_max);
    int K = 80;
    int first = n_max - K;
    std::vector<double> window(static_cast<std::size_t>(K) + 1);
    for (int i = 0; i <= K; ++i) {
        double l = lp[static_cast<std::size_t>(first + i)];
        window[static_cast<std::size_t>(i)] = l == -HUGE_VAL ? 0.0 : std::exp(l - lp.back());
    }
    SingularityEstimate est = ratio_estimate_indexed(window, first);
    return -std::log(est.z_c);
}

}  // namespace

double z1_tails() {
    static const double z = unique_root_in(critical_polynomials().tails_desorbed, Rat(0), Rat(1),
                                           "tails desorbed point");
    return z;
}

double z1_loops() {
    static const double z = unique_root_in(critical_polynomials().loops_desorbed, Rat(0), Rat(1),
                                           "loops desorbed point");
    return z;
}

double critical_a(PhaseModel m) {
    switch (m) {
        case PhaseModel::prudent_tails: return 2.0;  // exact: the a=2 factorization
        case PhaseModel::prudent_loops: {
            static const double ac = unique_root_in(critical_polynomials().loops_critical_a,
                                                    Rat(1), Rat(2), "loops critical fugacity");
            return ac;
        }
        case PhaseModel::ne_directed: return 2.0;
        default:
            return baselines::baseline_critical_fugacity(base_model(m), default_weighting(m)).value;
    }
}

double free_energy(PhaseModel m, double a) {
    if (a <= 0) throw DomainError("free_energy: a must be positive");
    switch (m) {
        case PhaseModel::prudent_tails:
            return a <= 2.0 ? -std::log(z1_tails()) : -std::log(adsorbed_root(a, z1_tails()));
        case PhaseModel::prudent_loops: {
            double ac = critical_a(m);
            return a <= ac ? -std::log(z1_loops()) : -std::log(adsorbed_root(a, z1_loops()));
        }
        case PhaseModel::ne_directed:
            return std::max(std::log(2.0), std::log(a));
        default:
            return baseline_free_energy(m, a);
    }
}

double surface_density(PhaseModel m, double a, Side side) {
    if (a <= 0) throw DomainError("surface_density: a must be positive");
    double ac = critical_a(m);
    if (side == Side::automatic && std::fabs(a - ac) < 1e-9)
        throw NearCriticalError("surface_density: a within 1e-9 of a_c; pass an explicit side");
    bool above = a > ac || (side == Side::above && a >= ac - 1e-12);
    if (!above) return 0.0;
    if (is_prudent(m)) {
        double zdes = m == PhaseModel::prudent_tails ? z1_tails() : z1_loops();
        double z = a > ac ? adsorbed_root(a, zdes) : zdes;  // at a_c+ the root meets z_desorbed
        // rho = (a/z) F_a / F_z by implicit differentiation of F(z,a) = 0
        return (a / z) * adsorbed_Fa(z, a) / adsorbed_Fz(z, a);
    }
    if (m == PhaseModel::ne_directed) return 1.0;
    // numeric baselines: centered difference of f in alpha
    double h = 0.04;
    double fp = baseline_free_energy(m, a * std::exp(h));
    double fm = baseline_free_energy(m, a * std::exp(-h));
    return (fp - fm) / (2 * h);
}

CriticalPoint critical_point(PhaseModel m) {
    double ac = critical_a(m);
    if (is_prudent(m) || m == PhaseModel::ne_directed)
        return {ac, surface_density(m, ac, Side::above)};
    // second-order candidates: extrapolate rho(a_c (1+eps)) to eps -> 0
    double e1 = 0.04, e2 = 0.08, e3 = 0.16;
    double r1 = surface_density(m, ac * (1 + e1));
    double r2 = surface_density(m, ac * (1 + e2));
    double r3 = surface_density(m, ac * (1 + e3));
    // quadratic extrapolation through (e1,r1),(e2,r2),(e3,r3) at 0
    double l1 = (0 - e2) * (0 - e3) / ((e1 - e2) * (e1 - e3));
    double l2 = (0 - e1) * (0 - e3) / ((e2 - e1) * (e2 - e3));
    double l3 = (0 - e1) * (0 - e2) / ((e3 - e1) * (e3 - e2));
    return {ac, l1 * r1 + l2 * r2 + l3 * r3};
}

PhasePoint phase_point(PhaseModel m, double alpha) {
    double a = std::exp(alpha);
    double ac = critical_a(m);
    PhasePoint p;
    p.alpha = alpha;
    p.a = a;
    p.f = free_energy(m, a);
    bool adsorbed = a > ac;
    p.rho = adsorbed ? surface_density(m, a, Side::above) : 0.0;
    p.phase = adsorbed ? "adsorbed" : "desorbed";
    return p;
}

namespace {

SingularityEstimate ratio_estimate_impl(const std::vector<double>& coeffs, int first_index) {
    // locate the nonzero support and its stride
    std::vector<int> support;
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
        double c = coeffs[static_cast<std::size_t>(i)];
        if (c < 0) throw DomainError("ratio_estimate: coefficients must be non-negative");
        if (c != 0) support.push_back(i);
    }
    if (support.size() < 20)
        throw DomainError("ratio_estimate: need at least 20 nonzero coefficients");
    int stride = support[1] - support[0];
    for (std::size_t i = 1; i < support.size(); ++i)
        if (support[i] - support[i - 1] != stride)
            throw DomainError("ratio_estimate: nonzero support is not an arithmetic progression");

    auto ratios_of = [&](int step) {
        std::vector<double> r, idx;
        for (std::size_t i = static_cast<std::size_t>(step); i < support.size();
             i += static_cast<std::size_t>(step)) {
            r.push_back(coeffs[static_cast<std::size_t>(support[i])] /
                        coeffs[static_cast<std::size_t>(support[i - step])]);
            idx.push_back(first_index + support[i]);
        }
        return std::pair(r, idx);
    };

    auto [r1, idx1] = ratios_of(1);
    // period-2 behaviour: persistent alternation of the ratio increments;
    // handled by taking every other coefficient (a doubled stride)
    bool oscillation = false;
    {
        int alt = 0, cnt = 0;
        for (std::size_t i = 2; i < r1.size(); ++i) {
            double d1 = r1[i] - r1[i - 1], d0 = r1[i - 1] - r1[i - 2];
            if (d0 != 0 && d1 != 0) {
                ++cnt;
                if ((d0 > 0) != (d1 > 0)) ++alt;
            }
        }
        oscillation = cnt >= 8 && alt > (3 * cnt) / 4;
    }
    int eff_stride = stride;
    std::vector<double> seq = r1, idx = idx1;
    if (oscillation) {
        auto [r2, idx2] = ratios_of(2);
        seq = r2;
        idx = idx2;
        eff_stride = 2 * stride;
    }

    // Aitken-type geometric tail summation: ratio corrections from the
    // subdominant singularities decay geometrically; the signed decay ratio
    // is estimated from averaged difference quotients (more stable than a
    // pointwise delta-squared) and the remaining tail is summed in closed
    // form. Two passes handle a residual second mode.
    double before_last_pass = seq.back();
    for (int pass = 0; pass < 2 && seq.size() >= 6; ++pass) {
        before_last_pass = seq.back();
        std::vector<double> d(seq.size() - 1);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) d[i] = seq[i + 1] - seq[i];
        double qsum = 0;
        int qcnt = 0;
        for (std::size_t i = d.size() >= 11 ? d.size() - 11 : 0; i + 1 < d.size(); ++i) {
            if (d[i] != 0) {
                qsum += d[i + 1] / d[i];
                ++qcnt;
            }
        }
        if (qcnt == 0) break;  // differences vanished: the sequence converged
        double q = qsum / qcnt;
        if (!(std::fabs(q) < 0.999)) break;  // too slow to sum; keep the raw tail
        std::vector<double> t(seq.size() - 1), ti(seq.size() - 1);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            t[i] = seq[i + 1] + d[i] * q * q / (1 - q);
            ti[i] = idx[i + 1];
        }
        seq = std::move(t);
        idx = std::move(ti);
    }
    double limit = seq.back();
    double spread = std::fabs(limit - before_last_pass);
    if (seq.size() >= 2) spread = std::max(spread, std::fabs(limit - seq[seq.size() - 2]));
    if (!(limit > 0)) {  // extrapolation overshot; fall back to the raw tail ratio
        auto [rr, ri] = ratios_of(eff_stride / stride);
        limit = rr.back();
        spread = std::fabs(limit - rr.front());
    }

    SingularityEstimate est;
    est.method = "ratio+extrapolation";
    est.series_length = static_cast<int>(coeffs.size());
    est.oscillation = oscillation;
    est.stride = eff_stride;
    est.z_c = std::pow(limit, -1.0 / est.stride);
    // propagate the ratio spread through z_c = limit^(-1/stride)
    est.uncertainty = spread / (est.stride * limit) * est.z_c;
    return est;
}

}  // namespace

SingularityEstimate ratio_estimate_indexed(const std::vector<double>& coeffs, int first_index) {
    return ratio_estimate_impl(coeffs, first_index);
}

SingularityEstimate ratio_estimate(const std::vector<double>& coeffs) {
    return ratio_estimate_impl(coeffs, 0);
}

std::vector<TransitionRow> transition_height_report() {
    std::vector<TransitionRow> rows;
    auto classify = [](double jump) { return jump > 0.05 ? std::string("first") : std::string("second"); };
    // The conjecture ties first-order to Theta(n) heights and second-order to
    // O(n^{3/4}). At these lengths the prudent channels are still inside a
    // slow crossover (their measured window exponents sit between 3/4 and 1),
    // so the flag reports contradiction, not confirmation: a first-order
    // model is inconsistent only if its exponent has fallen below 3/4, a
    // second-order model only if it exceeds 0.8.
    auto consistent = [](const std::string& order, double gamma) {
        if (order == "first") return gamma >= 0.75;
        if (order == "second") return gamma <= 0.8;
        return true;
    };

    {  // NE-directed tails: exact gamma = 1, first-order (jump 0 -> 1 at a=2)
        rows.push_back({"ne_directed tails", 1.0, "first", 1.0, true});
        rows.push_back({"ne_directed loops", 0.0, "none", 0.0, true});
    }
    for (PhaseModel m : {PhaseModel::dyck, PhaseModel::motzkin, PhaseModel::partially_directed}) {
        for (auto ep : {baselines::Endpoint::loop, baselines::Endpoint::tail}) {
            int N = 1600;
            auto prof = baselines::baseline_height_profile(base_model(m), ep, N);
            std::vector<double> ns, ys;
            int stride = m == PhaseModel::dyck ? 2 : 1;
            for (int n = (N / 2 / stride) * stride; n <= N; n += 8 * stride) {
                if (prof[n] > 0) {
                    ns.push_back(n);
                    ys.push_back(prof[n]);
                }
            }
            auto pf = fits::fit_power(ns, ys);
            CriticalPoint cp = critical_point(m);
            std::string order = classify(cp.density_jump);
            std::string name = phase_model_name(m) + (ep == baselines::Endpoint::loop ? " loops" : " tails");
            rows.push_back({name, pf.exponent, order, cp.density_jump, consistent(order, pf.exponent)});
        }
    }
    for (PhaseModel m : {PhaseModel::prudent_tails, PhaseModel::prudent_loops}) {
        int N = 60;
        auto dp = walks::count_walks_dp<Rat>(N, Rat(1));
        std::vector<double> ns, ys;
        for (int n = 20; n <= N; ++n) {
            Rat tot = m == PhaseModel::prudent_tails ? dp.z_tail(n) : dp.z_loop(n);
            Rat hs = m == PhaseModel::prudent_tails ? dp.max_sum(n) : dp.max_sum_loop(n);
            ns.push_back(n);
            ys.push_back(rat_to_double(hs / tot));
        }
        auto pf = fits::fit_power(ns, ys);
        CriticalPoint cp = critical_point(m);
        std::string order = classify(cp.density_jump);
        rows.push_back({phase_model_name(m), pf.exponent, order, cp.density_jump,
                        consistent(order, pf.exponent)});
    }
    return rows;
}

}  // namespace pruwalk::phase
