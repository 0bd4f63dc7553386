#include "pruwalk/series.hpp"

#include <algorithm>
#include <sstream>

namespace pruwalk::algebra {

std::string Series::to_string(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    bool first = true;
    for (int k = 0; k <= order_ && shown < max_terms; ++k) {
        const Poly& p = c_[static_cast<std::size_t>(k)];
        if (p.is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << p.to_string() << ")*z^" << k;
        first = false;
        ++shown;
    }
    if (first) os << "0";
    os << " + O(z^" << order_ + 1 << ")";
    return os.str();
}

Series add(const Series& x, const Series& y) {
    int N = std::min(x.order(), y.order());
    Series r(N);
    for (int k = 0; k <= N; ++k) r.set_coeff(k, x.coeff(k) + y.coeff(k));
    return r;
}

Series sub(const Series& x, const Series& y) {
    int N = std::min(x.order(), y.order());
    Series r(N);
    for (int k = 0; k <= N; ++k) r.set_coeff(k, x.coeff(k) - y.coeff(k));
    return r;
}

Series neg(const Series& x) {
    Series r(x.order());
    for (int k = 0; k <= x.order(); ++k) r.set_coeff(k, -x.coeff(k));
    return r;
}

Series mul(const Series& x, const Series& y) {
    int N = std::min(x.order(), y.order());
    Series r(N);
    int vx = x.valuation(), vy = y.valuation();
    for (int n = 0; n <= N; ++n) {
        PolyBuilder acc;
        for (int i = std::max(vx, n - y.order()); i <= n - vy && i <= x.order(); ++i) {
            const Poly& xi = x.coeff(i);
            const Poly& yj = y.coeff(n - i);
            if (xi.is_zero() || yj.is_zero()) continue;
            for (const auto& [xk, xc] : xi.terms())
                for (const auto& [yk, yc] : yj.terms()) acc.add(Mono{xk}.times(Mono{yk}).key, xc * yc);
        }
        r.set_coeff(n, acc.take());
    }
    return r;
}

Series mul_poly(const Series& x, const Poly& p) {
    Series r(x.order());
    if (p.is_zero()) return r;
    for (int k = 0; k <= x.order(); ++k)
        if (!x.coeff(k).is_zero()) r.set_coeff(k, x.coeff(k) * p);
    return r;
}

Series mul_rat(const Series& x, const Rat& c) {
    Series r(x.order());
    if (c == 0) return r;
    for (int k = 0; k <= x.order(); ++k) r.set_coeff(k, x.coeff(k).times_rat(c));
    return r;
}

Series shift_up(const Series& x, int k) {
    if (k < 0) throw Error("shift_up: negative shift");
    Series r(x.order() + k);
    for (int i = 0; i <= x.order(); ++i) r.set_coeff(i + k, x.coeff(i));
    return r;
}

Series shift_down(const Series& x, int k) {
    if (k < 0) throw Error("shift_down: negative shift");
    if (x.valuation() < k)
        throw ValuationError("shift_down: valuation " + std::to_string(x.valuation()) +
                             " below shift " + std::to_string(k));
    Series r(x.order() - k);
    for (int i = k; i <= x.order(); ++i) r.set_coeff(i - k, x.coeff(i));
    return r;
}

Series truncate(const Series& x, int M) {
    if (M > x.order()) throw TruncationError("truncate: cannot extend order");
    Series r(M);
    for (int k = 0; k <= M; ++k) r.set_coeff(k, x.coeff(k));
    return r;
}

Series div(const Series& x, const Series& y) {
    int vy = y.valuation();
    if (vy > y.order()) throw ValuationError("div: divisor is zero to its truncation order");
    if (x.valuation() < vy)
        throw ValuationError("div: valuation(y)=" + std::to_string(vy) + " exceeds valuation(x)=" +
                             std::to_string(x.valuation()));
    int N = std::min(x.order(), y.order()) - vy;
    Series q(N);
    const Poly& y0 = y.coeff(vy);
    for (int n = 0; n <= N; ++n) {
        Poly acc = (n + vy <= x.order()) ? x.coeff(n + vy) : Poly();
        for (int i = 0; i < n; ++i) {
            const Poly& qi = q.coeff(i);
            if (qi.is_zero()) continue;
            const Poly& yj = y.coeff(n - i + vy);
            if (yj.is_zero()) continue;
            acc -= qi * yj;
        }
        q.set_coeff(n, acc.divide_exact(y0));
    }
    return q;
}

Series inverse(const Series& y) { return div(Series::constant(1, y.order()), y); }

Series sqrt1(const Series& x) {
    if (!x.coeff(0).is_one())
        throw BranchError("sqrt1: constant coefficient must be 1, got " + x.coeff(0).to_string());
    int N = x.order();
    // Newton iteration s <- (s + x/s)/2, doubling the exact order each step.
    Series s = Series::constant(1, 0);
    int m = 0;
    while (m < N) {
        m = std::min(2 * m + 1, N);
        Series xt = truncate(x, m);
        Series st(m);
        for (int k = 0; k <= std::min(m, s.order()); ++k) st.set_coeff(k, s.coeff(k));
        s = mul_rat(add(st, div(xt, st)), Rat(1, 2));
    }
    return s;
}

namespace {
Series substitute_poly_impl(const Series& x, Sym s, const Poly& p) {
    int N = x.order();
    Series r(N);
    std::vector<Poly> powers{Poly(1)};
    for (int k = 0; k <= N; ++k) {
        const Poly& ck = x.coeff(k);
        if (ck.is_zero()) continue;
        auto parts = ck.split_by(s);
        Poly acc;
        for (std::size_t e = 0; e < parts.size(); ++e) {
            if (parts[e].is_zero()) continue;
            while (powers.size() <= e) powers.push_back(powers.back() * p);
            acc += parts[e] * powers[e];
        }
        r.set_coeff(k, std::move(acc));
    }
    return r;
}
}  // namespace

Series substitute(const Series& x, Sym s, const Poly& sub) {
    return substitute_poly_impl(x, s, sub);
}

Series substitute(const Series& x, Sym s, const Series& sub) {
    int vs = sub.valuation();
    if (vs == 0) {
        // A z-constant series acts as a Poly; anything else would need
        // infinitely many source coefficients.
        bool constant = true;
        for (int k = 1; k <= sub.order(); ++k)
            if (!sub.coeff(k).is_zero()) {
                constant = false;
                break;
            }
        if (!constant)
            throw TruncationError("substitute: valuation-0 non-constant substitution requested");
        return substitute_poly_impl(x, s, sub.coeff(0));
    }
    int N = std::min(x.order(), sub.order());
    Series r(N);
    std::vector<Series> powers{Series::constant(1, N)};
    for (int k = 0; k <= N; ++k) {
        const Poly& ck = x.coeff(k);
        if (ck.is_zero()) continue;
        auto parts = ck.split_by(s);
        for (std::size_t e = 0; e < parts.size(); ++e) {
            if (parts[e].is_zero()) continue;
            if (static_cast<int>(e) * vs > N - k) break;  // power vanishes to order
            while (powers.size() <= e) powers.push_back(mul(powers.back(), sub));
            const Series& pw = powers[e];
            for (int j = pw.valuation(); j <= N - k && j <= pw.order(); ++j) {
                if (pw.coeff(j).is_zero()) continue;
                r.set_coeff(k + j, r.coeff(k + j) + parts[e] * pw.coeff(j));
            }
        }
    }
    return r;
}

Series derivative(const Series& x, Sym s) {
    Series r(x.order());
    for (int k = 0; k <= x.order(); ++k)
        if (!x.coeff(k).is_zero()) r.set_coeff(k, x.coeff(k).derivative(s));
    return r;
}

Series pow(const Series& x, unsigned e) {
    Series r = Series::constant(1, x.order());
    Series base = x;
    while (e > 0) {
        if (e & 1u) r = mul(r, base);
        e >>= 1u;
        if (e > 0) base = mul(base, base);
    }
    return r;
}

bool equal_to_order(const Series& x, const Series& y, int M) {
    if (x.order() < M || y.order() < M) throw TruncationError("equal_to_order: order too small");
    for (int k = 0; k <= M; ++k)
        if (!(x.coeff(k) == y.coeff(k))) return false;
    return true;
}

bool operator==(const Series& x, const Series& y) {
    return x.order() == y.order() && equal_to_order(x, y, x.order());
}

double eval_double(const Series& x, double z, double a, double u, double v, double w) {
    double total = 0, zp = 1;
    for (int k = 0; k <= x.order(); ++k) {
        if (!x.coeff(k).is_zero()) total += x.coeff(k).eval_double(a, u, v, w) * zp;
        zp *= z;
    }
    return total;
}

}  // namespace pruwalk::algebra
