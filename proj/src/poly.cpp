#include "pruwalk/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pruwalk::algebra {

namespace {
constexpr std::uint64_t kFieldMask = 0xffffu;

bool fields_overflow(std::uint64_t x, std::uint64_t y) {
    // Per-field add with 16-bit fields; detect carry out of any field.
    for (int s = 0; s < 64; s += 16) {
        std::uint64_t sum = ((x >> s) & kFieldMask) + ((y >> s) & kFieldMask);
        if (sum > kFieldMask) return true;
    }
    return false;
}
}  // namespace

Mono Mono::times(const Mono& o) const {
    if (fields_overflow(key, o.key)) throw Error("Mono::times: exponent overflow");
    return Mono{key + o.key};
}

bool Mono::divisible_by(const Mono& o) const {
    for (int i = 0; i < kNumSyms; ++i) {
        Sym s = static_cast<Sym>(i);
        if (exp(s) < o.exp(s)) return false;
    }
    return true;
}

Mono Mono::divided_by(const Mono& o) const {
    if (!divisible_by(o)) throw NonDivisibleError("Mono::divided_by: not divisible");
    return Mono{key - o.key};
}

Mono Mono::gcd(const Mono& o) const {
    Mono g;
    for (int i = 0; i < kNumSyms; ++i) {
        Sym s = static_cast<Sym>(i);
        unsigned e = std::min(exp(s), o.exp(s));
        g.key |= static_cast<std::uint64_t>(e) << shift(s);
    }
    return g;
}

std::string Mono::to_string() const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < kNumSyms; ++i) {
        Sym s = static_cast<Sym>(i);
        unsigned e = exp(s);
        if (e == 0) continue;
        if (!first) os << "*";
        os << kSymNames[i];
        if (e > 1) os << "^" << e;
        first = false;
    }
    return os.str();
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    return terms_[0].second;
}

Rat Poly::coeff(const Mono& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m.key,
                               [](const Term& t, std::uint64_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == m.key) return it->second;
    return Rat(0);
}

int Poly::degree(Sym s) const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(Mono{k}.exp(s)));
    return d;
}

void Poly::normalize_sorted() {
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        std::uint64_t k = terms_[i].first;
        Rat sum = std::move(terms_[i].second);
        std::size_t j = i + 1;
        while (j < terms_.size() && terms_[j].first == k) {
            sum += terms_[j].second;
            ++j;
        }
        if (sum != 0) {
            terms_[out].first = k;
            terms_[out].second = std::move(sum);
            ++out;
        }
        i = j;
    }
    terms_.resize(out);
}

Poly PolyBuilder::take() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Poly::Term& x, const Poly::Term& y) { return x.first < y.first; });
    Poly p;
    p.terms_ = std::move(terms_);
    p.normalize_sorted();
    terms_.clear();
    return p;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            merged.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            merged.push_back(o.terms_[j++]);
        } else {
            Rat sum = terms_[i].second + o.terms_[j].second;
            if (sum != 0) merged.emplace_back(terms_[i].first, std::move(sum));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    *this += -o;
    return *this;
}

Poly operator+(const Poly& x, const Poly& y) {
    Poly r = x;
    r += y;
    return r;
}

Poly operator-(const Poly& x, const Poly& y) {
    Poly r = x;
    r -= y;
    return r;
}

Poly operator*(const Poly& x, const Poly& y) {
    if (x.terms_.empty() || y.terms_.empty()) return Poly();
    // Keep the outer loop on the smaller factor.
    const Poly& small = x.terms_.size() <= y.terms_.size() ? x : y;
    const Poly& big = x.terms_.size() <= y.terms_.size() ? y : x;
    if (small.terms_.size() == 1) {
        const auto& [k, c] = small.terms_[0];
        Poly r;
        r.terms_.reserve(big.terms_.size());
        for (const auto& [bk, bc] : big.terms_) {
            if (fields_overflow(bk, k)) throw Error("Poly::mul: exponent overflow");
            r.terms_.emplace_back(bk + k, bc * c);
        }
        return r;  // keys stay sorted under constant shift
    }
    PolyBuilder acc;
    for (const auto& [sk, sc] : small.terms_) {
        for (const auto& [bk, bc] : big.terms_) {
            if (fields_overflow(bk, sk)) throw Error("Poly::mul: exponent overflow");
            acc.add(bk + sk, sc * bc);
        }
    }
    return acc.take();
}

Poly Poly::times_rat(const Rat& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& [k, cc] : r.terms_) cc *= c;
    return r;
}

Poly Poly::times_mono(const Mono& m) const {
    Poly r = *this;
    for (auto& [k, cc] : r.terms_) {
        if (fields_overflow(k, m.key)) throw Error("Poly::times_mono: exponent overflow");
        k += m.key;
    }
    return r;
}

Poly Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) throw NonDivisibleError("Poly::divide_exact: division by zero polynomial");
    if (is_zero()) return Poly();
    if (d.is_monomial()) {
        const Mono dm{d.terms_[0].first};
        const Rat& dc = d.terms_[0].second;
        Poly q;
        q.terms_.reserve(terms_.size());
        for (const auto& [k, c] : terms_) {
            Mono m{k};
            if (!m.divisible_by(dm))
                throw NonDivisibleError("Poly::divide_exact: monomial " + m.to_string() +
                                        " not divisible by " + dm.to_string());
            q.terms_.emplace_back(m.key - dm.key, c / dc);
        }
        return q;
    }
    // General exact division along the monomial order: peel leading terms.
    Poly rem = *this;
    std::vector<Term> qterms;
    const Mono dlead{d.terms_.back().first};
    const Rat& dlc = d.terms_.back().second;
    while (!rem.terms_.empty()) {
        const Mono rlead{rem.terms_.back().first};
        if (!rlead.divisible_by(dlead))
            throw NonDivisibleError("Poly::divide_exact: leading term " + rlead.to_string() +
                                    " not divisible by " + dlead.to_string());
        Mono qm = rlead.divided_by(dlead);
        Rat qc = rem.terms_.back().second / dlc;
        qterms.emplace_back(qm.key, qc);
        rem -= d.times_mono(qm).times_rat(qc);
    }
    std::sort(qterms.begin(), qterms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    Poly q;
    q.terms_ = std::move(qterms);
    return q;
}

Mono Poly::monomial_content() const {
    if (terms_.empty()) return Mono::one();
    Mono g{terms_[0].first};
    for (const auto& [k, c] : terms_) {
        g = g.gcd(Mono{k});
        if (g.is_one()) break;
    }
    return g;
}

Poly Poly::derivative(Sym s) const {
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
        Mono m{k};
        unsigned e = m.exp(s);
        if (e == 0) continue;
        Mono md{k - Mono::sym(s).key};
        r.terms_.emplace_back(md.key, c * static_cast<long>(e));
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    r.normalize_sorted();
    return r;
}

std::vector<Poly> Poly::split_by(Sym s) const {
    int d = degree(s);
    std::vector<Poly> out(static_cast<std::size_t>(d + 1));
    for (const auto& [k, c] : terms_) {
        Mono m{k};
        unsigned e = m.exp(s);
        Mono rest{k - Mono::sym(s, e).key};
        out[e].terms_.emplace_back(rest.key, c);
    }
    for (auto& p : out) {
        std::sort(p.terms_.begin(), p.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
    }
    return out;
}

Poly Poly::substitute(Sym s, const Poly& p) const {
    if (degree(s) <= 0) return *this;
    auto parts = split_by(s);
    Poly result = parts[0];
    Poly pw(1);
    for (std::size_t e = 1; e < parts.size(); ++e) {
        pw = pw * p;
        if (!parts[e].is_zero()) result += parts[e] * pw;
    }
    return result;
}

Rat Poly::eval(const Rat& a, const Rat& u, const Rat& v, const Rat& w) const {
    Rat total(0);
    const Rat* vals[kNumSyms] = {&a, &u, &v, &w};
    for (const auto& [k, c] : terms_) {
        Mono m{k};
        Rat t = c;
        for (int i = 0; i < kNumSyms; ++i) {
            unsigned e = m.exp(static_cast<Sym>(i));
            for (unsigned j = 0; j < e; ++j) t *= *vals[i];
        }
        total += t;
    }
    return total;
}

double Poly::eval_double(double a, double u, double v, double w) const {
    double total = 0;
    const double vals[kNumSyms] = {a, u, v, w};
    for (const auto& [k, c] : terms_) {
        Mono m{k};
        double t = rat_to_double(c);
        for (int i = 0; i < kNumSyms; ++i) {
            unsigned e = m.exp(static_cast<Sym>(i));
            for (unsigned j = 0; j < e; ++j) t *= vals[i];
        }
        total += t;
    }
    return total;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print highest-order terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& c = it->second;
        Mono m{it->first};
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat ac = abs(c);
        if (m.is_one()) os << ac.get_str();
        else if (ac == 1) os << m.to_string();
        else os << ac.get_str() << "*" << m.to_string();
        first = false;
    }
    return os.str();
}

}  // namespace pruwalk::algebra
