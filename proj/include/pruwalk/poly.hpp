#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pruwalk/errors.hpp"
#include "pruwalk/rational.hpp"

namespace pruwalk::algebra {

// Symbols of the coefficient ring. The series variable z is handled by
// Series; a is the surface fugacity, u/v/w are the catalytic variables.
enum class Sym : int { a = 0, u = 1, v = 2, w = 3 };
inline constexpr int kNumSyms = 4;
inline constexpr const char* kSymNames[kNumSyms] = {"a", "u", "v", "w"};

// Exponent vector packed into 64 bits, 16 bits per symbol, a in the high
// field. Packed comparison is lexicographic in (a,u,v,w) and packed
// addition is exponent addition, so the key order is a monomial order.
struct Mono {
    std::uint64_t key = 0;

    static Mono one() { return Mono{0}; }
    static Mono sym(Sym s, unsigned e = 1) {
        Mono m;
        m.key = static_cast<std::uint64_t>(e) << shift(s);
        return m;
    }
    static int shift(Sym s) { return 16 * (kNumSyms - 1 - static_cast<int>(s)); }

    unsigned exp(Sym s) const { return static_cast<unsigned>((key >> shift(s)) & 0xffffu); }

    Mono times(const Mono& o) const;
    bool divisible_by(const Mono& o) const;
    Mono divided_by(const Mono& o) const;
    Mono gcd(const Mono& o) const;
    bool is_one() const { return key == 0; }
    std::string to_string() const;

    friend bool operator==(const Mono& x, const Mono& y) { return x.key == y.key; }
    friend bool operator<(const Mono& x, const Mono& y) { return x.key < y.key; }
};

// Exact multivariate polynomial over Rat in the symbols above.
// Invariants: terms sorted by key ascending, no zero coefficients stored,
// exponents are non-negative (enforced by construction).
class Poly {
  public:
    using Term = std::pair<std::uint64_t, Rat>;

    Poly() = default;
    Poly(long c) { if (c != 0) terms_.emplace_back(0, Rat(c)); }
    explicit Poly(const Rat& c) {
        if (c != 0) {
            Rat cc = c;
            cc.canonicalize();
            terms_.emplace_back(0, std::move(cc));
        }
    }
    static Poly symbol(Sym s, unsigned e = 1) {
        Poly p;
        if (e == 0) return Poly(1);
        p.terms_.emplace_back(Mono::sym(s, e).key, Rat(1));
        return p;
    }
    static Poly term(const Mono& m, const Rat& c) {
        Poly p;
        if (c != 0) {
            Rat cc = c;
            cc.canonicalize();
            p.terms_.emplace_back(m.key, std::move(cc));
        }
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }
    // True when the polynomial has no symbols (a plain rational, possibly 0).
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    Rat constant_value() const;  // requires is_constant()
    bool is_monomial() const { return terms_.size() == 1; }

    std::size_t num_terms() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // Coefficient of a given monomial (0 if absent).
    Rat coeff(const Mono& m) const;
    int degree(Sym s) const;  // -1 for the zero polynomial

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(const Poly& x, const Poly& y);
    friend Poly operator-(const Poly& x, const Poly& y);
    friend Poly operator*(const Poly& x, const Poly& y);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly times_rat(const Rat& c) const;
    Poly times_mono(const Mono& m) const;

    friend bool operator==(const Poly& x, const Poly& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

    // Exact division; throws NonDivisibleError if a remainder is left.
    Poly divide_exact(const Poly& d) const;

    // gcd of all monomials (content in the monomial sense); one() for 0.
    Mono monomial_content() const;

    Poly derivative(Sym s) const;
    Poly substitute(Sym s, const Poly& p) const;
    // Split by the exponent of s: result[e] = coefficient of s^e (a poly
    // without s). Returned vector has length degree(s)+1 (empty for 0).
    std::vector<Poly> split_by(Sym s) const;

    Rat eval(const Rat& a, const Rat& u, const Rat& v, const Rat& w) const;
    double eval_double(double a, double u, double v, double w) const;

    std::string to_string() const;

  private:
    std::vector<Term> terms_;
    void normalize_sorted();  // combine equal keys, drop zeros (terms_ pre-sorted)
    friend class PolyBuilder;
};

// Accumulates terms then produces a normalized Poly; used by hot loops.
class PolyBuilder {
  public:
    void add(std::uint64_t key, const Rat& c) { terms_.emplace_back(key, c); }
    Poly take();

  private:
    std::vector<Poly::Term> terms_;
};

}  // namespace pruwalk::algebra
