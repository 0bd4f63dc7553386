#pragma once

#include <string>
#include <vector>

#include "pruwalk/poly.hpp"

namespace pruwalk::algebra {

// Truncated formal power series in z with Poly coefficients.
// coeffs[k] is exactly the z^k coefficient of the represented object for all
// k <= order(); operations never claim coefficients beyond their exact range.
class Series {
  public:
    explicit Series(int order) : order_(order), c_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw Error("Series: negative order");
    }
    static Series zero(int order) { return Series(order); }
    static Series constant(const Poly& p, int order) {
        Series s(order);
        s.c_[0] = p;
        return s;
    }
    static Series constant(long c, int order) { return constant(Poly(c), order); }
    static Series z(int order) { return monomial(1, Poly(1), order); }
    static Series monomial(int zpow, const Poly& coeff, int order) {
        Series s(order);
        if (zpow <= order) s.c_[static_cast<std::size_t>(zpow)] = coeff;
        return s;
    }

    int order() const { return order_; }
    // Smallest index with nonzero coefficient; order()+1 if zero to order N.
    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!c_[static_cast<std::size_t>(k)].is_zero()) return k;
        return order_ + 1;
    }
    bool is_zero() const { return valuation() > order_; }

    const Poly& coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    void set_coeff(int k, Poly p) { c_.at(static_cast<std::size_t>(k)) = std::move(p); }

    std::string to_string(int max_terms = 8) const;

  private:
    int order_;
    std::vector<Poly> c_;
};

// -- arithmetic ---------------------------------------------------------
// add/sub/mul truncate at min(N_x, N_y).
Series add(const Series& x, const Series& y);
Series sub(const Series& x, const Series& y);
Series mul(const Series& x, const Series& y);
Series neg(const Series& x);
inline Series operator+(const Series& x, const Series& y) { return add(x, y); }
inline Series operator-(const Series& x, const Series& y) { return sub(x, y); }
inline Series operator*(const Series& x, const Series& y) { return mul(x, y); }

Series mul_poly(const Series& x, const Poly& p);
Series mul_rat(const Series& x, const Rat& c);

// z^k * x, exact to order x.order()+k.
Series shift_up(const Series& x, int k);
// x / z^k; throws ValuationError unless the first k coefficients vanish.
Series shift_down(const Series& x, int k);
// Restrict to order M <= x.order(); raising the order is never silent.
Series truncate(const Series& x, int M);

// Quotient q with q*y = x, exact to order min(N_x,N_y) - valuation(y).
// Throws ValuationError if valuation(y) > valuation(x) (or y == 0), and
// NonDivisibleError if a coefficient-level polynomial division leaves a
// remainder (an algebra bug or invalid specialization, never user input).
Series div(const Series& x, const Series& y);
Series inverse(const Series& y);  // div(1, y)

// Principal square root; requires constant coefficient exactly 1.
Series sqrt1(const Series& x);

// Substitution sym := s. For a Series s the valuation must be >= 1 (result
// exact to min of orders); a valuation-0 non-constant series throws
// TruncationError. The Poly overload substitutes a z-constant value.
Series substitute(const Series& x, Sym s, const Series& sub);
Series substitute(const Series& x, Sym s, const Poly& sub);

Series derivative(const Series& x, Sym s);
Series pow(const Series& x, unsigned e);

bool equal_to_order(const Series& x, const Series& y, int M);
bool operator==(const Series& x, const Series& y);

double eval_double(const Series& x, double z, double a = 0, double u = 0, double v = 0,
                   double w = 0);

}  // namespace pruwalk::algebra
