#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pruwalk/series.hpp"
#include "pruwalk/walks.hpp"

namespace pruwalk::kernel {

using algebra::Mono;
using algebra::Poly;
using algebra::Series;
using algebra::Sym;

// Value of a catalytic slot: coeff * z^zpow. Covers every specialization
// used by the pipeline (symbolic u/v, rationals, zv, zu, zw, v*Lambda is
// built internally).
struct SlotVal {
    int zpow = 0;
    Poly coeff = Poly(0);
    static SlotVal sym(Sym s) { return {0, Poly::symbol(s)}; }
    static SlotVal num(const Rat& r) { return {0, Poly(r)}; }
    static SlotVal zmono(int zp, const Poly& p) { return {zp, p}; }
    Series as_series(int order) const { return Series::monomial(zpow, coeff, order); }
};

// lambda(v) for an arbitrary v value; the root of L(lambda,v)=0 that is a
// power series in z (valuation 1).
Series lambda_series(int order, const Series& v_val);
Series lambda_series_symbolic(int order);  // v kept symbolic
Series capital_lambda(int order);          // Lambda = lambda(1), closed form

// Shared specialization state: surface weight a (symbol or rational), the
// v-channel value, and the cached building blocks. Internal orders carry a
// cushion so valuation losses in the assembly never eat into `order`.
class KernelContext {
  public:
    KernelContext(int order, Poly a, SlotVal v);

    int order() const { return N_; }
    int internal_order() const { return Nv_; }
    const Poly& a() const { return a_; }
    const Series& v_val() const { return v_; }
    const Series& lambda_sym() const { return lambda_sym_; }  // lambda(v), v symbolic
    const Series& lam() const { return lam_; }                // lambda(v-channel)
    const Series& Lam() const { return Lam_; }                // capital Lambda
    const Series& J() const { return J_; }                    // script J(a)

    // R(u_point, 0) by the iterated-kernel sum, exact to `order`.
    Series r_u0(const Series& u_point, int order) const;
    // H(q) and I(q) of the resummed solution, exact to `order`.
    Series H(const Series& q, int order) const;
    Series I(const Series& q, int order) const;

    const Series& t_zv() const;     // T(z, v-channel)
    const Series& r_vLam0() const;  // R(v*Lambda, 0)
    int vchannel_order() const;     // working order of the lazy v-channel

  private:
    int N_, Nv_;
    Poly a_;
    Series v_;
    Series lambda_sym_, lam_, Lam_, J_;
    mutable std::optional<Series> t_zv_, r_vLam0_;
};

// Named pieces of the functional equations, as numerator/denominator pairs
// (L, M, A, B, C are rational in u and v, so a plain Series value only
// exists at specializations where the division goes through; value() throws
// NonDivisibleError/ValuationError on an invalid one).
enum class Piece { L, M, A, B, C, H, I, J };
struct PieceValue {
    Series num, den;
    Series value() const { return algebra::div(num, den); }
};
PieceValue kernel_piece(const KernelContext& ctx, Piece which, const Series& u_val,
                        const Series& v_val);

// Closed-form solution of the two-sided model for a given u slot.
struct Solution {
    Series R_uv, T_uv, W_uv;  // R(u,v), T(u,v), W = R + T - T(0,v)
    Series T_0v, T_zv, R_u0;
};
Solution full_solution(const KernelContext& ctx, const SlotVal& u);

// Convenience: the whole pipeline at given slot values.
Solution solve(int order, const Poly& a, const SlotVal& u, const SlotVal& v);

// Coefficient-level residual check of a functional equation.
struct ResidualReport {
    std::string equation;
    int max_order = 0;
    int first_failing_order = -1;  // -1: identically zero through max_order
    Poly failing_coeff;
    bool pass() const { return first_failing_order < 0; }
};

// Residuals of the two lemma relations with symbolic u, v, a, using series
// produced by full_solution (or caller-supplied ones, e.g. fault-injected).
std::vector<ResidualReport> verify_two_sided(int order);
std::vector<ResidualReport> verify_two_sided_with(const KernelContext& ctx, const Series& R_uv,
                                                  const Series& T_uv, const Series& R_u0,
                                                  int order);

// Residuals of the three-sided relations, with R*, T* assembled from
// exhaustive enumeration up to `order` (order <= DFS guard).
std::vector<ResidualReport> verify_three_sided(int order);

// Structural identities (exact, to `order`): L(lambda(v),v) = 0,
// M(v Lambda, v) = 0, J|_{a=1} = 1 - z*Lambda, leading terms of H and I,
// the R(u,0) recurrence, and the v=0 reduction of the R equation.
struct IdentityReport {
    std::string name;
    bool pass;
};
std::vector<IdentityReport> structural_identities(int order);

// The unsimplified -A/B + CA/(BC) forms of H and I against the closed
// forms, both computed to `order`.
bool h_i_raw_forms_agree(int order);

}  // namespace pruwalk::kernel
