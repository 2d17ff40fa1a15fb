#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qhmod/bipoly.hpp"

namespace qhmod {

/// Primitive positive weights (p, q) with p <= q and the weighted degree d,
/// so that every support point satisfies p*i + q*j = d. `swapped` records
/// that x and y were exchanged to enforce p <= q. `degenerate` marks a
/// single-point support, for which the weights are not unique; (1, 1) is
/// stored as a convention in that case.
struct Weights {
    std::int64_t p = 1;
    std::int64_t q = 1;
    std::int64_t d = 0;
    bool swapped = false;
    bool degenerate = false;
};

/// The unique decomposition mu * x^m y^n * prod_l (y^p - lambda_l x^q).
/// Lambdas are numeric; repeated entries encode non-reduced curves.
/// All fields refer to the weight-normalized frame (after the optional swap).
struct QHNormalForm {
    ExactComplex mu{1};
    std::int64_t m = 0;
    std::int64_t n = 0;
    Weights weights;
    std::vector<std::complex<double>> lambdas;

    std::int64_t branch_count() const { return static_cast<std::int64_t>(lambdas.size()); }
};

/// A point of the Riemann sphere: finite value or infinity, never a large float.
struct SpherePoint {
    std::complex<double> z{};
    bool infinite = false;

    static SpherePoint inf() { return {{}, true}; }
    static SpherePoint finite(std::complex<double> v) { return {v, false}; }
    friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.z == b.z;
    }
};

enum class StratumKind {
    Homogeneous, // type (1,1,n): configurations on P^1 up to PSL(2,C)
    OneQ,        // type (1,q,n), q >= 2: configurations on C up to Aff(C)
    PQ,          // type (p,q,n), 2 <= p < q: configurations on C* up to GL(1,C)
};

struct CurveType {
    StratumKind kind = StratumKind::Homogeneous;
    std::int64_t p = 1;
    std::int64_t q = 1;
    int flag_m = 0; // x^m factor (OneQ and PQ strata)
    int flag_k = 0; // y^k factor (PQ stratum only)
    std::vector<SpherePoint> lambdas;

    std::int64_t n_points() const { return static_cast<std::int64_t>(lambdas.size()); }
};

/// Unique primitive weights carried by the support, or a thrown
/// NotQuasiHomogeneousError; single-point supports come back flagged degenerate.
Weights detect_weights(const BiPoly& f);

struct MonomialSplit {
    std::int64_t m = 0; // ord_x
    std::int64_t n = 0; // ord_y
    BiPoly commode;
};

/// f = x^m y^n * commode with ord_x commode = ord_y commode = 0.
MonomialSplit strip_monomial(const BiPoly& f);

struct CommodeFactors {
    ExactComplex mu{1};
    std::vector<std::complex<double>> lambdas;
};

/// Factor a commode quasi-homogeneous polynomial as mu * prod (y^p - lambda_l x^q).
/// The lambdas are the roots of the associated one-variable polynomial, found by
/// simultaneous iteration; exact squarefree splitting supplies multiplicities.
CommodeFactors commode_factor(const BiPoly& commode, const Weights& w);

/// Full normal form: detect weights, strip the monomial part, factor the rest,
/// and verify by re-expansion (relative tolerance `tol`).
QHNormalForm decompose(const BiPoly& f, double tol = 1e-8);

/// Stratify a reduced curve per the (1,1) / (1,q) / (p,q) case split.
/// Throws NotReducedError when m > 1, n > 1, or two lambdas collide within
/// the distinctness tolerance.
CurveType classify_curve(const QHNormalForm& nf, double distinct_tol = 1e-9);

/// Numeric re-expansion of the normal form (in the normalized frame).
NumPoly expand_normal_form(const QHNormalForm& nf);

/// Aberth-Ehrlich simultaneous root finding on ascending coefficients.
/// Iteration cap 200, relative convergence 1e-13; throws RootFindingDivergenceError.
std::vector<std::complex<double>> aberth_roots(std::span<const std::complex<double>> coeffs);

/// Companion-matrix eigenvalue fallback for the same problem.
std::vector<std::complex<double>> companion_roots(std::span<const std::complex<double>> coeffs);

/// Swap the roles of x and y (transpose the support).
BiPoly swap_variables(const BiPoly& f);

} // namespace qhmod
