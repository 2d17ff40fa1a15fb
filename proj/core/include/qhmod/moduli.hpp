#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qhmod/bipoly.hpp"
#include "qhmod/quasihom.hpp"

namespace qhmod {

/// z -> (a z + b)/(c z + d), stored with ad - bc = 1.
struct Mobius {
    std::complex<double> a{1}, b{0}, c{0}, d{1};

    static Mobius identity() { return {}; }
    Mobius normalized() const;
    Mobius inverse() const { return Mobius{d, -b, -c, a}; }
    SpherePoint apply(const SpherePoint& z) const;
    friend Mobius operator*(const Mobius& f, const Mobius& g); // composition f after g
};

/// z -> a z + b with a != 0.
struct AffineMap {
    std::complex<double> a{1}, b{0};
    AffineMap inverse() const { return {1.0 / a, -b / a}; }
    std::complex<double> apply(std::complex<double> z) const { return a * z + b; }
};

/// z -> a z with a != 0.
struct ScalingMap {
    std::complex<double> a{1};
    ScalingMap inverse() const { return {1.0 / a}; }
    std::complex<double> apply(std::complex<double> z) const { return a * z; }
};

using GroupElement = std::variant<Mobius, AffineMap, ScalingMap>;

SpherePoint group_apply(const GroupElement& g, const SpherePoint& z);
CurveType group_apply(const GroupElement& g, const CurveType& curve);

/// The unique Mobius map sending z_k to w_k for two triples of pairwise
/// distinct sphere points; infinity is handled exactly via limit formulas.
Mobius mobius_from_triples(const std::array<SpherePoint, 3>& z,
                           const std::array<SpherePoint, 3>& w);

/// Plane coordinate change T certifying analytic equivalence, together with
/// the scalar alpha such that T^* f_target = alpha * f_source, and the
/// induced matching of root indices.
struct Witness {
    GroupElement map;                 // the sphere-level group element
    std::complex<double> alpha{1};
    std::vector<int> permutation;     // source index -> target index
    std::int64_t stratum_p = 1;       // p of the stratum (scaling root degree)
    std::int64_t stratum_q = 1;       // q of the stratum (affine x^q term)
    std::complex<double> scaling_root{1}; // principal p-th root of the scaling factor

    /// T^* f: substitute the plane map into f and expand.
    NumPoly pullback(const NumPoly& f) const;
    /// Human-readable form of T.
    std::string plane_map_text() const;
};

struct EquivalenceVerdict {
    bool equivalent = false;
    std::optional<Witness> witness;
    std::string certificate; // for negative verdicts: the separating invariant
};

/// Decide analytic equivalence of two classified curves by finite orbit search
/// under the stratum group. Throws ToleranceAmbiguityError when the best
/// candidate is neither a clean match nor a clean mismatch at this tolerance.
EquivalenceVerdict decide_equivalence(const CurveType& A, const CurveType& B, double tol = 1e-8);

/// Deterministic orbit invariant: stratum, flags, and the lexicographically
/// minimal canonical point tuple over all normalizations. Equal fingerprints
/// coincide with decide_equivalence within the tested tolerance regime.
std::string canonical_fingerprint(const CurveType& A);

struct WitnessCheck {
    bool ok = false;
    double residual = 0.0; // max coefficient residual, relative to f_source scale
};

/// Substitute T into f_target and compare with alpha * f_source.
WitnessCheck verify_witness(const Witness& w, const BiPoly& f_source, const BiPoly& f_target,
                            double tol = 1e-8);
WitnessCheck verify_witness(const Witness& w, const NumPoly& f_source, const NumPoly& f_target,
                            double tol = 1e-8);

/// Recompute alpha from the polynomials by coefficient comparison.
Witness fit_alpha(Witness w, const BiPoly& f_source, const BiPoly& f_target);
Witness fit_alpha(Witness w, const NumPoly& f_source, const NumPoly& f_target);

/// The canonical defining polynomial of a stratum configuration (mu = 1).
NumPoly curve_poly(const CurveType& curve);

} // namespace qhmod
