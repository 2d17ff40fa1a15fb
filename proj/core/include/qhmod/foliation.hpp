#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qhmod/bipoly.hpp"
#include "qhmod/resolution.hpp"
#include "qhmod/series.hpp"

namespace qhmod {

/// omega = a dx + b dy, not both zero.
struct OneForm {
    BiPoly a;
    BiPoly b;

    /// Strip the common monomial factor x^i y^j of both coefficients.
    OneForm reduced_content() const;
};

/// The 1-form of the companion fibration y^p / x^q = const:  p x dy - q y dx.
OneForm companion_form(std::int64_t p, std::int64_t q);

/// Sign convention for the Camacho-Sad index. The residue formula applied
/// verbatim to the monomial models sums to +k along a chain component whose
/// self-intersection is -k; the negated convention (default) restores the
/// index theorem's statement, fixed by the one-blowup oracle.
enum class CsConvention { Negated, Paper };

/// Camacho-Sad index of (omega = 0) along the axis y = 0 at x = 0, exact.
/// Preconditions: a(x,0) = 0 identically (invariance) and b(x,0) != 0 as a
/// polynomial; otherwise NotInvariantError / NoIsolatedContactError.
ExactComplex cs_index(const OneForm& w, CsConvention conv = CsConvention::Negated);

enum class FoliationModel { Hamiltonian, Fibration };

/// Local model with multivalued first integral t^nu x^mu, where x = 0 is the
/// divisor component and t runs along it. (nu, mu) != (0, 0).
struct FoliationLocalModel {
    std::complex<double> nu{};
    std::complex<double> mu{};
};

struct IndexContribution {
    enum class Kind { Corner, Branch, AxisX, AxisY } kind = Kind::Corner;
    int other_id = 0;               // corner: the neighboring component id
    std::complex<double> pos{};     // branch: attachment position
    FoliationLocalModel model;      // monomial model the index is read from
    Rational value{0};              // exact CS value at this singular point
};

struct ComponentIndexReport {
    int id = 1;
    bool skipped_dicritical = false;
    std::vector<IndexContribution> points;
    Rational sum{0};
    std::int64_t expected = 0; // the self-intersection number
    bool pass = false;
};

struct IndexReport {
    FoliationModel model = FoliationModel::Hamiltonian;
    std::vector<ComponentIndexReport> components;
    bool all_pass = true;
};

/// Per-component Camacho-Sad sums on a simulated resolution, from the exact
/// monomial local models at corners and attachment points. Dicritical
/// components (fibration order zero along the divisor) are skipped and flagged.
IndexReport index_sum_check(const DualGraph& g, FoliationModel model,
                            CsConvention conv = CsConvention::Negated);

std::string index_report_json(const IndexReport& r);

/// True iff nu*s - mu*r is nonzero beyond `tol`.
bool nonresonance_check(std::complex<double> nu, std::complex<double> mu,
                        std::int64_t r, std::int64_t s, double tol = 1e-12);
bool nonresonance_check(const FoliationLocalModel& m, std::int64_t r, std::int64_t s,
                        double tol = 1e-12);

/// Number of pairs (alpha, beta) with alpha^nu beta^mu = 1 and
/// alpha^r beta^s = 1: the index |nu*s - mu*r| of the exponent lattice.
/// Throws ResonantDataError when the determinant vanishes.
std::int64_t torus_isotropy_order(std::int64_t nu, std::int64_t mu,
                                  std::int64_t r, std::int64_t s);

/// Solution of the simultaneous normalization system
///   a^nu b^mu = t^nu x^mu U,   a^r b^s = t^r x^s,
/// with a = t * a_unit and b = x * b_unit; the prefactors t and x stay
/// symbolic so only unit series are manipulated. The two defining-identity
/// residuals are evaluated to the truncation order and returned.
struct NormalizedPair {
    SeriesBivariate a_unit;
    SeriesBivariate b_unit;
    double residual1 = 0.0;
    double residual2 = 0.0;
};

NormalizedPair simult_normalize(const SeriesBivariate& U, std::complex<double> nu,
                                std::complex<double> mu, std::int64_t r, std::int64_t s,
                                int order);

} // namespace qhmod
