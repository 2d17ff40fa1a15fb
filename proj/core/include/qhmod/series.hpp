#pragma once

#include <complex>
#include <vector>

#include "qhmod/errors.hpp"

namespace qhmod {

/// Bivariate power series in (t, x) truncated at total degree `order`.
/// Coefficients are double-precision complex scalars.
class SeriesBivariate {
public:
    using scalar = std::complex<double>;

    explicit SeriesBivariate(int order = 12);
    static SeriesBivariate constant(scalar c, int order);
    static SeriesBivariate variable_t(int order);
    static SeriesBivariate variable_x(int order);

    int order() const { return order_; }
    scalar coeff(int i, int j) const; // i: power of t, j: power of x
    void set_coeff(int i, int j, scalar v);

    bool is_unit() const { return coeff(0, 0) != scalar(0); }

    SeriesBivariate truncated(int new_order) const;

    friend SeriesBivariate operator+(const SeriesBivariate& a, const SeriesBivariate& b);
    friend SeriesBivariate operator-(const SeriesBivariate& a, const SeriesBivariate& b);
    friend SeriesBivariate operator*(const SeriesBivariate& a, const SeriesBivariate& b);
    friend SeriesBivariate operator*(scalar s, const SeriesBivariate& a);

    SeriesBivariate pow_int(long n) const; // n >= 0

    /// Largest coefficient magnitude; used for residual checks.
    double max_abs() const;
    static double max_abs_diff(const SeriesBivariate& a, const SeriesBivariate& b);

private:
    int order_;
    std::vector<scalar> c_; // triangular layout by total degree
    friend SeriesBivariate series_unit_power(const SeriesBivariate&, std::complex<double>);
};

/// U^c := exp(c log U) truncated at U's order; the branch is fixed by the
/// principal logarithm of the constant term. Throws NotAUnitError when U(0,0) = 0.
SeriesBivariate series_unit_power(const SeriesBivariate& U, std::complex<double> c);

} // namespace qhmod
