#include "qhmod/foliation.hpp"

#include "qhmod/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qhmod {

OneForm OneForm::reduced_content() const {
    if (a.is_zero() && b.is_zero()) return *this;
    std::int64_t cx = a.is_zero() ? b.ord_x() : (b.is_zero() ? a.ord_x() : std::min(a.ord_x(), b.ord_x()));
    std::int64_t cy = a.is_zero() ? b.ord_y() : (b.is_zero() ? a.ord_y() : std::min(a.ord_y(), b.ord_y()));
    OneForm out;
    out.a = a.is_zero() ? a : a.shifted(-cx, -cy);
    out.b = b.is_zero() ? b : b.shifted(-cx, -cy);
    return out;
}

OneForm companion_form(std::int64_t p, std::int64_t q) {
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw NotCoprimeError{};
    OneForm w;
    w.a = BiPoly::monomial({0, 1}, ExactComplex(-q)); // -q y dx
    w.b = BiPoly::monomial({1, 0}, ExactComplex(p));  //  p x dy
    return w;
}

namespace {

// Restriction to y = 0 as a univariate polynomial in x.
UniPoly restrict_y0(const BiPoly& f) {
    std::int64_t deg = 0;
    for (auto& [e, c] : f.terms())
        if (e.j == 0) deg = std::max(deg, e.i);
    std::vector<ExactComplex> coeffs(static_cast<std::size_t>(deg) + 1, ExactComplex(0));
    bool any = false;
    for (auto& [e, c] : f.terms())
        if (e.j == 0) {
            coeffs[static_cast<std::size_t>(e.i)] = c;
            any = true;
        }
    if (!any) return {};
    return UniPoly(std::move(coeffs));
}

} // namespace

ExactComplex cs_index(const OneForm& w, CsConvention conv) {
    if (!restrict_y0(w.a).is_zero()) throw NotInvariantError{};
    UniPoly b0 = restrict_y0(w.b);
    if (b0.is_zero()) throw NoIsolatedContactError{};
    UniPoly ay0 = restrict_y0(w.a.d_dy());
    ExactComplex res = laurent_residue(ay0, b0);
    return conv == CsConvention::Negated ? ExactComplex(0) - res : res;
}

namespace {

Rational ratio(std::int64_t num, std::int64_t den) {
    return Rational(static_cast<long>(num)) / Rational(static_cast<long>(den));
}

} // namespace

IndexReport index_sum_check(const DualGraph& g, FoliationModel model, CsConvention conv) {
    IndexReport report;
    report.model = model;
    int sign = (conv == CsConvention::Negated) ? -1 : 1;

    auto order_of = [&](const GraphComponent& c) -> std::int64_t {
        return model == FoliationModel::Fibration ? c.e_fib : g.curve_order(c);
    };

    for (auto& c : g.components) {
        ComponentIndexReport cr;
        cr.id = c.id;
        cr.expected = c.self_int;
        std::int64_t own = order_of(c);
        if (own == 0) {
            // The foliation is transverse to this line; no index sum applies.
            cr.skipped_dicritical = true;
            cr.pass = true;
            report.components.push_back(std::move(cr));
            continue;
        }
        Rational sum(0);
        for (int nb : g.neighbors(c.id)) {
            std::int64_t other = order_of(g.by_id(nb));
            if (other == 0) continue; // regular corner: the neighbor is dicritical
            IndexContribution ic;
            ic.kind = IndexContribution::Kind::Corner;
            ic.other_id = nb;
            ic.model = {static_cast<double>(other), static_cast<double>(own)};
            ic.value = sign * ratio(other, own);
            sum += ic.value;
            cr.points.push_back(std::move(ic));
        }
        if (model == FoliationModel::Hamiltonian) {
            for (auto& a : c.attachments) {
                IndexContribution ic;
                ic.kind = IndexContribution::Kind::Branch;
                ic.pos = a.infinite ? std::complex<double>(0, 0) : a.pos;
                ic.model = {static_cast<double>(a.mult), static_cast<double>(own)};
                ic.value = sign * ratio(a.mult, own);
                sum += ic.value;
                cr.points.push_back(std::move(ic));
            }
        } else {
            // The special fibers x = 0 (pole of order q) and y = 0 (zero of order p).
            if (c.id == g.x_axis_comp) {
                IndexContribution ic;
                ic.kind = IndexContribution::Kind::AxisX;
                ic.model = {static_cast<double>(-g.q), static_cast<double>(own)};
                ic.value = sign * ratio(-g.q, own);
                sum += ic.value;
                cr.points.push_back(std::move(ic));
            }
            if (c.id == g.y_axis_comp) {
                IndexContribution ic;
                ic.kind = IndexContribution::Kind::AxisY;
                ic.model = {static_cast<double>(g.p), static_cast<double>(own)};
                ic.value = sign * ratio(g.p, own);
                sum += ic.value;
                cr.points.push_back(std::move(ic));
            }
        }
        cr.sum = sum;
        cr.pass = (sum == Rational(static_cast<long>(c.self_int)));
        if (!cr.pass) report.all_pass = false;
        report.components.push_back(std::move(cr));
    }
    return report;
}

std::string index_report_json(const IndexReport& r) {
    std::string out = "{\"model\":\"";
    out += (r.model == FoliationModel::Hamiltonian) ? "hamiltonian" : "fibration";
    out += "\",\"all_pass\":";
    out += r.all_pass ? "true" : "false";
    out += ",\"components\":[";
    bool first = true;
    for (auto& c : r.components) {
        if (!first) out += ",";
        first = false;
        out += "{\"id\":" + std::to_string(c.id);
        out += ",\"skipped_dicritical\":";
        out += c.skipped_dicritical ? "true" : "false";
        out += ",\"expected\":" + std::to_string(c.expected);
        out += ",\"sum\":\"" + rational_str(c.sum) + "\"";
        out += ",\"pass\":";
        out += c.pass ? "true" : "false";
        out += ",\"points\":[";
        bool pfirst = true;
        for (auto& p : c.points) {
            if (!pfirst) out += ",";
            pfirst = false;
            out += "{\"kind\":\"";
            switch (p.kind) {
                case IndexContribution::Kind::Corner: out += "corner"; break;
                case IndexContribution::Kind::Branch: out += "branch"; break;
                case IndexContribution::Kind::AxisX: out += "axis_x"; break;
                case IndexContribution::Kind::AxisY: out += "axis_y"; break;
            }
            out += "\"";
            if (p.kind == IndexContribution::Kind::Corner)
                out += ",\"other\":" + std::to_string(p.other_id);
            out += ",\"value\":\"" + rational_str(p.value) + "\"}";
        }
        out += "]}";
    }
    out += "]}";
    return out;
}

bool nonresonance_check(std::complex<double> nu, std::complex<double> mu, std::int64_t r,
                        std::int64_t s, double tol) {
    std::complex<double> det = nu * static_cast<double>(s) - mu * static_cast<double>(r);
    return std::abs(det) > tol;
}

bool nonresonance_check(const FoliationLocalModel& m, std::int64_t r, std::int64_t s, double tol) {
    return nonresonance_check(m.nu, m.mu, r, s, tol);
}

std::int64_t torus_isotropy_order(std::int64_t nu, std::int64_t mu, std::int64_t r,
                                  std::int64_t s) {
    std::int64_t det = nu * s - mu * r;
    if (det == 0) throw ResonantDataError{};
    return det < 0 ? -det : det;
}

NormalizedPair simult_normalize(const SeriesBivariate& U, std::complex<double> nu,
                                std::complex<double> mu, std::int64_t r, std::int64_t s,
                                int order) {
    if (!nonresonance_check(nu, mu, r, s)) throw ResonanceError{};
    SeriesBivariate u = U.truncated(order);
    if (!u.is_unit()) throw NotAUnitError{};
    std::complex<double> det = nu * static_cast<double>(s) - mu * static_cast<double>(r);

    NormalizedPair out{series_unit_power(u, static_cast<double>(s) / det),
                       series_unit_power(u, -static_cast<double>(r) / det), 0.0, 0.0};

    // a^nu b^mu = t^nu x^mu U and a^r b^s = t^r x^s, with the prefactors dropped.
    SeriesBivariate lhs1 = series_unit_power(out.a_unit, nu) * series_unit_power(out.b_unit, mu);
    out.residual1 = SeriesBivariate::max_abs_diff(lhs1, u);
    SeriesBivariate lhs2 = out.a_unit.pow_int(r) * out.b_unit.pow_int(s);
    out.residual2 = SeriesBivariate::max_abs_diff(lhs2, SeriesBivariate::constant(1.0, order));
    return out;
}

} // namespace qhmod
