#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhmod/quasihom.hpp"

namespace qhmod {

struct EuclidStep {
    std::int64_t q = 0, p = 0, s = 0, r = 0; // q = s*p + r
};

/// Division chain q_1 = q, p_1 = p, q_{j+1} = p_j, p_{j+1} = r_j, last r = 0.
/// The total blowup count of the standard resolution is the sum of the s_j.
struct EuclidChain {
    std::vector<EuclidStep> steps;
    std::int64_t blowup_count() const {
        std::int64_t n = 0;
        for (auto& st : steps) n += st.s;
        return n;
    }
};

/// Requires gcd(p,q) = 1 and p <= q; throws NotCoprimeError.
EuclidChain euclid_chain(std::int64_t p, std::int64_t q);

/// Closed-form self-intersection numbers of the resolution chain, indexed by
/// birth order of the exceptional components. Let N_i = s_1 + ... + s_i and m
/// the chain length. Then component N_i carries -(s_{i+1}+2) for i <= m-2,
/// component N_{m-1} carries -(s_m+1), the last component carries -1, and all
/// remaining components carry -2.
std::vector<std::int64_t> chain_weights_formula(const EuclidChain& chain);

struct Attachment {
    std::complex<double> pos{}; // position in the component's chart coordinate
    bool infinite = false;
    std::int64_t mult = 1;
};

struct GraphComponent {
    int id = 1;        // chain numbering: 1 = first-born end, then along the chain
    int birth = 1;     // 1-based birth order of the blowup that created it
    std::int64_t self_int = -1;
    std::int64_t vx = 0;    // ord of pi^* x along this component
    std::int64_t vy = 0;    // ord of pi^* y along this component
    std::int64_t e_fib = 0; // p*vy - q*vx
    bool principal = false; // e_fib == 0; the dicritical line of the companion fibration
    std::vector<Attachment> attachments;
};

struct DualGraph {
    std::vector<GraphComponent> components;    // sorted by id
    std::vector<std::pair<int, int>> edges;    // corners, id pairs with first < second

    // Model data used by the foliation layer (not part of the JSON schema).
    std::int64_t p = 1, q = 1;
    std::int64_t mult_x = 0, mult_y = 0;       // multiplicities of the x / y axis branches
    std::int64_t branch_total = 0;             // number of lambda factors with multiplicity
    int x_axis_comp = 1;                       // component met by the strict transform of {x=0}
    int y_axis_comp = 1;                       // component met by the strict transform of {y=0}

    const GraphComponent& by_id(int id) const { return components.at(static_cast<std::size_t>(id - 1)); }
    std::vector<int> neighbors(int id) const;
    int principal_id() const;

    /// ord of the pulled-back curve along a component: m*vx + n*vy + k*min(p*vy, q*vx).
    std::int64_t curve_order(const GraphComponent& c) const;
};

/// Blow up the quasi-homogeneous model chart by chart until the curve package
/// (curve, axes, and companion fibration) is resolved and transverse. Tracks
/// self-intersections, valuations, fibration orders, and attachment points.
/// Repeated lambdas are clustered within `cluster_tol` (relative) into
/// multiplicities; non-reduced input is allowed.
DualGraph simulate_resolution(const QHNormalForm& nf, double cluster_tol = 1e-9);

struct AttachmentRepresentative {
    std::vector<SpherePoint> points;
    bool no_principal = false; // chains of <= 2 components, where the notion degenerates
};

/// Attachment positions of the curve on the principal component, in the chart
/// that puts the corners at 0 and infinity: a representative of the moduli class.
AttachmentRepresentative attachment_representative(const DualGraph& g);

enum class GraphFormat { Dot, Json };

/// Deterministic serialization. DOT: undirected, nodes in id order, the
/// principal node double-circled. JSON: the documented schema.
std::string export_graph(const DualGraph& g, GraphFormat format);

/// Rebuild a graph from its JSON serialization (schema fields; the weights
/// (p,q) are recovered from the principal component's valuations).
DualGraph import_graph(std::string_view json);

/// Equality on the serialized schema fields.
bool schema_equal(const DualGraph& a, const DualGraph& b);

} // namespace qhmod
