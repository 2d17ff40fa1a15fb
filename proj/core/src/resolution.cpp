#include "qhmod/resolution.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include <json.hpp>

namespace qhmod {

EuclidChain euclid_chain(std::int64_t p, std::int64_t q) {
    if (p < 1 || q < p || std::gcd(p, q) != 1) throw NotCoprimeError{};
    EuclidChain chain;
    std::int64_t qq = q, pp = p;
    while (true) {
        std::int64_t s = qq / pp, r = qq % pp;
        chain.steps.push_back({qq, pp, s, r});
        if (r == 0) break;
        qq = pp;
        pp = r;
    }
    return chain;
}

std::vector<std::int64_t> chain_weights_formula(const EuclidChain& chain) {
    std::size_t m = chain.steps.size();
    std::int64_t n = chain.blowup_count();
    std::vector<std::int64_t> w(static_cast<std::size_t>(n), -2);
    // Anchors sit at the prefix sums N_i = s_1 + ... + s_i (birth order).
    std::int64_t N = 0;
    for (std::size_t i = 1; i <= m; ++i) {
        N += chain.steps[i - 1].s;
        if (i == m) w[static_cast<std::size_t>(N - 1)] = -1;
        else if (i == m - 1) w[static_cast<std::size_t>(N - 1)] = -(chain.steps[m - 1].s + 1);
        else w[static_cast<std::size_t>(N - 1)] = -(chain.steps[i].s + 2);
    }
    return w;
}

namespace {

struct SimComponent {
    std::int64_t self_int = -1;
    std::int64_t vx = 0, vy = 0;
    std::vector<Attachment> attachments; // positions in the birth chart coordinate
};

void sort_attachments(std::vector<Attachment>& a) {
    std::sort(a.begin(), a.end(), [](const Attachment& l, const Attachment& r) {
        if (l.infinite != r.infinite) return !l.infinite; // finite first
        if (l.pos.real() != r.pos.real()) return l.pos.real() < r.pos.real();
        return l.pos.imag() < r.pos.imag();
    });
}

std::vector<std::pair<std::complex<double>, std::int64_t>>
cluster_lambdas(const std::vector<std::complex<double>>& lambdas, double tol) {
    std::vector<std::pair<std::complex<double>, std::int64_t>> out;
    double maxmag = 1.0;
    for (auto& l : lambdas) maxmag = std::max(maxmag, std::abs(l));
    for (auto& l : lambdas) {
        bool merged = false;
        for (auto& [rep, mult] : out) {
            if (std::abs(l - rep) <= tol * maxmag) {
                ++mult;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({l, 1});
    }
    return out;
}

} // namespace

std::vector<int> DualGraph::neighbors(int id) const {
    std::vector<int> out;
    for (auto& [a, b] : edges) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int DualGraph::principal_id() const {
    for (auto& c : components)
        if (c.principal) return c.id;
    return components.empty() ? 0 : components.back().id;
}

std::int64_t DualGraph::curve_order(const GraphComponent& c) const {
    return mult_x * c.vx + mult_y * c.vy + branch_total * std::min(p * c.vy, q * c.vx);
}

DualGraph simulate_resolution(const QHNormalForm& nf, double cluster_tol) {
    std::int64_t p = nf.weights.degenerate ? 1 : nf.weights.p;
    std::int64_t q = nf.weights.degenerate ? 1 : nf.weights.q;
    auto branches = cluster_lambdas(nf.lambdas, cluster_tol);

    std::vector<SimComponent> comps; // indexed by birth - 1
    std::vector<std::pair<int, int>> birth_edges;
    int xdiv = 0, ydiv = 0;          // births of the divisors {X=0}, {Y=0}; 0 = none
    bool x_axis_here = true;         // strict transform of {x=0} passes the center (X side)
    bool y_axis_here = true;         // strict transform of {y=0} passes the center (Y side)
    int x_axis_birth = 0, y_axis_birth = 0;

    std::int64_t a = p, b = q;
    while (true) {
        int birth = static_cast<int>(comps.size()) + 1;
        SimComponent c;
        c.vx = (xdiv ? comps[xdiv - 1].vx : 0) + (ydiv ? comps[ydiv - 1].vx : 0) + (x_axis_here ? 1 : 0);
        c.vy = (xdiv ? comps[xdiv - 1].vy : 0) + (ydiv ? comps[ydiv - 1].vy : 0) + (y_axis_here ? 1 : 0);
        if (xdiv) comps[xdiv - 1].self_int -= 1;
        if (ydiv) comps[ydiv - 1].self_int -= 1;
        if (xdiv && ydiv)
            std::erase(birth_edges, std::pair<int, int>{std::min(xdiv, ydiv), std::max(xdiv, ydiv)});
        if (xdiv) birth_edges.push_back({std::min(xdiv, birth), std::max(xdiv, birth)});
        if (ydiv) birth_edges.push_back({std::min(ydiv, birth), std::max(ydiv, birth)});
        comps.push_back(c);

        if (a < b) {
            // Branch cluster moves to the T-origin; the X side separates at t = infinity.
            if (x_axis_here) {
                x_axis_birth = birth;
                if (nf.m > 0) comps[birth - 1].attachments.push_back({{}, true, nf.m});
            }
            xdiv = birth;
            x_axis_here = false;
            b -= a;
        } else if (a > b) {
            // Cluster moves to the U-origin; the Y side separates at t = 0.
            if (y_axis_here) {
                y_axis_birth = birth;
                if (nf.n > 0) comps[birth - 1].attachments.push_back({{0.0, 0.0}, false, nf.n});
            }
            ydiv = birth;
            y_axis_here = false;
            a -= b;
        } else {
            // a = b = 1: the radial blowup. Everything separates onto this line.
            for (auto& [lambda, mult] : branches)
                comps[birth - 1].attachments.push_back({lambda, false, mult});
            if (x_axis_here) {
                x_axis_birth = birth;
                if (nf.m > 0) comps[birth - 1].attachments.push_back({{}, true, nf.m});
            }
            if (y_axis_here) {
                y_axis_birth = birth;
                if (nf.n > 0) comps[birth - 1].attachments.push_back({{0.0, 0.0}, false, nf.n});
            }
            break;
        }
    }

    // Chain numbering: 1 = the first-born component (always an end), then along
    // the chain. This matches the orientation in which the first line to arise
    // carries index 1 and each next index is the line intersecting the previous one.
    int n = static_cast<int>(comps.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (auto& [u, v] : birth_edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    if (adj[1].size() > 1)
        throw Error("internal check failure: first exceptional line is not a chain end");
    std::vector<int> id_of_birth(static_cast<std::size_t>(n) + 1, 0);
    int prev = 0, cur = 1;
    for (int id = 1; id <= n && cur != 0; ++id) {
        id_of_birth[static_cast<std::size_t>(cur)] = id;
        int next = 0;
        for (int nb : adj[static_cast<std::size_t>(cur)])
            if (nb != prev) next = nb;
        prev = cur;
        cur = next;
    }
    if (std::count(id_of_birth.begin() + 1, id_of_birth.end(), 0) != 0)
        throw Error("internal check failure: resolution divisor is not a linear chain");

    DualGraph g;
    g.p = p;
    g.q = q;
    g.mult_x = nf.m;
    g.mult_y = nf.n;
    for (auto& [l, mult] : branches) g.branch_total += mult;
    g.x_axis_comp = x_axis_birth ? id_of_birth[static_cast<std::size_t>(x_axis_birth)] : 1;
    g.y_axis_comp = y_axis_birth ? id_of_birth[static_cast<std::size_t>(y_axis_birth)] : 1;

    g.components.resize(static_cast<std::size_t>(n));
    for (int birth = 1; birth <= n; ++birth) {
        const SimComponent& s = comps[static_cast<std::size_t>(birth - 1)];
        GraphComponent gc;
        gc.id = id_of_birth[static_cast<std::size_t>(birth)];
        gc.birth = birth;
        gc.self_int = s.self_int;
        gc.vx = s.vx;
        gc.vy = s.vy;
        gc.e_fib = p * s.vy - q * s.vx;
        gc.principal = (gc.e_fib == 0);
        gc.attachments = s.attachments;
        sort_attachments(gc.attachments);
        g.components[static_cast<std::size_t>(gc.id - 1)] = std::move(gc);
    }
    for (auto& [u, v] : birth_edges) {
        int iu = id_of_birth[static_cast<std::size_t>(u)];
        int iv = id_of_birth[static_cast<std::size_t>(v)];
        g.edges.push_back({std::min(iu, iv), std::max(iu, iv)});
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

AttachmentRepresentative attachment_representative(const DualGraph& g) {
    AttachmentRepresentative out;
    out.no_principal = g.components.size() <= 2;
    const GraphComponent& pr = g.by_id(g.principal_id());
    for (auto& a : pr.attachments) {
        SpherePoint sp = a.infinite ? SpherePoint::inf() : SpherePoint::finite(a.pos);
        for (std::int64_t t = 0; t < a.mult; ++t) out.points.push_back(sp);
    }
    return out;
}

namespace {

std::string dtoa(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string export_graph(const DualGraph& g, GraphFormat format) {
    std::string out;
    if (format == GraphFormat::Dot) {
        out += "graph dual_graph {\n";
        for (auto& c : g.components) {
            out += "  D" + std::to_string(c.id) + " [";
            if (c.principal) out += "shape=doublecircle ";
            out += "label=\"D" + std::to_string(c.id) + " (" + std::to_string(c.self_int) + ")\"]\n";
        }
        for (auto& [u, v] : g.edges)
            out += "  D" + std::to_string(u) + " -- D" + std::to_string(v) + "\n";
        out += "}\n";
        return out;
    }
    out += "{\"components\":[";
    bool first = true;
    for (auto& c : g.components) {
        if (!first) out += ",";
        first = false;
        out += "{\"id\":" + std::to_string(c.id);
        out += ",\"self_int\":" + std::to_string(c.self_int);
        out += ",\"vx\":" + std::to_string(c.vx);
        out += ",\"vy\":" + std::to_string(c.vy);
        out += ",\"e_fib\":" + std::to_string(c.e_fib);
        out += ",\"principal\":";
        out += c.principal ? "true" : "false";
        out += ",\"attachments\":[";
        bool afirst = true;
        for (auto& a : c.attachments) {
            if (!afirst) out += ",";
            afirst = false;
            out += "{\"re\":" + dtoa(a.infinite ? 0.0 : a.pos.real());
            out += ",\"im\":" + dtoa(a.infinite ? 0.0 : a.pos.imag());
            out += ",\"infinite\":";
            out += a.infinite ? "true" : "false";
            out += ",\"mult\":" + std::to_string(a.mult) + "}";
        }
        out += "]}";
    }
    out += "],\"edges\":[";
    first = true;
    for (auto& [u, v] : g.edges) {
        if (!first) out += ",";
        first = false;
        out += "[" + std::to_string(u) + "," + std::to_string(v) + "]";
    }
    out += "]}";
    return out;
}

DualGraph import_graph(std::string_view json) {
    nlohmann::json j = nlohmann::json::parse(json);
    DualGraph g;
    for (auto& jc : j.at("components")) {
        GraphComponent c;
        c.id = jc.at("id").get<int>();
        c.self_int = jc.at("self_int").get<std::int64_t>();
        c.vx = jc.at("vx").get<std::int64_t>();
        c.vy = jc.at("vy").get<std::int64_t>();
        c.e_fib = jc.at("e_fib").get<std::int64_t>();
        c.principal = jc.at("principal").get<bool>();
        for (auto& ja : jc.at("attachments")) {
            Attachment a;
            a.pos = {ja.at("re").get<double>(), ja.at("im").get<double>()};
            a.infinite = ja.at("infinite").get<bool>();
            a.mult = ja.at("mult").get<std::int64_t>();
            c.attachments.push_back(a);
        }
        c.birth = c.id;
        g.components.push_back(std::move(c));
    }
    std::sort(g.components.begin(), g.components.end(),
              [](const GraphComponent& a, const GraphComponent& b) { return a.id < b.id; });
    for (auto& je : j.at("edges")) g.edges.push_back({je.at(0).get<int>(), je.at(1).get<int>()});
    std::sort(g.edges.begin(), g.edges.end());
    // Recover the weights from the principal component's valuations.
    for (auto& c : g.components)
        if (c.principal && c.vx > 0 && c.vy > 0) {
            std::int64_t d = std::gcd(c.vx, c.vy);
            g.p = c.vx / d;
            g.q = c.vy / d;
        }
    return g;
}

bool schema_equal(const DualGraph& a, const DualGraph& b) {
    if (a.edges != b.edges || a.components.size() != b.components.size()) return false;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        const GraphComponent& x = a.components[i];
        const GraphComponent& y = b.components[i];
        if (x.id != y.id || x.self_int != y.self_int || x.vx != y.vx || x.vy != y.vy ||
            x.e_fib != y.e_fib || x.principal != y.principal)
            return false;
        if (x.attachments.size() != y.attachments.size()) return false;
        for (std::size_t k = 0; k < x.attachments.size(); ++k) {
            const Attachment& u = x.attachments[k];
            const Attachment& v = y.attachments[k];
            if (u.infinite != v.infinite || u.mult != v.mult) return false;
            if (!u.infinite && u.pos != v.pos) return false;
        }
    }
    return true;
}

} // namespace qhmod
