// qhmod: classify germs of quasi-homogeneous plane curves, decide analytic
// equivalence, export resolution graphs, and verify foliation index sums.

#include <algorithm>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhmod/foliation.hpp"
#include "qhmod/moduli.hpp"
#include "qhmod/parser.hpp"
#include "qhmod/quasihom.hpp"
#include "qhmod/resolution.hpp"
#include "qhmod/version.hpp"

using nlohmann::ordered_json;
using namespace qhmod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitAmbiguous = 3;
constexpr int kExitCheckFailed = 4;

struct RunConfig {
    double tolerance = 1e-8;
    int series_order = 12;
    CsConvention cs = CsConvention::Negated;
    std::string format = "text";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string output;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + cfg.output);
    out << text;
}

std::string fmt_c(std::complex<double> z) {
    double re = z.real() + 0.0, im = z.imag() + 0.0; // normalize -0
    std::ostringstream os;
    if (im == 0.0) {
        os << re;
    } else {
        os << "(" << re << (im < 0 ? "-" : "+") << std::abs(im) << "i)";
    }
    return os.str();
}

std::string stratum_text(const CurveType& ct) {
    std::ostringstream os;
    os << "(" << ct.p << "," << ct.q << "," << ct.lambdas.size() << ")";
    return os.str();
}

ordered_json stratum_json(const CurveType& ct) {
    ordered_json j;
    j["type"] = stratum_text(ct);
    j["p"] = ct.p;
    j["q"] = ct.q;
    j["n"] = ct.lambdas.size();
    j["flag_m"] = ct.flag_m;
    j["flag_k"] = ct.flag_k;
    return j;
}

ordered_json sphere_json(const SpherePoint& pt) {
    ordered_json j;
    j["re"] = pt.infinite ? 0.0 : pt.z.real();
    j["im"] = pt.infinite ? 0.0 : pt.z.imag();
    j["infinite"] = pt.infinite;
    return j;
}

std::string sphere_text(const SpherePoint& pt) {
    return pt.infinite ? "inf" : fmt_c(pt.z);
}

struct Analysis {
    BiPoly poly;
    QHNormalForm nf;
    DualGraph graph;
    CurveType ct;
    std::string fingerprint;
};

Analysis analyze_input(const std::string& text, const RunConfig& cfg) {
    Analysis a;
    a.poly = parse_poly(text);
    a.nf = decompose(a.poly, cfg.tolerance);
    a.graph = simulate_resolution(a.nf);
    a.ct = classify_curve(a.nf);
    a.fingerprint = canonical_fingerprint(a.ct);
    return a;
}

int cmd_analyze(const std::string& input, const RunConfig& cfg) {
    Analysis a = analyze_input(input, cfg);
    auto repr = attachment_representative(a.graph);

    if (cfg.format == "json") {
        ordered_json j;
        j["version"] = version;
        j["input"] = format_poly(a.poly);
        j["weights"] = {{"p", a.nf.weights.p},
                        {"q", a.nf.weights.q},
                        {"d", a.nf.weights.d},
                        {"swapped", a.nf.weights.swapped},
                        {"degenerate", a.nf.weights.degenerate}};
        ordered_json nfj;
        nfj["mu"] = a.nf.mu.str();
        nfj["m"] = a.nf.m;
        nfj["n"] = a.nf.n;
        nfj["k"] = a.nf.lambdas.size();
        nfj["lambdas"] = ordered_json::array();
        for (auto& l : a.nf.lambdas) nfj["lambdas"].push_back({{"re", l.real()}, {"im", l.imag()}});
        j["normal_form"] = nfj;
        j["stratum"] = stratum_json(a.ct);
        j["fingerprint"] = a.fingerprint;
        j["graph"] = ordered_json::parse(export_graph(a.graph, GraphFormat::Json));
        j["attachment_representative"] = ordered_json::array();
        for (auto& pt : repr.points) j["attachment_representative"].push_back(sphere_json(pt));
        j["no_principal"] = repr.no_principal;
        emit(cfg, j.dump() + "\n");
        return kExitOk;
    }

    std::ostringstream os;
    os << "qhmod " << version << "\n";
    os << "input: " << format_poly(a.poly) << "\n";
    os << "weights: p=" << a.nf.weights.p << " q=" << a.nf.weights.q << " d=" << a.nf.weights.d
       << " swapped=" << (a.nf.weights.swapped ? "yes" : "no")
       << (a.nf.weights.degenerate ? " (degenerate)" : "") << "\n";
    os << "normal form: mu=" << a.nf.mu.str() << " m=" << a.nf.m << " n=" << a.nf.n
       << " k=" << a.nf.lambdas.size() << "\n";
    for (std::size_t i = 0; i < a.nf.lambdas.size(); ++i)
        os << "  lambda[" << i << "] = " << fmt_c(a.nf.lambdas[i]) << "\n";
    os << "stratum: " << stratum_text(a.ct) << " flags m=" << a.ct.flag_m << " k=" << a.ct.flag_k
       << "\n";
    os << "fingerprint: " << a.fingerprint << "\n";
    os << "resolution: " << a.graph.components.size() << " components, principal D"
       << a.graph.principal_id() << "\n";
    for (auto& c : a.graph.components) {
        os << "  D" << c.id << ": self=" << c.self_int << " v=(" << c.vx << "," << c.vy
           << ") e_fib=" << c.e_fib;
        if (c.principal) os << " principal";
        for (auto& att : c.attachments)
            os << " branch@" << (att.infinite ? "inf" : fmt_c(att.pos)) << "(x" << att.mult << ")";
        os << "\n";
    }
    os << "attachment representative:";
    for (auto& pt : repr.points) os << " " << sphere_text(pt);
    if (repr.no_principal) os << " (short chain: -1 component used)";
    os << "\n";
    emit(cfg, os.str());
    return kExitOk;
}

int cmd_equiv(const std::string& ta, const std::string& tb, const RunConfig& cfg) {
    Analysis a = analyze_input(ta, cfg);
    Analysis b = analyze_input(tb, cfg);
    EquivalenceVerdict v = decide_equivalence(a.ct, b.ct, cfg.tolerance);

    WitnessCheck chk{};
    Witness w{};
    if (v.equivalent) {
        BiPoly fa = a.nf.weights.swapped ? swap_variables(a.poly) : a.poly;
        BiPoly fb = b.nf.weights.swapped ? swap_variables(b.poly) : b.poly;
        w = fit_alpha(*v.witness, fa, fb);
        chk = verify_witness(w, fa, fb, cfg.tolerance);
    }

    if (cfg.format == "json") {
        ordered_json j;
        j["version"] = version;
        j["equivalent"] = v.equivalent;
        if (v.equivalent) {
            j["witness"] = {{"map", w.plane_map_text()},
                            {"alpha_re", w.alpha.real()},
                            {"alpha_im", w.alpha.imag()},
                            {"permutation", w.permutation},
                            {"residual", chk.residual}};
            j["frames_swapped"] = {a.nf.weights.swapped, b.nf.weights.swapped};
        } else {
            j["certificate"] = v.certificate;
        }
        emit(cfg, j.dump() + "\n");
        return v.equivalent ? kExitOk : kExitNegative;
    }

    std::ostringstream os;
    os << "qhmod " << version << "\n";
    if (v.equivalent) {
        os << "equivalent: yes\n";
        os << "witness: " << w.plane_map_text() << "\n";
        os << "alpha: " << fmt_c(w.alpha) << "\n";
        os << "permutation:";
        for (int pi : w.permutation) os << " " << pi;
        os << "\n";
        if (a.nf.weights.swapped || b.nf.weights.swapped)
            os << "note: witness acts in the weight-normalized frame (x,y swapped where flagged)\n";
        os << "residual: " << chk.residual << "\n";
    } else {
        os << "equivalent: no\n";
        os << "certificate: " << v.certificate << "\n";
    }
    emit(cfg, os.str());
    return v.equivalent ? kExitOk : kExitNegative;
}

int cmd_resolve(const std::string& input, const RunConfig& cfg) {
    BiPoly f = parse_poly(input);
    QHNormalForm nf = decompose(f, cfg.tolerance);
    DualGraph g = simulate_resolution(nf);
    GraphFormat gf = (cfg.format == "json") ? GraphFormat::Json : GraphFormat::Dot;
    std::string text = export_graph(g, gf);
    if (gf == GraphFormat::Json) text += "\n";
    emit(cfg, text);
    return kExitOk;
}

struct BatchEntry {
    std::size_t line = 0;
    std::string text;        // canonical polynomial text
    std::string fingerprint;
    CurveType ct;
    bool ok = false;
    std::string error;
};

struct ClassRecord {
    std::string fingerprint;
    std::string representative;
    std::vector<std::string> members;
    CurveType stratum;
};

int cmd_classify_batch(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    std::vector<std::pair<std::size_t, PolySource>> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back({lineno, PolySource{line}});
    }

    std::vector<BatchEntry> entries(lines.size());
    std::size_t next = 0;
    std::mutex next_mutex;
    auto worker = [&]() {
        while (true) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= lines.size()) return;
                i = next++;
            }
            BatchEntry& e = entries[i];
            e.line = lines[i].first;
            try {
                Analysis a = analyze_input(lines[i].second.text, cfg);
                e.text = format_poly(a.poly);
                e.fingerprint = a.fingerprint;
                e.ct = a.ct;
                e.ok = true;
            } catch (const Error& err) {
                e.error = err.what();
            }
        }
    };
    unsigned jobs = std::max(1u, cfg.jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool any_error = false;
    for (auto& e : entries)
        if (!e.ok) {
            any_error = true;
            std::cerr << "line " << e.line << ": " << e.error << "\n";
        }

    std::map<std::string, std::vector<const BatchEntry*>> classes;
    for (auto& e : entries)
        if (e.ok) classes[e.fingerprint].push_back(&e);

    // Spot-verify each class member against the class representative.
    std::vector<ClassRecord> records;
    for (auto& [fp, members] : classes) {
        std::sort(members.begin(), members.end(),
                  [](const BatchEntry* x, const BatchEntry* y) { return x->text < y->text; });
        for (std::size_t i = 1; i < members.size(); ++i) {
            auto verdict = decide_equivalence(members[0]->ct, members[i]->ct, cfg.tolerance);
            if (!verdict.equivalent)
                throw Error("internal check failure: fingerprint collision between " +
                            members[0]->text + " and " + members[i]->text);
        }
        ClassRecord rec;
        rec.fingerprint = fp;
        rec.representative = members[0]->text;
        for (auto* e : members) rec.members.push_back(e->text);
        rec.stratum = members[0]->ct;
        records.push_back(std::move(rec));
    }

    std::ostringstream os;
    for (auto& rec : records) {
        ordered_json j;
        j["fingerprint"] = rec.fingerprint;
        j["representative"] = rec.representative;
        j["members"] = rec.members;
        j["stratum"] = stratum_json(rec.stratum);
        os << j.dump() << "\n";
    }
    emit(cfg, os.str());
    return any_error ? kExitInput : kExitOk;
}

std::string report_text(const IndexReport& r) {
    std::ostringstream os;
    os << (r.model == FoliationModel::Hamiltonian ? "hamiltonian" : "fibration") << " model:\n";
    for (auto& c : r.components) {
        os << "  D" << c.id << ": ";
        if (c.skipped_dicritical) {
            os << "skipped (dicritical)\n";
            continue;
        }
        os << "sum=" << rational_str(c.sum) << " expected=" << c.expected << " "
           << (c.pass ? "pass" : "FAIL") << "\n";
    }
    return os.str();
}

int cmd_foliation_check(const std::string& input, std::vector<std::int64_t> pq,
                        const RunConfig& cfg) {
    QHNormalForm nf;
    if (!pq.empty()) {
        EuclidChain chain = euclid_chain(pq[0], pq[1]); // validates coprimality
        (void)chain;
        nf.weights = {pq[0], pq[1], pq[0] * pq[1], false, false};
        nf.mu = ExactComplex(1);
        nf.lambdas = {{1.0, 0.0}};
    } else {
        nf = decompose(parse_poly(input), cfg.tolerance);
    }
    DualGraph g = simulate_resolution(nf);
    IndexReport rh = index_sum_check(g, FoliationModel::Hamiltonian, cfg.cs);
    IndexReport rf = index_sum_check(g, FoliationModel::Fibration, cfg.cs);

    if (cfg.format == "json") {
        ordered_json j;
        j["version"] = version;
        j["hamiltonian"] = ordered_json::parse(index_report_json(rh));
        j["fibration"] = ordered_json::parse(index_report_json(rf));
        emit(cfg, j.dump() + "\n");
    } else {
        std::ostringstream os;
        os << "qhmod " << version << "\n";
        os << report_text(rh) << report_text(rf);
        emit(cfg, os.str());
    }
    return (rh.all_pass && rf.all_pass) ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification of quasi-homogeneous plane curve germs"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--tolerance", cfg.tolerance, "relative tolerance for numeric comparisons")
        ->envname("QHMOD_TOLERANCE")
        ->check(CLI::PositiveNumber);
    app.add_option("--order", cfg.series_order, "series truncation order")->check(CLI::Range(2, 64));
    std::string cs_name = "negated";
    app.add_option("--cs-convention", cs_name, "Camacho-Sad sign convention")
        ->check(CLI::IsMember({"negated", "paper"}));
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--jobs", cfg.jobs, "worker count for batch mode");
    app.add_option("--output", cfg.output, "write output to a file instead of stdout");

    std::string input_a, input_b, batch_path;
    std::vector<std::int64_t> pq;

    CLI::App* analyze = app.add_subcommand("analyze", "classify a single curve");
    analyze->add_option("polynomial", input_a)->required();

    CLI::App* equiv = app.add_subcommand("equiv", "decide analytic equivalence of two curves");
    equiv->add_option("first", input_a)->required();
    equiv->add_option("second", input_b)->required();

    CLI::App* resolve = app.add_subcommand("resolve", "export the resolution dual graph");
    resolve->add_option("polynomial", input_a)->required();

    CLI::App* batch = app.add_subcommand("classify-batch", "group a corpus into analytic classes");
    batch->add_option("path", batch_path)->required();

    CLI::App* fol = app.add_subcommand("foliation-check", "verify Camacho-Sad index sums");
    fol->add_option("polynomial", input_a);
    fol->add_option("--pq", pq, "weights p q of the companion fibration")->expected(2);

    for (CLI::App* sub : {analyze, equiv, resolve, batch, fol}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }
    cfg.cs = (cs_name == "paper") ? CsConvention::Paper : CsConvention::Negated;

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(input_a, cfg);
        if (app.got_subcommand(equiv)) return cmd_equiv(input_a, input_b, cfg);
        if (app.got_subcommand(resolve)) return cmd_resolve(input_a, cfg);
        if (app.got_subcommand(batch)) return cmd_classify_batch(batch_path, cfg);
        if (app.got_subcommand(fol)) {
            if (pq.empty() && input_a.empty())
                throw Error("foliation-check needs a polynomial or --pq p q");
            return cmd_foliation_check(input_a, pq, cfg);
        }
    } catch (const ToleranceAmbiguityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAmbiguous;
    } catch (const Error& e) {
        std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        return what.find("internal check failure") != std::string::npos ? kExitCheckFailed
                                                                        : kExitInput;
    }
    return kExitInput;
}
