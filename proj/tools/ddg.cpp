// ddg: command-line front end for the distinct-degrees toolkit.
//
// Exit codes: 0 success, 1 verification/search failure, 2 usage error,
// 3 I/O or format error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddg/anticonc.hpp"
#include "ddg/control.hpp"
#include "ddg/errors.hpp"
#include "ddg/experiment.hpp"
#include "ddg/fraction.hpp"
#include "ddg/graph.hpp"
#include "ddg/io.hpp"
#include "ddg/oracle.hpp"
#include "ddg/pipeline.hpp"
#include "ddg/structure.hpp"

using nlohmann::ordered_json;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad integer '" + tok + "' in list");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

std::vector<double> parse_fraction_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(ddg::Fraction::parse(tok).to_double());
    if (out.empty()) throw std::invalid_argument("empty fraction list");
    return out;
}

ddg::PatternMatrix parse_pattern(const std::string& s) {
    ddg::PatternMatrix rows;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::vector<bool> row;
        for (char c : tok) {
            if (c == '0')
                row.push_back(false);
            else if (c == '1')
                row.push_back(true);
            else
                throw std::invalid_argument("pattern rows are strings over {0,1}");
        }
        rows.push_back(row);
    }
    size_t m = rows.size();
    for (const auto& r : rows)
        if (r.size() != m) throw std::invalid_argument("pattern matrix must be square");
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (rows[i][j] != rows[j][i])
                throw std::invalid_argument("pattern matrix must be symmetric");
    if (m == 0) throw std::invalid_argument("empty pattern");
    return rows;
}

ordered_json vec_json(const std::vector<int>& v) { return ordered_json(v); }

ordered_json set_json(const ddg::VertexSet& s) { return ordered_json(s.to_vector()); }

std::vector<int> ints_from_json(const ordered_json& arr) {
    std::vector<int> v;
    for (const auto& x : arr) v.push_back(x.get<int>());
    return v;
}

ordered_json witness_json(const ddg::ControlGraphWitness& w) {
    ordered_json j;
    j["kind"] = "control";
    j["A"] = vec_json(w.A);
    ordered_json bp = ordered_json::array();
    for (const auto& b : w.Bparts) bp.push_back(vec_json(b));
    j["Bparts"] = bp;
    ordered_json cp = ordered_json::array();
    for (const auto& c : w.Cparts) cp.push_back(vec_json(c));
    j["Cparts"] = cp;
    return j;
}

ordered_json blowup_json(const ddg::structure::BlowupDescription& bd) {
    ordered_json j;
    j["kind"] = "perturbation";
    ordered_json parts = ordered_json::array();
    for (const auto& p : bd.parts) parts.push_back(set_json(p));
    j["parts"] = parts;
    ordered_json pat = ordered_json::array();
    for (const auto& row : bd.pattern) {
        ordered_json r = ordered_json::array();
        for (bool b : row) r.push_back(b ? 1 : 0);
        pat.push_back(r);
    }
    j["pattern"] = pat;
    j["delta"] = bd.delta;
    j["R"] = set_json(bd.R);
    j["centers"] = vec_json(bd.centers);
    return j;
}

void emit(const ordered_json& j, bool json_mode, const std::string& human) {
    if (json_mode)
        std::cout << j.dump() << "\n";
    else
        std::cout << human << "\n";
}

// Shared state mutated by subcommand callbacks; main() reads rc at the end.
struct Ctx {
    uint64_t seed = 0;
    int jobs = 0;
    bool json = false;
    int rc = 0;
};

void write_graph_output(const ddg::Graph& g, const std::string& out, const Ctx& ctx) {
    if (out.empty()) {
        ddg::write_graph(std::cout, g);
    } else {
        ddg::write_graph_file(out, g);
        ordered_json j{{"vertices", g.order()}, {"edges", g.edge_count()}, {"path", out}};
        emit(j, ctx.json,
             "wrote " + std::to_string(g.order()) + " vertices, " +
                 std::to_string(g.edge_count()) + " edges to " + out);
    }
}

}  // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    CLI::App app{"distinct degrees in graphs: oracles, pipeline, structure, control graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", ctx.seed, "global RNG seed")->capture_default_str();
    app.add_option("--jobs", ctx.jobs, "worker threads (0 = library default)")
        ->capture_default_str();
    app.add_flag("--json", ctx.json, "machine-readable JSON output");

    auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    // ---- gen ----------------------------------------------------------
    CLI::App* gen = sub(&app, "gen", "generate graphs");
    gen->require_subcommand(1);
    struct {
        int n = 16;
        std::string p = "1/2";
        int parts = 2, size = 3;
        std::string pattern, sizes;
        int delta = 0;
        std::string out;
    } g_args;

    CLI::App* gnp = sub(gen, "gnp", "Erdos-Renyi G(n,p)");
    gnp->add_option("--n", g_args.n, "vertex count")->required()->check(CLI::PositiveNumber);
    gnp->add_option("--p", g_args.p, "edge probability P/Q")->capture_default_str();
    gnp->add_option("--out", g_args.out, "output path (default stdout)");
    gnp->callback([&] {
        double p = ddg::Fraction::parse(g_args.p).to_double();
        if (p < 0 || p > 1) throw std::invalid_argument("edge probability must lie in [0,1]");
        write_graph_output(ddg::gen_erdos_renyi(g_args.n, p, ctx.seed), g_args.out, ctx);
    });

    CLI::App* turan = sub(gen, "turan", "complete multipartite Turan graph");
    turan->add_option("--parts", g_args.parts, "number of parts")
        ->required()
        ->check(CLI::PositiveNumber);
    turan->add_option("--size", g_args.size, "part size")->required()->check(CLI::PositiveNumber);
    turan->add_option("--out", g_args.out, "output path (default stdout)");
    turan->callback(
        [&] { write_graph_output(ddg::gen_turan(g_args.parts, g_args.size), g_args.out, ctx); });

    CLI::App* blowup = sub(gen, "blowup", "pattern blowup");
    blowup->add_option("--pattern", g_args.pattern, "rows over {0,1}, comma separated")
        ->required();
    blowup->add_option("--sizes", g_args.sizes, "part sizes, comma separated")->required();
    blowup->add_option("--out", g_args.out, "output path (default stdout)");
    blowup->callback([&] {
        auto pat = parse_pattern(g_args.pattern);
        auto sz = parse_int_list(g_args.sizes);
        write_graph_output(ddg::gen_blowup(pat, sz), g_args.out, ctx);
    });

    CLI::App* pblow = sub(gen, "perturbed-blowup", "blowup with random edge perturbation");
    pblow->add_option("--pattern", g_args.pattern, "rows over {0,1}, comma separated")->required();
    pblow->add_option("--sizes", g_args.sizes, "part sizes, comma separated")->required();
    pblow->add_option("--delta", g_args.delta, "per-vertex perturbation budget")
        ->required()
        ->check(CLI::NonNegativeNumber);
    pblow->add_option("--out", g_args.out, "output path (default stdout)");
    pblow->callback([&] {
        auto pat = parse_pattern(g_args.pattern);
        auto sz = parse_int_list(g_args.sizes);
        ddg::Graph base = ddg::gen_blowup(pat, sz);
        auto parts = ddg::contiguous_partition(base.order(), sz);
        write_graph_output(ddg::perturb(base, parts, g_args.delta, ctx.seed), g_args.out, ctx);
    });

    // ---- oracles ------------------------------------------------------
    struct {
        std::string input;
        int cap_f = 24, cap_hom = 64, cap_div = 40;
        std::string delta = "1/5";
    } o_args;

    CLI::App* exf = sub(&app, "exact-f", "exact maximum distinct-degree count");
    exf->add_option("--input", o_args.input, "graph file")->required();
    exf->add_option("--cap", o_args.cap_f, "vertex cap")->capture_default_str();
    exf->callback([&] {
        ddg::Graph g = ddg::read_graph_file(o_args.input);
        auto w = ddg::oracle::exact_f(g, o_args.cap_f);
        ordered_json j{{"n", g.order()},
                       {"f", w.distinct_count},
                       {"witness", set_json(w.subset)}};
        emit(j, ctx.json, "f = " + std::to_string(w.distinct_count));
    });

    CLI::App* exh = sub(&app, "exact-hom", "largest homogeneous set");
    exh->add_option("--input", o_args.input, "graph file")->required();
    exh->add_option("--cap", o_args.cap_hom, "vertex cap")->capture_default_str();
    exh->callback([&] {
        ddg::Graph g = ddg::read_graph_file(o_args.input);
        auto w = ddg::oracle::exact_hom(g, o_args.cap_hom);
        ordered_json j{{"n", g.order()},
                       {"hom", w.size},
                       {"homkind", w.kind == ddg::oracle::HomKind::clique ? "clique"
                                                                          : "independent"},
                       {"witness", set_json(w.subset)}};
        emit(j, ctx.json,
             "hom = " + std::to_string(w.size) +
                 (w.kind == ddg::oracle::HomKind::clique ? " (clique)" : " (independent set)"));
    });

    CLI::App* mdv = sub(&app, "max-diverse", "largest delta-diverse set");
    mdv->add_option("--input", o_args.input, "graph file")->required();
    mdv->add_option("--delta", o_args.delta, "diversity parameter P/Q")->capture_default_str();
    mdv->add_option("--cap", o_args.cap_div, "vertex cap")->capture_default_str();
    mdv->callback([&] {
        ddg::Graph g = ddg::read_graph_file(o_args.input);
        ddg::Fraction d = ddg::Fraction::parse(o_args.delta);
        auto s = ddg::oracle::exact_max_diverse(g, d, o_args.cap_div);
        ordered_json j{{"n", g.order()},
                       {"delta", d.str()},
                       {"size", int(s.count())},
                       {"vertices", set_json(s)}};
        emit(j, ctx.json, "max diverse set size = " + std::to_string(s.count()));
    });

    // ---- anticonc -----------------------------------------------------
    struct {
        int n = 0;
        std::string weights, probs;
        std::string p = "1/2";
        int64_t mc = 0;
        double bin_width = 0;
    } a_args;

    CLI::App* anti = sub(&app, "anticonc", "max atom probability of a weighted Bernoulli sum");
    anti->add_option("--n", a_args.n, "number of unit weights");
    anti->add_option("--weights", a_args.weights, "integer weights, comma separated");
    anti->add_option("--p", a_args.p, "common success probability P/Q")->capture_default_str();
    anti->add_option("--probs", a_args.probs, "per-weight probabilities, comma separated");
    anti->add_option("--mc", a_args.mc, "Monte Carlo trials (0 = exact DP)")
        ->capture_default_str();
    anti->add_option("--bin-width", a_args.bin_width, "MC collision bin width")
        ->capture_default_str();
    anti->callback([&] {
        if ((a_args.n > 0) == !a_args.weights.empty())
            throw std::invalid_argument("give exactly one of --n and --weights");
        std::vector<int64_t> w;
        if (a_args.n > 0)
            w.assign(size_t(a_args.n), 1);
        else
            for (int x : parse_int_list(a_args.weights)) w.push_back(x);
        std::vector<double> probs;
        if (!a_args.probs.empty())
            probs = parse_fraction_list(a_args.probs);
        else
            probs.assign(w.size(), ddg::Fraction::parse(a_args.p).to_double());
        if (probs.size() != w.size())
            throw std::invalid_argument("--probs length must match the weight count");
        ordered_json j{{"n", w.size()}};
        std::string human;
        if (a_args.mc > 0) {
            std::vector<double> wd(w.begin(), w.end());
            auto r = ddg::anticonc::atom_probability_mc(wd, probs, a_args.mc, ctx.seed,
                                                        a_args.bin_width);
            j["mode"] = "mc";
            j["trials"] = a_args.mc;
            j["x_star"] = r.x_star;
            j["pmax"] = r.pmax;
            human = "pmax ~= " + std::to_string(r.pmax);
        } else {
            auto r = ddg::anticonc::atom_probability_dp(w, probs);
            j["mode"] = "dp";
            j["x_star"] = r.x_star;
            j["pmax"] = r.pmax;
            human = "pmax = " + std::to_string(r.pmax);
        }
        emit(j, ctx.json, human);
    });

    // ---- pipeline -----------------------------------------------------
    struct {
        std::string input;
        std::string delta = "1/5";
        int u_target = 0;
        int retries = 64;
        bool emit_witness = false;
    } p_args;

    CLI::App* pipe = sub(&app, "pipeline", "diverse-set to distinct-degrees pipeline");
    pipe->add_option("--input", p_args.input, "graph file")->required();
    pipe->add_option("--delta", p_args.delta, "diversity parameter P/Q")->capture_default_str();
    pipe->add_option("--u-target", p_args.u_target, "target |U| (0 = automatic)")
        ->capture_default_str();
    pipe->add_option("--retries", p_args.retries, "sampling retries")->capture_default_str();
    pipe->add_flag("--emit-witness", p_args.emit_witness, "include vertex sets in the output");
    pipe->callback([&] {
        ddg::Graph g = ddg::read_graph_file(p_args.input);
        ddg::pipeline::PipelineParams params;
        params.delta = ddg::Fraction::parse(p_args.delta);
        params.u_target = p_args.u_target;
        params.retries = p_args.retries;
        params.seed = ctx.seed;
        auto res = ddg::pipeline::run_pipeline(g, params);
        auto prof = ddg::degree_profile(g, res.subset);
        bool ok = true;
        {
            // every claimed vertex must realize a distinct degree inside the subset
            std::vector<int> ds;
            res.distinct_set.for_each([&](int v) {
                ds.push_back(int(ddg::count_and(g.row(v), res.subset)));
            });
            std::sort(ds.begin(), ds.end());
            ok = std::adjacent_find(ds.begin(), ds.end()) == ds.end() &&
                 int(ds.size()) == res.distinct_count;
        }
        ordered_json j{{"N", res.record.N},
                       {"seed", res.record.seed},
                       {"delta", params.delta.str()},
                       {"distinct_count", res.distinct_count},
                       {"subset_distinct", prof.distinct_count},
                       {"u_size", res.record.u_size},
                       {"uprime_size", res.record.uprime_size},
                       {"balanced_size", res.record.balanced_size},
                       {"retries_used", res.record.retries_used},
                       {"verified", ok}};
        if (p_args.emit_witness) {
            j["subset"] = set_json(res.subset);
            j["distinct_set"] = set_json(res.distinct_set);
        }
        emit(j, ctx.json,
             "distinct degrees: " + std::to_string(res.distinct_count) + " (|subset| = " +
                 std::to_string(res.subset.count()) + ", verified " + (ok ? "yes" : "no") + ")");
        if (!ok) ctx.rc = 1;
    });

    // ---- structure ----------------------------------------------------
    struct {
        std::string input;
        long long threshold = 0;
        bool refine = false;
        int d1 = -1;
        long long d2 = -1, delta = -1, T = 0;
        int audit = 0;
    } s_args;

    CLI::App* str = sub(&app, "structure", "similarity partition and blowup recovery");
    str->add_option("--input", s_args.input, "graph file")->required();
    str->add_option("--threshold", s_args.threshold, "similarity threshold")
        ->required()
        ->check(CLI::NonNegativeNumber);
    str->add_flag("--refine", s_args.refine, "refine the coarse partition to a blowup");
    str->add_option("--d1", s_args.d1, "refinement D1 (default 2*threshold)");
    str->add_option("--d2", s_args.d2, "merge bound D2 (default 8*L*D1)");
    str->add_option("--delta", s_args.delta, "classification threshold (default 4*D1)");
    str->add_option("--T", s_args.T, "minimum surviving part size");
    str->add_option("--audit", s_args.audit, "audit trials for the partition bound")
        ->capture_default_str();
    str->callback([&] {
        ddg::Graph g = ddg::read_graph_file(s_args.input);
        auto sp = ddg::structure::coarse_partition(g, s_args.threshold);
        ordered_json j{{"n", g.order()}, {"threshold", s_args.threshold}};
        ordered_json parts = ordered_json::array();
        for (const auto& p : sp.parts) parts.push_back(set_json(p));
        j["centers"] = vec_json(sp.centers);
        j["parts"] = parts;
        std::string human = "coarse parts: " + std::to_string(sp.parts.size());
        if (s_args.audit > 0) {
            auto a = ddg::structure::audit_similarity_partition(g, sp, s_args.audit, ctx.seed);
            j["audit"] = ordered_json{{"trials", a.trials},
                                      {"mean_ej", a.mean_ej},
                                      {"max_ej", a.max_ej},
                                      {"frac_half_centers", a.frac_half_centers}};
        }
        if (s_args.refine) {
            ddg::structure::StructureParams params;
            params.D1 = s_args.d1 >= 0 ? s_args.d1 : int(std::min<long long>(2 * s_args.threshold,
                                                                             INT32_MAX));
            long long L = (long long)sp.parts.size();
            params.D2 = s_args.d2 >= 0 ? s_args.d2 : 8 * L * params.D1;
            params.Delta = s_args.delta >= 0 ? s_args.delta : 4LL * params.D1;
            params.T = s_args.T;
            params.paper_faithful = false;
            auto bd = ddg::structure::refine_to_blowup(g, sp, params);
            ordered_json bj = blowup_json(bd);
            bj["nondegenerate"] = ddg::structure::verify_nondegenerate(bd);
            j["blowup"] = bj;
            human += ", blowup parts: " + std::to_string(bd.parts.size()) +
                     " (|R| = " + std::to_string(bd.R.count()) + ")";
        }
        emit(j, ctx.json, human);
    });

    // ---- control ------------------------------------------------------
    struct {
        std::string input;
        int k = 2, n = 4;
        long long delta_cap = -1;
        int retries = 64;
        long long threshold = -1;
        int d1 = 0;
        long long delta = 0, delta1 = 0, T = 0;
        bool paper = false;
    } c_args;

    CLI::App* ctl = sub(&app, "control", "control graphs and the staged dichotomy check");
    ctl->require_subcommand(1);

    auto add_kn = [&](CLI::App* s) {
        s->add_option("--k", c_args.k, "control order k")->required()->check(CLI::PositiveNumber);
        s->add_option("--n", c_args.n, "homogeneous threshold n")
            ->required()
            ->check(CLI::Range(2, INT32_MAX));
        s->add_option("--input", c_args.input, "graph file")->required();
    };
    auto assembly_opts = [&](CLI::App* s) {
        s->add_option("--d1", c_args.d1, "similarity parameter D1");
        s->add_option("--delta", c_args.delta, "degree bound Delta");
        s->add_option("--delta1", c_args.delta1, "association bound Delta1");
        s->add_option("--T", c_args.T, "minimum surviving part size");
        s->add_flag("--paper-faithful", c_args.paper, "derive all parameters from k");
    };
    auto make_params = [&]() {
        ddg::control::AssemblyParams params;
        if (c_args.paper) {
            params = ddg::control::paper_params(c_args.k);
        } else {
            params.k = c_args.k;
            params.D1 = c_args.d1;
            params.Delta = c_args.delta;
            params.Delta1 = c_args.delta1;
            params.T = c_args.T;
        }
        params.n = c_args.n;
        return params;
    };

    CLI::App* cbuild = sub(ctl, "build", "greedy control graph on the whole vertex set");
    add_kn(cbuild);
    cbuild->add_option("--delta-cap", c_args.delta_cap, "degree bound (default max degree)");
    cbuild->callback([&] {
        ddg::Graph g = ddg::read_graph_file(c_args.input);
        long long cap = c_args.delta_cap;
        if (cap < 0)
            for (int v = 0; v < g.order(); ++v) cap = std::max(cap, (long long)g.degree(v));
        ddg::VertexSet W = ddg::VertexSet::full(g.order());
        ddg::VertexSet U(g.order());
        auto w = ddg::control::build_control_greedy(g, c_args.k, c_args.n, cap, W, U);
        auto chk = ddg::oracle::verify_control_graph(g, w);
        ordered_json j = witness_json(w);
        j["verified"] = bool(chk);
        emit(j, ctx.json,
             "control graph: k = " + std::to_string(w.k()) + ", C parts = " +
                 std::to_string(w.Cparts.size()));
        if (!chk) ctx.rc = 1;
    });

    CLI::App* cext = sub(ctl, "extract", "build a control graph, then extract distinct degrees");
    add_kn(cext);
    cext->add_option("--delta-cap", c_args.delta_cap, "degree bound (default max degree)");
    cext->add_option("--retries", c_args.retries, "extraction retries")->capture_default_str();
    cext->callback([&] {
        ddg::Graph g = ddg::read_graph_file(c_args.input);
        long long cap = c_args.delta_cap;
        if (cap < 0)
            for (int v = 0; v < g.order(); ++v) cap = std::max(cap, (long long)g.degree(v));
        ddg::VertexSet W = ddg::VertexSet::full(g.order());
        ddg::VertexSet U(g.order());
        auto w = ddg::control::build_control_greedy(g, c_args.k, c_args.n, cap, W, U);
        auto fp = ddg::control::distinct_from_control(g, w, ctx.seed, c_args.retries);
        auto prof = ddg::degree_profile(g, fp);
        bool ok = prof.distinct_count >= c_args.k;
        ordered_json j{{"control", witness_json(w)},
                       {"fprime", set_json(fp)},
                       {"distinct_count", prof.distinct_count},
                       {"verified", ok}};
        emit(j, ctx.json,
             "extracted " + std::to_string(prof.distinct_count) + " distinct degrees from |F'| = " +
                 std::to_string(fp.count()));
        if (!ok) ctx.rc = 1;
    });

    CLI::App* casm = sub(ctl, "assemble", "structure recovery plus multi-round assembly");
    add_kn(casm);
    assembly_opts(casm);
    casm->add_option("--threshold", c_args.threshold, "coarse threshold (default max(1, D1/2))");
    casm->add_option("--retries", c_args.retries, "extraction retries")->capture_default_str();
    casm->callback([&] {
        ddg::Graph g = ddg::read_graph_file(c_args.input);
        auto params = make_params();
        long long thr = c_args.threshold >= 0 ? c_args.threshold
                                              : std::max(1LL, (long long)params.D1 / 2);
        auto sp = ddg::structure::coarse_partition(g, thr);
        ddg::structure::StructureParams sparams;
        sparams.D1 = params.D1;
        sparams.D2 = 8LL * (long long)sp.parts.size() * params.D1;
        sparams.Delta = params.Delta;
        sparams.T = params.T;
        sparams.paper_faithful = params.paper_faithful;
        auto bd = ddg::structure::refine_to_blowup(g, sp, sparams);
        auto w = ddg::control::assemble_from_blowup(g, bd, params, ctx.seed);
        auto fp = ddg::control::distinct_from_control(g, w, ddg::mix_seed(ctx.seed, 0x5eedULL),
                                                      c_args.retries);
        auto prof = ddg::degree_profile(g, fp);
        bool ok = prof.distinct_count >= w.k();
        ordered_json j{{"blowup", blowup_json(bd)},
                       {"control", witness_json(w)},
                       {"fprime", set_json(fp)},
                       {"distinct_count", prof.distinct_count},
                       {"verified", ok}};
        emit(j, ctx.json,
             "assembled k = " + std::to_string(w.k()) + ", extracted " +
                 std::to_string(prof.distinct_count) + " distinct degrees");
        if (!ok) ctx.rc = 1;
    });

    CLI::App* cthm = sub(ctl, "theorem3", "staged dichotomy: homogeneous or distinct degrees");
    add_kn(cthm);
    assembly_opts(cthm);
    cthm->callback([&] {
        ddg::Graph g = ddg::read_graph_file(c_args.input);
        auto res = ddg::control::theorem3_check(g, c_args.k, c_args.n, make_params(), ctx.seed);
        const char* branch = res.branch == ddg::control::Theorem3Branch::homogeneous
                                 ? "homogeneous"
                                 : res.branch == ddg::control::Theorem3Branch::distinct
                                       ? "distinct"
                                       : "inconclusive";
        ordered_json j{{"branch", branch},
                       {"value", res.value},
                       {"witness", set_json(res.witness)},
                       {"diagnostics", res.diagnostics}};
        emit(j, ctx.json, std::string("branch: ") + branch + ", value " +
                              std::to_string(res.value));
    });

    // ---- scaling ------------------------------------------------------
    struct {
        std::string sizes = "512,1024,2048,4096";
        int trials = 5;
        std::string delta = "1/5";
        int retries = 64;
        std::string csv;
        bool stable = false;
    } e_args;

    CLI::App* sca = sub(&app, "scaling", "distinct-degree scaling sweep on G(N,1/2)");
    sca->add_option("--sizes", e_args.sizes, "vertex counts, comma separated")
        ->capture_default_str();
    sca->add_option("--trials", e_args.trials, "trials per size")->capture_default_str();
    sca->add_option("--delta", e_args.delta, "diversity parameter P/Q")->capture_default_str();
    sca->add_option("--retries", e_args.retries, "pipeline retries")->capture_default_str();
    sca->add_option("--csv", e_args.csv, "per-run CSV output path");
    sca->add_flag("--stable", e_args.stable, "zero wall-clock fields for reproducible output");
    sca->callback([&] {
        auto sizes = parse_int_list(e_args.sizes);
        ddg::Fraction delta = ddg::Fraction::parse(e_args.delta);
        std::vector<ddg::ExperimentRecord> rows;
        auto summary = ddg::run_scaling(sizes, e_args.trials, delta, ctx.seed, ctx.jobs,
                                        e_args.retries, rows);
        if (!e_args.csv.empty()) {
            std::ofstream out(e_args.csv);
            if (!out) throw ddg::FormatError("cannot open '" + e_args.csv + "' for writing");
            ddg::write_csv(out, rows, e_args.stable);
            std::cout << ddg::summary_json(summary) << "\n";
        } else {
            ddg::write_csv(std::cout, rows, e_args.stable);
        }
    });

    // ---- verify -------------------------------------------------------
    struct {
        std::string input, witness, kind;
        int min_distinct = -1;
    } v_args;

    CLI::App* ver = sub(&app, "verify", "check a witness document against a graph");
    ver->add_option("--input", v_args.input, "graph file")->required();
    ver->add_option("--witness", v_args.witness, "witness JSON file")->required();
    ver->add_option("--kind", v_args.kind,
                    "witness kind (default: 'kind' field of the document)");
    ver->add_option("--min-distinct", v_args.min_distinct,
                    "distinct-degree threshold (default |vertices|)");
    ver->callback([&] {
        ddg::Graph g = ddg::read_graph_file(v_args.input);
        std::ifstream in(v_args.witness);
        if (!in) throw ddg::FormatError("cannot open '" + v_args.witness + "'");
        ordered_json doc = ordered_json::parse(in);
        std::string kind = !v_args.kind.empty() ? v_args.kind
                                                : doc.value("kind", std::string{});
        ordered_json j{{"kind", kind}};
        bool ok = false;
        std::string detail;
        if (kind == "distinct") {
            auto vs = ddg::from_vector(g.order(), ints_from_json(doc.at("vertices")));
            auto prof = ddg::degree_profile(g, vs);
            int need = v_args.min_distinct >= 0 ? v_args.min_distinct
                       : doc.contains("min_distinct") ? doc["min_distinct"].get<int>()
                                                      : int(vs.count());
            ok = prof.distinct_count >= need;
            j["distinct_count"] = prof.distinct_count;
            j["required"] = need;
            detail = std::to_string(prof.distinct_count) + " distinct degrees, need " +
                     std::to_string(need);
        } else if (kind == "homogeneous") {
            auto verts = ints_from_json(doc.at("vertices"));
            auto vs = ddg::from_vector(g.order(), verts);
            long long m = 0;
            for (size_t i = 0; i < verts.size(); ++i)
                for (size_t l = i + 1; l < verts.size(); ++l)
                    m += g.has_edge(verts[i], verts[l]) ? 1 : 0;
            long long full = (long long)verts.size() * ((long long)verts.size() - 1) / 2;
            ok = vs.count() == verts.size() && (m == 0 || m == full);
            j["size"] = verts.size();
            j["homkind"] = m == full && full > 0 ? "clique" : (m == 0 ? "independent" : "neither");
            detail = "set of " + std::to_string(verts.size()) + " is " +
                     j["homkind"].get<std::string>();
        } else if (kind == "control") {
            ddg::ControlGraphWitness w;
            w.A = ints_from_json(doc.at("A"));
            for (const auto& b : doc.at("Bparts")) w.Bparts.push_back(ints_from_json(b));
            for (const auto& c : doc.at("Cparts")) w.Cparts.push_back(ints_from_json(c));
            auto chk = ddg::oracle::verify_control_graph(g, w);
            ok = bool(chk);
            detail = chk.str();
            j["check"] = detail;
        } else if (kind == "perturbation") {
            ddg::structure::BlowupDescription bd;
            for (const auto& p : doc.at("parts"))
                bd.parts.push_back(ddg::from_vector(g.order(), ints_from_json(p)));
            for (const auto& row : doc.at("pattern")) {
                std::vector<bool> r;
                for (const auto& x : row) r.push_back(x.get<int>() != 0);
                bd.pattern.push_back(r);
            }
            bd.delta = doc.at("delta").get<long long>();
            bd.R = doc.contains("R") ? ddg::from_vector(g.order(), ints_from_json(doc["R"]))
                                     : ddg::VertexSet(g.order());
            if (doc.contains("centers"))
                bd.centers = ints_from_json(doc["centers"]);
            else
                for (const auto& p : bd.parts) bd.centers.push_back(p.first());
            ok = ddg::structure::verify_perturbation(g, bd);
            j["nondegenerate"] = ddg::structure::verify_nondegenerate(bd);
            detail = ok ? "perturbation bound holds" : "perturbation bound violated";
        } else {
            throw std::invalid_argument("unknown witness kind '" + kind + "'");
        }
        j["ok"] = ok;
        emit(j, ctx.json, (ok ? "OK: " : "FAIL: ") + detail);
        if (!ok) ctx.rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const ddg::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ddg::PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ddg::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ddg::Error& e) {
        // mathematical failure modes: degree shortfall, retries exhausted, ...
        if (ctx.json)
            std::cout << ordered_json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "failed: " << e.what() << "\n";
        return 1;
    }
    return ctx.rc;
}
