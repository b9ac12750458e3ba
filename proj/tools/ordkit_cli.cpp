// ordkit: term calculator and derivation checker/transformer.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordkit/arith.hpp"
#include "ordkit/config.hpp"
#include "ordkit/corpus.hpp"
#include "ordkit/derivation.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/hull.hpp"
#include "ordkit/order.hpp"
#include "ordkit/transform.hpp"

using namespace ordkit;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFail = 2, kCannot = 3, kCap = 4 };

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Syntax: return kUsage;
        case ErrorKind::CannotVerify: return kCannot;
        case ErrorKind::Cap: return kCap;
        default: return kFail;
    }
}

struct Globals {
    std::string config_path;
    bool json_out = false;
    int n = -1, hf_cap = -1, size_cap = -1, depth_cap = -1;

    void apply() const {
        Config c = config_path.empty() ? Config{} : load_config(config_path);
        if (n >= 0) c.n = n;
        if (hf_cap >= 0) c.hf_cap = hf_cap;
        if (size_cap >= 0) c.size_cap = size_cap;
        if (depth_cap >= 0) c.depth_cap = depth_cap;
        set_config(c);
    }
};

void emit(const Globals& g, const json& j, const std::string& text) {
    if (g.json_out) std::cout << j.dump() << '\n';
    else std::cout << text << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::Syntax, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::Domain, "cannot write " + path);
    f << text << '\n';
}

json stage_json(const std::string& name, const Derivation& before, const Derivation& after) {
    return {{"stage", name},
            {"bound_before", render(before.bound)},
            {"bound_after", render(after.bound)},
            {"cut_before", render(before.cutrank)},
            {"cut_after", render(after.cutrank)},
            {"gamma_after", render(after.op.gamma)}};
}

std::string stage_text(const json& s) {
    return s["stage"].get<std::string>() + ": bound " + s["bound_before"].get<std::string>() + " -> " +
           s["bound_after"].get<std::string>() + ", cutrank " + s["cut_before"].get<std::string>() + " -> " +
           s["cut_after"].get<std::string>();
}

struct TransformArgs {
    std::string op, in, out, right, formula, a, b, c, lambda, sigma, side = "exists", beta;
    std::vector<std::string> theta;
    unsigned part = 1, m = 2, k = 1;
    bool replica = false;
};

Term need_term(const std::string& s, const char* flag) {
    if (s.empty()) fail(ErrorKind::Syntax, std::string("missing ") + flag);
    return parse_term(s);
}

Formula need_formula(const std::string& s) {
    if (s.empty()) fail(ErrorKind::Syntax, "missing --formula");
    return parse_formula(s);
}

Derivation load(const std::string& path, const char* flag) {
    if (path.empty()) fail(ErrorKind::Syntax, std::string("missing ") + flag);
    return deserialize(read_file(path));
}

int run_transform(const Globals& g, const TransformArgs& t) {
    json report;
    report["op"] = t.op;
    report["stages"] = json::array();
    Derivation in, out;
    if (t.op == "tautology") {
        out = build_tautology({}, need_formula(t.formula));
        in = out;
    } else if (t.op == "invert") {
        in = load(t.in, "--in");
        out = invert(in, need_formula(t.formula));
    } else if (t.op == "reduce") {
        in = load(t.in, "--in");
        Derivation r = load(t.right, "--right");
        out = reduce_cut(in, r, need_formula(t.formula), need_term(t.c, "--c"));
    } else if (t.op == "predce") {
        in = load(t.in, "--in");
        if (t.part < 1 || t.part > 4) fail(ErrorKind::Syntax, "--part must be 1..4");
        Term a = t.a.empty() ? zero() : parse_term(t.a);
        out = pred_cut_elim(in, a, need_term(t.c, "--c"), static_cast<PredPart>(t.part));
    } else if (t.op == "bound") {
        in = load(t.in, "--in");
        BoundSide side = t.side == "dual" ? BoundSide::Dual : BoundSide::Exists;
        out = boundedness(in, need_formula(t.formula), need_term(t.b, "--b"), side);
    } else if (t.op == "collapse") {
        in = load(t.in, "--in");
        if (t.lambda.empty()) fail(ErrorKind::Syntax, "missing --lambda");
        std::vector<Const> theta;
        for (const auto& s : t.theta) theta.push_back(parse_const(s));
        out = collapse(in, parse_reg(t.lambda), need_term(t.sigma, "--sigma"), theta);
    } else if (t.op == "pipeline") {
        in = t.replica ? build_replica_input(t.m, t.k) : load(t.in, "--in");
        PipelineResult r = pipeline_complete_ce(in, t.m, t.k);
        out = r.d;
        for (const auto& s : r.stages)
            report["stages"].push_back({{"stage", s.stage},
                                        {"bound_before", render(s.bound_before)},
                                        {"bound_after", render(s.bound_after)},
                                        {"cut_before", render(s.cut_before)},
                                        {"cut_after", render(s.cut_after)},
                                        {"gamma_after", render(s.gamma_after)},
                                        {"note", s.note}});
        report["b"] = render(r.b);
        report["beta"] = render(r.beta);
        report["witness_bound"] = render(r.witness_bound);
        report["truth"] = r.truth;
    } else {
        fail(ErrorKind::Syntax, "unknown --op " + t.op);
    }
    if (t.op != "pipeline") report["stages"].push_back(stage_json(t.op, in, out));
    report["sequent"] = json::array();
    for (const auto& f : out.seq) report["sequent"].push_back(f.text());
    report["nodes"] = node_count(out);
    if (!t.out.empty()) write_file(t.out, serialize(out));
    std::string text;
    for (const auto& s : report["stages"]) text += stage_text(s) + "\n";
    if (report.contains("witness_bound")) text += "witness bound: " + report["witness_bound"].get<std::string>() + "\n";
    text += "sequent: " + render(out.seq);
    emit(g, report, text);
    return kOk;
}

int run_check(const Globals& g, const std::string& path) {
    Derivation d = deserialize(read_file(path));
    CheckReport r = check(d);
    json j{{"status", to_string(r.status)}, {"path", r.path}, {"message", r.message}, {"nodes", node_count(d)}};
    std::string text = r.ok() ? "OK" : to_string(r.status) + " at " + r.path + ": " + r.message;
    emit(g, j, text);
    switch (r.status) {
        case CheckStatus::Ok: return kOk;
        case CheckStatus::CannotVerify: return kCannot;
        default: return kFail;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ordkit: ordinal notation calculator and derivation toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "JSON config file (n, hf_cap, size_cap, depth_cap)");
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_option("--n", g.n, "level of the collapsing functions");
    app.add_option("--hf-cap", g.hf_cap, "HF rank cap");
    app.add_option("--size-cap", g.size_cap, "term size cap");
    app.add_option("--depth-cap", g.depth_cap, "stage depth cap");

    std::function<int()> action;

    // ---- ord
    CLI::App* ord = app.add_subcommand("ord", "ordinal term verbs");
    ord->require_subcommand(1);
    ord->fallthrough();
    std::string s1, s2, s3;
    unsigned mval = 0;
    int st_size = -1, st_depth = -1;

    auto binary = [&](const char* name, const char* help, auto fn) {
        CLI::App* c = ord->add_subcommand(name, help);
        c->add_option("A", s1)->required();
        c->add_option("B", s2)->required();
        c->fallthrough();
        c->callback([&, fn] { action = [&, fn] { return fn(); }; });
    };
    binary("cmp", "compare two terms", [&] {
        std::string r = to_string(cmp(parse_term(s1), parse_term(s2)));
        emit(g, json{{"result", r}}, r);
        return kOk;
    });
    binary("add", "ordinal sum", [&] {
        std::string r = render(add(parse_term(s1), parse_term(s2)));
        emit(g, json{{"result", r}}, r);
        return kOk;
    });
    binary("phi", "binary Veblen function", [&] {
        std::string r = render(veblen(parse_term(s1), parse_term(s2)));
        emit(g, json{{"result", r}}, r);
        return kOk;
    });
    binary("psi-check", "is Psi(KAPPA; ALPHA) a normal notation", [&] {
        bool ok = psi_admissible(parse_reg(s1), parse_term(s2));
        std::string r = ok ? "admissible" : "inadmissible";
        emit(g, json{{"result", r}}, r);
        return kOk;
    });
    {
        CLI::App* c = ord->add_subcommand("pow", "w^A");
        c->add_option("A", s1)->required();
        c->fallthrough();
        c->callback([&] {
            action = [&] {
                std::string r = render(omega_pow(parse_term(s1)));
                emit(g, json{{"result", r}}, r);
                return kOk;
            };
        });
    }
    {
        CLI::App* c = ord->add_subcommand("normalize", "normal form of a term");
        c->add_option("T", s1)->required();
        c->fallthrough();
        c->callback([&] {
            action = [&] {
                std::string r = render(normalize(parse_term(s1)));
                emit(g, json{{"result", r}}, r);
                return kOk;
            };
        });
    }
    {
        CLI::App* c = ord->add_subcommand("tower", "w_M(T)");
        c->add_option("M", mval)->required();
        c->add_option("T", s1)->required();
        c->fallthrough();
        c->callback([&] {
            action = [&] {
                std::string r = render(omega_tower(mval, parse_term(s1)));
                emit(g, json{{"result", r}}, r);
                return kOk;
            };
        });
    }
    {
        CLI::App* c = ord->add_subcommand("hull", "is T in H_GAMMA(BETA)");
        c->add_option("T", s1)->required();
        c->add_option("GAMMA", s2)->required();
        c->add_option("BETA", s3)->required();
        c->fallthrough();
        c->callback([&] {
            action = [&] {
                bool in = in_hull(parse_term(s1), parse_term(s2), parse_term(s3));
                emit(g, json{{"result", in}}, in ? "in" : "out");
                return kOk;
            };
        });
    }
    {
        CLI::App* c = ord->add_subcommand("stages", "brute-force hull stages of H_GAMMA(BETA)");
        c->add_option("GAMMA", s1)->required();
        c->add_option("BETA", s2)->required();
        c->add_option("--size", st_size, "term size cap (default: config size_cap)");
        c->add_option("--depth", st_depth, "stage depth (default: config depth_cap)");
        c->fallthrough();
        c->callback([&] {
            action = [&] {
                int size = st_size >= 0 ? st_size : config().size_cap;
                int depth = st_depth >= 0 ? st_depth : config().depth_cap;
                if (size > 7) fail(ErrorKind::Cap, "--size above 7");
                StageReport r = hull_stages(parse_term(s1), parse_term(s2), size, depth);
                json j{{"sizes", r.sizes}, {"saturated", r.saturated}, {"dropped", r.dropped}};
                j["terms"] = json::array();
                std::string text;
                for (std::size_t i = 0; i < r.sizes.size(); ++i)
                    text += "H^" + std::to_string(i) + ": " + std::to_string(r.sizes[i]) + "\n";
                text += r.saturated ? "saturated\n" : "not saturated\n";
                for (const auto& t : r.terms) {
                    j["terms"].push_back(render(t));
                    text += render(t) + "\n";
                }
                if (!text.empty()) text.pop_back();
                emit(g, j, text);
                return r.saturated ? kOk : kCap;
            };
        });
    }

    // ---- deriv
    CLI::App* deriv = app.add_subcommand("deriv", "derivation verbs");
    deriv->require_subcommand(1);
    deriv->fallthrough();
    std::string check_path;
    {
        CLI::App* c = deriv->add_subcommand("check", "check a derivation file");
        c->add_option("FILE", check_path)->required();
        c->fallthrough();
        c->callback([&] { action = [&] { return run_check(g, check_path); }; });
    }
    TransformArgs targs;
    {
        CLI::App* c = deriv->add_subcommand("transform", "apply one transformer");
        c->add_option("--op", targs.op, "tautology|invert|reduce|predce|bound|collapse|pipeline")
            ->required()
            ->check(CLI::IsMember({"tautology", "invert", "reduce", "predce", "bound", "collapse", "pipeline"}));
        c->add_option("--in", targs.in, "input derivation (left premise for reduce)");
        c->add_option("--out", targs.out, "output derivation file");
        c->add_option("--right", targs.right, "right premise for reduce");
        c->add_option("--formula", targs.formula, "formula parameter (A, target, C)");
        c->add_option("--a", targs.a, "predce: a");
        c->add_option("--b", targs.b, "bound: b");
        c->add_option("--c", targs.c, "reduce/predce: cutrank c");
        c->add_option("--part", targs.part, "predce part 1..4");
        c->add_option("--side", targs.side, "bound: exists|dual")->check(CLI::IsMember({"exists", "dual"}));
        c->add_option("--lambda", targs.lambda, "collapse: regular slot, e.g. W(0+1) or I");
        c->add_option("--sigma", targs.sigma, "collapse: sigma");
        c->add_option("--theta", targs.theta, "collapse: parameters");
        c->add_option("--m", targs.m, "pipeline: m");
        c->add_option("--k", targs.k, "pipeline: k");
        c->add_flag("--replica", targs.replica, "pipeline: build the replica input");
        c->fallthrough();
        c->callback([&] { action = [&] { return run_transform(g, targs); }; });
    }
    std::uint64_t seed = 0;
    std::size_t gsize = 0;
    std::string gdir;
    {
        CLI::App* c = deriv->add_subcommand("gen", "write a seeded corpus");
        c->add_option("--seed", seed, "RNG seed")->required();
        c->add_option("--size", gsize, "entries per section")->required();
        c->add_option("--out", gdir, "output directory")->required();
        c->fallthrough();
        c->callback([&] {
            action = [&] {
                Corpus corpus = gen_corpus(seed, gsize);
                auto files = write_corpus(corpus, gdir);
                json j{{"files", json::array()}};
                std::string text;
                for (const auto& f : files) {
                    j["files"].push_back(f.string());
                    text += f.string() + "\n";
                }
                if (!text.empty()) text.pop_back();
                emit(g, j, text);
                return kOk;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    try {
        g.apply();
        return action ? action() : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
}
