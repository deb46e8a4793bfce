#include "ptfhard/cli.hpp"

#include "ptfhard/dataset.hpp"
#include "ptfhard/decode.hpp"
#include "ptfhard/errors.hpp"
#include "ptfhard/label_cover.hpp"
#include "ptfhard/lemma_lab.hpp"
#include "ptfhard/poly_io.hpp"
#include "ptfhard/ptf.hpp"
#include "ptfhard/reduction.hpp"
#include "ptfhard/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

namespace ptfhard::cli {

using nlohmann::json;

namespace {

json manifest_base(const std::string& command, std::uint64_t seed) {
    json m;
    m["tool"] = "ptfhard";
    m["tool_version"] = kVersion;
    m["command"] = command;
    m["seed"] = seed;
    return m;
}

std::string hash_tag(const std::string& contents) {
    return "fnv1a64:" + std::to_string(fnv1a64(contents));
}

struct GenLcArgs {
    int nv = 30;
    int degree = 4;
    int k = 6;
    int L = 4;
    std::uint64_t seed = 0;
    bool random = false;
    std::string out;
    std::string witness_out;
    std::string labels_out;
};

int cmd_gen_lc(const GenLcArgs& a) {
    Rng rng(a.seed, 0);
    LabelCoverInstance inst;
    Labeling planted;
    if (a.random) {
        inst = generate_random_instance(a.nv, a.degree, a.k, a.L, rng);
    } else {
        PlantedInstance pl = generate_yes_instance(a.nv, a.degree, a.k, a.L, rng);
        inst = std::move(pl.instance);
        planted = std::move(pl.planted);
    }
    const std::string inst_json = instance_to_json(inst);
    write_file(a.out, inst_json);

    json m = manifest_base("gen-lc", a.seed);
    m["params"] = {{"nv", a.nv},
                   {"degree", a.degree},
                   {"k", a.k},
                   {"L", a.L},
                   {"mode", a.random ? "random" : "planted"}};
    m["instance_hash"] = hash_tag(inst_json);

    if (!planted.empty()) {
        if (!a.labels_out.empty()) {
            write_file(a.labels_out, labeling_to_json(planted, inst.k));
            m["labels_out"] = a.labels_out;
        }
        if (!a.witness_out.empty()) {
            write_file(a.witness_out, poly_to_text(dictator_polynomial(inst, planted)));
            m["witness_out"] = a.witness_out;
        }
        std::cout << "planted instance: nv=" << inst.nv << " edges=" << inst.edges.size()
                  << " k=" << inst.k << " L=" << inst.L
                  << " planted_value=" << satisfied_fraction(inst, planted) << "\n";
    } else {
        std::cout << "random instance: nv=" << inst.nv << " edges=" << inst.edges.size()
                  << " k=" << inst.k << " L=" << inst.L << "\n";
    }
    write_file(a.out + ".manifest.json", m.dump(2) + "\n");
    return 0;
}

struct AuditLcArgs {
    std::string instance;
    std::string labels;
    double expansion_delta = 0.25;
    int expansion_trials = 50;
    std::uint64_t seed = 0;
    bool exhaustive = false;
    std::string json_out;
};

int cmd_audit_lc(const AuditLcArgs& a) {
    const LabelCoverInstance inst = instance_from_json(read_file(a.instance));
    json rep;
    rep["nv"] = inst.nv;
    rep["k"] = inst.k;
    rep["L"] = inst.L;
    rep["edges"] = inst.edges.size();

    int degree = 0;
    rep["regular"] = is_regular(inst, &degree);
    rep["degree"] = degree;
    rep["connected"] = is_connected(inst);

    const SmoothnessReport sm = smoothness_audit(inst);
    rep["smoothness_max_collision"] = sm.max_collision_prob;
    std::cout << "regular=" << (rep["regular"].get<bool>() ? "yes" : "no") << " degree=" << degree
              << " connected=" << (rep["connected"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "smoothness: max collision probability " << sm.max_collision_prob << " (vertex "
              << sm.argmax_vertex << ", labels " << sm.argmax_i << "/" << sm.argmax_j << ")\n";

    Rng rng(a.seed, 0);
    const int subset_size = std::max(1, static_cast<int>(a.expansion_delta * inst.nv));
    double worst_inside = 0;
    bool all_within = true;
    for (int t = 0; t < a.expansion_trials; ++t) {
        const auto perm = rng.permutation(inst.nv);
        const std::vector<int> subset(perm.begin(), perm.begin() + subset_size);
        const ExpansionReport ex = weak_expansion_audit(inst, subset);
        worst_inside = std::max(worst_inside, ex.inside_fraction);
        all_within = all_within && ex.within;
    }
    rep["expansion_subset_size"] = subset_size;
    rep["expansion_worst_inside_fraction"] = worst_inside;
    rep["expansion_within"] = all_within;
    std::cout << "expansion: worst inside fraction " << worst_inside << " over "
              << a.expansion_trials << " subsets of size " << subset_size
              << (all_within ? " (within bound)" : " (bound exceeded)") << "\n";

    if (a.exhaustive) {
        const double opt = exhaustive_optimum(inst);
        rep["optimum"] = opt;
        std::cout << "exhaustive optimum: " << opt << "\n";
    }
    if (!a.labels.empty()) {
        const Labeling lab = labeling_from_json(read_file(a.labels));
        const double frac = satisfied_fraction(inst, lab);
        rep["labeling_value"] = frac;
        std::cout << "labeling satisfies " << frac << " of edges\n";
    }
    if (!a.json_out.empty()) write_file(a.json_out, rep.dump(2) + "\n");
    return 0;
}

struct ReduceArgs {
    std::string instance;
    int d = 1;
    double xi = 0.1;
    long long points = 100000;
    bool fold = false;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    int threads = 1;
    double eta_override = 1e-3;
    int discretize_n = 0;
    std::string out;
    std::string csv_out;
};

int cmd_reduce(const ReduceArgs& a) {
    const LabelCoverInstance inst = instance_from_json(read_file(a.instance));
    TestParams params = TestParams::make(a.d, a.xi, inst.k);
    if (a.eta_override > 0) params.eta_override = a.eta_override;
    if (a.discretize_n > 0) params.discretize_n = a.discretize_n;

    EmitOptions opts;
    opts.seed = a.seed;
    opts.stream = a.stream;
    opts.n_points = a.points;
    opts.fold = a.fold;
    opts.threads = a.threads;
    const EmitResult res = emit_instance(inst, params, opts);
    write_dataset(a.out, res.dataset);
    write_file(a.out + ".manifest.json", res.manifest_json);
    if (!a.csv_out.empty()) write_file(a.csv_out, dataset_to_csv(res.dataset));
    std::cout << "wrote " << res.dataset.size() << " points, dim " << res.dataset.dim
              << (a.fold ? " (folded)" : " (raw)") << ", T=" << params.T << " eps=" << params.eps
              << " eta=" << params.eta() << "\n";
    return 0;
}

struct EvalArgs {
    std::string hypothesis;
    std::string data;
    std::string instance;
    int k = 0;
    double threshold = -1;
    std::string json_out;
};

int cmd_eval(const EvalArgs& a) {
    const Dataset ds = read_dataset(a.data);
    const PolyD poly = poly_from_text<double>(read_file(a.hypothesis));

    bool has_point_vars = false;
    for (const VarId& v : poly.vars())
        if (v.kind == VarKind::Point) has_point_vars = true;

    PTFHypothesis h;
    h.poly = poly;
    h.degree = poly.degree();
    if (ds.folded()) {
        if (has_point_vars) {
            if (a.instance.empty())
                throw UsageError("folded data with a vertex-coordinate hypothesis needs "
                                 "--instance to build the folding map");
            const LabelCoverInstance inst = instance_from_json(read_file(a.instance));
            const FoldingBasis fb = build_folding_basis(inst);
            h.space = PTFHypothesis::Space::Raw;
            h.dim = fb.dim;
            h.k = inst.k;
            h = to_folded(h, fb);
        } else {
            h.space = PTFHypothesis::Space::Folded;
            h.dim = static_cast<int>(ds.dim);
        }
    } else {
        h.space = PTFHypothesis::Space::Raw;
        h.dim = static_cast<int>(ds.dim);
        if (has_point_vars) {
            int k = a.k;
            if (!a.instance.empty()) k = instance_from_json(read_file(a.instance)).k;
            if (k <= 0)
                throw UsageError("vertex-coordinate hypothesis needs --instance or --k for "
                                 "the column stride");
            h.k = k;
        }
    }
    const double acc = accuracy(h, ds);
    std::cout << "accuracy " << acc << " on " << ds.size() << " points\n";
    if (!a.json_out.empty()) {
        json rep;
        rep["accuracy"] = acc;
        rep["n_points"] = ds.size();
        rep["dim"] = ds.dim;
        rep["degree"] = h.degree;
        rep["folded"] = ds.folded();
        write_file(a.json_out, rep.dump(2) + "\n");
    }
    if (a.threshold >= 0 && acc < a.threshold) {
        std::cout << "below threshold " << a.threshold << "\n";
        return 1;
    }
    return 0;
}

struct DecodeArgs {
    std::string poly;
    std::string instance;
    int d = 1;
    double xi = 0.1;
    std::uint64_t seed = 0;
    double nu = -1;
    int R = 1;
    std::string out;
    std::string json_out;
};

int cmd_decode(const DecodeArgs& a) {
    const std::string inst_json = read_file(a.instance);
    const LabelCoverInstance inst = instance_from_json(inst_json);
    const std::string poly_text = read_file(a.poly);
    const PolyD p = poly_from_text<double>(poly_text);

    const TestParams params = TestParams::make(a.d, a.xi, inst.k);
    DecodeConfig cfg = DecodeConfig::from(params);
    if (a.nu > 0) cfg.nu = a.nu;
    cfg.R = a.R;
    if (!cfg.nu_in_range(params.eps))
        std::cout << "warning: nu=" << cfg.nu << " is outside the analysed regime "
                  << "nu^2 <= eps^2 / (2 ln(2/eps))\n";

    Rng rng(a.seed, 0);
    const DecodeResult res = randomized_partial_labeling(p, inst, params, cfg, rng);
    int labeled = 0;
    for (int l : res.labeling)
        if (l >= 0) ++labeled;
    const double frac = satisfied_fraction(inst, res.labeling);
    const IntersectReport icheck = projection_intersection_check(inst, res.gamma0, res.gamma1);

    std::cout << "labeled " << labeled << "/" << inst.nv << " vertices, satisfied fraction "
              << frac << "\n";
    std::cout << "projection intersections: " << icheck.violating_edges.size() << " violations / "
              << icheck.checked_edges.size() << " checked edges\n";

    if (!a.out.empty()) write_file(a.out, labeling_to_json(res.labeling, inst.k));
    json m = manifest_base("decode", a.seed);
    m["params"] = {{"d", a.d}, {"xi", a.xi}, {"nu", cfg.nu}, {"R", cfg.R},
                   {"jstar", res.jstar}, {"dstar", res.dstar}};
    m["instance_hash"] = hash_tag(inst_json);
    m["poly_hash"] = hash_tag(poly_text);
    m["satisfied_fraction"] = frac;
    m["labeled"] = labeled;
    m["intersect_violations"] = icheck.violating_edges.size();
    if (!a.json_out.empty()) write_file(a.json_out, m.dump(2) + "\n");
    if (!a.out.empty()) write_file(a.out + ".manifest.json", m.dump(2) + "\n");
    return 0;
}

struct VerifyArgs {
    std::string lemma;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string json_out;
};

int cmd_verify(const VerifyArgs& a) {
    const LemmaReport rep = run_lemma_battery(a.lemma, a.trials, a.seed);
    std::cout << rep.lemma << ": " << rep.verdict << " (" << rep.trials << " trials, "
              << rep.violations << " violations)\n";
    for (const auto& [key, value] : rep.stats) std::cout << "  " << key << " = " << value << "\n";
    if (!a.json_out.empty()) write_file(a.json_out, rep.to_json());
    return rep.ok() ? 0 : 1;
}

struct PipelineArgs {
    std::string demo = "d1";
    std::uint64_t seed = 7;
    long long points = 20000;
    std::string out_dir = "pipeline-out";
};

int cmd_pipeline(const PipelineArgs& a) {
    if (a.demo != "d1") throw UsageError("unknown demo: " + a.demo + " (available: d1)");
    std::filesystem::create_directories(a.out_dir);
    const auto path = [&](const char* name) { return a.out_dir + "/" + name; };

    Rng gen_rng(a.seed, 0);
    const PlantedInstance pl = generate_yes_instance(30, 4, 6, 4, gen_rng);
    const std::string inst_json = instance_to_json(pl.instance);
    write_file(path("instance.json"), inst_json);
    write_file(path("labels.planted.json"), labeling_to_json(pl.planted, pl.instance.k));
    const PolyD witness = dictator_polynomial(pl.instance, pl.planted);
    write_file(path("witness.poly"), poly_to_text(witness));

    TestParams params = TestParams::make(1, 0.1, pl.instance.k);
    params.eta_override = 1e-3;
    EmitOptions opts;
    opts.seed = a.seed;
    opts.stream = 0;
    opts.n_points = a.points;
    opts.fold = true;
    const EmitResult emit = emit_instance(pl.instance, params, opts);
    write_dataset(path("data.bin"), emit.dataset);
    write_file(path("data.bin.manifest.json"), emit.manifest_json);

    const FoldingBasis fb = build_folding_basis(pl.instance);
    const PTFHypothesis folded = to_folded(dictator_linear_form(pl.instance, pl.planted), fb);
    const double acc = accuracy(folded, emit.dataset);
    const double eps_t = params.eps * params.T;
    const double threshold = 1.0 - eps_t - 3.0 * std::sqrt(eps_t / a.points);

    Rng dec_rng(a.seed, 1);
    const DecodeConfig cfg = DecodeConfig::from(params);
    const DecodeResult dec = randomized_partial_labeling(witness, pl.instance, params, cfg,
                                                         dec_rng);
    const double frac = satisfied_fraction(pl.instance, dec.labeling);
    write_file(path("labels.decoded.json"), labeling_to_json(dec.labeling, pl.instance.k));

    json m = manifest_base("pipeline", a.seed);
    m["demo"] = a.demo;
    m["points"] = a.points;
    m["instance_hash"] = hash_tag(inst_json);
    m["witness_accuracy"] = acc;
    m["accuracy_threshold"] = threshold;
    m["decoded_satisfied_fraction"] = frac;
    write_file(path("pipeline.manifest.json"), m.dump(2) + "\n");

    std::cout << "witness accuracy " << acc << " (threshold " << threshold << ")\n";
    std::cout << "decoded labeling satisfies " << frac << " of edges\n";
    if (acc < threshold) {
        std::cout << "completeness threshold missed\n";
        return 1;
    }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"hardness reduction from projection games to noisy point-sign datasets"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    GenLcArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-lc", "generate a projection-game instance");
    gen_cmd->add_option("--nv", gen.nv, "number of vertices")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--degree", gen.degree, "graph degree")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--k", gen.k, "label alphabet size")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--L", gen.L, "answer alphabet size")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "rng seed")->envname("PTFHARD_SEED");
    gen_cmd->add_flag("--random", gen.random, "uniform projections instead of a planted labeling");
    gen_cmd->add_option("--out", gen.out, "instance JSON path")->required();
    gen_cmd->add_option("--witness-out", gen.witness_out,
                        "write the planted dictator polynomial here");
    gen_cmd->add_option("--labels-out", gen.labels_out, "write the planted labeling here");

    AuditLcArgs audit;
    auto* audit_cmd = app.add_subcommand("audit-lc", "report structural properties of an instance");
    audit_cmd->add_option("--instance", audit.instance, "instance JSON path")->required();
    audit_cmd->add_option("--labels", audit.labels, "labeling JSON to score");
    audit_cmd->add_option("--expansion-delta", audit.expansion_delta,
                          "subset size fraction for the expansion check");
    audit_cmd->add_option("--expansion-trials", audit.expansion_trials,
                          "number of random subsets");
    audit_cmd->add_option("--seed", audit.seed, "rng seed")->envname("PTFHARD_SEED");
    audit_cmd->add_flag("--exhaustive", audit.exhaustive,
                        "compute the exact optimum (tiny instances only)");
    audit_cmd->add_option("--json", audit.json_out, "write the report as JSON");

    ReduceArgs red;
    auto* red_cmd = app.add_subcommand("reduce", "emit a labeled dataset from an instance");
    red_cmd->add_option("--instance", red.instance, "instance JSON path")->required();
    red_cmd->add_option("--d", red.d, "target threshold degree")->check(CLI::PositiveNumber);
    red_cmd->add_option("--xi", red.xi, "soundness margin parameter");
    red_cmd->add_option("--points", red.points, "number of points")->check(CLI::PositiveNumber);
    red_cmd->add_flag("--fold", red.fold, "project points onto the folded subspace");
    red_cmd->add_option("--seed", red.seed, "rng seed")->envname("PTFHARD_SEED");
    red_cmd->add_option("--stream", red.stream, "rng stream id");
    red_cmd->add_option("--threads", red.threads, "worker threads")->check(CLI::PositiveNumber);
    red_cmd->add_option("--eta-override", red.eta_override,
                        "completeness shift (<= 0 uses the honest derived value)");
    red_cmd->add_option("--discretize-n", red.discretize_n,
                        "replace Gaussians by +-1 averages over n signs (0 = off)");
    red_cmd->add_option("--out", red.out, "dataset path")->required();
    red_cmd->add_option("--csv", red.csv_out, "also export CSV here");

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "score a sign hypothesis on a dataset");
    eval_cmd->add_option("--hypothesis", ev.hypothesis, "polynomial text path")->required();
    eval_cmd->add_option("--data", ev.data, "dataset path")->required();
    eval_cmd->add_option("--instance", ev.instance, "instance JSON (for folding or stride)");
    eval_cmd->add_option("--k", ev.k, "column stride for vertex coordinates");
    eval_cmd->add_option("--threshold", ev.threshold, "exit 1 when accuracy falls below this");
    eval_cmd->add_option("--json", ev.json_out, "write the report as JSON");

    DecodeArgs dec;
    auto* dec_cmd = app.add_subcommand("decode", "randomized partial labeling from a polynomial");
    dec_cmd->add_option("--poly", dec.poly, "polynomial text path")->required();
    dec_cmd->add_option("--instance", dec.instance, "instance JSON path")->required();
    dec_cmd->add_option("--d", dec.d, "target threshold degree")->check(CLI::PositiveNumber);
    dec_cmd->add_option("--xi", dec.xi, "soundness margin parameter");
    dec_cmd->add_option("--seed", dec.seed, "rng seed")->envname("PTFHARD_SEED");
    dec_cmd->add_option("--nu", dec.nu, "heavy-coordinate threshold (default eps^2/2)");
    dec_cmd->add_option("--R", dec.R, "smoothness exponent in the wide threshold");
    dec_cmd->add_option("--out", dec.out, "labeling JSON path");
    dec_cmd->add_option("--json", dec.json_out, "write the report as JSON");

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "run a lemma verification battery");
    ver_cmd->add_option("--lemma", ver.lemma, "battery id")
        ->required()
        ->check(CLI::IsMember(lemma_battery_ids()));
    ver_cmd->add_option("--trials", ver.trials, "number of trials")->check(CLI::PositiveNumber);
    ver_cmd->add_option("--seed", ver.seed, "rng seed")->envname("PTFHARD_SEED");
    ver_cmd->add_option("--json", ver.json_out, "write the report as JSON");

    PipelineArgs pipe;
    auto* pipe_cmd = app.add_subcommand("pipeline", "end-to-end demo run");
    pipe_cmd->add_option("--demo", pipe.demo, "demo id (d1)")->required();
    pipe_cmd->add_option("--seed", pipe.seed, "rng seed")->envname("PTFHARD_SEED");
    pipe_cmd->add_option("--points", pipe.points, "dataset size")->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--out-dir", pipe.out_dir, "artifact directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen_lc(gen);
        if (audit_cmd->parsed()) return cmd_audit_lc(audit);
        if (red_cmd->parsed()) return cmd_reduce(red);
        if (eval_cmd->parsed()) return cmd_eval(ev);
        if (dec_cmd->parsed()) return cmd_decode(dec);
        if (ver_cmd->parsed()) return cmd_verify(ver);
        if (pipe_cmd->parsed()) return cmd_pipeline(pipe);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("ptfhard");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace ptfhard::cli
