// relab: generate instances, run resilient-labeling experiments, verify
// dumps, and sweep parameter grids.
//
// Exit codes: 0 pass, 1 verdict fail, 2 usage or I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "relab/errors.hpp"
#include "relab/io.hpp"
#include "relab/scheme.hpp"

using nlohmann::json;
using namespace relab;

namespace {

const char* kRunSchema = "relab-run-v1";

int log_level() {
    const char* env = std::getenv("RELAB_LOG");
    if (!env) return 1;
    std::string v(env);
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "relab: " << msg << '\n';
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ParseError("cannot open output file: " + path);
    return file;
}

GraphSpec graph_spec_from_json(const json& j) {
    GraphSpec gs;
    gs.kind = graph_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("n")) gs.params.n = j["n"].get<int>();
    if (j.contains("rows")) gs.params.rows = j["rows"].get<int>();
    if (j.contains("cols")) gs.params.cols = j["cols"].get<int>();
    if (j.contains("p")) gs.params.p = j["p"].get<double>();
    if (j.contains("f")) gs.params.f = j["f"].get<int>();
    if (j.contains("tail")) gs.params.tail = j["tail"].get<int>();
    if (j.contains("seed")) gs.seed = j["seed"].get<std::uint64_t>();
    return gs;
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "relab run: cannot open config: " << config_path << '\n';
        return 2;
    }
    json cfg;
    SchemeResult sr;
    Graph* graph_ptr = nullptr;
    json out;
    try {
        in >> cfg;
        Graph g = cfg.contains("graph_file") ? read_graph_file(cfg["graph_file"].get<std::string>())
                                             : [&] {
                                                   GraphSpec gs = graph_spec_from_json(cfg.at("graph"));
                                                   return generate(gs.kind, gs.params, gs.seed);
                                               }();
        graph_ptr = &g;
        int F = cfg.at("F").get<int>();
        int f_factor = cfg.value("f_factor", 1);
        int ell = cfg.value("ell", 0);
        std::string codec_name = cfg.value("codec", std::string("mds"));
        auto codec = make_codec(codec_name, F);
        std::uint64_t seed = cfg.value("seed", 0);
        Labeling phi = cfg.contains("labeling_file")
                           ? [&] {
                                 std::ifstream lf(cfg["labeling_file"].get<std::string>());
                                 if (!lf) throw ParseError("cannot open labeling file");
                                 return read_labeling(lf, g);
                             }()
                           : random_labeling(g, ell, seed);
        Adversary adv;
        if (cfg.contains("adversary")) {
            const json& a = cfg["adversary"];
            adv.kind = adversary_kind_from_string(a.value("strategy", std::string("random_k")));
            adv.seed = a.value("seed", seed);
            adv.index = a.value("index", 0);
            if (a.contains("nodes"))
                for (const auto& v : a["nodes"]) adv.explicit_nodes.push_back(v.get<NodeId>());
        } else {
            adv.seed = seed;
        }
        int B = cfg.value("bandwidth", 0);
        log_info("running scheme on n=" + std::to_string(g.node_count()) + " F=" + std::to_string(F));
        sr = run_scheme(g, F, phi, *codec, f_factor, adv, B);

        out["schema"] = kRunSchema;
        out["graph"] = {{"n", g.node_count()}, {"m", g.edge_count()}};
        out["params"] = {{"F", F},           {"f", f_factor * F},   {"f_factor", f_factor},
                         {"ell", phi.ell},   {"codec", codec_name}, {"seed", seed},
                         {"bandwidth", sr.bandwidth_bits}};
        out["erased"] = sr.erased;
        out["verdict"] = {{"pass", sr.verdict.pass()},
                          {"restore", sr.verdict.restore},
                          {"partition", sr.verdict.partition},
                          {"decode", sr.verdict.decode}};
        out["metrics"] = {{"rounds", sr.metrics.rounds_used},
                          {"budget", sr.round_budget},
                          {"peak_edge_bits", sr.metrics.peak_edge_bits},
                          {"total_messages", sr.metrics.total_messages}};
        json phases = json::array();
        for (const auto& p : sr.metrics.phases)
            phases.push_back({{"name", p.name}, {"start", p.start}, {"length", p.length}});
        out["metrics"]["phases"] = phases;
        out["overhead"] = {{"A_num", sr.overhead.a_num},
                           {"A_den", sr.overhead.a_den},
                           {"B_add", sr.overhead.b_add},
                           {"max_label_bits", sr.overhead.max_label_bits},
                           {"ell", sr.overhead.ell}};
    } catch (const json::exception& e) {
        std::cerr << "relab run: config error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "relab run: " << e.what() << '\n';
        return 2;
    } catch (const InvalidParams& e) {
        std::cerr << "relab run: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "relab run: execution failed: " << e.what() << '\n';
        return 1;
    }
    (void)graph_ptr;
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << out.dump(2) << '\n';
    bool pass = out["verdict"]["pass"].get<bool>() &&
                out["metrics"]["rounds"].get<int>() <= out["metrics"]["budget"].get<int>();
    return pass ? 0 : 1;
}

int cmd_verify(const std::string& graph_path, const std::string& ruling_path,
               const std::string& partition_path, int f) {
    Graph g = read_graph_file(graph_path);
    bool all_ok = true;
    auto report_out = [&](const char* what, const VerifyReport& rep) {
        if (rep.ok) {
            std::cout << "[PASS] " << what << '\n';
        } else {
            all_ok = false;
            const auto& v = rep.violations.front();
            std::cout << "[FAIL] " << what << ": " << v.property << ": " << v.detail << '\n';
        }
    };
    if (!ruling_path.empty()) {
        std::ifstream in(ruling_path);
        if (!in) throw ParseError("cannot open ruling set dump: " + ruling_path);
        RulingSet rs = read_ruling_dump(in, g, f);
        report_out("ruling-set", verify_ruling_set(g, rs));
    }
    if (!partition_path.empty()) {
        std::ifstream in(partition_path);
        if (!in) throw ParseError("cannot open partition dump: " + partition_path);
        PartitionResult pr = read_partition_dump(in, g);
        report_out("partition", verify_partition(g, pr, f));
    }
    return all_ok ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& series_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "relab sweep: cannot open config: " << config_path << '\n';
        return 2;
    }
    SweepConfig sc;
    try {
        json cfg;
        in >> cfg;
        for (const auto& gj : cfg.at("graphs")) sc.graphs.push_back(graph_spec_from_json(gj));
        sc.Fs = cfg.at("F").get<std::vector<int>>();
        sc.f_factors = cfg.value("f_factor", std::vector<int>{1});
        sc.ells = cfg.at("ell").get<std::vector<int>>();
        sc.codecs = cfg.value("codec", std::vector<std::string>{"mds"});
        for (const auto& a : cfg.value("adversary", std::vector<std::string>{"random_k"}))
            sc.adversaries.push_back(adversary_kind_from_string(a));
        for (const auto& s : cfg.value("seeds", std::vector<std::uint64_t>{1}))
            sc.seeds.push_back(s);
        sc.bandwidth_override = cfg.value("bandwidth", 0);
    } catch (const std::exception& e) {
        std::cerr << "relab sweep: config error: " << e.what() << '\n';
        return 2;
    }
    std::vector<SweepRow> rows;
    try {
        rows = sweep(sc);
    } catch (const Error& e) {
        std::cerr << "relab sweep: " << e.what() << '\n';
        return 2;
    }
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    write_sweep_csv(os, rows);
    if (!series_path.empty()) {
        std::ofstream sf(series_path);
        if (!sf) {
            std::cerr << "relab sweep: cannot open series file\n";
            return 2;
        }
        write_sweep_series(sf, rows);
    }
    int failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;
    std::cerr << "sweep: " << rows.size() << " cells, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resilient labeling scheme toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    std::string gen_kind;
    int gen_n = 0, gen_rows = 0, gen_cols = 0, gen_f = 1, gen_tail = 0;
    double gen_p = 0.1;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("kind", gen_kind, "path|cycle|grid|random_tree|gnp|gadget")->required();
    gen->add_option("n", gen_n, "node count (path, cycle, random_tree, gnp)");
    gen->add_option("--rows", gen_rows, "grid rows");
    gen->add_option("--cols", gen_cols, "grid cols");
    gen->add_option("--p", gen_p, "gnp edge probability");
    gen->add_option("--f", gen_f, "gadget parameter f");
    gen->add_option("--tail", gen_tail, "gadget tail length");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    // run
    auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
    std::string run_config, run_out;
    run->add_option("config", run_config,
                    "JSON config: graph|graph_file, F, f_factor, ell, codec, seed, adversary{strategy,"
                    "seed,index,nodes}, bandwidth, labeling_file")
        ->required();
    run->add_option("-o,--out", run_out, "result JSON file (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "verify ruling-set / partition dumps");
    std::string v_graph, v_ruling, v_partition;
    int v_f = 1;
    verify->add_option("--graph", v_graph, "graph file")->required();
    verify->add_option("--rulingset", v_ruling, "ruling set dump (ID b distS lines)");
    verify->add_option("--partition", v_partition, "partition dump");
    verify->add_option("--f", v_f, "parameter f the dumps were built for")->required();

    // sweep
    auto* sw = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
    std::string sw_config, sw_out, sw_series;
    sw->add_option("config", sw_config,
                   "JSON config: graphs[], F[], f_factor[], ell[], codec[], adversary[], seeds[]")
        ->required();
    sw->add_option("-o,--out", sw_out, "CSV output (default stdout)");
    sw->add_option("--series", sw_series, "per-(F, ell) mean-rounds CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            GenParams params;
            params.n = gen_n;
            params.rows = gen_rows;
            params.cols = gen_cols;
            params.p = gen_p;
            params.f = gen_f;
            params.tail = gen_tail;
            Graph g = generate(graph_kind_from_string(gen_kind), params, gen_seed);
            std::ofstream file;
            std::ostream& os = open_out(file, gen_out);
            write_graph(os, g);
            return 0;
        }
        if (run->parsed()) return cmd_run(run_config, run_out);
        if (verify->parsed()) return cmd_verify(v_graph, v_ruling, v_partition, v_f);
        if (sw->parsed()) return cmd_sweep(sw_config, sw_out, sw_series);
    } catch (const ParseError& e) {
        std::cerr << "relab: " << e.what() << '\n';
        return 2;
    } catch (const InvalidParams& e) {
        std::cerr << "relab: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "relab: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
