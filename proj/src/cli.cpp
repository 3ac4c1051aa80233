#include "plcnet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "plcnet/complexity.hpp"
#include "plcnet/phy_timing.hpp"
#include "plcnet/results_csv.hpp"
#include "plcnet/topology.hpp"

namespace plcnet::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepOptions {
    std::vector<std::string> protocols{"epmac", "pmac", "ieee1901"};
    std::vector<std::uint32_t> n;
    std::vector<std::uint32_t> n_range;
    std::vector<double> ratios;
    std::vector<double> ratio_random;
    std::uint32_t trials = 100;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string out;
    std::string timing_file;
    RunConfig base{};
};

struct Options {
    std::string config;
    SweepOptions single;
    SweepOptions multi;

    std::string summarize_in;
    std::string summarize_out;
    bool by_ratio = false;
    bool best_ratio = false;

    std::uint32_t m_min = 2, m_max = 10, k_min = 1, k_max = 6;

    std::uint32_t tree_n = 20;
    std::uint32_t tree_layers = 6;
    std::uint64_t tree_seed = 1;
};

void add_sweep_options(CLI::App& sub, SweepOptions& o, std::string& config) {
    sub.add_option("--protocols", o.protocols, "Mechanisms to simulate: epmac, pmac, ieee1901")->capture_default_str();
    sub.add_option("--n", o.n, "Station counts");
    sub.add_option("--n-range", o.n_range, "Station counts LO HI STEP")->expected(3);
    sub.add_option("--ratios", o.ratios, "Slot-to-station ratios");
    sub.add_option("--ratio-random", o.ratio_random, "Draw one ratio per trial uniformly from LO HI")->expected(2);
    sub.add_option("--trials", o.trials, "Trials per grid cell")->capture_default_str()->check(CLI::PositiveNumber);
    sub.add_option("--seed", o.seed, "Master seed")->capture_default_str();
    sub.add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub.add_option("--out", o.out, "Write CSV here instead of stdout");
    sub.add_option("--timing", o.timing_file, "Slot timing table (key = value lines)");
    sub.add_option("--max-layers", o.base.max_layers, "Maximum tree depth")->capture_default_str();
    sub.add_option("--eta-min", o.base.alloc_params.eta_min, "Allocator success-rate threshold")->capture_default_str();
    sub.add_option("--tfmax", o.base.alloc_params.t_f_max, "Allocator empty-PTE streak limit")->capture_default_str();
    sub.add_option("--k1", o.base.alloc_params.k1, "Allocator growth under light success")->capture_default_str();
    sub.add_option("--k2", o.base.alloc_params.k2, "Allocator growth under total collision")->capture_default_str();
    sub.add_option("--csma-p", o.base.csma_p, "p-persistent CSMA coefficient")->capture_default_str();
    sub.add_option("--tdf-capacity", o.base.tdf_capacity, "Time differences per TDF")->capture_default_str();
    sub.add_option("--sdf-capacity", o.base.sdf_capacity, "SID/MAC pairs per SDF")->capture_default_str();
    sub.add_option("--max-nc", o.base.max_nc, "Networking-cycle budget per formation")->capture_default_str();
    sub.add_option("--config", config, "Flat key = value file supplying defaults for these flags");
}

std::unique_ptr<CLI::App> build_app(Options& o) {
    auto app = std::make_unique<CLI::App>("Network-formation time simulator for PLC MAC mechanisms", "plcnet");
    app->require_subcommand(1);

    auto* single = app->add_subcommand("sweep-single", "Single-layer sweep over station counts and slot ratios");
    add_sweep_options(*single, o.single, o.config);

    auto* multi = app->add_subcommand("sweep-multi", "Multi-layer sweep over random tree topologies");
    add_sweep_options(*multi, o.multi, o.config);

    auto* summarize = app->add_subcommand("summarize", "Summary statistics of a sweep CSV");
    summarize->add_option("input", o.summarize_in, "CSV file (default: stdin)");
    summarize->add_option("--out", o.summarize_out, "Write table here instead of stdout");
    summarize->add_flag("--by-ratio", o.by_ratio, "Group by ratio as well");
    summarize->add_flag("--best-ratio", o.best_ratio, "Keep the ratio with the lowest mean per (protocol, n)");
    summarize->add_option("--config", o.config, "Flat key = value file supplying defaults for these flags");

    auto* complexity = app->add_subcommand("complexity", "Data-frame counts over an (M, K) grid");
    complexity->add_option("--m-min", o.m_min)->capture_default_str()->check(CLI::Range(2u, 1000u));
    complexity->add_option("--m-max", o.m_max)->capture_default_str()->check(CLI::Range(2u, 1000u));
    complexity->add_option("--k-min", o.k_min)->capture_default_str()->check(CLI::Range(1u, 30u));
    complexity->add_option("--k-max", o.k_max)->capture_default_str()->check(CLI::Range(1u, 30u));
    complexity->add_option("--config", o.config, "Flat key = value file supplying defaults for these flags");

    app->add_subcommand("timing", "Frame air-times and slot table");

    auto* tree = app->add_subcommand("tree", "Print a random topology as `child parent depth` lines");
    tree->add_option("--n", o.tree_n)->capture_default_str()->check(CLI::PositiveNumber);
    tree->add_option("--max-layers", o.tree_layers)->capture_default_str()->check(CLI::PositiveNumber);
    tree->add_option("--seed", o.tree_seed)->capture_default_str();
    return app;
}

// CLI11 parses a reversed argument vector.
void parse(CLI::App& app, const std::vector<std::string>& args) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
}

std::vector<std::string> whitespace_split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Appends config entries for every flag the command line left unset, so
// explicit flags win.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& parsed,
                                      const std::string& config_path) {
    CLI::App* sub = parsed.get_subcommands().front();
    std::vector<std::string> merged = args;
    for (const auto& [key, value] : parse_config(read_file(config_path))) {
        if (key == "config") throw UsageError("config files cannot include other config files");
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw UsageError(fmt::format("unknown config key '{}' for {}", key, sub->get_name()));
        if (opt->count() > 0) continue;
        if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") merged.push_back("--" + key);
            continue;
        }
        merged.push_back("--" + key);
        for (auto& v : whitespace_split(value)) merged.push_back(v);
    }
    return merged;
}

engine::ExperimentPlan make_plan(const SweepOptions& o, bool multi_layer) {
    engine::ExperimentPlan plan;
    plan.protocols.clear();
    for (const auto& tag : o.protocols) {
        // Accept comma-separated lists as well as repeated values.
        std::string_view rest = tag;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = rest.substr(0, comma);
            const auto p = parse_protocol(item);
            if (!p) throw UsageError(fmt::format("unknown protocol '{}'", item));
            plan.protocols.push_back(*p);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }

    if (!o.n.empty() && !o.n_range.empty()) throw UsageError("--n and --n-range are mutually exclusive");
    if (!o.n.empty()) {
        plan.n_values = o.n;
    } else {
        const auto range = o.n_range.empty() ? (multi_layer ? std::vector<std::uint32_t>{200, 1200, 200}
                                                             : std::vector<std::uint32_t>{50, 650, 100})
                                             : o.n_range;
        if (range[2] == 0 || range[0] == 0 || range[1] < range[0]) throw UsageError("--n-range needs 0 < LO <= HI, STEP > 0");
        for (std::uint32_t v = range[0]; v <= range[1]; v += range[2]) plan.n_values.push_back(v);
    }

    if (!o.ratios.empty() && !o.ratio_random.empty()) throw UsageError("--ratios and --ratio-random are mutually exclusive");
    if (!o.ratio_random.empty()) {
        plan.ratio_random = engine::RatioRange{o.ratio_random[0], o.ratio_random[1]};
    } else {
        plan.ratios = o.ratios.empty() ? engine::grid(0.5, 2.0, 0.25) : o.ratios;
    }

    plan.trials = o.trials;
    plan.seed = o.seed;
    plan.jobs = o.jobs;
    plan.multi_layer = multi_layer;
    plan.base = o.base;
    if (!o.timing_file.empty()) plan.base.timing = timing_table_from_text(read_file(o.timing_file));
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return plan;
}

// Writes to --out when given, otherwise to `out`.
template <typename Emit>
void emit(const std::string& path, std::ostream& out, Emit body) {
    if (path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(path);
    if (!file) throw UsageError("cannot write " + path);
    body(file);
}

int cmd_sweep(const SweepOptions& o, bool multi_layer, std::ostream& out) {
    const auto plan = make_plan(o, multi_layer);
    const auto rows = engine::run_experiment(plan);
    emit(o.out, out, [&](std::ostream& os) { csv::write_rows(os, rows); });
    return kOk;
}

int cmd_summarize(const Options& o, std::ostream& out) {
    std::vector<engine::ResultRow> rows;
    try {
        if (o.summarize_in.empty()) {
            rows = csv::read_rows(std::cin);
        } else {
            std::ifstream in(o.summarize_in);
            if (!in) throw UsageError("cannot open " + o.summarize_in);
            rows = csv::read_rows(in);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    if (rows.empty()) throw UsageError("no rows to summarize");
    const auto groups = summarize_rows(rows, o.by_ratio, o.best_ratio);
    emit(o.summarize_out, out, [&](std::ostream& os) {
        fmt::print(os, "protocol,n_node,ratio,n_samples,mean_us,min_us,q1_us,median_us,q3_us,max_us\n");
        for (const auto& g : groups) {
            const auto& s = g.stats;
            fmt::print(os, "{},{},{},{},{:.1f},{:.1f},{:.1f},{:.1f},{:.1f},{:.1f}\n", protocol_tag(g.protocol), g.n_node,
                       g.ratio ? fmt::format("{}", *g.ratio) : std::string("all"), s.n_samples, s.mean, s.min, s.q1,
                       s.median, s.q3, s.max);
        }
    });
    return kOk;
}

int cmd_complexity(const Options& o, std::ostream& out) {
    if (o.m_min > o.m_max || o.k_min > o.k_max) throw UsageError("empty (M, K) grid");
    fmt::print(out, "M,K,N_pmac,N_epmac,closed_forms_match,delta_exact,delta_asymptotic,delta_approx\n");
    for (std::uint32_t m = o.m_min; m <= o.m_max; ++m) {
        for (std::uint32_t k = o.k_min; k <= o.k_max; ++k) {
            const complexity::TreeShape shape{m, k};
            const auto pmac = complexity::pmac_total_frames(shape);
            const auto epmac = complexity::epmac_total_frames(shape);
            const auto delta = complexity::delta_sta(shape);
            fmt::print(out, "{},{},{},{},{},{:.4f},{:.4f},{}\n", m, k, pmac.by_recurrence.str(),
                       epmac.by_recurrence.str(), pmac.agree() && epmac.agree() ? "yes" : "NO", delta.exact_value(),
                       delta.asymptotic_value(), delta.approx);
        }
    }
    return kOk;
}

int cmd_timing(std::ostream& out) {
    using namespace phy_timing;
    const auto beacon = ieee1901_frame_time({kIeeeBeaconBits, kIeeeCarriers});
    const auto message = ieee1901_frame_time({kIeeeMessageBits, kIeeeCarriers});
    FdplcPhyParams fd;
    const auto fd_frac = fdplc_data_frame_time(fd);
    fd.fractional_symbols = false;
    const auto fd_int = fdplc_data_frame_time(fd);
    const auto preamble = fdplc_preamble_time(kFdplcPreambleSymbols, kFdplcPreambleSymbolUs);
    const auto table = default_timing_table();

    fmt::print(out, "item,computed_us,quoted_us,slot_us\n");
    fmt::print(out, "ieee1901 beacon ({} bits / {} carriers),{:.2f},{:.0f},{}\n", kIeeeBeaconBits, kIeeeCarriers, beacon,
               kIeeeQuotedBeaconUs, table.central_beacon_slot_us);
    fmt::print(out, "ieee1901 assoc message ({} bits / {} carriers),{:.2f},{:.0f},{}\n", kIeeeMessageBits,
               kIeeeCarriers, message, kIeeeQuotedMessageUs, table.assoc_req_slot_us);
    fmt::print(out, "fdplc data frame (fractional symbols),{:.2f},10232,{}\n", fd_frac, table.data_frame_slot_us);
    fmt::print(out, "fdplc data frame (whole symbols),{:.2f},,{}\n", fd_int, table.data_frame_slot_us);
    fmt::print(out, "fdplc preamble ({} x {} us),{:.2f},256,{}\n", kFdplcPreambleSymbols, kFdplcPreambleSymbolUs,
               preamble, table.preamble_slot_us);
    fmt::print(out, "\nslot table:\n{}", to_text(table));
    fmt::print(out,
               "\nnote: the IEEE1901.1 frame-time formula gives {:.2f} and {:.2f} us for the beacon and message "
               "lengths, not the quoted {:.0f} and {:.0f} us; simulations use the slot table above.\n",
               beacon, message, kIeeeQuotedBeaconUs, kIeeeQuotedMessageUs);
    return kOk;
}

int cmd_tree(const Options& o, std::ostream& out) {
    std::mt19937_64 rng(o.tree_seed);
    out << topology::generate_tree(o.tree_n, o.tree_layers, rng).edge_list();
    return kOk;
}

int dispatch(const Options& o, const CLI::App& app, std::ostream& out) {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "sweep-single") return cmd_sweep(o.single, false, out);
    if (name == "sweep-multi") return cmd_sweep(o.multi, true, out);
    if (name == "summarize") return cmd_summarize(o, out);
    if (name == "complexity") return cmd_complexity(o, out);
    if (name == "timing") return cmd_timing(out);
    return cmd_tree(o, out);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string{};
        return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(fmt::format("config line {}: expected key = value", line_no));
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        if (key.empty()) throw UsageError(fmt::format("config line {}: empty key", line_no));
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::vector<GroupSummary> summarize_rows(const std::vector<engine::ResultRow>& rows, bool by_ratio, bool best_ratio) {
    using Key = std::tuple<Protocol, std::uint32_t, double>;
    const bool keep_ratio = by_ratio || best_ratio;
    std::map<Key, std::vector<double>> groups;
    for (const auto& r : rows) {
        groups[{r.protocol, r.n_node, keep_ratio ? r.ratio : 0.0}].push_back(static_cast<double>(r.elapsed_us));
    }

    std::vector<GroupSummary> out;
    for (const auto& [key, samples] : groups) {
        GroupSummary g{std::get<0>(key), std::get<1>(key), std::nullopt, engine::summarize(samples)};
        if (keep_ratio) g.ratio = std::get<2>(key);
        if (best_ratio && !out.empty() && out.back().protocol == g.protocol && out.back().n_node == g.n_node) {
            if (g.stats.mean < out.back().stats.mean) out.back() = g;
            continue;
        }
        out.push_back(g);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options options;
    auto app = build_app(options);
    try {
        parse(*app, args);
        if (!options.config.empty()) {
            const auto merged = merge_config(args, *app, options.config);
            options = Options{};
            app = build_app(options);
            parse(*app, merged);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app->exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        return dispatch(options, *app, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const engine::NonTermination& e) {
        err << "simulation error: " << e.what() << '\n';
        return kSimulation;
    } catch (const std::exception& e) {
        err << "simulation error: " << e.what() << '\n';
        return kSimulation;
    }
}

}  // namespace plcnet::cli
