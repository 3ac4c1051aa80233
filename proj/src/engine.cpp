#include "plcnet/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "plcnet/mac_protocols.hpp"
#include "plcnet/slot_alloc.hpp"

namespace plcnet::engine {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto p : parts) h = splitmix64(h ^ p);
    return h;
}

// ceil(ratio * pending), but never fewer than two slots for two or more
// stations: a single slot shared by several stations collides forever.
std::uint64_t initial_slots(double ratio, std::size_t pending) {
    const std::uint64_t floor = std::min<std::uint64_t>(pending, 2);
    return std::max<std::uint64_t>({1, floor, scaled_ceil(ratio, pending)});
}

struct SessionTotals {
    FormationResult& total;
    const RunConfig& cfg;
    std::uint64_t nc_budget_left;

    void add(const mac::NcOutcome& nc) {
        if (nc_budget_left == 0) {
            throw NonTermination(fmt::format("formation exceeded {} networking cycles", cfg.max_nc));
        }
        --nc_budget_left;
        ++total.nc_count;
        total.total_us += nc.elapsed_us;
        total.data_frames += nc.data_frames;
        total.preambles += nc.preambles;
        total.announcement_frames += nc.announcement_frames;
        total.joined += static_cast<std::uint32_t>(nc.joined.size());
    }
};

void run_epmac_session(mac::PendingSet pending, SessionTotals& acc, std::mt19937_64& rng) {
    AllocParams params = acc.cfg.alloc_params;
    params.n0 = initial_slots(acc.cfg.slot_ratio, pending.stas.size());
    auto state = slot_alloc::fresh_state(params);
    while (!pending.stas.empty()) {
        std::uint64_t n_slot = slot_alloc::next_slot_count(state);
        if (n_slot == 0) {
            // The allocator gave up with stations still waiting; start over as a fresh first PTE.
            state = slot_alloc::fresh_state(params);
            ++acc.total.allocator_restarts;
            n_slot = slot_alloc::next_slot_count(state);
        }
        const auto nc = mac::simulate_nc_epmac(pending, n_slot, state.t_pte == 0, acc.cfg, rng);
        state = slot_alloc::record_pte(state, n_slot, nc.joined.size());
        acc.add(nc);
        mac::apply_outcome(pending, nc);
    }
}

template <typename SimulateNc>
void run_recomputed_session(mac::PendingSet pending, SessionTotals& acc, std::mt19937_64& rng, SimulateNc simulate) {
    while (!pending.stas.empty()) {
        const auto nc = simulate(pending, initial_slots(acc.cfg.slot_ratio, pending.stas.size()), acc.cfg, rng);
        acc.add(nc);
        mac::apply_outcome(pending, nc);
    }
}

}  // namespace

FormationResult run_formation(const topology::NetworkTree& tree, const RunConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    FormationResult result;
    result.layers = tree.max_depth();
    SessionTotals acc{result, cfg, cfg.max_nc};

    for (const auto coordinator : tree.coordinators_bfs()) {
        mac::PendingSet pending{tree.children(coordinator), tree.depth(coordinator) + 1};
        if (pending.stas.empty()) continue;
        ++result.sessions;

        // Beacon down to the PCO and its report back up, relayed over k - 1 hops each way.
        if (pending.depth >= 2 && cfg.protocol != Protocol::IEEE1901) {
            const std::uint64_t relay = 2 * static_cast<std::uint64_t>(pending.depth - 1);
            result.session_overhead_frames += relay;
            result.data_frames += relay;
            result.total_us += static_cast<Micros>(relay) * cfg.timing.data_frame_slot_us;
        }

        switch (cfg.protocol) {
            case Protocol::EPMAC:
                run_epmac_session(std::move(pending), acc, rng);
                break;
            case Protocol::PMAC:
                run_recomputed_session(std::move(pending), acc, rng, mac::simulate_nc_pmac);
                break;
            case Protocol::IEEE1901:
                run_recomputed_session(std::move(pending), acc, rng, mac::simulate_nc_csma);
                break;
        }
    }
    return result;
}

SummaryStats summarize(std::span<const double> samples) {
    if (samples.empty()) throw EmptySample("summarize: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    SummaryStats s;
    s.n_samples = sorted.size();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    return s;
}

void ExperimentPlan::validate() const {
    if (trials < 1) throw std::invalid_argument("plan: trials must be at least 1");
    if (protocols.empty()) throw std::invalid_argument("plan: no protocols");
    if (n_values.empty()) throw std::invalid_argument("plan: no station counts");
    for (auto n : n_values) {
        if (n < 1) throw std::invalid_argument("plan: station counts must be positive");
    }
    if (ratio_random) {
        if (!(ratio_random->lo > 0.0 && ratio_random->lo <= ratio_random->hi)) {
            throw std::invalid_argument("plan: random ratio range must satisfy 0 < lo <= hi");
        }
    } else {
        if (ratios.empty()) throw std::invalid_argument("plan: no slot ratios");
        for (auto r : ratios) {
            if (!(r > 0.0)) throw std::invalid_argument("plan: slot ratios must be positive");
        }
    }
    RunConfig probe = base;
    probe.n_node = 1;
    probe.slot_ratio = 1.0;
    probe.validate();
}

std::uint64_t child_seed(std::uint64_t master, Protocol protocol, std::uint32_t n, std::uint32_t ratio_index,
                         std::uint32_t trial) {
    return mix({master, 0x6d6163ULL, static_cast<std::uint64_t>(protocol), n, ratio_index, trial});
}

std::uint64_t scenario_seed(std::uint64_t master, std::uint32_t n, std::uint32_t trial) {
    return mix({master, 0x747265ULL, n, trial});
}

std::vector<ResultRow> run_experiment(const ExperimentPlan& plan) {
    plan.validate();
    const std::size_t n_ratio = plan.ratio_cells();
    const std::size_t per_protocol = plan.n_values.size() * n_ratio * plan.trials;
    const std::size_t cells = plan.cell_count();

    std::vector<ResultRow> rows(cells);
    std::vector<std::exception_ptr> errors(cells);

    const auto run_cell = [&](std::size_t index) {
        std::size_t rest = index;
        const auto trial = static_cast<std::uint32_t>(rest % plan.trials);
        rest /= plan.trials;
        const auto ratio_index = static_cast<std::uint32_t>(rest % n_ratio);
        rest /= n_ratio;
        const std::uint32_t n = plan.n_values[rest % plan.n_values.size()];
        const Protocol protocol = plan.protocols[index / per_protocol];

        const std::uint64_t scenario = scenario_seed(plan.seed, n, trial);
        double ratio = 0;
        if (plan.ratio_random) {
            std::mt19937_64 ratio_rng(splitmix64(scenario ^ 0x726174ULL));
            ratio = std::uniform_real_distribution<double>(plan.ratio_random->lo, plan.ratio_random->hi)(ratio_rng);
        } else {
            ratio = plan.ratios[ratio_index];
        }

        RunConfig cfg = plan.base;
        cfg.protocol = protocol;
        cfg.n_node = n;
        cfg.slot_ratio = ratio;
        cfg.multi_layer = plan.multi_layer;
        cfg.seed = child_seed(plan.seed, protocol, n, ratio_index, trial);

        std::mt19937_64 tree_rng(scenario);
        const auto tree = plan.multi_layer ? topology::generate_tree(n, cfg.max_layers, tree_rng)
                                           : topology::single_layer(n);
        std::mt19937_64 rng(cfg.seed);
        FormationResult r;
        try {
            r = run_formation(tree, cfg, rng);
        } catch (const NonTermination& e) {
            throw NonTermination(fmt::format("{} (protocol={} n={} ratio={} trial={})", e.what(),
                                             protocol_tag(protocol), n, ratio, trial));
        }
        rows[index] = ResultRow{protocol,      n,           ratio,         trial, r.total_us,
                                r.nc_count,    r.data_frames, r.preambles, r.layers};
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(plan.jobs, static_cast<unsigned>(cells)));
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < cells; i = next++) {
            try {
                run_cell(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

std::vector<double> grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("grid: need step > 0 and hi >= lo");
    std::vector<double> out;
    for (std::size_t i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + 1e-9) break;
        out.push_back(v);
    }
    return out;
}

}  // namespace plcnet::engine
