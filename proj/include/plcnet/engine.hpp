#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcnet/core.hpp"
#include "plcnet/topology.hpp"

namespace plcnet::engine {

/// Raised when a formation run exceeds its networking-cycle budget.
class NonTermination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySample : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FormationResult {
    Micros total_us = 0;
    std::uint64_t nc_count = 0;
    std::uint64_t data_frames = 0;
    std::uint64_t preambles = 0;
    std::uint32_t joined = 0;
    /// Slot-count announcement frames (E-PMAC); excluded from T-Query/Net-Config counts.
    std::uint64_t announcement_frames = 0;
    /// Relay frames charged once per deeper session.
    std::uint64_t session_overhead_frames = 0;
    std::uint64_t sessions = 0;
    /// Times the slot allocator gave up and the session restarted from its initial count.
    std::uint64_t allocator_restarts = 0;
    std::uint32_t layers = 0;
};

/// Runs every session of a tree (CCO first, then each PCO in breadth-first
/// order), looping networking cycles until all stations have joined.
FormationResult run_formation(const topology::NetworkTree& tree, const RunConfig& cfg, std::mt19937_64& rng);

struct SummaryStats {
    double mean = 0, min = 0, max = 0, median = 0, q1 = 0, q3 = 0;
    std::size_t n_samples = 0;
};

/// Quartiles use inclusive linear interpolation: the q-quantile sits at
/// position q (n - 1) of the sorted sample.
SummaryStats summarize(std::span<const double> samples);

struct ResultRow {
    Protocol protocol = Protocol::EPMAC;
    std::uint32_t n_node = 0;
    double ratio = 0;
    std::uint32_t trial = 0;
    Micros elapsed_us = 0;
    std::uint64_t nc_count = 0;
    std::uint64_t data_frames = 0;
    std::uint64_t preambles = 0;
    std::uint32_t layers = 0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct RatioRange {
    double lo = 0.5;
    double hi = 2.0;
};

struct ExperimentPlan {
    std::vector<Protocol> protocols{std::begin(kAllProtocols), std::end(kAllProtocols)};
    std::vector<std::uint32_t> n_values;
    /// Fixed grid; ignored when ratio_random is set.
    std::vector<double> ratios;
    /// One ratio per trial drawn uniformly from the range.
    std::optional<RatioRange> ratio_random;
    std::uint32_t trials = 100;
    std::uint64_t seed = 1;
    bool multi_layer = false;
    /// Timing, allocator constants, CSMA coefficient, capacities, layer cap and NC budget.
    RunConfig base{};
    unsigned jobs = 1;

    void validate() const;
    std::size_t ratio_cells() const { return ratio_random ? 1 : ratios.size(); }
    std::size_t cell_count() const { return protocols.size() * n_values.size() * ratio_cells() * trials; }
};

/// Seed for one (protocol, n, ratio index, trial) cell.
std::uint64_t child_seed(std::uint64_t master, Protocol protocol, std::uint32_t n, std::uint32_t ratio_index,
                         std::uint32_t trial);

/// Seed for the topology and random ratio of one (n, trial) pair, shared by
/// every protocol and ratio cell so mechanisms are compared on identical trees.
std::uint64_t scenario_seed(std::uint64_t master, std::uint32_t n, std::uint32_t trial);

/// Rows ordered by (protocol, n, ratio index, trial) regardless of `jobs`.
std::vector<ResultRow> run_experiment(const ExperimentPlan& plan);

/// Inclusive arithmetic grid lo, lo + step, ... up to hi (within 1e-9).
std::vector<double> grid(double lo, double hi, double step);

}  // namespace plcnet::engine
