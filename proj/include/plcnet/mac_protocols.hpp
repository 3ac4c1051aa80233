#pragma once

// One networking cycle (NC) of each formation mechanism. An NC is a
// contention phase followed by whatever framed exchange admits the winners:
//
//   E-PMAC   slot-count announcement, PTE preambles, TDFs, MAC-address
//            frames, SDFs, ACK preambles
//   P-MAC    NET preamble, PTE preambles, three data frames per winner
//            relayed over every hop, ACK preambles
//   IEEE1901 beacon, p-persistent association requests, association
//            indications relayed over every hop
//
// Collided stations stay pending for the next NC.

#include <cstdint>
#include <random>
#include <vector>

#include "plcnet/core.hpp"
#include "plcnet/topology.hpp"

namespace plcnet::mac {

using topology::NodeIndex;

struct NcOutcome {
    std::vector<NodeIndex> joined;
    Micros elapsed_us = 0;
    std::uint64_t data_frames = 0;
    std::uint64_t preambles = 0;
    std::uint64_t slots_used = 0;
    /// Data frames spent announcing the slot count (E-PMAC first PTE only).
    std::uint64_t announcement_frames = 0;
};

/// Stations still outside the network, all children of one coordinator.
struct PendingSet {
    std::vector<NodeIndex> stas;
    std::uint32_t depth = 1;
};

struct ContentionResult {
    std::uint64_t successes = 0;
    std::uint64_t transmissions = 0;
    std::vector<bool> success;  // aligned with the contending stations
};

/// Every station picks a slot uniformly in [0, n_slot); those alone in their
/// slot succeed.
ContentionResult contend(std::uint64_t pending_count, std::uint64_t n_slot, std::mt19937_64& rng);

/// p-persistent variant: after picking a slot each station transmits with
/// probability p, otherwise it sits this NC out.
ContentionResult contend_persistent(std::uint64_t pending_count, std::uint64_t n_slot, double p,
                                    std::mt19937_64& rng);

NcOutcome simulate_nc_epmac(const PendingSet& pending, std::uint64_t n_slot, bool first_nc, const RunConfig& cfg,
                            std::mt19937_64& rng);

NcOutcome simulate_nc_pmac(const PendingSet& pending, std::uint64_t n_slot, const RunConfig& cfg,
                           std::mt19937_64& rng);

NcOutcome simulate_nc_csma(const PendingSet& pending, std::uint64_t n_slot, const RunConfig& cfg,
                           std::mt19937_64& rng);

/// Removes the stations that joined in `outcome` from `pending`.
void apply_outcome(PendingSet& pending, const NcOutcome& outcome);

}  // namespace plcnet::mac
