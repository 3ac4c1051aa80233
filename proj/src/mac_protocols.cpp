#include "plcnet/mac_protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace plcnet::mac {

namespace {

constexpr std::uint64_t kNoSlot = ~std::uint64_t{0};

// Marks every entry of `slots` (kNoSlot = silent) that is alone in its slot.
ContentionResult resolve(const std::vector<std::uint64_t>& slots, std::uint64_t n_slot) {
    ContentionResult out;
    out.success.assign(slots.size(), false);
    if (n_slot <= 8 * slots.size() + 64) {
        std::vector<std::uint32_t> load(n_slot, 0);
        for (auto s : slots) {
            if (s != kNoSlot) ++load[s];
        }
        out.transmissions = slots.size() - static_cast<std::size_t>(std::count(slots.begin(), slots.end(), kNoSlot));
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i] != kNoSlot && load[slots[i]] == 1) {
                out.success[i] = true;
                ++out.successes;
            }
        }
        return out;
    }
    // Sparse case: n_slot may be far larger than the station count.
    std::vector<std::uint64_t> sorted;
    sorted.reserve(slots.size());
    for (auto s : slots) {
        if (s != kNoSlot) sorted.push_back(s);
    }
    std::sort(sorted.begin(), sorted.end());
    out.transmissions = sorted.size();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] == kNoSlot) continue;
        const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), slots[i]);
        if (hi - lo == 1) {
            out.success[i] = true;
            ++out.successes;
        }
    }
    return out;
}

void require_slots(std::uint64_t n_slot) {
    if (n_slot == 0) throw std::invalid_argument("an NC needs at least one contention slot");
}

std::vector<NodeIndex> winners(const PendingSet& pending, const ContentionResult& c) {
    std::vector<NodeIndex> out;
    out.reserve(c.successes);
    for (std::size_t i = 0; i < pending.stas.size(); ++i) {
        if (c.success[i]) out.push_back(pending.stas[i]);
    }
    return out;
}

}  // namespace

ContentionResult contend(std::uint64_t pending_count, std::uint64_t n_slot, std::mt19937_64& rng) {
    require_slots(n_slot);
    std::uniform_int_distribution<std::uint64_t> pick(0, n_slot - 1);
    std::vector<std::uint64_t> slots(pending_count);
    for (auto& s : slots) s = pick(rng);
    return resolve(slots, n_slot);
}

ContentionResult contend_persistent(std::uint64_t pending_count, std::uint64_t n_slot, double p,
                                    std::mt19937_64& rng) {
    require_slots(n_slot);
    std::uniform_int_distribution<std::uint64_t> pick(0, n_slot - 1);
    std::bernoulli_distribution transmit(p);
    std::vector<std::uint64_t> slots(pending_count);
    for (auto& s : slots) {
        s = pick(rng);
        if (!transmit(rng)) s = kNoSlot;
    }
    return resolve(slots, n_slot);
}

NcOutcome simulate_nc_epmac(const PendingSet& pending, std::uint64_t n_slot, bool first_nc, const RunConfig& cfg,
                            std::mt19937_64& rng) {
    const TimingTable& t = cfg.timing;
    const auto c = contend(pending.stas.size(), n_slot, rng);
    const std::uint64_t s = c.successes;

    NcOutcome out;
    out.joined = winners(pending, c);
    out.slots_used = n_slot;

    // The first PTE of a session replaces the NET preamble with a data frame
    // carrying the slot count; later PTEs derive it from the shared allocator history.
    if (first_nc) {
        out.elapsed_us += t.data_frame_slot_us;
        out.data_frames += 1;
        out.announcement_frames = 1;
    } else {
        out.elapsed_us += t.preamble_slot_us;
        out.preambles += 1;
    }
    out.elapsed_us += static_cast<Micros>(n_slot) * t.preamble_slot_us;
    out.preambles += n_slot;
    if (s == 0) return out;

    // T-Query: TDFs, then one MAC-address frame per matched station.
    const std::uint64_t tdfs = ceil_div(s, cfg.tdf_capacity);
    // Net-Config: SDFs, then one ACK preamble per joined station.
    const std::uint64_t sdfs = ceil_div(s, cfg.sdf_capacity);
    const std::uint64_t frames = tdfs + s + sdfs;
    out.data_frames += frames;
    out.preambles += s;
    out.elapsed_us += static_cast<Micros>(frames) * t.data_frame_slot_us + static_cast<Micros>(s) * t.preamble_slot_us;
    return out;
}

NcOutcome simulate_nc_pmac(const PendingSet& pending, std::uint64_t n_slot, const RunConfig& cfg,
                           std::mt19937_64& rng) {
    const TimingTable& t = cfg.timing;
    const auto c = contend(pending.stas.size(), n_slot, rng);
    const std::uint64_t s = c.successes;

    NcOutcome out;
    out.joined = winners(pending, c);
    out.slots_used = n_slot;
    out.preambles = 1 + n_slot + s;
    // Time difference, MAC address and SID frames, each relayed over every hop.
    out.data_frames = 3 * static_cast<std::uint64_t>(pending.depth) * s;
    out.elapsed_us = static_cast<Micros>(out.preambles) * t.preamble_slot_us +
                     static_cast<Micros>(out.data_frames) * t.data_frame_slot_us;
    return out;
}

NcOutcome simulate_nc_csma(const PendingSet& pending, std::uint64_t n_slot, const RunConfig& cfg,
                           std::mt19937_64& rng) {
    const TimingTable& t = cfg.timing;
    const auto c = contend_persistent(pending.stas.size(), n_slot, cfg.csma_p, rng);
    const std::uint64_t s = c.successes;
    const std::uint64_t hops_above = pending.depth - 1;

    NcOutcome out;
    out.joined = winners(pending, c);
    out.slots_used = n_slot;
    out.elapsed_us = pending.depth == 1 ? t.central_beacon_slot_us : t.proxy_beacon_slot_us;
    // Idle and collided request slots cost as much as a successful one.
    out.elapsed_us += static_cast<Micros>(n_slot) * t.assoc_req_slot_us;
    out.elapsed_us += static_cast<Micros>(s) * t.assoc_ind_slot_us;
    out.elapsed_us += static_cast<Micros>(s * hops_above) * (t.assoc_req_slot_us + t.assoc_ind_slot_us);

    out.data_frames = 1 + c.transmissions + s + 2 * s * hops_above;
    return out;
}

void apply_outcome(PendingSet& pending, const NcOutcome& outcome) {
    if (outcome.joined.empty()) return;
    std::vector<NodeIndex> joined = outcome.joined;
    std::sort(joined.begin(), joined.end());
    std::erase_if(pending.stas, [&](NodeIndex i) { return std::binary_search(joined.begin(), joined.end(), i); });
}

}  // namespace plcnet::mac
