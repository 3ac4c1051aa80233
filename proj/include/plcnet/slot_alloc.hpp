#pragma once

#include <cstdint>
#include <stdexcept>

#include "plcnet/core.hpp"

namespace plcnet::slot_alloc {

class ZeroSlots : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Counters shared by the coordinator and its stations. Every node derives the
/// next PTE length from the same history because the SDF tells all of them how
/// many stations joined in the last cycle.
struct SlotAllocState {
    std::uint64_t n_slot = 0;  // slots in the last PTE
    std::uint64_t n_sta = 0;   // stations that joined in the last PTE
    std::uint32_t t_f = 0;     // current streak of PTEs without a join
    std::uint64_t t_pte = 0;   // finished PTEs
    AllocParams params{};

    friend bool operator==(const SlotAllocState&, const SlotAllocState&) = default;
};

inline SlotAllocState fresh_state(const AllocParams& params) {
    SlotAllocState s;
    s.params = params;
    return s;
}

/// Slot count for the next PTE. A return of 0 means the controller gave up
/// after more than t_f_max consecutive empty PTEs.
std::uint64_t next_slot_count(const SlotAllocState& state);

SlotAllocState record_pte(SlotAllocState state, std::uint64_t n_slot_used, std::uint64_t n_joined);

}  // namespace plcnet::slot_alloc
