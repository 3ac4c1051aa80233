#include "plcnet/slot_alloc.hpp"

namespace plcnet::slot_alloc {

std::uint64_t next_slot_count(const SlotAllocState& s) {
    if (s.t_pte == 0) return s.params.n0;
    if (s.n_slot == 0) throw ZeroSlots("no successor slot count after the controller terminated");

    if (s.n_sta > 0) {
        const double eta = static_cast<double>(s.n_sta) / static_cast<double>(s.n_slot);
        if (eta <= s.params.eta_min) return scaled_ceil(s.params.k1, s.n_slot);
        return s.n_slot;
    }
    if (s.t_f <= s.params.t_f_max) return scaled_ceil(s.params.k2, s.n_slot);
    return 0;
}

SlotAllocState record_pte(SlotAllocState s, std::uint64_t n_slot_used, std::uint64_t n_joined) {
    if (n_joined > n_slot_used) throw std::invalid_argument("more joins than slots in one PTE");
    s.n_slot = n_slot_used;
    s.n_sta = n_joined;
    s.t_f = n_joined > 0 ? 0 : s.t_f + 1;
    ++s.t_pte;
    return s;
}

}  // namespace plcnet::slot_alloc
