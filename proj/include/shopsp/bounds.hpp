#ifndef SHOPSP_BOUNDS_HPP
#define SHOPSP_BOUNDS_HPP

#include <span>

#include "shopsp/types.hpp"

namespace shopsp {

// max(largest machine load, largest job length) over the job set. Any
// feasible schedule of the set needs at least this long; the empty set
// needs 0.
inline Time lower_bound(const Instance& instance, std::span<const int> job_set) {
    Time best = 0;
    for (int m = 0; m < instance.machines; ++m) {
        Time load = 0;
        for (int j : job_set) load = checked_add(load, instance.job(j).time_on(m));
        best = std::max(best, load);
    }
    for (int j : job_set) best = std::max(best, instance.job(j).total_time());
    return best;
}

// Total processing time of the set; every dense schedule finishes by then.
inline Time upper_bound(const Instance& instance, std::span<const int> job_set) {
    Time total = 0;
    for (int j : job_set) total = checked_add(total, instance.job(j).total_time());
    return total;
}

}  // namespace shopsp

#endif  // SHOPSP_BOUNDS_HPP
