#ifndef SHOPSP_SHOP_EXACT_HPP
#define SHOPSP_SHOP_EXACT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "shopsp/common.hpp"
#include "shopsp/shop.hpp"
#include "shopsp/types.hpp"

namespace shopsp {

struct ExactLimits {
    // Cap on positive-duration operations; zero ops never enter the search.
    std::size_t max_ops = 12;
};

namespace detail {

struct BnbOp {
    int job_index;  // position in the job span
    int op_index;   // index in that job's ops
    int machine;
    Time duration;
};

// Repeatedly left-shifts positive ops into earlier feasible slots: machine
// gap fits the whole op, the job is free, and (job shop) chain predecessors
// have finished. Never increases the makespan.
inline void densify_schedule(ShopKind kind, Schedule& schedule) {
    auto overlap = [](Time s1, Time e1, Time s2, Time e2) { return s1 < e2 && s2 < e1; };
    bool moved = true;
    while (moved) {
        moved = false;
        std::vector<std::size_t> order(schedule.assignments.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return schedule.assignments[x].start < schedule.assignments[y].start;
        });
        for (std::size_t oi : order) {
            Assignment& a = schedule.assignments[oi];
            if (a.duration <= 0) continue;
            Time ready = 0;
            if (kind == ShopKind::job) {
                for (const Assignment& p : schedule.assignments)
                    if (p.job == a.job && p.op < a.op) ready = std::max(ready, p.finish());
            }
            // Earliest feasible start below the current one.
            Time t = ready;
            while (t < a.start) {
                Time bumped = t;
                for (const Assignment& p : schedule.assignments) {
                    if (&p == &a) continue;
                    const bool conflicts = (p.machine == a.machine || p.job == a.job) &&
                                           overlap(p.start, p.finish(), t, t + a.duration);
                    if (conflicts) bumped = std::max(bumped, p.finish());
                }
                if (bumped == t) break;
                t = bumped;
            }
            if (t < a.start) {
                a.start = t;
                moved = true;
            }
        }
    }
    schedule.makespan = 0;
    for (const Assignment& a : schedule.assignments) schedule.makespan = std::max(schedule.makespan, a.finish());
}

// Appends the zero-duration ops: job-shop zeros go at their chain
// predecessor's finish, open-shop zeros at time 0. Zero-length intervals
// conflict with nothing.
inline void place_zero_ops(std::span<const Job> jobs, ShopKind kind, Schedule& schedule) {
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        for (std::size_t o = 0; o < job.ops.size(); ++o) {
            if (job.ops[o].duration > 0) continue;
            Time start = 0;
            if (kind == ShopKind::job) {
                for (const Assignment& a : schedule.assignments)
                    if (a.job == job.id && a.op < static_cast<int>(o)) start = std::max(start, a.finish());
            }
            schedule.assignments.push_back({job.id, static_cast<int>(o), job.ops[o].machine, start, 0});
        }
    }
}

inline void sort_canonical(Schedule& schedule) {
    std::sort(schedule.assignments.begin(), schedule.assignments.end(), [](const Assignment& x, const Assignment& y) {
        if (x.start != y.start) return x.start < y.start;
        if (x.machine != y.machine) return x.machine < y.machine;
        if (x.job != y.job) return x.job < y.job;
        return x.op < y.op;
    });
    schedule.makespan = 0;
    for (const Assignment& a : schedule.assignments) schedule.makespan = std::max(schedule.makespan, a.finish());
}

// Branch and bound over the disjunctive pairs (same machine, and same job in
// the open shop; job-shop chains are fixed arcs). Nodes carry the direct
// successor masks; bounds come from the longest path through oriented arcs
// plus the static load bounds.
class DisjunctiveBnb {
  public:
    DisjunctiveBnb(std::span<const Job> jobs, int machines, ShopKind kind) : jobs_(jobs), kind_(kind) {
        for (std::size_t j = 0; j < jobs.size(); ++j)
            for (std::size_t o = 0; o < jobs[j].ops.size(); ++o)
                if (jobs[j].ops[o].duration > 0)
                    ops_.push_back({static_cast<int>(j), static_cast<int>(o), jobs[j].ops[o].machine,
                                    jobs[j].ops[o].duration});
        p_ = ops_.size();
        fixed_.assign(p_, 0u);
        for (std::size_t u = 0; u < p_; ++u)
            for (std::size_t v = 0; v < p_; ++v) {
                if (u == v) continue;
                if (kind == ShopKind::job && ops_[u].job_index == ops_[v].job_index &&
                    ops_[u].op_index < ops_[v].op_index)
                    fixed_[u] |= bit(v);
            }
        for (std::size_t u = 0; u < p_; ++u)
            for (std::size_t v = u + 1; v < p_; ++v) {
                const bool same_machine = ops_[u].machine == ops_[v].machine;
                const bool same_job = ops_[u].job_index == ops_[v].job_index;
                if (!same_machine && !same_job) continue;
                if (kind == ShopKind::job && same_job) continue;  // chain-ordered already
                pairs_.push_back({static_cast<int>(u), static_cast<int>(v)});
            }
        std::sort(pairs_.begin(), pairs_.end(), [this](const auto& x, const auto& y) {
            const Time dx = ops_[static_cast<std::size_t>(x.first)].duration +
                            ops_[static_cast<std::size_t>(x.second)].duration;
            const Time dy = ops_[static_cast<std::size_t>(y.first)].duration +
                            ops_[static_cast<std::size_t>(y.second)].duration;
            if (dx != dy) return dx > dy;
            return x < y;
        });

        static_lb_ = 0;
        for (int m = 0; m < machines; ++m) {
            Time load = 0;
            for (const BnbOp& o : ops_)
                if (o.machine == m) load = checked_add(load, o.duration);
            static_lb_ = std::max(static_lb_, load);
        }
        for (std::size_t j = 0; j < jobs.size(); ++j) static_lb_ = std::max(static_lb_, jobs[j].total_time());
    }

    std::size_t op_count() const { return p_; }

    // Returns (makespan, starts) of the optimal ordering.
    std::pair<Time, std::vector<Time>> solve(Time seed_ub, const std::vector<Time>& seed_starts) {
        best_ = seed_ub;
        best_starts_ = seed_starts;
        search(fixed_, 0);
        return {best_, best_starts_};
    }

  private:
    std::uint32_t bit(std::size_t i) const { return 1u << i; }

    // Earliest starts via longest path; empty on a cycle.
    bool earliest_starts(const std::vector<std::uint32_t>& succ, std::vector<Time>& es, Time& cp) const {
        std::vector<int> indeg(p_, 0);
        for (std::size_t u = 0; u < p_; ++u)
            for (std::size_t v = 0; v < p_; ++v)
                if (succ[u] & bit(v)) ++indeg[v];
        es.assign(p_, 0);
        std::vector<std::size_t> stack;
        for (std::size_t u = 0; u < p_; ++u)
            if (indeg[u] == 0) stack.push_back(u);
        std::size_t seen = 0;
        cp = 0;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            ++seen;
            const Time fin = checked_add(es[u], ops_[u].duration);
            cp = std::max(cp, fin);
            for (std::size_t v = 0; v < p_; ++v)
                if (succ[u] & bit(v)) {
                    es[v] = std::max(es[v], fin);
                    if (--indeg[v] == 0) stack.push_back(v);
                }
        }
        return seen == p_;
    }

    void reach_closure(const std::vector<std::uint32_t>& succ, std::vector<std::uint32_t>& reach) const {
        reach = succ;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t u = 0; u < p_; ++u) {
                std::uint32_t acc = reach[u];
                for (std::size_t v = 0; v < p_; ++v)
                    if (reach[u] & bit(v)) acc |= reach[v];
                if (acc != reach[u]) {
                    reach[u] = acc;
                    changed = true;
                }
            }
        }
    }

    void search(std::vector<std::uint32_t> succ, std::size_t pair_from) {
        if (best_ <= static_lb_) return;  // incumbent already provably optimal
        std::vector<Time> es;
        Time cp = 0;
        if (!earliest_starts(succ, es, cp)) return;  // cyclic orientation
        if (cp >= best_) return;

        std::vector<std::uint32_t> reach;
        reach_closure(succ, reach);

        // First pair neither oriented nor implied.
        int chosen = -1;
        for (std::size_t i = pair_from; i < pairs_.size(); ++i) {
            const auto [u, v] = pairs_[i];
            const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
            if ((reach[su] & bit(sv)) || (reach[sv] & bit(su))) continue;
            chosen = static_cast<int>(i);
            break;
        }
        if (chosen < 0) {
            if (cp < best_) {
                best_ = cp;
                best_starts_ = es;
            }
            return;
        }
        const auto [u, v] = pairs_[static_cast<std::size_t>(chosen)];
        const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
        const bool u_first = es[su] <= es[sv];
        for (int branch = 0; branch < 2; ++branch) {
            std::vector<std::uint32_t> next = succ;
            if ((branch == 0) == u_first)
                next[su] |= bit(sv);
            else
                next[sv] |= bit(su);
            search(std::move(next), static_cast<std::size_t>(chosen) + 1);
        }
    }

    std::span<const Job> jobs_;
    ShopKind kind_;
    std::vector<BnbOp> ops_;
    std::size_t p_ = 0;
    std::vector<std::uint32_t> fixed_;
    std::vector<std::pair<int, int>> pairs_;
    Time static_lb_ = 0;
    Time best_ = std::numeric_limits<Time>::max();
    std::vector<Time> best_starts_;
};

}  // namespace detail

// Minimum-makespan schedule by branch and bound over per-machine (and, in the
// open shop, per-job) op orderings. Refuses job sets with more positive ops
// than the cap.
inline Schedule schedule_exact_small(std::span<const Job> jobs, int machines, ShopKind kind,
                                     const ExactLimits& limits = {}) {
    detail::DisjunctiveBnb bnb(jobs, machines, kind);
    if (bnb.op_count() > limits.max_ops)
        throw SizeError("schedule_exact_small: " + std::to_string(bnb.op_count()) +
                        " positive ops exceed the cap of " + std::to_string(limits.max_ops));
    if (bnb.op_count() > 30)
        throw SizeError("schedule_exact_small: more than 30 positive ops is unsupported");

    // Seed with the dense greedy schedule of the right shop kind.
    Schedule seed = kind == ShopKind::open ? schedule_dense_open(jobs, machines)
                                           : schedule_dense_job(jobs, machines);
    std::vector<Time> seed_starts;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        for (std::size_t o = 0; o < jobs[j].ops.size(); ++o) {
            if (jobs[j].ops[o].duration <= 0) continue;
            for (const Assignment& a : seed.assignments)
                if (a.job == jobs[j].id && a.op == static_cast<int>(o)) seed_starts.push_back(a.start);
        }

    const auto [value, starts] = bnb.solve(seed.makespan, seed_starts);

    Schedule out;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        for (std::size_t o = 0; o < jobs[j].ops.size(); ++o) {
            if (jobs[j].ops[o].duration <= 0) continue;
            out.assignments.push_back({jobs[j].id, static_cast<int>(o), jobs[j].ops[o].machine, starts[idx],
                                       jobs[j].ops[o].duration});
            ++idx;
        }
    detail::densify_schedule(kind, out);
    detail::place_zero_ops(jobs, kind, out);
    detail::sort_canonical(out);
    return out;
}

}  // namespace shopsp

#endif  // SHOPSP_SHOP_EXACT_HPP
