#ifndef SHOPSP_SHOP_HPP
#define SHOPSP_SHOP_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "shopsp/common.hpp"
#include "shopsp/types.hpp"

namespace shopsp {

namespace detail {

// Event-driven greedy list scheduler shared by the dense open-shop, dense
// job-shop and two-machine open-shop schedulers. Whenever a machine is free
// and some job has a startable op on it (job not busy; job-shop: next op in
// the chain), the op with the largest key starts, ties broken by smallest
// job id. Machines are considered in index order. The key sees the job's
// per-op completion flags.
template <typename KeyFn>
Schedule dense_list_schedule(std::span<const Job> jobs, int machines, ShopKind kind, KeyFn key) {
    const std::size_t n = jobs.size();
    std::vector<std::vector<bool>> done(n);
    std::vector<std::size_t> next_op(n, 0);
    std::vector<Time> job_free(n, 0);
    std::size_t pending = 0;
    for (std::size_t j = 0; j < n; ++j) {
        done[j].assign(jobs[j].ops.size(), false);
        pending += jobs[j].ops.size();
    }
    std::vector<Time> machine_free(static_cast<std::size_t>(machines), 0);

    Schedule out;
    Time now = 0;
    while (pending > 0) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int m = 0; m < machines; ++m) {
                if (machine_free[static_cast<std::size_t>(m)] > now) continue;
                int best_job = -1;
                int best_op = -1;
                Time best_key = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (job_free[j] > now) continue;
                    int op_idx = -1;
                    if (kind == ShopKind::job) {
                        if (next_op[j] < jobs[j].ops.size() && jobs[j].ops[next_op[j]].machine == m)
                            op_idx = static_cast<int>(next_op[j]);
                    } else {
                        for (std::size_t o = 0; o < jobs[j].ops.size(); ++o)
                            if (!done[j][o] && jobs[j].ops[o].machine == m) { op_idx = static_cast<int>(o); break; }
                    }
                    if (op_idx < 0) continue;
                    const Time k = key(j, static_cast<std::size_t>(op_idx), done[j]);
                    if (best_job < 0 || k > best_key ||
                        (k == best_key && jobs[j].id < jobs[static_cast<std::size_t>(best_job)].id)) {
                        best_job = static_cast<int>(j);
                        best_op = op_idx;
                        best_key = k;
                    }
                }
                if (best_job < 0) continue;
                const std::size_t j = static_cast<std::size_t>(best_job);
                const Op& op = jobs[j].ops[static_cast<std::size_t>(best_op)];
                out.assignments.push_back({jobs[j].id, best_op, m, now, op.duration});
                const Time fin = checked_add(now, op.duration);
                machine_free[static_cast<std::size_t>(m)] = fin;
                job_free[j] = fin;
                done[j][static_cast<std::size_t>(best_op)] = true;
                if (kind == ShopKind::job)
                    while (next_op[j] < jobs[j].ops.size() && done[j][next_op[j]]) ++next_op[j];
                --pending;
                progress = true;
            }
        }
        if (pending == 0) break;
        Time next = std::numeric_limits<Time>::max();
        for (Time t : machine_free)
            if (t > now) next = std::min(next, t);
        for (std::size_t j = 0; j < n; ++j)
            if (job_free[j] > now) next = std::min(next, job_free[j]);
        if (next == std::numeric_limits<Time>::max())
            throw std::logic_error("dense scheduler stalled");  // cannot happen on valid input
        now = next;
    }
    for (const Assignment& a : out.assignments) out.makespan = std::max(out.makespan, a.finish());
    return out;
}

}  // namespace detail

// Optimal two-machine open-shop makespan: max of the two machine loads and
// the longest job.
inline Time o2_makespan_formula(std::span<const Job> jobs) {
    Time load0 = 0, load1 = 0, longest = 0;
    for (const Job& j : jobs) {
        load0 = checked_add(load0, j.time_on(0));
        load1 = checked_add(load1, j.time_on(1));
        longest = std::max(longest, j.total_time());
    }
    return std::max({load0, load1, longest});
}

// Exact O2||Cmax. Greedy rule: whenever a machine frees, start the job with
// the longest remaining processing time on the other machine. The makespan
// always equals the max(load, load, longest job) optimum; verified on every
// call.
inline Schedule schedule_gs_o2(std::span<const Job> jobs) {
    for (const Job& j : jobs)
        if (j.ops.size() != 2 || j.ops[0].machine != 0 || j.ops[1].machine != 1)
            throw std::invalid_argument("schedule_gs_o2: job " + std::to_string(j.id) +
                                        " is not a two-machine open-shop job");
    Schedule s = detail::dense_list_schedule(
        jobs, 2, ShopKind::open, [&jobs](std::size_t j, std::size_t op_idx, const std::vector<bool>& done) {
            const std::size_t other = 1 - op_idx;
            return done[other] ? Time{0} : jobs[j].ops[other].duration;
        });
    const Time want = o2_makespan_formula(jobs);
    if (s.makespan != want)
        throw std::logic_error("schedule_gs_o2: greedy missed the optimum (" + std::to_string(s.makespan) +
                               " vs " + std::to_string(want) + ")");
    return s;
}

// Dense greedy open-shop schedule (2-approximation). Candidates by smallest
// job id.
inline Schedule schedule_dense_open(std::span<const Job> jobs, int machines) {
    return detail::dense_list_schedule(jobs, machines, ShopKind::open,
                                       [](std::size_t, std::size_t, const std::vector<bool>&) { return Time{0}; });
}

// Dense greedy job-shop schedule over next-pending ops.
inline Schedule schedule_dense_job(std::span<const Job> jobs, int machines) {
    return detail::dense_list_schedule(jobs, machines, ShopKind::job,
                                       [](std::size_t, std::size_t, const std::vector<bool>&) { return Time{0}; });
}

namespace detail {

struct F2Item {
    int job_index;  // position in the input span
    int job_id;
    Time a;  // first-machine duration
    Time b;  // second-machine duration
};

// Johnson order: a<b ascending a first, then b<=a descending b; ties by id.
inline std::vector<F2Item> johnson_order(std::vector<F2Item> items) {
    std::vector<F2Item> g1, g2;
    for (const F2Item& it : items) (it.a < it.b ? g1 : g2).push_back(it);
    std::sort(g1.begin(), g1.end(), [](const F2Item& x, const F2Item& y) {
        return x.a != y.a ? x.a < y.a : x.job_id < y.job_id;
    });
    std::sort(g2.begin(), g2.end(), [](const F2Item& x, const F2Item& y) {
        return x.b != y.b ? x.b > y.b : x.job_id < y.job_id;
    });
    g1.insert(g1.end(), g2.begin(), g2.end());
    return g1;
}

// Makespan of a permutation flow schedule of (a, b) pairs in the given order.
inline Time flow_makespan(const std::vector<F2Item>& order) {
    Time c0 = 0, c1 = 0;
    for (const F2Item& it : order) {
        c0 = checked_add(c0, it.a);
        c1 = checked_add(std::max(c1, c0), it.b);
    }
    return std::max(c0, c1);
}

}  // namespace detail

// Johnson's rule for the two-machine flow shop: jobs visit machine 0 then
// machine 1. Accepts single-op jobs (the missing op counts as zero).
inline Schedule schedule_johnson_f2(std::span<const Job> jobs) {
    std::vector<detail::F2Item> items;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        if (job.ops.size() > 2) throw std::invalid_argument("schedule_johnson_f2: more than two ops");
        if (job.ops.size() == 2 && (job.ops[0].machine != 0 || job.ops[1].machine != 1))
            throw std::invalid_argument("schedule_johnson_f2: job " + std::to_string(job.id) +
                                        " must run machine 0 before machine 1");
        for (const Op& o : job.ops)
            if (o.machine != 0 && o.machine != 1)
                throw std::invalid_argument("schedule_johnson_f2: machine out of range");
        if (job.ops.empty()) continue;
        items.push_back({static_cast<int>(j), job.id, job.time_on(0), job.time_on(1)});
    }
    const auto order = detail::johnson_order(std::move(items));

    Schedule out;
    Time c0 = 0, c1 = 0;
    for (const detail::F2Item& it : order) {
        const Job& job = jobs[static_cast<std::size_t>(it.job_index)];
        Time ready1 = 0;
        for (std::size_t o = 0; o < job.ops.size(); ++o) {
            const Op& op = job.ops[o];
            if (op.machine == 0) {
                out.assignments.push_back({job.id, static_cast<int>(o), 0, c0, op.duration});
                c0 = checked_add(c0, op.duration);
                ready1 = c0;
            } else {
                const Time s = std::max(c1, ready1);
                out.assignments.push_back({job.id, static_cast<int>(o), 1, s, op.duration});
                c1 = checked_add(s, op.duration);
            }
        }
    }
    for (const Assignment& a : out.assignments) out.makespan = std::max(out.makespan, a.finish());
    return out;
}

namespace detail {

struct JacksonSets {
    std::vector<int> j12;  // indices into the job span, machine-0-first jobs
    std::vector<int> j21;
};

inline JacksonSets jackson_classify(std::span<const Job> jobs) {
    JacksonSets sets;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        if (job.ops.size() > 2)
            throw std::invalid_argument("jackson: job " + std::to_string(job.id) + " has more than two ops");
        for (const Op& o : job.ops)
            if (o.machine != 0 && o.machine != 1)
                throw std::invalid_argument("jackson: machine out of range on job " + std::to_string(job.id));
        if (job.ops.size() == 2 && job.ops[0].machine == job.ops[1].machine)
            throw std::invalid_argument("jackson: job " + std::to_string(job.id) +
                                        " has two ops on the same machine");
        if (job.ops.empty()) continue;
        (job.ops[0].machine == 0 ? sets.j12 : sets.j21).push_back(static_cast<int>(j));
    }
    return sets;
}

}  // namespace detail

// Jackson's rule, optimal for the two-machine job shop with at most two ops
// per job: Johnson-order each direction set, run machine-0-first jobs before
// the others on machine 0 and vice versa. Single-op jobs join the set of
// their machine with a zero partner op.
inline Schedule schedule_jackson_j2(std::span<const Job> jobs) {
    const auto sets = detail::jackson_classify(jobs);

    std::vector<detail::F2Item> items12, items21;
    for (int j : sets.j12)
        items12.push_back({j, jobs[static_cast<std::size_t>(j)].id, jobs[static_cast<std::size_t>(j)].time_on(0),
                           jobs[static_cast<std::size_t>(j)].time_on(1)});
    for (int j : sets.j21)
        items21.push_back({j, jobs[static_cast<std::size_t>(j)].id, jobs[static_cast<std::size_t>(j)].time_on(1),
                           jobs[static_cast<std::size_t>(j)].time_on(0)});
    const auto order12 = detail::johnson_order(std::move(items12));
    const auto order21 = detail::johnson_order(std::move(items21));

    Schedule out;
    std::vector<Time> first_finish(jobs.size(), 0);

    // First ops: J12 block on machine 0, J21 block on machine 1.
    Time c0 = 0, c1 = 0;
    for (const auto& it : order12) {
        const Job& job = jobs[static_cast<std::size_t>(it.job_index)];
        out.assignments.push_back({job.id, 0, 0, c0, job.ops[0].duration});
        c0 = checked_add(c0, job.ops[0].duration);
        first_finish[static_cast<std::size_t>(it.job_index)] = c0;
    }
    for (const auto& it : order21) {
        const Job& job = jobs[static_cast<std::size_t>(it.job_index)];
        out.assignments.push_back({job.id, 0, 1, c1, job.ops[0].duration});
        c1 = checked_add(c1, job.ops[0].duration);
        first_finish[static_cast<std::size_t>(it.job_index)] = c1;
    }
    // Second ops: J21 tails on machine 0, J12 tails on machine 1.
    for (const auto& it : order21) {
        const Job& job = jobs[static_cast<std::size_t>(it.job_index)];
        if (job.ops.size() < 2) continue;
        const Time s = std::max(c0, first_finish[static_cast<std::size_t>(it.job_index)]);
        out.assignments.push_back({job.id, 1, 0, s, job.ops[1].duration});
        c0 = checked_add(s, job.ops[1].duration);
    }
    for (const auto& it : order12) {
        const Job& job = jobs[static_cast<std::size_t>(it.job_index)];
        if (job.ops.size() < 2) continue;
        const Time s = std::max(c1, first_finish[static_cast<std::size_t>(it.job_index)]);
        out.assignments.push_back({job.id, 1, 1, s, job.ops[1].duration});
        c1 = checked_add(s, job.ops[1].duration);
    }
    for (const Assignment& a : out.assignments) out.makespan = std::max(out.makespan, a.finish());
    return out;
}

// Johnson makespans after forcing every job to run machine 0 first (C1) or
// machine 1 first (C2), durations unchanged. Jackson's makespan never
// exceeds max(C1, C2).
inline std::pair<Time, Time> jackson_order_bound(std::span<const Job> jobs) {
    detail::jackson_classify(jobs);  // shape validation only
    std::vector<detail::F2Item> fwd, rev;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].ops.empty()) continue;
        fwd.push_back({static_cast<int>(j), jobs[j].id, jobs[j].time_on(0), jobs[j].time_on(1)});
        rev.push_back({static_cast<int>(j), jobs[j].id, jobs[j].time_on(1), jobs[j].time_on(0)});
    }
    const Time c1 = detail::flow_makespan(detail::johnson_order(std::move(fwd)));
    const Time c2 = detail::flow_makespan(detail::johnson_order(std::move(rev)));
    return {c1, c2};
}

}  // namespace shopsp

#endif  // SHOPSP_SHOP_HPP
