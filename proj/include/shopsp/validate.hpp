#ifndef SHOPSP_VALIDATE_HPP
#define SHOPSP_VALIDATE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "shopsp/types.hpp"

namespace shopsp {

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }

    std::string str() const {
        std::ostringstream os;
        for (const auto& v : violations) os << v << '\n';
        return os.str();
    }
};

// Half-open interval overlap; zero-duration ops never overlap anything.
inline bool intervals_overlap(Time s1, Time e1, Time s2, Time e2) {
    return s1 < e2 && s2 < e1;
}

// Checks a schedule against the shop semantics of the instance, restricted to
// job_set: every op of every selected job appears exactly once, machines and
// jobs never run two ops at a time, job-shop chains are ordered, and the
// recorded makespan equals the latest finish.
inline ValidationReport validate_schedule(const Instance& instance, std::span<const int> job_set,
                                          const Schedule& schedule) {
    ValidationReport report;
    auto fail = [&report](const std::string& msg) { report.violations.push_back(msg); };

    std::set<int> selected(job_set.begin(), job_set.end());
    for (int j : selected)
        if (j < 0 || j >= static_cast<int>(instance.jobs.size())) {
            fail("job_set: unknown job " + std::to_string(j));
            return report;
        }

    // Exactly-once coverage of (job, op) slots.
    std::map<std::pair<int, int>, int> seen;
    for (std::size_t i = 0; i < schedule.assignments.size(); ++i) {
        const Assignment& a = schedule.assignments[i];
        if (!selected.count(a.job)) {
            fail("assignment " + std::to_string(i) + ": job " + std::to_string(a.job) + " not in job set");
            continue;
        }
        const Job& job = instance.job(a.job);
        if (a.op < 0 || a.op >= static_cast<int>(job.ops.size())) {
            fail("assignment " + std::to_string(i) + ": job " + std::to_string(a.job) + " has no op " +
                 std::to_string(a.op));
            continue;
        }
        const Op& op = job.ops[static_cast<std::size_t>(a.op)];
        if (a.machine != op.machine)
            fail("assignment " + std::to_string(i) + ": job " + std::to_string(a.job) + " op " +
                 std::to_string(a.op) + " machine " + std::to_string(a.machine) + " != " +
                 std::to_string(op.machine));
        if (a.duration != op.duration)
            fail("assignment " + std::to_string(i) + ": job " + std::to_string(a.job) + " op " +
                 std::to_string(a.op) + " duration " + std::to_string(a.duration) + " != " +
                 std::to_string(op.duration));
        if (a.start < 0) fail("assignment " + std::to_string(i) + ": negative start");
        seen[{a.job, a.op}]++;
    }
    for (int j : selected) {
        const Job& job = instance.job(j);
        for (int k = 0; k < static_cast<int>(job.ops.size()); ++k) {
            const int count = seen.count({j, k}) ? seen[{j, k}] : 0;
            if (count != 1)
                fail("job " + std::to_string(j) + " op " + std::to_string(k) + " scheduled " +
                     std::to_string(count) + " times");
        }
    }
    if (!report.ok()) return report;

    // Machine overlap.
    std::map<int, std::vector<const Assignment*>> by_machine;
    for (const Assignment& a : schedule.assignments) by_machine[a.machine].push_back(&a);
    for (auto& [machine, list] : by_machine) {
        std::sort(list.begin(), list.end(),
                  [](const Assignment* x, const Assignment* y) { return x->start < y->start; });
        for (std::size_t i = 0; i + 1 < list.size(); ++i)
            for (std::size_t k = i + 1; k < list.size(); ++k)
                if (intervals_overlap(list[i]->start, list[i]->finish(), list[k]->start, list[k]->finish()))
                    fail("machine overlap: machine " + std::to_string(machine) + " jobs " +
                         std::to_string(list[i]->job) + "/" + std::to_string(list[k]->job) + " at [" +
                         std::to_string(std::max(list[i]->start, list[k]->start)) + ")");
    }

    // Same-job overlap and job-shop op order.
    std::map<int, std::vector<const Assignment*>> by_job;
    for (const Assignment& a : schedule.assignments) by_job[a.job].push_back(&a);
    for (auto& [j, list] : by_job) {
        for (std::size_t i = 0; i + 1 < list.size(); ++i)
            for (std::size_t k = i + 1; k < list.size(); ++k)
                if (intervals_overlap(list[i]->start, list[i]->finish(), list[k]->start, list[k]->finish()))
                    fail("job overlap: job " + std::to_string(j) + " ops " + std::to_string(list[i]->op) +
                         "/" + std::to_string(list[k]->op));
        if (instance.shop == ShopKind::job) {
            std::vector<const Assignment*> chain(list.begin(), list.end());
            std::sort(chain.begin(), chain.end(),
                      [](const Assignment* x, const Assignment* y) { return x->op < y->op; });
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                if (chain[i + 1]->start < chain[i]->finish())
                    fail("op order: job " + std::to_string(j) + " op " + std::to_string(chain[i + 1]->op) +
                         " starts before op " + std::to_string(chain[i]->op) + " finishes");
        }
    }

    Time latest = 0;
    for (const Assignment& a : schedule.assignments) latest = std::max(latest, a.finish());
    if (schedule.makespan != latest)
        fail("makespan " + std::to_string(schedule.makespan) + " != latest finish " + std::to_string(latest));

    return report;
}

// True iff `path` is a simple directed s-t path (arc ids, no repeated vertex).
inline bool is_simple_st_path(const Graph& graph, std::span<const int> path) {
    if (path.empty()) return false;
    std::set<int> visited;
    int at = graph.source;
    visited.insert(at);
    for (int id : path) {
        if (id < 0 || id >= graph.arc_count()) return false;
        const Arc& a = graph.arcs[static_cast<std::size_t>(id)];
        if (a.tail != at) return false;
        if (visited.count(a.head)) return false;
        visited.insert(a.head);
        at = a.head;
    }
    return at == graph.sink;
}

// Density check: no machine idles through a gap that could hold a pending
// positive op whose job is entirely free during the gap (job-shop chain
// predecessors must be finished by the gap start). Zero-duration ops are
// ignored; they occupy no machine time.
inline ValidationReport check_dense(const Instance& instance, const Schedule& schedule) {
    ValidationReport report;
    std::map<int, std::vector<const Assignment*>> by_machine;
    std::map<int, std::vector<const Assignment*>> by_job;
    for (const Assignment& a : schedule.assignments) {
        if (a.duration > 0) by_machine[a.machine].push_back(&a);
        by_job[a.job].push_back(&a);
    }
    for (auto& [m, list] : by_machine)
        std::sort(list.begin(), list.end(),
                  [](const Assignment* x, const Assignment* y) { return x->start < y->start; });

    auto job_free_during = [&](int job, Time from, Time to) {
        for (const Assignment* a : by_job[job])
            if (intervals_overlap(a->start, a->finish(), from, to)) return false;
        return true;
    };
    auto chain_ready_by = [&](const Assignment& a, Time t) {
        if (instance.shop != ShopKind::job) return true;
        for (const Assignment* prev : by_job[a.job])
            if (prev->op < a.op && prev->finish() > t) return false;
        return true;
    };

    for (int m = 0; m < instance.machines; ++m) {
        if (!by_machine.count(m)) continue;
        const auto& list = by_machine[m];
        Time cursor = 0;
        for (const Assignment* a : list) {
            if (a->start > cursor) {
                // Idle gap [cursor, a->start) on machine m.
                for (const Assignment* later : list) {
                    if (later->start < a->start) continue;
                    const Time end = cursor + later->duration;
                    if (end <= a->start && job_free_during(later->job, cursor, end) &&
                        chain_ready_by(*later, cursor))
                        report.violations.push_back(
                            "machine " + std::to_string(m) + " idle at [" + std::to_string(cursor) + "," +
                            std::to_string(a->start) + ") while job " + std::to_string(later->job) + " op " +
                            std::to_string(later->op) + " could run");
                }
            }
            cursor = std::max(cursor, a->finish());
        }
    }
    return report;
}

}  // namespace shopsp

#endif  // SHOPSP_VALIDATE_HPP
