#ifndef SHOPSP_TYPES_HPP
#define SHOPSP_TYPES_HPP

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "shopsp/common.hpp"

namespace shopsp {

enum class ShopKind { open, job };

inline std::string to_string(ShopKind k) { return k == ShopKind::open ? "open" : "job"; }

// Directed multigraph. Arc ids are dense 0..n-1 and double as job ids;
// parallel arcs are first class. Paths are always arc-id sequences.
struct Arc {
    int id = 0;
    int tail = 0;
    int head = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Graph {
    int vertex_count = 0;
    std::vector<Arc> arcs;
    int source = 0;
    int sink = 0;

    int arc_count() const { return static_cast<int>(arcs.size()); }

    void validate() const {
        if (vertex_count < 2) throw std::invalid_argument("graph: need at least two vertices");
        if (source < 0 || source >= vertex_count) throw std::invalid_argument("graph: source out of range");
        if (sink < 0 || sink >= vertex_count) throw std::invalid_argument("graph: sink out of range");
        if (source == sink) throw std::invalid_argument("graph: source equals sink");
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            const Arc& a = arcs[i];
            if (a.id != static_cast<int>(i))
                throw std::invalid_argument("graph: arc ids must be dense, arcs[" + std::to_string(i) + "].id = " + std::to_string(a.id));
            if (a.tail < 0 || a.tail >= vertex_count || a.head < 0 || a.head >= vertex_count)
                throw std::invalid_argument("graph: arc " + std::to_string(a.id) + " endpoint out of range");
        }
    }

    // Outgoing arc ids per vertex, ascending by arc id.
    std::vector<std::vector<int>> out_arcs() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(vertex_count));
        for (const Arc& a : arcs) out[static_cast<std::size_t>(a.tail)].push_back(a.id);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;
};

struct Op {
    int machine = 0;
    Time duration = 0;

    friend bool operator==(const Op&, const Op&) = default;
};

// One job per arc. Open shop: exactly one op per machine, stored in machine
// order, zero durations explicit. Job shop: ops is the processing chain and
// machines may repeat.
struct Job {
    int id = 0;
    std::vector<Op> ops;

    Time total_time() const {
        Time t = 0;
        for (const Op& o : ops) t = checked_add(t, o.duration);
        return t;
    }

    Time time_on(int machine) const {
        Time t = 0;
        for (const Op& o : ops)
            if (o.machine == machine) t = checked_add(t, o.duration);
        return t;
    }

    friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
    ShopKind shop = ShopKind::open;
    int machines = 1;
    Graph graph;
    std::vector<Job> jobs;

    const Job& job(int id) const { return jobs[static_cast<std::size_t>(id)]; }

    void validate() const {
        graph.validate();
        if (machines < 1) throw std::invalid_argument("instance: machine count must be positive");
        if (jobs.size() != graph.arcs.size())
            throw std::invalid_argument("instance: need exactly one job per arc");
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            const Job& job = jobs[j];
            if (job.id != static_cast<int>(j))
                throw std::invalid_argument("instance: jobs[" + std::to_string(j) + "].id must equal its arc id");
            for (const Op& o : job.ops) {
                if (o.machine < 0 || o.machine >= machines)
                    throw std::invalid_argument("instance: jobs[" + std::to_string(j) + "] op machine " +
                                                std::to_string(o.machine) + " >= m " + std::to_string(machines));
                if (o.duration < 0)
                    throw std::invalid_argument("instance: jobs[" + std::to_string(j) + "] negative duration");
            }
            if (shop == ShopKind::open) {
                if (static_cast<int>(job.ops.size()) != machines)
                    throw std::invalid_argument("instance: open-shop jobs[" + std::to_string(j) +
                                                "] must carry exactly one op per machine");
                for (int i = 0; i < machines; ++i)
                    if (job.ops[static_cast<std::size_t>(i)].machine != i)
                        throw std::invalid_argument("instance: open-shop jobs[" + std::to_string(j) +
                                                    "] ops must be stored in machine order");
            }
        }
    }

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct Assignment {
    int job = 0;
    int op = 0;  // index into the job's ops
    int machine = 0;
    Time start = 0;
    Time duration = 0;

    Time finish() const { return checked_add(start, duration); }

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Schedule {
    std::vector<Assignment> assignments;
    Time makespan = 0;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Solver output: the chosen path, its job set, and the schedule of those jobs.
struct SolveResult {
    std::vector<int> path;     // arc ids, in traversal order
    std::vector<int> job_set;  // sorted unique job ids on the path
    Schedule schedule;
    Time makespan = 0;

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

inline std::vector<int> job_set_of_path(std::span<const int> path) {
    std::vector<int> set(path.begin(), path.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

}  // namespace shopsp

#endif  // SHOPSP_TYPES_HPP
