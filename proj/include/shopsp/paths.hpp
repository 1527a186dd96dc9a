#ifndef SHOPSP_PATHS_HPP
#define SHOPSP_PATHS_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <vector>

#include "shopsp/common.hpp"
#include "shopsp/types.hpp"

namespace shopsp {

// K nonnegative weights per arc; input of the min-max path objective.
struct WeightVectorMap {
    int criteria = 1;
    std::vector<std::vector<Time>> weights;  // weights[arc_id][k]

    void validate(const Graph& graph) const {
        if (criteria < 1) throw std::invalid_argument("weight map: need at least one criterion");
        if (weights.size() != graph.arcs.size())
            throw std::invalid_argument("weight map: need one weight vector per arc");
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (static_cast<int>(weights[j].size()) != criteria)
                throw std::invalid_argument("weight map: arc " + std::to_string(j) + " has wrong arity");
            for (Time w : weights[j])
                if (w < 0) throw std::invalid_argument("weight map: negative weight on arc " + std::to_string(j));
        }
    }

    Time criterion_total(int k) const {
        Time t = 0;
        for (const auto& w : weights) t = checked_add(t, w[static_cast<std::size_t>(k)]);
        return t;
    }

    // W = max_k sum_j w^k_j; bound on any stored label component.
    Time max_total() const {
        Time best = 0;
        for (int k = 0; k < criteria; ++k) best = std::max(best, criterion_total(k));
        return best;
    }
};

struct PathResult {
    std::vector<int> arcs;   // arc ids in traversal order
    std::vector<Time> sums;  // per-criterion totals
    Time value = 0;          // max over sums
};

namespace detail {

inline std::vector<Time> path_sums(const WeightVectorMap& wm, std::span<const int> arcs) {
    std::vector<Time> sums(static_cast<std::size_t>(wm.criteria), 0);
    for (int id : arcs)
        for (int k = 0; k < wm.criteria; ++k)
            sums[static_cast<std::size_t>(k)] =
                checked_add(sums[static_cast<std::size_t>(k)], wm.weights[static_cast<std::size_t>(id)][static_cast<std::size_t>(k)]);
    return sums;
}

inline PathResult make_path_result(const WeightVectorMap& wm, std::vector<int> arcs) {
    PathResult r;
    r.sums = path_sums(wm, arcs);
    r.arcs = std::move(arcs);
    r.value = 0;
    for (Time s : r.sums) r.value = std::max(r.value, s);
    return r;
}

// Removes vertex-repeating cycles that contain no required arc. With
// nonnegative weights this never increases any criterion sum, so values only
// improve; cycles through required arcs are kept.
inline void shortcut_cycles(const Graph& graph, std::vector<int>& arcs, const std::set<int>& required) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> vertex_seq{graph.source};
        for (int id : arcs) vertex_seq.push_back(graph.arcs[static_cast<std::size_t>(id)].head);
        for (std::size_t j = 1; j < vertex_seq.size() && !changed; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                if (vertex_seq[i] != vertex_seq[j]) continue;
                bool removable = true;
                for (std::size_t a = i; a < j; ++a)
                    if (required.count(arcs[a])) { removable = false; break; }
                if (removable) {
                    arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(i),
                               arcs.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
                break;  // only the first occurrence matters for this j
            }
        }
    }
}

// Label-setting DP over s-t walks of at most |V| arcs. Labels carry one sum
// per criterion plus a visit bit per required arc; within a vertex, a label
// is pruned when another label with identical visit bits weakly dominates its
// search sums. Search sums are capped at `cap` componentwise. `true_w` is
// carried along unpruned for reporting (identical to `search_w` in exact
// runs, unscaled weights in scaled runs).
struct LabelDp {
    struct Lab {
        int vertex;
        int hops;
        std::uint32_t flags;
        int pred;
        int arc;
        bool alive;
        std::vector<Time> s;  // search sums
        std::vector<Time> t;  // true sums
    };

    const Graph& graph;
    int criteria;
    const std::vector<std::vector<Time>>& search_w;
    const std::vector<std::vector<Time>>& true_w;
    Time cap;
    std::vector<int> required;  // sorted unique arc ids

    std::vector<Lab> pool;
    std::vector<std::vector<int>> active;

    LabelDp(const Graph& g, int K, const std::vector<std::vector<Time>>& sw,
            const std::vector<std::vector<Time>>& tw, Time cap_, std::span<const int> req)
        : graph(g), criteria(K), search_w(sw), true_w(tw), cap(cap_) {
        required.assign(req.begin(), req.end());
        std::sort(required.begin(), required.end());
        required.erase(std::unique(required.begin(), required.end()), required.end());
        if (required.size() > 30) throw SizeError("too many required arcs: " + std::to_string(required.size()));
        for (int id : required)
            if (id < 0 || id >= graph.arc_count())
                throw std::invalid_argument("required arc out of range: " + std::to_string(id));
    }

    std::uint32_t arc_bit(int arc_id) const {
        const auto it = std::lower_bound(required.begin(), required.end(), arc_id);
        if (it == required.end() || *it != arc_id) return 0;
        return 1u << static_cast<std::uint32_t>(it - required.begin());
    }

    std::vector<int> reconstruct(int idx) const {
        std::vector<int> arcs;
        for (int i = idx; pool[static_cast<std::size_t>(i)].pred >= 0 || pool[static_cast<std::size_t>(i)].arc >= 0;
             i = pool[static_cast<std::size_t>(i)].pred)
            arcs.push_back(pool[static_cast<std::size_t>(i)].arc);
        std::reverse(arcs.begin(), arcs.end());
        return arcs;
    }

    // Runs to exhaustion, returns the best full-visit label at the sink by
    // (max true sum, true sums, arc sequence), or nullopt.
    std::optional<std::vector<int>> run() {
        const int V = graph.vertex_count;
        const std::uint32_t full = required.empty() ? 0u : ((1u << required.size()) - 1u);
        const auto out = graph.out_arcs();

        active.assign(static_cast<std::size_t>(V), {});
        pool.clear();
        pool.push_back(Lab{graph.source, 0, 0u, -1, -1, true,
                           std::vector<Time>(static_cast<std::size_t>(criteria), 0),
                           std::vector<Time>(static_cast<std::size_t>(criteria), 0)});
        active[static_cast<std::size_t>(graph.source)].push_back(0);
        std::deque<int> queue{0};

        while (!queue.empty()) {
            const int idx = queue.front();
            queue.pop_front();
            if (!pool[static_cast<std::size_t>(idx)].alive) continue;
            if (pool[static_cast<std::size_t>(idx)].hops >= V) continue;
            // Copy: pushing into the pool may invalidate references.
            const Lab cur = pool[static_cast<std::size_t>(idx)];
            for (int arc_id : out[static_cast<std::size_t>(cur.vertex)]) {
                const auto& sw = search_w[static_cast<std::size_t>(arc_id)];
                const auto& tw = true_w[static_cast<std::size_t>(arc_id)];
                std::vector<Time> ns(static_cast<std::size_t>(criteria));
                bool over = false;
                for (int k = 0; k < criteria; ++k) {
                    ns[static_cast<std::size_t>(k)] = checked_add(cur.s[static_cast<std::size_t>(k)], sw[static_cast<std::size_t>(k)]);
                    if (ns[static_cast<std::size_t>(k)] > cap) { over = true; break; }
                }
                if (over) continue;
                std::vector<Time> nt(static_cast<std::size_t>(criteria));
                for (int k = 0; k < criteria; ++k)
                    nt[static_cast<std::size_t>(k)] = checked_add(cur.t[static_cast<std::size_t>(k)], tw[static_cast<std::size_t>(k)]);
                const std::uint32_t nflags = cur.flags | arc_bit(arc_id);
                const int head = graph.arcs[static_cast<std::size_t>(arc_id)].head;

                bool drop = false;
                auto& cell = active[static_cast<std::size_t>(head)];
                for (std::size_t ci = 0; ci < cell.size() && !drop;) {
                    Lab& ex = pool[static_cast<std::size_t>(cell[ci])];
                    if (ex.flags != nflags) { ++ci; continue; }
                    bool ex_le = true, new_le = true, equal = true;
                    for (int k = 0; k < criteria; ++k) {
                        const Time a = ex.s[static_cast<std::size_t>(k)], b = ns[static_cast<std::size_t>(k)];
                        if (a > b) ex_le = false;
                        if (b > a) new_le = false;
                        if (a != b) equal = false;
                    }
                    if (equal) {
                        // Same search sums: keep the smaller (true sums, path).
                        int tcmp = 0;
                        for (int k = 0; k < criteria && tcmp == 0; ++k) {
                            if (nt[static_cast<std::size_t>(k)] < ex.t[static_cast<std::size_t>(k)]) tcmp = -1;
                            if (nt[static_cast<std::size_t>(k)] > ex.t[static_cast<std::size_t>(k)]) tcmp = 1;
                        }
                        bool replace;
                        if (tcmp != 0) {
                            replace = tcmp < 0;
                        } else {
                            std::vector<int> np = reconstruct(idx);
                            np.push_back(arc_id);
                            replace = np < reconstruct(cell[ci]);
                        }
                        if (replace) {
                            ex.alive = false;
                            cell[ci] = cell.back();
                            cell.pop_back();
                        } else {
                            drop = true;
                        }
                    } else if (ex_le) {
                        drop = true;
                    } else if (new_le) {
                        ex.alive = false;
                        cell[ci] = cell.back();
                        cell.pop_back();
                    } else {
                        ++ci;
                    }
                }
                if (drop) continue;
                pool.push_back(Lab{head, cur.hops + 1, nflags, idx, arc_id, true, std::move(ns), std::move(nt)});
                const int nidx = static_cast<int>(pool.size()) - 1;
                cell.push_back(nidx);
                queue.push_back(nidx);
            }
        }

        int best = -1;
        for (int idx : active[static_cast<std::size_t>(graph.sink)]) {
            const Lab& lab = pool[static_cast<std::size_t>(idx)];
            if (lab.flags != full) continue;
            if (best < 0) { best = idx; continue; }
            const Lab& inc = pool[static_cast<std::size_t>(best)];
            Time lab_max = 0, inc_max = 0;
            for (int k = 0; k < criteria; ++k) {
                lab_max = std::max(lab_max, lab.t[static_cast<std::size_t>(k)]);
                inc_max = std::max(inc_max, inc.t[static_cast<std::size_t>(k)]);
            }
            if (lab_max != inc_max) {
                if (lab_max < inc_max) best = idx;
                continue;
            }
            if (lab.t != inc.t) {
                if (lab.t < inc.t) best = idx;
                continue;
            }
            if (reconstruct(idx) < reconstruct(best)) best = idx;
        }
        if (best < 0) return std::nullopt;
        return reconstruct(best);
    }
};

}  // namespace detail

// Classic single-weight shortest path. Among minimum-weight simple s-t paths
// the lexicographically smallest arc-id sequence is returned.
inline std::optional<PathResult> shortest_path(const Graph& graph, std::span<const Time> weights) {
    if (weights.size() != graph.arcs.size())
        throw std::invalid_argument("shortest_path: need one weight per arc");
    for (Time w : weights)
        if (w < 0) throw std::invalid_argument("shortest_path: negative weight");

    const int V = graph.vertex_count;
    const Time INF = std::numeric_limits<Time>::max();
    auto dijkstra = [&](int start, bool forward) {
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(V));  // (neighbor, arc)
        for (const Arc& a : graph.arcs) {
            if (forward)
                adj[static_cast<std::size_t>(a.tail)].push_back({a.head, a.id});
            else
                adj[static_cast<std::size_t>(a.head)].push_back({a.tail, a.id});
        }
        std::vector<Time> dist(static_cast<std::size_t>(V), INF);
        dist[static_cast<std::size_t>(start)] = 0;
        using Item = std::pair<Time, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.push({0, start});
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[static_cast<std::size_t>(v)]) continue;
            for (const auto& [u, arc] : adj[static_cast<std::size_t>(v)]) {
                const Time nd = checked_add(d, weights[static_cast<std::size_t>(arc)]);
                if (nd < dist[static_cast<std::size_t>(u)]) {
                    dist[static_cast<std::size_t>(u)] = nd;
                    heap.push({nd, u});
                }
            }
        }
        return dist;
    };

    const auto dist_s = dijkstra(graph.source, true);
    if (dist_s[static_cast<std::size_t>(graph.sink)] == INF) return std::nullopt;
    const auto dist_t = dijkstra(graph.sink, false);
    const Time opt = dist_s[static_cast<std::size_t>(graph.sink)];

    // DFS over tight arcs in arc-id order; the first simple s-t path found is
    // the lexicographically smallest optimal one.
    const auto out = graph.out_arcs();
    std::vector<bool> on_path(static_cast<std::size_t>(V), false);
    std::vector<int> arcs;
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int v, Time used) -> void {
        if (found) return;
        if (v == graph.sink) {
            found = arcs;
            return;
        }
        on_path[static_cast<std::size_t>(v)] = true;
        for (int id : out[static_cast<std::size_t>(v)]) {
            const Arc& a = graph.arcs[static_cast<std::size_t>(id)];
            if (on_path[static_cast<std::size_t>(a.head)]) continue;
            const Time w = weights[static_cast<std::size_t>(id)];
            if (dist_t[static_cast<std::size_t>(a.head)] == INF) continue;
            if (used + w + dist_t[static_cast<std::size_t>(a.head)] != opt) continue;
            arcs.push_back(id);
            self(self, a.head, used + w);
            if (found) return;
            arcs.pop_back();
        }
        on_path[static_cast<std::size_t>(v)] = false;
    };
    dfs(dfs, graph.source, 0);
    if (!found) return std::nullopt;  // unreachable: opt is finite

    PathResult r;
    r.arcs = *found;
    r.sums = {opt};
    r.value = opt;
    return r;
}

// Exact min-max path over s-t walks of at most |V| arcs that visit every
// required arc; with no required arcs this equals the min-max shortest
// simple path. Removable cycles are shortcut from the returned path.
inline std::optional<PathResult> minmax_path_exact(const Graph& graph, const WeightVectorMap& wm,
                                                   std::span<const int> required_arcs = {}) {
    wm.validate(graph);
    detail::LabelDp dp(graph, wm.criteria, wm.weights, wm.weights, wm.max_total(), required_arcs);
    auto arcs = dp.run();
    if (!arcs) return std::nullopt;
    const std::set<int> required(dp.required.begin(), dp.required.end());
    detail::shortcut_cycles(graph, *arcs, required);
    return detail::make_path_result(wm, std::move(*arcs));
}

// Scaling FPTAS around the exact DP: binary search on a value guess g with
// weights scaled by theta = eps*g/|V|, keeping true sums alongside for
// reporting. Returned value is within (1+eps) of the exact optimum and
// no-path exactly when the exact variant reports no-path.
inline std::optional<PathResult> minmax_path_fptas(const Graph& graph, const WeightVectorMap& wm,
                                                   std::span<const int> required_arcs, Rational eps) {
    if (!eps.positive()) throw std::invalid_argument("minmax_path_fptas: eps must be positive");
    wm.validate(graph);

    // Zero-value run: capping search sums at 0 restricts the DP to all-zero
    // arcs, deciding whether a zero-value admissible path exists.
    {
        detail::LabelDp dp(graph, wm.criteria, wm.weights, wm.weights, 0, required_arcs);
        if (auto arcs = dp.run()) {
            const std::set<int> required(dp.required.begin(), dp.required.end());
            detail::shortcut_cycles(graph, *arcs, required);
            return detail::make_path_result(wm, std::move(*arcs));
        }
    }
    const Time W = wm.max_total();
    if (W == 0) return std::nullopt;  // all weights zero and no admissible path

    // Per-criterion Dijkstra values lower-bound the constrained optimum.
    Time lb = 1;
    for (int k = 0; k < wm.criteria; ++k) {
        std::vector<Time> w(wm.weights.size());
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = wm.weights[j][static_cast<std::size_t>(k)];
        const auto sp = shortest_path(graph, w);
        if (!sp) return std::nullopt;  // no s-t path at all
        lb = std::max(lb, sp->value);
    }

    const auto V = static_cast<std::int64_t>(graph.vertex_count);
    std::optional<std::vector<int>> best_arcs;
    Time best_value = 0;
    auto consider = [&](std::vector<int> arcs) {
        const auto sums = detail::path_sums(wm, arcs);
        Time value = 0;
        for (Time s : sums) value = std::max(value, s);
        if (!best_arcs || value < best_value) {
            best_arcs = std::move(arcs);
            best_value = value;
        }
    };
    auto test = [&](Time g) {
        // theta = eps*g/V as p/q; theta <= 1 degenerates to an exact run
        // capped at g.
        const std::int64_t p = checked_mul(eps.num, g);
        const std::int64_t q = checked_mul(eps.den, V);
        std::vector<std::vector<Time>> scaled(wm.weights.size());
        Time cap;
        if (p <= q) {
            scaled = wm.weights;
            cap = g;
        } else {
            for (std::size_t j = 0; j < scaled.size(); ++j) {
                scaled[j].resize(static_cast<std::size_t>(wm.criteria));
                for (int k = 0; k < wm.criteria; ++k)
                    scaled[j][static_cast<std::size_t>(k)] =
                        floor_scale(wm.weights[j][static_cast<std::size_t>(k)], q, p);
            }
            cap = floor_scale(g, q, p);
        }
        detail::LabelDp dp(graph, wm.criteria, scaled, wm.weights, cap, required_arcs);
        auto arcs = dp.run();
        if (!arcs) return false;
        consider(std::move(*arcs));
        return true;
    };

    if (test(W)) {
        Time lo = lb, hi = W;
        while (lo < hi) {
            const Time mid = lo + (hi - lo) / 2;
            if (test(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
    }
    if (!best_arcs) {
        // Scaled runs found nothing; let the exact DP settle feasibility.
        return minmax_path_exact(graph, wm, required_arcs);
    }
    std::set<int> required(required_arcs.begin(), required_arcs.end());
    detail::shortcut_cycles(graph, *best_arcs, required);
    return detail::make_path_result(wm, std::move(*best_arcs));
}

}  // namespace shopsp

#endif  // SHOPSP_PATHS_HPP
