#ifndef SHOPSP_SHOP_SW_HPP
#define SHOPSP_SHOP_SW_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "shopsp/common.hpp"
#include "shopsp/shop.hpp"
#include "shopsp/shop_exact.hpp"
#include "shopsp/types.hpp"

namespace shopsp {

namespace detail {

// Minimal unsigned big integer: enough for comparing p * D^(2^k) against
// N^(2^k) * P with exact arithmetic. Limbs are base 2^64, little endian.
class BigUint {
  public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    static BigUint mul(const BigUint& a, const BigUint& b) {
        BigUint r;
        if (a.limbs_.empty() || b.limbs_.empty()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j] +
                                        r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                unsigned __int128 cur = static_cast<unsigned __int128>(r.limbs_[k]) + carry;
                r.limbs_[k] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    BigUint square() const { return mul(*this, *this); }

    // -1, 0, 1
    static int cmp(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
        return 0;
    }

  private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint64_t> limbs_;
};

// alpha_k = (num/den)^(2^k); comparisons against alpha_k * reference stay in
// integers: value OP alpha_k * ref  <=>  value * den^(2^k) OP num^(2^k) * ref.
struct AlphaPower {
    BigUint num_pow;
    BigUint den_pow;

    static AlphaPower base(std::int64_t num, std::int64_t den) {
        return {BigUint(static_cast<std::uint64_t>(num)), BigUint(static_cast<std::uint64_t>(den))};
    }
    AlphaPower squared() const { return {num_pow.square(), den_pow.square()}; }

    // value >= alpha * ref
    bool geq(Time value, Time ref) const {
        return BigUint::cmp(BigUint::mul(BigUint(static_cast<std::uint64_t>(value)), den_pow),
                            BigUint::mul(BigUint(static_cast<std::uint64_t>(ref)), num_pow)) >= 0;
    }
    // value > alpha * ref
    bool gt(Time value, Time ref) const {
        return BigUint::cmp(BigUint::mul(BigUint(static_cast<std::uint64_t>(value)), den_pow),
                            BigUint::mul(BigUint(static_cast<std::uint64_t>(ref)), num_pow)) > 0;
    }
};

// Earliest start >= 0 such that [t, t+d) avoids every busy interval.
inline Time first_fit_start(std::vector<std::pair<Time, Time>> busy, Time d) {
    if (d == 0) return 0;
    std::sort(busy.begin(), busy.end());
    Time t = 0;
    for (const auto& [s, e] : busy) {
        if (s >= e) continue;
        if (s < t + d && t < e) t = e;  // busy is start-sorted, so one pass suffices
    }
    return t;
}

}  // namespace detail

struct SwOptions {
    Rational eps{1, 4};
    ExactLimits exact;
};

struct SwSchedule {
    Schedule schedule;
    int alpha_index = 0;           // selected k in alpha_k = base^(2^k)
    std::vector<int> large_jobs;   // ids of jobs scheduled in the first stage
    bool large_exact = true;       // false when the exact cap forced a greedy fallback
};

// Open-shop scheduler in the large/small job split style: pick the first
// alpha_k = (eps/(m(3+eps)))^(2^k) whose medium-size op class O1_S totals at
// most eps/(3+eps) of the max machine load, schedule the large jobs exactly
// (greedy fallback beyond the exact cap), then first-fit the small ops into
// the idle gaps.
inline SwSchedule schedule_sw_om(std::span<const Job> jobs, int machines, const SwOptions& options) {
    if (!options.eps.positive()) throw std::invalid_argument("schedule_sw_om: eps must be positive");
    SwSchedule result;

    Time pmax = 0;  // max machine load
    for (int m = 0; m < machines; ++m) {
        Time load = 0;
        for (const Job& j : jobs) load = checked_add(load, j.time_on(m));
        pmax = std::max(pmax, load);
    }

    // alpha base eps/(m(3+eps)) = eps_num / (m*(3*eps_den + eps_num)).
    const std::int64_t base_num = options.eps.num;
    const std::int64_t base_den =
        checked_mul(static_cast<std::int64_t>(machines),
                    checked_add(checked_mul(3, options.eps.den), options.eps.num));
    // O1_S total <= eps/(3+eps) * pmax, i.e. total*(3*eps_den+eps_num) <= eps_num*pmax.
    const Rational o1_limit(options.eps.num, checked_add(checked_mul(3, options.eps.den), options.eps.num));

    detail::AlphaPower alpha = detail::AlphaPower::base(base_num, base_den);
    std::vector<int> large_idx;
    for (int k = 0;; ++k) {
        if (k > 64) throw std::logic_error("schedule_sw_om: alpha selection did not terminate");
        const detail::AlphaPower alpha_sq = alpha.squared();
        large_idx.clear();
        Time o1_total = 0;
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            bool large = false;
            for (const Op& o : jobs[j].ops)
                if (alpha.geq(o.duration, pmax) && o.duration > 0) { large = true; break; }
            if (large) {
                large_idx.push_back(static_cast<int>(j));
            } else {
                for (const Op& o : jobs[j].ops)
                    if (alpha_sq.gt(o.duration, pmax)) o1_total = checked_add(o1_total, o.duration);
            }
        }
        if (leq_scaled(o1_total, o1_limit, pmax)) {
            result.alpha_index = k;
            break;
        }
        alpha = alpha_sq;
    }

    std::vector<Job> large_jobs;
    for (int j : large_idx) {
        large_jobs.push_back(jobs[static_cast<std::size_t>(j)]);
        result.large_jobs.push_back(jobs[static_cast<std::size_t>(j)].id);
    }
    std::size_t large_ops = 0;
    for (const Job& j : large_jobs)
        for (const Op& o : j.ops)
            if (o.duration > 0) ++large_ops;

    Schedule base;
    if (large_ops <= options.exact.max_ops) {
        base = schedule_exact_small(large_jobs, machines, ShopKind::open, options.exact);
    } else {
        base = schedule_dense_open(large_jobs, machines);
        result.large_exact = false;
    }

    // First-fit the remaining jobs' ops into the gaps, jobs by ascending id,
    // ops in machine order.
    std::vector<std::vector<std::pair<Time, Time>>> machine_busy(static_cast<std::size_t>(machines));
    std::vector<std::pair<Time, Time>> job_busy;
    for (const Assignment& a : base.assignments)
        if (a.duration > 0) machine_busy[static_cast<std::size_t>(a.machine)].push_back({a.start, a.finish()});

    Schedule out = base;
    std::vector<std::size_t> small_order;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        if (std::find(large_idx.begin(), large_idx.end(), static_cast<int>(j)) == large_idx.end())
            small_order.push_back(j);
    std::sort(small_order.begin(), small_order.end(),
              [&jobs](std::size_t x, std::size_t y) { return jobs[x].id < jobs[y].id; });
    for (std::size_t j : small_order) {
        job_busy.clear();
        for (std::size_t o = 0; o < jobs[j].ops.size(); ++o) {
            const Op& op = jobs[j].ops[o];
            std::vector<std::pair<Time, Time>> busy = machine_busy[static_cast<std::size_t>(op.machine)];
            busy.insert(busy.end(), job_busy.begin(), job_busy.end());
            const Time start = detail::first_fit_start(std::move(busy), op.duration);
            out.assignments.push_back({jobs[j].id, static_cast<int>(o), op.machine, start, op.duration});
            if (op.duration > 0) {
                machine_busy[static_cast<std::size_t>(op.machine)].push_back({start, start + op.duration});
                job_busy.push_back({start, start + op.duration});
            }
        }
    }
    detail::sort_canonical(out);
    result.schedule = std::move(out);
    return result;
}

}  // namespace shopsp

#endif  // SHOPSP_SHOP_SW_HPP
