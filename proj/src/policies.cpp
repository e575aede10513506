#include "iastab/policies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "iastab/errors.hpp"

namespace iastab {

namespace {
void check_dims(int pairs, const QueueState& q, const char* op) {
    if (int(q.q.size()) != pairs)
        throw std::invalid_argument(std::string(op) + ": queue vector does not match pair count");
    for (double v : q.q)
        if (v < 0.0) throw std::invalid_argument(std::string(op) + ": queue lengths must be >= 0");
}

// Indices sorted by queue length descending, smallest index first on ties.
std::vector<int> sort_by_queue(const QueueState& q) {
    std::vector<int> idx(q.q.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return q.q[a] > q.q[b]; });
    return idx;
}

Decision decision_from_sorted_prefix(int pairs, const std::vector<int>& order, int count) {
    std::uint32_t mask = 0;
    for (int j = 0; j < count; ++j) mask |= 1u << order[j];
    return Decision(pairs, mask);
}

// Objective recomputed pair-by-pair in index order so that equal decisions
// produce bit-identical sums across policies.
double weighted_sum(const Decision& dec, const std::vector<double>& per_user_rate,
                    const QueueState& q) {
    double sum = 0.0;
    for (int k : dec.active_indices()) sum += per_user_rate[k] * q.q[k];
    return sum;
}
} // namespace

ScheduleOutcome maxweight_brute(const RateTable& rates, const QueueState& q) {
    const int n = rates.pairs;
    if (n > 20) throw GuardError("maxweight_brute: guard N <= 20 exceeded");
    if (rates.values.size() != (std::size_t(1) << n) * std::size_t(n))
        throw std::invalid_argument("maxweight_brute: rate table does not cover all decisions");
    check_dims(n, q, "maxweight_brute");

    std::uint32_t best_mask = 0;
    double best = 0.0;
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        double obj = 0.0;
        for (int k = 0; k < n; ++k)
            if ((mask >> k) & 1u) obj += rates.at(mask, k) * q.q[k];
        if (obj > best || (obj == best && decision_precedes(mask, best_mask, n)))
            best = obj, best_mask = mask;
    }
    return {Decision(n, best_mask), rates.mode == RateMode::Svd ? TechniqueTag::TdmaSvd
                                                                : TechniqueTag::Ia,
            best};
}

ScheduleOutcome maxweight_symmetric(const SymmetricRateLadder& ladder, const QueueState& q) {
    const int n = ladder.pairs;
    check_dims(n, q, "maxweight_symmetric");
    const std::vector<int> order = sort_by_queue(q);

    int best_count = 0;
    double best = 0.0, prefix = 0.0;
    for (int l = 1; l <= n; ++l) {
        prefix += q.q[order[l - 1]];
        const double val = ladder.per_user[l - 1] * prefix;
        if (val > best) {
            best = val;
            best_count = l;
        }
    }
    const Decision dec = decision_from_sorted_prefix(n, order, best_count);
    std::vector<double> rate(n, best_count > 0 ? ladder.per_user[best_count - 1] : 0.0);
    return {dec, TechniqueTag::Ia, weighted_sum(dec, rate, q)};
}

ScheduleOutcome maxweight_symmetric(const SystemConfig& cfg, const QueueState& q, CsiCase mode) {
    if (!cfg.is_symmetric())
        throw std::invalid_argument("maxweight_symmetric: requires a symmetric configuration");
    return maxweight_symmetric(build_symmetric_ladder(cfg, mode), q);
}

ScheduleOutcome approx_schedule(const PhiTable& phi, const QueueState& q) {
    const int n = phi.pairs;
    check_dims(n, q, "approx_schedule");

    int best_count = 0;
    std::vector<int> best_set;
    double best = 0.0;
    std::vector<int> idx(n);
    std::vector<double> pro(n);
    for (int l = 1; l <= n; ++l) {
        for (int k = 0; k < n; ++k) pro[k] = phi.at(k, l) * q.q[k];
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return pro[a] > pro[b]; });
        double ws = 0.0;
        for (int j = 0; j < l; ++j) ws += pro[idx[j]];
        if (ws > best) {
            best = ws;
            best_count = l;
            best_set.assign(idx.begin(), idx.begin() + l);
        }
    }
    std::uint32_t mask = 0;
    for (int k : best_set) mask |= 1u << k;
    const Decision dec(n, mask);
    double obj = 0.0;
    for (int k : dec.active_indices()) obj += phi.at(k, best_count) * q.q[k];
    return {dec, TechniqueTag::Ia, best_count > 0 ? obj : 0.0};
}

ScheduleOutcome approx_schedule(const SystemConfig& cfg, const QueueState& q) {
    return approx_schedule(build_phi_table(cfg), q);
}

ScheduleOutcome svd_schedule(const QueueState& q, double rate_svd) {
    const int n = int(q.q.size());
    int best_k = -1;
    double best_q = 0.0;
    for (int k = 0; k < n; ++k) {
        if (q.q[k] > best_q) {
            best_q = q.q[k];
            best_k = k;
        }
    }
    if (best_k < 0) return {Decision::empty(n), TechniqueTag::TdmaSvd, 0.0};
    return {Decision::single(n, best_k), TechniqueTag::TdmaSvd, rate_svd * best_q};
}

ScheduleOutcome switching_schedule(const SystemConfig& cfg, const QueueState& q, CsiCase mode) {
    const ScheduleOutcome ia = maxweight_symmetric(cfg, q, mode);
    const ScheduleOutcome svd = svd_schedule(q, svd_rate(cfg));
    return ia.objective >= svd.objective ? ia : svd;
}

} // namespace iastab
