#pragma once
#include <vector>

#include "iastab/decision.hpp"
#include "iastab/rate_model.hpp"
#include "iastab/system_config.hpp"

namespace iastab {

struct QueueState {
    std::vector<double> q; // bits, one entry per pair
};

enum class TechniqueTag { Ia, TdmaSvd };

struct ScheduleOutcome {
    Decision decision;
    TechniqueTag technique = TechniqueTag::Ia;
    double objective = 0.0; // weighted sum achieved by the reported decision
};

// Exhaustive Max-Weight over all 2^N decisions of the given rate table.
// Ties go to the decision with fewer pairs, then smallest indices.
ScheduleOutcome maxweight_brute(const RateTable& rates, const QueueState& q);

// Reduced-complexity Max-Weight for symmetric systems: sort the queues in
// descending order and scan the prefix loads. O(N^2) worst case.
ScheduleOutcome maxweight_symmetric(const SymmetricRateLadder& ladder, const QueueState& q);
ScheduleOutcome maxweight_symmetric(const SystemConfig& cfg, const QueueState& q,
                                    CsiCase mode = CsiCase::Imperfect);

// Reduced-complexity approximate policy: for each cardinality l, take the l
// largest products phi_k(l) q_k and keep the best prefix sum.
ScheduleOutcome approx_schedule(const PhiTable& phi, const QueueState& q);
ScheduleOutcome approx_schedule(const SystemConfig& cfg, const QueueState& q);

// TDMA-SVD: schedule the pair with the largest queue (smallest index on ties);
// objective is rate_svd times that queue length.
ScheduleOutcome svd_schedule(const QueueState& q, double rate_svd = 1.0);

// Pick whichever of IA Max-Weight and TDMA-SVD yields the larger weighted sum;
// IA wins exact ties.
ScheduleOutcome switching_schedule(const SystemConfig& cfg, const QueueState& q, CsiCase mode);

} // namespace iastab
