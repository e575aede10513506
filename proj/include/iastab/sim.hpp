#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iastab/decision.hpp"
#include "iastab/policies.hpp"
#include "iastab/rate_model.hpp"
#include "iastab/rng.hpp"
#include "iastab/system_config.hpp"

namespace iastab {

struct ArrivalSpec {
    enum class Kind { Poisson, Deterministic };
    Kind kind = Kind::Poisson;
    std::vector<double> means; // bits/slot per pair
    double cap = 0.0;          // A_max, samples are truncated here

    // Poisson arrivals truncated at 50x the largest mean, which shifts the
    // mean by less than 1e-10 relative.
    static ArrivalSpec poisson(std::vector<double> means);
    static ArrivalSpec deterministic(std::vector<double> means);
    static ArrivalSpec uniform_poisson(int pairs, double mean);
};

struct QueueTrajectory {
    std::int64_t horizon = 0;
    std::vector<double> total_per_slot; // sum_k q_k(t)
    std::vector<double> per_pair_avg;   // time-average queue per pair
    double total_avg = 0.0;             // (1/M) sum_t sum_k q_k(t)
    double second_half_slope = 0.0;     // LS slope of total queue, bits/slot
    bool divergent = false;
    double ia_share = 0.0; // fraction of slots served with the IA technique
};

enum class ServiceModel { AnalyticBernoulli, Distributional };

enum class PolicyKind { MaxWeightBrute, MaxWeight, ApproxMaxWeight, SvdLargestQueue, Switching };

struct PolicySpec {
    PolicyKind kind = PolicyKind::MaxWeight;
    CsiCase csi = CsiCase::Imperfect;

    std::string label() const;
};

PolicyKind policy_kind_from_name(const std::string& name);

// Per-stream SINR samples for active pair k under the validated Exp/Gamma/Beta
// reduction of the residual interference (imperfect) or the pure Exp(1)
// desired gain (perfect).
std::vector<double> sample_stream_sinr(const SystemConfig& cfg, const Decision& active, int k,
                                       CsiCase mode, RngStream& rng);

struct EmpiricalEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

// Empirical P{SINR >= tau} over n slot samples (n*d streams) with its binomial
// standard error.
EmpiricalEstimate empirical_success(const SystemConfig& cfg, const Decision& active, int k,
                                    CsiCase mode, std::int64_t n, RngStream& rng);

// One TDMA-SVD per-stream SNR sample: scaled uniformly-chosen eigenvalue of
// the Wishart form of a fresh complex Gaussian channel matrix.
double sample_svd_gain(const SystemConfig& cfg, RngStream& rng);
double sample_svd_gain(const SystemConfig& cfg, int k, RngStream& rng);

// Slot-by-slot queue recursion q <- max(q - B, 0) + A under the chosen policy
// and service model.
QueueTrajectory run_queue_sim(const SystemConfig& cfg, const PolicySpec& policy,
                              const ArrivalSpec& arrivals, std::int64_t horizon,
                              ServiceModel service, RngStream& rng);

struct SweepPoint {
    double arrival_mean = 0.0;
    double total_avg_queue = 0.0;
    double stderr_ = 0.0;
    bool divergent = false; // majority of replicas flagged divergent
    double ia_share = 0.0;
};

// Uniform-arrival sweep over a grid of means; replicas and grid points run in
// parallel on independent streams and are merged in grid order.
std::vector<SweepPoint> arrival_sweep(const SystemConfig& cfg, const PolicySpec& policy,
                                      const std::vector<double>& grid, std::int64_t horizon,
                                      int replicas, std::uint64_t seed, ServiceModel service,
                                      int threads = 0);

} // namespace iastab
