#include "iastab/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "iastab/errors.hpp"

namespace iastab {

namespace {

// Divergence rule: least-squares slope of the total queue over the second half
// of the horizon exceeding 1% of the total mean arrival rate.
constexpr double kDivergenceSlopeFraction = 0.01;

double second_half_slope(const std::vector<double>& total) {
    const std::size_t n = total.size();
    if (n < 4) return 0.0;
    const std::size_t start = n / 2;
    const std::size_t m = n - start;
    const double t_mean = (m - 1) / 2.0;
    double y_mean = 0.0;
    for (std::size_t i = start; i < n; ++i) y_mean += total[i];
    y_mean /= m;
    double num = 0.0, den = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        const double dt = double(i - start) - t_mean;
        num += dt * (total[i] - y_mean);
        den += dt * dt;
    }
    return den > 0.0 ? num / den : 0.0;
}

// Lazy per-(decision, pair) success probabilities for the Bernoulli service
// model; symmetric configurations index by cardinality only.
class SuccessCache {
public:
    SuccessCache(const SystemConfig& cfg, CsiCase mode) : cfg_(cfg), mode_(mode) {
        if (cfg.is_symmetric()) {
            by_count_.resize(cfg.pairs + 1, -1.0);
            symmetric_ = true;
        }
    }

    double get(const Decision& dec, int k) {
        if (symmetric_) {
            const int l = dec.count();
            if (by_count_[l] < 0.0) {
                const double share = 1.0 - l * cfg_.probe_frac;
                by_count_[l] = symmetric_rate(cfg_, l, mode_) /
                               (share * cfg_.streams * cfg_.rate_per_stream);
            }
            return by_count_[l];
        }
        const std::uint64_t key = (std::uint64_t(dec.mask()) << 5) | std::uint64_t(k);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const double p = success_prob(cfg_, dec, k, mode_);
        cache_.emplace(key, p);
        return p;
    }

private:
    const SystemConfig& cfg_;
    CsiCase mode_;
    bool symmetric_ = false;
    std::vector<double> by_count_;
    std::unordered_map<std::uint64_t, double> cache_;
};

// Pre-built scheduler state for one simulation run.
class Scheduler {
public:
    Scheduler(const SystemConfig& cfg, const PolicySpec& spec) : cfg_(cfg), spec_(spec) {
        switch (spec.kind) {
        case PolicyKind::MaxWeightBrute:
            table_ = build_rate_table(cfg, spec.csi == CsiCase::Perfect ? RateMode::Perfect
                                                                        : RateMode::Imperfect);
            break;
        case PolicyKind::MaxWeight:
            ladder_ = build_symmetric_ladder(cfg, spec.csi);
            break;
        case PolicyKind::ApproxMaxWeight:
            phi_ = build_phi_table(cfg);
            break;
        case PolicyKind::SvdLargestQueue:
            rate_svd_ = svd_rate(cfg);
            break;
        case PolicyKind::Switching:
            ladder_ = build_symmetric_ladder(cfg, spec.csi);
            rate_svd_ = svd_rate(cfg);
            break;
        }
    }

    ScheduleOutcome schedule(const QueueState& q) const {
        switch (spec_.kind) {
        case PolicyKind::MaxWeightBrute: return maxweight_brute(table_, q);
        case PolicyKind::MaxWeight: return maxweight_symmetric(ladder_, q);
        case PolicyKind::ApproxMaxWeight: return approx_schedule(phi_, q);
        case PolicyKind::SvdLargestQueue: return svd_schedule(q, rate_svd_);
        case PolicyKind::Switching: {
            const ScheduleOutcome ia = maxweight_symmetric(ladder_, q);
            const ScheduleOutcome svd = svd_schedule(q, rate_svd_);
            return ia.objective >= svd.objective ? ia : svd;
        }
        }
        throw std::logic_error("unreachable");
    }

private:
    const SystemConfig& cfg_;
    PolicySpec spec_;
    RateTable table_;
    SymmetricRateLadder ladder_;
    PhiTable phi_;
    double rate_svd_ = 0.0;
};

void validate_policy(const SystemConfig& cfg, const PolicySpec& spec) {
    const bool needs_symmetric =
        spec.kind == PolicyKind::MaxWeight || spec.kind == PolicyKind::Switching;
    if (needs_symmetric && !cfg.is_symmetric())
        throw ConfigError("policy '" + spec.label() + "' requires a symmetric configuration");
    if (spec.kind == PolicyKind::MaxWeightBrute && cfg.pairs > 20)
        throw GuardError("max_weight_brute: guard N <= 20 exceeded");
}

} // namespace

ArrivalSpec ArrivalSpec::poisson(std::vector<double> means) {
    ArrivalSpec s;
    s.kind = Kind::Poisson;
    s.cap = means.empty() ? 0.0 : 50.0 * *std::max_element(means.begin(), means.end());
    s.means = std::move(means);
    return s;
}

ArrivalSpec ArrivalSpec::deterministic(std::vector<double> means) {
    ArrivalSpec s;
    s.kind = Kind::Deterministic;
    s.cap = means.empty() ? 0.0 : *std::max_element(means.begin(), means.end());
    s.means = std::move(means);
    return s;
}

ArrivalSpec ArrivalSpec::uniform_poisson(int pairs, double mean) {
    return poisson(std::vector<double>(pairs, mean));
}

std::string PolicySpec::label() const {
    std::string base;
    switch (kind) {
    case PolicyKind::MaxWeightBrute: base = "max_weight_brute"; break;
    case PolicyKind::MaxWeight: base = "max_weight"; break;
    case PolicyKind::ApproxMaxWeight: base = "approx"; break;
    case PolicyKind::SvdLargestQueue: base = "svd"; break;
    case PolicyKind::Switching: base = "switching"; break;
    }
    if (kind != PolicyKind::SvdLargestQueue && csi == CsiCase::Perfect) base += "_perfect";
    return base;
}

PolicyKind policy_kind_from_name(const std::string& name) {
    if (name == "max_weight_brute") return PolicyKind::MaxWeightBrute;
    if (name == "max_weight") return PolicyKind::MaxWeight;
    if (name == "approx") return PolicyKind::ApproxMaxWeight;
    if (name == "svd") return PolicyKind::SvdLargestQueue;
    if (name == "switching") return PolicyKind::Switching;
    throw ConfigError("unknown policy: " + name);
}

std::vector<double> sample_stream_sinr(const SystemConfig& cfg, const Decision& active, int k,
                                       CsiCase mode, RngStream& rng) {
    if (k < 0 || k >= active.pairs() || !active.active(k))
        throw std::invalid_argument("sample_stream_sinr: pair is not in the active set");
    const DerivedParams dp = cfg.derived();
    const double alpha_kk = cfg.alpha(k, k);
    std::vector<double> sinr(cfg.streams);
    for (int m = 0; m < cfg.streams; ++m) {
        const double gain = rng.exponential(1.0);
        if (mode == CsiCase::Perfect) {
            sinr[m] = alpha_kk * gain / cfg.noise_var;
            continue;
        }
        double residual = 0.0;
        for (int i : active.active_indices()) {
            if (i == k) continue;
            const double x = rng.gamma(dp.q, dp.delta);
            const double y = rng.beta(dp.a_breve, dp.b_breve);
            residual += cfg.alpha(k, i) * cfg.streams * x * y;
        }
        sinr[m] = alpha_kk * gain / (cfg.noise_var + residual);
    }
    return sinr;
}

EmpiricalEstimate empirical_success(const SystemConfig& cfg, const Decision& active, int k,
                                    CsiCase mode, std::int64_t n, RngStream& rng) {
    if (n < 1000) throw std::invalid_argument("empirical_success: need n >= 1e3 samples");
    std::int64_t hits = 0;
    for (std::int64_t it = 0; it < n; ++it) {
        for (double s : sample_stream_sinr(cfg, active, k, mode, rng))
            if (s >= cfg.sinr_threshold) ++hits;
    }
    const double total = double(n) * cfg.streams;
    const double p = hits / total;
    return {p, std::sqrt(p * (1.0 - p) / total)};
}

double sample_svd_gain(const SystemConfig& cfg, int k, RngStream& rng) {
    const int nr = cfg.rx_antennas, nt = cfg.tx_antennas;
    const int mi = std::min(nr, nt);
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (int attempt = 0; attempt < 3; ++attempt) {
        Eigen::MatrixXcd h(nr, nt);
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nt; ++c)
                h(r, c) = std::complex<double>(rng.normal(), rng.normal()) * inv_sqrt2;
        // Eigenvalues of the smaller Gram matrix are the nonzero eigenvalues
        // of H H^H.
        const Eigen::MatrixXcd gram =
            nr <= nt ? Eigen::MatrixXcd(h * h.adjoint()) : Eigen::MatrixXcd(h.adjoint() * h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
        if (solver.info() != Eigen::Success) continue;
        const int pick = int(std::floor(rng.uniform() * mi));
        const double lambda = solver.eigenvalues()[std::min(pick, mi - 1)];
        return cfg.zeta(k, k) * cfg.power / (cfg.streams * cfg.noise_var) * std::max(lambda, 0.0);
    }
    throw NumericError("sample_svd_gain: eigen decomposition failed repeatedly", 0.0, 3);
}

double sample_svd_gain(const SystemConfig& cfg, RngStream& rng) {
    return sample_svd_gain(cfg, 0, rng);
}

QueueTrajectory run_queue_sim(const SystemConfig& cfg, const PolicySpec& policy,
                              const ArrivalSpec& arrivals, std::int64_t horizon,
                              ServiceModel service, RngStream& rng) {
    if (horizon < 1) throw std::invalid_argument("run_queue_sim: horizon must be >= 1");
    if (int(arrivals.means.size()) != cfg.pairs)
        throw ConfigError("arrivals: one mean per pair required");
    for (double a : arrivals.means)
        if (a < 0.0 || !std::isfinite(a)) throw ConfigError("arrivals: means must be finite and >= 0");
    validate_policy(cfg, policy);

    const Scheduler scheduler(cfg, policy);
    SuccessCache success(cfg, policy.csi);

    const int n = cfg.pairs;
    std::vector<double> p_svd(n, -1.0);
    auto svd_success = [&](int k) {
        if (p_svd[k] < 0.0)
            p_svd[k] =
                svd_rate(cfg, k) / ((1.0 - cfg.probe_frac) * cfg.streams * cfg.rate_per_stream);
        return p_svd[k];
    };

    QueueTrajectory traj;
    traj.horizon = horizon;
    traj.total_per_slot.resize(horizon);
    traj.per_pair_avg.assign(n, 0.0);

    QueueState q{std::vector<double>(n, 0.0)};
    std::int64_t ia_slots = 0, active_slots = 0;
    for (std::int64_t t = 0; t < horizon; ++t) {
        const ScheduleOutcome out = scheduler.schedule(q);
        const int count = out.decision.count();
        if (count > 0) {
            ++active_slots;
            if (out.technique == TechniqueTag::Ia) ++ia_slots;
            const double share = 1.0 - count * cfg.probe_frac;
            for (int k : out.decision.active_indices()) {
                int successes = 0;
                if (out.technique == TechniqueTag::TdmaSvd) {
                    if (service == ServiceModel::AnalyticBernoulli) {
                        const double p = svd_success(k);
                        for (int m = 0; m < cfg.streams; ++m)
                            successes += rng.bernoulli(p);
                    } else {
                        for (int m = 0; m < cfg.streams; ++m)
                            successes += sample_svd_gain(cfg, k, rng) >= cfg.sinr_threshold;
                    }
                } else if (service == ServiceModel::AnalyticBernoulli) {
                    const double p = success.get(out.decision, k);
                    for (int m = 0; m < cfg.streams; ++m) successes += rng.bernoulli(p);
                } else {
                    for (double s : sample_stream_sinr(cfg, out.decision, k, policy.csi, rng))
                        successes += s >= cfg.sinr_threshold;
                }
                const double served = share * cfg.rate_per_stream * successes;
                q.q[k] = std::max(q.q[k] - served, 0.0);
            }
        }
        double total = 0.0;
        for (int k = 0; k < n; ++k) {
            double a = 0.0;
            if (arrivals.kind == ArrivalSpec::Kind::Poisson)
                a = std::min(double(rng.poisson(arrivals.means[k])), arrivals.cap);
            else
                a = arrivals.means[k];
            q.q[k] += a;
            traj.per_pair_avg[k] += q.q[k];
            total += q.q[k];
        }
        traj.total_per_slot[t] = total;
    }

    double grand = 0.0;
    for (int k = 0; k < n; ++k) {
        grand += traj.per_pair_avg[k];
        traj.per_pair_avg[k] /= double(horizon);
    }
    traj.total_avg = grand / double(horizon);
    traj.second_half_slope = second_half_slope(traj.total_per_slot);
    double arrival_total = 0.0;
    for (double a : arrivals.means) arrival_total += a;
    traj.divergent = traj.second_half_slope > kDivergenceSlopeFraction * arrival_total;
    traj.ia_share = active_slots > 0 ? double(ia_slots) / double(active_slots) : 0.0;
    return traj;
}

std::vector<SweepPoint> arrival_sweep(const SystemConfig& cfg, const PolicySpec& policy,
                                      const std::vector<double>& grid, std::int64_t horizon,
                                      int replicas, std::uint64_t seed, ServiceModel service,
                                      int threads) {
    if (grid.empty()) throw std::invalid_argument("arrival_sweep: grid must be nonempty");
    if (replicas < 1) throw std::invalid_argument("arrival_sweep: replicas must be >= 1");
    validate_policy(cfg, policy);

    struct Task {
        std::size_t point;
        int replica;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < grid.size(); ++p)
        for (int r = 0; r < replicas; ++r) tasks.push_back({p, r});

    std::vector<QueueTrajectory> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& t = tasks[i];
            RngStream rng(seed, std::uint64_t(t.point) * replicas + t.replica);
            const ArrivalSpec arr = ArrivalSpec::uniform_poisson(cfg.pairs, grid[t.point]);
            results[i] = run_queue_sim(cfg, policy, arr, horizon, service, rng);
        }
    };
    int n_threads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, int(tasks.size())));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::vector<SweepPoint> out(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        SweepPoint& pt = out[p];
        pt.arrival_mean = grid[p];
        int divergent_count = 0;
        double mean = 0.0, ia = 0.0;
        for (int r = 0; r < replicas; ++r) {
            const QueueTrajectory& traj = results[p * replicas + r];
            mean += traj.total_avg;
            ia += traj.ia_share;
            divergent_count += traj.divergent ? 1 : 0;
        }
        mean /= replicas;
        ia /= replicas;
        double var = 0.0;
        for (int r = 0; r < replicas; ++r) {
            const double d = results[p * replicas + r].total_avg - mean;
            var += d * d;
        }
        pt.total_avg_queue = mean;
        pt.stderr_ = replicas > 1 ? std::sqrt(var / (replicas - 1) / replicas) : 0.0;
        pt.divergent = 2 * divergent_count > replicas;
        pt.ia_share = ia;
    }
    return out;
}

} // namespace iastab
