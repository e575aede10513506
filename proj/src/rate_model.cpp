#include "iastab/rate_model.hpp"

#include <cmath>
#include <stdexcept>

#include "iastab/errors.hpp"
#include "iastab/numerics.hpp"

namespace iastab {

namespace {

void require_active(const Decision& active, int k, const char* op) {
    if (k < 0 || k >= active.pairs())
        throw std::invalid_argument(std::string(op) + ": pair index out of range");
    if (!active.active(k))
        throw std::invalid_argument(std::string(op) + ": pair is not in the active set");
}

// One interferer's factor of the residual-interference MGF:
// (1 - g_ki)^Q * 2F1(b, Q; a+b; g_ki) with the Beta parameters built from d_i.
double mgf_factor(const SystemConfig& cfg, int q, int k, int i, int d_i) {
    const double delta = std::exp2(double(cfg.bits) / q);
    const double a_breve = (double(q + 1) * d_i - 1.0) / q;
    const double b_breve = (q - 1) * a_breve;
    const double ratio = cfg.zeta(k, i) * cfg.sinr_threshold * d_i / (cfg.zeta(k, k) * delta);
    const double z = 1.0 / (1.0 / ratio + 1.0);
    return std::pow(ratio + 1.0, -double(q)) * gauss_2f1(b_breve, q, a_breve + b_breve, z);
}

double slot_share(const SystemConfig& cfg, int active_count) {
    const double share = 1.0 - active_count * cfg.probe_frac;
    if (share <= 0.0)
        throw ConfigError("rate: L*theta >= 1, probing leaves no time for transmission");
    return share;
}

} // namespace

double g_factor(const SystemConfig& cfg, int k, int i) {
    if (k == i) throw std::invalid_argument("g_factor: requires k != i");
    const DerivedParams dp = cfg.derived();
    return 1.0 /
           (cfg.zeta(k, k) * dp.delta / (cfg.zeta(k, i) * cfg.sinr_threshold * cfg.streams) + 1.0);
}

double mgf_residual(const SystemConfig& cfg, const Decision& active, int k,
                    std::span<const int> streams_per_pair) {
    require_active(active, k, "mgf_residual");
    if (!streams_per_pair.empty() && int(streams_per_pair.size()) != cfg.pairs)
        throw std::invalid_argument("mgf_residual: streams_per_pair must have one entry per pair");
    const int q = cfg.tx_antennas * cfg.rx_antennas - 1;
    double prod = 1.0;
    for (int i : active.active_indices()) {
        if (i == k) continue;
        const int d_i = streams_per_pair.empty() ? cfg.streams : streams_per_pair[i];
        prod *= mgf_factor(cfg, q, k, i, d_i);
    }
    return prod;
}

double success_prob(const SystemConfig& cfg, const Decision& active, int k, CsiCase mode) {
    require_active(active, k, "success_prob");
    const double base = std::exp(-cfg.noise_var * cfg.sinr_threshold / cfg.alpha(k, k));
    if (mode == CsiCase::Perfect) return base;
    return base * mgf_residual(cfg, active, k);
}

double avg_rate_user(const SystemConfig& cfg, const Decision& active, int k, CsiCase mode) {
    require_active(active, k, "avg_rate_user");
    return slot_share(cfg, active.count()) * cfg.streams * cfg.rate_per_stream *
           success_prob(cfg, active, k, mode);
}

double symmetric_F(const SystemConfig& cfg) {
    if (!cfg.is_symmetric())
        throw std::invalid_argument("symmetric_F: configuration is not symmetric");
    if (cfg.pairs < 2) return 1.0; // no cross links, interference-free
    const DerivedParams dp = cfg.derived();
    const double ratio =
        cfg.zeta_cross() * cfg.sinr_threshold * cfg.streams / (cfg.zeta_direct() * dp.delta);
    const double z = 1.0 / (1.0 / ratio + 1.0);
    return std::pow(ratio + 1.0, -double(dp.q)) *
           gauss_2f1(dp.b_breve, dp.q, dp.a_breve + dp.b_breve, z);
}

double symmetric_rate(const SystemConfig& cfg, int active_count, CsiCase mode, bool total) {
    if (active_count < 1 || active_count > cfg.pairs)
        throw std::invalid_argument("symmetric_rate: active count out of [1, N]");
    const double alpha = cfg.power * cfg.zeta_direct() / cfg.streams;
    double rate = slot_share(cfg, active_count) * cfg.streams * cfg.rate_per_stream *
                  std::exp(-cfg.noise_var * cfg.sinr_threshold / alpha);
    if (mode == CsiCase::Imperfect)
        rate *= std::pow(symmetric_F(cfg), active_count - 1);
    return total ? active_count * rate : rate;
}

double svd_rate(const SystemConfig& cfg, int k) {
    if (k < 0 || k >= cfg.pairs) throw std::invalid_argument("svd_rate: pair index out of range");
    const int ma = std::max(cfg.tx_antennas, cfg.rx_antennas);
    const int mi = std::min(cfg.tx_antennas, cfg.rx_antennas);
    // Per-stream SNR is (zeta P / (d sigma^2)) * lambda with the transmit power
    // split equally over the d active streams, matching the IA power model.
    const double x =
        cfg.streams * cfg.noise_var * cfg.sinr_threshold / (cfg.zeta(k, k) * cfg.power);
    double success = 0.0;
    for (int n = 0; n < mi; ++n) {
        const double omega_n =
            std::exp(log_factorial(n) - log_factorial(n + ma - mi)) / mi;
        const LaguerreCoeffs lag = laguerre_coeffs(n, ma - mi);
        for (int j = 0; j <= 2 * n; ++j) {
            double kappa_j = 0.0;
            for (int i = std::max(0, j - n); i <= std::min(j, n); ++i)
                kappa_j += lag.coeffs[i] * lag.coeffs[j - i];
            success += omega_n * kappa_j * upper_inc_gamma(j + ma - mi + 1, x);
        }
    }
    return (1.0 - cfg.probe_frac) * cfg.streams * cfg.rate_per_stream * success;
}

double svd_rate(const SystemConfig& cfg) {
    const double z0 = cfg.zeta(0, 0);
    for (int k = 1; k < cfg.pairs; ++k)
        if (cfg.zeta(k, k) != z0)
            throw std::invalid_argument("svd_rate: direct links differ, use the per-pair form");
    return svd_rate(cfg, 0);
}

double gbar(const SystemConfig& cfg, int k) {
    if (cfg.pairs < 2) throw std::invalid_argument("gbar: requires N >= 2");
    double sum = 0.0;
    for (int i = 0; i < cfg.pairs; ++i)
        if (i != k) sum += g_factor(cfg, k, i);
    return sum / (cfg.pairs - 1);
}

double phi_rate(const SystemConfig& cfg, int k, int active_count) {
    if (active_count < 1 || active_count > cfg.pairs)
        throw std::invalid_argument("phi_rate: active count out of [1, N]");
    const double base = slot_share(cfg, active_count) * cfg.streams * cfg.rate_per_stream *
                        std::exp(-cfg.noise_var * cfg.sinr_threshold / cfg.alpha(k, k));
    if (active_count == 1) return base;
    return base * std::pow(1.0 - gbar(cfg, k), active_count - 1);
}

double approx_rate(const SystemConfig& cfg, const Decision& active, int k, ApproxOrder order) {
    require_active(active, k, "approx_rate");
    const int count = active.count();
    const double base = slot_share(cfg, count) * cfg.streams * cfg.rate_per_stream *
                        std::exp(-cfg.noise_var * cfg.sinr_threshold / cfg.alpha(k, k));
    if (count == 1) return base;
    if (order == ApproxOrder::First) {
        double prod = 1.0;
        for (int i : active.active_indices())
            if (i != k) prod *= 1.0 - g_factor(cfg, k, i);
        return base * prod;
    }
    const double gb = gbar(cfg, k);
    double dev = 0.0;
    for (int i : active.active_indices())
        if (i != k) dev += g_factor(cfg, k, i) - gb;
    return base * (std::pow(1.0 - gb, count - 1) - std::pow(1.0 - gb, count - 2) * dev);
}

RateTable build_rate_table(const SystemConfig& cfg, RateMode mode) {
    if (cfg.pairs > 20) throw GuardError("build_rate_table: guard N <= 20 exceeded");
    const int n = cfg.pairs;
    RateTable table;
    table.pairs = n;
    table.mode = mode;
    table.values.assign((std::size_t(1) << n) * n, 0.0);

    std::vector<double> svd_per_pair;
    if (mode == RateMode::Svd) {
        svd_per_pair.resize(n);
        for (int k = 0; k < n; ++k) svd_per_pair[k] = svd_rate(cfg, k);
    }
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        const Decision dec(n, mask);
        const int count = dec.count();
        for (int k : dec.active_indices()) {
            double r = 0.0;
            switch (mode) {
            case RateMode::Imperfect: r = avg_rate_user(cfg, dec, k, CsiCase::Imperfect); break;
            case RateMode::Perfect: r = avg_rate_user(cfg, dec, k, CsiCase::Perfect); break;
            case RateMode::Phi: r = phi_rate(cfg, k, count); break;
            case RateMode::Svd: r = (count == 1) ? svd_per_pair[k] : 0.0; break;
            }
            table.values[std::size_t(mask) * n + k] = r;
        }
    }
    return table;
}

PhiTable build_phi_table(const SystemConfig& cfg) {
    PhiTable t;
    t.pairs = cfg.pairs;
    t.values.resize(std::size_t(cfg.pairs) * cfg.pairs);
    for (int k = 0; k < cfg.pairs; ++k)
        for (int l = 1; l <= cfg.pairs; ++l)
            t.values[std::size_t(k) * cfg.pairs + (l - 1)] = phi_rate(cfg, k, l);
    return t;
}

SymmetricRateLadder build_symmetric_ladder(const SystemConfig& cfg, CsiCase mode) {
    SymmetricRateLadder ladder;
    ladder.pairs = cfg.pairs;
    ladder.per_user.resize(cfg.pairs);
    for (int l = 1; l <= cfg.pairs; ++l) ladder.per_user[l - 1] = symmetric_rate(cfg, l, mode);
    return ladder;
}

} // namespace iastab
