#include "iastab/system_config.hpp"

#include <algorithm>
#include <string>

#include "iastab/errors.hpp"

namespace iastab {

SystemConfig SystemConfig::symmetric(int pairs, int tx, int rx, int streams, double power,
                                     double noise_var, double probe_frac, int bits, double tau,
                                     double rate, double zeta_direct, double zeta_cross) {
    SystemConfig cfg;
    cfg.pairs = pairs;
    cfg.tx_antennas = tx;
    cfg.rx_antennas = rx;
    cfg.streams = streams;
    cfg.power = power;
    cfg.noise_var = noise_var;
    cfg.probe_frac = probe_frac;
    cfg.bits = bits;
    cfg.sinr_threshold = tau;
    cfg.rate_per_stream = rate;
    cfg.path_loss.assign(std::size_t(pairs) * pairs, zeta_cross);
    for (int k = 0; k < pairs; ++k) cfg.path_loss[std::size_t(k) * pairs + k] = zeta_direct;
    return cfg;
}

bool SystemConfig::is_symmetric() const {
    if (pairs < 1 || path_loss.size() != std::size_t(pairs) * pairs) return false;
    const double zd = zeta(0, 0);
    double zc = 0.0;
    bool have_cross = false;
    for (int k = 0; k < pairs; ++k) {
        for (int i = 0; i < pairs; ++i) {
            if (k == i) {
                if (zeta(k, i) != zd) return false;
            } else if (!have_cross) {
                zc = zeta(k, i);
                have_cross = true;
            } else if (zeta(k, i) != zc) {
                return false;
            }
        }
    }
    return true;
}

double SystemConfig::zeta_direct() const {
    if (!is_symmetric()) throw std::invalid_argument("zeta_direct: configuration is not symmetric");
    return zeta(0, 0);
}

double SystemConfig::zeta_cross() const {
    if (!is_symmetric()) throw std::invalid_argument("zeta_cross: configuration is not symmetric");
    if (pairs < 2) throw std::invalid_argument("zeta_cross: no cross links with a single pair");
    return zeta(0, 1);
}

void SystemConfig::validate() const {
    if (pairs < 1) throw ConfigError("system: pair count N must be >= 1");
    if (pairs > 31) throw ConfigError("system: pair count N must be <= 31");
    if (tx_antennas < 1 || rx_antennas < 1)
        throw ConfigError("system: antenna counts must be >= 1");
    if (tx_antennas * rx_antennas < 2)
        throw ConfigError("system: Nt*Nr must be >= 2 so that Q = Nt*Nr - 1 >= 1");
    if (streams < 1) throw ConfigError("system: stream count d must be >= 1");
    if (streams > std::min(tx_antennas, rx_antennas))
        throw ConfigError("system: violated invariant d <= min(Nt, Nr)");
    if (power <= 0.0) throw ConfigError("system: power P must be > 0");
    if (noise_var <= 0.0) throw ConfigError("system: noise variance sigma^2 must be > 0");
    if (probe_frac <= 0.0) throw ConfigError("system: probing fraction theta must be > 0");
    if (pairs * probe_frac >= 1.0)
        throw ConfigError("system: violated invariant N*theta < 1 (probing would fill the slot)");
    if (bits < 0) throw ConfigError("system: quantization bits B must be >= 0");
    if (sinr_threshold < 0.0) throw ConfigError("system: SINR threshold tau must be >= 0");
    if (rate_per_stream <= 0.0) throw ConfigError("system: rate per stream R must be > 0");
    if (path_loss.size() != std::size_t(pairs) * pairs)
        throw ConfigError("system: path-loss matrix must be N x N");
    for (double z : path_loss)
        if (!(z > 0.0)) throw ConfigError("system: violated invariant zeta_ki > 0");
    if (is_symmetric() && tx_antennas + rx_antennas < (pairs + 1) * streams)
        throw ConfigError("system: violated IA feasibility Nt+Nr >= (N+1)d for the symmetric analysis");
}

} // namespace iastab
