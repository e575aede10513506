#pragma once
#include <cmath>
#include <vector>

namespace iastab {

// Quantities derived from the antenna/stream/bit configuration that appear in
// every closed-form rate expression.
struct DerivedParams {
    int q = 0;            // Nt*Nr - 1
    double a_breve = 0.0; // ((Q+1)d - 1)/Q
    double b_breve = 0.0; // (Q-1) a_breve
    double delta = 0.0;   // 2^{B/Q}
};

// Physical and protocol parameters of the N-pair TDD interference network.
struct SystemConfig {
    int pairs = 0;               // N
    int tx_antennas = 0;         // per transmitter
    int rx_antennas = 0;         // per receiver
    int streams = 0;             // d, per pair
    double power = 0.0;          // P, linear
    double noise_var = 0.0;      // sigma^2, linear
    double probe_frac = 0.0;     // theta, slot fraction per probed user
    int bits = 0;                // B, quantization bits shared over the backhaul
    double sinr_threshold = 0.0; // tau, linear
    double rate_per_stream = 0.0;       // R, bits/slot
    std::vector<double> path_loss;      // N x N row-major, entry (k,i)

    static SystemConfig symmetric(int pairs, int tx, int rx, int streams, double power,
                                  double noise_var, double probe_frac, int bits, double tau,
                                  double rate, double zeta_direct, double zeta_cross);

    double zeta(int k, int i) const { return path_loss[std::size_t(k) * pairs + i]; }
    // alpha_ki = P zeta_ki / d
    double alpha(int k, int i) const { return power * zeta(k, i) / streams; }

    DerivedParams derived() const {
        DerivedParams d;
        d.q = tx_antennas * rx_antennas - 1;
        d.a_breve = (double(d.q + 1) * streams - 1.0) / d.q;
        d.b_breve = (d.q - 1) * d.a_breve;
        d.delta = std::exp2(double(bits) / d.q);
        return d;
    }

    // Equal direct-link coefficients and equal cross-link coefficients; all
    // per-pair rate expressions then depend on the active cardinality only.
    bool is_symmetric() const;
    double zeta_direct() const; // requires symmetric
    double zeta_cross() const;  // requires symmetric and N >= 2

    // Throws ConfigError naming the violated invariant.
    void validate() const;
};

} // namespace iastab
