#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "iastab/decision.hpp"
#include "iastab/system_config.hpp"

namespace iastab {

// Which CSI model the closed forms assume: quantized exchange over the limited
// backhaul (imperfect) or exact shared CSI (perfect).
enum class CsiCase { Imperfect, Perfect };

// Rate families a RateTable can hold.
enum class RateMode { Imperfect, Perfect, Svd, Phi };

enum class ApproxOrder { First, Second };

// g_ki = (zeta_kk 2^{B/Q} / (zeta_ki tau d) + 1)^{-1}, the per-interferer
// leakage factor. Requires k != i.
double g_factor(const SystemConfig& cfg, int k, int i);

// MGF of the residual interference at -tau/alpha_kk for active pair k given
// the active set. Equals 1 for a singleton set (empty product). Pass
// streams_per_pair to override the uniform stream count d.
double mgf_residual(const SystemConfig& cfg, const Decision& active, int k,
                    std::span<const int> streams_per_pair = {});

// P{per-stream SINR >= tau | active set}.
double success_prob(const SystemConfig& cfg, const Decision& active, int k, CsiCase mode);

// Average rate (bits/slot) of active pair k: (1 - L*theta) d R * success.
double avg_rate_user(const SystemConfig& cfg, const Decision& active, int k, CsiCase mode);

// Interference attenuation factor F of the symmetric system; the per-user rate
// is r(L) = (1 - L*theta) d R e^{-sigma^2 tau / alpha} F^{L-1}. The cross/direct
// path-loss ratio is folded in so that the two-level symmetric structure
// (common direct coefficient, common cross coefficient) specializes exactly.
double symmetric_F(const SystemConfig& cfg);

// r(L) / mu(L); multiply by L when total is set.
double symmetric_rate(const SystemConfig& cfg, int active_count, CsiCase mode, bool total = false);

// Average TDMA-SVD rate of pair k over its point-to-point MIMO link.
double svd_rate(const SystemConfig& cfg, int k);
// Common value for configurations whose direct links are identical.
double svd_rate(const SystemConfig& cfg);

// Mean of g_ki over all i != k.
double gbar(const SystemConfig& cfg, int k);

// phi_k(L) = (1 - L*theta) d R e^{-sigma^2 tau / alpha_kk} (1 - gbar_k)^{L-1};
// the decision-independent rate proxy used by the reduced-complexity policy.
double phi_rate(const SystemConfig& cfg, int k, int active_count);

// Product (first-order) or Taylor (second-order) approximation of the exact
// imperfect-case rate.
double approx_rate(const SystemConfig& cfg, const Decision& active, int k, ApproxOrder order);

// Average rate per (decision, pair), indexed by decision mask. Svd mode fills
// singleton decisions only; Phi mode holds phi_k(|decision|).
struct RateTable {
    int pairs = 0;
    RateMode mode = RateMode::Imperfect;
    std::vector<double> values; // size 2^pairs * pairs

    double at(std::uint32_t mask, int k) const { return values[std::size_t(mask) * pairs + k]; }
};

RateTable build_rate_table(const SystemConfig& cfg, RateMode mode);

// phi_k(L) for k = 0..N-1, L = 1..N, as a pair-by-cardinality matrix.
struct PhiTable {
    int pairs = 0;
    std::vector<double> values; // size pairs * pairs, [k * pairs + (L-1)]

    double at(int k, int active_count) const {
        return values[std::size_t(k) * pairs + (active_count - 1)];
    }
};

PhiTable build_phi_table(const SystemConfig& cfg);

// Per-user rates r(L)/mu(L) for L = 1..N, precomputed for the symmetric
// schedulers and the region geometry.
struct SymmetricRateLadder {
    int pairs = 0;
    std::vector<double> per_user;  // r(L) or mu(L), index L-1
    double total(int active_count) const { return active_count * per_user[active_count - 1]; }
};

SymmetricRateLadder build_symmetric_ladder(const SystemConfig& cfg, CsiCase mode);

} // namespace iastab
