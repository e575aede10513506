#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iastab/rate_model.hpp"
#include "iastab/system_config.hpp"

namespace iastab {

enum class Technique { IaImperfect, IaPerfect, Svd, Switching };

std::string technique_name(Technique t);
Technique technique_from_name(const std::string& name);

// One generating point of a stability region: rate * s for a binary decision s.
struct RegionVertex {
    std::vector<double> point;
    std::uint32_t mask = 0;
    int cardinality = 0;
    Technique source = Technique::IaImperfect;
};

struct RegionVertexSet {
    int pairs = 0;
    std::vector<RegionVertex> points;
};

// Real maximizer L0 of the total rate together with the best nearest integer.
struct OptimalLoad {
    double l0_real = 0.0;
    int l_int = 1;
    CsiCase mode = CsiCase::Imperfect;
    bool clamped = false; // true when the integer argmax exceeded N
};

// Peak of the total average rate: the closed-form L0 for the imperfect case,
// 1/(2 theta) for the perfect case, then integer rounding by comparing the
// total rate at floor and ceil (ceil wins ties), clamped to [1, N].
OptimalLoad optimal_load(const SystemConfig& cfg, CsiCase mode);

// Generating vertex sets of the stability regions (origin kept implicit).
RegionVertexSet region_vertices(const SystemConfig& cfg, Technique technique);

// r_T(L_I) / mu_T(L_P): guaranteed fraction of the perfect-case region that
// the imperfect case retains.
double gap_fraction_perfect(const SystemConfig& cfg);

// Smallest L with L*r(L) > r_svd (or L*mu(L) in the perfect case), if any.
// Absence means the TDMA-SVD region covers the IA region.
std::optional<int> ia_vs_svd(const SystemConfig& cfg, CsiCase mode);

// Convex-hull membership of an arrival vector. The SVD region uses the
// hyperplane test; IA regions append a ones row to the vertex matrix and ask
// NNLS for an exact convex combination. Boundary points count as outside.
bool membership(const SystemConfig& cfg, const std::vector<double>& arrival, Technique technique,
                double tol = 1e-7);

// The raw convex-combination fit behind the hull membership test:
// ||A1 delta - a1|| after NNLS over the vertex columns plus the origin.
double membership_residual(const SystemConfig& cfg, const std::vector<double>& arrival,
                           Technique technique);

enum class SelectRationale {
    SvdCoversIa,   // no IA witness: TDMA-SVD covers the whole IA region
    OnlyInIa,      // case (i)
    OnlyInSvd,     // case (ii)
    InBoth,        // case (iii): TDMA-SVD spares the backhaul
};

struct TechniqueChoice {
    Technique technique = Technique::Svd;
    SelectRationale rationale = SelectRationale::InBoth;
};

// Decide IA vs TDMA-SVD for a known arrival vector (imperfect case).
// Throws ConfigError if the arrival lies outside both regions.
TechniqueChoice select_technique(const SystemConfig& cfg, const std::vector<double>& arrival);

// Guaranteed fraction r(N,B')/r(N,B) = (F(B')/F(B))^{N-1} kept when reducing
// the quantization bits to b_prime.
double bits_fraction(const SystemConfig& cfg, int b_prime);

// Fraction of the region kept when reducing the maximum pair count to n_prime;
// case analysis uses the unclamped integer load.
double pairs_fraction(const SystemConfig& cfg, int n_prime);

// Guaranteed fraction of the optimal region achieved by the reduced-complexity
// policy (exhaustive over all nonempty subsets; N <= 20).
double beta_a(const SystemConfig& cfg);

struct BetaPResult {
    double value = 1.0;
    std::uint32_t argmin_mask = 0;
    int argmin_pair = 0;
    int cardinality = 0;
    double c_min = 0.0; // min_i zeta_ki tau d / zeta_kk at the argmin
};

// Guaranteed fraction of the perfect-case region achieved under quantized CSI,
// with the argmin subset/pair and the constant needed by bits_for_fraction.
BetaPResult beta_p(const SystemConfig& cfg);

struct BitsForFraction {
    double b_bound = 0.0; // closed-form bound on the required bits
    int b_exact = 0;      // smallest integer B with beta_p >= target
};

BitsForFraction bits_for_fraction(const SystemConfig& cfg, double target);

} // namespace iastab
