#include "iastab/region.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "iastab/errors.hpp"
#include "iastab/nnls.hpp"

namespace iastab {

namespace {

void require_symmetric(const SystemConfig& cfg, const char* op) {
    if (!cfg.is_symmetric())
        throw std::invalid_argument(std::string(op) + ": requires a symmetric configuration");
}

// Total rate as a real function of the load, valid on (0, 1/theta); used for
// the rounding step which may probe integers beyond N. Only ratios and
// orderings of this function are consumed, so the direct-link constant of a
// non-symmetric configuration (perfect case) is irrelevant.
double total_rate_real(const SystemConfig& cfg, double f, CsiCase mode, double load) {
    const double zeta_d = cfg.is_symmetric() ? cfg.zeta_direct() : cfg.zeta(0, 0);
    const double alpha = cfg.power * zeta_d / cfg.streams;
    double rate = load * (1.0 - load * cfg.probe_frac) * cfg.streams * cfg.rate_per_stream *
                  std::exp(-cfg.noise_var * cfg.sinr_threshold / alpha);
    if (mode == CsiCase::Imperfect) rate *= std::pow(f, load - 1.0);
    return rate;
}

// Rounding steps: floor/ceil comparison with ties to ceil, before clamping.
int round_load(const SystemConfig& cfg, double f, CsiCase mode, double l0) {
    const double lo = std::floor(l0), hi = std::ceil(l0);
    if (lo == hi) return int(lo);
    const double r_lo = lo > 0.0 ? total_rate_real(cfg, f, mode, lo) : 0.0;
    const double r_hi = total_rate_real(cfg, f, mode, hi);
    return r_hi >= r_lo ? int(hi) : int(lo);
}

OptimalLoad optimal_load_impl(const SystemConfig& cfg, CsiCase mode, bool clamp) {
    const double theta = cfg.probe_frac;
    double f = 1.0;
    double l0 = 1.0 / (2.0 * theta);
    if (mode == CsiCase::Imperfect) {
        require_symmetric(cfg, "optimal_load");
        f = symmetric_F(cfg);
        const double lf = std::log(f);
        if (lf < -1e-14) {
            // Appendix closed form; the discriminant simplifies to
            // 1/theta^2 + 4/(log F)^2.
            const double root = std::sqrt(1.0 / (theta * theta) + 4.0 / (lf * lf));
            l0 = 0.5 * (1.0 / theta - 2.0 / lf - root);
        }
        // log F == 0 degenerates to the perfect-case peak.
    }
    OptimalLoad out;
    out.mode = mode;
    out.l0_real = l0;
    int best = round_load(cfg, f, mode, l0);
    if (best < 1) best = 1;
    if (clamp && best > cfg.pairs) {
        best = cfg.pairs;
        out.clamped = true;
    }
    out.l_int = best;
    return out;
}

void append_scaled_level(RegionVertexSet& set, int n, int level, double rate, Technique source) {
    // All decisions with exactly `level` active pairs.
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        if (std::popcount(mask) != level) continue;
        RegionVertex v;
        v.mask = mask;
        v.cardinality = level;
        v.source = source;
        v.point.assign(n, 0.0);
        for (int k = 0; k < n; ++k)
            if ((mask >> k) & 1u) v.point[k] = rate;
        set.points.push_back(std::move(v));
    }
}

void append_svd_axes(RegionVertexSet& set, const SystemConfig& cfg) {
    for (int k = 0; k < cfg.pairs; ++k) {
        RegionVertex v;
        v.mask = 1u << k;
        v.cardinality = 1;
        v.source = Technique::Svd;
        v.point.assign(cfg.pairs, 0.0);
        v.point[k] = svd_rate(cfg, k);
        set.points.push_back(std::move(v));
    }
}

} // namespace

std::string technique_name(Technique t) {
    switch (t) {
    case Technique::IaImperfect: return "ia_imperfect";
    case Technique::IaPerfect: return "ia_perfect";
    case Technique::Svd: return "svd";
    case Technique::Switching: return "switching";
    }
    return "unknown";
}

Technique technique_from_name(const std::string& name) {
    if (name == "ia_imperfect") return Technique::IaImperfect;
    if (name == "ia_perfect") return Technique::IaPerfect;
    if (name == "svd") return Technique::Svd;
    if (name == "switching") return Technique::Switching;
    throw ConfigError("unknown technique: " + name);
}

OptimalLoad optimal_load(const SystemConfig& cfg, CsiCase mode) {
    return optimal_load_impl(cfg, mode, /*clamp=*/true);
}

RegionVertexSet region_vertices(const SystemConfig& cfg, Technique technique) {
    if (cfg.pairs > 20) throw GuardError("region_vertices: guard N <= 20 exceeded");
    RegionVertexSet set;
    set.pairs = cfg.pairs;
    switch (technique) {
    case Technique::IaImperfect: {
        require_symmetric(cfg, "region_vertices");
        const int li = optimal_load(cfg, CsiCase::Imperfect).l_int;
        for (int l = 1; l <= li; ++l)
            append_scaled_level(set, cfg.pairs, l, symmetric_rate(cfg, l, CsiCase::Imperfect),
                                Technique::IaImperfect);
        break;
    }
    case Technique::IaPerfect: {
        require_symmetric(cfg, "region_vertices");
        const int lp = optimal_load(cfg, CsiCase::Perfect).l_int;
        for (int l = 1; l <= lp; ++l)
            append_scaled_level(set, cfg.pairs, l, symmetric_rate(cfg, l, CsiCase::Perfect),
                                Technique::IaPerfect);
        break;
    }
    case Technique::Svd:
        append_svd_axes(set, cfg);
        break;
    case Technique::Switching: {
        require_symmetric(cfg, "region_vertices");
        const int li = optimal_load(cfg, CsiCase::Imperfect).l_int;
        for (int l = 1; l <= li; ++l)
            append_scaled_level(set, cfg.pairs, l, symmetric_rate(cfg, l, CsiCase::Imperfect),
                                Technique::IaImperfect);
        append_svd_axes(set, cfg);
        break;
    }
    }
    return set;
}

double gap_fraction_perfect(const SystemConfig& cfg) {
    require_symmetric(cfg, "gap_fraction_perfect");
    const int li = optimal_load(cfg, CsiCase::Imperfect).l_int;
    const int lp = optimal_load(cfg, CsiCase::Perfect).l_int;
    return symmetric_rate(cfg, li, CsiCase::Imperfect, true) /
           symmetric_rate(cfg, lp, CsiCase::Perfect, true);
}

std::optional<int> ia_vs_svd(const SystemConfig& cfg, CsiCase mode) {
    require_symmetric(cfg, "ia_vs_svd");
    const double r_svd = svd_rate(cfg);
    const int l_max = optimal_load(cfg, mode).l_int;
    for (int l = 1; l <= l_max; ++l)
        if (symmetric_rate(cfg, l, mode, true) > r_svd) return l;
    return std::nullopt;
}

namespace {
NnlsResult hull_fit(const SystemConfig& cfg, const std::vector<double>& arrival,
                    Technique technique) {
    const RegionVertexSet set = region_vertices(cfg, technique);
    const int n = cfg.pairs;
    // Columns: generating vertices plus the implicit origin; last row is the
    // ones row enforcing that the combination is convex.
    Eigen::MatrixXd a1(n + 1, set.points.size() + 1);
    for (std::size_t j = 0; j < set.points.size(); ++j) {
        for (int k = 0; k < n; ++k) a1(k, j) = set.points[j].point[k];
        a1(n, j) = 1.0;
    }
    a1.col(set.points.size()).setZero();
    a1(n, set.points.size()) = 1.0;

    Eigen::VectorXd b1(n + 1);
    for (int k = 0; k < n; ++k) b1[k] = arrival[k];
    b1[n] = 1.0;

    const NnlsResult res = nnls(a1, b1, 1e-9);
    if (!res.converged)
        throw NumericError("membership: NNLS did not converge", res.residual_norm,
                           res.iterations);
    return res;
}

void check_arrival(const SystemConfig& cfg, const std::vector<double>& arrival) {
    if (int(arrival.size()) != cfg.pairs)
        throw std::invalid_argument("membership: arrival vector must have one entry per pair");
    for (double a : arrival)
        if (a < 0.0) throw std::invalid_argument("membership: arrival rates must be >= 0");
}
} // namespace

bool membership(const SystemConfig& cfg, const std::vector<double>& arrival, Technique technique,
                double tol) {
    check_arrival(cfg, arrival);
    if (technique == Technique::Svd) {
        // Hyperplane through the axis vertices; strict interior test.
        double lhs = 0.0;
        for (int k = 0; k < cfg.pairs; ++k) lhs += arrival[k] / svd_rate(cfg, k);
        return lhs < 1.0;
    }
    const NnlsResult res = hull_fit(cfg, arrival, technique);
    double norm = 1.0;
    for (double a : arrival) norm += a * a;
    return res.residual_norm <= tol * (1.0 + std::sqrt(norm));
}

double membership_residual(const SystemConfig& cfg, const std::vector<double>& arrival,
                           Technique technique) {
    check_arrival(cfg, arrival);
    return hull_fit(cfg, arrival, technique).residual_norm;
}

TechniqueChoice select_technique(const SystemConfig& cfg, const std::vector<double>& arrival) {
    const bool in_svd = membership(cfg, arrival, Technique::Svd);
    if (!ia_vs_svd(cfg, CsiCase::Imperfect).has_value()) {
        // TDMA-SVD covers the IA region entirely.
        if (in_svd) return {Technique::Svd, SelectRationale::SvdCoversIa};
        throw ConfigError("select_technique: arrival lies outside both stability regions");
    }
    const bool in_ia = membership(cfg, arrival, Technique::IaImperfect);
    if (in_ia && !in_svd) return {Technique::IaImperfect, SelectRationale::OnlyInIa};
    if (!in_ia && in_svd) return {Technique::Svd, SelectRationale::OnlyInSvd};
    if (in_ia && in_svd) return {Technique::Svd, SelectRationale::InBoth};
    throw ConfigError("select_technique: arrival lies outside both stability regions");
}

double bits_fraction(const SystemConfig& cfg, int b_prime) {
    require_symmetric(cfg, "bits_fraction");
    if (b_prime < 0 || b_prime > cfg.bits)
        throw std::invalid_argument("bits_fraction: require 0 <= B' <= B");
    if (b_prime == cfg.bits) return 1.0;
    SystemConfig reduced = cfg;
    reduced.bits = b_prime;
    return std::pow(symmetric_F(reduced) / symmetric_F(cfg), cfg.pairs - 1);
}

double pairs_fraction(const SystemConfig& cfg, int n_prime) {
    require_symmetric(cfg, "pairs_fraction");
    if (n_prime < 1 || n_prime > cfg.pairs)
        throw std::invalid_argument("pairs_fraction: require 1 <= N' <= N");
    // The case analysis needs the integer load without the <= N clamp.
    const int li = optimal_load_impl(cfg, CsiCase::Imperfect, /*clamp=*/false).l_int;
    const double f = symmetric_F(cfg);
    auto r_total = [&](int l) { return total_rate_real(cfg, f, CsiCase::Imperfect, l); };
    if (li <= n_prime) return 1.0;
    if (cfg.pairs <= li) return r_total(n_prime) / r_total(cfg.pairs);
    return r_total(n_prime) / r_total(li);
}

double beta_a(const SystemConfig& cfg) {
    if (cfg.pairs > 20) throw GuardError("beta_a: guard N <= 20 exceeded");
    const int n = cfg.pairs;
    if (n == 1) return 1.0;
    std::vector<double> g(std::size_t(n) * n, 0.0), gb(n);
    for (int k = 0; k < n; ++k) {
        gb[k] = gbar(cfg, k);
        for (int i = 0; i < n; ++i)
            if (i != k) g[std::size_t(k) * n + i] = g_factor(cfg, k, i);
    }
    double m1 = std::numeric_limits<double>::infinity();
    double m2 = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        for (int k = 0; k < n; ++k) {
            if (!((mask >> k) & 1u)) continue;
            double dev = 0.0;
            for (int i = 0; i < n; ++i)
                if (i != k && ((mask >> i) & 1u)) dev += g[std::size_t(k) * n + i] - gb[k];
            const double term = -dev / (1.0 - gb[k]);
            m1 = std::min(m1, term);
            m2 = std::max(m2, term);
        }
    }
    return (1.0 + m1) / (1.0 + m2);
}

BetaPResult beta_p(const SystemConfig& cfg) {
    if (cfg.pairs > 20) throw GuardError("beta_p: guard N <= 20 exceeded");
    const int n = cfg.pairs;
    BetaPResult best;
    best.value = 1.0;
    best.argmin_mask = 1;
    best.argmin_pair = 0;
    best.cardinality = 1;
    if (n == 1) return best;

    std::vector<double> g(std::size_t(n) * n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (i != k) g[std::size_t(k) * n + i] = g_factor(cfg, k, i);

    bool found = false;
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        for (int k = 0; k < n; ++k) {
            if (!((mask >> k) & 1u)) continue;
            double prod = 1.0;
            for (int i = 0; i < n; ++i)
                if (i != k && ((mask >> i) & 1u)) prod *= 1.0 - g[std::size_t(k) * n + i];
            if (!found || prod < best.value) {
                found = true;
                best.value = prod;
                best.argmin_mask = mask;
                best.argmin_pair = k;
                best.cardinality = std::popcount(mask);
            }
        }
    }
    double c_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (i == best.argmin_pair || !((best.argmin_mask >> i) & 1u)) continue;
        c_min = std::min(c_min, cfg.zeta(best.argmin_pair, i) * cfg.sinr_threshold * cfg.streams /
                                    cfg.zeta(best.argmin_pair, best.argmin_pair));
    }
    best.c_min = std::isfinite(c_min) ? c_min : 0.0;
    return best;
}

BitsForFraction bits_for_fraction(const SystemConfig& cfg, double target) {
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("bits_for_fraction: target must lie in (0,1)");
    if (cfg.pairs < 2)
        throw std::invalid_argument("bits_for_fraction: requires N >= 2");
    const BetaPResult bp = beta_p(cfg);
    if (bp.cardinality < 2 || bp.c_min <= 0.0)
        throw NumericError("bits_for_fraction: degenerate argmin subset", bp.value, 0);

    BitsForFraction out;
    const int q = cfg.tx_antennas * cfg.rx_antennas - 1;
    const double denom = std::pow(target, -1.0 / (bp.cardinality - 1)) - 1.0;
    out.b_bound = q * std::log2(bp.c_min / denom);

    SystemConfig probe = cfg;
    constexpr int kMaxBits = 10000;
    for (int b = 0; b <= kMaxBits; ++b) {
        probe.bits = b;
        if (beta_p(probe).value >= target) {
            out.b_exact = b;
            return out;
        }
    }
    throw NumericError("bits_for_fraction: target unreachable within B <= 10^4", target,
                       kMaxBits);
}

} // namespace iastab
