#include <doctest.h>

#include <bit>
#include <cmath>

#include "iastab/errors.hpp"
#include "iastab/numerics.hpp"
#include "iastab/rate_model.hpp"
#include "iastab/rng.hpp"
#include "oracles.hpp"

using namespace iastab;

namespace {
// Section-VI style configuration: Nt=Nr=7, d=2, P=10, sigma^2=1, theta=0.01,
// R=1000, direct path loss 1, cross path loss zeta_c.
SystemConfig vi_config(int pairs = 6, int bits = 30, double zeta_c = 0.2, double tau = 1.0) {
    SystemConfig cfg = SystemConfig::symmetric(pairs, 7, 7, 2, 10.0, 1.0, 0.01, bits, tau,
                                               1000.0, 1.0, zeta_c);
    cfg.validate();
    return cfg;
}
} // namespace

TEST_CASE("derived parameters") {
    const DerivedParams dp = vi_config().derived();
    CHECK(dp.q == 48);
    CHECK(dp.a_breve == doctest::Approx(97.0 / 48.0).epsilon(1e-15));
    CHECK(dp.b_breve == doctest::Approx(47.0 * 97.0 / 48.0).epsilon(1e-15));
    CHECK(dp.delta == doctest::Approx(std::exp2(30.0 / 48.0)).epsilon(1e-15));
}

TEST_CASE("g_factor examples") {
    // Equal path loss, tau=1, d=2, B=0: (1/2 + 1)^{-1} = 2/3.
    SystemConfig cfg = SystemConfig::symmetric(3, 2, 2, 2, 10, 1, 0.05, 0, 1.0, 1000, 1.0, 1.0);
    CHECK(g_factor(cfg, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    SystemConfig big = vi_config(6, 1000, 1.0);
    big.bits = 1000;
    CHECK(g_factor(big, 0, 1) < 1e-5);

    // mpmath: (2^{30/48}/0.4 + 1)^{-1}
    const SystemConfig vi = vi_config(6, 30, 0.2);
    CHECK(oracles::rel_err(g_factor(vi, 0, 1), 0.2059508652547975755434756850087743825) < 1e-12);

    CHECK_THROWS_AS(g_factor(vi, 2, 2), std::invalid_argument);
}

TEST_CASE("mgf_residual: empty product and large-B limit") {
    const SystemConfig cfg = vi_config();
    const Decision solo = Decision::single(cfg.pairs, 2);
    CHECK(mgf_residual(cfg, solo, 2) == 1.0);

    SystemConfig huge = vi_config();
    huge.bits = 10000;
    const Decision pair2 = Decision::from_indices(huge.pairs, {0, 1});
    CHECK(std::abs(mgf_residual(huge, pair2, 0) - 1.0) < 1e-6);

    CHECK_THROWS_AS(mgf_residual(cfg, pair2, 3), std::invalid_argument);
}

TEST_CASE("mgf_residual single interferer matches frozen closed form") {
    const SystemConfig cfg = vi_config(6, 30, 0.2);
    const Decision two = Decision::from_indices(cfg.pairs, {0, 1});
    // mpmath: (0.4/2^{30/48}+1)^{-48} * 2F1(bb, 48; 97; g)
    CHECK(oracles::rel_err(mgf_residual(cfg, two, 0), 0.7837919737327419147774199368051584425) <
          1e-10);
}

TEST_CASE("mgf_residual matches a Monte Carlo oracle (3 sigma)") {
    const SystemConfig cfg = vi_config(6, 30, 0.2);
    const Decision active = Decision::from_indices(cfg.pairs, {0, 1, 3});
    const double analytic = mgf_residual(cfg, active, 0);

    const DerivedParams dp = cfg.derived();
    RngStream rng(555, 3);
    const long n = 400000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
        double ri = 0.0;
        for (int j = 0; j < 2; ++j) { // two interferers
            const double x = rng.gamma(dp.q, dp.delta);
            const double y = rng.beta(dp.a_breve, dp.b_breve);
            ri += cfg.alpha(0, 1) * cfg.streams * x * y;
        }
        const double v = std::exp(-cfg.sinr_threshold / cfg.alpha(0, 0) * ri);
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK(std::abs(mean - analytic) < 3.0 * se);
}

TEST_CASE("success_prob examples") {
    const SystemConfig cfg = vi_config();
    const Decision solo = Decision::single(cfg.pairs, 0);
    // alpha_kk = 10/2 = 5, sigma^2 = tau = 1.
    CHECK(oracles::rel_err(success_prob(cfg, solo, 0, CsiCase::Perfect),
                           0.8187307530779818586699355086190394) < 1e-12);
    CHECK(success_prob(cfg, solo, 0, CsiCase::Imperfect) ==
          success_prob(cfg, solo, 0, CsiCase::Perfect));
    CHECK_THROWS_AS(success_prob(cfg, solo, 1, CsiCase::Perfect), std::invalid_argument);

    const Decision trio = Decision::from_indices(cfg.pairs, {0, 1, 2});
    const double imp = success_prob(cfg, trio, 0, CsiCase::Imperfect);
    CHECK(imp > 0.0);
    CHECK(imp <= success_prob(cfg, trio, 0, CsiCase::Perfect));
}

TEST_CASE("avg_rate_user perfect single pair equals 1621.09 bits/slot") {
    const SystemConfig cfg = vi_config();
    const Decision solo = Decision::single(cfg.pairs, 0);
    CHECK(oracles::rel_err(avg_rate_user(cfg, solo, 0, CsiCase::Perfect), 1621.0868910944040802)
          < 1e-12);
}

TEST_CASE("avg_rate_user equals the symmetric specialization") {
    const SystemConfig cfg = vi_config(6, 40, 0.2);
    const Decision trio = Decision::from_indices(cfg.pairs, {1, 3, 4});
    CHECK(avg_rate_user(cfg, trio, 3, CsiCase::Imperfect) ==
          doctest::Approx(symmetric_rate(cfg, 3, CsiCase::Imperfect)).epsilon(1e-13));
}

TEST_CASE("avg_rate_user invariant to the identity of the active set (symmetric)") {
    const SystemConfig cfg = vi_config(6, 25, 0.35);
    RngStream rng(42, 0);
    for (int it = 0; it < 50; ++it) {
        const std::uint32_t mask = 1u + std::uint32_t(rng.uniform() * 63.0);
        const Decision dec(6, std::min(mask, 63u));
        const auto idx = dec.active_indices();
        const int k = idx[std::size_t(rng.uniform() * idx.size())];
        const double r = avg_rate_user(cfg, dec, k, CsiCase::Imperfect);
        CHECK(r == doctest::Approx(symmetric_rate(cfg, dec.count(), CsiCase::Imperfect))
                       .epsilon(1e-12));
        CHECK(avg_rate_user(cfg, dec, k, CsiCase::Perfect) >= r);
    }
}

TEST_CASE("symmetric_F frozen values and monotonicity in B") {
    SystemConfig cfg = vi_config(6, 40, 1.0);
    // mpmath at B=40, zeta uniform, tau=1, d=2, Q=48
    CHECK(oracles::rel_err(symmetric_F(cfg), 0.41120856460547175351014424755335742) < 1e-10);
    cfg.bits = 15;
    const double f15 = symmetric_F(cfg);
    CHECK(oracles::rel_err(f15, 0.3078667858119731823879883909989704164) < 1e-10);
    cfg.bits = 30;
    const double f30 = symmetric_F(cfg);
    CHECK(oracles::rel_err(f30, 0.3690025215580860610999950594634627666) < 1e-10);
    CHECK(f15 < f30);

    SystemConfig huge = vi_config(6, 10000, 1.0);
    CHECK(std::abs(symmetric_F(huge) - 1.0) < 1e-6);

    SystemConfig assym = vi_config();
    assym.path_loss[1] = 0.77; // break symmetry
    CHECK_THROWS_AS(symmetric_F(assym), std::invalid_argument);
}

TEST_CASE("symmetric_rate basics") {
    const SystemConfig cfg = vi_config(6, 30, 1.0);
    CHECK(symmetric_rate(cfg, 1, CsiCase::Imperfect) ==
          symmetric_rate(cfg, 1, CsiCase::Perfect));

    // Peak of the perfect total rate sits at 1/(2 theta).
    SystemConfig t10 = SystemConfig::symmetric(9, 10, 10, 1, 10, 1, 0.1, 20, 1.0, 1000, 1, 1);
    t10.validate();
    const double mu4 = symmetric_rate(t10, 4, CsiCase::Perfect, true);
    const double mu5 = symmetric_rate(t10, 5, CsiCase::Perfect, true);
    const double mu6 = symmetric_rate(t10, 6, CsiCase::Perfect, true);
    CHECK(mu5 > mu4);
    CHECK(mu5 > mu6);

    CHECK_THROWS_AS(symmetric_rate(cfg, 0, CsiCase::Perfect), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_rate(cfg, 7, CsiCase::Perfect), std::invalid_argument);
}

TEST_CASE("symmetric r(L) decreases with L; r_T matches independent evaluation") {
    const SystemConfig cfg = vi_config(6, 30, 1.0);
    const double f = symmetric_F(cfg);
    double prev = 1e300;
    for (int l = 1; l <= 6; ++l) {
        const double r = symmetric_rate(cfg, l, CsiCase::Imperfect);
        CHECK(r < prev);
        prev = r;
        // independent composition of Eq-style pieces
        const double want =
            (1.0 - 0.01 * l) * 2.0 * 1000.0 * std::exp(-0.2) * std::pow(f, l - 1);
        CHECK(oracles::rel_err(r, want) < 1e-12);
        CHECK(oracles::rel_err(symmetric_rate(cfg, l, CsiCase::Imperfect, true), l * want) <
              1e-12);
    }
}

TEST_CASE("svd_rate: threshold-zero and single-antenna closed forms") {
    SystemConfig cfg = vi_config(6, 30, 0.2, /*tau=*/0.0);
    CHECK(oracles::rel_err(svd_rate(cfg), (1.0 - 0.01) * 2.0 * 1000.0) < 1e-9);

    SystemConfig tiny = SystemConfig::symmetric(1, 1, 1, 1, 10, 1, 0.01, 10, 1.0, 1000, 0.8, 0.8);
    // d=1, Nt=1: success = e^{-sigma^2 tau/(zeta P)}
    CHECK(oracles::rel_err(svd_rate(tiny),
                           (1.0 - 0.01) * 1000.0 * std::exp(-1.0 / (0.8 * 10.0))) < 1e-12);
}

TEST_CASE("svd_rate matches frozen Laguerre-sum value at the reference config") {
    const SystemConfig cfg = vi_config();
    // mpmath: success factor for ma=mi=7 at x = d sigma^2 tau/(zeta P) = 0.2
    const double want = (1.0 - 0.01) * 2.0 * 1000.0 * 0.89049764110566841462142475061;
    CHECK(oracles::rel_err(svd_rate(cfg), want) < 1e-10);
    CHECK(svd_rate(cfg) <= (1.0 - 0.01) * 2.0 * 1000.0);
}

TEST_CASE("gbar: symmetric collapse and arithmetic mean") {
    const SystemConfig cfg = vi_config();
    CHECK(gbar(cfg, 2) == doctest::Approx(g_factor(cfg, 2, 0)).epsilon(1e-14));

    // Asymmetric: mean over the two cross links.
    SystemConfig tri = SystemConfig::symmetric(3, 4, 4, 2, 10, 1, 0.05, 12, 1.0, 1000, 1.0, 0.3);
    tri.path_loss[1] = 0.6; // zeta(0,1)
    tri.path_loss[2] = 0.1; // zeta(0,2)
    const double want = 0.5 * (g_factor(tri, 0, 1) + g_factor(tri, 0, 2));
    CHECK(gbar(tri, 0) == doctest::Approx(want).epsilon(1e-14));

    SystemConfig solo = SystemConfig::symmetric(1, 2, 2, 1, 10, 1, 0.1, 5, 1.0, 1000, 1.0, 1.0);
    CHECK_THROWS_AS(gbar(solo, 0), std::invalid_argument);
}

TEST_CASE("gbar equals the exhaustive per-cardinality subset average") {
    // g_ki does not depend on the decision, and every i != k appears equally
    // often across the size-L subsets containing k, so the decision-average
    // reduces to the plain mean. Verify by enumeration.
    RngStream rng(777, 2);
    SystemConfig cfg = SystemConfig::symmetric(5, 6, 6, 2, 10, 1, 0.05, 18, 1.2, 1000, 1.0, 0.4);
    for (auto& z : cfg.path_loss) z *= 0.5 + rng.uniform();
    const int n = cfg.pairs;
    for (int k = 0; k < n; ++k) {
        for (int card = 2; card <= n; ++card) {
            double sum = 0.0;
            long count = 0;
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                if (!((mask >> k) & 1u) || std::popcount(mask) != card) continue;
                for (int i = 0; i < n; ++i) {
                    if (i == k || !((mask >> i) & 1u)) continue;
                    sum += g_factor(cfg, k, i);
                    ++count;
                }
            }
            CHECK(sum / count == doctest::Approx(gbar(cfg, k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("phi_rate: base cases, symmetry across pairs, explicit form") {
    const SystemConfig cfg = vi_config(6, 30, 0.5);
    const Decision solo = Decision::single(cfg.pairs, 1);
    CHECK(phi_rate(cfg, 1, 1) == doctest::Approx(avg_rate_user(cfg, solo, 1, CsiCase::Perfect))
                                     .epsilon(1e-13));
    for (int l = 1; l <= cfg.pairs; ++l) {
        const double ref = phi_rate(cfg, 0, l);
        const double want = (1.0 - 0.01 * l) * 2.0 * 1000.0 * std::exp(-0.2) *
                            std::pow(1.0 - gbar(cfg, 0), l - 1);
        CHECK(oracles::rel_err(ref, want) < 1e-13);
        for (int k = 1; k < cfg.pairs; ++k) CHECK(phi_rate(cfg, k, l) == ref);
    }
    // In the low-interference regime phi tracks the exact symmetric rate.
    const SystemConfig low = vi_config(6, 45, 0.1);
    for (int l = 1; l <= 6; ++l)
        CHECK(std::abs(phi_rate(low, 0, l) - symmetric_rate(low, l, CsiCase::Imperfect)) /
                  symmetric_rate(low, l, CsiCase::Imperfect) <
              0.02);
    CHECK_THROWS_AS(phi_rate(cfg, 0, 0), std::invalid_argument);
}

TEST_CASE("approx_rate: orders coincide where they should") {
    const SystemConfig cfg = vi_config(6, 30, 0.5);
    const Decision solo = Decision::single(cfg.pairs, 4);
    const double perfect = avg_rate_user(cfg, solo, 4, CsiCase::Perfect);
    CHECK(approx_rate(cfg, solo, 4, ApproxOrder::First) == doctest::Approx(perfect));
    CHECK(approx_rate(cfg, solo, 4, ApproxOrder::Second) == doctest::Approx(perfect));

    // Symmetric: the correction term vanishes.
    const Decision four = Decision::from_indices(cfg.pairs, {0, 2, 3, 5});
    CHECK(approx_rate(cfg, four, 2, ApproxOrder::First) ==
          doctest::Approx(approx_rate(cfg, four, 2, ApproxOrder::Second)).epsilon(1e-12));
}

TEST_CASE("approx_rate within 2% of the exact rate in the low-interference regime") {
    // All g_ki < 0.1 here.
    const SystemConfig cfg = vi_config(6, 45, 0.1);
    for (int k : {0, 3}) {
        for (std::uint32_t mask : {0x07u, 0x1Bu, 0x3Fu}) {
            const Decision dec(cfg.pairs, mask | (1u << k));
            CHECK(g_factor(cfg, k, (k + 1) % 6) < 0.1);
            const double exact = avg_rate_user(cfg, dec, k, CsiCase::Imperfect);
            const double approx = approx_rate(cfg, dec, k, ApproxOrder::First);
            CHECK(std::abs(approx - exact) / exact < 0.02);
        }
    }
}

TEST_CASE("approx_rate error grows with interference strength") {
    double prev_err = 0.0;
    for (double zc : {0.05, 0.2, 0.5, 0.9}) {
        const SystemConfig cfg = vi_config(6, 15, zc);
        const Decision dec = Decision::from_indices(cfg.pairs, {0, 1, 2, 3});
        const double exact = avg_rate_user(cfg, dec, 0, CsiCase::Imperfect);
        const double err = std::abs(approx_rate(cfg, dec, 0, ApproxOrder::First) - exact) / exact;
        CHECK(err >= prev_err);
        prev_err = err;
    }
}

TEST_CASE("rate table covers every decision consistently") {
    const SystemConfig cfg = vi_config(4, 20, 0.3);
    const RateTable imp = build_rate_table(cfg, RateMode::Imperfect);
    for (std::uint32_t mask = 1; mask < (1u << 4); ++mask) {
        const Decision dec(4, mask);
        for (int k : dec.active_indices())
            CHECK(imp.at(mask, k) ==
                  doctest::Approx(avg_rate_user(cfg, dec, k, CsiCase::Imperfect)));
        for (int k = 0; k < 4; ++k)
            if (!dec.active(k)) CHECK(imp.at(mask, k) == 0.0);
    }
    const RateTable svd = build_rate_table(cfg, RateMode::Svd);
    for (int k = 0; k < 4; ++k)
        CHECK(svd.at(1u << k, k) == doctest::Approx(svd_rate(cfg, k)));
    CHECK(svd.at(0b0011, 0) == 0.0);
}

TEST_CASE("mgf_residual honors per-pair stream counts") {
    const SystemConfig cfg = vi_config(4, 25, 0.3);
    const Decision duo = Decision::from_indices(cfg.pairs, {0, 2});

    const std::vector<int> uniform(4, cfg.streams);
    CHECK(mgf_residual(cfg, duo, 0, uniform) == mgf_residual(cfg, duo, 0));

    // A single-stream interferer: compose the factor independently.
    std::vector<int> mixed{2, 2, 1, 2};
    const DerivedParams dp = cfg.derived();
    const double ab1 = (double(dp.q + 1) * 1 - 1.0) / dp.q;
    const double bb1 = (dp.q - 1) * ab1;
    const double ratio = 0.3 * cfg.sinr_threshold * 1 / (1.0 * dp.delta);
    const double want = std::pow(ratio + 1.0, -double(dp.q)) *
                        gauss_2f1(bb1, dp.q, ab1 + bb1, 1.0 / (1.0 / ratio + 1.0));
    CHECK(mgf_residual(cfg, duo, 0, mixed) == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(mgf_residual(cfg, duo, 0, std::vector<int>{2, 2}), std::invalid_argument);
}
