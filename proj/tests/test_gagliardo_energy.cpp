#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fracmin/circle_maps.hpp"
#include "fracmin/error.hpp"
#include "fracmin/gagliardo_energy.hpp"
#include "oracles.hpp"

namespace fm = fracmin;
namespace fz = fracmin::oracle::frozen;
using std::numbers::pi;

namespace {
constexpr double four_pi2 = 4.0 * pi * pi;
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double E(const fm::GridMap& u, double p) { return fm::energy(u, fm::EnergyParams::make(p)); }
} // namespace

TEST(EnergyParams, RangeAndFlag) {
    const auto a = fm::EnergyParams::make(1.5);
    EXPECT_DOUBLE_EQ(a.s * a.p, 1.0);
    EXPECT_FALSE(a.beyond_validated_range);
    EXPECT_FALSE(fm::EnergyParams::make(2.0).beyond_validated_range);
    EXPECT_TRUE(fm::EnergyParams::make(3.0).beyond_validated_range);
    EXPECT_THROW(fm::EnergyParams::make(1.0), fm::DomainError);
    EXPECT_THROW(fm::EnergyParams::make(4.0), fm::DomainError);
    EXPECT_THROW(fm::EnergyParams::make(std::nan("")), fm::DomainError);
}

TEST(Energy, ConstantMapIsZero) {
    for (double p : {1.1, 1.5, 2.0, 3.0}) EXPECT_EQ(E(fm::power_map(32, 0), p), 0.0);
}

TEST(Energy, MatchesBruteForceOracle) {
    std::mt19937_64 rng(21);
    for (std::size_t n : {16u, 33u, 64u}) {
        for (int d : {-1, 0, 2}) {
            const fm::GridMap u = fm::oracle::random_admissible_map(n, d, rng);
            for (double p : {1.2, 1.5, 2.0, 3.0}) {
                const double ref = fm::oracle::brute_force_energy(u, p);
                if (ref == 0.0) continue;
                EXPECT_LE(rel(E(u, p), ref), 1e-12) << "n=" << n << " d=" << d << " p=" << p;
            }
        }
    }
}

TEST(Energy, RejectsInadmissibleMap) {
    std::vector<double> ph(8, 0.0);
    ph[4] = pi;
    EXPECT_THROW(E(fm::GridMap(ph), 2.0), fm::AdmissibilityError);
    EXPECT_THROW(fm::energy_gradient(fm::GridMap(ph), fm::EnergyParams::make(2.0)), fm::AdmissibilityError);
}

TEST(Energy, RotationInvariance) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const fm::GridMap u = fm::oracle::random_admissible_map(128, t % 4 - 1, rng);
        for (double p : {1.3, 2.0}) {
            const double e0 = E(u, p);
            // rounding in cos/sin of shifted phases prevents bitwise equality
            for (double c : {0.5, -2.0, 100.0}) EXPECT_LE(rel(E(u.rotated(c), p), e0), 1e-12);
        }
    }
}

TEST(Energy, ReflectionInvarianceIsExact) {
    std::mt19937_64 rng(3);
    for (int d : {-2, 1, 3}) {
        const fm::GridMap u = fm::oracle::random_admissible_map(128, d, rng);
        EXPECT_EQ(fm::degree(u.reflected()), -d);
        for (double p : {1.2, 1.7, 2.0}) EXPECT_EQ(E(u.reflected(), p), E(u, p));
    }
}

TEST(Energy, IdentityConvergesMonotonicallyToClosedForm) {
    for (double p : {1.2, 1.5, 2.0}) {
        const double exact = fm::identity_energy_closed_form(p);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t n : {64u, 128u, 256u, 512u, 1024u}) {
            const double err = std::abs(E(fm::identity_map(n), p) - exact);
            EXPECT_LT(err, prev) << "p=" << p << " n=" << n;
            prev = err;
        }
        if (p == 2.0) EXPECT_LE(prev / exact, 0.01);
    }
}

TEST(Energy, IdentityDiscreteErrorAtQuadraticExponent) {
    // sum_{m=1}^{n-1} 1 = n - 1 pair distances per row, each weighted equally
    for (std::size_t n : {64u, 200u, 512u}) EXPECT_LE(rel(E(fm::identity_map(n), 2.0), four_pi2 * (n - 1.0) / n), 1e-13);
}

TEST(EnergyGradient, MatchesCentralDifferences) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        const fm::GridMap u = fm::oracle::random_admissible_map(64, t % 5 - 2, rng);
        for (double p : {1.2, 1.5, 1.9, 2.0}) {
            const auto g = fm::energy_gradient(u, fm::EnergyParams::make(p));
            const auto fd = fm::oracle::central_difference_gradient(u, p);
            double scale = 0.0;
            for (double v : fd) scale = std::max(scale, std::abs(v));
            // components near zero are compared against a small fraction of
            // the largest one
            const double floor = 1e-3 * scale;
            for (std::size_t k = 0; k < g.size(); ++k)
                EXPECT_LE(std::abs(g[k] - fd[k]) / std::max(std::abs(fd[k]), floor), 1e-5)
                    << "map " << t << " p=" << p << " k=" << k;
        }
    }
}

TEST(EnergyGradient, PowerMapsAreStationary) {
    // n coprime to d: no two nodes coincide
    for (auto [n, d] : {std::pair{128, 0}, std::pair{128, 1}, std::pair{129, -2}, std::pair{128, 3}})
        for (double p : {1.2, 2.0}) {
            const auto g = fm::energy_gradient(fm::power_map(n, d), fm::EnergyParams::make(p));
            for (double v : g) EXPECT_LE(std::abs(v), 1e-9) << "n=" << n << " d=" << d << " p=" << p;
        }
}

TEST(EnergyGradient, NearlyCoincidentNodesAreRoundingSensitiveBelowQuadratic) {
    // With gcd(n, d) > 1, nodes i and i + n/gcd coincide in exact arithmetic
    // but sit about one ulp apart in the stored phases. A pair term behaves
    // like |u_i - u_j|^{p-1}, so such separations leave a gradient of order
    // eps^{p-1} at p < 2; at p = 2 the term is linear and stays at rounding
    // level.
    const auto g12 = fm::energy_gradient(fm::power_map(128, -2), fm::EnergyParams::make(1.2));
    const auto g2 = fm::energy_gradient(fm::power_map(128, -2), fm::EnergyParams::make(2.0));
    double m12 = 0.0, m2 = 0.0;
    for (double v : g12) m12 = std::max(m12, std::abs(v));
    for (double v : g2) m2 = std::max(m2, std::abs(v));
    EXPECT_LE(m2, 1e-12);
    EXPECT_LE(m12, 1e-4);
    EXPECT_GT(m12, 1e-9);
}

TEST(EnergyGradient, SumsToZeroUnderGlobalRotation) {
    // rotation invariance means the gradient is orthogonal to (1, ..., 1)
    std::mt19937_64 rng(8);
    const fm::GridMap u = fm::oracle::random_admissible_map(96, 2, rng);
    const auto g = fm::energy_gradient(u, fm::EnergyParams::make(1.4));
    double s = 0.0, m = 0.0;
    for (double v : g) {
        s += v;
        m = std::max(m, std::abs(v));
    }
    EXPECT_LE(std::abs(s), 1e-11 * m * g.size());
}

TEST(Energy, BoundedBelowByDegreeBoundOnRandomMaps) {
    std::mt19937_64 rng(2024);
    for (int d = -2; d <= 3; ++d) {
        for (int t = 0; t < 50; ++t) {
            const fm::GridMap u = fm::oracle::random_admissible_map(256, d, rng);
            const double e2 = E(u, 2.0);
            for (double p : {1.3, 1.6, 2.0}) {
                const double ep = E(u, p);
                EXPECT_GE(ep, fm::degree_lower_bound(p, d) * 0.98) << "d=" << d << " p=" << p;
                // |u_i - u_j| <= 2 gives the pointwise bound
                EXPECT_LE(e2, std::exp2(2.0 - p) * ep * 1.01) << "d=" << d << " p=" << p;
            }
        }
    }
}

TEST(Energy, MoebiusFamilyNearExtremalAtQuadraticExponent) {
    for (double r : {0.0, 0.2, 0.4}) EXPECT_LE(rel(E(fm::moebius_map(512, {r, 0.0}), 2.0), four_pi2), 0.01);
}

TEST(Energy, DiscreteSumRewardsStrongConcentration) {
    // Dropping the diagonal makes sharply concentrated Möbius traces cheaper
    // than the continuum bound: most nodes collapse onto one point and their
    // mutual distances leave the sum. This is the failure mode the minimizer
    // drifts toward from perturbed starts.
    const double tight = E(fm::moebius_map(256, {0.995, 0.0}), 2.0);
    EXPECT_LT(tight, 0.9 * four_pi2);
    EXPECT_LT(E(fm::moebius_map(256, {0.995, 0.0}), 1.2), fm::degree_lower_bound(1.2, 1));
    EXPECT_GT(E(fm::moebius_map(256, {0.5, 0.0}), 2.0), 0.99 * four_pi2);
}

TEST(IdentityEnergy, ClosedFormValues) {
    EXPECT_LE(rel(fm::identity_energy_closed_form(2.0), four_pi2), 1e-9);
    EXPECT_LE(rel(fm::identity_energy_closed_form(1.2), fz::identity_energy_p12), 1e-12);
    EXPECT_LE(rel(fm::identity_energy_closed_form(1.5), fz::identity_energy_p15), 1e-12);
    EXPECT_LE(rel(fm::identity_energy_closed_form(fz::p_prime), fz::identity_energy_p_prime), 1e-12);
}

TEST(IdentityEnergy, IntegralFormAgrees) {
    for (double p : {1.05, 1.2, 1.5, 1.8, 2.0})
        EXPECT_LE(rel(fm::identity_energy_integral_form(p), fm::identity_energy_closed_form(p)), 1e-10) << p;
}

TEST(IdentityEnergy, StrictlyDecreasingOnGrid) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const double p = 1.01 + (2.0 - 1.01) * i / 99.0;
        const double v = fm::identity_energy_closed_form(p);
        EXPECT_LT(v, prev) << p;
        prev = v;
    }
}

TEST(IdentityEnergy, RejectsOutOfRange) {
    EXPECT_THROW(fm::identity_energy_closed_form(1.0), fm::DomainError);
    EXPECT_THROW(fm::identity_energy_closed_form(2.5), fm::DomainError);
    EXPECT_THROW(fm::identity_energy_derivative(2.0), fm::DomainError);
    EXPECT_THROW(fm::identity_energy_derivative(1.0), fm::DomainError);
    EXPECT_THROW(fm::degree_lower_bound(0.9, 1), fm::DomainError);
}

TEST(IdentityEnergyDerivative, FrozenValuesAndFiniteDifferences) {
    EXPECT_LE(rel(fm::identity_energy_derivative(1.3), fz::identity_derivative_p13), 1e-11);
    EXPECT_LE(rel(fm::identity_energy_derivative(1.5), fz::identity_derivative_p15), 1e-11);
    EXPECT_LE(rel(fm::identity_energy_derivative(1.7), fz::identity_derivative_p17), 1e-11);
    for (double p : {1.3, 1.5, 1.7}) {
        const double h = 1e-6;
        const double fd =
            (fm::identity_energy_closed_form(p + h) - fm::identity_energy_closed_form(p - h)) / (2.0 * h);
        EXPECT_LE(rel(fm::identity_energy_derivative(p), fd), 1e-6) << p;
    }
}

TEST(IdentityEnergyDerivative, VanishesFromBelowAtQuadraticExponent) {
    const double a = fm::identity_energy_derivative(1.999);
    const double b = fm::identity_energy_derivative(1.9999);
    EXPECT_LT(a, 0.0);
    EXPECT_LT(b, 0.0);
    EXPECT_LT(std::abs(b), std::abs(a));
}

TEST(DegreeLowerBound, Values) {
    EXPECT_LE(rel(fm::degree_lower_bound(2.0, 1), four_pi2), 1e-15);
    EXPECT_EQ(fm::degree_lower_bound(1.4, 0), 0.0);
    EXPECT_DOUBLE_EQ(fm::degree_lower_bound(1.4, -3), 3.0 * fm::degree_lower_bound(1.4, 1));
    EXPECT_LE(rel(fm::degree_lower_bound(fz::p_prime, 5), fz::identity_energy_p_prime), 1e-12);
}
