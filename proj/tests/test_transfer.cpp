#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rotset/cycle.hpp"
#include "rotset/errors.hpp"
#include "rotset/transfer.hpp"

using namespace rotset;

namespace {

ScalarPotential random_scalar(int q, int r, std::mt19937& rng, double magnitude = 1.0) {
    ScalarPotential psi(q, r);
    std::uniform_real_distribution<double> dist(-magnitude, magnitude);
    for (double& v : psi.values) v = dist(rng);
    return psi;
}

// A random row-stochastic chain on the de Bruijn graph with its exact
// stationary vector (for optimality comparisons against the equilibrium).
MarkovMeasure random_markov(int q, int r, std::mt19937& rng) {
    MarkovMeasure mu;
    mu.q = q;
    mu.r = r;
    const std::uint64_t S = r == 1 ? 1 : checked_pow(q, r - 1);
    mu.emit.assign(S * q, 0.0);
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    for (std::uint64_t u = 0; u < S; ++u) {
        double row = 0.0;
        for (int a = 0; a < q; ++a) row += (mu.emit[u * q + a] = dist(rng));
        for (int a = 0; a < q; ++a) mu.emit[u * q + a] /= row;
    }
    mu.stationary.assign(S, 1.0 / static_cast<double>(S));
    std::vector<double> next(S);
    for (int it = 0; it < 20000; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::uint64_t u = 0; u < S; ++u)
            for (int a = 0; a < q; ++a)
                next[mu.next_state(u, a)] += mu.stationary[u] * mu.emit[u * q + a];
        double diff = 0.0;
        for (std::uint64_t u = 0; u < S; ++u) diff = std::max(diff, std::abs(next[u] - mu.stationary[u]));
        mu.stationary.swap(next);
        if (diff < 1e-16) break;
    }
    return mu;
}

} // namespace

TEST_CASE("pressure of the zero potential is log q") {
    ScalarPotential zero2(2, 1);
    const auto sol2 = solve_transfer(zero2);
    CHECK(sol2.pressure == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(sol2.markov.emit[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sol2.markov.emit[1] == doctest::Approx(0.5).epsilon(1e-12));

    ScalarPotential zero4(4, 1);
    CHECK(solve_transfer(zero4).pressure == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    ScalarPotential zero23(2, 3);
    CHECK(solve_transfer(zero23).pressure == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("depth-1 pressures have the log-sum-exp closed form") {
    ScalarPotential psi(2, 1);
    psi.values = {0.0, 1.0};
    const auto sol = solve_transfer(psi);
    CHECK(sol.pressure == doctest::Approx(std::log(1.0 + std::exp(1.0))).epsilon(1e-12));
    const double p1 = std::exp(1.0) / (1.0 + std::exp(1.0));
    CHECK(sol.markov.emit[1] == doctest::Approx(p1).epsilon(1e-12));
    CHECK(measure_entropy(sol.markov) ==
          doctest::Approx(-p1 * std::log(p1) - (1 - p1) * std::log(1 - p1)).epsilon(1e-12));
}

TEST_CASE("entropy formula on hand-built chains") {
    MarkovMeasure uniform;
    uniform.q = 2;
    uniform.r = 1;
    uniform.stationary = {1.0};
    uniform.emit = {0.5, 0.5};
    CHECK(measure_entropy(uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    MarkovMeasure cycle; // deterministic 2-cycle on states 0,1 (r = 2)
    cycle.q = 2;
    cycle.r = 2;
    cycle.stationary = {0.5, 0.5};
    cycle.emit = {0.0, 1.0, 1.0, 0.0};
    CHECK(measure_entropy(cycle) == 0.0);
}

TEST_CASE("measure integrals recover rotation vectors") {
    PotentialTable phi(2, 1, 2);
    phi.set(0, std::vector<double>{1.0, 0.0});
    phi.set(1, std::vector<double>{0.0, 1.0});

    MarkovMeasure uniform;
    uniform.q = 2;
    uniform.r = 1;
    uniform.stationary = {1.0};
    uniform.emit = {0.5, 0.5};
    auto rv = measure_integral(uniform, phi);
    CHECK(rv[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rv[1] == doctest::Approx(0.5).epsilon(1e-15));

    MarkovMeasure fixed1;
    fixed1.q = 2;
    fixed1.r = 1;
    fixed1.stationary = {1.0};
    fixed1.emit = {0.0, 1.0};
    rv = measure_integral(fixed1, phi);
    CHECK(rv[0] == 0.0);
    CHECK(rv[1] == 1.0);

    const double p = std::exp(1.0) / (1.0 + std::exp(1.0));
    MarkovMeasure bern;
    bern.q = 2;
    bern.r = 1;
    bern.stationary = {1.0};
    bern.emit = {1.0 - p, p};
    rv = measure_integral(bern, phi);
    CHECK(rv[0] == doctest::Approx(1.0 - p).epsilon(1e-12));
    CHECK(rv[1] == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("range extension ignores trailing symbols") {
    // The same depth-1 potential integrated against an r = 3 chain.
    PotentialTable phi(2, 1, 1);
    const double v0 = 2.0, v1 = 5.0;
    phi.set(0, std::span<const double>(&v0, 1));
    phi.set(1, std::span<const double>(&v1, 1));
    std::mt19937 rng(7);
    const MarkovMeasure mu = random_markov(2, 3, rng);
    // Expected: sum over states of pi * p * value of the emitted-word's first symbol.
    double expect = 0.0;
    for (std::uint64_t u = 0; u < mu.state_count(); ++u)
        for (int a = 0; a < 2; ++a) {
            const int first = static_cast<int>((u * 2 + a) / 4); // leading symbol of the 3-word
            expect += mu.stationary[u] * mu.emit[u * 2 + a] * (first ? v1 : v0);
        }
    CHECK(measure_integral(mu, phi)[0] == doctest::Approx(expect).epsilon(1e-12));
    PotentialTable big(2, 4, 1);
    CHECK_THROWS_AS(measure_integral(mu, big), ContractError);
}

TEST_CASE("variational identity on random potentials") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        const int q = trial % 2 ? 2 : 4;
        const int r = 1 + trial % 3;
        const ScalarPotential psi = random_scalar(q, r, rng, 2.0);
        const auto sol = solve_transfer(psi);
        const double lhs = measure_entropy(sol.markov) + measure_integral(sol.markov, psi);
        CHECK(lhs == doctest::Approx(sol.pressure).epsilon(1e-11));
    }
}

TEST_CASE("pressure shift and convexity") {
    std::mt19937 rng(99);
    const ScalarPotential psi1 = random_scalar(2, 3, rng);
    const ScalarPotential psi2 = random_scalar(2, 3, rng);
    const double p1 = solve_transfer(psi1).pressure;
    const double p2 = solve_transfer(psi2).pressure;

    ScalarPotential shifted = psi1;
    for (double& v : shifted.values) v += 0.7;
    CHECK(solve_transfer(shifted).pressure == doctest::Approx(p1 + 0.7).epsilon(1e-10));

    for (double s : {0.25, 0.5, 0.75}) {
        ScalarPotential mix(2, 3);
        for (std::size_t e = 0; e < mix.values.size(); ++e)
            mix.values[e] = s * psi1.values[e] + (1 - s) * psi2.values[e];
        CHECK(solve_transfer(mix).pressure <= s * p1 + (1 - s) * p2 + 1e-10);
    }
}

TEST_CASE("equilibrium beats random competitors") {
    std::mt19937 rng(2024);
    const ScalarPotential psi = random_scalar(2, 3, rng, 1.5);
    const auto sol = solve_transfer(psi);
    for (int trial = 0; trial < 20; ++trial) {
        const MarkovMeasure nu = random_markov(2, 3, rng);
        const double value = measure_entropy(nu) + measure_integral(nu, psi);
        CHECK(value <= sol.pressure + 1e-9);
    }
}

TEST_CASE("dense unscaled iteration agrees as a pressure oracle") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 1 + trial % 3;
        const ScalarPotential psi = random_scalar(2, r, rng, 0.5);
        const std::uint64_t S = r == 1 ? 1 : checked_pow(2, r - 1);
        // Plain power iteration of the unscaled matrix exp(psi).
        std::vector<double> x(S, 1.0), xn(S);
        double lambda = 0.0;
        for (int it = 0; it < 20000; ++it) {
            std::fill(xn.begin(), xn.end(), 0.0);
            for (std::uint64_t u = 0; u < S; ++u)
                for (int a = 0; a < 2; ++a)
                    xn[(u * 2 + a) % S] += std::exp(psi.values[u * 2 + a]) * x[u];
            double s = 0.0;
            for (std::uint64_t u = 0; u < S; ++u) s += xn[u];
            double norm = 0.0;
            for (std::uint64_t u = 0; u < S; ++u) norm += x[u];
            lambda = s / norm;
            x.swap(xn);
            double total = 0.0;
            for (double v : x) total += v;
            for (double& v : x) v /= total;
        }
        CHECK(solve_transfer(psi).pressure == doctest::Approx(std::log(lambda)).epsilon(1e-10));
    }
}

TEST_CASE("chain invariants hold on every solve") {
    std::mt19937 rng(31);
    const ScalarPotential psi = random_scalar(3, 2, rng);
    const auto sol = solve_transfer(psi);
    const MarkovMeasure& mu = sol.markov;
    for (std::uint64_t u = 0; u < mu.state_count(); ++u) {
        double row = 0.0;
        for (int a = 0; a < mu.q; ++a) row += mu.emit[u * mu.q + a];
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }
    std::vector<double> next(mu.state_count(), 0.0);
    for (std::uint64_t u = 0; u < mu.state_count(); ++u)
        for (int a = 0; a < mu.q; ++a)
            next[mu.next_state(u, a)] += mu.stationary[u] * mu.emit[u * mu.q + a];
    for (std::uint64_t u = 0; u < mu.state_count(); ++u)
        CHECK(next[u] == doctest::Approx(mu.stationary[u]).epsilon(1e-10));
    for (double v : sol.right_eigvec) CHECK(v > 0.0);
    for (double v : sol.left_eigvec) CHECK(v > 0.0);
}

TEST_CASE("annealing the Bernoulli potential follows the closed form") {
    PotentialTable phi(2, 1, 1);
    const double v0 = 0.0, v1 = 1.0;
    phi.set(0, std::span<const double>(&v0, 1));
    phi.set(1, std::span<const double>(&v1, 1));
    const Direction alpha = Direction::unit({1.0});
    const auto trace = anneal(phi, alpha, {0.0, 2.0, 50.0});
    REQUIRE(trace.entries.size() == 3);
    CHECK(trace.entries[0].rv[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(trace.entries[0].entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const double p2 = std::exp(2.0) / (1.0 + std::exp(2.0));
    CHECK(trace.entries[1].rv[0] == doctest::Approx(p2).epsilon(1e-10));
    CHECK(std::abs(trace.entries[2].rv[0] - 1.0) <= 1e-8);
    CHECK(std::abs(trace.entries[2].entropy) <= 1e-8);
    CHECK(trace.entries.back().chain.has_value());
}

TEST_CASE("annealing validates its schedule") {
    PotentialTable phi(2, 1, 1);
    const double z = 0.0;
    phi.set(0, std::span<const double>(&z, 1));
    phi.set(1, std::span<const double>(&z, 1));
    const Direction alpha = Direction::unit({1.0});
    CHECK_THROWS_AS(anneal(phi, alpha, {1.0, 1.0}), ContractError);
    CHECK_THROWS_AS(anneal(phi, alpha, {-1.0, 2.0}), ContractError);
}

TEST_CASE("pressure slope matches the maximum cycle mean at large t") {
    std::mt19937 rng(77);
    const ScalarPotential psi = random_scalar(2, 3, rng);
    const double mcm = max_cycle_mean(WeightedDeBruijn(psi)).value;
    const double t = 200.0;
    const double slope = solve_transfer(scaled(psi, t)).pressure / t;
    CHECK(slope == doctest::Approx(mcm).epsilon(1e-3));
    CHECK(slope >= mcm - 1e-10); // entropy only adds
    CHECK(slope <= mcm + std::log(2.0) / t + 1e-10);
}
