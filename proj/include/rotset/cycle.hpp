#ifndef ROTSET_CYCLE_HPP
#define ROTSET_CYCLE_HPP

#include <cstdint>
#include <vector>

#include "rotset/potential.hpp"
#include "rotset/word.hpp"

namespace rotset {

// De Bruijn graph of the full shift with one real weight per length-r word
// (edge u -> (u*q+a) mod q^(r-1) carries weight w[u*q+a]).
struct WeightedDeBruijn {
    int q = 2;
    int r = 1;
    std::vector<double> weights; // q^r entries

    WeightedDeBruijn() = default;
    WeightedDeBruijn(int q_, int r_);
    explicit WeightedDeBruijn(const ScalarPotential& psi);

    std::uint64_t state_count() const;
    std::uint64_t edge_count() const { return weights.size(); }
};

struct MaxMeanResult {
    double value = 0.0;
    PeriodicOrbit witness_cycle;
    // Per length-r word: edge lies on some maximum-mean cycle (within tol).
    std::vector<std::uint8_t> optimal_edges;
    // Node potentials certifying optimality: w(u,a) - value + h[v] - h[u] <= tol.
    std::vector<double> bias;
};

// Maximum cycle mean via Howard policy iteration (deterministic), with the
// optimal-edge subgraph extracted from the reduced weights. The reported
// value is the exact mean of the witness cycle. On small graphs the value is
// cross-checked against the Karp recurrence.
MaxMeanResult max_cycle_mean(const WeightedDeBruijn& g, double tol = 1e-9);

// Exact Karp recurrence value. O(V*E) time, O(V^2) memory: limited to
// state counts <= 2048 (CapacityError beyond).
double karp_cycle_mean(const WeightedDeBruijn& g);

// Support function of Rot(Phi) at alpha: max cycle mean of alpha.Phi.
double support_value(const PotentialTable& phi, const Direction& alpha);

} // namespace rotset

#endif
