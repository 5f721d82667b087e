#ifndef ROTSET_TRANSFER_HPP
#define ROTSET_TRANSFER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rotset/potential.hpp"

namespace rotset {

// Stationary Gibbs-Markov chain on de Bruijn states (length r-1 words; a
// single state when r = 1). Transitions are stored per emitted symbol:
// emit[u*q + a] is the probability of appending symbol a in state u, which
// moves to state (u*q + a) mod q^(r-1).
struct MarkovMeasure {
    int q = 2;
    int r = 1;
    std::vector<double> stationary; // q^(r-1) entries
    std::vector<double> emit;       // q^(r-1) * q entries, rows sum to 1

    std::uint64_t state_count() const { return stationary.size(); }
    std::uint64_t next_state(std::uint64_t u, int a) const {
        return (u * q + a) % state_count();
    }
    // Code of the length-r word read when state u emits symbol a.
    std::uint64_t edge_word(std::uint64_t u, int a) const { return u * q + a; }
};

// -sum_u pi[u] sum_a p(u,a) log p(u,a); zero terms for zero transitions.
double measure_entropy(const MarkovMeasure& mu);

// Rotation vector of mu: sum over edges of pi[u] p(u,a) Phi(word u.a).
// Phi may have a smaller range than mu (trailing symbols are ignored);
// a larger range is a ContractError.
std::vector<double> measure_integral(const MarkovMeasure& mu, const PotentialTable& phi);

// Scalar version of measure_integral.
double measure_integral(const MarkovMeasure& mu, const ScalarPotential& psi);

struct TransferSolution {
    double pressure = 0.0;
    double shift = 0.0; // log-domain normalization c = max psi
    std::vector<double> right_eigvec;
    std::vector<double> left_eigvec;
    MarkovMeasure markov;
    bool shifted_fallback = false; // solver stalled and used the eps*I fallback
    int iterations = 0;
    double residual = 0.0;
};

struct SolveOptions {
    double tol = 1e-13;
    int max_iter = 100000;
    // Optional warm start (sizes must match the state count).
    const std::vector<double>* warm_right = nullptr;
    const std::vector<double>* warm_left = nullptr;
};

// Perron solve of the transfer matrix M[u->v] = exp(psi(word) - c).
// Returns P = c + log(lambda) and the equilibrium Gibbs chain.
// Throws IterationError if the fallback also fails to converge.
TransferSolution solve_transfer(const ScalarPotential& psi, const SolveOptions& opts = {});

// One annealing sample along a temperature schedule.
struct AnnealingTrace {
    struct Entry {
        double t = 0.0;
        std::vector<double> rv;
        double entropy = 0.0;
        double pressure = 0.0;
        bool shifted_fallback = false;
        std::optional<MarkovMeasure> chain; // kept when requested, always for the last entry
    };
    std::vector<double> schedule;
    std::vector<Entry> entries;
};

struct AnnealOptions {
    SolveOptions solve;
    bool warm_start = true;  // reuse eigenvectors of the previous t
    bool keep_chains = false;
};

// Solves t*(alpha.Phi) for each t in an increasing schedule of inverse
// temperatures (all t >= 0).
AnnealingTrace anneal(const PotentialTable& phi, const Direction& alpha,
                      const std::vector<double>& schedule, const AnnealOptions& opts = {});

} // namespace rotset

#endif
