#ifndef ROTSET_ANNEAL_HPP
#define ROTSET_ANNEAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotset/cycle.hpp"
#include "rotset/geometry.hpp"
#include "rotset/transfer.hpp"

namespace rotset {

struct ClosedClass {
    std::vector<std::uint64_t> states;
    double weight = 0.0;
};

struct GroundStateReport {
    Direction alpha;
    bool converged = false;
    std::vector<double> limit_rv;
    double limit_entropy = 0.0;
    std::optional<Face2> face; // filled by verify_thm1a when m = 2
    MarkovMeasure chain_limit;
    std::vector<ClosedClass> closed_classes; // sorted by weight, descending
    std::vector<std::vector<double>> accumulation_rvs; // clusters when not converged
    std::vector<std::string> flags;
    AnnealingTrace trace;
};

struct GroundStateOptions {
    double t0 = 1.0;
    double growth = 1.5;
    double t_max = 400.0;
    double rv_tol = 1e-9;    // convergence: 3 consecutive steps below this
    double edge_tol = 1e-12; // transition floor for closed-class extraction
    SolveOptions solve;
};

// Traces equilibrium states of t*(alpha.Phi) along a geometric schedule and
// summarizes the zero-temperature limit. Non-convergence is reported via
// converged = false, never an exception.
GroundStateReport ground_state(const PotentialTable& phi, const Direction& alpha,
                               const GroundStateOptions& opts = {});

struct LimitCheck {
    std::vector<double> hyperplane_dist; // per trace entry, dist(rv(t_k), H_alpha)
    double final_dist = 0.0;
    bool dist_ok = false;
    Face2 face;
    double face_dist = 0.0; // distance of limit_rv to the face
    bool rv_on_face = false;
    double face_entropy = 0.0; // face_entropy_sup value
    bool entropy_ok = false;
    std::vector<std::string> findings;
};

// Checks the zero-temperature limit against the boundary geometry: the rv
// trace approaches the supporting hyperplane H_alpha, the limit lands on
// face_of_direction(poly, alpha), and the limit entropy matches the maximal
// entropy available on the face. Failures are findings, not exceptions.
LimitCheck verify_thm1a(const GroundStateReport& report, const Polygon2& poly,
                        const PotentialTable& phi, double tol = 1e-6);

// Topological entropy of the maximizing subgraph for weights alpha.Phi:
// log of the spectral radius of the optimal-edge adjacency matrix.
double face_entropy_sup(const PotentialTable& phi, const Direction& alpha);

} // namespace rotset

#endif
