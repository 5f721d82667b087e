#include "rotset/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rotset/errors.hpp"
#include "scc.hpp"

namespace rotset {

namespace {

double rv_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

GroundStateReport ground_state(const PotentialTable& phi, const Direction& alpha,
                               const GroundStateOptions& opts) {
    if (alpha.dim() != phi.dim()) throw ContractError("direction dimension mismatch");
    if (opts.t0 <= 0.0 || opts.growth <= 1.0 || opts.t_max < opts.t0)
        throw ContractError("schedule parameters must satisfy t0 > 0, growth > 1, t_max >= t0");

    const ScalarPotential base = contract(phi, alpha);

    GroundStateReport report;
    report.alpha = alpha;

    std::vector<double> warm_r, warm_l;
    MarkovMeasure last_chain;
    int consecutive_small = 0;
    double t = opts.t0;
    bool at_cap = false;
    while (true) {
        SolveOptions so = opts.solve;
        if (!warm_r.empty()) {
            so.warm_right = &warm_r;
            so.warm_left = &warm_l;
        }
        TransferSolution sol;
        try {
            sol = solve_transfer(scaled(base, t), so);
        } catch (const IterationError&) {
            report.flags.push_back("solve_failed_at_t=" + std::to_string(t));
            break;
        }

        AnnealingTrace::Entry entry;
        entry.t = t;
        entry.rv = measure_integral(sol.markov, phi);
        entry.entropy = measure_entropy(sol.markov);
        entry.pressure = sol.pressure;
        entry.shifted_fallback = sol.shifted_fallback;
        if (sol.shifted_fallback && report.flags.empty())
            report.flags.push_back("shifted_fallback");

        if (!report.trace.entries.empty() &&
            rv_distance(entry.rv, report.trace.entries.back().rv) <= opts.rv_tol)
            ++consecutive_small;
        else
            consecutive_small = 0;

        report.trace.schedule.push_back(t);
        report.trace.entries.push_back(entry);
        last_chain = std::move(sol.markov);
        warm_r = std::move(sol.right_eigvec);
        warm_l = std::move(sol.left_eigvec);

        if (consecutive_small >= 3) {
            report.converged = true;
            break;
        }
        if (at_cap) break;
        t *= opts.growth;
        if (t >= opts.t_max) {
            t = opts.t_max;
            at_cap = true;
        }
    }

    if (report.trace.entries.empty()) return report;

    const AnnealingTrace::Entry& last = report.trace.entries.back();
    report.limit_rv = last.rv;
    report.limit_entropy = last.entropy;
    report.chain_limit = last_chain;
    report.trace.entries.back().chain = last_chain;

    // Closed communicating classes of the limiting chain above the edge floor.
    {
        const MarkovMeasure& mu = report.chain_limit;
        const std::uint64_t S = mu.state_count();
        std::uint32_t ncomp = 0;
        const auto comp = detail::strongly_connected_components(
            S, mu.q, [&](std::uint64_t e) { return mu.emit[e] >= opts.edge_tol; }, &ncomp);
        std::vector<std::uint8_t> open(ncomp, 0);
        for (std::uint64_t u = 0; u < S; ++u)
            for (int a = 0; a < mu.q; ++a) {
                const std::uint64_t e = u * mu.q + a;
                if (mu.emit[e] >= opts.edge_tol && comp[u] != comp[mu.next_state(u, a)])
                    open[comp[u]] = 1;
            }
        std::vector<ClosedClass> classes(ncomp);
        for (std::uint64_t u = 0; u < S; ++u) {
            classes[comp[u]].states.push_back(u);
            classes[comp[u]].weight += mu.stationary[u];
        }
        for (std::uint32_t c = 0; c < ncomp; ++c)
            if (!open[c]) report.closed_classes.push_back(std::move(classes[c]));
        std::sort(report.closed_classes.begin(), report.closed_classes.end(),
                  [](const ClosedClass& a, const ClosedClass& b) { return a.weight > b.weight; });
    }

    if (!report.converged) {
        report.flags.push_back("schedule_exhausted");
        // Cluster the trailing rotation vectors to expose oscillation.
        const std::size_t n = report.trace.entries.size();
        const std::size_t from = n > 6 ? n - 6 : 0;
        for (std::size_t i = from; i < n; ++i) {
            const auto& rv = report.trace.entries[i].rv;
            bool fresh = true;
            for (const auto& acc : report.accumulation_rvs)
                if (rv_distance(acc, rv) <= 1e-6) {
                    fresh = false;
                    break;
                }
            if (fresh) report.accumulation_rvs.push_back(rv);
        }
    }
    return report;
}

double face_entropy_sup(const PotentialTable& phi, const Direction& alpha) {
    const MaxMeanResult mm = max_cycle_mean(WeightedDeBruijn(contract(phi, alpha)));
    const std::uint64_t S = phi.range() == 1 ? 1 : checked_pow(phi.q(), phi.range() - 1);
    const int q = phi.q();
    const auto& keep = mm.optimal_edges;

    // Spectral radius of the 0/1 adjacency of the maximizing subgraph. The
    // optimal-edge mask only contains intra-component edges, so there are no
    // transients; periodic components are handled by the geometric-mean
    // fallback below.
    std::vector<double> x(S, 1.0), xn(S);
    double lambda = 0.0, log_acc = 0.0;
    int acc_count = 0;
    const int max_iter = 5000, window = 500;
    for (int it = 0; it < max_iter; ++it) {
        std::fill(xn.begin(), xn.end(), 0.0);
        for (std::uint64_t u = 0; u < S; ++u) {
            if (x[u] == 0.0) continue;
            for (int a = 0; a < q; ++a) {
                const std::uint64_t e = u * q + a;
                if (keep[e]) xn[e % S] += x[u];
            }
        }
        double s = 0.0, prev = 0.0;
        for (std::uint64_t u = 0; u < S; ++u) {
            s += xn[u];
            prev += x[u];
        }
        if (s == 0.0) return -std::numeric_limits<double>::infinity(); // no maximizing cycle
        const double ratio = s / prev;
        for (std::uint64_t u = 0; u < S; ++u) xn[u] /= ratio;
        x.swap(xn);
        if (it >= max_iter - window) {
            log_acc += std::log(ratio);
            ++acc_count;
        }
        if (it > 2 && std::abs(ratio - lambda) <= 1e-13 * std::max(1.0, ratio)) {
            lambda = ratio;
            return std::log(lambda);
        }
        lambda = ratio;
    }
    // Oscillating (periodic) subgraph: the geometric mean of the growth
    // factors still converges to the spectral radius.
    return log_acc / acc_count;
}

LimitCheck verify_thm1a(const GroundStateReport& report, const Polygon2& poly,
                        const PotentialTable& phi, double tol) {
    if (phi.dim() != 2) throw ContractError("limit checks require a 2-D potential");
    LimitCheck check;
    const Point2 dir{report.alpha.components[0], report.alpha.components[1]};
    const double support = poly.support(dir);
    for (const auto& entry : report.trace.entries)
        check.hyperplane_dist.push_back(
            std::abs(support - (dir[0] * entry.rv[0] + dir[1] * entry.rv[1])));
    if (!check.hyperplane_dist.empty()) check.final_dist = check.hyperplane_dist.back();
    check.dist_ok = !check.hyperplane_dist.empty() && check.final_dist <= tol;
    if (!check.dist_ok)
        check.findings.push_back("rotation vectors do not reach the supporting hyperplane");

    check.face = face_of_direction(poly, report.alpha);
    if (report.limit_rv.size() == 2) {
        check.face_dist = check.face.distance({report.limit_rv[0], report.limit_rv[1]});
        check.rv_on_face = check.face_dist <= tol;
    }
    if (!check.rv_on_face)
        check.findings.push_back("limit rotation vector is off the exposed face");

    check.face_entropy = face_entropy_sup(phi, report.alpha);
    check.entropy_ok = std::abs(report.limit_entropy - check.face_entropy) <= tol;
    if (!check.entropy_ok)
        check.findings.push_back("limit entropy differs from the maximal entropy on the face");
    return check;
}

} // namespace rotset
