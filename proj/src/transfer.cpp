#include "rotset/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotset/errors.hpp"

namespace rotset {

namespace {

std::uint64_t state_count_of(const ScalarPotential& psi) {
    return psi.r == 1 ? 1 : checked_pow(psi.q, psi.r - 1);
}

struct PowerResult {
    double lambda = 0.0;
    std::vector<double> right, left;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// Simultaneous power iteration on M and M^T. M is the exponentiated transfer
// matrix given by edge weights w[e], e = u*q + a, v = e mod S. Vectors are
// kept L1-normalized; lambda is estimated from the right iteration.
PowerResult power_iterate(const std::vector<double>& w, int q, std::uint64_t S, double diag_eps,
                          double tol, int max_iter, const std::vector<double>* warm_right,
                          const std::vector<double>* warm_left) {
    PowerResult out;
    auto init = [&](const std::vector<double>* warm) {
        if (warm && warm->size() == S) return *warm;
        return std::vector<double>(S, 1.0 / static_cast<double>(S));
    };
    std::vector<double> x = init(warm_right), y = init(warm_left);
    std::vector<double> xn(S), yn(S);
    double lambda = 0.0;
    // Summation rounding makes the lambda estimate limit-cycle a little above
    // machine precision on large state spaces; accept a residual that has
    // stopped improving as long as it sits at that noise level.
    const double stall_tol = tol * 1e3;
    double best_res = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int it = 0; it < max_iter; ++it) {
        std::fill(yn.begin(), yn.end(), 0.0);
        for (std::uint64_t u = 0; u < S; ++u) {
            const std::uint64_t base = u * static_cast<std::uint64_t>(q);
            double acc = 0.0;
            for (int a = 0; a < q; ++a) {
                const std::uint64_t e = base + a;
                const std::uint64_t v = e % S;
                acc += w[e] * x[v];
                yn[v] += w[e] * y[u];
            }
            xn[u] = acc + diag_eps * x[u];
        }
        if (diag_eps != 0.0)
            for (std::uint64_t v = 0; v < S; ++v) yn[v] += diag_eps * y[v];

        double sx = 0.0, sy = 0.0;
        for (double v : xn) sx += v;
        for (double v : yn) sy += v;
        const double lambda_new = sx; // x was L1-normalized
        double dv = 0.0;
        for (std::uint64_t u = 0; u < S; ++u) {
            xn[u] /= sx;
            yn[u] /= sy;
            dv = std::max(dv, std::abs(xn[u] - x[u]));
            dv = std::max(dv, std::abs(yn[u] - y[u]));
        }
        x.swap(xn);
        y.swap(yn);
        const double dl = std::abs(lambda_new - lambda) /
                          std::max(std::abs(lambda_new), std::numeric_limits<double>::min());
        lambda = lambda_new;
        out.iterations = it + 1;
        out.residual = std::max(dl, dv);
        if (out.residual < 0.999 * best_res) {
            best_res = out.residual;
            stall = 0;
        } else {
            ++stall;
        }
        if (it > 0 && (out.residual <= tol || (stall >= 200 && out.residual <= stall_tol))) {
            out.converged = true;
            break;
        }
    }
    out.lambda = lambda;
    out.right = std::move(x);
    out.left = std::move(y);
    return out;
}

} // namespace

double measure_entropy(const MarkovMeasure& mu) {
    const std::uint64_t S = mu.state_count();
    double h = 0.0;
    for (std::uint64_t u = 0; u < S; ++u) {
        const double pi = mu.stationary[u];
        if (pi <= 0.0) continue;
        for (int a = 0; a < mu.q; ++a) {
            const double p = mu.emit[u * mu.q + a];
            if (p > 0.0) h -= pi * p * std::log(p);
        }
    }
    return h;
}

std::vector<double> measure_integral(const MarkovMeasure& mu, const PotentialTable& phi) {
    if (phi.q() != mu.q) throw ContractError("alphabet mismatch");
    if (phi.range() > mu.r) throw ContractError("potential range exceeds the chain range");
    const std::uint64_t S = mu.state_count();
    const std::uint64_t drop = checked_pow(mu.q, mu.r - phi.range()); // trailing symbols ignored
    std::vector<double> acc(phi.dim(), 0.0);
    for (std::uint64_t u = 0; u < S; ++u) {
        const double pi = mu.stationary[u];
        if (pi == 0.0) continue;
        for (int a = 0; a < mu.q; ++a) {
            const double p = mu.emit[u * mu.q + a];
            if (p == 0.0) continue;
            const std::uint64_t word = mu.edge_word(u, a) / drop;
            auto v = phi.value(word);
            for (int d = 0; d < phi.dim(); ++d) acc[d] += pi * p * v[d];
        }
    }
    return acc;
}

double measure_integral(const MarkovMeasure& mu, const ScalarPotential& psi) {
    if (psi.q != mu.q) throw ContractError("alphabet mismatch");
    if (psi.r > mu.r) throw ContractError("potential range exceeds the chain range");
    const std::uint64_t S = mu.state_count();
    const std::uint64_t drop = checked_pow(mu.q, mu.r - psi.r);
    double acc = 0.0;
    for (std::uint64_t u = 0; u < S; ++u) {
        const double pi = mu.stationary[u];
        if (pi == 0.0) continue;
        for (int a = 0; a < mu.q; ++a) {
            const double p = mu.emit[u * mu.q + a];
            if (p == 0.0) continue;
            acc += pi * p * psi.values[mu.edge_word(u, a) / drop];
        }
    }
    return acc;
}

TransferSolution solve_transfer(const ScalarPotential& psi, const SolveOptions& opts) {
    if (opts.tol <= 0.0) throw ContractError("tolerance must be positive");
    for (double v : psi.values)
        if (!std::isfinite(v)) throw ContractError("potential contains a non-finite entry");

    const int q = psi.q;
    const std::uint64_t S = state_count_of(psi);
    const double c = *std::max_element(psi.values.begin(), psi.values.end());

    std::vector<double> w(psi.values.size());
    for (std::size_t e = 0; e < w.size(); ++e) w[e] = std::exp(psi.values[e] - c);

    PowerResult pr = power_iterate(w, q, S, 0.0, opts.tol, opts.max_iter, opts.warm_right,
                                   opts.warm_left);
    bool fallback = false;
    double lambda = pr.lambda;
    if (!pr.converged) {
        // The matrix is nearly periodic or nearly reducible (large t): plain
        // iteration oscillates. The running geometric mean of the growth
        // ratios still converges to the Perron value, so estimate lambda that
        // way and retry with a diagonal shift of the same order, which breaks
        // the eigenvalue symmetry without drowning the signal.
        double eps = 1e-12;
        {
            std::vector<double> x = pr.right, xn(S);
            double total = 0.0;
            for (double v : x) total += v;
            for (double& v : x) v /= total;
            double logacc = 0.0;
            int cnt = 0;
            for (int it = 0; it < 600; ++it) {
                std::fill(xn.begin(), xn.end(), 0.0);
                for (std::uint64_t u = 0; u < S; ++u) {
                    const std::uint64_t base = u * static_cast<std::uint64_t>(q);
                    double acc = 0.0;
                    for (int a = 0; a < q; ++a) acc += w[base + a] * x[(base + a) % S];
                    xn[u] = acc;
                }
                double sx = 0.0;
                for (double v : xn) sx += v;
                if (!(sx > 0.0) || !std::isfinite(sx)) break;
                if (it >= 100) {
                    logacc += std::log(sx);
                    ++cnt;
                }
                for (std::uint64_t u = 0; u < S; ++u) xn[u] /= sx;
                x.swap(xn);
            }
            if (cnt > 0) {
                const double est = std::exp(logacc / cnt);
                if (std::isfinite(est) && est > 0.0) eps = est;
            }
        }
        PowerResult pr2 = power_iterate(w, q, S, eps, opts.tol, opts.max_iter, &pr.right, &pr.left);
        if (!pr2.converged)
            throw IterationError("transfer solve did not converge", pr2.residual);
        pr = std::move(pr2);
        lambda = pr.lambda - eps;
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw IterationError("transfer solve lost the Perron value in the shifted retry",
                                 pr.residual);
        fallback = true;
    }

    TransferSolution sol;
    sol.shift = c;
    sol.pressure = c + std::log(lambda);
    sol.right_eigvec = pr.right;
    sol.left_eigvec = pr.left;
    sol.shifted_fallback = fallback;
    sol.iterations = pr.iterations;
    sol.residual = pr.residual;

    MarkovMeasure& mu = sol.markov;
    mu.q = q;
    mu.r = psi.r;
    mu.emit.assign(S * static_cast<std::uint64_t>(q), 0.0);
    mu.stationary.assign(S, 0.0);
    for (std::uint64_t u = 0; u < S; ++u) {
        double row = 0.0;
        for (int a = 0; a < q; ++a) {
            const std::uint64_t e = u * q + a;
            const double p = w[e] * pr.right[e % S] / (pr.lambda * pr.right[u]);
            mu.emit[e] = p;
            row += p;
        }
        for (int a = 0; a < q; ++a) mu.emit[u * q + a] /= row; // exact row normalization
        mu.stationary[u] = pr.left[u] * pr.right[u];
    }
    double mass = 0.0;
    for (double v : mu.stationary) mass += v;
    for (double& v : mu.stationary) v /= mass;

    // Polish the stationary vector against the normalized chain.
    std::vector<double> pin(S);
    for (int polish = 0; polish < 200; ++polish) {
        std::fill(pin.begin(), pin.end(), 0.0);
        for (std::uint64_t u = 0; u < S; ++u) {
            if (mu.stationary[u] == 0.0) continue;
            for (int a = 0; a < q; ++a)
                pin[mu.next_state(u, a)] += mu.stationary[u] * mu.emit[u * q + a];
        }
        double diff = 0.0;
        for (std::uint64_t u = 0; u < S; ++u) diff = std::max(diff, std::abs(pin[u] - mu.stationary[u]));
        mu.stationary.swap(pin);
        if (diff <= 1e-15) break;
    }
    return sol;
}

AnnealingTrace anneal(const PotentialTable& phi, const Direction& alpha,
                      const std::vector<double>& schedule, const AnnealOptions& opts) {
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 0.0) throw ContractError("schedule entries must be >= 0");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw ContractError("schedule must be strictly increasing");
    }
    const ScalarPotential base = contract(phi, alpha);

    AnnealingTrace trace;
    trace.schedule = schedule;
    std::vector<double> warm_r, warm_l;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double t = schedule[i];
        SolveOptions so = opts.solve;
        if (opts.warm_start && !warm_r.empty()) {
            so.warm_right = &warm_r;
            so.warm_left = &warm_l;
        }
        TransferSolution sol;
        try {
            sol = solve_transfer(scaled(base, t), so);
        } catch (const IterationError& e) {
            throw IterationError("annealing failed at t = " + std::to_string(t) + ": " + e.what(),
                                 e.last_residual);
        }
        AnnealingTrace::Entry entry;
        entry.t = t;
        entry.rv = measure_integral(sol.markov, phi);
        entry.entropy = measure_entropy(sol.markov);
        entry.pressure = sol.pressure;
        entry.shifted_fallback = sol.shifted_fallback;
        if (opts.keep_chains || i + 1 == schedule.size())
            entry.chain = sol.markov;
        if (opts.warm_start) {
            warm_r = sol.right_eigvec;
            warm_l = sol.left_eigvec;
        }
        trace.entries.push_back(std::move(entry));
    }
    return trace;
}

} // namespace rotset
