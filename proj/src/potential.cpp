#include "rotset/potential.hpp"

#include <cmath>

#include "rotset/errors.hpp"

namespace rotset {

double Direction::dot(std::span<const double> v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) s += components[i] * v[i];
    return s;
}

Direction Direction::of(std::vector<double> v) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    if (n2 <= 0.0 || !std::isfinite(n2)) throw DomainError("direction must be a nonzero finite vector");
    const double n = std::sqrt(n2);
    for (double& x : v) x /= n;
    Direction d;
    d.components = std::move(v);
    return d;
}

Direction Direction::unit(std::vector<double> v) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw DomainError("direction is not unit length");
    Direction d;
    d.components = std::move(v);
    return d;
}

PotentialTable::PotentialTable(int q, int r, int m) : q_(q), r_(r), m_(m) {
    if (q < 2) throw ContractError("alphabet size must be >= 2");
    if (r < 1 || r > 16) throw ContractError("range must be in [1, 16]");
    if (m < 1) throw ContractError("dimension must be >= 1");
    size_ = checked_pow(q, r);
    values_.assign(size_ * static_cast<std::uint64_t>(m), 0.0);
}

void PotentialTable::set(std::uint64_t code, std::span<const double> v) {
    if (code >= size_) throw ContractError("word code out of range");
    if (static_cast<int>(v.size()) != m_) throw ContractError("value dimension mismatch");
    for (int i = 0; i < m_; ++i) values_[code * m_ + i] = v[i];
}

void PotentialTable::validate() const {
    for (double x : values_)
        if (!std::isfinite(x)) throw ContractError("potential table contains a non-finite entry");
}

ScalarPotential::ScalarPotential(int q_, int r_) : q(q_), r(r_) {
    values.assign(checked_pow(q_, r_), 0.0);
}

ScalarPotential contract(const PotentialTable& phi, const Direction& alpha) {
    if (alpha.dim() != phi.dim()) throw ContractError("direction dimension does not match the potential");
    ScalarPotential psi(phi.q(), phi.range());
    for (std::uint64_t c = 0; c < phi.table_size(); ++c) psi.values[c] = alpha.dot(phi.value(c));
    return psi;
}

ScalarPotential scaled(const ScalarPotential& psi, double t) {
    ScalarPotential out = psi;
    for (double& x : out.values) x *= t;
    return out;
}

std::vector<double> periodic_orbit_rv(const PeriodicOrbit& o, const PotentialTable& phi) {
    if (o.generator.q != phi.q()) throw ContractError("alphabet mismatch between orbit and potential");
    const int p = o.period();
    const int r = phi.range();
    const auto& g = o.generator.symbols;
    std::vector<double> acc(phi.dim(), 0.0);
    for (int s = 0; s < p; ++s) {
        std::uint64_t code = 0;
        for (int i = 0; i < r; ++i) code = code * phi.q() + static_cast<std::uint64_t>(g[(s + i) % p]);
        auto v = phi.value(code);
        for (int d = 0; d < phi.dim(); ++d) acc[d] += v[d];
    }
    for (double& x : acc) x /= p;
    return acc;
}

} // namespace rotset
