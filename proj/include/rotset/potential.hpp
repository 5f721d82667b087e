#ifndef ROTSET_POTENTIAL_HPP
#define ROTSET_POTENTIAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rotset/word.hpp"

namespace rotset {

// Unit vector in R^m used to select a scalar contraction of a potential.
struct Direction {
    std::vector<double> components;

    int dim() const { return static_cast<int>(components.size()); }
    double dot(std::span<const double> v) const;

    // Normalizes; throws DomainError on a zero vector.
    static Direction of(std::vector<double> v);
    // Accepts only vectors already unit within 1e-12.
    static Direction unit(std::vector<double> v);
};

// Vector-valued finite-range potential: a total map from words of length r
// over {0..q-1} to vectors in R^m, stored dense and indexed by word code.
class PotentialTable {
public:
    PotentialTable(int q, int r, int m);

    int q() const { return q_; }
    int range() const { return r_; }
    int dim() const { return m_; }
    std::uint64_t table_size() const { return size_; }

    std::span<const double> value(std::uint64_t code) const {
        return {values_.data() + code * m_, static_cast<std::size_t>(m_)};
    }
    std::span<double> value(std::uint64_t code) {
        return {values_.data() + code * m_, static_cast<std::size_t>(m_)};
    }

    void set(std::uint64_t code, std::span<const double> v);

    // Throws ContractError if any entry is non-finite.
    void validate() const;

    const std::vector<double>& raw() const { return values_; }

private:
    int q_, r_, m_;
    std::uint64_t size_;
    std::vector<double> values_;
};

// Scalar finite-range potential (one coordinate or a contraction alpha.Phi).
struct ScalarPotential {
    int q = 2;
    int r = 1;
    std::vector<double> values; // q^r entries indexed by word code

    ScalarPotential() = default;
    ScalarPotential(int q_, int r_);
    std::uint64_t table_size() const { return values.size(); }
};

// alpha.Phi as a scalar table. Throws ContractError on dimension mismatch.
ScalarPotential contract(const PotentialTable& phi, const Direction& alpha);

ScalarPotential scaled(const ScalarPotential& psi, double t);

// Average of Phi over the orbit: (1/p) sum of Phi on each length-r window of
// the periodic extension of the generator.
std::vector<double> periodic_orbit_rv(const PeriodicOrbit& o, const PotentialTable& phi);

} // namespace rotset

#endif
