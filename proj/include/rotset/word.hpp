#ifndef ROTSET_WORD_HPP
#define ROTSET_WORD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rotset {

// Capacity cap shared by every dense structure indexed by words: q^r <= 2^24.
inline constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 24;

// Returns q^n, throwing CapacityError if the result exceeds kMaxTableSize.
std::uint64_t checked_pow(int q, int n);

// A finite word over the alphabet {0..q-1}. Lexicographic order on words of a
// fixed length coincides with numeric order of code() (first symbol is the
// most significant digit).
struct Word {
    int q = 2;
    std::vector<int> symbols;

    Word() = default;
    Word(int alphabet, std::vector<int> syms);

    int length() const { return static_cast<int>(symbols.size()); }
    std::uint64_t code() const;
    static Word from_code(int q, int length, std::uint64_t code);

    // Digit string, e.g. "0132". Alphabets up to 10 symbols.
    std::string digits() const;

    bool operator==(const Word&) const = default;
};

// A periodic orbit of the full shift, stored through the lexicographically
// least rotation of its minimal-period generator.
struct PeriodicOrbit {
    Word generator;

    PeriodicOrbit() = default;
    explicit PeriodicOrbit(Word block); // canonicalizes; throws ContractError if not minimal period

    int period() const { return generator.length(); }
    bool operator==(const PeriodicOrbit&) const = default;
};

// Least rotation of a symbol block (Booth-style scan).
std::vector<int> least_rotation(const std::vector<int>& block);

// Minimal period of a block (smallest d dividing its structure, not
// necessarily a divisor of length unless the block is periodic).
int minimal_period(const std::vector<int>& block);

// All q^r words of length r in lexicographic order.
std::vector<Word> enumerate_words(int q, int r);

// One canonical representative per orbit of each minimal period p <= max_period.
std::vector<PeriodicOrbit> enumerate_periodic_orbits(int q, int max_period);

// The p cyclic shifts of the generator, each with weight 1/p.
std::vector<std::pair<Word, double>> orbit_measure_weights(const PeriodicOrbit& o);

} // namespace rotset

#endif
