#include "rotset/word.hpp"

#include <algorithm>

#include "rotset/errors.hpp"

namespace rotset {

std::uint64_t checked_pow(int q, int n) {
    if (q < 2) throw ContractError("alphabet size must be >= 2");
    if (n < 0) throw ContractError("negative exponent");
    std::uint64_t v = 1;
    for (int i = 0; i < n; ++i) {
        if (v > kMaxTableSize / static_cast<std::uint64_t>(q))
            throw CapacityError("q^" + std::to_string(n) + " exceeds the 2^24 capacity cap");
        v *= static_cast<std::uint64_t>(q);
    }
    if (v > kMaxTableSize)
        throw CapacityError("q^" + std::to_string(n) + " exceeds the 2^24 capacity cap");
    return v;
}

Word::Word(int alphabet, std::vector<int> syms) : q(alphabet), symbols(std::move(syms)) {
    if (q < 2) throw ContractError("alphabet size must be >= 2");
    if (symbols.empty()) throw ContractError("empty word");
    for (int s : symbols)
        if (s < 0 || s >= q) throw ContractError("symbol out of range");
}

std::uint64_t Word::code() const {
    std::uint64_t c = 0;
    for (int s : symbols) c = c * q + static_cast<std::uint64_t>(s);
    return c;
}

Word Word::from_code(int q, int length, std::uint64_t code) {
    std::vector<int> syms(length);
    for (int i = length - 1; i >= 0; --i) {
        syms[i] = static_cast<int>(code % q);
        code /= q;
    }
    return Word(q, std::move(syms));
}

std::string Word::digits() const {
    std::string s;
    s.reserve(symbols.size());
    for (int x : symbols) s.push_back(static_cast<char>('0' + x));
    return s;
}

std::vector<int> least_rotation(const std::vector<int>& block) {
    const int n = static_cast<int>(block.size());
    int best = 0;
    for (int i = 1; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            int a = block[(i + k) % n], b = block[(best + k) % n];
            if (a != b) {
                if (a < b) best = i;
                break;
            }
        }
    }
    std::vector<int> out(n);
    for (int k = 0; k < n; ++k) out[k] = block[(best + k) % n];
    return out;
}

int minimal_period(const std::vector<int>& block) {
    const int n = static_cast<int>(block.size());
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (int k = d; k < n && ok; ++k) ok = block[k] == block[k - d];
        if (ok) return d;
    }
    return n;
}

PeriodicOrbit::PeriodicOrbit(Word block) {
    if (minimal_period(block.symbols) != block.length())
        throw ContractError("orbit generator is a repeated shorter block");
    generator = Word(block.q, least_rotation(block.symbols));
}

std::vector<Word> enumerate_words(int q, int r) {
    if (r < 1 || r > 16) throw ContractError("range must be in [1, 16]");
    const std::uint64_t n = checked_pow(q, r);
    std::vector<Word> out;
    out.reserve(n);
    for (std::uint64_t c = 0; c < n; ++c) out.push_back(Word::from_code(q, r, c));
    return out;
}

std::vector<PeriodicOrbit> enumerate_periodic_orbits(int q, int max_period) {
    checked_pow(q, max_period);
    std::vector<PeriodicOrbit> out;
    std::vector<int> syms;
    for (int p = 1; p <= max_period; ++p) {
        const std::uint64_t n = checked_pow(q, p);
        for (std::uint64_t c = 0; c < n; ++c) {
            syms.resize(p);
            std::uint64_t x = c;
            for (int i = p - 1; i >= 0; --i) {
                syms[i] = static_cast<int>(x % q);
                x /= q;
            }
            if (minimal_period(syms) != p) continue;
            if (least_rotation(syms) != syms) continue; // keep the canonical rotation only
            out.emplace_back();
            out.back().generator = Word(q, syms);
        }
    }
    return out;
}

std::vector<std::pair<Word, double>> orbit_measure_weights(const PeriodicOrbit& o) {
    const int p = o.period();
    const auto& g = o.generator.symbols;
    std::vector<std::pair<Word, double>> out;
    out.reserve(p);
    for (int s = 0; s < p; ++s) {
        std::vector<int> rot(p);
        for (int k = 0; k < p; ++k) rot[k] = g[(s + k) % p];
        out.emplace_back(Word(o.generator.q, std::move(rot)), 1.0 / p);
    }
    return out;
}

} // namespace rotset
