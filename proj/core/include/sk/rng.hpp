#ifndef SK_RNG_HPP
#define SK_RNG_HPP

#include <random>

#include "sk/rational.hpp"

namespace sk {

// Deterministic source of small random rationals for property tests and
// family draws.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    int int_in(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng);
    }

    Rational rational(int max_num = 6, int max_den = 4) {
        int num = int_in(-max_num, max_num);
        int den = int_in(1, max_den);
        return Rational(num, den);
    }

    Rational nonzero_rational(int max_num = 6, int max_den = 4) {
        while (true) {
            Rational q = rational(max_num, max_den);
            if (q != 0) return q;
        }
    }
};

}  // namespace sk

#endif
