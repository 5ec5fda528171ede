#ifndef ALC_INTS_HPP
#define ALC_INTS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace alc {

// Exact arbitrary-precision integer used throughout the library.
using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

Int pow_int(const Int& base, unsigned exp);

// Deterministic Miller-Rabin with the first twelve prime bases.
// Exact for n < 3.3e24, which covers everything this library touches.
bool is_prime(const Int& n);

// Prime factorization of n >= 1, sorted by prime.
// Trial division over a small sieve, then Pollard rho on the cofactor.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

std::vector<Int> prime_divisors(const Int& n);

// Largest e with p^e | n.  Requires n != 0, p >= 2.
unsigned valuation(const Int& n, const Int& p);

// True iff b divides a^n for some n >= 0, i.e. every prime of b divides a.
// Convention: b = 1 -> true, b = 0 -> (a == 0).
bool divides_some_power(const Int& b, const Int& a);

// All primes <= bound, ascending.
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

// Smallest prime strictly greater than n.
Int next_prime_after(const Int& n);

// Deterministic splittable RNG used by the verification suites.
// Keeps reports byte-identical across runs and platforms.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0; rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

    // Independent stream for case #index; order of evaluation never matters.
    Rng fork(std::uint64_t index) const {
        Rng r(state ^ (0xd1342543de82ef95ULL * (index + 1)));
        r.next();
        return r;
    }
};

}  // namespace alc

#endif
