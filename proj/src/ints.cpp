#include "alc/ints.hpp"

#include <algorithm>

#include "alc/errors.hpp"

namespace alc {

Int pow_int(const Int& base, unsigned exp) {
    Int result = 1;
    Int b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        b *= b;
        exp >>= 1u;
    }
    return result;
}

namespace {

Int mod_pow(Int base, Int exp, const Int& mod) {
    Int result = 1;
    base %= mod;
    while (exp > 0) {
        if ((exp & 1) != 0) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned r) {
    Int x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

Int pollard_rho(const Int& n) {
    // Brent's cycle variant with deterministic parameter sweep.
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(x >= y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (unsigned p : small) {
        if (miller_rabin_witness(n, Int(p), d, r)) return false;
    }
    return true;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n < 1) throw PreconditionError("factorize: argument must be >= 1");
    std::vector<Int> primes;
    Int m = n;
    for (std::uint32_t p : primes_up_to(1000)) {
        while (m % p == 0) {
            primes.emplace_back(p);
            m /= p;
        }
        if (m == 1) break;
    }
    if (m > 1) factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, unsigned>> out;
    for (const Int& p : primes) {
        if (!out.empty() && out.back().first == p) {
            ++out.back().second;
        } else {
            out.emplace_back(p, 1u);
        }
    }
    return out;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (const auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw PreconditionError("valuation: n must be nonzero");
    if (p < 2) throw PreconditionError("valuation: p must be >= 2");
    unsigned v = 0;
    Int m = n;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

bool divides_some_power(const Int& b, const Int& a) {
    if (b == 0) return a == 0;
    Int m = b < 0 ? Int(-b) : b;
    while (m != 1) {
        const Int g = gcd(m, a);
        if (g == 1) return false;
        while (m % g == 0) m /= g;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
    std::vector<std::uint32_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint32_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= bound; q += p) {
            composite[static_cast<std::size_t>(q)] = true;
        }
    }
    return out;
}

Int next_prime_after(const Int& n) {
    Int m = n < 1 ? Int(1) : n;
    do {
        ++m;
    } while (!is_prime(m));
    return m;
}

}  // namespace alc
