#ifndef ALC_INJECTIVES_HPP
#define ALC_INJECTIVES_HPP

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "alc/ints.hpp"
#include "alc/spec_model.hpp"
#include "alc/zmodules.hpp"

namespace alc {

// A direct sum of indecomposable injective Z-modules: copies of Q plus a
// multiplicity function primes -> N that is constant outside finitely many
// exceptions.  Exceptions never record the default value.
struct InjModule {
    std::uint64_t rational = 0;
    std::uint64_t pruefer_default = 0;
    std::vector<std::pair<Int, std::uint64_t>> pruefer_exceptions;  // sorted by prime

    static InjModule zero() { return {}; }
    static InjModule rationals(std::uint64_t n) { return {n, 0, {}}; }
    static InjModule pruefer(const Int& p, std::uint64_t mult = 1);
    // One copy of every Pruefer group: the canonical form of Q/Z.
    static InjModule all_primes_layer(std::uint64_t mult = 1) { return {0, mult, {}}; }

    std::uint64_t mult_at(const Int& p) const;
    bool is_zero() const {
        return rational == 0 && pruefer_default == 0 && pruefer_exceptions.empty();
    }

    bool operator==(const InjModule&) const = default;
};

InjModule make_inj_module(std::uint64_t rational, std::uint64_t pruefer_default,
                          std::vector<std::pair<Int, std::uint64_t>> exceptions);

InjModule direct_sum(const InjModule& a, const InjModule& b);

InjModule e_of_prime(const PrimeZ& p);

// Keeps Q-summands iff W is the whole spectrum and Pruefer(p) iff p lies
// in W; an indecomposable input comes back as itself or zero.
InjModule gamma_on_injective(const SpecClosedSet& w, const InjModule& e);

// Complement filter: the summands gamma_on_injective drops.
InjModule coker_of_gamma_on_injective(const SpecClosedSet& w, const InjModule& e);

// A length-<=1 complex of injectives, stored summand-wise.  Each strand is
// an indecomposable piece of a minimal injective resolution, possibly cut
// down by a degreewise section functor:
//   QuotientStrand  [Q -> block]          canonical quotient onto Pruefer blocks
//   MultStrand      [P(p) -p^e-> P(p)]    multiplication by p^e
//   TargetStrand    [0 -> block]          degree-1 block with zero differential
struct QuotientStrand {
    InjModule block;  // rational part is always zero
    bool operator==(const QuotientStrand&) const = default;
};
struct MultStrand {
    Int prime;
    unsigned exponent = 1;  // differential multiplies by prime^exponent
    bool operator==(const MultStrand&) const = default;
};
struct TargetStrand {
    InjModule block;
    bool operator==(const TargetStrand&) const = default;
};
using Strand = std::variant<QuotientStrand, MultStrand, TargetStrand>;

struct InjComplex {
    std::vector<Strand> strands;

    InjModule degree0() const;
    InjModule degree1() const;
    bool is_zero() const { return strands.empty(); }

    bool operator==(const InjComplex&) const = default;
};

// Minimal injective resolution of a finitely generated module: each free
// generator contributes [Q -> Q/Z] and each Z/p^e contributes
// [P(p) -p^e-> P(p)].  The zero module yields the zero complex.
InjComplex minimal_injective_resolution(const FgModule& m);

struct LocalCohomology {
    FgModule h0;
    InjModule h1;  // divisible torsion: rational multiplicity is zero

    bool operator==(const LocalCohomology&) const = default;
};

// Applies the section functor degreewise to the minimal resolution and
// reads off kernel and cokernel per surviving strand.
LocalCohomology r_gamma(const SpecClosedSet& w, const FgModule& m);

// Degreewise short exact sequence of complexes sub -> whole -> quot where
// sub is the section part and every summand of quot is killed by it.
struct TriangleDecomposition {
    InjComplex sub, whole, quot;
};

TriangleDecomposition triangle_decompose(const SpecClosedSet& w, const FgModule& m);

// Symbolic Hom table between indecomposable injectives: only vanishing is
// consumed; nonzero entries carry a named witness map.
struct HomEntry {
    bool zero;
    std::string_view note;
};

HomEntry hom_between_injectives(const PrimeZ& src, const PrimeZ& dst);

// Hom(E(p), E(q)) = 0 for every p in W and q outside, over the generic
// point and the primes up to the bound.
bool hom_vanishing_check(const SpecClosedSet& w, std::uint32_t prime_bound = 97);

// Every indecomposable injective is sent to itself or zero by the section.
bool divides_injectives_check(const SpecClosedSet& w, std::uint32_t prime_bound = 97);

}  // namespace alc

#endif
