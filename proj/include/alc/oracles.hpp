#ifndef ALC_ORACLES_HPP
#define ALC_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "alc/injectives.hpp"
#include "alc/ints.hpp"
#include "alc/spec_model.hpp"
#include "alc/zmodules.hpp"

// Brute-force ground truth, kept independent of the formula paths it checks.
// The enumeration kernels exist in a serial reference form and an
// OpenMP-parallel form; both produce identical output and the parallel one
// is the default entry point.
namespace alc::oracle {

// A finite abelian group with enumerable element tuples.
class FiniteTorsionGroup {
public:
    static constexpr std::uint64_t kMaxOrder = 1'000'000;

    explicit FiniteTorsionGroup(std::vector<std::uint64_t> cyclic_orders);

    const std::vector<std::uint64_t>& cyclic_orders() const { return orders_; }
    std::uint64_t order() const { return order_; }

    std::vector<std::uint64_t> element_at(std::uint64_t index) const;
    std::uint64_t order_of(std::uint64_t index) const;

private:
    std::vector<std::uint64_t> orders_;
    std::uint64_t order_ = 1;
};

// The torsion part of a canonical module as an enumerable group.
FiniteTorsionGroup group_of(const FgModule& m);

// Element indices x with Supp(Zx) inside W, i.e. every prime dividing the
// order of x is a member.  Sorted ascending.
std::vector<std::uint64_t> gamma_by_elements(const SpecClosedSet& w,
                                             const FiniteTorsionGroup& g);
std::vector<std::uint64_t> gamma_by_elements_serial(const SpecClosedSet& w,
                                                    const FiniteTorsionGroup& g);

// All up-closed subsets of a poset with at most 16 points, as canonical
// sets, ordered by ascending bitmask.
std::vector<SpecClosedSet> enumerate_upsets(std::shared_ptr<const PosetSpec> poset);
std::vector<SpecClosedSet> enumerate_upsets_serial(std::shared_ptr<const PosetSpec> poset);

// Exhaustive quotient: the inclusion-maximum over all up-sets W with
// W `intersect` w2 = w1.  Throws if the maximum fails to be unique.
SpecClosedSet quotient_by_search(std::shared_ptr<const PosetSpec> poset,
                                 const SpecClosedSet& w1, const SpecClosedSet& w2);

// Membership report for W(I, J) decided directly from the definition:
// a^n lies in (q) + (b) for some n <= power_bound.
struct WPairEntry {
    PrimeZ point;
    bool member = false;
    std::optional<unsigned> witness_power;  // least such n when member
};

struct WPairReport {
    Int a, b;
    std::uint32_t prime_bound = 0;
    unsigned power_bound = 0;
    std::vector<WPairEntry> entries;  // generic point first, then primes ascending
};

WPairReport w_pair_by_definition(const Int& a, const Int& b, std::uint32_t prime_bound,
                                 unsigned power_bound);

// Local cohomology at (a) through the colimit of Ext^i(Z/a^n, M), with the
// transition maps induced by Z/a^{n+1} ->> Z/a^n.  Degree 0 stabilizes to a
// finitely generated group; degree 1 stabilizes to a divisible torsion
// pattern reported together with its a^k-torsion truncations.
struct ExtColimitReport {
    int degree = 0;
    bool stabilized = false;
    unsigned stabilized_at = 0;      // steps consumed before detection
    FgModule h0;                     // degree 0 value
    InjModule h1;                    // degree 1 pattern
    std::vector<FgModule> h1_truncations;  // ker(a^k), k = 1..truncation_count
};

ExtColimitReport local_cohomology_ext_colimit(const Int& a, const FgModule& m, int degree,
                                              unsigned max_steps,
                                              unsigned truncation_count = 8);

}  // namespace alc::oracle

#endif
