#ifndef ALC_SPEC_MODEL_HPP
#define ALC_SPEC_MODEL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alc/ints.hpp"

namespace alc {

enum class Backend { Z, Poset };

// A finite poset standing in for a prime spectrum.  q <= p is read as
// "q is contained in p", so p is a specialization of q.
class PosetSpec {
public:
    static constexpr std::size_t kMaxPoints = 64;

    // Pairs are generators of the order; the reflexive-transitive closure is
    // taken, then antisymmetry is checked (cycles are rejected).
    PosetSpec(std::vector<std::string> points,
              const std::vector<std::pair<std::string, std::string>>& leq_pairs);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& points() const { return ids_; }
    std::size_t index_of(std::string_view id) const;

    bool leq(std::size_t a, std::size_t b) const { return (up_[a] >> b) & 1u; }
    std::uint64_t upset_of(std::size_t i) const { return up_[i]; }
    std::uint64_t all_mask() const {
        return size() == 64 ? ~0ULL : ((1ULL << size()) - 1);
    }

    bool is_upset(std::uint64_t mask) const;
    std::uint64_t up_closure(std::uint64_t mask) const;
    std::uint64_t minimal_of(std::uint64_t mask) const;

    bool operator==(const PosetSpec& other) const {
        return ids_ == other.ids_ && up_ == other.up_;
    }

private:
    std::vector<std::string> ids_;
    std::vector<std::uint64_t> up_;  // up_[i] = mask of { j : i <= j }
};

// A point of Spec(Z): the generic point (0) or a maximal ideal (p).
struct PrimeZ {
    Int p;  // 0 denotes the zero ideal

    static PrimeZ zero() { return PrimeZ{0}; }
    static PrimeZ max(Int prime);  // validates primality

    bool is_zero() const { return p == 0; }
    bool operator==(const PrimeZ&) const = default;
    auto operator<=>(const PrimeZ&) const = default;
};

// The ideal (n) of Z, canonicalized to a non-negative generator.
struct IdealZ {
    Int gen;

    explicit IdealZ(Int n = 0) : gen(n < 0 ? Int(-n) : std::move(n)) {}
    bool operator==(const IdealZ&) const = default;
};

// A specialization-closed subset of a spectrum, in one of the four
// representable forms.  Values are immutable once constructed.
class SpecClosedSet {
public:
    enum class Kind { ZWhole, ZFiniteMax, ZCofiniteMax, PosetUpset };

    static SpecClosedSet whole_z();
    static SpecClosedSet empty_z() { return finite_max({}); }
    static SpecClosedSet finite_max(std::vector<Int> primes);
    static SpecClosedSet cofinite_max(std::vector<Int> excluded);
    static SpecClosedSet poset_upset(std::shared_ptr<const PosetSpec> poset,
                                     std::uint64_t mask);

    Kind kind() const { return kind_; }
    Backend backend() const {
        return kind_ == Kind::PosetUpset ? Backend::Poset : Backend::Z;
    }

    // Member primes (ZFiniteMax) or excluded primes (ZCofiniteMax).
    const std::vector<Int>& primes() const { return primes_; }
    std::uint64_t mask() const { return mask_; }
    const std::shared_ptr<const PosetSpec>& poset() const { return poset_; }

    bool contains(const PrimeZ& point) const;
    bool contains_point(std::size_t point_index) const;
    bool is_empty() const;
    bool is_whole() const;

    bool operator==(const SpecClosedSet& other) const;

private:
    SpecClosedSet() = default;

    Kind kind_ = Kind::ZFiniteMax;
    std::vector<Int> primes_;
    std::shared_ptr<const PosetSpec> poset_;
    std::uint64_t mask_ = 0;
};

// Antichain of minimal points of a specialization-closed set.  The minimal
// points of a cofinite set form an infinite ascending prime stream; it is
// materialized up to a truncation bound.
struct MinSet {
    static constexpr std::uint32_t kDefaultBound = 10000;

    bool finite = true;
    Backend backend = Backend::Z;
    std::vector<PrimeZ> z_points;             // finite, Z backend
    std::vector<std::size_t> poset_points;    // finite, poset backend
    std::vector<std::string> poset_names;     // same points, by identifier
    std::vector<Int> stream;                  // infinite: ascending primes <= bound
    std::uint32_t bound = kDefaultBound;
};

bool is_subset(const SpecClosedSet& a, const SpecClosedSet& b);

SpecClosedSet union_of(std::span<const SpecClosedSet> sets);
SpecClosedSet intersect_of(std::span<const SpecClosedSet> sets);
SpecClosedSet set_union(const SpecClosedSet& a, const SpecClosedSet& b);
SpecClosedSet set_intersect(const SpecClosedSet& a, const SpecClosedSet& b);

MinSet min_elements(const SpecClosedSet& w, std::uint32_t bound = MinSet::kDefaultBound);

// True iff the set is Zariski-closed, i.e. its minimal antichain is finite.
bool is_closed(const SpecClosedSet& w);

SpecClosedSet v_of_ideal(const IdealZ& ideal);

// W(I, J) = { p : I^n lies in p + J for some n > 0 } over Z.
SpecClosedSet w_pair(const IdealZ& i, const IdealZ& j);

// Largest specialization-closed W with W `intersect` w2 = w1.
// Pointwise: p belongs to the result iff up(p) `intersect` w2 is inside w1.
// Requires w1 to be a subset of w2.
SpecClosedSet quotient(const SpecClosedSet& w1, const SpecClosedSet& w2);

// Strictly ascending chain of n closed subsets of a non-closed W, built by
// accumulating V(p) over the ascending enumeration of Min(W).
std::vector<SpecClosedSet> acc_witness_chain(const SpecClosedSet& w, unsigned n);

}  // namespace alc

#endif
