#include "alc/spec_model.hpp"

#include <algorithm>
#include <set>

#include "alc/errors.hpp"

namespace alc {

PosetSpec::PosetSpec(std::vector<std::string> points,
                     const std::vector<std::pair<std::string, std::string>>& leq_pairs)
    : ids_(std::move(points)) {
    const std::size_t n = ids_.size();
    if (n > kMaxPoints) throw GuardError("poset: at most 64 points supported");
    {
        std::set<std::string_view> seen;
        for (const auto& id : ids_) {
            if (!seen.insert(id).second) {
                throw SchemaError("poset: duplicate point identifier '" + id + "'");
            }
        }
    }
    up_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) up_[i] |= 1ULL << i;
    for (const auto& [lo, hi] : leq_pairs) {
        up_[index_of(lo)] |= 1ULL << index_of(hi);
    }
    // Transitive closure (Warshall on bitmask rows).
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if ((up_[i] >> k) & 1u) up_[i] |= up_[k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (leq(i, j) && leq(j, i)) {
                throw SchemaError("poset: order is not antisymmetric ('" + ids_[i] +
                                  "' and '" + ids_[j] + "' form a cycle)");
            }
        }
    }
}

std::size_t PosetSpec::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == id) return i;
    }
    throw SchemaError("poset: unknown point '" + std::string(id) + "'");
}

bool PosetSpec::is_upset(std::uint64_t mask) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if ((mask >> i) & 1u) {
            if ((up_[i] & mask) != up_[i]) return false;
        }
    }
    return true;
}

std::uint64_t PosetSpec::up_closure(std::uint64_t mask) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if ((mask >> i) & 1u) out |= up_[i];
    }
    return out;
}

std::uint64_t PosetSpec::minimal_of(std::uint64_t mask) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (((mask >> i) & 1u) == 0) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < size(); ++j) {
            if (j != i && ((mask >> j) & 1u) && leq(j, i)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out |= 1ULL << i;
    }
    return out;
}

PrimeZ PrimeZ::max(Int prime) {
    if (!is_prime(prime)) {
        throw SchemaError("PrimeZ: " + prime.str() + " is not a prime number");
    }
    return PrimeZ{std::move(prime)};
}

namespace {

std::vector<Int> canonical_prime_list(std::vector<Int> primes, const char* what) {
    for (const Int& p : primes) {
        if (!is_prime(p)) {
            throw SchemaError(std::string(what) + ": " + p.str() + " is not prime");
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

void require_same_backend(const SpecClosedSet& a, const SpecClosedSet& b) {
    if (a.backend() != b.backend()) {
        throw PreconditionError("backend mismatch between specialization-closed sets");
    }
    if (a.backend() == Backend::Poset && !(*a.poset() == *b.poset())) {
        throw PreconditionError("backend mismatch: sets live over different posets");
    }
}

bool prime_in_sorted(const std::vector<Int>& sorted, const Int& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

std::vector<Int> sorted_union(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Int> sorted_intersection(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Int> sorted_difference(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

SpecClosedSet SpecClosedSet::whole_z() {
    SpecClosedSet s;
    s.kind_ = Kind::ZWhole;
    return s;
}

SpecClosedSet SpecClosedSet::finite_max(std::vector<Int> primes) {
    SpecClosedSet s;
    s.kind_ = Kind::ZFiniteMax;
    s.primes_ = canonical_prime_list(std::move(primes), "finite_max");
    return s;
}

SpecClosedSet SpecClosedSet::cofinite_max(std::vector<Int> excluded) {
    SpecClosedSet s;
    s.kind_ = Kind::ZCofiniteMax;
    s.primes_ = canonical_prime_list(std::move(excluded), "cofinite_max");
    return s;
}

SpecClosedSet SpecClosedSet::poset_upset(std::shared_ptr<const PosetSpec> poset,
                                         std::uint64_t mask) {
    if (!poset) throw SchemaError("poset_upset: missing poset");
    if ((mask & ~poset->all_mask()) != 0) {
        throw SchemaError("poset_upset: mask references points outside the poset");
    }
    if (!poset->is_upset(mask)) {
        throw SchemaError("poset_upset: member set is not closed under specialization");
    }
    SpecClosedSet s;
    s.kind_ = Kind::PosetUpset;
    s.poset_ = std::move(poset);
    s.mask_ = mask;
    return s;
}

bool SpecClosedSet::contains(const PrimeZ& point) const {
    if (backend() != Backend::Z) {
        throw PreconditionError("contains: point and set live over different backends");
    }
    switch (kind_) {
        case Kind::ZWhole:
            return true;
        case Kind::ZFiniteMax:
            return !point.is_zero() && prime_in_sorted(primes_, point.p);
        case Kind::ZCofiniteMax:
            return !point.is_zero() && !prime_in_sorted(primes_, point.p);
        default:
            return false;
    }
}

bool SpecClosedSet::contains_point(std::size_t point_index) const {
    if (backend() != Backend::Poset) {
        throw PreconditionError("contains: point and set live over different backends");
    }
    if (point_index >= poset_->size()) throw SchemaError("contains: point index out of range");
    return (mask_ >> point_index) & 1u;
}

bool SpecClosedSet::is_empty() const {
    switch (kind_) {
        case Kind::ZWhole:
            return false;
        case Kind::ZFiniteMax:
            return primes_.empty();
        case Kind::ZCofiniteMax:
            return false;
        case Kind::PosetUpset:
            return mask_ == 0;
    }
    return false;
}

bool SpecClosedSet::is_whole() const {
    return kind_ == Kind::ZWhole ||
           (kind_ == Kind::PosetUpset && mask_ == poset_->all_mask());
}

bool SpecClosedSet::operator==(const SpecClosedSet& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::PosetUpset) {
        return mask_ == other.mask_ && *poset_ == *other.poset_;
    }
    return primes_ == other.primes_;
}

bool is_subset(const SpecClosedSet& a, const SpecClosedSet& b) {
    require_same_backend(a, b);
    using K = SpecClosedSet::Kind;
    if (a.backend() == Backend::Poset) {
        return (a.mask() & ~b.mask()) == 0;
    }
    if (b.kind() == K::ZWhole) return true;
    switch (a.kind()) {
        case K::ZWhole:
            return false;  // b is proper here
        case K::ZFiniteMax:
            if (b.kind() == K::ZFiniteMax) {
                return std::includes(b.primes().begin(), b.primes().end(),
                                     a.primes().begin(), a.primes().end());
            }
            // b cofinite: a must avoid the excluded primes
            return sorted_intersection(a.primes(), b.primes()).empty();
        case K::ZCofiniteMax:
            if (b.kind() == K::ZCofiniteMax) {
                return std::includes(a.primes().begin(), a.primes().end(),
                                     b.primes().begin(), b.primes().end());
            }
            return false;  // cofinite set is infinite, b finite
        default:
            return false;
    }
}

SpecClosedSet set_union(const SpecClosedSet& a, const SpecClosedSet& b) {
    require_same_backend(a, b);
    using K = SpecClosedSet::Kind;
    if (a.backend() == Backend::Poset) {
        return SpecClosedSet::poset_upset(a.poset(), a.mask() | b.mask());
    }
    if (a.kind() == K::ZWhole || b.kind() == K::ZWhole) return SpecClosedSet::whole_z();
    if (a.kind() == K::ZFiniteMax && b.kind() == K::ZFiniteMax) {
        return SpecClosedSet::finite_max(sorted_union(a.primes(), b.primes()));
    }
    if (a.kind() == K::ZCofiniteMax && b.kind() == K::ZCofiniteMax) {
        return SpecClosedSet::cofinite_max(sorted_intersection(a.primes(), b.primes()));
    }
    const SpecClosedSet& fin = a.kind() == K::ZFiniteMax ? a : b;
    const SpecClosedSet& cof = a.kind() == K::ZFiniteMax ? b : a;
    return SpecClosedSet::cofinite_max(sorted_difference(cof.primes(), fin.primes()));
}

SpecClosedSet set_intersect(const SpecClosedSet& a, const SpecClosedSet& b) {
    require_same_backend(a, b);
    using K = SpecClosedSet::Kind;
    if (a.backend() == Backend::Poset) {
        return SpecClosedSet::poset_upset(a.poset(), a.mask() & b.mask());
    }
    if (a.kind() == K::ZWhole) return b;
    if (b.kind() == K::ZWhole) return a;
    if (a.kind() == K::ZFiniteMax && b.kind() == K::ZFiniteMax) {
        return SpecClosedSet::finite_max(sorted_intersection(a.primes(), b.primes()));
    }
    if (a.kind() == K::ZCofiniteMax && b.kind() == K::ZCofiniteMax) {
        return SpecClosedSet::cofinite_max(sorted_union(a.primes(), b.primes()));
    }
    const SpecClosedSet& fin = a.kind() == K::ZFiniteMax ? a : b;
    const SpecClosedSet& cof = a.kind() == K::ZFiniteMax ? b : a;
    return SpecClosedSet::finite_max(sorted_difference(fin.primes(), cof.primes()));
}

SpecClosedSet union_of(std::span<const SpecClosedSet> sets) {
    if (sets.empty()) throw PreconditionError("union: empty family rejected");
    SpecClosedSet acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) acc = set_union(acc, sets[i]);
    return acc;
}

SpecClosedSet intersect_of(std::span<const SpecClosedSet> sets) {
    if (sets.empty()) throw PreconditionError("intersect: empty family rejected");
    SpecClosedSet acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) acc = set_intersect(acc, sets[i]);
    return acc;
}

MinSet min_elements(const SpecClosedSet& w, std::uint32_t bound) {
    MinSet out;
    out.backend = w.backend();
    out.bound = bound;
    switch (w.kind()) {
        case SpecClosedSet::Kind::ZWhole:
            out.z_points = {PrimeZ::zero()};
            return out;
        case SpecClosedSet::Kind::ZFiniteMax:
            for (const Int& p : w.primes()) out.z_points.push_back(PrimeZ{p});
            return out;
        case SpecClosedSet::Kind::ZCofiniteMax: {
            out.finite = false;
            for (std::uint32_t p : primes_up_to(bound)) {
                if (!prime_in_sorted(w.primes(), Int(p))) out.stream.emplace_back(p);
            }
            return out;
        }
        case SpecClosedSet::Kind::PosetUpset: {
            const std::uint64_t mins = w.poset()->minimal_of(w.mask());
            for (std::size_t i = 0; i < w.poset()->size(); ++i) {
                if ((mins >> i) & 1u) {
                    out.poset_points.push_back(i);
                    out.poset_names.push_back(w.poset()->points()[i]);
                }
            }
            return out;
        }
    }
    return out;
}

bool is_closed(const SpecClosedSet& w) {
    return w.kind() != SpecClosedSet::Kind::ZCofiniteMax;
}

SpecClosedSet v_of_ideal(const IdealZ& ideal) {
    if (ideal.gen == 0) return SpecClosedSet::whole_z();
    if (ideal.gen == 1) return SpecClosedSet::empty_z();
    return SpecClosedSet::finite_max(prime_divisors(ideal.gen));
}

SpecClosedSet w_pair(const IdealZ& i, const IdealZ& j) {
    const Int& a = i.gen;
    const Int& b = j.gen;
    if (b == 0) return v_of_ideal(i);
    // (0) is a member iff b | a^n for some n; membership of (0) forces the
    // whole spectrum since every prime specializes it.
    if (divides_some_power(b, a)) return SpecClosedSet::whole_z();
    // A maximal (q) is excluded iff q | b and q does not divide a:
    // there (q) + (b) = (q) and no power of a enters.
    std::vector<Int> excluded;
    for (const Int& q : prime_divisors(b)) {
        if (a % q != 0) excluded.push_back(q);
    }
    return SpecClosedSet::cofinite_max(std::move(excluded));
}

SpecClosedSet quotient(const SpecClosedSet& w1, const SpecClosedSet& w2) {
    require_same_backend(w1, w2);
    if (!is_subset(w1, w2)) {
        throw PreconditionError("quotient: W1 must be a subset of W2");
    }
    if (w1.backend() == Backend::Poset) {
        const PosetSpec& poset = *w1.poset();
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < poset.size(); ++i) {
            const std::uint64_t met = poset.upset_of(i) & w2.mask();
            if ((met & ~w1.mask()) == 0) mask |= 1ULL << i;
        }
        return SpecClosedSet::poset_upset(w1.poset(), mask);
    }
    // Z backend closed form: the generic point joins exactly when W1 = W2,
    // which promotes the result to the whole spectrum; otherwise the result
    // is W1 together with every maximal prime outside W2.
    if (w1 == w2) return SpecClosedSet::whole_z();
    using K = SpecClosedSet::Kind;
    switch (w2.kind()) {
        case K::ZWhole:
            return w1;
        case K::ZFiniteMax:
            // w1 is finite too; complement of w2 is cofinite
            return set_union(w1, SpecClosedSet::cofinite_max(w2.primes()));
        case K::ZCofiniteMax:
            return set_union(w1, SpecClosedSet::finite_max(w2.primes()));
        default:
            throw PreconditionError("quotient: unsupported representation");
    }
}

std::vector<SpecClosedSet> acc_witness_chain(const SpecClosedSet& w, unsigned n) {
    if (n == 0) throw PreconditionError("acc_witness_chain: count must be positive");
    if (is_closed(w)) {
        throw PreconditionError(
            "acc_witness_chain: W is closed, every ascending chain stabilizes");
    }
    // Non-closed representable sets are exactly the cofinite ones; walk the
    // ascending enumeration of Min(W) and accumulate one V(p) per step.
    std::vector<SpecClosedSet> chain;
    std::vector<Int> acc;
    Int p = 1;
    while (chain.size() < n) {
        p = next_prime_after(p);
        if (prime_in_sorted(w.primes(), p)) continue;
        acc.push_back(p);
        chain.push_back(SpecClosedSet::finite_max(acc));
    }
    return chain;
}

}  // namespace alc
