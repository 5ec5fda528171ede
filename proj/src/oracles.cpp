#include "alc/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "alc/errors.hpp"

namespace alc::oracle {

FiniteTorsionGroup::FiniteTorsionGroup(std::vector<std::uint64_t> cyclic_orders)
    : orders_(std::move(cyclic_orders)) {
    for (std::uint64_t n : orders_) {
        if (n == 0) throw PreconditionError("finite group: cyclic orders must be >= 1");
        if (n > kMaxOrder || order_ > kMaxOrder / n) {
            throw GuardError("finite group: order exceeds the 10^6 element guard");
        }
        order_ *= n;
    }
}

std::vector<std::uint64_t> FiniteTorsionGroup::element_at(std::uint64_t index) const {
    std::vector<std::uint64_t> tuple(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
        tuple[i] = index % orders_[i];
        index /= orders_[i];
    }
    return tuple;
}

std::uint64_t FiniteTorsionGroup::order_of(std::uint64_t index) const {
    std::uint64_t ord = 1;
    for (std::size_t i = orders_.size(); i-- > 0;) {
        const std::uint64_t x = index % orders_[i];
        index /= orders_[i];
        const std::uint64_t component = orders_[i] / std::gcd(x, orders_[i]);
        ord = std::lcm(ord, component);
    }
    return ord;
}

FiniteTorsionGroup group_of(const FgModule& m) {
    std::vector<std::uint64_t> orders;
    for (const auto& [p, e] : m.torsion) {
        const Int n = pow_int(p, e);
        if (n > FiniteTorsionGroup::kMaxOrder) {
            throw GuardError("finite group: summand exceeds the element guard");
        }
        orders.push_back(static_cast<std::uint64_t>(n));
    }
    return FiniteTorsionGroup(std::move(orders));
}

namespace {

// Distinct primes dividing any element order, i.e. the primes of the n_i.
std::vector<std::uint64_t> group_primes(const FiniteTorsionGroup& g) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n : g.cyclic_orders()) {
        for (std::uint64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                primes.push_back(p);
                while (n % p == 0) n /= p;
            }
        }
        if (n > 1) primes.push_back(n);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

bool element_supported_in(const SpecClosedSet& w, std::uint64_t element_order,
                          const std::vector<std::uint64_t>& primes,
                          const std::vector<bool>& prime_member) {
    if (w.is_whole()) return true;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (element_order % primes[i] == 0 && !prime_member[i]) return false;
    }
    return true;
}

std::vector<std::uint64_t> collect_flags(const std::vector<char>& member) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < member.size(); ++i) {
        if (member[i]) out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> gamma_by_elements_serial(const SpecClosedSet& w,
                                                    const FiniteTorsionGroup& g) {
    if (w.backend() != Backend::Z) {
        throw PreconditionError("gamma_by_elements: W must live on the Z backend");
    }
    const std::vector<std::uint64_t> primes = group_primes(g);
    std::vector<bool> member(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        member[i] = w.contains(PrimeZ{Int(primes[i])});
    }
    std::vector<char> flags(g.order(), 0);
    for (std::uint64_t x = 0; x < g.order(); ++x) {
        flags[x] = element_supported_in(w, g.order_of(x), primes, member);
    }
    return collect_flags(flags);
}

std::vector<std::uint64_t> gamma_by_elements(const SpecClosedSet& w,
                                             const FiniteTorsionGroup& g) {
    if (w.backend() != Backend::Z) {
        throw PreconditionError("gamma_by_elements: W must live on the Z backend");
    }
    const std::vector<std::uint64_t> primes = group_primes(g);
    std::vector<bool> member(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        member[i] = w.contains(PrimeZ{Int(primes[i])});
    }
    std::vector<char> flags(g.order(), 0);
    const std::int64_t n = static_cast<std::int64_t>(g.order());
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < n; ++x) {
        flags[x] = element_supported_in(w, g.order_of(static_cast<std::uint64_t>(x)),
                                        primes, member);
    }
    return collect_flags(flags);
}

namespace {

void check_upset_guard(const PosetSpec& poset) {
    if (poset.size() > 16) {
        throw GuardError("enumerate_upsets: posets are limited to 16 points");
    }
}

}  // namespace

std::vector<SpecClosedSet> enumerate_upsets_serial(std::shared_ptr<const PosetSpec> poset) {
    check_upset_guard(*poset);
    std::vector<SpecClosedSet> out;
    const std::uint64_t total = 1ULL << poset->size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (poset->is_upset(mask)) {
            out.push_back(SpecClosedSet::poset_upset(poset, mask));
        }
    }
    return out;
}

std::vector<SpecClosedSet> enumerate_upsets(std::shared_ptr<const PosetSpec> poset) {
    check_upset_guard(*poset);
    const std::uint64_t total = 1ULL << poset->size();
    std::vector<char> flags(total, 0);
    const std::int64_t n = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static)
    for (std::int64_t mask = 0; mask < n; ++mask) {
        flags[mask] = poset->is_upset(static_cast<std::uint64_t>(mask));
    }
    std::vector<SpecClosedSet> out;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (flags[mask]) out.push_back(SpecClosedSet::poset_upset(poset, mask));
    }
    return out;
}

SpecClosedSet quotient_by_search(std::shared_ptr<const PosetSpec> poset,
                                 const SpecClosedSet& w1, const SpecClosedSet& w2) {
    check_upset_guard(*poset);
    if (w1.backend() != Backend::Poset || w2.backend() != Backend::Poset) {
        throw PreconditionError("quotient_by_search: sets must live over the poset");
    }
    if ((w1.mask() & ~w2.mask()) != 0) {
        throw PreconditionError("quotient_by_search: W1 must be a subset of W2");
    }
    std::vector<std::uint64_t> candidates;
    const std::uint64_t total = 1ULL << poset->size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (poset->is_upset(mask) && (mask & w2.mask()) == w1.mask()) {
            candidates.push_back(mask);
        }
    }
    std::uint64_t best = 0;
    for (std::uint64_t mask : candidates) best |= mask;
    // The union of all solutions must itself be a solution, and every other
    // solution must sit below it; that is the uniqueness of the maximum.
    if (std::find(candidates.begin(), candidates.end(), best) == candidates.end()) {
        throw PreconditionError("quotient_by_search: no unique maximal solution");
    }
    return SpecClosedSet::poset_upset(poset, best);
}

WPairReport w_pair_by_definition(const Int& a, const Int& b, std::uint32_t prime_bound,
                                 unsigned power_bound) {
    if (power_bound == 0) throw PreconditionError("w_pair_by_definition: bounds must be positive");
    WPairReport report;
    report.a = a;
    report.b = b;
    report.prime_bound = prime_bound;
    report.power_bound = power_bound;

    // Membership of a^n in the ideal (g) is plain divisibility by g.
    const auto probe = [&](const Int& g) -> WPairEntry {
        WPairEntry entry;
        Int power = 1;
        for (unsigned n = 1; n <= power_bound; ++n) {
            power *= a;
            if (g == 0 ? power == 0 : power % g == 0) {
                entry.member = true;
                entry.witness_power = n;
                break;
            }
        }
        return entry;
    };

    {
        WPairEntry entry = probe(b);  // (0) + (b) = (b)
        entry.point = PrimeZ::zero();
        report.entries.push_back(std::move(entry));
    }
    for (std::uint32_t q : primes_up_to(prime_bound)) {
        WPairEntry entry = probe(gcd(Int(q), b));  // (q) + (b) = (gcd(q, b))
        entry.point = PrimeZ{Int(q)};
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

// Ext^0(Z/a^n, M) = ker(a^n on M), Ext^1(Z/a^n, M) = M / a^n M, both read
// off the resolution Z -a^n-> Z summand by summand.
FgModule ext0(const Int& an, const FgModule& m) {
    FgModule out;
    for (const auto& [p, e] : m.torsion) {
        const Int g = gcd(an, pow_int(p, e));
        if (g > 1) out.torsion.emplace_back(p, valuation(g, p));
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

FgModule ext1(const Int& an, const FgModule& m) {
    FgModule out;
    for (std::size_t i = 0; i < m.free_rank; ++i) {
        for (const auto& [p, e] : factorize(an)) out.torsion.emplace_back(p, e);
    }
    for (const auto& [p, e] : m.torsion) {
        const Int g = gcd(an, pow_int(p, e));
        if (g > 1) out.torsion.emplace_back(p, valuation(g, p));
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

}  // namespace

ExtColimitReport local_cohomology_ext_colimit(const Int& a, const FgModule& m, int degree,
                                              unsigned max_steps,
                                              unsigned truncation_count) {
    if (a < 2) throw PreconditionError("ext colimit: the ideal generator must be >= 2");
    if (degree != 0 && degree != 1) {
        throw PreconditionError("ext colimit: degree must be 0 or 1");
    }
    if (max_steps < 2) throw PreconditionError("ext colimit: need at least two steps");

    ExtColimitReport report;
    report.degree = degree;

    if (degree == 0) {
        // Transitions are the inclusions ker(a^n) into ker(a^{n+1}); the
        // colimit is the increasing union, stable once two consecutive
        // canonical forms agree.
        FgModule prev = ext0(a, m);
        for (unsigned n = 2; n <= max_steps; ++n) {
            FgModule cur = ext0(pow_int(a, n), m);
            if (cur == prev) {
                report.stabilized = true;
                report.stabilized_at = n;
                report.h0 = cur;
                return report;
            }
            prev = std::move(cur);
        }
        return report;  // not stabilized within the budget
    }

    // Degree 1.  The transition M/a^n M -> M/a^{n+1} M is multiplication
    // by a.  Each free summand contributes the tower Z/a^n with injective
    // transitions, whose union is the Pruefer pattern at the primes of a.
    // What remains after removing the towers comes from torsion summands;
    // once it repeats at consecutive steps it is a fixed finite group on
    // which multiplication by a is nilpotent, so it dies in the colimit.
    const auto a_tower_residue = [&](unsigned n) -> std::optional<FgModule> {
        FgModule value = ext1(pow_int(a, n), m);
        std::vector<std::pair<Int, unsigned>> tower;
        for (std::size_t i = 0; i < m.free_rank; ++i) {
            for (const auto& [p, e] : factorize(a)) tower.emplace_back(p, e * n);
        }
        std::sort(tower.begin(), tower.end());
        FgModule residue;
        std::size_t ti = 0;
        for (const auto& summand : value.torsion) {
            if (ti < tower.size() && tower[ti] == summand) {
                ++ti;
            } else {
                residue.torsion.push_back(summand);
            }
        }
        if (ti != tower.size()) return std::nullopt;  // expected tower missing
        return residue;
    };

    bool torsion_stable = false;
    for (unsigned n = 1; n + 1 <= max_steps; ++n) {
        const auto low = a_tower_residue(n);
        const auto high = a_tower_residue(n + 1);
        if (!low || !high) return report;
        if (*low == *high) {
            torsion_stable = true;
            report.stabilized_at = n + 1;
            break;
        }
    }
    if (!torsion_stable) return report;

    report.stabilized = true;
    const auto a_factors = factorize(a);
    if (m.free_rank > 0) {
        std::vector<std::pair<Int, std::uint64_t>> exceptions;
        for (const auto& [p, e] : a_factors) {
            exceptions.emplace_back(p, static_cast<std::uint64_t>(m.free_rank));
        }
        report.h1 = make_inj_module(0, 0, std::move(exceptions));
    }
    for (unsigned k = 1; k <= truncation_count; ++k) {
        // a^k-torsion of the colimit: each free summand contributes
        // colim ker(a^k on Z/a^n) = Z/a^k; dead torsion contributes nothing.
        FgModule trunc;
        for (std::size_t i = 0; i < m.free_rank; ++i) {
            for (const auto& [p, e] : a_factors) trunc.torsion.emplace_back(p, e * k);
        }
        std::sort(trunc.torsion.begin(), trunc.torsion.end());
        report.h1_truncations.push_back(std::move(trunc));
    }
    return report;
}

}  // namespace alc::oracle
