#include "alc/injectives.hpp"

#include <algorithm>
#include <map>

#include "alc/errors.hpp"

namespace alc {

InjModule InjModule::pruefer(const Int& p, std::uint64_t mult) {
    return make_inj_module(0, 0, {{p, mult}});
}

std::uint64_t InjModule::mult_at(const Int& p) const {
    const auto it = std::lower_bound(
        pruefer_exceptions.begin(), pruefer_exceptions.end(), p,
        [](const auto& entry, const Int& key) { return entry.first < key; });
    if (it != pruefer_exceptions.end() && it->first == p) return it->second;
    return pruefer_default;
}

InjModule make_inj_module(std::uint64_t rational, std::uint64_t pruefer_default,
                          std::vector<std::pair<Int, std::uint64_t>> exceptions) {
    for (const auto& [p, m] : exceptions) {
        if (!is_prime(p)) {
            throw SchemaError("injective module: " + p.str() + " is not prime");
        }
    }
    std::sort(exceptions.begin(), exceptions.end());
    for (std::size_t i = 1; i < exceptions.size(); ++i) {
        if (exceptions[i - 1].first == exceptions[i].first) {
            throw SchemaError("injective module: duplicate prime " +
                              exceptions[i].first.str());
        }
    }
    std::erase_if(exceptions, [&](const auto& e) { return e.second == pruefer_default; });
    return {rational, pruefer_default, std::move(exceptions)};
}

InjModule direct_sum(const InjModule& a, const InjModule& b) {
    std::vector<std::pair<Int, std::uint64_t>> exceptions;
    const std::uint64_t def = a.pruefer_default + b.pruefer_default;
    std::vector<Int> touched;
    for (const auto& [p, m] : a.pruefer_exceptions) touched.push_back(p);
    for (const auto& [p, m] : b.pruefer_exceptions) touched.push_back(p);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const Int& p : touched) {
        const std::uint64_t m = a.mult_at(p) + b.mult_at(p);
        if (m != def) exceptions.emplace_back(p, m);
    }
    return {a.rational + b.rational, def, std::move(exceptions)};
}

InjModule e_of_prime(const PrimeZ& p) {
    return p.is_zero() ? InjModule::rationals(1) : InjModule::pruefer(p.p);
}

namespace {

void require_z_backend(const SpecClosedSet& w, const char* what) {
    if (w.backend() != Backend::Z) {
        throw PreconditionError(std::string(what) + ": W must live on the Z backend");
    }
}

// Filters the multiplicity function by a predicate on maximal primes.
InjModule filter_pruefer(const InjModule& e, const SpecClosedSet& w, bool keep_members) {
    using K = SpecClosedSet::Kind;
    std::uint64_t def = 0;
    std::vector<std::pair<Int, std::uint64_t>> exceptions;
    const bool member_default = w.kind() == K::ZWhole || w.kind() == K::ZCofiniteMax;

    def = (member_default == keep_members) ? e.pruefer_default : 0;
    std::vector<Int> touched;
    for (const auto& [p, m] : e.pruefer_exceptions) touched.push_back(p);
    if (w.kind() != K::ZWhole) {
        for (const Int& p : w.primes()) touched.push_back(p);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const Int& p : touched) {
        const bool member = w.contains(PrimeZ{p});
        const std::uint64_t m = (member == keep_members) ? e.mult_at(p) : 0;
        if (m != def) exceptions.emplace_back(p, m);
    }
    return {0, def, std::move(exceptions)};
}

}  // namespace

InjModule gamma_on_injective(const SpecClosedSet& w, const InjModule& e) {
    require_z_backend(w, "gamma_on_injective");
    if (w.is_whole()) return e;
    return filter_pruefer(e, w, /*keep_members=*/true);
}

InjModule coker_of_gamma_on_injective(const SpecClosedSet& w, const InjModule& e) {
    require_z_backend(w, "gamma_on_injective");
    if (w.is_whole()) return InjModule::zero();
    InjModule out = filter_pruefer(e, w, /*keep_members=*/false);
    out.rational = e.rational;
    return out;
}

InjModule InjComplex::degree0() const {
    InjModule out;
    for (const Strand& s : strands) {
        if (std::holds_alternative<QuotientStrand>(s)) {
            out = direct_sum(out, InjModule::rationals(1));
        } else if (const auto* m = std::get_if<MultStrand>(&s)) {
            out = direct_sum(out, InjModule::pruefer(m->prime));
        }
    }
    return out;
}

InjModule InjComplex::degree1() const {
    InjModule out;
    for (const Strand& s : strands) {
        if (const auto* q = std::get_if<QuotientStrand>(&s)) {
            out = direct_sum(out, q->block);
        } else if (const auto* m = std::get_if<MultStrand>(&s)) {
            out = direct_sum(out, InjModule::pruefer(m->prime));
        } else {
            out = direct_sum(out, std::get<TargetStrand>(s).block);
        }
    }
    return out;
}

InjComplex minimal_injective_resolution(const FgModule& m) {
    InjComplex out;
    for (std::size_t i = 0; i < m.free_rank; ++i) {
        out.strands.push_back(QuotientStrand{InjModule::all_primes_layer(1)});
    }
    for (const auto& [p, e] : m.torsion) {
        out.strands.push_back(MultStrand{p, e});
    }
    return out;
}

LocalCohomology r_gamma(const SpecClosedSet& w, const FgModule& m) {
    require_z_backend(w, "r_gamma");
    const InjComplex resolution = minimal_injective_resolution(m);
    LocalCohomology out;
    if (w.is_whole()) {
        out.h0 = m;
        return out;
    }
    for (const Strand& s : resolution.strands) {
        if (const auto* q = std::get_if<QuotientStrand>(&s)) {
            // The Q source is dropped, the restricted block survives in
            // degree 1 with nothing mapping onto it.
            out.h1 = direct_sum(out.h1, gamma_on_injective(w, q->block));
        } else {
            const auto& mult = std::get<MultStrand>(s);
            if (w.contains(PrimeZ{mult.prime})) {
                // Multiplication by p^e on a divisible group is onto; the
                // kernel is the cyclic summand the strand resolves.
                out.h0.torsion.emplace_back(mult.prime, mult.exponent);
            }
        }
    }
    std::sort(out.h0.torsion.begin(), out.h0.torsion.end());
    if (!(out.h0 == gamma_w(w, m))) {
        throw PreconditionError("r_gamma: degree-0 cohomology disagrees with the section");
    }
    return out;
}

TriangleDecomposition triangle_decompose(const SpecClosedSet& w, const FgModule& m) {
    require_z_backend(w, "triangle_decompose");
    TriangleDecomposition out;
    out.whole = minimal_injective_resolution(m);
    for (const Strand& s : out.whole.strands) {
        if (const auto* q = std::get_if<QuotientStrand>(&s)) {
            if (w.is_whole()) {
                out.sub.strands.push_back(s);
                continue;
            }
            const InjModule kept = gamma_on_injective(w, q->block);
            if (!kept.is_zero()) out.sub.strands.push_back(TargetStrand{kept});
            out.quot.strands.push_back(
                QuotientStrand{coker_of_gamma_on_injective(w, q->block)});
        } else {
            const auto& mult = std::get<MultStrand>(s);
            if (w.contains(PrimeZ{mult.prime})) {
                out.sub.strands.push_back(s);
            } else {
                out.quot.strands.push_back(s);
            }
        }
    }
    return out;
}

HomEntry hom_between_injectives(const PrimeZ& src, const PrimeZ& dst) {
    if (src == dst) {
        return src.is_zero()
                   ? HomEntry{false, "scalar multiplications of Q"}
                   : HomEntry{false, "p-adic scalars acting on the Pruefer group"};
    }
    if (src.is_zero()) {
        return {false, "Q onto Q/Z followed by projection to the p-component"};
    }
    if (dst.is_zero()) {
        return {true, "source is torsion, target is torsion-free"};
    }
    return {true, "image would be both p-power torsion and q-divisible"};
}

bool hom_vanishing_check(const SpecClosedSet& w, std::uint32_t prime_bound) {
    require_z_backend(w, "hom_vanishing_check");
    std::vector<PrimeZ> points = {PrimeZ::zero()};
    for (std::uint32_t p : primes_up_to(prime_bound)) points.push_back(PrimeZ{Int(p)});
    for (const PrimeZ& src : points) {
        if (!w.contains(src)) continue;
        for (const PrimeZ& dst : points) {
            if (w.contains(dst)) continue;
            if (!hom_between_injectives(src, dst).zero) return false;
        }
    }
    return true;
}

bool divides_injectives_check(const SpecClosedSet& w, std::uint32_t prime_bound) {
    require_z_backend(w, "divides_injectives_check");
    std::vector<PrimeZ> points = {PrimeZ::zero()};
    for (std::uint32_t p : primes_up_to(prime_bound)) points.push_back(PrimeZ{Int(p)});
    for (const PrimeZ& point : points) {
        const InjModule e = e_of_prime(point);
        const InjModule g = gamma_on_injective(w, e);
        if (!(g == e) && !g.is_zero()) return false;
    }
    return true;
}

}  // namespace alc
