#include "alc/verify.hpp"

#include <algorithm>
#include <memory>

#include "alc/errors.hpp"
#include "alc/injectives.hpp"
#include "alc/oracles.hpp"
#include "alc/spec_model.hpp"
#include "alc/zmodules.hpp"

namespace alc::verify {

namespace {

constexpr std::size_t kMaxRecordedFailures = 8;

struct CaseContext {
    std::uint64_t index;
    std::vector<CaseFailure>* sink;

    void fail(std::string what, Json payload = Json::object()) {
        sink->push_back(CaseFailure{index, std::move(what), std::move(payload)});
    }

    void expect(bool ok, std::string_view what, const Json& payload = Json::object()) {
        if (!ok) fail(std::string(what), payload);
    }
};

template <typename Fn>
SuiteReport fan_out(std::string suite, const Options& opts, unsigned cases, Fn&& run_case) {
    SuiteReport report;
    report.suite = std::move(suite);
    report.cases = cases;
    std::vector<std::vector<CaseFailure>> per_case(cases);
    const Rng base(opts.seed);
    const std::int64_t n = cases;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        CaseContext ctx{static_cast<std::uint64_t>(i), &per_case[i]};
        Rng rng = base.fork(static_cast<std::uint64_t>(i));
        try {
            run_case(ctx, rng);
        } catch (const std::exception& e) {
            ctx.fail(std::string("unexpected exception: ") + e.what());
        }
    }
    for (auto& failures : per_case) {
        for (auto& f : failures) {
            if (report.failures.size() < kMaxRecordedFailures) {
                report.failures.push_back(std::move(f));
            }
        }
    }
    return report;
}

// ---- random generators ----------------------------------------------------

const std::vector<Int>& small_primes() {
    static const std::vector<Int> primes = {2, 3, 5, 7, 11, 13};
    return primes;
}

std::vector<Int> prime_pool(std::uint32_t bound) {
    std::vector<Int> pool;
    for (std::uint32_t p : primes_up_to(bound)) pool.emplace_back(p);
    return pool;
}

std::shared_ptr<const PosetSpec> random_poset(Rng& rng, unsigned max_points) {
    const std::size_t n = 1 + rng.below(max_points);
    std::vector<std::string> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.chance(0.3)) pairs.emplace_back(points[i], points[j]);
        }
    }
    return std::make_shared<const PosetSpec>(std::move(points), pairs);
}

std::vector<Int> sample_primes(Rng& rng, const std::vector<Int>& pool, std::size_t max_count) {
    std::vector<Int> out;
    const std::size_t count = rng.below(max_count + 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[rng.below(pool.size())]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SpecClosedSet random_z_set(Rng& rng, const std::vector<Int>& pool) {
    switch (rng.below(4)) {
        case 0:
            return SpecClosedSet::whole_z();
        case 1:
            return SpecClosedSet::finite_max(sample_primes(rng, pool, 4));
        case 2:
            return SpecClosedSet::cofinite_max(sample_primes(rng, pool, 3));
        default:
            return SpecClosedSet::empty_z();
    }
}

// Torsion order stays below the element-enumeration guard.
FgModule random_module(Rng& rng, Int max_torsion_order, std::size_t max_rank) {
    FgModule m;
    m.free_rank = rng.below(max_rank + 1);
    Int order = 1;
    const auto& pool = small_primes();
    while (rng.chance(0.7)) {
        const Int& p = pool[rng.below(pool.size())];
        const unsigned e = 1 + static_cast<unsigned>(rng.below(3));
        const Int extra = pow_int(p, e);
        if (order * extra > max_torsion_order) break;
        order *= extra;
        m.torsion.emplace_back(p, e);
    }
    std::sort(m.torsion.begin(), m.torsion.end());
    return m;
}

Int random_ideal_gen(Rng& rng, const std::vector<Int>& pool, std::size_t max_factors,
                     unsigned max_exp) {
    Int a = 1;
    const std::size_t count = rng.below(max_factors + 1);
    for (std::size_t i = 0; i < count; ++i) {
        const Int& p = pool[rng.below(pool.size())];
        a *= pow_int(p, 1 + static_cast<unsigned>(rng.below(max_exp)));
    }
    return a;
}

// ---- helpers shared by several suites --------------------------------------

Json set_pair_payload(const SpecClosedSet& a, const SpecClosedSet& b) {
    Json j;
    j["w1"] = to_json(a);
    j["w2"] = to_json(b);
    return j;
}

// Truncation of Spec(Z) to the generic point plus a finite prime window.
std::shared_ptr<const PosetSpec> truncated_spec_z(const std::vector<Int>& primes) {
    std::vector<std::string> points = {"0"};
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Int& p : primes) {
        points.push_back(p.str());
        pairs.emplace_back("0", p.str());
    }
    return std::make_shared<const PosetSpec>(std::move(points), pairs);
}

// Embeds a Z-backed set whose prime data lies inside the window.
SpecClosedSet embed_in_truncation(const SpecClosedSet& w,
                                  std::shared_ptr<const PosetSpec> poset,
                                  const std::vector<Int>& primes) {
    std::uint64_t mask = 0;
    if (w.is_whole()) mask |= 1ULL;  // generic point is index 0
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (w.contains(PrimeZ{primes[i]})) mask |= 1ULL << (i + 1);
    }
    return SpecClosedSet::poset_upset(std::move(poset), mask);
}

std::vector<SpecClosedSet> representable_corpus(Rng& rng, std::uint32_t prime_bound,
                                                unsigned extra_random) {
    std::vector<SpecClosedSet> corpus;
    corpus.push_back(SpecClosedSet::whole_z());
    corpus.push_back(SpecClosedSet::empty_z());
    corpus.push_back(SpecClosedSet::cofinite_max({}));
    // Exhaustive small subsets of the first six primes, both polarities.
    const auto& base = small_primes();
    for (std::uint32_t mask = 1; mask < (1u << base.size()); ++mask) {
        std::vector<Int> primes;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if ((mask >> i) & 1u) primes.push_back(base[i]);
        }
        corpus.push_back(SpecClosedSet::finite_max(primes));
        corpus.push_back(SpecClosedSet::cofinite_max(primes));
    }
    const std::vector<Int> pool = prime_pool(prime_bound);
    for (unsigned i = 0; i < extra_random; ++i) {
        corpus.push_back(random_z_set(rng, pool));
    }
    return corpus;
}

// Element set of a canonical-summand submodule given per-summand cuts.
std::vector<std::uint64_t> cut_submodule_elements(const oracle::FiniteTorsionGroup& g,
                                                  const std::vector<std::uint64_t>& cuts) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < g.order(); ++x) {
        const auto tuple = g.element_at(x);
        bool inside = true;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] % cuts[i] != 0) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(x);
    }
    return out;
}

// ---- suites -----------------------------------------------------------------

SuiteReport suite_lattice(const Options& opts) {
    return fan_out("lattice", opts, opts.cases, [&](CaseContext& ctx, Rng& rng) {
        const auto poset = random_poset(rng, opts.poset_size);
        const auto ups = oracle::enumerate_upsets(poset);
        ctx.expect(ups == oracle::enumerate_upsets_serial(poset),
                   "parallel and serial up-set enumeration disagree");

        const SpecClosedSet bottom = SpecClosedSet::poset_upset(poset, 0);
        const SpecClosedSet top = SpecClosedSet::poset_upset(poset, poset->all_mask());
        for (unsigned i = 0; i < 24; ++i) {
            const SpecClosedSet& a = ups[rng.below(ups.size())];
            const SpecClosedSet& b = ups[rng.below(ups.size())];
            const SpecClosedSet& c = ups[rng.below(ups.size())];
            ctx.expect(set_union(a, b) == set_union(b, a), "union is not commutative");
            ctx.expect(set_intersect(a, b) == set_intersect(b, a),
                       "intersection is not commutative");
            ctx.expect(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)),
                       "union is not associative");
            ctx.expect(set_intersect(set_intersect(a, b), c) ==
                           set_intersect(a, set_intersect(b, c)),
                       "intersection is not associative");
            ctx.expect(set_union(a, a) == a, "union is not idempotent");
            ctx.expect(set_intersect(a, a) == a, "intersection is not idempotent");
            ctx.expect(set_union(a, set_intersect(a, b)) == a, "absorption fails");
            ctx.expect(set_intersect(a, set_union(a, b)) == a, "absorption fails");
            ctx.expect(set_union(bottom, a) == a, "empty set is not a unit for union");
            ctx.expect(set_intersect(top, a) == a,
                       "whole spectrum is not a unit for intersection");
        }

        for (const SpecClosedSet& w2 : ups) {
            for (const SpecClosedSet& w1 : ups) {
                if ((w1.mask() & ~w2.mask()) != 0) continue;
                const SpecClosedSet q = quotient(w1, w2);
                const SpecClosedSet brute = oracle::quotient_by_search(poset, w1, w2);
                ctx.expect(q == brute, "quotient disagrees with exhaustive search",
                           set_pair_payload(w1, w2));
                ctx.expect(set_intersect(q, w2) == w1,
                           "quotient does not restrict back to W1",
                           set_pair_payload(w1, w2));
            }
            ctx.expect(quotient(w2, w2).is_whole(), "quotient(W, W) must be the whole poset",
                       Json{{"w", to_json(w2)}});
            ctx.expect(quotient(w2, top) == w2, "quotient by the whole poset must fix W",
                       Json{{"w", to_json(w2)}});
        }

        // Cross-check the Z closed form against search on a truncated spectrum.
        const std::vector<Int> window = {2, 3, 5, 7, 11};
        const auto trunc = truncated_spec_z(window);
        const std::vector<Int>& pool = window;
        for (unsigned i = 0; i < 8; ++i) {
            SpecClosedSet w2 = random_z_set(rng, pool);
            SpecClosedSet w1 = set_intersect(random_z_set(rng, pool), w2);
            const SpecClosedSet e1 = embed_in_truncation(w1, trunc, window);
            const SpecClosedSet e2 = embed_in_truncation(w2, trunc, window);
            // A finite W1 covering every window member of a cofinite W2 is
            // indistinguishable from it inside the window; the truncation
            // cannot witness that the sets differ globally, so skip it.
            if (w1.kind() == SpecClosedSet::Kind::ZFiniteMax &&
                w2.kind() == SpecClosedSet::Kind::ZCofiniteMax && e1.mask() == e2.mask()) {
                continue;
            }
            const SpecClosedSet q = quotient(w1, w2);
            const SpecClosedSet brute = oracle::quotient_by_search(trunc, e1, e2);
            ctx.expect(embed_in_truncation(q, trunc, window) == brute,
                       "Z quotient disagrees with search on the truncated spectrum",
                       set_pair_payload(w1, w2));
        }
    });
}

SuiteReport suite_wpair(const Options& opts) {
    return fan_out("wpair", opts, opts.cases, [&](CaseContext& ctx, Rng& rng) {
        const std::vector<Int> pool = prime_pool(100);
        Int a = random_ideal_gen(rng, pool, 4, 3);
        Int b = random_ideal_gen(rng, pool, 4, 3);
        if (rng.below(20) == 0) a = 0;
        if (rng.below(20) == 0) b = 0;
        if (rng.below(20) == 0) b = 1;

        Json payload;
        payload["a"] = int_to_json(a);
        payload["b"] = int_to_json(b);

        const SpecClosedSet wp = w_pair(IdealZ(a), IdealZ(b));
        const SpecClosedSet sum_ideal = v_of_ideal(IdealZ(gcd(a, b)));
        const SpecClosedSet q = quotient(sum_ideal, v_of_ideal(IdealZ(b)));
        ctx.expect(wp == q, "W(I,J) differs from the quotient of V(I+J) by V(J)", payload);

        const auto report = oracle::w_pair_by_definition(a, b, 100, opts.power_bound);
        for (const auto& entry : report.entries) {
            if (entry.member != wp.contains(entry.point)) {
                Json detail = payload;
                detail["point"] = to_json(entry.point);
                detail["definition_says"] = entry.member;
                ctx.fail("membership disagrees with the definitional oracle", detail);
            }
        }
    });
}

SuiteReport suite_acc(const Options& opts) {
    return fan_out("acc", opts, opts.cases, [&](CaseContext& ctx, Rng& rng) {
        const std::vector<Int> pool = prime_pool(opts.prime_bound);
        const SpecClosedSet w = random_z_set(rng, pool);
        const MinSet min = min_elements(w);
        ctx.expect(is_closed(w) == min.finite,
                   "closedness must coincide with finiteness of Min(W)",
                   Json{{"w", to_json(w)}});
        if (min.finite) {
            // W is recovered as the union of up-sets over its minimal points.
            std::vector<SpecClosedSet> cones;
            for (const PrimeZ& p : min.z_points) {
                cones.push_back(p.is_zero() ? SpecClosedSet::whole_z()
                                            : SpecClosedSet::finite_max({p.p}));
            }
            const SpecClosedSet rebuilt =
                cones.empty() ? SpecClosedSet::empty_z() : union_of(cones);
            ctx.expect(rebuilt == w, "Min(W) does not rebuild W", Json{{"w", to_json(w)}});
            bool threw = false;
            try {
                acc_witness_chain(w, 3);
            } catch (const PreconditionError&) {
                threw = true;
            }
            ctx.expect(threw, "witness chains must be rejected for closed sets",
                       Json{{"w", to_json(w)}});
        } else {
            const auto chain = acc_witness_chain(w, 5);
            ctx.expect(chain.size() == 5, "chain has the wrong length");
            for (std::size_t i = 0; i < chain.size(); ++i) {
                ctx.expect(is_closed(chain[i]), "chain members must be closed");
                ctx.expect(is_subset(chain[i], w), "chain members must stay inside W");
                if (i > 0) {
                    ctx.expect(is_subset(chain[i - 1], chain[i]) &&
                                   !(chain[i - 1] == chain[i]),
                               "chain must ascend strictly");
                }
            }
            // Ascending stream: every reported minimal element lies in W.
            for (const Int& p : min.stream) {
                ctx.expect(w.contains(PrimeZ{p}), "stream element escapes W");
            }
            ctx.expect(std::is_sorted(min.stream.begin(), min.stream.end()),
                       "stream must ascend");
        }

        // Poset backends always have finite Min; its cones rebuild the set.
        const auto poset = random_poset(rng, opts.poset_size);
        const auto ups = oracle::enumerate_upsets_serial(poset);
        const SpecClosedSet& pw = ups[rng.below(ups.size())];
        const MinSet pmin = min_elements(pw);
        ctx.expect(pmin.finite && is_closed(pw), "finite posets are always closed");
        std::uint64_t rebuilt = 0;
        for (std::size_t i : pmin.poset_points) rebuilt |= poset->upset_of(i);
        ctx.expect(rebuilt == pw.mask(), "poset Min(W) does not rebuild W");
        bool threw = false;
        try {
            acc_witness_chain(pw, 2);
        } catch (const PreconditionError&) {
            threw = true;
        }
        ctx.expect(threw, "poset sets must reject witness chains");
    });
}

SuiteReport suite_sections(const Options& opts) {
    return fan_out("sections", opts, opts.cases, [&](CaseContext& ctx, Rng& rng) {
        const std::vector<Int> pool = prime_pool(23);
        const SpecClosedSet w = random_z_set(rng, pool);
        const FgModule m = random_module(rng, Int(10000), 2);
        Json payload;
        payload["w"] = to_json(w);
        payload["module"] = to_json(m);

        const GammaPart g = gamma_w_embedded(w, m);
        const GammaPart gg = gamma_w_embedded(w, g.module);
        ctx.expect(gg.module == g.module, "section functor is not idempotent", payload);
        bool identity_embedding = gg.kept_torsion.size() == g.module.torsion.size();
        for (std::size_t i = 0; identity_embedding && i < gg.kept_torsion.size(); ++i) {
            identity_embedding = gg.kept_torsion[i] == i;
        }
        ctx.expect(identity_embedding, "idempotence must keep the identical embedding",
                   payload);

        const SpecClosedSet w2 = random_z_set(rng, pool);
        const FgModule both = gamma_w(w, gamma_w(w2, m));
        const FgModule swapped = gamma_w(w2, gamma_w(w, m));
        const FgModule meet = gamma_w(set_intersect(w, w2), m);
        ctx.expect(both == meet && swapped == meet,
                   "composition must agree with the intersection", payload);

        const TorsionPair pair = torsion_pair(w, m);
        ctx.expect(gamma_w(w, pair.f).is_zero(), "radical property fails on M/Gamma(M)",
                   payload);
        ctx.expect(gamma_w(w, pair.t.module) == pair.t.module,
                   "torsion class is not fixed by the section", payload);
        ctx.expect(direct_sum(pair.t.module, pair.f) == m,
                   "torsion pair does not reassemble the module", payload);

        // Element-level agreement on the torsion part.
        const FgModule torsion_only = make_module(0, m.torsion);
        const oracle::FiniteTorsionGroup group = oracle::group_of(torsion_only);
        const auto members = oracle::gamma_by_elements(w, group);
        ctx.expect(members == oracle::gamma_by_elements_serial(w, group),
                   "parallel and serial element kernels disagree", payload);
        std::vector<std::uint64_t> expected;
        {
            // Elements supported on the kept summands only.
            std::vector<bool> kept(m.torsion.size(), false);
            for (std::size_t i : g.kept_torsion) kept[i] = true;
            for (std::uint64_t x = 0; x < group.order(); ++x) {
                const auto tuple = group.element_at(x);
                bool inside = true;
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    if (!kept[i] && tuple[i] != 0) {
                        inside = false;
                        break;
                    }
                }
                if (inside) expected.push_back(x);
            }
        }
        ctx.expect(members == expected, "element oracle disagrees with the section",
                   payload);

        // Subfunctor law on a canonical-cut submodule N.
        std::vector<std::uint64_t> cuts(m.torsion.size());
        FgModule n_canonical;
        for (std::size_t i = 0; i < m.torsion.size(); ++i) {
            const auto& [p, e] = m.torsion[i];
            const unsigned cut = static_cast<unsigned>(rng.below(e + 1));
            cuts[i] = static_cast<std::uint64_t>(pow_int(p, cut));
            if (cut < e) n_canonical.torsion.emplace_back(p, e - cut);
        }
        std::sort(n_canonical.torsion.begin(), n_canonical.torsion.end());
        const auto n_elements = cut_submodule_elements(group, cuts);
        std::vector<std::uint64_t> lhs;  // N `cap` Gamma(M), elementwise
        std::set_intersection(n_elements.begin(), n_elements.end(), members.begin(),
                              members.end(), std::back_inserter(lhs));
        std::vector<std::uint64_t> gamma_n;  // Gamma(N) inside the same enumeration
        {
            std::vector<bool> kept(m.torsion.size(), false);
            for (std::size_t i : g.kept_torsion) kept[i] = true;
            for (std::uint64_t x : n_elements) {
                const auto tuple = group.element_at(x);
                bool inside = true;
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    if (!kept[i] && tuple[i] != 0) {
                        inside = false;
                        break;
                    }
                }
                if (inside) gamma_n.push_back(x);
            }
        }
        ctx.expect(lhs == gamma_n, "subfunctor law fails elementwise", payload);
        // And structurally on the canonical form of N.
        FgModule expected_gamma_n;
        for (const auto& [p, e] : n_canonical.torsion) {
            if (w.is_whole() || w.contains(PrimeZ{p})) {
                expected_gamma_n.torsion.emplace_back(p, e);
            }
        }
        std::sort(expected_gamma_n.torsion.begin(), expected_gamma_n.torsion.end());
        ctx.expect(gamma_w(w, n_canonical) == expected_gamma_n,
                   "subfunctor law fails structurally", payload);

        // Support is V(ann).
        const SpecClosedSet supp = support(m);
        if (m.free_rank > 0) {
            ctx.expect(supp.is_whole(), "free modules are supported everywhere", payload);
        } else {
            ctx.expect(gamma_w(supp, m) == m, "a module is torsion over its support",
                       payload);
        }
    });
}

SuiteReport suite_closure(const Options& opts) {
    return fan_out("closure", opts, opts.cases, [&](CaseContext& ctx, Rng& rng) {
        const std::vector<Int> pool = prime_pool(opts.prime_bound);
        Int a = random_ideal_gen(rng, pool, 3, 2);
        if (a < 2) a = 2 + Int(rng.below(1000));
        Json payload;
        payload["a"] = int_to_json(a);

        const auto ann = PreradicalDescriptor::ann_by(IdealZ(a));
        const auto closed = closure(ann);
        const auto* section = std::get_if<SectionDesc>(&closed.node);
        ctx.expect(section != nullptr, "closure must be a section descriptor", payload);
        if (section != nullptr) {
            ctx.expect(section->w == v_of_ideal(IdealZ(a)),
                       "closure of Hom(Z/a, -) must be the section at V(a)", payload);
        }

        // Containment inside the closure, elementwise on a finite module.
        const FgModule m = random_module(rng, Int(5000), 0);
        const oracle::FiniteTorsionGroup group = oracle::group_of(m);
        const SpecClosedSet va = v_of_ideal(IdealZ(a));
        const auto gamma_members = oracle::gamma_by_elements_serial(va, group);
        std::vector<bool> in_gamma(group.order(), false);
        for (std::uint64_t x : gamma_members) in_gamma[x] = true;
        std::uint64_t killed = 0;
        for (std::uint64_t x = 0; x < group.order(); ++x) {
            const Int ord = group.order_of(x);
            if (a % ord == 0) {
                ++killed;
                if (!in_gamma[x]) {
                    ctx.fail("annihilated element escapes the closure", payload);
                    break;
                }
            }
        }
        const FgModule hom = ann_preradical_apply(IdealZ(a), m);
        ctx.expect(Int(killed) == hom.torsion_order(),
                   "Hom(Z/a, M) has the wrong element count", payload);

        // Closure respects the descriptor algebra.
        const SpecClosedSet w1 = random_z_set(rng, pool);
        const SpecClosedSet w2 = random_z_set(rng, pool);
        const auto comp = PreradicalDescriptor::composition(
            {PreradicalDescriptor::section(w1), PreradicalDescriptor::section(w2)});
        ctx.expect(w_of_preradical(comp) == set_intersect(w1, w2),
                   "support of a composition must be the intersection",
                   set_pair_payload(w1, w2));
        const auto cup = PreradicalDescriptor::sum(
            {PreradicalDescriptor::section(w1), PreradicalDescriptor::section(w2)});
        ctx.expect(w_of_preradical(cup) == set_union(w1, w2),
                   "support of a sum must be the union", set_pair_payload(w1, w2));
        ctx.expect(w_of_preradical(PreradicalDescriptor::section(w1)) == w1,
                   "sections must be their own support");

        // Monotone: Hom(Z/a, -) sits inside Hom(Z/ab, -).
        const Int b = random_ideal_gen(rng, pool, 2, 2);
        if (b >= 1) {
            const auto bigger = PreradicalDescriptor::ann_by(IdealZ(a * b));
            ctx.expect(is_subset(w_of_preradical(ann), w_of_preradical(bigger)),
                       "closure is not monotone", payload);
        }

        // Containment of the descriptor inside its closure on random modules.
        const FgModule probe = random_module(rng, Int(4096), 1);
        const FgModule applied = apply_preradical(ann, probe);
        const FgModule clo = gamma_w(va, probe);
        // applied is a submodule of clo summand by summand
        std::size_t ai = 0;
        bool contained = applied.free_rank <= clo.free_rank;
        for (const auto& [p, e] : clo.torsion) {
            if (ai < applied.torsion.size() && applied.torsion[ai].first == p &&
                applied.torsion[ai].second <= e) {
                ++ai;
            }
        }
        contained = contained && ai == applied.torsion.size();
        ctx.expect(contained, "descriptor escapes its closure", payload);
    });
}

SuiteReport suite_rgamma(const Options& opts) {
    return fan_out("rgamma", opts, opts.cases, [&](CaseContext& ctx, Rng& rng) {
        const auto& pool = small_primes();
        Int a = random_ideal_gen(rng, pool, 2, 2);
        if (a < 2) a = pool[rng.below(pool.size())];
        const FgModule m = random_module(rng, Int(1024), 3);
        Json payload;
        payload["a"] = int_to_json(a);
        payload["module"] = to_json(m);

        const SpecClosedSet w = v_of_ideal(IdealZ(a));
        const LocalCohomology lc = r_gamma(w, m);
        ctx.expect(lc.h0 == gamma_w(w, m), "H^0 must equal the section", payload);
        ctx.expect(lc.h1.rational == 0, "H^1 must be divisible torsion", payload);

        const auto deg0 = oracle::local_cohomology_ext_colimit(a, m, 0, 16);
        ctx.expect(deg0.stabilized, "degree-0 colimit failed to stabilize", payload);
        ctx.expect(deg0.h0 == lc.h0, "H^0 disagrees with the Ext colimit", payload);

        const auto deg1 = oracle::local_cohomology_ext_colimit(a, m, 1, 16);
        ctx.expect(deg1.stabilized, "degree-1 colimit failed to stabilize", payload);
        ctx.expect(deg1.h1 == lc.h1, "H^1 pattern disagrees with the Ext colimit", payload);
        for (unsigned k = 1; k <= deg1.h1_truncations.size(); ++k) {
            // a^k-torsion of H^1 computed from the injective side.
            FgModule trunc;
            for (const auto& [p, e] : factorize(a)) {
                const std::uint64_t mult = lc.h1.mult_at(p);
                for (std::uint64_t c = 0; c < mult; ++c) {
                    trunc.torsion.emplace_back(p, e * k);
                }
            }
            std::sort(trunc.torsion.begin(), trunc.torsion.end());
            if (!(trunc == deg1.h1_truncations[k - 1])) {
                Json detail = payload;
                detail["k"] = k;
                ctx.fail("H^1 truncation disagrees with the Ext colimit", detail);
            }
        }

        // Additivity in the module argument.
        const FgModule m2 = random_module(rng, Int(256), 1);
        const LocalCohomology lc2 = r_gamma(w, m2);
        const LocalCohomology lcsum = r_gamma(w, direct_sum(m, m2));
        ctx.expect(lcsum.h0 == direct_sum(lc.h0, lc2.h0) &&
                       lcsum.h1 == direct_sum(lc.h1, lc2.h1),
                   "local cohomology is not additive", payload);

        // H^1 is supported inside W.
        for (const auto& [p, mult] : lc.h1.pruefer_exceptions) {
            ctx.expect(mult == 0 || w.contains(PrimeZ{p}), "H^1 escapes the support",
                       payload);
        }
        ctx.expect(lc.h1.pruefer_default == 0 || w.kind() != SpecClosedSet::Kind::ZFiniteMax,
                   "H^1 escapes the support", payload);
    });
}

SuiteReport suite_tstructure(const Options& opts) {
    return fan_out("tstructure", opts, 1, [&](CaseContext& ctx, Rng& rng) {
        const auto corpus = representable_corpus(rng, opts.prime_bound, 32);
        for (const SpecClosedSet& w : corpus) {
            Json payload;
            payload["w"] = to_json(w);
            ctx.expect(divides_injectives_check(w, opts.prime_bound),
                       "an indecomposable injective is split by the section", payload);
            ctx.expect(hom_vanishing_check(w, opts.prime_bound),
                       "Hom fails to vanish from W into its complement", payload);

            const FgModule m = random_module(rng, Int(4096), 2);
            const TriangleDecomposition tri = triangle_decompose(w, m);
            ctx.expect(gamma_on_injective(w, tri.quot.degree0()).is_zero() &&
                           gamma_on_injective(w, tri.quot.degree1()).is_zero(),
                       "quotient complex must be killed degreewise", payload);
            ctx.expect(gamma_on_injective(w, tri.sub.degree0()) == tri.sub.degree0() &&
                           gamma_on_injective(w, tri.sub.degree1()) == tri.sub.degree1(),
                       "section complex must be fixed degreewise", payload);
            ctx.expect(direct_sum(tri.sub.degree0(), tri.quot.degree0()) ==
                               tri.whole.degree0() &&
                           direct_sum(tri.sub.degree1(), tri.quot.degree1()) ==
                               tri.whole.degree1(),
                       "decomposition must be degreewise exact", payload);
        }
    });
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "lattice", "wpair", "acc", "sections", "closure", "rgamma", "tstructure"};
    return names;
}

SuiteReport run_suite(std::string_view name, const Options& opts) {
    if (name == "lattice") return suite_lattice(opts);
    if (name == "wpair") return suite_wpair(opts);
    if (name == "acc") return suite_acc(opts);
    if (name == "sections") return suite_sections(opts);
    if (name == "closure") return suite_closure(opts);
    if (name == "rgamma") return suite_rgamma(opts);
    if (name == "tstructure") return suite_tstructure(opts);
    throw SchemaError("verify: unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteReport> run_all(const Options& opts) {
    std::vector<SuiteReport> reports;
    for (const std::string& name : suite_names()) {
        reports.push_back(run_suite(name, opts));
    }
    return reports;
}

namespace {

Json options_to_json(const Options& opts) {
    Json j;
    j["poset_size"] = opts.poset_size;
    j["cases"] = opts.cases;
    j["prime_bound"] = opts.prime_bound;
    j["power_bound"] = opts.power_bound;
    return j;
}

Json failures_to_json(const std::vector<CaseFailure>& failures) {
    Json out = Json::array();
    for (const CaseFailure& f : failures) {
        Json j;
        j["case"] = f.case_index;
        j["what"] = f.what;
        j["payload"] = f.payload;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace

Json report_to_json(const SuiteReport& report, const Options& opts) {
    Json j;
    j["suite"] = report.suite;
    j["seed"] = opts.seed;
    j["bounds"] = options_to_json(opts);
    j["cases"] = report.cases;
    j["passed"] = report.passed();
    j["failures"] = failures_to_json(report.failures);
    return j;
}

Json reports_to_json(const std::vector<SuiteReport>& reports, const Options& opts) {
    Json j;
    j["command"] = "verify";
    j["seed"] = opts.seed;
    j["bounds"] = options_to_json(opts);
    bool all_passed = true;
    Json suites = Json::array();
    for (const SuiteReport& r : reports) {
        all_passed = all_passed && r.passed();
        Json entry;
        entry["suite"] = r.suite;
        entry["cases"] = r.cases;
        entry["passed"] = r.passed();
        entry["failures"] = failures_to_json(r.failures);
        suites.push_back(std::move(entry));
    }
    j["passed"] = all_passed;
    j["suites"] = std::move(suites);
    return j;
}

}  // namespace alc::verify
