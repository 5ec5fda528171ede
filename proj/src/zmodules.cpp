#include "alc/zmodules.hpp"

#include <algorithm>

#include "alc/errors.hpp"

namespace alc {

FgModule FgModule::cyclic(const Int& n) {
    if (n == 0) return free_of_rank(1);
    Int m = n < 0 ? Int(-n) : n;
    if (m == 1) return zero();
    FgModule out;
    for (const auto& [p, e] : factorize(m)) out.torsion.emplace_back(p, e);
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

Int FgModule::torsion_order() const {
    Int order = 1;
    for (const auto& [p, e] : torsion) order *= pow_int(p, e);
    return order;
}

FgModule make_module(std::size_t free_rank, std::vector<std::pair<Int, unsigned>> torsion) {
    for (const auto& [p, e] : torsion) {
        if (!is_prime(p)) throw SchemaError("module: " + p.str() + " is not prime");
        if (e == 0) throw SchemaError("module: torsion exponents must be >= 1");
    }
    std::sort(torsion.begin(), torsion.end());
    return {free_rank, std::move(torsion)};
}

FgModule direct_sum(const FgModule& a, const FgModule& b) {
    FgModule out;
    out.free_rank = a.free_rank + b.free_rank;
    out.torsion.reserve(a.torsion.size() + b.torsion.size());
    std::merge(a.torsion.begin(), a.torsion.end(), b.torsion.begin(), b.torsion.end(),
               std::back_inserter(out.torsion));
    return out;
}

namespace {

void swap_rows(PresentationMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(PresentationMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row[i] += q * row[j]
void add_row(PresentationMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) += q * m.at(j, c);
}

void add_col(PresentationMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < m.rows; ++r) m.at(r, i) += q * m.at(r, j);
}

void negate_row(PresentationMatrix& m, std::size_t i) {
    for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

PresentationMatrix identity(std::size_t n) {
    PresentationMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithResult smith_normal_form(const PresentationMatrix& input) {
    PresentationMatrix a = input;
    SmithResult res;
    res.left = identity(a.rows);
    res.right = identity(a.cols);
    const std::size_t k = std::min(a.rows, a.cols);

    for (std::size_t t = 0; t < k; ++t) {
        // Find the nonzero entry of smallest absolute value in the submatrix.
        std::size_t pr = t, pc = t;
        bool found = false;
        for (std::size_t r = t; r < a.rows; ++r) {
            for (std::size_t c = t; c < a.cols; ++c) {
                if (a.at(r, c) == 0) continue;
                if (!found || abs_int(a.at(r, c)) < abs_int(a.at(pr, pc))) {
                    pr = r;
                    pc = c;
                    found = true;
                }
            }
        }
        if (!found) break;
        if (pr != t) {
            swap_rows(a, t, pr);
            swap_rows(res.left, t, pr);
        }
        if (pc != t) {
            swap_cols(a, t, pc);
            swap_cols(res.right, t, pc);
        }

        for (bool dirty = true; dirty;) {
            dirty = false;
            for (std::size_t r = t + 1; r < a.rows; ++r) {
                if (a.at(r, t) == 0) continue;
                const Int q = a.at(r, t) / a.at(t, t);
                add_row(a, r, t, -q);
                add_row(res.left, r, t, -q);
                if (a.at(r, t) != 0) {
                    // Remainder smaller than the pivot: promote it and retry.
                    swap_rows(a, t, r);
                    swap_rows(res.left, t, r);
                    dirty = true;
                }
            }
            for (std::size_t c = t + 1; c < a.cols; ++c) {
                if (a.at(t, c) == 0) continue;
                const Int q = a.at(t, c) / a.at(t, t);
                add_col(a, c, t, -q);
                add_col(res.right, c, t, -q);
                if (a.at(t, c) != 0) {
                    swap_cols(a, t, c);
                    swap_cols(res.right, t, c);
                    dirty = true;
                }
            }
        }

        // Enforce the divisibility chain: fold any non-divisible entry into
        // the pivot's row and restart the elimination for this t.
        bool redo = false;
        for (std::size_t r = t + 1; r < a.rows && !redo; ++r) {
            for (std::size_t c = t + 1; c < a.cols && !redo; ++c) {
                if (a.at(r, c) % a.at(t, t) != 0) {
                    add_row(a, t, r, 1);
                    add_row(res.left, t, r, 1);
                    redo = true;
                }
            }
        }
        if (redo) {
            --t;
            continue;
        }
        if (a.at(t, t) < 0) {
            negate_row(a, t);
            negate_row(res.left, t);
        }
    }

    res.diagonal.resize(k);
    for (std::size_t i = 0; i < k; ++i) res.diagonal[i] = a.at(i, i);
    return res;
}

FgModule module_from_presentation(const PresentationMatrix& a) {
    const SmithResult snf = smith_normal_form(a);
    std::size_t rank = 0;
    FgModule out;
    for (const Int& d : snf.diagonal) {
        if (d == 0) continue;
        ++rank;
        if (d == 1) continue;
        for (const auto& [p, e] : factorize(d)) out.torsion.emplace_back(p, e);
    }
    out.free_rank = a.rows - rank;
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

SpecClosedSet support(const FgModule& m) {
    if (m.free_rank > 0) return SpecClosedSet::whole_z();
    std::vector<Int> primes;
    for (const auto& [p, e] : m.torsion) primes.push_back(p);
    return SpecClosedSet::finite_max(std::move(primes));
}

GammaPart gamma_w_embedded(const SpecClosedSet& w, const FgModule& m) {
    if (w.backend() != Backend::Z) {
        throw PreconditionError("gamma_w: W must live on the Z backend");
    }
    GammaPart out;
    if (w.is_whole()) {
        out.module = m;
        out.keeps_free = true;
        out.kept_torsion.resize(m.torsion.size());
        for (std::size_t i = 0; i < m.torsion.size(); ++i) out.kept_torsion[i] = i;
        return out;
    }
    out.keeps_free = false;
    for (std::size_t i = 0; i < m.torsion.size(); ++i) {
        if (w.contains(PrimeZ{m.torsion[i].first})) {
            out.kept_torsion.push_back(i);
            out.module.torsion.push_back(m.torsion[i]);
        }
    }
    return out;
}

FgModule gamma_w(const SpecClosedSet& w, const FgModule& m) {
    return gamma_w_embedded(w, m).module;
}

TorsionPair torsion_pair(const SpecClosedSet& w, const FgModule& m) {
    TorsionPair pair;
    pair.t = gamma_w_embedded(w, m);
    pair.f.free_rank = pair.t.keeps_free ? 0 : m.free_rank;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < m.torsion.size(); ++i) {
        if (kept < pair.t.kept_torsion.size() && pair.t.kept_torsion[kept] == i) {
            ++kept;
        } else {
            pair.f.torsion.push_back(m.torsion[i]);
        }
    }
    return pair;
}

FgModule ann_preradical_apply(const IdealZ& ideal, const FgModule& m) {
    if (ideal.gen == 0) return m;  // Hom(Z, M) = M
    FgModule out;
    for (const auto& [p, e] : m.torsion) {
        const unsigned cut = std::min(e, ideal.gen % p == 0 ? valuation(ideal.gen, p) : 0u);
        if (cut > 0) out.torsion.emplace_back(p, cut);
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

namespace {

// Every descriptor sends Z/p^e to Z/p^f; this computes f.
unsigned exponent_on_summand(const PreradicalDescriptor& d, const Int& p, unsigned e) {
    return std::visit(
        [&](const auto& node) -> unsigned {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SectionDesc>) {
                return node.w.contains(PrimeZ{p}) ? e : 0;
            } else if constexpr (std::is_same_v<T, AnnByDesc>) {
                if (node.ideal.gen == 0) return e;
                const unsigned v =
                    node.ideal.gen % p == 0 ? valuation(node.ideal.gen, p) : 0u;
                return std::min(e, v);
            } else if constexpr (std::is_same_v<T, CompositionDesc>) {
                unsigned acc = e;
                for (const auto& item : node.items) acc = exponent_on_summand(item, p, acc);
                return acc;
            } else if constexpr (std::is_same_v<T, IntersectionDesc>) {
                unsigned acc = e;
                for (const auto& item : node.items) {
                    acc = std::min(acc, exponent_on_summand(item, p, e));
                }
                return acc;
            } else {
                unsigned acc = 0;
                for (const auto& item : node.items) {
                    acc = std::max(acc, exponent_on_summand(item, p, e));
                }
                return acc;
            }
        },
        d.node);
}

bool keeps_free_part(const PreradicalDescriptor& d) {
    return std::visit(
        [](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SectionDesc>) {
                return node.w.is_whole();
            } else if constexpr (std::is_same_v<T, AnnByDesc>) {
                return node.ideal.gen == 0;
            } else if constexpr (std::is_same_v<T, CompositionDesc> ||
                                 std::is_same_v<T, IntersectionDesc>) {
                for (const auto& item : node.items) {
                    if (!keeps_free_part(item)) return false;
                }
                return true;
            } else {
                for (const auto& item : node.items) {
                    if (keeps_free_part(item)) return true;
                }
                return false;
            }
        },
        d.node);
}

// Support on maximal primes as a finite or cofinite set.
struct MaxSupport {
    bool cofinite = false;
    std::vector<Int> primes;  // members, or excluded when cofinite
};

MaxSupport support_intersect(const MaxSupport& a, const MaxSupport& b) {
    MaxSupport out;
    auto inter = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
        return r;
    };
    auto uni = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
        return r;
    };
    auto diff = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r;
        std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
        return r;
    };
    if (!a.cofinite && !b.cofinite) {
        out.primes = inter(a.primes, b.primes);
    } else if (a.cofinite && b.cofinite) {
        out.cofinite = true;
        out.primes = uni(a.primes, b.primes);
    } else {
        const MaxSupport& fin = a.cofinite ? b : a;
        const MaxSupport& cof = a.cofinite ? a : b;
        out.primes = diff(fin.primes, cof.primes);
    }
    return out;
}

MaxSupport support_union(const MaxSupport& a, const MaxSupport& b) {
    MaxSupport out;
    auto inter = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
        return r;
    };
    auto uni = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
        return r;
    };
    auto diff = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r;
        std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
        return r;
    };
    if (!a.cofinite && !b.cofinite) {
        out.primes = uni(a.primes, b.primes);
    } else if (a.cofinite && b.cofinite) {
        out.cofinite = true;
        out.primes = inter(a.primes, b.primes);
    } else {
        const MaxSupport& fin = a.cofinite ? b : a;
        const MaxSupport& cof = a.cofinite ? a : b;
        out.cofinite = true;
        out.primes = diff(cof.primes, fin.primes);
    }
    return out;
}

MaxSupport max_support(const PreradicalDescriptor& d) {
    return std::visit(
        [](const auto& node) -> MaxSupport {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SectionDesc>) {
                MaxSupport s;
                switch (node.w.kind()) {
                    case SpecClosedSet::Kind::ZWhole:
                        s.cofinite = true;
                        break;
                    case SpecClosedSet::Kind::ZFiniteMax:
                        s.primes = node.w.primes();
                        break;
                    case SpecClosedSet::Kind::ZCofiniteMax:
                        s.cofinite = true;
                        s.primes = node.w.primes();
                        break;
                    default:
                        throw PreconditionError(
                            "w_of_preradical: section descriptors must be Z-backed");
                }
                return s;
            } else if constexpr (std::is_same_v<T, AnnByDesc>) {
                MaxSupport s;
                if (node.ideal.gen == 0) {
                    s.cofinite = true;  // identity functor
                } else if (node.ideal.gen != 1) {
                    s.primes = prime_divisors(node.ideal.gen);
                }
                return s;
            } else if constexpr (std::is_same_v<T, CompositionDesc> ||
                                 std::is_same_v<T, IntersectionDesc>) {
                MaxSupport s;
                s.cofinite = true;
                for (const auto& item : node.items) {
                    s = support_intersect(s, max_support(item));
                }
                return s;
            } else {
                MaxSupport s;
                for (const auto& item : node.items) {
                    s = support_union(s, max_support(item));
                }
                return s;
            }
        },
        d.node);
}

}  // namespace

FgModule apply_preradical(const PreradicalDescriptor& desc, const FgModule& m) {
    FgModule out;
    if (keeps_free_part(desc)) out.free_rank = m.free_rank;
    for (const auto& [p, e] : m.torsion) {
        const unsigned f = exponent_on_summand(desc, p, e);
        if (f > 0) out.torsion.emplace_back(p, f);
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

SpecClosedSet w_of_preradical(const PreradicalDescriptor& desc) {
    if (keeps_free_part(desc)) return SpecClosedSet::whole_z();
    const MaxSupport s = max_support(desc);
    return s.cofinite ? SpecClosedSet::cofinite_max(s.primes)
                      : SpecClosedSet::finite_max(s.primes);
}

PreradicalDescriptor closure(const PreradicalDescriptor& desc) {
    return PreradicalDescriptor::section(w_of_preradical(desc));
}

}  // namespace alc
