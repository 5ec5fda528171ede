#ifndef ALC_ZMODULES_HPP
#define ALC_ZMODULES_HPP

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "alc/ints.hpp"
#include "alc/spec_model.hpp"

namespace alc {

// A finitely generated abelian group in canonical form: free rank plus
// prime-power cyclic summands Z/p^e, sorted lexicographically by (p, e).
// The canonical form is unique per isomorphism class.
struct FgModule {
    std::size_t free_rank = 0;
    std::vector<std::pair<Int, unsigned>> torsion;

    static FgModule zero() { return {}; }
    static FgModule free_of_rank(std::size_t r) { return {r, {}}; }
    static FgModule cyclic(const Int& n);  // Z/n split into prime powers; Z/0 = Z

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    Int torsion_order() const;

    bool operator==(const FgModule&) const = default;
};

// Validates primes/exponents and sorts the torsion list.
FgModule make_module(std::size_t free_rank, std::vector<std::pair<Int, unsigned>> torsion);

FgModule direct_sum(const FgModule& a, const FgModule& b);

// Integer matrix A presenting coker(A : Z^cols -> Z^rows).
struct PresentationMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> entries;  // row-major

    PresentationMatrix() = default;
    PresentationMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    Int& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

struct SmithResult {
    std::vector<Int> diagonal;      // d1 | d2 | ..., all >= 0
    PresentationMatrix left;        // U, rows x rows
    PresentationMatrix right;       // V, cols x cols
};

// U * A * V = diag(d1, ..., dk) with U, V unimodular and d1 | d2 | ...
SmithResult smith_normal_form(const PresentationMatrix& a);

FgModule module_from_presentation(const PresentationMatrix& a);

// V(ann M): whole spectrum when rank > 0, else the torsion primes.
SpecClosedSet support(const FgModule& m);

// Section functor applied to a module, together with the embedding data:
// which canonical summands of the input survive.
struct GammaPart {
    FgModule module;
    bool keeps_free = false;
    std::vector<std::size_t> kept_torsion;  // indices into the input torsion list

    bool operator==(const GammaPart&) const = default;
};

GammaPart gamma_w_embedded(const SpecClosedSet& w, const FgModule& m);
FgModule gamma_w(const SpecClosedSet& w, const FgModule& m);

// 0 -> T -> M -> F -> 0 with T = gamma_w(W, M) and gamma_w(W, F) = 0.
struct TorsionPair {
    GammaPart t;
    FgModule f;
};

TorsionPair torsion_pair(const SpecClosedSet& w, const FgModule& m);

// The submodule { x : I x = 0 }, i.e. Hom(Z/I, M) inside M.
FgModule ann_preradical_apply(const IdealZ& ideal, const FgModule& m);

// Closed descriptor language for left exact preradicals.
struct PreradicalDescriptor;

struct SectionDesc {
    SpecClosedSet w;
};
struct AnnByDesc {
    IdealZ ideal;
};
struct CompositionDesc {
    std::vector<PreradicalDescriptor> items;
};
struct IntersectionDesc {
    std::vector<PreradicalDescriptor> items;
};
struct SumDesc {
    std::vector<PreradicalDescriptor> items;
};

struct PreradicalDescriptor {
    std::variant<SectionDesc, AnnByDesc, CompositionDesc, IntersectionDesc, SumDesc> node;

    static PreradicalDescriptor section(SpecClosedSet w) {
        return {SectionDesc{std::move(w)}};
    }
    static PreradicalDescriptor ann_by(IdealZ ideal) {
        return {AnnByDesc{std::move(ideal)}};
    }
    static PreradicalDescriptor composition(std::vector<PreradicalDescriptor> items) {
        return {CompositionDesc{std::move(items)}};
    }
    static PreradicalDescriptor intersection(std::vector<PreradicalDescriptor> items) {
        return {IntersectionDesc{std::move(items)}};
    }
    static PreradicalDescriptor sum(std::vector<PreradicalDescriptor> items) {
        return {SumDesc{std::move(items)}};
    }
};

FgModule apply_preradical(const PreradicalDescriptor& desc, const FgModule& m);

// The support set of the descriptor, evaluated on the cyclic test modules
// Z and Z/q: whole spectrum when the value on Z is nonzero, otherwise the
// set of maximal primes q with a nonzero value on Z/q.
SpecClosedSet w_of_preradical(const PreradicalDescriptor& desc);

// Smallest section functor containing the descriptor; always a SectionDesc.
PreradicalDescriptor closure(const PreradicalDescriptor& desc);

}  // namespace alc

#endif
