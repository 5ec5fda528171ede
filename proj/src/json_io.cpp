#include "alc/json_io.hpp"

#include <algorithm>
#include <limits>

#include "alc/errors.hpp"

namespace alc {

namespace {

void expect_object(const Json& j, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + ": expected a JSON object");
}

// Rejects unknown fields; `required` lists mandatory keys, `optional` the rest.
void check_fields(const Json& j, const char* what,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    expect_object(j, what);
    for (const char* key : required) {
        if (!j.contains(key)) {
            throw SchemaError(std::string(what) + ": missing field '" + key + "'");
        }
    }
    for (const auto& [key, value] : j.items()) {
        const auto match = [&key](const char* k) { return key == k; };
        if (!std::any_of(required.begin(), required.end(), match) &&
            !std::any_of(optional.begin(), optional.end(), match)) {
            throw SchemaError(std::string(what) + ": unknown field '" + key + "'");
        }
    }
}

Int int_from_string(const std::string& s, const char* what) {
    if (s.empty()) throw SchemaError(std::string(what) + ": empty integer literal");
    std::size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) throw SchemaError(std::string(what) + ": bad integer literal");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw SchemaError(std::string(what) + ": bad integer literal '" + s + "'");
        }
    }
    return Int(s);
}

std::uint64_t uint_from_json(const Json& j, const char* what) {
    const Int v = int_from_json(j, what);
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
        throw SchemaError(std::string(what) + ": value out of range");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

Json int_to_json(const Int& value) {
    static const Int kMax = Int(std::numeric_limits<std::int64_t>::max());
    static const Int kMin = Int(std::numeric_limits<std::int64_t>::min());
    if (value <= kMax && value >= kMin) {
        return Json(static_cast<std::int64_t>(value));
    }
    return Json(value.str());
}

Int int_from_json(const Json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    if (j.is_string()) return int_from_string(j.get<std::string>(), what);
    throw SchemaError(std::string(what) + ": expected an integer or decimal string");
}

Json to_json(const PrimeZ& p) { return int_to_json(p.p); }

Json to_json(const SpecClosedSet& w) {
    Json j;
    if (w.backend() == Backend::Poset) {
        j["backend"] = "poset";
        Json members = Json::array();
        for (std::size_t i = 0; i < w.poset()->size(); ++i) {
            if (w.contains_point(i)) members.push_back(w.poset()->points()[i]);
        }
        j["members"] = std::move(members);
        return j;
    }
    j["backend"] = "z";
    switch (w.kind()) {
        case SpecClosedSet::Kind::ZWhole:
            j["kind"] = "whole";
            break;
        case SpecClosedSet::Kind::ZFiniteMax:
            j["kind"] = "finite";
            break;
        default:
            j["kind"] = "cofinite";
            break;
    }
    Json primes = Json::array();
    for (const Int& p : w.primes()) primes.push_back(int_to_json(p));
    j["primes"] = std::move(primes);
    return j;
}

Json to_json(const MinSet& min) {
    Json j;
    j["finite"] = min.finite;
    if (!min.finite) {
        Json primes = Json::array();
        for (const Int& p : min.stream) primes.push_back(int_to_json(p));
        j["primes"] = std::move(primes);
        j["bound"] = min.bound;
        return j;
    }
    if (min.backend == Backend::Z) {
        Json primes = Json::array();
        for (const PrimeZ& p : min.z_points) primes.push_back(to_json(p));
        j["primes"] = std::move(primes);
    } else {
        j["members"] = min.poset_names;
    }
    return j;
}

Json to_json(const FgModule& m) {
    Json j;
    j["rank"] = m.free_rank;
    Json torsion = Json::array();
    for (const auto& [p, e] : m.torsion) {
        torsion.push_back(Json::array({int_to_json(p), e}));
    }
    j["torsion"] = std::move(torsion);
    return j;
}

Json to_json(const GammaPart& part) {
    Json j;
    j["module"] = to_json(part.module);
    j["keeps_free"] = part.keeps_free;
    j["kept_torsion"] = part.kept_torsion;
    return j;
}

Json to_json(const InjModule& e) {
    Json j;
    j["q"] = e.rational;
    Json pruefer;
    pruefer["default"] = e.pruefer_default;
    Json except = Json::object();
    for (const auto& [p, m] : e.pruefer_exceptions) except[p.str()] = m;
    pruefer["except"] = std::move(except);
    j["pruefer"] = std::move(pruefer);
    return j;
}

Json to_json(const LocalCohomology& lc) {
    Json j;
    j["h0"] = to_json(lc.h0);
    j["h1"] = to_json(lc.h1);
    return j;
}

Json to_json(const InjComplex& complex) {
    Json j;
    Json strands = Json::array();
    for (const Strand& s : complex.strands) {
        Json entry;
        if (const auto* q = std::get_if<QuotientStrand>(&s)) {
            entry["kind"] = "canonical_quotient";
            entry["target"] = to_json(q->block);
        } else if (const auto* m = std::get_if<MultStrand>(&s)) {
            entry["kind"] = "mult";
            entry["p"] = int_to_json(m->prime);
            entry["m"] = int_to_json(pow_int(m->prime, m->exponent));
        } else {
            entry["kind"] = "target_only";
            entry["target"] = to_json(std::get<TargetStrand>(s).block);
        }
        strands.push_back(std::move(entry));
    }
    j["summands"] = std::move(strands);
    j["i0"] = to_json(complex.degree0());
    j["i1"] = to_json(complex.degree1());
    return j;
}

PosetSpec poset_from_json(const Json& j) {
    check_fields(j, "poset", {"points", "leq"});
    if (!j["points"].is_array()) throw SchemaError("poset: 'points' must be an array");
    std::vector<std::string> points;
    for (const Json& p : j["points"]) {
        if (!p.is_string()) throw SchemaError("poset: points must be strings");
        points.push_back(p.get<std::string>());
    }
    if (!j["leq"].is_array()) throw SchemaError("poset: 'leq' must be an array of pairs");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Json& pair : j["leq"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
            !pair[1].is_string()) {
            throw SchemaError("poset: each 'leq' entry must be a pair of point names");
        }
        pairs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    return PosetSpec(std::move(points), pairs);
}

SpecClosedSet set_from_json(const Json& j, std::shared_ptr<const PosetSpec> poset) {
    expect_object(j, "set");
    std::string backend = "z";
    if (j.contains("backend")) {
        if (!j["backend"].is_string()) throw SchemaError("set: 'backend' must be a string");
        backend = j["backend"].get<std::string>();
    } else if (poset) {
        backend = "poset";
    }
    if (backend == "poset") {
        check_fields(j, "set", {"members"}, {"backend"});
        if (!poset) throw SchemaError("set: poset backend requires a poset context");
        if (!j["members"].is_array()) throw SchemaError("set: 'members' must be an array");
        std::uint64_t mask = 0;
        for (const Json& m : j["members"]) {
            if (!m.is_string()) throw SchemaError("set: poset members must be point names");
            mask |= 1ULL << poset->index_of(m.get<std::string>());
        }
        return SpecClosedSet::poset_upset(std::move(poset), mask);
    }
    if (backend != "z") throw SchemaError("set: unknown backend '" + backend + "'");
    check_fields(j, "set", {"kind"}, {"backend", "primes"});
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    std::vector<Int> primes;
    if (j.contains("primes")) {
        if (!j["primes"].is_array()) throw SchemaError("set: 'primes' must be an array");
        for (const Json& p : j["primes"]) primes.push_back(int_from_json(p, "set prime"));
    }
    if (kind == "whole") {
        if (!primes.empty()) throw SchemaError("set: the whole spectrum carries no primes");
        return SpecClosedSet::whole_z();
    }
    if (kind == "finite") return SpecClosedSet::finite_max(std::move(primes));
    if (kind == "cofinite") return SpecClosedSet::cofinite_max(std::move(primes));
    throw SchemaError("set: unknown kind '" + kind + "'");
}

FgModule module_from_json(const Json& j) {
    check_fields(j, "module", {"rank", "torsion"});
    const Int rank = int_from_json(j["rank"], "module rank");
    if (rank < 0 || rank > 1'000'000) throw SchemaError("module: rank out of range");
    if (!j["torsion"].is_array()) throw SchemaError("module: 'torsion' must be an array");
    std::vector<std::pair<Int, unsigned>> torsion;
    for (const Json& pair : j["torsion"]) {
        if (!pair.is_array() || pair.size() != 2) {
            throw SchemaError("module: torsion entries are [prime, exponent] pairs");
        }
        const Int p = int_from_json(pair[0], "torsion prime");
        const Int e = int_from_json(pair[1], "torsion exponent");
        if (e < 1 || e > 100000) throw SchemaError("module: exponent out of range");
        torsion.emplace_back(p, static_cast<unsigned>(e));
    }
    return make_module(static_cast<std::size_t>(rank), std::move(torsion));
}

PresentationMatrix presentation_from_json(const Json& j) {
    check_fields(j, "presentation", {"rows", "cols", "entries"});
    const Int rows = int_from_json(j["rows"], "presentation rows");
    const Int cols = int_from_json(j["cols"], "presentation cols");
    if (rows < 0 || cols < 0 || rows > 512 || cols > 512) {
        throw SchemaError("presentation: dimensions out of range");
    }
    PresentationMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    if (!j["entries"].is_array() || j["entries"].size() != m.rows) {
        throw SchemaError("presentation: 'entries' must hold one array per row");
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
        const Json& row = j["entries"][r];
        if (!row.is_array() || row.size() != m.cols) {
            throw SchemaError("presentation: row length mismatch");
        }
        for (std::size_t c = 0; c < m.cols; ++c) {
            m.at(r, c) = int_from_json(row[c], "presentation entry");
        }
    }
    return m;
}

InjModule inj_module_from_json(const Json& j) {
    check_fields(j, "injective module", {"q", "pruefer"});
    const std::uint64_t rational = uint_from_json(j["q"], "injective 'q'");
    const Json& pruefer = j["pruefer"];
    check_fields(pruefer, "pruefer block", {"default", "except"});
    const std::uint64_t def = uint_from_json(pruefer["default"], "pruefer default");
    expect_object(pruefer["except"], "pruefer 'except'");
    std::vector<std::pair<Int, std::uint64_t>> exceptions;
    for (const auto& [key, value] : pruefer["except"].items()) {
        exceptions.emplace_back(int_from_string(key, "pruefer prime"),
                                uint_from_json(value, "pruefer multiplicity"));
    }
    return make_inj_module(rational, def, std::move(exceptions));
}

PreradicalDescriptor descriptor_from_json(const Json& j,
                                          std::shared_ptr<const PosetSpec> poset) {
    expect_object(j, "descriptor");
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw SchemaError("descriptor: missing 'kind'");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "section") {
        check_fields(j, "descriptor", {"kind", "w"});
        return PreradicalDescriptor::section(set_from_json(j["w"], std::move(poset)));
    }
    if (kind == "ann") {
        check_fields(j, "descriptor", {"kind", "ideal"});
        check_fields(j["ideal"], "ideal", {"gen"});
        return PreradicalDescriptor::ann_by(IdealZ(int_from_json(j["ideal"]["gen"], "ideal")));
    }
    if (kind == "comp" || kind == "cap" || kind == "sum") {
        check_fields(j, "descriptor", {"kind", "items"});
        if (!j["items"].is_array()) throw SchemaError("descriptor: 'items' must be an array");
        std::vector<PreradicalDescriptor> items;
        for (const Json& item : j["items"]) {
            items.push_back(descriptor_from_json(item, poset));
        }
        if (kind == "comp") return PreradicalDescriptor::composition(std::move(items));
        if (kind == "cap") return PreradicalDescriptor::intersection(std::move(items));
        return PreradicalDescriptor::sum(std::move(items));
    }
    throw SchemaError("descriptor: unknown kind '" + kind + "'");
}

Json parse_json_text(const std::string& text, const char* what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw SchemaError(std::string(what) + ": malformed JSON");
    }
    return j;
}

}  // namespace alc
