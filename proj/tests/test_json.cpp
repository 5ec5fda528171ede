#include <doctest.h>

#include "alc/errors.hpp"
#include "alc/json_io.hpp"

using alc::Int;
using alc::Json;

TEST_CASE("integers cross the 2^63 boundary as decimal strings") {
    CHECK(alc::int_to_json(Int(7)).is_number());
    CHECK(alc::int_to_json(Int("9223372036854775807")).is_number());
    const Json big = alc::int_to_json(Int("9223372036854775808"));
    CHECK(big.is_string());
    CHECK(big.get<std::string>() == "9223372036854775808");

    CHECK(alc::int_from_json(Json(-5), "x") == -5);
    CHECK(alc::int_from_json(Json("123456789012345678901234567890"), "x") ==
          Int("123456789012345678901234567890"));
    CHECK_THROWS_AS(alc::int_from_json(Json("12x"), "x"), alc::SchemaError);
    CHECK_THROWS_AS(alc::int_from_json(Json(1.5), "x"), alc::SchemaError);
}

TEST_CASE("round trips preserve canonical values") {
    alc::Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        std::vector<Int> primes;
        for (std::size_t k = rng.below(4); k-- > 0;) {
            primes.emplace_back(alc::next_prime_after(Int(rng.below(500))));
        }
        const auto w = rng.chance(0.5) ? alc::SpecClosedSet::finite_max(primes)
                                       : alc::SpecClosedSet::cofinite_max(primes);
        CHECK(alc::set_from_json(alc::to_json(w)) == w);
    }
    const auto whole = alc::SpecClosedSet::whole_z();
    CHECK(alc::set_from_json(alc::to_json(whole)) == whole);

    const auto m = alc::make_module(2, {{Int(2), 3u}, {Int(97), 1u}});
    CHECK(alc::module_from_json(alc::to_json(m)) == m);

    const auto e = alc::make_inj_module(1, 2, {{Int(5), 0u}, {Int(7), 4u}});
    CHECK(alc::inj_module_from_json(alc::to_json(e)) == e);
}

TEST_CASE("unknown fields are rejected everywhere") {
    CHECK_THROWS_AS(alc::set_from_json(alc::parse_json_text(
                        R"({"kind":"finite","primes":[],"extra":0})", "t")),
                    alc::SchemaError);
    CHECK_THROWS_AS(alc::module_from_json(alc::parse_json_text(
                        R"({"rank":0,"torsion":[],"oops":1})", "t")),
                    alc::SchemaError);
    CHECK_THROWS_AS(alc::poset_from_json(alc::parse_json_text(
                        R"({"points":[],"leq":[],"size":0})", "t")),
                    alc::SchemaError);
    CHECK_THROWS_AS(alc::inj_module_from_json(alc::parse_json_text(
                        R"({"q":0,"pruefer":{"default":0,"except":{},"x":1}})", "t")),
                    alc::SchemaError);
}

TEST_CASE("malformed payloads name the problem") {
    // non-prime entries
    CHECK_THROWS_AS(alc::set_from_json(alc::parse_json_text(
                        R"({"kind":"finite","primes":[4]})", "t")),
                    alc::SchemaError);
    // whole spectrum carries no primes
    CHECK_THROWS_AS(alc::set_from_json(alc::parse_json_text(
                        R"({"kind":"whole","primes":[2]})", "t")),
                    alc::SchemaError);
    // zero exponent
    CHECK_THROWS_AS(alc::module_from_json(alc::parse_json_text(
                        R"({"rank":0,"torsion":[[2,0]]})", "t")),
                    alc::SchemaError);
    // ragged presentation
    CHECK_THROWS_AS(alc::presentation_from_json(alc::parse_json_text(
                        R"({"rows":2,"cols":2,"entries":[[1,2],[3]]})", "t")),
                    alc::SchemaError);
    CHECK_THROWS_AS(alc::parse_json_text("{", "t"), alc::SchemaError);
}

TEST_CASE("descriptors parse recursively") {
    const auto d = alc::descriptor_from_json(alc::parse_json_text(
        R"({"kind":"comp","items":[
             {"kind":"ann","ideal":{"gen":12}},
             {"kind":"section","w":{"kind":"cofinite","primes":[3]}}]})",
        "t"));
    const auto* comp = std::get_if<alc::CompositionDesc>(&d.node);
    REQUIRE(comp != nullptr);
    CHECK(comp->items.size() == 2);
    CHECK(std::holds_alternative<alc::AnnByDesc>(comp->items[0].node));
    CHECK_THROWS_AS(alc::descriptor_from_json(alc::parse_json_text(
                        R"({"kind":"twist"})", "t")),
                    alc::SchemaError);
}

TEST_CASE("poset sets serialize by point name") {
    auto poset = std::make_shared<const alc::PosetSpec>(
        alc::PosetSpec({"q", "p"}, {{"q", "p"}}));
    const auto w = alc::SpecClosedSet::poset_upset(poset, 0b10);
    const Json j = alc::to_json(w);
    CHECK(j.dump() == R"({"backend":"poset","members":["p"]})");
    CHECK(alc::set_from_json(j, poset) == w);

    const auto min = alc::min_elements(alc::SpecClosedSet::poset_upset(poset, 0b11));
    CHECK(alc::to_json(min).dump() == R"({"finite":true,"members":["q"]})");
}
