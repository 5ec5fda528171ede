#ifndef ALC_JSON_IO_HPP
#define ALC_JSON_IO_HPP

#include <memory>
#include <string>

#include <json.hpp>

#include "alc/injectives.hpp"
#include "alc/spec_model.hpp"
#include "alc/zmodules.hpp"

namespace alc {

// Insertion-ordered JSON keeps the canonical field order on output.
using Json = nlohmann::ordered_json;

// Integers above 2^63 - 1 in magnitude travel as decimal strings.
Json int_to_json(const Int& value);
Int int_from_json(const Json& j, const char* what);

Json to_json(const PrimeZ& p);
Json to_json(const SpecClosedSet& w);
Json to_json(const MinSet& min);
Json to_json(const FgModule& m);
Json to_json(const GammaPart& part);
Json to_json(const InjModule& e);
Json to_json(const LocalCohomology& lc);
Json to_json(const InjComplex& complex);

// Parsers are strict: unknown fields and malformed shapes raise SchemaError.
PosetSpec poset_from_json(const Json& j);
SpecClosedSet set_from_json(const Json& j, std::shared_ptr<const PosetSpec> poset = nullptr);
FgModule module_from_json(const Json& j);
PresentationMatrix presentation_from_json(const Json& j);
InjModule inj_module_from_json(const Json& j);
PreradicalDescriptor descriptor_from_json(const Json& j,
                                          std::shared_ptr<const PosetSpec> poset = nullptr);

Json parse_json_text(const std::string& text, const char* what);

}  // namespace alc

#endif
