// Command-line front end: one-shot request to stdout JSON.
// Exit codes: 0 success, 1 verification failure, 2 schema error,
// 3 precondition violation.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alc/errors.hpp"
#include "alc/injectives.hpp"
#include "alc/json_io.hpp"
#include "alc/oracles.hpp"
#include "alc/spec_model.hpp"
#include "alc/verify.hpp"
#include "alc/zmodules.hpp"

namespace {

using alc::Json;

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

[[noreturn]] void fail_schema(const std::string& message) {
    throw alc::SchemaError(message);
}

std::string read_stream_or_file(const std::string& spec) {
    if (spec == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(spec);
    if (!in) fail_schema("cannot open request file '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts inline JSON or the shorthands "whole" and "empty".
alc::SpecClosedSet parse_set_arg(const std::string& text,
                                 const std::shared_ptr<const alc::PosetSpec>& poset) {
    if (text == "whole") return alc::SpecClosedSet::whole_z();
    if (text == "empty") return alc::SpecClosedSet::empty_z();
    return alc::set_from_json(alc::parse_json_text(text, "set"), poset);
}

alc::Int parse_int_arg(const std::string& text, const char* what) {
    return alc::int_from_json(alc::parse_json_text(text, what), what);
}

struct SpecRequest {
    std::string op;
    std::string backend = "z";
    std::shared_ptr<const alc::PosetSpec> poset;
    std::vector<alc::SpecClosedSet> sets;
    std::vector<alc::Int> ints;
    std::optional<std::string> point;  // contains: prime or poset point
    std::uint32_t bound = alc::MinSet::kDefaultBound;
    unsigned chain_length = 0;
};

Json run_spec(const SpecRequest& req) {
    using alc::SpecClosedSet;
    if (req.op == "union" || req.op == "intersect") {
        if (req.sets.empty()) {
            throw alc::PreconditionError(req.op + ": empty family rejected");
        }
        const SpecClosedSet out = req.op == "union" ? alc::union_of(req.sets)
                                                    : alc::intersect_of(req.sets);
        return alc::to_json(out);
    }
    if (req.op == "quotient") {
        if (req.sets.size() != 2) fail_schema("quotient expects exactly two sets");
        return alc::to_json(alc::quotient(req.sets[0], req.sets[1]));
    }
    if (req.op == "v") {
        if (req.ints.size() != 1) fail_schema("v expects one ideal generator");
        return alc::to_json(alc::v_of_ideal(alc::IdealZ(req.ints[0])));
    }
    if (req.op == "wij") {
        if (req.ints.size() != 2) fail_schema("wij expects two ideal generators");
        const SpecClosedSet w =
            alc::w_pair(alc::IdealZ(req.ints[0]), alc::IdealZ(req.ints[1]));
        Json j = alc::to_json(w);
        j["closed"] = alc::is_closed(w);
        return j;
    }
    if (req.op == "min") {
        if (req.sets.size() != 1) fail_schema("min expects one set");
        return alc::to_json(alc::min_elements(req.sets[0], req.bound));
    }
    if (req.op == "closed") {
        if (req.sets.size() != 1) fail_schema("closed expects one set");
        Json j;
        j["closed"] = alc::is_closed(req.sets[0]);
        return j;
    }
    if (req.op == "chain") {
        if (req.sets.size() != 1 || req.chain_length == 0) {
            fail_schema("chain expects one set and a positive length");
        }
        Json arr = Json::array();
        for (const SpecClosedSet& w : alc::acc_witness_chain(req.sets[0], req.chain_length)) {
            arr.push_back(alc::to_json(w));
        }
        Json j;
        j["chain"] = std::move(arr);
        return j;
    }
    if (req.op == "contains") {
        if (req.sets.size() != 1 || !req.point) {
            fail_schema("contains expects one set and one point");
        }
        const SpecClosedSet& w = req.sets[0];
        Json j;
        if (w.backend() == alc::Backend::Poset) {
            j["contains"] = w.contains_point(w.poset()->index_of(*req.point));
        } else {
            const alc::Int p = parse_int_arg(*req.point, "point");
            j["contains"] = w.contains(p == 0 ? alc::PrimeZ::zero() : alc::PrimeZ::max(p));
        }
        return j;
    }
    fail_schema("unknown spec operation '" + req.op + "'");
}

struct LcRequest {
    std::string op;
    std::optional<alc::SpecClosedSet> w;
    std::optional<alc::FgModule> module;
    std::optional<alc::IdealZ> ideal;
    std::optional<alc::PreradicalDescriptor> descriptor;
    std::optional<alc::PresentationMatrix> presentation;
};

Json run_lc(const LcRequest& req) {
    const auto need_w = [&]() -> const alc::SpecClosedSet& {
        if (!req.w) fail_schema(req.op + " requires --w");
        return *req.w;
    };
    const auto need_module = [&]() -> const alc::FgModule& {
        if (!req.module) fail_schema(req.op + " requires --module");
        return *req.module;
    };
    if (req.op == "gamma") {
        return alc::to_json(alc::gamma_w_embedded(need_w(), need_module()));
    }
    if (req.op == "pair") {
        const alc::TorsionPair pair = alc::torsion_pair(need_w(), need_module());
        Json j;
        j["t"] = alc::to_json(pair.t.module);
        j["f"] = alc::to_json(pair.f);
        return j;
    }
    if (req.op == "rgamma") {
        return alc::to_json(alc::r_gamma(need_w(), need_module()));
    }
    if (req.op == "triangle") {
        const alc::TriangleDecomposition tri =
            alc::triangle_decompose(need_w(), need_module());
        Json j;
        j["sub"] = alc::to_json(tri.sub);
        j["whole"] = alc::to_json(tri.whole);
        j["quot"] = alc::to_json(tri.quot);
        return j;
    }
    if (req.op == "ann") {
        if (!req.ideal) fail_schema("ann requires --ideal");
        return alc::to_json(alc::ann_preradical_apply(*req.ideal, need_module()));
    }
    if (req.op == "support") {
        return alc::to_json(alc::support(need_module()));
    }
    if (req.op == "closure") {
        if (!req.descriptor) fail_schema("closure requires --descriptor");
        const alc::PreradicalDescriptor closed = alc::closure(*req.descriptor);
        Json j;
        j["kind"] = "section";
        j["w"] = alc::to_json(std::get<alc::SectionDesc>(closed.node).w);
        return j;
    }
    if (req.op == "presentation") {
        if (!req.presentation) fail_schema("presentation requires --presentation");
        return alc::to_json(alc::module_from_presentation(*req.presentation));
    }
    if (req.op == "snf") {
        if (!req.presentation) fail_schema("snf requires --presentation");
        const alc::SmithResult snf = alc::smith_normal_form(*req.presentation);
        Json diag = Json::array();
        for (const alc::Int& d : snf.diagonal) diag.push_back(alc::int_to_json(d));
        Json j;
        j["diagonal"] = std::move(diag);
        return j;
    }
    fail_schema("unknown lc operation '" + req.op + "'");
}

Json run_verify(const alc::verify::Options& opts, const std::string& suite, int& exit_code) {
    std::vector<alc::verify::SuiteReport> reports;
    if (suite == "all") {
        reports = alc::verify::run_all(opts);
    } else {
        reports.push_back(alc::verify::run_suite(suite, opts));
    }
    bool passed = true;
    for (const auto& r : reports) passed = passed && r.passed();
    exit_code = passed ? 0 : 1;
    return alc::verify::reports_to_json(reports, opts);
}

// Envelope dispatch for `--json <file|->` requests.
Json run_envelope(const Json& envelope, int& exit_code) {
    if (!envelope.is_object() || !envelope.contains("command")) {
        fail_schema("request: missing 'command'");
    }
    for (const auto& [key, value] : envelope.items()) {
        if (key != "command" && key != "op" && key != "backend" && key != "poset" &&
            key != "args" && key != "options") {
            fail_schema("request: unknown field '" + key + "'");
        }
    }
    const std::string command = envelope["command"].get<std::string>();
    const Json args = envelope.contains("args") ? envelope["args"] : Json::object();
    const Json options = envelope.contains("options") ? envelope["options"] : Json::object();
    std::shared_ptr<const alc::PosetSpec> poset;
    if (envelope.contains("poset")) {
        poset = std::make_shared<const alc::PosetSpec>(alc::poset_from_json(envelope["poset"]));
    }

    if (command == "spec" || command == "wij") {
        SpecRequest req;
        req.poset = poset;
        if (command == "wij") {
            req.op = "wij";
        } else {
            if (!envelope.contains("op")) fail_schema("request: spec needs 'op'");
            req.op = envelope["op"].get<std::string>();
        }
        if (args.contains("sets")) {
            for (const Json& s : args["sets"]) req.sets.push_back(alc::set_from_json(s, poset));
        }
        for (const char* key : {"w", "w1", "w2"}) {
            if (args.contains(key)) req.sets.push_back(alc::set_from_json(args[key], poset));
        }
        for (const char* key : {"gen", "a", "b", "n"}) {
            if (args.contains(key)) req.ints.push_back(alc::int_from_json(args[key], key));
        }
        if (args.contains("point")) {
            req.point = args["point"].is_string() ? args["point"].get<std::string>()
                                                  : args["point"].dump();
        }
        if (options.contains("bound")) {
            req.bound = static_cast<std::uint32_t>(options["bound"].get<std::uint64_t>());
        }
        if (args.contains("n")) {
            req.chain_length = static_cast<unsigned>(args["n"].get<std::uint64_t>());
        }
        return run_spec(req);
    }
    if (command == "lc") {
        LcRequest req;
        if (!envelope.contains("op")) fail_schema("request: lc needs 'op'");
        req.op = envelope["op"].get<std::string>();
        if (args.contains("w")) req.w = alc::set_from_json(args["w"], poset);
        if (args.contains("module")) req.module = alc::module_from_json(args["module"]);
        if (args.contains("ideal")) {
            req.ideal = alc::IdealZ(alc::int_from_json(args["ideal"]["gen"], "ideal"));
        }
        if (args.contains("descriptor")) {
            req.descriptor = alc::descriptor_from_json(args["descriptor"], poset);
        }
        if (args.contains("presentation")) {
            req.presentation = alc::presentation_from_json(args["presentation"]);
        }
        return run_lc(req);
    }
    if (command == "verify") {
        alc::verify::Options opts;
        std::string suite = "all";
        if (options.contains("suite")) suite = options["suite"].get<std::string>();
        if (options.contains("seed")) opts.seed = options["seed"].get<std::uint64_t>();
        if (options.contains("cases")) opts.cases = options["cases"].get<unsigned>();
        if (options.contains("poset_size")) {
            opts.poset_size = options["poset_size"].get<unsigned>();
        }
        if (options.contains("prime_bound")) {
            opts.prime_bound = options["prime_bound"].get<std::uint32_t>();
        }
        if (options.contains("power_bound")) {
            opts.power_bound = options["power_bound"].get<unsigned>();
        }
        return run_verify(opts, suite, exit_code);
    }
    fail_schema("request: unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"section functors and local cohomology over decidable spectra"};
    app.require_subcommand(0, 1);

    std::string json_request;
    app.add_option("--json", json_request, "read a request envelope from a file or '-'");

    // spec -----------------------------------------------------------------
    auto* spec_cmd = app.add_subcommand("spec", "lattice operations over a spectrum");
    std::string spec_backend = "z";
    std::string spec_poset_text;
    std::string spec_op;
    std::vector<std::string> spec_args;
    std::uint32_t spec_bound = alc::MinSet::kDefaultBound;
    spec_cmd->add_option("--backend", spec_backend)->check(CLI::IsMember({"z", "poset"}));
    spec_cmd->add_option("--poset", spec_poset_text, "poset JSON for the poset backend");
    spec_cmd->add_option("--bound", spec_bound, "truncation bound for min streams");
    spec_cmd->add_option("op", spec_op)->required();
    spec_cmd->add_option("args", spec_args, "operand JSON values or integers");

    // wij ------------------------------------------------------------------
    auto* wij_cmd = app.add_subcommand("wij", "membership set of a pair of ideals");
    std::vector<std::string> wij_args;
    wij_cmd->add_option("args", wij_args)->expected(2);

    // lc -------------------------------------------------------------------
    auto* lc_cmd = app.add_subcommand("lc", "section functors and local cohomology");
    std::string lc_op, lc_w, lc_module, lc_ideal, lc_descriptor, lc_presentation;
    std::string lc_poset_text;
    lc_cmd->add_option("op", lc_op)->required();
    lc_cmd->add_option("--w", lc_w, "specialization-closed set (JSON, 'whole' or 'empty')");
    lc_cmd->add_option("--module", lc_module, "module JSON");
    lc_cmd->add_option("--ideal", lc_ideal, "ideal generator");
    lc_cmd->add_option("--descriptor", lc_descriptor, "preradical descriptor JSON");
    lc_cmd->add_option("--presentation", lc_presentation, "presentation matrix JSON");
    lc_cmd->add_option("--poset", lc_poset_text);

    // verify ---------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    std::string verify_suite = "all";
    alc::verify::Options verify_opts;
    bool verify_serial = false;
    verify_cmd->add_option("--suite", verify_suite);
    verify_cmd->add_option("--seed", verify_opts.seed);
    verify_cmd->add_option("--cases", verify_opts.cases);
    verify_cmd->add_option("--poset-size", verify_opts.poset_size);
    verify_cmd->add_option("--prime-bound", verify_opts.prime_bound);
    verify_cmd->add_option("--power-bound", verify_opts.power_bound);
    verify_cmd->add_flag("--serial", verify_serial, "disable the OpenMP fan-out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        Json err;
        err["error"] = {{"kind", "schema"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    int exit_code = 0;
    try {
        if (!json_request.empty()) {
            const Json envelope =
                alc::parse_json_text(read_stream_or_file(json_request), "request");
            emit(run_envelope(envelope, exit_code));
            return exit_code;
        }
        if (spec_cmd->parsed() || wij_cmd->parsed()) {
            SpecRequest req;
            if (wij_cmd->parsed()) {
                req.op = "wij";
                for (const std::string& arg : wij_args) {
                    req.ints.push_back(parse_int_arg(arg, "ideal generator"));
                }
            } else {
                req.op = spec_op;
                req.backend = spec_backend;
                if (!spec_poset_text.empty()) {
                    req.poset = std::make_shared<const alc::PosetSpec>(alc::poset_from_json(
                        alc::parse_json_text(spec_poset_text, "poset")));
                }
                req.bound = spec_bound;
                if (req.op == "v" || req.op == "wij") {
                    for (const std::string& arg : spec_args) {
                        req.ints.push_back(parse_int_arg(arg, "ideal generator"));
                    }
                } else if (req.op == "contains") {
                    if (spec_args.size() != 2) fail_schema("contains expects a set and a point");
                    req.sets.push_back(parse_set_arg(spec_args[0], req.poset));
                    req.point = spec_args[1];
                } else if (req.op == "chain") {
                    if (spec_args.size() != 2) fail_schema("chain expects a set and a length");
                    req.sets.push_back(parse_set_arg(spec_args[0], req.poset));
                    req.chain_length =
                        static_cast<unsigned>(parse_int_arg(spec_args[1], "length"));
                } else {
                    for (const std::string& arg : spec_args) {
                        req.sets.push_back(parse_set_arg(arg, req.poset));
                    }
                }
            }
            emit(run_spec(req));
            return 0;
        }
        if (lc_cmd->parsed()) {
            LcRequest req;
            req.op = lc_op;
            std::shared_ptr<const alc::PosetSpec> poset;
            if (!lc_poset_text.empty()) {
                poset = std::make_shared<const alc::PosetSpec>(
                    alc::poset_from_json(alc::parse_json_text(lc_poset_text, "poset")));
            }
            if (!lc_w.empty()) req.w = parse_set_arg(lc_w, poset);
            if (!lc_module.empty()) {
                req.module = alc::module_from_json(alc::parse_json_text(lc_module, "module"));
            }
            if (!lc_ideal.empty()) req.ideal = alc::IdealZ(parse_int_arg(lc_ideal, "ideal"));
            if (!lc_descriptor.empty()) {
                req.descriptor = alc::descriptor_from_json(
                    alc::parse_json_text(lc_descriptor, "descriptor"), poset);
            }
            if (!lc_presentation.empty()) {
                req.presentation = alc::presentation_from_json(
                    alc::parse_json_text(lc_presentation, "presentation"));
            }
            emit(run_lc(req));
            return 0;
        }
        if (verify_cmd->parsed()) {
            verify_opts.parallel = !verify_serial;
            emit(run_verify(verify_opts, verify_suite, exit_code));
            return exit_code;
        }
        std::cout << app.help();
        return 0;
    } catch (const alc::PreconditionError& e) {
        Json err;
        err["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const alc::SchemaError& e) {
        Json err;
        err["error"] = {{"kind", "schema"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = {{"kind", "schema"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
