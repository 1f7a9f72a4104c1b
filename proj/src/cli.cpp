#include "coverlab/cli.hpp"

#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coverlab/catalog.hpp"
#include "coverlab/certifier.hpp"
#include "coverlab/directed.hpp"
#include "coverlab/distortion.hpp"
#include "coverlab/errors.hpp"
#include "coverlab/exact_cover.hpp"
#include "coverlab/json_io.hpp"

#ifndef COVERLAB_DEFAULT_CATALOG_DIR
#define COVERLAB_DEFAULT_CATALOG_DIR ""
#endif

namespace coverlab {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

Rat parse_rat_arg(const std::string& s, const std::string& flag) {
    auto r = rat_from_string(s);
    if (!r)
        throw InvalidParameterError("cannot parse " + flag +
                                    " as a rational: " + s);
    return *r;
}

std::int64_t default_cap() {
    if (const char* env = std::getenv("COVERLAB_CAP")) {
        auto v = int_from_string(env);
        if (!v || *v < 1 || !v->fits_slong_p())
            throw InvalidParameterError("bad COVERLAB_CAP value");
        return v->get_si();
    }
    return kDefaultCap;
}

std::string default_catalog_dir() {
    if (const char* env = std::getenv("COVERLAB_CATALOG_DIR")) return env;
    return COVERLAB_DEFAULT_CATALOG_DIR;
}

// "1e197" for exact powers of ten above the exact-search range, a plain
// decimal string otherwise.
std::string big_int_brief(const Int& C) {
    std::string dec = C.get_str();
    if (dec.size() > 7 && dec[0] == '1' &&
        dec.find_first_not_of('0', 1) == std::string::npos)
        return "1e" + std::to_string(dec.size() - 1);
    return dec;
}

json verdict_to_json(const CoverVerdict& v) {
    json doc;
    doc["covered"] = v.covered;
    doc["uncovered"] =
        v.uncovered_count.get_str() + "/" + v.total_count.get_str();
    if (v.witness) doc["witness"] = v.witness->coords;
    doc["schema_version"] = kSchemaVersion;
    return doc;
}

json certificate_to_json(const Certificate& cert) {
    json rounds = json::array();
    for (const auto& mb : cert.per_round)
        rounds.push_back(
            json{{"k", mb.k}, {"bound", rat_to_string(mb.value)}});
    return json{{"delta", rat_to_string(cert.delta)},
                {"mode", to_string(cert.mode)},
                {"rounds", std::move(rounds)},
                {"criterion_sum", rat_to_string(cert.criterion_sum)},
                {"residual", rat_to_string(cert.residual)},
                {"verdict", to_string(cert.verdict)},
                {"nonparallel_checked", cert.nonparallel_checked},
                {"schema_version", kSchemaVersion}};
}

json trace_to_json(const DistortionTrace& trace) {
    json rounds = json::array();
    for (const auto& r : trace.per_round)
        rounds.push_back(json{{"k", r.k},
                              {"covered_mass", rat_to_string(r.covered_mass)},
                              {"exceeded_cap_count", r.exceeded_cap_count}});
    return json{
        {"delta", rat_to_string(trace.delta)},
        {"rounds", std::move(rounds)},
        {"residual_lower_bound", rat_to_string(trace.residual_lower_bound)},
        {"schema_version", kSchemaVersion}};
}

struct Options {
    std::int64_t cap = kDefaultCap;
    bool quiet = false;
    std::string output = "json";
};

void emit(const Options& opt, std::ostream& out, const json& doc) {
    if (opt.quiet) return;
    out << doc.dump() << "\n";
}

int run_verify(const Options& opt, const std::string& path,
               std::ostream& out) {
    auto inst = instance_from_json(parse_json_file(path));
    inst.validate();
    emit(opt, out, verdict_to_json(is_covering(inst, opt.cap)));
    return 0;
}

int run_certify(const Options& opt, const std::string& path,
                const std::string& delta_s, const std::string& mode_s,
                std::ostream& out) {
    auto inst = instance_from_json(parse_json_file(path));
    auto delta = parse_rat_arg(delta_s, "--delta");
    auto mode = bound_mode_from_string(mode_s);
    if (!mode)
        throw InvalidParameterError(
            "--mode must be exact, pairwise or product");
    auto cert = certify(inst, delta, *mode, opt.cap);
    emit(opt, out, certificate_to_json(cert));
    return cert.verdict == Verdict::not_covering ? 0 : 2;
}

int run_distort(const Options& opt, const std::string& path,
                const std::string& delta_s, bool trace_full,
                std::ostream& out) {
    auto inst = instance_from_json(parse_json_file(path));
    auto delta = parse_rat_arg(delta_s, "--delta");
    json doc;
    Rat residual;
    if (trace_full) {
        auto full = run_full(inst, delta, opt.cap);
        doc = trace_to_json(full.trace);
        json measures = json::array();
        for (const auto& st : full.states) {
            json weights = json::array();
            for (const auto& w : st.weights)
                weights.push_back(rat_to_string(w));
            measures.push_back(std::move(weights));
        }
        doc["measures"] = std::move(measures);
        residual = full.trace.residual_lower_bound;
    } else {
        auto trace = run(inst, delta, opt.cap);
        doc = trace_to_json(trace);
        residual = trace.residual_lower_bound;
    }
    emit(opt, out, doc);
    return residual > 0 ? 0 : 2;
}

int run_crt_map(const Options& opt, const std::string& path,
                std::ostream& out) {
    auto sys = apsystem_from_json(parse_json_file(path));
    auto inst = system_to_instance(sys);
    json doc = instance_to_json(inst);
    doc["schema_version"] = kSchemaVersion;
    emit(opt, out, doc);
    return 0;
}

int run_bound(const Options& opt, const std::string& sequence,
              const std::string& sizes_path, const std::string& eps_s,
              int N, const std::string& delta_s, int growth_limit,
              std::ostream& out) {
    SequenceSpec spec;
    spec.N = N;
    spec.eps = parse_rat_arg(eps_s, "--eps");
    if (!sizes_path.empty()) {
        spec.kind = SequenceSpec::Kind::explicit_sizes;
        auto doc = parse_json_file(sizes_path);
        if (!doc.contains("sizes") || !doc["sizes"].is_array())
            throw InvalidInputError("--sizes file needs a \"sizes\" array");
        for (const auto& s : doc["sizes"]) {
            if (!s.is_number_integer())
                throw InvalidInputError("sizes must be integers");
            spec.sizes.push_back(s.get<std::int64_t>());
        }
    } else if (sequence == "primes") {
        spec.kind = SequenceSpec::Kind::primes;
    } else {
        throw InvalidParameterError(
            "pass --sequence primes or --sizes <file>");
    }

    std::optional<Rat> delta;
    if (!delta_s.empty()) delta = parse_rat_arg(delta_s, "--delta");
    auto result = min_C(spec, delta, growth_limit);

    json probes = json::array();
    for (const auto& p : result.probes)
        probes.push_back(json{{"C", big_int_brief(p.C)},
                              {"pass", p.pass},
                              {"lhs_log10", p.lhs_log10},
                              {"rounding", p.lhs_rounding}});
    json audit{{"N", spec.N},
               {"eps", rat_to_string(spec.eps)},
               {"delta", rat_to_string(result.delta)},
               {"growth_checked_upto", result.growth_checked_upto},
               {"tail_bound", "C^(-1-eps/10) + (10/eps)*C^(-eps/10)"},
               {"probes", std::move(probes)}};

    // Reference values for consumers comparing against the literature,
    // plus the minimum-modulus consequence of the computed C for the
    // prime sequence.
    json metadata{{"distinct_moduli_min_modulus", "1e16"},
                  {"distinct_moduli_min_modulus_improved", "<1e6"},
                  {"squarefree_min_modulus_scale", "exp(1e200)"}};
    if (spec.kind == SequenceSpec::Kind::primes) {
        metadata["min_modulus_log10_upper"] =
            primorial_log10_upper(result.C);
        metadata["min_modulus_log10_rounding"] = "up";
    }

    emit(opt, out,
         json{{"C", big_int_brief(result.C)},
              {"audit", std::move(audit)},
              {"metadata", std::move(metadata)},
              {"schema_version", kSchemaVersion}});
    return 0;
}

int run_catalog(const Options& opt, const std::string& dir,
                const std::string& action, const std::string& name,
                std::ostream& out) {
    if (dir.empty())
        throw InvalidInputError(
            "no catalog directory (set --catalog-dir or "
            "COVERLAB_CATALOG_DIR)");
    auto cat = Catalog::open(dir, opt.cap);
    if (action == "list") {
        json entries = json::array();
        for (const auto& e : cat.entries())
            entries.push_back(json{{"name", e.name},
                                   {"kind", e.kind},
                                   {"expected", to_string(e.expected)}});
        emit(opt, out,
             json{{"entries", std::move(entries)},
                  {"schema_version", kSchemaVersion}});
        return 0;
    }
    if (action == "get") {
        const auto& e = cat.get(name);
        json payload = std::holds_alternative<APSystem>(e.payload)
                           ? apsystem_to_json(std::get<APSystem>(e.payload))
                           : instance_to_json(std::get<Instance>(e.payload));
        emit(opt, out,
             json{{"name", e.name},
                  {"kind", e.kind},
                  {"expected", to_string(e.expected)},
                  {"provenance", e.provenance},
                  {"payload", std::move(payload)},
                  {"schema_version", kSchemaVersion}});
        return 0;
    }
    throw InvalidParameterError("catalog action must be list or get");
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"coverlab - exact covering-system verification and "
                 "non-covering certificates"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    std::int64_t cap_flag = -1;
    app.add_option("--cap", cap_flag,
                   "largest enumerable point/prefix count (default 10^7, "
                   "env COVERLAB_CAP)");
    app.add_flag("--quiet", opt.quiet, "suppress the JSON payload");
    app.add_option("--output", opt.output, "output format (json)")
        ->check(CLI::IsMember({"json"}));

    std::string instance_path, delta_s = "1/4", mode_s = "exact";
    std::string system_path;
    std::string sequence, sizes_path, eps_s = "1", bound_delta_s;
    int N = 1, growth_limit = 1'000'000;
    bool trace_full = false;
    std::string catalog_dir = default_catalog_dir();
    std::string catalog_action, catalog_name;

    auto* verify = app.add_subcommand("verify", "exhaustive covering check");
    verify->add_option("--instance", instance_path)->required();

    auto* certify = app.add_subcommand(
        "certify", "non-covering certificate via second-moment bounds");
    certify->add_option("--instance", instance_path)->required();
    certify->add_option("--delta", delta_s, "distortion parameter p/q");
    certify->add_option("--mode", mode_s, "exact|pairwise|product");

    auto* distort = app.add_subcommand(
        "distort", "distorted-measure trace and residual lower bound");
    distort->add_option("--instance", instance_path)->required();
    distort->add_option("--delta", delta_s, "distortion parameter p/q");
    distort->add_flag("--trace-full", trace_full,
                      "retain every round's measure in the output");

    auto* bound = app.add_subcommand(
        "bound", "constant C for the covering criterion, with audit");
    bound->add_option("--sequence", sequence, "named sequence: primes");
    bound->add_option("--sizes", sizes_path, "explicit sizes JSON file");
    bound->add_option("--eps", eps_s, "growth margin epsilon p/q");
    bound->add_option("--N", N, "growth threshold index");
    bound->add_option("--delta", bound_delta_s, "must equal eps/6");
    bound->add_option("--growth-limit", growth_limit,
                      "largest k audited for the growth hypothesis");

    auto* crt_map = app.add_subcommand(
        "crt-map", "map an AP system to its hyperplane instance");
    crt_map->add_option("--system", system_path)->required();

    auto* catalog = app.add_subcommand("catalog", "curated example systems");
    catalog->add_option("action", catalog_action, "list|get")->required();
    catalog->add_option("name", catalog_name, "entry name (for get)");
    catalog->add_option("--catalog-dir", catalog_dir);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        opt.cap = cap_flag > 0 ? cap_flag : default_cap();
        if (verify->parsed()) return run_verify(opt, instance_path, out);
        if (certify->parsed())
            return run_certify(opt, instance_path, delta_s, mode_s, out);
        if (distort->parsed())
            return run_distort(opt, instance_path, delta_s, trace_full, out);
        if (bound->parsed())
            return run_bound(opt, sequence, sizes_path, eps_s, N,
                             bound_delta_s, growth_limit, out);
        if (crt_map->parsed()) return run_crt_map(opt, system_path, out);
        if (catalog->parsed())
            return run_catalog(opt, catalog_dir, catalog_action,
                               catalog_name, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 3;
}

}  // namespace coverlab
