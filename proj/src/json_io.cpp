#include "coverlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "coverlab/errors.hpp"

namespace coverlab {

using nlohmann::json;

namespace {

std::int64_t require_int(const json& v, const char* what) {
    if (!v.is_number_integer())
        throw InvalidInputError(std::string(what) + " must be an integer");
    return v.get<std::int64_t>();
}

const json& require_field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key))
        throw InvalidInputError(std::string("missing field \"") + key + "\"");
    return doc.at(key);
}

}  // namespace

Instance instance_from_json(const json& doc) {
    const json& sizes_j = require_field(doc, "sizes");
    if (!sizes_j.is_array() || sizes_j.empty())
        throw InvalidInputError("\"sizes\" must be a non-empty array");
    std::vector<std::int64_t> sizes;
    for (const auto& s : sizes_j) sizes.push_back(require_int(s, "size"));

    Instance inst;
    inst.space = ProductSpace(std::move(sizes));

    const json& hs = require_field(doc, "hyperplanes");
    if (!hs.is_array())
        throw InvalidInputError("\"hyperplanes\" must be an array");
    for (const auto& hj : hs) {
        const json& fixed = require_field(hj, "fixed");
        if (!fixed.is_array())
            throw InvalidInputError("\"fixed\" must be an array of [j,v]");
        std::map<int, std::int64_t> fixings;
        int prev_j = 0;
        for (const auto& pair : fixed) {
            if (!pair.is_array() || pair.size() != 2)
                throw InvalidInputError("each fixing must be a [j,v] pair");
            auto j64 = require_int(pair[0], "coordinate index");
            auto v = require_int(pair[1], "fixed value");
            if (j64 < 1 || j64 > inst.space.n())
                throw InvalidInputError("coordinate index out of range: " +
                                        std::to_string(j64));
            int j = static_cast<int>(j64);
            if (j <= prev_j)
                throw InvalidInputError(
                    "fixed list must be strictly sorted by coordinate "
                    "(duplicate or out-of-order index " +
                    std::to_string(j) + ")");
            prev_j = j;
            fixings.emplace(j, v);
        }
        Hyperplane h(std::move(fixings));
        h.validate(inst.space);
        inst.hyperplanes.push_back(std::move(h));
    }
    return inst;
}

json instance_to_json(const Instance& inst) {
    json doc;
    doc["sizes"] = inst.space.sizes();
    json hs = json::array();
    for (const auto& h : inst.hyperplanes) {
        json fixed = json::array();
        for (const auto& [j, v] : h.fixings())
            fixed.push_back(json::array({j, v}));
        hs.push_back(json{{"fixed", std::move(fixed)}});
    }
    doc["hyperplanes"] = std::move(hs);
    return doc;
}

Instance parse_instance(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw InvalidInputError("malformed JSON");
    return instance_from_json(doc);
}

APSystem apsystem_from_json(const json& doc) {
    const json& ps = require_field(doc, "progressions");
    if (!ps.is_array())
        throw InvalidInputError("\"progressions\" must be an array");
    APSystem sys;
    for (const auto& pj : ps) {
        auto a = require_int(require_field(pj, "a"), "residue");
        auto d = require_int(require_field(pj, "d"), "modulus");
        sys.progressions.push_back(make_progression(a, d));
    }
    return sys;
}

json apsystem_to_json(const APSystem& sys) {
    json ps = json::array();
    for (const auto& ap : sys.progressions)
        ps.push_back(json{{"a", ap.a}, {"d", ap.d}});
    return json{{"progressions", std::move(ps)}};
}

APSystem parse_apsystem(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw InvalidInputError("malformed JSON");
    return apsystem_from_json(doc);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_file(const std::string& path) {
    json doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded())
        throw InvalidInputError("malformed JSON in " + path);
    return doc;
}

}  // namespace coverlab
