#include "esdlab/state_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "esdlab/errors.hpp"

namespace esdlab {

namespace {

using nlohmann::json;

double finite_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ParseError("\"" + key + "\" must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError("\"" + key + "\" is not finite");
    return x;
}

Complex complex_pair(const json& v, const std::string& key) {
    if (!v.is_array() || v.size() != 2) throw ParseError("\"" + key + "\" must be [re, im]");
    return {finite_number(v[0], key), finite_number(v[1], key)};
}

}  // namespace

XState parse_xstate_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("state must be a JSON object");

    static const char* const kKeys[] = {"a", "b", "c", "d", "z", "w"};
    for (const auto& [key, _] : doc.items()) {
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            throw ParseError("unknown key \"" + key + "\"");
        }
    }
    for (const char* key : kKeys) {
        if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    }

    XState s;
    s.a = finite_number(doc["a"], "a");
    s.b = finite_number(doc["b"], "b");
    s.c = finite_number(doc["c"], "c");
    s.d = finite_number(doc["d"], "d");
    s.z = complex_pair(doc["z"], "z");
    s.w = complex_pair(doc["w"], "w");
    return s;
}

XState load_xstate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_xstate_json(buf.str());
}

std::string xstate_to_json(const XState& s) {
    json doc = {{"a", s.a},
                {"b", s.b},
                {"c", s.c},
                {"d", s.d},
                {"z", {s.z.real(), s.z.imag()}},
                {"w", {s.w.real(), s.w.imag()}}};
    return doc.dump();
}

}  // namespace esdlab
