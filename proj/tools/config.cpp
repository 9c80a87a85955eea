#include "config.hpp"

#include <algorithm>
#include <fstream>

namespace cli {

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file: " + path);
    Json j;
    try {
        f >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object: " + path);
    return j;
}

void require_keys(const Json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        const bool known = std::find(allowed.begin(), allowed.end(), item.key()) != allowed.end();
        if (!known) throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
    }
}

namespace {

const Json* find(const Json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

} // namespace

double get_number(const Json& obj, const std::string& where, const std::string& key,
                  double fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v->get<double>();
}

long long get_integer(const Json& obj, const std::string& where, const std::string& key,
                      long long fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v->get<long long>();
}

bool get_boolean(const Json& obj, const std::string& where, const std::string& key,
                 bool fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return v->get<bool>();
}

std::string get_text(const Json& obj, const std::string& where, const std::string& key,
                     const std::string& fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v->get<std::string>();
}

std::vector<double> get_numbers(const Json& obj, const std::string& where,
                                const std::string& key, const std::vector<double>& fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(where + "." + key + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v->size());
    for (const auto& x : *v) {
        if (!x.is_number()) throw ConfigError(where + "." + key + ": expected an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<std::pair<std::string, double>> get_tolerances(
    const Json& obj, const std::string& where, const std::vector<std::string>& allowed) {
    std::vector<std::pair<std::string, double>> out;
    const Json* v = find(obj, "tolerances");
    if (!v) return out;
    if (!v->is_object()) throw ConfigError(where + ".tolerances: expected an object");
    for (const auto& item : v->items()) {
        const bool known = std::find(allowed.begin(), allowed.end(), item.key()) != allowed.end();
        if (!known)
            throw ConfigError(where + ".tolerances: unknown tolerance \"" + item.key() + "\"");
        if (!item.value().is_number() || !(item.value().get<double>() > 0.0))
            throw ConfigError(where + ".tolerances." + item.key() + ": must be a positive number");
        out.emplace_back(item.key(), item.value().get<double>());
    }
    return out;
}

} // namespace cli
