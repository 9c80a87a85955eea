#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

// Malformed or unknown configuration; the driver maps this to exit 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A module rejected otherwise well-formed parameters; maps to exit 2.
struct ModuleError : std::runtime_error {
    explicit ModuleError(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::json;

// Parses the file as a JSON object; an unreadable file or non-object root is
// a ConfigError.  An empty path yields an empty object.
Json load_config(const std::string& path);

// Rejects any key of obj outside `allowed`.
void require_keys(const Json& obj, const std::string& where,
                  const std::vector<std::string>& allowed);

double get_number(const Json& obj, const std::string& where, const std::string& key,
                  double fallback);
long long get_integer(const Json& obj, const std::string& where, const std::string& key,
                      long long fallback);
bool get_boolean(const Json& obj, const std::string& where, const std::string& key,
                 bool fallback);
std::string get_text(const Json& obj, const std::string& where, const std::string& key,
                     const std::string& fallback);
std::vector<double> get_numbers(const Json& obj, const std::string& where,
                                const std::string& key, const std::vector<double>& fallback);

// The "tolerances" block: every key must be in `allowed`, every value a
// positive number.  Returns (name, value) pairs in the config's order.
std::vector<std::pair<std::string, double>> get_tolerances(
    const Json& obj, const std::string& where, const std::vector<std::string>& allowed);

} // namespace cli
