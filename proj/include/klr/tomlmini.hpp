#pragma once

#include <map>
#include <string>
#include <vector>

namespace klr {

// The slice of TOML the run configs need: [sections], bare keys, strings,
// integers, booleans and (nested) arrays on one line, # comments. Keys are
// returned dotted with their section. Anything outside the slice throws
// std::domain_error naming the offending line.
struct TomlValue {
    enum class Kind { Str, Integer, Bool, Array };
    Kind kind = Kind::Str;
    std::string s;
    long long i = 0;
    bool b = false;
    std::vector<TomlValue> arr;

    const std::string& as_string() const;
    long long as_int() const;
    bool as_bool() const;
    std::vector<int> as_int_array() const;
    std::vector<std::vector<int>> as_int_matrix() const;
};

std::map<std::string, TomlValue> parse_toml(const std::string& text);

} // namespace klr
