#pragma once

#include "hjdecay/common.hpp"

#include <map>
#include <variant>

namespace hjd {

/// Minimal TOML subset for experiment configs: [section] / [section.sub]
/// headers, `key = value` with booleans, numbers, basic strings and flat
/// arrays (possibly nested one level), full-line and trailing comments.
/// Keys are flattened to "section.sub.key".
struct TomlValue {
    enum class Kind { boolean, number, string, array };
    Kind kind = Kind::number;
    bool b = false;
    double num = 0.0;
    std::string str;
    std::vector<TomlValue> arr;

    double as_number() const
    {
        if (kind != Kind::number) throw invalid_input("toml: expected a number");
        return num;
    }
    const std::string& as_string() const
    {
        if (kind != Kind::string) throw invalid_input("toml: expected a string");
        return str;
    }
    bool as_bool() const
    {
        if (kind != Kind::boolean) throw invalid_input("toml: expected a boolean");
        return b;
    }
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);

} // namespace hjd
