#include "hjdecay/toml_lite.hpp"

#include <algorithm>
#include <cctype>

namespace hjd {
namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    char take() { return s[pos++]; }

    void skip_ws()
    {
        while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw invalid_input("toml line " + std::to_string(line) + ": " + what);
    }
};

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c)
{
    TomlValue v;
    v.kind = TomlValue::Kind::array;
    c.take(); // '['
    while (true) {
        c.skip_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '\r')) {
            if (c.take() == '\n') ++c.line;
            c.skip_ws();
        }
        if (c.done()) c.fail("unterminated array");
        if (c.peek() == ']') {
            c.take();
            break;
        }
        v.arr.push_back(parse_value(c));
        c.skip_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '\r')) {
            if (c.take() == '\n') ++c.line;
            c.skip_ws();
        }
        if (!c.done() && c.peek() == ',') c.take();
    }
    return v;
}

TomlValue parse_value(Cursor& c)
{
    c.skip_ws();
    if (c.done()) c.fail("missing value");
    const char ch = c.peek();
    if (ch == '[') return parse_array(c);
    if (ch == '"') {
        c.take();
        TomlValue v;
        v.kind = TomlValue::Kind::string;
        while (!c.done() && c.peek() != '"') {
            char x = c.take();
            if (x == '\\' && !c.done()) {
                const char esc = c.take();
                x = esc == 'n' ? '\n' : esc == 't' ? '\t' : esc;
            }
            v.str += x;
        }
        if (c.done()) c.fail("unterminated string");
        c.take();
        return v;
    }
    std::string token;
    while (!c.done() && c.peek() != '\n' && c.peek() != '\r' && c.peek() != ',' &&
           c.peek() != ']' && c.peek() != '#')
        token += c.take();
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.pop_back();
    if (token == "true" || token == "false") {
        TomlValue v;
        v.kind = TomlValue::Kind::boolean;
        v.b = token == "true";
        return v;
    }
    try {
        std::size_t used = 0;
        TomlValue v;
        v.num = std::stod(token, &used);
        if (used != token.size()) c.fail("bad number \"" + token + "\"");
        return v;
    } catch (const std::exception&) {
        c.fail("cannot parse value \"" + token + "\"");
    }
}

} // namespace

TomlTable parse_toml(const std::string& text)
{
    TomlTable table;
    Cursor c{text};
    std::string prefix;
    while (!c.done()) {
        c.skip_ws();
        if (c.done()) break;
        const char ch = c.peek();
        if (ch == '\n' || ch == '\r') {
            if (c.take() == '\n') ++c.line;
            continue;
        }
        if (ch == '#') {
            while (!c.done() && c.peek() != '\n') c.take();
            continue;
        }
        if (ch == '[') {
            c.take();
            if (!c.done() && c.peek() == '[')
                c.fail("array-of-tables is outside the supported subset");
            std::string name;
            while (!c.done() && c.peek() != ']') name += c.take();
            if (c.done()) c.fail("unterminated section header");
            c.take();
            prefix = name + ".";
            continue;
        }
        std::string key;
        while (!c.done() && c.peek() != '=' && c.peek() != '\n') key += c.take();
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (c.done() || c.peek() != '=') c.fail("expected '=' after key \"" + key + "\"");
        c.take();
        const TomlValue v = parse_value(c);
        if (key.empty()) c.fail("empty key");
        table[prefix + key] = v;
        // trailing comment / end of line
        c.skip_ws();
        if (!c.done() && c.peek() == '#')
            while (!c.done() && c.peek() != '\n') c.take();
    }
    return table;
}

} // namespace hjd
