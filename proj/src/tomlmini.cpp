#include <klr/tomlmini.hpp>

#include <cctype>
#include <stdexcept>

namespace klr {

const std::string& TomlValue::as_string() const {
    if (kind != Kind::Str) throw std::domain_error("config value is not a string");
    return s;
}

long long TomlValue::as_int() const {
    if (kind != Kind::Integer) throw std::domain_error("config value is not an integer");
    return i;
}

bool TomlValue::as_bool() const {
    if (kind != Kind::Bool) throw std::domain_error("config value is not a boolean");
    return b;
}

std::vector<int> TomlValue::as_int_array() const {
    if (kind != Kind::Array) throw std::domain_error("config value is not an array");
    std::vector<int> out;
    for (const auto& v : arr) out.push_back(static_cast<int>(v.as_int()));
    return out;
}

std::vector<std::vector<int>> TomlValue::as_int_matrix() const {
    if (kind != Kind::Array) throw std::domain_error("config value is not an array");
    std::vector<std::vector<int>> out;
    for (const auto& v : arr) out.push_back(v.as_int_array());
    return out;
}

namespace {

struct Cursor {
    const std::string& line;
    std::size_t pos = 0;
    int lineno;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::domain_error("config line " + std::to_string(lineno) + ": " + what);
    }
    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= line.size() || line[pos] == '#';
    }
    char peek() const { return pos < line.size() ? line[pos] : '\0'; }
};

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c) {
    TomlValue v;
    v.kind = TomlValue::Kind::Array;
    ++c.pos; // consume [
    c.skip_ws();
    if (c.peek() == ']') {
        ++c.pos;
        return v;
    }
    for (;;) {
        v.arr.push_back(parse_value(c));
        c.skip_ws();
        if (c.peek() == ',') {
            ++c.pos;
            c.skip_ws();
            continue;
        }
        if (c.peek() == ']') {
            ++c.pos;
            return v;
        }
        c.fail("expected ',' or ']' in array");
    }
}

TomlValue parse_value(Cursor& c) {
    c.skip_ws();
    const char ch = c.peek();
    if (ch == '[') return parse_array(c);
    TomlValue v;
    if (ch == '"') {
        v.kind = TomlValue::Kind::Str;
        ++c.pos;
        while (c.peek() != '"') {
            if (c.peek() == '\0') c.fail("unterminated string");
            if (c.peek() == '\\') {
                ++c.pos;
                const char esc = c.peek();
                if (esc != '"' && esc != '\\') c.fail("unsupported escape");
            }
            v.s += c.line[c.pos++];
        }
        ++c.pos;
        return v;
    }
    if (ch == 't' || ch == 'f') {
        v.kind = TomlValue::Kind::Bool;
        if (c.line.compare(c.pos, 4, "true") == 0) {
            v.b = true;
            c.pos += 4;
        } else if (c.line.compare(c.pos, 5, "false") == 0) {
            v.b = false;
            c.pos += 5;
        } else {
            c.fail("expected a value");
        }
        return v;
    }
    if (ch == '-' || ch == '+' || std::isdigit(static_cast<unsigned char>(ch))) {
        v.kind = TomlValue::Kind::Integer;
        std::size_t start = c.pos;
        if (ch == '-' || ch == '+') ++c.pos;
        if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected digits");
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
        try {
            v.i = std::stoll(c.line.substr(start, c.pos - start));
        } catch (const std::exception&) {
            c.fail("integer out of range");
        }
        return v;
    }
    c.fail("expected a value");
}

bool bare_key_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

} // namespace

std::map<std::string, TomlValue> parse_toml(const std::string& text) {
    std::map<std::string, TomlValue> out;
    std::string section;
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        start = end + 1;
        ++lineno;
        Cursor c{line, 0, lineno};
        if (c.done()) continue;
        if (c.peek() == '[') {
            ++c.pos;
            c.skip_ws();
            std::string name;
            while (bare_key_char(c.peek())) name += c.line[c.pos++];
            c.skip_ws();
            if (name.empty() || c.peek() != ']') c.fail("malformed section header");
            ++c.pos;
            if (!c.done()) c.fail("trailing text after section header");
            section = name;
            continue;
        }
        std::string key;
        while (bare_key_char(c.peek())) key += c.line[c.pos++];
        if (key.empty()) c.fail("expected a key");
        c.skip_ws();
        if (c.peek() != '=') c.fail("expected '=' after key");
        ++c.pos;
        TomlValue v = parse_value(c);
        if (!c.done()) c.fail("trailing text after value");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full)) c.fail("duplicate key " + full);
        out.emplace(full, std::move(v));
    }
    return out;
}

} // namespace klr
