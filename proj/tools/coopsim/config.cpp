#include "config.hpp"

#include <cctype>
#include <fstream>

#include "coop/errors.hpp"

namespace coopsim {

using coop::ErrorKind;
using coop::fail;

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    return true;
}

[[noreturn]] void parse_error(const std::string& source, int line, int col, const std::string& what) {
    fail(ErrorKind::InvalidArgument,
         source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

} // namespace

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (is_space(s[b]) || s[b] == '\n')) ++b;
    while (e > b && (is_space(s[e - 1]) || s[e - 1] == '\n')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

bool IniDocument::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const ConfigValue* IniDocument::find(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

std::string IniDocument::where(const ConfigValue& v) const {
    return source + ":" + std::to_string(v.line) + ":" + std::to_string(v.column);
}

IniDocument parse_ini(std::istream& in, const std::string& source) {
    IniDocument doc;
    doc.source = source;
    std::string section = "run";
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::size_t p = 0;
        while (p < raw.size() && is_space(raw[p])) ++p;
        if (p == raw.size() || raw[p] == '#' || raw[p] == ';') continue;
        const int col = int(p) + 1;
        if (raw[p] == '[') {
            const std::size_t close = raw.find(']', p);
            if (close == std::string::npos) parse_error(source, line, int(raw.size()) + 1, "expected ']' to close the section header");
            const std::string name = trim(raw.substr(p + 1, close - p - 1));
            if (!valid_name(name)) parse_error(source, line, col + 1, "invalid section name '" + name + "'");
            std::size_t q = close + 1;
            while (q < raw.size() && is_space(raw[q])) ++q;
            if (q < raw.size() && raw[q] != '#' && raw[q] != ';')
                parse_error(source, line, int(q) + 1, "unexpected text after section header");
            section = name;
            doc.sections[section];
            continue;
        }
        const std::size_t eq = raw.find('=', p);
        if (eq == std::string::npos) parse_error(source, line, col, "expected 'key = value'");
        const std::string key = trim(raw.substr(p, eq - p));
        if (!valid_name(key)) parse_error(source, line, col, "invalid key '" + key + "'");
        std::size_t v = eq + 1;
        while (v < raw.size() && is_space(raw[v])) ++v;
        std::string value = raw.substr(v);
        // inline comments need a preceding blank
        for (std::size_t i = 1; i < value.size(); ++i) {
            if ((value[i] == '#' || value[i] == ';') && is_space(value[i - 1])) {
                value.resize(i);
                break;
            }
        }
        value = trim(value);
        auto& sec = doc.sections[section];
        if (sec.count(key)) parse_error(source, line, col, "duplicate key '" + key + "' in section [" + section + "]");
        sec[key] = ConfigValue{value, line, int(v) + 1};
    }
    return doc;
}

IniDocument load_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open config file '" + path + "'");
    return parse_ini(in, path);
}

} // namespace coopsim
