#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace coopsim {

struct ConfigValue {
    std::string text;
    int line = 0;
    int column = 0; // 1-based column of the value
};

// INI-style document: [section] headers, key = value lines, '#' or ';' comments.
// Keys before the first header belong to section "run".
struct IniDocument {
    std::string source;
    std::map<std::string, std::map<std::string, ConfigValue>> sections;

    bool has(const std::string& section, const std::string& key) const;
    const ConfigValue* find(const std::string& section, const std::string& key) const;
    std::string where(const ConfigValue& v) const; // "source:line:column"
};

IniDocument parse_ini(std::istream& in, const std::string& source);
IniDocument load_ini(const std::string& path);

// trims ASCII whitespace on both ends
std::string trim(const std::string& s);
std::vector<std::string> split_list(const std::string& s);

} // namespace coopsim
