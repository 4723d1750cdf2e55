#pragma once

#include <map>
#include <string>
#include <vector>

namespace coopsim {

enum class ParamType { Real, Integer, Text, RealList, IntList };

const char* type_name(ParamType t);

struct ParamSpec {
    std::string key;
    ParamType type = ParamType::Real;
    std::string default_value; // empty means required
    std::string unit;
    std::string help;
    std::vector<std::string> choices; // Text only, empty = free text
};

// Validated key/value table for one scenario run. Values keep their textual form so the
// output header can echo them exactly.
class ParamTable {
public:
    ParamTable() = default;
    ParamTable(std::vector<ParamSpec> specs, std::map<std::string, std::string> values);

    double real(const std::string& key) const;
    int integer(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<int> integers(const std::string& key) const;

    // (key, value) in declaration order
    std::vector<std::pair<std::string, std::string>> listing() const;

private:
    const std::string& raw(const std::string& key, ParamType expected) const;
    std::vector<ParamSpec> specs_;
    std::map<std::string, std::string> values_;
};

// Checks the textual form against the type; `where` prefixes the error message.
void check_value(const ParamSpec& spec, const std::string& value, const std::string& where);

double parse_real(const std::string& s, const std::string& key);
int parse_integer(const std::string& s, const std::string& key);

} // namespace coopsim
