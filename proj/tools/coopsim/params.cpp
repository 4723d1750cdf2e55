#include "params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "config.hpp"
#include "coop/errors.hpp"

namespace coopsim {

using coop::ErrorKind;
using coop::fail;

const char* type_name(ParamType t) {
    switch (t) {
    case ParamType::Real: return "real";
    case ParamType::Integer: return "integer";
    case ParamType::Text: return "text";
    case ParamType::RealList: return "list of reals";
    case ParamType::IntList: return "list of integers";
    }
    return "?";
}

namespace {

bool try_real(const std::string& s, double& v) {
    const std::string t = trim(s);
    char* end = nullptr;
    v = std::strtod(t.c_str(), &end);
    return !t.empty() && end == t.c_str() + t.size() && std::isfinite(v);
}

bool try_integer(const std::string& s, int& v) {
    const std::string t = trim(s);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    return !t.empty() && ec == std::errc() && ptr == t.data() + t.size();
}

} // namespace

double parse_real(const std::string& s, const std::string& key) {
    double v = 0.0;
    if (!try_real(s, v))
        fail(ErrorKind::InvalidArgument, "parameter '" + key + "': expected a real number, got '" + s + "'");
    return v;
}

int parse_integer(const std::string& s, const std::string& key) {
    int v = 0;
    if (!try_integer(s, v))
        fail(ErrorKind::InvalidArgument, "parameter '" + key + "': expected an integer, got '" + s + "'");
    return v;
}

void check_value(const ParamSpec& spec, const std::string& value, const std::string& where) {
    const std::string at = (where.empty() ? "" : where + ": ") + "parameter '" + spec.key + "': ";
    double r = 0.0;
    int i = 0;
    switch (spec.type) {
    case ParamType::Real:
        if (!try_real(value, r)) fail(ErrorKind::InvalidArgument, at + "expected a real number, got '" + value + "'");
        break;
    case ParamType::Integer:
        if (!try_integer(value, i)) fail(ErrorKind::InvalidArgument, at + "expected an integer, got '" + value + "'");
        break;
    case ParamType::RealList:
        for (const auto& x : split_list(value))
            if (!try_real(x, r)) fail(ErrorKind::InvalidArgument, at + "expected real list entries, got '" + x + "'");
        break;
    case ParamType::IntList:
        for (const auto& x : split_list(value))
            if (!try_integer(x, i)) fail(ErrorKind::InvalidArgument, at + "expected integer list entries, got '" + x + "'");
        break;
    case ParamType::Text:
        if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
            std::string opts;
            for (const auto& c : spec.choices) opts += (opts.empty() ? "" : ", ") + c;
            fail(ErrorKind::InvalidArgument, at + "'" + value + "' is not one of {" + opts + "}");
        }
        break;
    }
}

ParamTable::ParamTable(std::vector<ParamSpec> specs, std::map<std::string, std::string> values)
    : specs_(std::move(specs)), values_(std::move(values)) {}

const std::string& ParamTable::raw(const std::string& key, ParamType expected) const {
    auto s = std::find_if(specs_.begin(), specs_.end(), [&](const ParamSpec& p) { return p.key == key; });
    if (s == specs_.end()) fail(ErrorKind::InvalidArgument, "scenario has no parameter '" + key + "'");
    if (s->type != expected)
        fail(ErrorKind::InvalidArgument, "parameter '" + key + "' is a " + type_name(s->type) + ", not a " +
                                             type_name(expected));
    auto v = values_.find(key);
    if (v == values_.end()) fail(ErrorKind::InvalidArgument, "missing required parameter '" + key + "'");
    return v->second;
}

double ParamTable::real(const std::string& key) const { return parse_real(raw(key, ParamType::Real), key); }

int ParamTable::integer(const std::string& key) const { return parse_integer(raw(key, ParamType::Integer), key); }

const std::string& ParamTable::text(const std::string& key) const { return raw(key, ParamType::Text); }

std::vector<double> ParamTable::reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& x : split_list(raw(key, ParamType::RealList))) out.push_back(parse_real(x, key));
    return out;
}

std::vector<int> ParamTable::integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& x : split_list(raw(key, ParamType::IntList))) out.push_back(parse_integer(x, key));
    return out;
}

std::vector<std::pair<std::string, std::string>> ParamTable::listing() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : specs_) {
        auto v = values_.find(s.key);
        if (v != values_.end()) out.emplace_back(s.key, v->second);
    }
    return out;
}

} // namespace coopsim
