#include <algorithm>
#include <charconv>

#include "coop/errors.hpp"
#include "scenario.hpp"

namespace coopsim {

using coop::ErrorKind;
using coop::fail;

const Scenario& find_scenario(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return s;
    fail(ErrorKind::InvalidArgument, "unknown scenario '" + name + "' (see 'coopsim scenario list')");
}

namespace {

std::uint64_t parse_seed(const std::string& text, const std::string& where) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        fail(ErrorKind::InvalidArgument, where + ": 'seed' must be a non-negative integer, got '" + text + "'");
    return v;
}

} // namespace

RunRequest request_from_config(const IniDocument& doc) {
    for (const auto& [name, keys] : doc.sections) {
        if (name == "run" || name == "params") continue;
        const auto& first = keys.empty() ? ConfigValue{} : keys.begin()->second;
        fail(ErrorKind::InvalidArgument, (keys.empty() ? doc.source : doc.where(first)) + ": unknown section [" + name +
                                             "] (expected [run] and [params])");
    }
    RunRequest req;
    const ConfigValue* sc = doc.find("run", "scenario");
    if (!sc) fail(ErrorKind::InvalidArgument, doc.source + ": missing required key 'scenario' in section [run]");
    req.scenario = sc->text;
    if (auto it = doc.sections.find("run"); it != doc.sections.end()) {
        for (const auto& [key, v] : it->second) {
            if (key == "scenario") continue;
            if (key == "seed")
                req.seed = parse_seed(v.text, doc.where(v));
            else if (key == "regime")
                req.regime = v.text;
            else if (key == "jobs") {
                const int j = parse_integer(v.text, "jobs");
                if (j < 1) fail(ErrorKind::InvalidArgument, doc.where(v) + ": 'jobs' must be >= 1");
                req.jobs = unsigned(j);
            } else
                fail(ErrorKind::InvalidArgument, doc.where(v) + ": unknown key '" + key + "' in section [run]");
        }
    }
    if (auto it = doc.sections.find("params"); it != doc.sections.end())
        for (const auto& [key, v] : it->second) req.overrides[key] = Override{v.text, doc.where(v)};
    return req;
}

RunOutput run_scenario(const RunRequest& req) {
    const Scenario& s = find_scenario(req.scenario);
    std::map<std::string, std::string> values;
    for (const auto& p : s.params)
        if (!p.default_value.empty()) values[p.key] = p.default_value;

    std::string regime;
    if (req.regime) {
        if (s.regimes.empty())
            fail(ErrorKind::InvalidArgument, "scenario '" + s.name + "' has no regimes (got --regime " + *req.regime + ")");
        auto r = s.regimes.find(*req.regime);
        if (r == s.regimes.end()) {
            std::string opts;
            for (const auto& [k, v] : s.regimes) opts += (opts.empty() ? "" : ", ") + k;
            fail(ErrorKind::InvalidArgument, "scenario '" + s.name + "': unknown regime '" + *req.regime + "' (one of " + opts + ")");
        }
        regime = r->first;
    } else if (!s.regimes.empty()) {
        regime = s.default_regime;
    }
    if (!regime.empty())
        for (const auto& [k, v] : s.regimes.at(regime)) values[k] = v;

    for (const auto& [key, ov] : req.overrides) {
        auto spec = std::find_if(s.params.begin(), s.params.end(), [&](const ParamSpec& p) { return p.key == key; });
        if (spec == s.params.end())
            fail(ErrorKind::InvalidArgument, ov.where + ": unknown parameter '" + key + "' for scenario '" + s.name + "'");
        check_value(*spec, ov.value, ov.where);
        values[key] = ov.value;
    }
    for (const auto& p : s.params) {
        auto v = values.find(p.key);
        if (v == values.end())
            fail(ErrorKind::InvalidArgument, "scenario '" + s.name + "': missing required parameter '" + p.key + "'");
        check_value(p, v->second, "");
    }

    ParamTable table(s.params, values);
    RunContext ctx{req.seed, std::max(1u, req.jobs)};
    RunOutput out;
    try {
        out.tables = s.run(table, ctx);
    } catch (const coop::Error& e) {
        std::string msg = e.what();
        const std::string prefix = std::string(coop::kind_name(e.kind())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        fail(e.kind(), "scenario '" + s.name + "' [" + s.module + "]: " + msg);
    }
    out.info.tool = kToolVersion;
    out.info.scenario = s.name;
    out.info.module = s.module;
    out.info.figure = s.figure;
    out.info.regime = regime;
    out.info.units = s.units;
    out.info.seed = req.seed;
    out.info.params = table.listing();
    out.info.generated = utc_timestamp();
    return out;
}

} // namespace coopsim
