#include "table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include "coop/errors.hpp"
#include "json.hpp"

namespace coopsim {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        coop::fail(coop::ErrorKind::Numerical, "table '" + name + "': row has " + std::to_string(row.size()) +
                                                   " values for " + std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

void Table::note(const std::string& key, double value) { notes.emplace_back(key, format_number(value)); }

void Table::note(const std::string& key, const std::string& value) { notes.emplace_back(key, value); }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_csv(std::ostream& out, const RunInfo& info, const Table& t) {
    out << "# tool: " << info.tool << "\n";
    out << "# scenario: " << info.scenario << (t.name.empty() ? "" : " (" + t.name + ")") << "\n";
    out << "# module: " << info.module << "\n";
    out << "# figure: " << info.figure << "\n";
    if (!info.regime.empty()) out << "# regime: " << info.regime << "\n";
    out << "# seed: " << info.seed << "\n";
    out << "# units: " << info.units << "\n";
    for (const auto& [k, v] : info.params) out << "# param " << k << " = " << v << "\n";
    for (const auto& [k, v] : t.notes) out << "# result " << k << " = " << v << "\n";
    out << "# columns:";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? ", " : " ") << t.columns[i].name << " [" << t.columns[i].unit << "]";
    out << "\n";
    out << "# generated: " << info.generated << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i].name;
    out << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
        out << "\n";
    }
}

std::string to_json(const RunInfo& info, const std::vector<Table>& tables) {
    using nlohmann::ordered_json;
    ordered_json j;
    ordered_json meta;
    meta["tool"] = info.tool;
    meta["scenario"] = info.scenario;
    meta["module"] = info.module;
    meta["figure"] = info.figure;
    if (!info.regime.empty()) meta["regime"] = info.regime;
    meta["seed"] = info.seed;
    meta["units"] = info.units;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : info.params) params[k] = v;
    meta["params"] = params;
    meta["generated"] = info.generated;
    j["metadata"] = meta;
    j["tables"] = ordered_json::array();
    for (const auto& t : tables) {
        ordered_json jt;
        jt["name"] = t.name.empty() ? info.scenario : t.name;
        ordered_json notes = ordered_json::object();
        for (const auto& [k, v] : t.notes) notes[k] = v;
        jt["results"] = notes;
        jt["columns"] = ordered_json::array();
        for (const auto& c : t.columns) jt["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
        jt["rows"] = ordered_json::array();
        for (const auto& r : t.rows) {
            ordered_json row = ordered_json::array();
            for (double v : r) {
                if (std::isfinite(v))
                    row.push_back(v);
                else
                    row.push_back(nullptr);
            }
            jt["rows"].push_back(row);
        }
        j["tables"].push_back(jt);
    }
    return j.dump(2) + "\n";
}

} // namespace coopsim
