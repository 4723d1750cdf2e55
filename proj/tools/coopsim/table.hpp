#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace coopsim {

struct Column {
    std::string name;
    std::string unit; // "1" for dimensionless
};

struct Table {
    std::string name; // file suffix; empty for a scenario's main table
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> notes; // derived scalars echoed in the header

    void add_row(std::vector<double> row);
    void note(const std::string& key, double value);
    void note(const std::string& key, const std::string& value);
};

struct RunInfo {
    std::string tool;
    std::string scenario;
    std::string module;
    std::string figure;
    std::string regime;
    std::string units;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::string generated; // UTC timestamp, the only line that varies between identical runs
};

std::string format_number(double v);
std::string utc_timestamp();

void write_csv(std::ostream& out, const RunInfo& info, const Table& t);
std::string to_json(const RunInfo& info, const std::vector<Table>& tables);

} // namespace coopsim
