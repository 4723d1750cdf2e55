#include "ensemble_io.hpp"

#include <cstdio>
#include <fstream>

#include "coop/errors.hpp"
#include "params.hpp"

namespace coopsim {

using coop::ErrorKind;
using coop::fail;

namespace {

std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string vec3(const Eigen::Vector3d& v) { return exact(v.x()) + ", " + exact(v.y()) + ", " + exact(v.z()); }

Eigen::Vector3d parse_vec3(const IniDocument& doc, const ConfigValue& v, const std::string& key) {
    const auto parts = split_list(v.text);
    if (parts.size() != 3) fail(ErrorKind::InvalidArgument, doc.where(v) + ": '" + key + "' needs three components");
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) out[i] = parse_real(parts[std::size_t(i)], key);
    return out;
}

const ConfigValue& need(const IniDocument& doc, const std::string& section, const std::string& key) {
    const ConfigValue* v = doc.find(section, key);
    if (!v) fail(ErrorKind::InvalidArgument, doc.source + ": missing required key '" + key + "' in section [" + section + "]");
    return *v;
}

} // namespace

void write_ensemble(std::ostream& out, const coop::EmitterEnsemble& e) {
    out << "[ensemble]\n";
    out << "dipole = " << vec3(e.dipole) << "\n";
    out << "omega0 = " << exact(e.omega0) << "\n";
    out << "gamma = " << exact(e.gamma) << "\n";
    out << "count = " << e.size() << "\n\n[positions]\n";
    for (std::size_t i = 0; i < e.size(); ++i) out << i << " = " << vec3(e.positions[i]) << "\n";
}

coop::EmitterEnsemble read_ensemble(const IniDocument& doc) {
    coop::EmitterEnsemble e;
    e.dipole = parse_vec3(doc, need(doc, "ensemble", "dipole"), "dipole");
    e.omega0 = parse_real(need(doc, "ensemble", "omega0").text, "omega0");
    e.gamma = parse_real(need(doc, "ensemble", "gamma").text, "gamma");
    const auto& cv = need(doc, "ensemble", "count");
    const int n = parse_integer(cv.text, "count");
    if (n < 1) fail(ErrorKind::InvalidArgument, doc.where(cv) + ": 'count' must be >= 1");
    for (int i = 0; i < n; ++i) {
        const std::string key = std::to_string(i);
        e.positions.push_back(parse_vec3(doc, need(doc, "positions", key), "position " + key));
    }
    if (auto it = doc.sections.find("positions"); it != doc.sections.end() && it->second.size() != std::size_t(n))
        fail(ErrorKind::InvalidArgument, doc.source + ": [positions] has " + std::to_string(it->second.size()) +
                                             " entries but count = " + std::to_string(n));
    e.validate();
    return e;
}

coop::EmitterEnsemble load_ensemble(const std::string& path) { return read_ensemble(load_ini(path)); }

void save_ensemble(const std::string& path, const coop::EmitterEnsemble& e) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::Io, "cannot write '" + path + "'");
    write_ensemble(f, e);
    if (!f) fail(ErrorKind::Io, "error writing '" + path + "'");
}

} // namespace coopsim
