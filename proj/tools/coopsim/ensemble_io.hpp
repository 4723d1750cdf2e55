#pragma once

#include <ostream>
#include <string>

#include "coop/geometry.hpp"
#include "config.hpp"

namespace coopsim {

// [ensemble] dipole, omega0, gamma, count; [positions] i = x, y, z (lambda0)
void write_ensemble(std::ostream& out, const coop::EmitterEnsemble& e);
coop::EmitterEnsemble read_ensemble(const IniDocument& doc);
coop::EmitterEnsemble load_ensemble(const std::string& path);
void save_ensemble(const std::string& path, const coop::EmitterEnsemble& e);

} // namespace coopsim
