#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "coop/errors.hpp"
#include "scenario.hpp"

namespace fs = std::filesystem;
using namespace coopsim;

namespace {

void list_scenarios(std::ostream& out) {
    std::size_t w = 0;
    for (const auto& s : registry()) w = std::max(w, s.name.size());
    for (const auto& s : registry()) {
        out << s.name << std::string(w + 2 - s.name.size(), ' ') << "[" << s.module << ", " << s.figure << "] " << s.summary;
        if (!s.regimes.empty()) {
            out << " (regimes:";
            for (const auto& [k, v] : s.regimes) out << " " << k << (k == s.default_regime ? "*" : "");
            out << ")";
        }
        out << "\n";
    }
}

void describe(std::ostream& out, const Scenario& s) {
    out << s.name << ": " << s.summary << "\n  module: " << s.module << "\n  units: " << s.units << "\n";
    for (const auto& p : s.params) {
        out << "  " << p.key << " (" << type_name(p.type) << (p.unit.empty() ? "" : ", " + p.unit) << ")";
        out << (p.default_value.empty() ? " required" : " = " + p.default_value) << "  " << p.help;
        if (!p.choices.empty()) {
            out << " {";
            for (std::size_t i = 0; i < p.choices.size(); ++i) out << (i ? "|" : "") << p.choices[i];
            out << "}";
        }
        out << "\n";
    }
    for (const auto& [name, vals] : s.regimes) {
        out << "  regime " << name << (name == s.default_regime ? " (default):" : ":");
        for (const auto& [k, v] : vals) out << " " << k << "=" << v;
        out << "\n";
    }
}

std::ofstream open_output(const fs::path& p) {
    std::ofstream f(p);
    if (!f) coop::fail(coop::ErrorKind::Io, "cannot write '" + p.string() + "'");
    return f;
}

void emit(const RunOutput& r, const std::string& format, const std::string& dir) {
    if (dir.empty()) {
        if (format == "json") {
            std::cout << to_json(r.info, r.tables);
            return;
        }
        for (std::size_t i = 0; i < r.tables.size(); ++i) {
            if (i) std::cout << "\n";
            write_csv(std::cout, r.info, r.tables[i]);
        }
        return;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) coop::fail(coop::ErrorKind::Io, "cannot create directory '" + dir + "': " + ec.message());
    if (format == "json") {
        const fs::path p = fs::path(dir) / (r.info.scenario + ".json");
        open_output(p) << to_json(r.info, r.tables);
        std::cerr << "wrote " << p.string() << "\n";
        return;
    }
    for (const auto& t : r.tables) {
        const fs::path p = fs::path(dir) / (r.info.scenario + (t.name.empty() ? "" : "_" + t.name) + ".csv");
        auto f = open_output(p);
        write_csv(f, r.info, t);
        if (!f) coop::fail(coop::ErrorKind::Io, "error writing '" + p.string() + "'");
        std::cerr << "wrote " << p.string() << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coopsim: cooperative light-matter simulations"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    auto* scen = app.add_subcommand("scenario", "list, describe or run scenarios");
    scen->require_subcommand(1);
    scen->add_subcommand("list", "list the available scenarios");

    auto* desc = scen->add_subcommand("describe", "show the parameters of a scenario");
    std::string desc_name;
    desc->add_option("name", desc_name, "scenario name")->required();

    auto* run = scen->add_subcommand("run", "run a scenario by name or from an INI config");
    std::string target, format = "csv", out_dir, regime;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::vector<std::string> sets;
    run->add_option("target", target, "scenario name or path to a .ini config")->required();
    run->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--out", out_dir, "write files into this directory instead of stdout");
    auto* seed_opt = run->add_option("--seed", seed, "random seed (default 1)");
    auto* jobs_opt = run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* regime_opt = run->add_option("--regime", regime, "named parameter preset");
    run->add_option("--set", sets, "parameter override key=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (scen->got_subcommand("list")) {
            list_scenarios(std::cout);
            return 0;
        }
        if (desc->parsed()) {
            describe(std::cout, find_scenario(desc_name));
            return 0;
        }
        RunRequest req;
        const bool is_config = target.size() > 4 && target.substr(target.size() - 4) == ".ini";
        if (is_config)
            req = request_from_config(load_ini(target));
        else
            req.scenario = target;
        if (seed_opt->count()) req.seed = seed;
        if (jobs_opt->count()) req.jobs = jobs;
        if (regime_opt->count()) req.regime = regime;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0)
                coop::fail(coop::ErrorKind::InvalidArgument, "--set expects key=value, got '" + s + "'");
            req.overrides[trim(s.substr(0, eq))] = Override{trim(s.substr(eq + 1)), "--set " + s};
        }
        emit(run_scenario(req), format, out_dir);
        return 0;
    } catch (const coop::Error& e) {
        std::cerr << "coopsim: " << e.what() << "\n";
        return coop::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "coopsim: internal error: " << e.what() << "\n";
        return 3;
    }
}
