#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "coop/errors.hpp"
#include "ensemble_io.hpp"
#include "json.hpp"
#include "scenario.hpp"

using namespace coopsim;

namespace {

IniDocument ini(const std::string& text) {
    std::istringstream in(text);
    return parse_ini(in, "cfg.ini");
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const coop::Error& e) {
        return e.what();
    }
    return "";
}

coop::ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const coop::Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return coop::ErrorKind::Numerical;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

// CSV text without the timestamp line
std::string csv_body(const RunOutput& r) {
    std::ostringstream out;
    for (const auto& t : r.tables) write_csv(out, r.info, t);
    std::istringstream in(out.str());
    std::string line, body;
    while (std::getline(in, line))
        if (line.rfind("# generated:", 0) != 0) body += line + "\n";
    return body;
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(COOPSIM_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("INI parsing") {
    auto doc = ini("scenario = fig22b  # trailing comment\n; full comment\n[params]\nkr_max = 5\npoints=10\n");
    REQUIRE(doc.find("run", "scenario"));
    CHECK(doc.find("run", "scenario")->text == "fig22b");
    CHECK(doc.find("params", "kr_max")->text == "5");
    CHECK(doc.find("params", "points")->line == 5);
    CHECK(doc.where(*doc.find("params", "kr_max")) == "cfg.ini:4:10");
    CHECK(doc.find("params", "missing") == nullptr);
}

TEST_CASE("INI errors carry line and column") {
    CHECK(contains(error_of([] { ini("[run]\nscenario = x\n[params\n"); }), "cfg.ini:3:"));
    CHECK(contains(error_of([] { ini("[run]\nscenario x\n"); }), "cfg.ini:2:"));
    CHECK(contains(error_of([] { ini("[run]\nscenario = a\nscenario = b\n"); }), "cfg.ini:3:1"));
    CHECK(contains(error_of([] { ini("[bad name]\n"); }), "cfg.ini:1:"));
    CHECK(kind_of([] { load_ini("/nonexistent/dir/x.ini"); }) == coop::ErrorKind::Io);
}

TEST_CASE("config schema") {
    const auto msg = error_of([] { request_from_config(ini("[params]\na = 1\n")); });
    CHECK(contains(msg, "'scenario'"));
    CHECK(contains(error_of([] { request_from_config(ini("scenario = fig22b\n[extra]\nk = 1\n")); }), "[extra]"));
    CHECK(contains(error_of([] { request_from_config(ini("scenario = fig22b\ncolour = red\n")); }), "'colour'"));
    CHECK(contains(error_of([] { request_from_config(ini("scenario = fig22b\nseed = -3\n")); }), "cfg.ini:2:"));

    auto req = request_from_config(ini("scenario = fig22b\nseed = 9\njobs = 2\n[params]\npoints = 7\n"));
    CHECK(req.scenario == "fig22b");
    CHECK(req.seed == 9);
    CHECK(req.jobs == 2);
    REQUIRE(req.overrides.count("points"));
    CHECK(req.overrides.at("points").where == "cfg.ini:5:10");
}

TEST_CASE("registry") {
    std::set<std::string> names;
    for (const auto& s : registry()) {
        CHECK(names.insert(s.name).second);
        CHECK_FALSE(s.units.empty());
        CHECK_FALSE(s.module.empty());
        for (const auto& p : s.params)
            if (!p.default_value.empty()) CHECK_NOTHROW(check_value(p, p.default_value, s.name));
        for (const auto& [r, vals] : s.regimes)
            for (const auto& [k, v] : vals) {
                auto it = std::find_if(s.params.begin(), s.params.end(), [&](const ParamSpec& p) { return p.key == k; });
                REQUIRE(it != s.params.end());
                CHECK_NOTHROW(check_value(*it, v, s.name + "/" + r));
            }
    }
    for (const char* tag : {"fig22b", "fig23b", "fig24b", "fig31", "fig32c", "fig33a", "fig33b", "fig33c", "fig34c",
                            "fig34d", "fig34e", "fig34f", "fig41", "fig51", "fig52b", "fig52c", "fig53", "fig64"})
        CHECK(names.count(tag) == 1);
    CHECK(contains(error_of([] { find_scenario("fig99"); }), "'fig99'"));
}

TEST_CASE("parameter validation names the key") {
    RunRequest req;
    req.scenario = "fig22b";
    req.overrides["wavelength"] = {"1", "--set"};
    CHECK(contains(error_of([&] { run_scenario(req); }), "'wavelength'"));
    req.overrides.clear();
    req.overrides["points"] = {"ten", "cfg.ini:4:10"};
    const auto msg = error_of([&] { run_scenario(req); });
    CHECK(contains(msg, "'points'"));
    CHECK(contains(msg, "cfg.ini:4:10"));
    req.overrides["points"] = {"1", "--set"};
    CHECK(kind_of([&] { run_scenario(req); }) == coop::ErrorKind::InvalidArgument);

    RunRequest bad_choice;
    bad_choice.scenario = "couplings";
    bad_choice.overrides["orientation"] = {"w", "--set"};
    CHECK(contains(error_of([&] { run_scenario(bad_choice); }), "'orientation'"));
}

TEST_CASE("regimes") {
    RunRequest req;
    req.scenario = "fig53";
    req.overrides["points"] = {"5", "--set"};
    req.overrides["t_points"] = {"5", "--set"};
    auto bad = run_scenario(req);
    CHECK(bad.info.regime == "bad");
    auto has = [](const RunOutput& r, const std::string& k, const std::string& v) {
        for (const auto& [pk, pv] : r.info.params)
            if (pk == k) return pv == v;
        return false;
    };
    CHECK(has(bad, "kappa", "40"));
    req.regime = "good";
    CHECK(has(run_scenario(req), "kappa", "0.1"));
    req.overrides["kappa"] = {"2", "--set"};
    CHECK(has(run_scenario(req), "kappa", "2"));
    req.regime = "awful";
    CHECK(contains(error_of([&] { run_scenario(req); }), "'awful'"));

    RunRequest none;
    none.scenario = "fig22b";
    none.regime = "bad";
    CHECK(kind_of([&] { run_scenario(none); }) == coop::ErrorKind::InvalidArgument);
}

TEST_CASE("outputs are deterministic for a fixed seed") {
    RunRequest req;
    req.scenario = "disorder";
    req.overrides["n"] = {"200", "--set"};
    req.overrides["draws"] = {"10", "--set"};
    req.overrides["points"] = {"4", "--set"};
    req.seed = 42;
    const auto a = csv_body(run_scenario(req));
    req.jobs = 3;
    const auto b = csv_body(run_scenario(req));
    CHECK(a == b);
    req.seed = 43;
    CHECK(csv_body(run_scenario(req)) != a);
    CHECK(contains(a, "# seed: 42"));
    CHECK(contains(a, "# units: "));
    CHECK(contains(a, "# tool: coopsim"));
    CHECK(contains(a, "# param draws = 10"));
}

TEST_CASE("CSV and JSON layout") {
    RunRequest req;
    req.scenario = "fig22b";
    req.overrides["points"] = {"3", "--set"};
    auto r = run_scenario(req);
    std::ostringstream out;
    write_csv(out, r.info, r.tables.at(0));
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> data;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') data.push_back(line);
    REQUIRE(data.size() == 4);
    CHECK(data[0] == "k0a,omega12_parallel,gamma12_parallel,omega12_perpendicular,gamma12_perpendicular");
    CHECK(data[1].rfind("0.2,", 0) == 0);

    Table t;
    t.columns = {{"x", "1"}};
    t.add_row({std::nan("")});
    CHECK_THROWS_AS(t.add_row({1.0, 2.0}), coop::Error);
    auto j = nlohmann::json::parse(to_json(r.info, {t}));
    CHECK(j["metadata"]["scenario"] == "fig22b");
    CHECK(j["tables"][0]["rows"][0][0].is_null());
}

TEST_CASE("ensemble files round-trip exactly") {
    auto e = coop::build_ring(7, 0.37, true, Eigen::Vector3d(1.0, 2.0, 0.5));
    e.omega0 = 0.25;
    std::ostringstream out;
    write_ensemble(out, e);
    auto back = read_ensemble(ini(out.str()));
    REQUIRE(back.size() == e.size());
    CHECK(back.dipole == e.dipole);
    CHECK(back.omega0 == e.omega0);
    CHECK(back.gamma == e.gamma);
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(back.positions[i] == e.positions[i]);
    CHECK(contains(error_of([] { read_ensemble(ini("[ensemble]\ndipole = 0, 0, 1\nomega0 = 0\ngamma = 1\n")); }),
                   "'count'"));
    CHECK(contains(error_of([] {
                       read_ensemble(ini("[ensemble]\ndipole = 0, 0, 1\nomega0 = 0\ngamma = 1\ncount = 2\n[positions]\n0 = 0, 0, 0\n"));
                   }),
                   "'1'"));
}

TEST_CASE("parallel_map keeps order and reports the first failure") {
    auto v = parallel_map<int>(50, 4, [](std::size_t i) { return int(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == int(i * i));
    try {
        parallel_map<int>(20, 3, [](std::size_t i) -> int {
            if (i == 5 || i == 11) throw std::runtime_error("at " + std::to_string(i));
            return 0;
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "at 5");
    }
}

TEST_CASE("exit codes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "coopsim_cli_test";
    fs::create_directories(dir);
    CHECK(run_tool("scenario list") == 0);
    CHECK(run_tool("scenario run fig22b --set points=5") == 0);
    CHECK(run_tool("scenario run nosuch") == 2);
    CHECK(run_tool("scenario run fig22b --set points=abc") == 2);
    CHECK(run_tool("scenario run fig22b --bogus-flag") == 2);
    {
        std::ofstream f(dir / "missing.ini");
        f << "[params]\npoints = 5\n";
    }
    CHECK(run_tool((dir / "missing.ini").string()) == 2);
    CHECK(run_tool("scenario run " + (dir / "missing.ini").string()) == 2);
    CHECK(run_tool("scenario run " + (dir / "absent.ini").string()) == 4);
    {
        std::ofstream f(dir / "blocker");
        f << "x";
    }
    CHECK(run_tool("scenario run fig22b --set points=5 --out " + (dir / "blocker" / "sub").string()) == 4);
    CHECK(run_tool("scenario run fig32c --set omega1=1 --set omega2=1") == 3);
    {
        std::ofstream f(dir / "ok.ini");
        f << "[run]\nscenario = fig22b\nseed = 3\n[params]\npoints = 4\n";
    }
    CHECK(run_tool("scenario run " + (dir / "ok.ini").string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "fig22b.csv"));
    CHECK(run_tool("scenario run fig53 --format json --set points=3 --set t_points=3 --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "fig53.json"));
    fs::remove_all(dir);
}
