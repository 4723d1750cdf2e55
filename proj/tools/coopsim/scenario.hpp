#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "params.hpp"
#include "table.hpp"

namespace coopsim {

inline constexpr const char* kToolVersion = "coopsim 1.0.0";

struct RunContext {
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

using RunFn = std::function<std::vector<Table>(const ParamTable&, const RunContext&)>;

struct Scenario {
    std::string name;
    std::string module;
    std::string figure;
    std::string summary;
    std::string units;
    std::vector<ParamSpec> params;
    std::map<std::string, std::map<std::string, std::string>> regimes;
    std::string default_regime;
    RunFn run;
};

const std::vector<Scenario>& registry();
const Scenario& find_scenario(const std::string& name);

struct Override {
    std::string value;
    std::string where; // origin for error messages, e.g. "run.ini:7:5" or "--set"
};

struct RunRequest {
    std::string scenario;
    std::map<std::string, Override> overrides;
    std::optional<std::string> regime;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct RunOutput {
    RunInfo info;
    std::vector<Table> tables;
};

// [run] scenario (required), seed, regime, jobs; [params] key = value overrides
RunRequest request_from_config(const IniDocument& doc);

// resolves defaults < regime < overrides, validates every value, then runs
RunOutput run_scenario(const RunRequest& req);

// Evaluates f(0..n-1) on up to `jobs` threads; results keep index order and the first
// exception by index is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, F&& f) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const unsigned workers = unsigned(std::max<std::size_t>(1, std::min<std::size_t>(jobs ? jobs : 1, n)));
    std::size_t next = 0;
    std::mutex m;
    auto work = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next >= n) return;
                i = next++;
            }
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace coopsim
