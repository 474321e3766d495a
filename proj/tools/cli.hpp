#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qhtk::cli {

// Everything a command run depends on. Defaults are total: after
// parsing, every field has a value, so equal configs (seed included)
// give byte-identical CSV.
struct RunConfig {
    std::string command;
    int n = 2;
    int Q = 9;
    int samples = 100;
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerances; // --tol name=value overrides
    std::string format = "csv";               // csv | json
    std::string out_path;                     // empty: caller prints output
    std::string suite = "all";
    std::vector<double> radii;                // --radius, repeatable
    std::string matrix_file;
    std::string point_a;
    std::string point_b;
    std::string model = "half_space"; // half_space | ball

    double tol(const std::string& name, double fallback) const;
};

// Exit codes: 0 success, 1 property violation, 2 usage/config,
// 3 domain rejection.
struct CmdResult {
    int exit_code = 0;
    std::string output;      // the report body (CSV or JSON)
    std::string diagnostics; // human-readable notes, stderr-bound
};

CmdResult cmd_constants(const RunConfig& cfg);
CmdResult cmd_verify(const RunConfig& cfg);
CmdResult cmd_certify(const RunConfig& cfg);
CmdResult cmd_volume(const RunConfig& cfg);
CmdResult cmd_distance(const RunConfig& cfg);

// argv-level entry (without the program name): parse, dispatch, honor
// --out. Fills out/err, returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err);

} // namespace qhtk::cli
