#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "stirap/dynamics.hpp"
#include "stirap/model.hpp"
#include "stirap/sweeps.hpp"

namespace stirap {

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_number(double x);

/// Header: t,P1..P14,Pe,F,norm_or_trace. One row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);
std::string trajectory_csv(const Trajectory& tr);

struct SweepCsvOptions {
    /// wall_ms is the only non-deterministic column.
    bool include_timing = true;
};

/// Columns: swept parameters, F, P1, P11, P12, maxPe, [wall_ms], [mu], status.
void write_sweep_csv(std::ostream& out, const SweepResult& result, SweepCsvOptions opt = {});
std::string sweep_csv(const SweepResult& result, SweepCsvOptions opt = {});

nlohmann::json to_json(const SystemParams& p);
nlohmann::json to_json(const IntegratorConfig& cfg);
nlohmann::json to_json(const SweepResult& result, SweepCsvOptions opt = {});

/// Reads keys present in `j` over `p`; unknown keys throw ConfigError. Values
/// are not validated here.
void merge_json(SystemParams& p, const nlohmann::json& j);
void merge_json(IntegratorConfig& cfg, const nlohmann::json& j);

/// Column-oriented view of a numeric CSV file written by this library.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  ///< -1 if absent
    std::vector<double> numbers(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace stirap
