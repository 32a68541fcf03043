#include "stirap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stirap/basis.hpp"
#include "stirap/errors.hpp"
#include "stirap/version.hpp"

namespace stirap {
namespace {

using nlohmann::json;

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

template <class T>
void take(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool found = false;
        for (const char* k : known) found = found || key == k;
        if (!found) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
    out << "t";
    for (int i = 1; i <= kDim; ++i) out << ",P" << i;
    out << ",Pe,F,norm_or_trace\n";
    for (std::size_t k = 0; k < tr.size(); ++k) {
        out << format_number(tr.times[k]);
        for (double p : tr.populations[k]) out << ',' << format_number(p);
        out << ',' << format_number(tr.error_probability[k]) << ',' << format_number(tr.fidelity[k]) << ','
            << format_number(tr.norm_or_trace[k]) << '\n';
    }
}

std::string trajectory_csv(const Trajectory& tr) {
    std::ostringstream out;
    write_trajectory_csv(out, tr);
    return out.str();
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, SweepCsvOptions opt) {
    const bool has_mu = std::any_of(result.rows.begin(), result.rows.end(), [](const SweepRow& r) { return r.mu.has_value(); }) ||
                        result.base.apply_overlap;
    for (const auto& name : result.axis_names) out << name << ',';
    out << "F,P1,P11,P12,maxPe";
    if (opt.include_timing) out << ",wall_ms";
    if (has_mu) out << ",mu";
    out << ",status\n";
    for (const auto& row : result.rows) {
        for (double v : row.parameters) out << format_number(v) << ',';
        out << format_number(row.fidelity) << ',' << format_number(row.P1) << ',' << format_number(row.P11) << ','
            << format_number(row.P12) << ',' << format_number(row.max_Pe);
        if (opt.include_timing) out << ',' << format_number(row.wall_ms);
        if (has_mu) out << ',' << (row.mu ? format_number(*row.mu) : "nan");
        out << ',' << quote(row.status) << '\n';
    }
}

std::string sweep_csv(const SweepResult& result, SweepCsvOptions opt) {
    std::ostringstream out;
    write_sweep_csv(out, result, opt);
    return out.str();
}

json to_json(const SystemParams& p) {
    return json{
        {"omega0", p.omega0},
        {"gA", p.gA},
        {"gB", p.gB},
        {"nu", p.nu},
        {"N", p.N},
        {"tau", p.tau},
        {"t0", p.t0},
        {"kappa_cav", p.kappa_cav},
        {"kappa_fib", p.kappa_fib},
        {"gamma", p.gamma},
        {"branching_A", p.branching_A},
        {"branching_B", p.branching_B},
        {"apply_overlap", p.apply_overlap},
        {"compensate_drive", p.compensate_drive},
    };
}

json to_json(const IntegratorConfig& cfg) {
    return json{
        {"t_start", cfg.t_start},
        {"t_end", cfg.t_end},
        {"abs_tol", cfg.abs_tol},
        {"rel_tol", cfg.rel_tol},
        {"max_step", cfg.max_step},
        {"sample_interval", cfg.sample_interval},
        {"method", to_string(cfg.method)},
    };
}

json to_json(const SweepResult& result, SweepCsvOptions opt) {
    json rows = json::array();
    for (const auto& row : result.rows) {
        json params = json::object();
        for (std::size_t a = 0; a < result.axis_names.size(); ++a) params[result.axis_names[a]] = row.parameters[a];
        auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
        json r{
            {"index", row.index},
            {"parameters", params},
            {"resolved", to_json(row.resolved)},
            {"F", num(row.fidelity)},
            {"P1", num(row.P1)},
            {"P11", num(row.P11)},
            {"P12", num(row.P12)},
            {"maxPe", num(row.max_Pe)},
            {"status", row.status},
        };
        if (row.mu) r["mu"] = *row.mu;
        if (opt.include_timing) r["wall_ms"] = row.wall_ms;
        rows.push_back(std::move(r));
    }
    return json{
        {"version", kVersion},
        {"axes", result.axis_names},
        {"base", to_json(result.base)},
        {"integrator", to_json(result.integrator)},
        {"schedule", result.schedule_description},
        {"workers", result.workers},
        {"rows", rows},
    };
}

void merge_json(SystemParams& p, const json& j) {
    reject_unknown(j,
                   {"omega0", "gA", "gB", "g", "nu", "N", "tau", "t0", "kappa", "kappa_cav", "kappa_fib", "gamma",
                    "branching_A", "branching_B", "apply_overlap", "compensate_drive"},
                   "params");
    try {
        take(j, "omega0", p.omega0);
        if (j.contains("g")) p.gA = p.gB = j.at("g").get<double>();
        take(j, "gA", p.gA);
        take(j, "gB", p.gB);
        take(j, "nu", p.nu);
        if (j.contains("N")) {
            const auto& n = j.at("N");
            if (!n.is_number_integer()) throw ParamError("N", "must be an integer ≥ 1");
            p.N = n.get<std::int64_t>();
        }
        take(j, "tau", p.tau);
        take(j, "t0", p.t0);
        if (j.contains("kappa")) p.kappa_cav = p.kappa_fib = j.at("kappa").get<double>();
        take(j, "kappa_cav", p.kappa_cav);
        take(j, "kappa_fib", p.kappa_fib);
        take(j, "gamma", p.gamma);
        take(j, "branching_A", p.branching_A);
        take(j, "branching_B", p.branching_B);
        take(j, "apply_overlap", p.apply_overlap);
        take(j, "compensate_drive", p.compensate_drive);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
}

void merge_json(IntegratorConfig& cfg, const json& j) {
    reject_unknown(j, {"t_start", "t_end", "abs_tol", "rel_tol", "max_step", "sample_interval", "method"}, "integrator");
    try {
        take(j, "t_start", cfg.t_start);
        take(j, "t_end", cfg.t_end);
        take(j, "abs_tol", cfg.abs_tol);
        take(j, "rel_tol", cfg.rel_tol);
        take(j, "max_step", cfg.max_step);
        take(j, "sample_interval", cfg.sample_interval);
        if (j.contains("method")) cfg.method = integration_method_from_string(j.at("method").get<std::string>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("integrator: ") + e.what());
    }
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::numbers(const std::string& name) const {
    const int c = column(name);
    if (c < 0) throw ConfigError("csv: no column '" + name + "'");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const std::string& cell = row.at(static_cast<std::size_t>(c));
        out.push_back(cell == "nan" ? std::nan("") : std::stod(cell));
    }
    return out;
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) return t;
    t.header = split_csv_line(line);
    while (std::getline(in, line))
        if (!line.empty()) t.rows.push_back(split_csv_line(line));
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return read_csv(in);
}

}  // namespace stirap
