#include "telesim/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "telesim/oracle.hpp"
#include "telesim/protocol.hpp"

namespace telesim::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line, "malformed number '" + value + "'");
    }
    return out;
}

std::uint64_t parse_uint(const std::string& value, int line) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line, "malformed integer '" + value + "'");
    }
    return out;
}

// Up to 12 significant digits, '.' decimal separator.
std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string sanitize_message(std::string message) {
    for (char& c : message) {
        if (c == ',' || c == '"' || c == '\n') {
            c = ';';
        }
    }
    return message;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {}

    bool ok() const { return static_cast<bool>(out_); }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out_ << ',';
            }
            out_ << cells[i];
        }
        out_ << '\n';
    }

    bool finish() {
        out_.flush();
        return static_cast<bool>(out_);
    }

private:
    std::ofstream out_;
};

const GridAxis* find_axis(const RunManifest& manifest, const std::string& name) {
    for (const auto& axis : manifest.grid) {
        if (axis.name == name) {
            return &axis;
        }
    }
    return nullptr;
}

GridAxis axis_or_default(const RunManifest& manifest, const std::string& name,
                         const GridAxis& fallback) {
    if (const GridAxis* axis = find_axis(manifest, name)) {
        axis->validate();
        return *axis;
    }
    return fallback;
}

void reject_unknown_axes(const RunManifest& manifest,
                         const std::vector<std::string>& allowed) {
    for (const auto& axis : manifest.grid) {
        bool known = false;
        for (const auto& name : allowed) {
            known = known || axis.name == name;
        }
        if (!known) {
            throw std::invalid_argument("unknown grid axis '" + axis.name + "' for this command");
        }
    }
}

int run_fringe(const RunManifest& manifest, const visibility::ExperimentConfig& config) {
    reject_unknown_axes(manifest, {"phi"});
    const GridAxis axis = axis_or_default(manifest, "phi", {"phi", 0.0, 4.0 * M_PI, 201});
    const auto pipe = visibility::evaluate_pipeline(config);

    CsvWriter csv(manifest.output_path);
    if (!csv.ok()) {
        std::cerr << "error: cannot open output file '" << manifest.output_path << "'\n";
        return kExitInputError;
    }
    csv.row({"phi_rad", "p123", "c_raw", "c_net"});
    for (double phi : axis.values()) {
        const double p123 = protocol::threefold_fringe(0.0, phi, 0.0);
        const double c_raw = pipe.raw.c_min + (pipe.raw.c_max - pipe.raw.c_min) * p123;
        const double c_net = pipe.net.c_min + (pipe.net.c_max - pipe.net.c_min) * p123;
        csv.row({format_number(phi), format_number(p123), format_number(c_raw),
                 format_number(c_net)});
    }
    return csv.finish() ? kExitOk : kExitInputError;
}

int run_scan_theta(const RunManifest& manifest, const visibility::ExperimentConfig& config) {
    reject_unknown_axes(manifest, {"theta"});
    const GridAxis axis = axis_or_default(manifest, "theta", {"theta", 0.0, 2.0 * M_PI, 201});
    const auto pipe = visibility::evaluate_pipeline(config);

    CsvWriter csv(manifest.output_path);
    if (!csv.ok()) {
        std::cerr << "error: cannot open output file '" << manifest.output_path << "'\n";
        return kExitInputError;
    }
    csv.row({"theta_rad", "rate_raw", "rate_net"});
    for (double theta : axis.values()) {
        const double p = protocol::polarization_scan_rate(theta, protocol::AnalysisBasis::H);
        const double raw = pipe.raw.c_min + (pipe.raw.c_max - pipe.raw.c_min) * p;
        const double net = pipe.net.c_min + (pipe.net.c_max - pipe.net.c_min) * p;
        csv.row({format_number(theta), format_number(raw), format_number(net)});
    }
    return csv.finish() ? kExitOk : kExitInputError;
}

int run_sweep(const RunManifest& manifest, const visibility::ExperimentConfig& config) {
    reject_unknown_axes(manifest, {"p1", "l1"});
    const GridAxis p1_axis = axis_or_default(manifest, "p1", {"p1", 0.005, 0.05, 50});
    const GridAxis l1_axis = axis_or_default(manifest, "l1", {"l1", 0.0025, 0.1, 50});
    const auto rows = visibility::sweep(config, p1_axis.values(), l1_axis.values());

    CsvWriter csv(manifest.output_path);
    if (!csv.ok()) {
        std::cerr << "error: cannot open output file '" << manifest.output_path << "'\n";
        return kExitInputError;
    }
    csv.row({"p1", "l1", "c_max_raw", "c_min_raw", "v_two_photon_raw", "v_ent_raw",
             "fidelity_raw", "c_max_net", "c_min_net", "v_two_photon_net", "v_ent_net",
             "fidelity_net", "error"});
    for (const auto& row : rows) {
        if (row.ok) {
            const auto& raw = row.result.raw;
            const auto& net = row.result.net;
            csv.row({format_number(row.p1), format_number(row.l1), format_number(raw.c_max),
                     format_number(raw.c_min), format_number(raw.v_two_photon),
                     format_number(raw.v_ent), format_number(raw.fidelity),
                     format_number(net.c_max), format_number(net.c_min),
                     format_number(net.v_two_photon), format_number(net.v_ent),
                     format_number(net.fidelity), ""});
        } else {
            std::vector<std::string> cells = {format_number(row.p1), format_number(row.l1)};
            for (int i = 0; i < 10; ++i) {
                cells.push_back("nan");
            }
            cells.push_back(sanitize_message(row.error));
            csv.row(cells);
        }
    }
    return csv.finish() ? kExitOk : kExitInputError;
}

int run_budget(const RunManifest& manifest, const visibility::ExperimentConfig& config) {
    reject_unknown_axes(manifest, {});
    const auto spec = sources::DfgSpec::calibrated(config.kappa_mode);
    const auto chain = sources::qubit_budget_chain(config.pump_mw, spec);
    const auto rates = sources::evaluate_budget(chain);

    CsvWriter csv(manifest.output_path);
    if (!csv.ok()) {
        std::cerr << "error: cannot open output file '" << manifest.output_path << "'\n";
        return kExitInputError;
    }
    csv.row({"stage_label", "rate_per_window"});
    csv.row({"input", format_number(chain.input_rate)});
    for (size_t i = 0; i < chain.stages.size(); ++i) {
        csv.row({chain.stages[i].label, format_number(rates[i])});
    }
    return csv.finish() ? kExitOk : kExitInputError;
}

int run_oracle_check(const RunManifest& manifest, const visibility::ExperimentConfig& config) {
    reject_unknown_axes(manifest, {});
    const auto pipe = visibility::evaluate_pipeline(config);
    const auto estimate = oracle::run_oracle(config, config.trials, config.seed);
    const auto report = oracle::compare(pipe.raw_rates, estimate, manifest.sigma);

    CsvWriter csv(manifest.output_path);
    if (!csv.ok()) {
        std::cerr << "error: cannot open output file '" << manifest.output_path << "'\n";
        return kExitInputError;
    }
    csv.row({"regime", "analytic", "estimate", "std_err", "z"});
    csv.row({"distinguishable", format_number(report.dis.analytic),
             format_number(report.dis.estimate), format_number(report.dis.std_err),
             format_number(report.dis.z)});
    csv.row({"indistinguishable", format_number(report.indis.analytic),
             format_number(report.indis.estimate), format_number(report.indis.std_err),
             format_number(report.indis.z)});
    if (!csv.finish()) {
        return kExitInputError;
    }
    std::cerr << "oracle-check: " << report.summary() << "\n";
    return report.pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

std::vector<double> GridAxis::values() const {
    validate();
    std::vector<double> out;
    out.reserve(static_cast<size_t>(steps));
    if (steps == 1) {
        out.push_back(start);
        return out;
    }
    const double step = (stop - start) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) {
        out.push_back(start + step * static_cast<double>(i));
    }
    return out;
}

void GridAxis::validate() const {
    if (steps < 1) {
        throw std::invalid_argument("grid axis '" + name + "': steps must be >= 1");
    }
    if (!(start <= stop)) {
        throw std::invalid_argument("grid axis '" + name + "': start must be <= stop");
    }
}

visibility::ExperimentConfig parse_config(const std::string& text) {
    visibility::ExperimentConfig config;
    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected 'key = value', got '" + trim(line) + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(line_no, "empty key or value");
        }

        if (key == "p1") {
            config.p1 = parse_double(value, line_no);
        } else if (key == "l1") {
            config.l1 = parse_double(value, line_no);
        } else if (key == "t2") {
            config.t2 = parse_double(value, line_no);
        } else if (key == "t3") {
            config.t3 = parse_double(value, line_no);
        } else if (key == "eta") {
            config.eta = parse_double(value, line_no);
        } else if (key == "overlap") {
            config.overlap = parse_double(value, line_no);
        } else if (key == "window_ns") {
            config.window_ns = parse_double(value, line_no);
        } else if (key == "dark1") {
            config.dark_rates[0] = parse_double(value, line_no);
        } else if (key == "dark2") {
            config.dark_rates[1] = parse_double(value, line_no);
        } else if (key == "dark3") {
            config.dark_rates[2] = parse_double(value, line_no);
        } else if (key == "pump_mw") {
            config.pump_mw = parse_double(value, line_no);
        } else if (key == "kappa_mode") {
            if (value == "peak450") {
                config.kappa_mode = sources::KappaCalibration::Peak450;
            } else if (value == "fit350") {
                config.kappa_mode = sources::KappaCalibration::Fit350;
            } else {
                throw ParseError(line_no,
                                 "kappa_mode must be 'peak450' or 'fit350', got '" + value + "'");
            }
        } else if (key == "trials") {
            config.trials = parse_uint(value, line_no);
        } else if (key == "seed") {
            config.seed = parse_uint(value, line_no);
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

visibility::ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

int run(const RunManifest& manifest) {
    try {
        visibility::ExperimentConfig config;
        if (!manifest.config_path.empty()) {
            config = load_config_file(manifest.config_path);
        }
        if (manifest.seed) {
            config.seed = *manifest.seed;
        }
        switch (manifest.command) {
            case Command::Fringe:
                return run_fringe(manifest, config);
            case Command::ScanTheta:
                return run_scan_theta(manifest, config);
            case Command::Sweep:
                return run_sweep(manifest, config);
            case Command::Budget:
                return run_budget(manifest, config);
            case Command::OracleCheck:
                return run_oracle_check(manifest, config);
        }
        std::cerr << "error: unknown command\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

namespace {

GridAxis parse_grid_spec(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("grid spec must look like axis=start:stop:steps");
    }
    GridAxis axis;
    axis.name = trim(spec.substr(0, eq));
    const std::string rest = spec.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("grid spec must look like axis=start:stop:steps");
    }
    axis.start = parse_double(trim(rest.substr(0, c1)), 0);
    axis.stop = parse_double(trim(rest.substr(c1 + 1, c2 - c1 - 1)), 0);
    const auto steps = parse_uint(trim(rest.substr(c2 + 1)), 0);
    axis.steps = static_cast<int>(steps);
    axis.validate();
    return axis;
}

void attach_common(CLI::App* cmd, RunManifest& manifest, std::vector<std::string>& grid_specs) {
    cmd->add_option("--config", manifest.config_path, "Path to a key = value config file");
    cmd->add_option("--out", manifest.output_path, "Output CSV path")->required();
    cmd->add_option("--seed", [&manifest](const std::vector<std::string>& values) {
        try {
            manifest.seed = parse_uint(values.front(), 0);
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }, "Override the config seed");
    cmd->add_option("--grid", grid_specs, "Grid axis as name=start:stop:steps (repeatable)");
}

}  // namespace

int main_cli(int argc, const char* const* argv) {
    CLI::App app{"Photonic teleportation relay simulator"};
    app.require_subcommand(1);

    RunManifest manifest;
    std::vector<std::string> grid_specs;

    CLI::App* fringe = app.add_subcommand("fringe", "Phase fringe of the threefold rate");
    CLI::App* scan = app.add_subcommand("scan-theta", "Polarization rotation scan");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Visibility surface over p1 x l1");
    CLI::App* budget = app.add_subcommand("budget", "Qubit-generator photon budget");
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-check", "Monte Carlo cross-check of the analytic rates");
    for (CLI::App* cmd : {fringe, scan, sweep_cmd, budget, oracle_cmd}) {
        attach_common(cmd, manifest, grid_specs);
    }
    oracle_cmd->add_option("--sigma", manifest.sigma, "Acceptance bound in standard errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (fringe->parsed()) {
        manifest.command = Command::Fringe;
    } else if (scan->parsed()) {
        manifest.command = Command::ScanTheta;
    } else if (sweep_cmd->parsed()) {
        manifest.command = Command::Sweep;
    } else if (budget->parsed()) {
        manifest.command = Command::Budget;
    } else {
        manifest.command = Command::OracleCheck;
    }

    try {
        for (const auto& spec : grid_specs) {
            manifest.grid.push_back(parse_grid_spec(spec));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    return run(manifest);
}

}  // namespace telesim::cli
