#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telesim/visibility.hpp"

namespace telesim::cli {

// Configuration text could not be parsed; line is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Flat "key = value" document with '#' comments. Unknown keys are
// rejected; missing keys keep the documented defaults.
visibility::ExperimentConfig parse_config(const std::string& text);

visibility::ExperimentConfig load_config_file(const std::string& path);

enum class Command { Fringe, ScanTheta, Sweep, Budget, OracleCheck };

struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;  // number of points, endpoints inclusive

    std::vector<double> values() const;
    void validate() const;
};

struct RunManifest {
    Command command = Command::Fringe;
    std::string config_path;  // empty: all defaults
    std::string output_path;
    std::optional<std::uint64_t> seed;
    std::vector<GridAxis> grid;
    double sigma = 3.0;  // oracle-check acceptance bound
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailure = 2;

// Executes one command, writing a CSV with a header row to
// manifest.output_path. Returns one of the kExit* codes; diagnostics go to
// stderr.
int run(const RunManifest& manifest);

// Parses argv and dispatches to run().
int main_cli(int argc, const char* const* argv);

}  // namespace telesim::cli
