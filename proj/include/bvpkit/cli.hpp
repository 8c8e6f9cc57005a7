#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bvpkit/core.hpp"
#include "bvpkit/errors.hpp"
#include "bvpkit/fdm.hpp"
#include "bvpkit/ivp.hpp"

namespace bvpkit::cli {

enum ExitCode : int {
    exit_converged = 0,
    exit_usage = 2,
    exit_unconverged = 3,
    exit_solver_error = 4,
    exit_io_error = 5,
};

enum class MethodChoice { shooting, fdm, both };
enum class SolutionClass { decaying, one_node };
enum class ReportFormat { text, csv };
enum class Precision { standard, extended };

struct RunSpec {
    MethodChoice method = MethodChoice::both;
    std::optional<SolutionClass> solution;
    double tolerance = 1e-6;
    int max_iterations = 100;
    double domain_end = 10.0;
    int mesh_n = 100;
    std::optional<std::filesystem::path> output_path;
    ReportFormat report_format = ReportFormat::text;
    bool experiment_matrix = false;

    std::optional<double> bracket_lo;
    std::optional<double> bracket_hi;
    std::optional<SolutionClass> guess;
    /// Unset: consistent for single runs, listing for the experiment matrix.
    std::optional<JacobianVariant> jacobian;
    Precision precision = Precision::standard;
    IntegratorConfig integrator;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class HelpRequested : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Parses flags (without the program name). Throws UsageError, or HelpRequested
/// carrying the help text.
RunSpec parse_args(std::span<const std::string> args);

/// Applies BVPKIT_INTEGRATOR_REL / BVPKIT_INTEGRATOR_ABS from the environment.
void apply_environment(RunSpec& spec);

int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Full entry point: parse, environment, run. Never throws.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// "r,v" header then one row per sample at 17 significant digits.
void write_profile_csv(const SolutionProfile& profile, const std::filesystem::path& path);
SolutionProfile read_profile_csv(const std::filesystem::path& path);

struct MatrixCell {
    Method method = Method::shooting;
    SolutionClass solution = SolutionClass::decaying;
    double tolerance = 0;
    int iterations = 0;
    bool converged = false;
    bool failed = false;
    std::string message;
};

struct MatrixReport {
    std::vector<MatrixCell> cells;

    const MatrixCell& at(Method m, SolutionClass s, double tolerance) const;
};

inline constexpr double matrix_tolerances[] = {1e-6, 1e-9, 1e-12};

/// {shooting, fdm} x {decaying, one-node} x {1e-6, 1e-9, 1e-12}; cells run concurrently.
MatrixReport experiment_matrix(const RunSpec& spec);

std::string format_matrix_text(const MatrixReport& report);
std::string format_matrix_csv(const MatrixReport& report);

std::string_view to_string(SolutionClass s) noexcept;

}  // namespace bvpkit::cli
