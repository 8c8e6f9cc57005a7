#include "bvpkit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bvpkit/problems.hpp"
#include "bvpkit/shooting.hpp"

namespace bvpkit::cli {

std::string_view to_string(SolutionClass s) noexcept {
    return s == SolutionClass::decaying ? "decaying" : "one_node";
}

namespace {

std::string_view method_label(Method m) { return m == Method::shooting ? "shooting" : "fdm"; }

void build_app(CLI::App& app, RunSpec& spec) {
    static const std::map<std::string, MethodChoice> methods{
        {"shooting", MethodChoice::shooting}, {"fdm", MethodChoice::fdm}, {"both", MethodChoice::both}};
    static const std::map<std::string, SolutionClass> solutions{
        {"decaying", SolutionClass::decaying},
        {"one_node", SolutionClass::one_node},
        {"one-node", SolutionClass::one_node}};
    static const std::map<std::string, ReportFormat> formats{{"text", ReportFormat::text},
                                                             {"csv", ReportFormat::csv}};
    static const std::map<std::string, JacobianVariant> jacobians{
        {"consistent", JacobianVariant::consistent}, {"listing", JacobianVariant::listing}};
    static const std::map<std::string, Precision> precisions{{"double", Precision::standard},
                                                             {"extended", Precision::extended}};

    app.add_option("--method", spec.method, "shooting, fdm or both")
        ->transform(CLI::CheckedTransformer(methods))
        ->option_text("shooting|fdm|both");
    app.add_option("--solution", spec.solution, "decaying or one_node")
        ->transform(CLI::CheckedTransformer(solutions))
        ->option_text("decaying|one_node");
    app.add_option("--tol", spec.tolerance, "convergence tolerance");
    app.add_option("--max-iter", spec.max_iterations, "iteration limit");
    app.add_option("--domain-end", spec.domain_end, "right end of the radial interval");
    app.add_option("--mesh-n", spec.mesh_n, "finite-difference subintervals");
    app.add_option("--out", spec.output_path, "write the profile CSV here");
    app.add_option("--report-format", spec.report_format, "text or csv")
        ->transform(CLI::CheckedTransformer(formats))
        ->option_text("text|csv");
    app.add_flag("--experiment-matrix", spec.experiment_matrix,
                 "run the 2 x 2 x 3 iteration-count matrix");
    app.add_option("--bracket-lo", spec.bracket_lo, "override the lower shooting bracket end");
    app.add_option("--bracket-hi", spec.bracket_hi, "override the upper shooting bracket end");
    app.add_option("--guess", spec.guess, "initial Newton guess: decaying or one-node")
        ->transform(CLI::CheckedTransformer(solutions))
        ->option_text("decaying|one_node");
    app.add_option("--jacobian", spec.jacobian, "consistent or listing")
        ->transform(CLI::CheckedTransformer(jacobians))
        ->option_text("consistent|listing");
    app.add_option("--precision", spec.precision, "shooting arithmetic: double or extended")
        ->transform(CLI::CheckedTransformer(precisions))
        ->option_text("double|extended");
}

void validate(const RunSpec& spec, const std::string& usage) {
    auto fail = [&](const std::string& what) { throw UsageError(what + "\n" + usage); };
    if (!spec.experiment_matrix && !spec.solution) {
        fail("--solution is required unless --experiment-matrix is given");
    }
    if (!(spec.tolerance > 0)) fail("--tol must be positive");
    if (spec.max_iterations <= 0) fail("--max-iter must be positive");
    if (!(spec.domain_end > 0)) fail("--domain-end must be positive");
    if (spec.mesh_n < 3) fail("--mesh-n must be at least 3");
    if (spec.bracket_lo && spec.bracket_hi && !(*spec.bracket_lo < *spec.bracket_hi)) {
        fail("--bracket-lo must be below --bracket-hi");
    }
}

BracketSpec default_bracket(SolutionClass s) {
    if (s == SolutionClass::decaying) {
        return {1.5, 2.0, Orientation::overshoot_raises_lower};
    }
    return {2.0, 2.5, Orientation::overshoot_raises_upper};
}

struct Outcome {
    Method method;
    SolutionProfile profile;
    SolverReport report;
    double amplitude;  // p* or w_1
};

template <std::floating_point Real>
Outcome shoot(const RunSpec& spec, SolutionClass s) {
    BracketSpec bracket = default_bracket(s);
    if (spec.bracket_lo) bracket.lower = *spec.bracket_lo;
    if (spec.bracket_hi) bracket.upper = *spec.bracket_hi;
    ShootingConfig config;
    config.tolerance = spec.tolerance;
    config.max_iterations = spec.max_iterations;
    config.integrator = spec.integrator;
    auto result = solve_shooting(kerr_problem<Real>(static_cast<Real>(spec.domain_end)), bracket,
                                 config);
    return {Method::shooting, std::move(result.profile), std::move(result.report),
            static_cast<double>(result.p_star)};
}

Outcome run_shooting(const RunSpec& spec, SolutionClass s) {
    return spec.precision == Precision::extended ? shoot<long double>(spec, s)
                                                 : shoot<double>(spec, s);
}

Outcome run_fdm(const RunSpec& spec, SolutionClass s, JacobianVariant variant) {
    const auto problem = kerr_problem(spec.domain_end);
    const Mesh mesh = build_mesh(0.0, spec.domain_end, spec.mesh_n);
    const SolutionClass guess = spec.guess.value_or(s);
    const GridFunction w0 = resampled_guess(
        guess == SolutionClass::decaying ? &guess_decaying : &guess_one_node, mesh,
        problem.right_dirichlet);
    FdmConfig config;
    config.tolerance = spec.tolerance;
    config.max_iterations = spec.max_iterations;
    config.jacobian = variant;
    auto result = newton_solve(problem, mesh, w0, config);
    return {Method::finite_difference, std::move(result.profile), std::move(result.report),
            result.solution.interior.front()};
}

std::filesystem::path output_for(const std::filesystem::path& base, Method m, bool both) {
    if (!both) {
        return base;
    }
    std::filesystem::path p = base;
    p.replace_filename(base.stem().string() + "." + std::string(method_label(m)) +
                       base.extension().string());
    return p;
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string format_short(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

double parse_env_double(const char* name, const char* text) {
    const std::string_view s(text);
    double value = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || end != s.data() + s.size() || !(value > 0)) {
        throw UsageError(std::string(name) + " must be a positive decimal number, got '" +
                         std::string(s) + "'");
    }
    return value;
}

}  // namespace

RunSpec parse_args(std::span<const std::string> args) {
    RunSpec spec;
    CLI::App app{"Two-point boundary-value solver for the radial Kerr beam-profile equation",
                 "bvpkit"};
    build_app(app, spec);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n" + app.help());
    }
    validate(spec, app.help());
    return spec;
}

void apply_environment(RunSpec& spec) {
    if (const char* rel = std::getenv("BVPKIT_INTEGRATOR_REL")) {
        spec.integrator.rel_tolerance = parse_env_double("BVPKIT_INTEGRATOR_REL", rel);
    }
    if (const char* abs = std::getenv("BVPKIT_INTEGRATOR_ABS")) {
        spec.integrator.abs_tolerance = parse_env_double("BVPKIT_INTEGRATOR_ABS", abs);
    }
}

void write_profile_csv(const SolutionProfile& profile, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    file << "r,v\n" << std::setprecision(17);
    for (std::size_t i = 0; i < profile.size(); ++i) {
        file << profile.abscissae()[i] << ',' << profile.values()[i] << '\n';
    }
    file.flush();
    if (!file) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

SolutionProfile read_profile_csv(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(file, line) || line != "r,v") {
        throw IoError("'" + path.string() + "' lacks the r,v header");
    }
    std::vector<double> rs;
    std::vector<double> vs;
    while (std::getline(file, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw IoError("malformed row in '" + path.string() + "': " + line);
        }
        double r = 0;
        double v = 0;
        const char* b = line.data();
        auto rr = std::from_chars(b, b + comma, r);
        auto rv = std::from_chars(b + comma + 1, b + line.size(), v);
        if (rr.ec != std::errc{} || rv.ec != std::errc{}) {
            throw IoError("malformed number in '" + path.string() + "': " + line);
        }
        rs.push_back(r);
        vs.push_back(v);
    }
    return {std::move(rs), std::move(vs)};
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    if (spec.experiment_matrix) {
        const MatrixReport report = experiment_matrix(spec);
        const std::string table = spec.report_format == ReportFormat::csv
                                      ? format_matrix_csv(report)
                                      : format_matrix_text(report);
        if (spec.output_path) {
            std::ofstream file(*spec.output_path, std::ios::binary | std::ios::trunc);
            if (!(file << table)) {
                err << "bvpkit: cannot write '" << spec.output_path->string() << "'\n";
                return exit_io_error;
            }
        }
        out << table;
        const bool any_failed = std::any_of(report.cells.begin(), report.cells.end(),
                                            [](const MatrixCell& c) { return c.failed; });
        return any_failed ? exit_solver_error : exit_converged;
    }

    const SolutionClass solution = *spec.solution;
    std::vector<Method> methods;
    if (spec.method != MethodChoice::fdm) methods.push_back(Method::shooting);
    if (spec.method != MethodChoice::shooting) methods.push_back(Method::finite_difference);

    if (spec.report_format == ReportFormat::csv) {
        out << "method,solution,tolerance,iterations,converged,final_metric,amplitude\n";
    }
    int code = exit_converged;
    for (Method m : methods) {
        std::optional<Outcome> outcome;
        try {
            outcome = m == Method::shooting
                          ? run_shooting(spec, solution)
                          : run_fdm(spec, solution,
                                    spec.jacobian.value_or(JacobianVariant::consistent));
        } catch (const Error& e) {
            err << "bvpkit: " << method_label(m) << " failed: " << e.what() << '\n';
            code = std::max<int>(code, exit_solver_error);
            continue;
        }
        const SolverReport& r = outcome->report;
        if (spec.report_format == ReportFormat::csv) {
            out << method_label(m) << ',' << to_string(solution) << ','
                << format_short(spec.tolerance) << ',' << r.iterations << ','
                << (r.converged ? "true" : "false") << ',' << format_double(r.final_metric) << ','
                << format_double(outcome->amplitude) << '\n';
        } else {
            out << "method:       " << method_label(m) << '\n'
                << "solution:     " << to_string(solution) << '\n'
                << "tolerance:    " << format_short(spec.tolerance) << '\n'
                << "iterations:   " << r.iterations << '\n'
                << "converged:    " << (r.converged ? "yes" : "no") << '\n'
                << (m == Method::shooting ? "|v(b)-beta|:  " : "|delta|_2:    ")
                << format_double(r.final_metric) << '\n'
                << (m == Method::shooting ? "p_star:       " : "w_1:          ")
                << format_double(outcome->amplitude) << "\n\n";
        }
        if (!r.converged) {
            err << "bvpkit: " << method_label(m) << " did not converge within " << r.iterations
                << " iterations\n";
            if (code == exit_converged) code = exit_unconverged;
        }
        if (spec.output_path) {
            const auto path = output_for(*spec.output_path, m, methods.size() > 1);
            try {
                write_profile_csv(outcome->profile, path);
            } catch (const IoError& e) {
                err << "bvpkit: " << e.what() << '\n';
                return exit_io_error;
            }
        }
    }
    return code;
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunSpec spec;
    try {
        spec = parse_args(args);
        apply_environment(spec);
    } catch (const HelpRequested& h) {
        out << h.what();
        return exit_converged;
    } catch (const UsageError& e) {
        err << "bvpkit: " << e.what();
        return exit_usage;
    }
    try {
        return run(spec, out, err);
    } catch (const Error& e) {
        err << "bvpkit: " << e.what() << '\n';
        return exit_solver_error;
    }
}

const MatrixCell& MatrixReport::at(Method m, SolutionClass s, double tolerance) const {
    for (const auto& c : cells) {
        if (c.method == m && c.solution == s && c.tolerance == tolerance) {
            return c;
        }
    }
    throw DomainError("no such experiment-matrix cell");
}

MatrixReport experiment_matrix(const RunSpec& spec) {
    const JacobianVariant variant = spec.jacobian.value_or(JacobianVariant::listing);

    std::vector<MatrixCell> cells;
    for (double tol : matrix_tolerances) {
        for (Method m : {Method::shooting, Method::finite_difference}) {
            for (SolutionClass s : {SolutionClass::decaying, SolutionClass::one_node}) {
                MatrixCell cell;
                cell.method = m;
                cell.solution = s;
                cell.tolerance = tol;
                cells.push_back(cell);
            }
        }
    }

    auto evaluate = [&spec, variant](MatrixCell cell) {
        RunSpec local = spec;
        local.tolerance = cell.tolerance;
        local.solution = cell.solution;
        local.guess.reset();
        local.bracket_lo.reset();
        local.bracket_hi.reset();
        try {
            const Outcome o = cell.method == Method::shooting
                                  ? run_shooting(local, cell.solution)
                                  : run_fdm(local, cell.solution, variant);
            cell.iterations = o.report.iterations;
            cell.converged = o.report.converged;
        } catch (const Error& e) {
            cell.failed = true;
            cell.message = e.what();
        }
        return cell;
    };

    std::vector<std::future<MatrixCell>> pending;
    pending.reserve(cells.size());
    for (const auto& cell : cells) {
        pending.push_back(std::async(std::launch::async, evaluate, cell));
    }
    MatrixReport report;
    for (auto& f : pending) {
        report.cells.push_back(f.get());
    }
    return report;
}

namespace {

std::string cell_text(const MatrixCell& c) {
    if (c.failed) return "ERR";
    if (!c.converged) return "NA";
    return std::to_string(c.iterations);
}

}  // namespace

std::string format_matrix_text(const MatrixReport& report) {
    std::ostringstream os;
    for (double tol : matrix_tolerances) {
        os << "Error = " << format_short(tol) << '\n'
           << std::left << std::setw(20) << "" << std::right << std::setw(10) << "Decaying"
           << std::setw(10) << "One-Node" << '\n';
        for (Method m : {Method::shooting, Method::finite_difference}) {
            os << std::left << std::setw(20)
               << (m == Method::shooting ? "Shooting" : "Finite-Difference") << std::right
               << std::setw(10) << cell_text(report.at(m, SolutionClass::decaying, tol))
               << std::setw(10) << cell_text(report.at(m, SolutionClass::one_node, tol)) << '\n';
        }
        os << '\n';
    }
    return os.str();
}

std::string format_matrix_csv(const MatrixReport& report) {
    std::ostringstream os;
    os << "method,solution,tolerance,iterations,converged\n";
    for (const auto& c : report.cells) {
        os << method_label(c.method) << ',' << to_string(c.solution) << ','
           << format_short(c.tolerance) << ','
           << (c.failed ? std::string("ERR") : std::to_string(c.iterations)) << ','
           << (c.failed ? "error" : (c.converged ? "true" : "false")) << '\n';
    }
    return os.str();
}

}  // namespace bvpkit::cli
