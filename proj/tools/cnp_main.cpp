// Command-line surface: deterministic reports for feasibility sweeps, exact
// quotient norms, envelope diagnostics, interpolant construction, lattice
// computations and the matrix gap search.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cnp/config.hpp"
#include "cnp/cstar.hpp"
#include "cnp/errors.hpp"
#include "cnp/feasibility.hpp"
#include "cnp/ideal.hpp"
#include "cnp/lattice.hpp"
#include "cnp/quotient.hpp"
#include "cnp/report.hpp"

namespace {

using namespace cnp;

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitInternal = 4;

struct CliOptions {
    std::string command;
    std::string config_path;
    std::string csv_path;
    std::string fixture_path;
    std::optional<uint64_t> seed_flag;
};

uint64_t resolve_seed(const ProblemConfig& config, const CliOptions& opts) {
    if (opts.seed_flag) return *opts.seed_flag;
    if (config.seed_given) return config.seed;
    if (const char* env = std::getenv("CNP_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<uint64_t>(v);
    }
    return config.seed;
}

Report complex_list(const std::vector<Complex>& values) {
    Report arr = Report::array();
    for (Complex v : values) arr.push(Report::complex_num(v));
    return arr;
}

Report matrix_report(const MatrixXcd& m) {
    Report rows = Report::array();
    for (int i = 0; i < m.rows(); ++i) {
        Report row = Report::array();
        for (int j = 0; j < m.cols(); ++j) row.push(Report::complex_num(m(i, j)));
        rows.push(std::move(row));
    }
    return rows;
}

Report blaschke_report(const BlaschkeProduct& b) {
    Report arr = Report::array();
    for (const auto& z : b.zeros()) {
        Report zero = Report::object();
        zero.set("re", Report::num(z.alpha.real()));
        zero.set("im", Report::num(z.alpha.imag()));
        zero.set("mult", Report::integer(z.mult));
        arr.push(std::move(zero));
    }
    return arr;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot write file: " + path);
    out << text;
}

const char* verdict_name(SweepStatus status) {
    switch (status) {
        case SweepStatus::Feasible: return "feasible";
        case SweepStatus::BoundaryFeasible: return "boundary-feasible";
        case SweepStatus::Infeasible: return "infeasible";
        case SweepStatus::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

int run_feasibility(const CliOptions& opts) {
    const ProblemConfig config = parse_problem_config(read_file(opts.config_path));
    SweepConfig sweep;
    sweep.seed = resolve_seed(config, opts);
    sweep.tau_psd = config.tau_psd;
    sweep.collect_grid = !opts.csv_path.empty();

    const SweepVerdict verdict = config.problem.is_matrix()
                                     ? matrix_pick_sweep(config.problem, sweep)
                                     : feasibility_sweep(config.problem, sweep);

    Report rep = Report::object();
    rep.set("command", Report::str("feasibility"));
    rep.set("seed", Report::integer(static_cast<long long>(sweep.seed)));
    rep.set("verdict", Report::str(verdict_name(verdict.status)));
    rep.set("feasible", Report::boolean(verdict.feasible));
    rep.set("necessary_only", Report::boolean(verdict.necessary_only));
    rep.set("min_lambda", Report::num(verdict.min_lambda));
    rep.set("margin", Report::num(verdict.margin));
    rep.set("restarts_used", Report::integer(verdict.restarts_used));
    std::vector<Complex> coeffs(verdict.worst_v.coeffs.data(),
                                verdict.worst_v.coeffs.data() + verdict.worst_v.coeffs.size());
    rep.set("worst_v", complex_list(coeffs));
    std::cout << rep.to_string();

    if (!opts.csv_path.empty()) {
        std::string csv = "theta1,theta2,phase,lambda_min\n";
        for (const auto& row : verdict.grid_samples) {
            csv += format_double(row[0]) + "," + format_double(row[1]) + "," +
                   format_double(row[2]) + "," + format_double(row[3]) + "\n";
        }
        write_text(opts.csv_path, csv);
    }

    switch (verdict.status) {
        case SweepStatus::Feasible:
        case SweepStatus::BoundaryFeasible: return kExitSuccess;
        case SweepStatus::Infeasible: return kExitNegative;
        case SweepStatus::Indeterminate: return kExitIndeterminate;
    }
    return kExitIndeterminate;
}

int run_norm(const CliOptions& opts) {
    const ProblemConfig config = parse_problem_config(read_file(opts.config_path));
    const CompressionRep comp = build_compression(config.problem);

    Report rep = Report::object();
    rep.set("command", Report::str("norm"));
    rep.set("ambient_dimension", Report::integer(comp.dim()));
    double norm = 0.0;
    ContractionVerdict contraction;
    if (config.problem.is_matrix()) {
        const MatrixQuotientElement elem = matrix_element_from_targets(config.problem);
        norm = quotient_norm(elem, comp);
        contraction = is_contraction(elem, comp);
        rep.set("block_size", Report::integer(config.problem.target_size()));
    } else {
        const QuotientElement elem = element_from_targets(config.problem);
        norm = quotient_norm(elem, comp);
        contraction = is_contraction(elem, comp);
        rep.set("common_value", Report::complex_num(elem.common_value));
        rep.set("free_values", complex_list(elem.free_values));
    }
    rep.set("quotient_norm", Report::num(norm));
    rep.set("contraction", Report::boolean(contraction.contraction));
    rep.set("contraction_margin", Report::num(contraction.margin));
    std::cout << rep.to_string();
    return kExitSuccess;
}

int run_envelope(const CliOptions& opts) {
    const ProblemConfig config = parse_problem_config(read_file(opts.config_path), false);
    const EnvelopeReport env = envelope_report(config.problem);
    Report rep = Report::object();
    rep.set("command", Report::str("envelope"));
    rep.set("m", Report::integer(env.m));
    rep.set("n", Report::integer(env.n));
    rep.set("r", Report::integer(env.r));
    rep.set("ambient", Report::integer(env.ambient));
    rep.set("algebra_dim", Report::integer(env.algebra_dim));
    rep.set("commutant_dim", Report::integer(env.commutant_dim));
    rep.set("is_full", Report::boolean(env.is_full));
    rep.set("prediction", Report::boolean(env.prediction));
    rep.set("agreement", Report::boolean(env.agreement));
    std::cout << rep.to_string();
    return kExitSuccess;
}

int run_construct(const CliOptions& opts) {
    const ProblemConfig config = parse_problem_config(read_file(opts.config_path));
    if (config.problem.is_matrix())
        throw InvalidParameter("construct expects scalar targets");
    const uint64_t seed = resolve_seed(config, opts);
    const ConstrainedFunction h = construct_interpolant(config.problem, seed);

    Report rep = Report::object();
    rep.set("command", Report::str("construct"));
    rep.set("seed", Report::integer(static_cast<long long>(seed)));
    rep.set("lambda", Report::complex_num(h.lambda()));
    Report levels = Report::array();
    for (const auto& level : h.levels()) {
        Report coeffs = Report::array();
        for (Complex c : level.coeffs()) coeffs.push(Report::complex_num(c));
        levels.push(std::move(coeffs));
    }
    rep.set("levels", std::move(levels));

    Report residuals = Report::array();
    double max_res = 0.0;
    for (int j = 0; j < config.problem.n(); ++j) {
        const double res = std::abs(h.evaluate(config.problem.nodes()[static_cast<size_t>(j)]) -
                                    config.problem.scalar_targets()[static_cast<size_t>(j)]);
        residuals.push(Report::num(res));
        max_res = std::max(max_res, res);
    }
    rep.set("node_residuals", std::move(residuals));
    rep.set("max_residual", Report::num(max_res));
    if (config.problem.r() >= 1) {
        const CompressionRep comp = build_compression(config.problem);
        rep.set("quotient_norm",
                Report::num(quotient_norm(element_from_targets(config.problem), comp)));
    }
    std::cout << rep.to_string();
    return kExitSuccess;
}

Report canonical_report(const CanonicalForm& canon) {
    Report c = Report::object();
    c.set("divisor", blaschke_report(canon.phi));
    Report basis = Report::array();
    for (const auto& p : canon.w_basis) {
        Report coeffs = Report::array();
        for (Complex v : p.coeffs()) coeffs.push(Report::complex_num(v));
        basis.push(std::move(coeffs));
    }
    c.set("w_basis", std::move(basis));
    return c;
}

int run_lattice(const CliOptions& opts) {
    const LatticeConfig config = parse_lattice_config(read_file(opts.config_path));
    if (config.subspaces.empty() || config.subspaces.size() > 2)
        throw InvalidParameter("lattice expects one or two subspaces");

    Report rep = Report::object();
    rep.set("command", Report::str("lattice"));
    rep.set("modulus", Report::integer(config.modulus));
    Report canons = Report::array();
    for (const auto& s : config.subspaces) canons.push(canonical_report(canonical_form(s)));
    rep.set("canonical", std::move(canons));

    if (config.subspaces.size() == 2) {
        const LatticeReport met = meet(config.subspaces[0], config.subspaces[1]);
        Report meet_rep = Report::object();
        meet_rep.set("divisor", blaschke_report(met.divisor));
        meet_rep.set("lower_bound", blaschke_report(met.lower_bound));
        meet_rep.set("upper_bound", blaschke_report(met.upper_bound));
        meet_rep.set("bounds_hold", Report::boolean(met.bounds_hold));
        meet_rep.set("canonical", canonical_report(met.canonical));
        rep.set("meet", std::move(meet_rep));

        const LatticeReport joined = join(config.subspaces[0], config.subspaces[1]);
        Report join_rep = Report::object();
        join_rep.set("divisor", blaschke_report(joined.divisor));
        join_rep.set("gcd_law_holds", Report::boolean(joined.bounds_hold));
        join_rep.set("canonical", canonical_report(joined.canonical));
        rep.set("join", std::move(join_rep));
    }
    std::cout << rep.to_string();
    return kExitSuccess;
}

int run_gap_search(const CliOptions& opts) {
    const ProblemConfig config = parse_problem_config(read_file(opts.config_path), false);
    GapSearchConfig gap;
    gap.seed = resolve_seed(config, opts);
    const GapSearchResult result = matrix_gap_search(config.problem, gap);

    Report rep = Report::object();
    rep.set("command", Report::str("gap-search"));
    rep.set("seed", Report::integer(static_cast<long long>(gap.seed)));
    rep.set("found", Report::boolean(result.found));
    rep.set("iterations", Report::integer(result.iterations_used));
    rep.set("sweep_margin_min", Report::num(gap.sweep_margin_min));
    rep.set("norm_excess_min", Report::num(gap.norm_excess_min));
    rep.set("quotient_norm", Report::num(result.quotient_norm));
    rep.set("sweep_min_lambda", Report::num(result.sweep_min_lambda));
    rep.set("contraction_margin", Report::num(result.contraction_margin));
    rep.set("best_ratio", Report::num(result.best_ratio));
    Report targets = Report::array();
    for (const auto& w : result.targets) targets.push(matrix_report(w));
    rep.set("targets", std::move(targets));
    const std::string text = rep.to_string();
    std::cout << text;
    if (!opts.fixture_path.empty()) write_text(opts.fixture_path, text);
    return result.found ? kExitSuccess : kExitNegative;
}

int run_grammian(const CliOptions& opts) {
    const ProblemConfig config = parse_problem_config(read_file(opts.config_path), false);
    // Basis of H^2 (-) lcm(B, E) H^2: all constraint-zero labels plus the
    // free-node kernels; well defined for any r.
    std::vector<KernelLabel> labels = model_basis(config.problem.constraint());
    for (int j = config.problem.r(); j < config.problem.n(); ++j)
        labels.push_back({config.problem.nodes()[static_cast<size_t>(j)], 0});
    const GrammianRep gram = GrammianRep::build(std::move(labels));

    std::string csv;
    for (int i = 0; i < gram.dim(); ++i) {
        for (int j = 0; j < gram.dim(); ++j) {
            if (j) csv += ",";
            csv += format_double(gram.q()(i, j).real()) + "," + format_double(gram.q()(i, j).imag());
        }
        csv += "\n";
    }
    if (!opts.csv_path.empty()) {
        write_text(opts.csv_path, csv);
        Report rep = Report::object();
        rep.set("command", Report::str("grammian"));
        rep.set("dimension", Report::integer(gram.dim()));
        rep.set("min_eigenvalue", Report::num(gram.min_eigenvalue()));
        rep.set("conditioning_warning", Report::boolean(gram.conditioning_warning()));
        rep.set("csv", Report::str(opts.csv_path));
        std::cout << rep.to_string();
    } else {
        std::cout << csv;
    }
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions opts;
    CLI::App app{"Constrained interpolation toolkit: feasibility sweeps, exact quotient norms, "
                 "envelope diagnostics, interpolants, invariant-subspace lattices"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"feasibility", "norm",       "envelope", "construct",
                                               "lattice",     "gap-search", "grammian"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("config", opts.config_path, "JSON problem config")->required();
        sub->add_option("--csv", opts.csv_path, "CSV artifact path");
        sub->add_option("--fixture", opts.fixture_path, "fixture output path");
        sub->add_option("--seed", opts.seed_flag, "seed override");
        sub->callback([&opts, name] { opts.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitSuccess : kExitInvalidInput;
    }

    try {
        if (opts.command == "feasibility") return run_feasibility(opts);
        if (opts.command == "norm") return run_norm(opts);
        if (opts.command == "envelope") return run_envelope(opts);
        if (opts.command == "construct") return run_construct(opts);
        if (opts.command == "lattice") return run_lattice(opts);
        if (opts.command == "gap-search") return run_gap_search(opts);
        if (opts.command == "grammian") return run_grammian(opts);
        std::cerr << "unknown command\n";
        return kExitInvalidInput;
    } catch (const InfeasibleByStructure& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitNegative;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const NearDependentBasis& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const ConditioningError& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
