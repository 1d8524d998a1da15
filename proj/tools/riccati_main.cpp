// riccati: criteria checks, gauge transforms, reductions from known
// solutions, quadrature solvers and trajectory sampling for Riccati
// equations, over plain-text equation/matrix files.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riccati/equation.hpp"
#include "riccati/formats.hpp"
#include "riccati/reduction.hpp"
#include "riccati/solver.hpp"

namespace {

using namespace riccati;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

constexpr double kUnimodularTol = 1e-9;
constexpr double kAgreementTol = 1e-6;

struct SharedOpts {
    int grid = 0;  // 0: keep the file's sample count
    double tol_residual = 1e-7;
    double tol_quad = 1e-10;
    std::optional<double> t0;
    std::optional<double> t1;
};

void add_shared(CLI::App* cmd, SharedOpts& opts) {
    cmd->add_option("--grid", opts.grid, "Number of grid samples (overrides the file)");
    cmd->add_option("--tol-residual", opts.tol_residual, "Residual tolerance (default 1e-7)");
    cmd->add_option("--tol-quad", opts.tol_quad, "Quadrature tolerance (default 1e-10)");
    cmd->add_option("--t0", opts.t0, "Override the interval start");
    cmd->add_option("--t1", opts.t1, "Override the interval end");
}

Interval apply_shared(const Interval& file_dom, const SharedOpts& opts) {
    const double lo = opts.t0.value_or(file_dom.t_lo);
    const double hi = opts.t1.value_or(file_dom.t_hi);
    const int samples = opts.grid > 0 ? opts.grid : file_dom.samples;
    return Interval(lo, hi, samples);
}

/// Deterministic run report: command echo, tolerance echo, input digests,
/// then one line per check/note/output.
class Report {
public:
    Report(const std::string& command, const SharedOpts& opts, int grid_used)
        : command_(command), opts_(opts), grid_(grid_used) {}

    void add_input(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream bytes;
        bytes << in.rdbuf();
        inputs_.emplace_back(path, fnv1a_hex(bytes.str()));
    }

    void check(const std::string& name, bool pass, double residual) {
        std::ostringstream line;
        line << "check: " << name << " status=" << (pass ? "PASS" : "FAIL")
             << " max-residual=" << format_double(residual);
        lines_.push_back(line.str());
    }

    void note(const std::string& text) { lines_.push_back("note: " + text); }
    void output(const std::string& path) { lines_.push_back("output: " + path); }

    void print(std::ostream& os) const {
        os << "command: " << command_ << "\n";
        os << "tolerances: grid=" << grid_ << " tol-residual=" << format_double(opts_.tol_residual)
           << " tol-quad=" << format_double(opts_.tol_quad) << "\n";
        for (const auto& [path, digest] : inputs_) os << "input: " << path << " fnv1a=" << digest << "\n";
        for (const auto& line : lines_) os << line << "\n";
    }

private:
    std::string command_;
    SharedOpts opts_;
    int grid_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::string> lines_;
};

double grid_max_abs(const Expr& e, const Interval& dom) {
    double m = 0.0;
    for (double t : dom.grid()) m = std::max(m, std::fabs(e.eval(t)));
    return m;
}

double unimodularity_residual(const GroupElement& g) {
    return grid_max_abs(simplify(g.alpha * g.delta - g.beta * g.gamma - Expr::constant(1)),
                        g.domain);
}

bool constant_on_grid(const Expr& e, const Interval& dom, double* value) {
    double lo = 0.0, hi = 0.0, scale = 0.0;
    bool first = true;
    for (double t : dom.grid()) {
        const double v = e.eval(t);
        scale = std::max(scale, std::fabs(v));
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi - lo <= 1e-12 * (1.0 + scale)) {
        *value = 0.5 * (lo + hi);
        return true;
    }
    return false;
}

std::string command_echo(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        s += argv[i];
    }
    return s;
}

// ---------------------------------------------------------------------------

int run_check(const std::string& eq_path, const SharedOpts& opts, const std::string& echo) {
    RiccatiEquation eq = read_equation_file(eq_path);
    eq.domain = apply_shared(eq.domain, opts);
    Report report(echo, opts, eq.domain.samples);
    report.add_input(eq_path);

    bool anything_fired = false;

    const double sum_residual = grid_max_abs(simplify(eq.a0 + eq.a1 + eq.a2), eq.domain);
    const bool sum_ok = sum_residual <= opts.tol_residual;
    report.check("criterion-a", sum_ok, sum_residual);
    if (sum_ok) {
        report.note("x = 1 is a particular solution");
        anything_fired = true;
    }

    double v0 = 0.0, v1 = 0.0, v2 = 0.0;
    if (constant_on_grid(eq.a0, eq.domain, &v0) && constant_on_grid(eq.a1, eq.domain, &v1) &&
        constant_on_grid(eq.a2, eq.domain, &v2)) {
        report.note("coefficients are constant; casimir = " +
                    format_double(casimir(Sl2Vector{v2, v1, v0})));
        try {
            const auto roots = constant_solutions(ConstRiccati{{v2, v1, v0}});
            if (roots.empty()) {
                report.note("no constant solutions");
            } else {
                std::string list;
                for (std::size_t i = 0; i < roots.size(); ++i) {
                    if (i) list += ", ";
                    list += format_double(roots[i]);
                }
                report.note("constant solutions: " + list);
                anything_fired = true;
            }
        } catch (const DomainError&) {
            report.note("degenerate equation (all coefficients zero)");
        }
    }

    const auto guess = guess_particular_solution(eq, opts.tol_residual);
    if (guess.has_value()) {
        report.check("particular-solution", true, residual_max(eq, *guess));
        report.note("particular solution x = " + guess->str());
        anything_fired = true;
    } else {
        report.note("no criterion fired");
    }

    report.print(std::cout);
    return anything_fired ? kExitOk : kExitVerifyFail;
}

int run_transform(const std::string& eq_path, const std::string& mat_path,
                  const std::string& out_path, const SharedOpts& opts, const std::string& echo) {
    RiccatiEquation eq = read_equation_file(eq_path);
    eq.domain = apply_shared(eq.domain, opts);
    GroupElement g = read_matrix_file(mat_path);
    g.domain = apply_shared(g.domain, opts);

    Report report(echo, opts, eq.domain.samples);
    report.add_input(eq_path);
    report.add_input(mat_path);

    const double det_residual = unimodularity_residual(g);
    const bool unimodular = det_residual <= kUnimodularTol;
    report.check("unimodularity", unimodular, det_residual);
    if (!unimodular) {
        report.print(std::cout);
        std::cerr << "error: matrix is not unimodular (det residual "
                  << format_double(det_residual) << ")\n";
        return kExitInputError;
    }

    const RiccatiEquation out = transform(eq, g);
    write_equation_file(out_path, out);
    report.output(out_path);
    report.print(std::cout);
    return kExitOk;
}

int run_reduce(const std::string& eq_path, const std::string& out_path,
               const std::vector<std::string>& known_texts, const std::string& variant,
               const SharedOpts& opts, const std::string& echo) {
    RiccatiEquation eq = read_equation_file(eq_path);
    eq.domain = apply_shared(eq.domain, opts);
    Report report(echo, opts, eq.domain.samples);
    report.add_input(eq_path);

    if (known_texts.empty() || known_texts.size() > 3)
        throw std::invalid_argument("reduce expects 1 to 3 --known solutions");
    std::vector<Expr> known;
    for (const auto& text : known_texts) known.push_back(parse_expr(text));

    // Refuse unverified solutions, printing the offending residual.
    for (std::size_t i = 0; i < known.size(); ++i) {
        const double r = residual_max(eq, known[i]);
        const bool ok = r <= opts.tol_residual;
        report.check("known-solution-" + std::to_string(i + 1), ok, r);
        if (!ok) {
            report.print(std::cout);
            std::cerr << "error: solution " << known[i].str() << " has residual "
                      << format_double(r) << " > " << format_double(opts.tol_residual) << "\n";
            return kExitVerifyFail;
        }
    }
    KnownSolutions::verify(eq, known, opts.tol_residual);

    GroupElement element = GroupElement::identity(eq.domain);
    std::vector<std::string> vanished;
    if (known.size() == 1) {
        if (variant == "coshift") {
            element = coshift_by_solution(known[0], eq.domain);
            vanished = {"a2"};
        } else if (variant.empty() || variant == "shift") {
            element = shift_by_solution(known[0], eq.domain);
            vanished = {"a0"};
        } else {
            throw std::invalid_argument("one-solution variants: shift, coshift");
        }
    } else if (known.size() == 2) {
        TwoSolutionVariant v = TwoSolutionVariant::Composed;
        if (variant == "standard") v = TwoSolutionVariant::Standard;
        else if (variant == "alternative") v = TwoSolutionVariant::Alternative;
        else if (!variant.empty() && variant != "composed")
            throw std::invalid_argument("two-solution variants: composed, standard, alternative");
        element = two_solution_element(known[0], known[1], v, eq.domain);
        vanished = {"a0", "a2"};
    } else {
        element = three_solution_element(known[0], known[1], known[2], eq.domain);
        vanished = {"a0", "a1", "a2"};
    }

    const RiccatiEquation reduced = transform(eq, element);
    bool all_ok = true;
    for (const std::string& name : vanished) {
        const Expr& coeff = name == "a0" ? reduced.a0 : (name == "a1" ? reduced.a1 : reduced.a2);
        const double r = grid_max_abs(coeff, reduced.domain);
        const bool ok = r <= opts.tol_residual;
        all_ok = all_ok && ok;
        report.check("reduced-" + name, ok, r);
    }
    if (vanished.size() < 3)
        report.note("remaining a1 at t0: " + format_double(reduced.a1.eval(reduced.domain.t_lo)));

    write_equation_file(out_path, reduced);
    report.output(out_path);
    const std::string element_path = out_path + ".element";
    write_matrix_file(element_path, element);
    report.output(element_path);
    report.print(std::cout);
    return all_ok ? kExitOk : kExitVerifyFail;
}

int run_solve(const std::string& eq_path, double x0, const std::string& out_path,
              const std::vector<std::string>& known_texts, int steps, const SharedOpts& opts,
              const std::string& echo) {
    RiccatiEquation eq = read_equation_file(eq_path);
    eq.domain = apply_shared(eq.domain, opts);
    Report report(echo, opts, eq.domain.samples);
    report.add_input(eq_path);

    const double t0 = eq.domain.t_lo;
    const double t1 = eq.domain.t_hi;
    const int grid = eq.domain.samples;

    std::vector<Expr> known;
    for (const auto& text : known_texts) known.push_back(parse_expr(text));
    for (std::size_t i = 0; i < known.size(); ++i) {
        const double r = residual_max(eq, known[i]);
        const bool ok = r <= opts.tol_residual;
        report.check("known-solution-" + std::to_string(i + 1), ok, r);
        if (!ok) {
            report.print(std::cout);
            std::cerr << "error: solution " << known[i].str() << " has residual "
                      << format_double(r) << "\n";
            return kExitVerifyFail;
        }
    }
    if (!known.empty()) KnownSolutions::verify(eq, known, opts.tol_residual);

    // Round the step count up so RK4 lands exactly on the output grid.
    const int per_cell = std::max(1, (steps + grid - 2) / (grid - 1));
    const int rk_steps = per_cell * (grid - 1);
    const Trajectory oracle = rk4_integrate(eq, x0, t0, t1, rk_steps);
    if (oracle.blowup_t)
        report.note("rk4 blow-up at t=" + format_double(*oracle.blowup_t));

    std::optional<Expr> closed;
    if (known.size() == 1) {
        if (known[0].eval(t0) == x0) {
            report.note("x0 lies on the known solution; returning it directly");
            closed = known[0];
        } else {
            closed = solve_one_known(eq, known[0], x0, t0);
            report.note("pipeline: one known solution, two quadratures");
        }
    } else if (known.size() == 2) {
        closed = solve_two_known(eq, known[0], known[1], x0, t0);
        report.note("pipeline: two known solutions, one quadrature");
    } else if (known.size() == 3) {
        closed = solve_three_known(eq, known[0], known[1], known[2], x0, t0);
        report.note("pipeline: three known solutions, superposition (no quadratures)");
    } else {
        report.note("pipeline: no known solutions, rk4 only");
    }

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    double max_dev = 0.0;
    if (!closed) {
        Trajectory downsampled;
        downsampled.step = oracle.step * per_cell;
        for (std::size_t i = 0; i < oracle.samples.size(); ++i) {
            if (i % static_cast<std::size_t>(per_cell) == 0 || i + 1 == oracle.samples.size() ||
                oracle.samples[i].x.is_infinite())
                downsampled.samples.push_back(oracle.samples[i]);
            if (oracle.samples[i].x.is_infinite()) break;
        }
        downsampled.blowup_t = oracle.blowup_t;
        write_trajectory_csv(out, downsampled);
    } else {
        out << "t,x_closed,x_rk4\n";
        for (std::size_t i = 0; i < oracle.samples.size(); i += per_cell) {
            const auto& s = oracle.samples[i];
            std::string closed_cell = "inf";
            double cv = 0.0;
            bool closed_finite = false;
            try {
                cv = closed->eval(s.t);
                if (std::fabs(cv) <= 1e12) {
                    closed_cell = format_double(cv);
                    closed_finite = true;
                }
            } catch (const DomainError&) {
            }
            out << format_double(s.t) << "," << closed_cell << ",";
            if (s.x.is_infinite()) {
                out << "inf\n";
                break;
            }
            out << format_double(s.x.value()) << "\n";
            if (closed_finite) max_dev = std::max(max_dev, std::fabs(cv - s.x.value()));
        }
        if (oracle.blowup_t) out << "# blow-up at t=" << format_double(*oracle.blowup_t) << "\n";
        report.check("closed-vs-rk4", max_dev <= kAgreementTol, max_dev);
    }
    report.output(out_path);
    report.print(std::cout);
    return (!closed || max_dev <= kAgreementTol) ? kExitOk : kExitVerifyFail;
}

int run_verify(const std::string& eq_path, const std::string& candidate_text,
               const SharedOpts& opts, const std::string& echo) {
    RiccatiEquation eq = read_equation_file(eq_path);
    eq.domain = apply_shared(eq.domain, opts);
    Report report(echo, opts, eq.domain.samples);
    report.add_input(eq_path);

    const Expr candidate = parse_expr(candidate_text);
    const double r = residual_max(eq, candidate);
    const bool ok = r <= opts.tol_residual;
    report.check("residual", ok, r);
    report.print(std::cout);
    return ok ? kExitOk : kExitVerifyFail;
}

int run_sample(const std::string& eq_path, std::optional<double> x0,
               const std::string& expr_text, const std::string& out_path, int steps,
               const SharedOpts& opts, const std::string& echo) {
    RiccatiEquation eq = read_equation_file(eq_path);
    eq.domain = apply_shared(eq.domain, opts);
    Report report(echo, opts, eq.domain.samples);
    report.add_input(eq_path);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);

    if (!expr_text.empty()) {
        const Expr e = parse_expr(expr_text);
        out << "t,x\n";
        for (double t : eq.domain.grid())
            out << format_double(t) << "," << format_double(e.eval(t)) << "\n";
        report.note("sampled expression " + e.str());
    } else if (x0.has_value()) {
        const Trajectory traj =
            rk4_integrate(eq, *x0, eq.domain.t_lo, eq.domain.t_hi, steps);
        write_trajectory_csv(out, traj);
        if (traj.blowup_t) report.note("rk4 blow-up at t=" + format_double(*traj.blowup_t));
    } else {
        throw std::invalid_argument("sample needs either --x0 or --expr");
    }
    report.output(out_path);
    report.print(std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riccati equations: integrability criteria, SL(2,R) gauge transforms,\n"
                 "reductions from known solutions, quadrature solvers, superposition."};
    app.require_subcommand(1);
    const std::string echo = command_echo(argc, argv);

    SharedOpts check_opts;
    std::string check_eq;
    auto* check = app.add_subcommand("check", "Run integrability criteria on an equation file");
    check->add_option("equation", check_eq, "Equation file")->required();
    add_shared(check, check_opts);

    SharedOpts transform_opts;
    std::string tr_eq, tr_mat, tr_out;
    auto* tr = app.add_subcommand("transform", "Apply a gauge matrix to an equation");
    tr->add_option("equation", tr_eq, "Equation file")->required();
    tr->add_option("matrix", tr_mat, "Matrix file")->required();
    tr->add_option("out", tr_out, "Output equation file")->required();
    add_shared(tr, transform_opts);

    SharedOpts reduce_opts;
    std::string red_eq, red_out, red_variant;
    std::vector<std::string> red_known;
    auto* red = app.add_subcommand("reduce", "Reduce an equation using known solutions");
    red->add_option("equation", red_eq, "Equation file")->required();
    red->add_option("out", red_out, "Output equation file (element goes to <out>.element)")
        ->required();
    red->add_option("--known", red_known, "Known solution expression(s)")
        ->required()
        ->delimiter(',');
    red->add_option("--variant", red_variant,
                    "shift|coshift (1 known), composed|standard|alternative (2 known)");
    add_shared(red, reduce_opts);

    SharedOpts solve_opts;
    std::string sol_eq, sol_out = "solution.csv";
    std::vector<std::string> sol_known;
    double sol_x0 = 0.0;
    int sol_steps = 10000;
    auto* sol = app.add_subcommand("solve", "Solve with the pipeline matching the known solutions");
    sol->add_option("equation", sol_eq, "Equation file")->required();
    sol->add_option("--x0", sol_x0, "Initial value at t0")->required();
    sol->add_option("-o,--out", sol_out, "Output CSV path");
    sol->add_option("--known", sol_known, "Known solution expression(s)")->delimiter(',');
    sol->add_option("--steps", sol_steps, "RK4 oracle steps (default 10000)");
    add_shared(sol, solve_opts);

    SharedOpts verify_opts;
    std::string ver_eq, ver_candidate;
    auto* ver = app.add_subcommand("verify", "Check a candidate solution's residual");
    ver->add_option("equation", ver_eq, "Equation file")->required();
    ver->add_option("--candidate", ver_candidate, "Candidate solution expression")->required();
    add_shared(ver, verify_opts);

    SharedOpts sample_opts;
    std::string smp_eq, smp_out = "samples.csv", smp_expr;
    std::optional<double> smp_x0;
    int smp_steps = 10000;
    auto* smp = app.add_subcommand("sample", "Sample an rk4 trajectory or an expression to CSV");
    smp->add_option("equation", smp_eq, "Equation file")->required();
    smp->add_option("-o,--out", smp_out, "Output CSV path");
    smp->add_option("--x0", smp_x0, "Initial value for the rk4 trajectory");
    smp->add_option("--expr", smp_expr, "Expression to sample instead of integrating");
    smp->add_option("--steps", smp_steps, "RK4 steps (default 10000)");
    add_shared(smp, sample_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto* opts : {&check_opts, &transform_opts, &reduce_opts, &solve_opts,
                                 &verify_opts, &sample_opts}) {
            if (opts->tol_quad != 1e-10) set_integral_quadrature({opts->tol_quad, 40});
        }
        if (check->parsed()) return run_check(check_eq, check_opts, echo);
        if (tr->parsed()) return run_transform(tr_eq, tr_mat, tr_out, transform_opts, echo);
        if (red->parsed())
            return run_reduce(red_eq, red_out, red_known, red_variant, reduce_opts, echo);
        if (sol->parsed())
            return run_solve(sol_eq, sol_x0, sol_out, sol_known, sol_steps, solve_opts, echo);
        if (ver->parsed()) return run_verify(ver_eq, ver_candidate, verify_opts, echo);
        if (smp->parsed())
            return run_sample(smp_eq, smp_x0, smp_expr, smp_out, smp_steps, sample_opts, echo);
    } catch (const FileFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
