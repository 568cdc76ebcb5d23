#include "hyperc/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "hyperc/cli/args.hpp"
#include "hyperc/cli/sweep.hpp"
#include "hyperc/core.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/exact/certify.hpp"
#include "hyperc/oracle.hpp"
#include "hyperc/solver.hpp"

namespace hyperc::cli {
namespace {

std::string pair_label(double p, double q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p, q);
    return buf;
}

ExponentPair make_pair(const Number& p, const Number& q) { return ExponentPair(p.value, q.value); }

void require_tol(double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw InputError("tol must lie in [1e-14, 1e-6]");
}

bool is_half(const Number& n) {
    return n.rational ? (n.rational->num == 1 && n.rational->den == 2) : n.value == 0.5;
}

bool is_third(const Number& n) {
    return n.rational ? (n.rational->num == 1 && n.rational->den == 3) : std::fabs(n.value - 1.0 / 3.0) < 1e-15;
}

// Exponent -2/p as text, exact for rational p.
std::string minus_two_over(const Number& p, bool conjugate) {
    if (p.rational) {
        const long a = p.rational->num, b = p.rational->den;
        return conjugate ? format_fraction(-2 * (a - b), a) : format_fraction(-2 * b, a);
    }
    const double ps = conjugate ? p.value / (p.value - 1.0) : p.value;
    return format_double(-2.0 / ps);
}

GridSpec budget_grid(const std::string& budget) {
    if (budget == "small") return GridSpec{1024, 64, 2};
    if (budget == "medium") return GridSpec{4096, 256, 3};
    if (budget == "large") return GridSpec{16384, 512, 4};
    throw InputError("unknown budget '" + budget + "' (small, medium or large)");
}

exact::RationalExponents rational_exponents(const Number& p, const Number& q) {
    if (!p.rational || !q.rational) {
        throw InputError("certification requires rational exponents; give them as m/n (e.g. 5/2 instead of 2.5)");
    }
    return exact::RationalExponents(p.rational->num, p.rational->den, q.rational->num, q.rational->den);
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e)) return kExitInput;
    if (dynamic_cast<const BracketError*>(&e) || dynamic_cast<const SolverError*>(&e)) return kExitSolver;
    if (dynamic_cast<const VerificationError*>(&e) || dynamic_cast<const CertificationError*>(&e) ||
        dynamic_cast<const DegeneracyError*>(&e) || dynamic_cast<const DivisibilityError*>(&e)) {
        return kExitVerification;
    }
    if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    return kExitInternal;
}

RunReport cmd_compute(const ComputeOptions& o) {
    const Number p = parse_number(o.p);
    const Number q = parse_number(o.q);
    require_tol(o.tol);
    const ExponentPair pair = make_pair(p, q);

    RunReport rep;
    rep.command = "compute";
    rep.input("p", o.p);
    rep.input("q", o.q);
    rep.input("tol", format_double(o.tol));

    const Z3Solution sol = solve_z3(pair, o.tol);
    rep.output("r", sol.r(), "residual", sol.residual_max);
    rep.output("x", sol.x);
    rep.output("y", sol.y);
    rep.output("rho0", sol.rho0());
    rep.output("z2_bound", z2_constant(pair));
    rep.method = to_string(sol.method);
    if (sol.multiple_roots) rep.notes.push_back("several crossings found; the minimal cross ratio was taken");

    switch (sol.method) {
        case Z3Method::closed_form_dual:
            rep.notes.push_back("p > 2: solved through the dual pair (q*, p*)");
            break;
        case Z3Method::closed_form_pp_star:
            rep.notes.push_back("q = p*: x = 2^(-2/p) = 2^(" + minus_two_over(p, false) + "), y = 2^(-2/p*) = 2^(" +
                                minus_two_over(p, true) + ")");
            break;
        case Z3Method::closed_form_wolff:
            rep.notes.push_back("p = 2 or q = 2: r = sqrt(2(4^(1/q)-1)/(4-4^(1/q))) for p = 2, dual form otherwise");
            break;
        default: break;
    }

    const Z3Solution direct = solve_z3_direct(pair, sol, o.tol);
    rep.output("newton_r", direct.r(), "abs_diff", std::fabs(direct.r() - sol.r()));
    if (direct.newton_fallback) rep.notes.push_back("Newton cross-check did not converge; seed kept");
    return rep;
}

RunReport cmd_sigma(const SigmaOptions& o) {
    const Number lam = parse_number(o.lambda);
    const Number p = parse_number(o.p);
    const Number q = parse_number(o.q);
    require_tol(o.tol);
    const BiasParam bias(lam.value);
    const ExponentPair pair = make_pair(p, q);

    RunReport rep;
    rep.command = "sigma";
    rep.input("lambda", o.lambda);
    rep.input("p", o.p);
    rep.input("q", o.q);
    rep.input("tol", format_double(o.tol));

    if (is_half(lam)) {
        const double s = z2_constant(pair);
        rep.output("sigma", s, "tolerance", 0.0);
        rep.method = "closed_form_z2";
        rep.notes.push_back("lambda = 1/2: sigma = r(Z_2) = sqrt((p-1)/(q-1))");
        return rep;
    }

    const BiasedSolution sol = solve_biased(bias, pair, o.tol);
    rep.output("sigma", sol.sigma, "residual", sol.residual_max);
    rep.output("x", sol.x);
    rep.output("y", sol.y);
    rep.method = to_string(sol.method);
    if (sol.multiple_roots) rep.notes.push_back("several crossings found; the minimal sigma was taken");

    const double ps = pair.p_star();
    if (std::fabs(pair.q() - ps) <= 1e-14 * ps && pair.p() < 2.0) {
        const ClosedFormValue cf = sigma_pp_star(bias, pair.p());
        const double diff = std::fabs(cf.value - sol.sigma);
        rep.output("sigma_sinh", cf.value, "abs_diff", diff);
        rep.check("sinh-formula", pair_label(pair.p(), pair.q()), diff, 1e-10, diff <= 1e-10);
    }
    if (is_third(lam)) {
        const double r = solve_z3(pair, o.tol).r();
        const double diff = std::fabs(r - sol.sigma);
        rep.output("r_z3", r, "abs_diff", diff);
        rep.check("sigma(1/3) = r", pair_label(pair.p(), pair.q()), diff, 1e-8, diff <= 1e-8);
    }
    return rep;
}

RunReport cmd_verify(const VerifyOptions& o) {
    const Number p = parse_number(o.p);
    const Number q = parse_number(o.q);
    const ExponentPair pair = make_pair(p, q);
    const GridSpec grid = budget_grid(o.budget);
    if (!(o.threshold > 0.0)) throw InputError("threshold must be positive");

    RunReport rep;
    rep.command = "verify";
    rep.input("p", o.p);
    rep.input("q", o.q);
    if (o.lambda) rep.input("lambda", *o.lambda);
    rep.input("budget", o.budget);
    rep.input("threshold", format_double(o.threshold));
    const std::string label = pair_label(pair.p(), pair.q());

    const Z3Solution sol = solve_z3(pair);
    const double r = sol.r();

    if (!o.lambda) {
        const double est = estimate_r(pair, 1e-8, grid);
        const double gap = std::fabs(est - r);
        rep.output("r_solver", r, "residual", sol.residual_max);
        rep.output("r_oracle", est, "tolerance", 1e-8);
        rep.output("gap", gap);
        rep.method = to_string(sol.method);
        rep.check("oracle-r", label, gap, o.threshold, gap <= o.threshold);

        const ExtremizerReport ext = check_extremizer(pair, sol);
        rep.check("extremizer-defect", label, std::fabs(ext.defect), 1e-8, ext.defect_ok);
        rep.check("extremizer-stationarity", label, std::fabs(ext.slope), 1e-4, ext.slope_ok);
        rep.check("endpoint-positive", label, ext.endpoint, 0.0, ext.endpoint_ok);

        const TriangleMinimum tri = check_triangle(pair, r, grid);
        if (triangle_reduction_proved(pair)) {
            rep.check("triangle-min", label, tri.value, 1e-8, tri.value >= -1e-8);
        } else {
            rep.output("triangle_min", tri.value);
            rep.notes.push_back("triangle-to-segment reduction is not proved for this pair; triangle minimum reported only");
        }
        return rep;
    }

    const Number lam = parse_number(*o.lambda);
    const BiasParam bias(lam.value);
    const double sigma = is_half(lam) ? z2_constant(pair) : solve_biased(bias, pair).sigma;
    const double est = estimate_sigma(bias, pair, 1e-8, grid);
    const double gap = std::fabs(est - sigma);
    rep.output("sigma_solver", sigma);
    rep.output("sigma_oracle", est, "tolerance", 1e-8);
    rep.output("gap", gap);
    rep.check("oracle-sigma", label, gap, o.threshold, gap <= o.threshold);
    if (is_third(lam)) {
        const double id_gap = std::fabs(est - r);
        rep.output("r_z3", r);
        rep.check("sigma(1/3) = r (oracle)", label, id_gap, 2e-4, id_gap <= 2e-4);
        const double solver_gap = std::fabs(sigma - r);
        rep.check("sigma(1/3) = r (solver)", label, solver_gap, 1e-8, solver_gap <= 1e-8);
    }
    return rep;
}

CertifyOutcome cmd_certify(const CertifyCommandOptions& o) {
    const Number p = parse_number(o.p);
    const Number q = parse_number(o.q);
    const exact::RationalExponents re = rational_exponents(p, q);
    if (!(o.rel_tol >= 1e-10)) throw InputError("rel-tol must be >= 1e-10");

    CertifyOutcome res;
    RunReport& rep = res.report;
    rep.command = "certify";
    rep.input("p", o.p);
    rep.input("q", o.q);
    rep.input("rel_tol", format_double(o.rel_tol));
    rep.input("max_sylvester_dim", std::to_string(o.max_sylvester_dim));
    rep.input("max_coeff_bits", std::to_string(o.max_coeff_bits));

    const Z3Solution sol = solve_z3(ExponentPair(re.p(), re.q()), 1e-12);
    const double r = sol.r();

    exact::CertifyOptions opts;
    opts.rel_tol = o.rel_tol;
    opts.caps.max_sylvester_dim = o.max_sylvester_dim;
    opts.caps.max_coeff_bits = o.max_coeff_bits;
    const exact::CertifiedPoly cert = exact::certify(re, r, opts);
    res.certificate_json = cert.to_json() + "\n";

    rep.output("r", r, "residual", sol.residual_max);
    rep.output_text("degree", std::to_string(cert.poly.degree()));
    rep.output("abs_value", cert.abs_value, "bound", cert.bound);
    rep.output_text("elimination", cert.stats.describe());
    rep.method = "resultant elimination " + re.to_string();
    rep.check("root-test", re.to_string(), cert.abs_value, cert.bound, true);

    if (re.m() == 2 && re.n() == 1 && re.j() == 4 && re.k() == 1) {
        const exact::IntPoly f{exact::BigInt(-2), exact::BigInt(0), exact::BigInt(4), exact::BigInt(0), exact::BigInt(7)};
        const bool ok = exact::has_exact_factor(cert.poly, f);
        rep.check("factor 7r^4 + 4r^2 - 2", re.to_string(), ok ? 0.0 : 1.0, 0.0, ok);
    }
    if (re.m() == 3 && re.n() == 1 && re.j() == 6 && re.k() == 1) {
        const exact::IntPoly p20 = exact::r36_minimal_polynomial();
        const bool ok = exact::has_exact_factor(cert.poly, p20);
        rep.check("degree-20 minimal polynomial divides", re.to_string(), ok ? 0.0 : 1.0, 0.0, ok);
        const exact::RootTest t = exact::root_test(p20, r, o.rel_tol);
        const double v = std::fabs(t.eval.value) / t.eval.max_coeff;
        rep.check("degree-20 root test", re.to_string(), v, t.threshold / t.eval.max_coeff, t.passed);
    }
    return res;
}

RunReport cmd_identities(const IdentitiesOptions& o) {
    if (o.samples < 0) throw InputError("samples must be nonnegative");
    if (!(o.tol > 0.0)) throw InputError("tol must be positive");
    RunReport rep;
    rep.command = "identities";
    rep.deterministic = true;
    rep.input("samples", std::to_string(o.samples));
    rep.input("seed", std::to_string(o.seed));
    rep.input("tol", format_double(o.tol));

    std::mt19937_64 rng(o.seed);
    auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    for (int i = 0; i < o.samples; ++i) {
        double p = 0.0, q = 0.0;
        switch (i % 3) {
            case 0:
                p = uniform(1.1, 1.8);
                q = uniform(p + 0.1, 1.95);
                break;
            case 1:
                p = uniform(1.1, 1.9);
                q = uniform(2.1, 8.0);
                break;
            default:
                p = uniform(2.1, 5.0);
                q = uniform(p + 0.2, 10.0);
                break;
        }
        const ExponentPair pair(p, q);
        const std::string label = pair_label(p, q);
        const Z3Solution sol = solve_z3(pair);
        const double r = sol.r();

        const double dual = std::fabs(r - solve_z3(pair.dual()).r());
        rep.check("duality", label, dual, o.tol, dual <= o.tol);

        const double cs = std::fabs(r - cross_ratio({std::pow(sol.y, q - 1.0), std::pow(sol.x, p - 1.0)}));
        rep.check("cross-ratio-symmetry", label, cs, o.tol, cs <= o.tol);

        const double sd = residual_selfdual(pair, {sol.x, sol.y}).max_abs();
        rep.check("self-dual-residual", label, sd, o.tol, sd <= o.tol);

        const double margin = z2_constant(pair) - r;
        rep.check("strict-bound", label, margin, 1e-6, margin > 1e-6);

        const double sig = std::fabs(solve_biased(BiasParam(1.0 / 3.0), pair).sigma - r);
        rep.check("sigma(1/3) = r", label, sig, 1e-8, sig <= 1e-8);
    }
    if (o.samples > 0) {
        for (double p : {1.2, 4.0 / 3.0, 1.5, 1.8}) {
            const double ps = p / (p - 1.0);
            const double lhs = solve_z3(ExponentPair(p, ps)).r();
            const double rhs = solve_z3(ExponentPair(p, 2.0)).r() * solve_z3(ExponentPair(2.0, ps)).r();
            const double d = std::fabs(lhs - rhs);
            rep.check("multiplicative-pivot", pair_label(p, ps), d, o.tol, d <= o.tol);
        }
    }
    return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal hypercontractive constants on Z_3 and the biased two-point space", "hyperc"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string format = "text";
    std::string report_out = "-";
    std::function<RunReport()> action;
    std::function<void(const RunReport&)> after;

    ComputeOptions compute;
    auto* c = app.add_subcommand("compute", "Solve for r_{p,q}(Z_3)");
    c->add_option("--p", compute.p, "Exponent p (decimal or m/n)")->required();
    c->add_option("--q", compute.q, "Exponent q > p")->required();
    c->add_option("--tol", compute.tol, "Solver tolerance")->capture_default_str();
    c->add_option("--format", format, "text or json")->capture_default_str();
    c->add_option("--out", report_out, "Report destination ('-' for stdout)")->capture_default_str();
    c->callback([&] { action = [&] { return cmd_compute(compute); }; });

    SigmaOptions sigma;
    auto* s = app.add_subcommand("sigma", "Solve for sigma_{p,q}(lambda)");
    s->add_option("--lambda", sigma.lambda, "Bias in (0, 1/2]")->required();
    s->add_option("--p", sigma.p, "Exponent p")->required();
    s->add_option("--q", sigma.q, "Exponent q > p")->required();
    s->add_option("--tol", sigma.tol, "Solver tolerance")->capture_default_str();
    s->add_option("--format", format, "text or json")->capture_default_str();
    s->add_option("--out", report_out, "Report destination")->capture_default_str();
    s->callback([&] { action = [&] { return cmd_sigma(sigma); }; });

    VerifyOptions verify;
    std::string verify_lambda;
    auto* v = app.add_subcommand("verify", "Compare the solver with the brute-force oracle");
    v->add_option("--p", verify.p, "Exponent p")->required();
    v->add_option("--q", verify.q, "Exponent q > p")->required();
    auto* lam_opt = v->add_option("--lambda", verify_lambda, "Bias; checks sigma instead of r");
    v->add_option("--budget", verify.budget, "small, medium or large")->capture_default_str();
    v->add_option("--threshold", verify.threshold, "Agreement threshold")->capture_default_str();
    v->add_option("--format", format, "text or json")->capture_default_str();
    v->add_option("--out", report_out, "Report destination")->capture_default_str();
    v->callback([&] {
        if (lam_opt->count()) verify.lambda = verify_lambda;
        action = [&] { return cmd_verify(verify); };
    });

    CertifyCommandOptions certify;
    std::string cert_out = "certificate.json";
    auto* ce = app.add_subcommand("certify", "Certify r_{p,q} as a root of an integer polynomial");
    ce->add_option("--p", certify.p, "Exponent p as m/n")->required();
    ce->add_option("--q", certify.q, "Exponent q as j/k")->required();
    ce->add_option("--rel-tol", certify.rel_tol, "Root test tolerance")->capture_default_str();
    ce->add_option("--max-dim", certify.max_sylvester_dim, "Sylvester dimension cap")->capture_default_str();
    ce->add_option("--max-bits", certify.max_coeff_bits, "Coefficient bit-length cap")->capture_default_str();
    ce->add_option("--out", cert_out, "Certificate JSON destination")->capture_default_str();
    ce->add_option("--report", report_out, "Report destination")->capture_default_str();
    ce->add_option("--format", format, "Report format: text or json")->capture_default_str();
    std::string certificate;
    ce->callback([&] {
        action = [&] {
            CertifyOutcome res = cmd_certify(certify);
            certificate = std::move(res.certificate_json);
            return res.report;
        };
        after = [&](const RunReport&) { write_output(cert_out, certificate, out); };
    });

    SweepConfig sweep;
    std::string sweep_kind, sweep_format = "csv";
    std::string sp = "1.5", sq = "3";
    auto* sw = app.add_subcommand("sweep", "Emit figure data as CSV or JSON");
    sw->add_option("kind", sweep_kind,
                   "curves-h, curves-H, blowup-b, blowup-B, curves-Hlambda, sigma-heatmap, nonmult, defect")
        ->required();
    sw->add_option("--p", sp, "Exponent p (nonmult, defect)")->capture_default_str();
    sw->add_option("--q", sq, "Exponent q (nonmult, defect)")->capture_default_str();
    sw->add_option("--p-min", sweep.p_min, "Smallest p (curves-h)")->capture_default_str();
    sw->add_option("--p-max", sweep.p_max, "Largest p (curves-h)")->capture_default_str();
    sw->add_option("--ps", sweep.n_p, "Number of p values (curves-h)")->capture_default_str();
    sw->add_option("--x-grid", sweep.n_x, "Points in x (curves-h)")->capture_default_str();
    sw->add_option("--alpha-min", sweep.alpha_min, "Smallest alpha")->capture_default_str();
    sw->add_option("--alpha-max", sweep.alpha_max, "Largest alpha")->capture_default_str();
    sw->add_option("--alphas", sweep.n_alpha, "Number of alpha values")->capture_default_str();
    sw->add_option("--t-grid", sweep.n_t, "Points in t")->capture_default_str();
    std::string sweep_lambda = "1e-100";
    sw->add_option("--lambda", sweep_lambda, "Bias (curves-Hlambda)")->capture_default_str();
    sw->add_option("--lambda-grid", sweep.n_lambda, "Points in lambda (sigma-heatmap)")->capture_default_str();
    sw->add_option("--pairs", sweep.n_pairs, "Exponent pairs (sigma-heatmap)")->capture_default_str();
    sw->add_option("--s-grid", sweep.n_s, "Points in s (nonmult)")->capture_default_str();
    sw->add_option("--r-grid", sweep.n_r, "Values of r (defect)")->capture_default_str();
    sw->add_option("--rho-grid", sweep.n_rho, "Points in rho (defect)")->capture_default_str();
    sw->add_option("--threads", sweep.threads, "Worker threads (0: all cores)")->capture_default_str();
    sw->add_option("--format", sweep_format, "csv or json")->capture_default_str();
    sw->add_option("--out", sweep.out, "Destination ('-' for stdout)")->capture_default_str();
    sw->callback([&] {
        action = [&] {
            sweep.kind = parse_sweep_kind(sweep_kind);
            sweep.format = parse_data_format(sweep_format);
            sweep.p = parse_number(sp).value;
            sweep.q = parse_number(sq).value;
            sweep.lambda = parse_number(sweep_lambda).value;
            const Table t = run_sweep(sweep);
            write_output(sweep.out, t.render(sweep.format), out);
            RunReport rep;
            rep.command = "sweep";
            rep.input("kind", sweep_kind);
            rep.output_text("rows", std::to_string(t.rows.size()));
            rep.output_text("destination", sweep.out);
            return rep;
        };
        after = [&](const RunReport& rep) {
            // Data already went to stdout; keep the summary off it.
            if (sweep.out != "-") out << rep.render(ReportFormat::text);
        };
    });

    IdentitiesOptions ident;
    auto* id = app.add_subcommand("identities", "Run the identity suite on random exponent pairs");
    id->add_option("--samples", ident.samples, "Number of random pairs")->capture_default_str();
    id->add_option("--seed", ident.seed, "Random seed")->capture_default_str();
    id->add_option("--tol", ident.tol, "Identity tolerance")->capture_default_str();
    id->add_option("--format", format, "text or json")->capture_default_str();
    id->add_option("--out", report_out, "Report destination")->capture_default_str();
    id->callback([&] { action = [&] { return cmd_identities(ident); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const ReportFormat fmt = parse_report_format(format);
        RunReport rep = action();
        rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (after) {
            if (rep.command != "sweep") write_output(report_out, rep.render(fmt), out);
            after(rep);
        } else {
            write_output(report_out, rep.render(fmt), out);
        }
        if (!rep.all_passed()) {
            err << "error: " << rep.command << ": verification failed\n";
            return kExitVerification;
        }
        return kExitOk;
    } catch (const BracketError& e) {
        err << "error: " << e.what() << "\n";
        if (!e.diagnostic().empty()) err << e.diagnostic() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace hyperc::cli
