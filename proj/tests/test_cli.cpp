#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hyperc/cli/args.hpp"
#include "hyperc/cli/commands.hpp"
#include "hyperc/cli/report.hpp"
#include "hyperc/cli/sweep.hpp"
#include "hyperc/core.hpp"
#include "hyperc/errors.hpp"
#include "json.hpp"

using namespace hyperc;
using namespace hyperc::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hyperc");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> v;
    std::istringstream is(line);
    for (std::string f; std::getline(is, f, ',');) v.push_back(std::stod(f));
    return v;
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / ("hyperc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("number parsing") {
    const Number a = parse_number("4/3");
    REQUIRE(a.rational);
    CHECK(a.rational->num == 4);
    CHECK(a.rational->den == 3);
    CHECK(a.value == 4.0 / 3.0);
    const Number b = parse_number("6/4");
    CHECK(b.rational->num == 3);
    CHECK(b.rational->den == 2);
    CHECK(parse_number("3").rational->den == 1);
    CHECK_FALSE(parse_number("2.5").rational);
    CHECK(parse_number("1e-100").value == 1e-100);
    CHECK_THROWS_AS(parse_number("1/0"), InputError);
    CHECK_THROWS_AS(parse_number("abc"), InputError);
    CHECK_THROWS_AS(parse_number("1.5x"), InputError);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_fraction(6, -4) == "-3/2");
}

TEST_CASE("exit codes map error categories") {
    CHECK(exit_code_for(InputError("x")) == 2);
    CHECK(exit_code_for(BracketError("x")) == 3);
    CHECK(exit_code_for(SolverError("x")) == 3);
    CHECK(exit_code_for(VerificationError("x")) == 4);
    CHECK(exit_code_for(CertificationError("x")) == 4);
    CHECK(exit_code_for(DegeneracyError("x")) == 4);
    CHECK(exit_code_for(DivisibilityError("x")) == 4);
    CHECK(exit_code_for(CapacityError("x")) == 5);
    CHECK(exit_code_for(IoError("x")) == 6);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("compute") {
    const Run a = run({"compute", "--p", "2", "--q", "4", "--format", "json"});
    REQUIRE(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(std::fabs(j["outputs"]["r"].get<double>() - 0.5660188) < 1e-7);
    CHECK(j["method"] == "closed_form_wolff");
    CHECK(j["inputs"]["p"] == "2");
    CHECK(j["outputs"].contains("r_residual"));

    const Run b = run({"compute", "--p", "4/3", "--q", "4"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("2^(-3/2)") != std::string::npos);
    CHECK(b.out.find("2^(-1/2)") != std::string::npos);
    CHECK(b.out.find("closed_form_pp_star") != std::string::npos);

    CHECK(run({"compute", "--p", "3", "--q", "1.5"}).code == 2);
    CHECK(run({"compute", "--p", "x", "--q", "3"}).code == 2);
    CHECK(run({"compute", "--p", "2"}).code == 2);
    CHECK(run({"compute", "--p", "2", "--q", "3", "--format", "xml"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("sigma") {
    const Run a = run({"sigma", "--lambda", "1/3", "--p", "2", "--q", "4", "--format", "json"});
    REQUIRE(a.code == 0);
    CHECK(std::fabs(nlohmann::json::parse(a.out)["outputs"]["sigma"].get<double>() - 0.5660188) < 1e-7);

    const Run b = run({"sigma", "--lambda", "1/2", "--p", "2", "--q", "4", "--format", "json"});
    REQUIRE(b.code == 0);
    const auto jb = nlohmann::json::parse(b.out);
    CHECK(std::fabs(jb["outputs"]["sigma"].get<double>() - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(jb["method"] == "closed_form_z2");

    const Run c = run({"sigma", "--lambda", "0.25", "--p", "1.5", "--q", "3"});
    REQUIRE(c.code == 0);
    CHECK(c.out.find("PASS  sinh-formula") != std::string::npos);

    CHECK(run({"sigma", "--lambda", "0.7", "--p", "2", "--q", "4"}).code == 2);
}

TEST_CASE("verify") {
    const Run a = run({"verify", "--p", "2", "--q", "4", "--format", "json"});
    CHECK(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["outputs"]["gap"].get<double>() < 1e-4);
    for (const auto& row : j["checks"]) CHECK(row["passed"].get<bool>());

    const Run b = run({"verify", "--p", "3", "--q", "6"});
    CHECK(b.code == 0);
    CHECK(b.out.find("reported only") != std::string::npos);

    const Run c = run({"verify", "--p", "2", "--q", "4", "--lambda", "1/3", "--format", "json"});
    CHECK(c.code == 0);
    bool saw = false;
    const auto jc = nlohmann::json::parse(c.out);
    for (const auto& row : jc["checks"]) {
        if (row["check"] == "sigma(1/3) = r (oracle)") {
            saw = true;
            CHECK(row["value"].get<double>() < 2e-4);
        }
    }
    CHECK(saw);

    // An impossible threshold makes the agreement check fail.
    CHECK(run({"verify", "--p", "2", "--q", "4", "--threshold", "1e-14", "--budget", "small"}).code == 4);
    CHECK(run({"verify", "--p", "2", "--q", "4", "--budget", "huge"}).code == 2);
}

TEST_CASE("certify") {
    const fs::path dir = scratch_dir();
    const fs::path cert = dir / "cert24.json";
    const Run a = run({"certify", "--p", "2", "--q", "4", "--out", cert.string()});
    REQUIRE(a.code == 0);
    CHECK(a.out.find("PASS  factor 7r^4 + 4r^2 - 2") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(cert));
    CHECK(j["variable"] == "r");
    CHECK(j["coefficients"].is_array());
    CHECK(j["abs_value"].get<double>() <= j["bound"].get<double>());

    const fs::path cert36 = dir / "cert36.json";
    const Run b = run({"certify", "--p", "3", "--q", "6", "--out", cert36.string()});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("PASS  degree-20 root test") != std::string::npos);
    CHECK(b.out.find("PASS  degree-20 minimal polynomial divides") != std::string::npos);

    CHECK(run({"certify", "--p", "2.5", "--q", "4", "--out", (dir / "x.json").string()}).code == 2);
    CHECK(run({"certify", "--p", "4/2", "--q", "4", "--out", (dir / "y.json").string()}).code == 0);
    // A rational p = 5/2 is accepted; its elimination exceeds the default caps.
    CHECK(run({"certify", "--p", "5/2", "--q", "4", "--out", (dir / "w.json").string()}).code == 5);
    CHECK(run({"certify", "--p", "2", "--q", "4", "--max-dim", "10", "--out", (dir / "z.json").string()}).code == 5);
    CHECK_FALSE(fs::exists(dir / "z.json"));
    fs::remove_all(dir);
}

TEST_CASE("sweep schemas") {
    struct Case {
        std::string kind;
        std::vector<std::string> args;
        std::string header;
        std::size_t rows;
    };
    const std::vector<Case> cases = {
        {"curves-h", {"--ps", "3", "--x-grid", "5"}, "p,x,u,v", 15},
        {"curves-H", {"--alphas", "9", "--t-grid", "512"}, "alpha,t,H1,H2", 9 * 512},
        {"blowup-b", {"--alphas", "3", "--t-grid", "4"}, "alpha,t,U,V", 12},
        {"blowup-B", {"--alphas", "3", "--t-grid", "4"}, "alpha,t,U,V", 12},
        {"curves-Hlambda", {"--alphas", "3", "--t-grid", "8"}, "lambda,alpha,t,U,V", 0},
        {"sigma-heatmap", {"--lambda-grid", "4", "--pairs", "2"}, "lambda,p,q,sigma", 8},
        {"nonmult", {"--p", "1.5", "--q", "3", "--s-grid", "5"}, "p,s,q,r_pq,r_ps,r_sq,gap", 5},
        {"defect", {"--r-grid", "3", "--rho-grid", "4"}, "p,q,r,rho,G", 12},
    };
    for (const Case& c : cases) {
        std::vector<std::string> args = {"sweep", c.kind};
        args.insert(args.end(), c.args.begin(), c.args.end());
        const Run r = run(args);
        INFO(c.kind);
        REQUIRE(r.code == 0);
        const auto ls = lines(r.out);
        REQUIRE(!ls.empty());
        CHECK(ls[0] == c.header);
        if (c.rows > 0) CHECK(ls.size() == c.rows + 1);
        CHECK(r.out.find('\r') == std::string::npos);
        for (std::size_t i = 1; i < ls.size(); ++i) {
            for (double v : fields(ls[i])) CHECK(std::isfinite(v));
        }

        // JSON mirrors the CSV row for row.
        args.push_back("--format");
        args.push_back("json");
        const Run jr = run(args);
        REQUIRE(jr.code == 0);
        const auto j = nlohmann::json::parse(jr.out);
        REQUIRE(j.is_array());
        CHECK(j.size() == ls.size() - 1);
        const std::vector<double> first = fields(ls[1]);
        const std::vector<std::string> cols = sweep_columns(parse_sweep_kind(c.kind));
        REQUIRE(cols.size() == first.size());
        CHECK(j[0].size() == cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) CHECK(j[0][cols[i]].get<double>() == first[i]);
    }
    CHECK(run({"sweep", "curves-X"}).code == 2);
    CHECK(run({"sweep", "curves-H", "--t-grid", "1"}).code == 2);
    CHECK(run({"sweep", "curves-H", "--format", "xml"}).code == 2);
}

TEST_CASE("nonmult sweep has a zero gap at the pivot") {
    const Run r = run({"sweep", "nonmult", "--p", "1.5", "--q", "3", "--s-grid", "4"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    const std::vector<double> mid = fields(ls[2]);
    CHECK(mid[1] == 2.0);
    CHECK(std::fabs(mid[6]) < 1e-8);
}

TEST_CASE("curves-Hlambda keeps the pleat at extreme bias") {
    const Run r = run({"sweep", "curves-Hlambda", "--lambda", "1e-100", "--alphas", "5", "--t-grid", "64"});
    REQUIRE(r.code == 0);
    const double lam = 1e-100;
    const double kappa = lam / (1.0 - lam);
    const double expected = std::log(4.0 * lam * (1.0 - lam)) / std::log(lam);
    bool found = false;
    for (const std::string& l : lines(r.out)) {
        if (l.rfind("lambda", 0) == 0) continue;
        const std::vector<double> f = fields(l);
        for (double v : f) CHECK(std::isfinite(v));
        if (f[1] == 0.0 && f[2] == kappa) {
            found = true;
            CHECK(std::fabs(f[3]) < 1e-10);
            CHECK(std::fabs(f[4] - expected) < 1e-10);
        }
    }
    CHECK(found);
}

TEST_CASE("sweeps are deterministic and thread independent") {
    const Run a = run({"sweep", "defect", "--threads", "1"});
    const Run b = run({"sweep", "defect", "--threads", "4"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    ::setenv("HYPERC_THREADS", "2", 1);
    CHECK(thread_budget(8) == 2);
    CHECK(thread_budget(1) == 1);
    const Run c = run({"sweep", "defect"});
    CHECK(c.out == a.out);
    ::setenv("HYPERC_THREADS", "0", 1);
    CHECK(run({"sweep", "defect"}).code == 2);
    ::setenv("HYPERC_THREADS", "many", 1);
    CHECK_THROWS_AS(thread_budget(1), InputError);
    ::unsetenv("HYPERC_THREADS");
}

TEST_CASE("file output is atomic and reported") {
    const fs::path dir = scratch_dir();
    const fs::path target = dir / "h.csv";
    const Run r = run({"sweep", "curves-h", "--ps", "2", "--x-grid", "3", "--out", target.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("destination") != std::string::npos);
    CHECK(lines(slurp(target)).size() == 7);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);

    const Run bad = run({"sweep", "curves-h", "--out", (dir / "missing" / "h.csv").string()});
    CHECK(bad.code == 6);
    CHECK(run({"compute", "--p", "2", "--q", "4", "--out", (dir / "missing" / "r.txt").string()}).code == 6);

    const fs::path rep = dir / "r.txt";
    CHECK(run({"compute", "--p", "2", "--q", "4", "--out", rep.string()}).code == 0);
    CHECK(slurp(rep).find("output r = ") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("identities") {
    const Run a = run({"identities"});
    CHECK(a.code == 0);
    CHECK(a.out.find("FAIL") == std::string::npos);
    CHECK(a.out.find("PASS  duality") != std::string::npos);
    CHECK(a.out.find("PASS  multiplicative-pivot") != std::string::npos);
    const Run b = run({"identities"});
    CHECK(a.out == b.out);
    CHECK(run({"identities", "--seed", "7"}).out != a.out);

    const Run z = run({"identities", "--samples", "0"});
    CHECK(z.code == 0);
    CHECK(z.out.find("checks (none)") != std::string::npos);
    const Run zj = run({"identities", "--samples", "0", "--format", "json"});
    CHECK(nlohmann::json::parse(zj.out)["checks"].empty());
    CHECK(run({"identities", "--samples", "-1"}).code == 2);
}

TEST_CASE("report rendering") {
    RunReport rep;
    rep.command = "compute";
    rep.input("p", "2");
    rep.output("r", 0.5, "residual", 1e-16);
    rep.check("c", "s", 0.0, 1.0, true);
    rep.deterministic = true;
    const std::string t = rep.render(ReportFormat::text);
    CHECK(t.find("  input  p = 2\n") != std::string::npos);
    CHECK(t.find("  output r = 0.5  (residual 1e-16)\n") != std::string::npos);
    CHECK(t.find("    PASS  c s  value 0  tol 1\n") != std::string::npos);
    CHECK(t.find("wall time") == std::string::npos);
    const auto j = nlohmann::json::parse(rep.render(ReportFormat::json));
    CHECK(j["outputs"]["r"] == 0.5);
    CHECK(j["outputs"]["r_residual"] == 1e-16);
    CHECK(j["version"] == kVersion);
}
