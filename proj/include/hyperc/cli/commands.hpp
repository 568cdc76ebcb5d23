#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>

#include "hyperc/cli/report.hpp"

namespace hyperc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitInput = 2,
    kExitSolver = 3,
    kExitVerification = 4,
    kExitCapacity = 5,
    kExitIo = 6,
};

// InputError -> 2, BracketError/SolverError -> 3, verification-type errors
// -> 4, CapacityError -> 5, IoError -> 6, anything else -> 1.
int exit_code_for(const std::exception& e);

struct ComputeOptions {
    std::string p;
    std::string q;
    double tol = 1e-12;
};
RunReport cmd_compute(const ComputeOptions& o);

struct SigmaOptions {
    std::string lambda;
    std::string p;
    std::string q;
    double tol = 1e-12;
};
RunReport cmd_sigma(const SigmaOptions& o);

struct VerifyOptions {
    std::string p;
    std::string q;
    std::optional<std::string> lambda;
    std::string budget = "medium";  // small, medium, large
    double threshold = 1e-4;
};
// Failed checks are reported, not thrown.
RunReport cmd_verify(const VerifyOptions& o);

struct CertifyCommandOptions {
    std::string p;
    std::string q;
    double rel_tol = 1e-6;
    int max_sylvester_dim = 64;
    long max_coeff_bits = 1L << 20;
};
struct CertifyOutcome {
    RunReport report;
    std::string certificate_json;
};
CertifyOutcome cmd_certify(const CertifyCommandOptions& o);

struct IdentitiesOptions {
    int samples = 20;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};
RunReport cmd_identities(const IdentitiesOptions& o);

// Full command line (argv[0] is the program name). Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperc::cli
