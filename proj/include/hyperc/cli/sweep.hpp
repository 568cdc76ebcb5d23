#pragma once

// Data sweeps behind the figures. Every sweep is a deterministic function of
// its configuration; rows are computed in parallel groups and emitted in grid
// order.

#include <string>
#include <vector>

namespace hyperc::cli {

enum class SweepKind { curves_h, curves_H, blowup_b, blowup_B, curves_Hlambda, sigma_heatmap, nonmult, defect };

SweepKind parse_sweep_kind(const std::string& s);
std::string to_string(SweepKind k);

enum class DataFormat { csv, json };

DataFormat parse_data_format(const std::string& s);

struct SweepConfig {
    SweepKind kind = SweepKind::curves_H;

    // nonmult, defect
    double p = 1.5;
    double q = 3.0;

    // curves-h: p grid and x grid on [0, 1]
    double p_min = 1.2;
    double p_max = 6.0;
    int n_p = 9;
    int n_x = 256;

    // curves-H, blowup-*, curves-Hlambda
    double alpha_min = -0.9;
    double alpha_max = 0.9;
    int n_alpha = 9;
    int n_t = 256;

    // curves-Hlambda
    double lambda = 1e-100;

    // sigma-heatmap: lambda in (0, 1/2], pairs (p, 2p) for p in [1.2, 3]
    int n_lambda = 32;
    int n_pairs = 8;

    // nonmult: s grid on [p, q]
    int n_s = 64;

    // defect: r grid around the critical r, rho grid on [0, 1]
    int n_r = 5;
    int n_rho = 256;

    DataFormat format = DataFormat::csv;
    std::string out = "-";
    int threads = 0;  // 0: hardware concurrency

    // Grid counts >= 2 and ranges inside the mathematical domains; throws
    // InputError.
    void validate() const;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string render(DataFormat format) const;
};

std::vector<std::string> sweep_columns(SweepKind kind);

// Threads to use: requested (0 means hardware concurrency), capped by the
// HYPERC_THREADS environment variable when set.
int thread_budget(int requested);

Table run_sweep(const SweepConfig& config);

}  // namespace hyperc::cli
