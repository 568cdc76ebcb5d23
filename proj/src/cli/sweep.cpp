#include "hyperc/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "hyperc/cli/args.hpp"
#include "hyperc/core.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/solver.hpp"
#include "json.hpp"

namespace hyperc::cli {
namespace {

using Rows = std::vector<std::vector<double>>;

double lerp_grid(double lo, double hi, int i, int n) {
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Strictly interior uniform grid on (0, 1).
double interior(int i, int n) { return static_cast<double>(i + 1) / static_cast<double>(n + 1); }

void need(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

// Runs fn(g) for g in [0, groups) on up to `threads` workers and concatenates
// the results in group order.
template <class Fn>
Rows run_groups(int groups, int threads, Fn fn) {
    std::vector<Rows> parts(static_cast<std::size_t>(groups));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const int g = next.fetch_add(1);
            if (g >= groups) return;
            try {
                parts[static_cast<std::size_t>(g)] = fn(g);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min(threads, groups));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    Rows out;
    for (auto& p : parts) {
        for (auto& r : p) out.push_back(std::move(r));
    }
    return out;
}

Rows sweep_curves_h(const SweepConfig& c, int threads) {
    return run_groups(c.n_p, threads, [&](int i) {
        const double p = lerp_grid(c.p_min, c.p_max, i, c.n_p);
        Rows rows;
        for (int j = 0; j < c.n_x; ++j) {
            const double x = lerp_grid(0.0, 1.0, j, c.n_x);
            const PlanePoint h = h_curve(p, x);
            rows.push_back({p, x, h.u, h.v});
        }
        return rows;
    });
}

Rows sweep_curves_H(const SweepConfig& c, int threads) {
    return run_groups(c.n_alpha, threads, [&](int i) {
        const double alpha = lerp_grid(c.alpha_min, c.alpha_max, i, c.n_alpha);
        Rows rows;
        for (int j = 0; j < c.n_t; ++j) {
            const double t = interior(j, c.n_t);
            PlanePoint h = H_curve(alpha, t);
            if (c.kind == SweepKind::blowup_b) h = blowup_b(h);
            if (c.kind == SweepKind::blowup_B) h = blowup_B(h);
            rows.push_back({alpha, t, h.u, h.v});
        }
        return rows;
    });
}

// Log-uniform t grid from max(kappa^2, 1e-300) to 1 - 1e-6, with kappa itself
// inserted so the pleat is sampled exactly.
std::vector<double> hlambda_t_grid(const SweepConfig& c) {
    const double kappa = c.lambda / (1.0 - c.lambda);
    const double lo = std::log(std::max(kappa * kappa, 1e-300));
    const double hi = std::log1p(-1e-6);
    std::vector<double> ts;
    for (int j = 0; j < c.n_t; ++j) ts.push_back(std::exp(lerp_grid(lo, hi, j, c.n_t)));
    ts.push_back(kappa);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

Rows sweep_curves_Hlambda(const SweepConfig& c, int threads) {
    const BiasParam lam(c.lambda);
    const std::vector<double> ts = hlambda_t_grid(c);
    return run_groups(c.n_alpha, threads, [&](int i) {
        const double alpha = lerp_grid(c.alpha_min, c.alpha_max, i, c.n_alpha);
        Rows rows;
        for (double t : ts) {
            const PlanePoint h = H_lambda_curve(lam, alpha, t);
            rows.push_back({c.lambda, alpha, t, h.u, h.v});
        }
        return rows;
    });
}

Rows sweep_sigma_heatmap(const SweepConfig& c, int threads) {
    return run_groups(c.n_lambda * c.n_pairs, threads, [&](int g) {
        const int i = g / c.n_pairs;
        const int j = g % c.n_pairs;
        const double lambda = 0.5 * static_cast<double>(i + 1) / static_cast<double>(c.n_lambda);
        const double p = lerp_grid(1.2, 3.0, j, c.n_pairs);
        const double q = 2.0 * p;
        const ExponentPair pair(p, q);
        const double sigma =
            (i + 1 == c.n_lambda) ? z2_constant(pair) : solve_biased(BiasParam(lambda), pair).sigma;
        return Rows{{lambda, p, q, sigma}};
    });
}

double r_or_one(double a, double b) { return a == b ? 1.0 : solve_z3(ExponentPair(a, b)).r(); }

Rows sweep_nonmult(const SweepConfig& c, int threads) {
    const double r_pq = solve_z3(ExponentPair(c.p, c.q)).r();
    return run_groups(c.n_s, threads, [&](int i) {
        const double s = lerp_grid(c.p, c.q, i, c.n_s);
        const double r_ps = r_or_one(c.p, s);
        const double r_sq = r_or_one(s, c.q);
        return Rows{{c.p, s, c.q, r_pq, r_ps, r_sq, r_pq - r_ps * r_sq}};
    });
}

Rows sweep_defect(const SweepConfig& c, int threads) {
    const ExponentPair pair(c.p, c.q);
    const double r_crit = solve_z3(pair).r();
    return run_groups(c.n_r, threads, [&](int i) {
        const double r = std::min(1.0, c.n_r == 1 ? r_crit : r_crit * lerp_grid(0.9, 1.1, i, c.n_r));
        Rows rows;
        for (int j = 0; j < c.n_rho; ++j) {
            const double rho = lerp_grid(0.0, 1.0, j, c.n_rho);
            rows.push_back({c.p, c.q, r, rho, defect_segment(pair, r, rho)});
        }
        return rows;
    });
}

}  // namespace

SweepKind parse_sweep_kind(const std::string& s) {
    static const std::pair<const char*, SweepKind> names[] = {
        {"curves-h", SweepKind::curves_h},           {"curves-H", SweepKind::curves_H},
        {"blowup-b", SweepKind::blowup_b},           {"blowup-B", SweepKind::blowup_B},
        {"curves-Hlambda", SweepKind::curves_Hlambda}, {"sigma-heatmap", SweepKind::sigma_heatmap},
        {"nonmult", SweepKind::nonmult},             {"defect", SweepKind::defect}};
    for (const auto& [name, kind] : names) {
        if (s == name) return kind;
    }
    throw InputError("unknown sweep kind '" + s + "'");
}

std::string to_string(SweepKind k) {
    switch (k) {
        case SweepKind::curves_h: return "curves-h";
        case SweepKind::curves_H: return "curves-H";
        case SweepKind::blowup_b: return "blowup-b";
        case SweepKind::blowup_B: return "blowup-B";
        case SweepKind::curves_Hlambda: return "curves-Hlambda";
        case SweepKind::sigma_heatmap: return "sigma-heatmap";
        case SweepKind::nonmult: return "nonmult";
        case SweepKind::defect: return "defect";
    }
    return "?";
}

DataFormat parse_data_format(const std::string& s) {
    if (s == "csv") return DataFormat::csv;
    if (s == "json") return DataFormat::json;
    throw InputError("unknown data format '" + s + "' (csv or json)");
}

std::vector<std::string> sweep_columns(SweepKind kind) {
    switch (kind) {
        case SweepKind::curves_h: return {"p", "x", "u", "v"};
        case SweepKind::curves_H: return {"alpha", "t", "H1", "H2"};
        case SweepKind::blowup_b:
        case SweepKind::blowup_B: return {"alpha", "t", "U", "V"};
        case SweepKind::curves_Hlambda: return {"lambda", "alpha", "t", "U", "V"};
        case SweepKind::sigma_heatmap: return {"lambda", "p", "q", "sigma"};
        case SweepKind::nonmult: return {"p", "s", "q", "r_pq", "r_ps", "r_sq", "gap"};
        case SweepKind::defect: return {"p", "q", "r", "rho", "G"};
    }
    return {};
}

void SweepConfig::validate() const {
    need(n_p >= 2 && n_x >= 2 && n_alpha >= 2 && n_t >= 2 && n_lambda >= 2 && n_pairs >= 2 && n_s >= 2 &&
             n_rho >= 2 && n_r >= 1,
         "grid counts must be at least 2");
    need(threads >= 0, "threads must be nonnegative");
    switch (kind) {
        case SweepKind::curves_h:
            need(p_min > 1.0 && p_max > p_min && std::isfinite(p_max), "need 1 < p-min < p-max");
            break;
        case SweepKind::curves_H:
        case SweepKind::blowup_b:
        case SweepKind::blowup_B:
        case SweepKind::curves_Hlambda:
            need(alpha_min > -1.0 && alpha_max < 1.0 && alpha_min < alpha_max, "need -1 < alpha-min < alpha-max < 1");
            if (kind == SweepKind::curves_Hlambda) need(lambda > 0.0 && lambda < 0.5, "need 0 < lambda < 1/2");
            break;
        case SweepKind::sigma_heatmap: break;
        case SweepKind::nonmult:
        case SweepKind::defect:
            need(p > 1.0 && q > p && std::isfinite(q), "need 1 < p < q");
            break;
    }
}

int thread_budget(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("HYPERC_THREADS"); env && *env) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (*end != '\0' || cap < 1) throw InputError(std::string("HYPERC_THREADS must be a positive integer, got '") + env + "'");
        n = std::min<long>(n, cap);
    }
    return n;
}

std::string Table::render(DataFormat format) const {
    if (format == DataFormat::json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        return arr.dump(1) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

Table run_sweep(const SweepConfig& config) {
    config.validate();
    const int threads = thread_budget(config.threads);
    Table t;
    t.columns = sweep_columns(config.kind);
    switch (config.kind) {
        case SweepKind::curves_h: t.rows = sweep_curves_h(config, threads); break;
        case SweepKind::curves_H:
        case SweepKind::blowup_b:
        case SweepKind::blowup_B: t.rows = sweep_curves_H(config, threads); break;
        case SweepKind::curves_Hlambda: t.rows = sweep_curves_Hlambda(config, threads); break;
        case SweepKind::sigma_heatmap: t.rows = sweep_sigma_heatmap(config, threads); break;
        case SweepKind::nonmult: t.rows = sweep_nonmult(config, threads); break;
        case SweepKind::defect: t.rows = sweep_defect(config, threads); break;
    }
    return t;
}

}  // namespace hyperc::cli
