// Grid evaluation behind the command line: single points, parameter sweeps,
// the verification grid, named figure data sets and CSV emission.
//
// Closed-form columns are attached only when the scenario is the analyzed
// one (identical noise on B and C, none on A); other scenarios emit
// simulation columns with the closed-form fields left empty. Rows follow
// the deterministic grid order kind > lambda > a1 > theta > branch.

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "channels.hpp"
#include "protocol.hpp"
#include "states.hpp"

namespace djrsp {

enum class RunMode { Point, Sweep, Verify, Figure };

/// Grid description for one invocation.
struct SweepConfig {
    std::vector<ChannelKind> noise_kinds;
    std::vector<double> lambda_grid;
    std::vector<double> a1_grid;
    std::vector<std::pair<double, double>> theta_pairs;
    std::vector<Qubit> noisy_qubits{Qubit::B, Qubit::C};
    std::string output_path;  // empty writes to stdout
    RunMode mode = RunMode::Point;
    std::string figure_name;  // set in figure mode only

    void validate() const {
        if (mode == RunMode::Verify) return;  // verify uses its own fixed grid
        if (mode == RunMode::Figure) {
            if (figure_name.empty())
                throw std::invalid_argument("figure mode requires a figure name");
            return;
        }
        if (noise_kinds.empty() || lambda_grid.empty() || a1_grid.empty() ||
            theta_pairs.empty())
            throw std::invalid_argument("sweep grids must be nonempty");
        for (double l : lambda_grid)
            if (!(l >= 0.0 && l <= 1.0))
                throw std::invalid_argument("lambda values must lie in [0, 1]");
        for (double a : a1_grid)
            if (!(a >= 0.0 && a <= 1.0))
                throw std::invalid_argument("a1 values must lie in [0, 1]");
        for (const auto& [t0, t1] : theta_pairs)
            if (!(t0 >= 0.0 && t0 <= kTwoPi && t1 >= 0.0 && t1 <= kTwoPi))
                throw std::invalid_argument("theta values must lie in [0, 2pi]");
    }
};

/// n uniform points covering [0, 1] inclusive.
inline std::vector<double> uniform_grid(std::size_t n = 101) {
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
    return g;
}

/// One CSV record. Optional fields print as empty cells.
struct CsvRow {
    std::string noise;
    double lambda = 0.0;
    double a1 = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    std::optional<int> m;
    std::optional<int> n;
    double p_branch = 0.0;
    std::optional<double> f_sim;
    std::optional<double> f_closed;
    std::optional<double> abs_err;
};

inline constexpr const char* kCsvHeader =
    "noise,lambda,a1,theta0,theta1,m,n,p_branch,f_sim,f_closed,abs_err";

namespace detail {

// 17 significant digits round-trip a double exactly.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

inline std::string format_opt(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string{};
}

inline bool is_bc_only(const std::vector<Qubit>& qubits) {
    bool a = false, b = false, c = false;
    for (Qubit q : qubits) {
        if (q == Qubit::A) a = true;
        if (q == Qubit::B) b = true;
        if (q == Qubit::C) c = true;
    }
    return !a && b && c;
}

}  // namespace detail

inline void write_csv(const std::vector<CsvRow>& rows, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const CsvRow& r : rows) {
        os << r.noise << ',' << detail::format_double(r.lambda) << ','
           << detail::format_double(r.a1) << ',' << detail::format_double(r.theta0) << ','
           << detail::format_double(r.theta1) << ',' << detail::format_opt(r.m) << ','
           << detail::format_opt(r.n) << ',' << detail::format_double(r.p_branch) << ','
           << detail::format_opt(r.f_sim) << ',' << detail::format_opt(r.f_closed) << ','
           << detail::format_opt(r.abs_err) << '\n';
    }
}

inline void emit_csv(const std::vector<CsvRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_csv(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

/// All four branch rows of a single (kind, lambda, spec, qubits) evaluation.
/// The cached source, when given, must equal build_source of the scenario.
inline std::vector<CsvRow> evaluate_point(ChannelKind kind, double lambda,
                                          const TargetStateSpec& spec,
                                          const std::vector<Qubit>& noisy_qubits,
                                          const Matrix* cached_source = nullptr) {
    const NoiseScenario scenario = NoiseScenario::on_qubits(kind, lambda, noisy_qubits);
    std::vector<CsvRow> rows;
    rows.reserve(4);

    CsvRow base;
    base.noise = std::string(channel_kind_name(kind));
    base.lambda = lambda;
    base.a1 = spec.a1;
    base.theta0 = spec.theta0;
    base.theta1 = spec.theta1;

    if (detail::is_bc_only(noisy_qubits)) {
        const auto results = cached_source ? compare(spec, scenario, cached_source)
                                           : compare(spec, scenario);
        for (const FidelityResult& r : results) {
            CsvRow row = base;
            row.m = r.branch_m;
            row.n = r.branch_n;
            row.p_branch = r.prob;
            row.f_sim = r.f_sim;
            row.f_closed = r.f_closed;
            row.abs_err = r.abs_err;
            rows.push_back(std::move(row));
        }
        return rows;
    }

    // No closed form outside the B/C scenario: branch identity and analytic
    // columns stay empty, branches keep the fixed (m, n) order.
    const ProtocolRun run = cached_source
                                ? run_protocol_on_source(spec, scenario, *cached_source)
                                : run_protocol(spec, scenario);
    for (const BranchResult& b : run.branches) {
        CsvRow row = base;
        row.p_branch = b.prob;
        if (b.reachable) row.f_sim = fidelity(*b.rho_out, spec);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Evaluates the full grid of a point/sweep config in deterministic order.
inline std::vector<CsvRow> run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<CsvRow> rows;
    rows.reserve(4 * config.noise_kinds.size() * config.lambda_grid.size() *
                 config.a1_grid.size() * config.theta_pairs.size());

    for (ChannelKind kind : config.noise_kinds)
        for (double lambda : config.lambda_grid) {
            const Matrix source =
                build_source(NoiseScenario::on_qubits(kind, lambda, config.noisy_qubits));
            for (double a1 : config.a1_grid)
                for (const auto& [t0, t1] : config.theta_pairs) {
                    const TargetStateSpec spec = TargetStateSpec::from_a1(a1, t0, t1);
                    auto point = evaluate_point(kind, lambda, spec, config.noisy_qubits, &source);
                    rows.insert(rows.end(), point.begin(), point.end());
                }
        }
    return rows;
}

/// Worst grid point of a verification run.
struct VerifyReport {
    std::size_t branch_count = 0;
    double max_abs_err = 0.0;
    ChannelKind worst_kind = ChannelKind::BitFlip;
    double worst_lambda = 0.0;
    double worst_a1 = 0.0;
    double worst_theta0 = 0.0;
    int worst_m = 0;
    int worst_n = 0;

    bool ok() const { return max_abs_err < 1e-10; }
};

/// Simulation/closed-form agreement over the full grid: every noise kind on
/// B and C, 101 x 101 in (lambda, a1) and six phase differences.
inline VerifyReport run_verify_grid() {
    const std::vector<double> lambdas = uniform_grid();
    const std::vector<double> amplitudes = uniform_grid();
    const double pi = 3.141592653589793;
    const std::vector<double> phase_deltas{0.0, pi / 6.0, pi / 4.0, pi / 2.0,
                                           3.0 * pi / 4.0, pi};

    VerifyReport report;
    for (ChannelKind kind : kAllChannelKinds)
        for (double lambda : lambdas) {
            const NoiseScenario scenario = NoiseScenario::on_bc(kind, lambda);
            const Matrix source = build_source(scenario);
            for (double a1 : amplitudes)
                for (double delta : phase_deltas) {
                    const TargetStateSpec spec = TargetStateSpec::from_a1(a1, delta, 0.0);
                    for (const FidelityResult& r : compare(spec, scenario, &source)) {
                        ++report.branch_count;
                        if (r.abs_err > report.max_abs_err) {
                            report.max_abs_err = r.abs_err;
                            report.worst_kind = kind;
                            report.worst_lambda = lambda;
                            report.worst_a1 = a1;
                            report.worst_theta0 = delta;
                            report.worst_m = r.branch_m;
                            report.worst_n = r.branch_n;
                        }
                    }
                }
        }
    return report;
}

// ---------------------------------------------------------------------------
// Figure data sets. Surfaces run lambda x a1 on the default 101-point grids;
// curve plots run a1 against a handful of lambda values. Bit-flip figures
// differ in the phase difference theta0 - theta1; amplitude-damping figures
// are keyed by Alice's outcome m.

struct FigureDef {
    ChannelKind kind;
    double theta0;           // theta1 is always 0
    bool curves;             // false: lambda x a1 surface, true: per-lambda curves
    std::optional<int> m;    // amplitude damping only
};

inline const std::vector<std::pair<std::string, FigureDef>>& figure_table() {
    static const double pi = 3.141592653589793;
    static const std::vector<std::pair<std::string, FigureDef>> table{
        {"fig2a", {ChannelKind::BitFlip, 0.0, false, std::nullopt}},
        {"fig2b", {ChannelKind::BitFlip, pi / 4.0, false, std::nullopt}},
        {"fig2c", {ChannelKind::BitFlip, pi / 2.0, false, std::nullopt}},
        {"fig2d", {ChannelKind::BitFlip, 0.0, true, std::nullopt}},
        {"fig2e", {ChannelKind::BitFlip, pi / 4.0, true, std::nullopt}},
        {"fig2f", {ChannelKind::BitFlip, pi / 2.0, true, std::nullopt}},
        {"fig3a", {ChannelKind::PhaseFlip, 0.0, false, std::nullopt}},
        {"fig3b", {ChannelKind::PhaseFlip, 0.0, true, std::nullopt}},
        {"fig4a", {ChannelKind::Depolarizing, 0.0, false, std::nullopt}},
        {"fig4b", {ChannelKind::Depolarizing, 0.0, true, std::nullopt}},
        {"fig5a", {ChannelKind::AmplitudeDamping, 0.0, false, 0}},
        {"fig5b", {ChannelKind::AmplitudeDamping, 0.0, false, 1}},
        {"fig5c", {ChannelKind::AmplitudeDamping, 0.0, true, 0}},
        {"fig5d", {ChannelKind::AmplitudeDamping, 0.0, true, 1}},
    };
    return table;
}

inline std::vector<std::string> figure_names() {
    std::vector<std::string> names;
    for (const auto& [name, def] : figure_table()) names.push_back(name);
    return names;
}

inline const FigureDef* find_figure(const std::string& name) {
    for (const auto& [id, def] : figure_table())
        if (id == name) return &def;
    return nullptr;
}

/// Grid rows for one named figure, one row per (lambda, a1) point taken from
/// the branch realizing the plotted curve. The lambda grid may be overridden.
inline std::vector<CsvRow> figure_rows(const std::string& name,
                                       const std::vector<double>* lambda_override = nullptr) {
    const FigureDef* def = find_figure(name);
    if (!def) throw std::invalid_argument("unknown figure: " + name);

    std::vector<double> lambdas;
    if (lambda_override) {
        lambdas = *lambda_override;
        if (lambdas.empty())
            throw std::invalid_argument("figure lambda list must be nonempty");
        for (double l : lambdas)
            if (!(l >= 0.0 && l <= 1.0))
                throw std::invalid_argument("lambda values must lie in [0, 1]");
    } else {
        lambdas = def->curves ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}
                              : uniform_grid();
    }
    const std::vector<double> amplitudes = uniform_grid();

    // All branches agree for bit flip, phase flip and depolarizing; for
    // amplitude damping the m-indexed branch carries the plotted state.
    const int branch_m = def->m.value_or(0);

    std::vector<CsvRow> rows;
    rows.reserve(lambdas.size() * amplitudes.size());
    for (double lambda : lambdas) {
        const NoiseScenario scenario = NoiseScenario::on_bc(def->kind, lambda);
        const Matrix source = build_source(scenario);
        for (double a1 : amplitudes) {
            const TargetStateSpec spec = TargetStateSpec::from_a1(a1, def->theta0, 0.0);
            const auto results = compare(spec, scenario, &source);
            const FidelityResult& r = results[2 * branch_m + 0];

            CsvRow row;
            row.noise = std::string(channel_kind_name(def->kind));
            row.lambda = lambda;
            row.a1 = a1;
            row.theta0 = spec.theta0;
            row.theta1 = spec.theta1;
            row.m = r.branch_m;
            row.n = r.branch_n;
            row.p_branch = r.prob;
            row.f_sim = r.f_sim;
            row.f_closed = r.f_closed;
            row.abs_err = r.abs_err;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace djrsp
