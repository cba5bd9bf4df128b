// Command-line front end: single-point evaluation, parameter sweeps, the
// closed-form verification grid and named figure data sets, all emitted as
// CSV. Exit codes: 0 success, 1 verification or I/O failure, 2 usage error.

#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace djrsp {

namespace detail {

inline std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    for (char c : text) {
        if (c == ',') {
            items.push_back(item);
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    items.push_back(item);
    return items;
}

inline std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> values;
    for (const std::string& token : split_csv_list(text)) {
        if (token.empty())
            throw std::invalid_argument(std::string(what) + ": empty value in list");
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size())
            throw std::invalid_argument(std::string(what) + ": bad number '" + token + "'");
        values.push_back(v);
    }
    return values;
}

inline std::vector<ChannelKind> parse_kind_list(const std::string& text) {
    std::vector<ChannelKind> kinds;
    for (const std::string& token : split_csv_list(text)) {
        auto kind = parse_channel_kind(token);
        if (!kind)
            throw std::invalid_argument(
                "unknown noise kind '" + token +
                "' (expected bitflip, phaseflip, depolarizing or amplitude)");
        kinds.push_back(*kind);
    }
    return kinds;
}

inline std::vector<Qubit> parse_noisy_qubits(const std::string& text) {
    std::string lower;
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower.empty() || lower == "none") return {};

    std::vector<Qubit> qubits;
    for (char c : lower) {
        switch (c) {
            case 'a': qubits.push_back(Qubit::A); break;
            case 'b': qubits.push_back(Qubit::B); break;
            case 'c': qubits.push_back(Qubit::C); break;
            default:
                throw std::invalid_argument(
                    "noisy-qubits must be a subset of ABC or 'none'");
        }
    }
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    return qubits;
}

inline void emit_rows(const std::vector<CsvRow>& rows, const std::string& out_path) {
    if (out_path.empty())
        write_csv(rows, std::cout);
    else
        emit_csv(rows, out_path);
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args) {
    CLI::App app{
        "Density-matrix simulation of deterministic joint remote state "
        "preparation over a GHZ channel under bit-flip, phase-flip, "
        "depolarizing and amplitude-damping noise."};
    app.name("djrsp");

    std::string mode_str;
    std::string noise_str;
    std::optional<double> lambda;
    std::string lambda_list_str;
    std::optional<double> a1;
    double theta0 = 0.0;
    double theta1 = 0.0;
    std::string noisy_qubits_str = "BC";
    std::string figure_name;
    std::string out_path;

    app.add_option("--mode", mode_str, "point | sweep | verify | figure")->required();
    app.add_option("--noise", noise_str,
                   "noise kind: bitflip, phaseflip, depolarizing, amplitude "
                   "(comma list allowed in sweep mode)");
    app.add_option("--lambda", lambda, "noise parameter in [0, 1]");
    CLI::Option* lambda_list_opt =
        app.add_option("--lambda-list", lambda_list_str, "comma-separated lambda values");
    app.add_option("--a1", a1, "target amplitude a1 in [0, 1]; a0 = sqrt(1 - a1^2)");
    app.add_option("--theta0", theta0, "target phase theta0 in [0, 2pi] (default 0)");
    app.add_option("--theta1", theta1, "target phase theta1 in [0, 2pi] (default 0)");
    app.add_option("--noisy-qubits", noisy_qubits_str,
                   "qubits passed through the channel: subset of ABC or 'none' (default BC)");
    app.add_option("--name", figure_name,
                   "figure data set id: fig2a..fig2f, fig3a, fig3b, fig4a, fig4b, fig5a..fig5d");
    app.add_option("--out", out_path, "output CSV path (default stdout)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (mode_str == "verify") {
            const VerifyReport report = run_verify_grid();
            std::printf("verify: %zu branch comparisons, max |f_sim - f_closed| = %.3e\n",
                        report.branch_count, report.max_abs_err);
            if (!report.ok()) {
                std::printf(
                    "FAIL: worst point noise=%s lambda=%.17g a1=%.17g theta0=%.17g "
                    "branch m=%d n=%d\n",
                    std::string(channel_kind_name(report.worst_kind)).c_str(),
                    report.worst_lambda, report.worst_a1, report.worst_theta0,
                    report.worst_m, report.worst_n);
                return 1;
            }
            std::printf("PASS (tolerance 1e-10)\n");
            return 0;
        }

        if (mode_str == "figure") {
            if (figure_name.empty())
                throw std::invalid_argument("figure mode requires --name");
            std::optional<std::vector<double>> lambdas;
            if (lambda_list_opt->count() > 0)
                lambdas = detail::parse_double_list(lambda_list_str, "--lambda-list");
            else if (lambda)
                lambdas = std::vector<double>{*lambda};
            const auto rows = figure_rows(figure_name, lambdas ? &*lambdas : nullptr);
            detail::emit_rows(rows, out_path);
            return 0;
        }

        if (mode_str == "point") {
            if (noise_str.empty() || !lambda || !a1)
                throw std::invalid_argument("point mode requires --noise, --lambda and --a1");
            const auto kinds = detail::parse_kind_list(noise_str);
            if (kinds.size() != 1)
                throw std::invalid_argument("point mode takes a single noise kind");
            const TargetStateSpec spec = TargetStateSpec::from_a1(*a1, theta0, theta1);
            spec.validate();
            const auto rows = evaluate_point(kinds[0], *lambda, spec,
                                             detail::parse_noisy_qubits(noisy_qubits_str));
            detail::emit_rows(rows, out_path);
            return 0;
        }

        if (mode_str == "sweep") {
            SweepConfig config;
            config.mode = RunMode::Sweep;
            config.noise_kinds =
                noise_str.empty()
                    ? std::vector<ChannelKind>(kAllChannelKinds.begin(), kAllChannelKinds.end())
                    : detail::parse_kind_list(noise_str);
            if (lambda_list_opt->count() > 0)
                config.lambda_grid = detail::parse_double_list(lambda_list_str, "--lambda-list");
            else if (lambda)
                config.lambda_grid = {*lambda};
            else
                config.lambda_grid = uniform_grid();
            config.a1_grid = a1 ? std::vector<double>{*a1} : uniform_grid();
            config.theta_pairs = {{theta0, theta1}};
            config.noisy_qubits = detail::parse_noisy_qubits(noisy_qubits_str);
            config.output_path = out_path;
            config.validate();
            detail::emit_rows(run_sweep(config), out_path);
            return 0;
        }

        throw std::invalid_argument("unknown mode '" + mode_str +
                                    "' (expected point, sweep, verify or figure)");
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_cli(int argc, char** argv) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace djrsp
