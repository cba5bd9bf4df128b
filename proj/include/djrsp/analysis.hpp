// Closed-form output states and fidelities for the four noise channels on
// qubits B and C, plus the comparator that checks the full density-matrix
// simulation against them.
//
// The closed forms are written as direct arithmetic in (lambda, a1, theta)
// so they stay independent of the simulation path they are checked against.
// Bit flip, phase flip and depolarizing noise give one output state shared
// by all branches; amplitude damping gives two, indexed by Alice's m.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "channels.hpp"
#include "matrix.hpp"
#include "protocol.hpp"
#include "states.hpp"

namespace djrsp {

/// Overlap |<phi| rho |phi>| of the output with the pure target.
inline double fidelity(const Matrix& rho_out, const TargetStateSpec& spec) {
    spec.validate();
    if (rho_out.rows() != 2 || rho_out.cols() != 2 || !rho_out.is_finite())
        throw std::invalid_argument("fidelity: expected a finite 2x2 matrix");

    constexpr double tol = 1e-9;
    const double det = (rho_out(0, 0) * rho_out(1, 1) - rho_out(0, 1) * rho_out(1, 0)).real();
    const bool hermitian = std::abs(rho_out(0, 1) - std::conj(rho_out(1, 0))) < tol &&
                           std::abs(rho_out(0, 0).imag()) < tol &&
                           std::abs(rho_out(1, 1).imag()) < tol;
    if (!hermitian || std::abs(rho_out.trace() - cplx{1.0, 0.0}) > tol ||
        rho_out(0, 0).real() < -tol || rho_out(1, 1).real() < -tol || det < -tol)
        throw std::invalid_argument("fidelity: not a density matrix");

    const cplx i{0.0, 1.0};
    const cplx phi0 = spec.a0 * std::exp(i * spec.theta0);
    const cplx phi1 = spec.a1 * std::exp(i * spec.theta1);
    cplx overlap = std::conj(phi0) * rho_out(0, 0) * phi0 +
                   std::conj(phi0) * rho_out(0, 1) * phi1 +
                   std::conj(phi1) * rho_out(1, 0) * phi0 +
                   std::conj(phi1) * rho_out(1, 1) * phi1;
    return std::abs(overlap);
}

namespace detail {

inline void check_closed_form_args(ChannelKind kind, double lambda, std::optional<int> m) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("closed form: lambda must lie in [0, 1]");
    const bool is_ad = kind == ChannelKind::AmplitudeDamping;
    if (is_ad && !m)
        throw std::invalid_argument("closed form: amplitude damping requires m");
    if (!is_ad && m)
        throw std::invalid_argument("closed form: m applies to amplitude damping only");
    if (m && *m != 0 && *m != 1)
        throw std::invalid_argument("closed form: m must be 0 or 1");
}

}  // namespace detail

/// Analytic output fidelity for identical noise of the given kind on B and C.
inline double closed_form_fidelity(ChannelKind kind, double lambda,
                                   const TargetStateSpec& spec,
                                   std::optional<int> m = std::nullopt) {
    detail::check_closed_form_args(kind, lambda, m);
    spec.validate();

    const double a1sq = spec.a1 * spec.a1;
    const double amp = a1sq - a1sq * a1sq;  // a1^2 - a1^4
    switch (kind) {
        case ChannelKind::BitFlip:
            return 1.0 - lambda +
                   4.0 * lambda * amp *
                       (lambda + (1.0 - lambda) * std::cos(2.0 * (spec.theta0 - spec.theta1)));
        case ChannelKind::PhaseFlip:
            return 1.0 - 8.0 * lambda * (1.0 - lambda) * amp;
        case ChannelKind::Depolarizing:
            return 1.0 - (2.0 / 3.0) * lambda + (8.0 / 9.0) * lambda * (4.0 * lambda - 3.0) * amp;
        case ChannelKind::AmplitudeDamping:
            return *m == 0 ? 1.0 - a1sq * lambda : 1.0 + a1sq * lambda - lambda;
    }
    throw std::invalid_argument("closed_form_fidelity: bad kind");
}

/// Analytic output density matrix for identical noise on B and C.
inline Matrix closed_form_output(ChannelKind kind, double lambda,
                                 const TargetStateSpec& spec,
                                 std::optional<int> m = std::nullopt) {
    detail::check_closed_form_args(kind, lambda, m);
    spec.validate();

    const cplx i{0.0, 1.0};
    const double a0sq = spec.a0 * spec.a0;
    const double a1sq = spec.a1 * spec.a1;
    const double cross = spec.a0 * spec.a1;
    const cplx phase = std::exp(i * (spec.theta0 - spec.theta1));  // e^{i(t0 - t1)}

    Matrix rho(2, 2);
    switch (kind) {
        case ChannelKind::BitFlip: {
            rho(0, 0) = a0sq * (1.0 - 2.0 * lambda) + lambda;
            rho(1, 1) = a1sq * (1.0 - 2.0 * lambda) + lambda;
            const double direct = 2.0 * lambda * lambda - 2.0 * lambda + 1.0;
            const double swapped = -2.0 * lambda * (lambda - 1.0);
            rho(0, 1) = cross * (phase * direct + std::conj(phase) * swapped);
            rho(1, 0) = cross * (std::conj(phase) * direct + phase * swapped);
            break;
        }
        case ChannelKind::PhaseFlip: {
            const double off = (1.0 - 2.0 * lambda) * (1.0 - 2.0 * lambda);
            rho(0, 0) = a0sq;
            rho(1, 1) = a1sq;
            rho(0, 1) = cross * off * phase;
            rho(1, 0) = cross * off * std::conj(phase);
            break;
        }
        case ChannelKind::Depolarizing: {
            const double shrink = 3.0 - 4.0 * lambda;
            rho(0, 0) = (a0sq * shrink + 2.0 * lambda) / 3.0;
            rho(1, 1) = (a1sq * shrink + 2.0 * lambda) / 3.0;
            rho(0, 1) = cross * shrink * shrink / 9.0 * phase;
            rho(1, 0) = cross * shrink * shrink / 9.0 * std::conj(phase);
            break;
        }
        case ChannelKind::AmplitudeDamping: {
            const double keep = 1.0 - lambda;
            rho(0, 0) = *m == 0 ? a0sq * keep + lambda : a0sq * keep;
            rho(1, 1) = *m == 0 ? a1sq * keep : a1sq * keep + lambda;
            rho(0, 1) = cross * keep * phase;
            rho(1, 0) = cross * keep * std::conj(phase);
            break;
        }
    }
    return rho;
}

/// One branch of the simulation-vs-closed-form comparison.
struct FidelityResult {
    ChannelKind noise_kind = ChannelKind::BitFlip;
    double lambda = 0.0;
    TargetStateSpec spec;
    std::optional<int> m;  // closed-form key; set for amplitude damping only
    int branch_m = 0;
    int branch_n = 0;
    double prob = 0.0;
    double f_sim = 0.0;
    double f_closed = 0.0;
    double abs_err = 0.0;
};

namespace detail {

/// The comparator only covers the analyzed scenario: one of the four kinds on
/// B and C with equal lambda, nothing on A.
inline std::pair<ChannelKind, double> comparator_scenario_kind(const NoiseScenario& s) {
    const auto& b = s.channel(Qubit::B);
    const auto& c = s.channel(Qubit::C);
    if (s.channel(Qubit::A) || !b || !c || b->kind != c->kind || b->lambda != c->lambda)
        throw std::invalid_argument(
            "compare: scenario must apply one channel kind to B and C with equal lambda");
    return {b->kind, b->lambda};
}

}  // namespace detail

/// Runs the protocol and checks every branch fidelity against the matching
/// closed form (keyed by Alice's outcome for amplitude damping).
inline std::array<FidelityResult, 4> compare(const TargetStateSpec& spec,
                                             const NoiseScenario& scenario,
                                             const Matrix* cached_source = nullptr) {
    const auto [kind, lambda] = detail::comparator_scenario_kind(scenario);
    ProtocolRun run = cached_source ? run_protocol_on_source(spec, scenario, *cached_source)
                                    : run_protocol(spec, scenario);

    std::array<FidelityResult, 4> results;
    for (int idx = 0; idx < 4; ++idx) {
        const BranchResult& b = run.branches[idx];
        if (!b.reachable)
            throw std::runtime_error("compare: unreachable branch in a B/C scenario");

        FidelityResult& r = results[idx];
        r.noise_kind = kind;
        r.lambda = lambda;
        r.spec = spec;
        r.m = (kind == ChannelKind::AmplitudeDamping) ? std::optional<int>{b.m} : std::nullopt;
        r.branch_m = b.m;
        r.branch_n = b.n;
        r.prob = b.prob;
        r.f_sim = fidelity(*b.rho_out, spec);
        r.f_closed = closed_form_fidelity(kind, lambda, spec, r.m);
        r.abs_err = std::abs(r.f_sim - r.f_closed);
    }
    return results;
}

}  // namespace djrsp
