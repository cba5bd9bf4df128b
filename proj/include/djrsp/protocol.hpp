// Density-operator execution of the joint remote state preparation protocol
// on an arbitrary (possibly noisy) three-qubit source state.
//
// Step 1: Alice projects qubit A in her amplitude basis and broadcasts m.
// Step 2: Bob projects qubit B in the phase basis selected by m and
//         broadcasts n.
// Step 3: Charlie applies the recovery unitary for (m, n) to qubit C.
//
// All four (m, n) branches are enumerated. The joint branch probability is
// the trace of the twice-projected unnormalized state; per-step conditional
// normalization is used only to build the conditional states, so the
// probabilities stay well defined when a conditional trace vanishes.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "channels.hpp"
#include "matrix.hpp"
#include "states.hpp"

namespace djrsp {

/// Branches with joint probability below this are reported without an output
/// state instead of dividing by a vanishing trace.
constexpr double kUnreachableProb = 1e-15;

/// One classical-outcome branch: Alice's m, Bob's n, the joint probability of
/// the pair, and Charlie's state after recovery (absent when unreachable).
struct BranchResult {
    int m = 0;
    int n = 0;
    double prob = 0.0;
    bool reachable = false;
    std::optional<Matrix> rho_out;
};

struct ProtocolRun {
    TargetStateSpec spec;
    NoiseScenario scenario;
    std::array<BranchResult, 4> branches;  // in (m, n) order: 00, 01, 10, 11

    const BranchResult& branch(int m, int n) const { return branches[2 * m + n]; }
};

/// The shared resource after distribution through the noisy channels.
inline Matrix build_source(const NoiseScenario& scenario) {
    return apply_noise(ghz3_density(), scenario);
}

/// Runs the protocol against a prebuilt source state. Sweeps cache the source
/// per noise point since it does not depend on the target spec.
inline ProtocolRun run_protocol_on_source(const TargetStateSpec& spec,
                                          const NoiseScenario& scenario,
                                          const Matrix& rho_source) {
    spec.validate();
    if (rho_source.rows() != 8 || rho_source.cols() != 8)
        throw std::invalid_argument("run_protocol: source must be 8x8");

    const ProtocolOperators ops = make_protocol_operators(spec);
    ProtocolRun run{spec, scenario, {}};

    for (int m = 0; m < 2; ++m) {
        const Matrix ma = kron(ops.alice_projectors[m], Matrix::identity(4));
        const Matrix projected_a = ma * rho_source * ma.adjoint();
        const double prob_m = projected_a.trace().real();

        if (prob_m < kUnreachableProb) {
            for (int n = 0; n < 2; ++n)
                run.branches[2 * m + n] = BranchResult{m, n, prob_m / 2.0, false, std::nullopt};
            continue;
        }

        // Bob and Charlie's conditional state: project, trace out A,
        // normalize by the outcome probability.
        const Matrix rho_bc =
            partial_trace(projected_a, {2, 2, 2}, {1, 2}) * cplx{1.0 / prob_m, 0.0};

        for (int n = 0; n < 2; ++n) {
            const Matrix mb = kron(ops.bob_projectors[m][n], Matrix::identity(2));
            const Matrix projected_b = mb * rho_bc * mb.adjoint();
            const double prob_n_given_m = projected_b.trace().real();
            const double joint = prob_m * prob_n_given_m;

            BranchResult& out = run.branches[2 * m + n];
            out.m = m;
            out.n = n;
            out.prob = joint;
            if (prob_n_given_m < kUnreachableProb) {
                out.reachable = false;
                continue;
            }

            const Matrix charlie =
                partial_trace(projected_b, {2, 2}, {1}) * cplx{1.0 / prob_n_given_m, 0.0};
            const Matrix& r = ops.recovery[m][n];
            out.rho_out = r * charlie * r.adjoint();
            out.reachable = true;
        }
    }
    return run;
}

inline ProtocolRun run_protocol(const TargetStateSpec& spec, const NoiseScenario& scenario) {
    return run_protocol_on_source(spec, scenario, build_source(scenario));
}

/// Probability-weighted mixture over the reachable branches.
inline Matrix average_output(const ProtocolRun& run) {
    Matrix avg(2, 2);
    for (const BranchResult& b : run.branches)
        if (b.reachable) avg += *b.rho_out * cplx{b.prob, 0.0};
    return avg;
}

}  // namespace djrsp
