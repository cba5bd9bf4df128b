// Single-qubit Kraus channels and their application to selected qubits of a
// three-qubit density matrix.
//
// The four channel kinds share one parameter lambda in [0, 1]. Phase flip
// with this parametrization also models phase damping. Operators acting on
// different qubits combine as independent index sums (a product channel).

#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"
#include "states.hpp"

namespace djrsp {

enum class ChannelKind { BitFlip, PhaseFlip, Depolarizing, AmplitudeDamping };

constexpr std::array<ChannelKind, 4> kAllChannelKinds{
    ChannelKind::BitFlip, ChannelKind::PhaseFlip,
    ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping};

/// A named noise type with parameter lambda, materialized as 2x2 Kraus
/// operators satisfying sum_k E_k^dag E_k = I.
struct KrausChannel {
    ChannelKind kind = ChannelKind::BitFlip;
    double lambda = 0.0;
    std::vector<Matrix> kraus_ops;

    /// Applies the channel to a single-qubit density matrix.
    Matrix apply(const Matrix& rho) const {
        if (rho.rows() != 2 || rho.cols() != 2)
            throw std::invalid_argument("KrausChannel::apply: expected a 2x2 matrix");
        Matrix out(2, 2);
        for (const Matrix& e : kraus_ops) out += e * rho * e.adjoint();
        return out;
    }
};

inline KrausChannel make_channel(ChannelKind kind, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("make_channel: lambda must lie in [0, 1]");

    const double keep = std::sqrt(1.0 - lambda);
    KrausChannel ch{kind, lambda, {}};
    switch (kind) {
        case ChannelKind::BitFlip:
            ch.kraus_ops = {identity2() * cplx{keep, 0.0},
                            pauli_x() * cplx{std::sqrt(lambda), 0.0}};
            break;
        case ChannelKind::PhaseFlip:
            ch.kraus_ops = {identity2() * cplx{keep, 0.0},
                            pauli_z() * cplx{std::sqrt(lambda), 0.0}};
            break;
        case ChannelKind::Depolarizing: {
            const cplx third{std::sqrt(lambda / 3.0), 0.0};
            ch.kraus_ops = {identity2() * cplx{keep, 0.0}, pauli_x() * third,
                            pauli_z() * third, pauli_y() * third};
            break;
        }
        case ChannelKind::AmplitudeDamping:
            ch.kraus_ops = {Matrix{{1.0, 0.0}, {0.0, keep}},
                            Matrix{{0.0, std::sqrt(lambda)}, {0.0, 0.0}}};
            break;
    }
    return ch;
}

enum class Qubit : int { A = 0, B = 1, C = 2 };

/// Which qubits of the shared resource pass through which channel. The
/// standard scenario puts the same channel on B and C and none on A; the
/// data model also admits noise on A and different kinds per qubit.
struct NoiseScenario {
    std::array<std::optional<KrausChannel>, 3> assignments;

    static NoiseScenario none() { return NoiseScenario{}; }

    static NoiseScenario on_qubits(ChannelKind kind, double lambda,
                                   const std::vector<Qubit>& qubits) {
        NoiseScenario s;
        for (Qubit q : qubits) s.assignments[static_cast<int>(q)] = make_channel(kind, lambda);
        return s;
    }

    /// The default source map: identical noise on the two transmitted qubits.
    static NoiseScenario on_bc(ChannelKind kind, double lambda) {
        return on_qubits(kind, lambda, {Qubit::B, Qubit::C});
    }

    static NoiseScenario on_abc(ChannelKind kind, double lambda) {
        return on_qubits(kind, lambda, {Qubit::A, Qubit::B, Qubit::C});
    }

    const std::optional<KrausChannel>& channel(Qubit q) const {
        return assignments[static_cast<int>(q)];
    }

    bool empty() const {
        return !assignments[0] && !assignments[1] && !assignments[2];
    }
};

/// Lifts a single-qubit operator to the three-qubit space, A most significant.
inline Matrix lift_to_three_qubits(const Matrix& op, Qubit target) {
    switch (target) {
        case Qubit::A: return kron(op, Matrix::identity(4));
        case Qubit::B: return kron(Matrix::identity(2), kron(op, Matrix::identity(2)));
        case Qubit::C: return kron(Matrix::identity(4), op);
    }
    throw std::invalid_argument("lift_to_three_qubits: bad qubit");
}

/// Sends rho through the product channel sum_{j...} E_j rho E_j^dag with the
/// lifted Kraus operators of every assigned qubit.
inline Matrix apply_noise(const Matrix& rho, const NoiseScenario& scenario) {
    if (rho.rows() != 8 || rho.cols() != 8)
        throw std::invalid_argument("apply_noise: expected an 8x8 matrix");

    Matrix out = rho;
    for (int q = 0; q < 3; ++q) {
        const auto& ch = scenario.assignments[q];
        if (!ch) continue;
        Matrix next(8, 8);
        for (const Matrix& e : ch->kraus_ops) {
            Matrix lifted = lift_to_three_qubits(e, static_cast<Qubit>(q));
            next += lifted * out * lifted.adjoint();
        }
        out = next;
    }
    return out;
}

inline std::string_view channel_kind_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::BitFlip: return "bitflip";
        case ChannelKind::PhaseFlip: return "phaseflip";
        case ChannelKind::Depolarizing: return "depolarizing";
        case ChannelKind::AmplitudeDamping: return "amplitude";
    }
    return "?";
}

inline std::optional<ChannelKind> parse_channel_kind(std::string_view name) {
    std::string lower;
    lower.reserve(name.size());
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "bitflip") return ChannelKind::BitFlip;
    if (lower == "phaseflip") return ChannelKind::PhaseFlip;
    if (lower == "depolarizing") return ChannelKind::Depolarizing;
    if (lower == "amplitude") return ChannelKind::AmplitudeDamping;
    return std::nullopt;
}

}  // namespace djrsp
