// States and operators of the GHZ-based joint remote state preparation
// protocol: the target qubit, the shared GHZ resource, both preparers'
// measurement bases and the receiver's recovery unitaries.
//
// The information split: Alice holds the amplitudes (a0, a1), Bob holds
// the phases (theta0, theta1). Qubit order is fixed as A (x) B (x) C with
// A the most significant factor.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace djrsp {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Secret-shared description of the target |phi> = a0 e^{i theta0}|0> + a1 e^{i theta1}|1>.
/// Amplitudes are nonnegative reals with a0^2 + a1^2 = 1; phases in [0, 2pi].
struct TargetStateSpec {
    double a0 = 1.0;
    double a1 = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;

    /// Builds a spec from the amplitude a1 alone, with a0 = sqrt(1 - a1^2).
    static TargetStateSpec from_a1(double a1, double theta0 = 0.0, double theta1 = 0.0) {
        if (a1 < 0.0 || a1 > 1.0)
            throw std::invalid_argument("TargetStateSpec: a1 must lie in [0, 1]");
        return TargetStateSpec{std::sqrt(std::max(0.0, 1.0 - a1 * a1)), a1, theta0, theta1};
    }

    void validate() const {
        if (a0 < 0.0 || a1 < 0.0)
            throw std::invalid_argument("TargetStateSpec: amplitudes must be nonnegative");
        if (std::abs(a0 * a0 + a1 * a1 - 1.0) > 1e-12)
            throw std::invalid_argument("TargetStateSpec: amplitudes must be normalized");
        for (double t : {theta0, theta1})
            if (!(t >= 0.0 && t <= kTwoPi))
                throw std::invalid_argument("TargetStateSpec: phases must lie in [0, 2pi]");
    }
};

inline Matrix identity2() { return Matrix::identity(2); }
inline Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix pauli_y() { return Matrix{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
inline Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

inline Matrix target_ket(const TargetStateSpec& spec) {
    spec.validate();
    const cplx i{0.0, 1.0};
    return Matrix::column({spec.a0 * std::exp(i * spec.theta0),
                           spec.a1 * std::exp(i * spec.theta1)});
}

/// rho_target = |phi><phi|.
inline Matrix target_density(const TargetStateSpec& spec) {
    Matrix ket = target_ket(spec);
    return ket * ket.adjoint();
}

inline Matrix ghz3_ket() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix ket(8, 1);
    ket(0, 0) = s;  // |000>
    ket(7, 0) = s;  // |111>
    return ket;
}

/// Pure GHZ resource (|000>+|111>)(<000|+<111|)/2 on A (x) B (x) C.
inline Matrix ghz3_density() {
    Matrix ket = ghz3_ket();
    return ket * ket.adjoint();
}

/// Alice's projectors |P_m><P_m| with |P_0> = a0|0> + a1|1>, |P_1> = a1|0> - a0|1>.
inline std::array<Matrix, 2> alice_projectors(const TargetStateSpec& spec) {
    spec.validate();
    Matrix p0 = Matrix::column({spec.a0, spec.a1});
    Matrix p1 = Matrix::column({spec.a1, -spec.a0});
    return {p0 * p0.adjoint(), p1 * p1.adjoint()};
}

struct BobBasis {
    std::array<Matrix, 2> projectors;  // MB_n^(m), n in {0,1}
    Matrix unitary;                    // V^(m); row n holds the coefficients of |O_n^(m)>
};

/// Bob's basis for Alice's outcome m, built from the phase pair he holds.
inline BobBasis bob_basis(const TargetStateSpec& spec, int m) {
    spec.validate();
    if (m != 0 && m != 1)
        throw std::invalid_argument("bob_basis: m must be 0 or 1");

    const cplx i{0.0, 1.0};
    const double s = 1.0 / std::sqrt(2.0);
    const cplx e0 = std::exp(-i * spec.theta0);
    const cplx e1 = std::exp(-i * spec.theta1);

    Matrix v = (m == 0) ? Matrix{{s * e0, s * e1}, {s * e0, -s * e1}}
                        : Matrix{{s * e1, s * e0}, {-s * e1, s * e0}};

    std::array<Matrix, 2> projectors{Matrix(2, 2), Matrix(2, 2)};
    for (int n = 0; n < 2; ++n) {
        Matrix ket = Matrix::column({v(n, 0), v(n, 1)});
        projectors[n] = ket * ket.adjoint();
    }
    return BobBasis{projectors, v};
}

/// Charlie's recovery unitary for broadcast outcomes (m, n), global sign kept
/// verbatim (it cancels in every density matrix).
inline Matrix recovery_operator(int m, int n) {
    if ((m != 0 && m != 1) || (n != 0 && n != 1))
        throw std::invalid_argument("recovery_operator: m, n must be 0 or 1");
    if (m == 0)
        return n == 0 ? identity2() : pauli_z();
    return n == 0 ? (pauli_z() * pauli_x()) * cplx{-1.0, 0.0}
                  : pauli_x() * cplx{-1.0, 0.0};
}

/// Full operator set for one target spec.
struct ProtocolOperators {
    std::array<Matrix, 2> alice_projectors;                 // MA_m
    std::array<std::array<Matrix, 2>, 2> bob_projectors;    // [m][n]
    std::array<Matrix, 2> bob_unitaries;                    // V^(m)
    std::array<std::array<Matrix, 2>, 2> recovery;          // [m][n]
};

inline ProtocolOperators make_protocol_operators(const TargetStateSpec& spec) {
    ProtocolOperators ops{};
    ops.alice_projectors = alice_projectors(spec);
    for (int m = 0; m < 2; ++m) {
        BobBasis basis = bob_basis(spec, m);
        ops.bob_projectors[m] = basis.projectors;
        ops.bob_unitaries[m] = basis.unitary;
        for (int n = 0; n < 2; ++n) ops.recovery[m][n] = recovery_operator(m, n);
    }
    return ops;
}

/// Probe vectors spanning enough directions to expose negativity without an
/// eigensolver: the computational basis plus pairwise (e_i + e_j) and
/// (e_i + i e_j) combinations.
inline std::vector<Matrix> psd_probe_vectors(std::size_t dim) {
    std::vector<Matrix> probes;
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < dim; ++i) {
        Matrix e(dim, 1);
        e(i, 0) = 1.0;
        probes.push_back(e);
        for (std::size_t j = i + 1; j < dim; ++j) {
            Matrix plus(dim, 1), phase(dim, 1);
            plus(i, 0) = s;
            plus(j, 0) = s;
            phase(i, 0) = s;
            phase(j, 0) = cplx{0.0, s};
            probes.push_back(plus);
            probes.push_back(phase);
        }
    }
    return probes;
}

/// Hermitian, trace one, and nonnegative on all probe directions (plus the
/// exact determinant condition in dimension 2).
inline bool is_density_matrix(const Matrix& rho, double tol) {
    if (!rho.is_square() || !rho.is_finite()) return false;
    if (!is_hermitian(rho, tol)) return false;
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > tol) return false;
    for (const Matrix& v : psd_probe_vectors(rho.rows())) {
        const cplx q = (v.adjoint() * rho * v)(0, 0);
        if (q.real() < -tol) return false;
    }
    if (rho.rows() == 2) {
        const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
        if (det < -tol) return false;
    }
    return true;
}

}  // namespace djrsp
