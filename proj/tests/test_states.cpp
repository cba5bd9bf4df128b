#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <djrsp/states.hpp>

#include <cmath>
#include <vector>

using namespace djrsp;

namespace {

constexpr double kTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<TargetStateSpec> spec_grid() {
    std::vector<TargetStateSpec> specs;
    for (double a1 : {0.0, 0.3, kInvSqrt2, 0.8, 1.0})
        for (double t0 : {0.0, 0.7853981633974483, 1.5707963267948966, 3.141592653589793})
            for (double t1 : {0.0, 2.0})
                specs.push_back(TargetStateSpec::from_a1(a1, t0, t1));
    return specs;
}

// The two-qubit states held by Bob and Charlie after Alice's measurement:
// |Q_0> = a0|00> + a1|11>, |Q_1> = a1|00> - a0|11>.
Matrix conditional_bc_ket(const TargetStateSpec& spec, int m) {
    Matrix ket(4, 1);
    if (m == 0) {
        ket(0, 0) = spec.a0;
        ket(3, 0) = spec.a1;
    } else {
        ket(0, 0) = spec.a1;
        ket(3, 0) = -spec.a0;
    }
    return ket;
}

}  // namespace

TEST_CASE("target density point values") {
    CHECK(approx_equal(target_density({1.0, 0.0, 0.0, 0.0}),
                       Matrix{{1.0, 0.0}, {0.0, 0.0}}, kTol));

    Matrix plus = target_density({kInvSqrt2, kInvSqrt2, 0.0, 0.0});
    CHECK(approx_equal(plus, Matrix{{0.5, 0.5}, {0.5, 0.5}}, kTol));

    Matrix rho = target_density({0.8, 0.6, 0.0, 1.5707963267948966});
    Matrix expected{{0.64, cplx{0.0, -0.48}}, {cplx{0.0, 0.48}, 0.36}};
    CHECK(approx_equal(rho, expected, kTol));
}

TEST_CASE("target density is a valid pure state") {
    for (const auto& spec : spec_grid()) {
        Matrix rho = target_density(spec);
        CHECK(is_density_matrix(rho, kTol));
        CHECK(approx_equal(rho * rho, rho, kTol));  // rank one
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(target_density({1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(target_density({-1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(target_density({1.0, 0.0, -0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(target_density({1.0, 0.0, 0.0, 7.0}), std::invalid_argument);
    CHECK_THROWS_AS(TargetStateSpec::from_a1(1.5), std::invalid_argument);
}

TEST_CASE("ghz density") {
    Matrix ghz = ghz3_density();
    CHECK(ghz(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ghz(0, 7).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ghz(7, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ghz(7, 7).real() == doctest::Approx(0.5).epsilon(1e-14));
    double off = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if ((i != 0 && i != 7) || (j != 0 && j != 7)) off += std::abs(ghz(i, j));
    CHECK(off < kTol);

    CHECK(approx_equal(partial_trace(ghz, {2, 2, 2}, {0}),
                       Matrix::identity(2) * cplx{0.5, 0.0}, kTol));
}

TEST_CASE("alice projectors") {
    auto basis = alice_projectors({1.0, 0.0, 0.0, 0.0});
    CHECK(approx_equal(basis[0], Matrix{{1.0, 0.0}, {0.0, 0.0}}, kTol));
    CHECK(approx_equal(basis[1], Matrix{{0.0, 0.0}, {0.0, 1.0}}, kTol));

    basis = alice_projectors({kInvSqrt2, kInvSqrt2, 0.0, 0.0});
    CHECK(approx_equal(basis[0], Matrix{{0.5, 0.5}, {0.5, 0.5}}, kTol));

    basis = alice_projectors({0.8, 0.6, 0.0, 0.0});
    CHECK(approx_equal(basis[0], Matrix{{0.64, 0.48}, {0.48, 0.36}}, kTol));
}

TEST_CASE("measurement completeness and projector structure") {
    for (const auto& spec : spec_grid()) {
        auto ma = alice_projectors(spec);
        CHECK(approx_equal(ma[0] + ma[1], identity2(), kTol));
        for (const auto& p : ma) {
            CHECK(approx_equal(p * p, p, kTol));
            CHECK(approx_equal(p.adjoint(), p, kTol));
        }
        for (int m = 0; m < 2; ++m) {
            BobBasis bb = bob_basis(spec, m);
            CHECK(approx_equal(bb.projectors[0] + bb.projectors[1], identity2(), kTol));
            for (const auto& p : bb.projectors) {
                CHECK(approx_equal(p * p, p, kTol));
                CHECK(approx_equal(p.adjoint(), p, kTol));
            }
        }
    }
}

TEST_CASE("bob basis point values") {
    BobBasis bb = bob_basis({1.0, 0.0, 0.0, 0.0}, 0);
    Matrix hadamard{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
    CHECK(approx_equal(bb.unitary, hadamard, kTol));

    bb = bob_basis({0.8, 0.6, 0.0, 1.5707963267948966}, 1);
    const cplx i{0.0, 1.0};
    Matrix expected{{-i * kInvSqrt2, kInvSqrt2}, {i * kInvSqrt2, kInvSqrt2}};
    CHECK(approx_equal(bb.unitary, expected, kTol));

    for (const auto& spec : spec_grid())
        for (int m = 0; m < 2; ++m) {
            Matrix v = bob_basis(spec, m).unitary;
            CHECK(approx_equal(v * v.adjoint(), identity2(), kTol));
        }

    CHECK_THROWS_AS(bob_basis({1.0, 0.0, 0.0, 0.0}, 2), std::invalid_argument);
}

TEST_CASE("recovery operators") {
    CHECK(approx_equal(recovery_operator(0, 0), identity2(), kTol));
    CHECK(approx_equal(recovery_operator(0, 1), pauli_z(), kTol));
    CHECK(approx_equal(recovery_operator(1, 0), Matrix{{0.0, -1.0}, {1.0, 0.0}}, kTol));
    CHECK(approx_equal(recovery_operator(1, 1), pauli_x() * cplx{-1.0, 0.0}, kTol));

    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            Matrix r = recovery_operator(m, n);
            CHECK(approx_equal(r * r.adjoint(), identity2(), kTol));
        }

    CHECK_THROWS_AS(recovery_operator(2, 0), std::invalid_argument);
}

TEST_CASE("global sign of a unitary never reaches the density matrix") {
    Matrix rho = target_density({0.6, 0.8, 1.0, 2.0});
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            Matrix r = recovery_operator(m, n);
            Matrix flipped = r * cplx{-1.0, 0.0};
            CHECK(approx_equal(r * rho * r.adjoint(),
                               flipped * rho * flipped.adjoint(), kTol));
        }
}

TEST_CASE("Alice's measurement splits GHZ into the expected BC states") {
    Matrix ghz = ghz3_density();
    for (const auto& spec : spec_grid()) {
        auto ma = alice_projectors(spec);
        for (int m = 0; m < 2; ++m) {
            Matrix lifted = kron(ma[m], Matrix::identity(4));
            Matrix projected = lifted * ghz * lifted.adjoint();
            const double prob = projected.trace().real();
            CHECK(prob == doctest::Approx(0.5).epsilon(1e-12));

            Matrix bc = partial_trace(projected, {2, 2, 2}, {1, 2}) * cplx{1.0 / prob, 0.0};
            Matrix q = conditional_bc_ket(spec, m);
            CHECK(approx_equal(bc, q * q.adjoint(), kTol));
        }
    }
}

TEST_CASE("Bob's measurement leaves Charlie one recovery away from the target") {
    for (const auto& spec : spec_grid()) {
        Matrix phi = target_ket(spec);
        for (int m = 0; m < 2; ++m) {
            BobBasis bb = bob_basis(spec, m);
            Matrix q = conditional_bc_ket(spec, m);
            for (int n = 0; n < 2; ++n) {
                Matrix projected = kron(bb.projectors[n], identity2()) * q;
                double norm = 0.0;
                for (std::size_t i = 0; i < 4; ++i) norm += std::norm(projected(i, 0));
                CHECK(norm == doctest::Approx(0.5).epsilon(1e-12));
                projected = projected * cplx{1.0 / std::sqrt(norm), 0.0};

                Matrix charlie = partial_trace(projected * projected.adjoint(), {2, 2}, {1});
                Matrix r = recovery_operator(m, n);
                Matrix expected = (r.adjoint() * phi) * (r.adjoint() * phi).adjoint();
                CHECK(approx_equal(charlie, expected, kTol));
            }
        }
    }
}

TEST_CASE("density matrix validity helper") {
    CHECK(is_density_matrix(Matrix::identity(2) * cplx{0.5, 0.0}, kTol));
    CHECK_FALSE(is_density_matrix(Matrix::identity(2), kTol));              // trace 2
    CHECK_FALSE(is_density_matrix(Matrix{{1.5, 0.0}, {0.0, -0.5}}, kTol));  // negative direction
    Matrix nonherm{{0.5, 0.3}, {0.0, 0.5}};
    CHECK_FALSE(is_density_matrix(nonherm, kTol));
}
