#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <djrsp/matrix.hpp>

#include <cmath>
#include <random>

using namespace djrsp;

namespace {

const cplx I{0.0, 1.0};

Matrix sigma_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix sigma_y() { return Matrix{{0.0, -I}, {I, 0.0}}; }
Matrix sigma_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = cplx{dist(rng), dist(rng)};
    return m;
}

constexpr double kTol = 1e-12;

}  // namespace

TEST_CASE("matmul basics") {
    CHECK(approx_equal(Matrix::identity(2) * sigma_x(), sigma_x(), kTol));
    CHECK(approx_equal(sigma_x() * sigma_x(), Matrix::identity(2), kTol));
    // sigma_z sigma_x = i sigma_y, entrywise [[0,1],[-1,0]]
    CHECK(approx_equal(sigma_z() * sigma_x(), Matrix{{0.0, 1.0}, {-1.0, 0.0}}, kTol));
}

TEST_CASE("matmul rejects incompatible shapes") {
    Matrix a(2, 3);
    Matrix b(2, 3);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("adjoint") {
    CHECK(approx_equal(sigma_y().adjoint(), sigma_y(), kTol));
    Matrix a{{0.0, I}, {0.0, 0.0}};
    CHECK(approx_equal(a.adjoint(), Matrix{{0.0, 0.0}, {-I, 0.0}}, kTol));
}

TEST_CASE("adjoint of Bob's rotation is its inverse") {
    // Rows e^{-i t0}, e^{-i t1} / sqrt2 with alternating sign: unitary for any phases.
    for (double t0 : {0.0, 0.4, 2.1}) {
        for (double t1 : {0.0, 1.3, 5.9}) {
            const double s = 1.0 / std::sqrt(2.0);
            Matrix v{{s * std::exp(-I * t0), s * std::exp(-I * t1)},
                     {s * std::exp(-I * t0), -s * std::exp(-I * t1)}};
            CHECK(approx_equal(v.adjoint() * v, Matrix::identity(2), kTol));
        }
    }
}

TEST_CASE("adjoint properties on random matrices") {
    std::mt19937 rng(42);
    for (int it = 0; it < 20; ++it) {
        Matrix a = random_matrix(rng, 4, 4);
        Matrix b = random_matrix(rng, 4, 4);
        CHECK(approx_equal(a.adjoint().adjoint(), a, kTol));
        CHECK(approx_equal((a * b).adjoint(), b.adjoint() * a.adjoint(), kTol));
    }
}

TEST_CASE("kron basics") {
    CHECK(approx_equal(kron(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(4), kTol));

    // kron(sigma_x, I) flips the most significant qubit: |00> -> |10>
    Matrix ket00 = Matrix::column({1.0, 0.0, 0.0, 0.0});
    Matrix ket10 = Matrix::column({0.0, 0.0, 1.0, 0.0});
    CHECK(approx_equal(kron(sigma_x(), Matrix::identity(2)) * ket00, ket10, kTol));

    Matrix proj0{{1.0, 0.0}, {0.0, 0.0}};
    Matrix expected{{1.0, 0.0, 0.0, 0.0},
                    {0.0, -1.0, 0.0, 0.0},
                    {0.0, 0.0, 0.0, 0.0},
                    {0.0, 0.0, 0.0, 0.0}};
    CHECK(approx_equal(kron(proj0, sigma_z()), expected, kTol));
}

TEST_CASE("kron properties on random matrices") {
    std::mt19937 rng(7);
    for (int it = 0; it < 10; ++it) {
        Matrix a = random_matrix(rng, 2, 2);
        Matrix b = random_matrix(rng, 2, 2);
        Matrix c = random_matrix(rng, 2, 2);
        CHECK(approx_equal(kron(kron(a, b), c), kron(a, kron(b, c)), kTol));
        cplx lhs = kron(a, b).trace();
        cplx rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < kTol);
        // mixed product rule
        Matrix d = random_matrix(rng, 2, 2);
        CHECK(approx_equal(kron(a, b) * kron(c, d), kron(a * c, b * d), kTol));
    }
}

TEST_CASE("trace") {
    CHECK(Matrix::identity(8).trace().real() == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(std::abs(sigma_x().trace()) < kTol);
    CHECK_THROWS_AS(Matrix(2, 3).trace(), std::invalid_argument);
}

TEST_CASE("partial trace of Bell pair is maximally mixed") {
    // (|00>+|11>)(<00|+<11|)/2
    Matrix bell(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    Matrix reduced = partial_trace(bell, {2, 2}, {0});
    CHECK(approx_equal(reduced, Matrix::identity(2) * cplx{0.5, 0.0}, kTol));
}

TEST_CASE("partial trace factors product states") {
    std::mt19937 rng(11);
    Matrix psi = random_matrix(rng, 4, 1);
    double norm = 0.0;
    for (std::size_t i = 0; i < 4; ++i) norm += std::norm(psi(i, 0));
    psi = psi * cplx{1.0 / std::sqrt(norm), 0.0};
    Matrix pure = psi * psi.adjoint();

    // Hermitian trace-1 factor on the third subsystem
    Matrix rho{{0.7, cplx{0.1, 0.2}}, {cplx{0.1, -0.2}, 0.3}};
    Matrix joint = kron(pure, rho);
    CHECK(approx_equal(partial_trace(joint, {2, 2, 2}, {2}), rho, kTol));
}

TEST_CASE("partial trace of GHZ over A") {
    Matrix ghz(8, 8);
    ghz(0, 0) = ghz(0, 7) = ghz(7, 0) = ghz(7, 7) = 0.5;
    Matrix expected(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK(approx_equal(partial_trace(ghz, {2, 2, 2}, {1, 2}), expected, kTol));
    // keeping A alone gives the maximally mixed qubit
    CHECK(approx_equal(partial_trace(ghz, {2, 2, 2}, {0}),
                       Matrix::identity(2) * cplx{0.5, 0.0}, kTol));
}

TEST_CASE("partial trace preserves trace and composes") {
    std::mt19937 rng(23);
    for (int it = 0; it < 10; ++it) {
        Matrix a = random_matrix(rng, 8, 8);
        a = a + a.adjoint();  // hermitian, arbitrary trace

        Matrix kept = partial_trace(a, {2, 2, 2}, {1});
        CHECK(std::abs(kept.trace() - a.trace()) < kTol);

        // tracing B then C equals tracing {B,C} jointly
        Matrix step1 = partial_trace(a, {2, 2, 2}, {0, 2});  // drop B
        Matrix step2 = partial_trace(step1, {2, 2}, {0});    // drop C
        Matrix joint = partial_trace(a, {2, 2, 2}, {0});
        CHECK(approx_equal(step2, joint, kTol));
    }
}

TEST_CASE("partial trace argument validation") {
    Matrix a(8, 8);
    CHECK_THROWS_AS(partial_trace(a, {2, 2}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(a, {2, 2, 2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(a, {2, 2, 2}, {3}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(Matrix(4, 2), {2, 2}, {0}), std::invalid_argument);
}

TEST_CASE("finiteness check") {
    Matrix a(2, 2);
    CHECK(a.is_finite());
    a(0, 1) = cplx{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_FALSE(a.is_finite());
}
