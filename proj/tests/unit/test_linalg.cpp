#include "ptqs/errors.hpp"
#include "ptqs/lindblad.hpp"
#include "ptqs/linalg.hpp"
#include "ptqs/pt_dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace ptqs;
namespace la = ptqs::linalg;

namespace {

constexpr double pi = 3.14159265358979323846;

template <int N>
Matrix<N> random_matrix(std::mt19937& rng, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix<N> m;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) m(i, j) = cplx{u(rng), u(rng)};
    }
    return m * (scale / m.norm());
}

Matrix2 h_pt(double w, double g) {
    Matrix2 h;
    h << cplx{0, 0.5 * g}, 0.5 * w, 0.5 * w, cplx{0, -0.5 * g};
    return h;
}

}  // namespace

TEST_CASE("expm of zero and diagonal matrices") {
    CHECK(la::max_abs<3>(la::expm<3>(Matrix3::Zero(), cplx{2.0, -1.0}) - Matrix3::Identity()) == 0.0);
    Matrix2 d = Matrix2::Zero();
    d(0, 0) = cplx{0.3, 1.0};
    d(1, 1) = -2.0;
    const Matrix2 e = la::expm<2>(d);
    CHECK(std::abs(e(0, 0) - std::exp(cplx{0.3, 1.0})) < 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(-2.0)) < 1e-15);
    CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("expm rejects non-finite input") {
    Matrix2 m = Matrix2::Zero();
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(la::expm<2>(m), Error);
    try {
        la::expm<2>(m);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidMatrix);
    }
}

TEST_CASE("expm agrees with the analytic SU(2) form for H_PT") {
    const double t = pi / 1.6;
    const Matrix2 h = h_pt(1.0, 0.6);
    const Matrix2 general = la::expm<2>(h, cplx{0.0, -t});
    const Matrix2 analytic = la::expm_su2_analytic(h, t);
    CHECK(la::max_abs<2>(general - analytic) <= 1e-12);
    // κ = 0.8: cos(κt/2) I − i (2/κ) sin(κt/2) H.
    const Matrix2 hand = std::cos(0.4 * t) * Matrix2::Identity() -
                         I_unit * (2.0 / 0.8) * std::sin(0.4 * t) * h;
    CHECK(la::max_abs<2>(hand - analytic) <= 1e-14);
}

TEST_CASE("expm_su2_analytic half Rabi period") {
    const Matrix2 u = la::expm_su2_analytic(0.5 * la::pauli_x(), pi);
    CHECK(la::max_abs<2>(u + I_unit * la::pauli_x()) <= 1e-15);
}

TEST_CASE("expm_su2_analytic at the exceptional point") {
    const Matrix2 h = h_pt(1.0, 1.0);
    const Matrix2 u = la::expm_su2_analytic(h, 2.0);
    CHECK(la::max_abs<2>(u - (Matrix2::Identity() - 2.0 * I_unit * h)) <= 1e-15);
    // The general route sees a nilpotent matrix and must agree.
    CHECK(la::max_abs<2>(u - la::expm<2>(h, cplx{0.0, -2.0})) <= 1e-12);
}

TEST_CASE("expm_su2_analytic rejects matrices whose square is not scalar") {
    Matrix2 h = Matrix2::Zero();
    h(0, 0) = 1.0;
    h(1, 1) = 2.0;
    CHECK_THROWS_AS(la::expm_su2_analytic(h, 1.0), Error);
    try {
        la::expm_su2_analytic(h, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSu2Like);
    }
}

TEST_CASE("expm(M) expm(-M) is the identity for random matrices") {
    std::mt19937 rng(7);
    for (int k = 0; k < 40; ++k) {
        const Matrix4 m = random_matrix<4>(rng, 5.0 * (k + 1) / 40.0);
        CHECK(la::max_abs<4>(la::expm<4>(m) * la::expm<4>(m, -1.0) - Matrix4::Identity()) <= 1e-10);
        const Matrix3 m3 = random_matrix<3>(rng, 3.0);
        CHECK(la::max_abs<3>(la::expm<3>(m3) * la::expm<3>(m3, -1.0) - Matrix3::Identity()) <=
              1e-10);
    }
}

TEST_CASE("analytic and general propagators agree over the gamma grid") {
    for (double g : {0.0, 0.3, 0.6, 0.9, 1.0 - 1e-6}) {
        const Matrix2 h = h_pt(1.0, g);
        for (int k = 0; k <= 64; ++k) {
            const double t = 8.0 * pi * k / 64.0;
            const Matrix2 a = la::expm_su2_analytic(h, t);
            const Matrix2 b = la::expm<2>(h, cplx{0.0, -t});
            CAPTURE(g);
            CAPTURE(t);
            CHECK(la::max_abs<2>(a - b) <= 1e-10);
        }
    }
}

TEST_CASE("eig of sigma_z") {
    const auto d = la::eig<2>(la::pauli_z());
    CHECK(std::abs(d.values[0] - 1.0) < 1e-15);
    CHECK(std::abs(d.values[1] + 1.0) < 1e-15);
    CHECK(std::abs(d.vectors[0](0) - 1.0) < 1e-15);
    CHECK(std::abs(d.vectors[1](1) - 1.0) < 1e-15);
}

TEST_CASE("eig of H_PT gives plus and minus kappa/2") {
    const Matrix2 h = h_pt(1.0, 0.6);
    const auto d = la::eig<2>(h);
    CHECK(std::abs(d.values[0] - 0.4) < 1e-14);
    CHECK(std::abs(d.values[1] + 0.4) < 1e-14);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(d.vectors[i].norm() - 1.0) < 1e-14);
        CHECK((h * d.vectors[i] - d.values[i] * d.vectors[i]).norm() <= 1e-10 * h.norm());
        // First component real and positive.
        CHECK(d.vectors[i](0).real() > 0.0);
        CHECK(std::abs(d.vectors[i](0).imag()) < 1e-15);
    }
}

TEST_CASE("eig of the Liouvillian matrix") {
    const Matrix4 l = lindblad::liouvillian_matrix(PtParams(1.0, 0.6)).matrix;
    const auto d = la::eig<4>(l);
    const cplx expected[] = {{-0.6, 0.8}, {-0.6, 0.0}, {-0.6, 0.0}, {-0.6, -0.8}};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(d.values[i] - expected[i]) < 1e-12);
}

TEST_CASE("eig reconstructs diagonalizable matrices") {
    std::mt19937 rng(11);
    for (int k = 0; k < 30; ++k) {
        const Matrix4 m = random_matrix<4>(rng, 4.0);
        const auto d = la::eig<4>(m);
        Matrix4 v;
        Matrix4 lam = Matrix4::Zero();
        for (int i = 0; i < 4; ++i) {
            v.col(i) = d.vectors[i];
            lam(i, i) = d.values[i];
            CHECK((m * d.vectors[i] - d.values[i] * d.vectors[i]).norm() <= 1e-10 * m.norm());
        }
        CHECK(la::max_abs<4>(v * lam * v.inverse() - m) <= 1e-9);
        for (int i = 0; i + 1 < 4; ++i) {
            const bool ordered = d.values[i].real() > d.values[i + 1].real() ||
                                 (d.values[i].real() == d.values[i + 1].real() &&
                                  d.values[i].imag() >= d.values[i + 1].imag());
            CHECK(ordered);
        }
    }
}

TEST_CASE("defectiveness and numerical rank") {
    Matrix2 jordan;
    jordan << 1.0, 1.0, 0.0, 1.0;
    CHECK(la::is_defective_at<2>(jordan, 1.0, 2));
    CHECK_FALSE(la::is_defective_at<2>(Matrix2::Identity(), 1.0, 2));
    CHECK(la::numerical_rank<2>(jordan - Matrix2::Identity()) == 1);
    CHECK(la::numerical_rank<3>(Matrix3::Identity()) == 3);
}

TEST_CASE("adjoint is an involution") {
    std::mt19937 rng(3);
    const Matrix4 m = random_matrix<4>(rng, 2.0);
    const Matrix4 back = m.adjoint().adjoint();
    CHECK(la::max_abs<4>(back - m) == 0.0);
}

TEST_CASE("Pauli algebra") {
    CHECK(la::max_abs<2>(la::pauli_x() * la::pauli_y() - I_unit * la::pauli_z()) == 0.0);
    CHECK(la::hermiticity_error<2>(la::pauli_y()) == 0.0);
}
