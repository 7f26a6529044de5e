#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

// Fixed-size complex 4x4 linear algebra. Everything in the fixed-momentum
// sector of the quasiparticle problem lives in this 4-dimensional spinor
// space, so there is no need for general n-by-n machinery.

namespace zblab {

using cplx = std::complex<double>;

struct NotHermitian : std::runtime_error {
    explicit NotHermitian(const std::string& what) : std::runtime_error(what) {}
};

struct Mat4 {
    // row-major
    std::array<cplx, 16> a{};

    cplx& operator()(int r, int c) { return a[4 * r + c]; }
    const cplx& operator()(int r, int c) const { return a[4 * r + c]; }

    static Mat4 zero() { return Mat4{}; }
    static Mat4 identity();
    static Mat4 diag(cplx d0, cplx d1, cplx d2, cplx d3);

    Mat4 adjoint() const;
    cplx trace() const;
    cplx determinant() const;

    bool all_finite() const;
};

Mat4 operator+(const Mat4& x, const Mat4& y);
Mat4 operator-(const Mat4& x, const Mat4& y);
Mat4 operator*(const Mat4& x, const Mat4& y);
Mat4 operator*(cplx s, const Mat4& x);
inline Mat4 operator*(const Mat4& x, cplx s) { return s * x; }

struct Spinor4 {
    std::array<cplx, 4> c{};

    cplx& operator[](int i) { return c[i]; }
    const cplx& operator[](int i) const { return c[i]; }

    double norm() const;
    Spinor4 normalized() const;
};

// <x|y>, conjugate-linear in the first argument
cplx inner(const Spinor4& x, const Spinor4& y);
Spinor4 operator*(const Mat4& m, const Spinor4& v);
Spinor4 operator+(const Spinor4& x, const Spinor4& y);
Spinor4 operator*(cplx s, const Spinor4& v);

// |x><y|
Mat4 outer(const Spinor4& x, const Spinor4& y);

double max_abs(const Mat4& m);
double max_abs_diff(const Mat4& x, const Mat4& y);

// ||M - M^dag||_max relative to ||M||_max
bool is_hermitian(const Mat4& m, double rel_tol = 1e-12);
bool is_unitary(const Mat4& m, double abs_tol = 1e-10);

Mat4 commutator(const Mat4& x, const Mat4& y);      // XY - YX
Mat4 anticommutator(const Mat4& x, const Mat4& y);  // XY + YX

struct HermitianEig {
    std::array<double, 4> eigenvalues{};  // ascending
    Mat4 eigenvectors;                    // orthonormal columns, same order
};

// Cyclic complex Jacobi diagonalization. Throws NotHermitian if the input
// fails the Hermiticity tolerance.
HermitianEig hermitian_eig(const Mat4& m, double herm_rel_tol = 1e-12);

// V * diag(f(lambda_j)) * V^dag for Hermitian m
Mat4 hermitian_function(const Mat4& m, const std::function<cplx(double)>& f);

// U(t) = exp(-i * phase_scale * H * t), via the eigendecomposition
Mat4 propagator(const Mat4& h, double phase_scale, double t);

// O(t) = U^dag(t) O U(t) with U = exp(-i H t / hbar); the brute-force
// Heisenberg oracle every closed form is checked against.
Mat4 heisenberg_evolve(const Mat4& o, const Mat4& h, double t, double hbar = 1.0);

}  // namespace zblab
