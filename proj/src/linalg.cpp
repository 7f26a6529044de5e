#include "zblab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace zblab {

Mat4 Mat4::identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Mat4 Mat4::diag(cplx d0, cplx d1, cplx d2, cplx d3) {
    Mat4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
}

Mat4 Mat4::adjoint() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

cplx Mat4::trace() const {
    return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3);
}

namespace {

cplx det3(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f, cplx g, cplx h, cplx i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

cplx Mat4::determinant() const {
    const Mat4& m = *this;
    cplx det = 0.0;
    for (int j = 0; j < 4; ++j) {
        std::array<cplx, 9> minor{};
        int idx = 0;
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (c != j) minor[idx++] = m(r, c);
        cplx cof = det3(minor[0], minor[1], minor[2], minor[3], minor[4], minor[5],
                        minor[6], minor[7], minor[8]);
        det += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * cof;
    }
    return det;
}

bool Mat4::all_finite() const {
    for (const cplx& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 operator*(cplx s, const Mat4& x) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
    return r;
}

double Spinor4::norm() const {
    double s = 0.0;
    for (const cplx& z : c) s += std::norm(z);
    return std::sqrt(s);
}

Spinor4 Spinor4::normalized() const {
    double n = norm();
    Spinor4 r = *this;
    for (cplx& z : r.c) z /= n;
    return r;
}

cplx inner(const Spinor4& x, const Spinor4& y) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

Spinor4 operator*(const Mat4& m, const Spinor4& v) {
    Spinor4 r;
    for (int i = 0; i < 4; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < 4; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Spinor4 operator+(const Spinor4& x, const Spinor4& y) {
    Spinor4 r;
    for (int i = 0; i < 4; ++i) r[i] = x[i] + y[i];
    return r;
}

Spinor4 operator*(cplx s, const Spinor4& v) {
    Spinor4 r;
    for (int i = 0; i < 4; ++i) r[i] = s * v[i];
    return r;
}

Mat4 outer(const Spinor4& x, const Spinor4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = x[i] * std::conj(y[j]);
    return r;
}

double max_abs(const Mat4& m) {
    double mx = 0.0;
    for (const cplx& z : m.a) mx = std::max(mx, std::abs(z));
    return mx;
}

double max_abs_diff(const Mat4& x, const Mat4& y) { return max_abs(x - y); }

bool is_hermitian(const Mat4& m, double rel_tol) {
    double scale = max_abs(m);
    if (scale == 0.0) return true;
    return max_abs_diff(m, m.adjoint()) <= rel_tol * scale;
}

bool is_unitary(const Mat4& m, double abs_tol) {
    return max_abs_diff(m.adjoint() * m, Mat4::identity()) <= abs_tol;
}

Mat4 commutator(const Mat4& x, const Mat4& y) { return x * y - y * x; }

Mat4 anticommutator(const Mat4& x, const Mat4& y) { return x * y + y * x; }

namespace {

double offdiag_norm2(const Mat4& m) {
    double s = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) s += std::norm(m(p, q));
    return s;
}

// One complex Jacobi rotation zeroing A(p,q); updates A <- J^dag A J, V <- V J.
void jacobi_rotate(Mat4& A, Mat4& V, int p, int q) {
    const cplx apq = A(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cplx phase = apq / r;
    const double app = A(p, p).real();
    const double aqq = A(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    Mat4 J = Mat4::identity();
    J(p, p) = c;
    J(q, q) = c;
    J(p, q) = s * phase;
    J(q, p) = -s * std::conj(phase);

    A = J.adjoint() * A * J;
    // keep the diagonal exactly real against rounding drift
    for (int i = 0; i < 4; ++i) A(i, i) = cplx(A(i, i).real(), 0.0);
    V = V * J;
}

}  // namespace

HermitianEig hermitian_eig(const Mat4& m, double herm_rel_tol) {
    if (!m.all_finite()) throw NotHermitian("hermitian_eig: non-finite entries");
    if (!is_hermitian(m, herm_rel_tol))
        throw NotHermitian("hermitian_eig: matrix fails Hermiticity tolerance");

    // symmetrize, then cyclic sweeps
    Mat4 A = 0.5 * (m + m.adjoint());
    Mat4 V = Mat4::identity();
    const double scale = std::max(max_abs(A), 1e-300);
    const double stop = 1e-32 * scale * scale;
    for (int sweep = 0; sweep < 60 && offdiag_norm2(A) > stop; ++sweep) {
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) jacobi_rotate(A, V, p, q);
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> ev{A(0, 0).real(), A(1, 1).real(), A(2, 2).real(), A(3, 3).real()};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return ev[i] < ev[j]; });

    HermitianEig out;
    for (int j = 0; j < 4; ++j) {
        out.eigenvalues[j] = ev[order[j]];
        for (int i = 0; i < 4; ++i) out.eigenvectors(i, j) = V(i, order[j]);
    }
    return out;
}

Mat4 hermitian_function(const Mat4& m, const std::function<cplx(double)>& f) {
    HermitianEig e = hermitian_eig(m);
    Mat4 D = Mat4::diag(f(e.eigenvalues[0]), f(e.eigenvalues[1]), f(e.eigenvalues[2]),
                        f(e.eigenvalues[3]));
    return e.eigenvectors * D * e.eigenvectors.adjoint();
}

Mat4 propagator(const Mat4& h, double phase_scale, double t) {
    const cplx mi(0.0, -1.0);
    return hermitian_function(
        h, [&](double lam) { return std::exp(mi * phase_scale * lam * t); });
}

Mat4 heisenberg_evolve(const Mat4& o, const Mat4& h, double t, double hbar) {
    Mat4 u = propagator(h, 1.0 / hbar, t);
    return u.adjoint() * o * u;
}

}  // namespace zblab
