#include "chlab/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace chlab {

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = a[k] + o.a[k];
    return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = a[k] - o.a[k];
    return r;
}

Mat3 Mat3::operator*(double s) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = a[k] * s;
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
}

double Mat3::det() const {
    const Mat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 Mat3::inverse() const {
    const Mat3& m = *this;
    const double d = det();
    if (std::abs(d) < 1e-300) throw std::runtime_error("Mat3::inverse: singular matrix");
    const double id = 1.0 / d;
    Mat3 r;
    r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) * id;
    r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) * id;
    r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * id;
    r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) * id;
    r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) * id;
    r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) * id;
    r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) * id;
    r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) * id;
    r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) * id;
    return r;
}

double Mat3::max_abs() const {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double bilinear(const Mat3& m, const Vec3& v, const Vec3& w) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += v[static_cast<std::size_t>(i)] * m(i, j) * w[static_cast<std::size_t>(j)];
    return s;
}

Mat3 outer(const Vec3& v, const Vec3& w) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
    return r;
}

bool solve3(const Mat3& m, const Vec3& b, Vec3& x) {
    double A[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) A[i][j] = m(i, j);
        A[i][3] = b[static_cast<std::size_t>(i)];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-13) return false;
        if (piv != col)
            for (int j = col; j < 4; ++j) std::swap(A[piv][j], A[col][j]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (int j = col; j < 4; ++j) A[r][j] -= f * A[col][j];
        }
    }
    for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = A[i][3] / A[i][i];
    return true;
}

namespace {

// Cholesky factor of an SPD matrix, G = L L^T.
Mat3 cholesky(const Mat3& g) {
    Mat3 L = Mat3::zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
                L(i, j) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return L;
}

// x <- L^{-1} x (forward substitution)
Vec3 forward_sub(const Mat3& L, Vec3 x) {
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < i; ++k) x[static_cast<std::size_t>(i)] -= L(i, k) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] /= L(i, i);
    }
    return x;
}

// x <- L^{-T} x (back substitution)
Vec3 back_sub_t(const Mat3& L, Vec3 x) {
    for (int i = 2; i >= 0; --i) {
        for (int k = i + 1; k < 3; ++k) x[static_cast<std::size_t>(i)] -= L(k, i) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] /= L(i, i);
    }
    return x;
}

// Jacobi rotations on a symmetric 3x3. Columns of V are the eigenvectors.
void jacobi_eig(Mat3 S, Vec3& values, Mat3& V) {
    V = Mat3::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(S(0, 1)) + std::abs(S(0, 2)) + std::abs(S(1, 2));
        if (off < 1e-16 * (1.0 + S.max_abs())) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(S(p, q)) < 1e-300) continue;
                const double theta = (S(q, q) - S(p, p)) / (2.0 * S(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Mat3 R = Mat3::identity();
                R(p, p) = c; R(q, q) = c; R(p, q) = s; R(q, p) = -s;
                S = R.transposed() * S * R;
                V = V * R;
            }
    }
    values = {S(0, 0), S(1, 1), S(2, 2)};
    // sort ascending, permuting eigenvector columns along
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)]; });
    Vec3 sval;
    Mat3 sv;
    for (int j = 0; j < 3; ++j) {
        sval[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        for (int i = 0; i < 3; ++i) sv(i, j) = V(i, idx[static_cast<std::size_t>(j)]);
    }
    values = sval;
    V = sv;
}

}  // namespace

void generalized_symmetric_eig(const Mat3& A, const Mat3& G, Vec3& values, Mat3& vecs) {
    // Reduce A v = mu G v to a standard symmetric problem via G = L L^T:
    // S = L^{-1} A L^{-T}, then v = L^{-T} w.
    const Mat3 L = cholesky(G);
    Mat3 S;
    for (int j = 0; j < 3; ++j) {
        Vec3 col{A(0, j), A(1, j), A(2, j)};
        col = forward_sub(L, col);
        for (int i = 0; i < 3; ++i) S(i, j) = col[static_cast<std::size_t>(i)];
    }
    // now rows: S <- S L^{-T}  ==  (L^{-1} S^T)^T
    Mat3 St = S.transposed();
    for (int j = 0; j < 3; ++j) {
        Vec3 col{St(0, j), St(1, j), St(2, j)};
        col = forward_sub(L, col);
        for (int i = 0; i < 3; ++i) St(i, j) = col[static_cast<std::size_t>(i)];
    }
    S = St.transposed();
    // enforce symmetry against roundoff before Jacobi
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double m = 0.5 * (S(i, j) + S(j, i));
            S(i, j) = S(j, i) = m;
        }
    Mat3 W;
    jacobi_eig(S, values, W);
    for (int j = 0; j < 3; ++j) {
        Vec3 col{W(0, j), W(1, j), W(2, j)};
        col = back_sub_t(L, col);
        for (int i = 0; i < 3; ++i) vecs(i, j) = col[static_cast<std::size_t>(i)];
    }
}

}  // namespace chlab
