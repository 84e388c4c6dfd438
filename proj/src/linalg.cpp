#include "bcinv/linalg.hpp"
#include "bcinv/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace bcinv {

namespace {

Real eps() { return std::numeric_limits<Real>::epsilon(); }

Real hypot2(const Real& a, const Real& b)
{
    Real x = abs(a), y = abs(b);
    if (x < y) std::swap(x, y);
    if (x == 0) return Real(0);
    Real r = y / x;
    return x * sqrt(1 + r * r);
}

Real copysign_(const Real& mag, const Real& s) { return s >= 0 ? abs(mag) : -abs(mag); }

void sort_ascending(SymEig& e)
{
    std::size_t n = e.values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return e.values[a] < e.values[b]; });
    SymEig out{Vec(n), Matrix(e.vectors.rows(), n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = e.values[idx[k]];
        for (std::size_t i = 0; i < e.vectors.rows(); ++i) out.vectors(i, k) = e.vectors(i, idx[k]);
    }
    e = std::move(out);
}

} // namespace

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec Matrix::col(std::size_t j) const
{
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(std::size_t i) const
{
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void Matrix::set_col(std::size_t j, const Vec& v)
{
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vec Matrix::operator*(const Vec& x) const
{
    Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Real s = 0;
        const Real* r = &data_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Matrix Matrix::operator*(const Matrix& b) const
{
    Matrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Real a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
        }
    return c;
}

Real dot(const Vec& x, const Vec& y)
{
    Real s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Real norm2(const Vec& x) { return sqrt(dot(x, x)); }

Real max_abs(const Vec& x)
{
    Real m = 0;
    for (const auto& v : x) m = std::max(m, Real(abs(v)));
    return m;
}

void axpy(const Real& a, const Vec& x, Vec& y)
{
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vec scaled(const Vec& x, const Real& a)
{
    Vec y(x);
    for (auto& v : y) v *= a;
    return y;
}

Vec tridiagonal_eigenvalues(const Vec& diag, const Vec& offdiag, int max_iter)
{
    const std::size_t n = diag.size();
    if (offdiag.size() + 1 != n && !(n == 0 && offdiag.empty()))
        throw Error(ErrorCode::InvalidInput, "tridiagonal: size mismatch");
    Vec d(diag), e(n, Real(0));
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = offdiag[i];

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                Real dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps() * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter)
                    throw Error(ErrorCode::EigenFailure, "QL iteration did not converge");
                Real g = (d[l + 1] - d[l]) / (2 * e[l]);
                Real r = hypot2(g, Real(1));
                g = d[m] - d[l] + e[l] / (g + copysign_(r, g));
                Real s = 1, c = 1, p = 0;
                bool deflated = false;
                for (std::size_t ii = m; ii-- > l;) {
                    Real f = s * e[ii];
                    Real b = c * e[ii];
                    r = hypot2(f, g);
                    e[ii + 1] = r;
                    if (r == 0) {
                        d[ii + 1] -= p;
                        e[m] = 0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2 * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                }
                if (deflated) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

SymEig symmetric_eigen_jacobi(const Matrix& a_in)
{
    const std::size_t n = a_in.rows();
    Matrix a = a_in;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                Real apq = a(p, q);
                if (apq == 0) continue;
                Real scale = sqrt(abs(a(p, p) * a(q, q)));
                if (abs(apq) <= eps() * scale || abs(apq) < std::numeric_limits<Real>::min()) {
                    a(p, q) = a(q, p) = 0;
                    continue;
                }
                rotated = true;
                Real theta = (a(q, q) - a(p, p)) / (2 * apq);
                Real t = copysign_(Real(1), theta) / (abs(theta) + sqrt(theta * theta + 1));
                Real c = 1 / sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    Real akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Real apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    Real vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        if (!rotated) break;
    }
    SymEig e{Vec(n), v};
    for (std::size_t i = 0; i < n; ++i) e.values[i] = a(i, i);
    sort_ascending(e);
    return e;
}

SymEig symmetric_eigen(const Matrix& a)
{
    const int n = static_cast<int>(a.rows());
    Matrix V = a;
    Vec d(n), e(n);
    // tred2
    for (int j = 0; j < n; ++j) d[j] = V(n - 1, j);
    for (int i = n - 1; i > 0; --i) {
        Real scale = 0, h = 0;
        for (int k = 0; k < i; ++k) scale += abs(d[k]);
        if (scale == 0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0;
                V(j, i) = 0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            Real f = d[i - 1];
            Real g = sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0;
            for (int j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            Real hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) V(k, j) -= (f * e[k] + g * d[k]);
                d[j] = V(i - 1, j);
                V(i, j) = 0;
            }
        }
        d[i] = h;
    }
    for (int i = 0; i < n - 1; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1;
        Real h = d[i + 1];
        if (h != 0) {
            for (int k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                Real g = 0;
                for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
                for (int k = 0; k <= i; ++k) V(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k) V(k, i + 1) = 0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0;
    }
    if (n > 0) V(n - 1, n - 1) = 1;
    e[0] = 0;

    // tql2
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    if (n > 0) e[n - 1] = 0;
    Real f = 0, tst1 = 0;
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, Real(abs(d[l]) + abs(e[l])));
        int m = l;
        while (m < n) {
            if (abs(e[m]) <= eps() * tst1) break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 75) throw Error(ErrorCode::EigenFailure, "tql2 did not converge");
                Real g = d[l];
                Real p = (d[l + 1] - g) / (2 * e[l]);
                Real r = hypot2(p, Real(1));
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                Real dl1 = d[l + 1];
                Real h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;
                p = d[m];
                Real c = 1, c2 = 1, c3 = 1, el1 = e[l + 1], s = 0, s2 = 0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = hypot2(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (int k = 0; k < n; ++k) {
                        h = V(k, i + 1);
                        V(k, i + 1) = s * V(k, i) + c * h;
                        V(k, i) = c * V(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (abs(e[l]) > eps() * tst1);
        }
        d[l] = d[l] + f;
        e[l] = 0;
    }
    SymEig out{d, V};
    sort_ascending(out);
    return out;
}

Svd jacobi_svd(const Matrix& a_in)
{
    const std::size_t m = a_in.rows(), n = a_in.cols();
    if (m < n) throw Error(ErrorCode::InvalidInput, "jacobi_svd needs rows >= cols");
    Matrix a = a_in;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                Real alpha = 0, beta = 0, gamma = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += a(i, p) * a(i, p);
                    beta += a(i, q) * a(i, q);
                    gamma += a(i, p) * a(i, q);
                }
                if (gamma == 0 || abs(gamma) <= eps() * sqrt(alpha * beta)) continue;
                rotated = true;
                Real zeta = (beta - alpha) / (2 * gamma);
                Real t = copysign_(Real(1), zeta) / (abs(zeta) + sqrt(1 + zeta * zeta));
                Real c = 1 / sqrt(1 + t * t), s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    Real x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    Real x = v(i, p), y = v(i, q);
                    v(i, p) = c * x - s * y;
                    v(i, q) = s * x + c * y;
                }
            }
        if (!rotated) break;
    }
    Vec s(n);
    for (std::size_t j = 0; j < n; ++j) {
        Real t = 0;
        for (std::size_t i = 0; i < m; ++i) t += a(i, j) * a(i, j);
        s[j] = sqrt(t);
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });
    Svd out{Matrix(m, n), Vec(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j = idx[k];
        out.s[k] = s[j];
        for (std::size_t i = 0; i < m; ++i) out.u(i, k) = s[j] > 0 ? a(i, j) / s[j] : Real(0);
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    }
    return out;
}

Vec solve_linear(Matrix a, Vec b)
{
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0) throw Error(ErrorCode::InvalidInput, "singular linear system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Real f = a(i, k) / a(k, k);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

Vec least_squares(Matrix a, Vec b)
{
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw Error(ErrorCode::InvalidInput, "least_squares needs rows >= cols");
    Vec diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        Real nrm = 0;
        for (std::size_t i = k; i < m; ++i) nrm += a(i, k) * a(i, k);
        nrm = sqrt(nrm);
        if (nrm == 0) throw Error(ErrorCode::InvalidInput, "rank-deficient least squares");
        if (a(k, k) > 0) nrm = -nrm;
        // v = x - nrm e_k stored in column k
        a(k, k) -= nrm;
        Real vv = 0;
        for (std::size_t i = k; i < m; ++i) vv += a(i, k) * a(i, k);
        for (std::size_t j = k + 1; j < n; ++j) {
            Real s = 0;
            for (std::size_t i = k; i < m; ++i) s += a(i, k) * a(i, j);
            s = 2 * s / vv;
            for (std::size_t i = k; i < m; ++i) a(i, j) -= s * a(i, k);
        }
        Real s = 0;
        for (std::size_t i = k; i < m; ++i) s += a(i, k) * b[i];
        s = 2 * s / vv;
        for (std::size_t i = k; i < m; ++i) b[i] -= s * a(i, k);
        diag[k] = nrm;
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / diag[i];
    }
    return x;
}

} // namespace bcinv
