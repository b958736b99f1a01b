#include "cjsr/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace cjsr {

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n_; ++j) r(i, j) += aik * rhs(k, j);
        }
    return r;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    Matrix r(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - rhs.a_[k];
    return r;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0.0;
    for (double v : a_) s = std::max(s, std::fabs(v));
    return s;
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SymMatrix SymMatrix::from_dense(const Matrix& m) {
    SymMatrix s(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j) s.at(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

Matrix SymMatrix::to_dense() const {
    Matrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) m(i, j) = m(j, i) = at(i, j);
    return m;
}

double SymMatrix::frobenius() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            const double v = at(i, j);
            s += (i == j) ? v * v : 2.0 * v * v;
        }
    return std::sqrt(s);
}

double SymMatrix::quadratic_form(std::span<const double> x) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
        s += at(i, i) * x[i] * x[i];
        for (int j = i + 1; j < n_; ++j) s += 2.0 * at(i, j) * x[i] * x[j];
    }
    return s;
}

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

std::vector<double> SymMatrix::to_svec() const {
    std::vector<double> v(packed_size());
    std::size_t k = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j, ++k) v[k] = (i == j) ? at(i, j) : kSqrt2 * at(i, j);
    return v;
}

SymMatrix SymMatrix::from_svec(std::span<const double> v) {
    // packed_size d = n(n+1)/2  =>  n from the quadratic formula
    const int n = static_cast<int>(std::lround((std::sqrt(8.0 * static_cast<double>(v.size()) + 1.0) - 1.0) / 2.0));
    SymMatrix m(n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++k) m.at(i, j) = (i == j) ? v[k] : v[k] / kSqrt2;
    return m;
}

std::vector<double> svec_outer(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> v(static_cast<std::size_t>(n) * (n + 1) / 2);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++k) v[k] = (i == j) ? x[i] * x[j] : kSqrt2 * x[i] * x[j];
    return v;
}

SymEig sym_eig(const SymMatrix& m) {
    const int n = m.dim();
    Matrix a = m.to_dense();
    Matrix v = Matrix::identity(n);
    if (n == 0) return {{}, v};

    const double norm = std::max(a.frobenius(), std::numeric_limits<double>::min());
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-15 * norm) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-18 * norm) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        // one more off-diagonal check; Jacobi converges in practice well before
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) > 1e-10 * norm) throw ConvergenceFailure("jacobi eigensolver did not converge");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });

    SymEig out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double kappa(const SymMatrix& p) {
    const SymEig eig = sym_eig(p);
    const double lmin = eig.values.front();
    if (!(lmin > 0.0)) throw NotPositiveDefinite("kappa requires P > 0");
    double log_det = 0.0;
    for (double l : eig.values) log_det += std::log(l);
    const double n = static_cast<double>(p.dim());
    return std::exp(0.5 * (log_det - n * std::log(lmin)));
}

SymMatrix project_spectral_box(const SymMatrix& m, double lo, double hi) {
    if (lo > hi) throw DomainError("project_spectral_box: lo > hi");
    const SymEig eig = sym_eig(m);
    const int n = m.dim();
    SymMatrix out(n);
    for (int k = 0; k < n; ++k) {
        const double l = std::clamp(eig.values[k], lo, hi);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) out.at(i, j) += l * eig.vectors(i, k) * eig.vectors(j, k);
    }
    return out;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr double EPS = 3e-16;
    constexpr double FPMIN = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < FPMIN) d = FPMIN;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < FPMIN) d = FPMIN;
        c = 1.0 + aa / c;
        if (std::fabs(c) < FPMIN) c = FPMIN;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < FPMIN) d = FPMIN;
        c = 1.0 + aa / c;
        if (std::fabs(c) < FPMIN) c = FPMIN;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < EPS) return h;
    }
    throw ConvergenceFailure("incomplete beta continued fraction stalled");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta: parameters must be positive");
    if (!(x >= 0.0) || !(x <= 1.0)) throw DomainError("reg_inc_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - reg_inc_beta(1.0 - x, b, a);
    const double ln_pre =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    return std::exp(ln_pre) * betacf(a, b, x) / a;
}

double reg_inc_beta_inv(double p, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta_inv: parameters must be positive");
    if (!(p >= 0.0) || !(p <= 1.0)) throw DomainError("reg_inc_beta_inv: p outside [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    double mid = 0.5;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double f = reg_inc_beta(mid, a, b) - p;
        if (std::fabs(f) <= 1e-13 || hi - lo <= 1e-17) break;
        if (f < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

// ---------------------------------------------------------------------------
// General eigenvalues: complex Hessenberg reduction + shifted QR.

namespace {

using cd = std::complex<double>;

struct CMat {
    int n = 0;
    std::vector<cd> a;
    explicit CMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
    cd& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    cd operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

void hessenberg_reduce(CMat& h) {
    const int n = h.n;
    for (int k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(h(i, k));
        if (scale == 0.0) continue;
        std::vector<cd> v(n - k - 1);
        double norm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i - k - 1] = h(i, k) / scale;
            norm2 += std::norm(v[i - k - 1]);
        }
        const double alpha = std::sqrt(norm2);
        if (alpha == 0.0) continue;
        const cd phase = (v[0] == cd(0.0, 0.0)) ? cd(1.0, 0.0) : v[0] / std::abs(v[0]);
        v[0] += phase * alpha;  // reflector maps column onto -phase*alpha*e1
        double vn2 = 0.0;
        for (const cd& x : v) vn2 += std::norm(x);
        if (vn2 == 0.0) continue;
        for (int j = k; j < n; ++j) {
            cd dot(0.0, 0.0);
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i - k - 1]) * h(i, j);
            dot *= 2.0 / vn2;
            for (int i = k + 1; i < n; ++i) h(i, j) -= dot * v[i - k - 1];
        }
        for (int i = 0; i < n; ++i) {
            cd dot(0.0, 0.0);
            for (int j = k + 1; j < n; ++j) dot += h(i, j) * v[j - k - 1];
            dot *= 2.0 / vn2;
            for (int j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j - k - 1]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = cd(0.0, 0.0);
    }
}

// c real, s complex with [c s; -conj(s) c] [f; g] = [r; 0]
struct Givens {
    double c;
    cd s;
};

Givens make_givens(cd f, cd g) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) return {1.0, cd(0.0, 0.0)};
    if (af == 0.0) return {0.0, std::conj(g) / ag};
    const double t = std::sqrt(af * af + ag * ag);
    return {af / t, (f / af) * std::conj(g) / (t)};
}

std::vector<cd> hessenberg_qr_eigenvalues(CMat h) {
    const int n = h.n;
    std::vector<cd> eig(n);
    int hi = n - 1;
    long iter_block = 0;
    long iter_total = 0;
    const long iter_cap = 300L * std::max(n, 4);
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = h(0, 0);
            break;
        }
        // deflate trailing 1x1 blocks
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (s == 0.0) s = 1.0;
            if (std::abs(h(lo, lo - 1)) <= 1e-15 * s) {
                h(lo, lo - 1) = cd(0.0, 0.0);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[hi] = h(hi, hi);
            --hi;
            iter_block = 0;
            continue;
        }
        if (++iter_total > iter_cap) throw ConvergenceFailure("general eigensolver did not converge");

        // Wilkinson shift from the trailing 2x2
        const cd a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
        cd mu;
        if (++iter_block % 15 == 0) {
            mu = d + cd(1.5 * std::abs(h(hi, hi - 1)), 0.0);
        } else {
            const cd tr = a + d;
            const cd disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            const cd mu1 = 0.5 * (tr + disc), mu2 = 0.5 * (tr - disc);
            mu = (std::abs(mu1 - d) < std::abs(mu2 - d)) ? mu1 : mu2;
        }

        for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
        std::vector<Givens> rot(hi - lo);
        for (int i = lo; i < hi; ++i) {
            const Givens g = make_givens(h(i, i), h(i + 1, i));
            rot[i - lo] = g;
            for (int j = i; j <= hi; ++j) {
                const cd t1 = h(i, j), t2 = h(i + 1, j);
                h(i, j) = g.c * t1 + g.s * t2;
                h(i + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const Givens g = rot[i - lo];
            const int rmax = std::min(i + 1, hi);
            for (int r = lo; r <= rmax; ++r) {
                const cd t1 = h(r, i), t2 = h(r, i + 1);
                h(r, i) = g.c * t1 + std::conj(g.s) * t2;
                h(r, i + 1) = -g.s * t1 + g.c * t2;
            }
        }
        for (int i = lo; i <= hi; ++i) h(i, i) += mu;
    }
    return eig;
}

// LU with partial pivoting; returns false when numerically singular.
bool lu_factor(CMat& a, std::vector<int>& piv) {
    const int n = a.n;
    piv.resize(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < 1e-300) return false;
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const cd inv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cd f = a(i, k) * inv;
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return true;
}

void lu_solve(const CMat& lu, const std::vector<int>& piv, std::vector<cd>& b) {
    const int n = lu.n;
    for (int k = 0; k < n; ++k) {
        if (piv[k] != k) std::swap(b[k], b[piv[k]]);
        for (int i = k + 1; i < n; ++i) b[i] -= lu(i, k) * b[k];
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int j = k + 1; j < n; ++j) b[k] -= lu(k, j) * b[j];
        b[k] /= lu(k, k);
    }
}

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
    const int n = a.dim();
    if (n == 0) return {};
    if (n == 1) return {cd(a(0, 0), 0.0)};
    const double scale = a.max_abs();
    if (scale == 0.0) return std::vector<cd>(n, cd(0.0, 0.0));
    CMat h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = cd(a(i, j) / scale, 0.0);
    hessenberg_reduce(h);
    std::vector<cd> eig = hessenberg_qr_eigenvalues(std::move(h));
    for (cd& l : eig) l *= scale;
    std::sort(eig.begin(), eig.end(), [](const cd& x, const cd& y) {
        return std::abs(x) < std::abs(y) || (std::abs(x) == std::abs(y) && x.real() < y.real());
    });
    return eig;
}

double spectral_radius(const Matrix& a) {
    double r = 0.0;
    for (const cd& l : eigenvalues(a)) r = std::max(r, std::abs(l));
    return r;
}

DiagonalizabilityReport diagonalizability(const Matrix& a, double cond_limit) {
    const int n = a.dim();
    if (n <= 1) return {true, 1.0};
    const std::vector<cd> eig = eigenvalues(a);
    double lam_max = 0.0;
    for (const cd& l : eig) lam_max = std::max(lam_max, std::abs(l));
    const double scale = std::max({a.max_abs(), lam_max, 1e-30});

    CMat q(n);
    for (int k = 0; k < n; ++k) {
        std::vector<cd> x(n);
        bool ok = false;
        double eta = 1e-9 * scale;
        for (int attempt = 0; attempt < 4 && !ok; ++attempt, eta *= 100.0) {
            CMat m(n);
            const cd shift = eig[k] + cd(eta, 0.7 * eta);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = cd(a(i, j), 0.0) - (i == j ? shift : cd(0.0, 0.0));
            std::vector<int> piv;
            if (!lu_factor(m, piv)) continue;
            // deterministic pseudo-random start, distinct per column
            uint64_t s = mix64(0x5eedull + 31ull * k);
            for (int i = 0; i < n; ++i) {
                const double re = (mix64(s + 2ull * i) >> 11) * 0x1p-53 - 0.5;
                const double im = (mix64(s + 2ull * i + 1) >> 11) * 0x1p-53 - 0.5;
                x[i] = cd(re, im);
            }
            for (int pass = 0; pass < 2; ++pass) {
                lu_solve(m, piv, x);
                double nrm = 0.0;
                for (const cd& v : x) nrm += std::norm(v);
                nrm = std::sqrt(nrm);
                if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
                for (cd& v : x) v /= nrm;
                ok = true;
            }
        }
        if (!ok) return {false, std::numeric_limits<double>::infinity()};
        for (int i = 0; i < n; ++i) q(i, k) = x[i];
    }

    CMat lu = q;
    std::vector<int> piv;
    if (!lu_factor(lu, piv)) return {false, std::numeric_limits<double>::infinity()};
    double qf = 0.0, qinvf = 0.0;
    for (const cd& v : q.a) qf += std::norm(v);
    for (int col = 0; col < n; ++col) {
        std::vector<cd> e(n, cd(0.0, 0.0));
        e[col] = cd(1.0, 0.0);
        lu_solve(lu, piv, e);
        for (const cd& v : e) qinvf += std::norm(v);
    }
    const double cond = std::sqrt(qf) * std::sqrt(qinvf);
    return {std::isfinite(cond) && cond < cond_limit, cond};
}

}  // namespace cjsr
