#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cjsr/numerics.hpp"
#include "cjsr/rng.hpp"
#include "oracles.hpp"

using namespace cjsr;

namespace {

SymMatrix sym2(double a00, double a01, double a11) {
    SymMatrix m(2);
    m.at(0, 0) = a00;
    m.at(0, 1) = a01;
    m.at(1, 1) = a11;
    return m;
}

SymMatrix random_sym(int n, SplitMix64& rng, double scale = 1.0) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.at(i, j) = scale * (rng.next_double() - 0.5);
    return m;
}

}  // namespace

TEST_CASE("sym_eig on small fixed matrices") {
    {
        const SymEig e = sym_eig(SymMatrix::identity(2));
        CHECK(e.values[0] == doctest::Approx(1.0));
        CHECK(e.values[1] == doctest::Approx(1.0));
    }
    {
        const SymEig e = sym_eig(sym2(2.0, 0.0, 5.0));
        CHECK(e.values[0] == doctest::Approx(2.0));
        CHECK(e.values[1] == doctest::Approx(5.0));
        CHECK(std::fabs(e.vectors(0, 0)) == doctest::Approx(1.0));
        CHECK(std::fabs(e.vectors(1, 1)) == doctest::Approx(1.0));
    }
    {
        // characteristic polynomial x^2 - 1
        const SymEig e = sym_eig(sym2(0.0, 1.0, 0.0));
        CHECK(e.values[0] == doctest::Approx(-1.0));
        CHECK(e.values[1] == doctest::Approx(1.0));
    }
}

TEST_CASE("sym_eig residuals on random matrices") {
    SplitMix64 rng(11);
    for (int n : {2, 3, 6, 10}) {
        for (int rep = 0; rep < 5; ++rep) {
            const SymMatrix m = random_sym(n, rng, 3.0);
            const SymEig e = sym_eig(m);
            const Matrix dense = m.to_dense();
            for (int k = 0; k < n; ++k) {
                std::vector<double> v(n);
                for (int i = 0; i < n; ++i) v[i] = e.vectors(i, k);
                const std::vector<double> mv = dense.apply(v);
                double resid = 0.0;
                for (int i = 0; i < n; ++i) resid += (mv[i] - e.values[k] * v[i]) * (mv[i] - e.values[k] * v[i]);
                CHECK(std::sqrt(resid) <= 1e-10 * m.frobenius());
            }
            for (int k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
        }
    }
}

TEST_CASE("kappa") {
    CHECK(kappa(SymMatrix::identity(2)) == doctest::Approx(1.0));
    CHECK(kappa(sym2(1.0, 0.0, 4.0)) == doctest::Approx(2.0));  // sqrt(4/1)
    CHECK(kappa(sym2(2.0, 0.0, 2.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(kappa(sym2(1.0, 0.0, -1.0)), NotPositiveDefinite);

    // scale invariance
    SplitMix64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        SymMatrix p = random_sym(3, rng);
        for (int i = 0; i < 3; ++i) p.at(i, i) += 2.0;  // push into the PD cone
        const double k1 = kappa(p);
        SymMatrix q = p;
        const double c = 0.1 + 5.0 * rng.next_double();
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) q.at(i, j) *= c;
        CHECK(kappa(q) == doctest::Approx(k1).epsilon(1e-10));
    }
}

TEST_CASE("regularized incomplete beta: closed forms and endpoints") {
    CHECK(reg_inc_beta(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(reg_inc_beta(0.0, 3.0, 4.0) == 0.0);
    CHECK(reg_inc_beta(1.0, 3.0, 4.0) == 1.0);
    // arcsine law for a = b = 1/2
    for (double x = 0.01; x < 1.0; x += 0.01) {
        const double expected = (2.0 / M_PI) * std::asin(std::sqrt(x));
        CHECK(std::fabs(reg_inc_beta(x, 0.5, 0.5) - expected) <= 1e-10);
    }
    CHECK_THROWS_AS(reg_inc_beta(-0.1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(reg_inc_beta(0.5, 0.0, 1.0), DomainError);
}

TEST_CASE("regularized incomplete beta: binomial identity") {
    // I_x(a, b) = P[Binomial(a+b-1, x) >= a] for integer parameters
    CHECK(std::fabs(reg_inc_beta(0.3, 4.0, 8.0) - oracles::binomial_tail_at_least(11, 0.3, 4)) <= 1e-12);
    for (int a = 1; a <= 10; ++a)
        for (int b = 1; b <= 10; ++b)
            for (double x = 0.05; x < 0.96; x += 0.05) {
                const double expected = oracles::binomial_tail_at_least(a + b - 1, x, a);
                CHECK(std::fabs(reg_inc_beta(x, a, b) - expected) <= 1e-10);
            }
}

TEST_CASE("regularized incomplete beta is nondecreasing in x") {
    for (double a : {0.5, 1.0, 2.5, 7.0})
        for (double b : {0.5, 1.5, 4.0}) {
            double prev = 0.0;
            for (double x = 0.0; x <= 1.0; x += 0.02) {
                const double v = reg_inc_beta(x, a, b);
                CHECK(v >= prev - 1e-14);
                prev = v;
            }
        }
}

TEST_CASE("inverse regularized incomplete beta") {
    CHECK(reg_inc_beta_inv(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(reg_inc_beta_inv(0.0, 2.0, 3.0) == 0.0);
    CHECK(reg_inc_beta_inv(1.0, 2.0, 3.0) == 1.0);
    // arcsine inversion: x = sin^2(pi p / 2)
    for (double p = 0.1; p < 1.0; p += 0.1) {
        const double expected = std::sin(M_PI * p / 2.0) * std::sin(M_PI * p / 2.0);
        CHECK(std::fabs(reg_inc_beta_inv(p, 0.5, 0.5) - expected) <= 1e-9);
    }
    // round trip
    for (double a : {0.5, 2.0, 6.0})
        for (double b : {0.5, 3.0})
            for (double x = 0.1; x < 1.0; x += 0.1) {
                const double p = reg_inc_beta(x, a, b);
                CHECK(std::fabs(reg_inc_beta_inv(p, a, b) - x) <= 1e-8);
            }
    CHECK_THROWS_AS(reg_inc_beta_inv(1.5, 1.0, 1.0), DomainError);
}

TEST_CASE("project_spectral_box") {
    {
        const SymMatrix out = project_spectral_box(sym2(0.5, 0.0, 3.0), 1.0, 2.0);
        CHECK(out(0, 0) == doctest::Approx(1.0));
        CHECK(out(1, 1) == doctest::Approx(2.0));
        CHECK(out(0, 1) == doctest::Approx(0.0));
    }
    {
        const SymMatrix in = sym2(1.5, 0.1, 1.2);
        const SymMatrix out = project_spectral_box(in, 1.0, 2.0);
        CHECK((out.to_dense() - in.to_dense()).frobenius() <= 1e-12);
    }
    {
        // eigenvalues (-2, 2) -> (1, 2); hand reassembly gives [[1.5, .5], [.5, 1.5]]
        const SymMatrix out = project_spectral_box(sym2(0.0, 2.0, 0.0), 1.0, 10.0);
        CHECK(out(0, 0) == doctest::Approx(1.5));
        CHECK(out(0, 1) == doctest::Approx(0.5));
        CHECK(out(1, 1) == doctest::Approx(1.5));
    }
    SplitMix64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const SymMatrix m = random_sym(4, rng, 5.0);
        const SymEig e = sym_eig(project_spectral_box(m, -1.0, 2.5));
        CHECK(e.values.front() >= -1.0 - 1e-10);
        CHECK(e.values.back() <= 2.5 + 1e-10);
    }
}

TEST_CASE("svec round trip and isometry") {
    SplitMix64 rng(23);
    for (int n : {1, 2, 3, 5}) {
        const SymMatrix m = random_sym(n, rng);
        const auto v = m.to_svec();
        const SymMatrix back = SymMatrix::from_svec(v);
        CHECK((back.to_dense() - m.to_dense()).frobenius() <= 1e-14);
        double nrm2 = 0.0;
        for (double x : v) nrm2 += x * x;
        CHECK(std::sqrt(nrm2) == doctest::Approx(m.frobenius()).epsilon(1e-13));
    }
}

TEST_CASE("general eigenvalues") {
    {
        // rotation by 0.7 scaled by 0.9: eigenvalues 0.9 e^{+-0.7i}
        Matrix r(2);
        r(0, 0) = 0.9 * std::cos(0.7);
        r(0, 1) = -0.9 * std::sin(0.7);
        r(1, 0) = 0.9 * std::sin(0.7);
        r(1, 1) = 0.9 * std::cos(0.7);
        const auto eig = eigenvalues(r);
        CHECK(std::abs(eig[0]) == doctest::Approx(0.9).epsilon(1e-10));
        CHECK(std::abs(eig[1]) == doctest::Approx(0.9).epsilon(1e-10));
        CHECK(std::fabs(eig[1].imag()) == doctest::Approx(0.9 * std::sin(0.7)).epsilon(1e-9));
    }
    {
        // companion matrix of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        Matrix c(3);
        c(0, 0) = 6.0;
        c(0, 1) = -11.0;
        c(0, 2) = 6.0;
        c(1, 0) = 1.0;
        c(2, 1) = 1.0;
        const auto eig = eigenvalues(c);
        CHECK(std::abs(eig[0]) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(eig[1]) == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(std::abs(eig[2]) == doctest::Approx(3.0).epsilon(1e-8));
    }
    {
        Matrix z(4);
        for (const auto& l : eigenvalues(z)) CHECK(std::abs(l) == 0.0);
        CHECK(spectral_radius(z) == 0.0);
    }
    // agreement with the symmetric solver on random symmetric input
    SplitMix64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const SymMatrix m = random_sym(5, rng, 2.0);
        const SymEig je = sym_eig(m);
        auto ge = eigenvalues(m.to_dense());
        std::vector<double> real_parts;
        for (const auto& l : ge) {
            CHECK(std::fabs(l.imag()) <= 1e-8);
            real_parts.push_back(l.real());
        }
        std::sort(real_parts.begin(), real_parts.end());
        for (int k = 0; k < 5; ++k) CHECK(real_parts[k] == doctest::Approx(je.values[k]).epsilon(1e-8));
    }
}

TEST_CASE("spectral radius of a known 2-cycle product") {
    Matrix a(2), b(2);
    a(0, 1) = 1.2;
    b(1, 0) = 1.2;
    CHECK(spectral_radius(a * b) == doctest::Approx(1.44).epsilon(1e-10));
    CHECK(spectral_radius(a) == doctest::Approx(0.0));
}

TEST_CASE("diagonalizability") {
    {
        Matrix jordan(2);
        jordan(0, 0) = 0.9;
        jordan(0, 1) = 1.0;
        jordan(1, 1) = 0.9;
        CHECK_FALSE(diagonalizability(jordan).diagonalizable);
    }
    {
        Matrix r(2);
        r(0, 0) = std::cos(1.1);
        r(0, 1) = -std::sin(1.1);
        r(1, 0) = std::sin(1.1);
        r(1, 1) = std::cos(1.1);
        CHECK(diagonalizability(r).diagonalizable);
    }
    {
        Matrix d(3);
        d(0, 0) = 1.0;
        d(1, 1) = 2.0;
        d(2, 2) = 3.0;
        CHECK(diagonalizability(d).diagonalizable);
    }
    {
        // repeated eigenvalue 0 with a full eigenspace: all-ones matrix
        Matrix ones(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) ones(i, j) = 1.0;
        CHECK(diagonalizability(ones).diagonalizable);
    }
}
