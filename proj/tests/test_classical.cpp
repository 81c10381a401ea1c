#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "lame/classical.hpp"

using namespace lame;

namespace {

double abs_f(Complex z) { return std::abs(z); }
double square_f(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

std::vector<double> sorted_real_parts(const RootSet& roots, double imag_tol) {
    std::vector<double> out;
    for (const Complex& z : roots.expanded()) {
        REQUIRE(std::abs(z.imag()) <= imag_tol);
        out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

SzNagyConfig random_config(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    std::vector<Complex> poles;
    std::vector<double> tau;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        poles.emplace_back(coord(rng), coord(rng));
        tau.push_back(mass(rng));
        total += tau.back();
    }
    for (double& t : tau) t /= total;
    return SzNagyConfig(std::move(poles), std::move(tau));
}

}  // namespace

TEST_CASE("pole config validation") {
    CHECK_THROWS_AS(SzNagyConfig({{0, 0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SzNagyConfig({{0, 0}, {1, 0}}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SzNagyConfig({{0, 0}, {1, 0}}, {0.6, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(SzNagyConfig({{0, 0}, {1, 0}}, {1.2, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(SzNagyConfig({{0, 0}, {1, 0}}, {0.0, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(SzNagyConfig({{1, 0}, {1, 0}}, {0.5, 0.5}));
}

TEST_CASE("generalized derivative zeros") {
    SUBCASE("symmetric two-pole average") {
        RootSet roots = sz_nagy_zeros(SzNagyConfig({{-1, 0}, {1, 0}}, {0.5, 0.5}));
        REQUIRE(roots.roots.size() == 1);
        CHECK(std::abs(roots.roots[0]) <= 1e-12);
    }
    SUBCASE("uneven masses move the zero") {
        SzNagyConfig cfg({{0, 0}, {3, 0}}, {1.0 / 3.0, 2.0 / 3.0});
        // numerator (1/3)(z-3) + (2/3) z = z - 1
        ComplexPolynomial num = cfg.numerator();
        REQUIRE(num.degree() == 1);
        CHECK(std::abs(num.coeff(0) - Complex(-1.0, 0.0)) <= 1e-14);
        CHECK(std::abs(num.coeff(1) - Complex(1.0, 0.0)) <= 1e-14);
        RootSet roots = sz_nagy_zeros(cfg);
        REQUIRE(roots.roots.size() == 1);
        CHECK(std::abs(roots.roots[0] - Complex(1.0, 0.0)) <= 1e-12);
    }
    SUBCASE("coincident poles leave their multiplicity minus one") {
        RootSet roots = sz_nagy_zeros(SzNagyConfig({{1, 0}, {1, 0}}, {0.5, 0.5}));
        REQUIRE(roots.roots.size() == 1);
        REQUIRE(roots.multiplicities[0] == 1);
        CHECK(std::abs(roots.roots[0] - Complex(1.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("zero set dominance for the two-pole configs") {
    SUBCASE("collinear equality case") {
        SlackReport rep = generalized_derivative_check(
            SzNagyConfig({{0, 0}, {3, 0}}, {1.0 / 3.0, 2.0 / 3.0}));
        // f = |z|: (2/3)*0 + (1/3)*3 - |1| = 0, an equality direction.
        CHECK(rep.mass == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rep.mass * convex_gap(rep.lhs, rep.rhs, abs_f) ==
              doctest::Approx(0.0).epsilon(1e-13));
        CHECK(rep.min_slack >= -1e-12);
        CHECK(rep.min_slack <= 1e-12);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("symmetric pair against its midpoint") {
        SlackReport rep =
            generalized_derivative_check(SzNagyConfig({{-1, 0}, {1, 0}}, {0.5, 0.5}));
        CHECK(rep.mass * convex_gap(rep.lhs, rep.rhs, square_f) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(rep.min_slack >= -1e-12);
        CHECK(rep.certificate.feasible);
    }
}

TEST_CASE("zero set dominance holds over random complex configs") {
    std::mt19937_64 rng(75021);
    for (int rep = 0; rep < 200; ++rep) {
        const int m = 2 + static_cast<int>(rng() % 5);
        SlackReport report = generalized_derivative_check(random_config(rng, m));
        CHECK(report.certificate.feasible);
        CHECK(report.certificate.max_violation <= 1e-9);
        CHECK(report.min_slack >= -1e-8);
    }
}

TEST_CASE("subset product dominance") {
    SUBCASE("pair products on three symmetric poles") {
        SzNagyConfig cfg({{-1, 0}, {0, 0}, {1, 0}},
                         {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        SlackReport rep = symmetric_product_check(cfg, 2, 2);
        // numerator z^2 - 1/3; the single zero-pair product is -1/3 and
        // f = |z| hits equality: (1/3)(|0| + |-1| + |0|) = 1/3.
        REQUIRE(rep.lhs.points.size() == 1);
        CHECK(std::abs(rep.lhs.points[0] - Complex(-1.0 / 3.0, 0.0)) <= 1e-10);
        CHECK(rep.mass == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rep.mass * convex_gap(rep.lhs, rep.rhs, abs_f) ==
              doctest::Approx(0.0).epsilon(1e-10));
        CHECK(rep.min_slack >= -1e-10);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("index zero collapses both sides to the constant one") {
        std::mt19937_64 rng(4257);
        SlackReport rep = symmetric_product_check(random_config(rng, 5), 3, 0);
        for (const Complex& z : rep.lhs.points) CHECK(std::abs(z - Complex(1, 0)) == 0.0);
        for (const Complex& z : rep.rhs.points) CHECK(std::abs(z - Complex(1, 0)) == 0.0);
        CHECK(std::abs(rep.min_slack) <= 1e-12);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("singleton subsets reproduce the plain check") {
        std::mt19937_64 rng(99331);
        for (int m : {3, 4, 5}) {
            SzNagyConfig cfg = random_config(rng, m);
            SlackReport plain = generalized_derivative_check(cfg);
            SlackReport subset = symmetric_product_check(cfg, 1, 1);
            CHECK(std::abs(plain.min_slack - subset.min_slack) <= 1e-12);
            CHECK(subset.certificate.feasible == plain.certificate.feasible);
        }
    }
    SUBCASE("all subset sizes and indices on a five-pole config") {
        std::mt19937_64 rng(31017);
        SzNagyConfig cfg = random_config(rng, 5);
        for (int d = 1; d <= 4; ++d)
            for (int e = 0; e <= d; ++e) {
                SlackReport rep = symmetric_product_check(cfg, d, e);
                CHECK(rep.certificate.feasible);
                CHECK(rep.min_slack >= -1e-8);
            }
    }
    SUBCASE("guards") {
        std::mt19937_64 rng(5);
        SzNagyConfig cfg = random_config(rng, 4);
        CHECK_THROWS_AS(symmetric_product_check(cfg, 0, 0), std::invalid_argument);
        CHECK_THROWS_AS(symmetric_product_check(cfg, 4, 1), std::invalid_argument);
        CHECK_THROWS_AS(symmetric_product_check(cfg, 2, 3), std::invalid_argument);
        SzNagyConfig wide = random_config(rng, 9);
        CHECK_THROWS_AS(symmetric_product_check(wide, 2, 1), CombinatorialCap);
    }
}

TEST_CASE("derivative step dominance") {
    SUBCASE("quadratic") {
        SlackReport rep =
            derivative_chain_check(ComplexPolynomial({{-1, 0}, {0, 0}, {1, 0}}), 1);
        // 1*(|-1| + |1|) - 2*|0| = 2 on f = |z|.
        CHECK(rep.mass == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(rep.mass * convex_gap(rep.lhs, rep.rhs, abs_f) ==
              doctest::Approx(2.0).epsilon(1e-12));
        CHECK(rep.min_slack >= -1e-12);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("cubic") {
        ComplexPolynomial p({{0, 0}, {-1, 0}, {0, 0}, {1, 0}});  // z^3 - z
        SlackReport rep = derivative_chain_check(p, 1);
        // 2*(1 + 0 + 1) - 3*(2/sqrt(3)) = 4 - 2 sqrt(3) on f = |z|.
        CHECK(rep.mass * convex_gap(rep.lhs, rep.rhs, abs_f) ==
              doctest::Approx(4.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-10));
        CHECK(rep.min_slack >= -1e-10);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("last level is the centroid") {
        ComplexPolynomial p = ComplexPolynomial::from_roots({{0, 0}, {1, 0}, {3, 1}});
        SlackReport rep = derivative_chain_check(p, 2);
        REQUIRE(rep.lhs.points.size() == 1);
        CHECK(std::abs(rep.lhs.points[0] - rep.rhs.barycenter()) <= 1e-10);
        CHECK(rep.min_slack >= -1e-10);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("guards") {
        ComplexPolynomial line({{1, 0}, {1, 0}});
        CHECK_THROWS_AS(derivative_chain_check(line, 1), std::invalid_argument);
        ComplexPolynomial p({{-1, 0}, {0, 0}, {1, 0}});
        CHECK_THROWS_AS(derivative_chain_check(p, 0), std::invalid_argument);
        CHECK_THROWS_AS(derivative_chain_check(p, 2), std::invalid_argument);
    }
    SUBCASE("random polynomials at every level") {
        std::mt19937_64 rng(271828);
        std::uniform_real_distribution<double> coord(-1.5, 1.5);
        for (int rep = 0; rep < 100; ++rep) {
            const int d = 2 + static_cast<int>(rng() % 7);
            std::vector<Complex> roots;
            for (int i = 0; i < d; ++i) roots.emplace_back(coord(rng), coord(rng));
            ComplexPolynomial p = ComplexPolynomial::from_roots(roots);
            for (int level = 1; level < d; ++level) {
                SlackReport report = derivative_chain_check(p, level);
                CHECK(report.certificate.feasible);
                CHECK(report.min_slack >= -1e-8);
            }
        }
    }
}

TEST_CASE("jacobi polynomial recurrence") {
    CHECK_THROWS_AS(JacobiParams(0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(JacobiParams(2, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(JacobiParams(2, 0.0, -1.5), std::invalid_argument);

    SUBCASE("legendre low degrees") {
        ComplexPolynomial p1 = jacobi_poly(JacobiParams(1, 0.0, 0.0));
        REQUIRE(p1.degree() == 1);
        CHECK(std::abs(p1.coeff(0)) <= 1e-15);
        CHECK(std::abs(p1.coeff(1) - Complex(1, 0)) <= 1e-15);

        ComplexPolynomial p2 = jacobi_poly(JacobiParams(2, 0.0, 0.0));
        REQUIRE(p2.degree() == 2);
        CHECK(std::abs(p2.coeff(0) - Complex(-0.5, 0)) <= 1e-15);
        CHECK(std::abs(p2.coeff(1)) <= 1e-15);
        CHECK(std::abs(p2.coeff(2) - Complex(1.5, 0)) <= 1e-15);
    }
    SUBCASE("linear zero location") {
        ComplexPolynomial p = jacobi_poly(JacobiParams(1, 1.5, 0.25));
        const double zero = (0.25 - 1.5) / (1.5 + 0.25 + 2.0);
        CHECK(std::abs(p(Complex(zero, 0.0))) <= 1e-15);
        ComplexPolynomial sym = jacobi_poly(JacobiParams(1, 0.7, 0.7));
        CHECK(std::abs(sym(Complex(0.0, 0.0))) <= 1e-15);
    }
    SUBCASE("normalization at one") {
        ComplexPolynomial p = jacobi_poly(JacobiParams(2, -0.5, -0.5));
        CHECK(p(Complex(1, 0)).real() == doctest::Approx(3.0 / 8.0).epsilon(1e-13));
        ComplexPolynomial q = jacobi_poly(JacobiParams(5, 0.3, -0.7));
        double expected = 1.0;
        for (int i = 1; i <= 5; ++i) expected *= (0.3 + i) / i;
        CHECK(q(Complex(1, 0)).real() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("jacobi zeros from the recurrence matrix") {
    SUBCASE("committed closed forms") {
        std::vector<double> legendre = jacobi_zeros(JacobiParams(2, 0.0, 0.0));
        REQUIRE(legendre.size() == 2);
        CHECK(legendre[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(legendre[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

        std::vector<double> cheb = jacobi_zeros(JacobiParams(2, -0.5, -0.5));
        REQUIRE(cheb.size() == 2);
        CHECK(cheb[0] == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-12));
        CHECK(cheb[1] == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));

        std::vector<double> mid = jacobi_zeros(JacobiParams(1, 0.8, 0.8));
        REQUIRE(mid.size() == 1);
        CHECK(std::abs(mid[0]) <= 1e-15);
    }
    SUBCASE("ascending and interior") {
        std::vector<double> zeros = jacobi_zeros(JacobiParams(7, 1.5, -0.2));
        REQUIRE(zeros.size() == 7);
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            CHECK(zeros[i] > -1.0);
            CHECK(zeros[i] < 1.0);
            if (i > 0) CHECK(zeros[i] > zeros[i - 1]);
        }
    }
    SUBCASE("agreement with direct root finding") {
        for (auto [a, b] : std::vector<std::pair<double, double>>{
                 {0.0, 0.0}, {0.5, -0.5}, {1.0, 2.0}}) {
            for (int n : {2, 5, 10, 15, 20}) {
                JacobiParams params(n, a, b);
                std::vector<double> gw = jacobi_zeros(params);
                std::vector<double> direct =
                    sorted_real_parts(find_roots(jacobi_poly(params)), 1e-8);
                REQUIRE(direct.size() == gw.size());
                for (std::size_t i = 0; i < gw.size(); ++i)
                    CHECK(gw[i] == doctest::Approx(direct[i]).epsilon(1e-9));
            }
        }
    }
    SUBCASE("consecutive degrees interlace") {
        for (auto [a, b] :
             std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.3, 1.1}}) {
            std::vector<double> prev = jacobi_zeros(JacobiParams(1, a, b));
            for (int n = 2; n <= 20; ++n) {
                std::vector<double> cur = jacobi_zeros(JacobiParams(n, a, b));
                for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
                    CHECK(cur[i] < prev[i]);
                    CHECK(prev[i] < cur[i + 1]);
                }
                prev = std::move(cur);
            }
        }
    }
    SUBCASE("even moments approach the arcsine value from below") {
        double prev = 0.0;
        for (int n : {4, 8, 16, 32}) {
            std::vector<double> zeros = jacobi_zeros(JacobiParams(n, 0.0, 0.0));
            double m2 = 0.0;
            for (double x : zeros) m2 += x * x;
            m2 /= n;
            CHECK(m2 > prev);
            prev = m2;
        }
        CHECK(std::abs(prev - 0.5) < 0.02);
    }
}

TEST_CASE("endpoint dominance of jacobi zero sets") {
    SUBCASE("legendre two point values") {
        SlackReport rep = jacobi_endpoint_check(JacobiParams(2, 0.0, 0.0));
        // f = z^2: rhs 1, lhs 1/3.
        CHECK(convex_gap(rep.lhs, rep.rhs, square_f) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(rep.min_slack >= -1e-12);
        CHECK(rep.certificate.feasible);
        REQUIRE(rep.rhs.weights.size() == 2);
        CHECK(rep.rhs.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("degree one is midpoint convexity") {
        SlackReport rep = jacobi_endpoint_check(JacobiParams(1, 0.4, 0.4));
        CHECK(convex_gap(rep.lhs, rep.rhs, square_f) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.min_slack >= -1e-12);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("asymmetric endpoint weights") {
        SlackReport rep = jacobi_endpoint_check(JacobiParams(10, 1.0, 2.0));
        REQUIRE(rep.rhs.weights.size() == 2);
        CHECK(rep.rhs.weights[0] == doctest::Approx(12.0 / 23.0).epsilon(1e-15));
        CHECK(rep.rhs.weights[1] == doctest::Approx(11.0 / 23.0).epsilon(1e-15));
        CHECK(rep.min_slack >= -1e-10);
        CHECK(rep.certificate.feasible);
    }
}

TEST_CASE("refined endpoint dominance through derivative zeros") {
    CHECK_THROWS_AS(jacobi_refined_check(JacobiParams(1, 0.0, 0.0)), std::invalid_argument);

    SUBCASE("legendre degree two") {
        JacobiRefinedReport rep = jacobi_refined_check(JacobiParams(2, 0.0, 0.0));
        CHECK(rep.mass == doctest::Approx(6.0).epsilon(1e-15));
        // f = z^2 by hand: rhs 2*0 + 2 + 2 = 4 against lhs 3 * (2/3) = 2.
        const std::vector<double> zeros = jacobi_zeros(JacobiParams(2, 0.0, 0.0));
        double s0 = 0.0;
        for (double x : zeros) s0 += x * x;
        CHECK(4.0 - 3.0 * s0 == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(rep.min_slack >= -1e-9);
        CHECK(rep.min_chain_slack >= -1e-9);
        CHECK(rep.composition_defect <= 1e-9);
        CHECK(rep.certificate.feasible);
        // Derivative zero sits at the origin with weight 2/6.
        REQUIRE(rep.rhs.points.size() == 3);
        CHECK(std::abs(rep.rhs.points[0]) <= 1e-14);
        CHECK(rep.rhs.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("fractional exponents") {
        JacobiRefinedReport rep = jacobi_refined_check(JacobiParams(8, 0.5, -0.5));
        CHECK(rep.min_slack >= -1e-9);
        CHECK(rep.min_chain_slack >= -1e-9);
        CHECK(rep.composition_defect <= 1e-9);
        CHECK(rep.certificate.feasible);
    }
    SUBCASE("derivative zeros match the shifted parameter zeros") {
        ComplexPolynomial dp = jacobi_poly(JacobiParams(5, 0.7, 1.3)).derivative();
        std::vector<double> direct = sorted_real_parts(find_roots(dp), 1e-9);
        std::vector<double> shifted = jacobi_zeros(JacobiParams(4, 1.7, 2.3));
        REQUIRE(direct.size() == shifted.size());
        for (std::size_t i = 0; i < direct.size(); ++i)
            CHECK(direct[i] == doctest::Approx(shifted[i]).epsilon(1e-9));
    }
}

TEST_CASE("arcsine averages stay under the envelope") {
    CHECK_THROWS_AS(arcsine_bound_check(std::nan("")), std::invalid_argument);

    ArcsineBound center = arcsine_bound_check(0.0);
    CHECK(center.bound == 1.0);
    CHECK(center.lhs == doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-4));

    // Closed form (2/pi)(sqrt(1-c^2) + c asin c) inside the support.
    ArcsineBound inner = arcsine_bound_check(0.3);
    const double expected =
        (2.0 / 3.14159265358979323846) *
        (std::sqrt(1.0 - 0.09) + 0.3 * std::asin(0.3));
    CHECK(inner.lhs == doctest::Approx(expected).epsilon(1e-4));
    CHECK(inner.bound == 1.0);

    // The integrand is affine beyond the endpoints: exact equality.
    ArcsineBound edge = arcsine_bound_check(1.0);
    CHECK(edge.lhs == doctest::Approx(1.0).epsilon(1e-12));
    ArcsineBound outer = arcsine_bound_check(-5.0);
    CHECK(outer.lhs == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(outer.bound == 5.0);

    NumericPolicy fine;
    fine.arcsine_nodes = 32768;
    ArcsineBound refined = arcsine_bound_check(0.0, fine);
    CHECK(std::abs(refined.lhs - 2.0 / 3.14159265358979323846) <= 1e-8);
}
