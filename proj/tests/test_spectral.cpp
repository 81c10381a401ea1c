#include <cmath>
#include <complex>

#include "doctest.h"
#include "lame/geometry.hpp"
#include "lame/poly.hpp"
#include "lame/spectral.hpp"

using lame::Complex;
using lame::ComplexPolynomial;
using lame::LameInstance;
using lame::SpectralPair;

namespace {

const double kSqrt3 = std::sqrt(3.0);

LameInstance demo3(int n) {
    return LameInstance({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0, 1.0}, 2, n);
}

LameInstance legendre(int n) {
    return LameInstance({{-1.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0}, 2, n);
}

double coeff_distance(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return (a - b).max_coeff_norm();
}

// Independent oracle for three poles, order 2, degree <= 2: eliminate the
// free accessory coefficient, then the subleading eigenpoly coefficient;
// the survivors solve one univariate polynomial. No Newton iteration.
std::vector<SpectralPair> eliminate_p3(const LameInstance& inst) {
    REQUIRE(inst.num_poles() == 3);
    REQUIRE(inst.order() == 2);
    const double A = inst.residue_sum();
    const ComplexPolynomial& Q2 = inst.leading_poly();
    const ComplexPolynomial& Q1 = inst.subleading_poly();
    const double v1 = inst.accessory_leading();
    std::vector<SpectralPair> out;

    if (inst.degree() == 1) {
        // L = Q1 + (v1 z + v0)(z + s0); the constant equation becomes
        // -v1 s0^2 - Q1[1] s0 + Q1[0] = 0 after substituting v0.
        const double q11 = Q1.coeff(1).real(), q10 = Q1.coeff(0).real();
        const double a = -v1, b = -q11, c = q10;
        const double disc = b * b - 4.0 * a * c;
        REQUIRE(disc >= 0.0);
        for (double sgn : {-1.0, 1.0}) {
            const double s0 = (-b + sgn * std::sqrt(disc)) / (2.0 * a);
            const double v0 = -q11 - v1 * s0;
            SpectralPair pair;
            pair.eigenpoly = ComplexPolynomial({{s0, 0.0}, {1.0, 0.0}});
            pair.accessory = ComplexPolynomial({{v0, 0.0}, {v1, 0.0}});
            pair.residual = spectral_residual(inst, pair.accessory, pair.eigenpoly);
            if (pair.residual <= 1e-8) out.push_back(pair);
        }
        return out;
    }

    REQUIRE(inst.degree() == 2);
    const double q22 = Q2.coeff(2).real(), q21 = Q2.coeff(1).real(), q20 = Q2.coeff(0).real();
    const double q11 = Q1.coeff(1).real(), q10 = Q1.coeff(0).real();
    // Work over polynomials in the variable s1.
    const ComplexPolynomial s1({{0.0, 0.0}, {1.0, 0.0}});
    const auto C = [](double v) { return ComplexPolynomial::constant(Complex(v, 0.0)); };
    const ComplexPolynomial v0 = C(-2.0 * q22 - 2.0 * q11) - Complex(A + v1, 0.0) * s1;
    const ComplexPolynomial e1_rest = C(2.0 * q21 + 2.0 * q10) + Complex(q11, 0.0) * s1 + v0 * s1;
    const ComplexPolynomial s0 = Complex(-1.0 / v1, 0.0) * e1_rest;
    const ComplexPolynomial e0 = C(2.0 * q20) + Complex(q10, 0.0) * s1 + v0 * s0;

    for (Complex root : find_roots(e0).expanded()) {
        if (std::abs(root.imag()) > 1e-9) continue;
        const double s1v = root.real();
        const double s0v = s0(Complex(s1v, 0.0)).real();
        const double v0v = v0(Complex(s1v, 0.0)).real();
        SpectralPair pair;
        pair.eigenpoly = ComplexPolynomial({{s0v, 0.0}, {s1v, 0.0}, {1.0, 0.0}});
        pair.accessory = ComplexPolynomial({{v0v, 0.0}, {v1, 0.0}});
        pair.residual = spectral_residual(inst, pair.accessory, pair.eigenpoly);
        if (pair.residual <= 1e-8) out.push_back(pair);
    }
    return out;
}

bool matches_some(const std::vector<SpectralPair>& oracle, const SpectralPair& pair, double tol) {
    for (const SpectralPair& cand : oracle)
        if (coeff_distance(cand.eigenpoly, pair.eigenpoly) <= tol &&
            coeff_distance(cand.accessory, pair.accessory) <= tol * 10.0)
            return true;
    return false;
}

}  // namespace

TEST_CASE("instance validation and derived data") {
    CHECK_THROWS_AS(LameInstance({{0.0, 0.0}}, {1.0}, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(LameInstance({{0.0, 0.0}, {1.0, 0.0}}, {1.0, -1.0}, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(LameInstance({{0.0, 0.0}, {0.0, 0.0}}, {1.0, 1.0}, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(LameInstance({{0.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0}, 3, 1),
                    std::invalid_argument);

    const LameInstance inst = demo3(2);
    CHECK(inst.reduced_degree() == 1);
    CHECK(coeff_distance(inst.leading_poly(),
                         ComplexPolynomial({{0.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})) <
          1e-15);
    CHECK(coeff_distance(inst.subleading_poly(),
                         ComplexPolynomial({{-1.0, 0.0}, {0.0, 0.0}, {3.0, 0.0}})) < 1e-15);
    CHECK(inst.alpha() == doctest::Approx(4.0));
    CHECK(inst.accessory_leading() == doctest::Approx(-8.0));
    CHECK(legendre(2).accessory_leading() == doctest::Approx(-6.0));

    const LameInstance cubic({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0, 1.0}, 3, 3);
    CHECK(cubic.reduced_degree() == 0);
    CHECK(cubic.accessory_leading() == doctest::Approx(-24.0));
    CHECK_FALSE(cubic.is_stieltjes());
    CHECK(demo3(1).is_stieltjes());
}

TEST_CASE("eigenpair counts") {
    CHECK(lame::sigma_count(2, 3) == 3);
    CHECK(lame::sigma_count(3, 4) == 10);
    CHECK(lame::sigma_count(1, 3) == 2);
    CHECK(lame::sigma_count(7, 2) == 1);
    CHECK(lame::sigma_count(2, 4) == 6);
    CHECK_THROWS_AS(lame::sigma_count(500, 60), lame::Overflow);
}

TEST_CASE("occupancy generation") {
    const auto occs = lame::all_occupancies(2, 2);
    REQUIRE(occs.size() == 3);
    CHECK(occs[0] == std::vector<int>{0, 2});
    CHECK(occs[1] == std::vector<int>{1, 1});
    CHECK(occs[2] == std::vector<int>{2, 0});

    CHECK(lame::balanced_occupancy(32, 2) == std::vector<int>{16, 16});
    CHECK(lame::balanced_occupancy(1, 2) == std::vector<int>{1, 0});
    CHECK(lame::balanced_occupancy(5, 3) == std::vector<int>{2, 2, 1});
}

TEST_CASE("starting zeros per gap") {
    const auto s = lame::bethe_initial(demo3(1), {1, 0});
    REQUIRE(s.size() == 1);
    CHECK(s[0] == doctest::Approx(-0.5));

    const auto t = lame::bethe_initial(legendre(2), {2});
    REQUIRE(t.size() == 2);
    CHECK(t[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
    CHECK(t[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(lame::bethe_initial(demo3(2), {1, 0}), lame::BadOccupancy);
    CHECK_THROWS_AS(lame::bethe_initial(demo3(2), {3, -1}), lame::BadOccupancy);
    CHECK_THROWS_AS(lame::bethe_initial(demo3(2), {1, 1, 0}), lame::BadOccupancy);
}

TEST_CASE("interval Newton solves the classical pairs") {
    const SpectralPair leg2 = lame::solve_bethe(legendre(2), {2});
    CHECK(coeff_distance(leg2.eigenpoly,
                         ComplexPolynomial({{-1.0 / 3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})) <= 1e-12);
    CHECK(coeff_distance(leg2.accessory, ComplexPolynomial::constant(-6.0)) <= 1e-12 * 6.0);
    CHECK(leg2.residual <= 1e-12);

    const SpectralPair leg1 = lame::solve_bethe(legendre(1), {1});
    CHECK(coeff_distance(leg1.eigenpoly, ComplexPolynomial({{0.0, 0.0}, {1.0, 0.0}})) <= 1e-12);
    CHECK(coeff_distance(leg1.accessory, ComplexPolynomial::constant(-2.0)) <= 1e-12 * 2.0);

    const SpectralPair right = lame::solve_bethe(demo3(1), {0, 1});
    CHECK(coeff_distance(right.eigenpoly,
                         ComplexPolynomial({{-1.0 / kSqrt3, 0.0}, {1.0, 0.0}})) <= 1e-12);
    CHECK(coeff_distance(right.accessory, ComplexPolynomial({{-kSqrt3, 0.0}, {-3.0, 0.0}})) <=
          1e-12 * 3.0);
    REQUIRE(right.occupancy.has_value());
    CHECK(*right.occupancy == std::vector<int>{0, 1});
}

TEST_CASE("coefficient Newton from a nearby start") {
    const SpectralPair pair =
        lame::solve_newton_coeffs(legendre(2), {Complex(-0.3, 0.0), Complex(0.05, 0.0)});
    CHECK(coeff_distance(pair.eigenpoly,
                         ComplexPolynomial({{-1.0 / 3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})) <= 1e-10);
    CHECK(pair.residual <= 1e-12);
}

TEST_CASE("higher order multistart solves") {
    const LameInstance cubic({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0, 1.0}, 3, 3);
    const SpectralPair pair = lame::solve_multistart(cubic, 1);
    CHECK(pair.residual <= 1e-10);
    REQUIRE(pair.accessory.degree() == 0);
    CHECK(std::abs(pair.accessory.coeff(0) - Complex(-24.0, 0.0)) <= 1e-8 * 24.0);

    const LameInstance quartic(
        {{-1.0, 0.0}, {-1.0 / 3.0, 0.0}, {1.0 / 3.0, 0.0}, {1.0, 0.0}},
        {1.0, 1.0, 1.0, 1.0}, 3, 3);
    const SpectralPair q = lame::solve_multistart(quartic, 1);
    CHECK(q.residual <= 1e-10);
    REQUIRE(q.accessory.degree() == 1);
    CHECK(std::abs(q.accessory.leading() - Complex(-30.0, 0.0)) <= 1e-10 * 30.0);
}

TEST_CASE("accessory recovery flags non-solutions") {
    const SpectralPair bad =
        lame::recover_accessory(demo3(2), ComplexPolynomial({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}));
    CHECK(bad.residual > 0.1);

    // The same defect seen through plain division: remainder 2, numerator
    // max coefficient 6, relative remainder 2/7.
    const ComplexPolynomial numerator(
        {{2.0, 0.0}, {0.0, 0.0}, {-6.0, 0.0}});  // -(Q2 S'' + Q1 S') for S = z^2
    const auto dr = divide_with_remainder(
        numerator, ComplexPolynomial({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}));
    CHECK(dr.relative_remainder == doctest::Approx(2.0 / 7.0).epsilon(1e-12));

    const SpectralPair good = lame::recover_accessory(
        legendre(2), ComplexPolynomial({{-1.0 / 3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}));
    CHECK(good.residual <= 1e-14);
    CHECK(coeff_distance(good.accessory, ComplexPolynomial::constant(-6.0)) <= 1e-12);
}

TEST_CASE("enumeration in the interval regime") {
    const auto single = lame::enumerate_solutions(legendre(2));
    REQUIRE(single.size() == 1);

    const auto pairs = lame::enumerate_solutions(demo3(2));
    REQUIRE(pairs.size() == 3);
    CHECK(*pairs[0].occupancy == std::vector<int>{0, 2});
    CHECK(*pairs[1].occupancy == std::vector<int>{1, 1});
    CHECK(*pairs[2].occupancy == std::vector<int>{2, 0});

    const LameInstance wide({{-3.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}},
                            {1.0, 1.0, 1.0, 1.0}, 2, 2);
    const auto six = lame::enumerate_solutions(wide);
    CHECK(six.size() == 6);

    for (const auto& pr : six) {
        CHECK(pr.residual <= 1e-10);
        CHECK(std::abs(pr.accessory.leading().real() - wide.accessory_leading()) <=
              1e-10 * std::abs(wide.accessory_leading()));
        for (Complex z : find_roots(pr.eigenpoly).expanded())
            CHECK(lame::hull_distance(z, wide.poles()) <= 1e-8);
        for (Complex z : find_roots(pr.accessory).expanded())
            CHECK(lame::hull_distance(z, wide.poles()) <= 1e-8);
    }
}

TEST_CASE("occupancy recount matches the branch label") {
    const LameInstance inst = demo3(3);
    for (const auto& pr : lame::enumerate_solutions(inst)) {
        const auto zeros = find_roots(pr.eigenpoly).expanded();
        const auto poles = inst.sorted_real_poles();
        std::vector<int> counts(poles.size() - 1, 0);
        for (Complex z : zeros) {
            CHECK(std::abs(z.imag()) <= 1e-10);
            for (std::size_t g = 0; g + 1 < poles.size(); ++g)
                if (z.real() > poles[g] && z.real() < poles[g + 1]) counts[g] += 1;
        }
        CHECK(counts == *pr.occupancy);
    }
}

TEST_CASE("direct elimination oracle agrees with enumeration") {
    for (int n : {1, 2}) {
        const LameInstance symmetric = demo3(n);
        const auto oracle = eliminate_p3(symmetric);
        const auto pairs = lame::enumerate_solutions(symmetric);
        REQUIRE(oracle.size() == pairs.size());
        for (const auto& pr : pairs) CHECK(matches_some(oracle, pr, 1e-8));
    }

    const LameInstance skew({{-1.5, 0.0}, {0.2, 0.0}, {2.0, 0.0}}, {0.7, 1.3, 2.1}, 2, 2);
    const auto oracle = eliminate_p3(skew);
    const auto pairs = lame::enumerate_solutions(skew);
    REQUIRE(oracle.size() == pairs.size());
    for (const auto& pr : pairs) CHECK(matches_some(oracle, pr, 1e-8));
}

TEST_CASE("hausdorff distance") {
    using V = std::vector<Complex>;
    CHECK(lame::hausdorff_distance(V{{0.0, 0.0}}, V{{0.0, 0.0}}) == 0.0);
    CHECK(lame::hausdorff_distance(V{{0.0, 0.0}, {1.0, 0.0}}, V{{0.0, 0.0}}) ==
          doctest::Approx(1.0));
    CHECK(lame::hausdorff_distance(V{{0.0, 0.0}}, V{{0.0, 1.0}}) == doctest::Approx(1.0));
}
