#include "leafcoh/leafwise.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace leafcoh;
using testing::Rng;

namespace {

LinearFoliation cat_foliation() { return LinearFoliation(1, 1, {{RealScalar::parse("(1-sqrt5)/2")}}); }

LinearFoliation zero_slope(int p, int q) {
    RealMatrix B(static_cast<std::size_t>(p), std::vector<RealScalar>(static_cast<std::size_t>(q), RealScalar::rational(Integer(0))));
    return LinearFoliation(p, q, B);
}

} // namespace

TEST_CASE("leafwise d of constants vanishes and d_F∘d_F = 0 on functions") {
    auto F = cat_foliation();
    auto c = LeafwiseForm<ExactScalar>::function(F, ExactTrigPoly::constant(2, ExactScalar(3)));
    CHECK(leafwise_d(c).is_zero());
    Rng rng(1);
    auto F2 = testing::random_exact_foliation(rng, 2, 1);
    auto g = LeafwiseForm<ExactScalar>::function(F2, testing::random_exact_poly(rng, 3, 3, 6));
    CHECK(leafwise_d(leafwise_d(g)).is_zero());
}

TEST_CASE("leafwise d of a single leaf mode with B = 0") {
    auto F = zero_slope(2, 1);
    auto g = LeafwiseForm<ExactScalar>::function(F, ExactTrigPoly::monomial({1, 0, 0}, ExactScalar(1)));
    auto dg = leafwise_d(g);
    CHECK(dg.component({0}) == ExactTrigPoly::monomial({1, 0, 0}, ScalarTraits<ExactScalar>::two_pi_i()));
    CHECK(dg.component({1}).is_zero());
}

TEST_CASE("top-degree leafwise d is the zero form") {
    Rng rng(2);
    auto F = testing::random_exact_foliation(rng, 2, 1);
    auto w = testing::random_leafwise(rng, F, 2);
    auto dw = leafwise_d(w);
    CHECK(dw.is_zero());
    CHECK(dw.degree() == 3);
}

TEST_CASE("d_F∘d_F = 0 exactly on random forms of every degree") {
    Rng rng(3);
    for (int t = 0; t < 6; ++t) {
        auto F = testing::random_exact_foliation(rng, testing::uniform_int(rng, 1, 3), testing::uniform_int(rng, 1, 2));
        for (int k = 0; k <= F.p(); ++k)
            CHECK(leafwise_d(leafwise_d(testing::random_leafwise(rng, F, k))).is_zero());
    }
}

TEST_CASE("restriction of coordinate 1-forms") {
    auto F = zero_slope(2, 1);
    AmbientForm<ExactScalar> ds1(3, 1);
    ds1.add({0}, ExactTrigPoly::constant(3, ExactScalar(1)));
    auto r = restrict_form(ds1, F);
    CHECK(r == iota_form(std::vector<ExactScalar>{ExactScalar(1), ExactScalar(0)}, F));

    auto beta = RealScalar::parse("(1+sqrt3)/4");
    LinearFoliation G(1, 1, {{beta}});
    AmbientForm<ExactScalar> dx(2, 1);
    dx.add({1}, ExactTrigPoly::constant(2, ExactScalar(1)));
    CHECK(restrict_form(dx, G).component({0}) == ExactTrigPoly::constant(2, beta.to_exact()));
}

TEST_CASE("restriction is a cochain map, exactly") {
    Rng rng(4);
    for (int t = 0; t < 8; ++t) {
        auto F = testing::random_exact_foliation(rng, testing::uniform_int(rng, 1, 3), testing::uniform_int(rng, 1, 2));
        for (int k = 0; k < F.ambient_dim(); ++k) {
            auto w = testing::random_ambient(rng, F.ambient_dim(), k);
            CHECK(restrict_form(exterior_derivative(w), F) == leafwise_d(restrict_form(w, F)));
        }
    }
}

TEST_CASE("iota forms are closed and agree with restricted ds forms") {
    Rng rng(5);
    auto F = testing::random_exact_foliation(rng, 3, 2);
    std::vector<ExactScalar> xi{ExactScalar(Rational(1, 3)), ExactScalar(0), ExactScalar(-2)};
    auto w = iota_form(xi, F);
    CHECK(leafwise_d(w).is_zero());
    AmbientForm<ExactScalar> a(5, 1);
    for (int i = 0; i < 3; ++i)
        a.add({i}, ExactTrigPoly::constant(5, xi[static_cast<std::size_t>(i)]));
    CHECK(restrict_form(a, F) == w);
    CHECK(iota_form(std::vector<ExactScalar>(3, ExactScalar(0)), F).is_zero());
}

TEST_CASE("solve_h1 on an iota form returns (xi, 0) exactly") {
    auto F = cat_foliation();
    auto res = solve_h1(iota_form(std::vector<Complex>{Complex(2.5)}, F));
    REQUIRE(std::holds_alternative<H1Solution<Complex>>(res));
    const auto& s = std::get<H1Solution<Complex>>(res);
    CHECK(s.a == std::vector<Complex>{Complex(2.5)});
    CHECK(s.g.is_zero());
    CHECK(s.residual == 0.0);

    auto ex = solve_h1(iota_form(std::vector<ExactScalar>{ExactScalar(Rational(7, 3))}, F));
    REQUIRE(std::holds_alternative<H1Solution<ExactScalar>>(ex));
    CHECK(std::get<H1Solution<ExactScalar>>(ex).a == std::vector<ExactScalar>{ExactScalar(Rational(7, 3))});
}

TEST_CASE("solve_h1 round-trips a xi + d_F g on the cat-map foliation") {
    auto F = cat_foliation();
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
        auto g0 = testing::random_poly(rng, 2, 6, 10, false, true);
        const Complex a(testing::uniform_real(rng, -3, 3), testing::uniform_real(rng, -3, 3));
        auto w = iota_form(std::vector<Complex>{a}, F) + leafwise_d(LeafwiseForm<Complex>::function(F, g0));
        auto res = solve_h1(w);
        REQUIRE(std::holds_alternative<H1Solution<Complex>>(res));
        const auto& s = std::get<H1Solution<Complex>>(res);
        CHECK(std::abs(s.a[0] - a) < 1e-15);
        CHECK((s.g - g0).max_abs() < 1e-12);
        CHECK(s.residual < 1e-12);
    }
}

TEST_CASE("solve_h1 on p = 2 recovers the class") {
    RealMatrix B{{RealScalar::parse("sqrt2")}, {RealScalar::parse("sqrt3")}};
    LinearFoliation F(2, 1, B);
    Rng rng(7);
    auto g0 = testing::random_poly(rng, 3, 3, 8, false, true);
    std::vector<Complex> a{1.5, -0.25};
    auto w = iota_form(a, F) + leafwise_d(LeafwiseForm<Complex>::function(F, g0));
    auto s = std::get<H1Solution<Complex>>(solve_h1(w));
    CHECK(std::abs(s.a[0] - a[0]) < 1e-14);
    CHECK(std::abs(s.a[1] - a[1]) < 1e-14);
    CHECK((s.g - g0).max_abs() < 1e-12);
}

TEST_CASE("solve_h1 errors: exact resonance and non-closed input") {
    LinearFoliation half(1, 1, {{RealScalar::parse("1/2")}});
    LeafwiseForm<Complex> w(half, 1);
    w.add({0}, TrigPoly::monomial({1, -2}, 1.0));
    CHECK_THROWS_AS(solve_h1(w), ObstructionError);

    auto F = zero_slope(2, 1);
    LeafwiseForm<Complex> v(F, 1);
    v.add({1}, TrigPoly::monomial({1, 0, 0}, 1.0));
    CHECK_THROWS_AS(solve_h1(v), NotClosedError);
}

TEST_CASE("solve_h1 never returns a solution above tolerance") {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        auto Fe = testing::random_exact_foliation(rng, 2, 1);
        auto g0 = testing::random_poly(rng, 3, 3, 6);
        auto w = leafwise_d(LeafwiseForm<Complex>::function(Fe, g0)) + iota_form(std::vector<Complex>{1.0, 2.0}, Fe);
        auto res = solve_h1(w, 1e-9);
        if (auto* s = std::get_if<H1Solution<Complex>>(&res))
            CHECK(s->residual <= 1e-9 * std::max(1.0, w.max_abs()));
    }
}

TEST_CASE("minimizability witness of the constant volume form") {
    RealMatrix B{{RealScalar::parse("sqrt2")}, {RealScalar::parse("sqrt3")}};
    LinearFoliation F(2, 1, B);
    auto res = minimizability_witness(leafwise_volume<ExactScalar>(F));
    REQUIRE(std::holds_alternative<MinimizabilityWitness<ExactScalar>>(res));
    const auto& w = std::get<MinimizabilityWitness<ExactScalar>>(res);
    CHECK(w.c == ExactScalar(1));
    CHECK(w.eta.is_zero());
    AmbientForm<ExactScalar> vol(3, 2);
    vol.add({0, 1}, ExactTrigPoly::constant(3, ExactScalar(1)));
    CHECK(w.omega == vol);
}

TEST_CASE("minimizability witness on the cat-map foliation is closed and restricts back") {
    auto F = cat_foliation();
    LeafwiseForm<ExactScalar> w0(F, 1);
    ExactTrigPoly f = ExactTrigPoly::constant(2, ExactScalar(1));
    f.add({1, 1}, ExactScalar(Rational(1, 2)));
    f.add({-1, -1}, ExactScalar(Rational(1, 2)));
    w0.add({0}, f);
    auto res = minimizability_witness(w0);
    REQUIRE(std::holds_alternative<MinimizabilityWitness<ExactScalar>>(res));
    const auto& w = std::get<MinimizabilityWitness<ExactScalar>>(res);
    CHECK(w.closed_exactly);
    CHECK(exterior_derivative(w.omega).is_zero());
    CHECK(w.restriction_residual < 1e-12);
    CHECK((restrict_form(w.omega, F) - w0).max_abs() < 1e-12);
}

TEST_CASE("minimizability witness on p = 2 random top forms") {
    RealMatrix B{{RealScalar::parse("sqrt2")}, {RealScalar::parse("(1+sqrt2)/3")}};
    LinearFoliation F(2, 1, B);
    Rng rng(9);
    for (int t = 0; t < 5; ++t) {
        auto w0 = testing::random_leafwise(rng, F, 2);
        auto w = std::get<MinimizabilityWitness<ExactScalar>>(minimizability_witness(w0));
        CHECK(w.closed_exactly);
        CHECK(w.restriction_residual < 1e-12);
        CHECK(leafwise_d(w.eta).component({0, 1}) + ExactTrigPoly::constant(3, w.c) == w0.component({0, 1}));
    }
}

TEST_CASE("minimizability witness on a resonant rational slope returns a diagnostic") {
    LinearFoliation half(1, 1, {{RealScalar::parse("1/2")}});
    LeafwiseForm<Complex> w0(half, 1);
    w0.add({0}, TrigPoly::constant(2, 1.0) + TrigPoly::monomial({1, -2}, 0.5));
    auto res = minimizability_witness(w0);
    REQUIRE(std::holds_alternative<SmallDivisorDiagnostic>(res));
    const auto& d = std::get<SmallDivisorDiagnostic>(res);
    REQUIRE(d.modes.size() == 1);
    CHECK(d.modes[0].mode == Frequency{1, -2});
    CHECK(d.modes[0].exact_zero);
}
