#include "leafcoh/trig_poly.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace leafcoh;
using testing::Rng;

namespace {

Complex direct_sum(const TrigPoly& f, const std::vector<double>& x) {
    Complex s = 0;
    for (const auto& [k, c] : f.coeffs()) {
        long double ph = 0;
        for (std::size_t i = 0; i < k.size(); ++i)
            ph += k[i] * static_cast<long double>(x[i]);
        s += c * std::polar(1.0, static_cast<double>(2 * std::numbers::pi_v<long double> * ph));
    }
    return s;
}

double max_diff(const TrigPoly& a, const TrigPoly& b) { return (a - b).max_abs(); }

} // namespace

TEST_CASE("evaluate on constant and single-mode polynomials") {
    CHECK(evaluate(TrigPoly::constant(1, 3.0), std::vector<double>{0.37}) == Complex(3.0));
    TrigPoly c(1);
    c.set({1}, 1.0);
    c.set({-1}, 1.0);
    CHECK(std::abs(evaluate(c, std::vector<double>{0.0}) - 2.0) < 1e-15);
    auto e = TrigPoly::monomial({1, 0}, 1.0);
    CHECK(std::abs(evaluate(e, std::vector<double>{0.25, 0.0}) - Complex(0, 1)) < 1e-15);
    CHECK_THROWS_AS(evaluate(e, std::vector<double>{0.25}), DimensionError);
}

TEST_CASE("evaluate matches a long-double direct sum") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        auto f = testing::random_poly(rng, 3, 6, 12);
        std::vector<double> x{testing::uniform_real(rng, 0, 1), testing::uniform_real(rng, 0, 1),
                              testing::uniform_real(rng, 0, 1)};
        CHECK(std::abs(evaluate(f, x) - direct_sum(f, x)) < 1e-12);
    }
}

TEST_CASE("canonical form never stores zeros") {
    TrigPoly f(1);
    f.add({2}, 1.5);
    f.add({2}, -1.5);
    CHECK(f.is_zero());
    CHECK(f == TrigPoly(1));
}

TEST_CASE("grid transform of constants and a single mode") {
    std::vector<Complex> ones(8, Complex(2.5));
    CHECK(grid_transform(ones, 1, 8) == TrigPoly::constant(1, 2.5));
    std::vector<Complex> wave;
    for (int j = 0; j < 8; ++j)
        wave.push_back(std::polar(1.0, 2 * std::numbers::pi * j / 8));
    auto f = grid_transform(wave, 1, 8);
    CHECK(f.size() == 1);
    CHECK(std::abs(f.coeff({1}) - 1.0) < 1e-15);
}

TEST_CASE("grid round trip is lossless on band-limited data") {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        auto f = testing::random_poly(rng, 1, 5, 8);
        auto back = grid_transform(inverse_grid(f, 16), 1, 16);
        CHECK(max_diff(back, f) < 1e-12);
        auto g = testing::random_poly(rng, 2, 3, 8);
        CHECK(max_diff(grid_transform(inverse_grid(g, 9), 2, 9), g) < 1e-12);
    }
}

TEST_CASE("even grids reject Nyquist content; aliasing frequencies are refused") {
    std::vector<Complex> alt;
    for (int j = 0; j < 8; ++j)
        alt.push_back(j % 2 ? -1.0 : 1.0);
    CHECK_THROWS_AS(grid_transform(alt, 1, 8), InputError);
    CHECK_THROWS_AS(inverse_grid(TrigPoly::monomial({4}, 1.0), 8), InputError);
}

TEST_CASE("frame derivative on single modes and constants") {
    auto alpha = testing::golden().to_double();
    auto f = TrigPoly::monomial({1, 0}, 1.0);
    std::vector<double> v{alpha, 1.0};
    auto df = frame_derivative(f, std::span<const double>(v));
    CHECK(std::abs(df.coeff({1, 0}) - Complex(0, 2 * std::numbers::pi * alpha)) < 1e-15);
    CHECK(frame_derivative(TrigPoly::constant(2, 4.0), std::span<const double>(v)).is_zero());
}

TEST_CASE("frame derivative obeys Leibniz and commutes") {
    Rng rng(8);
    std::vector<double> v{0.3, -1.7}, w{2.1, 0.4};
    for (int t = 0; t < 10; ++t) {
        auto f = testing::random_poly(rng, 2, 4, 6), g = testing::random_poly(rng, 2, 4, 6);
        auto d = [&](const TrigPoly& h, const std::vector<double>& u) { return frame_derivative(h, std::span<const double>(u)); };
        CHECK(max_diff(d(f * g, v), f * d(g, v) + g * d(f, v)) < 1e-10);
        CHECK(max_diff(d(d(f, v), w), d(d(f, w), v)) < 1e-10);
    }
}

TEST_CASE("exact frame derivative satisfies Leibniz exactly") {
    Rng rng(9);
    std::vector<ExactScalar> v{ExactScalar::sqrt(2), ExactScalar(Rational(3, 4))};
    for (int t = 0; t < 5; ++t) {
        auto f = testing::random_exact_poly(rng, 2, 3, 4), g = testing::random_exact_poly(rng, 2, 3, 4);
        auto d = [&](const ExactTrigPoly& h) { return frame_derivative(h, std::span<const ExactScalar>(v)); };
        CHECK((d(f * g) - f * d(g) - g * d(f)).is_zero());
    }
}

TEST_CASE("is_real is preserved by arithmetic, real derivatives and the grid") {
    Rng rng(3);
    auto f = testing::random_poly(rng, 1, 5, 5, true), g = testing::random_poly(rng, 1, 5, 5, true);
    CHECK(f.is_real());
    CHECK((f + g).is_real());
    std::vector<double> v{1.25};
    CHECK(frame_derivative(f, std::span<const double>(v)).is_real());
    auto prod = f * g;
    // products of real polynomials are real up to rounding of conjugate pairs
    auto back = grid_transform(inverse_grid(prod, 33), 1, 33);
    for (const auto& [k, c] : back.coeffs())
        CHECK(std::abs(back.coeff({-k[0]}) - std::conj(c)) < 1e-12);
}

TEST_CASE("decay report examples") {
    auto e = decay_report(TrigPoly::monomial({1}, 1.0), std::vector<double>{3.0});
    CHECK(e[0].value == doctest::Approx(1.0));
    CHECK(e[0].k == Frequency{1});

    TrigPoly f(1);
    for (int k = 1; k <= 10; ++k)
        f.set({k}, std::ldexp(1.0, -k));
    auto r = decay_report(f, std::vector<double>{1.0});
    // k·2^{-k} is 1/2 at k = 1 and k = 2; the first is reported
    CHECK(r[0].value == doctest::Approx(0.5));
    CHECK(r[0].k == Frequency{1});

    auto scaled = decay_report(Complex(5.0) * f, std::vector<double>{0.0, 1.0, 2.0});
    auto base = decay_report(f, std::vector<double>{0.0, 1.0, 2.0});
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(scaled[i].value == doctest::Approx(5.0 * base[i].value));
    CHECK_THROWS_AS(decay_report(TrigPoly(1), std::vector<double>{1.0}), InputError);
}

TEST_CASE("grid max norm bounds point values") {
    Rng rng(21);
    auto f = testing::random_poly(rng, 1, 7, 6);
    const double m = grid_max_norm(f);
    for (int j = 0; j < 200; ++j)
        CHECK(std::abs(evaluate(f, std::vector<double>{j / 200.0})) <= m * 1.5 + 1e-12);
}
