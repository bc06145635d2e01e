#include "leafcoh/diophantine.hpp"
#include "leafcoh/errors.hpp"
#include "leafcoh/toral.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <bit>
#include <cmath>

using namespace leafcoh;

namespace {

const IntMatrix cat{{2, 1}, {1, 1}};
const IntMatrix cubic{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}; // companion of x³ − x − 1

// Eigen's eigensolver on the float matrix, then counts of unit stable-eigenvalue products.
std::vector<int> eigen_wang_oracle(const IntMatrix& A, double tol) {
    const int n = static_cast<int>(A.size());
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M(i, j) = static_cast<double>(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    std::vector<std::complex<double>> stable;
    for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()[i]) < 1.0)
            stable.push_back(es.eigenvalues()[i]);
    const int p = static_cast<int>(stable.size());
    std::vector<int> d(static_cast<std::size_t>(p + 1), 0);
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
        std::complex<double> prod = 1.0;
        for (int i = 0; i < p; ++i)
            if (mask & (1u << i))
                prod *= stable[static_cast<std::size_t>(i)];
        if (std::abs(prod - 1.0) <= tol)
            ++d[static_cast<std::size_t>(std::popcount(mask))];
    }
    std::vector<int> dims(static_cast<std::size_t>(p + 2), 0);
    for (int k = 0; k <= p + 1; ++k)
        dims[static_cast<std::size_t>(k)] = (k > 0 ? d[static_cast<std::size_t>(k - 1)] : 0) + (k <= p ? d[static_cast<std::size_t>(k)] : 0);
    return dims;
}

std::vector<long long> binomials(int n) {
    std::vector<long long> b(static_cast<std::size_t>(n + 1), 1);
    for (int k = 1; k <= n; ++k)
        b[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
    return b;
}

} // namespace

TEST_CASE("characteristic polynomials") {
    CHECK(characteristic_polynomial(cat) == std::vector<Integer>{1, -3, 1});
    CHECK(characteristic_polynomial(cubic) == std::vector<Integer>{-1, -1, 0, 1});
}

TEST_CASE("certify the cat map") {
    auto T = certify_hyperbolic(cat);
    REQUIRE(T.spectrum.size() == 2);
    const double s5 = std::sqrt(5.0);
    CHECK(T.spectrum[0].value.real() == doctest::Approx((3 - s5) / 2).epsilon(1e-14));
    CHECK(T.spectrum[1].value.real() == doctest::Approx((3 + s5) / 2).epsilon(1e-14));
    CHECK(T.stable_set == std::vector<int>{0});
    CHECK(T.spectrum[0].modulus_hi < 1.0);
    CHECK(T.spectrum[1].modulus_lo > 1.0);
}

TEST_CASE("certify the cubic companion") {
    auto T = certify_hyperbolic(cubic);
    CHECK(T.stable_set.size() == 2);
    CHECK(std::abs(T.spectrum[0].value) == doctest::Approx(0.8689).epsilon(1e-4));
    CHECK(std::abs(T.spectrum[1].value) == doctest::Approx(0.8689).epsilon(1e-4));
    CHECK(T.spectrum[2].value.real() == doctest::Approx(1.3247).epsilon(1e-4));
    for (const auto& e : T.spectrum)
        CHECK(e.modulus_lo <= std::abs(e.value));
}

TEST_CASE("non-hyperbolic and non-automorphism inputs are refused") {
    CHECK_THROWS_AS(certify_hyperbolic({{0, -1}, {1, 0}}), NotHyperbolicError);
    CHECK_THROWS_AS(certify_hyperbolic({{1, 1}, {0, 1}}), NotHyperbolicError);
    CHECK_THROWS_AS(certify_hyperbolic({{2, 0}, {0, 2}}), NotAutomorphismError);
    CHECK_THROWS_AS(certify_hyperbolic({{1, 2, 3}, {4, 5, 6}}), DimensionError);
}

TEST_CASE("stable slope of the cat map is (1 - sqrt5)/2") {
    auto s = stable_slope_matrix(certify_hyperbolic(cat));
    CHECK(s.p == 1);
    CHECK(s.q == 1);
    CHECK(s.B[0][0] == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-14));
    REQUIRE(s.exact_B.has_value());
    CHECK((*s.exact_B)[0][0] == RealScalar::parse("(1-sqrt5)/2"));
    CHECK(s.invariance_residual < 1e-10);
}

TEST_CASE("stable slopes of A and its inverse split complementarily") {
    IntMatrix inv{{1, -1}, {-1, 2}};
    auto s = stable_slope_matrix(certify_hyperbolic(cat));
    auto u = stable_slope_matrix(certify_hyperbolic(inv));
    // directions (1, b) on the graph over the pivot coordinate
    auto dir = [](const StableSlope& t) {
        Eigen::Vector2d v;
        v[t.leaf_coords[0]] = 1.0;
        v[t.transverse_coords[0]] = t.B[0][0];
        return v.normalized();
    };
    CHECK(std::abs(dir(s).dot(dir(u))) < 1e-12); // symmetric matrix: orthogonal eigenvectors
    CHECK(u.invariance_residual < 1e-10);
}

TEST_CASE("stable slope of the cubic companion is invariant and Diophantine") {
    auto s = stable_slope_matrix(certify_hyperbolic(cubic));
    CHECK(s.p == 2);
    CHECK(s.q == 1);
    CHECK(s.invariance_residual < 1e-10);
    auto m = matrix_margin(slope_as_real_matrix(s), 2.0, 200);
    CHECK(m.margin > 0.0);
}

TEST_CASE("wang dims on certified inputs match the eigenvalue-product oracle") {
    auto r2 = wang_cohomology(certify_hyperbolic(cat));
    CHECK(r2.dims == std::vector<int>{1, 1, 0});
    CHECK(r2.dims == eigen_wang_oracle(cat, 1e-8));
    CHECK(r2.provenance == "wang");
    auto r3 = wang_cohomology(certify_hyperbolic(cubic));
    CHECK(r3.dims == std::vector<int>{1, 1, 0, 0});
    CHECK(r3.dims == eigen_wang_oracle(cubic, 1e-8));
    CHECK(r3.min_gap == doctest::Approx(1 - 0.7549).epsilon(1e-3));
    IntMatrix four{{0, 0, 0, -1}, {1, 0, 0, 7}, {0, 1, 0, -13}, {0, 0, 1, 7}}; // x⁴ − 7x³ + 13x² − 7x + 1
    auto r4 = wang_cohomology(certify_hyperbolic(four));
    CHECK(r4.dims == eigen_wang_oracle(four, 1e-8));
    CHECK(r4.dims[0] == 1);
    CHECK(r4.dims[1] == 1);
    REQUIRE(r4.compound_check.has_value());
    CHECK(*r4.compound_check < 1e-9);
}

TEST_CASE("wang refuses a tolerance above the spectral gap") {
    CHECK_THROWS_AS(wang_cohomology(certify_hyperbolic(cat), 0.9), IllConditionedError);
}

TEST_CASE("synthetic unit product is flagged as valid up to extension") {
    auto r = wang_from_eigenvalues({std::polar(1.0, 0.3), std::polar(1.0, -0.3)});
    CHECK(r.valid_up_to_extension);
    CHECK(r.kernel_dims[2] == 1);
    CHECK(r.dims == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("compound eigenvalues are the k-fold products") {
    std::vector<std::vector<double>> M{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    Eigen::Matrix3d E;
    E << 2, 1, 0, 1, 3, 1, 0, 1, 4;
    auto ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(E).eigenvalues();
    auto c2 = compound_eigenvalues(M, 2);
    std::vector<double> got, want{ev[0] * ev[1], ev[0] * ev[2], ev[1] * ev[2]};
    for (const auto& z : c2)
        got.push_back(z.real());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("kunneth convolution") {
    CHECK(kunneth_dims({1, 1, 0}, {1}) == std::vector<long long>{1, 1, 0});
    CHECK(kunneth_dims({1, 1, 0}, {1, 1, 0}) == std::vector<long long>{1, 2, 1, 0, 0});
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q)
            CHECK(kunneth_dims(binomials(p), binomials(q)) == binomials(p + q));
    std::vector<long long> a{1, 2, 0, 3}, b{2, 1}, c{1, 0, 5};
    CHECK(kunneth_dims(a, b) == kunneth_dims(b, a));
    CHECK(kunneth_dims(kunneth_dims(a, b), c) == kunneth_dims(a, kunneth_dims(b, c)));
}

TEST_CASE("irreducibility of characteristic polynomials") {
    CHECK(char_poly_irreducible(cat));
    CHECK_FALSE(char_poly_irreducible({{1, 1}, {0, 1}}));
    CHECK(char_poly_irreducible(cubic));
    // (x² − 3x + 1)(x² − x − 1) splits into quadratics with no rational roots
    CHECK_FALSE(polynomial_irreducible({-1, 2, 3, -4, 1}));
    CHECK(polynomial_irreducible({-1, -1, 0, 0, 1}));
    CHECK(char_poly_irreducible({{0, 0, 0, -1}, {1, 0, 0, 7}, {0, 1, 0, -13}, {0, 0, 1, 7}}));
}
