#include "leafcoh/liealg.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace leafcoh;
using testing::Rng;

namespace {

int binom(int n, int k) {
    int r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

LieAlgebraSpec heisenberg() {
    LieAlgebraSpec g;
    g.dim = 3;
    g.set_bracket(0, 1, 2, 1);
    return g;
}

LieAlgebraSpec ga_plus_ga() {
    LieAlgebraSpec g;
    g.dim = 4;
    g.set_bracket(0, 1, 1, 1);
    g.set_bracket(2, 3, 3, 1);
    return g;
}

using Matrix = std::vector<std::vector<Rational>>;

Matrix inverse(Matrix m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, Rational(0));
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (m[p][c] == 0)
            ++p;
        std::swap(m[p], m[c]);
        Rational inv = 1 / m[c][c];
        for (auto& v : m[c])
            v *= inv;
        for (std::size_t r = 0; r < n; ++r)
            if (r != c && m[r][c] != 0) {
                Rational f = m[r][c];
                for (std::size_t j = 0; j < 2 * n; ++j)
                    m[r][j] -= f * m[c][j];
            }
    }
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i].assign(m[i].begin() + static_cast<long>(n), m[i].end());
    return out;
}

/// Structure constants in the basis e'_a = Σ_b P_{ba} e_b.
LieAlgebraSpec change_basis(const LieAlgebraSpec& g, const Matrix& P, const Matrix& Pinv) {
    LieAlgebraSpec h;
    h.dim = g.dim;
    const int d = g.dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Rational s = 0;
                for (const auto& [abm, v] : g.c)
                    s += P[static_cast<std::size_t>(abm[0])][static_cast<std::size_t>(i)] *
                         P[static_cast<std::size_t>(abm[1])][static_cast<std::size_t>(j)] * v *
                         Pinv[static_cast<std::size_t>(k)][static_cast<std::size_t>(abm[2])];
                if (s != 0)
                    h.c[{i, j, k}] = s;
            }
    return h;
}

/// Coefficient change ω'^a = Σ_b (P^{-1})_{ab} ω^b.
LieValuedForm<ExactScalar> transform(const LieValuedForm<ExactScalar>& w, const Matrix& Pinv) {
    LieValuedForm<ExactScalar> out;
    for (std::size_t a = 0; a < w.size(); ++a) {
        LeafwiseForm<ExactScalar> f(w[a].foliation(), w[a].degree());
        for (std::size_t b = 0; b < w.size(); ++b)
            for (const auto& [idx, poly] : w[b].components())
                f.add(idx, ExactScalar(Pinv[a][b]) * poly);
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace

TEST_CASE("validate accepts standard algebras and reports the first violation") {
    CHECK(validate(LieAlgebraSpec::abelian(4)).ok);
    CHECK(validate(LieAlgebraSpec::affine_line()).ok);
    CHECK(validate(LieAlgebraSpec::sl2()).ok);
    CHECK(validate(heisenberg()).ok);

    LieAlgebraSpec bad;
    bad.dim = 2;
    bad.c[{0, 1, 0}] = 1;
    bad.c[{1, 0, 0}] = 1;
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation == "antisymmetry");
    CHECK(rep.where == std::array<int, 3>{0, 1, 0});

    // antisymmetric but not Jacobi: [e1,e2] = e3, [e2,e3] = e2, [e3,e1] = e3
    LieAlgebraSpec nj;
    nj.dim = 3;
    nj.set_bracket(0, 1, 2, 1);
    nj.set_bracket(1, 2, 1, 1);
    nj.set_bracket(2, 0, 2, 1);
    auto r2 = validate(nj);
    CHECK_FALSE(r2.ok);
    CHECK(r2.violation == "jacobi");
    CHECK_THROWS_AS(ce_cohomology(nj), InputError);
}

TEST_CASE("CE cohomology of abelian algebras is the exterior algebra") {
    for (int p = 0; p <= 4; ++p) {
        auto h = ce_cohomology(LieAlgebraSpec::abelian(p));
        REQUIRE(static_cast<int>(h.dims.size()) == p + 1);
        for (int k = 0; k <= p; ++k)
            CHECK(h.dims[static_cast<std::size_t>(k)] == binom(p, k));
    }
}

TEST_CASE("CE cohomology of ga, sl2, Heisenberg and ga + ga") {
    auto ga = ce_cohomology(LieAlgebraSpec::affine_line());
    CHECK(ga.dims == std::vector<int>{1, 1, 0});
    REQUIRE(ga.h1_basis.size() == 1);
    CHECK(ga.h1_basis[0] == std::vector<Rational>{1, 0}); // the class of Y^*
    CHECK(ce_cohomology(LieAlgebraSpec::sl2()).dims == std::vector<int>{1, 0, 0, 1});
    CHECK(ce_cohomology(heisenberg()).dims == std::vector<int>{1, 2, 2, 1});
    CHECK(ce_cohomology(ga_plus_ga()).dims == std::vector<int>{1, 2, 1, 0, 0});
}

TEST_CASE("CE differential squares to zero and the Euler characteristic vanishes") {
    for (const auto& g : {LieAlgebraSpec::abelian(3), LieAlgebraSpec::affine_line(), LieAlgebraSpec::sl2(), heisenberg(),
                          ga_plus_ga()}) {
        auto h = ce_cohomology(g);
        CHECK(h.d_squared_zero);
        int chi = 0;
        for (std::size_t k = 0; k < h.dims.size(); ++k)
            chi += (k % 2 ? -1 : 1) * h.dims[k];
        CHECK(chi == 0);
    }
}

TEST_CASE("ce_cohomology refuses large algebras") { CHECK_THROWS_AS(ce_cohomology(LieAlgebraSpec::abelian(9)), UnsupportedError); }

TEST_CASE("MC residual vanishes for canonical abelian forms and their gauge perturbations") {
    RealMatrix B{{RealScalar::parse("sqrt2")}, {RealScalar::parse("sqrt3")}};
    LinearFoliation F(2, 1, B);
    auto g = LieAlgebraSpec::abelian(2);
    LieValuedForm<ExactScalar> w0;
    for (int a = 0; a < 2; ++a) {
        std::vector<ExactScalar> xi(2, ExactScalar(0));
        xi[static_cast<std::size_t>(a)] = ExactScalar(1);
        w0.push_back(iota_form(xi, F));
    }
    CHECK(maurer_cartan_residual(w0, g).exactly_zero);

    Rng rng(1);
    auto w = w0;
    for (auto& c : w)
        c += leafwise_d(LeafwiseForm<ExactScalar>::function(F, testing::random_exact_poly(rng, 3, 2, 4)));
    auto r = maurer_cartan_residual(w, g);
    CHECK(r.exactly_zero);
    CHECK(r.max_abs == 0.0);
}

TEST_CASE("MC residual of a perturbed ga form is nonzero on the perturbing mode") {
    RealMatrix B(2, std::vector<RealScalar>{RealScalar::rational(Integer(0))});
    LinearFoliation F(2, 1, B);
    const ExactScalar eps(Rational(1, 10));
    LeafwiseForm<ExactScalar> wY(F, 1), wS(F, 1);
    wY.add({0}, ExactTrigPoly::constant(3, ExactScalar(1)));
    wS.add({1}, ExactTrigPoly::monomial({1, 0, 0}, eps));
    auto r = maurer_cartan_residual(LieValuedForm<ExactScalar>{wY, wS}, LieAlgebraSpec::affine_line());
    CHECK_FALSE(r.exactly_zero);
    CHECK(r.residual[0].is_zero());
    // X_1(ε e^{2πis₁}) + ε e^{2πis₁}[Y, S]_S = (2πi + 1) ε e^{2πis₁}
    auto expected = ExactTrigPoly::monomial({1, 0, 0}, (ScalarTraits<ExactScalar>::two_pi_i() + ExactScalar(1)) * eps);
    CHECK(r.residual[1].component({0, 1}) == expected);
}

TEST_CASE("MC residual is equivariant under rational basis changes") {
    Rng rng(2);
    RealMatrix B{{RealScalar::parse("(1+sqrt5)/2")}, {RealScalar::parse("1/3")}};
    LinearFoliation F(2, 1, B);
    for (const auto& g : {LieAlgebraSpec::affine_line(), LieAlgebraSpec::sl2(), heisenberg()}) {
        for (int t = 0; t < 3; ++t) {
            Matrix P;
            do {
                P.assign(static_cast<std::size_t>(g.dim), std::vector<Rational>(static_cast<std::size_t>(g.dim)));
                for (auto& row : P)
                    for (auto& v : row)
                        v = Rational(testing::uniform_int(rng, -3, 3), testing::uniform_int(rng, 1, 3));
            } while (rational_rank(P) < g.dim);
            auto Pinv = inverse(P);
            LieValuedForm<ExactScalar> w;
            for (int a = 0; a < g.dim; ++a)
                w.push_back(testing::random_leafwise(rng, F, 1, 1));
            auto r = maurer_cartan_residual(w, g);
            auto r2 = maurer_cartan_residual(transform(w, Pinv), change_basis(g, P, Pinv));
            auto expect = transform(r.residual, Pinv);
            for (int a = 0; a < g.dim; ++a)
                CHECK(r2.residual[static_cast<std::size_t>(a)] == expect[static_cast<std::size_t>(a)]);
        }
    }
}

TEST_CASE("MC residual checks dimensions") {
    LinearFoliation F(1, 1, {{RealScalar::parse("sqrt2")}});
    LieValuedForm<Complex> w{LeafwiseForm<Complex>(F, 1)};
    CHECK_THROWS_AS(maurer_cartan_residual(w, LieAlgebraSpec::affine_line()), DimensionError);
}
