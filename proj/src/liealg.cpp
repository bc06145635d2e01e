#include "leafcoh/liealg.hpp"

#include "leafcoh/errors.hpp"

#include <algorithm>
#include <bit>

namespace leafcoh {

namespace {

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k)
            continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void check_spec(const LieAlgebraSpec& g) {
    if (g.dim < 0)
        throw DimensionError("Lie algebra dimension must be >= 0");
    for (const auto& [ijk, v] : g.c)
        for (int t : ijk)
            if (t < 0 || t >= g.dim)
                throw DimensionError("structure constant index out of range");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty())
        return pivots;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& v : m[r])
            v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

Rational LieAlgebraSpec::constant(int i, int j, int k) const {
    auto it = c.find({i, j, k});
    return it == c.end() ? Rational(0) : it->second;
}

void LieAlgebraSpec::set_bracket(int i, int j, int k, const Rational& v) {
    if (i == j) {
        if (v != 0)
            throw InputError("[e_i, e_i] must vanish");
        return;
    }
    auto put = [&](int a, int b, const Rational& x) {
        if (x == 0)
            c.erase({a, b, k});
        else
            c[{a, b, k}] = x;
    };
    put(i, j, v);
    put(j, i, -v);
}

LieAlgebraSpec LieAlgebraSpec::abelian(int p) {
    LieAlgebraSpec g;
    g.dim = p;
    for (int i = 0; i < p; ++i)
        g.labels.push_back("e" + std::to_string(i + 1));
    return g;
}

LieAlgebraSpec LieAlgebraSpec::affine_line() {
    LieAlgebraSpec g;
    g.dim = 2;
    g.labels = {"Y", "S"};
    g.set_bracket(0, 1, 1, 1);
    return g;
}

LieAlgebraSpec LieAlgebraSpec::sl2() {
    LieAlgebraSpec g;
    g.dim = 3;
    g.labels = {"Y", "S", "U"};
    g.set_bracket(0, 1, 1, 1);
    g.set_bracket(0, 2, 2, -1);
    g.set_bracket(1, 2, 0, 2);
    return g;
}

ValidationReport validate(const LieAlgebraSpec& g) {
    check_spec(g);
    ValidationReport rep;
    const int d = g.dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                if (g.constant(i, j, k) != -g.constant(j, i, k)) {
                    rep.ok = false;
                    rep.violation = "antisymmetry";
                    rep.where = {i, j, k};
                    rep.message = "c_{ij}^k != -c_{ji}^k";
                    return rep;
                }
    // Σ_m c_{ij}^m c_{mk}^l + c_{jk}^m c_{mi}^l + c_{ki}^m c_{mj}^l = 0
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    Rational s = 0;
                    for (int m = 0; m < d; ++m)
                        s += g.constant(i, j, m) * g.constant(m, k, l) + g.constant(j, k, m) * g.constant(m, i, l) +
                             g.constant(k, i, m) * g.constant(m, j, l);
                    if (s != 0) {
                        rep.ok = false;
                        rep.violation = "jacobi";
                        rep.where = {i, j, k};
                        rep.message = "Jacobi identity fails in component " + std::to_string(l + 1);
                        return rep;
                    }
                }
    return rep;
}

std::vector<std::vector<Rational>> ce_differential(const LieAlgebraSpec& g, int k) {
    check_spec(g);
    const int d = g.dim;
    const auto src = k_subsets(d, k);
    const auto dst = k_subsets(d, k + 1);
    std::map<std::vector<int>, std::size_t> col_of;
    for (std::size_t i = 0; i < src.size(); ++i)
        col_of[src[i]] = i;
    std::vector<std::vector<Rational>> D(dst.size(), std::vector<Rational>(src.size(), Rational(0)));
    // (dξ)(x_0..x_k) = Σ_{a<b} (−1)^{a+b} ξ([x_a, x_b], x_0..x̂_a..x̂_b..x_k)
    for (std::size_t row = 0; row < dst.size(); ++row) {
        const auto& T = dst[row];
        for (int a = 0; a <= k; ++a)
            for (int b = a + 1; b <= k; ++b) {
                std::vector<int> rest;
                for (int t = 0; t <= k; ++t)
                    if (t != a && t != b)
                        rest.push_back(T[static_cast<std::size_t>(t)]);
                const int sab = (a + b) % 2 == 0 ? 1 : -1;
                for (int m = 0; m < d; ++m) {
                    Rational cm = g.constant(T[static_cast<std::size_t>(a)], T[static_cast<std::size_t>(b)], m);
                    if (cm == 0 || std::binary_search(rest.begin(), rest.end(), m))
                        continue;
                    // ξ(e_m, rest) = (−1)^{pos} ξ_{sorted}
                    std::vector<int> idx = rest;
                    auto pos = std::lower_bound(idx.begin(), idx.end(), m) - idx.begin();
                    idx.insert(idx.begin() + pos, m);
                    const int sign = pos % 2 == 0 ? 1 : -1;
                    D[row][col_of.at(idx)] += Rational(sab * sign) * cm;
                }
            }
    }
    return D;
}

int rational_rank(std::vector<std::vector<Rational>> m) { return static_cast<int>(rref(m).size()); }

CECohomology ce_cohomology(const LieAlgebraSpec& g) {
    if (g.dim > 8)
        throw UnsupportedError("ce_cohomology supports dim <= 8");
    auto rep = validate(g);
    if (!rep.ok)
        throw InputError("invalid Lie algebra: " + rep.violation + " violated at (" + std::to_string(rep.where[0] + 1) +
                         "," + std::to_string(rep.where[1] + 1) + "," + std::to_string(rep.where[2] + 1) + ")");
    const int d = g.dim;
    CECohomology out;
    std::vector<std::vector<std::vector<Rational>>> D;
    for (int k = 0; k <= d; ++k) {
        D.push_back(ce_differential(g, k));
        out.ranks.push_back(D.back().empty() || D.back().front().empty() ? 0 : rational_rank(D.back()));
    }
    for (int k = 0; k <= d; ++k) {
        int dimk = static_cast<int>(k_subsets(d, k).size());
        out.dims.push_back(dimk - out.ranks[static_cast<std::size_t>(k)] -
                           (k > 0 ? out.ranks[static_cast<std::size_t>(k - 1)] : 0));
    }
    for (int k = 0; k + 1 <= d; ++k) {
        const auto& A = D[static_cast<std::size_t>(k)];     // Λ^k → Λ^{k+1}
        const auto& B = D[static_cast<std::size_t>(k + 1)]; // Λ^{k+1} → Λ^{k+2}
        for (std::size_t i = 0; i < B.size() && out.d_squared_zero; ++i)
            for (std::size_t j = 0; j < (A.empty() ? 0 : A.front().size()); ++j) {
                Rational s = 0;
                for (std::size_t l = 0; l < A.size(); ++l)
                    s += B[i][l] * A[l][j];
                if (s != 0) {
                    out.d_squared_zero = false;
                    break;
                }
            }
    }
    if (d >= 1) {
        // ker d_1 (d_0 = 0, so H¹ = ker d_1)
        auto M = D[1];
        const std::size_t cols = static_cast<std::size_t>(d);
        std::vector<std::size_t> pivots = M.empty() ? std::vector<std::size_t>{} : rref(M);
        for (std::size_t free = 0; free < cols; ++free) {
            if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
                continue;
            std::vector<Rational> v(cols, Rational(0));
            v[free] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -M[r][free];
            out.h1_basis.push_back(std::move(v));
        }
    }
    return out;
}

template <class S>
MaurerCartanResidual<S> maurer_cartan_residual(const LieValuedForm<S>& w, const LieAlgebraSpec& g) {
    using T = ScalarTraits<S>;
    if (static_cast<int>(w.size()) != g.dim)
        throw DimensionError("maurer_cartan_residual: need one component form per basis vector");
    if (w.empty())
        throw DimensionError("maurer_cartan_residual: empty Lie algebra");
    const auto& F = w.front().foliation();
    for (const auto& c : w)
        if (c.degree() != 1 || !(c.foliation() == F))
            throw DimensionError("maurer_cartan_residual: components must be leafwise 1-forms on one foliation");
    MaurerCartanResidual<S> out;
    for (int a = 0; a < g.dim; ++a)
        out.residual.push_back(leafwise_d(w[static_cast<std::size_t>(a)]));
    for (int i = 0; i < F.p(); ++i)
        for (int j = i + 1; j < F.p(); ++j)
            for (const auto& [bca, val] : g.c) {
                const auto [b, c, a] = bca;
                auto wib = w[static_cast<std::size_t>(b)].component({i});
                auto wjc = w[static_cast<std::size_t>(c)].component({j});
                if (wib.is_zero() || wjc.is_zero())
                    continue;
                out.residual[static_cast<std::size_t>(a)].add({i, j}, T::from_rational(val) * (wib * wjc));
            }
    out.exactly_zero = true;
    for (const auto& r : out.residual) {
        out.max_abs = std::max(out.max_abs, r.max_abs());
        out.exactly_zero = out.exactly_zero && r.is_zero();
    }
    return out;
}

template MaurerCartanResidual<Complex> maurer_cartan_residual(const LieValuedForm<Complex>&, const LieAlgebraSpec&);
template MaurerCartanResidual<ExactScalar> maurer_cartan_residual(const LieValuedForm<ExactScalar>&,
                                                                  const LieAlgebraSpec&);

} // namespace leafcoh
