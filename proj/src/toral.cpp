#include "leafcoh/toral.hpp"

#include "leafcoh/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <numbers>

namespace leafcoh {

namespace {

using CLD = std::complex<long double>;

void check_square(const IntMatrix& A) {
    if (A.empty())
        throw DimensionError("matrix must be nonempty");
    for (const auto& row : A)
        if (row.size() != A.size())
            throw DimensionError("matrix must be square");
}

std::vector<std::vector<Integer>> to_integer(const IntMatrix& A) {
    std::vector<std::vector<Integer>> M;
    for (const auto& row : A)
        M.emplace_back(row.begin(), row.end());
    return M;
}

CLD horner(const std::vector<long double>& c, CLD z, CLD* deriv = nullptr) {
    CLD p = 0, dp = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    if (deriv)
        *deriv = dp;
    return p;
}

// Aberth–Ehrlich simultaneous iteration for a monic polynomial.
std::vector<CLD> polynomial_roots(const std::vector<long double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    long double bound = 0.0L;
    for (int i = 0; i < n; ++i)
        bound = std::max(bound, std::fabs(c[static_cast<std::size_t>(i)]));
    const long double R = std::min(1.0L + bound, 2.0L);
    std::vector<CLD> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] =
            std::polar(R, 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L);
    for (int it = 0; it < 2000; ++it) {
        long double worst = 0.0L;
        for (int k = 0; k < n; ++k) {
            auto& zk = z[static_cast<std::size_t>(k)];
            CLD d;
            CLD p = horner(c, zk, &d);
            if (p == CLD(0))
                continue;
            CLD ratio = p / d;
            CLD sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0L / (zk - z[static_cast<std::size_t>(j)]);
            CLD w = ratio / (1.0L - ratio * sum);
            zk -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(zk)));
        }
        if (worst < 8 * LDBL_EPSILON)
            break;
    }
    return z;
}

QuadraticNumber quad_div(const QuadraticNumber& x, const QuadraticNumber& y) {
    // (a + b√d)/c ÷ (e + f√d)/g = g(a + b√d)(e − f√d) / (c(e² − f²d))
    const Integer d = x.b != 0 ? x.d : y.d;
    QuadraticNumber r;
    r.a = y.c * (x.a * y.a - x.b * y.b * d);
    r.b = y.c * (x.b * y.a - x.a * y.b);
    r.c = x.c * (y.a * y.a - y.b * y.b * d);
    r.d = d;
    if (r.c == 0)
        throw DomainError("division by zero in quadratic field");
    if (r.b == 0)
        r.d = 1;
    r.canonicalize();
    return r;
}

QuadraticNumber quad_sub(const QuadraticNumber& x, const QuadraticNumber& y) {
    QuadraticNumber r;
    r.a = x.a * y.c - y.a * x.c;
    r.b = x.b * y.c - y.b * x.c;
    r.c = x.c * y.c;
    r.d = x.b != 0 ? x.d : y.d;
    if (r.b == 0)
        r.d = 1;
    r.canonicalize();
    return r;
}

QuadraticNumber quad_int(long long v) { return QuadraticNumber{v, 0, 1, 1}; }

std::vector<int> count_unit_products(const std::vector<std::complex<double>>& lam, double tol, double& min_gap) {
    const int p = static_cast<int>(lam.size());
    std::vector<int> d(static_cast<std::size_t>(p + 1), 0);
    min_gap = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
        std::complex<double> prod = 1.0;
        int k = 0;
        for (int i = 0; i < p; ++i)
            if (mask & (1u << i)) {
                prod *= lam[static_cast<std::size_t>(i)];
                ++k;
            }
        double gap = std::abs(prod - 1.0);
        if (k >= 1)
            min_gap = std::min(min_gap, gap);
        if (gap <= tol)
            ++d[static_cast<std::size_t>(k)];
    }
    return d;
}

std::vector<int> dims_from_kernels(const std::vector<int>& d) {
    // For an endomorphism of a finite-dimensional space, dim coker = dim ker.
    const std::size_t p = d.size() - 1;
    std::vector<int> dims(p + 2, 0);
    for (std::size_t k = 0; k <= p + 1; ++k) {
        int ck1 = k >= 1 ? d[k - 1] : 0;
        int dk = k <= p ? d[k] : 0;
        dims[k] = ck1 + dk;
    }
    return dims;
}

Integer poly_eval(const std::vector<Integer>& f, const Integer& x) {
    Integer v = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        v = v * x + f[i];
    return v;
}

std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            small.push_back(i);
            if (i * i != n)
                large.push_back(n / i);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Exact division of integer polynomials; true iff g | f over ℤ with g monic up to sign.
bool divides(const std::vector<Integer>& f, const std::vector<Integer>& g) {
    std::vector<Integer> r = f;
    const std::size_t dg = g.size() - 1;
    const Integer lead = g.back();
    for (std::size_t i = r.size(); i-- > dg;) {
        if (r[i] % lead != 0)
            return false;
        Integer q = r[i] / lead;
        for (std::size_t j = 0; j <= dg; ++j)
            r[i - dg + j] -= q * g[j];
    }
    for (std::size_t i = 0; i < dg; ++i)
        if (r[i] != 0)
            return false;
    return true;
}

// Interpolating polynomial through (x_j, y_j) by Newton divided differences,
// returned in the monomial basis when all coefficients are integers.
std::optional<std::vector<Integer>> interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
    const std::size_t m = xs.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t lvl = 1; lvl < m; ++lvl)
        for (std::size_t j = m - 1; j >= lvl; --j)
            dd[j] = (dd[j] - dd[j - 1]) / Rational(xs[j] - xs[j - lvl]);
    std::vector<Rational> poly(m, Rational(0));
    for (std::size_t j = m; j-- > 0;) {
        // poly = poly·(x − x_j) + dd[j]
        std::vector<Rational> next(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (i + 1 < m)
                next[i + 1] += poly[i];
            next[i] -= poly[i] * Rational(xs[j]);
        }
        next[0] += dd[j];
        poly = std::move(next);
    }
    std::vector<Integer> out;
    for (const auto& c : poly) {
        if (denominator(c) != 1)
            return std::nullopt;
        out.push_back(numerator(c));
    }
    return out;
}

} // namespace

std::vector<Integer> characteristic_polynomial(const IntMatrix& A) {
    check_square(A);
    const std::size_t n = A.size();
    const auto M0 = to_integer(A);
    std::vector<Integer> c(n + 1, 0);
    c[n] = 1;
    std::vector<std::vector<Integer>> M(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        M[i][i] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            std::vector<std::vector<Integer>> AM(n, std::vector<Integer>(n, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    if (M0[i][l] != 0)
                        for (std::size_t j = 0; j < n; ++j)
                            AM[i][j] += M0[i][l] * M[l][j];
            for (std::size_t i = 0; i < n; ++i)
                AM[i][i] += c[n - k + 1];
            M = std::move(AM);
        }
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                tr += M0[i][l] * M[l][i];
        c[n - k] = -tr / static_cast<long long>(k);
    }
    return c;
}

ToralAutomorphism certify_hyperbolic(const IntMatrix& A, double eps) {
    check_square(A);
    ToralAutomorphism T;
    T.n = static_cast<int>(A.size());
    T.matrix = A;
    T.eps = eps;
    T.char_poly = characteristic_polynomial(A);
    Integer det = T.char_poly[0];
    if (T.n % 2 == 1)
        det = -det;
    if (det != 1 && det != -1)
        throw NotAutomorphismError("|det A| = " + Integer(abs(det)).str() + ", not 1");
    T.det = det == 1 ? 1 : -1;

    std::vector<long double> c;
    for (const auto& v : T.char_poly)
        c.push_back(v.convert_to<long double>());
    auto roots = polynomial_roots(c);
    const std::size_t n = roots.size();
    for (std::size_t i = 0; i < n; ++i) {
        const CLD z = roots[i];
        // Horner rounding bound: 2n·u·Σ|c_k||z|^k
        long double mag = 0.0L, zp = 1.0L;
        for (const auto& ck : c) {
            mag += std::fabs(ck) * zp;
            zp *= std::abs(z);
        }
        const long double perr = 2.0L * static_cast<long double>(n + 1) * LDBL_EPSILON * mag;
        long double prod = 1.0L;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                prod *= std::abs(z - roots[j]);
        long double r = prod > 0 ? static_cast<long double>(n) * (std::abs(horner(c, z)) + perr) / prod
                                 : std::numeric_limits<long double>::infinity();
        CertifiedEigenvalue e;
        e.value = std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        // widen by the final rounding to double
        e.radius = static_cast<double>(r) + 4.0 * DBL_EPSILON * std::abs(e.value);
        e.modulus_lo = static_cast<double>(std::abs(z)) - e.radius;
        e.modulus_hi = static_cast<double>(std::abs(z)) + e.radius;
        e.stable = e.modulus_hi < 1.0 - eps;
        T.spectrum.push_back(e);
    }
    std::sort(T.spectrum.begin(), T.spectrum.end(), [](const auto& a, const auto& b) {
        double ma = std::abs(a.value), mb = std::abs(b.value);
        if (ma != mb)
            return ma < mb;
        if (a.value.real() != b.value.real())
            return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    for (std::size_t i = 0; i < T.spectrum.size(); ++i) {
        const auto& e = T.spectrum[i];
        if (!(e.modulus_hi < 1.0 - eps || e.modulus_lo > 1.0 + eps))
            throw NotHyperbolicError("eigenvalue " + std::to_string(e.value.real()) + (e.value.imag() < 0 ? "" : "+") +
                                     std::to_string(e.value.imag()) + "i has modulus within eps of 1 (certified range [" +
                                     std::to_string(e.modulus_lo) + ", " + std::to_string(e.modulus_hi) + "])");
        if (e.stable)
            T.stable_set.push_back(static_cast<int>(i));
    }
    return T;
}

StableSlope stable_slope_matrix(const ToralAutomorphism& T) {
    if (T.stable_set.empty() || static_cast<int>(T.stable_set.size()) == T.n)
        throw NotHyperbolicError("stable_slope_matrix needs a certified hyperbolic automorphism");
    const int n = T.n;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = static_cast<double>(T.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);

    // E^s = ker Π_{stable}(A − λI)
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    for (int idx : T.stable_set) {
        const auto lam = T.spectrum[static_cast<std::size_t>(idx)].value;
        P = P * (A.cast<std::complex<double>>() - lam * Eigen::MatrixXcd::Identity(n, n));
    }
    Eigen::MatrixXd Pr = P.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Pr, Eigen::ComputeFullV);
    const int p = static_cast<int>(T.stable_set.size());
    Eigen::MatrixXd E = svd.matrixV().rightCols(p);

    // greedy complete pivoting picks the leaf coordinates
    StableSlope out;
    out.p = p;
    out.q = n - p;
    Eigen::MatrixXd W = E;
    std::vector<bool> row_used(static_cast<std::size_t>(n), false), col_used(static_cast<std::size_t>(p), false);
    for (int step = 0; step < p; ++step) {
        int br = -1, bc = -1;
        double best = -1.0;
        for (int r = 0; r < n; ++r) {
            if (row_used[static_cast<std::size_t>(r)])
                continue;
            for (int c = 0; c < p; ++c) {
                if (col_used[static_cast<std::size_t>(c)])
                    continue;
                if (std::fabs(W(r, c)) > best) {
                    best = std::fabs(W(r, c));
                    br = r;
                    bc = c;
                }
            }
        }
        row_used[static_cast<std::size_t>(br)] = true;
        col_used[static_cast<std::size_t>(bc)] = true;
        for (int r = 0; r < n; ++r)
            if (!row_used[static_cast<std::size_t>(r)])
                W.row(r) -= (W(r, bc) / W(br, bc)) * W.row(br);
    }
    for (int r = 0; r < n; ++r)
        (row_used[static_cast<std::size_t>(r)] ? out.leaf_coords : out.transverse_coords).push_back(r);

    Eigen::MatrixXd Es(p, p), Ex(out.q, p);
    for (int a = 0; a < p; ++a)
        Es.row(a) = E.row(out.leaf_coords[static_cast<std::size_t>(a)]);
    for (int b = 0; b < out.q; ++b)
        Ex.row(b) = E.row(out.transverse_coords[static_cast<std::size_t>(b)]);
    Eigen::MatrixXd M = Ex * Es.inverse(); // x = M s on E^s
    out.B.assign(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(out.q)));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < out.q; ++j)
            out.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = M(j, i);

    // graph basis in original coordinates; A must preserve its span
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, p);
    for (int i = 0; i < p; ++i) {
        G(out.leaf_coords[static_cast<std::size_t>(i)], i) = 1.0;
        for (int j = 0; j < out.q; ++j)
            G(out.transverse_coords[static_cast<std::size_t>(j)], i) = M(j, i);
    }
    Eigen::MatrixXd Q = G.householderQr().householderQ() * Eigen::MatrixXd::Identity(n, p);
    Eigen::MatrixXd AG = A * G;
    out.invariance_residual = (AG - Q * (Q.transpose() * AG)).norm();

    if (n == 2) {
        // λ_s = (t ∓ √D)/2, eigenvector (a12, λ − a11) or (λ − a22, a21)
        const long long a11 = T.matrix[0][0], a12 = T.matrix[0][1], a21 = T.matrix[1][0], a22 = T.matrix[1][1];
        const long long t = a11 + a22;
        const Integer D = Integer(t) * t - 4 * Integer(T.det);
        Integer sq;
        Integer core = squarefree_part(D, sq);
        QuadraticNumber lam{Integer(t), t >= 0 ? -sq : sq, 2, core};
        lam.canonicalize();
        QuadraticNumber v0, v1;
        if (a12 != 0) {
            v0 = quad_int(a12);
            v1 = quad_sub(lam, quad_int(a11));
        } else {
            v0 = quad_sub(lam, quad_int(a22));
            v1 = quad_int(a21);
        }
        const bool s_is_0 = out.leaf_coords[0] == 0;
        QuadraticNumber b = s_is_0 ? quad_div(v1, v0) : quad_div(v0, v1);
        out.exact_B = RealMatrix{{b.b == 0 ? RealScalar::rational(Rational(b.a, b.c))
                                           : RealScalar::quadratic(b.a, b.b, b.c, b.d)}};
    }
    return out;
}

RealMatrix slope_as_real_matrix(const StableSlope& s) {
    if (s.exact_B)
        return *s.exact_B;
    RealMatrix B;
    for (const auto& row : s.B) {
        std::vector<RealScalar> r;
        for (double v : row)
            r.push_back(RealScalar::approximate(v));
        B.push_back(std::move(r));
    }
    return B;
}

std::vector<std::complex<double>> compound_eigenvalues(const std::vector<std::vector<double>>& M, int k) {
    const int n = static_cast<int>(M.size());
    if (k < 0 || k > n)
        throw DimensionError("compound order out of range");
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (std::popcount(mask) == k) {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i))
                    s.push_back(i);
            subsets.push_back(std::move(s));
        }
    const int N = static_cast<int>(subsets.size());
    Eigen::MatrixXd C(N, N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            Eigen::MatrixXd sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    sub(i, j) = M[static_cast<std::size_t>(subsets[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)])]
                                 [static_cast<std::size_t>(subsets[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)])];
            C(a, b) = k == 0 ? 1.0 : sub.determinant();
        }
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    std::vector<std::complex<double>> ev;
    for (int i = 0; i < N; ++i)
        ev.push_back(es.eigenvalues()(i));
    return ev;
}

CohomologyReport wang_from_eigenvalues(const std::vector<std::complex<double>>& stable, double tol) {
    if (stable.empty() || stable.size() > 20)
        throw DimensionError("wang: need 1..20 stable eigenvalues");
    CohomologyReport rep;
    rep.provenance = "wang";
    rep.kernel_dims = count_unit_products(stable, tol, rep.min_gap);
    rep.cokernel_dims = rep.kernel_dims;
    rep.dims = dims_from_kernels(rep.kernel_dims);
    for (std::size_t k = 1; k < rep.kernel_dims.size(); ++k)
        if (rep.kernel_dims[k] > 0)
            rep.valid_up_to_extension = true;
    rep.note = rep.valid_up_to_extension
                   ? "synthetic eigenvalues: unit products present, dims valid up to extension"
                   : "synthetic eigenvalues: no unit products";
    return rep;
}

CohomologyReport wang_cohomology(const ToralAutomorphism& T, double tol) {
    if (T.stable_set.empty())
        throw NotHyperbolicError("wang_cohomology needs a certified hyperbolic automorphism");
    std::vector<std::complex<double>> lam;
    for (int idx : T.stable_set)
        lam.push_back(T.spectrum[static_cast<std::size_t>(idx)].value);
    CohomologyReport rep;
    rep.provenance = "wang";
    rep.kernel_dims = count_unit_products(lam, tol, rep.min_gap);
    if (tol >= rep.min_gap)
        throw IllConditionedError("wang_cohomology: tol " + std::to_string(tol) +
                                  " does not separate the stable products from 1 (min gap " +
                                  std::to_string(rep.min_gap) + ")");
    rep.cokernel_dims = rep.kernel_dims;
    rep.dims = dims_from_kernels(rep.kernel_dims);
    rep.note = "H^0 = R with A* = Id assumes dense stable leaves (irreducible hyperbolic A); "
               "dims[k] = coker(k-1) + ker(k) from stable eigenvalue products";

    if (T.n <= 4) {
        // cross-check: spectra of Λ^k(A|E^s) from the minor matrix
        auto slope = stable_slope_matrix(T);
        const int n = T.n, p = slope.p;
        Eigen::MatrixXd A(n, n), G = Eigen::MatrixXd::Zero(n, p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                A(i, j) = static_cast<double>(T.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        for (int i = 0; i < p; ++i) {
            G(slope.leaf_coords[static_cast<std::size_t>(i)], i) = 1.0;
            for (int j = 0; j < slope.q; ++j)
                G(slope.transverse_coords[static_cast<std::size_t>(j)], i) =
                    slope.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        Eigen::MatrixXd As = G.completeOrthogonalDecomposition().pseudoInverse() * A * G;
        std::vector<std::vector<double>> Ms(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(p)));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                Ms[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = As(i, j);
        double worst = 0.0;
        for (int k = 1; k <= p; ++k) {
            auto ev = compound_eigenvalues(Ms, k);
            std::vector<std::complex<double>> prods;
            for (unsigned mask = 0; mask < (1u << p); ++mask) {
                if (std::popcount(mask) != k)
                    continue;
                std::complex<double> pr = 1.0;
                for (int i = 0; i < p; ++i)
                    if (mask & (1u << i))
                        pr *= lam[static_cast<std::size_t>(i)];
                prods.push_back(pr);
            }
            // greedy matching of the two multisets
            std::vector<bool> used(prods.size(), false);
            for (const auto& e : ev) {
                double best = std::numeric_limits<double>::infinity();
                std::size_t bi = 0;
                for (std::size_t i = 0; i < prods.size(); ++i)
                    if (!used[i] && std::abs(e - prods[i]) < best) {
                        best = std::abs(e - prods[i]);
                        bi = i;
                    }
                used[bi] = true;
                worst = std::max(worst, best);
            }
        }
        rep.compound_check = worst;
    }
    return rep;
}

std::vector<long long> kunneth_dims(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<long long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

bool polynomial_irreducible(const std::vector<Integer>& f) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1)
        throw InputError("irreducibility needs degree >= 1");
    if (n > 6)
        throw UnsupportedError("irreducibility search supports degree <= 6");
    if (f.back() != 1)
        throw InputError("irreducibility expects a monic polynomial");
    if (n == 1)
        return true;

    // evaluation points with small nonzero |f(x)|; a zero is a rational root
    std::vector<std::pair<Integer, Integer>> pts;
    for (long long x = -30; x <= 30; ++x) {
        Integer v = poly_eval(f, x);
        if (v == 0)
            return false;
        pts.emplace_back(abs(v), Integer(x));
    }
    std::sort(pts.begin(), pts.end());

    for (int e = 1; e <= n / 2; ++e) {
        std::vector<Integer> xs;
        std::vector<std::vector<Integer>> choices;
        for (int j = 0; j <= e; ++j) {
            xs.push_back(pts[static_cast<std::size_t>(j)].second);
            auto divs = positive_divisors(pts[static_cast<std::size_t>(j)].first);
            std::vector<Integer> signed_divs;
            for (const auto& d : divs) {
                signed_divs.push_back(d);
                if (j > 0) // g and −g give the same factor
                    signed_divs.push_back(-d);
            }
            choices.push_back(std::move(signed_divs));
        }
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
            std::vector<Integer> ys;
            for (std::size_t j = 0; j < choices.size(); ++j)
                ys.push_back(choices[j][pick[j]]);
            if (auto g = interpolate(xs, ys)) {
                auto& gv = *g;
                while (gv.size() > 1 && gv.back() == 0)
                    gv.pop_back();
                if (static_cast<int>(gv.size()) - 1 == e && (gv.back() == 1 || gv.back() == -1) && divides(f, gv))
                    return false;
            }
            std::size_t j = 0;
            while (j < pick.size() && ++pick[j] == choices[j].size()) {
                pick[j] = 0;
                ++j;
            }
            if (j == pick.size())
                break;
        }
    }
    return true;
}

bool char_poly_irreducible(const IntMatrix& A) {
    check_square(A);
    if (A.size() > 6)
        throw UnsupportedError("char_poly_irreducible supports n <= 6");
    return polynomial_irreducible(characteristic_polynomial(A));
}

} // namespace leafcoh
