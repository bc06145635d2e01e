#include "leafcoh/diophantine.hpp"

#include "leafcoh/errors.hpp"

#include <cmath>
#include <map>

namespace leafcoh {

namespace {

void push_convergent(ContinuedFraction& cf, const Integer& a) {
    cf.quotients.push_back(a);
    auto n = cf.convergents.size();
    Integer pm1 = n >= 1 ? cf.convergents[n - 1].first : Integer(1);
    Integer qm1 = n >= 1 ? cf.convergents[n - 1].second : Integer(0);
    Integer pm2 = n >= 2 ? cf.convergents[n - 2].first : (n == 1 ? Integer(1) : Integer(0));
    Integer qm2 = n >= 2 ? cf.convergents[n - 2].second : (n == 1 ? Integer(0) : Integer(1));
    cf.convergents.emplace_back(a * pm1 + pm2, a * qm1 + qm2);
}

void check_dims(const RealMatrix& B) {
    if (B.empty() || B.front().empty())
        throw DimensionError("slope matrix must have p >= 1 rows and q >= 1 columns");
    for (const auto& row : B)
        if (row.size() != B.front().size())
            throw DimensionError("slope matrix rows have unequal length");
}

double row_distance(const std::vector<RealScalar>& row, const std::vector<long long>& k, bool& exact) {
    bool all_exact = true;
    for (const auto& b : row)
        all_exact = all_exact && b.is_exact();
    if (all_exact) {
        std::vector<QuadraticNumber> terms;
        terms.reserve(row.size());
        for (const auto& b : row)
            terms.push_back(b.exact());
        QuadraticNumber sum;
        if (combine_quadratic(terms, k, sum))
            return sum.distance_to_integer();
        // Mixed radicands: no single quadratic form; fall back to long double.
    }
    exact = false;
    long double v = 0.0L;
    for (std::size_t j = 0; j < row.size(); ++j)
        v += static_cast<long double>(row[j].to_double()) * k[j];
    return static_cast<double>(std::fabs(v - std::nearbyint(v)));
}

// Enumerates k ∈ ℤ^q, 0 < |k|² ≤ K², first nonzero coordinate positive,
// in lexicographic order.
template <class Visit>
void enumerate_half_ball(std::size_t q, long long K, Visit&& visit) {
    std::vector<long long> k(q, 0);
    const long long K2 = K * K;
    auto rec = [&](auto&& self, std::size_t j, long long used, bool leading) -> void {
        if (j == q) {
            if (!leading)
                visit(k, used);
            return;
        }
        long long rmax = static_cast<long long>(std::floor(std::sqrt(static_cast<long double>(K2 - used))));
        while (rmax * rmax > K2 - used)
            --rmax;
        while ((rmax + 1) * (rmax + 1) <= K2 - used)
            ++rmax;
        long long lo = leading ? 0 : -rmax;
        for (long long v = lo; v <= rmax; ++v) {
            k[j] = v;
            self(self, j + 1, used + v * v, leading && v == 0);
        }
        k[j] = 0;
    };
    rec(rec, 0, 0, true);
}

ExponentFit fit_records(std::vector<RecordMinimum> records, std::optional<std::vector<long long>> resonant) {
    ExponentFit fit;
    fit.records = std::move(records);
    if (resonant) {
        fit.resonant = true;
        fit.resonant_k = *resonant;
        return fit;
    }
    if (fit.records.size() < 2)
        throw InsufficientDataError("exponent_fit: fewer than 2 record minima");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit.records.size());
    for (const auto& r : fit.records) {
        double x = std::log(r.norm_k), y = std::log(r.distance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw InsufficientDataError("exponent_fit: degenerate record abscissae");
    fit.rho_hat = -(n * sxy - sx * sy) / denom;
    return fit;
}

} // namespace

ContinuedFraction continued_fraction(const RealScalar& x, std::size_t n) {
    if (n == 0)
        throw InputError("continued_fraction: empty request (n = 0)");
    if (!x.is_exact())
        throw ExactnessError("continued_fraction needs an exact scalar, not a float");
    const QuadraticNumber& v = x.exact();
    ContinuedFraction cf;

    if (v.is_rational()) {
        Integer num = v.a, den = v.c;
        while (cf.quotients.size() < n) {
            Integer a = floor_div(num, den);
            push_convergent(cf, a);
            Integer r = num - a * den;
            if (r == 0) {
                cf.terminated = true;
                break;
            }
            num = den;
            den = r;
        }
        return cf;
    }

    // x = (P + √D)/Q with Q | D − P²
    Integer P = v.a, Q = v.c, D = v.b * v.b * v.d;
    if (v.b < 0) {
        P = -P;
        Q = -Q;
    }
    if ((D - P * P) % Q != 0) {
        Integer aq = abs(Q);
        P *= aq;
        D *= aq * aq;
        Q *= aq;
    }
    const Integer root = isqrt(D);
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    while (cf.quotients.size() < n) {
        if (!cf.period) {
            auto [it, fresh] = seen.emplace(std::make_pair(P, Q), cf.quotients.size());
            if (!fresh)
                cf.period = std::make_pair(it->second, cf.quotients.size());
        }
        // floor((P + √D)/Q): √D irrational, so floor((P + floor√D)/Q) for Q > 0
        // and floor((P + floor√D + 1)/Q) handled via the negated form for Q < 0.
        Integer a = Q > 0 ? floor_div(P + root, Q) : floor_div(-P - root - 1, -Q);
        push_convergent(cf, a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    return cf;
}

DiophantineCertificate scalar_margin(const RealScalar& x, double rho, long long K) {
    if (K < 1)
        throw InputError("scalar_margin: K must be >= 1");
    if (!(rho > 0.0))
        throw InputError("scalar_margin: rho must be > 0");
    return matrix_margin(RealMatrix{{x}}, rho, K);
}

double torus_distance(const RealMatrix& B, const std::vector<long long>& k, bool* exact) {
    check_dims(B);
    if (k.size() != B.front().size())
        throw DimensionError("torus_distance: k has the wrong length");
    bool ex = true;
    if (B.size() == 1) {
        double d = row_distance(B.front(), k, ex);
        if (exact)
            *exact = ex;
        return d;
    }
    double s = 0.0;
    for (const auto& row : B) {
        double d = row_distance(row, k, ex);
        s += d * d;
    }
    if (exact)
        *exact = ex;
    return std::sqrt(s);
}

DiophantineCertificate matrix_margin(const RealMatrix& B, double rho, long long K) {
    check_dims(B);
    if (K < 1)
        throw InputError("matrix_margin: K must be >= 1");
    if (!(rho > 0.0))
        throw InputError("matrix_margin: rho must be > 0");
    DiophantineCertificate cert;
    cert.rho = rho;
    cert.search_radius = K;
    cert.margin = std::numeric_limits<double>::infinity();
    bool all_exact = true;
    enumerate_half_ball(B.front().size(), K, [&](const std::vector<long long>& k, long long norm2) {
        bool ex = true;
        double dist = torus_distance(B, k, &ex);
        all_exact = all_exact && ex;
        double norm = k.size() == 1 ? static_cast<double>(std::llabs(k[0]))
                                    : std::sqrt(static_cast<double>(norm2));
        double value = dist * std::pow(norm, rho);
        if (value < cert.margin) {
            cert.margin = value;
            cert.witness_k = k;
        }
    });
    cert.exact = all_exact;
    return cert;
}

ExponentFit exponent_fit(const RealScalar& x, long long K) {
    if (K < 10)
        throw InputError("exponent_fit: K must be >= 10");
    std::vector<RecordMinimum> records;
    double best = std::numeric_limits<double>::infinity();
    for (long long k = 1; k <= K; ++k) {
        bool exact_zero = x.is_exact() ? x.multiple_is_integer(k) : false;
        double d = exact_zero ? 0.0 : x.distance_of_multiple(k);
        if (d == 0.0)
            return fit_records(std::move(records), std::vector<long long>{k});
        if (d < best) {
            best = d;
            records.push_back({{k}, static_cast<double>(k), d});
        }
    }
    return fit_records(std::move(records), std::nullopt);
}

ExponentFit exponent_fit(const RealMatrix& B, long long K) {
    check_dims(B);
    if (K < 10)
        throw InputError("exponent_fit: K must be >= 10");
    // visit lattice points in order of increasing |k| so records are meaningful
    std::vector<std::pair<long long, std::vector<long long>>> pts;
    enumerate_half_ball(B.front().size(), K,
                        [&](const std::vector<long long>& k, long long n2) { pts.emplace_back(n2, k); });
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<RecordMinimum> records;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [n2, k] : pts) {
        double d = torus_distance(B, k);
        if (d == 0.0)
            return fit_records(std::move(records), k);
        if (d < best) {
            best = d;
            records.push_back({k, std::sqrt(static_cast<double>(n2)), d});
        }
    }
    return fit_records(std::move(records), std::nullopt);
}

} // namespace leafcoh
