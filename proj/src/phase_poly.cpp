#include "leafcoh/phase_poly.hpp"

#include "leafcoh/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

namespace leafcoh {

namespace {

using IntPoly = std::vector<Integer>; // x^0 first

IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
    const std::size_t dd = den.size() - 1;
    IntPoly q(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        Integer c = num[i] / den.back();
        q[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j)
            num[i - dd + j] -= c * den[j];
    }
    return q;
}

const IntPoly& cyclotomic(long long q) {
    static std::map<long long, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end())
        return it->second;
    IntPoly p(static_cast<std::size_t>(q + 1), 0);
    p[0] = -1;
    p[static_cast<std::size_t>(q)] = 1;
    for (long long d = 1; d < q; ++d) {
        if (q % d != 0)
            continue;
        // Φ_d for the proper divisor d, computed without holding a reference across inserts
        IntPoly pd(static_cast<std::size_t>(d + 1), 0);
        pd[0] = -1;
        pd[static_cast<std::size_t>(d)] = 1;
        for (long long e = 1; e < d; ++e)
            if (d % e == 0)
                pd = poly_divide_exact(pd, cache.at(e));
        cache.emplace(d, pd);
        p = poly_divide_exact(p, pd);
    }
    return cache.emplace(q, p).first->second;
}

} // namespace

Complex unit_phase(const RealScalar& x, long long k) {
    double frac = x.fractional_part_of_multiple(k);
    return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

PhasePoly::PhasePoly(long long order, const GaussianRational& c) : order_(order) {
    if (!c.is_zero())
        coeffs_.emplace(0, c);
}

long long PhasePoly::order_of(const RealScalar& lambda) {
    if (!lambda.is_exact())
        throw ExactnessError("exact phase arithmetic needs an exact lambda");
    const auto& v = lambda.exact();
    if (!v.is_rational())
        return 0;
    if (v.c > std::numeric_limits<long long>::max() / 4)
        throw UnsupportedError("rational lambda denominator too large for cyclotomic reduction");
    return v.c.convert_to<long long>();
}

PhasePoly PhasePoly::monomial(long long order, long long exponent, const GaussianRational& c) {
    PhasePoly r(order);
    if (!c.is_zero())
        r.coeffs_.emplace(exponent, c);
    r.reduce();
    return r;
}

void PhasePoly::check(const PhasePoly& o) const {
    if (o.order_ != order_)
        throw InputError("phase polynomials over different phases");
}

void PhasePoly::reduce() {
    if (order_ == 0) {
        std::erase_if(coeffs_, [](const auto& kv) { return kv.second.is_zero(); });
        return;
    }
    const long long q = order_;
    const IntPoly& phi = cyclotomic(q);
    const std::size_t deg = phi.size() - 1;
    std::vector<GaussianRational> v(static_cast<std::size_t>(q));
    for (const auto& [e, c] : coeffs_) {
        long long r = ((e % q) + q) % q;
        v[static_cast<std::size_t>(r)] += c;
    }
    // remainder modulo the monic Φ_q
    for (std::size_t i = v.size(); i-- > deg;) {
        GaussianRational lead = v[i];
        if (lead.is_zero())
            continue;
        for (std::size_t j = 0; j <= deg; ++j)
            v[i - deg + j] -= lead * GaussianRational(Rational(phi[j]));
    }
    coeffs_.clear();
    for (std::size_t i = 0; i < std::min(deg, v.size()); ++i)
        if (!v[i].is_zero())
            coeffs_.emplace(static_cast<long long>(i), v[i]);
}

Complex PhasePoly::evaluate(const RealScalar& lambda) const {
    Complex s = 0.0;
    for (const auto& [e, c] : coeffs_)
        s += c.to_complex() * unit_phase(lambda, e);
    return s;
}

PhasePoly PhasePoly::shifted(long long e) const {
    PhasePoly r(order_);
    for (const auto& [k, c] : coeffs_)
        r.coeffs_.emplace(k + e, c);
    if (order_ != 0)
        r.reduce();
    return r;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
    check(o);
    for (const auto& [e, c] : o.coeffs_)
        coeffs_[e] += c;
    reduce();
    return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
    check(o);
    for (const auto& [e, c] : o.coeffs_)
        coeffs_[e] -= c;
    reduce();
    return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
    a.check(b);
    PhasePoly r(a.order_);
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_)
            r.coeffs_[ea + eb] += ca * cb;
    r.reduce();
    return r;
}

PhasePoly PhasePoly::operator-() const {
    PhasePoly r(order_);
    for (const auto& [e, c] : coeffs_)
        r.coeffs_.emplace(e, -c);
    return r;
}

std::string PhasePoly::to_string() const {
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << leafcoh::to_string(c.re) << (c.im < 0 ? "-" : "+") << leafcoh::to_string(c.im < 0 ? Rational(-c.im) : c.im)
           << "i)";
        if (e != 0)
            os << "z^" << e;
    }
    return os.str();
}

} // namespace leafcoh
