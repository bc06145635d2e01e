#include "leafcoh/exact.hpp"

#include "leafcoh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace leafcoh {

Integer isqrt(const Integer& n) {
    if (n < 0)
        throw InputError("isqrt of a negative integer");
    if (n < 2)
        return n;
    Integer r = boost::multiprecision::sqrt(n);
    // boost's integer sqrt is exact floor, but keep the invariant explicit.
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0)
        throw InputError("division by zero");
    Integer q = a / b;
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

Integer squarefree_part(const Integer& n, Integer& square) {
    if (n <= 0)
        throw InputError("squarefree_part needs a positive integer");
    Integer rest = n;
    Integer core = 1;
    square = 1;
    for (Integer p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int j = 0; j + 1 < e; j += 2)
            square *= p;
        if (e % 2 == 1)
            core *= p;
    }
    core *= rest;
    return core;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x))
        throw InputError("non-finite value has no rational form");
    if (x == 0.0)
        return 0;
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, 0.5 <= |m| < 1
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r{Integer(mant)};
    if (exp > 0)
        r *= Rational(Integer(1) << exp);
    else if (exp < 0)
        r /= Rational(Integer(1) << (-exp));
    return r;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << "/" << denominator(r);
    return os.str();
}

namespace {

// boost reads a leading 0 as an octal prefix; decimal input only here.
Integer parse_decimal_integer(std::string s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InputError("bad integer literal");
    auto nz = s.find_first_not_of('0');
    Integer v = nz == std::string::npos ? Integer(0) : Integer(s.substr(nz));
    return neg ? Integer(-v) : v;
}

} // namespace

Integer parse_integer(const std::string& text) {
    try {
        return parse_decimal_integer(text);
    } catch (const InputError&) {
        throw InputError("cannot parse integer '" + text + "'");
    }
}

Rational parse_rational(const std::string& text) {
    auto s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            Integer den = parse_decimal_integer(s.substr(slash + 1));
            if (den == 0)
                throw InputError("zero denominator");
            return Rational(parse_decimal_integer(s.substr(0, slash)), den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos)
            return Rational(parse_decimal_integer(s));
        std::string frac = s.substr(dot + 1);
        std::string whole = s.substr(0, dot);
        if (whole == "-" || whole == "+" || whole.empty())
            whole += "0";
        Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Integer num = parse_decimal_integer(whole + frac);
        return Rational(num, den);
    } catch (const InputError&) {
        throw InputError("cannot parse rational '" + text + "'");
    }
}

Complex GaussianRational::to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
}

ExactScalar::ExactScalar(const Rational& q) {
    if (q != 0)
        terms_.emplace(Monomial{}, q);
}

ExactScalar ExactScalar::imaginary_unit() {
    ExactScalar s;
    s.terms_.emplace(Monomial{0, true, {}}, Rational(1));
    return s;
}

ExactScalar ExactScalar::two_pi() {
    ExactScalar s;
    s.terms_.emplace(Monomial{1, false, {}}, Rational(1));
    return s;
}

ExactScalar ExactScalar::sqrt(const Integer& n) {
    if (n < 0)
        throw InputError("ExactScalar::sqrt of a negative integer");
    if (n == 0)
        return {};
    Integer square;
    Integer core = squarefree_part(n, square);
    Monomial m;
    Integer rest = core;
    for (Integer p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            m.primes.push_back(p.convert_to<std::uint32_t>());
            rest /= p;
        }
    }
    if (rest > 1)
        m.primes.push_back(rest.convert_to<std::uint32_t>());
    ExactScalar s;
    s.terms_.emplace(std::move(m), Rational(square));
    return s;
}

void ExactScalar::add_term(const Monomial& m, const Rational& q) {
    if (q == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0)
            terms_.erase(it);
    }
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    for (auto& [m, q] : r.terms_)
        q = -q;
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    for (const auto& [m, q] : o.terms_)
        add_term(m, q);
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    for (const auto& [m, q] : o.terms_)
        add_term(m, -q);
    return *this;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    for (const auto& [ma, qa] : a.terms_) {
        for (const auto& [mb, qb] : b.terms_) {
            ExactScalar::Monomial m;
            m.tau = ma.tau + mb.tau;
            Rational q = qa * qb;
            if (ma.imag && mb.imag)
                q = -q;
            m.imag = ma.imag != mb.imag;
            // merge sorted prime lists; shared primes square out
            std::size_t i = 0, j = 0;
            while (i < ma.primes.size() || j < mb.primes.size()) {
                if (j == mb.primes.size() || (i < ma.primes.size() && ma.primes[i] < mb.primes[j])) {
                    m.primes.push_back(ma.primes[i++]);
                } else if (i == ma.primes.size() || mb.primes[j] < ma.primes[i]) {
                    m.primes.push_back(mb.primes[j++]);
                } else {
                    q *= ma.primes[i];
                    ++i;
                    ++j;
                }
            }
            r.add_term(m, q);
        }
    }
    return r;
}

ExactScalar ExactScalar::conj() const {
    ExactScalar r = *this;
    for (auto& [m, q] : r.terms_)
        if (m.imag)
            q = -q;
    return r;
}

ExactScalar ExactScalar::apply_sign_flip(std::uint32_t prime) const {
    ExactScalar r = *this;
    for (auto& [m, q] : r.terms_)
        if (std::binary_search(m.primes.begin(), m.primes.end(), prime))
            q = -q;
    return r;
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero())
        throw DomainError("ExactScalar: division by zero");
    const int tau = terms_.begin()->first.tau;
    std::set<std::uint32_t> primes;
    for (const auto& [m, q] : terms_) {
        if (m.tau != tau)
            throw UnsupportedError("ExactScalar: inverse of a non-monomial polynomial in 2π");
        primes.insert(m.primes.begin(), m.primes.end());
    }
    ExactScalar y;
    for (const auto& [m, q] : terms_) {
        Monomial mm = m;
        mm.tau = 0;
        y.add_term(mm, q);
    }
    // Multiply by Galois conjugates until the product is rational.
    ExactScalar num(Rational(1));
    for (auto p : primes) {
        ExactScalar c = y.apply_sign_flip(p);
        num *= c;
        y *= c;
    }
    ExactScalar c = y.conj();
    num *= c;
    y *= c;
    if (y.terms_.size() != 1 || !(y.terms_.begin()->first == Monomial{}))
        throw DomainError("ExactScalar: norm is not rational (internal error)");
    Rational norm = y.terms_.begin()->second;
    ExactScalar r;
    for (const auto& [m, q] : num.terms_) {
        Monomial mm = m;
        mm.tau = -tau;
        r.add_term(mm, q / norm);
    }
    return r;
}

Complex ExactScalar::to_complex() const {
    Complex sum = 0.0;
    for (const auto& [m, q] : terms_) {
        double v = q.convert_to<double>();
        if (m.tau != 0)
            v *= std::pow(2.0 * std::numbers::pi, m.tau);
        for (auto p : m.primes)
            v *= std::sqrt(static_cast<double>(p));
        sum += m.imag ? Complex(0.0, v) : Complex(v, 0.0);
    }
    return sum;
}

std::string ExactScalar::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, q] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << leafcoh::to_string(q);
        if (m.tau != 0)
            os << "*tau^" << m.tau;
        if (m.imag)
            os << "*i";
        if (!m.primes.empty()) {
            os << "*sqrt(";
            std::uint64_t prod = 1;
            for (auto p : m.primes)
                prod *= p;
            os << prod << ")";
        }
    }
    return os.str();
}

} // namespace leafcoh
