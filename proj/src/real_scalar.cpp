#include "leafcoh/real_scalar.hpp"

#include "leafcoh/errors.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace leafcoh {

namespace {

int sign_of(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// sign of u + v√d for d ≥ 2 square-free (or v = 0)
int sign_of_surd(const Integer& u, const Integer& v, const Integer& d) {
    int su = sign_of(u), sv = sign_of(v);
    if (sv == 0)
        return su;
    if (su == 0 || su == sv)
        return sv;
    // opposite signs: compare u² against v²d (never equal for irrational √d)
    Integer lhs = u * u, rhs = v * v * d;
    if (lhs == rhs)
        return 0;
    return lhs > rhs ? su : sv;
}

// value of (u + v√d)/c for u + v√d > 0, free of cancellation
double eval_positive_surd(const Integer& u, const Integer& v, const Integer& d, const Integer& c) {
    double dc = c.convert_to<double>();
    if (v == 0)
        return Rational(u, c).convert_to<double>();
    double rd = std::sqrt(d.convert_to<double>());
    double du = u.convert_to<double>(), dv = v.convert_to<double>();
    if (sign_of(u) >= 0 && sign_of(v) >= 0)
        return (du + dv * rd) / dc;
    Integer num = u * u - v * v * d; // (u + v√d)(u − v√d)
    return num.convert_to<double>() / (dc * (du - dv * rd));
}

} // namespace

void QuadraticNumber::canonicalize() {
    if (c == 0)
        throw InputError("quadratic number with zero denominator");
    if (b != 0) {
        if (d <= 0)
            throw InputError("quadratic number needs a positive radicand");
        Integer square;
        Integer core = squarefree_part(d, square);
        b *= square;
        d = core;
        if (d == 1) {
            a += b;
            b = 0;
        }
    }
    if (b == 0)
        d = 1;
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    Integer g = gcd(gcd(a, b), c);
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
}

Integer QuadraticNumber::floor() const {
    if (b == 0)
        return floor_div(a, c);
    // b√d is irrational, so floor((a + b√d)/c) = floor((a + floor(b√d))/c)
    Integer t = isqrt(b * b * d);
    Integer fl = b > 0 ? t : Integer(-t - 1);
    return floor_div(a + fl, c);
}

int QuadraticNumber::sign() const { return sign_of_surd(a, b, d); }

double QuadraticNumber::to_double() const {
    int s = sign();
    if (s == 0)
        return 0.0;
    return s > 0 ? eval_positive_surd(a, b, d, c) : -eval_positive_surd(-a, -b, d, c);
}

double QuadraticNumber::fractional_part() const {
    Integer n = floor();
    Integer u = a - n * c;
    if (sign_of_surd(u, b, d) == 0)
        return 0.0;
    return eval_positive_surd(u, b, d, c);
}

double QuadraticNumber::distance_to_integer() const {
    Integer n = floor();
    Integer u = a - n * c; // frac = (u + b√d)/c in [0, 1)
    if (sign_of_surd(u, b, d) == 0)
        return 0.0;
    // frac < 1/2  <=>  2u − c + 2b√d < 0
    if (sign_of_surd(2 * u - c, 2 * b, d) < 0)
        return eval_positive_surd(u, b, d, c);
    return eval_positive_surd(c - u, -b, d, c);
}

QuadraticNumber QuadraticNumber::operator-() const { return {-a, -b, c, d}; }

bool combine_quadratic(std::span<const QuadraticNumber> terms, std::span<const long long> coeffs,
                       QuadraticNumber& out) {
    Integer d = 1;
    for (const auto& t : terms) {
        if (t.b != 0) {
            if (d != 1 && d != t.d)
                return false;
            d = t.d;
        }
    }
    QuadraticNumber acc{0, 0, 1, d};
    for (std::size_t j = 0; j < terms.size(); ++j) {
        if (coeffs[j] == 0)
            continue;
        const auto& t = terms[j];
        Integer k = coeffs[j];
        acc.a = acc.a * t.c + k * t.a * acc.c;
        acc.b = acc.b * t.c + k * t.b * acc.c;
        acc.c = acc.c * t.c;
        Integer g = gcd(gcd(acc.a, acc.b), acc.c);
        if (g > 1) {
            acc.a /= g;
            acc.b /= g;
            acc.c /= g;
        }
    }
    acc.canonicalize();
    out = acc;
    return true;
}

RealScalar RealScalar::rational(const Integer& p, const Integer& q) {
    if (q == 0)
        throw InputError("rational with zero denominator");
    RealScalar r;
    QuadraticNumber v{p, 0, q, 1};
    v.canonicalize();
    r.value_ = v;
    return r;
}

RealScalar RealScalar::rational(const Rational& x) { return rational(numerator(x), denominator(x)); }

RealScalar RealScalar::quadratic(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    RealScalar r;
    QuadraticNumber v{a, b, c, d};
    v.canonicalize();
    r.value_ = v;
    return r;
}

RealScalar RealScalar::approximate(double v) {
    if (!std::isfinite(v))
        throw InputError("non-finite real scalar");
    RealScalar r;
    r.value_ = v;
    return r;
}

RealScalar RealScalar::parse(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            text += ch;
    std::string kind;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        kind = text.substr(0, colon);
        text = text.substr(colon + 1);
    }
    if (kind.empty())
        kind = text.find("sqrt") != std::string::npos ? "quadratic"
               : (text.find_first_of(".eE") != std::string::npos ? "float" : "rational");

    if (kind == "float") {
        try {
            std::size_t pos = 0;
            double v = std::stod(text, &pos);
            if (pos != text.size())
                throw InputError("trailing characters");
            return approximate(v);
        } catch (const std::exception&) {
            throw InputError("cannot parse float scalar '" + raw + "'");
        }
    }
    if (kind == "rational")
        return rational(parse_rational(text));
    if (kind == "quadratic") {
        static const std::regex re(R"(^\(?([+-]?\d+)?([+-])?(\d+)?\*?sqrt\(?(\d+)\)?\)?(?:/(\d+))?$)");
        std::smatch m;
        if (!std::regex_match(text, m, re))
            throw InputError("cannot parse quadratic scalar '" + raw + "' (expected e.g. (-1+sqrt5)/2)");
        Integer a = 0, b = 1, c = 1;
        std::string ga = m[1].str(), gs = m[2].str(), gb = m[3].str();
        if (gs.empty() && !ga.empty() && gb.empty()) {
            // "3*sqrt2" or "-sqrt..." style: the leading integer multiplies the root
            gb = ga;
            ga.clear();
        }
        if (!ga.empty())
            a = parse_integer(ga);
        if (!gb.empty())
            b = parse_integer(gb);
        if (gs == "-")
            b = -b;
        if (m[5].matched)
            c = parse_integer(m[5].str());
        return quadratic(a, b, c, parse_integer(m[4].str()));
    }
    throw InputError("unknown scalar kind '" + kind + "'");
}

RealScalar::Kind RealScalar::kind() const {
    if (!is_exact())
        return Kind::approximate;
    return std::get<QuadraticNumber>(value_).is_rational() ? Kind::rational : Kind::quadratic;
}

const QuadraticNumber& RealScalar::exact() const {
    if (!is_exact())
        throw ExactnessError("operation requires an exact (rational or quadratic) scalar");
    return std::get<QuadraticNumber>(value_);
}

double RealScalar::to_double() const {
    if (!is_exact())
        return std::get<double>(value_);
    return exact().to_double();
}

ExactScalar RealScalar::to_exact() const {
    const auto& q = exact();
    ExactScalar v = ExactScalar(Rational(q.a, q.c));
    if (q.b != 0)
        v += ExactScalar(Rational(q.b, q.c)) * ExactScalar::sqrt(q.d);
    return v;
}

bool RealScalar::multiple_is_integer(long long k) const {
    QuadraticNumber m = exact();
    if (k == 0)
        return true;
    if (m.b != 0)
        return false;
    return (Integer(k) * m.a) % m.c == 0;
}

double RealScalar::fractional_part_of_multiple(long long k) const {
    if (!is_exact()) {
        long double v = static_cast<long double>(std::get<double>(value_)) * k;
        long double f = v - std::floor(v);
        return static_cast<double>(f >= 1.0L ? 0.0L : f);
    }
    QuadraticNumber m = exact();
    m.a *= k;
    m.b *= k;
    return m.fractional_part();
}

double RealScalar::distance_of_multiple(long long k) const {
    if (!is_exact()) {
        long double v = static_cast<long double>(std::get<double>(value_)) * k;
        return static_cast<double>(std::fabs(v - std::nearbyint(v)));
    }
    QuadraticNumber m = exact();
    m.a *= k;
    m.b *= k;
    return m.distance_to_integer();
}

std::string RealScalar::to_string() const {
    std::ostringstream os;
    if (!is_exact()) {
        os.precision(17);
        os << "float:" << std::get<double>(value_);
        return os.str();
    }
    const auto& q = exact();
    if (q.b == 0) {
        os << "rational:" << q.a;
        if (q.c != 1)
            os << "/" << q.c;
        return os.str();
    }
    os << "quadratic:(" << q.a << (q.b < 0 ? "-" : "+");
    Integer ab = q.b < 0 ? Integer(-q.b) : q.b;
    if (ab != 1)
        os << ab << "*";
    os << "sqrt" << q.d << ")";
    if (q.c != 1)
        os << "/" << q.c;
    return os.str();
}

RealScalar RealScalar::operator-() const {
    if (!is_exact())
        return approximate(-std::get<double>(value_));
    RealScalar r;
    r.value_ = -exact();
    return r;
}

} // namespace leafcoh
