#include "leafcoh/skewflow.hpp"

#include "leafcoh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leafcoh {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2πiθ} − 1 = 2i·sin(πθ)·e^{iπθ}, free of cancellation for small θ.
Complex rotation_divisor(double theta) {
    return Complex(0.0, 2.0 * std::sin(std::numbers::pi * theta)) * std::polar(1.0, std::numbers::pi * theta);
}

void require_real(const TrigPoly& f, const char* what) {
    if (!f.is_real())
        throw InputError(std::string(what) + ": f must be real-valued (conjugate-symmetric coefficients)");
}

// Samples of Re f on an odd grid that resolves its support.
std::vector<double> real_samples(const TrigPoly& f, int min_n) {
    int N = std::max(min_n, 4 * f.max_frequency() + 1);
    if (N % 2 == 0)
        ++N;
    std::vector<double> out;
    for (const auto& v : inverse_grid(f, N))
        out.push_back(v.real());
    return out;
}

void require_positive(const TrigPoly& f, const char* what) {
    require_real(f, what);
    auto s = real_samples(f, 65);
    double m = *std::min_element(s.begin(), s.end());
    if (!(m > 0.0))
        throw NonPositiveError(std::string(what) + ": f is not positive (grid minimum " + std::to_string(m) + ")");
}

double frac_of_dot(const std::vector<RealScalar>& alpha, const Frequency& k, long long scale) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < k.size(); ++j)
        if (k[j] != 0)
            s += alpha[j].fractional_part_of_multiple(static_cast<long long>(k[j]) * scale);
    return static_cast<double>(s - std::floor(s));
}

// Real-valued evaluation of a trig poly on T¹ via cached coefficients.
struct CircleEval {
    std::vector<std::pair<int, Complex>> modes;
    explicit CircleEval(const TrigPoly& f) {
        for (const auto& [k, c] : f.coeffs())
            modes.emplace_back(k[0], c);
    }
    double operator()(double x) const {
        double s = 0.0;
        for (const auto& [k, c] : modes) {
            double t = k * x;
            t -= std::floor(t);
            s += (c * std::polar(1.0, kTwoPi * t)).real();
        }
        return s;
    }
};

// C² seam: β(0) = 0, β(1) = 1, ∫₀¹β = 0.
double seam(double y) {
    double y3 = y * y * y;
    double w = 1.0 - y;
    return 6.0 * y3 * y * y - 15.0 * y3 * y + 10.0 * y3 - 70.0 * y3 * w * w * w;
}

struct SectionFlow {
    CircleEval f;
    double alpha;
    double rho(double x, double y) const {
        double yr = y - std::floor(y);
        double u = x - alpha * yr;
        double fu = f(u);
        return fu + seam(yr) * (f(u + alpha) - fu);
    }
    // τ(t) along the orbit (x0 + ατ, τ), integrated for signed time `time`.
    double flow(double x0, double tau0, double time, double h) const {
        if (time == 0.0)
            return tau0;
        const long long n = static_cast<long long>(std::ceil(std::fabs(time) / h));
        const double dt = time / static_cast<double>(n);
        auto rhs = [&](double tau) { return 1.0 / rho(x0 + alpha * tau, tau); };
        double tau = tau0;
        for (long long i = 0; i < n; ++i) {
            double k1 = rhs(tau);
            double k2 = rhs(tau + 0.5 * dt * k1);
            double k3 = rhs(tau + 0.5 * dt * k2);
            double k4 = rhs(tau + dt * k3);
            tau += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return tau;
    }
};

double circle_distance(double a) { return std::fabs(a - std::nearbyint(a)); }

} // namespace

// ------------------------------------------------------------------ flows

KroneckerFlowSpec::KroneckerFlowSpec(std::vector<RealScalar> a) : alpha(std::move(a)) {
    if (alpha.empty())
        throw DimensionError("Kronecker flow needs n >= 1");
    bool all_zero = std::all_of(alpha.begin(), alpha.end(), [](const RealScalar& v) { return v.to_double() == 0.0; });
    if (all_zero)
        throw InputError("Kronecker flow direction must be nonzero");
}

KroneckerFlowSpec KroneckerFlowSpec::from_slope(const RealScalar& a) {
    return KroneckerFlowSpec(std::vector<RealScalar>{a, RealScalar::rational(Integer(1))});
}

double KroneckerFlowSpec::dot(const Frequency& k, bool* exact_zero) const {
    if (static_cast<int>(k.size()) != dims())
        throw DimensionError("frequency does not match the flow dimension");
    bool exact = std::all_of(alpha.begin(), alpha.end(), [](const RealScalar& v) { return v.is_exact(); });
    if (exact) {
        std::vector<QuadraticNumber> terms;
        std::vector<long long> coeffs;
        for (std::size_t j = 0; j < k.size(); ++j) {
            terms.push_back(alpha[j].exact());
            coeffs.push_back(k[j]);
        }
        QuadraticNumber sum;
        if (combine_quadratic(terms, coeffs, sum)) {
            if (exact_zero)
                *exact_zero = sum.a == 0 && sum.b == 0;
            return sum.to_double();
        }
        ExactScalar s;
        for (std::size_t j = 0; j < k.size(); ++j)
            if (k[j] != 0)
                s += ExactScalar(k[j]) * alpha[j].to_exact();
        if (exact_zero)
            *exact_zero = s.is_zero();
        return s.to_complex().real();
    }
    long double s = 0.0L;
    for (std::size_t j = 0; j < k.size(); ++j)
        s += static_cast<long double>(alpha[j].to_double()) * k[j];
    if (exact_zero)
        *exact_zero = s == 0.0L;
    return static_cast<double>(s);
}

TrigPoly rotate(const TrigPoly& g, const RealScalar& alpha) {
    if (g.dims() != 1)
        throw DimensionError("rotate acts on T^1");
    return g.map_modes([&](const Frequency& k) { return unit_phase(alpha, k[0]); });
}

namespace {

/// Copies conj(ĝ_k) onto ĝ_{−k} for k with first nonzero coordinate negative, so real data gives a real g bit for bit.
void conjugate_lower_half(TrigPoly& g) {
    std::vector<std::pair<Frequency, Complex>> upper;
    for (const auto& [k, c] : g.coeffs()) {
        auto nz = std::find_if(k.begin(), k.end(), [](int v) { return v != 0; });
        if (nz != k.end() && *nz > 0)
            upper.emplace_back(k, c);
    }
    for (auto& [k, c] : upper) {
        for (auto& v : k)
            v = -v;
        g.set(k, std::conj(c));
    }
}

} // namespace

std::variant<CohomSolution, SmallDivisorDiagnostic> circle_cohom_solve(const TrigPoly& f, const RealScalar& alpha,
                                                                       double tol) {
    if (f.dims() != 1)
        throw DimensionError("circle_cohom_solve needs a trig poly on T^1");
    require_real(f, "circle_cohom_solve");
    SmallDivisorDiagnostic diag;
    diag.tol = tol;
    diag.reason = "near-resonant modes: |e^{2 pi i k alpha} - 1| <= tol";
    CohomSolution sol{TrigPoly(1), f.mean(), 0.0};
    for (const auto& [k, c] : f.coeffs()) {
        if (k[0] == 0)
            continue;
        bool resonant = alpha.is_exact() ? alpha.multiple_is_integer(k[0])
                                         : alpha.fractional_part_of_multiple(k[0]) == 0.0;
        if (resonant)
            throw ObstructionError("circle_cohom_solve: k = " + std::to_string(k[0]) +
                                   " is resonant (k alpha is an integer) with nonzero coefficient");
        Complex div = rotation_divisor(alpha.fractional_part_of_multiple(k[0]));
        if (std::abs(div) <= tol) {
            diag.modes.push_back({k, std::abs(div), std::abs(c), false});
            continue;
        }
        sol.g.set(k, c / div);
    }
    if (!diag.modes.empty())
        return diag;
    conjugate_lower_half(sol.g);
    TrigPoly defect = rotate(sol.g, alpha) - sol.g + TrigPoly::constant(1, sol.c) - f;
    sol.residual = defect.is_zero() ? 0.0 : grid_max_norm(defect);
    return sol;
}

std::variant<CohomSolution, SmallDivisorDiagnostic> flow_cohom_solve(const TrigPoly& f, const KroneckerFlowSpec& flow,
                                                                     double tol) {
    if (f.dims() != flow.dims())
        throw DimensionError("flow_cohom_solve: f and the flow live on different tori");
    SmallDivisorDiagnostic diag;
    diag.tol = tol;
    diag.reason = "near-resonant modes: |k . alpha| <= tol";
    CohomSolution sol{TrigPoly(f.dims()), f.mean(), 0.0};
    for (const auto& [k, c] : f.coeffs()) {
        if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; }))
            continue;
        bool zero = false;
        double d = flow.dot(k, &zero);
        if (zero)
            throw ObstructionError("flow_cohom_solve: k . alpha = 0 for a supported mode");
        if (std::fabs(d) <= tol) {
            diag.modes.push_back({k, std::fabs(d), std::abs(c), false});
            continue;
        }
        sol.g.set(k, c / Complex(0.0, kTwoPi * d));
    }
    require_real(f, "flow_cohom_solve");
    if (!diag.modes.empty())
        return diag;
    conjugate_lower_half(sol.g);
    std::vector<double> a;
    for (const auto& v : flow.alpha)
        a.push_back(v.to_double());
    TrigPoly defect = f - frame_derivative(sol.g, std::span<const double>(a)) - TrigPoly::constant(f.dims(), sol.c);
    sol.residual = defect.is_zero() ? 0.0 : grid_max_norm(defect);
    return sol;
}

std::variant<SectionVerification, SmallDivisorDiagnostic> straighten_cross_section(const TrigPoly& f,
                                                                                   const RealScalar& alpha, double tol,
                                                                                   int samples, double step) {
    if (f.dims() != 1)
        throw DimensionError("straighten_cross_section needs a return time on T^1");
    if (samples < 32)
        throw InputError("straighten_cross_section: at least 32 sample points");
    if (!(step > 0.0))
        throw InputError("straighten_cross_section: step must be positive");
    require_positive(f, "straighten_cross_section");

    SectionFlow flow{CircleEval(f), alpha.to_double()};
    {
        // the interpolated speed must stay positive on T²
        const int G = 96;
        double lo = std::numeric_limits<double>::infinity();
        for (int i = 0; i < G; ++i)
            for (int j = 0; j < G; ++j)
                lo = std::min(lo, flow.rho(static_cast<double>(i) / G, static_cast<double>(j) / G));
        if (!(lo > 0.0))
            throw NonPositiveError("straighten_cross_section: interpolated time change is not positive (min " +
                                   std::to_string(lo) + "); f varies too much for this construction");
    }

    auto solved = circle_cohom_solve(f, alpha, tol);
    if (auto* d = std::get_if<SmallDivisorDiagnostic>(&solved))
        return *d;
    SectionVerification out;
    out.solution = std::get<CohomSolution>(solved);
    out.samples = samples;
    out.step = step;
    CircleEval g(out.solution.g);
    const double c = out.solution.c.real();
    const double a = flow.alpha;
    for (int s = 0; s < samples; ++s) {
        const double x = static_cast<double>(s) / samples;
        // section point over x, then flow for time c
        double tauP = flow.flow(x, 0.0, -g(x), step);
        double tauA = flow.flow(x, tauP, c, step);
        // section point over R_α x
        double tauQ = flow.flow(x + a, 0.0, -g(x + a), step);
        double dx = circle_distance((x + a * tauA) - (x + a + a * tauQ));
        double dy = circle_distance(tauA - tauQ);
        out.max_deviation = std::max(out.max_deviation, std::hypot(dx, dy));
    }
    return out;
}

TrigPoly reparam_invariant_density(const TrigPoly& f, const KroneckerFlowSpec& flow) {
    if (f.dims() != flow.dims())
        throw DimensionError("reparam_invariant_density: f and the flow live on different tori");
    require_positive(f, "reparam_invariant_density");
    const double mean = f.mean().real();
    TrigPoly rho(f.dims());
    for (const auto& [k, c] : f.coeffs())
        rho.set(k, Complex(c.real() / mean, c.imag() / mean));
    return rho;
}

BirkhoffResult birkhoff_average(const KroneckerFlowSpec& flow, const TrigPoly& f, const std::vector<double>& x0,
                                double T, int curve_points) {
    if (f.dims() != flow.dims() || static_cast<int>(x0.size()) != f.dims())
        throw DimensionError("birkhoff_average: dimension mismatch");
    if (!(T > 0.0))
        throw InputError("birkhoff_average: T must be positive");
    if (curve_points < 1)
        throw InputError("birkhoff_average: curve_points must be >= 1");
    struct Mode {
        Complex start; // f̂_k e^{2πik·x₀}
        long double freq; // k·α
        bool resonant;
    };
    std::vector<Mode> modes;
    BirkhoffResult out;
    for (const auto& [k, c] : f.coeffs()) {
        long double ph = 0.0L;
        for (std::size_t j = 0; j < k.size(); ++j) {
            long double t = static_cast<long double>(k[j]) * x0[j];
            ph += t - std::floor(t);
        }
        ph -= std::floor(ph);
        bool zero = false;
        double d = flow.dot(k, &zero);
        modes.push_back({c * std::polar(1.0, static_cast<double>(2.0L * std::numbers::pi_v<long double> * ph)),
                         static_cast<long double>(d), zero});
        if (!zero)
            out.bound += std::abs(c) / (std::numbers::pi * std::fabs(d) * T);
    }
    auto average_at = [&](double t) {
        Complex s = 0.0;
        for (const auto& m : modes) {
            if (m.resonant) {
                s += m.start;
                continue;
            }
            // (e^{iθ} − 1)/(iθ) = e^{iθ/2}·sin(θ/2)/(θ/2), θ = 2π t k·α
            long double half_turns = m.freq * t / 2.0L; // θ/2 in units of 2π
            long double red = half_turns - std::floor(half_turns);
            double half = static_cast<double>(std::numbers::pi_v<long double> * m.freq * t);
            const double ang = static_cast<double>(2.0L * std::numbers::pi_v<long double> * red);
            s += m.start * std::polar(1.0, ang) * (std::sin(ang) / half);
        }
        return s;
    };
    for (int j = 1; j <= curve_points; ++j) {
        double t = T * j / curve_points;
        out.curve.emplace_back(t, average_at(t));
    }
    out.average = average_at(T);
    return out;
}

BirkhoffResult birkhoff_average_map(const std::vector<RealScalar>& alpha, const TrigPoly& f,
                                    const std::vector<double>& x0, long long N, int curve_points) {
    if (static_cast<int>(alpha.size()) != f.dims() || static_cast<int>(x0.size()) != f.dims())
        throw DimensionError("birkhoff_average_map: dimension mismatch");
    if (N < 1)
        throw InputError("birkhoff_average_map: N must be >= 1");
    if (curve_points < 1)
        throw InputError("birkhoff_average_map: curve_points must be >= 1");
    BirkhoffResult out;
    auto average_at = [&](long long n) {
        Complex s = 0.0;
        for (const auto& [k, c] : f.coeffs()) {
            long double ph = 0.0L;
            for (std::size_t j = 0; j < k.size(); ++j) {
                long double t = static_cast<long double>(k[j]) * x0[j];
                ph += t - std::floor(t);
            }
            Complex start = c * std::polar(1.0, static_cast<double>(2.0L * std::numbers::pi_v<long double> *
                                                                     (ph - std::floor(ph))));
            double th1 = frac_of_dot(alpha, k, 1);
            if (th1 == 0.0) {
                s += start;
                continue;
            }
            double thN = frac_of_dot(alpha, k, n);
            s += start * rotation_divisor(thN) / (static_cast<double>(n) * rotation_divisor(th1));
        }
        return s;
    };
    for (int j = 1; j <= curve_points; ++j) {
        long long n = std::max<long long>(1, N * j / curve_points);
        out.curve.emplace_back(static_cast<double>(n), average_at(n));
    }
    out.average = average_at(N);
    return out;
}

// ------------------------------------------------------------------ skew product

PhaseCoefficients to_phase_coefficients(const TrigPoly& f, const RealScalar& lambda) {
    if (f.dims() != 2)
        throw DimensionError("skew product coefficients live on T^2");
    const long long order = PhasePoly::order_of(lambda);
    PhaseCoefficients out;
    for (const auto& [k, c] : f.coeffs())
        out.emplace(std::make_pair(k[0], k[1]),
                    PhasePoly(order, GaussianRational(rational_from_double(c.real()), rational_from_double(c.imag()))));
    return out;
}

TrigPoly skew_coboundary(const TrigPoly& g, const RealScalar& lambda) {
    if (g.dims() != 2)
        throw DimensionError("skew_coboundary needs a trig poly on T^2");
    TrigPoly out(2);
    for (const auto& [km, c] : g.coeffs()) {
        out.add({km[0], km[1] + km[0]}, unit_phase(lambda, km[1]) * c);
        out.add(km, -c);
    }
    return out;
}

PhaseCoefficients skew_coboundary(const PhaseCoefficients& g, const RealScalar& lambda) {
    const long long order = PhasePoly::order_of(lambda);
    PhaseCoefficients out;
    auto add = [&](std::pair<int, int> key, const PhasePoly& v) {
        auto [it, fresh] = out.emplace(key, v);
        if (!fresh)
            it->second += v;
        if (it->second.is_zero())
            out.erase(it);
    };
    for (const auto& [km, c] : g) {
        if (c.order() != order)
            throw InputError("skew_coboundary: coefficients use a different phase");
        add({km.first, km.second + km.first}, c.shifted(km.second));
        add(km, -c);
    }
    return out;
}

namespace {

template <class V, class Ops>
KatokReport run_katok(const std::map<int, std::map<int, V>>& rows, const RealScalar& lambda, int K, double tol,
                      const Ops& ops) {
    KatokReport rep;
    for (const auto& [k, row] : rows)
        if (k != 0 && std::abs(k) > K)
            rep.rows_beyond_K.push_back(k);
    for (int a = 1; a <= K; ++a) {
        for (int k : {-a, a}) {
            auto it = rows.find(k);
            for (int r = 0; r < a; ++r) {
                ObstructionValue ov;
                ov.k = k;
                ov.r = r;
                V g = ops.zero();
                if (it != rows.end()) {
                    const auto& row = it->second;
                    const int lo = row.begin()->first, hi = row.rbegin()->first;
                    auto first_at_least = [&](int m) { return m + (((r - m) % a) + a) % a; };
                    const int m0 = first_at_least(lo);
                    const int m_end = first_at_least(hi + 1);
                    auto coef = [&](int m) {
                        auto jt = row.find(m);
                        return jt == row.end() ? ops.zero() : jt->second;
                    };
                    if (k > 0) {
                        for (int m = m0; m <= m_end; m += a)
                            g = ops.sub(ops.shift(g, m - k), coef(m));
                    } else {
                        for (int m = m0; m < m_end; m += a)
                            g = ops.shift(ops.add(g, coef(m)), -(m + a));
                    }
                }
                ops.finish(ov, g, lambda);
                rep.obstructions.push_back(std::move(ov));
            }
        }
    }

    // k = 0 row: the circle equation in y with rotation λ
    auto zt = rows.find(0);
    TrigPoly sol(1);
    bool solvable = true;
    if (zt != rows.end()) {
        for (const auto& [m, v] : zt->second) {
            Complex c = ops.value(v, lambda);
            if (m == 0) {
                rep.mean = c;
                continue;
            }
            bool resonant = lambda.is_exact() ? lambda.multiple_is_integer(m)
                                               : lambda.fractional_part_of_multiple(m) == 0.0;
            Complex div = rotation_divisor(lambda.fractional_part_of_multiple(m));
            if (resonant) {
                rep.circle_resonant_m.push_back(m);
                solvable = false;
            } else if (std::abs(div) <= tol) {
                rep.circle_near_resonant_m.push_back(m);
                solvable = false;
            } else {
                sol.set({m}, c / div);
            }
        }
    }
    if (solvable)
        rep.circle_solution = sol;
    return rep;
}

struct FloatOps {
    const RealScalar& lambda;
    Complex zero() const { return 0.0; }
    Complex add(Complex a, Complex b) const { return a + b; }
    Complex sub(Complex a, Complex b) const { return a - b; }
    Complex shift(Complex a, long long e) const { return a == Complex{} ? a : a * unit_phase(lambda, e); }
    Complex value(Complex a, const RealScalar&) const { return a; }
    void finish(ObstructionValue& ov, Complex g, const RealScalar&) const {
        ov.value = g;
        ov.modulus = std::abs(g);
    }
};

struct ExactOps {
    long long order;
    PhasePoly zero() const { return PhasePoly(order); }
    PhasePoly add(const PhasePoly& a, const PhasePoly& b) const { return a + b; }
    PhasePoly sub(const PhasePoly& a, const PhasePoly& b) const { return a - b; }
    PhasePoly shift(const PhasePoly& a, long long e) const { return a.shifted(e); }
    Complex value(const PhasePoly& a, const RealScalar& lambda) const { return a.evaluate(lambda); }
    void finish(ObstructionValue& ov, const PhasePoly& g, const RealScalar& lambda) const {
        ov.exact_zero = g.is_zero();
        ov.value = g.evaluate(lambda);
        ov.modulus = std::abs(ov.value);
        ov.symbolic = g;
    }
};

} // namespace

KatokReport katok_obstructions(const TrigPoly& f, const RealScalar& lambda, int K, double tol) {
    if (f.dims() != 2)
        throw DimensionError("katok_obstructions needs a trig poly on T^2");
    if (K < 1)
        throw InputError("katok_obstructions: K must be >= 1");
    std::map<int, std::map<int, Complex>> rows;
    for (const auto& [km, c] : f.coeffs())
        rows[km[0]][km[1]] = c;
    auto rep = run_katok(rows, lambda, K, tol, FloatOps{lambda});
    rep.exact = false;
    return rep;
}

KatokReport katok_obstructions(const PhaseCoefficients& f, const RealScalar& lambda, int K, double tol) {
    if (K < 1)
        throw InputError("katok_obstructions: K must be >= 1");
    const long long order = PhasePoly::order_of(lambda);
    std::map<int, std::map<int, PhasePoly>> rows;
    for (const auto& [km, c] : f) {
        if (c.order() != order)
            throw InputError("katok_obstructions: coefficients use a different phase");
        if (!c.is_zero())
            rows[km.first][km.second] = c;
    }
    auto rep = run_katok(rows, lambda, K, tol, ExactOps{order});
    rep.exact = true;
    return rep;
}

} // namespace leafcoh
