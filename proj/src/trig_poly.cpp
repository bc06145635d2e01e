#include "leafcoh/trig_poly.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>

namespace leafcoh {

namespace {

std::size_t grid_size(int dims, int N) {
    std::size_t total = 1;
    for (int i = 0; i < dims; ++i)
        total *= static_cast<std::size_t>(N);
    return total;
}

// Runs an n-dimensional complex DFT of extent N in each direction.
std::vector<Complex> run_dft(std::vector<Complex> in, int dims, int N, int sign) {
    std::vector<Complex> out(in.size());
    std::vector<int> extents(static_cast<std::size_t>(dims), N);
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    std::unique_ptr<fftw_plan_s, decltype(&fftw_destroy_plan)> plan(
        fftw_plan_dft(dims, extents.data(), pin, pout, sign, FFTW_ESTIMATE), &fftw_destroy_plan);
    if (!plan)
        throw UnsupportedError("FFTW could not create a plan");
    fftw_execute(plan.get());
    return out;
}

int fold(int j, int N) { return j <= (N - 1) / 2 ? j : j - N; }

} // namespace

Complex evaluate(const TrigPoly& f, std::span<const double> x) {
    if (static_cast<int>(x.size()) != f.dims())
        throw DimensionError("evaluate: point has the wrong dimension");
    Complex sum = 0.0;
    for (const auto& [k, c] : f.coeffs()) {
        // reduce k·x mod 1 before exponentiating
        long double phase = 0.0L;
        for (std::size_t i = 0; i < k.size(); ++i) {
            long double t = static_cast<long double>(k[i]) * x[i];
            phase += t - std::floor(t);
        }
        phase -= std::floor(phase);
        sum += c * std::polar(1.0, static_cast<double>(2.0L * std::numbers::pi_v<long double> * phase));
    }
    return sum;
}

ExactTrigPoly to_exact(const TrigPoly& f) {
    ExactTrigPoly r(f.dims());
    for (const auto& [k, c] : f.coeffs()) {
        ExactScalar v = ExactScalar(rational_from_double(c.real())) +
                        ExactScalar(rational_from_double(c.imag())) * ExactScalar::imaginary_unit();
        r.set(k, v);
    }
    return r;
}

TrigPoly frame_derivative(const TrigPoly& f, std::span<const double> v) {
    std::vector<Complex> cv(v.begin(), v.end());
    return frame_derivative<Complex>(f, std::span<const Complex>(cv));
}

TrigPoly translate(const TrigPoly& f, std::span<const double> t) {
    if (static_cast<int>(t.size()) != f.dims())
        throw DimensionError("translate: shift has the wrong dimension");
    return f.map_modes([&](const Frequency& k) {
        long double phase = 0.0L;
        for (std::size_t i = 0; i < k.size(); ++i) {
            long double s = static_cast<long double>(k[i]) * t[i];
            phase += s - std::floor(s);
        }
        phase -= std::floor(phase);
        return std::polar(1.0, static_cast<double>(2.0L * std::numbers::pi_v<long double> * phase));
    });
}

TrigPoly grid_transform(std::span<const Complex> samples, int dims, int N, double prune) {
    if (dims < 1 || N < 1)
        throw DimensionError("grid_transform: dims and N must be positive");
    const std::size_t total = grid_size(dims, N);
    if (samples.size() != total)
        throw DimensionError("grid_transform: expected " + std::to_string(total) + " samples");
    auto spec = run_dft(std::vector<Complex>(samples.begin(), samples.end()), dims, N, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(total);
    double peak = 0.0;
    for (auto& c : spec) {
        c *= scale;
        peak = std::max(peak, std::abs(c));
    }
    const double cutoff = prune * peak;
    TrigPoly f(dims);
    Frequency k(static_cast<std::size_t>(dims));
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int i = dims - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(N));
            rem /= static_cast<std::size_t>(N);
        }
        const Complex c = spec[flat];
        if (std::abs(c) <= cutoff)
            continue;
        for (int i = 0; i < dims; ++i) {
            int j = idx[static_cast<std::size_t>(i)];
            if (N % 2 == 0 && j == N / 2)
                throw InputError("grid_transform: Nyquist-frequency content on an even grid is ambiguous");
            k[static_cast<std::size_t>(i)] = fold(j, N);
        }
        f.set(k, c);
    }
    return f;
}

std::vector<Complex> inverse_grid(const TrigPoly& f, int N) {
    if (N < 1)
        throw DimensionError("inverse_grid: N must be positive");
    const int dims = f.dims();
    const std::size_t total = grid_size(dims, N);
    std::vector<Complex> spec(total, Complex{});
    for (const auto& [k, c] : f.coeffs()) {
        std::size_t flat = 0;
        for (int ki : k) {
            if (2 * std::abs(ki) >= N)
                throw InputError("inverse_grid: frequency " + std::to_string(ki) + " aliases on an N = " +
                                 std::to_string(N) + " grid");
            flat = flat * static_cast<std::size_t>(N) + static_cast<std::size_t>((ki % N + N) % N);
        }
        spec[flat] = c;
    }
    return run_dft(std::move(spec), dims, N, FFTW_BACKWARD);
}

std::vector<DecayEntry> decay_report(const TrigPoly& f, std::span<const double> exponents) {
    if (f.is_zero())
        throw InputError("decay_report: undefined for the zero polynomial");
    std::vector<DecayEntry> out;
    for (double r : exponents) {
        DecayEntry e;
        e.r = r;
        e.value = -1.0;
        for (const auto& [k, c] : f.coeffs()) {
            double n2 = 0.0;
            for (int ki : k)
                n2 += static_cast<double>(ki) * ki;
            if (n2 == 0.0)
                continue;
            double v = std::abs(c) * std::pow(std::sqrt(n2), r);
            if (v > e.value) {
                e.value = v;
                e.k = k;
            }
        }
        if (e.value < 0.0) {
            e.value = 0.0; // only the constant mode is present
            e.k = Frequency(static_cast<std::size_t>(f.dims()), 0);
        }
        out.push_back(std::move(e));
    }
    return out;
}

double grid_max_norm(const TrigPoly& f) {
    int N = std::max(8, 4 * f.max_frequency());
    if (N % 2 == 0)
        ++N; // odd grid: no Nyquist ambiguity
    double m = 0.0;
    for (const auto& v : inverse_grid(f, N))
        m = std::max(m, std::abs(v));
    return m;
}

} // namespace leafcoh
