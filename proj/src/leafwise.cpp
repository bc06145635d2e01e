#include "leafcoh/leafwise.hpp"

#include "leafcoh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace leafcoh {

namespace {

std::vector<IndexTuple> subsets(int n, int k) {
    std::vector<IndexTuple> out;
    if (k < 0 || k > n)
        return out;
    IndexTuple t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        t[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++t[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// Inserts i into an increasing tuple not containing it; returns the position.
int insert_index(const IndexTuple& I, int i, IndexTuple& out) {
    out.clear();
    int pos = -1;
    for (int v : I) {
        if (pos < 0 && i < v) {
            pos = static_cast<int>(out.size());
            out.push_back(i);
        }
        out.push_back(v);
    }
    if (pos < 0) {
        pos = static_cast<int>(out.size());
        out.push_back(i);
    }
    return pos;
}

void check_tuple(const IndexTuple& idx, int degree, int bound, const char* what) {
    if (static_cast<int>(idx.size()) != degree)
        throw DimensionError(std::string(what) + ": index tuple length differs from the degree");
    for (std::size_t a = 0; a < idx.size(); ++a) {
        if (idx[a] < 0 || idx[a] >= bound)
            throw DimensionError(std::string(what) + ": index out of range");
        if (a > 0 && idx[a] <= idx[a - 1])
            throw DimensionError(std::string(what) + ": index tuple must be strictly increasing");
    }
}

template <class S>
S determinant(std::vector<std::vector<S>> m) {
    using T = ScalarTraits<S>;
    const std::size_t n = m.size();
    if (n == 0)
        return S(1);
    if (n == 1)
        return m[0][0];
    S sum = T::zero();
    for (std::size_t col = 0; col < n; ++col) {
        if (T::is_zero(m[0][col]))
            continue;
        std::vector<std::vector<S>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<S> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != col)
                    row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        S term = m[0][col] * determinant(std::move(minor));
        if (col % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

// Modes appearing in any component, in lexicographic order.
template <class S>
std::set<Frequency> support(const LeafwiseForm<S>& w) {
    std::set<Frequency> modes;
    for (const auto& [idx, f] : w.components())
        for (const auto& [k, c] : f.coeffs())
            modes.insert(k);
    return modes;
}

bool is_zero_mode(const Frequency& k) {
    return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

struct DivisorChoice {
    int index = 0;
    double max_abs = 0.0;
    bool exact_zero = false;
};

DivisorChoice choose_divisor(const LinearFoliation& F, const Frequency& mode) {
    DivisorChoice ch;
    ch.index = 0;
    ch.max_abs = -1.0;
    bool all_zero = true;
    for (int i = 0; i < F.p(); ++i) {
        double d = std::fabs(F.divisor(i, mode));
        if (d > ch.max_abs) {
            ch.max_abs = d;
            ch.index = i;
        }
        if (all_zero && !F.divisor_is_zero(i, mode))
            all_zero = false;
    }
    ch.exact_zero = all_zero;
    return ch;
}

template <class S>
S exact_divisor(const LinearFoliation& F, int i, const Frequency& mode) {
    auto dir = F.frame_direction<S>(i);
    S d = ScalarTraits<S>::zero();
    for (std::size_t j = 0; j < mode.size(); ++j)
        if (mode[j] != 0)
            d += S(mode[j]) * dir[j];
    return d;
}

template <class S>
double form_residual(const LeafwiseForm<S>& diff) {
    return diff.is_zero() ? 0.0 : diff.max_abs();
}

} // namespace

// ---------------------------------------------------------------- foliation

LinearFoliation::LinearFoliation(int p, int q, RealMatrix B) : p_(p), q_(q), B_(std::move(B)) {
    if (p < 1 || q < 0)
        throw DimensionError("LinearFoliation needs p >= 1 and q >= 0");
    if (static_cast<int>(B_.size()) != p)
        throw DimensionError("slope matrix must have p rows");
    for (const auto& row : B_)
        if (static_cast<int>(row.size()) != q)
            throw DimensionError("slope matrix must have q columns");
}

LinearFoliation::LinearFoliation(RealMatrix B)
    : LinearFoliation(static_cast<int>(B.size()), B.empty() ? 0 : static_cast<int>(B.front().size()), B) {}

bool LinearFoliation::is_exact() const {
    for (const auto& row : B_)
        for (const auto& b : row)
            if (!b.is_exact())
                return false;
    return true;
}

double LinearFoliation::divisor(int i, const Frequency& mode) const {
    if (static_cast<int>(mode.size()) != ambient_dim())
        throw DimensionError("divisor: mode has the wrong length");
    long double d = mode[static_cast<std::size_t>(i)];
    for (int j = 0; j < q_; ++j)
        d += static_cast<long double>(B_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double()) *
             mode[static_cast<std::size_t>(p_ + j)];
    return static_cast<double>(d);
}

bool LinearFoliation::divisor_is_zero(int i, const Frequency& mode) const {
    const auto& row = B_[static_cast<std::size_t>(i)];
    bool exact = std::all_of(row.begin(), row.end(), [](const RealScalar& b) { return b.is_exact(); });
    if (!exact)
        return divisor(i, mode) == 0.0;
    ExactScalar d(mode[static_cast<std::size_t>(i)]);
    for (int j = 0; j < q_; ++j)
        if (mode[static_cast<std::size_t>(p_ + j)] != 0)
            d += ExactScalar(mode[static_cast<std::size_t>(p_ + j)]) * row[static_cast<std::size_t>(j)].to_exact();
    return d.is_zero();
}

template <class S>
std::vector<S> LinearFoliation::frame_direction(int i) const {
    std::vector<S> v(static_cast<std::size_t>(ambient_dim()), ScalarTraits<S>::zero());
    v[static_cast<std::size_t>(i)] = S(1);
    for (int j = 0; j < q_; ++j)
        v[static_cast<std::size_t>(p_ + j)] =
            ScalarTraits<S>::from_real(B_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return v;
}

template <class S>
S LinearFoliation::coframe_pairing(int c, int i) const {
    if (c < p_)
        return c == i ? S(1) : ScalarTraits<S>::zero();
    return ScalarTraits<S>::from_real(B_[static_cast<std::size_t>(i)][static_cast<std::size_t>(c - p_)]);
}

// ---------------------------------------------------------------- leafwise forms

template <class S>
LeafwiseForm<S>::LeafwiseForm(LinearFoliation F, int degree) : F_(std::move(F)), degree_(degree) {
    if (degree < 0)
        throw DimensionError("form degree must be >= 0");
}

template <class S>
LeafwiseForm<S> LeafwiseForm<S>::function(LinearFoliation F, Poly g) {
    LeafwiseForm w(std::move(F), 0);
    w.set({}, std::move(g));
    return w;
}

template <class S>
void LeafwiseForm<S>::check_index(const IndexTuple& idx) const {
    check_tuple(idx, degree_, F_.p(), "LeafwiseForm");
}

template <class S>
void LeafwiseForm<S>::check_same(const LeafwiseForm& o) const {
    if (!(o.F_ == F_) || o.degree_ != degree_)
        throw DimensionError("leafwise forms live on different foliations or degrees");
}

template <class S>
typename LeafwiseForm<S>::Poly LeafwiseForm<S>::component(const IndexTuple& idx) const {
    check_index(idx);
    auto it = comps_.find(idx);
    return it == comps_.end() ? Poly(F_.ambient_dim()) : it->second;
}

template <class S>
void LeafwiseForm<S>::set(const IndexTuple& idx, Poly f) {
    check_index(idx);
    if (f.dims() != F_.ambient_dim())
        throw DimensionError("component lives on the wrong torus");
    if (f.is_zero())
        comps_.erase(idx);
    else
        comps_[idx] = std::move(f);
}

template <class S>
void LeafwiseForm<S>::add(const IndexTuple& idx, const Poly& f) {
    check_index(idx);
    if (f.dims() != F_.ambient_dim())
        throw DimensionError("component lives on the wrong torus");
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        if (!f.is_zero())
            comps_.emplace(idx, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero())
        comps_.erase(it);
}

template <class S>
double LeafwiseForm<S>::max_abs() const {
    double m = 0.0;
    for (const auto& [idx, f] : comps_)
        m = std::max(m, f.max_abs());
    return m;
}

template <class S>
LeafwiseForm<Complex> LeafwiseForm<S>::to_complex() const {
    LeafwiseForm<Complex> r(F_, degree_);
    for (const auto& [idx, f] : comps_)
        r.set(idx, f.to_complex());
    return r;
}

template <class S>
LeafwiseForm<S>& LeafwiseForm<S>::operator+=(const LeafwiseForm& o) {
    check_same(o);
    for (const auto& [idx, f] : o.comps_)
        add(idx, f);
    return *this;
}

template <class S>
LeafwiseForm<S>& LeafwiseForm<S>::operator-=(const LeafwiseForm& o) {
    check_same(o);
    for (const auto& [idx, f] : o.comps_)
        add(idx, -f);
    return *this;
}

// ---------------------------------------------------------------- ambient forms

template <class S>
AmbientForm<S>::AmbientForm(int dims, int degree) : dims_(dims), degree_(degree) {
    if (dims < 1 || degree < 0)
        throw DimensionError("AmbientForm needs dims >= 1 and degree >= 0");
}

template <class S>
void AmbientForm<S>::check_index(const IndexTuple& idx) const {
    check_tuple(idx, degree_, dims_, "AmbientForm");
}

template <class S>
typename AmbientForm<S>::Poly AmbientForm<S>::component(const IndexTuple& idx) const {
    check_index(idx);
    auto it = comps_.find(idx);
    return it == comps_.end() ? Poly(dims_) : it->second;
}

template <class S>
void AmbientForm<S>::set(const IndexTuple& idx, Poly f) {
    check_index(idx);
    if (f.dims() != dims_)
        throw DimensionError("component lives on the wrong torus");
    if (f.is_zero())
        comps_.erase(idx);
    else
        comps_[idx] = std::move(f);
}

template <class S>
void AmbientForm<S>::add(const IndexTuple& idx, const Poly& f) {
    check_index(idx);
    if (f.dims() != dims_)
        throw DimensionError("component lives on the wrong torus");
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        if (!f.is_zero())
            comps_.emplace(idx, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero())
        comps_.erase(it);
}

template <class S>
double AmbientForm<S>::max_abs() const {
    double m = 0.0;
    for (const auto& [idx, f] : comps_)
        m = std::max(m, f.max_abs());
    return m;
}

// ---------------------------------------------------------------- calculus

template <class S>
LeafwiseForm<S> leafwise_d(const LeafwiseForm<S>& w) {
    const auto& F = w.foliation();
    LeafwiseForm<S> out(F, w.degree() + 1);
    if (w.degree() >= F.p())
        return out;
    std::vector<std::vector<S>> dirs;
    for (int i = 0; i < F.p(); ++i)
        dirs.push_back(F.template frame_direction<S>(i));
    IndexTuple T;
    for (const auto& [I, f] : w.components()) {
        for (int i = 0; i < F.p(); ++i) {
            if (std::binary_search(I.begin(), I.end(), i))
                continue;
            int pos = insert_index(I, i, T);
            auto Xf = frame_derivative<S>(f, std::span<const S>(dirs[static_cast<std::size_t>(i)]));
            out.add(T, pos % 2 == 0 ? Xf : -Xf);
        }
    }
    return out;
}

template <class S>
AmbientForm<S> exterior_derivative(const AmbientForm<S>& w) {
    const int n = w.dims();
    AmbientForm<S> out(n, w.degree() + 1);
    if (w.degree() >= n)
        return out;
    IndexTuple T;
    for (const auto& [I, f] : w.components()) {
        for (int j = 0; j < n; ++j) {
            if (std::binary_search(I.begin(), I.end(), j))
                continue;
            int pos = insert_index(I, j, T);
            std::vector<S> e(static_cast<std::size_t>(n), ScalarTraits<S>::zero());
            e[static_cast<std::size_t>(j)] = S(1);
            auto df = frame_derivative<S>(f, std::span<const S>(e));
            out.add(T, pos % 2 == 0 ? df : -df);
        }
    }
    return out;
}

template <class S>
LeafwiseForm<S> restrict_form(const AmbientForm<S>& w, const LinearFoliation& F) {
    if (w.dims() != F.ambient_dim())
        throw DimensionError("restrict: form and foliation live on different tori");
    const int k = w.degree();
    LeafwiseForm<S> out(F, k);
    if (k > F.p())
        return out;
    std::vector<std::vector<S>> pairing(static_cast<std::size_t>(F.ambient_dim()));
    for (int c = 0; c < F.ambient_dim(); ++c)
        for (int i = 0; i < F.p(); ++i)
            pairing[static_cast<std::size_t>(c)].push_back(F.template coframe_pairing<S>(c, i));
    const auto leaf_tuples = subsets(F.p(), k);
    for (const auto& [I, f] : w.components()) {
        for (const auto& J : leaf_tuples) {
            std::vector<std::vector<S>> m(static_cast<std::size_t>(k), std::vector<S>(static_cast<std::size_t>(k)));
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                        pairing[static_cast<std::size_t>(I[static_cast<std::size_t>(a)])]
                               [static_cast<std::size_t>(J[static_cast<std::size_t>(b)])];
            S det = determinant(std::move(m));
            if (!ScalarTraits<S>::is_zero(det))
                out.add(J, det * f);
        }
    }
    return out;
}

template <class S>
LeafwiseForm<S> iota_form(const std::vector<S>& xi, const LinearFoliation& F) {
    if (static_cast<int>(xi.size()) != F.p())
        throw DimensionError("iota_form: dual vector must have p entries");
    LeafwiseForm<S> out(F, 1);
    for (int i = 0; i < F.p(); ++i)
        out.set({i}, BasicTrigPoly<S>::constant(F.ambient_dim(), xi[static_cast<std::size_t>(i)]));
    return out;
}

template <class S>
LeafwiseForm<S> leafwise_volume(const LinearFoliation& F) {
    LeafwiseForm<S> out(F, F.p());
    out.set(subsets(F.p(), F.p()).front(), BasicTrigPoly<S>::constant(F.ambient_dim(), S(1)));
    return out;
}

// ---------------------------------------------------------------- solvers

template <class S>
std::variant<H1Solution<S>, SmallDivisorDiagnostic> solve_h1(const LeafwiseForm<S>& w, double tol) {
    using T = ScalarTraits<S>;
    if (w.degree() != 1)
        throw DimensionError("solve_h1 needs a leafwise 1-form");
    const auto& F = w.foliation();
    const int n = F.ambient_dim();

    // closedness: X_i ω_j − X_j ω_i = 0
    {
        auto dw = leafwise_d(w);
        double scale = 0.0;
        for (int i = 0; i < F.p(); ++i) {
            auto dir = F.template frame_direction<S>(i);
            for (const auto& [idx, f] : w.components())
                scale = std::max(scale, frame_derivative<S>(f, std::span<const S>(dir)).max_abs());
        }
        bool closed = T::exact ? dw.is_zero() : dw.max_abs() <= tol * std::max(1.0, scale);
        if (!closed)
            throw NotClosedError("solve_h1: form is not d_F-closed (max |d_F w| = " + std::to_string(dw.max_abs()) +
                                 ")");
    }

    const auto modes = support(w);
    SmallDivisorDiagnostic diag;
    diag.tol = tol;
    diag.reason = "near-resonant modes: max_i |delta_i| <= tol";
    std::vector<std::pair<Frequency, DivisorChoice>> plan;
    for (const auto& k : modes) {
        if (is_zero_mode(k))
            continue;
        auto ch = choose_divisor(F, k);
        if (ch.exact_zero)
            throw ObstructionError("solve_h1: mode is constant along leaves but carries a nonzero coefficient; the "
                                   "class is not in the image of the constant forms");
        if (ch.max_abs <= tol) {
            double coef = 0.0;
            for (const auto& [idx, f] : w.components())
                coef = std::max(coef, std::abs(T::to_complex(f.coeff(k))));
            diag.modes.push_back({k, ch.max_abs, coef, false});
            continue;
        }
        plan.emplace_back(k, ch);
    }
    if (!diag.modes.empty())
        return diag;

    H1Solution<S> sol;
    sol.g = BasicTrigPoly<S>(n);
    const Frequency zero(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < F.p(); ++i)
        sol.a.push_back(w.component({i}).coeff(zero));
    const S tpi = T::two_pi_i();
    for (const auto& [k, ch] : plan) {
        S num = w.component({ch.index}).coeff(k);
        if (T::is_zero(num))
            continue;
        S den = tpi * exact_divisor<S>(F, ch.index, k);
        sol.g.set(k, num * T::inverse(den));
    }

    auto rebuilt = iota_form<S>(sol.a, F) + leafwise_d(LeafwiseForm<S>::function(F, sol.g));
    sol.residual = form_residual(w - rebuilt);
    if (sol.residual > tol * std::max(1.0, w.max_abs()))
        throw DomainError("solve_h1: reconstruction residual " + std::to_string(sol.residual) + " exceeds tolerance");
    return sol;
}

template <class S>
std::variant<MinimizabilityWitness<S>, SmallDivisorDiagnostic> minimizability_witness(const LeafwiseForm<S>& w0,
                                                                                     double tol) {
    using T = ScalarTraits<S>;
    const auto& F = w0.foliation();
    const int p = F.p();
    const int n = F.ambient_dim();
    if (w0.degree() != p)
        throw DimensionError("minimizability_witness needs a leafwise top-degree form");
    const IndexTuple top = subsets(p, p).front();
    const auto f0 = w0.component(top);

    SmallDivisorDiagnostic diag;
    diag.tol = tol;
    MinimizabilityWitness<S> wit;
    wit.c = f0.mean();
    wit.eta = LeafwiseForm<S>(F, p - 1);
    const S tpi = T::two_pi_i();
    for (const auto& [k, coef] : f0.coeffs()) {
        if (is_zero_mode(k))
            continue;
        auto ch = choose_divisor(F, k);
        if (ch.exact_zero || ch.max_abs <= tol) {
            diag.modes.push_back({k, ch.max_abs, std::abs(T::to_complex(coef)), ch.exact_zero});
            continue;
        }
        IndexTuple omit;
        for (int j = 0; j < p; ++j)
            if (j != ch.index)
                omit.push_back(j);
        S v = coef * T::inverse(tpi * exact_divisor<S>(F, ch.index, k));
        if (ch.index % 2 == 1)
            v = -v;
        wit.eta.add(omit, BasicTrigPoly<S>::monomial(k, v));
    }
    if (!diag.modes.empty()) {
        bool exact = std::any_of(diag.modes.begin(), diag.modes.end(), [](const auto& m) { return m.exact_zero; });
        diag.reason = exact ? "resonant modes: every divisor vanishes exactly" : "near-resonant modes: max_i |delta_i| <= tol";
        return diag;
    }

    AmbientForm<S> eta_tilde(n, p - 1);
    for (const auto& [idx, f] : wit.eta.components())
        eta_tilde.set(idx, f);
    wit.omega = exterior_derivative(eta_tilde);
    if (!T::is_zero(wit.c))
        wit.omega.add(top, BasicTrigPoly<S>::constant(n, wit.c));

    auto domega = exterior_derivative(wit.omega);
    wit.closed_exactly = domega.is_zero();
    wit.closedness_residual = domega.is_zero() ? 0.0 : domega.max_abs();
    wit.restriction_residual = form_residual(restrict_form(wit.omega, F) - w0);
    return wit;
}

// ---------------------------------------------------------------- instantiations

#define LEAFCOH_INSTANTIATE(S)                                                                                      \
    template std::vector<S> LinearFoliation::frame_direction<S>(int) const;                                         \
    template S LinearFoliation::coframe_pairing<S>(int, int) const;                                                 \
    template class LeafwiseForm<S>;                                                                                 \
    template class AmbientForm<S>;                                                                                  \
    template LeafwiseForm<S> leafwise_d(const LeafwiseForm<S>&);                                                    \
    template AmbientForm<S> exterior_derivative(const AmbientForm<S>&);                                             \
    template LeafwiseForm<S> restrict_form(const AmbientForm<S>&, const LinearFoliation&);                          \
    template LeafwiseForm<S> iota_form(const std::vector<S>&, const LinearFoliation&);                              \
    template LeafwiseForm<S> leafwise_volume<S>(const LinearFoliation&);                                            \
    template std::variant<H1Solution<S>, SmallDivisorDiagnostic> solve_h1(const LeafwiseForm<S>&, double);          \
    template std::variant<MinimizabilityWitness<S>, SmallDivisorDiagnostic> minimizability_witness(                 \
        const LeafwiseForm<S>&, double);

LEAFCOH_INSTANTIATE(Complex)
LEAFCOH_INSTANTIATE(ExactScalar)

#undef LEAFCOH_INSTANTIATE

} // namespace leafcoh
