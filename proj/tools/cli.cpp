#include "cli.hpp"

#include "leafcoh/errors.hpp"
#include "leafcoh/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace leafcoh::cli {

using io::json;

namespace {

struct RunConfig {
    std::string command;
    std::optional<double> tol;
    std::string precision = "float";
    std::uint64_t seed = 0;
    std::string output = "json";
    std::string file;

    bool exact() const { return precision == "exact"; }
    double tol_or(double fallback) const { return tol.value_or(fallback); }
};

struct Report {
    Report() = default;
    Report(json d) : doc(std::move(d)) {}

    json doc;
    std::vector<std::string> header; // optional CSV table
    std::vector<std::vector<json>> rows;
    int status = 0;
};

using Handler = std::function<Report(const json&, const RunConfig&)>;

struct Param {
    std::string key;
    std::string help;
    bool flag = false;
};

struct Leaf {
    std::string group;
    std::string name;
    std::string operation;
    std::string help;
    std::vector<Param> params;
    Handler run;
};

// ------------------------------------------------------------------ input helpers

const json& need(const json& in, const std::string& key) {
    if (!in.contains(key))
        throw InputError("missing input '" + key + "' (pass --" + key + " or put it in --file)");
    return in.at(key);
}

template <class T>
T num(const json& in, const std::string& key, T fallback) {
    if (!in.contains(key))
        return fallback;
    const auto& v = in.at(key);
    if (v.is_number())
        return v.get<T>();
    if (v.is_string()) {
        try {
            return static_cast<T>(std::stod(v.get<std::string>()));
        } catch (const std::exception&) {
        }
    }
    throw InputError("input '" + key + "' must be a number");
}

bool flag(const json& in, const std::string& key) { return in.contains(key) && in.at(key).is_boolean() && in.at(key).get<bool>(); }

std::vector<RealScalar> real_vector(const json& v) {
    std::vector<RealScalar> out;
    if (v.is_array())
        for (const auto& e : v)
            out.push_back(io::real_from_json(e));
    else
        out.push_back(io::real_from_json(v));
    return out;
}

std::vector<double> double_vector(const json& v) {
    std::vector<double> out;
    for (const auto& r : real_vector(v))
        out.push_back(r.to_double());
    return out;
}

Complex complex_from(const json& v) {
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2)
        return {v[0].get<double>(), v[1].get<double>()};
    if (v.is_object())
        return {v.value("re", 0.0), v.value("im", 0.0)};
    throw InputError("complex values are numbers, [re, im] pairs or {re, im} objects");
}

LinearFoliation foliation(const json& in) {
    if (in.contains("foliation"))
        return io::foliation_from_json(in.at("foliation"));
    if (in.contains("B"))
        return LinearFoliation(io::real_matrix_from_json(in.at("B")));
    throw InputError("missing input 'foliation' (pass --foliation or --B)");
}

LieAlgebraSpec algebra(const json& v) {
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        if (name == "ga" || name == "affine")
            return LieAlgebraSpec::affine_line();
        if (name == "sl2")
            return LieAlgebraSpec::sl2();
        if (name.rfind("abelian:", 0) == 0)
            return LieAlgebraSpec::abelian(std::stoi(name.substr(8)));
        throw InputError("unknown algebra '" + name + "' (ga, sl2, abelian:<p> or a JSON object)");
    }
    return io::lie_from_json(v);
}

LeafwiseForm<ExactScalar> exact_form(const LeafwiseForm<Complex>& w) {
    LeafwiseForm<ExactScalar> r(w.foliation(), w.degree());
    for (const auto& [idx, f] : w.components())
        r.set(idx, to_exact(f));
    return r;
}

AmbientForm<Complex> complex_form(const AmbientForm<ExactScalar>& w) {
    AmbientForm<Complex> r(w.dims(), w.degree());
    for (const auto& [idx, f] : w.components())
        r.set(idx, f.to_complex());
    return r;
}

json complex_list(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v)
        a.push_back(io::to_json(z));
    return a;
}

Report diagnostic(const SmallDivisorDiagnostic& d) {
    Report r;
    r.doc = io::to_json(d);
    r.status = 2;
    return r;
}

// ------------------------------------------------------------------ dio

Report dio_cf(const json& in, const RunConfig&) {
    auto cf = continued_fraction(io::real_from_json(need(in, "x")), num<std::size_t>(in, "n", 10));
    Report r{io::to_json(cf)};
    r.header = {"i", "a", "p", "q"};
    for (std::size_t i = 0; i < cf.quotients.size(); ++i)
        r.rows.push_back({i, r.doc["quotients"][i], r.doc["convergents"][i]["p"], r.doc["convergents"][i]["q"]});
    return r;
}

Report dio_margin(const json& in, const RunConfig&) {
    const double rho = num(in, "rho", 1.0);
    const auto K = num<long long>(in, "K", 1000);
    if (in.contains("B"))
        return {io::to_json(matrix_margin(io::real_matrix_from_json(in.at("B")), rho, K))};
    return {io::to_json(scalar_margin(io::real_from_json(need(in, "x")), rho, K))};
}

Report dio_fit(const json& in, const RunConfig&) {
    const auto K = num<long long>(in, "K", 1000);
    auto fit = in.contains("B") ? exponent_fit(io::real_matrix_from_json(in.at("B")), K)
                                : exponent_fit(io::real_from_json(need(in, "x")), K);
    Report r{io::to_json(fit)};
    r.header = {"k", "norm_k", "distance"};
    for (const auto& rec : fit.records)
        r.rows.push_back({rec.k, rec.norm_k, rec.distance});
    return r;
}

// ------------------------------------------------------------------ fn

Report fn_eval(const json& in, const RunConfig&) {
    auto f = io::trig_from_json(need(in, "f"));
    auto x = double_vector(need(in, "x"));
    return {io::to_json(evaluate(f, x))};
}

Report fn_dft(const json& in, const RunConfig&) {
    const int N = num(in, "N", 0);
    Report r;
    if (flag(in, "inverse")) {
        auto f = io::trig_from_json(need(in, "f"));
        auto s = inverse_grid(f, N);
        r.doc = json{{"dims", f.dims()}, {"N", N}, {"samples", complex_list(s)}};
        r.header = {"index", "re", "im"};
        for (std::size_t i = 0; i < s.size(); ++i)
            r.rows.push_back({i, s[i].real(), s[i].imag()});
        return r;
    }
    std::vector<Complex> samples;
    for (const auto& v : need(in, "samples"))
        samples.push_back(complex_from(v));
    r.doc = io::to_json(grid_transform(samples, num(in, "dims", 1), N));
    return r;
}

Report fn_ddt(const json& in, const RunConfig&) {
    auto f = io::trig_from_json(need(in, "f"));
    auto v = double_vector(need(in, "v"));
    return {io::to_json(frame_derivative(f, std::span<const double>(v)))};
}

Report fn_decay(const json& in, const RunConfig&) {
    auto f = io::trig_from_json(need(in, "f"));
    auto rs = in.contains("r") ? double_vector(in.at("r")) : std::vector<double>{0.0, 1.0, 2.0};
    Report r;
    r.doc = json::array();
    r.header = {"r", "value", "k"};
    for (const auto& e : decay_report(f, rs)) {
        r.doc.push_back(json{{"r", e.r}, {"value", e.value}, {"k", e.k}});
        r.rows.push_back({e.r, e.value, e.k});
    }
    return r;
}

// ------------------------------------------------------------------ fol

Report fol_d(const json& in, const RunConfig& cfg) {
    auto F = foliation(in);
    auto w = io::leafwise_from_json(need(in, "form"), F);
    if (cfg.exact()) {
        auto dw = leafwise_d(exact_form(w));
        json j = io::to_json(dw.to_complex());
        j["exactly_zero"] = dw.is_zero();
        return {j};
    }
    return {io::to_json(leafwise_d(w))};
}

Report fol_restrict(const json& in, const RunConfig& cfg) {
    auto F = foliation(in);
    auto w = io::ambient_from_json(need(in, "ambient"));
    if (cfg.exact()) {
        AmbientForm<ExactScalar> we(w.dims(), w.degree());
        for (const auto& [idx, f] : w.components())
            we.set(idx, to_exact(f));
        return {io::to_json(restrict_form(we, F).to_complex())};
    }
    return {io::to_json(restrict_form(w, F))};
}

Report fol_iota(const json& in, const RunConfig&) {
    auto F = foliation(in);
    std::vector<Complex> xi;
    for (const auto& v : need(in, "xi"))
        xi.push_back(complex_from(v));
    return {io::to_json(iota_form(xi, F))};
}

Report fol_h1(const json& in, const RunConfig& cfg) {
    auto F = foliation(in);
    auto w = io::leafwise_from_json(need(in, "form"), F);
    const double tol = cfg.tol_or(1e-9);
    auto emit = [](const auto& s) {
        std::vector<Complex> a;
        for (const auto& ai : s.a)
            a.push_back(ScalarTraits<std::decay_t<decltype(ai)>>::to_complex(ai));
        return Report{json{{"a", complex_list(a)}, {"g", io::to_json(s.g.to_complex())}, {"residual", s.residual}}};
    };
    if (cfg.exact()) {
        auto res = solve_h1(exact_form(w), tol);
        if (auto* d = std::get_if<SmallDivisorDiagnostic>(&res))
            return diagnostic(*d);
        return emit(std::get<H1Solution<ExactScalar>>(res));
    }
    auto res = solve_h1(w, tol);
    if (auto* d = std::get_if<SmallDivisorDiagnostic>(&res))
        return diagnostic(*d);
    return emit(std::get<H1Solution<Complex>>(res));
}

Report fol_minwitness(const json& in, const RunConfig& cfg) {
    auto F = foliation(in);
    auto w = io::leafwise_from_json(need(in, "form"), F);
    const double tol = cfg.tol_or(1e-9);
    auto emit = [](const json& c, const json& eta, const json& omega, const auto& s) {
        return Report{json{{"c", c},
                           {"eta", eta},
                           {"omega", omega},
                           {"restriction_residual", s.restriction_residual},
                           {"closedness_residual", s.closedness_residual},
                           {"closed_exactly", s.closed_exactly}}};
    };
    if (cfg.exact()) {
        auto res = minimizability_witness(exact_form(w), tol);
        if (auto* d = std::get_if<SmallDivisorDiagnostic>(&res))
            return diagnostic(*d);
        const auto& s = std::get<MinimizabilityWitness<ExactScalar>>(res);
        return emit(io::to_json(s.c.to_complex()), io::to_json(s.eta.to_complex()), io::to_json(complex_form(s.omega)),
                    s);
    }
    auto res = minimizability_witness(w, tol);
    if (auto* d = std::get_if<SmallDivisorDiagnostic>(&res))
        return diagnostic(*d);
    const auto& s = std::get<MinimizabilityWitness<Complex>>(res);
    return emit(io::to_json(s.c), io::to_json(s.eta), io::to_json(s.omega), s);
}

// ------------------------------------------------------------------ toral

IntMatrix matrix_input(const json& in) { return io::int_matrix_from_json(need(in, "matrix")); }

Report toral_certify(const json& in, const RunConfig& cfg) {
    return {io::to_json(certify_hyperbolic(matrix_input(in), num(in, "eps", cfg.tol_or(1e-9))))};
}

Report toral_slope(const json& in, const RunConfig& cfg) {
    return {io::to_json(stable_slope_matrix(certify_hyperbolic(matrix_input(in), num(in, "eps", cfg.tol_or(1e-9)))))};
}

Report toral_wang(const json& in, const RunConfig& cfg) {
    const double tol = cfg.tol_or(1e-8);
    if (in.contains("stable_eigenvalues")) {
        std::vector<std::complex<double>> ev;
        for (const auto& v : in.at("stable_eigenvalues"))
            ev.push_back(complex_from(v));
        return {io::to_json(wang_from_eigenvalues(ev, tol))};
    }
    return {io::to_json(wang_cohomology(certify_hyperbolic(matrix_input(in), num(in, "eps", 1e-9)), tol))};
}

Report toral_kunneth(const json& in, const RunConfig&) {
    auto read = [&](const char* key) {
        try {
            return need(in, key).get<std::vector<long long>>();
        } catch (const nlohmann::json::exception&) {
            throw InputError(std::string("input '") + key + "' must be an integer array");
        }
    };
    return {json{{"dims", kunneth_dims(read("a"), read("b"))}, {"provenance", "kunneth"}}};
}

Report toral_irred(const json& in, const RunConfig&) {
    std::vector<Integer> poly;
    if (in.contains("poly")) {
        for (const auto& c : in.at("poly"))
            poly.push_back(c.is_string() ? parse_integer(c.get<std::string>()) : Integer(c.get<long long>()));
    } else {
        poly = characteristic_polynomial(matrix_input(in));
    }
    json cp = json::array();
    for (const auto& c : poly)
        cp.push_back(c.str());
    bool irreducible = polynomial_irreducible(poly);
    return {json{{"char_poly", cp}, {"irreducible", irreducible}}};
}

// ------------------------------------------------------------------ flow

Report cohom(const std::variant<CohomSolution, SmallDivisorDiagnostic>& res) {
    if (auto* d = std::get_if<SmallDivisorDiagnostic>(&res))
        return diagnostic(*d);
    const auto& s = std::get<CohomSolution>(res);
    return {json{{"g", io::to_json(s.g)}, {"c", io::to_json(s.c)}, {"residual", s.residual}}};
}

Report flow_circle(const json& in, const RunConfig& cfg) {
    return cohom(circle_cohom_solve(io::trig_from_json(need(in, "f")), io::real_from_json(need(in, "alpha")),
                                    cfg.tol_or(1e-9)));
}

Report flow_solve(const json& in, const RunConfig& cfg) {
    return cohom(flow_cohom_solve(io::trig_from_json(need(in, "f")), KroneckerFlowSpec(real_vector(need(in, "alpha"))),
                                  cfg.tol_or(1e-9)));
}

Report flow_section(const json& in, const RunConfig& cfg) {
    auto res = straighten_cross_section(io::trig_from_json(need(in, "f")), io::real_from_json(need(in, "alpha")),
                                        cfg.tol_or(1e-9), num(in, "samples", 32), num(in, "step", 1e-4));
    if (auto* d = std::get_if<SmallDivisorDiagnostic>(&res))
        return diagnostic(*d);
    const auto& v = std::get<SectionVerification>(res);
    return {json{{"g", io::to_json(v.solution.g)},
                 {"c", io::to_json(v.solution.c)},
                 {"residual", v.solution.residual},
                 {"max_deviation", v.max_deviation},
                 {"samples", v.samples},
                 {"step", v.step}}};
}

Report flow_density(const json& in, const RunConfig&) {
    return {io::to_json(
        reparam_invariant_density(io::trig_from_json(need(in, "f")), KroneckerFlowSpec(real_vector(need(in, "alpha")))))};
}

Report flow_birkhoff(const json& in, const RunConfig& cfg) {
    auto f = io::trig_from_json(need(in, "f"));
    auto alpha = real_vector(need(in, "alpha"));
    if (static_cast<int>(alpha.size()) != f.dims())
        throw DimensionError("alpha must have one entry per torus dimension");
    std::vector<double> x0;
    if (in.contains("x0")) {
        x0 = double_vector(in.at("x0"));
    } else {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < f.dims(); ++i)
            x0.push_back(u(rng));
    }
    const int points = num(in, "points", 10);
    const bool map = flag(in, "map");
    auto res = map ? birkhoff_average_map(alpha, f, x0, num<long long>(in, "N", 1000), points)
                   : birkhoff_average(KroneckerFlowSpec(alpha), f, x0, num(in, "T", 1000.0), points);
    Report r;
    json curve = json::array();
    for (const auto& [t, a] : res.curve)
        curve.push_back(json{{map ? "N" : "T", t}, {"re", a.real()}, {"im", a.imag()}});
    r.doc = json{{"average", io::to_json(res.average)}, {"bound", res.bound}, {"x0", x0}, {"curve", curve}};
    const int traj = num(in, "trajectory", 0);
    if (traj > 0) {
        // sampled orbit on [0, T] (flow) or the first `traj` iterates (map)
        const double T = map ? 0.0 : num(in, "T", 1000.0);
        r.header = {"t"};
        for (int i = 0; i < f.dims(); ++i)
            r.header.push_back("x" + std::to_string(i + 1));
        json pts = json::array();
        for (int s = 0; s < traj; ++s) {
            const double t = map ? s : (traj == 1 ? 0.0 : T * s / (traj - 1));
            std::vector<json> row{t};
            json p = json::array();
            for (int i = 0; i < f.dims(); ++i) {
                double x = x0[static_cast<std::size_t>(i)] +
                           std::fmod(alpha[static_cast<std::size_t>(i)].to_double() * t, 1.0);
                x -= std::floor(x);
                row.push_back(x);
                p.push_back(x);
            }
            r.rows.push_back(std::move(row));
            pts.push_back(json{{"t", t}, {"x", p}});
        }
        r.doc["trajectory"] = pts;
    } else {
        r.header = {map ? "N" : "T", "re", "im"};
        for (const auto& [t, a] : res.curve)
            r.rows.push_back({t, a.real(), a.imag()});
    }
    return r;
}

// ------------------------------------------------------------------ skew

Report skew_obstructions(const json& in, const RunConfig& cfg) {
    auto f = io::trig_from_json(need(in, "f"));
    auto lambda = io::real_from_json(need(in, "lambda"));
    const int K = num(in, "K", 8);
    const double tol = cfg.tol_or(1e-9);
    auto rep = cfg.exact() ? katok_obstructions(to_phase_coefficients(f, lambda), lambda, K, tol)
                           : katok_obstructions(f, lambda, K, tol);
    Report r{io::to_json(rep)};
    r.header = {"k", "r", "value_re", "value_im", "modulus"};
    for (const auto& o : rep.obstructions)
        r.rows.push_back({o.k, o.r, o.value.real(), o.value.imag(), o.modulus});
    return r;
}

// ------------------------------------------------------------------ lie

Report lie_validate(const json& in, const RunConfig&) {
    auto rep = validate(algebra(need(in, "algebra")));
    json j{{"ok", rep.ok}};
    if (!rep.ok) {
        j["violation"] = rep.violation;
        j["where"] = {rep.where[0] + 1, rep.where[1] + 1, rep.where[2] + 1};
        j["message"] = rep.message;
    }
    return {j};
}

Report lie_ce(const json& in, const RunConfig&) {
    auto h = ce_cohomology(algebra(need(in, "algebra")));
    json basis = json::array();
    for (const auto& v : h.h1_basis) {
        json b = json::array();
        for (const auto& x : v)
            b.push_back(to_string(x));
        basis.push_back(b);
    }
    Report r{json{{"dims", h.dims}, {"ranks", h.ranks}, {"h1_basis", basis}, {"d_squared_zero", h.d_squared_zero}}};
    r.header = {"k", "dim"};
    for (std::size_t k = 0; k < h.dims.size(); ++k)
        r.rows.push_back({k, h.dims[k]});
    return r;
}

Report lie_mc(const json& in, const RunConfig& cfg) {
    auto g = algebra(need(in, "algebra"));
    auto F = foliation(in);
    LieValuedForm<Complex> w;
    for (const auto& c : need(in, "omega"))
        w.push_back(io::leafwise_from_json(c, F));
    json res = json::array();
    auto emit = [&](const auto& mc) {
        for (const auto& r : mc.residual)
            res.push_back(io::to_json(r.to_complex()));
        return Report{json{{"residual", res}, {"max_abs", mc.max_abs}, {"exactly_zero", mc.exactly_zero}}};
    };
    if (cfg.exact()) {
        LieValuedForm<ExactScalar> we;
        for (const auto& c : w)
            we.push_back(exact_form(c));
        return emit(maurer_cartan_residual(we, g));
    }
    return emit(maurer_cartan_residual(w, g));
}

const std::vector<Leaf>& leaves() {
    static const std::vector<Leaf> table = {
        {"dio", "cf", "continued_fraction", "partial quotients and convergents",
         {{"x", "real scalar"}, {"n", "number of quotients (default 10)"}}, dio_cf},
        {"dio", "margin", "scalar_margin / matrix_margin", "Diophantine margin min ‖k·x‖|k|^ρ over 0<|k|≤K",
         {{"x", "real scalar"}, {"B", "slope matrix (instead of --x)"}, {"rho", "exponent"}, {"K", "search radius"}},
         dio_margin},
        {"dio", "fit", "exponent_fit", "record minima and fitted exponent",
         {{"x", "real scalar"}, {"B", "slope matrix (instead of --x)"}, {"K", "search radius"}}, dio_fit},
        {"fn", "eval", "evaluate", "evaluate a trig polynomial", {{"f", "TrigPoly"}, {"x", "point"}}, fn_eval},
        {"fn", "dft", "grid_transform / inverse_grid", "grid samples to coefficients (or back with --inverse)",
         {{"samples", "values on the N^dims grid"}, {"dims", "torus dimension"}, {"N", "grid size"},
          {"f", "TrigPoly (with --inverse)"}, {"inverse", "sample f on the grid", true}},
         fn_dft},
        {"fn", "ddt", "frame_derivative", "directional derivative along a constant field",
         {{"f", "TrigPoly"}, {"v", "direction"}}, fn_ddt},
        {"fn", "decay", "decay_report", "sup_k |f̂_k||k|^r", {{"f", "TrigPoly"}, {"r", "exponents"}}, fn_decay},
        {"fol", "d", "leafwise_d", "leafwise exterior derivative",
         {{"foliation", "foliation"}, {"B", "slope matrix"}, {"form", "leafwise form"}}, fol_d},
        {"fol", "restrict", "restrict_form", "restrict an ambient form to the leaves",
         {{"foliation", "foliation"}, {"B", "slope matrix"}, {"ambient", "ambient form"}}, fol_restrict},
        {"fol", "iota", "iota_form", "constant leafwise 1-form of a dual vector",
         {{"foliation", "foliation"}, {"B", "slope matrix"}, {"xi", "dual vector"}}, fol_iota},
        {"fol", "h1", "solve_h1", "split a closed leafwise 1-form into class plus exact part",
         {{"foliation", "foliation"}, {"B", "slope matrix"}, {"form", "leafwise 1-form"}}, fol_h1},
        {"fol", "minwitness", "minimizability_witness", "closed ambient extension of a leafwise top form",
         {{"foliation", "foliation"}, {"B", "slope matrix"}, {"form", "leafwise top form"}}, fol_minwitness},
        {"toral", "certify", "certify_hyperbolic", "certified hyperbolicity of an integer matrix",
         {{"matrix", "integer matrix"}, {"eps", "unit-circle exclusion width"}}, toral_certify},
        {"toral", "slope", "stable_slope_matrix", "stable foliation as a slope matrix",
         {{"matrix", "integer matrix"}, {"eps", "unit-circle exclusion width"}}, toral_slope},
        {"toral", "wang", "wang_cohomology", "leafwise cohomology of the weak stable foliation",
         {{"matrix", "integer matrix"}, {"eps", "unit-circle exclusion width"},
          {"stable_eigenvalues", "synthetic stable spectrum instead of --matrix"}},
         toral_wang},
        {"toral", "kunneth", "kunneth_dims", "dimensions of a product foliation",
         {{"a", "dims of the first factor"}, {"b", "dims of the second factor"}}, toral_kunneth},
        {"toral", "irred", "char_poly_irreducible", "irreducibility of the characteristic polynomial",
         {{"matrix", "integer matrix"}, {"poly", "monic coefficients, constant term first (instead of --matrix)"}},
         toral_irred},
        {"flow", "solve-circle", "circle_cohom_solve", "f = g∘R_α − g + c on the circle",
         {{"f", "TrigPoly on T^1"}, {"alpha", "rotation number"}}, flow_circle},
        {"flow", "solve-flow", "flow_cohom_solve", "f = Xg + c for a Kronecker flow",
         {{"f", "TrigPoly"}, {"alpha", "flow vector"}}, flow_solve},
        {"flow", "section", "straighten_cross_section", "straighten a suspension cross-section",
         {{"f", "positive return time on T^1"}, {"alpha", "rotation number"}, {"samples", "verification samples"},
          {"step", "RK4 step"}},
         flow_section},
        {"flow", "density", "reparam_invariant_density", "invariant density of a reparametrized flow",
         {{"f", "positive TrigPoly"}, {"alpha", "flow vector"}}, flow_density},
        {"flow", "birkhoff", "birkhoff_average / birkhoff_average_map", "Birkhoff averages along a flow or rotation",
         {{"f", "TrigPoly"}, {"alpha", "flow vector"}, {"x0", "initial point (default: drawn from --seed)"},
          {"T", "flow time"}, {"N", "iterations (with --map)"}, {"points", "curve points"},
          {"trajectory", "dump this many orbit points"}, {"map", "use the rotation x ↦ x + α", true}},
         flow_birkhoff},
        {"skew", "obstructions", "katok_obstructions", "obstruction functionals for F_λ(x,y) = (x+y, y+λ)",
         {{"f", "TrigPoly on T^2"}, {"lambda", "rotation number"}, {"K", "largest |k|"}}, skew_obstructions},
        {"lie", "validate", "validate", "antisymmetry and Jacobi check", {{"algebra", "Lie algebra"}}, lie_validate},
        {"lie", "ce", "ce_cohomology", "Chevalley–Eilenberg cohomology", {{"algebra", "Lie algebra"}}, lie_ce},
        {"lie", "mc", "maurer_cartan_residual", "Maurer–Cartan residual of a Lie-valued leafwise 1-form",
         {{"algebra", "Lie algebra"}, {"foliation", "foliation"}, {"B", "slope matrix"},
          {"omega", "one leafwise 1-form per basis vector"}},
         lie_mc},
    };
    return table;
}

// ------------------------------------------------------------------ output

std::string csv_cell(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ";" : "") + csv_cell(v[i]);
        return s;
    }
    return v.dump();
}

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, json>>& out) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items())
            flatten(x, path.empty() ? k : path + "." + k, out);
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < v.size(); ++i)
            flatten(v[i], path + "." + std::to_string(i), out);
    } else {
        out.emplace_back(path, v);
    }
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "pretty") {
        out << r.doc.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        if (!r.header.empty() && r.status == 0) {
            for (std::size_t i = 0; i < r.header.size(); ++i)
                out << (i ? "," : "") << r.header[i];
            out << '\n';
            for (const auto& row : r.rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    out << (i ? "," : "") << csv_cell(row[i]);
                out << '\n';
            }
            return;
        }
        std::vector<std::pair<std::string, json>> flat;
        flatten(r.doc, "", flat);
        out << "key,value\n";
        for (const auto& [k, v] : flat)
            out << k << ',' << csv_cell(v) << '\n';
        return;
    }
    out << r.doc.dump() << '\n';
}

json parse_inline(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        return text;
    }
}

json read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw InputError("cannot open input file '" + path + "'");
    try {
        return json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("input file is not valid JSON: " + std::string(e.what()));
    }
}

} // namespace

std::vector<std::pair<std::string, std::string>> dispatch_table() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& l : leaves())
        out.emplace_back(l.group + " " + l.name, l.operation);
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"leafcoh: cohomological equations, leafwise cohomology and rigidity witnesses"};
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    double tol = 0.0;
    auto* tol_opt = app.add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--precision", cfg.precision, "float or exact")->check(CLI::IsMember({"float", "exact"}));
    app.add_option("--seed", cfg.seed, "seed for randomized inputs");
    app.add_option("--output", cfg.output, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--file", cfg.file, "JSON object supplying the command's inputs");

    std::map<std::string, CLI::App*> groups;
    const auto& table = leaves();
    std::deque<std::map<std::string, std::string>> values(table.size());
    std::deque<std::map<std::string, bool>> flags(table.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& l = table[i];
        auto& g = groups[l.group];
        if (!g) {
            g = app.add_subcommand(l.group, l.group + " commands");
            g->require_subcommand(1);
        }
        auto* s = g->add_subcommand(l.name, l.help);
        for (const auto& p : l.params) {
            if (p.flag)
                s->add_flag("--" + p.key, flags[i][p.key], p.help);
            else
                s->add_option("--" + p.key, values[i][p.key], p.help);
        }
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        err << o.str() << e2.str();
        return code == 0 ? 0 : 1;
    }
    if (*tol_opt)
        cfg.tol = tol;

    std::size_t which = table.size();
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed())
            which = i;
    if (which == table.size()) {
        err << "no command given\n";
        return 1;
    }
    const auto& leaf = table[which];
    cfg.command = leaf.group + " " + leaf.name;

    try {
        json in = json::object();
        if (!cfg.file.empty()) {
            in = read_file(cfg.file);
            if (!in.is_object())
                throw InputError("--file must contain a JSON object");
        }
        for (const auto& p : leaf.params) {
            if (p.flag) {
                if (flags[which][p.key])
                    in[p.key] = true;
            } else if (subs[which]->count("--" + p.key)) {
                in[p.key] = parse_inline(values[which][p.key]);
            }
        }
        Report r = leaf.run(in, cfg);
        emit(r, cfg.output, out);
        if (r.status == 2)
            err << cfg.command << ": small divisor below tolerance; no solution returned\n";
        return r.status;
    } catch (const DomainError& e) {
        json j{{"error", "domain"}, {"command", cfg.command}, {"message", e.what()}};
        out << (cfg.output == "pretty" ? j.dump(2) : j.dump()) << '\n';
        err << cfg.command << ": " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        err << cfg.command << ": " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << cfg.command << ": malformed input: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << cfg.command << ": " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        err << cfg.command << ": " << e.what() << '\n';
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"leafcoh"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace leafcoh::cli
