#include "leafcoh/json_io.hpp"

#include "leafcoh/errors.hpp"

namespace leafcoh::io {

namespace {

json int_json(const Integer& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

Integer int_from(const json& j) {
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    throw InputError("expected an integer");
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("malformed ") + what);
    }
}

IndexTuple tuple_from(const json& j) {
    IndexTuple t;
    for (const auto& v : j) {
        int i = get_as<int>(v, "index");
        if (i < 1)
            throw InputError("form indices are 1-based");
        t.push_back(i - 1);
    }
    return t;
}

json tuple_json(const IndexTuple& t) {
    json a = json::array();
    for (int i : t)
        a.push_back(i + 1);
    return a;
}

} // namespace

json to_json(const RealScalar& x) {
    json j;
    if (!x.is_exact()) {
        j["kind"] = "float";
        j["value"] = x.to_double();
        return j;
    }
    const auto& q = x.exact();
    if (q.is_rational()) {
        j["kind"] = "rational";
        j["p"] = int_json(q.a);
        j["q"] = int_json(q.c);
    } else {
        j["kind"] = "quadratic";
        j["a"] = int_json(q.a);
        j["b"] = int_json(q.b);
        j["c"] = int_json(q.c);
        j["d"] = int_json(q.d);
    }
    j["text"] = x.to_string();
    return j;
}

RealScalar real_from_json(const json& j) {
    if (j.is_string())
        return RealScalar::parse(j.get<std::string>());
    if (j.is_number_integer())
        return RealScalar::rational(Integer(j.get<long long>()));
    if (j.is_number())
        return RealScalar::approximate(j.get<double>());
    const std::string kind = get_as<std::string>(field(j, "kind"), "scalar kind");
    if (kind == "float")
        return RealScalar::approximate(get_as<double>(field(j, "value"), "float value"));
    if (kind == "rational")
        return RealScalar::rational(int_from(field(j, "p")), j.contains("q") ? int_from(j.at("q")) : Integer(1));
    if (kind == "quadratic")
        return RealScalar::quadratic(int_from(field(j, "a")), int_from(field(j, "b")),
                                     j.contains("c") ? int_from(j.at("c")) : Integer(1), int_from(field(j, "d")));
    throw InputError("unknown scalar kind '" + kind + "'");
}

json to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const DiophantineCertificate& c) {
    return json{{"rho", c.rho}, {"margin", c.margin}, {"K", c.search_radius}, {"witness_k", c.witness_k},
                {"exact", c.exact}, {"statement", "margin over 0 < |k| <= K"}};
}

json to_json(const ContinuedFraction& cf) {
    json q = json::array(), conv = json::array();
    for (const auto& a : cf.quotients)
        q.push_back(int_json(a));
    for (const auto& [p, r] : cf.convergents)
        conv.push_back(json{{"p", int_json(p)}, {"q", int_json(r)}});
    json j{{"quotients", q}, {"convergents", conv}, {"terminated", cf.terminated}};
    if (cf.period)
        j["period"] = json{{"start", cf.period->first}, {"length", cf.period->second - cf.period->first}};
    return j;
}

json to_json(const ExponentFit& fit) {
    json rec = json::array();
    for (const auto& r : fit.records)
        rec.push_back(json{{"k", r.k}, {"norm_k", r.norm_k}, {"distance", r.distance}});
    json j{{"resonant", fit.resonant}};
    if (fit.resonant)
        j["resonant_k"] = fit.resonant_k;
    else
        j["rho_hat"] = fit.rho_hat;
    j["records"] = rec;
    return j;
}

json to_json(const TrigPoly& f) {
    json coeffs = json::array();
    for (const auto& [k, c] : f.coeffs())
        coeffs.push_back(json{{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    return json{{"dims", f.dims()}, {"coeffs", coeffs}};
}

TrigPoly trig_from_json(const json& j) {
    const int dims = get_as<int>(field(j, "dims"), "dims");
    TrigPoly f(dims);
    for (const auto& e : field(j, "coeffs")) {
        auto k = get_as<Frequency>(field(e, "k"), "frequency");
        double re = e.contains("re") ? get_as<double>(e.at("re"), "re") : 0.0;
        double im = e.contains("im") ? get_as<double>(e.at("im"), "im") : 0.0;
        f.add(k, Complex(re, im));
    }
    return f;
}

RealMatrix real_matrix_from_json(const json& j) {
    if (!j.is_array())
        throw InputError("matrix must be an array of rows");
    RealMatrix B;
    for (const auto& row : j) {
        if (!row.is_array())
            throw InputError("matrix rows must be arrays");
        std::vector<RealScalar> r;
        for (const auto& v : row)
            r.push_back(real_from_json(v));
        B.push_back(std::move(r));
    }
    return B;
}

json to_json(const LinearFoliation& F) {
    json B = json::array();
    for (const auto& row : F.slope()) {
        json r = json::array();
        for (const auto& v : row)
            r.push_back(v.to_string());
        B.push_back(r);
    }
    return json{{"p", F.p()}, {"q", F.q()}, {"B", B}};
}

LinearFoliation foliation_from_json(const json& j) {
    auto B = real_matrix_from_json(field(j, "B"));
    const int p = j.contains("p") ? get_as<int>(j.at("p"), "p") : static_cast<int>(B.size());
    const int q = j.contains("q") ? get_as<int>(j.at("q"), "q") : (B.empty() ? 0 : static_cast<int>(B.front().size()));
    if (q == 0 && B.empty())
        B.assign(static_cast<std::size_t>(p), {});
    return LinearFoliation(p, q, std::move(B));
}

json to_json(const LeafwiseForm<Complex>& w) {
    json comps = json::array();
    for (const auto& [idx, f] : w.components())
        comps.push_back(json{{"idx", tuple_json(idx)}, {"poly", to_json(f)}});
    return json{{"degree", w.degree()}, {"components", comps}};
}

LeafwiseForm<Complex> leafwise_from_json(const json& j, const LinearFoliation& F) {
    LeafwiseForm<Complex> w(F, get_as<int>(field(j, "degree"), "degree"));
    for (const auto& c : field(j, "components"))
        w.add(tuple_from(field(c, "idx")), trig_from_json(field(c, "poly")));
    return w;
}

json to_json(const AmbientForm<Complex>& w) {
    json comps = json::array();
    for (const auto& [idx, f] : w.components())
        comps.push_back(json{{"idx", tuple_json(idx)}, {"poly", to_json(f)}});
    return json{{"dims", w.dims()}, {"degree", w.degree()}, {"components", comps}};
}

AmbientForm<Complex> ambient_from_json(const json& j) {
    AmbientForm<Complex> w(get_as<int>(field(j, "dims"), "dims"), get_as<int>(field(j, "degree"), "degree"));
    for (const auto& c : field(j, "components"))
        w.add(tuple_from(field(c, "idx")), trig_from_json(field(c, "poly")));
    return w;
}

json to_json(const SmallDivisorDiagnostic& d) {
    json modes = json::array();
    for (const auto& m : d.modes)
        modes.push_back(json{{"k", m.mode},
                             {"max_divisor", m.max_divisor},
                             {"coefficient", m.coefficient},
                             {"exact_zero", m.exact_zero}});
    return json{{"diagnostic", "small_divisor"}, {"reason", d.reason}, {"tol", d.tol}, {"modes", modes}};
}

IntMatrix int_matrix_from_json(const json& j) {
    if (j.is_string())
        return int_matrix_from_json(json::parse(j.get<std::string>()));
    IntMatrix A;
    if (!j.is_array())
        throw InputError("matrix must be an array of integer rows");
    for (const auto& row : j)
        A.push_back(get_as<std::vector<long long>>(row, "integer matrix row"));
    return A;
}

json to_json(const ToralAutomorphism& A) {
    json spec = json::array();
    for (const auto& e : A.spectrum)
        spec.push_back(json{{"re", e.value.real()},
                            {"im", e.value.imag()},
                            {"radius", e.radius},
                            {"modulus_lo", e.modulus_lo},
                            {"modulus_hi", e.modulus_hi},
                            {"stable", e.stable}});
    json cp = json::array();
    for (const auto& c : A.char_poly)
        cp.push_back(int_json(c));
    return json{{"n", A.n},           {"matrix", A.matrix},          {"det", A.det},
                {"hyperbolic", true}, {"char_poly", cp},             {"spectrum", spec},
                {"stable_set", A.stable_set}, {"eps", A.eps}};
}

json to_json(const StableSlope& s) {
    std::vector<int> leaf, trans;
    for (int c : s.leaf_coords)
        leaf.push_back(c + 1);
    for (int c : s.transverse_coords)
        trans.push_back(c + 1);
    json j{{"p", s.p},
           {"q", s.q},
           {"leaf_coords", leaf},
           {"transverse_coords", trans},
           {"B", s.B},
           {"invariance_residual", s.invariance_residual}};
    if (s.exact_B) {
        json B = json::array();
        for (const auto& row : *s.exact_B) {
            json r = json::array();
            for (const auto& v : row)
                r.push_back(v.to_string());
            B.push_back(r);
        }
        j["B_exact"] = B;
    }
    return j;
}

json to_json(const CohomologyReport& r) {
    json j{{"dims", r.dims}, {"provenance", r.provenance}};
    if (!r.note.empty())
        j["note"] = r.note;
    if (!r.kernel_dims.empty()) {
        j["kernel_dims"] = r.kernel_dims;
        j["cokernel_dims"] = r.cokernel_dims;
        j["min_gap"] = r.min_gap;
        j["valid_up_to_extension"] = r.valid_up_to_extension;
    }
    if (r.compound_check)
        j["compound_check"] = *r.compound_check;
    return j;
}

LieAlgebraSpec lie_from_json(const json& j) {
    LieAlgebraSpec g;
    g.dim = get_as<int>(field(j, "dim"), "dim");
    if (g.dim < 0)
        throw InputError("dim must be >= 0");
    if (j.contains("labels"))
        g.labels = get_as<std::vector<std::string>>(j.at("labels"), "labels");
    std::map<std::array<int, 3>, Rational> given;
    if (j.contains("c")) {
        for (const auto& e : j.at("c")) {
            std::array<int, 3> ijk{get_as<int>(field(e, "i"), "i") - 1, get_as<int>(field(e, "j"), "j") - 1,
                                   get_as<int>(field(e, "k"), "k") - 1};
            for (int t : ijk)
                if (t < 0 || t >= g.dim)
                    throw DimensionError("structure constant index out of range (indices are 1-based)");
            const auto& v = field(e, "val");
            Rational val = v.is_string() ? parse_rational(v.get<std::string>())
                                         : (v.is_number_integer() ? Rational(v.get<long long>())
                                                                  : rational_from_double(get_as<double>(v, "val")));
            given[ijk] += val;
        }
    }
    // an entry listed for (i, j) alone implies c_{ji}^k = −c_{ij}^k
    for (const auto& [ijk, v] : given) {
        if (v != 0)
            g.c[ijk] = v;
        std::array<int, 3> rev{ijk[1], ijk[0], ijk[2]};
        if (!given.count(rev) && -v != 0)
            g.c[rev] = -v;
    }
    return g;
}

json to_json(const LieAlgebraSpec& g) {
    json c = json::array();
    for (const auto& [ijk, v] : g.c)
        c.push_back(json{{"i", ijk[0] + 1}, {"j", ijk[1] + 1}, {"k", ijk[2] + 1}, {"val", to_string(v)}});
    json j{{"dim", g.dim}, {"c", c}};
    if (!g.labels.empty())
        j["labels"] = g.labels;
    return j;
}

json to_json(const KatokReport& r) {
    json obs = json::array();
    for (const auto& o : r.obstructions) {
        json e{{"k", o.k}, {"r", o.r}, {"value_re", o.value.real()}, {"value_im", o.value.imag()}, {"modulus", o.modulus}};
        if (r.exact) {
            e["exact_zero"] = o.exact_zero;
            if (o.symbolic)
                e["symbolic"] = o.symbolic->to_string();
        }
        obs.push_back(e);
    }
    json j{{"exact", r.exact}, {"obstructions", obs}, {"mean", to_json(r.mean)}};
    j["circle_row"] = json{{"resonant_m", r.circle_resonant_m}, {"near_resonant_m", r.circle_near_resonant_m}};
    if (r.circle_solution)
        j["circle_row"]["g"] = to_json(*r.circle_solution);
    if (!r.rows_beyond_K.empty())
        j["rows_beyond_K"] = r.rows_beyond_K;
    return j;
}

} // namespace leafcoh::io
