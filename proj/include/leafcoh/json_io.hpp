#pragma once

#include "leafcoh/diophantine.hpp"
#include "leafcoh/leafwise.hpp"
#include "leafcoh/liealg.hpp"
#include "leafcoh/skewflow.hpp"
#include "leafcoh/toral.hpp"
#include "leafcoh/trig_poly.hpp"

#include <json.hpp>

namespace leafcoh::io {

using json = nlohmann::ordered_json;

// Indices in JSON documents (form tuples, structure constants) are 1-based.

json to_json(const RealScalar& x);
/// Accepts {"kind": ...} objects, strings ("rational:7/3", "sqrt2", …) and bare numbers (float).
RealScalar real_from_json(const json& j);

json to_json(const Complex& z);
json to_json(const DiophantineCertificate& c);
json to_json(const ContinuedFraction& cf);
json to_json(const ExponentFit& fit);

json to_json(const TrigPoly& f);
TrigPoly trig_from_json(const json& j);

json to_json(const LinearFoliation& F);
LinearFoliation foliation_from_json(const json& j);
RealMatrix real_matrix_from_json(const json& j);

json to_json(const LeafwiseForm<Complex>& w);
LeafwiseForm<Complex> leafwise_from_json(const json& j, const LinearFoliation& F);
json to_json(const AmbientForm<Complex>& w);
AmbientForm<Complex> ambient_from_json(const json& j);

json to_json(const SmallDivisorDiagnostic& d);

IntMatrix int_matrix_from_json(const json& j);
json to_json(const ToralAutomorphism& A);
json to_json(const StableSlope& s);
json to_json(const CohomologyReport& r);

LieAlgebraSpec lie_from_json(const json& j);
json to_json(const LieAlgebraSpec& g);

json to_json(const KatokReport& r);

} // namespace leafcoh::io
