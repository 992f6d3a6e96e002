#pragma once

// JSON forms of the library types. Big integers are decimal strings; residues
// mod p are plain numbers.

#include "json.hpp"

#include "hcpf/fppoly.hpp"
#include "hcpf/harness.hpp"
#include "hcpf/hcp.hpp"
#include "hcpf/predictor.hpp"
#include "hcpf/quadforms.hpp"

namespace hcpf {

using json = nlohmann::ordered_json;

json form_json(QuadForm const & f);
json int_poly_json(i64 D, IntPoly const & H);
json signature_json(FactorSignature const & s);
FactorSignature signature_from_json(json const & j);
json factorization_json(i64 D, u64 p, std::vector<FpFactor> const & factors);
json prediction_json(Prediction const & pr);
json verify_json(VerifyReport const & r);
json osidh_json(OsidhReport const & r);
json error_json(std::string const & code, std::string const & message);

} // namespace hcpf
