#include "hcpf/serialize.hpp"

#include "hcpf/errors.hpp"

namespace hcpf {

namespace {

template <class T>
void put_optional(json & j, char const * key, std::optional<T> const & v)
{
    if (v)
        j[key] = *v;
}

json roots_json(std::vector<ObservedRoot> const & roots)
{
    json out = json::array();
    for (auto const & r : roots)
        out.push_back({{"u", r.value.u}, {"v", r.value.v}, {"multiplicity", r.multiplicity},
                       {"tag", std::string(to_string(r.tag))}});
    return out;
}

json factors_json(std::vector<FpFactor> const & factors)
{
    json out = json::array();
    for (auto const & f : factors)
        out.push_back({{"coeffs", f.factor.coeffs()}, {"degree", f.factor.degree()}, {"multiplicity", f.multiplicity}});
    return out;
}

} // namespace

json form_json(QuadForm const & f)
{
    return json::array({f.a, f.b, f.c});
}

json int_poly_json(i64 D, IntPoly const & H)
{
    json coeffs = json::array();
    for (auto const & c : H.coeffs)
        coeffs.push_back(c.get_str());
    return {{"D", D}, {"h", H.degree()}, {"coeffs", coeffs}};
}

json signature_json(FactorSignature const & s)
{
    json out = json::array();
    for (auto const & t : s.triples())
        out.push_back(json::array({t[0], t[1], t[2]}));
    return out;
}

FactorSignature signature_from_json(json const & j)
{
    FactorSignature s;
    for (auto const & t : j) {
        if (!t.is_array() || t.size() != 3)
            throw InvalidArgument("signature entries are [degree, multiplicity, count]");
        s.add(t[0].get<int>(), t[1].get<int>(), t[2].get<i64>());
    }
    return s;
}

json factorization_json(i64 D, u64 p, std::vector<FpFactor> const & factors)
{
    std::vector<ObservedRoot> roots;
    for (auto const & [root, mult] : roots_in_fp2(factors, p))
        roots.push_back({root, mult, tag_root(root, p)});
    Fp2Field const F(p);
    FactorSignature const sig = signature(factors);
    return {{"D", D},
            {"p", p},
            {"h", sig.total_degree()},
            {"factors", factors_json(factors)},
            {"signature", signature_json(sig)},
            {"roots", roots_json(roots)},
            {"fp2_model", {{"c0", F.c0()}, {"c1", F.c1()}}}};
}

json prediction_json(Prediction const & pr)
{
    json params = {{"h", pr.params.h}, {"mu", pr.params.mu}};
    put_optional(params, "t", pr.params.t);
    put_optional(params, "s", pr.params.s);
    put_optional(params, "g", pr.params.g);
    put_optional(params, "lambda", pr.params.lambda);
    put_optional(params, "D_p", pr.params.D_p);
    put_optional(params, "h_p_part", pr.params.h_p_part);
    put_optional(params, "i_p", pr.params.i_p);

    json shape = json::array();
    for (auto const & ps : pr.pOM_shape)
        shape.push_back(json::array({ps.e, ps.deg, ps.count}));

    json structures = json::array();
    for (auto const & s : pr.admissible_structures) {
        json roots = json::array();
        for (auto const & r : s.roots)
            roots.push_back(
                {{"multiplicity", r.multiplicity}, {"tag", std::string(to_string(r.tag))}, {"in_Fp", r.in_Fp}});
        structures.push_back({{"id", s.id}, {"roots", roots}, {"description", s.description}});
    }
    json sigs = json::array();
    for (auto const & s : pr.admissible_signatures)
        sigs.push_back(signature_json(s));

    return {{"D", pr.D},
            {"p", pr.p},
            {"label", std::string(to_string(pr.label))},
            {"signature", pr.signature ? signature_json(*pr.signature) : json(nullptr)},
            {"pOM_shape", shape},
            {"params", params},
            {"admissible_structures", structures},
            {"admissible_signatures", sigs}};
}

json verify_json(VerifyReport const & r)
{
    json out = {{"D", r.D},
                {"p", r.p},
                {"h", r.h},
                {"label", std::string(to_string(r.label))},
                {"verdict", std::string(to_string(r.verdict))},
                {"observed", signature_json(r.observed)},
                {"factors", factors_json(r.factors)},
                {"roots", roots_json(r.roots)},
                {"prediction", prediction_json(r.prediction)}};
    out["i_p"] = r.i_p ? json(*r.i_p) : json(nullptr);
    out["matched_structure"] = r.matched_structure ? json(*r.matched_structure) : json(nullptr);
    out["corollary_agrees"] = r.corollary_agrees ? json(*r.corollary_agrees) : json(nullptr);
    if (!r.detail.empty())
        out["detail"] = r.detail;
    return out;
}

json osidh_json(OsidhReport const & r)
{
    json out = {{"D0", r.D0},
                {"ell", r.ell},
                {"n", r.n},
                {"p", r.p},
                {"D_n", r.Dn},
                {"h_Dn", r.h_Dn},
                {"key_space", r.h_Dn},
                {"bound_ln", r.bound_ln},
                {"bound_log2", r.bound_log2},
                {"bound_holds", r.bound_holds},
                {"mu_n", r.mu_n},
                {"valid", r.valid},
                {"p_nonsplit", r.p_nonsplit}};
    out["fp_roots_expected"] = r.fp_roots_expected ? json(*r.fp_roots_expected) : json(nullptr);
    if (r.observed) {
        out["observed"] = signature_json(*r.observed);
        out["fp_roots_observed"] = *r.fp_roots_observed;
        out["fp2_roots_observed"] = *r.fp2_roots_observed;
        out["galois_orbits_observed"] = *r.galois_orbits_observed;
    }
    if (r.error)
        out["error"] = {{"code", *r.error}, {"message", "p must exceed |D_n| for the key space count"}};
    return out;
}

json error_json(std::string const & code, std::string const & message)
{
    return {{"error", {{"code", code}, {"message", message}}}};
}

} // namespace hcpf
