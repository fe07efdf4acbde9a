#pragma once

#include <json.hpp>

#include "hf.hpp"
#include "invariants.hpp"
#include "parse.hpp"
#include "ray.hpp"

namespace apolar {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline Json json_envelope(const std::string& command, const std::string& field) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["field"] = field;
    return j;
}

// parse "q" or "fp:P" and run fn with the corresponding field object
template <class Fn>
auto with_field(const std::string& desc, Fn&& fn) {
    if (desc == "q") return fn(QQ{});
    if (desc.rfind("fp:", 0) == 0) {
        unsigned long p = std::stoul(desc.substr(3));
        return fn(GFp(p));
    }
    throw PreconditionError("unknown field '" + desc + "'; expected q or fp:P");
}

template <class R>
Json poly_json(const R& F, const MPoly<R>& f, const std::string& var = "x") {
    return poly_to_string(F, f, var);
}

template <class R>
Json analysis_json(const R& F, const std::string& input, const MPoly<R>& f) {
    Json j = json_envelope("analyze", F.describe());
    j["input"] = input;
    j["variables"] = f.n;
    auto rep = hilbert_function(F, f);
    j["hilbert_function"] = rep.H;
    j["length"] = rep.length;
    j["socle_degree"] = rep.socle_degree;
    j["essential_variables"] = rep.essential_variables;
    if (rep.socle_degree >= 1) {
        auto prof = symmetric_decomposition(F, f);
        Json rows = Json::array();
        for (const auto& row : prof.delta) rows.push_back(row);
        j["symmetric_decomposition"] = rows;
        j["e_vector"] = prof.e;
        auto sf = check_standard_form(F, f);
        j["standard_form"] = sf.first;
        if (!sf.first) {
            j["standard_form_witness"] = {{"variable", sf.second.first}, {"power", sf.second.second}};
        }
    }
    j["is_complete_intersection"] = is_complete_intersection(F, f);
    auto u = unobstructedness_report(F, f);
    j["tangent_dimension"] = u.tangent_dim;
    j["unobstructed"] = u.is_unobstructed;
    return j;
}

template <class R>
Json raysum_json(const R& F, const std::string& input, const MPoly<R>& f, const MPoly<R>& del,
                 int d) {
    Json j = json_envelope("raysum", F.describe());
    j["input"] = input;
    auto chk = ray_sum_annihilator_check(F, f, del, d);
    j["ray_sum"] = poly_json(F, chk.g);
    j["annihilator_decomposition_verified"] = chk.equal;
    if (!chk.equal) j["mismatch"] = chk.mismatch;
    Json gens = Json::array();
    for (const auto& g : chk.j_gens) gens.push_back(poly_to_string(F, g, "a"));
    j["j_generators"] = gens;
    j["special_generator"] = poly_to_string(F, chk.special, "a");
    j["hilbert_function"] = hilbert_function(F, chk.g).H;
    return j;
}

template <class R>
Json flatness_json(const R& F, const FlatnessReport<R>& rep) {
    Json j;
    j["verdict"] = rep.flat ? "FLAT_CONSISTENT" : "NOT_FLAT";
    j["pedigree"] = rep.proven_flat ? "construction matches a proven-flat shape"
                                    : "Monte Carlo evidence only";
    j["length_at_0"] = rep.length0;
    Json s = Json::array();
    for (const auto& [lam, len] : rep.samples)
        s.push_back({{"lambda", F.to_string(lam)}, {"length", len}});
    j["samples"] = s;
    if (!rep.flat) j["witness_lambda"] = F.to_string(rep.witness);
    return j;
}

template <class R>
Json family_json(const R& F, const std::string& input, const MPoly<R>& f, const MPoly<R>& del,
                 int d, FamilyKind kind, int samples, std::uint64_t seed) {
    Json j = json_envelope("family", F.describe());
    j["input"] = input;
    j["kind"] = kind == FamilyKind::Lower ? "lower" : "upper";
    j["d"] = d;
    j["seed"] = seed;
    auto fam = build_ray_family(F, f, del, d, kind);
    Json gens = Json::array();
    for (const auto& [c0, c1] : fam.gens) {
        Json g;
        g["constant"] = poly_to_string(F, c0, "a");
        if (!c1.is_zero()) g["t_coefficient"] = poly_to_string(F, c1, "a");
        gens.push_back(g);
    }
    j["generators"] = gens;
    j["ray_order"] = fam.nu;
    j["flatness"] = flatness_json(F, flatness_probe(F, fam, samples, seed));
    // fiber structure at a sampled lambda when the hypotheses hold
    auto delf = contract(F, del, f);
    bool fiber_ok = !contract(F, del, delf).is_zero() ? false : true;
    if (fiber_ok && F.characteristic() != 0 &&
        static_cast<std::uint64_t>(d - 1) % F.characteristic() == 0)
        fiber_ok = false;
    if (fiber_ok && kind == FamilyKind::Lower) {
        Rng rng(seed + 1);
        auto lam = random_nonzero(F, rng);
        try {
            auto fib = fiber_structure_check(F, f, del, d, lam, seed + 2);
            Json t;
            t["lambda"] = F.to_string(lam);
            t["verified"] = fib.ok;
            t["total_length"] = fib.total_length;
            t["expected_length"] = fib.expected_length;
            Json pts = Json::array();
            for (const auto& [a, l] : fib.local)
                pts.push_back({{"ray_coordinate", F.to_string(a)}, {"local_length", l}});
            t["support"] = pts;
            if (!fib.ok) t["failure"] = fib.failure;
            j["fiber_structure"] = t;
        } catch (const RootAvailabilityError& e) {
            j["fiber_structure"] = {{"skipped", e.what()}};
        }
    }
    return j;
}

template <class R>
Json tangent_preserving_json(const R& F, const std::string& input, const MPoly<R>& f,
                             const MPoly<R>& del) {
    Json j = json_envelope("tangent-preserve", F.describe());
    j["input"] = input;
    auto rep = tangent_preserving_check(F, f, del);
    j["holds"] = rep.holds;
    j["necessity"] = {{"I", rep.need_I}, {"J^2", rep.need_J2}, {"(I^2:partial)", rep.need_colon}};
    return j;
}

} // namespace apolar
