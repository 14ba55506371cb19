#pragma once

#include <json.hpp>

#include "gvfp.hpp"
#include "intktheory.hpp"
#include "manifold.hpp"
#include "splitting.hpp"
#include "tuple.hpp"

namespace ppspace {

/// Insertion-ordered JSON so serialized output is byte-stable and keys
/// appear in the documented order.
using json = nlohmann::ordered_json;

inline json to_json(const Bound& b) {
    json j;
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    j["exact"] = b.exact;
    j["provenance"] = b.provenance;
    return j;
}

inline Bound bound_from_json(const json& j) {
    Bound b;
    b.lower = j.at("lower").get<std::int64_t>();
    b.upper = j.at("upper").get<std::int64_t>();
    b.exact = j.at("exact").get<bool>();
    b.provenance = j.at("provenance").get<std::vector<std::string>>();
    return b;
}

/// Torsion orders are 2^e; exponents above machine range serialize as the
/// string "2^e" instead of a number.
inline json to_json(const AbelianGroup& g) {
    json j;
    j["free_rank"] = g.free_rank;
    json torsion = json::array();
    for (std::uint64_t e : g.torsion_exponents) {
        if (e <= 62) torsion.push_back(std::uint64_t{1} << e);
        else torsion.push_back("2^" + std::to_string(e));
    }
    j["torsion"] = std::move(torsion);
    return j;
}

inline AbelianGroup group_from_json(const json& j) {
    AbelianGroup g;
    g.free_rank = j.at("free_rank").get<std::uint64_t>();
    for (const auto& item : j.at("torsion")) {
        if (item.is_string()) {
            const std::string s = item.get<std::string>();
            if (s.rfind("2^", 0) != 0)
                throw std::invalid_argument("torsion entry must be a power of 2");
            g.add_torsion(std::stoull(s.substr(2)));
        } else {
            const std::uint64_t order = item.get<std::uint64_t>();
            if (order < 2 || (order & (order - 1)) != 0)
                throw std::invalid_argument("torsion entry must be a power of 2");
            g.add_torsion(static_cast<std::uint64_t>(std::countr_zero(order)));
        }
    }
    g.normalize();
    return g;
}

inline json to_json(const StuntedSummand& s) {
    json j;
    j["u_indices"] = s.u_positions;
    j["desuspension"] = s.desuspension;
    j["bottom"] = s.bottom;
    j["top"] = s.top;
    return j;
}

inline json to_json(const InvariantReport& r) {
    json j;
    j["tuple"] = r.tuple.entries();
    j["canonicalized"] = r.tuple.canonicalized();
    j["dimension"] = r.dimension;
    j["r"] = r.tuple.length();
    j["orientable"] = r.orientable;
    j["euler_char"] = r.euler_char;
    if (r.kervaire_semichar) j["kervaire_semichar"] = *r.kervaire_semichar;
    j["parallelizable"] = r.parallelizable;
    j["imm"] = to_json(r.imm);
    j["stablespan"] = to_json(r.span_result.stablespan);
    j["span"] = to_json(r.span_result.span);
    j["span_case"] = to_string(r.span_result.exactness_case);
    j["sphere_factors"] = json{{"T", r.sphere_factor_positions},
                               {"remaining", r.sphere_factor_remaining}};
    j["wedge_summand_count"] = r.wedge_summand_count;
    j["mod2_ranks"] = r.mod2_ranks;
    return j;
}

inline SpanCase span_case_from_string(const std::string& s) {
    for (SpanCase c : {SpanCase::AllEvenZero, SpanCase::EvenDimKoschorke,
                       SpanCase::Dim3Mod8Koschorke, SpanCase::Parallelizable,
                       SpanCase::Undecided})
        if (s == to_string(c)) return c;
    throw std::invalid_argument("unknown span case: " + s);
}

inline InvariantReport report_from_json(const json& j) {
    InvariantReport r(Tuple(j.at("tuple").get<std::vector<std::int64_t>>()));
    r.dimension = j.at("dimension").get<std::int64_t>();
    r.orientable = j.at("orientable").get<bool>();
    r.euler_char = j.at("euler_char").get<std::uint64_t>();
    if (j.contains("kervaire_semichar"))
        r.kervaire_semichar = j.at("kervaire_semichar").get<int>();
    r.parallelizable = j.at("parallelizable").get<bool>();
    r.imm = bound_from_json(j.at("imm"));
    r.span_result.stablespan = bound_from_json(j.at("stablespan"));
    r.span_result.span = bound_from_json(j.at("span"));
    r.span_result.exactness_case = span_case_from_string(j.at("span_case").get<std::string>());
    r.sphere_factor_positions = j.at("sphere_factors").at("T").get<std::vector<int>>();
    r.sphere_factor_remaining =
        j.at("sphere_factors").at("remaining").get<std::vector<std::int64_t>>();
    r.wedge_summand_count = j.at("wedge_summand_count").get<std::uint64_t>();
    r.mod2_ranks = j.at("mod2_ranks").get<std::vector<std::uint64_t>>();
    return r;
}

inline bool operator==(const SpanResult& a, const SpanResult& b) {
    return a.span == b.span && a.stablespan == b.stablespan &&
           a.exactness_case == b.exactness_case;
}

inline bool operator==(const InvariantReport& a, const InvariantReport& b) {
    return a.tuple == b.tuple && a.dimension == b.dimension &&
           a.orientable == b.orientable && a.euler_char == b.euler_char &&
           a.kervaire_semichar == b.kervaire_semichar &&
           a.parallelizable == b.parallelizable && a.imm == b.imm &&
           a.span_result == b.span_result &&
           a.sphere_factor_positions == b.sphere_factor_positions &&
           a.sphere_factor_remaining == b.sphere_factor_remaining &&
           a.wedge_summand_count == b.wedge_summand_count &&
           a.mod2_ranks == b.mod2_ranks;
}

}  // namespace ppspace
