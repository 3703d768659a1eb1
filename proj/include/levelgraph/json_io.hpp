#pragma once

#include <complex>
#include <string>

#include "json.hpp"

#include "levelgraph/calabi_dhym.hpp"
#include "levelgraph/half_integer.hpp"
#include "levelgraph/kempf_ness.hpp"
#include "levelgraph/run_config.hpp"
#include "levelgraph/stability.hpp"
#include "levelgraph/tracer.hpp"

namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z);
  static void from_json(const json& j, std::complex<double>& z);
};
}  // namespace nlohmann

namespace lg {

using json = nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {{Verdict::stable, "stable"},
                                       {Verdict::strictly_semistable, "strictly_semistable"},
                                       {Verdict::unstable, "unstable"}})
NLOHMANN_JSON_SERIALIZE_ENUM(CriticalCase, {{CriticalCase::noncritical, "noncritical"},
                                            {CriticalCase::generic_critical, "generic_critical"},
                                            {CriticalCase::nongeneric_critical, "nongeneric_critical"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Genericity, {{Genericity::generic, "generic"}, {Genericity::non_generic, "non_generic"}})
NLOHMANN_JSON_SERIALIZE_ENUM(CurveKind, {{CurveKind::level_C0, "level_C0"}, {CurveKind::level_D0, "level_D0"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Termination, {{Termination::radius_bound, "radius_bound"},
                                           {Termination::y_axis, "y_axis"},
                                           {Termination::critical_point, "critical_point"},
                                           {Termination::vertical_slope, "vertical_slope"},
                                           {Termination::closed_loop, "closed_loop"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Existence, {{Existence::exists, "exists"}, {Existence::no_solution, "no_solution"}})
NLOHMANN_JSON_SERIALIZE_ENUM(OutputFormat, {{OutputFormat::json, "json"}, {OutputFormat::csv, "csv"}})

void to_json(json& j, const HalfInteger& h);
void from_json(const json& j, HalfInteger& h);

void to_json(json& j, const StabilityVerdict& v);
void from_json(const json& j, StabilityVerdict& v);

void to_json(json& j, const Polyline& p);
void from_json(const json& j, Polyline& p);

void to_json(json& j, const GraphCheck& g);
void from_json(const json& j, GraphCheck& g);

// the grid is stored as (a, b, node count) and rebuilt on parse
void to_json(json& j, const GridFunction& f);
void from_json(const json& j, GridFunction& f);

void to_json(json& j, const FlowTrace& t);
void from_json(const json& j, FlowTrace& t);

void to_json(json& j, const CalabiInput& in);
void from_json(const json& j, CalabiInput& in);

void to_json(json& j, const Witness& w);
void from_json(const json& j, Witness& w);

void to_json(json& j, const ChargeReport& r);
void from_json(const json& j, ChargeReport& r);

// missing keys keep their defaults, unknown keys are rejected
void to_json(json& j, const RunConfig& c);
void from_json(const json& j, RunConfig& c);

// Stable text form: two-space indent, sorted keys, trailing newline.
std::string emit(const json& j);

// "re+imi" terms, or "re,im" pairs.
cplx parse_complex(const std::string& s);

}  // namespace lg
