#pragma once

#include <string>

#include "levelgraph/calabi_dhym.hpp"
#include "levelgraph/kempf_ness.hpp"
#include "levelgraph/stability.hpp"
#include "levelgraph/tracer.hpp"

namespace lg {

enum class OutputFormat { json, csv };

struct RunConfig {
  double sign_tol = 1e-9;
  double snap_tol = 1e-6;
  double corrector_tol = 1e-10;
  double stop_tol = 1e-10;
  double level_tol = 1e-8;
  double genericity_tol = 1e-9;
  int flow_nodes = 257;
  int witness_nodes = 65;
  double flow_t_max = 1e5;
  double trace_radius = 0.0;  // <= 0: automatic
  std::string out;            // empty: standard output
  OutputFormat format = OutputFormat::json;
  int jobs = 0;               // 0: OpenMP default
};

// InvalidInput unless every tolerance is positive and grid sizes are usable.
void validate(const RunConfig& c);

ClassifyOptions classify_options(const RunConfig& c);
TraceOptions trace_options(const RunConfig& c);
FlowOptions flow_options(const RunConfig& c);
DhymOptions dhym_options(const RunConfig& c);
WitnessOptions witness_options(const RunConfig& c);

}  // namespace lg
