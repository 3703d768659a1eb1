#include "levelgraph/run_config.hpp"

#include "levelgraph/errors.hpp"

namespace lg {

void validate(const RunConfig& c) {
  const std::pair<const char*, double> tols[] = {{"sign_tol", c.sign_tol},         {"snap_tol", c.snap_tol},
                                                 {"corrector_tol", c.corrector_tol}, {"stop_tol", c.stop_tol},
                                                 {"level_tol", c.level_tol},         {"genericity_tol", c.genericity_tol},
                                                 {"flow_t_max", c.flow_t_max}};
  for (const auto& [name, v] : tols)
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidInput, std::string(name) + " must be positive");
  if (c.flow_nodes < 4 || c.witness_nodes < 4) throw Error(ErrorKind::InvalidInput, "grid sizes must be at least 4");
  if (c.jobs < 0) throw Error(ErrorKind::InvalidInput, "jobs must be nonnegative");
}

ClassifyOptions classify_options(const RunConfig& c) {
  ClassifyOptions o;
  o.level_tol = c.level_tol;
  o.landscape.genericity_tol = c.genericity_tol;
  o.landscape.index.sign_tol = c.sign_tol;
  return o;
}

TraceOptions trace_options(const RunConfig& c) {
  TraceOptions o;
  o.radius = c.trace_radius;
  o.corrector_tol = c.corrector_tol;
  o.critical_snap = c.snap_tol;
  o.connect_snap = c.snap_tol;
  return o;
}

FlowOptions flow_options(const RunConfig& c) {
  FlowOptions o;
  o.stop_tol = c.stop_tol;
  o.t_max = c.flow_t_max;
  return o;
}

DhymOptions dhym_options(const RunConfig& c) {
  DhymOptions o;
  o.genericity_tol = c.genericity_tol;
  o.landscape.genericity_tol = c.genericity_tol;
  o.landscape.index.sign_tol = c.sign_tol;
  return o;
}

WitnessOptions witness_options(const RunConfig& c) {
  WitnessOptions o;
  o.nodes = c.witness_nodes;
  o.flow = flow_options(c);
  return o;
}

}  // namespace lg
