#include "levelgraph/json_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "levelgraph/errors.hpp"

namespace {

using nlohmann::json;

// JSON has no infinities; they travel as strings
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw lg::Error(lg::ErrorKind::InvalidInput, "not a number: " + s);
  }
  return j.get<double>();
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> get_nums(const json& j) {
  std::vector<double> v;
  for (const auto& e : j) v.push_back(get_num(e));
  return v;
}

double parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw lg::Error(lg::ErrorKind::InvalidInput, "cannot parse number '" + std::string(s) + "'");
  return v;
}

}  // namespace

namespace nlohmann {

void adl_serializer<std::complex<double>>::to_json(json& j, const std::complex<double>& z) {
  j = json{{"re", num(z.real())}, {"im", num(z.imag())}};
}

void adl_serializer<std::complex<double>>::from_json(const json& j, std::complex<double>& z) {
  z = {get_num(j.at("re")), get_num(j.at("im"))};
}

}  // namespace nlohmann

namespace lg {

void to_json(json& j, const HalfInteger& h) { j = h.to_string(); }
void from_json(const json& j, HalfInteger& h) { h = HalfInteger::parse(j.get<std::string>()); }

void to_json(json& j, const StabilityVerdict& v) {
  j = json{{"verdict", v.verdict},
           {"n1", v.n1},
           {"n2", v.n2},
           {"case", v.kase},
           {"critical_order", v.critical_order ? json(*v.critical_order) : json(nullptr)},
           {"index1", v.index1},
           {"index2", v.index2},
           {"crit_sum1", v.crit_sum1},
           {"z2_on_boundary", v.z2_on_boundary},
           {"normalized", v.normalized},
           {"cone_at_infinity", v.cone_at_infinity}};
}

void from_json(const json& j, StabilityVerdict& v) {
  j.at("verdict").get_to(v.verdict);
  j.at("n1").get_to(v.n1);
  j.at("n2").get_to(v.n2);
  j.at("case").get_to(v.kase);
  const auto& c = j.at("critical_order");
  v.critical_order = c.is_null() ? std::nullopt : std::optional<int>(c.get<int>());
  j.at("index1").get_to(v.index1);
  j.at("index2").get_to(v.index2);
  j.at("crit_sum1").get_to(v.crit_sum1);
  j.at("z2_on_boundary").get_to(v.z2_on_boundary);
  j.at("normalized").get_to(v.normalized);
  j.at("cone_at_infinity").get_to(v.cone_at_infinity);
}

void to_json(json& j, const Polyline& p) {
  j = json{{"points", p.points},
           {"curve_kind", p.curve_kind},
           {"terminated_by", p.terminated_by},
           {"start_terminated_by", p.start_terminated_by},
           {"vertical_indices", p.vertical_indices}};
}

void from_json(const json& j, Polyline& p) {
  j.at("points").get_to(p.points);
  j.at("curve_kind").get_to(p.curve_kind);
  j.at("terminated_by").get_to(p.terminated_by);
  j.at("start_terminated_by").get_to(p.start_terminated_by);
  j.at("vertical_indices").get_to(p.vertical_indices);
}

void to_json(json& j, const GraphCheck& g) {
  j = json{{"connected", g.connected},
           {"graphical", g.graphical},
           {"min_dx_per_step", num(g.min_dx_per_step)},
           {"slope_sup", num(g.slope_sup)},
           {"end_slope", num(g.end_slope)},
           {"arrival", g.arrival},
           {"arc", g.arc}};
}

void from_json(const json& j, GraphCheck& g) {
  j.at("connected").get_to(g.connected);
  j.at("graphical").get_to(g.graphical);
  g.min_dx_per_step = get_num(j.at("min_dx_per_step"));
  g.slope_sup = get_num(j.at("slope_sup"));
  g.end_slope = get_num(j.at("end_slope"));
  j.at("arrival").get_to(g.arrival);
  j.at("arc").get_to(g.arc);
}

void to_json(json& j, const GridFunction& f) {
  if (!f.grid) {
    j = nullptr;
    return;
  }
  j = json{{"a", f.grid->a},
           {"b", f.grid->b},
           {"nodes", f.grid->x.size()},
           {"p", num(f.p)},
           {"q", num(f.q)},
           {"values", nums(f.values)}};
}

void from_json(const json& j, GridFunction& f) {
  if (j.is_null()) {
    f = GridFunction{};
    return;
  }
  f.grid = make_grid(j.at("a").get<double>(), j.at("b").get<double>(), j.at("nodes").get<int>());
  f.p = get_num(j.at("p"));
  f.q = get_num(j.at("q"));
  f.values = get_nums(j.at("values"));
  if (f.values.size() != f.grid->x.size()) throw Error(ErrorKind::InvalidInput, "values do not match the grid");
}

void to_json(json& j, const FlowTrace& t) {
  j = json{{"times", nums(t.times)},
           {"J_values", nums(t.J_values)},
           {"residual_sup", nums(t.residual_sup)},
           {"membership_min", nums(t.membership_min)},
           {"final_f", t.final_f},
           {"converged", t.converged},
           {"steps", t.steps}};
}

void from_json(const json& j, FlowTrace& t) {
  t.times = get_nums(j.at("times"));
  t.J_values = get_nums(j.at("J_values"));
  t.residual_sup = get_nums(j.at("residual_sup"));
  t.membership_min = get_nums(j.at("membership_min"));
  j.at("final_f").get_to(t.final_f);
  j.at("converged").get_to(t.converged);
  j.at("steps").get_to(t.steps);
}

void to_json(json& j, const CalabiInput& in) {
  j = json{{"m", in.m}, {"r", in.r}, {"xi1", in.xi1}, {"xi2", in.xi2}, {"b", in.b}, {"q", in.q}};
}

void from_json(const json& j, CalabiInput& in) {
  j.at("m").get_to(in.m);
  j.at("r").get_to(in.r);
  j.at("xi1").get_to(in.xi1);
  j.at("xi2").get_to(in.xi2);
  j.at("b").get_to(in.b);
  j.at("q").get_to(in.q);
}

void to_json(json& j, const Witness& w) {
  j = json{{"traced_connected", w.traced_connected},
           {"traced_graphical", w.traced_graphical},
           {"x", nums(w.x)},
           {"f_traced", nums(w.f_traced)},
           {"f_flow", nums(w.f_flow)},
           {"flow_converged", w.flow_converged},
           {"flow_residual", num(w.flow_residual)},
           {"max_deviation", num(w.max_deviation)},
           {"f_at_0", num(w.f_at_0)},
           {"f_at_b", num(w.f_at_b)},
           {"in_M", w.in_M}};
}

void from_json(const json& j, Witness& w) {
  j.at("traced_connected").get_to(w.traced_connected);
  j.at("traced_graphical").get_to(w.traced_graphical);
  w.x = get_nums(j.at("x"));
  w.f_traced = get_nums(j.at("f_traced"));
  w.f_flow = get_nums(j.at("f_flow"));
  j.at("flow_converged").get_to(w.flow_converged);
  w.flow_residual = get_num(j.at("flow_residual"));
  w.max_deviation = get_num(j.at("max_deviation"));
  w.f_at_0 = get_num(j.at("f_at_0"));
  w.f_at_b = get_num(j.at("f_at_b"));
  j.at("in_M").get_to(w.in_M);
}

void to_json(json& j, const ChargeReport& r) {
  j = json{{"verdict", r.verdict},
           {"theta_hat", r.theta_hat},
           {"theta_top", r.theta_top},
           {"Theta_lift", r.Theta_lift},
           {"Z_X", r.Z_X},
           {"Z_Dinf", r.Z_Dinf},
           {"Z_P", r.Z_P},
           {"phi_X", r.phi_X},
           {"phi_Dinf", r.phi_Dinf},
           {"phi_P", r.phi_P},
           {"ind_R0", r.ind_R0},
           {"ind_Rb", r.ind_Rb},
           {"genericity", r.genericity},
           {"boundary", r.boundary},
           {"x_lift_reversed", r.x_lift_reversed},
           {"normalization_note", r.normalization_note}};
  if (r.witness) j["witness"] = *r.witness;
}

void from_json(const json& j, ChargeReport& r) {
  j.at("verdict").get_to(r.verdict);
  j.at("theta_hat").get_to(r.theta_hat);
  j.at("theta_top").get_to(r.theta_top);
  j.at("Theta_lift").get_to(r.Theta_lift);
  j.at("Z_X").get_to(r.Z_X);
  j.at("Z_Dinf").get_to(r.Z_Dinf);
  j.at("Z_P").get_to(r.Z_P);
  j.at("phi_X").get_to(r.phi_X);
  j.at("phi_Dinf").get_to(r.phi_Dinf);
  j.at("phi_P").get_to(r.phi_P);
  j.at("ind_R0").get_to(r.ind_R0);
  j.at("ind_Rb").get_to(r.ind_Rb);
  j.at("genericity").get_to(r.genericity);
  j.at("boundary").get_to(r.boundary);
  j.at("x_lift_reversed").get_to(r.x_lift_reversed);
  j.at("normalization_note").get_to(r.normalization_note);
  if (j.contains("witness"))
    r.witness = j.at("witness").get<Witness>();
  else
    r.witness.reset();
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"sign_tol", c.sign_tol},
           {"snap_tol", c.snap_tol},
           {"corrector_tol", c.corrector_tol},
           {"stop_tol", c.stop_tol},
           {"level_tol", c.level_tol},
           {"genericity_tol", c.genericity_tol},
           {"flow_nodes", c.flow_nodes},
           {"witness_nodes", c.witness_nodes},
           {"flow_t_max", c.flow_t_max},
           {"trace_radius", c.trace_radius},
           {"out", c.out},
           {"format", c.format},
           {"jobs", c.jobs}};
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
  const json known = RunConfig{};
  for (const auto& [k, v] : j.items())
    if (!known.contains(k)) throw Error(ErrorKind::InvalidInput, "unknown config key '" + k + "'");
  RunConfig d = c;
  c.sign_tol = j.value("sign_tol", d.sign_tol);
  c.snap_tol = j.value("snap_tol", d.snap_tol);
  c.corrector_tol = j.value("corrector_tol", d.corrector_tol);
  c.stop_tol = j.value("stop_tol", d.stop_tol);
  c.level_tol = j.value("level_tol", d.level_tol);
  c.genericity_tol = j.value("genericity_tol", d.genericity_tol);
  c.flow_nodes = j.value("flow_nodes", d.flow_nodes);
  c.witness_nodes = j.value("witness_nodes", d.witness_nodes);
  c.flow_t_max = j.value("flow_t_max", d.flow_t_max);
  c.trace_radius = j.value("trace_radius", d.trace_radius);
  c.out = j.value("out", d.out);
  if (j.contains("format")) {
    const auto f = j.at("format").get<std::string>();
    if (f != "json" && f != "csv") throw Error(ErrorKind::InvalidInput, "format must be json or csv");
    j.at("format").get_to(c.format);
  }
  c.jobs = j.value("jobs", d.jobs);
}

std::string emit(const json& j) { return j.dump(2) + "\n"; }

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty complex number");
  if (const auto comma = s.find(','); comma != std::string::npos)
    return {parse_double(std::string_view(s).substr(0, comma)), parse_double(std::string_view(s).substr(comma + 1))};
  if (s.back() != 'i' && s.back() != 'j') return {parse_double(s), 0.0};
  s.pop_back();
  // split at the last sign that is not an exponent sign
  std::size_t cut = 0;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  const std::string re = s.substr(0, cut), im = s.substr(cut);
  const double imag = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_double(im);
  return {re.empty() ? 0.0 : parse_double(re), imag};
}

}  // namespace lg
