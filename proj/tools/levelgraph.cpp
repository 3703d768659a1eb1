#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "levelgraph/csv_io.hpp"
#include "levelgraph/errors.hpp"
#include "levelgraph/json_io.hpp"
#include "selfcheck.hpp"

namespace {

using namespace lg;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

struct PolyArgs {
  std::string coeffs;
  std::string roots;
  std::string lead = "1";

  void add_to(CLI::App* cmd) {
    auto* p = cmd->add_option("--poly", coeffs, "coefficients, ascending, comma separated (re+imi terms)");
    auto* r = cmd->add_option("--roots", roots, "roots separated by ';' (re,im or re+imi each)");
    p->excludes(r);
    cmd->add_option("--lead", lead, "leading coefficient when --roots is given");
  }

  ComplexPolynomial build() const {
    if (!roots.empty()) {
      std::vector<cplx> rs;
      for (const auto& t : split(roots, ';')) rs.push_back(parse_complex(t));
      return from_roots(rs, parse_complex(lead));
    }
    if (coeffs.empty()) throw Error(ErrorKind::InvalidInput, "one of --poly or --roots is required");
    std::vector<cplx> c;
    for (const auto& t : split(coeffs, ',')) c.push_back(parse_complex(t));
    ComplexPolynomial w(c);
    if (w.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "all coefficients are zero");
    return w;
  }
};

// --out FILE, or standard output
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open " + path + " for writing");
    os = &file;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Graphical connectivity on level sets of harmonic polynomials"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  int jobs = -1;
  app.add_option("--config", config_path, "JSON file mirroring RunConfig")->check(CLI::ExistingFile);
  app.add_option("--jobs", jobs, "OpenMP threads for the parallel kernels (0: default)");
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* classify_cmd = app.add_subcommand("classify", "stability verdict for two boundary points");
  PolyArgs cpoly;
  cpoly.add_to(classify_cmd);
  std::string z1s, z2s;
  bool with_tracer = false;
  classify_cmd->add_option("--z1", z1s, "re,im")->required();
  classify_cmd->add_option("--z2", z2s, "re,im")->required();
  classify_cmd->add_flag("--tracer", with_tracer, "also report the traced C0 arc");

  auto* trace_cmd = app.add_subcommand("trace", "polyline along C0 or D0 through a seed");
  PolyArgs tpoly;
  tpoly.add_to(trace_cmd);
  std::string kind = "c0", seed_s;
  trace_cmd->add_option("--kind", kind, "c0 or d0")->check(CLI::IsMember({"c0", "d0"}));
  trace_cmd->add_option("--seed", seed_s, "re,im")->required();

  auto* flow_cmd = app.add_subcommand("flow", "gradient flow of graphs between z1 and z2");
  PolyArgs fpoly;
  fpoly.add_to(flow_cmd);
  std::string fz1, fz2, f0 = "line", graph_out;
  flow_cmd->add_option("--z1", fz1, "re,im")->required();
  flow_cmd->add_option("--z2", fz2, "re,im")->required();
  flow_cmd->add_option("--f0", f0, "line, traced, or a CSV file of x,f samples");
  flow_cmd->add_option("--graph-out", graph_out, "CSV of the final graph");

  auto* dhym_cmd = app.add_subcommand("dhym", "existence of dHYM solutions under Calabi symmetry");
  CalabiInput in;
  std::string input_json;
  bool witness = false;
  dhym_cmd->add_option("--m", in.m);
  dhym_cmd->add_option("--r", in.r);
  dhym_cmd->add_option("--xi1", in.xi1);
  dhym_cmd->add_option("--xi2", in.xi2);
  dhym_cmd->add_option("--b", in.b);
  dhym_cmd->add_option("--q", in.q);
  dhym_cmd->add_option("--input", input_json, "CalabiInput as JSON, or an array of them for a sweep")->check(CLI::ExistingFile);
  dhym_cmd->add_flag("--witness", witness, "add traced and flowed solution samples");

  auto* self_cmd = app.add_subcommand("selfcheck", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  RunConfig cfg;
  bool format_set = !format.empty();  // trace and flow default to CSV
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::InvalidInput, std::string("config: ") + e.what());
    }
    from_json(j, cfg);
    format_set = format_set || j.contains("format");
  }
  if (jobs >= 0) cfg.jobs = jobs;
  if (!out_path.empty()) cfg.out = out_path;
  if (!format.empty()) cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  validate(cfg);
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

  if (*classify_cmd) {
    BoundaryData d{cpoly.build(), parse_complex(z1s), parse_complex(z2s)};
    const auto copt = classify_options(cfg);
    json j = classify(d, copt);
    if (with_tracer) {
      BoundaryData s = shift_to_zero_level(d, copt.level_tol);
      normalize_sign(s.w, s.z2);
      const auto g = graphical_connection(s, trace_options(cfg));
      j["tracer"] = g;
      j["tracer_verdict"] = oracle_verdict(g);
    }
    Sink out(cfg.out);
    *out.os << emit(j);
    return 0;
  }

  if (*trace_cmd) {
    const auto line = trace_level(tpoly.build(), kind == "c0" ? CurveKind::level_C0 : CurveKind::level_D0,
                                  parse_complex(seed_s), trace_options(cfg));
    Sink out(cfg.out);
    if (format_set && cfg.format == OutputFormat::json)
      *out.os << emit(json(line));
    else
      write_polylines_csv(*out.os, {line});
    return 0;
  }

  if (*flow_cmd) {
    BoundaryData d = shift_to_zero_level({fpoly.build(), parse_complex(fz1), parse_complex(fz2)}, cfg.level_tol);
    normalize_sign(d.w, d.z2);
    const double a = d.z1.real(), b = d.z2.real(), p = d.z1.imag(), q = d.z2.imag();
    const auto grid = make_grid(a, b, cfg.flow_nodes);
    GridFunction start;
    if (f0 == "line") {
      start = straight_line(grid, p, q);
    } else if (f0 == "traced") {
      start = traced_graph(grid, d.w, graphical_connection(d, trace_options(cfg)), p, q);
    } else {
      std::ifstream f(f0);
      if (!f) throw Error(ErrorKind::InvalidInput, "cannot read " + f0);
      const auto xy = read_xy_csv(f);
      if (xy.size() < 2) throw Error(ErrorKind::InvalidInput, "need at least two samples in " + f0);
      start = sample_function(grid, p, q, [&](double x) {
        auto it = std::lower_bound(xy.begin(), xy.end(), x, [](const auto& s, double v) { return s.first < v; });
        if (it == xy.begin()) return it->second;
        if (it == xy.end()) return xy.back().second;
        const auto& [x1, y1] = *it;
        const auto& [x0, y0] = *(it - 1);
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
      });
    }
    const FlowTrace t = run_flow(start, d.w, default_sigma(*grid), flow_options(cfg));
    Sink out(cfg.out);
    if (format_set && cfg.format == OutputFormat::json)
      *out.os << emit(json(t));
    else
      write_flow_csv(*out.os, t);
    if (!graph_out.empty()) {
      Sink g(graph_out);
      write_graph_csv(*g.os, t.final_f);
    }
    return 0;
  }

  if (*dhym_cmd) {
    if (!input_json.empty()) {
      std::ifstream f(input_json);
      json j;
      try {
        j = json::parse(f);
        if (j.is_array()) {
          // a sweep: one report (or error) per input, in order
          const auto entries = analyze_many(j.get<std::vector<CalabiInput>>(), dhym_options(cfg));
          json arr = json::array();
          for (const auto& e : entries) arr.push_back(e.report ? json(*e.report) : json{{"error", e.error}});
          Sink out(cfg.out);
          *out.os << emit(arr);
          return 0;
        }
        j.get_to(in);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("input: ") + e.what());
      }
    }
    ChargeReport rep = analyze(in, dhym_options(cfg));
    if (witness) rep.witness = make_witness(in, build_polynomials(in), witness_options(cfg));
    Sink out(cfg.out);
    *out.os << emit(json(rep));
    return 0;
  }

  if (*self_cmd) {
    Sink out(cfg.out);
    return run_selfcheck(*out.os) ? 0 : 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
