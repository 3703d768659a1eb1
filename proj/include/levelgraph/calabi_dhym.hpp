#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levelgraph/exec.hpp"
#include "levelgraph/kempf_ness.hpp"
#include "levelgraph/landscape.hpp"

namespace lg {

struct CalabiInput {
  int m = 1;
  int r = 0;
  double xi1 = 1.0;
  double xi2 = 0.0;
  double b = 1.0;
  double q = 0.0;

  cplx xi() const { return {xi1, xi2}; }
  cplx z2() const { return {b, q}; }
};

void validate(const CalabiInput& in);

struct CalabiPolynomials {
  ComplexPolynomial P;  // P' = (xi + z)^m z^r, P(0) = 0
  ComplexPolynomial w;  // e^{-i theta_hat} P
  double theta_hat = 0.0;
};

CalabiPolynomials build_polynomials(const CalabiInput& in);

struct Charges {
  cplx Z_X, Z_Dinf, Z_P;
};

Charges compute_charges(const CalabiInput& in, const CalabiPolynomials& poly);

struct DhymOptions {
  LandscapeOptions landscape;
  double genericity_tol = 1e-9;
  double lift_tol = 1e-9;   // unwrapped vs closed-form grade of D_inf
  double grade_tol = 1e-9;  // integer tests on grade differences
};

struct Lifts {
  double theta_top = 0.0;
  double Theta_lift = 0.0;
  double phi_X = 0.0, phi_Dinf = 0.0, phi_P = 0.0;
  // crossing counts of D0 (nonnegative); ind_R0 is taken from epsilon in the non-generic case
  HalfInteger ind_R0;
  HalfInteger ind_Rb;
  Genericity genericity = Genericity::generic;
  double epsilon = 0.0;
  bool x_lift_reversed = false;  // Theta_lift points along -Z_X
  int path_crossings_P = 0;
  int path_crossings_Dinf = 0;
};

Lifts compute_lifts(const CalabiInput& in, const CalabiPolynomials& poly, const Charges& ch,
                    const DhymOptions& opt = {});

enum class Existence { exists, no_solution };
const char* to_string(Existence e);

struct Decision {
  Existence verdict = Existence::no_solution;
  bool boundary = false;  // equality case: strictly semistable data, reported as no_solution
  Existence index_form = Existence::no_solution;
  Existence grade_form = Existence::no_solution;
};

Decision decide_existence(const CalabiInput& in, const Lifts& lifts, const DhymOptions& opt = {});

struct Witness {
  bool traced_connected = false;
  bool traced_graphical = false;
  std::vector<double> x;
  std::vector<double> f_traced;
  std::vector<double> f_flow;
  bool flow_converged = false;
  double flow_residual = 0.0;
  double max_deviation = 0.0;  // sup |f_flow - f_traced|
  double f_at_0 = 0.0;
  double f_at_b = 0.0;
  bool in_M = false;
};

struct ChargeReport {
  double theta_hat = 0.0;
  double theta_top = 0.0;
  double Theta_lift = 0.0;
  cplx Z_X, Z_Dinf, Z_P;
  double phi_X = 0.0, phi_Dinf = 0.0, phi_P = 0.0;
  HalfInteger ind_R0;
  HalfInteger ind_Rb;
  Genericity genericity = Genericity::generic;
  Existence verdict = Existence::no_solution;
  bool boundary = false;
  bool x_lift_reversed = false;
  std::string normalization_note;
  std::optional<Witness> witness;
};

ChargeReport analyze(const CalabiInput& in, const DhymOptions& opt = {});

struct SweepEntry {
  std::optional<ChargeReport> report;
  std::string error;  // what() of the Error when report is empty
};

// analyze() over many inputs; entries stay in input order.
std::vector<SweepEntry> analyze_many(const std::vector<CalabiInput>& inputs, const DhymOptions& opt = {},
                                     Exec exec = Exec::parallel);

struct WitnessOptions {
  int nodes = 65;
  FlowOptions flow;
};

// Traced C0 arc from b + iq down to 0 and the flow from the straight line, on the same nodes.
Witness make_witness(const CalabiInput& in, const CalabiPolynomials& poly, const WitnessOptions& opt = {});

}  // namespace lg
