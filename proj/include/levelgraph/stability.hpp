#pragma once

#include <optional>

#include "levelgraph/landscape.hpp"

namespace lg {

struct BoundaryData {
  ComplexPolynomial w;
  cplx z1;
  cplx z2;
};

enum class Verdict { stable, strictly_semistable, unstable };
enum class CriticalCase { noncritical, generic_critical, nongeneric_critical };

const char* to_string(Verdict v);
const char* to_string(CriticalCase c);

struct StabilityVerdict {
  Verdict verdict = Verdict::unstable;
  HalfInteger n1;
  HalfInteger n2;
  CriticalCase kase = CriticalCase::noncritical;
  std::optional<int> critical_order;
  // evidence
  HalfInteger index1;
  HalfInteger index2;
  int crit_sum1 = 0;
  bool z2_on_boundary = false;
  bool normalized = false;  // w was multiplied by -1 (N is unaffected)
  Genericity cone_at_infinity = Genericity::generic;
};

struct ClassifyOptions {
  LandscapeOptions landscape;
  // |Im w(z1) - Im w(z2)| <= level_tol (1 + |w(z1)| + |w(z2)|)
  double level_tol = 1e-8;
};

// Subtract i Im w(z1) so both points sit on C0.
BoundaryData shift_to_zero_level(const BoundaryData& data, double level_tol = 1e-8);

// Multiply w by -1 when Re w'(z2) < 0. Returns whether it flipped.
bool normalize_sign(ComplexPolynomial& w, cplx z2);

// The pure decision rule.
Verdict decide(HalfInteger n1, HalfInteger n2, CriticalCase kase, int order);

StabilityVerdict classify(const BoundaryData& data, const ClassifyOptions& opt = {});

}  // namespace lg
