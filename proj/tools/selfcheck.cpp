#include "selfcheck.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "levelgraph/errors.hpp"
#include "levelgraph/json_io.hpp"

namespace {

using namespace lg;

RealPolynomial random_real(std::mt19937_64& g, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> c(-5, 5);
  std::vector<double> v(deg(g) + 1);
  for (auto& x : v) x = c(g);
  if (v.back() == 0.0) v.back() = 1.0;
  return RealPolynomial(v);
}

bool cauchy_backends(std::string& why) {
  std::mt19937_64 g(11);
  for (int i = 0; i < 100; ++i) {
    const RationalFunction h{random_real(g, 6), random_real(g, 6)};
    const auto a = index_on_interval(h, -kInf, kInf), b = index_on_interval_sturm(h, -kInf, kInf),
               c = index_on_interval_exact(h, -kInf, kInf);
    if (a != b || b != c) {
      why = "backends disagree on sample " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool root_count(std::string& why) {
  std::mt19937_64 g(12);
  for (int i = 0; i < 50; ++i) {
    RealPolynomial p = random_real(g, 8);
    if (p.degree() < 1) continue;
    const auto ind = index_on_interval_exact({p.derivative(), p}, -kInf, kInf);
    if (ind != HalfInteger::whole(static_cast<long>(real_roots(p).size()))) {
      why = "sample " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool classify_vs_tracer(std::string& why) {
  const ComplexPolynomial w{0.0, 0.0, 0.0, 1.0 / 3.0};
  // z2 on the line Re z = 2 at the level of z1, nearest the real axis
  const auto on_level = [](double y1) {
    const double lvl = (3.0 * y1 - y1 * y1 * y1) / 3.0;
    double y = 0.1;
    for (int k = 0; k < 60; ++k) y -= ((12.0 * y - y * y * y) / 3.0 - lvl) / ((12.0 - 3.0 * y * y) / 3.0);
    return cplx(2.0, y);
  };
  const cplx z1s[] = {{1.0, 0.0}, {1.0, 1.0}, {1.0, 1.5}};
  const cplx z2s[] = {on_level(0.0), on_level(1.0), on_level(1.5)};
  const Verdict expect[] = {Verdict::stable, Verdict::strictly_semistable, Verdict::unstable};
  for (int i = 0; i < 3; ++i) {
    BoundaryData d{w, z1s[i], z2s[i]};
    const auto v = classify(d);
    d = shift_to_zero_level(d);
    normalize_sign(d.w, d.z2);
    const auto o = oracle_verdict(graphical_connection(d));
    if (v.verdict != o || o != expect[i]) {
      why = "instance " + std::to_string(i) + ": " + to_string(v.verdict) + " vs " + to_string(o);
      return false;
    }
  }
  return true;
}

bool flow_monotone(std::string& why) {
  const ComplexPolynomial w{0.0, 1.0};
  const auto grid = make_grid(1.0, 2.0, 33);
  const auto f0 = sample_function(grid, 0.0, 0.0, [](double x) { return (x - 1.0) * (2.0 - x); });
  const auto t = run_flow(f0, w, default_sigma(*grid));
  for (std::size_t i = 1; i < t.J_values.size(); ++i)
    if (t.J_values[i] > t.J_values[i - 1] + 1e-12) {
      why = "J increased at step " + std::to_string(i);
      return false;
    }
  if (!t.converged) why = "flow did not converge";
  return t.converged;
}

bool dhym_invariants(std::string& why) {
  const auto hand = analyze({1, 0, 1.0, 0.0, 1.0, 0.0});
  if (hand.verdict != Existence::exists || std::abs(hand.phi_Dinf - 0.5) > 1e-12 || std::abs(hand.phi_X) > 1e-12) {
    why = "hand-evaluated case";
    return false;
  }
  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> pos(0.1, 3.0), any(-3.0, 3.0);
  std::uniform_int_distribution<int> mm(1, 3), rr(0, 3);
  for (int i = 0; i < 100; ++i) {
    const CalabiInput in{mm(g), rr(g), pos(g), any(g), pos(g), any(g)};
    const auto poly = build_polynomials(in);
    const cplx wz = poly.w(in.z2());
    if (std::abs(wz.imag()) > 1e-9 * (1.0 + poly.w.magnitude(in.z2()))) {
      why = "Im w(b+iq) != 0 on sample " + std::to_string(i);
      return false;
    }
    const auto rep = analyze(in);
    if (!(rep.phi_X < rep.phi_Dinf && rep.phi_Dinf < rep.phi_X + 1.0)) {
      why = "grade ordering on sample " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool json_round_trip(std::string& why) {
  const auto rep = analyze({2, 1, 0.7, -0.4, 1.3, 0.9});
  const std::string a = emit(json(rep));
  const std::string b = emit(json(json::parse(a).get<ChargeReport>()));
  const auto v = classify({ComplexPolynomial{0.0, 0.0, 0.0, 1.0 / 3.0}, {1.0, 0.0}, {2.0, 0.0}});
  const std::string c = emit(json(v));
  const std::string d = emit(json(json::parse(c).get<StabilityVerdict>()));
  if (a != b || c != d) why = "re-emitted text differs";
  return a == b && c == d;
}

}  // namespace

bool run_selfcheck(std::ostream& os) {
  const std::pair<const char*, std::function<bool(std::string&)>> checks[] = {
      {"cauchy_backends_agree", cauchy_backends},
      {"root_counting_identity", root_count},
      {"classify_matches_tracer", classify_vs_tracer},
      {"flow_energy_nonincreasing", flow_monotone},
      {"dhym_invariants", dhym_invariants},
      {"json_round_trip", json_round_trip},
  };
  bool all = true;
  for (const auto& [name, fn] : checks) {
    std::string why;
    bool ok = false;
    try {
      ok = fn(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    os << (ok ? "PASS " : "FAIL ") << name;
    if (!ok) os << ": " << why;
    os << "\n";
    all = all && ok;
  }
  return all;
}
