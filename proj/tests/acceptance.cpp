// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failing criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "period_lab/errors.hpp"
#include "period_lab/experiments.hpp"
#include "period_lab/lattice.hpp"
#include "period_lab/pencil.hpp"
#include "period_lab/period_iib.hpp"
#include "period_lab/period_iif.hpp"
#include "period_lab/weierstrass.hpp"

using namespace period_lab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int number, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = elapsed < budget_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s [%d] %s: %s (%.2f s of %.0f s)%s\n", ok ? "PASS" : "FAIL", number, title, o.detail.c_str(), elapsed,
              budget_s, in_time ? "" : " over budget");
  std::fflush(stdout);
}

Outcome lattice_audit() {
  using namespace lattice;
  std::ostringstream os;
  bool ok = true;
  auto note = [&](const char* what, bool v) {
    ok = ok && v;
    if (!v) os << what << " failed; ";
  };

  const auto ii = invariants(standard("II_2_10"));
  note("II_2_10", ii.is_even && ii.is_unimodular && ii.signature == Signature{2, 0, 10});

  const auto re = standard("RE_H2");
  const IntVector fibre{3, -1, -1, -1, -1, -1, -1, -1, -1, -1};
  const auto e8 = invariants(orth_complement(Sublattice{re, {re.basis_vector("F9"), fibre}}));
  note("E8 complement", e8.rank == 8 && e8.is_even && e8.is_unimodular && e8.root_count == 240LL);

  const auto ruled = standard("RULED_H2");
  const auto comp = orth_complement(Sublattice{ruled, {canonical_class_ruled(), ruled.basis_vector("f")}});
  IntMatrix rows;
  for (std::size_t i = 0; i < 8; ++i) {
    std::vector<long long> a(8, 0);
    a[i] = 1;
    a[i < 7 ? i + 1 : 6] = i < 7 ? -1 : 1;
    rows.push_back(d8_embed(a));
  }
  const Sublattice image{ruled, rows};
  note("D8 complement", image.gram() == standard("D8").gram() && sublattice_index(image, comp) == Int(1) &&
                            invariants(comp).root_count == 112LL);

  for (const auto kind : {ModelKind::IIb, ModelKind::IIf}) {
    const auto m = mv_model(kind);
    const auto lam = invariants(m.lambda);
    const auto l0 = invariants(m.lambda0);
    note(kind == ModelKind::IIb ? "IIb model" : "IIf model",
         lam.is_unimodular && lam.signature == Signature{1, 0, 9} &&
             m.i11_image.gram() == IntMatrix{{-1, 1}, {1, 0}} && l0.rank == 8 && l0.is_even && l0.is_unimodular &&
             l0.root_count == 240LL);
    if (kind == ModelKind::IIf) note("D8 index", sublattice_index(d8_image_in_lambda0(m), m.lambda0) == Int(2));
  }

  const auto two_ten = standard("II_2_10");
  const auto n = monodromy_nilpotent(two_ten, two_ten.basis_vector("u1"), two_ten.basis_vector("u2"));
  bool square_zero = true;
  for (const auto& r : multiply(n.matrix, n.matrix))
    for (const auto& x : r) square_zero = square_zero && x == 0;
  note("monodromy", square_zero && matrix_rank(n.matrix) == 2);
  if (ok) os << "E8 with 240 roots, D8 with 112 roots, index 2, N^2 = 0 with rank 2";
  return {ok, os.str()};
}

Outcome special_point() {
  const auto report = iib::x9111_special_report();
  const auto& base = report.base_locus;
  bool base_ok = base.points.size() == 3 && base.max_residual < 1e-8;
  const std::array<ProjectivePoint, 3> vertices{ProjectivePoint(1.0, 0.0, 0.0), ProjectivePoint(0.0, 1.0, 0.0),
                                                ProjectivePoint(0.0, 0.0, 1.0)};
  for (const auto& v : vertices) {
    bool found = false;
    for (const auto& pc : base.points) found = found || (pc.multiplicity == 3 && chordal_distance(pc.point, v) < 1e-6);
    base_ok = base_ok && found;
  }
  const iib::CubicGroup group(pencil::x9111(1.0, {0.37, 0.21}));
  double psi_max = 0.0;
  for (const auto& p : report.period.points) psi_max = std::max(psi_max, chordal_distance(p, group.origin()));
  const bool psi_ok = report.period.points.size() == 9 && psi_max < 1e-6;
  const auto diff = group.sub(vertices[0], vertices[1]);
  const double torsion = chordal_distance(group.scale(9, diff), group.origin());
  const bool pattern_ok = report.singular_pattern == std::vector<int>{9, 1, 1, 1};
  std::ostringstream os;
  os << "base residual " << base.max_residual << ", max |psi| " << psi_max << ", |9(p1-p2)| " << torsion
     << ", pattern " << (pattern_ok ? "{9,1,1,1}" : "mismatch");
  return {base_ok && psi_ok && torsion < 1e-7 && pattern_ok, os.str()};
}

Outcome iib_dominance() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto inst = iib::random_instance(seed);
    for (double step : {1e-4, 1e-5}) {
      const auto r = iib::dominance_certificate(inst, step, 1e-6);
      ok = ok && r.certificate.rows == 18 && r.certificate.cols == 8 && r.certificate.rank == 8 &&
           r.certificate.gap_ratio > 1e-6 && r.max_sum_residual < 1e-7;
      os << "seed " << seed << " h " << step << ": rank " << r.certificate.rank << " gap "
         << r.certificate.gap_ratio << " sum " << r.max_sum_residual << "; ";
    }
  }
  return {ok, os.str()};
}

Outcome discriminant_identity() {
  using namespace weierstrass;
  std::mt19937_64 rng(2024);
  std::optional<int> sigma;
  bool ok = true;
  for (int t = 0; t < 10; ++t) {
    const auto curve = random_curve(rng);
    auto r = random_section(curve, 2, rng);
    if (r.is_zero()) r = SectionElement::monomial(curve, 2, {1, false});
    const auto d = discriminant_expansion(r, random_section(curve, 4, rng), random_section(curve, 6, rng));
    if (!sigma) sigma = d.sigma;
    ok = ok && d.sigma == *sigma && d.series.terms[0].is_zero() && d.series.terms[1].is_zero() &&
         d.series.terms[2] == d.expected * Rational(*sigma);
  }
  const WeierstrassCurve base(0, 1);
  auto r = random_section(base, 2, rng);
  if (r.coefficient({1, false}) == 0) r += SectionElement::monomial(base, 2, {1, false});
  const int generic = limits_rank(r, random_section(base, 4, rng)).rank;
  const int flat = limits_rank(r, SectionElement(base, 4)).rank;
  ok = ok && generic == 8 && flat == 6;
  std::ostringstream os;
  os << "sigma " << sigma.value_or(0) << ", limits rank " << generic << " generic and " << flat << " for g4 = 0";
  return {ok, os.str()};
}

Outcome iif_dominance() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto inst = iif::random_instance(seed);
    const auto q = iif::build_quotients(inst.curve);
    const bool constrained = iif::constraint_check(q, inst, 1e-8);
    const auto r = iif::dominance_certificate_iif(inst, 1e-5, 1e-6);
    const bool rank_ok = r.certificate.rows == 16 && r.certificate.cols == 9 && r.certificate.rank == 8 &&
                         r.certificate.gap_ratio > 1e-6;

    const auto periods = iif::prym_periods(q, inst);
    double swap = 0.0;
    for (std::size_t i = 0; i < periods.points.size(); ++i) {
      const auto& p = periods.lifts[i];
      swap = std::max(swap, chordal_distance(iif::prym_period_of_lift(q, {-p.x, p.y}), q.e2().neg(periods.points[i])));
    }
    double branch = 0.0;
    for (const auto& b : q.branch_points()) {
      branch = std::max(branch, chordal_distance(iif::prym_period(q, b), q.e2().origin()));
    }
    ok = ok && constrained && rank_ok && swap < 1e-8 && branch < 1e-8;
    os << "seed " << seed << ": rank " << r.certificate.rank << " (expected 8) sigma_min/max "
       << r.certificate.gap_ratio << ", swap " << swap << ", branch " << branch << "; ";
  }
  return {ok, os.str()};
}

Outcome torsion_condition() {
  const bool special = iif::branch_torsion_check(iif::order_eight_curve(3.0), 4, 1e-6);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  auto gaussian = [&] {
    const double re = g(rng);
    return Complex(re, g(rng));
  };
  const Complex a = gaussian(), b = gaussian(), c = gaussian();
  const bool generic = iif::branch_torsion_check(iif::BiellipticCurve(a, b, c), 4, 1e-6);
  std::ostringstream os;
  os << "order-eight curve " << (special ? "4-torsion" : "not 4-torsion") << ", generic curve "
     << (generic ? "4-torsion" : "not 4-torsion");
  return {special && !generic, os.str()};
}

Outcome determinism() {
  experiments::ExperimentConfig c;
  c.experiment = "all";
  const auto a = experiments::emit(experiments::run(c), experiments::Format::json);
  const auto b = experiments::emit(experiments::run(c), experiments::Format::json);
  std::ostringstream os;
  os << a.size() << " bytes, " << (a == b ? "identical" : "different");
  return {a == b, os.str()};
}

}  // namespace

int main() {
  criterion(1, "lattice audit", 30, lattice_audit);
  criterion(2, "X9111 special point", 10, special_point);
  criterion(3, "type IIb dominance", 120, iib_dominance);
  criterion(4, "discriminant identity", 10, discriminant_identity);
  criterion(5, "type IIf dominance", 120, iif_dominance);
  criterion(6, "torsion condition", 60, torsion_condition);
  criterion(7, "determinism of the full campaign", 300, determinism);
  return failures;
}
