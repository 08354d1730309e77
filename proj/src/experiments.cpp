#include "period_lab/experiments.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "period_lab/errors.hpp"
#include "period_lab/lattice.hpp"
#include "period_lab/period_iib.hpp"
#include "period_lab/period_iif.hpp"
#include "period_lab/weierstrass.hpp"

namespace period_lab::experiments {

namespace {

constexpr int kSchema = 1;
constexpr double kSumTol = 1e-7;
constexpr double kPointTol = 1e-8;

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json point_json(const ProjectivePoint& p) {
  return Json::array({complex_json(p[0]), complex_json(p[1]), complex_json(p[2])});
}

Json certificate_json(const numkit::RankCertificate& c) {
  return Json{{"rows", c.rows},           {"cols", c.cols}, {"rank", c.rank},
              {"gap_ratio", c.gap_ratio}, {"step", c.step}, {"singular_values", c.singular_values}};
}

Json signature_json(const lattice::Signature& s) { return Json::array({s.positive, s.zero, s.negative}); }

Json invariants_json(const lattice::InvariantReport& r) {
  Json j{{"rank", r.rank},
         {"signature", signature_json(r.signature)},
         {"determinant", r.determinant.str()},
         {"even", r.is_even},
         {"unimodular", r.is_unimodular}};
  if (r.root_count) j["roots"] = *r.root_count;
  return j;
}

Json gram_json(const lattice::IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(x.convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

Json section_json(const weierstrass::SectionElement& s) {
  Json j = Json::array();
  for (const auto& c : s.coefficients()) j.push_back(c.str());
  return j;
}

int trials_or(const ExperimentConfig& c, int fallback) { return c.trials.value_or(fallback); }

// Second step for the stability comparison.
double companion_step(double step) { return step == 1e-4 ? 1e-5 : 1e-4; }

// ---------------------------------------------------------------- lattices

std::vector<Trial> lattice_audit(const ExperimentConfig&) {
  using namespace lattice;
  std::vector<Trial> out;

  const auto ii = invariants(standard("II_2_10"));
  out.push_back({"II_2_10", ii.is_even && ii.is_unimodular && ii.signature == Signature{2, 0, 10},
                 invariants_json(ii)});

  const auto re = standard("RE_H2");
  IntVector fibre{3, -1, -1, -1, -1, -1, -1, -1, -1, -1};
  const auto e8 = invariants(orth_complement(Sublattice{re, {re.basis_vector("F9"), fibre}}));
  out.push_back({"rational_elliptic_complement",
                 e8.rank == 8 && e8.is_even && e8.is_unimodular && e8.root_count == 240LL, invariants_json(e8)});

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
  const auto d8 = invariants(comp);
  const bool gram_ok = image.gram() == standard("D8").gram();
  const auto idx = sublattice_index(image, comp);
  Json dj = invariants_json(d8);
  dj["image_gram_is_d8"] = gram_ok;
  dj["image_index"] = idx ? idx->str() : "rank mismatch";
  out.push_back({"ruled_complement", gram_ok && idx == Int(1) && d8.root_count == 112LL, dj});

  for (const auto kind : {ModelKind::IIb, ModelKind::IIf}) {
    const auto m = mv_model(kind);
    const auto lam = invariants(m.lambda);
    const auto l0 = invariants(m.lambda0);
    const auto i11 = m.i11_image.gram();
    bool ok = lam.is_unimodular && lam.signature == Signature{1, 0, 9} && i11 == IntMatrix{{-1, 1}, {1, 0}} &&
              l0.rank == 8 && l0.is_even && l0.is_unimodular && l0.root_count == 240LL;
    Json j{{"lambda", invariants_json(lam)},
           {"i11_gram", gram_json(i11)},
           {"lambda0", invariants_json(l0)},
           {"literal_quotient_torsion", m.literal_quotient_torsion.str()},
           {"radical_saturation_applied", m.radical_saturation_applied}};
    if (kind == ModelKind::IIf) {
      const auto index = sublattice_index(d8_image_in_lambda0(m), m.lambda0);
      j["d8_index_in_lambda0"] = index ? index->str() : "rank mismatch";
      ok = ok && index == Int(2);
    }
    out.push_back({"mv_model_" + to_string(kind), ok, j});
  }

  const auto two_ten = standard("II_2_10");
  const auto n = monodromy_nilpotent(two_ten, two_ten.basis_vector("u1"), two_ten.basis_vector("u2"));
  const auto n2 = multiply(n.matrix, n.matrix);
  bool square_zero = true;
  for (const auto& r : n2)
    for (const auto& x : r) square_zero = square_zero && x == 0;
  const int rank = matrix_rank(n.matrix);
  out.push_back({"monodromy_nilpotent", square_zero && rank == 2, Json{{"square_zero", square_zero}, {"rank", rank}}});
  return out;
}

// -------------------------------------------------------------- type II_b

std::vector<Trial> iib_special(const ExperimentConfig& c) {
  const auto report = iib::x9111_special_report({0.37, 0.21}, c.tolerances);
  std::vector<Trial> out;
  for (const auto& item : report.items) {
    out.push_back({item.name, item.passed, Json{{"residual", item.residual}, {"detail", item.detail}}});
  }
  Json psi = Json::array();
  for (const auto& p : report.period.points) psi.push_back(point_json(p));
  Json base = Json::array();
  for (const auto& pc : report.base_locus.points) {
    base.push_back(Json{{"point", point_json(pc.point)}, {"multiplicity", pc.multiplicity}});
  }
  out.push_back({"instance", report.passed(),
                 Json{{"lambda", complex_json(report.lambda)},
                      {"mu", complex_json(report.mu)},
                      {"base_locus", base},
                      {"singular_pattern", report.singular_pattern},
                      {"psi", psi}}});
  return out;
}

std::vector<Trial> iib_dominance(const ExperimentConfig& c) {
  std::vector<Trial> out;
  const double step = c.tolerances.step;
  const double gap = c.tolerances.gap_tol;
  for (int t = 0; t < trials_or(c, 3); ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    const auto inst = iib::random_instance(seed);
    Json runs = Json::array();
    bool ok = true;
    for (const double h : {step, companion_step(step)}) {
      const auto r = iib::dominance_certificate(inst, h, gap, c.tolerances);
      ok = ok && r.certificate.rank == 8 && r.certificate.gap_ratio > gap && r.max_sum_residual < kSumTol;
      runs.push_back(Json{{"step", h},
                          {"certificate", certificate_json(r.certificate)},
                          {"sum_certificate", certificate_json(r.sum_certificate)},
                          {"max_sum_residual", r.max_sum_residual}});
    }
    out.push_back({"seed_" + std::to_string(seed), ok, Json{{"seed", seed}, {"runs", runs}}});
  }
  return out;
}

// -------------------------------------------------------------- type II_f

Json bielliptic_json(const iif::BiellipticCurve& d) {
  return Json{{"a", complex_json(d.a)}, {"b", complex_json(d.b)}, {"c", complex_json(d.c)}};
}

std::vector<Trial> iif_dominance(const ExperimentConfig& c) {
  std::vector<Trial> out;
  const double step = c.tolerances.step;
  const double gap = c.tolerances.gap_tol;
  constexpr int kDomainDimension = 9;
  for (int t = 0; t < trials_or(c, 3); ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    const auto inst = iif::random_instance(seed, c.tolerances);
    const auto q = iif::build_quotients(inst.curve, c.tolerances);
    const bool constrained = iif::constraint_check(q, inst, kPointTol);

    Json runs = Json::array();
    bool ok = constrained;
    for (const double h : {step, companion_step(step)}) {
      const auto r = iif::dominance_certificate_iif(inst, h, gap, c.tolerances);
      ok = ok && r.certificate.rank == kDomainDimension && r.moduli_certificate.rank == kDomainDimension &&
           r.certificate.gap_ratio > gap && r.moduli_certificate.gap_ratio > gap;
      runs.push_back(Json{{"step", h},
                          {"certificate", certificate_json(r.certificate)},
                          {"moduli_certificate", certificate_json(r.moduli_certificate)},
                          {"max_constraint_residual", r.max_constraint_residual}});
    }

    const auto periods = iif::prym_periods(q, inst);
    double swap_residual = 0.0;
    Json points = Json::array();
    for (std::size_t i = 0; i < periods.points.size(); ++i) {
      const auto& p = periods.lifts[i];
      const auto swapped = iif::prym_period_of_lift(q, {-p.x, p.y});
      swap_residual = std::max(swap_residual, chordal_distance(swapped, q.e2().neg(periods.points[i])));
      points.push_back(Json{{"point", point_json(periods.points[i])}, {"sign", periods.sign_provenance[i]}});
    }
    double branch_residual = 0.0;
    for (const auto& b : q.branch_points()) {
      branch_residual = std::max(branch_residual, chordal_distance(iif::prym_period(q, b), q.e2().origin()));
    }
    ok = ok && swap_residual < kPointTol && branch_residual < kPointTol;

    Json marked = Json::array();
    for (const auto& r : inst.points) marked.push_back(point_json(r));
    out.push_back({"seed_" + std::to_string(seed), ok,
                   Json{{"seed", seed},
                        {"curve", bielliptic_json(inst.curve)},
                        {"marked_points", marked},
                        {"constraint", constrained},
                        {"periods", points},
                        {"isogeny_ambiguity", periods.isogeny_ambiguity},
                        {"domain_dimension", kDomainDimension},
                        {"runs", runs},
                        {"sign_swap_residual", swap_residual},
                        {"branch_point_residual", branch_residual}}});
  }
  return out;
}

std::vector<Trial> iif_torsion(const ExperimentConfig& c) {
  const int n = c.torsion_order.value_or(4);
  std::vector<Trial> out;
  // The branch class of this curve has exact order 4.
  const auto special = iif::order_eight_curve(3.0);
  const bool special_hit = iif::branch_torsion_check(special, n, 1e-6, c.tolerances);
  out.push_back({"order_eight_branch_point", special_hit == (n % 4 == 0),
                 Json{{"curve", bielliptic_json(special)}, {"n", n}, {"torsion", special_hit}}});

  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> g;
  auto gaussian = [&] {
    const double re = g(rng);
    return Complex(re, g(rng));
  };
  for (int t = 0; t < trials_or(c, 1); ++t) {
    const Complex a = gaussian(), b = gaussian(), cc = gaussian();
    const iif::BiellipticCurve d(a, b, cc);
    const bool hit = iif::branch_torsion_check(d, n, 1e-6, c.tolerances);
    out.push_back({"generic_" + std::to_string(t), !hit,
                   Json{{"curve", bielliptic_json(d)}, {"n", n}, {"torsion", hit}}});
  }
  return out;
}

// ------------------------------------------------------------- Weierstrass

std::vector<Trial> discriminant(const ExperimentConfig& c) {
  using namespace weierstrass;
  std::mt19937_64 rng(c.seed);
  std::vector<Trial> out;
  std::optional<int> sigma;
  bool consistent = true;
  for (int t = 0; t < trials_or(c, 10); ++t) {
    const auto curve = t == 0 ? WeierstrassCurve(0, 1) : random_curve(rng);
    auto r = random_section(curve, 2, rng);
    if (r.is_zero()) r = SectionElement::monomial(curve, 2, {1, false});
    const auto g4 = random_section(curve, 4, rng);
    const auto g6 = random_section(curve, 6, rng);
    const auto d = discriminant_expansion(r, g4, g6);
    if (!sigma) sigma = d.sigma;
    consistent = consistent && d.sigma == *sigma;
    const bool ok = d.series.terms[0].is_zero() && d.series.terms[1].is_zero() &&
                    d.series.terms[2] == d.expected * Rational(d.sigma);
    out.push_back({"instance_" + std::to_string(t), ok,
                   Json{{"A", curve.a.str()},
                        {"B", curve.b.str()},
                        {"r", section_json(r)},
                        {"g4", section_json(g4)},
                        {"g6", section_json(g6)},
                        {"eps0_zero", d.series.terms[0].is_zero()},
                        {"eps1_zero", d.series.terms[1].is_zero()},
                        {"eps2", section_json(d.series.terms[2])},
                        {"convention", d.convention},
                        {"sigma", d.sigma}}});
  }
  out.push_back({"global_sign", consistent, Json{{"sigma", sigma.value_or(0)}}});
  return out;
}

std::vector<Trial> limits_rank(const ExperimentConfig& c) {
  using namespace weierstrass;
  std::mt19937_64 rng(c.seed);
  std::vector<Trial> out;
  auto cert_json = [](const ExactRank& e) {
    return Json{{"rank", e.rank}, {"rows", e.rows}, {"cols", e.cols}, {"constant_r", e.constant_r}};
  };
  for (int t = 0; t < trials_or(c, 3); ++t) {
    const auto curve = t == 0 ? WeierstrassCurve(0, 1) : random_curve(rng);
    auto r = random_section(curve, 2, rng);
    if (r.coefficient({1, false}) == 0) r += SectionElement::monomial(curve, 2, {1, false});
    const auto g4 = random_section(curve, 4, rng);
    const auto generic = limits_rank(r, g4);
    const auto flat = limits_rank(r, SectionElement(curve, 4));
    out.push_back({"instance_" + std::to_string(t), generic.rank == 8 && flat.rank == 6,
                   Json{{"r", section_json(r)}, {"g4", section_json(g4)}, {"generic", cert_json(generic)},
                        {"g4_zero", cert_json(flat)}}});
  }
  const WeierstrassCurve base(0, 1);
  const auto constant = limits_rank(SectionElement::constant(base, 1).lift(2), SectionElement(base, 4));
  out.push_back({"constant_r", constant.rank == 6 && constant.constant_r, cert_json(constant)});
  return out;
}

using Runner = std::vector<Trial> (*)(const ExperimentConfig&);

struct Entry {
  const char* name;
  Runner runner;
};

constexpr std::array<Entry, 7> kExperiments{{{"lattice-audit", lattice_audit},
                                              {"iib-special", iib_special},
                                              {"iib-dominance", iib_dominance},
                                              {"iif-dominance", iif_dominance},
                                              {"iif-torsion", iif_torsion},
                                              {"discriminant", discriminant},
                                              {"limits-rank", limits_rank}}};

Json tolerances_json(const ToleranceProfile& t) {
  return Json{{"zero_tol", t.zero_tol},       {"on_curve_tol", t.on_curve_tol}, {"cluster_tol", t.cluster_tol},
              {"point_tol", t.point_tol},     {"smooth_tol", t.smooth_tol},     {"gap_tol", t.gap_tol},
              {"step", t.step},               {"max_iterations", t.max_iterations}};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials && *trials < 1) fail(ErrorCode::InvalidConfig, "trials must be at least 1");
  if (torsion_order && *torsion_order < 1) fail(ErrorCode::InvalidConfig, "torsion order must be positive");
  if (!tolerances.valid()) fail(ErrorCode::InvalidConfig, "tolerances must be positive");
}

bool Report::passed() const {
  return std::all_of(trials.begin(), trials.end(), [](const Trial& t) { return t.passed; });
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kExperiments) v.emplace_back(e.name);
    v.emplace_back("all");
    return v;
  }();
  return names;
}

Report run(ExperimentConfig config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report{config.experiment, config, {}, 0.0};
  if (config.experiment == "all") {
    for (const auto& e : kExperiments) {
      ExperimentConfig sub = config;
      sub.experiment = e.name;
      sub.trials.reset();
      const auto r = run(sub);
      report.trials.push_back({e.name, r.passed(), to_json(r)});
    }
  } else {
    const auto* entry = std::find_if(kExperiments.begin(), kExperiments.end(),
                                     [&](const Entry& e) { return config.experiment == e.name; });
    if (entry == kExperiments.end()) fail(ErrorCode::UnknownExperiment, "no experiment named '" + config.experiment + "'");
    report.trials = entry->runner(config);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const ExperimentConfig& c) {
  Json j{{"experiment", c.experiment}, {"seed", c.seed}};
  j["trials"] = c.trials ? Json(*c.trials) : Json(nullptr);
  j["torsion_order"] = c.torsion_order ? Json(*c.torsion_order) : Json(nullptr);
  j["tolerances"] = tolerances_json(c.tolerances);
  j["output"] = c.output;
  return j;
}

Json to_json(const Report& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) trials.push_back(Json{{"name", t.name}, {"passed", t.passed}, {"data", t.data}});
  return Json{{"schema", kSchema},
              {"experiment", r.experiment},
              {"config", to_json(r.config)},
              {"verdict", r.passed() ? "pass" : "fail"},
              {"trial_count", r.trials.size()},
              {"trials", trials}};
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("trials").is_null()) c.trials = j.at("trials").get<int>();
  if (!j.at("torsion_order").is_null()) c.torsion_order = j.at("torsion_order").get<int>();
  c.tolerances = apply_tolerances({}, j.at("tolerances"));
  c.output = j.at("output").get<std::string>();
  return c;
}

Report report_from_json(const Json& j) {
  try {
    if (j.at("schema").get<int>() != kSchema) fail(ErrorCode::InvalidConfig, "unsupported report schema");
    Report r;
    r.experiment = j.at("experiment").get<std::string>();
    r.config = config_from_json(j.at("config"));
    for (const auto& t : j.at("trials")) {
      r.trials.push_back({t.at("name").get<std::string>(), t.at("passed").get<bool>(), t.at("data")});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("malformed report: ") + e.what());
  }
}

std::string emit(const Report& r, Format format) {
  if (format == Format::json) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  os << r.experiment << ": " << (r.passed() ? "pass" : "fail") << " (" << r.trials.size() << " trials)\n";
  for (const auto& t : r.trials) os << "  [" << (t.passed ? "PASS" : "FAIL") << "] " << t.name << "\n";
  return os.str();
}

void write_report(const Report& r, const std::string& path, Format format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoFailure, "cannot open " + path);
  f << emit(r, format);
  if (!f) fail(ErrorCode::IoFailure, "cannot write " + path);
}

ToleranceProfile apply_tolerances(ToleranceProfile base, const Json& overrides) {
  if (!overrides.is_object()) fail(ErrorCode::InvalidConfig, "tolerance overrides must be an object");
  for (const auto& [key, value] : overrides.items()) {
    if (!value.is_number()) fail(ErrorCode::InvalidConfig, "tolerance '" + key + "' is not a number");
    if (key == "zero_tol") base.zero_tol = value.get<double>();
    else if (key == "on_curve_tol") base.on_curve_tol = value.get<double>();
    else if (key == "cluster_tol") base.cluster_tol = value.get<double>();
    else if (key == "point_tol") base.point_tol = value.get<double>();
    else if (key == "smooth_tol") base.smooth_tol = value.get<double>();
    else if (key == "gap_tol") base.gap_tol = value.get<double>();
    else if (key == "step") base.step = value.get<double>();
    else if (key == "max_iterations") base.max_iterations = value.get<int>();
    else fail(ErrorCode::InvalidConfig, "unknown tolerance '" + key + "'");
  }
  if (!base.valid()) fail(ErrorCode::InvalidConfig, "tolerances must be positive");
  return base;
}

ToleranceProfile tolerances_from_environment(ToleranceProfile base) {
  const char* path = std::getenv("PERIOD_LAB_TOLERANCES");
  if (path == nullptr || *path == '\0') return base;
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoFailure, std::string("cannot read tolerance profile ") + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("tolerance profile is not JSON: ") + e.what());
  }
  return apply_tolerances(base, j);
}

}  // namespace period_lab::experiments
