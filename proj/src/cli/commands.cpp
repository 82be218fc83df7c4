#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "btp/coordgeo.hpp"
#include "internal.hpp"

namespace btp::cli {

using nlohmann::json;

namespace detail {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join_indices(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// Verdicts shared by every exact model, in a fixed order.
void record_check(Recorder& rec, const InfinitesimalModel& model, const CheckReport& rep) {
  std::map<std::string, std::string> wit;
  for (const auto& [name, res] : rep.details)
    if (!res.holds || !res.applicable) wit[name] = witness_text(model, res);
  auto put = [&](const std::string& name, bool v) { rec.note(name, v, v ? "" : wit[name]); };
  put("kahler", rep.kahler);
  put("balanced", rep.balanced);
  put("pluriclosed", rep.pluriclosed);
  put("chern_flat", rep.chern_flat);
  put("bismut_flat", rep.bismut_flat);
  put("btp", rep.btp);
  put("bas", rep.bas);
  put("naturally_reductive", rep.naturally_reductive);
  put("bismut_parallel_chern_torsion", rep.bismut_parallel_chern_torsion);
  if (rep.symmetry_rb_ijkl) {
    put("rb_ijk_lbar_zero", *rep.symmetry_rb_ijkl);
    put("rb_equals_chern_swapped", *rep.symmetry_rb_chern_swap);
    put("rb_pair_symmetric", *rep.symmetry_rb_pair_swap);
  }
  json eta = json::array();
  for (const GQ& e : rep.eta) eta.push_back(to_string(e));
  rec.value("eta", eta);
  rec.value("r_B", rep.r_B);
  rec.value("real_dimension", model.dim_m);
}

bool tensors_equal(const Tensor& a, const Tensor& b) {
  Tensor d = a - b;
  d.prune();
  return d.is_zero();
}

void evaluate_flag(Recorder& rec, const FlagSpace& s) {
  FlagManifold fm = flag_manifold(s);
  FlagComplexStructure j = standard_complex_structure(fm);
  FlagMetric g = flag_metric(fm, s);
  InfinitesimalModel model = flag_model(fm, j, g);
  record_check(rec, model, check_conditions(model));
  bool closed = nomizu_bismut_flag(fm, j, g) == bismut_connection(model) &&
                nomizu_levi_civita_flag(fm, g) == levi_civita(model) &&
                tensors_equal(bismut_torsion_flag(fm, j, g), torsion(model, bismut_connection(model))) &&
                check_btp_flag(fm, j, g).holds == check_btp(model).holds;
  rec.note("closed_forms", closed, closed ? "" : "root-space formulas differ from the generic engine");
  rec.value("flag", fm.name());
  rec.value("classes", fm.num_classes());
  rec.value("metric", rational_vector(g.values));
  rec.value("hermitian_symmetric", hermitian_symmetric(fm));
}

void evaluate_canonical(Recorder& rec, const CanonicalSpace& s) {
  InfinitesimalModel model = canonical_metric(CartanType::parse(s.cartan));
  record_check(rec, model, check_conditions(model));
  // Chern torsion of the left-invariant frame is minus the bracket.
  bool closed = tensors_equal(torsion(model, chern_connection(model)) + model.bracket_m, Tensor(3));
  rec.note("closed_forms", closed, closed ? "" : "Chern torsion differs from minus the bracket");
  rec.value("quadratic_identity_residual", to_string(btp2_identity(model).exact_residual));
}

void evaluate_samelson(Recorder& rec, const SamelsonSpace& s) {
  SamelsonStructure st = samelson_structure(s);
  SamelsonMetric metric = samelson_metric(st, s);
  SamelsonModel sm = samelson_model(st, metric);
  record_check(rec, sm.model, check_conditions(sm.model));
  std::string mismatch = samelson_formula_mismatch(sm, metric);
  rec.note("closed_forms", mismatch.empty(), mismatch);
  bool unit = true;
  for (const Q& v : metric.root_values) unit = unit && v == 1;
  if (unit) {
    std::string curv = samelson_curvature_mismatch(sm);
    rec.note("curvature_formula", curv.empty(), curv);
  }
  rec.value("root_values", rational_vector(metric.root_values));
}

void evaluate_nilpotent(Recorder& rec, const NilpotentSpace& s) {
  NilpotentNormalForm nf = nilpotent_form(s);
  InfinitesimalModel model = nilpotent_model(nf);
  record_check(rec, model, check_conditions(model));
  bool match = nilpotent_chern_curvature(nf) == chern_curvature_in_basis(model, nf.n);
  rec.note("curvature_formula", match, match ? "" : "structure-constant curvature differs from the engine");
}

void evaluate_m4(Recorder& rec, const M4Space& s) {
  M4Report r = m4_example(s.a1, s.a2);
  record_check(rec, r.model, r.check);
  json cases = json::array();
  for (const Q& c : r.case_residuals) cases.push_back(to_string(c));
  rec.note("lck", r.lck_identity, r.lck_identity ? "" : "d omega - theta ^ omega residuals " + cases.dump());
  rec.value("g_alpha", to_string(r.g_alpha));
  rec.value("g_beta", to_string(r.g_beta));
  rec.value("g_alpha_plus_beta", to_string(r.g_sum));
  rec.value("lee_scale", to_string(r.lee_scale));
  rec.value("reductive_witness", to_string(r.reductive_witness));
}

void evaluate_calabi_eckmann(Recorder& rec, const CalabiEckmannSpace& s) {
  CalabiEckmannParams p = calabi_eckmann_params(s);
  Mat f = calabi_eckmann_map(s);
  InfinitesimalModel model = calabi_eckmann_model(p, f);
  record_check(rec, model, check_conditions(model));
  json fj = json::array();
  for (int i = 0; i < 2; ++i) fj.push_back({to_string(f(i, 0)), to_string(f(i, 1))});
  rec.value("f", fj);
  rec.value("presentation_witness", calabi_eckmann_reductive_witness(p, f));
}

void evaluate_hopf(Recorder& rec, const HopfSpace& s, double tol) {
  CoordinateMetric metric = s.perturbation == 0 ? hopf_metric(s.n) : perturbed_hopf_metric(s.n, s.perturbation);
  HopfResidual res = hopf_btp_residual(metric, annulus_samples(s.n, s.points, s.seed), s.step);
  std::ostringstream b, x;
  b << "max |nabla^b T| = " << res.btp;
  x << "max |d xi - [theta^b, xi]| = " << res.xi_identity;
  rec.note("btp", res.btp < tol, b.str());
  rec.note("xi_identity", res.xi_identity < tol, x.str());
  rec.value("btp_residual", res.btp);
  rec.value("xi_residual", res.xi_identity);
  rec.value("curvature_gap", res.curvature_gap);
  rec.value("theta_gap", res.theta_gap);
  rec.value("points", res.points);
  rec.value("step", s.step);
  for (const std::string& w : res.warnings) rec.warn(w);
}

}  // namespace

Recorder::Recorder(std::string name, std::string type) {
  result_.name = std::move(name);
  result_.type = std::move(type);
}

void Recorder::note(const std::string& verdict, bool value, const std::string& witness) {
  result_.verdicts.push_back({verdict, value});
  if (!witness.empty() && !value) result_.witnesses[verdict] = witness;
}

void Recorder::require(const std::string& verdict, bool value, const std::string& witness) {
  expect(verdict, value, true, witness);
}

void Recorder::expect(const std::string& verdict, bool value, bool wanted, const std::string& witness) {
  result_.verdicts.push_back({verdict, value});
  if (!witness.empty() && (!value || value != wanted)) result_.witnesses[verdict] = witness;
  if (value != wanted) {
    std::string msg = verdict + ": expected " + (wanted ? "true" : "false") + ", got " + (value ? "true" : "false");
    if (!witness.empty()) msg += " (" + witness + ")";
    result_.failures.push_back(msg);
  }
}

SpaceResult Recorder::finish() {
  result_.seconds = clock_.seconds();
  return result_;
}

FlagManifold flag_manifold(const FlagSpace& s) { return build_flag(CartanType::parse(s.cartan), s.isotropy); }

FlagMetric flag_metric(const FlagManifold& fm, const FlagSpace& s) {
  if (!s.metric) return killing_metric(fm);
  FlagMetric g{*s.metric};
  validate_metric(fm, g);
  return g;
}

SamelsonStructure samelson_structure(const SamelsonSpace& s) {
  SamelsonStructure st;
  for (const std::string& f : s.factors) st.factors.push_back(CartanType::parse(f));
  return st;
}

SamelsonMetric samelson_metric(const SamelsonStructure& st, const SamelsonSpace& s) {
  std::size_t count = 0;
  int rank = 0;
  for (const CartanType& ct : st.factors) {
    count += RootSystem(ct).num_positive();
    rank += ct.rank;
  }
  SamelsonMetric metric{s.root_values ? *s.root_values : std::vector<Q>(count, Q(1)), Mat()};
  if (s.killing_torus) {
    // -B(i h_a, i h_b) = B(h_a, h_b), block diagonal over the factors.
    metric.torus_metric = Mat(rank, rank);
    int offset = 0;
    for (const CartanType& ct : st.factors) {
      ChevalleyData ch{RootSystem(ct)};
      for (int a = 0; a < ct.rank; ++a)
        for (int b = 0; b < ct.rank; ++b) metric.torus_metric(offset + a, offset + b) = GQ(ch.killing_h(a, b));
      offset += ct.rank;
    }
  }
  return metric;
}

NilpotentNormalForm nilpotent_form(const NilpotentSpace& s) {
  NilpotentNormalForm nf;
  nf.n = s.n;
  nf.r = s.r;
  nf.y = Mat(s.n - s.r, s.r);
  for (int a = 0; a < s.n - s.r; ++a)
    for (int i = 0; i < s.r; ++i) nf.y(a, i) = s.y[a][i];
  return nf;
}

CalabiEckmannParams calabi_eckmann_params(const CalabiEckmannSpace& s) {
  return {s.m1, s.m2, s.alpha, s.beta, s.c1, s.c2, s.q_scale};
}

Mat calabi_eckmann_map(const CalabiEckmannSpace& s) {
  if (!s.f) return calabi_eckmann_linear_solution(calabi_eckmann_params(s));
  Mat f(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) f(i, k) = GQ((*s.f)[i][k]);
  return f;
}

std::optional<InfinitesimalModel> exact_model(const SpaceSpec& spec) {
  return std::visit(
      Overloaded{[](const FlagSpace& s) -> std::optional<InfinitesimalModel> {
                   FlagManifold fm = flag_manifold(s);
                   return flag_model(fm, standard_complex_structure(fm), flag_metric(fm, s));
                 },
                 [](const CanonicalSpace& s) -> std::optional<InfinitesimalModel> {
                   return canonical_metric(CartanType::parse(s.cartan));
                 },
                 [](const SamelsonSpace& s) -> std::optional<InfinitesimalModel> {
                   SamelsonStructure st = samelson_structure(s);
                   return samelson_model(st, samelson_metric(st, s)).model;
                 },
                 [](const NilpotentSpace& s) -> std::optional<InfinitesimalModel> {
                   return nilpotent_model(nilpotent_form(s));
                 },
                 [](const M4Space& s) -> std::optional<InfinitesimalModel> { return m4_example(s.a1, s.a2).model; },
                 [](const CalabiEckmannSpace& s) -> std::optional<InfinitesimalModel> {
                   return calabi_eckmann_model(calabi_eckmann_params(s), calabi_eckmann_map(s));
                 },
                 [](const HopfSpace&) -> std::optional<InfinitesimalModel> { return std::nullopt; }},
      spec.data);
}

SpaceResult evaluate_space(const SpaceSpec& spec, const Options& options) {
  Recorder rec(spec.name, spec.type());
  try {
    std::visit(Overloaded{[&](const FlagSpace& s) { evaluate_flag(rec, s); },
                          [&](const CanonicalSpace& s) { evaluate_canonical(rec, s); },
                          [&](const SamelsonSpace& s) { evaluate_samelson(rec, s); },
                          [&](const NilpotentSpace& s) { evaluate_nilpotent(rec, s); },
                          [&](const M4Space& s) { evaluate_m4(rec, s); },
                          [&](const CalabiEckmannSpace& s) { evaluate_calabi_eckmann(rec, s); },
                          [&](const HopfSpace& s) { evaluate_hopf(rec, s, options.tolerance); }},
               spec.data);
  } catch (const std::invalid_argument& e) {
    // Constructors reject parameter combinations the config parser cannot see.
    throw ConfigError(spec.name + ": " + e.what());
  }
  return rec.finish();
}

void apply_expectations(const SpaceSpec& spec, SpaceResult& result) {
  auto compare = [&](const std::string& name, bool wanted) {
    std::optional<bool> v = result.verdict(name);
    if (!v) {
      result.failures.push_back(name + ": not available for " + result.type + " spaces");
      return;
    }
    if (*v == wanted) return;
    std::string msg = name + ": expected " + (wanted ? "true" : "false") + ", got " + (*v ? "true" : "false");
    auto w = result.witnesses.find(name);
    if (w != result.witnesses.end()) msg += " (" + w->second + ")";
    result.failures.push_back(msg);
  };
  for (const std::string& c : spec.checks) compare(c, true);
  for (const auto& [name, wanted] : spec.expect) compare(name, wanted);
}

std::string witness_text(const InfinitesimalModel& model, const ConditionResult& res) {
  std::string s = res.note;
  // Notes from the condition checks usually name the witness already.
  if (!res.witness.empty() && s.find(" at (") == std::string::npos) {
    try {
      s += " at " + describe_witness(model, res.witness);
    } catch (const std::exception&) {
      s += " at indices (" + join_indices(res.witness) + ")";
    }
  }
  if (!res.witness_value.empty()) s += " = " + res.witness_value;
  return s;
}

bool hermitian_symmetric(const FlagManifold& fm) {
  const RootSystem& rs = fm.ch.root_system();
  int painted = -1;
  for (int i = 0; i < rs.rank(); ++i) {
    bool in_iso = false;
    for (int k : fm.isotropy_simple) in_iso = in_iso || k == i;
    if (in_iso) continue;
    if (painted >= 0) return false;
    painted = i;
  }
  // The highest root is the last positive root in height order.
  return painted >= 0 && rs.root(rs.num_positive() - 1)[painted] == 1;
}

json rational_vector(const std::vector<Q>& v) {
  json a = json::array();
  for (const Q& q : v) a.push_back(to_string(q));
  return a;
}

}  // namespace detail

using namespace detail;

RunReport cmd_check(const std::vector<SpaceSpec>& specs, const Options& options) {
  RunReport report;
  report.command = "check";
  for (const SpaceSpec& spec : specs) {
    SpaceResult r = evaluate_space(spec, options);
    apply_expectations(spec, r);
    report.spaces.push_back(std::move(r));
  }
  return report;
}

namespace {

json family_json(const FlagManifold& fm, const MetricFamily& fam) {
  json rel = json::array(), basis = json::array(), pts = json::array();
  for (const auto& r : fam.relations) rel.push_back(rational_vector(r));
  for (const auto& b : fam.basis) basis.push_back(rational_vector(b));
  for (const auto& p : fam.verified_points) pts.push_back(rational_vector(p));
  return {{"tag", to_string(fam.tag)}, {"dimension", fam.dimension()}, {"description", fam.describe(fm)},
          {"relations", rel},          {"basis", basis},                {"verified_points", pts}};
}

void solve_flag(Recorder& rec, const FlagSpace& s, const Options& options) {
  FlagManifold fm = flag_manifold(s);
  FlagComplexStructure j = standard_complex_structure(fm);
  SolverOptions opt;
  opt.cap = options.solver_cap;
  opt.samples = options.solver_samples;
  SolverReport rep = solve_btp_metrics(fm, j, opt);
  json fams = json::array(), outside = json::array(), summary = json::array();
  for (const MetricFamily& fam : rep.families) {
    fams.push_back(family_json(fm, fam));
    summary.push_back(to_string(fam.tag) + " (dimension " + std::to_string(fam.dimension()) + "): " + fam.describe(fm));
  }
  for (const auto& p : rep.outside_hits) outside.push_back(rational_vector(p));
  summary.push_back("samples " + std::to_string(rep.samples) + ", BTP hits " + std::to_string(rep.sample_hits) +
                    ", outside families " + std::to_string(rep.outside_hits.size()));
  if (!rep.certification.empty()) summary.push_back(rep.certification);
  rec.solver({{"flag", fm.name()},
              {"families", fams},
              {"partial", rep.partial},
              {"leaves", rep.leaves},
              {"samples", rep.samples},
              {"sample_hits", rep.sample_hits},
              {"outside_hits", outside},
              {"certification", rep.certification},
              {"summary", summary}});
  rec.note("partial", rep.partial);
  if (rep.partial) {
    rec.warn("solver cap " + std::to_string(opt.cap) + " exceeded by " + std::to_string(fm.complex_dim()) +
             " positive roots; families not computed");
    return;
  }
  rec.require("complete", rep.outside_hits.empty(), "sampled BTP metrics outside every family");
}

void solve_samelson(Recorder& rec, const SamelsonSpace& s) {
  SamelsonFamilyReport sr = solve_samelson_projectable(samelson_structure(s));
  json classes = sr.classes, exclusions = json::array(), summary = json::array();
  bool confirmed = true;
  for (const SamelsonTripleExclusion& e : sr.exclusions) {
    confirmed = confirmed && e.value != 0 && e.engine_value == GQ(e.value);
    exclusions.push_back({{"factor", e.factor},
                          {"a", e.a},
                          {"b", e.b},
                          {"torus_index", e.torus_index},
                          {"value", to_string(e.value)},
                          {"engine_value", to_string(e.engine_value)}});
  }
  json basis = json::array();
  for (const auto& b : sr.family.basis) basis.push_back(rational_vector(b));
  summary.push_back("projectable BTP family of dimension " + std::to_string(sr.family.dimension()) + " over " +
                    std::to_string(sr.classes.size()) + " root classes");
  summary.push_back(std::to_string(sr.exclusions.size()) + " additive alternatives excluded, " +
                    std::to_string(sr.verified) + " points verified");
  rec.solver({{"basis", basis},
              {"classes", classes},
              {"exclusions", exclusions},
              {"verified", sr.verified},
              {"summary", summary}});
  rec.require("exclusions_confirmed", confirmed, "an exclusion witness vanished or disagreed with the engine");
}

void solve_calabi_eckmann(Recorder& rec, const CalabiEckmannSpace& s) {
  CalabiEckmannParams p = calabi_eckmann_params(s);
  CalabiEckmannResult res = calabi_eckmann_search(p);
  Mat lin = calabi_eckmann_linear_solution(p);
  auto mat_json = [](const Mat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
      a.push_back(row);
    }
    return a;
  };
  json summary = json::array();
  summary.push_back(res.f ? "naturally reductive presentation found in the search box" : "search box exhausted");
  summary.push_back("linear solution " + mat_json(lin).dump());
  if (!res.note.empty()) summary.push_back(res.note);
  rec.solver({{"f", res.f ? mat_json(*res.f) : json(nullptr)},
              {"linear_solution", mat_json(lin)},
              {"candidates", res.candidates},
              {"max_den", res.max_den},
              {"bound", res.bound},
              {"note", res.note},
              {"summary", summary}});
  rec.note("found", res.f.has_value());
  if (res.f) rec.require("matches_linear_solution", *res.f == lin);
}

}  // namespace

RunReport cmd_solve(const std::vector<SpaceSpec>& specs, const Options& options) {
  for (const SpaceSpec& spec : specs)
    if (!std::holds_alternative<FlagSpace>(spec.data) && !std::holds_alternative<SamelsonSpace>(spec.data) &&
        !std::holds_alternative<CalabiEckmannSpace>(spec.data))
      throw ConfigError(spec.name + ": solve supports flag, samelson and calabi-eckmann spaces");
  RunReport report;
  report.command = "solve";
  for (const SpaceSpec& spec : specs) {
    Recorder rec(spec.name, spec.type());
    try {
      std::visit(Overloaded{[&](const FlagSpace& s) { solve_flag(rec, s, options); },
                            [&](const SamelsonSpace& s) { solve_samelson(rec, s); },
                            [&](const CalabiEckmannSpace& s) { solve_calabi_eckmann(rec, s); },
                            [](const auto&) {}},
                 spec.data);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(spec.name + ": " + e.what());
    }
    report.spaces.push_back(rec.finish());
  }
  return report;
}

std::vector<CatalogEntry> builtin_catalog() {
  auto make = [](const std::string& name, SpaceData data, const std::string& description) {
    CatalogEntry e;
    e.spec.name = name;
    e.spec.data = std::move(data);
    e.description = description;
    return e;
  };
  auto qs = [](std::initializer_list<long> v) {
    std::vector<Q> out;
    for (long x : v) out.emplace_back(x);
    return out;
  };
  // The two-summand B-series instance so(7) / (so(3) + u(2)).
  std::vector<int> b3_iso = class_c_catalog()[0].instance(3, 2).isotropy_simple;
  return {
      make("su3-t-killing", FlagSpace{"A2", {}, std::nullopt}, "full flag of SU(3), Killing metric"),
      make("su3-t-kahler", FlagSpace{"A2", {}, qs({1, 1, 2})}, "full flag of SU(3), Kaehler metric (1, 1, 2)"),
      make("su3-t-generic", FlagSpace{"A2", {}, qs({1, 2, 2})}, "full flag of SU(3), metric (1, 2, 2)"),
      make("cp2-killing", FlagSpace{"A2", {1}, std::nullopt}, "complex projective plane, Killing metric"),
      make("su4-t-killing", FlagSpace{"A3", {}, std::nullopt}, "full flag of SU(4), Killing metric"),
      make("g2-u2-killing", FlagSpace{"G2", {0}, std::nullopt}, "G2 / U(2), Killing metric"),
      make("so7-so3u2-killing", FlagSpace{"B3", b3_iso, std::nullopt}, "SO(7) / (SO(3) x U(2)), Killing metric"),
      make("sl2-canonical", CanonicalSpace{"A1"}, "SL(2, C) with the canonical left-invariant metric"),
      make("sl3-canonical", CanonicalSpace{"A2"}, "SL(3, C) with the canonical left-invariant metric"),
      make("su3-samelson", SamelsonSpace{{"A2"}, std::nullopt, false},
           "SU(3), Samelson structure, unit root values, identity on the torus"),
      make("su3-samelson-skewed", SamelsonSpace{{"A2"}, qs({1, 2, 3}), false}, "SU(3), Samelson structure, metric (1, 2, 3)"),
      make("su2xsu2-samelson", SamelsonSpace{{"A1", "A1"}, qs({1, 3}), false}, "SU(2) x SU(2), Samelson, values (1, 3)"),
      // On SU(3) no rational torus structure is orthogonal for -B; on SU(2) x SU(2) the default one is.
      make("su2xsu2-bi-invariant", SamelsonSpace{{"A1", "A1"}, std::nullopt, true},
           "SU(2) x SU(2), Samelson structure, bi-invariant metric"),
      make("nilpotent-n2", NilpotentSpace{2, 1, {{GQ(Q(1))}}}, "two-step nilpotent normal form, n = 2"),
      make("nilpotent-n3", NilpotentSpace{3, 1, {{GQ(Q(1))}, {GQ(Q(2), Q(1))}}}, "nilpotent normal form, n = 3, r = 1"),
      make("m4-minus3-1", M4Space{-3, 1}, "LCK fourfold over the Wallach space, (a1, a2) = (-3, 1)"),
      make("s3xs3-calabi-eckmann", CalabiEckmannSpace{}, "Calabi-Eckmann S3 x S3, naturally reductive presentation"),
      make("hopf-n2", HopfSpace{2, 20, 1, 1e-5, 0}, "Hopf manifold of dimension 2, isosceles metric"),
      make("hopf-n2-perturbed", HopfSpace{2, 20, 1, 1e-5, 0.3}, "conformally perturbed Hopf metric"),
  };
}

RunReport cmd_catalog(const Options& options, const std::optional<std::string>& golden_path) {
  std::optional<json> golden;
  std::vector<CatalogEntry> entries = builtin_catalog();
  if (golden_path) {
    std::ifstream in(*golden_path);
    if (!in) throw ConfigError("cannot open golden file '" + *golden_path + "'");
    try {
      golden = json::parse(in).at("entries");
    } catch (const json::exception& e) {
      throw ConfigError("malformed golden file '" + *golden_path + "': " + e.what());
    }
    for (const auto& [name, flags] : golden->items()) {
      bool known = false;
      for (const CatalogEntry& e : entries) known = known || e.spec.name == name;
      if (!known) throw ConfigError("golden file names unknown catalog entry '" + name + "'");
      if (!flags.is_object()) throw ConfigError("golden entry '" + name + "' must map verdicts to booleans");
    }
  }
  RunReport report;
  report.command = "catalog";
  for (CatalogEntry& entry : entries) {
    if (golden) {
      if (golden->contains(entry.spec.name)) {
        for (const auto& [verdict, value] : golden->at(entry.spec.name).items()) {
          if (!value.is_boolean()) throw ConfigError("golden value for '" + verdict + "' must be a boolean");
          entry.spec.expect[verdict] = value.get<bool>();
        }
      }
    }
    SpaceResult r = evaluate_space(entry.spec, options);
    r.values["description"] = entry.description;
    apply_expectations(entry.spec, r);
    if (golden && !golden->contains(entry.spec.name)) r.failures.push_back("no golden record for this entry");
    report.spaces.push_back(std::move(r));
  }
  return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bismut torsion-parallel checks for invariant Hermitian structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Options options;
  app.add_option("--format", options.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--tolerance", options.tolerance, "threshold for floating-point residuals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--solver-cap", options.solver_cap, "largest flag the metric solver branches on")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", options.solver_samples, "rejection samples drawn by the flag solver")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "omit timings so reports compare byte for byte");

  std::string config_path;
  auto* check = app.add_subcommand("check", "check every space in a JSON config");
  check->add_option("file", config_path, "config file")->required();
  auto* solve = app.add_subcommand("solve", "list invariant BTP metric families");
  solve->add_option("file", config_path, "config file")->required();
  std::string golden;
  auto* catalog = app.add_subcommand("catalog", "check the built-in catalog");
  catalog->add_option("--golden", golden, "expected verdicts per entry");
  std::string theorem_id;
  auto* theorem = app.add_subcommand("theorem", "run a scripted verification bundle; 'list' shows the ids");
  theorem->add_option("id", theorem_id, "bundle id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  options.timing = !no_timing;

  try {
    RunReport report;
    if (*check) {
      report = cmd_check(load_config(config_path), options);
    } else if (*solve) {
      report = cmd_solve(load_config(config_path), options);
    } else if (*catalog) {
      report = cmd_catalog(options, golden.empty() ? std::nullopt : std::optional<std::string>(golden));
    } else if (theorem_id == "list") {
      for (const TheoremBundle& b : theorem_bundles()) out << b.id << "  " << b.summary << "\n";
      return 0;
    } else {
      report = cmd_theorem(theorem_id, options);
    }
    if (options.format == "json")
      out << to_json(report, options.timing).dump(2) << "\n";
    else
      out << to_text(report, options.timing);
    return report.exit_code();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace btp::cli
