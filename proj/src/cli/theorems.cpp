#include <functional>
#include <random>
#include <sstream>

#include "btp/coordgeo.hpp"
#include "internal.hpp"

namespace btp::cli {

using nlohmann::json;
using namespace detail;

namespace {

using Bundle = std::function<void(RunReport&, const Options&)>;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool zero_tensor(Tensor t) {
  t.prune();
  return t.is_zero();
}

// ---------------------------------------------------------------------------

void chevalley_bundle(RunReport& rep, const Options&) {
  for (const char* name : {"A1", "A2", "A3", "B2", "G2"}) {
    Recorder rec(std::string("chevalley ") + name, "root-system");
    ChevalleyData ch{RootSystem(CartanType::parse(name))};
    std::string bad = check_chevalley_invariants(ch);
    rec.require("invariants", bad.empty(), bad);
    rec.value("roots", ch.root_system().num_roots());
    rep.spaces.push_back(rec.finish());
  }
}

void canonical_bundle(RunReport& rep, const Options&) {
  for (const char* name : {"A1", "A2"}) {
    Recorder rec(std::string("canonical ") + name, "canonical");
    CartanType ct = CartanType::parse(name);
    InfinitesimalModel m = canonical_metric(ct);
    CheckReport cr = check_conditions(m);
    int n = m.dim_m / 2;
    rec.require("btp", cr.btp);
    rec.require("chern_flat", cr.chern_flat);
    rec.expect("kahler", cr.kahler, false);

    Tensor tc = torsion(m, chern_connection(m));
    rec.require("chern_torsion_is_minus_bracket", zero_tensor(tc + m.bracket_m));
    // On u x u the Bismut torsion is three times the bracket.
    Tensor tb = torsion(m, bismut_connection(m));
    bool tripled = true;
    int idx[3];
    for (const auto& [key, v] : m.bracket_m.data()) {
      m.bracket_m.unpack(key, idx);
      if (idx[0] < n && idx[1] < n && idx[2] < n) tripled = tripled && tb.get({idx[0], idx[1], idx[2]}) == v * GQ(3);
    }
    rec.require("bismut_torsion_on_u_is_3_bracket", tripled);
    NomizuOperator nb = bismut_connection(m);
    bool vanishes = true;
    for (int x = n; x < 2 * n; ++x) vanishes = vanishes && nb.op[x].is_zero();
    rec.require("bismut_connection_zero_on_Ju", vanishes);
    rep.spaces.push_back(rec.finish());
  }
}

void chern_flat_bas_bundle(RunReport& rep, const Options&) {
  for (const char* name : {"A1", "A2"}) {
    Recorder rec(std::string("canonical ") + name, "canonical");
    InfinitesimalModel m = canonical_metric(CartanType::parse(name));
    ConditionResult bas = check_bas(m);
    rec.require("chern_flat", check_conditions(m, {false}).chern_flat);
    rec.require("bas", bas.holds, witness_text(m, bas));
    rep.spaces.push_back(rec.finish());
  }
}

void quadratic_identity_bundle(RunReport& rep, const Options&) {
  for (const CatalogEntry& entry : builtin_catalog()) {
    std::optional<InfinitesimalModel> m = exact_model(entry.spec);
    if (!m) continue;
    CheckReport cr = check_conditions(*m, {false});
    if (!(cr.chern_flat && cr.btp)) continue;
    Recorder rec(entry.spec.name, entry.spec.type());
    Btp2Report b = btp2_identity(*m);
    rec.require("quadratic_identity", b.exact_residual == 0, "residual " + to_string(b.exact_residual));
    rec.value("floating_residual", b.residual);
    rep.spaces.push_back(rec.finish());
  }
  if (rep.spaces.empty()) {
    Recorder rec("catalog", "catalog");
    rec.fail("no Chern-flat BTP model in the catalog");
    rep.spaces.push_back(rec.finish());
  }
}

// Coordinates of E_a in the compact-form basis of the canonical algebra.
Vec root_vector(const CartanType& ct, int root) {
  ChevalleyData ch{RootSystem(ct)};
  Mat emb = compact_form_embedding(ch);
  Vec unit(emb.rows());
  unit[ct.rank + root] = GQ(1);
  return *solve(emb, unit);
}

void b_isometry_bundle(RunReport& rep, const Options&) {
  CartanType a1 = CartanType::parse("A1");
  ComplexGroupMetric g = canonical_complex_metric(a1);
  {
    Recorder rec("sl2: g and 2g", "canonical");
    ComplexGroupMetric twice{"2g", g.algebra, g.hermitian * GQ(2)};
    BIsometryReport r = b_isometry_relation(g, twice);
    rec.require("residual_zero", r.residual == 0, "residual " + to_string(r.residual));
    rec.require("rational_isometry", r.f.has_value());
    rec.value("a1_squared", to_string(r.a1_squared));
    rec.value("a1p_squared", to_string(r.a1p_squared));
    rep.spaces.push_back(rec.finish());
  }
  Vec e = root_vector(a1, 0);
  Vec f = root_vector(a1, 1);
  std::mt19937_64 rng(20240611);
  for (int sample = 0; sample < 5; ++sample) {
    Q s = random_rational(rng, -3, 3, 5);
    Q t = random_rational(rng, -3, 3, 5);
    Q u = random_rational(rng, -3, 3, 5);
    // A product of unipotent factors exp(ad sE) exp(ad tF) exp(ad uE).
    Mat k = exp_ad_nilpotent(g.algebra, scaled(e, GQ(s))) * exp_ad_nilpotent(g.algebra, scaled(f, GQ(t))) *
            exp_ad_nilpotent(g.algebra, scaled(e, GQ(u)));
    Recorder rec("sl2: g and g o Ad(k), sample " + std::to_string(sample + 1), "canonical");
    BIsometryReport r = b_isometry_relation(g, pull_back(g, k));
    rec.require("residual_zero", r.residual == 0, "residual " + to_string(r.residual));
    rec.value("parameters", json::array({to_string(s), to_string(t), to_string(u)}));
    rep.spaces.push_back(rec.finish());
  }
}

std::vector<FlagManifold> killing_instances() {
  std::vector<FlagManifold> out;
  out.push_back(build_flag(CartanType::parse("A2"), {}));
  out.push_back(build_flag(CartanType::parse("A3"), {}));
  for (const ClassCRecord& row : class_c_catalog()) {
    if (row.rank == 0) {
      for (int ell = 2; ell <= 4; ++ell) {
        int max_p = row.series == 'B' ? ell : (row.series == 'C' ? ell - 1 : ell - 2);
        if (row.series == 'D' && ell < 4) continue;
        for (int p = 1; p <= max_p; ++p) out.push_back(row.instance(ell, p));
      }
    } else if (row.rank <= 4) {
      out.push_back(row.instance());
    }
  }
  return out;
}

void killing_flag_bundle(RunReport& rep, const Options&) {
  for (const FlagManifold& fm : killing_instances()) {
    Recorder rec(fm.name(), "flag");
    FlagComplexStructure j = standard_complex_structure(fm);
    InfinitesimalModel m = flag_model(fm, j, killing_metric(fm));
    CheckReport cr = check_conditions(m, {false});
    bool symmetric = hermitian_symmetric(fm);
    rec.require("btp", cr.btp);
    rec.require("bas", cr.bas);
    rec.require("balanced", cr.balanced);
    rec.expect("kahler", cr.kahler, symmetric);
    rec.value("hermitian_symmetric", symmetric);
    rec.value("real_dimension", fm.real_dim());
    rep.spaces.push_back(rec.finish());
  }
}

// The solver must return exactly the Kaehler family and the Killing ray, with
// every verified point confirmed by the generic engine.
void kahler_or_killing(RunReport& rep, const Options& options, const FlagManifold& fm) {
  Recorder rec(fm.name(), "flag");
  FlagComplexStructure j = standard_complex_structure(fm);
  SolverOptions opt;
  opt.cap = options.solver_cap;
  opt.samples = options.solver_samples;
  SolverReport sr = solve_btp_metrics(fm, j, opt);
  if (sr.partial) {
    rec.warn("solver cap exceeded; families not computed");
    rec.fail("the classification needs the complete solver output");
    rep.spaces.push_back(rec.finish());
    return;
  }
  bool shape = sr.families.size() == 2 && sr.families[0].tag == FamilyTag::KahlerFamily &&
               sr.families[1].tag == FamilyTag::KillingRay;
  std::string listing;
  for (const MetricFamily& fam : sr.families) listing += to_string(fam.tag) + ": " + fam.describe(fm) + "; ";
  rec.require("families_are_kahler_and_killing", shape, listing);
  rec.require("no_btp_sample_outside", sr.outside_hits.empty());
  bool confirmed = true;
  int points = 0;
  for (const MetricFamily& fam : sr.families)
    for (const auto& p : fam.verified_points) {
      ++points;
      confirmed = confirmed && check_btp(flag_model(fm, j, FlagMetric{p})).holds;
    }
  rec.require("family_points_btp", confirmed && points > 0);
  rec.value("samples", sr.samples);
  rec.value("sample_hits", sr.sample_hits);
  rec.value("verified_points", points);
  rec.value("families", listing);
  rep.spaces.push_back(rec.finish());
}

void samelson_bundle(RunReport& rep, const Options&) {
  SamelsonStructure st{{CartanType::parse("A2")}, Mat()};
  {
    Recorder rec("su(3) projectable family", "samelson");
    SamelsonFamilyReport sr = solve_samelson_projectable(st);
    bool constant = sr.family.dimension() == 1 && sr.family.basis[0] == std::vector<Q>{1, 1, 1};
    rec.require("family_is_constant", constant);
    bool confirmed = !sr.exclusions.empty();
    for (const auto& e : sr.exclusions) confirmed = confirmed && e.value != 0 && e.engine_value == GQ(e.value);
    rec.require("additive_alternative_excluded", confirmed);
    rep.spaces.push_back(rec.finish());
  }
  {
    Recorder rec("su(3) constant metric", "samelson");
    SamelsonMetric unit{{1, 1, 1}, Mat()};
    SamelsonModel sm = samelson_model(st, unit);
    CheckReport cr = check_conditions(sm.model, {false});
    rec.require("btp", cr.btp);
    rec.require("bas", cr.bas);
    std::string curv = samelson_curvature_mismatch(sm);
    rec.require("curvature_formula", curv.empty(), curv);
    std::string forms = samelson_formula_mismatch(sm, unit);
    rec.require("closed_forms", forms.empty(), forms);
    rep.spaces.push_back(rec.finish());
  }
  for (const std::vector<Q>& values : {std::vector<Q>{1, 2, 3}, {1, 1, 2}, {2, 1, 1}, {1, 2, 2}}) {
    std::string label;
    for (const Q& v : values) label += (label.empty() ? "" : ", ") + to_string(v);
    Recorder rec("su(3) metric (" + label + ")", "samelson");
    SamelsonModel sm = samelson_model(st, {values, Mat()});
    ConditionResult btp = check_btp(sm.model);
    rec.expect("btp", btp.holds, false);
    rec.require("witness_reported", !btp.holds && !btp.witness.empty() && !btp.witness_value.empty());
    rec.value("witness", witness_text(sm.model, btp));
    rep.spaces.push_back(rec.finish());
  }
}

void nilpotent_bundle(RunReport& rep, const Options&) {
  std::mt19937_64 rng(1808);
  for (int sample = 0; sample < 10; ++sample) {
    NilpotentNormalForm nf;
    nf.n = 2 + static_cast<int>(rng() % 2);
    nf.r = 1 + static_cast<int>(rng() % (nf.n - 1));
    nf.y = Mat(nf.n - nf.r, nf.r);
    json y = json::array();
    for (int a = 0; a < nf.n - nf.r; ++a) {
      json row = json::array();
      for (int i = 0; i < nf.r; ++i) {
        nf.y(a, i) = GQ(random_rational(rng, -2, 2, 4), random_rational(rng, -2, 2, 4));
        row.push_back(to_string(nf.y(a, i)));
      }
      y.push_back(row);
    }
    Recorder rec("nilpotent sample " + std::to_string(sample + 1), "nilpotent");
    InfinitesimalModel m = nilpotent_model(nf);
    CheckReport cr = check_conditions(m, {false});
    rec.note("btp", cr.btp);
    rec.note("bas", cr.bas);
    rec.require("btp_implies_bas", !cr.btp || cr.bas);
    rec.require("curvature_formula", nilpotent_chern_curvature(nf) == chern_curvature_in_basis(m, nf.n));
    rec.value("n", nf.n);
    rec.value("r", nf.r);
    rec.value("y", y);
    rep.spaces.push_back(rec.finish());
  }
}

void hopf_bundle(RunReport& rep, const Options& options) {
  for (int n : {2, 3}) {
    Recorder rec("hopf n = " + std::to_string(n), "hopf");
    std::vector<CVec> pts = annulus_samples(n, 20, 2024);
    HopfResidual r = hopf_btp_residual(hopf_metric(n), pts, 1e-5);
    rec.require("btp", r.btp < options.tolerance, "residual " + fmt(r.btp));
    rec.require("xi_identity", r.xi_identity < options.tolerance, "residual " + fmt(r.xi_identity));
    ConvergenceReport conv = hopf_convergence(hopf_metric(n), pts);
    rec.require("second_order_convergence", conv.order >= 1.9, "observed order " + fmt(conv.order));
    rec.value("btp_residual", r.btp);
    rec.value("xi_residual", r.xi_identity);
    rec.value("order", conv.order);
    for (const std::string& w : r.warnings) rec.warn(w);
    rep.spaces.push_back(rec.finish());
  }
}

void m4_bundle(RunReport& rep, const Options&) {
  for (auto [a1, a2] : {std::pair<long, long>{-3, 1}, {-5, 1}, {-5, 2}}) {
    Recorder rec("m4 (" + std::to_string(a1) + ", " + std::to_string(a2) + ")", "m4");
    M4Report r = m4_example(a1, a2);
    rec.require("lck", r.lck_identity);
    rec.require("reductive_witness_nonzero", !r.reductive_witness.is_zero(), to_string(r.reductive_witness));
    rec.require("btp", r.check.btp);
    rec.expect("bas", r.check.bas, false);
    rec.value("lee_scale", to_string(r.lee_scale));
    rec.value("reductive_witness", to_string(r.reductive_witness));
    rep.spaces.push_back(rec.finish());
  }
}

void calabi_eckmann_bundle(RunReport& rep, const Options&) {
  CalabiEckmannParams p;
  Mat lin = calabi_eckmann_linear_solution(p);
  {
    Recorder rec("S3 x S3 linear solution", "calabi-eckmann");
    InfinitesimalModel m = calabi_eckmann_model(p, lin);
    CheckReport cr = check_conditions(m, {false});
    rec.require("presentation_reductive", calabi_eckmann_reductive_witness(p, lin).empty());
    rec.require("btp", cr.btp);
    rec.require("bas", cr.bas);
    CalabiEckmannResult search = calabi_eckmann_search(p, 1, 8);
    rec.require("search_finds_it", search.f.has_value() && *search.f == lin, search.note);
    rec.value("f00", to_string(lin(0, 0)));
    rep.spaces.push_back(rec.finish());
  }
  {
    Recorder rec("S3 x S3 with f = 0", "calabi-eckmann");
    std::vector<int> w = calabi_eckmann_reductive_witness(p, Mat(2, 2));
    rec.expect("presentation_reductive", w.empty(), false);
    rep.spaces.push_back(rec.finish());
  }
}

void cross_engine_bundle(RunReport& rep, const Options&) {
  for (const CatalogEntry& entry : builtin_catalog()) {
    std::optional<InfinitesimalModel> m = exact_model(entry.spec);
    if (!m) continue;
    Recorder rec(entry.spec.name, entry.spec.type());
    if (const auto* fs = std::get_if<FlagSpace>(&entry.spec.data)) {
      FlagManifold fm = flag_manifold(*fs);
      FlagComplexStructure j = standard_complex_structure(fm);
      FlagMetric g = flag_metric(fm, *fs);
      rec.require("bismut_closed_form", nomizu_bismut_flag(fm, j, g) == bismut_connection(*m));
      rec.require("levi_civita_closed_form", nomizu_levi_civita_flag(fm, g) == levi_civita(*m));
      rec.require("torsion_closed_form", zero_tensor(bismut_torsion_flag(fm, j, g) - torsion(*m, bismut_connection(*m))));
    } else if (const auto* ss = std::get_if<SamelsonSpace>(&entry.spec.data)) {
      SamelsonStructure st = samelson_structure(*ss);
      SamelsonMetric g = samelson_metric(st, *ss);
      std::string bad = samelson_formula_mismatch(samelson_model(st, g), g);
      rec.require("samelson_closed_form", bad.empty(), bad);
    }
    bool tensorial = check_btp(*m).holds;
    double componentwise = frame_residuals(*m).componentwise_btp;
    rec.note("btp", tensorial);
    rec.require("componentwise_agrees", tensorial == (componentwise < 1e-9), "componentwise " + fmt(componentwise));
    rec.value("componentwise_residual", componentwise);
    rep.spaces.push_back(rec.finish());
  }
}

void btp_symmetries_bundle(RunReport& rep, const Options&) {
  for (const CatalogEntry& entry : builtin_catalog()) {
    std::optional<InfinitesimalModel> m = exact_model(entry.spec);
    if (!m) continue;
    CheckReport cr = check_conditions(*m);
    if (!cr.btp) continue;
    Recorder rec(entry.spec.name, entry.spec.type());
    rec.require("rb_ijk_lbar_zero", cr.symmetry_rb_ijkl.value_or(false));
    rec.require("rb_pair_symmetric", cr.symmetry_rb_pair_swap.value_or(false));
    rec.note("rb_equals_chern_swapped", cr.symmetry_rb_chern_swap.value_or(false));
    rep.spaces.push_back(rec.finish());
  }
}

struct BundleDef {
  TheoremBundle info;
  Bundle run;
};

const std::vector<BundleDef>& registry() {
  static const std::vector<BundleDef> defs = {
      {{"chevalley", "Chevalley structure constants: antisymmetry, N-identities and Jacobi for A1-A3, B2, G2"},
       chevalley_bundle},
      {{"canonical-complex", "canonical metric on a complex simple group is Chern-flat and BTP; torsion formulas"},
       canonical_bundle},
      {{"chern-flat-bas", "Chern-flat BTP group metrics are BAS"}, chern_flat_bas_bundle},
      {{"quadratic-identity", "quadratic Chern torsion identity on every Chern-flat BTP catalog model"},
       quadratic_identity_bundle},
      {{"b-isometry", "B-isometries between BTP metrics on SL(2, C)"}, b_isometry_bundle},
      {{"killing-flag", "Killing metric on flags is BTP, BAS and balanced; Kaehler only when symmetric"},
       killing_flag_bundle},
      {{"flag-su3", "BTP metrics on SU(3)/T: Kaehler family or Killing ray"},
       [](RunReport& r, const Options& o) { kahler_or_killing(r, o, build_flag(CartanType::parse("A2"), {})); }},
      {{"flag-su4", "BTP metrics on SU(4)/T: Kaehler family or Killing ray"},
       [](RunReport& r, const Options& o) { kahler_or_killing(r, o, build_flag(CartanType::parse("A3"), {})); }},
      {{"two-summand", "BTP metrics on G2/U(2) and SO(7)/(SO(3) x U(2)): Kaehler family or Killing ray"},
       [](RunReport& r, const Options& o) {
         kahler_or_killing(r, o, build_flag(CartanType::parse("G2"), {0}));
         kahler_or_killing(r, o, class_c_catalog()[0].instance(3, 2));
       }},
      {{"samelson", "projectable BTP metrics on SU(3) with a Samelson structure are constant"}, samelson_bundle},
      {{"nilpotent", "BTP nilpotent normal forms are BAS; curvature from structure constants"}, nilpotent_bundle},
      {{"hopf", "isosceles Hopf metric is BTP (finite differences)"}, hopf_bundle},
      {{"m4", "LCK fourfold over the Wallach space: BTP, not BAS, not naturally reductive"}, m4_bundle},
      {{"calabi-eckmann", "naturally reductive presentation of the Calabi-Eckmann S3 x S3"}, calabi_eckmann_bundle},
      {{"cross-engine", "closed-form operators and componentwise BTP agree with the generic engine"},
       cross_engine_bundle},
      {{"btp-symmetries", "Bismut curvature symmetries on every BTP catalog model"}, btp_symmetries_bundle},
  };
  return defs;
}

}  // namespace

std::vector<TheoremBundle> theorem_bundles() {
  std::vector<TheoremBundle> out;
  for (const BundleDef& d : registry()) out.push_back(d.info);
  return out;
}

RunReport cmd_theorem(const std::string& id, const Options& options) {
  for (const BundleDef& d : registry()) {
    if (d.info.id != id) continue;
    RunReport rep;
    rep.command = "theorem";
    rep.subject = id;
    d.run(rep, options);
    return rep;
  }
  throw ConfigError("unknown theorem id '" + id + "'; run 'theorem list' for the available ids");
}

}  // namespace btp::cli
