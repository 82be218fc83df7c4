#include <sstream>

#include "btp/hermgeo.hpp"
#include "internal.hpp"

namespace btp {

namespace {

ConditionResult zero_check(const InfinitesimalModel& model, const Tensor& t, const std::string& what) {
  ConditionResult r;
  auto w = t.first_nonzero();
  r.holds = w.empty();
  if (!r.holds) {
    r.witness = w;
    r.witness_value = to_string(t.get(t.pack(w.data())));
    r.note = what + " nonzero at " + describe_witness(model, w);
  }
  return r;
}

// Columns f_1..f_n, conj f_1..conj f_n.
Mat frame_matrix(const InfinitesimalModel& model, const OrthogonalFrame& frame) {
  int n = frame.size();
  Mat f(model.dim_m, 2 * n);
  for (int i = 0; i < n; ++i) {
    f.set_column(i, frame.vectors[i]);
    f.set_column(n + i, model.conjugate(frame.vectors[i]));
  }
  return f;
}

Tensor in_frame(const Tensor& t, const Mat& f) {
  Tensor out = t;
  for (int s = 0; s < t.order(); ++s) out = apply_slot(out, s, f);
  return out;
}

}  // namespace

OrthogonalFrame holomorphic_frame(const InfinitesimalModel& model) {
  int n = model.dim_m;
  Mat shifted = model.J - Mat::identity(n) * GQ::I();
  std::vector<Vec> raw = nullspace(shifted);
  if (static_cast<int>(raw.size()) * 2 != n) {
    throw ModelError(model.name + ": (1,0) space has wrong dimension");
  }
  OrthogonalFrame frame;
  for (const Vec& v : raw) {
    Vec f = v;
    for (int l = 0; l < frame.size(); ++l) {
      GQ coeff = model.hermitian(v, frame.vectors[l]) / GQ(frame.norms[l]);
      f = sub(f, scaled(frame.vectors[l], coeff));
    }
    GQ nrm = model.hermitian(f, f);
    if (!nrm.is_real() || sgn(nrm.re) <= 0) throw ModelError(model.name + ": frame construction failed");
    frame.vectors.push_back(f);
    frame.norms.push_back(nrm.re);
  }
  return frame;
}

std::vector<GQ> chern_torsion_components(const InfinitesimalModel& model, const OrthogonalFrame& frame) {
  int n = frame.size();
  Tensor tc = torsion(model, chern_connection(model));
  std::vector<GQ> out(static_cast<std::size_t>(n) * n * n);
  int m = model.dim_m;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec v(m);
      int idx[3];
      for (const auto& [key, c] : tc.data()) {
        tc.unpack(key, idx);
        const GQ& a = frame.vectors[i][idx[1]];
        const GQ& b = frame.vectors[j][idx[2]];
        if (a.is_zero() || b.is_zero()) continue;
        v[idx[0]] += c * a * b;
      }
      for (int k = 0; k < n; ++k) {
        out[(static_cast<std::size_t>(k) * n + i) * n + j] = model.hermitian(v, frame.vectors[k]) / GQ(frame.norms[k]);
      }
    }
  }
  return out;
}

ConditionResult check_btp(const InfinitesimalModel& model) {
  NomizuOperator nb = bismut_connection(model);
  Tensor tb = torsion(model, nb);
  return zero_check(model, covariant_derivative(nb, tb, true), "nabla^b T^b");
}

ConditionResult check_bas(const InfinitesimalModel& model) {
  NomizuOperator nb = bismut_connection(model);
  Tensor tb = torsion(model, nb);
  ConditionResult btp = zero_check(model, covariant_derivative(nb, tb, true), "nabla^b T^b");
  if (!btp.holds) {
    btp.applicable = false;
    btp.note = "not applicable: " + btp.note;
    return btp;
  }
  return zero_check(model, covariant_derivative(nb, curvature(model, nb), true), "nabla^b R^b");
}

ConditionResult check_naturally_reductive(const InfinitesimalModel& model) {
  Tensor a = lower_output(model, model.bracket_m);  // (x, y, z) -> g([x,y]_m, z)
  Tensor sym(3);
  int idx[3];
  for (const auto& [key, v] : a.data()) {
    a.unpack(key, idx);
    sym.add({idx[0], idx[1], idx[2]}, v);
    sym.add({idx[0], idx[2], idx[1]}, v);
  }
  sym.prune();
  return zero_check(model, sym, "g([x,y]_m,z) + g(y,[x,z]_m)");
}

CheckReport check_conditions(const InfinitesimalModel& model, const CheckOptions& options) {
  validate(model);
  CheckReport rep;
  rep.name = model.name;
  int m = model.dim_m;

  NomizuOperator nb = bismut_connection(model);
  NomizuOperator nc = chern_connection(model);
  Tensor tb = torsion(model, nb);
  Tensor tc = torsion(model, nc);
  Tensor rb = curvature(model, nb);
  Tensor rc = curvature(model, nc);

  Tensor dw = d_omega(model);
  ConditionResult kahler = zero_check(model, dw, "d omega");
  rep.kahler = kahler.holds;

  // Pluriclosed: d of the (1,2)-part of d omega vanishes.
  Mat p = (Mat::identity(m) - model.J * GQ::I()) * GQ(Q(1, 2));
  Mat pbar = (Mat::identity(m) + model.J * GQ::I()) * GQ(Q(1, 2));
  Tensor part12(3);
  for (int slot = 0; slot < 3; ++slot) {
    Tensor t = dw;
    for (int s = 0; s < 3; ++s) t = apply_slot(t, s, s == slot ? p : pbar);
    part12 += t;
  }
  ConditionResult plc = zero_check(model, exterior_derivative(model, part12), "d(dw^{1,2})");
  rep.pluriclosed = plc.holds;

  ConditionResult cflat = zero_check(model, rc, "Chern curvature");
  rep.chern_flat = cflat.holds;
  ConditionResult bflat = zero_check(model, rb, "Bismut curvature");
  rep.bismut_flat = bflat.holds;

  ConditionResult btp = zero_check(model, covariant_derivative(nb, tb, true), "nabla^b T^b");
  rep.btp = btp.holds;
  rep.bismut_parallel_chern_torsion = covariant_derivative(nb, tc, true).is_zero();

  ConditionResult bas;
  if (rep.btp) {
    bas = zero_check(model, covariant_derivative(nb, rb, true), "nabla^b R^b");
  } else {
    bas.applicable = false;
    bas.note = "not applicable: torsion not parallel";
  }
  rep.bas = rep.btp && bas.holds;

  ConditionResult nr = check_naturally_reductive(model);
  rep.naturally_reductive = nr.holds;

  // eta(x) = trace of y -> T(y, x) for the Chern torsion.
  Vec eta_basis(m);
  int idx[4];
  for (const auto& [key, c] : tc.data()) {
    tc.unpack(key, idx);
    if (idx[0] == idx[1]) eta_basis[idx[2]] += c;
  }
  OrthogonalFrame frame = holomorphic_frame(model);
  int n = frame.size();
  for (int i = 0; i < n; ++i) rep.eta.push_back(dot(frame.vectors[i], eta_basis));
  ConditionResult balanced;
  balanced.holds = is_zero(eta_basis);
  if (!balanced.holds) {
    for (int x = 0; x < m; ++x)
      if (!eta_basis[x].is_zero()) {
        balanced.witness = {x};
        balanced.witness_value = to_string(eta_basis[x]);
        balanced.note = "eta nonzero at " + describe_witness(model, {x});
        break;
      }
  }
  rep.balanced = balanced.holds;

  // r_B: rank of sum_{r,s} tau^j_rs conj(tau^i_rs) / (nu_r nu_s).
  std::vector<GQ> tau = chern_torsion_components(model, frame);
  Mat bmat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GQ s;
      for (int r = 0; r < n; ++r)
        for (int q = 0; q < n; ++q) {
          const GQ& tj = tau[(static_cast<std::size_t>(j) * n + r) * n + q];
          const GQ& ti = tau[(static_cast<std::size_t>(i) * n + r) * n + q];
          if (tj.is_zero() || ti.is_zero()) continue;
          s += tj * ti.conj() / GQ(Q(frame.norms[r] * frame.norms[q]));
        }
      bmat(i, j) = s;
    }
  rep.r_B = rank(bmat);

  if (rep.btp && options.compute_symmetries) {
    Mat f = frame_matrix(model, frame);
    Tensor rb_low = in_frame(lower_output(model, rb), f);
    Tensor rc_low = in_frame(lower_output(model, rc), f);
    bool ijkl = true;
    bool chern_swap = true;
    bool pair_swap = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            if (!rb_low.get({i, j, k, n + l}).is_zero()) ijkl = false;
            GQ lhs = rb_low.get({i, n + j, k, n + l});
            if (lhs != rc_low.get({k, n + l, i, n + j})) chern_swap = false;
            if (lhs != rb_low.get({k, n + l, i, n + j})) pair_swap = false;
          }
    rep.symmetry_rb_ijkl = ijkl;
    rep.symmetry_rb_chern_swap = chern_swap;
    rep.symmetry_rb_pair_swap = pair_swap;
  }

  rep.details = {{"kahler", kahler},          {"balanced", balanced}, {"pluriclosed", plc},
                 {"chern_flat", cflat},       {"bismut_flat", bflat}, {"btp", btp},
                 {"bas", bas},                {"naturally_reductive", nr}};
  return rep;
}

nlohmann::json to_json(const CheckReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["flags"] = {{"kahler", report.kahler},         {"balanced", report.balanced},
                {"pluriclosed", report.pluriclosed}, {"chern_flat", report.chern_flat},
                {"bismut_flat", report.bismut_flat}, {"btp", report.btp},
                {"bas", report.bas},               {"naturally_reductive", report.naturally_reductive}};
  nlohmann::json eta = nlohmann::json::array();
  for (const auto& e : report.eta) eta.push_back(to_string(e));
  j["eta"] = eta;
  j["r_B"] = report.r_B;
  j["bismut_parallel_chern_torsion"] = report.bismut_parallel_chern_torsion;
  if (report.symmetry_rb_ijkl) {
    j["btp_symmetries"] = {{"rb_ijk_lbar_zero", *report.symmetry_rb_ijkl},
                           {"rb_equals_chern_swapped", *report.symmetry_rb_chern_swap},
                           {"rb_pair_symmetric", *report.symmetry_rb_pair_swap}};
  }
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [name, res] : report.details) {
    if (res.holds && res.applicable) continue;
    nlohmann::json e;
    e["applicable"] = res.applicable;
    e["indices"] = res.witness;
    e["value"] = res.witness_value;
    e["note"] = res.note;
    w[name] = e;
  }
  j["witnesses"] = w;
  return j;
}

std::string to_text(const CheckReport& report) {
  std::ostringstream os;
  os << report.name << "\n";
  auto flag = [&](const char* name, bool v) { os << "  " << name << ": " << (v ? "true" : "false") << "\n"; };
  flag("kahler", report.kahler);
  flag("balanced", report.balanced);
  flag("pluriclosed", report.pluriclosed);
  flag("chern_flat", report.chern_flat);
  flag("bismut_flat", report.bismut_flat);
  flag("btp", report.btp);
  flag("bas", report.bas);
  flag("naturally_reductive", report.naturally_reductive);
  os << "  r_B: " << report.r_B << "\n  eta:";
  for (const auto& e : report.eta) os << " " << to_string(e);
  os << "\n";
  for (const auto& [name, res] : report.details) {
    if (res.holds && res.applicable) continue;
    os << "  witness[" << name << "]: " << res.note;
    if (!res.witness_value.empty()) os << " = " << res.witness_value;
    os << "\n";
  }
  return os.str();
}

}  // namespace btp
