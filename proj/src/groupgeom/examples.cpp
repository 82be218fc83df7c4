#include <algorithm>
#include <numeric>

#include "btp/groupgeom.hpp"

namespace btp {

namespace {

Mat elementary(int n, int i, int j) {
  Mat e(n, n);
  e(i, j) = GQ(1);
  return e;
}

GQ trace(const Mat& a) {
  GQ t;
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// Coordinates of matrices with respect to a fixed list of basis matrices.
class MatrixCoordinates {
 public:
  explicit MatrixCoordinates(std::vector<Mat> basis) : basis_(std::move(basis)) {
    int n = basis_.front().rows();
    system_ = Mat(n * n, static_cast<int>(basis_.size()));
    for (int b = 0; b < static_cast<int>(basis_.size()); ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) system_(i * n + j, b) = basis_[b](i, j);
  }

  Vec operator()(const Mat& x) const {
    int n = x.rows();
    Vec flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flat[i * n + j] = x(i, j);
    auto c = solve(system_, flat);
    if (!c) throw GroupGeomError("matrix outside the span of the chosen basis");
    return *c;
  }

  const Mat& operator[](int b) const { return basis_[b]; }
  int size() const { return static_cast<int>(basis_.size()); }

 private:
  std::vector<Mat> basis_;
  Mat system_;
};

Q max_abs(const GQ& z) { return std::max(Q(abs(z.re)), Q(abs(z.im))); }

// ---------------------------------------------------------------------------
// The LCK fourfold.

constexpr int kEll = 0;
constexpr int kZ = 7;
// Root vectors in model order: E12, E23, E13, E21, E32, E31.
constexpr int kRootRow[6] = {0, 1, 0, 1, 2, 2};
constexpr int kRootCol[6] = {1, 2, 2, 0, 1, 0};

}  // namespace

M4Report m4_example(long a1, long a2) {
  if (a1 == 0 || a2 == 0 || !(a1 < a2) || !(2 * a2 < -a1)) {
    throw GroupGeomError("m4_example needs nonzero integers a1 < a2 < -a1/2, got (" + std::to_string(a1) + ", " +
                         std::to_string(a2) + ")");
  }
  const GQ i = GQ::I();
  Mat ell(3, 3);
  ell(0, 0) = i * GQ(Q(a1));
  ell(1, 1) = i * GQ(Q(a2));
  ell(2, 2) = i * GQ(Q(-a1 - a2));
  Mat h(3, 3);
  h(0, 0) = i * GQ(Q(2 * a2 + a1));
  h(1, 1) = i * GQ(Q(-2 * a1 - a2));
  h(2, 2) = i * GQ(Q(a1 - a2));

  std::vector<Mat> basis{ell};
  for (int r = 0; r < 6; ++r) basis.push_back(elementary(3, kRootRow[r], kRootCol[r]));
  basis.push_back(h);
  MatrixCoordinates coords(basis);
  auto killing = [](const Mat& x, const Mat& y) { return trace(x * y) * GQ(6); };

  InfinitesimalModel m = InfinitesimalModel::blank("M4 (" + std::to_string(a1) + ", " + std::to_string(a2) + ")", 8, 1);
  m.labels = {"l", "E_a", "E_b", "E_a+b", "E_-a", "E_-b", "E_-a-b", "z"};
  for (int x = 0; x < 7; ++x)
    for (int y = x + 1; y < 7; ++y) {
      Vec c = coords(commutator(coords[x], coords[y]));
      for (int k = 0; k < 7; ++k)
        if (!c[k].is_zero()) m.set_bracket_m(x, y, k, c[k]);
      if (!c[7].is_zero()) m.set_bracket_h(x, y, 0, c[7]);
    }
  for (int x = 0; x < 7; ++x) {
    Vec c = coords(commutator(h, coords[x]));
    if (!c[7].is_zero()) throw GroupGeomError("ad(h) does not preserve the tangent space");
    for (int k = 0; k < 7; ++k) m.isotropy[0](k, x) = c[k];
  }

  m.conj = Mat(8, 8);
  m.conj(kEll, kEll) = GQ(1);
  m.conj(kZ, kZ) = GQ(1);
  for (int r = 0; r < 6; ++r) {
    int partner = r < 3 ? r + 3 : r - 3;
    m.conj(1 + partner, 1 + r) = GQ(-1);
    m.J(1 + r, 1 + r) = r < 3 ? i : -i;
  }
  m.J(kEll, kZ) = GQ(1);  // J z = l
  m.J(kZ, kEll) = GQ(-1);

  // g_o(x, y) = omega_o(x, J y) with omega_o(x, y) = B([l, x], y).
  for (int x = 1; x < 7; ++x)
    for (int y = 1; y < 7; ++y) {
      Mat jy = coords[y] * m.J(y, y);
      m.g(x, y) = killing(commutator(ell, coords[x]), jy);
    }
  GQ ell_norm = -killing(ell, ell);
  m.g(kEll, kEll) = ell_norm;
  m.g(kZ, kZ) = ell_norm;
  validate(m);

  M4Report rep;
  // g_gamma = i gamma(l) for gamma = eps_rc.
  auto g_root = [&](int r) { return (i * (ell(kRootRow[r], kRootRow[r]) - ell(kRootCol[r], kRootCol[r]))).re; };
  rep.g_alpha = g_root(0);
  rep.g_beta = g_root(1);
  rep.g_sum = g_root(2);

  Mat omega = fundamental_form(m);
  Tensor dw = d_omega(m);
  // theta = c g(J l, .) with J l = -z.
  Vec jl(8);
  jl[kZ] = GQ(-1);
  Vec theta_unit = m.g.transpose() * jl;
  GQ probe = dw.get({1, 4, kZ}) * GQ(-1);  // d omega(E_a, E_-a, J l)
  GQ base = theta_unit[kZ] * GQ(-1) * omega(1, 4);
  GQ c = probe / base;
  if (!c.is_real()) throw GroupGeomError("Lee form scale is not real");
  rep.lee_scale = c.re;
  Vec theta = scaled(theta_unit, c);

  Tensor residual = dw;
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      for (int w = 0; w < 8; ++w) {
        GQ v = theta[x] * omega(y, w) - theta[y] * omega(x, w) + theta[w] * omega(x, y);
        if (!v.is_zero()) residual.add({x, y, w}, -v);
      }
  residual.prune();
  rep.lck_identity = residual.is_zero();
  rep.case_residuals.assign(4, Q(0));
  int idx[3];
  for (const auto& [key, v] : residual.data()) {
    residual.unpack(key, idx);
    int ms = 0, ls = 0, zs = 0;
    for (int s : idx) {
      if (s == kEll) ++ls;
      else if (s == kZ) ++zs;
      else ++ms;
    }
    int which = -1;
    if (ms == 3) which = 0;
    else if (ms == 2 && ls == 1) which = 1;
    else if (ms == 2 && zs == 1) which = 2;
    else if (ms == 1 && ls == 1 && zs == 1) which = 3;
    if (which >= 0) rep.case_residuals[which] = std::max(rep.case_residuals[which], max_abs(v));
  }

  // Simple roots a = E12 (index 1), b = E23 (index 2); -a-b = E31 (index 6).
  Vec ea(8), eb(8), emab(8);
  ea[1] = GQ(1);
  eb[2] = GQ(1);
  emab[6] = GQ(1);
  auto gbil = [&](const Vec& x, const Vec& y) { return dot(x, m.g * y); };
  rep.reductive_witness = gbil(m.bracket(ea, eb), emab) + gbil(eb, m.bracket(ea, emab));
  rep.reductive_difference = m.g(3, 6) - m.g(2, 5);
  rep.check = check_conditions(m);
  rep.model = std::move(m);
  return rep;
}

// ---------------------------------------------------------------------------
// Calabi-Eckmann manifolds.

namespace {

struct SphereFactor {
  int m = 1;
  Mat z;                       // i diag(m, -1, ..., -1)
  std::vector<Mat> tangent;    // E_{0j}, then E_{j0}
  std::vector<Mat> isotropy;   // su(m) in the lower block, complexified
  Q killing_scale;             // B(X, Y) = killing_scale tr(XY)
};

SphereFactor sphere_factor(int m) {
  SphereFactor f;
  f.m = m;
  int n = m + 1;
  f.killing_scale = Q(2 * n);
  f.z = Mat(n, n);
  f.z(0, 0) = GQ::I() * GQ(Q(m));
  for (int k = 1; k < n; ++k) f.z(k, k) = -GQ::I();
  for (int j = 1; j < n; ++j) f.tangent.push_back(elementary(n, 0, j));
  for (int j = 1; j < n; ++j) f.tangent.push_back(elementary(n, j, 0));
  for (int j = 1; j + 1 < n; ++j) {
    Mat d(n, n);
    d(j, j) = GQ(1);
    d(j + 1, j + 1) = GQ(-1);
    f.isotropy.push_back(d);
  }
  for (int j = 1; j < n; ++j)
    for (int k = 1; k < n; ++k)
      if (j != k) f.isotropy.push_back(elementary(n, j, k));
  return f;
}

void validate_params(const CalabiEckmannParams& p) {
  if (p.m1 < 1 || p.m2 < 1) throw GroupGeomError("sphere dimensions need m1, m2 >= 1");
  if (sgn(p.beta) == 0) throw GroupGeomError("beta must be nonzero");
  if (sgn(p.c1) <= 0 || sgn(p.c2) <= 0 || sgn(p.q_scale) <= 0) {
    throw GroupGeomError("metric constants c1, c2 and q_scale must be positive");
  }
}

Mat q_complex_structure(const CalabiEckmannParams& p) {
  Mat j(2, 2);
  j(0, 0) = GQ(p.alpha);
  j(0, 1) = GQ(Q(-(1 + p.alpha * p.alpha) / p.beta));
  j(1, 0) = GQ(p.beta);
  j(1, 1) = GQ(Q(-p.alpha));
  return j;
}

Mat q_metric(const CalabiEckmannParams& p) {
  Mat g(2, 2);
  Q off = -p.alpha / p.beta;
  g(0, 0) = GQ(p.q_scale);
  g(0, 1) = GQ(Q(p.q_scale * off));
  g(1, 0) = GQ(Q(p.q_scale * off));
  g(1, 1) = GQ(Q(p.q_scale * (1 + p.alpha * p.alpha) / (p.beta * p.beta)));
  return g;
}

// -c_i B_i(z_i, z_i).
Q z_norm(const SphereFactor& f, const Q& c) { return -c * f.killing_scale * trace(f.z * f.z).re; }

// Fast evaluation of the natural reductivity condition on column k of f:
// for x, w in m_i, -g([z_k, x], w) + g_q((1 + f) e_k, [x, w]_q) = 0.
class ColumnCondition {
 public:
  ColumnCondition(const CalabiEckmannParams& p, const std::vector<SphereFactor>& factors, const Mat& gq) {
    std::vector<Q> cs{p.c1, p.c2};
    for (int fi = 0; fi < 2; ++fi) {
      const SphereFactor& sf = factors[fi];
      for (const Mat& x : sf.tangent)
        for (const Mat& w : sf.tangent) {
          Mat xw = commutator(x, w);
          // q-part of [x, w]: the z component of the diagonal; the rest lies in h + m.
          GQ zc_coef = xw(0, 0) / sf.z(0, 0);
          Row r;
          r.factor = fi;
          // g_q(v, w_q) = sum_l v_l g_q(z_l, z_fi) zc_coef.
          r.q_pair[0] = gq(0, fi) * zc_coef;
          r.q_pair[1] = gq(1, fi) * zc_coef;
          // g([z_fi, x], w) = -c_fi B([z_fi, x], w); only z_k of the same factor acts.
          r.action = -GQ(cs[fi]) * GQ(sf.killing_scale) * trace(commutator(sf.z, x) * w);
          if (r.q_pair[0].is_zero() && r.q_pair[1].is_zero() && r.action.is_zero()) continue;
          rows_.push_back(r);
        }
    }
  }

  // Column k of 1 + f is (a, b).
  bool holds(int k, const GQ& a, const GQ& b) const {
    for (const Row& r : rows_) {
      GQ lhs = r.factor == k ? -r.action : GQ();
      lhs += a * r.q_pair[0] + b * r.q_pair[1];
      if (!lhs.is_zero()) return false;
    }
    return true;
  }

 private:
  struct Row {
    int factor = 0;
    GQ q_pair[2];
    GQ action;
  };
  std::vector<Row> rows_;
};

std::vector<Q> box_values(int max_den, int bound) {
  std::vector<Q> vals;
  for (int q = 1; q <= max_den; ++q)
    for (long num = -static_cast<long>(bound) * q; num <= static_cast<long>(bound) * q; ++num) {
      if (std::gcd(std::labs(num), static_cast<long>(q)) != 1 && num != 0) continue;
      if (num == 0 && q != 1) continue;
      vals.emplace_back(num, q);
    }
  for (Q& v : vals) v.canonicalize();
  std::sort(vals.begin(), vals.end(), [](const Q& a, const Q& b) {
    int c = cmp(Q(abs(a)), Q(abs(b)));
    return c != 0 ? c < 0 : a < b;
  });
  return vals;
}

}  // namespace

bool calabi_eckmann_excluded(const Mat& f) {
  if (f.rows() != 2 || f.cols() != 2) throw GroupGeomError("f must be a 2x2 matrix");
  return determinant(Mat::identity(2) + f).is_zero();
}

InfinitesimalModel calabi_eckmann_model(const CalabiEckmannParams& p, const Mat& f) {
  validate_params(p);
  if (calabi_eckmann_excluded(f)) throw GroupGeomError("f rho has eigenvalue -1, so V_f meets the isotropy");
  std::vector<SphereFactor> factors{sphere_factor(p.m1), sphere_factor(p.m2)};
  Mat s = *inverse(Mat::identity(2) + f);  // tangent q -> q-component of V_f
  Mat fs = f * s;

  int t1 = static_cast<int>(factors[0].tangent.size());
  int t2 = static_cast<int>(factors[1].tangent.size());
  int dim_m = 2 + t1 + t2;
  int h1 = static_cast<int>(factors[0].isotropy.size());
  int h2 = static_cast<int>(factors[1].isotropy.size());
  // Isotropy: su(m1), su(m2), then (-z_k, a_k) for k = 1, 2.
  int dim_h = h1 + h2 + 2;
  InfinitesimalModel m = InfinitesimalModel::blank(
      "Calabi-Eckmann S^" + std::to_string(2 * p.m1 + 1) + " x S^" + std::to_string(2 * p.m2 + 1), dim_m, dim_h);

  std::vector<Q> cs{p.c1, p.c2};
  int offset[2] = {2, 2 + t1};
  int hoffset[2] = {0, h1};
  m.labels[0] = "z1";
  m.labels[1] = "z2";
  m.conj = Mat(dim_m, dim_m);
  m.conj(0, 0) = GQ(1);
  m.conj(1, 1) = GQ(1);
  Mat jq = q_complex_structure(p);
  Mat gq = q_metric(p);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      m.J(a, b) = jq(a, b);
      m.g(a, b) = gq(a, b);
    }

  for (int fi = 0; fi < 2; ++fi) {
    const SphereFactor& sf = factors[fi];
    int half = sf.m;
    std::vector<Mat> basis{sf.z};
    for (const Mat& t : sf.tangent) basis.push_back(t);
    for (const Mat& h : sf.isotropy) basis.push_back(h);
    MatrixCoordinates coords(basis);
    int nt = static_cast<int>(sf.tangent.size());
    int base = offset[fi];
    GQ ck(cs[fi]);

    for (int a = 0; a < nt; ++a) {
      std::string j = std::to_string(a % half + 2);
      m.labels[base + a] = "E" + std::to_string(fi + 1) + "_" + (a < half ? "1" + j : j + "1");
      int partner = a < half ? a + half : a - half;
      m.conj(base + partner, base + a) = GQ(-1);
      m.J(base + a, base + a) = a < half ? GQ::I() : -GQ::I();
      for (int b = 0; b < nt; ++b)
        m.g(base + a, base + b) = -ck * GQ(sf.killing_scale) * trace(sf.tangent[a] * sf.tangent[b]);
    }

    // [q, x]: the tangent vector z_k acts through its V_f lift, whose g-part is s z_k.
    for (int a = 0; a < nt; ++a) {
      Vec c = coords(commutator(sf.z, sf.tangent[a]));
      for (int k = 0; k < 2; ++k) {
        GQ weight = s(fi, k);
        if (weight.is_zero()) continue;
        for (int b = 0; b < nt; ++b)
          if (!c[1 + b].is_zero()) m.set_bracket_m(k, base + a, base + b, weight * c[1 + b]);
      }
    }
    // [x, y] inside m_i: the z_i component splits into V_f (tangent value w) and
    // the isotropy direction (-z, a) with coefficient -f s w.
    for (int a = 0; a < nt; ++a)
      for (int b = a + 1; b < nt; ++b) {
        Vec c = coords(commutator(sf.tangent[a], sf.tangent[b]));
        if (!c[0].is_zero()) {
          m.set_bracket_m(base + a, base + b, fi, c[0]);
          for (int k = 0; k < 2; ++k) {
            GQ coef = -fs(k, fi) * c[0];
            if (!coef.is_zero()) m.set_bracket_h(base + a, base + b, h1 + h2 + k, coef);
          }
        }
        for (int t = 0; t < nt; ++t)
          if (!c[1 + t].is_zero()) m.set_bracket_m(base + a, base + b, base + t, c[1 + t]);
        for (int hb = 0; hb < static_cast<int>(sf.isotropy.size()); ++hb)
          if (!c[1 + nt + hb].is_zero()) m.set_bracket_h(base + a, base + b, hoffset[fi] + hb, c[1 + nt + hb]);
      }
    for (int hb = 0; hb < static_cast<int>(sf.isotropy.size()); ++hb)
      for (int a = 0; a < nt; ++a) {
        Vec c = coords(commutator(sf.isotropy[hb], sf.tangent[a]));
        for (int t = 0; t < nt; ++t) m.isotropy[hoffset[fi] + hb](base + t, base + a) = c[1 + t];
      }
    // (-z_fi, a_fi) acts on m_fi by -ad(z_fi) and trivially on the V_f directions.
    for (int a = 0; a < nt; ++a) {
      Vec c = coords(commutator(sf.z, sf.tangent[a]));
      for (int t = 0; t < nt; ++t) m.isotropy[h1 + h2 + fi](base + t, base + a) = -c[1 + t];
    }
  }
  validate(m);
  return m;
}

std::vector<int> calabi_eckmann_reductive_witness(const CalabiEckmannParams& p, const Mat& f) {
  ConditionResult r = check_naturally_reductive(calabi_eckmann_model(p, f));
  return r.holds ? std::vector<int>{} : r.witness;
}

Mat calabi_eckmann_linear_solution(const CalabiEckmannParams& p) {
  validate_params(p);
  Mat d(2, 2);
  d(0, 0) = GQ(z_norm(sphere_factor(p.m1), p.c1));
  d(1, 1) = GQ(z_norm(sphere_factor(p.m2), p.c2));
  return *inverse(q_metric(p)) * d - Mat::identity(2);
}

CalabiEckmannResult calabi_eckmann_search(const CalabiEckmannParams& p, int max_den, int bound) {
  validate_params(p);
  if (max_den < 1 || bound < 0) throw GroupGeomError("search box needs max_den >= 1 and bound >= 0");
  CalabiEckmannResult res;
  res.max_den = max_den;
  res.bound = bound;
  std::vector<SphereFactor> factors{sphere_factor(p.m1), sphere_factor(p.m2)};
  ColumnCondition cond(p, factors, q_metric(p));
  std::vector<Q> vals = box_values(max_den, bound);
  long double per_column = static_cast<long double>(vals.size()) * vals.size();
  res.space_size = per_column * per_column;

  // The condition only involves one column of f at a time, so each column is
  // searched on its own and the box is covered by the product of the results.
  std::vector<std::vector<std::pair<Q, Q>>> columns(2);
  for (int k = 0; k < 2; ++k)
    for (const Q& top : vals)
      for (const Q& bottom : vals) {
        ++res.candidates;
        GQ a(top + (k == 0 ? 1 : 0));
        GQ b(bottom + (k == 1 ? 1 : 0));
        if (cond.holds(k, a, b)) columns[k].emplace_back(top, bottom);
      }
  for (const auto& c0 : columns[0])
    for (const auto& c1 : columns[1]) {
      Mat f(2, 2);
      f(0, 0) = GQ(c0.first);
      f(1, 0) = GQ(c0.second);
      f(0, 1) = GQ(c1.first);
      f(1, 1) = GQ(c1.second);
      if (calabi_eckmann_excluded(f)) continue;
      std::vector<int> witness = calabi_eckmann_reductive_witness(p, f);
      if (!witness.empty()) continue;
      res.f = f;
      res.note = "naturally reductive; certified on the full model";
      return res;
    }
  res.note = "no f in the box; " + std::to_string(res.candidates) + " column candidates exhausted";
  return res;
}

}  // namespace btp
