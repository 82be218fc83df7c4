#include <numeric>
#include <random>

#include "btp/groupgeom.hpp"

namespace btp {

namespace {

GQ bilinear(const Mat& g, const Vec& x, const Vec& y) { return dot(x, g * y); }

Vec unit(int n, int k) {
  Vec v(n);
  v[k] = GQ(1);
  return v;
}

int total_rank(const std::vector<CartanType>& factors) {
  int r = 0;
  for (const CartanType& ct : factors) r += ct.rank;
  return r;
}

// Sum of two roots of one factor as a root index, or -1.
int root_sum(const ChevalleyData& ch, int a, int b) { return ch.root_system().sum_index(a, b); }

std::string root_text(const SamelsonModel& sm, int f, int a) { return sm.model.labels[sm.root_position(f, a)]; }

// Random J-invariant positive definite metric on the torus: P + J^T P J with
// P = A^T A + I.
Mat random_torus_metric(const Mat& j, std::mt19937_64& rng) {
  int n = j.rows();
  Mat a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = GQ(random_rational(rng, -2, 2, 4));
  Mat p = a.transpose() * a + Mat::identity(n);
  return p + j.transpose() * p * j;
}

}  // namespace

Vec SamelsonModel::coroot_vector(int factor, int root) const {
  Vec v(model.dim_m);
  const auto& co = chevalley[factor].coroot(root);
  for (std::size_t t = 0; t < co.size(); ++t) v[torus_offset[factor] + static_cast<int>(t)] = GQ(co[t]);
  return v;
}

GQ SamelsonModel::root_value(int factor, int root, const Vec& h) const {
  GQ out;
  int rank = chevalley[factor].root_system().rank();
  for (int t = 0; t < rank; ++t) out += h[torus_offset[factor] + t] * GQ(chevalley[factor].root_on_coroot(root, t));
  return out;
}

Mat default_torus_j(int rank) {
  if (rank % 2 != 0) throw GroupGeomError("torus of odd dimension " + std::to_string(rank) + " has no complex structure");
  Mat j(rank, rank);
  for (int k = 0; k + 1 < rank; k += 2) {
    j(k + 1, k) = GQ(1);
    j(k, k + 1) = GQ(-1);
  }
  return j;
}

SamelsonModel samelson_model(const SamelsonStructure& s, const SamelsonMetric& metric) {
  if (s.factors.empty()) throw GroupGeomError("no simple factors given");
  int rank = total_rank(s.factors);
  if (rank % 2 != 0) throw GroupGeomError("odd-dimensional compact algebra; no Samelson structure");
  Mat tj = s.torus_j.rows() == 0 ? default_torus_j(rank) : s.torus_j;
  Mat go = metric.torus_metric.rows() == 0 ? Mat::identity(rank) : metric.torus_metric;
  if (tj.rows() != rank || tj.cols() != rank) throw GroupGeomError("torus complex structure has the wrong size");
  if (go.rows() != rank || go.cols() != rank) throw GroupGeomError("torus metric has the wrong size");
  if (!(tj * tj == Mat::identity(rank) * GQ(-1))) throw GroupGeomError("torus J does not square to -1");
  if (!(go == go.transpose()) || !is_hermitian_positive_definite(go)) {
    throw GroupGeomError("torus metric is not symmetric positive definite");
  }
  if (!(tj.transpose() * go * tj == go)) throw GroupGeomError("torus metric is not J-invariant");
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < rank; ++c)
      if (!tj(r, c).is_real() || !go(r, c).is_real()) throw GroupGeomError("torus data must be real");

  SamelsonModel sm;
  sm.torus_dim = rank;
  int next_torus = 0;
  int next_root = rank;
  for (const CartanType& ct : s.factors) {
    sm.chevalley.emplace_back(RootSystem(ct));
    sm.torus_offset.push_back(next_torus);
    sm.root_offset.push_back(next_root);
    next_torus += ct.rank;
    next_root += sm.chevalley.back().root_system().num_roots();
  }
  for (std::size_t f = 0; f < sm.chevalley.size(); ++f) {
    const RootSystem& rs = sm.chevalley[f].root_system();
    for (int a = 0; a < rs.num_positive(); ++a) sm.positive_roots.emplace_back(static_cast<int>(f), a);
  }
  if (metric.root_values.size() != sm.positive_roots.size()) {
    throw GroupGeomError("need " + std::to_string(sm.positive_roots.size()) + " root values, got " +
                         std::to_string(metric.root_values.size()));
  }
  for (const Q& v : metric.root_values)
    if (sgn(v) <= 0) throw GroupGeomError("root values must be positive");

  std::string name;
  for (const CartanType& ct : s.factors) name += (name.empty() ? "" : "+") + ct.name();
  InfinitesimalModel& m = sm.model;
  m = InfinitesimalModel::blank("Samelson " + name, next_root);
  m.conj = Mat(next_root, next_root);
  int value_index = 0;
  for (std::size_t f = 0; f < sm.chevalley.size(); ++f) {
    const ChevalleyData& ch = sm.chevalley[f];
    const RootSystem& rs = ch.root_system();
    int l = rs.rank();
    int to = sm.torus_offset[f];
    int ro = sm.root_offset[f];
    LieAlgebra alg = chevalley_algebra(ch);
    auto global = [&](int p) { return p < l ? to + p : ro + (p - l); };
    for (int p = 0; p < alg.dim(); ++p) {
      m.labels[global(p)] = std::to_string(f + 1) + ":" + alg.labels()[p];
      for (int q = p + 1; q < alg.dim(); ++q)
        for (const auto& [k, c] : alg.bracket(p, q)) m.set_bracket_m(global(p), global(q), global(k), c);
    }
    for (int t = 0; t < l; ++t) m.conj(to + t, to + t) = GQ(-1);
    for (int a = 0; a < rs.num_roots(); ++a) {
      int na = rs.negative_of(a);
      m.conj(ro + na, ro + a) = GQ(-1);
      m.J(ro + a, ro + a) = GQ(Q(0), Q(rs.is_positive(a) ? 1 : -1));
      const Q& ga = metric.root_values[value_index + (rs.is_positive(a) ? a : na)];
      m.g(ro + a, ro + na) = GQ(Q(-ga * ch.killing_e(a)));
    }
    value_index += rs.num_positive();
  }
  // Torus: the coordinates of h_t and i h_t agree under a complex-linear J,
  // while g(h, h') = -g_o(i h, i h').
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < rank; ++c) {
      m.J(r, c) = tj(r, c);
      m.g(r, c) = -go(r, c);
    }
  validate(m);
  return sm;
}

std::string samelson_formula_mismatch(const SamelsonModel& sm, const SamelsonMetric& metric) {
  const InfinitesimalModel& m = sm.model;
  int dim = m.dim_m;
  NomizuOperator nb = bismut_connection(m);
  Tensor tb = torsion(m, nb);
  std::vector<int> value_offset;
  int acc = 0;
  for (const ChevalleyData& ch : sm.chevalley) {
    value_offset.push_back(acc);
    acc += ch.root_system().num_positive();
  }
  auto param = [&](int f, int a) {
    const RootSystem& rs = sm.chevalley[f].root_system();
    return metric.root_values[value_offset[f] + (rs.is_positive(a) ? a : rs.negative_of(a))];
  };

  for (int s = 0; s < sm.torus_dim; ++s)
    for (int t = 0; t < sm.torus_dim; ++t)
      if (!is_zero(nb.op[s].column(t))) {
        return "Lambda(H)H' nonzero at torus (" + std::to_string(s) + ", " + std::to_string(t) + ")";
      }

  for (std::size_t f = 0; f < sm.chevalley.size(); ++f) {
    int fi = static_cast<int>(f);
    const ChevalleyData& ch = sm.chevalley[f];
    const RootSystem& rs = ch.root_system();
    for (int a = 0; a < rs.num_roots(); ++a) {
      int pa = sm.root_position(fi, a);
      int na = rs.negative_of(a);
      int pna = sm.root_position(fi, na);
      std::string at = root_text(sm, fi, a);
      if (!is_zero(nb.op[pa].column(pna))) return "Lambda(E_a)E_{-a} nonzero at " + at;
      Vec ha = sm.coroot_vector(fi, a);
      for (int o = 0; o < dim; ++o)
        if (tb.get({o, pa, pna}) != -ha[o]) return "T(E_a, E_{-a}) differs from -H_a at " + at;
      GQ gaa = m.g(pa, pna);
      for (int t = 0; t < sm.torus_dim; ++t) {
        Vec h = unit(dim, t);
        if (!is_zero(nb.op[pa].column(t))) return "Lambda(E_a)H nonzero at " + at;
        Vec expect = scaled(unit(dim, pa), sm.root_value(fi, a, h) - bilinear(m.g, h, ha) / gaa);
        if (nb.op[t].column(pa) != expect) return "Lambda(H)E_a differs at " + at + ", torus " + std::to_string(t);
      }
      // Root-root formulas, including vanishing across factors.
      for (std::size_t f2 = 0; f2 < sm.chevalley.size(); ++f2) {
        const RootSystem& rs2 = sm.chevalley[f2].root_system();
        for (int b = 0; b < rs2.num_roots(); ++b) {
          int pb = sm.root_position(static_cast<int>(f2), b);
          if (pb == pna) continue;
          Vec expect(dim);
          if (f2 == f) {
            int s = root_sum(ch, a, b);
            if (s >= 0) {
              bool same = rs.is_positive(a) == rs.is_positive(b);
              Q coef;
              if (same) {
                coef = 1 - param(fi, a) / param(fi, s);
              } else if (rs.is_positive(s) == rs.is_positive(b)) {
                coef = (param(fi, b) - param(fi, a)) / param(fi, s);
              }
              expect[sm.root_position(fi, s)] = GQ(Q(coef * ch.n(a, b)));
            }
          }
          if (nb.op[pa].column(pb) != expect) {
            return "Lambda(E_a)E_b differs at (" + at + ", " + m.labels[pb] + ")";
          }
        }
      }
    }
  }
  return "";
}

std::string samelson_curvature_mismatch(const SamelsonModel& sm) {
  const InfinitesimalModel& m = sm.model;
  NomizuOperator nb = bismut_connection(m);
  Tensor rb = curvature(m, nb);
  // Expected tensor, keyed (out, x, y, w).
  Tensor expect(4);
  for (std::size_t f = 0; f < sm.chevalley.size(); ++f) {
    int fi = static_cast<int>(f);
    const RootSystem& rs = sm.chevalley[f].root_system();
    for (int a = 0; a < rs.num_roots(); ++a) {
      Vec ha = sm.coroot_vector(fi, a);
      int pa = sm.root_position(fi, a);
      int pna = sm.root_position(fi, rs.negative_of(a));
      for (std::size_t f2 = 0; f2 < sm.chevalley.size(); ++f2) {
        const ChevalleyData& ch2 = sm.chevalley[f2];
        const RootSystem& rs2 = ch2.root_system();
        for (int b = 0; b < rs2.num_roots(); ++b) {
          int pb = sm.root_position(static_cast<int>(f2), b);
          Vec hb = scaled(sm.coroot_vector(static_cast<int>(f2), b), GQ(Q(1 / ch2.killing_e(b))));
          GQ v = -(sm.root_value(static_cast<int>(f2), b, ha) + bilinear(m.g, ha, hb));
          if (!v.is_zero()) expect.add({pb, pa, pna, pb}, v);
        }
      }
    }
  }
  Tensor diff = rb - expect;
  diff.prune();
  if (diff.is_zero()) return "";
  std::vector<int> w = diff.first_nonzero();
  return "curvature differs at " + describe_witness(m, w);
}

SamelsonFamilyReport solve_samelson_projectable(const SamelsonStructure& s, int verify_points, std::uint64_t seed) {
  SamelsonMetric unit_metric;
  // Structural data only; the metric is filled in per point below.
  std::vector<ChevalleyData> chs;
  std::vector<int> offset;
  int count = 0;
  for (const CartanType& ct : s.factors) {
    chs.emplace_back(RootSystem(ct));
    offset.push_back(count);
    count += chs.back().root_system().num_positive();
  }
  unit_metric.root_values.assign(count, Q(1));

  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  SamelsonFamilyReport rep;
  SamelsonModel base = samelson_model(s, unit_metric);
  for (std::size_t f = 0; f < chs.size(); ++f) {
    const ChevalleyData& ch = chs[f];
    const RootSystem& rs = ch.root_system();
    for (int a = 0; a < rs.num_positive(); ++a)
      for (int b = a + 1; b < rs.num_positive(); ++b) {
        int sum = rs.sum_index(a, b);
        if (sum < 0) continue;
        int ga = offset[f] + a;
        int gb = offset[f] + b;
        int gs = offset[f] + sum;
        parent[find(ga)] = find(gs);
        parent[find(gb)] = find(gs);
        rep.family.relations.push_back(std::vector<Q>(count));
        rep.family.relations.back()[ga] = 1;
        rep.family.relations.back()[gs] = -1;
        rep.family.relations.push_back(std::vector<Q>(count));
        rep.family.relations.back()[gb] = 1;
        rep.family.relations.back()[gs] = -1;

        // Additive alternative g_{a+b} = g_a + g_b at (1, 1, 2), evaluated
        // both in closed form and through the generic covariant derivative.
        SamelsonMetric kahler_like = unit_metric;
        kahler_like.root_values[gs] = 2;
        SamelsonModel sm = samelson_model(s, kahler_like);
        const InfinitesimalModel& m = sm.model;
        NomizuOperator nb = bismut_connection(m);
        Tensor dt = covariant_derivative(nb, torsion(m, nb), true);
        int fi = static_cast<int>(f);
        int nb_idx = rs.negative_of(b);
        int ns_idx = rs.negative_of(sum);
        GQ gbb = m.g(sm.root_position(fi, b), sm.root_position(fi, nb_idx));
        GQ gss = m.g(sm.root_position(fi, sum), sm.root_position(fi, ns_idx));
        SamelsonTripleExclusion ex{fi, a, b, -1, Q(0), GQ()};
        for (int t = 0; t < sm.torus_dim; ++t) {
          Vec h = unit(m.dim_m, t);
          GQ rho_b = -bilinear(m.g, h, sm.coroot_vector(fi, b)) / gbb;
          GQ rho_s = -bilinear(m.g, h, sm.coroot_vector(fi, sum)) / gss;
          GQ v = (rho_b - rho_s) * GQ(Q(ch.n(a, b) * (1 - Q(1) / Q(2))));
          if (!v.is_zero()) {
            ex.torus_index = t;
            ex.value = v.re;
            ex.engine_value =
                dt.get({sm.root_position(fi, a), sm.root_position(fi, sum), t, sm.root_position(fi, b)});
            break;
          }
        }
        rep.exclusions.push_back(ex);
      }
  }
  std::vector<int> class_of(count, -1);
  for (int p = 0; p < count; ++p) {
    int r = find(p);
    if (class_of[r] < 0) {
      class_of[r] = static_cast<int>(rep.classes.size());
      rep.classes.emplace_back();
    }
    rep.classes[class_of[r]].push_back(p);
  }
  for (const auto& cls : rep.classes) {
    std::vector<Q> v(count);
    for (int p : cls) v[p] = 1;
    rep.family.basis.push_back(v);
  }
  rep.family.tag = rep.classes.size() == 1 ? FamilyTag::KillingRay : FamilyTag::Other;

  std::mt19937_64 rng(seed);
  Mat tj = s.torus_j.rows() == 0 ? default_torus_j(base.torus_dim) : s.torus_j;
  for (int k = 0; k < verify_points; ++k) {
    SamelsonMetric point;
    point.root_values.assign(count, Q(0));
    for (const auto& cls : rep.classes) {
      Q c = random_rational(rng, 1, 5, 6);
      for (int p : cls) point.root_values[p] = c;
    }
    point.torus_metric = random_torus_metric(tj, rng);
    SamelsonModel sm = samelson_model(s, point);
    if (!check_btp(sm.model).holds) {
      throw GroupGeomError("family point failed the BTP check; the family is not verified");
    }
    rep.family.verified_points.push_back(point.root_values);
    ++rep.verified;
  }
  return rep;
}

}  // namespace btp
