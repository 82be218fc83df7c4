#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "btp/flagspace.hpp"

namespace btp {

namespace {

using Row = std::vector<Q>;

Row unit_row(int dim, std::initializer_list<std::pair<int, int>> terms) {
  Row r(dim);
  for (const auto& [c, v] : terms) r[c] += v;
  return r;
}

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](const Q& q) { return sgn(q) == 0; });
}

Q apply_row(const Row& r, const std::vector<Q>& x) {
  Q s;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * x[i];
  return s;
}

// Reduced row echelon form with zero rows dropped; used as a canonical key.
std::vector<Row> rref(std::vector<Row> rows, int dim) {
  std::vector<Row> out;
  int lead = 0;
  std::size_t top = 0;
  for (lead = 0; lead < dim && top < rows.size(); ++lead) {
    std::size_t piv = top;
    while (piv < rows.size() && sgn(rows[piv][lead]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[top]);
    Q inv = 1 / rows[top][lead];
    for (auto& v : rows[top]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == top || sgn(rows[r][lead]) == 0) continue;
      Q f = rows[r][lead];
      for (int c = 0; c < dim; ++c) rows[r][c] -= f * rows[top][c];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

std::string key_of(const std::vector<Row>& reduced) {
  std::string k;
  for (const auto& r : reduced) {
    for (const auto& v : r) k += to_string(v) + ",";
    k += ";";
  }
  return k;
}

std::vector<Row> nullspace_q(const std::vector<Row>& rows, int dim) {
  if (rows.empty()) {
    std::vector<Row> basis;
    for (int i = 0; i < dim; ++i) basis.push_back(unit_row(dim, {{i, 1}}));
    return basis;
  }
  Mat m(static_cast<int>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < dim; ++c) m(static_cast<int>(r), c) = GQ(rows[r][c]);
  std::vector<Row> out;
  for (const Vec& v : nullspace(m)) {
    Row r(dim);
    for (int c = 0; c < dim; ++c) r[c] = v[c].re;
    out.push_back(r);
  }
  return out;
}

// Linear forms whose joint vanishing is the Kaehler criterion.
std::vector<Row> kahler_forms(const FlagManifold& fm, const FlagComplexStructure& j) {
  std::vector<Row> forms;
  int k = fm.num_classes();
  const RootSystem& r = fm.rs();
  for (int a : j.positive)
    for (int b : j.positive) {
      int s = r.sum_index(a, b);
      if (s < 0 || fm.in_h[s]) continue;
      Row row(k);
      row[fm.param_class[s]] += 1;
      row[fm.param_class[a]] -= 1;
      row[fm.param_class[b]] -= 1;
      if (!row_is_zero(row)) forms.push_back(row);
    }
  return forms;
}

struct Alternative {
  std::vector<std::vector<Row>> options;
};

}  // namespace

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::KahlerFamily: return "kahler_family";
    case FamilyTag::KillingRay: return "killing_ray";
    case FamilyTag::Other: return "other";
  }
  return "other";
}

bool MetricFamily::contains(const std::vector<Q>& point) const {
  for (const auto& r : relations)
    if (sgn(apply_row(r, point)) != 0) return false;
  return true;
}

std::string MetricFamily::describe(const FlagManifold& fm) const {
  std::ostringstream os;
  os << to_string(tag) << " (dim " << dimension() << ")";
  if (relations.empty()) {
    os << ": all invariant metrics";
    return os.str();
  }
  os << ":";
  for (const auto& r : relations) {
    os << " ";
    bool first = true;
    for (int c = 0; c < fm.num_classes(); ++c) {
      if (sgn(r[c]) == 0) continue;
      Q v = r[c];
      if (!first) os << (sgn(v) > 0 ? " + " : " - ");
      else if (sgn(v) < 0) os << "-";
      Q a = abs(v);
      if (a != 1) os << to_string(a) << "*";
      os << "g" << (c + 1);
      first = false;
    }
    os << " = 0;";
  }
  return os.str();
}

std::optional<std::vector<Q>> positive_solution(const std::vector<std::vector<Q>>& relations, int dim) {
  // Phase-one simplex on A y = -A 1, y >= 0, with x = 1 + y.
  std::vector<Row> rows;
  for (const auto& r : relations)
    if (!row_is_zero(r)) rows.push_back(r);
  int m = static_cast<int>(rows.size());
  if (m == 0) return std::vector<Q>(dim, Q(1));
  int cols = dim + m;
  std::vector<Row> tab(m, Row(cols + 1));
  for (int i = 0; i < m; ++i) {
    Q b;
    for (int c = 0; c < dim; ++c) b -= rows[i][c];
    int flip = sgn(b) < 0 ? -1 : 1;
    for (int c = 0; c < dim; ++c) tab[i][c] = flip * rows[i][c];
    tab[i][dim + i] = 1;
    tab[i][cols] = flip * b;
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = dim + i;
  Row cost(cols + 1);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c <= cols; ++c)
      if (c < dim || c == cols) cost[c] -= tab[i][c];
  while (true) {
    int enter = -1;
    for (int c = 0; c < cols; ++c)
      if (sgn(cost[c]) < 0) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Q best;
    for (int i = 0; i < m; ++i) {
      if (sgn(tab[i][enter]) <= 0) continue;
      Q ratio = tab[i][cols] / tab[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded in phase one cannot happen; stop defensively
    Q p = tab[leave][enter];
    for (auto& v : tab[leave]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == leave || sgn(tab[i][enter]) == 0) continue;
      Q f = tab[i][enter];
      for (int c = 0; c <= cols; ++c) tab[i][c] -= f * tab[leave][c];
    }
    Q f = cost[enter];
    for (int c = 0; c <= cols; ++c) cost[c] -= f * tab[leave][c];
    basis[leave] = enter;
  }
  if (sgn(cost[cols]) != 0) return std::nullopt;
  std::vector<Q> x(dim, Q(1));
  for (int i = 0; i < m; ++i)
    if (basis[i] < dim) x[basis[i]] += tab[i][cols];
  for (const auto& r : rows)
    if (sgn(apply_row(r, x)) != 0) return std::nullopt;
  return x;
}

std::string lemma_alternative_violation(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g, int a,
                                        int b) {
  const RootSystem& r = fm.rs();
  int s = r.sum_index(a, b);
  if (s < 0 || j.sign[a] != 1 || j.sign[b] != 1) return "";
  const Q& ga = g.at(fm, a);
  const Q& gb = g.at(fm, b);
  const Q& gs = g.at(fm, s);
  if (gs == ga + gb) return "";
  Root diff = r.root(a);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= r.root(b)[i];
  int d = r.index_of(diff);
  bool d_in_m = d >= 0 && !fm.in_h[d];
  if (!d_in_m) {
    if (gs == ga && gs == gb) return "";
    return "neither the sum rule nor g_{a+b} = g_a = g_b";
  }
  if (j.sign[d] == 1) return gs == ga ? "" : "neither the sum rule nor g_{a+b} = g_a";
  return gs == gb ? "" : "neither the sum rule nor g_{a+b} = g_b";
}

SolverReport solve_btp_metrics(const FlagManifold& fm, const FlagComplexStructure& j, const SolverOptions& options) {
  SolverReport rep;
  if (fm.complex_dim() > options.cap) {
    rep.partial = true;
    rep.certification = "not solved: |R_m^+| = " + std::to_string(fm.complex_dim()) + " exceeds the cap " +
                        std::to_string(options.cap);
    return rep;
  }
  const RootSystem& r = fm.rs();
  int k = fm.num_classes();
  std::mt19937_64 rng(options.seed);

  // Disjunctive constraints from each triple (a, b, a+b) in R_m^+, deduplicated at class level.
  std::vector<Alternative> alternatives;
  std::set<std::string> seen;
  for (int a : j.positive)
    for (int b : j.positive) {
      if (fm.m_position[b] <= fm.m_position[a]) continue;
      int s = r.sum_index(a, b);
      if (s < 0) continue;
      int ca = fm.param_class[a];
      int cb = fm.param_class[b];
      int cs = fm.param_class[s];
      Root diff = r.root(a);
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= r.root(b)[i];
      int d = r.index_of(diff);
      Alternative alt;
      alt.options.push_back({unit_row(k, {{cs, 1}, {ca, -1}, {cb, -1}})});
      if (d < 0 || fm.in_h[d]) {
        alt.options.push_back({unit_row(k, {{cs, 1}, {ca, -1}}), unit_row(k, {{cs, 1}, {cb, -1}})});
      } else if (j.sign[d] == 1) {
        alt.options.push_back({unit_row(k, {{cs, 1}, {ca, -1}})});
      } else {
        alt.options.push_back({unit_row(k, {{cs, 1}, {cb, -1}})});
      }
      bool vacuous = false;
      std::string key;
      for (auto& opt : alt.options) {
        opt.erase(std::remove_if(opt.begin(), opt.end(), row_is_zero), opt.end());
        if (opt.empty()) vacuous = true;
        key += key_of(rref(opt, k)) + "|";
      }
      if (vacuous || !seen.insert(key).second) continue;
      alternatives.push_back(std::move(alt));
    }

  auto random_point_in = [&](const std::vector<Row>& rel, const std::vector<Q>& base) -> std::vector<Q> {
    std::vector<Row> basis = nullspace_q(rel, k);
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Q> x(k);
      for (int c = 0; c < k; ++c) x[c] = 2 * base[c];
      Q shrink(1, 1 << std::min(attempt, 20));
      for (const auto& b : basis) {
        Q coeff = random_rational(rng, -1, 1, options.max_den) * shrink;
        for (int c = 0; c < k; ++c) x[c] += coeff * b[c];
      }
      if (std::all_of(x.begin(), x.end(), [](const Q& q) { return sgn(q) > 0; })) return x;
    }
    std::vector<Q> x(k);
    for (int c = 0; c < k; ++c) x[c] = 2 * base[c];
    return x;
  };

  std::set<std::string> visited;
  std::vector<MetricFamily> accepted;

  std::function<void(const std::vector<Row>&)> verify_leaf = [&](const std::vector<Row>& rel) {
    std::vector<Row> reduced = rref(rel, k);
    if (!visited.insert(key_of(reduced)).second) return;
    auto base = positive_solution(reduced, k);
    if (!base) return;
    ++rep.leaves;
    MetricFamily fam;
    fam.relations = reduced;
    fam.basis = nullspace_q(reduced, k);
    bool ok = true;
    for (int t = 0; t < options.verify_points && ok; ++t) {
      std::vector<Q> x = random_point_in(reduced, *base);
      if (!check_btp_flag(fm, j, FlagMetric{x}).holds) ok = false;
      else fam.verified_points.push_back(x);
    }
    if (ok) {
      accepted.push_back(std::move(fam));
      return;
    }
    // Refine by identifying two parameter classes.
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q) {
        std::vector<Row> more = reduced;
        more.push_back(unit_row(k, {{p, 1}, {q, -1}}));
        if (rref(more, k).size() == reduced.size()) continue;
        verify_leaf(more);
      }
  };

  std::function<void(std::size_t, std::vector<Row>&)> branch = [&](std::size_t idx, std::vector<Row>& rel) {
    if (!positive_solution(rel, k)) return;
    if (idx == alternatives.size()) {
      verify_leaf(rel);
      return;
    }
    for (const auto& opt : alternatives[idx].options) {
      std::size_t before = rel.size();
      rel.insert(rel.end(), opt.begin(), opt.end());
      branch(idx + 1, rel);
      rel.resize(before);
    }
  };
  std::vector<Row> start;
  branch(0, start);

  // Keep maximal families only.
  auto subset = [](const MetricFamily& small, const MetricFamily& big) {
    for (const auto& b : small.basis)
      if (!big.contains(b)) return false;
    return true;
  };
  std::vector<Row> kforms = kahler_forms(fm, j);
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    bool dominated = false;
    for (std::size_t t = 0; t < accepted.size() && !dominated; ++t) {
      if (t == i || !subset(accepted[i], accepted[t])) continue;
      // Equal families: keep the first copy.
      if (!subset(accepted[t], accepted[i]) || t < i) dominated = true;
    }
    if (dominated) continue;
    MetricFamily fam = accepted[i];
    bool kahler = true;
    for (const auto& b : fam.basis)
      for (const auto& f : kforms)
        if (sgn(apply_row(f, b)) != 0) kahler = false;
    bool ray = fam.dimension() == 1;
    if (ray)
      for (int c = 1; c < k; ++c)
        if (fam.basis[0][c] != fam.basis[0][0]) ray = false;
    fam.tag = kahler ? FamilyTag::KahlerFamily : (ray ? FamilyTag::KillingRay : FamilyTag::Other);
    rep.families.push_back(std::move(fam));
  }
  std::stable_sort(rep.families.begin(), rep.families.end(),
                   [](const MetricFamily& a, const MetricFamily& b) { return a.tag < b.tag; });

  // Empirical completeness check.
  for (int s = 0; s < options.samples; ++s) {
    std::vector<Q> x(k);
    for (int c = 0; c < k; ++c) {
      do {
        x[c] = random_rational(rng, 0, 4, options.max_den);
      } while (sgn(x[c]) == 0);
    }
    ++rep.samples;
    if (!check_btp_flag(fm, j, FlagMetric{x}).holds) continue;
    ++rep.sample_hits;
    bool inside = std::any_of(rep.families.begin(), rep.families.end(),
                              [&](const MetricFamily& f) { return f.contains(x); });
    if (!inside) rep.outside_hits.push_back(x);
  }
  std::ostringstream cert;
  cert << "empirical: " << rep.samples << " random metrics (denominators <= " << options.max_den << "), "
       << rep.sample_hits << " BTP, " << rep.outside_hits.size() << " outside the families";
  rep.certification = cert.str();
  return rep;
}

SimplyLacedReport simply_laced_properties(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g) {
  SimplyLacedReport rep;
  const RootSystem& r = fm.rs();
  if (!r.cartan_type().simply_laced()) {
    rep.note = "not applicable: root system is not simply laced";
    return rep;
  }
  if (!check_btp_flag(fm, j, g).holds) {
    rep.note = "not applicable: metric is not BTP";
    return rep;
  }
  auto fail = [&](const std::string& what) {
    if (rep.holds) rep.note = what;
    rep.holds = false;
  };
  for (int a : j.positive)
    for (int b : j.positive) {
      int s = r.sum_index(a, b);
      if (s < 0) continue;
      const Q& gs = g.at(fm, s);
      if (gs == g.at(fm, a) + g.at(fm, b)) continue;
      rep.applicable = true;
      for (int c : j.positive) {
        int bc = r.sum_index(b, c);
        if (bc < 0 || j.sign[bc] != 1) continue;
        int abc = r.sum_index(s, c);
        if (abc < 0 || j.sign[abc] != 1) continue;
        ++rep.checked;
        const Q& v = g.at(fm, a);
        for (int t : {b, c, s, bc, abc})
          if (g.at(fm, t) != v) fail("property (a) fails for roots " + std::to_string(a) + ", " + std::to_string(b) +
                                     ", " + std::to_string(c));
      }
      for (int l : j.positive)
        for (int m : j.positive) {
          if (r.sum_index(l, m) != a) continue;
          ++rep.checked;
          if (g.at(fm, l) != g.at(fm, a) || g.at(fm, m) != g.at(fm, a)) {
            fail("property (b) fails for the decomposition of root " + std::to_string(a));
          }
        }
    }
  if (!rep.applicable) rep.note = "not applicable: every pair satisfies the sum rule";
  return rep;
}

}  // namespace btp
