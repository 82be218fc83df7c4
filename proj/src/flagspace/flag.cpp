#include <algorithm>
#include <numeric>
#include <set>

#include "btp/flagspace.hpp"

namespace btp {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::string root_label(const Root& r) {
  std::string s = "E(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

}  // namespace

std::string FlagManifold::name() const {
  std::string s = rs().cartan_type().name();
  if (isotropy_simple.empty()) return s + "/T";
  s += "/h(";
  for (std::size_t i = 0; i < isotropy_simple.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(isotropy_simple[i] + 1);
  }
  return s + ")";
}

FlagManifold build_flag(const CartanType& ct, const std::vector<int>& isotropy_simple) {
  RootSystem rs(ct);
  int rank = rs.rank();
  std::set<int> chosen;
  for (int i : isotropy_simple) {
    if (i < 0 || i >= rank) throw FlagError("simple root index out of range: " + std::to_string(i + 1));
    if (!chosen.insert(i).second) throw FlagError("repeated simple root index: " + std::to_string(i + 1));
  }
  if (static_cast<int>(chosen.size()) == rank) throw FlagError("isotropy contains every simple root; m would be zero");

  FlagManifold fm{ChevalleyData(rs), {chosen.begin(), chosen.end()}, {}, {}, {}, {}, {}, {}, {}};
  const RootSystem& r = fm.rs();
  int count = r.num_roots();
  fm.in_h.assign(count, false);
  fm.m_position.assign(count, -1);
  for (int a = 0; a < count; ++a) {
    bool inside = true;
    for (int i = 0; i < rank; ++i)
      if (r.root(a)[i] != 0 && !chosen.count(i)) inside = false;
    fm.in_h[a] = inside;
    if (inside) {
      fm.h_roots.push_back(a);
    } else {
      fm.m_position[a] = static_cast<int>(fm.m_roots.size());
      fm.m_roots.push_back(a);
      if (r.is_positive(a)) fm.m_positive.push_back(a);
    }
  }

  // ad(h)-orbits: a ~ a + c for c in R_h.
  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  for (int a : fm.m_positive)
    for (int c : fm.h_roots) {
      int s = r.sum_index(a, c);
      if (s >= 0) parent[find_root(parent, a)] = find_root(parent, s);
    }
  fm.param_class.assign(count, -1);
  std::vector<int> class_of_rep(count, -1);
  for (int a : fm.m_positive) {
    int rep = find_root(parent, a);
    if (class_of_rep[rep] < 0) {
      class_of_rep[rep] = static_cast<int>(fm.summands.size());
      fm.summands.emplace_back();
    }
    int c = class_of_rep[rep];
    fm.summands[c].push_back(a);
    fm.param_class[a] = c;
    fm.param_class[r.negative_of(a)] = c;
  }
  return fm;
}

FlagComplexStructure standard_complex_structure(const FlagManifold& fm) {
  FlagComplexStructure j;
  j.sign.assign(fm.rs().num_roots(), 0);
  for (int a : fm.m_roots) j.sign[a] = fm.rs().is_positive(a) ? 1 : -1;
  j.positive = fm.m_positive;
  return j;
}

bool is_integrable(const FlagManifold& fm, const FlagComplexStructure& j) {
  const RootSystem& r = fm.rs();
  for (int p : j.positive) {
    for (int c : fm.h_roots) {
      int s = r.sum_index(p, c);
      if (s >= 0 && j.sign[s] != 1) return false;
    }
    for (int q : j.positive) {
      int s = r.sum_index(p, q);
      if (s >= 0 && j.sign[s] != 1) return false;
    }
  }
  return true;
}

std::vector<FlagComplexStructure> enumerate_complex_structures(const FlagManifold& fm, int max_roots) {
  int k = fm.complex_dim();
  if (k > max_roots) {
    throw FlagError("too many roots to enumerate complex structures: " + std::to_string(k));
  }
  const RootSystem& r = fm.rs();
  std::vector<FlagComplexStructure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    FlagComplexStructure j;
    j.sign.assign(r.num_roots(), 0);
    for (int t = 0; t < k; ++t) {
      int a = fm.m_positive[t];
      int p = (mask >> t) & 1 ? r.negative_of(a) : a;
      j.sign[p] = 1;
      j.sign[r.negative_of(p)] = -1;
    }
    for (int a : fm.m_roots)
      if (j.sign[a] == 1) j.positive.push_back(a);
    if (is_integrable(fm, j)) out.push_back(std::move(j));
  }
  return out;
}

FlagMetric killing_metric(const FlagManifold& fm) { return FlagMetric{std::vector<Q>(fm.num_classes(), Q(1))}; }

void validate_metric(const FlagManifold& fm, const FlagMetric& g) {
  if (static_cast<int>(g.values.size()) != fm.num_classes()) {
    throw FlagError("metric needs " + std::to_string(fm.num_classes()) + " values, got " +
                    std::to_string(g.values.size()));
  }
  for (const Q& v : g.values)
    if (sgn(v) <= 0) throw FlagError("metric values must be positive");
}

bool is_kahler(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g) {
  const RootSystem& r = fm.rs();
  for (int a : fm.m_roots)
    for (int b : fm.m_roots) {
      int s = r.sum_index(a, b);
      if (s < 0 || fm.in_h[s]) continue;
      Q v = j.sign[a] * g.at(fm, a) + j.sign[b] * g.at(fm, b) - j.sign[s] * g.at(fm, s);
      if (sgn(v) != 0) return false;
    }
  return true;
}

InfinitesimalModel flag_model(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g) {
  validate_metric(fm, g);
  const RootSystem& r = fm.rs();
  const ChevalleyData& ch = fm.ch;
  int rank = r.rank();
  int n = static_cast<int>(fm.m_roots.size());
  std::vector<int> h_position(r.num_roots(), -1);
  for (std::size_t t = 0; t < fm.h_roots.size(); ++t) h_position[fm.h_roots[t]] = rank + static_cast<int>(t);

  InfinitesimalModel m = InfinitesimalModel::blank(fm.name(), n, rank + static_cast<int>(fm.h_roots.size()));
  m.labels.clear();
  for (int a : fm.m_roots) m.labels.push_back(root_label(r.root(a)));

  for (int i = 0; i < n; ++i) {
    int a = fm.m_roots[i];
    for (int k = i + 1; k < n; ++k) {
      int b = fm.m_roots[k];
      if (b == r.negative_of(a)) {
        const auto& co = ch.coroot(a);
        for (int t = 0; t < rank; ++t)
          if (sgn(co[t]) != 0) m.set_bracket_h(i, k, t, GQ(co[t]));
        continue;
      }
      int s = r.sum_index(a, b);
      if (s < 0) continue;
      GQ nab(ch.n(a, b));
      if (fm.in_h[s]) {
        m.set_bracket_h(i, k, h_position[s], nab);
      } else {
        m.set_bracket_m(i, k, fm.m_position[s], nab);
      }
    }
  }
  for (int t = 0; t < rank; ++t) {
    Mat& ad = m.isotropy[t];
    for (int i = 0; i < n; ++i) ad(i, i) = GQ(ch.root_on_coroot(fm.m_roots[i], t));
  }
  for (int c : fm.h_roots) {
    Mat& ad = m.isotropy[h_position[c]];
    for (int i = 0; i < n; ++i) {
      int a = fm.m_roots[i];
      int s = r.sum_index(c, a);
      if (s >= 0) ad(fm.m_position[s], i) = GQ(ch.n(c, a));
    }
  }
  m.conj = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    int a = fm.m_roots[i];
    int na = fm.m_position[r.negative_of(a)];
    m.J(i, i) = GQ(Q(0), Q(j.sign[a]));
    m.g(i, na) = GQ(-g.at(fm, a) * ch.killing_e(a));
    m.conj(na, i) = GQ(-1);
  }
  return m;
}

}  // namespace btp
