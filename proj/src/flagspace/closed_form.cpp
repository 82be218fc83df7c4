#include "btp/flagspace.hpp"

namespace btp {

namespace {

// Index of a+b when it lies in R_m, otherwise -1.
int m_sum(const FlagManifold& fm, int a, int b) {
  int s = fm.rs().sum_index(a, b);
  return (s >= 0 && !fm.in_h[s]) ? s : -1;
}

}  // namespace

Q bismut_coefficient(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g, int a, int b) {
  int s = m_sum(fm, a, b);
  if (s < 0) return Q(0);
  int ea = j.sign[a];
  int eb = j.sign[b];
  int es = j.sign[s];
  const Q& gs = g.at(fm, s);
  Q c = Q(1 + ea * eb) - Q(1 + eb * es) * g.at(fm, a) / gs + Q(1 - ea * es) * g.at(fm, b) / gs;
  return Q(fm.ch.n(a, b)) * c / 2;
}

Q levi_civita_coefficient(const FlagManifold& fm, const FlagMetric& g, int a, int b) {
  int s = m_sum(fm, a, b);
  if (s < 0) return Q(0);
  Q c = 1 + (g.at(fm, b) - g.at(fm, a)) / g.at(fm, s);
  return Q(fm.ch.n(a, b)) * c / 2;
}

Q bismut_torsion_coefficient(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g, int a, int b) {
  if (m_sum(fm, a, b) < 0) return Q(0);
  return bismut_coefficient(fm, j, g, a, b) - bismut_coefficient(fm, j, g, b, a) - fm.ch.n(a, b);
}

NomizuOperator nomizu_bismut_flag(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g) {
  int n = static_cast<int>(fm.m_roots.size());
  NomizuOperator nabla{std::vector<Mat>(n, Mat(n, n))};
  for (int a : fm.m_roots)
    for (int b : fm.m_roots) {
      int s = m_sum(fm, a, b);
      if (s < 0) continue;
      nabla.op[fm.m_position[a]](fm.m_position[s], fm.m_position[b]) = GQ(bismut_coefficient(fm, j, g, a, b));
    }
  return nabla;
}

NomizuOperator nomizu_levi_civita_flag(const FlagManifold& fm, const FlagMetric& g) {
  int n = static_cast<int>(fm.m_roots.size());
  NomizuOperator nabla{std::vector<Mat>(n, Mat(n, n))};
  for (int a : fm.m_roots)
    for (int b : fm.m_roots) {
      int s = m_sum(fm, a, b);
      if (s < 0) continue;
      nabla.op[fm.m_position[a]](fm.m_position[s], fm.m_position[b]) = GQ(levi_civita_coefficient(fm, g, a, b));
    }
  return nabla;
}

Tensor bismut_torsion_flag(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g) {
  Tensor t(3);
  for (int a : fm.m_roots)
    for (int b : fm.m_roots) {
      int s = m_sum(fm, a, b);
      if (s < 0) continue;
      Q v = bismut_torsion_coefficient(fm, j, g, a, b);
      if (sgn(v) != 0) t.add({fm.m_position[s], fm.m_position[a], fm.m_position[b]}, GQ(v));
    }
  return t;
}

ConditionResult check_btp_flag(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g) {
  validate_metric(fm, g);
  const RootSystem& r = fm.rs();
  int count = r.num_roots();
  // Dense tables over root indices; zero where the target leaves R_m.
  std::vector<Q> conn(static_cast<std::size_t>(count) * count);
  std::vector<Q> tor(static_cast<std::size_t>(count) * count);
  auto at = [count](int a, int b) { return static_cast<std::size_t>(a) * count + b; };
  for (int a : fm.m_roots)
    for (int b : fm.m_roots)
      if (m_sum(fm, a, b) >= 0) conn[at(a, b)] = bismut_coefficient(fm, j, g, a, b);
  for (int a : fm.m_roots)
    for (int b : fm.m_roots)
      if (m_sum(fm, a, b) >= 0) tor[at(a, b)] = conn[at(a, b)] - conn[at(b, a)] - fm.ch.n(a, b);

  ConditionResult res;
  res.holds = true;
  for (int c : fm.m_roots) {
    for (int a : fm.m_roots) {
      int ca = m_sum(fm, c, a);
      for (int b : fm.m_roots) {
        if (fm.m_position[b] <= fm.m_position[a]) continue;
        int ab = m_sum(fm, a, b);
        int cb = m_sum(fm, c, b);
        Q v;
        if (ab >= 0 && m_sum(fm, c, ab) >= 0) v += conn[at(c, ab)] * tor[at(a, b)];
        if (ca >= 0 && m_sum(fm, ca, b) >= 0) v -= tor[at(ca, b)] * conn[at(c, a)];
        if (cb >= 0 && m_sum(fm, a, cb) >= 0) v -= tor[at(a, cb)] * conn[at(c, b)];
        if (sgn(v) != 0) {
          res.holds = false;
          res.witness = {c, a, b};
          res.witness_value = to_string(v);
          res.note = "nabla^b T^b nonzero in direction " + std::to_string(c) + " on (" + std::to_string(a) + ", " +
                     std::to_string(b) + ")";
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace btp
