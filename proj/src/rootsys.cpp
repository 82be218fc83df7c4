#include "btp/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>

namespace btp {

CartanType CartanType::make(char series, int rank) {
  series = static_cast<char>(std::toupper(static_cast<unsigned char>(series)));
  bool ok = false;
  switch (series) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 4; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: break;
  }
  if (!ok) {
    throw CartanTypeError("no simple Lie algebra of type " + std::string(1, series) + std::to_string(rank));
  }
  return CartanType{series, rank};
}

CartanType CartanType::parse(const std::string& name) {
  if (name.size() < 2) throw CartanTypeError("malformed Cartan type '" + name + "'");
  std::string digits = name.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c) != 0; }) ||
      digits.size() > 3) {
    throw CartanTypeError("malformed Cartan type '" + name + "'");
  }
  return make(name[0], std::stoi(digits));
}

namespace {

// Integer Gram matrix of simple roots in Bourbaki numbering (0-based here).
std::vector<std::vector<int>> raw_gram_matrix(const CartanType& ct) {
  int l = ct.rank;
  std::vector<std::vector<int>> g(l, std::vector<int>(l, 0));
  auto link = [&](int i, int j, int v) { g[i][j] = g[j][i] = v; };
  switch (ct.series) {
    case 'A':
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 0; i < l; ++i) g[i][i] = 4;
      g[l - 1][l - 1] = 2;
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1, -2);
      break;
    case 'C':
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      g[l - 1][l - 1] = 4;
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1, -1);
      link(l - 2, l - 1, -2);
      break;
    case 'D':
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1, -1);
      link(l - 3, l - 1, -1);
      break;
    case 'E':
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < l; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      g[0][0] = g[1][1] = 4;
      g[2][2] = g[3][3] = 2;
      link(0, 1, -2);
      link(1, 2, -2);
      link(2, 3, -1);
      break;
    case 'G':
      g[0][0] = 2;
      g[1][1] = 6;
      link(0, 1, -3);
      break;
    default:
      break;
  }
  return g;
}

Root negated(const Root& r) {
  Root n(r);
  for (int& c : n) c = -c;
  return n;
}

int height_of(const Root& r) {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

}  // namespace

RootSystem::RootSystem(CartanType ct) : type_(CartanType::make(ct.series, ct.rank)) {
  int l = type_.rank;
  gram_ = raw_gram_matrix(type_);
  cartan_.assign(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) cartan_[i][j] = 2 * gram_[i][j] / gram_[i][i];

  // Positive roots by height: beta + alpha_i is a root iff q > 0 in the
  // alpha_i-string through beta, where p - q = beta(h_i).
  std::set<Root> known;
  std::vector<Root> layer;
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = 1;
    layer.push_back(r);
    known.insert(r);
  }
  std::vector<Root> positives;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    positives.insert(positives.end(), layer.begin(), layer.end());
    std::set<Root> next;
    for (const Root& beta : layer) {
      for (int i = 0; i < l; ++i) {
        int pairing_value = 0;
        for (int j = 0; j < l; ++j) pairing_value += beta[j] * cartan_[i][j];
        int p = 0;
        Root probe = beta;
        while (true) {
          probe[i] -= 1;
          if (!known.count(probe)) break;
          ++p;
        }
        int q = p - pairing_value;
        if (q > 0) {
          Root up = beta;
          up[i] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    for (const Root& r : next) known.insert(r);
    layer.assign(next.begin(), next.end());
  }
  // Height first, then lexicographic with the first simple root dominant.
  std::stable_sort(positives.begin(), positives.end(), [](const Root& a, const Root& b) {
    int ha = height_of(a);
    int hb = height_of(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  roots_ = positives;
  for (const Root& r : positives) roots_.push_back(negated(r));
  for (int k = 0; k < num_roots(); ++k) index_[roots_[k]] = k;
  simple_idx_.resize(l);
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = 1;
    simple_idx_[i] = index_.at(r);
  }
  int count = num_roots();
  sum_table_.assign(static_cast<std::size_t>(count) * count, -1);
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      Root s(l);
      for (int i = 0; i < l; ++i) s[i] = roots_[a][i] + roots_[b][i];
      auto it = index_.find(s);
      if (it != index_.end()) sum_table_[static_cast<std::size_t>(a) * count + b] = it->second;
    }
  }
  // (lambda, mu)_B = sum over roots of (gamma, lambda)_B (gamma, mu)_B fixes c.
  Root first(l, 0);
  first[0] = 1;
  auto raw = [&](const Root& a, const Root& b) {
    long s = 0;
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) s += static_cast<long>(a[i]) * gram_[i][j] * b[j];
    return s;
  };
  long denom = 0;
  for (const Root& g : roots_) {
    long v = raw(g, first);
    denom += v * v;
  }
  scale_ = Q(raw(first, first), denom);
  scale_.canonicalize();
}

int RootSystem::index_of(const Root& r) const {
  auto it = index_.find(r);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::sum_index(int a, int b) const { return sum_table_[static_cast<std::size_t>(a) * num_roots() + b]; }

int RootSystem::height(int idx) const { return height_of(roots_[idx]); }

Q RootSystem::pairing(const Root& a, const Root& b) const {
  long s = 0;
  int l = rank();
  for (int i = 0; i < l; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < l; ++j) s += static_cast<long>(a[i]) * gram_[i][j] * b[j];
  }
  return Q(scale_ * s);
}

Q RootSystem::long_root_length2() const {
  Q best = 0;
  for (int k = 0; k < num_positive(); ++k) best = std::max(best, pairing(k, k));
  return best;
}

RootSystem build_root_system(const CartanType& ct) { return RootSystem(ct); }

std::pair<int, int> root_string(const RootSystem& rs, int alpha, int beta) {
  if (alpha == beta || rs.negative_of(alpha) == beta) {
    throw std::invalid_argument("root string undefined for beta = +-alpha");
  }
  const Root& a = rs.root(alpha);
  const Root& b = rs.root(beta);
  auto member = [&](int k) {
    Root r(b);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += k * a[i];
    return rs.index_of(r) >= 0;
  };
  int p = 0;
  while (member(-(p + 1))) ++p;
  int q = 0;
  while (member(q + 1)) ++q;
  return {p, q};
}

std::vector<Root> weyl_orbit_roots(const RootSystem& rs) {
  int l = rs.rank();
  const auto& a = rs.cartan_matrix();
  std::set<Root> seen;
  std::vector<Root> frontier;
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = 1;
    seen.insert(r);
    frontier.push_back(r);
  }
  while (!frontier.empty()) {
    std::vector<Root> next;
    for (const Root& r : frontier) {
      for (int i = 0; i < l; ++i) {
        int coeff = 0;
        for (int j = 0; j < l; ++j) coeff += r[j] * a[i][j];
        Root s(r);
        s[i] -= coeff;
        if (seen.insert(s).second) next.push_back(s);
      }
    }
    frontier.swap(next);
  }
  return {seen.begin(), seen.end()};
}

ChevalleyData::ChevalleyData(const RootSystem& rs) : rs_(rs), count_(rs.num_roots()) {
  const int count = count_;
  const int npos = rs.num_positive();
  std::vector<std::optional<Q>> memo(static_cast<std::size_t>(count) * count);

  auto length2 = [&](int a) { return rs.pairing(a, a); };
  auto string_p = [&](int a, int b) { return root_string(rs, a, b).first; };

  // Extraspecial pair of each non-simple positive root: smallest first summand.
  std::vector<std::pair<int, int>> extraspecial(npos, {-1, -1});
  for (int xi = 0; xi < npos; ++xi) {
    for (int a = 0; a < xi; ++a) {
      int b = -1;
      for (int c = 0; c < npos; ++c) {
        if (rs.sum_index(a, c) == xi) {
          b = c;
          break;
        }
      }
      if (b >= 0) {
        extraspecial[xi] = {a, b};
        break;
      }
    }
  }

  std::function<Q(int, int)> structure = [&](int a, int b) -> Q {
    int s = rs.sum_index(a, b);
    if (s < 0) return Q(0);
    auto& slot = memo[static_cast<std::size_t>(a) * count + b];
    if (slot) return *slot;
    Q value;
    bool pa = rs.is_positive(a);
    bool pb = rs.is_positive(b);
    if (pa && pb) {
      auto [ea, eb] = extraspecial[s];
      int p = string_p(ea, eb);
      if (a == ea) {
        value = p + 1;
      } else if (b == ea) {
        value = -(p + 1);
      } else {
        // Four-term relation with (a, b, -ea, -eb).
        int nea = rs.negative_of(ea);
        int neb = rs.negative_of(eb);
        Q bracket_sum = 0;
        int d1 = rs.sum_index(b, nea);
        if (d1 >= 0) bracket_sum += structure(b, nea) * structure(a, neb) / length2(d1);
        int d2 = rs.sum_index(a, nea);
        if (d2 >= 0) bracket_sum += structure(nea, a) * structure(b, neb) / length2(d2);
        value = length2(s) / Q(p + 1) * bracket_sum;
      }
    } else if (!pa && !pb) {
      value = -structure(rs.negative_of(a), rs.negative_of(b));
    } else if (pa && !pb) {
      int gamma = rs.negative_of(s);
      if (rs.is_positive(gamma)) {
        value = length2(gamma) / length2(b) * structure(gamma, a);
      } else {
        value = length2(gamma) / length2(a) * structure(b, gamma);
      }
    } else {
      value = -structure(b, a);
    }
    slot = value;
    return value;
  };

  table_.assign(static_cast<std::size_t>(count) * count, 0);
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      Q v = structure(a, b);
      if (v.get_den() != 1) throw std::logic_error("non-integral Chevalley constant");
      table_[static_cast<std::size_t>(a) * count + b] = static_cast<int>(v.get_num().get_si());
    }
  }

  int l = rs.rank();
  coroots_.resize(count);
  for (int k = 0; k < count; ++k) {
    std::vector<Q> h(l);
    Q len = length2(k);
    for (int i = 0; i < l; ++i) {
      int si = rs.simple_index(i);
      h[i] = Q(rs.root(k)[i]) * length2(si) / len;
    }
    coroots_[k] = std::move(h);
  }
}

int ChevalleyData::root_on_coroot(int a, int i) const {
  int v = 0;
  const auto& cm = rs_.cartan_matrix();
  for (int j = 0; j < rs_.rank(); ++j) v += rs_.root(a)[j] * cm[i][j];
  return v;
}

Q ChevalleyData::killing_e(int a) const { return Q(2) / rs_.pairing(a, a); }

Q ChevalleyData::killing_h(int i, int j) const {
  int si = rs_.simple_index(i);
  int sj = rs_.simple_index(j);
  return Q(4) * rs_.pairing(si, sj) / (rs_.pairing(si, si) * rs_.pairing(sj, sj));
}

ChevalleyData chevalley_constants(const RootSystem& rs) { return ChevalleyData(rs); }

std::string check_chevalley_invariants(const ChevalleyData& ch) {
  const RootSystem& rs = ch.root_system();
  int count = rs.num_roots();
  auto name = [&](int a) {
    std::string s = "(";
    for (std::size_t i = 0; i < rs.root(a).size(); ++i) {
      if (i) s += ",";
      s += std::to_string(rs.root(a)[i]);
    }
    return s + ")";
  };
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      int s = rs.sum_index(a, b);
      if (s < 0 && ch.n(a, b) != 0) return "N nonzero on non-root sum " + name(a) + name(b);
      if (ch.n(b, a) != -ch.n(a, b)) return "antisymmetry fails at " + name(a) + name(b);
      if (ch.n(rs.negative_of(a), rs.negative_of(b)) != -ch.n(a, b)) {
        return "N(-a,-b) = -N(a,b) fails at " + name(a) + name(b);
      }
      if (s < 0) continue;
      int p = root_string(rs, a, b).first;
      if (std::abs(ch.n(a, b)) != p + 1) return "|N| != p+1 at " + name(a) + name(b);
      // Cyclic identity in Chevalley normalisation, weighted by root lengths:
      // N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b) with c = -a-b.
      int c = rs.negative_of(s);
      Q x = Q(ch.n(a, b)) / rs.pairing(c, c);
      Q y = Q(ch.n(b, c)) / rs.pairing(a, a);
      Q z = Q(ch.n(c, a)) / rs.pairing(b, b);
      if (x != y || y != z) return "cyclic identity fails at " + name(a) + name(b);
    }
  }
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      int ab = rs.sum_index(a, b);
      if (b == rs.negative_of(a)) continue;
      for (int c = 0; c < count; ++c) {
        if (c == rs.negative_of(b) || a == rs.negative_of(c)) continue;
        int bc = rs.sum_index(b, c);
        int ca = rs.sum_index(c, a);
        long total = 0;
        if (ab >= 0) total += static_cast<long>(ch.n(a, b)) * ch.n(ab, c);
        if (bc >= 0) total += static_cast<long>(ch.n(b, c)) * ch.n(bc, a);
        if (ca >= 0) total += static_cast<long>(ch.n(c, a)) * ch.n(ca, b);
        Root sum(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) sum[i] = rs.root(a)[i] + rs.root(b)[i] + rs.root(c)[i];
        bool zero_sum = std::all_of(sum.begin(), sum.end(), [](int v) { return v == 0; });
        if (!zero_sum && total != 0) return "Jacobi fails at " + name(a) + name(b) + name(c);
      }
    }
  }
  return "";
}

}  // namespace btp
