#include "btp/groupgeom.hpp"

namespace btp {

namespace {

std::size_t at3(int n, int a, int b, int c) { return (static_cast<std::size_t>(a) * n + b) * n + c; }
std::size_t at4(int n, int a, int b, int c, int d) { return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d; }

void validate_form(const NilpotentNormalForm& nf) {
  if (nf.r <= 0 || nf.r >= nf.n) {
    throw GroupGeomError("normal form needs 0 < r < n, got n = " + std::to_string(nf.n) + ", r = " + std::to_string(nf.r));
  }
  if (nf.y.rows() != nf.n - nf.r || nf.y.cols() != nf.r) {
    throw GroupGeomError("Y must be (n - r) x r = " + std::to_string(nf.n - nf.r) + " x " + std::to_string(nf.r));
  }
}

}  // namespace

InfinitesimalModel nilpotent_model(const NilpotentNormalForm& nf) {
  validate_form(nf);
  int n = nf.n;
  InfinitesimalModel m = InfinitesimalModel::blank("nilpotent n=" + std::to_string(n) + " r=" + std::to_string(nf.r), 2 * n);
  m.conj = Mat(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m.labels[i] = "e" + std::to_string(i + 1);
    m.labels[n + i] = "ebar" + std::to_string(i + 1);
    m.J(i, i) = GQ::I();
    m.J(n + i, n + i) = -GQ::I();
    m.g(i, n + i) = GQ(1);
    m.g(n + i, i) = GQ(1);
    m.conj(n + i, i) = GQ(1);
    m.conj(i, n + i) = GQ(1);
  }
  // d phi_a = sum_i Y_ai phi_i ^ conj phi_i with d phi(X, Y) = -phi([X, Y]).
  for (int i = 0; i < nf.r; ++i)
    for (int a = nf.r; a < n; ++a) {
      const GQ& y = nf.y(a - nf.r, i);
      if (y.is_zero()) continue;
      m.set_bracket_m(i, n + i, a, -y);
      m.set_bracket_m(i, n + i, n + a, y.conj());
    }
  validate(m);
  return m;
}

std::vector<GQ> nilpotent_d_constants(const NilpotentNormalForm& nf) {
  validate_form(nf);
  InfinitesimalModel m = nilpotent_model(nf);
  int n = nf.n;
  std::vector<GQ> d(static_cast<std::size_t>(n) * n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Vec x(2 * n);
      Vec y(2 * n);
      x[n + j] = GQ(1);
      y[k] = GQ(1);
      Vec br = m.bracket(x, y);
      for (int i = 0; i < n; ++i) d[at3(n, j, i, k)] = br[n + i];
    }
  return d;
}

std::vector<GQ> nilpotent_chern_curvature(const NilpotentNormalForm& nf) {
  int n = nf.n;
  std::vector<GQ> d = nilpotent_d_constants(nf);
  // D^j_ik stored at [j][i][k].
  auto D = [&](int j, int i, int k) -> const GQ& { return d[at3(n, j, i, k)]; };
  std::vector<GQ> r(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          GQ v;
          for (int s = 0; s < n; ++s) {
            v += D(s, k, i) * D(s, l, j).conj();
            v -= D(l, s, i) * D(k, s, j).conj();
            v -= D(j, s, i) * D(k, l, s).conj();
            v -= D(i, s, j).conj() * D(l, k, s);
          }
          r[at4(n, i, j, k, l)] = v;
        }
  return r;
}

std::vector<GQ> chern_curvature_in_basis(const InfinitesimalModel& model, int n) {
  Tensor low = lower_output(model, curvature(model, chern_connection(model)));
  std::vector<GQ> r(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) r[at4(n, i, j, k, l)] = low.get({i, n + j, k, n + l});
  return r;
}

std::vector<GQ> bismut_connection_forms(const InfinitesimalModel& model, int n) {
  NomizuOperator nb = bismut_connection(model);
  std::vector<GQ> theta(static_cast<std::size_t>(n) * n * 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int x = 0; x < 2 * n; ++x) theta[(static_cast<std::size_t>(i) * n + j) * 2 * n + x] = nb.op[x](j, i);
  return theta;
}

}  // namespace btp
