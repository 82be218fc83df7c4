#include "btp/flagspace.hpp"

namespace btp {

std::vector<ClassCRecord> class_c_catalog() {
  return {
      {'B', "so(2l+1)", "so(2(l-p)+1)+u(p)", 0, 0, "p(4l+1-3p), p <= l", 0},
      {'C', "sp(l)", "sp(l-p)+u(p)", 0, 0, "p(4l+1-3p), p < l", 0},
      {'D', "so(2l)", "so(2(l-p))+u(p)", 0, 0, "p(4l-1-3p), p < l", 0},
      {'E', "e6", "su(5)+su(2)+R", 6, 3, "50", 50},
      {'E', "e6", "su(6)+R", 6, 2, "42", 42},
      {'E', "e7", "so(10)+su(2)+R", 7, 6, "84", 84},
      {'E', "e7", "so(12)+R", 7, 1, "68", 68},
      {'E', "e7", "su(7)+R", 7, 2, "84", 84},
      {'E', "e8", "e7+R", 8, 8, "114", 114},
      {'E', "e8", "so(14)+R", 8, 1, "156", 156},
      {'F', "f4", "so(7)+R", 4, 4, "30", 30},
      {'F', "f4", "sp(3)+R", 4, 1, "30", 30},
      {'G', "g2", "u(2)", 2, 2, "10", 10},
  };
}

int ClassCRecord::formula_dimension(int ell, int p) const {
  switch (series) {
    case 'B':
    case 'C': return p * (4 * ell + 1 - 3 * p);
    case 'D': return p * (4 * ell - 1 - 3 * p);
    default: return listed_dimension;
  }
}

FlagManifold ClassCRecord::instance(int ell, int p) const {
  int r = rank;
  int painted_root = painted;
  if (rank == 0) {
    r = ell;
    painted_root = p;
    int max_p = series == 'B' ? ell : (series == 'C' ? ell - 1 : ell - 2);
    if (p < 1 || p > max_p) {
      throw FlagError(std::string(1, series) + std::to_string(ell) + ": p must lie in [1, " + std::to_string(max_p) +
                      "]");
    }
  }
  CartanType ct = CartanType::make(series, r);
  std::vector<int> iso;
  for (int i = 0; i < r; ++i)
    if (i != painted_root - 1) iso.push_back(i);
  return build_flag(ct, iso);
}

}  // namespace btp
