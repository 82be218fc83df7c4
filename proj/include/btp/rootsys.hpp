#pragma once
// Root systems of the simple Lie algebras and integral Chevalley structure constants.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "btp/scalar.hpp"

namespace btp {

/// Raised on an invalid (series, rank) pair or a malformed type name.
class CartanTypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CartanType {
  char series = 'A';
  int rank = 1;

  /// Throws CartanTypeError unless the pair names an existing simple algebra.
  static CartanType make(char series, int rank);
  /// Parses names such as "A2", "G2", "E6".
  static CartanType parse(const std::string& name);
  std::string name() const { return std::string(1, series) + std::to_string(rank); }
  bool simply_laced() const { return series == 'A' || series == 'D' || series == 'E'; }
};

/// Root coordinates over the simple roots.
using Root = std::vector<int>;

class RootSystem {
 public:
  explicit RootSystem(CartanType ct);

  const CartanType& cartan_type() const { return type_; }
  int rank() const { return type_.rank; }
  /// A_ij = alpha_j(h_i) = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

  /// All roots: positive roots first (ordered by height, then lexicographically),
  /// followed by their negatives in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return static_cast<int>(roots_.size() / 2); }
  const Root& root(int idx) const { return roots_[idx]; }
  bool is_positive(int idx) const { return idx < num_positive(); }
  /// Index of -root(idx).
  int negative_of(int idx) const { return idx < num_positive() ? idx + num_positive() : idx - num_positive(); }
  /// Index of the given coordinate vector, or -1 if it is not a root.
  int index_of(const Root& r) const;
  /// Index of root(a)+root(b), or -1.
  int sum_index(int a, int b) const;
  int height(int idx) const;
  int simple_index(int i) const { return simple_idx_[i]; }

  /// Killing-normalised pairing of arbitrary coefficient vectors.
  Q pairing(const Root& a, const Root& b) const;
  Q pairing(int a, int b) const { return pairing(roots_[a], roots_[b]); }
  /// Squared length of the long roots under the Killing pairing.
  Q long_root_length2() const;
  /// Integer Gram matrix of the simple roots before normalisation.
  const std::vector<std::vector<int>>& raw_gram() const { return gram_; }
  /// Scale factor c with (.,.)_Killing = c * raw_gram.
  const Q& killing_scale() const { return scale_; }

 private:
  CartanType type_;
  std::vector<std::vector<int>> gram_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> roots_;
  std::map<Root, int> index_;
  std::vector<int> simple_idx_;
  std::vector<int> sum_table_;
  Q scale_;
};

RootSystem build_root_system(const CartanType& ct);

/// Largest p, q with beta - p*alpha and beta + q*alpha roots. Throws if beta = +-alpha.
std::pair<int, int> root_string(const RootSystem& rs, int alpha, int beta);

/// Roots generated by the closure of the simple roots under Weyl reflections.
/// Independent enumeration used as an oracle against RootSystem.
std::vector<Root> weyl_orbit_roots(const RootSystem& rs);

/// Chevalley basis data: [E_a, E_b] = N_ab E_{a+b}, [E_a, E_{-a}] = h_a,
/// with N_{-a,-b} = -N_ab and extraspecial signs +1 under the root order above.
class ChevalleyData {
 public:
  explicit ChevalleyData(const RootSystem& rs);

  const RootSystem& root_system() const { return rs_; }
  int n(int a, int b) const { return table_[static_cast<std::size_t>(a) * count_ + b]; }
  /// Coroot h_a in coordinates over the simple coroots h_1..h_l.
  const std::vector<Q>& coroot(int a) const { return coroots_[a]; }
  /// Value of root(a) on the simple coroot h_i.
  int root_on_coroot(int a, int i) const;
  /// Killing form B(E_a, E_{-a}) = 2 / (a, a).
  Q killing_e(int a) const;
  /// Killing form on the Cartan subalgebra in the simple-coroot basis.
  Q killing_h(int i, int j) const;

 private:
  RootSystem rs_;
  int count_;
  std::vector<int> table_;
  std::vector<std::vector<Q>> coroots_;
};

ChevalleyData chevalley_constants(const RootSystem& rs);

/// Exact invariant checks on a ChevalleyData; returns an empty string on success,
/// otherwise a description of the first violated identity.
std::string check_chevalley_invariants(const ChevalleyData& ch);

}  // namespace btp
