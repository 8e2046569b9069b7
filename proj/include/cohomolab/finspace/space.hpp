#pragma once

// Finite topological spaces as specialization preorders.
//
// x <= y means x lies in the closure of {y}; open sets are the up-sets and
// U_x = {y : x <= y} is the smallest open neighbourhood of x. Maps into a
// discrete group are continuous iff they are locally constant, i.e. constant
// on the connected components of the comparability graph.

#include <optional>
#include <string>
#include <vector>

#include "cohomolab/integer.hpp"

namespace cohomolab {

/// Process-wide ceiling on the number of tuples any power may have.
Index size_limit();
void set_size_limit(Index limit);
/// Throws SizeOverflow when `count` exceeds the ceiling.
void check_size(Index count, const std::string& what);

/// n^k, saturating well above any sensible limit.
Index checked_power(Index n, Index k);

class FiniteSpace {
 public:
  FiniteSpace() = default;
  /// `leq` is row-major n x n; must be reflexive and transitive.
  FiniteSpace(std::vector<std::string> labels, std::vector<char> leq);
  /// Preorder generated by `x < y` pairs (reflexive-transitive closure).
  static FiniteSpace from_relations(std::vector<std::string> labels,
                                    const std::vector<std::pair<Index, Index>>& less);
  static FiniteSpace discrete(Index n);

  Index size() const { return n_; }
  bool leq(Index x, Index y) const { return leq_[x * n_ + y] != 0; }
  bool comparable(Index x, Index y) const { return leq(x, y) || leq(y, x); }
  const std::string& label(Index x) const { return labels_[x]; }
  std::optional<Index> index_of(const std::string& name) const;

  /// Minimal open neighbourhood U_x as a membership vector.
  std::vector<char> minimal_open(Index x) const;
  bool is_open(const std::vector<char>& member) const;
  bool is_discrete() const;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  Index n_ = 0;
  std::vector<std::string> labels_;
  std::vector<char> leq_;
};

/// Row-major enumeration of X^k, first coordinate most significant.
class TupleCodec {
 public:
  TupleCodec() = default;
  TupleCodec(Index points, Index arity);

  Index points() const { return n_; }
  Index arity() const { return k_; }
  Index count() const { return count_; }

  Index coord(Index code, Index i) const { return (code / pow_[i]) % n_; }
  void decode(Index code, Index* out) const;
  Index encode(const Index* coords) const;
  std::vector<Index> decode(Index code) const;
  Index encode(const std::vector<Index>& coords) const { return encode(coords.data()); }

 private:
  Index n_ = 0, k_ = 0, count_ = 1;
  std::vector<Index> pow_;  // pow_[i] = n^(k-1-i)
};

/// The k-fold product preorder (componentwise order) as a finite space.
FiniteSpace power_space(const FiniteSpace& X, Index k);

/// A set of (arity)-tuples of points of X, stored as a membership vector on
/// the codes of X^arity.
struct SubspaceOfPower {
  Index arity = 0;
  TupleCodec codec;
  std::vector<char> member;

  Index count() const;
  bool contains(Index code) const { return member[code] != 0; }
  static SubspaceOfPower full(const FiniteSpace& X, Index arity);
};

/// Open covering; members are up-sets whose union is X.
struct Covering {
  std::string name;
  std::vector<std::vector<char>> members;

  /// Throws NotACovering unless members are open and cover X.
  void validate(const FiniteSpace& X) const;
};

Covering trivial_cover(const FiniteSpace& X);
/// {U_x : x in X} without repetitions, in order of first appearance.
Covering minimal_open_cover(const FiniteSpace& X);

/// 𝔘[n] = union over members U of U^{n+1}.
SubspaceOfPower diagonal_neighborhood(const FiniteSpace& X, const Covering& cover, Index n);

/// X^{p+1} x S for a subspace S of X^{q+1}.
SubspaceOfPower product_with_full(const FiniteSpace& X, Index p_arity, const SubspaceOfPower& S);

/// Connected components of the comparability graph of S.
///
/// Two tuples are adjacent when they are componentwise comparable, both lie
/// in S, and they agree at every coordinate outside `moving` (an empty
/// `moving` means all coordinates move). Returns a component id per code,
/// -1 outside S, and the number of components.
struct Components {
  std::vector<int> id;
  Index count = 0;
};
Components connected_components(const FiniteSpace& X, const SubspaceOfPower& S,
                                const std::vector<char>& moving = {});

/// Removal step of a dismantling: `point` is dominated by `witness` in the
/// remaining space.
struct BeatStep {
  enum Kind { Down, Up, Twin } kind;
  Index point;
  Index witness;
};

/// Beat-point (and twin-point) removals down to a single point, or nothing
/// if X does not dismantle.
std::optional<std::vector<BeatStep>> contractibility_certificate(const FiniteSpace& X);
/// Replays a certificate; true iff every step is valid and one point remains.
bool verify_certificate(const FiniteSpace& X, const std::vector<BeatStep>& cert);

}  // namespace cohomolab
