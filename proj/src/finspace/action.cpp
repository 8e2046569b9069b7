#include "cohomolab/finspace/action.hpp"

#include <algorithm>

#include "cohomolab/error.hpp"

namespace cohomolab {

ActionSpec ActionSpec::trivial(Index points) {
  ActionSpec s;
  s.element_names = {"e"};
  s.table = {{0}};
  std::vector<Index> id(points);
  for (Index x = 0; x < points; ++x) id[x] = x;
  s.permutations = {id};
  return s;
}

GroupAction::GroupAction(const ActionSpec& spec, const FiniteSpace& X)
    : points_(X.size()), names_(spec.element_names), table_(spec.table), perm_(spec.permutations) {
  const Index n = Index(names_.size());
  if (n == 0) throw Error(ErrorKind::NotAGroup, "group has no elements");
  if (Index(table_.size()) != n) throw Error(ErrorKind::NotAGroup, "multiplication table has the wrong size");
  for (const auto& row : table_) {
    if (Index(row.size()) != n) throw Error(ErrorKind::NotAGroup, "multiplication table has the wrong size");
    for (Index v : row)
      if (v < 0 || v >= n) throw Error(ErrorKind::NotAGroup, "table entry out of range");
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error(ErrorKind::NotAGroup,
                      "not associative at (" + names_[a] + "," + names_[b] + "," + names_[c] + ")");
  e_ = -1;
  for (Index g = 0; g < n && e_ < 0; ++g) {
    bool ok = true;
    for (Index h = 0; h < n && ok; ++h) ok = table_[g][h] == h && table_[h][g] == h;
    if (ok) e_ = g;
  }
  if (e_ < 0) throw Error(ErrorKind::NotAGroup, "no identity element");
  inv_.assign(n, -1);
  for (Index g = 0; g < n; ++g) {
    for (Index h = 0; h < n; ++h)
      if (table_[g][h] == e_ && table_[h][g] == e_) inv_[g] = h;
    if (inv_[g] < 0) throw Error(ErrorKind::NotAGroup, names_[g] + " has no inverse");
  }

  if (Index(perm_.size()) != n) throw Error(ErrorKind::NotHomomorphism, "need one permutation per element");
  for (Index g = 0; g < n; ++g) {
    const auto& p = perm_[g];
    if (Index(p.size()) != points_) throw Error(ErrorKind::NotOrderAutomorphism, names_[g] + " is not a permutation");
    std::vector<char> hit(points_, 0);
    for (Index x : p) {
      if (x < 0 || x >= points_ || hit[x]) throw Error(ErrorKind::NotOrderAutomorphism, names_[g] + " is not a permutation");
      hit[x] = 1;
    }
    for (Index x = 0; x < points_; ++x)
      for (Index y = 0; y < points_; ++y)
        if (X.leq(x, y) != X.leq(p[x], p[y]))
          throw Error(ErrorKind::NotOrderAutomorphism, names_[g] + " does not preserve the order on (" + X.label(x) +
                                                           "," + X.label(y) + ")");
  }
  for (Index g = 0; g < n; ++g)
    for (Index h = 0; h < n; ++h)
      for (Index x = 0; x < points_; ++x)
        if (perm_[table_[g][h]][x] != perm_[g][perm_[h][x]])
          throw Error(ErrorKind::NotHomomorphism, "(" + names_[g] + "*" + names_[h] + ").x differs from " + names_[g] +
                                                      ".(" + names_[h] + ".x) at " + X.label(x));
}

bool GroupAction::is_trivial() const {
  for (const auto& p : perm_)
    for (Index x = 0; x < points_; ++x)
      if (p[x] != x) return false;
  return true;
}

bool GroupAction::is_free() const {
  for (Index g = 0; g < order(); ++g)
    if (g != e_)
      for (Index x = 0; x < points_; ++x)
        if (perm_[g][x] == x) return false;
  return true;
}

Index GroupAction::act_tuple(Index g, Index code, const TupleCodec& codec) const {
  Index out = 0, mult = 1;
  const auto& p = perm_[g];
  for (Index i = codec.arity() - 1; i >= 0; --i) {
    out += p[code % points_] * mult;
    code /= points_;
    mult *= points_;
  }
  return out;
}

bool GroupAction::stabilizes(const SubspaceOfPower& S) const {
  for (Index g = 0; g < order(); ++g)
    for (Index c = 0; c < S.codec.count(); ++c)
      if (S.member[c] && !S.member[act_tuple(g, c, S.codec)]) return false;
  return true;
}

bool GroupAction::stabilizes(const Covering& cov) const {
  for (Index g = 0; g < order(); ++g)
    for (const auto& u : cov.members) {
      std::vector<char> img(points_, 0);
      for (Index x = 0; x < points_; ++x)
        if (u[x]) img[perm_[g][x]] = 1;
      if (std::find(cov.members.begin(), cov.members.end(), img) == cov.members.end()) return false;
    }
  return true;
}

}  // namespace cohomolab
