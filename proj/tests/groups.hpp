#pragma once

// Groups of order <= 4 acting on themselves, and a few coefficient modules.

#include <memory>
#include <string>
#include <vector>

#include "cohomolab/cochain/module.hpp"
#include "cohomolab/cochain/standard.hpp"
#include "cohomolab/fpabelian/fpcomplex.hpp"

namespace groups {

using namespace cohomolab;

struct Named {
  std::string name;
  ActionSpec spec;
  std::vector<int> sign;  // a character to {1, -1}, all 1 for odd order
};

inline Named cyclic(Index m) {
  Named g{"Z/" + std::to_string(m), {}, {}};
  for (Index a = 0; a < m; ++a) {
    g.spec.element_names.push_back("g" + std::to_string(a));
    std::vector<Index> row, perm;
    for (Index b = 0; b < m; ++b) row.push_back((a + b) % m);
    g.spec.table.push_back(row);
    g.spec.permutations.push_back(row);
    g.sign.push_back(m % 2 == 0 && a % 2 ? -1 : 1);
  }
  return g;
}

inline Named klein() {
  Named g{"Z/2xZ/2", {}, {}};
  for (Index a = 0; a < 4; ++a) {
    g.spec.element_names.push_back("k" + std::to_string(a));
    std::vector<Index> row;
    for (Index b = 0; b < 4; ++b) row.push_back(a ^ b);
    g.spec.table.push_back(row);
    g.spec.permutations.push_back(row);
    g.sign.push_back(a & 1 ? -1 : 1);
  }
  return g;
}

inline std::vector<Named> all_up_to_4() { return {cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein()}; }

struct Coefficients {
  std::string name;
  std::vector<Integer> orders;
  bool twisted;
};

/// Z, Z/2, Z/3, Z + Z/2, trivial and twisted by the sign character.
/// Twisted: -1 on Z and Z/3, (a, b) -> (a, a + b) on Z + Z/2, nothing on Z/2.
inline std::vector<Coefficients> coefficients() {
  std::vector<Coefficients> out;
  for (bool tw : {false, true}) {
    out.push_back({"Z", {0}, tw});
    if (!tw) out.push_back({"Z/2", {2}, tw});
    out.push_back({"Z/3", {3}, tw});
    out.push_back({"Z+Z/2", {0, 2}, tw});
  }
  return out;
}

struct Setup {
  SpacePtr X;
  ModulePtr M;
};

inline Setup regular(const Named& g, const Coefficients& c) {
  const Index n = Index(g.spec.table.size());
  auto X = std::make_shared<const FiniteSpace>(FiniteSpace::discrete(n));
  GroupAction act(g.spec, *X);
  std::vector<IntMatrix> mats;
  for (Index a = 0; a < n; ++a) {
    const Index r = Index(c.orders.size());
    IntMatrix m = identity_matrix(r);
    if (c.twisted && g.sign[a] < 0) {
      if (r == 1)
        m(0, 0) = -1;
      else
        m(1, 0) = 1;
    }
    mats.push_back(m);
  }
  auto M = std::make_shared<const GModule>(FpAbGroup::diagonal(c.orders), act, mats);
  return {X, M};
}

/// H_eq(G; V) through the equivariant standard complex on X = G.
inline std::vector<Invariants> standard_equivariant(const Setup& s, Index N) {
  const StandardComplex sc = standard_complex(s.X, s.M, N + 1, Variant::Standard, {}, true);
  FpComplexHomology h(sc.complex());
  std::vector<Invariants> out;
  for (Index n = 0; n <= N; ++n) out.push_back(h.homology(n));
  return out;
}

}  // namespace groups
