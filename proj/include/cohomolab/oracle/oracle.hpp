#pragma once

// Slow, independent references. Nothing here touches the cochain or double
// complex code; both complexes are written out entry by entry and handed to
// the fpabelian layer.

#include <vector>

#include "cohomolab/cochain/module.hpp"
#include "cohomolab/finspace/space.hpp"
#include "cohomolab/fpabelian/fpcomplex.hpp"

namespace cohomolab::oracle {

/// Inhomogeneous cochains Map(G^n, V), tuples coded base |G| with the first
/// slot most significant, V generators innermost. `d` goes to degree n + 1:
///   (df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum_i (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g_1..g_n)
struct BarComplexLevel {
  Index degree = 0;
  Index tuples = 0;  // |G|^n
  SparseIntMatrix d;
};

/// Levels 0..N+1 (the last one without a differential) as a complex.
FpComplex bar_complex(const GModule& V, Index N, std::vector<BarComplexLevel>* levels = nullptr);
/// H^0..H^N.
std::vector<FpAbGroup> bar_group_cohomology(const GModule& V, Index N);

/// What a nerve simplex sigma carries: V itself, or the locally constant
/// functions U_sigma -> V (one copy of V per connected component).
enum class NerveCoefficients { Constant, LocallyConstant };

struct NerveComplex {
  /// simplices[k]: sorted (k+1)-subsets of members with non-empty intersection.
  std::vector<std::vector<std::vector<Index>>> simplices;
  /// components[k][s]: number of components of that intersection.
  std::vector<std::vector<Index>> components;
  FpComplex complex;
};

/// Alternating cochains on the nerve in degrees 0..N+1.
NerveComplex nerve_complex(const FiniteSpace& X, const Covering& cover, const FpAbGroup& V, Index N,
                           NerveCoefficients mode);
/// H^0..H^N.
std::vector<FpAbGroup> cech_nerve_cohomology(const FiniteSpace& X, const Covering& cover, const FpAbGroup& V,
                                             Index N, NerveCoefficients mode = NerveCoefficients::LocallyConstant);

}  // namespace cohomolab::oracle
