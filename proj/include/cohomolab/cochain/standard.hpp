#pragma once

// Single complexes A^*(X;V) in the four flavours the command line offers.
// standard: all functions on X^{n+1}; continuous: locally constant ones;
// covering: locally constant on U[n] for the given covering; germ: the
// colimit over coverings, reached at the minimal open cover of a finite space.

#include <string>
#include <vector>

#include "cohomolab/cochain/cochain.hpp"
#include "cohomolab/fpabelian/fpcomplex.hpp"

namespace cohomolab {

enum class Variant { Standard, Continuous, Covering, Germ };

/// "standard", "continuous", "covering", "germ"; throws ValidationError.
Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

struct StandardComplex {
  std::vector<CochainGroupPtr> groups;  // degrees 0..top
  std::vector<GroupMap> d;

  Index top() const { return Index(groups.size()) - 1; }
  FpComplex complex() const;
};

/// Degrees 0..top. `cover` is only read for Variant::Covering.
StandardComplex standard_complex(const SpacePtr& X, const ModulePtr& M, Index top, Variant v, const Covering& cover,
                                 bool equivariant);

}  // namespace cohomolab
