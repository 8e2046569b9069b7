#pragma once

// Exact identity checks on a double complex. Each check reports the first
// failing generator together with the offending image.

#include <vector>

#include "cohomolab/bicomplex/double_complex.hpp"

namespace cohomolab {

/// Non-zero entries of a vector as "i:v" pairs.
std::string format_vector(const IntVector& v);

/// "name: f is zero" with a witness naming `source_name` when it is not.
Check zero_check(const std::string& name, const GroupMap& f, const std::string& source_name);

/// d_h^2, d_v^2, anticommutativity, D^2 and the augmentation complexes.
std::vector<Check> structural_checks(const DoubleComplex& dc);

/// i and j are chain maps into Tot, and the augmentations compose to zero.
std::vector<Check> augmentation_checks(const DoubleComplex& dc);

/// d_h s + s d_h = id on every grid position with room above it, s i = id on
/// the augmentation, and the augmented rows have zero cohomology.
std::vector<Check> row_exactness_checks(const DoubleComplex& dc);

/// Induced map H^n(f) between two complexes, in the bases of their homology.
/// `f` goes from degree n of `a` to degree n of `b`.
GroupMap induced_on_homology(const FpComplexHomology& a, const FpComplexHomology& b, Index n, const GroupMap& f);

struct IsoReport {
  struct Degree {
    Index n;
    Invariants source, target;
    bool injective = false, surjective = false;
    std::string witness;
  };
  std::vector<Degree> degrees;
  bool ok() const;
};

/// Bijectivity of an induced map in every degree up to `upto`.
IsoReport induced_isomorphism(const FpComplexHomology& a, const FpComplexHomology& b, Index upto,
                              const std::function<GroupMap(Index)>& f);

/// H(i*): H(A_cr^*) -> H(Tot) in degrees 0..N.
IsoReport row_augmentation_iso(const DoubleComplex& dc);

}  // namespace cohomolab
