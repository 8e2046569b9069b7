#pragma once

// The two explicit constructions linking continuous cochains to the double
// complex: the psi cochain connecting j(f) and i(f) in Tot, and the
// equivariant averaging of vertical primitives.

#include <cstdint>
#include <string>
#include <vector>

#include "cohomolab/bicomplex/checks.hpp"

namespace cohomolab {

/// Sign attached to the copy of f placed at bidegree (p, q).
struct SignProfile {
  std::string name;
  int constant;  // overall factor
  int p_exp;     // multiply by (-1)^p when 1
  int q_exp;     // multiply by (-1)^q when 1

  int sign(Index p, Index q) const {
    int s = constant;
    if (p_exp && p % 2) s = -s;
    if (q_exp && q % 2) s = -s;
    return s;
  }
};

/// Candidates in search order: (-1)^p, 1, (-1)^q, then their negatives.
const std::vector<SignProfile>& sign_profiles();

struct PsiResult {
  bool ok = false;
  std::string profile;  // the first profile that works
  std::vector<std::string> working;  // every profile that works
  IntVector c;          // element of Tot^{n-1}
  std::string witness;  // when no profile works: D(c) - (j(f) - i(f)) for the first candidate
  /// Throws SignProfileFailure when !ok.
  void require() const;
};

/// Coordinates in A_c^n of a function given on X^{n+1}; throws NotContinuous
/// or NotEquivariant.
IntVector continuous_cochain(const DoubleComplex& dc, Index n, const IntVector& ambient);

/// c = sum over p+q = n-1 of eps(p,q) f placed at (p,q), with D(c) = j(f) - i(f).
/// f is given in the generators of A_c^n; throws NotACocycle. With the sign
/// corruption only the literal (-1)^p profile is tried.
PsiResult psi_bridge(const DoubleComplex& dc, Index n, const IntVector& f);

/// One profile that works for every generator of the continuous cocycles in
/// degrees 1..upto.
struct PsiSurvey {
  bool ok = false;
  std::string profile;
  std::vector<std::string> common;  // all profiles that work everywhere
  Index cocycles = 0;
  std::string witness;  // first cocycle without a common profile
};
PsiSurvey psi_survey(const DoubleComplex& dc, Index upto);

/// f_eq(x, x') = x_0-twist of f: A_s f(s^{-1} x, s^{-1} x') with s the group
/// element carrying the orbit representative of x_0 to x_0. Maps a
/// non-equivariant group to an equivariant one of the same arity. Throws
/// NotFreeAction, and NotContinuous when the twist breaks continuity.
GroupMap equivariantization(const CochainGroup& source, const CochainGroup& target);

/// Random f' = u + z on grid positions p + q <= max_degree, u equivariant
/// and z a vertical cocycle, so d_v f' is equivariant; each trial checks
/// d_v(equivariantize(f')) = d_v(f'). `plain` and `eq` share space, module
/// and covering. Throws NotFreeAction like equivariantization.
std::vector<Check> equivariantization_trials(const DoubleComplex& plain, const DoubleComplex& eq, std::uint64_t seed,
                                             Index trials, Index max_degree = 1);

}  // namespace cohomolab
