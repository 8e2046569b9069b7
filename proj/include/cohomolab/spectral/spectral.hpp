#pragma once

// Spectral sequence of the column filtration F^p Tot = sum over p' >= p.
//
// E_0 is the grid with d_0 = d_v. From E_1 on the pages are read off a
// filtered reduction of Tot: pairs that split off as filtered summands are
// cancelled (a pair of gap g is Z + Z on pages 1..g, killed by d_g), and the
// small remainder is handled with zigzag lattices
//   E_r^p = pi_p(Z_r^p) / pi_p(D Z_{r-1}^{p-r+1}),  Z_r^p = {x in F^p : Dx in F^{p+r}}
// with pi_p the projection to filtration label p.

#include <optional>
#include <string>
#include <vector>

#include "cohomolab/bicomplex/checks.hpp"

namespace cohomolab {

struct SpectralPage {
  Index r = 0;
  Index bound = 0;  // entries with p + q <= bound are trusted
  /// entries[p][q] for p + q <= bound + 1. Total degree bound + 1 is only
  /// kept as a target of d_r and need not be the true entry.
  std::vector<std::vector<std::shared_ptr<const FpAbGroup>>> entries;
  /// d[p][q] : (p, q) -> (p + r, q - r + 1) for p + q <= bound; a map into
  /// the zero group when the target leaves the first quadrant.
  std::vector<std::vector<GroupMap>> d;

  bool trusted(Index p, Index q) const { return p >= 0 && q >= 0 && p + q <= bound; }
  bool has(Index p, Index q) const { return p >= 0 && q >= 0 && p + q <= bound + 1; }
  const FpAbGroup& entry(Index p, Index q) const { return *entries[p][q]; }
  const std::shared_ptr<const FpAbGroup>& entry_ptr(Index p, Index q) const { return entries[p][q]; }
  const GroupMap& differential(Index p, Index q) const { return d[p][q]; }
  /// Some d_r non-zero at a trusted position.
  bool has_nonzero_differential() const;
};

struct SpectralSequence {
  std::vector<SpectralPage> pages;  // r = 0, 1, ...
  /// How the pages from E_1 on were obtained ("Z", "F_p", "relation cone").
  std::string engine;
  Index residual_size = 0;  // generators left after the filtered reduction
  /// First page from which nothing changes any more, or -1 when the pages
  /// computed do not show it.
  Index stable_from = -1;
  /// d_r d_r = 0, E_{r+1} = H(E_r), E_1 against column cohomology, the
  /// transposed filtration and vanishing outside the first quadrant.
  std::vector<Check> checks;

  bool checks_ok() const;
  const SpectralPage& last() const { return pages.back(); }
};

/// Pages E_0 .. E_R with R = min(r_max, upto + 2). Entries are trusted for
/// p + q <= upto (default N). Throws BoundTooSmall when upto exceeds N or
/// r_max < 1.
SpectralSequence compute_pages(const DoubleComplex& dc, Index r_max, std::optional<Index> upto = std::nullopt);

/// E_1 of the row filtration: rows are exact after augmentation, so it sits in
/// column 0 as A_cr^q and E_2 there is H(A_cr^*), which must equal H(Tot).
std::vector<Check> transposed_checks(const DoubleComplex& dc, Index upto);

struct ConvergenceReport {
  struct Degree {
    Index n = 0;
    std::vector<Invariants> filtration;  // F^p H^n(Tot), p = 0..n+1
    std::vector<Invariants> graded;      // F^p / F^{p+1}, p = 0..n
    std::vector<Invariants> e_infinity;  // E_inf^{p, n-p}, p = 0..n
    bool match = false;
    std::string witness;
  };
  std::vector<Degree> degrees;
  Index stable_from = -1;

  bool match() const;
};

/// Column filtration of H(Tot) from the cohomology of the subcomplexes F^p,
/// compared with the last page. Throws NotStabilized when the pages do not
/// show stabilization within the trusted range.
ConvergenceReport convergence_report(const SpectralSequence& ss, const DoubleComplex& dc);

}  // namespace cohomolab
