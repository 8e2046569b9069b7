#include "cohomolab/fpabelian/fpcomplex.hpp"

#include "cohomolab/error.hpp"

namespace cohomolab {

FpComplexHomology::FpComplexHomology(const FpComplex& c, bool filtered, int max_gap) : groups_(c.groups), d_(c.d) {
  const Index T = c.top();
  if (T < 0) throw Error(ErrorKind::DimensionMismatch, "empty complex");
  if (Index(c.d.size()) != T) throw Error(ErrorKind::DimensionMismatch, "complex needs one map per degree");
  for (Index n = 0; n <= T; ++n) {
    if (!c.groups[n]->is_diagonal())
      throw Error(ErrorKind::Internal, "free model needs diagonal presentations");
    gens_.push_back(c.groups[n]->generator_count());
    const auto& o = c.groups[n]->orders();
    std::vector<Index> pos(o.size(), -1);
    Index k = 0;
    for (std::size_t i = 0; i < o.size(); ++i)
      if (o[i] != 0) pos[i] = k++;
    tors_.push_back(std::move(pos));
  }
  for (Index n = 0; n < T; ++n)
    if (c.d[n].rows() != gens_[n + 1] || c.d[n].cols() != gens_[n])
      throw Error(ErrorKind::DimensionMismatch, "differential " + std::to_string(n) + " has the wrong shape");

  auto tors_count = [&](Index n) {
    Index k = 0;
    for (Index p : tors_[n]) k += p >= 0;
    return k;
  };
  // cone degree k is degree k-1 of the complex; cone degree 0 holds R^0 alone
  cone_.dims.push_back(tors_count(0));
  for (Index n = 0; n <= T; ++n) cone_.dims.push_back(gens_[n] + (n < T ? tors_count(n + 1) : 0));
  if (filtered) {
    if (Index(c.labels.size()) != T + 1) throw Error(ErrorKind::DimensionMismatch, "labels missing");
    std::vector<int> lab0;
    for (Index i = 0; i < gens_[0]; ++i)
      if (tors_[0][i] >= 0) lab0.push_back(c.labels[0][i]);
    cone_.labels.push_back(std::move(lab0));
    for (Index n = 0; n <= T; ++n) {
      std::vector<int> lab = c.labels[n];
      if (n < T)
        for (Index i = 0; i < gens_[n + 1]; ++i)
          if (tors_[n + 1][i] >= 0) lab.push_back(c.labels[n + 1][i]);
      cone_.labels.push_back(std::move(lab));
    }
  }

  // D(f, r) = (d f + rho r, kappa f - sigma r) from degree n (n = -1 has no f part)
  for (Index n = -1; n < T; ++n) {
    const Index fn = n >= 0 ? gens_[n] : 0;  // width of the F block in the source
    const auto& o1 = groups_[n + 1]->orders();
    std::vector<Triplet> t;
    if (n >= 0)
      for (Index k = 0; k < c.d[n].outerSize(); ++k)
        for (SparseIntMatrix::InnerIterator it(c.d[n], k); it; ++it) t.emplace_back(int(it.row()), int(k), it.value());
    for (Index i = 0; i < gens_[n + 1]; ++i)
      if (tors_[n + 1][i] >= 0) t.emplace_back(int(i), int(fn + tors_[n + 1][i]), o1[i]);
    if (n + 2 <= T) {
      const auto& o2 = groups_[n + 2]->orders();
      const Index base = gens_[n + 1];
      if (n >= 0) {
        SparseIntMatrix dd = c.d[n + 1] * c.d[n];
        for (Index k = 0; k < dd.outerSize(); ++k)
          for (SparseIntMatrix::InnerIterator it(dd, k); it; ++it) {
            if (it.value() == 0) continue;
            const Integer& o = o2[it.row()];
            if (o == 0 || it.value() % o != 0)
              throw Error(ErrorKind::CompositionNotZero, "d o d is non-zero on generator " + std::to_string(k) +
                                                             " of degree " + std::to_string(n));
            t.emplace_back(int(base + tors_[n + 2][it.row()]), int(k), Integer(-(it.value() / o)));
          }
      }
      const auto& d1 = c.d[n + 1];
      for (Index j = 0; j < d1.outerSize(); ++j) {
        if (tors_[n + 1][j] < 0) continue;
        for (SparseIntMatrix::InnerIterator it(d1, j); it; ++it) {
          if (it.value() == 0) continue;
          const Integer& o = o2[it.row()];
          Integer v = it.value() * o1[j];
          if (o == 0 || v % o != 0)
            throw Error(ErrorKind::NotWellDefined, "differential " + std::to_string(n + 1) +
                                                       " does not respect the relations");
          t.emplace_back(int(base + tors_[n + 2][it.row()]), int(fn + tors_[n + 1][j]), Integer(-(v / o)));
        }
      }
    }
    cone_.d.push_back(sparse_from_triplets(cone_.dims[n + 2], cone_.dims[n + 1], t));
  }

  reduced_ = std::make_unique<ReducedComplex>(cone_, filtered, max_gap);
  homology_.resize(T + 1);
}

const FreeHomology& FpComplexHomology::at(Index n) const {
  if (n < 0 || n > top()) throw Error(ErrorKind::DimensionMismatch, "degree " + std::to_string(n) + " out of range");
  std::lock_guard<std::mutex> lock(mu_);
  if (!homology_[n]) homology_[n] = std::make_unique<FreeHomology>(*reduced_, n + 1);
  return *homology_[n];
}

IntVector FpComplexHomology::lift(Index n, const IntVector& cocycle) const {
  if (cocycle.size() != gens_[n])
    throw Error(ErrorKind::DimensionMismatch, "cochain has " + std::to_string(cocycle.size()) +
                                                  " coordinates, degree has " + std::to_string(gens_[n]));
  IntVector v = zero_vector(cone_.dims[n + 1]);
  v.head(gens_[n]) = cocycle;
  if (n == top()) return v;
  IntVector dz = apply(d_[n], cocycle);
  const auto& o = groups_[n + 1]->orders();
  for (Index i = 0; i < gens_[n + 1]; ++i) {
    if (dz[i] == 0) continue;
    if (o[i] == 0 || dz[i] % o[i] != 0) throw Error(ErrorKind::NotACocycle, "cochain is not a cocycle");
    v[gens_[n] + tors_[n + 1][i]] = -(dz[i] / o[i]);
  }
  return v;
}

IntVector FpComplexHomology::class_of(Index n, const IntVector& cocycle) const {
  return at(n).class_of(lift(n, cocycle));
}

std::vector<IntVector> FpComplexHomology::representatives(Index n) const {
  std::vector<IntVector> out;
  for (const IntVector& r : at(n).representatives())
    out.push_back(groups_[n]->reduce(r.head(gens_[n])));
  return out;
}

}  // namespace cohomolab
