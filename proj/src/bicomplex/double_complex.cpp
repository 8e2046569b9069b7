#include "cohomolab/bicomplex/double_complex.hpp"

#include "cohomolab/error.hpp"

namespace cohomolab {

GroupMap horizontal_differential(const CochainGroup& src, const CochainGroup& tgt, Index p, bool) {
  const Index k = tgt.arity();
  if (k != src.arity() + 1) throw Error(ErrorKind::DimensionMismatch, "d_h between wrong arities");
  const Index e = tgt.module().group().identity();
  const TupleCodec& sc = src.codec();
  std::vector<Index> face(k);
  return tuple_operator(
      src, tgt,
      [&](const Index* t, std::vector<Term>& out) {
        for (Index i = 0; i <= p + 1; ++i) {
          delete_coord(t, k, i, face.data());
          out.push_back({i % 2 ? -1 : 1, sc.encode(face.data()), e});
        }
      },
      ErrorKind::NotClosedUnderDifferential, "d_h at p=" + std::to_string(p));
}

GroupMap vertical_differential(const CochainGroup& src, const CochainGroup& tgt, Index p, bool corrupt_sign) {
  const Index k = tgt.arity();
  if (k != src.arity() + 1) throw Error(ErrorKind::DimensionMismatch, "d_v between wrong arities");
  const Index e = tgt.module().group().identity();
  const TupleCodec& sc = src.codec();
  const int base = (!corrupt_sign && p % 2) ? -1 : 1;
  std::vector<Index> face(k);
  return tuple_operator(
      src, tgt,
      [&](const Index* t, std::vector<Term>& out) {
        for (Index i = 0; p + 1 + i < k; ++i) {
          delete_coord(t, k, p + 1 + i, face.data());
          out.push_back({i % 2 ? -base : base, sc.encode(face.data()), e});
        }
      },
      ErrorKind::NotClosedUnderDifferential, "d_v at p=" + std::to_string(p));
}

GroupMap place_block(const GroupMap& f, std::shared_ptr<const FpAbGroup> source, Index so,
                     std::shared_ptr<const FpAbGroup> target, Index to) {
  std::vector<Triplet> trip;
  const SparseIntMatrix& m = f.matrix();
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseIntMatrix::InnerIterator it(m, j); it; ++it)
      trip.emplace_back(int(to + it.row()), int(so + j), it.value());
  const Index rows = target->generator_count(), cols = source->generator_count();
  return GroupMap(std::move(source), std::move(target), sparse_from_triplets(rows, cols, trip));
}

namespace {

std::string bidegree(Index p, Index q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

/// Adds 1 to some entry of d whose source generator is free or whose order
/// the target order divides, so the perturbed map is still well defined.
/// Source generators are tried in the given order.
SparseIntMatrix perturb(const GroupMap& d, const std::vector<Index>& columns, std::string& note) {
  const auto& so = d.source().orders();
  const auto& to = d.target().orders();
  IntMatrix m = to_dense(d.matrix());
  for (Index j : columns)
    for (Index i = 0; i < m.rows(); ++i) {
      if (to[i] == 1) continue;
      const bool ok = so[j] == 0 ? true : (to[i] != 0 && so[j] % to[i] == 0);
      if (!ok) continue;
      if (m(i, j) == 0 && i + 1 < m.rows()) continue;  // prefer an existing entry
      m(i, j) += 1;
      note = "d_v(0,0) entry (" + std::to_string(i) + "," + std::to_string(j) + ") shifted by 1";
      return to_sparse(m);
    }
  note = "no perturbable entry in d_v(0,0)";
  return d.matrix();
}

}  // namespace

DoubleComplex::DoubleComplex(SpacePtr X, ModulePtr M, Covering cover, Options options)
    : X_(std::move(X)), M_(std::move(M)), cover_(std::move(cover)), opt_(options) {
  if (opt_.bound < 0) throw Error(ErrorKind::BoundTooSmall, "bound must be non-negative");
  cover_.validate(*X_);
  const GroupAction& G = M_->group();
  if (opt_.equivariant && !G.stabilizes(cover_))
    throw Error(ErrorKind::NotGInvariantCovering, "covering '" + cover_.name + "' is not G-invariant");
  const Index T = top();
  const bool eq = opt_.equivariant;
  const bool bad_sign = opt_.corruption.sign;
  const std::string tag = eq ? "^G" : "";

  for (Index q = 0; q <= T; ++q) U_.push_back(diagonal_neighborhood(*X_, cover_, q));

  grid_.assign(T + 1, {});
  for (Index p = 0; p <= T; ++p)
    for (Index q = 0; p + q <= T; ++q)
      grid_[p].push_back(CochainGroup::build(X_, M_, p + q + 2, Region::of(product_with_full(*X_, p + 1, U_[q])), eq,
                                             "A_cr" + tag + bidegree(p, q)));
  for (Index n = 0; n <= T; ++n) {
    row_src_.push_back(CochainGroup::build(X_, M_, n + 1, Region::of(U_[n]), eq, "A_cr" + tag + "^" + std::to_string(n)));
    col_src_.push_back(CochainGroup::build(X_, M_, n + 1, Region::full(), eq, "A_c" + tag + "^" + std::to_string(n)));
  }

  dh_.assign(T + 1, {});
  dv_.assign(T + 1, {});
  for (Index p = 0; p <= T; ++p)
    for (Index q = 0; p + q < T; ++q) {
      dh_[p].push_back(horizontal_differential(grid(p, q), grid(p + 1, q), p));
      dv_[p].push_back(vertical_differential(grid(p, q), grid(p, q + 1), p, bad_sign));
    }
  if (opt_.corruption.differential && T >= 1) {
    // off-diagonal tuples (x0, x0') first: cocycles of degree 1 vanish on
    // the diagonal, so an entry there would go unnoticed by psi
    const CochainGroup& g = grid(0, 0);
    std::vector<Index> off, diag;
    for (const auto& cl : g.classes()) {
      auto& to = g.codec().coord(cl.rep, 0) != g.codec().coord(cl.rep, 1) ? off : diag;
      for (Index k = 0; k < cl.fixed->size(); ++k) to.push_back(cl.offset + k);
    }
    off.insert(off.end(), diag.begin(), diag.end());
    const GroupMap& d = dv_[0][0];
    dv_[0][0] = GroupMap(d.source_ptr(), d.target_ptr(), perturb(d, off, corruption_note_));
  }

  const Index e = G.identity();
  for (Index n = 0; n <= T; ++n) {
    if (n < T) {
      row_d_.push_back(simplicial_differential(row_source(n), row_source(n + 1)));
      col_d_.push_back(simplicial_differential(col_source(n), col_source(n + 1)));
    }
    // i drops x0, j drops x0'
    const TupleCodec& rc = row_source(n).codec();
    row_aug_.push_back(tuple_operator(
        row_source(n), grid(0, n),
        [&](const Index* t, std::vector<Term>& out) { out.push_back({1, rc.encode(t + 1), e}); },
        ErrorKind::SourceMembership, "augmentation i in degree " + std::to_string(n)));
    const TupleCodec& cc = col_source(n).codec();
    col_aug_.push_back(tuple_operator(
        col_source(n), grid(n, 0),
        [&](const Index* t, std::vector<Term>& out) { out.push_back({1, cc.encode(t), e}); },
        ErrorKind::SourceMembership, "augmentation j in degree " + std::to_string(n)));
  }

  // total complex
  tot_off_.assign(T + 1, {});
  for (Index n = 0; n <= T; ++n) {
    std::vector<Integer> orders;
    std::vector<int> labels;
    for (Index p = 0; p <= n; ++p) {
      tot_off_[n].push_back(Index(orders.size()));
      const auto& o = grid(p, n - p).group().orders();
      orders.insert(orders.end(), o.begin(), o.end());
      labels.insert(labels.end(), o.size(), int(p));
    }
    tot_off_[n].push_back(Index(orders.size()));
    tot_.groups.push_back(std::make_shared<const FpAbGroup>(FpAbGroup::diagonal(std::move(orders))));
    tot_.labels.push_back(std::move(labels));
  }
  for (Index n = 0; n < T; ++n) {
    std::vector<Triplet> trip;
    auto add = [&](const GroupMap& f, Index so, Index to) {
      const SparseIntMatrix& m = f.matrix();
      for (Index j = 0; j < m.outerSize(); ++j)
        for (SparseIntMatrix::InnerIterator it(m, j); it; ++it)
          trip.emplace_back(int(to + it.row()), int(so + j), it.value());
    };
    for (Index p = 0; p <= n; ++p) {
      add(dh(p, n - p), tot_off_[n][p], tot_off_[n + 1][p + 1]);
      add(dv(p, n - p), tot_off_[n][p], tot_off_[n + 1][p]);
    }
    tot_.d.push_back(sparse_from_triplets(tot_.groups[n + 1]->generator_count(), tot_.groups[n]->generator_count(), trip));
  }
}

GroupMap DoubleComplex::contraction(Index p, Index q) const {
  if (!has(p, q)) throw Error(ErrorKind::DimensionMismatch, "contraction outside the grid");
  const CochainGroup& src = grid(p, q);
  const CochainGroup& tgt = p == 0 ? row_source(q) : grid(p - 1, q);
  const Index k = tgt.arity();
  const int sign = (!opt_.corruption.sign && p % 2) ? -1 : 1;
  const Index e = M_->group().identity();
  const TupleCodec& sc = src.codec();
  std::vector<Index> s(k + 1);
  return tuple_operator(
      src, tgt,
      [&, p](const Index* t, std::vector<Term>& out) {
        for (Index i = 0; i < p; ++i) s[i] = t[i];
        s[p] = t[p];
        for (Index i = p; i < k; ++i) s[i + 1] = t[i];
        out.push_back({sign, sc.encode(s.data()), e});
      },
      ErrorKind::NotContinuous, "row contraction at " + bidegree(p, q));
}

GroupMap DoubleComplex::total_d(Index n) const { return GroupMap(tot_.groups[n], tot_.groups[n + 1], tot_.d[n]); }

IntVector DoubleComplex::to_total(Index n, Index p, const IntVector& x) const {
  IntVector v = zero_vector(tot_.groups[n]->generator_count());
  v.segment(tot_off_[n][p], x.size()) = x;
  return v;
}

IntVector DoubleComplex::component(Index n, Index p, const IntVector& x) const {
  return x.segment(tot_off_[n][p], tot_off_[n][p + 1] - tot_off_[n][p]);
}

GroupMap DoubleComplex::total_i(Index n) const {
  return place_block(row_aug(n), row_source(n).group_ptr(), 0, tot_.groups[n], tot_off_[n][0]);
}

GroupMap DoubleComplex::total_j(Index n) const {
  return place_block(col_aug(n), col_source(n).group_ptr(), 0, tot_.groups[n], tot_off_[n][n]);
}

FpComplex DoubleComplex::row_source_complex() const {
  FpComplex c;
  for (Index n = 0; n <= top(); ++n) c.groups.push_back(row_source(n).group_ptr());
  for (Index n = 0; n < top(); ++n) c.d.push_back(row_d(n).matrix());
  return c;
}

FpComplex DoubleComplex::col_source_complex() const {
  FpComplex c;
  for (Index n = 0; n <= top(); ++n) c.groups.push_back(col_source(n).group_ptr());
  for (Index n = 0; n < top(); ++n) c.d.push_back(col_d(n).matrix());
  return c;
}

}  // namespace cohomolab
