#include "cohomolab/bicomplex/column.hpp"

#include "cohomolab/error.hpp"

namespace cohomolab {

bool ColumnReport::checks_ok() const {
  for (const auto* list : {&contraction, &kernels, &sequences})
    for (const Check& c : *list)
      if (!c.ok) return false;
  return inclusion.ok();
}

namespace {

std::vector<char> first_block(Index arity, Index p) {
  std::vector<char> m(arity, 0);
  for (Index i = 0; i <= p; ++i) m[i] = 1;
  return m;
}

std::vector<char> complement(const std::vector<char>& v) {
  std::vector<char> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = !v[i];
  return c;
}

/// d_v evaluated only on `member` tuples of the target (zero elsewhere).
GroupMap restricted_vertical(const CochainGroup& src, const CochainGroup& tgt, Index p,
                             const std::vector<char>& member) {
  const Index k = tgt.arity();
  const Index e = tgt.module().group().identity();
  const TupleCodec& sc = src.codec();
  const TupleCodec& tc = tgt.codec();
  const int base = p % 2 ? -1 : 1;
  std::vector<Index> face(k);
  return tuple_operator(
      src, tgt,
      [&](const Index* t, std::vector<Term>& out) {
        if (!member[tc.encode(t)]) return;
        for (Index i = 0; p + 1 + i < k; ++i) {
          delete_coord(t, k, p + 1 + i, face.data());
          out.push_back({i % 2 ? -base : base, sc.encode(face.data()), e});
        }
      },
      ErrorKind::NotClosedUnderDifferential, "relative d_v at p=" + std::to_string(p));
}

GroupMap restriction(const CochainGroup& src, const CochainGroup& tgt, const std::vector<char>& member) {
  const Index e = tgt.module().group().identity();
  const TupleCodec& c = src.codec();
  return tuple_operator(
      src, tgt,
      [&](const Index* t, std::vector<Term>& out) {
        const Index code = c.encode(t);
        if (member[code]) out.push_back({1, code, e});
      },
      ErrorKind::NotContinuous, "restriction");
}

Check trivial_homology(const std::string& name, const GroupMap& d_out, const GroupMap& d_in) {
  Check c{name, true, {}};
  auto reps = [&]() -> std::optional<IntVector> {
    FpComplex cx;
    cx.groups = {d_in.source_ptr(), d_out.source_ptr(), d_out.target_ptr()};
    cx.d = {d_in.matrix(), d_out.matrix()};
    FpComplexHomology h(cx);
    if (h.homology(1).trivial()) return std::nullopt;
    return h.representatives(1).front();
  }();
  if (reps) {
    c.ok = false;
    c.witness = "element " + format_vector(*reps) + " of " + name;
  }
  return c;
}

Check equal_maps(const std::string& name, const GroupMap& a, const GroupMap& b, const std::string& src) {
  Check c = zero_check(name, combine(a, b, -1), src);
  return c;
}

}  // namespace

ColumnReport column_analysis(const SpacePtr& X, const ModulePtr& M, const Covering& cover, Index p, Index qmax,
                             std::optional<Index> basepoint) {
  if (p < 0 || qmax < 0) throw Error(ErrorKind::BoundTooSmall, "column index and bound must be non-negative");
  cover.validate(*X);
  ColumnReport r;
  r.p = p;
  r.qmax = qmax;
  r.basepoint = basepoint.value_or(0);
  if (r.basepoint < 0 || r.basepoint >= X->size())
    throw Error(ErrorKind::BasepointInvalid, "basepoint " + std::to_string(r.basepoint) + " is not a point of X");
  const Index star = r.basepoint;
  const Index Q = qmax + 1;

  std::vector<CochainGroupPtr> full, cr, K, Kcr, crel, rel;
  std::vector<std::vector<char>> member;
  for (Index q = 0; q <= Q; ++q) {
    const Index a = p + q + 2;
    const SubspaceOfPower all = SubspaceOfPower::full(*X, a);
    const SubspaceOfPower R = product_with_full(*X, p + 1, diagonal_neighborhood(*X, cover, q));
    const auto mask = first_block(a, p);
    const std::string at = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    member.push_back(R.member);
    full.push_back(CochainGroup::build(X, M, a, Region::of(all, mask), false, "A" + at));
    cr.push_back(CochainGroup::build(X, M, a, Region::of(R).also(all, mask), false, "A_cr" + at));
    K.push_back(
        CochainGroup::build(X, M, a, Region::of(all, mask).vanishing_on(R.member), false, "K" + at));
    Kcr.push_back(CochainGroup::build(X, M, a, Region::of(R).also(all, mask).vanishing_on(R.member), false,
                                      "K_cr" + at));
    crel.push_back(
        CochainGroup::build(X, M, a, Region::of(R).vanishing_on(complement(R.member)), false, "A_c(X,U)" + at));
    rel.push_back(
        CochainGroup::build(X, M, a, Region::of(R, mask).vanishing_on(complement(R.member)), false, "A(X,U)" + at));
  }
  auto aug = CochainGroup::build(X, M, p + 1, Region::full(), false, "A_c^" + std::to_string(p));

  // (a) point contraction of the full column
  {
    const Index e = M->group().identity();
    std::vector<GroupMap> d, k;
    for (Index q = 0; q < Q; ++q) d.push_back(vertical_differential(*full[q], *full[q + 1], p));
    const TupleCodec& ac = aug->codec();
    const GroupMap eps = tuple_operator(
        *aug, *full[0], [&](const Index* t, std::vector<Term>& out) { out.push_back({1, ac.encode(t), e}); },
        ErrorKind::NotContinuous, "column augmentation");
    for (Index q = 0; q <= Q; ++q) {
      const CochainGroup& src = *full[q];
      const CochainGroup& tgt = q == 0 ? *aug : *full[q - 1];
      const int sign = (q > 0 && p % 2) ? -1 : 1;
      const Index ka = tgt.arity();
      std::vector<Index> s(ka + 1);
      const TupleCodec& sc = src.codec();
      k.push_back(tuple_operator(
          src, tgt,
          [&](const Index* t, std::vector<Term>& out) {
            for (Index i = 0; i <= p; ++i) s[i] = t[i];
            s[p + 1] = star;
            for (Index i = p + 1; i < ka; ++i) s[i + 1] = t[i];
            out.push_back({sign, sc.encode(s.data()), e});
          },
          ErrorKind::NotContinuous, "point contraction"));
    }
    r.contraction.push_back(
        equal_maps("k e = id", k[0].after(eps), GroupMap::identity(aug->group_ptr()), aug->name()));
    r.contraction.push_back(equal_maps("e k + k d = id at q=0", combine(eps.after(k[0]), k[1].after(d[0])),
                                       GroupMap::identity(full[0]->group_ptr()), full[0]->name()));
    for (Index q = 1; q <= qmax; ++q)
      r.contraction.push_back(equal_maps("d k + k d = id at q=" + std::to_string(q),
                                         combine(d[q - 1].after(k[q]), k[q + 1].after(d[q])),
                                         GroupMap::identity(full[q]->group_ptr()), full[q]->name()));
    FpComplex col;
    col.groups.push_back(aug->group_ptr());
    col.d.push_back(eps.matrix());
    for (Index q = 0; q <= Q; ++q) {
      col.groups.push_back(full[q]->group_ptr());
      if (q < Q) col.d.push_back(d[q].matrix());
    }
    FpComplexHomology h(col);
    Check c{"augmented column acyclic", true, {}};
    for (Index i = 0; i <= qmax + 1; ++i)
      if (!h.homology(i).trivial()) {
        c.ok = false;
        c.witness = "cohomology " + h.homology(i).str() + " at position " + std::to_string(i) + ", representative " +
                    format_vector(h.representatives(i).front());
        break;
      }
    r.contraction.push_back(std::move(c));
  }

  auto none = std::make_shared<const FpAbGroup>(FpAbGroup::free(0));
  for (Index q = 0; q <= qmax; ++q) {
    const std::string at = " at q=" + std::to_string(q);
    // (b)
    Check kc{"kernels coincide" + at, K[q]->contains(*Kcr[q]) && Kcr[q]->contains(*K[q]), {}};
    if (!kc.ok)
      kc.witness = "K has " + std::to_string(K[q]->generator_count()) + " generators, K_cr has " +
                   std::to_string(Kcr[q]->generator_count());
    r.kernels.push_back(std::move(kc));
    // (c)
    struct Row {
      std::string name;
      const CochainGroup& k;
      const CochainGroup& mid;
      const CochainGroup& quo;
    };
    for (const Row& row : {Row{"A_cr row", *Kcr[q], *cr[q], *crel[q]}, Row{"A row", *K[q], *full[q], *rel[q]}}) {
      const GroupMap inc = inclusion_map(row.k, row.mid);
      const GroupMap res = restriction(row.mid, row.quo, member[q]);
      r.sequences.push_back(
          trivial_homology(row.name + ": kernel of K -> middle" + at, inc, GroupMap::zero(none, row.k.group_ptr())));
      r.sequences.push_back(trivial_homology(row.name + ": ker res / im K" + at, res, inc));
      r.sequences.push_back(
          trivial_homology(row.name + ": cokernel of res" + at, GroupMap::zero(row.quo.group_ptr(), none), res));
    }
  }

  // (d)
  FpComplex cc, rc;
  std::vector<GroupMap> dcont, drel;
  for (Index q = 0; q <= Q; ++q) {
    cc.groups.push_back(crel[q]->group_ptr());
    rc.groups.push_back(rel[q]->group_ptr());
    if (q < Q) {
      cc.d.push_back(restricted_vertical(*crel[q], *crel[q + 1], p, member[q + 1]).matrix());
      rc.d.push_back(restricted_vertical(*rel[q], *rel[q + 1], p, member[q + 1]).matrix());
    }
  }
  FpComplexHomology hc(cc), hr(rc);
  for (Index q = 0; q <= qmax; ++q) {
    r.continuous.push_back(hc.homology(q));
    r.relative.push_back(hr.homology(q));
  }
  r.inclusion = induced_isomorphism(hc, hr, qmax, [&](Index q) { return inclusion_map(*crel[q], *rel[q]); });
  return r;
}

}  // namespace cohomolab
