#include "cohomolab/bicomplex/checks.hpp"

#include "cohomolab/error.hpp"

namespace cohomolab {

std::string format_vector(const IntVector& v) {
  std::string s = "[";
  bool first = true;
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    s += (first ? "" : " ") + std::to_string(i) + ":" + v[i].str();
    first = false;
  }
  return s + "]";
}

Check zero_check(const std::string& name, const GroupMap& f, const std::string& source_name) {
  Check c{name, true, {}};
  if (auto w = f.nonzero_witness()) {
    IntVector e = zero_vector(f.source().generator_count());
    e[*w] = 1;
    c.ok = false;
    c.witness = "generator " + std::to_string(*w) + " of " + source_name + " maps to " + format_vector(f.apply(e)) +
                " instead of 0";
  }
  return c;
}

namespace {

std::string at(Index p, Index q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

/// "a == b" as maps; witness is the first generator where they differ.
Check equal_check(const std::string& name, const GroupMap& a, const GroupMap& b, const std::string& source_name) {
  Check c = zero_check(name, combine(a, b, -1), source_name);
  if (!c.ok) c.witness += " (difference of the two sides)";
  return c;
}

void keep_failures(std::vector<Check>& out, const std::string& name, std::vector<Check> cs) {
  // collapse many passing checks into one line, keep every failure
  bool all = true;
  for (auto& c : cs)
    if (!c.ok) {
      all = false;
      out.push_back(std::move(c));
    }
  if (all) out.push_back({name, true, std::to_string(cs.size()) + " identities"});
}

}  // namespace

std::vector<Check> structural_checks(const DoubleComplex& dc) {
  const Index T = dc.top();
  std::vector<Check> dhh, dvv, anti, dd, aug;
  for (Index p = 0; p <= T; ++p)
    for (Index q = 0; p + q + 2 <= T; ++q) {
      const std::string src = dc.grid(p, q).name();
      dhh.push_back(zero_check("d_h d_h = 0 at " + at(p, q), dc.dh(p + 1, q).after(dc.dh(p, q)), src));
      dvv.push_back(zero_check("d_v d_v = 0 at " + at(p, q), dc.dv(p, q + 1).after(dc.dv(p, q)), src));
      anti.push_back(zero_check("d_h d_v + d_v d_h = 0 at " + at(p, q),
                                combine(dc.dh(p, q + 1).after(dc.dv(p, q)), dc.dv(p + 1, q).after(dc.dh(p, q))), src));
    }
  for (Index n = 0; n + 2 <= T; ++n)
    dd.push_back(zero_check("D D = 0 on Tot^" + std::to_string(n), dc.total_d(n + 1).after(dc.total_d(n)),
                            "Tot^" + std::to_string(n)));
  for (Index n = 0; n + 2 <= T; ++n) {
    aug.push_back(zero_check("d d = 0 on A_cr^" + std::to_string(n), dc.row_d(n + 1).after(dc.row_d(n)),
                             dc.row_source(n).name()));
    aug.push_back(zero_check("d d = 0 on A_c^" + std::to_string(n), dc.col_d(n + 1).after(dc.col_d(n)),
                             dc.col_source(n).name()));
  }
  std::vector<Check> out;
  keep_failures(out, "d_h d_h = 0", std::move(dhh));
  keep_failures(out, "d_v d_v = 0", std::move(dvv));
  keep_failures(out, "d_h d_v + d_v d_h = 0", std::move(anti));
  keep_failures(out, "D D = 0", std::move(dd));
  keep_failures(out, "d d = 0 on augmentation complexes", std::move(aug));
  return out;
}

std::vector<Check> augmentation_checks(const DoubleComplex& dc) {
  const Index T = dc.top();
  std::vector<Check> cs;
  for (Index n = 0; n < T; ++n) {
    const std::string k = std::to_string(n);
    cs.push_back(equal_check("D i = i d in degree " + k, dc.total_d(n).after(dc.total_i(n)),
                             dc.total_i(n + 1).after(dc.row_d(n)), dc.row_source(n).name()));
    cs.push_back(equal_check("D j = j d in degree " + k, dc.total_d(n).after(dc.total_j(n)),
                             dc.total_j(n + 1).after(dc.col_d(n)), dc.col_source(n).name()));
    cs.push_back(zero_check("d_h i = 0 in degree " + k, dc.dh(0, n).after(dc.row_aug(n)), dc.row_source(n).name()));
    cs.push_back(zero_check("d_v j = 0 in degree " + k, dc.dv(n, 0).after(dc.col_aug(n)), dc.col_source(n).name()));
  }
  std::vector<Check> out;
  keep_failures(out, "augmentations are chain maps", std::move(cs));
  return out;
}

std::vector<Check> row_exactness_checks(const DoubleComplex& dc) {
  const Index T = dc.top();
  std::vector<Check> ident;
  for (Index q = 0; q <= T; ++q) {
    const GroupMap s0 = dc.contraction(0, q);
    ident.push_back(equal_check("s i = id on A_cr^" + std::to_string(q), s0.after(dc.row_aug(q)),
                                GroupMap::identity(dc.row_source(q).group_ptr()), dc.row_source(q).name()));
    for (Index p = 0; p + q < T; ++p) {
      const GroupMap up = dc.contraction(p + 1, q).after(dc.dh(p, q));
      const GroupMap down = p == 0 ? dc.row_aug(q).after(s0) : dc.dh(p - 1, q).after(dc.contraction(p, q));
      ident.push_back(equal_check("d_h s + s d_h = id at " + at(p, q), combine(up, down),
                                  GroupMap::identity(dc.grid(p, q).group_ptr()), dc.grid(p, q).name()));
    }
  }
  std::vector<Check> hom;
  for (Index q = 0; q < T; ++q) {
    // augmented row q: A_cr^q -> grid(0,q) -> ... -> grid(T-q,q)
    FpComplex row;
    row.groups.push_back(dc.row_source(q).group_ptr());
    row.d.push_back(dc.row_aug(q).matrix());
    for (Index p = 0; p + q <= T; ++p) {
      row.groups.push_back(dc.grid(p, q).group_ptr());
      if (p + q < T) row.d.push_back(dc.dh(p, q).matrix());
    }
    Check c{"augmented row " + std::to_string(q) + " is acyclic", true, {}};
    try {
      FpComplexHomology h(row);
      for (Index k = 0; k < h.top(); ++k)
        if (!h.homology(k).trivial()) {
          c.ok = false;
          const std::string where = k == 0 ? dc.row_source(q).name() : dc.grid(k - 1, q).name();
          c.witness = "cohomology " + h.homology(k).str() + " at " + where + ", class representative " +
                      format_vector(h.representatives(k).front());
          break;
        }
    } catch (const Error& e) {
      c.ok = false;
      c.witness = e.what();
    }
    hom.push_back(std::move(c));
  }
  std::vector<Check> out;
  keep_failures(out, "row contraction identities", std::move(ident));
  keep_failures(out, "augmented rows acyclic", std::move(hom));
  return out;
}

GroupMap induced_on_homology(const FpComplexHomology& a, const FpComplexHomology& b, Index n, const GroupMap& f) {
  auto src = std::make_shared<const FpAbGroup>(a.group(n));
  auto tgt = std::make_shared<const FpAbGroup>(b.group(n));
  const auto reps = a.representatives(n);
  std::vector<Triplet> trip;
  for (std::size_t j = 0; j < reps.size(); ++j) {
    IntVector c = b.class_of(n, f.apply(reps[j]));
    for (Index i = 0; i < c.size(); ++i)
      if (c[i] != 0) trip.emplace_back(int(i), int(j), c[i]);
  }
  return GroupMap(src, tgt, sparse_from_triplets(tgt->generator_count(), src->generator_count(), trip));
}

bool IsoReport::ok() const {
  for (const auto& d : degrees)
    if (!d.injective || !d.surjective) return false;
  return !degrees.empty();
}

IsoReport induced_isomorphism(const FpComplexHomology& a, const FpComplexHomology& b, Index upto,
                              const std::function<GroupMap(Index)>& f) {
  IsoReport r;
  for (Index n = 0; n <= upto; ++n) {
    IsoReport::Degree d{n, a.homology(n), b.homology(n), false, false, {}};
    const GroupMap phi = induced_on_homology(a, b, n, f(n));
    const auto ker = kernel_element(phi);
    d.injective = !ker;
    if (ker) d.witness = "class " + format_vector(*ker) + " of the source maps to 0";
    // every target generator must have a preimage
    d.surjective = true;
    for (Index i = 0; i < phi.target().generator_count() && d.surjective; ++i) {
      IntVector e = zero_vector(phi.target().generator_count());
      e[i] = 1;
      if (!solve_in_group(phi, e)) {
        d.surjective = false;
        d.witness += std::string(d.witness.empty() ? "" : "; ") + "target class generator " + std::to_string(i) +
                     " has no preimage";
      }
    }
    r.degrees.push_back(std::move(d));
  }
  return r;
}

IsoReport row_augmentation_iso(const DoubleComplex& dc) {
  FpComplexHomology a(dc.row_source_complex());
  FpComplexHomology t(dc.total());
  return induced_isomorphism(a, t, dc.bound(), [&](Index n) { return dc.total_i(n); });
}

}  // namespace cohomolab
