#include "cohomolab/spectral/spectral.hpp"

#include <map>

#include "cohomolab/error.hpp"
#include "cohomolab/spectral/scalars.hpp"

namespace cohomolab {

bool SpectralPage::has_nonzero_differential() const {
  for (Index p = 0; p < Index(d.size()); ++p)
    for (Index q = 0; q < Index(d[p].size()); ++q)
      if (trusted(p, q) && !d[p][q].is_zero()) return true;
  return false;
}

bool SpectralSequence::checks_ok() const {
  for (const Check& c : checks)
    if (!c.ok) return false;
  return true;
}

bool ConvergenceReport::match() const {
  for (const auto& d : degrees)
    if (!d.match) return false;
  return !degrees.empty();
}

namespace {

constexpr int kAllGaps = 1 << 20;

using GroupPtr = std::shared_ptr<const FpAbGroup>;

std::string at(Index p, Index q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

bool is_prime(const Integer& p) {
  if (p < 2) return false;
  for (Integer d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GroupPtr zero_group() {
  static const GroupPtr z = std::make_shared<const FpAbGroup>(FpAbGroup::free(0));
  return z;
}

void collapse(std::vector<Check>& out, const std::string& name, std::vector<Check> cs) {
  bool all = true;
  for (auto& c : cs)
    if (!c.ok) {
      all = false;
      out.push_back(std::move(c));
    }
  if (all) out.push_back({name, true, std::to_string(cs.size()) + " positions"});
}

// Filtered free model of Tot: the reduction it was read from and how its
// degrees sit relative to Tot.
struct Model {
  Scalars k;
  Index shift = 0;
  std::unique_ptr<ReducedComplex> own;
  std::unique_ptr<FpComplexHomology> cone;
  const ReducedComplex* rc = nullptr;
  std::string engine;

  Index top() const { return rc->top(); }
  Index size(Index k) const { return Index(rc->kept(k).size()); }
  int label(Index k, Index i) const { return rc->residual_labels(k)[i]; }
};

Model build_model(const DoubleComplex& dc) {
  const FpComplex& tot = dc.total();
  bool all_free = true, uniform = true;
  Integer p = -1;
  for (const auto& g : tot.groups)
    for (const Integer& o : g->orders()) {
      if (o != 0) all_free = false;
      if (p < 0)
        p = o;
      else if (o != p)
        uniform = false;
    }
  Model m;
  if (all_free || (uniform && is_prime(p))) {
    FreeComplex fc;
    for (const auto& g : tot.groups) fc.dims.push_back(g->generator_count());
    fc.d = tot.d;
    fc.labels = tot.labels;
    const Integer mod = all_free ? Integer(0) : p;
    m.own = std::make_unique<ReducedComplex>(fc, true, kAllGaps, mod);
    m.rc = m.own.get();
    m.k = Scalars(mod);
    m.engine = all_free ? "Z" : "F_" + p.str();
  } else {
    m.cone = std::make_unique<FpComplexHomology>(tot, true, kAllGaps);
    m.rc = &m.cone->reduced();
    m.shift = 1;
    m.engine = "relation cone";
  }
  return m;
}

// Zigzag lattices on the residual of the model, cached by (degree, lo, hi).
class Zigzag {
 public:
  explicit Zigzag(const Model& m) : m_(m) {}

  /// Coordinates of model degree k with label l. At the top degree only the
  /// rows reached by the residual differential count, the rest never carry
  /// an image of d_r.
  const std::vector<Index>& rows(Index k, int l) {
    auto key = std::make_pair(k, l);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    std::vector<char> hit;
    if (k == m_.top() && k >= 1) {
      const IntMatrix& D = m_.rc->residual_d(k - 1);
      hit.assign(m_.size(k), 0);
      for (Index i = 0; i < D.rows(); ++i)
        for (Index j = 0; j < D.cols() && !hit[i]; ++j) hit[i] = D(i, j) != 0;
    }
    std::vector<Index> out;
    for (Index i = 0; i < m_.size(k); ++i)
      if (m_.label(k, i) == l && (hit.empty() || hit[i])) out.push_back(i);
    return rows_.emplace(key, std::move(out)).first->second;
  }
  IntMatrix project(Index k, int l, const IntMatrix& X) {
    const auto& r = rows(k, l);
    IntMatrix out(Index(r.size()), X.cols());
    for (std::size_t i = 0; i < r.size(); ++i) out.row(Index(i)) = X.row(r[i]);
    return out;
  }
  Index count(Index k, int l) { return Index(rows(k, l).size()); }

  /// {x in F^lo : D x in F^hi} in degree k < top, as columns.
  const IntMatrix& Z(Index k, int lo, int hi) {
    auto key = std::make_tuple(k, lo, hi);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Index> cols, rows;
    for (Index i = 0; i < m_.size(k); ++i)
      if (m_.label(k, i) >= lo) cols.push_back(i);
    for (Index i = 0; i < m_.size(k + 1); ++i)
      if (m_.label(k + 1, i) < hi) rows.push_back(i);
    const IntMatrix& D = m_.rc->residual_d(k);
    IntMatrix M(Index(rows.size()), Index(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) M(Index(i), Index(j)) = D(rows[i], cols[j]);
    const IntMatrix K = cols.empty() ? IntMatrix(0, 0) : m_.k.kernel(M);
    IntMatrix out = zero_matrix(m_.size(k), K.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) out.row(cols[j]) = K.row(Index(j));
    return cache_.emplace(key, std::move(out)).first->second;
  }

  IntMatrix apply_d(Index k, const IntMatrix& X) const {
    if (X.cols() == 0) return IntMatrix(m_.size(k + 1), 0);
    return m_.k.reduce(IntMatrix(m_.rc->residual_d(k) * X));
  }

 private:
  const Model& m_;
  std::map<std::tuple<Index, int, int>, IntMatrix> cache_;
  std::map<std::pair<Index, int>, std::vector<Index>> rows_;
};

// One position of a page from E_1 on: the residual subquotient followed by
// the generators left by cancelled pairs.
struct Slot {
  Subquotient res;
  std::vector<std::size_t> pairs;  // cancellations alive on this page, either end
  std::vector<char> is_source;     // parallel to pairs: this end is a
  std::vector<std::size_t> splits;  // Z/kappa left after the pair died
  GroupPtr group;
};

}  // namespace

std::vector<Check> transposed_checks(const DoubleComplex& dc, Index upto) {
  std::vector<Check> out, rows;
  const Index T = dc.top();
  std::vector<Invariants> acr;
  for (Index q = 0; q <= upto; ++q) {
    FpComplex row;
    for (Index p = 0; p + q <= T; ++p) {
      row.groups.push_back(dc.grid(p, q).group_ptr());
      if (p + q < T) row.d.push_back(dc.dh(p, q).matrix());
    }
    FpComplexHomology h(row);
    Check c{"transposed E_1 in row " + std::to_string(q), true, {}};
    if (!(h.homology(0) == dc.row_source(q).group().invariants())) {
      c.ok = false;
      c.witness = "E_1" + at(0, q) + " = " + h.homology(0).str() + " but A_cr^" + std::to_string(q) + " = " +
                  dc.row_source(q).group().invariants().str();
    }
    for (Index p = 1; p + q <= upto && c.ok; ++p)
      if (!h.homology(p).trivial()) {
        c.ok = false;
        c.witness = "E_1" + at(p, q) + " = " + h.homology(p).str() + " off the augmentation column";
      }
    rows.push_back(std::move(c));
  }
  collapse(out, "transposed E_1 concentrated in column 0", std::move(rows));
  FpComplexHomology hr(dc.row_source_complex());
  FpComplexHomology ht(dc.total());
  Check e2{"transposed E_2 = H(A_cr) = H(Tot)", true, {}};
  for (Index n = 0; n <= upto && e2.ok; ++n)
    if (!(hr.homology(n) == ht.homology(n))) {
      e2.ok = false;
      e2.witness = "degree " + std::to_string(n) + ": H(A_cr) = " + hr.homology(n).str() +
                   ", H(Tot) = " + ht.homology(n).str();
    }
  out.push_back(std::move(e2));
  return out;
}

SpectralSequence compute_pages(const DoubleComplex& dc, Index r_max, std::optional<Index> upto_opt) {
  const Index N = upto_opt.value_or(dc.bound());
  if (N > dc.bound())
    throw Error(ErrorKind::BoundTooSmall, "pages up to total degree " + std::to_string(N) +
                                              " need the double complex built beyond N = " +
                                              std::to_string(dc.bound()));
  if (N < 0 || r_max < 1) throw Error(ErrorKind::BoundTooSmall, "need r_max >= 1 and a non-negative degree");
  const Index R = std::min(r_max, N + 2);

  SpectralSequence ss;
  // E_0
  {
    SpectralPage E;
    E.r = 0;
    E.bound = N;
    E.entries.resize(N + 2);
    E.d.resize(N + 2);
    for (Index p = 0; p <= N + 1; ++p)
      for (Index q = 0; p + q <= N + 1; ++q) {
        E.entries[p].push_back(dc.grid(p, q).group_ptr());
        if (p + q <= N) E.d[p].push_back(dc.dv(p, q));
      }
    ss.pages.push_back(std::move(E));
  }

  Model m = build_model(dc);
  ss.engine = m.engine;
  for (Index k = 0; k <= m.top(); ++k)
    if (k - m.shift <= N) ss.residual_size += m.size(k);
  Zigzag z(m);
  const auto cancels = m.rc->cancellations();
  const Integer pair_order = m.k.field() ? m.k.modulus() : Integer(0);
  std::vector<Check> off_quadrant;

  for (Index r = 1; r <= R; ++r) {
    // slots for every label in total degrees -shift .. N+1
    std::map<std::pair<Index, Index>, Slot> slots;  // keyed by (n, p)
    for (Index n = -m.shift; n <= N + 1; ++n) {
      const Index k = n + m.shift;
      if (k < 0 || k > m.top()) continue;
      int maxl = -1;
      for (Index i = 0; i < m.size(k); ++i) maxl = std::max(maxl, m.label(k, i));
      for (Index p = 0; p <= std::max<Index>(maxl, n); ++p) {
        if (n - p < -1) continue;
        Slot s;
        const Index cnt = z.count(k, int(p));
        IntMatrix L = k == m.top() ? identity_matrix(cnt) : z.project(k, int(p), z.Z(k, int(p), int(p + r)));
        IntMatrix M(cnt, 0);
        if (k >= 1) M = z.project(k, int(p), z.apply_d(k - 1, z.Z(k - 1, int(p - r + 1), int(p))));
        s.res = Subquotient(m.k, L, M);
        slots.emplace(std::make_pair(n, p), std::move(s));
      }
    }
    for (std::size_t c = 0; c < cancels.size(); ++c) {
      const auto& x = cancels[c];
      const Index nb = x.degree - m.shift, na = nb - 1;
      const int gap = x.target_label - x.source_label;
      auto slot = [&](Index n, Index p) -> Slot& { return slots[{n, p}]; };
      if (r <= gap) {
        if (na >= -m.shift && na <= N + 1) {
          Slot& s = slot(na, x.source_label);
          s.pairs.push_back(c);
          s.is_source.push_back(1);
        }
        if (nb <= N + 1) {
          Slot& s = slot(nb, x.target_label);
          s.pairs.push_back(c);
          s.is_source.push_back(0);
        }
      } else if (x.split && nb <= N + 1) {
        slot(nb, x.target_label).splits.push_back(c);
      }
    }
    for (auto& [key, s] : slots) {
      std::vector<Integer> orders = s.res.orders();
      for (std::size_t i = 0; i < s.pairs.size(); ++i) orders.push_back(pair_order);
      for (std::size_t c : s.splits) orders.push_back(cancels[c].kappa);
      s.group = std::make_shared<const FpAbGroup>(FpAbGroup::diagonal(std::move(orders)));
      const auto [n, p] = key;
      if ((n < 0 || n - p < 0) && r == 1 && !s.group->invariants().trivial())
        off_quadrant.push_back({"E_1 vanishes outside the first quadrant", false,
                                "E_1" + at(p, n - p) + " = " + s.group->invariants().str()});
    }

    SpectralPage E;
    E.r = r;
    E.bound = N;
    E.entries.resize(N + 2);
    E.d.resize(N + 2);
    auto get = [&](Index p, Index q) -> Slot* {
      auto it = slots.find({p + q, p});
      return it == slots.end() ? nullptr : &it->second;
    };
    for (Index p = 0; p <= N + 1; ++p)
      for (Index q = 0; p + q <= N + 1; ++q) {
        Slot* s = get(p, q);
        E.entries[p].push_back(s ? s->group : zero_group());
      }
    for (Index p = 0; p <= N; ++p)
      for (Index q = 0; p + q <= N; ++q) {
        const Index tp = p + r, tq = q - r + 1;
        Slot* s = get(p, q);
        Slot* t = tq >= 0 ? get(tp, tq) : nullptr;
        const GroupPtr src = E.entries[p][q];
        const GroupPtr tgt = t ? t->group : zero_group();
        std::vector<Triplet> trip;
        if (s && t) {
          const Index n = p + q, k = n + m.shift;
          const Index nres = Index(s->res.orders().size());
          if (nres > 0 && k < m.top()) {
            const IntMatrix& K = z.Z(k, int(p), int(p + r));
            const IntMatrix piK = z.project(k, int(p), K);
            for (Index j = 0; j < nres; ++j) {
              auto c = m.k.solve(piK, s->res.generators().col(j));
              if (!c) throw Error(ErrorKind::Internal, "page generator does not lift at " + at(p, q));
              const IntMatrix y = z.apply_d(k, K * (*c));
              const IntMatrix ty = z.project(k + 1, int(tp), y);
              auto coords = t->res.coords(ty.col(0));
              if (!coords) throw Error(ErrorKind::Internal, "d_" + std::to_string(r) + " leaves Z_r at " + at(tp, tq));
              for (Index i = 0; i < coords->size(); ++i)
                if ((*coords)[i] != 0) trip.emplace_back(int(i), int(j), (*coords)[i]);
            }
          }
          const Index tres = Index(t->res.orders().size());
          for (std::size_t i = 0; i < s->pairs.size(); ++i) {
            if (!s->is_source[i]) continue;
            const auto& x = cancels[s->pairs[i]];
            if (x.target_label - x.source_label != r) continue;
            for (std::size_t j = 0; j < t->pairs.size(); ++j)
              if (t->pairs[j] == s->pairs[i] && !t->is_source[j])
                trip.emplace_back(int(tres + Index(j)), int(nres + Index(i)), x.kappa);
          }
        }
        E.d[p].push_back(GroupMap(src, tgt, sparse_from_triplets(tgt->generator_count(), src->generator_count(), trip)));
      }
    ss.pages.push_back(std::move(E));
  }

  // checks
  collapse(ss.checks, "E_1 vanishes outside the first quadrant", std::move(off_quadrant));
  for (std::size_t i = 0; i < ss.pages.size(); ++i) {
    const SpectralPage& E = ss.pages[i];
    const Index r = E.r;
    const std::string tag = "E_" + std::to_string(r);
    std::vector<Check> dd, next;
    for (Index p = 0; p <= N; ++p)
      for (Index q = 0; p + q <= N; ++q) {
        const Index tp = p + r, tq = q - r + 1;
        if (p + q + 1 <= N && tq >= 0)
          dd.push_back(zero_check("d d = 0 on " + tag + " at " + at(p, q),
                                  E.differential(tp, tq).after(E.differential(p, q)), tag + at(p, q)));
        if (i + 1 >= ss.pages.size()) continue;
        FpComplex cx;
        const Index sp = p - r, sq = q + r - 1;
        const bool has_in = sp >= 0 && sq >= 0;
        cx.groups = {has_in ? E.entry_ptr(sp, sq) : zero_group(), E.entry_ptr(p, q),
                     E.differential(p, q).target_ptr()};
        cx.d = {has_in ? E.differential(sp, sq).matrix()
                       : SparseIntMatrix(E.entry(p, q).generator_count(), 0),
                E.differential(p, q).matrix()};
        Check c{"E_" + std::to_string(r + 1) + " = H(" + tag + ") at " + at(p, q), true, {}};
        try {
          FpComplexHomology h(cx);
          const Invariants& got = h.homology(1);
          const Invariants& want = ss.pages[i + 1].entry(p, q).invariants();
          if (!(got == want)) {
            c.ok = false;
            c.witness = "H(" + tag + ") = " + got.str() + " but E_" + std::to_string(r + 1) + " = " + want.str();
          }
        } catch (const Error& e) {
          c.ok = false;
          c.witness = e.what();
        }
        next.push_back(std::move(c));
      }
    collapse(ss.checks, "d d = 0 on " + tag, std::move(dd));
    if (i + 1 < ss.pages.size())
      collapse(ss.checks, "E_" + std::to_string(r + 1) + " = H(" + tag + ")", std::move(next));
  }
  for (Check& c : transposed_checks(dc, N)) ss.checks.push_back(std::move(c));

  // stabilization: nothing changes at a trusted position after page max(p, q+1) <= N+1
  const SpectralPage& last = ss.pages.back();
  if (last.r >= N + 2 || (last.r >= N + 1 && !last.has_nonzero_differential())) {
    Index s = 0;
    for (const SpectralPage& E : ss.pages)
      if (E.has_nonzero_differential()) s = E.r + 1;
    ss.stable_from = std::min(s, last.r);
  }
  return ss;
}

ConvergenceReport convergence_report(const SpectralSequence& ss, const DoubleComplex& dc) {
  if (ss.stable_from < 0)
    throw Error(ErrorKind::NotStabilized, "pages up to E_" + std::to_string(ss.last().r) +
                                              " still have non-zero differentials or stop before E_" +
                                              std::to_string(ss.last().bound + 1));
  const SpectralPage& inf = ss.last();
  const Index N = inf.bound;
  const FpComplex& tot = dc.total();
  const Index T = tot.top();
  auto offset = [&](Index n, Index p) -> Index {
    return p <= n ? dc.total_offset(n, p) : tot.groups[n]->generator_count();
  };
  // F^p Tot as a complex of groups
  auto sub = [&](Index p) {
    FpComplex c;
    for (Index n = 0; n <= T; ++n) {
      const auto& o = tot.groups[n]->orders();
      c.groups.push_back(std::make_shared<const FpAbGroup>(
          FpAbGroup::diagonal(std::vector<Integer>(o.begin() + offset(n, p), o.end()))));
    }
    for (Index n = 0; n < T; ++n) {
      const Index r0 = offset(n + 1, p), c0 = offset(n, p);
      std::vector<Triplet> t;
      for (Index k = c0; k < tot.d[n].outerSize(); ++k)
        for (SparseIntMatrix::InnerIterator it(tot.d[n], k); it; ++it)
          if (it.row() >= r0) t.emplace_back(int(it.row() - r0), int(k - c0), it.value());
      c.d.push_back(sparse_from_triplets(c.groups[n + 1]->generator_count(), c.groups[n]->generator_count(), t));
    }
    return c;
  };

  ConvergenceReport rep;
  rep.stable_from = ss.stable_from;
  FpComplexHomology h(tot);
  std::vector<std::unique_ptr<FpComplexHomology>> hp;
  for (Index p = 0; p <= N + 1; ++p) hp.push_back(std::make_unique<FpComplexHomology>(sub(p)));
  const Scalars Z;
  for (Index n = 0; n <= N; ++n) {
    ConvergenceReport::Degree deg;
    deg.n = n;
    const auto& orders = h.orders(n);
    const Index k = Index(orders.size());
    std::vector<IntVector> rel;
    for (Index i = 0; i < k; ++i)
      if (orders[i] != 0) {
        IntVector e = zero_vector(k);
        e[i] = orders[i];
        rel.push_back(e);
      }
    // F^p H^n with the relations of H^n appended
    std::vector<IntMatrix> F;
    for (Index p = 0; p <= n + 1; ++p) {
      std::vector<IntVector> cols = rel;
      const Index off = offset(n, p);
      for (const IntVector& rep_v : hp[p]->representatives(n)) {
        IntVector full = zero_vector(tot.groups[n]->generator_count());
        full.tail(full.size() - off) = rep_v;
        cols.push_back(h.class_of(n, full));
      }
      IntMatrix M(k, Index(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j) M.col(Index(j)) = cols[j];
      F.push_back(std::move(M));
    }
    IntMatrix R(k, Index(rel.size()));
    for (std::size_t j = 0; j < rel.size(); ++j) R.col(Index(j)) = rel[j];
    deg.match = true;
    for (Index p = 0; p <= n + 1; ++p) deg.filtration.push_back(Subquotient(Z, F[p], R).invariants());
    if (!(deg.filtration[0] == h.homology(n))) {
      deg.match = false;
      deg.witness = "F^0 H^" + std::to_string(n) + " = " + deg.filtration[0].str() + " is not all of " +
                    h.homology(n).str();
    }
    for (Index p = 0; p <= n; ++p) {
      deg.graded.push_back(Subquotient(Z, F[p], F[p + 1]).invariants());
      deg.e_infinity.push_back(inf.entry(p, n - p).invariants());
      if (deg.match && !(deg.graded.back() == deg.e_infinity.back())) {
        deg.match = false;
        deg.witness = "gr^" + std::to_string(p) + " H^" + std::to_string(n) + " = " + deg.graded.back().str() +
                      " but E_inf" + at(p, n - p) + " = " + deg.e_infinity.back().str();
      }
    }
    rep.degrees.push_back(std::move(deg));
  }
  return rep;
}

}  // namespace cohomolab
