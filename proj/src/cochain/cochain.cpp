#include "cohomolab/cochain/cochain.hpp"

#include <algorithm>
#include <map>

#include "cohomolab/error.hpp"

namespace cohomolab {

namespace {

bool zero_mod(const IntVector& v, const std::vector<Integer>& o) {
  for (Index i = 0; i < v.size(); ++i)
    if (o[i] == 0 ? v[i] != 0 : v[i] % o[i] != 0) return false;
  return true;
}

std::string tuple_name(const FiniteSpace& X, const TupleCodec& c, Index code) {
  std::string s = "(";
  auto t = c.decode(code);
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + X.label(t[i]);
  return s + ")";
}

}  // namespace

CochainGroupPtr CochainGroup::build(std::shared_ptr<const FiniteSpace> X, std::shared_ptr<const GModule> M,
                                    Index arity, Region region, bool equivariant, std::string name) {
  if (arity < 1) throw Error(ErrorKind::RegionArityMismatch, "cochains need at least one coordinate");
  const Index count = checked_power(X->size(), arity);
  check_size(count * M->rank(), "cochain group of arity " + std::to_string(arity));
  if (region.kind == Region::Subspace) {
    if (region.subspace.arity != arity)
      throw Error(ErrorKind::RegionArityMismatch, "region has arity " + std::to_string(region.subspace.arity) +
                                                      ", cochains have " + std::to_string(arity));
    if (region.subspace.codec.points() != X->size())
      throw Error(ErrorKind::RegionArityMismatch, "region lives over a different space");
  }
  const GroupAction& G = M->group();
  if (G.points() != X->size()) throw Error(ErrorKind::ValidationError, "action is on a different space");

  auto A = std::shared_ptr<CochainGroup>(new CochainGroup());
  A->X_ = X;
  A->M_ = M;
  A->arity_ = arity;
  A->codec_ = TupleCodec(X->size(), arity);
  A->region_ = region;
  A->equivariant_ = equivariant;
  A->name_ = std::move(name);

  // component id of every tuple; tuples outside the region are their own component
  std::vector<int> comp(count);
  Index ncomp = 0;
  if (region.kind == Region::None) {
    for (Index t = 0; t < count; ++t) comp[t] = int(t);
    ncomp = count;
  } else {
    const SubspaceOfPower S = region.kind == Region::Full ? SubspaceOfPower::full(*X, arity) : region.subspace;
    if (equivariant && !G.stabilizes(S))
      throw Error(ErrorKind::RegionNotGStable, "continuity region is not stable under the group");
    Components cc = connected_components(*X, S, region.moving);
    ncomp = cc.count;
    for (Index t = 0; t < count; ++t) comp[t] = cc.id[t] >= 0 ? cc.id[t] : int(ncomp++);
  }
  if (!region.extra.empty()) {
    // merge with the components of every extra layer
    std::vector<int> parent(ncomp);
    for (Index c = 0; c < ncomp; ++c) parent[c] = int(c);
    auto find = [&](int c) {
      while (parent[c] != c) c = parent[c] = parent[parent[c]];
      return c;
    };
    for (const auto& layer : region.extra) {
      if (layer.subspace.arity != arity || layer.subspace.codec.points() != X->size())
        throw Error(ErrorKind::RegionArityMismatch, "extra continuity layer has the wrong shape");
      if (equivariant && !G.stabilizes(layer.subspace))
        throw Error(ErrorKind::RegionNotGStable, "continuity layer is not stable under the group");
      Components cc = connected_components(*X, layer.subspace, layer.moving);
      std::vector<int> first(cc.count, -1);
      for (Index t = 0; t < count; ++t) {
        const int k = cc.id[t];
        if (k < 0) continue;
        if (first[k] < 0)
          first[k] = comp[t];
        else
          parent[find(comp[t])] = find(first[k]);
      }
    }
    std::vector<int> relabel(ncomp, -1);
    Index n = 0;
    for (Index t = 0; t < count; ++t) {
      const int r = find(comp[t]);
      if (relabel[r] < 0) relabel[r] = int(n++);
      comp[t] = relabel[r];
    }
    ncomp = n;
  }
  std::vector<char> dead(ncomp, 0);
  if (!region.vanish.empty()) {
    if (Index(region.vanish.size()) != count)
      throw Error(ErrorKind::RegionArityMismatch, "vanishing set has the wrong size");
    if (equivariant)
      for (Index t = 0; t < count; ++t)
        if (region.vanish[t])
          for (Index g = 0; g < G.order(); ++g)
            if (!region.vanish[G.act_tuple(g, t, A->codec_)])
              throw Error(ErrorKind::RegionNotGStable, "vanishing set is not stable under the group");
    for (Index t = 0; t < count; ++t)
      if (region.vanish[t]) dead[comp[t]] = 1;
  }
  std::vector<Index> comp_rep(ncomp, -1);
  for (Index t = 0; t < count; ++t)
    if (comp_rep[comp[t]] < 0) comp_rep[comp[t]] = t;

  // orbits of components
  std::vector<int> orbit(ncomp, -1), twist(ncomp, int(G.identity()));
  std::vector<Index> orbit_rep;  // component
  std::vector<std::vector<Index>> stabilizer;
  for (Index c = 0; c < ncomp; ++c) {
    if (orbit[c] >= 0) continue;
    const int o = int(orbit_rep.size());
    orbit_rep.push_back(c);
    std::vector<Index> stab;
    if (!equivariant) {
      orbit[c] = o;
      stab.push_back(G.identity());
    } else {
      for (Index g = 0; g < G.order(); ++g) {
        const Index img = comp[G.act_tuple(g, comp_rep[c], A->codec_)];
        if (img == c) stab.push_back(g);
        if (orbit[img] < 0) {
          orbit[img] = o;
          twist[img] = int(g);
        }
      }
      std::sort(stab.begin(), stab.end());
    }
    stabilizer.push_back(std::move(stab));
  }

  std::vector<Integer> orders;
  std::vector<int> class_index(orbit_rep.size(), -1);
  for (std::size_t o = 0; o < orbit_rep.size(); ++o) {
    if (dead[orbit_rep[o]]) continue;
    auto F = M->fixed(stabilizer[o]);
    if (F->size() == 0) continue;
    class_index[o] = int(A->classes_.size());
    A->classes_.push_back({comp_rep[orbit_rep[o]], Index(orders.size()), F});
    orders.insert(orders.end(), F->orders.begin(), F->orders.end());
  }
  A->tuple_class_.resize(count);
  A->tuple_twist_.resize(count);
  for (Index t = 0; t < count; ++t) {
    A->tuple_class_[t] = class_index[orbit[comp[t]]];
    A->tuple_twist_[t] = twist[comp[t]];
  }
  A->group_ = std::make_shared<const FpAbGroup>(FpAbGroup::diagonal(std::move(orders)));
  return A;
}

IntVector CochainGroup::value_at(Index tuple, const IntVector& x) const {
  const Index m = M_->rank();
  const int c = tuple_class_[tuple];
  if (c < 0) return zero_vector(m);
  const Class& cl = classes_[c];
  IntVector v = cl.fixed->embed * x.segment(cl.offset, cl.fixed->size());
  const Index g = tuple_twist_[tuple];
  if (!M_->is_identity(g)) v = M_->matrix(g) * v;
  const auto& o = M_->V().orders();
  for (Index i = 0; i < m; ++i)
    if (o[i] != 0) v[i] = floor_mod(v[i], o[i]);
  return v;
}

IntVector CochainGroup::values(const IntVector& x) const {
  if (x.size() != generator_count())
    throw Error(ErrorKind::DimensionMismatch, "cochain has " + std::to_string(x.size()) + " coordinates, group has " +
                                                  std::to_string(generator_count()));
  const Index m = M_->rank();
  IntVector out = zero_vector(tuple_count() * m);
  for (Index t = 0; t < tuple_count(); ++t) out.segment(t * m, m) = value_at(t, x);
  return out;
}

std::optional<IntVector> CochainGroup::read(const IntVector& ambient) const {
  const Index m = M_->rank();
  if (ambient.size() != tuple_count() * m)
    throw Error(ErrorKind::DimensionMismatch, "ambient vector has the wrong length");
  IntVector x = zero_vector(generator_count());
  const auto& o = M_->V().orders();
  for (const Class& cl : classes_) {
    auto c = cl.fixed->coords(ambient.segment(cl.rep * m, m), o);
    if (!c) return std::nullopt;
    x.segment(cl.offset, cl.fixed->size()) = *c;
  }
  for (Index t = 0; t < tuple_count(); ++t) {
    IntVector d = ambient.segment(t * m, m) - value_at(t, x);
    if (!zero_mod(d, o)) return std::nullopt;
  }
  return x;
}

std::shared_ptr<const FpAbGroup> CochainGroup::ambient_group() const {
  std::vector<Integer> orders;
  orders.reserve(tuple_count() * M_->rank());
  for (Index t = 0; t < tuple_count(); ++t)
    orders.insert(orders.end(), M_->V().orders().begin(), M_->V().orders().end());
  return std::make_shared<const FpAbGroup>(FpAbGroup::diagonal(std::move(orders)));
}

GroupMap CochainGroup::inclusion() const {
  const Index m = M_->rank();
  std::vector<Triplet> trip;
  for (Index t = 0; t < tuple_count(); ++t) {
    const int c = tuple_class_[t];
    if (c < 0) continue;
    const Class& cl = classes_[c];
    IntMatrix blk = M_->matrix(tuple_twist_[t]) * cl.fixed->embed;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < blk.cols(); ++j)
        if (blk(i, j) != 0) trip.emplace_back(int(t * m + i), int(cl.offset + j), blk(i, j));
  }
  return GroupMap(group_, ambient_group(), sparse_from_triplets(tuple_count() * m, generator_count(), trip));
}

bool CochainGroup::contains(const CochainGroup& other) const {
  if (other.arity_ != arity_ || other.X_->size() != X_->size() || other.M_->rank() != M_->rank())
    throw Error(ErrorKind::DimensionMismatch, "groups live in different ambient spaces");
  for (Index i = 0; i < other.generator_count(); ++i)
    if (!read(other.values(other.unit(i)))) return false;
  return true;
}

IntVector CochainGroup::unit(Index i) const {
  IntVector e = zero_vector(generator_count());
  e[i] = 1;
  return e;
}

GroupMap tuple_operator(const CochainGroup& src, const CochainGroup& tgt, const TermFn& terms, ErrorKind failure,
                        const std::string& what) {
  const GModule& M = tgt.module();
  const Index m = M.rank();
  const auto& o = M.V().orders();
  const GroupAction& G = M.group();
  if (src.module().rank() != m) throw Error(ErrorKind::DimensionMismatch, what + ": modules differ");

  std::vector<Index> coords(tgt.arity());
  std::vector<Term> buf;

  // accumulated V-valued blocks per source class at one target tuple
  auto evaluate = [&](Index t, std::map<Index, IntMatrix>& acc) {
    acc.clear();
    tgt.codec().decode(t, coords.data());
    buf.clear();
    terms(coords.data(), buf);
    for (const Term& term : buf) {
      const int sc = src.class_of(term.source);
      if (sc < 0 || term.sign == 0) continue;
      const auto& cl = src.classes()[sc];
      const Index g = G.mul(term.g, src.twist_of(term.source));
      auto it = acc.find(sc);
      if (it == acc.end()) it = acc.emplace(sc, zero_matrix(m, cl.fixed->size())).first;
      if (M.is_identity(g) && cl.fixed->whole) {
        for (Index i = 0; i < m; ++i) it->second(i, i) += term.sign;
      } else {
        IntMatrix blk = M.matrix(g) * cl.fixed->embed;
        if (term.sign > 0)
          it->second += blk;
        else
          it->second -= blk;
      }
    }
  };

  // rows per target class, read at its representative
  std::vector<std::map<Index, IntMatrix>> rows(tgt.classes().size());
  std::vector<Triplet> trip;
  std::map<Index, IntMatrix> acc;
  for (std::size_t c = 0; c < tgt.classes().size(); ++c) {
    const auto& cl = tgt.classes()[c];
    evaluate(cl.rep, acc);
    for (auto& [sc, blk] : acc) {
      IntMatrix r = zero_matrix(cl.fixed->size(), blk.cols());
      bool any = false;
      for (Index j = 0; j < blk.cols(); ++j) {
        IntVector v = blk.col(j);
        if (zero_mod(v, o)) continue;
        auto x = cl.fixed->coords(v, o);
        if (!x)
          throw Error(failure, what + ": value at " + tuple_name(tgt.space(), tgt.codec(), cl.rep) +
                                   " is not fixed by its stabilizer");
        r.col(j) = *x;
        for (Index i = 0; i < x->size(); ++i)
          if ((*x)[i] != 0) {
            trip.emplace_back(int(cl.offset + i), int(src.classes()[sc].offset + j), (*x)[i]);
            any = true;
          }
      }
      if (any) rows[c].emplace(sc, std::move(r));
    }
  }

  // closure: every target tuple must agree with its class representative
  for (Index t = 0; t < tgt.tuple_count(); ++t) {
    const int c = tgt.class_of(t);
    if (c >= 0 && tgt.classes()[c].rep == t) continue;
    evaluate(t, acc);
    if (c < 0) {
      for (auto& [sc, blk] : acc)
        for (Index j = 0; j < blk.cols(); ++j)
          if (!zero_mod(blk.col(j), o))
            throw Error(failure, what + ": non-zero value at " + tuple_name(tgt.space(), tgt.codec(), t) +
                                     " where the target group vanishes");
      continue;
    }
    const auto& cl = tgt.classes()[c];
    const Index g = tgt.twist_of(t);
    IntMatrix lift = cl.fixed->embed;
    if (!M.is_identity(g)) lift = M.matrix(g) * lift;
    auto fail = [&] {
      throw Error(failure, what + ": image is not in the target group at " +
                               tuple_name(tgt.space(), tgt.codec(), t));
    };
    for (auto& [sc, blk] : acc) {
      auto it = rows[c].find(sc);
      IntMatrix expect = it == rows[c].end() ? zero_matrix(m, blk.cols()) : IntMatrix(lift * it->second);
      for (Index j = 0; j < blk.cols(); ++j)
        if (!zero_mod(blk.col(j) - expect.col(j), o)) fail();
    }
    for (auto& [sc, r] : rows[c])
      if (!acc.count(sc)) {
        IntMatrix expect = lift * r;
        for (Index j = 0; j < expect.cols(); ++j)
          if (!zero_mod(expect.col(j), o)) fail();
      }
  }

  return GroupMap(src.group_ptr(), tgt.group_ptr(),
                  sparse_from_triplets(tgt.generator_count(), src.generator_count(), trip));
}

GroupMap simplicial_differential(const CochainGroup& source, const CochainGroup& target) {
  if (target.arity() != source.arity() + 1)
    throw Error(ErrorKind::DimensionMismatch, "differential needs consecutive degrees");
  const Index k = target.arity();
  const Index e = target.module().group().identity();
  const TupleCodec& sc = source.codec();
  std::vector<Index> face(k);
  return tuple_operator(
      source, target,
      [&](const Index* t, std::vector<Term>& out) {
        for (Index i = 0; i < k; ++i) {
          delete_coord(t, k, i, face.data());
          out.push_back({i % 2 ? -1 : 1, sc.encode(face.data()), e});
        }
      },
      ErrorKind::NotClosedUnderDifferential, "coboundary of arity " + std::to_string(source.arity()));
}

GroupMap action_map(const CochainGroup& A, Index g) {
  if (A.equivariant()) throw Error(ErrorKind::ValidationError, "the action permutes non-equivariant cochains only");
  const GroupAction& G = A.module().group();
  const Index gi = G.inv(g);
  const TupleCodec& c = A.codec();
  return tuple_operator(
      A, A,
      [&](const Index* t, std::vector<Term>& out) { out.push_back({1, G.act_tuple(gi, c.encode(t), c), g}); },
      ErrorKind::RegionNotGStable, "action of " + G.name(g));
}

IntVector act_on_cochain(const CochainGroup& A, Index g, const IntVector& f) {
  return A.group().reduce(action_map(A, g).apply(f));
}

CochainGroupPtr fixed_subgroup(const CochainGroupPtr& A) {
  if (A->equivariant()) return A;
  auto F = CochainGroup::build(A->space_ptr(), A->module_ptr(), A->arity(), A->region(), true,
                               A->name().empty() ? std::string() : A->name() + "^G");
  const GroupMap inc = inclusion_map(*F, *A);
  const GroupAction& G = A->module().group();
  for (Index g = 0; g < G.order(); ++g) {
    const GroupMap act = action_map(*A, g);
    for (Index i = 0; i < F->generator_count(); ++i) {
      IntVector f = inc.apply(F->unit(i));
      if (!A->group().equal_elements(act.apply(f), f))
        throw Error(ErrorKind::Internal, "equivariant generator moved by " + G.name(g));
    }
  }
  return F;
}

GroupMap inclusion_map(const CochainGroup& sub, const CochainGroup& super) {
  if (sub.arity() != super.arity()) throw Error(ErrorKind::DimensionMismatch, "inclusion between arities");
  const Index e = super.module().group().identity();
  const TupleCodec& c = sub.codec();
  return tuple_operator(
      sub, super, [&](const Index* t, std::vector<Term>& out) { out.push_back({1, c.encode(t), e}); },
      ErrorKind::SourceMembership, "inclusion");
}

}  // namespace cohomolab
