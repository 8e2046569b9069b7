#include "cohomolab/fpabelian/reduction.hpp"

#include <algorithm>

#include "cohomolab/error.hpp"
#include "cohomolab/fpabelian/smith.hpp"

namespace cohomolab {
namespace {

Integer lookup(const SparseVec& v, Index i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, Index k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return Integer(0);
}

bool erase_entry(SparseVec& v, Index i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, Index k) { return e.first < k; });
  if (it == v.end() || it->first != i) return false;
  v.erase(it);
  return true;
}

// x += q * y (mod p when p > 0), reporting indices that became structurally non-zero.
void axpy(SparseVec& x, const Integer& q, const SparseVec& y, std::vector<Index>& fresh, const Integer& p) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == x.end() || j->first < i->first) {
      Integer v = q * j->second;
      if (p > 0) v = floor_mod(v, p);
      if (v != 0) {
        fresh.push_back(j->first);
        out.emplace_back(j->first, std::move(v));
      }
      ++j;
    } else {
      Integer v = i->second + q * j->second;
      if (p > 0) v = floor_mod(v, p);
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i, ++j;
    }
  }
  x.swap(out);
}

bool is_unit(const Integer& v) { return v == 1 || v == -1; }

Integer inverse_mod(const Integer& k, const Integer& p) {
  return boost::multiprecision::powm(floor_mod(k, p), Integer(p - 2), p);
}

struct Eliminator {
  Index T;
  bool filtered;
  const std::vector<std::vector<int>>& labels;
  std::vector<std::vector<SparseVec>> cols;         // cols[n][x] = d_n(e_x)
  std::vector<std::vector<std::vector<Index>>> rows;  // rows[n][y] ⊇ {x : <d e_x, e_y> != 0}
  std::vector<std::vector<char>> alive;
  std::vector<Index> stamp;
  Index clock = 0;

  int label(Index n, Index x) const { return filtered ? labels[n][x] : 0; }

  // Exact entries of row y of d_n; compacts the lazily kept index list.
  SparseVec row_entries(Index n, Index y) {
    SparseVec out;
    auto& r = rows[n][y];
    if (Index(stamp.size()) < Index(cols[n].size())) stamp.resize(cols[n].size(), -1);
    ++clock;
    std::vector<Index> live;
    for (Index x : r) {
      if (stamp[x] == clock || !alive[n][x]) continue;
      stamp[x] = clock;
      Integer v = lookup(cols[n][x], y);
      if (v == 0) continue;
      live.push_back(x);
      out.emplace_back(x, std::move(v));
    }
    r.swap(live);
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    return out;
  }
};

}  // namespace

ReducedComplex::ReducedComplex(const FreeComplex& c, bool filtered, int max_gap, Integer modulus)
    : dims_(c.dims), modulus_(std::move(modulus)) {
  const Index T = c.top();
  if (T < 0) throw Error(ErrorKind::DimensionMismatch, "empty complex");
  if (Index(c.d.size()) != T) throw Error(ErrorKind::DimensionMismatch, "complex needs one map per degree");
  for (Index n = 0; n < T; ++n)
    if (c.d[n].cols() != c.dims[n] || c.d[n].rows() != c.dims[n + 1])
      throw Error(ErrorKind::DimensionMismatch, "differential " + std::to_string(n) + " has the wrong shape");
  if (filtered && Index(c.labels.size()) != T + 1)
    throw Error(ErrorKind::DimensionMismatch, "filtered reduction needs labels in every degree");
  orig_d_ = c.d;
  if (filtered)
    for (Index n = 0; n < T; ++n)
      for (Index k = 0; k < c.d[n].outerSize(); ++k)
        for (SparseIntMatrix::InnerIterator it(c.d[n], k); it; ++it)
          if (it.value() != 0 && c.labels[n + 1][it.row()] < c.labels[n][k])
            throw Error(ErrorKind::DimensionMismatch, "differential lowers the filtration label");

  Eliminator e{T, filtered, c.labels, {}, {}, {}, {}, 0};
  e.cols.resize(T);
  e.rows.resize(T);
  e.alive.resize(T + 1);
  for (Index n = 0; n <= T; ++n) e.alive[n].assign(c.dims[n], 1);
  for (Index n = 0; n < T; ++n) {
    e.cols[n].resize(c.dims[n]);
    e.rows[n].resize(c.dims[n + 1]);
    for (Index k = 0; k < c.d[n].outerSize(); ++k)
      for (SparseIntMatrix::InnerIterator it(c.d[n], k); it; ++it) {
        Integer v = modulus_ > 0 ? floor_mod(it.value(), modulus_) : Integer(it.value());
        if (v == 0) continue;
        e.cols[n][k].emplace_back(it.row(), std::move(v));
        e.rows[n][it.row()].push_back(k);
      }
    for (auto& col : e.cols[n])
      std::sort(col.begin(), col.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  }

  auto eliminate = [&](Index n, Index a, Index b, bool split) {
    SparseVec colA = e.cols[n][a];
    Integer kappa = lookup(colA, b);
    const Integer kinv = modulus_ > 0 ? inverse_mod(kappa, modulus_) : Integer(0);
    SparseVec rowB = e.row_entries(n, b);
    erase_entry(rowB, a);
    std::vector<Index> fresh;
    for (const auto& [x, v] : rowB) {
      fresh.clear();
      axpy(e.cols[n][x], modulus_ > 0 ? floor_mod(Integer(-v * kinv), modulus_) : Integer(-(v / kappa)), colA, fresh,
           modulus_);
      for (Index y : fresh) e.rows[n][y].push_back(x);
    }
    e.alive[n][a] = 0;
    SparseVec().swap(e.cols[n][a]);
    e.alive[n + 1][b] = 0;
    std::vector<Index>().swap(e.rows[n][b]);
    if (n + 1 < T) SparseVec().swap(e.cols[n + 1][b]);
    if (n >= 1) {
      for (const auto& [w, v] : e.row_entries(n - 1, a)) erase_entry(e.cols[n - 1][w], a);
      std::vector<Index>().swap(e.rows[n - 1][a]);
    }
    if (split) splits_.push_back({n + 1, e.label(n + 1, b), abs(kappa), steps_.size()});
    steps_.push_back({n, a, b, std::move(kappa), std::move(colA), std::move(rowB), split, e.label(n, a),
                      e.label(n + 1, b)});
  };

  int gap = 0;
  // (a, y) at the current gap that splits off as a filtered summand
  auto admissible = [&](Index n, Index a, Index y) {
    const int la = e.label(n, a), lb = e.label(n + 1, y);
    if (lb - la != gap) return false;
    if (gap == 0) return true;
    for (const auto& [i, v] : e.cols[n][a])
      if (e.label(n + 1, i) < lb) return false;
    for (const auto& [x, v] : e.row_entries(n, y))
      if (e.label(n, x) > la) return false;
    return true;
  };

  auto unit_pass = [&](Index n) {
    std::vector<Index> order;
    for (Index a = 0; a < c.dims[n]; ++a)
      if (e.alive[n][a] && !e.cols[n][a].empty()) order.push_back(a);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index x, Index y) { return e.cols[n][x].size() < e.cols[n][y].size(); });
    Index count = 0;
    for (Index a : order) {
      if (!e.alive[n][a]) continue;
      Index best = -1;
      std::size_t best_len = 0;
      for (const auto& [y, v] : e.cols[n][a]) {
        if (!(modulus_ > 0 || is_unit(v)) || e.label(n + 1, y) - e.label(n, a) != gap) continue;
        std::size_t len = e.rows[n][y].size();
        if (best >= 0 && len >= best_len) continue;
        if (!admissible(n, a, y)) continue;
        best = y, best_len = len;
      }
      if (best < 0) continue;
      eliminate(n, a, best, false);
      ++count;
    }
    return count;
  };

  auto split_pass = [&](Index n) {
    Index count = 0;
    for (Index a = 0; a < c.dims[n]; ++a) {
      if (!e.alive[n][a] || e.cols[n][a].empty()) continue;
      SparseVec cand = e.cols[n][a];
      std::sort(cand.begin(), cand.end(), [](const auto& p, const auto& q) { return abs(p.second) < abs(q.second); });
      for (const auto& [y, k] : cand) {
        if (e.label(n + 1, y) - e.label(n, a) != gap) continue;
        bool ok = true;
        for (const auto& [i, v] : e.cols[n][a])
          if (v % k != 0) {
            ok = false;
            break;
          }
        if (!ok) continue;
        for (const auto& [x, v] : e.row_entries(n, y))
          if (v % k != 0) {
            ok = false;
            break;
          }
        if (!ok || !admissible(n, a, y)) continue;
        eliminate(n, a, y, !is_unit(k));
        ++count;
        break;
      }
    }
    return count;
  };

  if (!filtered) max_gap = 0;
  for (gap = 0; gap <= max_gap; ++gap)
    for (bool progress = true; progress;) {
      progress = false;
      for (Index n = 0; n < T; ++n)
        for (;;) {
          if (unit_pass(n)) {
            progress = true;
            continue;
          }
          if (modulus_ > 0 || !split_pass(n)) break;
          progress = true;
        }
      // at gap 0 later degrees never reopen earlier ones
      if (gap == 0) break;
    }

  kept_.resize(T + 1);
  res_labels_.resize(T + 1);
  std::vector<std::vector<Index>> pos(T + 1);
  for (Index n = 0; n <= T; ++n) {
    pos[n].assign(c.dims[n], -1);
    for (Index x = 0; x < c.dims[n]; ++x)
      if (e.alive[n][x]) {
        pos[n][x] = Index(kept_[n].size());
        kept_[n].push_back(x);
        res_labels_[n].push_back(filtered ? c.labels[n][x] : 0);
      }
  }
  res_d_.resize(T + 1);
  for (Index n = 0; n < T; ++n) {
    IntMatrix m = zero_matrix(Index(kept_[n + 1].size()), Index(kept_[n].size()));
    for (std::size_t j = 0; j < kept_[n].size(); ++j)
      for (const auto& [y, v] : e.cols[n][kept_[n][j]]) {
        if (pos[n + 1][y] < 0) throw Error(ErrorKind::Internal, "residual entry on an eliminated row");
        m(pos[n + 1][y], Index(j)) = v;
      }
    res_d_[n] = std::move(m);
  }
  res_d_[T] = IntMatrix(0, Index(kept_[T].size()));
}

Integer ReducedComplex::quotient(const Integer& a, const Integer& kappa) const {
  if (modulus_ > 0) return floor_mod(Integer(a * inverse_mod(kappa, modulus_)), modulus_);
  return a / kappa;
}

Integer ReducedComplex::reduce(const Integer& a) const { return modulus_ > 0 ? floor_mod(a, modulus_) : a; }

std::vector<ReducedComplex::Cancellation> ReducedComplex::cancellations() const {
  std::vector<Cancellation> out;
  for (const Step& s : steps_) out.push_back({s.n + 1, s.label_a, s.label_b, abs(s.kappa), s.split});
  return out;
}

IntVector ReducedComplex::project(Index n, const IntVector& z, std::vector<Integer>* split) const {
  if (z.size() != dims_[n]) throw Error(ErrorKind::DimensionMismatch, "vector length differs from the degree");
  IntVector x = z;
  for (const Step& s : steps_) {
    if (s.n + 1 == n) {
      Integer c = x[s.b];
      if (s.split && split) split->push_back(floor_mod(c, abs(s.kappa)));
      if (c == 0) continue;
      for (const auto& [i, v] : s.colA) x[i] = reduce(x[i] - quotient(c * v, s.kappa));
    } else if (s.n == n) {
      x[s.a] = 0;
    }
  }
  IntVector r(Index(kept_[n].size()));
  for (std::size_t k = 0; k < kept_[n].size(); ++k) r[Index(k)] = x[kept_[n][k]];
  return r;
}

IntVector ReducedComplex::include_before(std::size_t step, Index n, IntVector x) const {
  for (std::size_t t = step; t-- > 0;) {
    const Step& s = steps_[t];
    if (s.n != n) continue;
    Integer acc = 0;
    for (const auto& [y, v] : s.rowB) acc += v * x[y];
    if (modulus_ == 0 && acc % s.kappa != 0)
      throw Error(ErrorKind::Internal, "inexact division while lifting a residual vector");
    x[s.a] = reduce(Integer(-quotient(acc, s.kappa)));
  }
  return x;
}

IntVector ReducedComplex::include(Index n, const IntVector& residual) const {
  IntVector x = zero_vector(dims_[n]);
  for (std::size_t k = 0; k < kept_[n].size(); ++k) x[kept_[n][k]] = residual[Index(k)];
  return include_before(steps_.size(), n, std::move(x));
}

IntVector ReducedComplex::split_representative(const Split& sp) const {
  const Step& s = steps_[sp.step];
  IntVector x = zero_vector(dims_[sp.degree]);
  for (const auto& [i, v] : s.colA) x[i] = quotient(v, s.kappa);
  return include_before(sp.step, sp.degree, std::move(x));
}

bool ReducedComplex::is_cocycle(Index n, const IntVector& z) const {
  if (n >= top()) return true;
  return is_zero(apply(orig_d_[n], z));
}

FreeHomology::FreeHomology(const ReducedComplex& rc, Index n) : rc_(&rc), n_(n) {
  const Index k = Index(rc.kept(n).size());
  IntMatrix in = n >= 1 ? rc.residual_d(n - 1) : IntMatrix(k, 0);
  IntMatrix K = rc.residual_d(n).rows() ? kernel_basis(rc.residual_d(n)) : identity_matrix(k);
  if (K.rows() != k) K = identity_matrix(k);
  q_ = LatticeQuotient(K, in);
  orders_ = q_.orders();
  const auto& sp = rc.splits();
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (sp[i].degree == n) {
      split_ids_.push_back(i);
      orders_.push_back(sp[i].order);
    }
  inv_ = invariants_from_orders(orders_);
}

IntVector FreeHomology::class_of(const IntVector& cocycle) const {
  if (!rc_->is_cocycle(n_, cocycle)) throw Error(ErrorKind::NotACocycle, "vector is not a cocycle");
  std::vector<Integer> split;
  IntVector r = rc_->project(n_, cocycle, &split);
  auto c = q_.coords(r);
  if (!c) throw Error(ErrorKind::Internal, "projected cocycle left the residual kernel");
  // split coordinates are recorded for every split summand landing in degree n
  IntVector out(c->size() + Index(split.size()));
  for (Index i = 0; i < c->size(); ++i) out[i] = (*c)[i];
  for (std::size_t i = 0; i < split.size(); ++i) out[c->size() + Index(i)] = split[i];
  return out;
}

std::vector<IntVector> FreeHomology::representatives() const {
  std::vector<IntVector> reps;
  const IntMatrix& g = q_.generators();
  for (Index j = 0; j < g.cols(); ++j) reps.push_back(rc_->include(n_, g.col(j)));
  for (std::size_t i : split_ids_) reps.push_back(rc_->split_representative(rc_->splits()[i]));
  return reps;
}

}  // namespace cohomolab
