#include "cohomolab/finspace/space.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "cohomolab/error.hpp"

namespace cohomolab {

namespace {
std::atomic<Index> g_size_limit{200000};

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(Index n) : parent(n) { std::iota(parent.begin(), parent.end(), Index(0)); }
  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};
}  // namespace

Index size_limit() { return g_size_limit.load(); }
void set_size_limit(Index limit) { g_size_limit.store(limit); }

void check_size(Index count, const std::string& what) {
  if (count > size_limit())
    throw Error(ErrorKind::SizeOverflow, what + " needs " + std::to_string(count) + " tuples, limit is " +
                                             std::to_string(size_limit()));
}

Index checked_power(Index n, Index k) {
  const Index cap = Index(1) << 40;
  Index r = 1;
  for (Index i = 0; i < k; ++i) {
    r *= n;
    if (r > cap) return cap;
  }
  return r;
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::vector<char> order)
    : n_(Index(labels.size())), labels_(std::move(labels)), leq_(std::move(order)) {
  if (Index(leq_.size()) != n_ * n_) throw Error(ErrorKind::ValidationError, "order matrix has the wrong size");
  if (n_ == 0) throw Error(ErrorKind::ValidationError, "space has no points");
  for (Index x = 0; x < n_; ++x)
    if (!leq(x, x)) throw Error(ErrorKind::ValidationError, "order is not reflexive at " + labels_[x]);
  for (Index x = 0; x < n_; ++x)
    for (Index y = 0; y < n_; ++y)
      if (leq(x, y))
        for (Index z = 0; z < n_; ++z)
          if (leq(y, z) && !leq(x, z))
            throw Error(ErrorKind::ValidationError,
                        "order is not transitive: " + labels_[x] + " <= " + labels_[y] + " <= " + labels_[z]);
  for (Index x = 0; x < n_; ++x)
    for (Index y = x + 1; y < n_; ++y)
      if (labels_[x] == labels_[y]) throw Error(ErrorKind::ValidationError, "duplicate point " + labels_[x]);
}

FiniteSpace FiniteSpace::from_relations(std::vector<std::string> labels,
                                        const std::vector<std::pair<Index, Index>>& less) {
  const Index n = Index(labels.size());
  std::vector<char> m(n * n, 0);
  for (Index x = 0; x < n; ++x) m[x * n + x] = 1;
  for (auto [a, b] : less) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::ValidationError, "relation names unknown point");
    m[a * n + b] = 1;
  }
  // Warshall
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      if (m[i * n + k])
        for (Index j = 0; j < n; ++j)
          if (m[k * n + j]) m[i * n + j] = 1;
  return FiniteSpace(std::move(labels), std::move(m));
}

FiniteSpace FiniteSpace::discrete(Index n) {
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return from_relations(std::move(labels), {});
}

std::optional<Index> FiniteSpace::index_of(const std::string& name) const {
  for (Index x = 0; x < n_; ++x)
    if (labels_[x] == name) return x;
  return std::nullopt;
}

std::vector<char> FiniteSpace::minimal_open(Index x) const {
  std::vector<char> u(n_, 0);
  for (Index y = 0; y < n_; ++y) u[y] = leq(x, y);
  return u;
}

bool FiniteSpace::is_open(const std::vector<char>& member) const {
  if (Index(member.size()) != n_) return false;
  for (Index x = 0; x < n_; ++x)
    if (member[x])
      for (Index y = 0; y < n_; ++y)
        if (leq(x, y) && !member[y]) return false;
  return true;
}

bool FiniteSpace::is_discrete() const {
  for (Index x = 0; x < n_; ++x)
    for (Index y = 0; y < n_; ++y)
      if (x != y && leq(x, y)) return false;
  return true;
}

TupleCodec::TupleCodec(Index points, Index arity) : n_(points), k_(arity), pow_(arity) {
  count_ = checked_power(points, arity);
  Index p = 1;
  for (Index i = arity - 1; i >= 0; --i) {
    pow_[i] = p;
    p *= points;
  }
}

void TupleCodec::decode(Index code, Index* out) const {
  for (Index i = k_ - 1; i >= 0; --i) {
    out[i] = code % n_;
    code /= n_;
  }
}

Index TupleCodec::encode(const Index* coords) const {
  Index c = 0;
  for (Index i = 0; i < k_; ++i) c = c * n_ + coords[i];
  return c;
}

std::vector<Index> TupleCodec::decode(Index code) const {
  std::vector<Index> out(k_);
  decode(code, out.data());
  return out;
}

FiniteSpace power_space(const FiniteSpace& X, Index k) {
  if (k < 1) throw Error(ErrorKind::ValidationError, "power needs k >= 1");
  const Index count = checked_power(X.size(), k);
  check_size(count, "power of degree " + std::to_string(k));
  TupleCodec codec(X.size(), k);
  std::vector<std::string> labels(count);
  std::vector<Index> a(k), b(k);
  for (Index c = 0; c < count; ++c) {
    codec.decode(c, a.data());
    std::string s = "(";
    for (Index i = 0; i < k; ++i) s += (i ? "," : "") + X.label(a[i]);
    labels[c] = s + ")";
  }
  std::vector<char> m(count * count, 0);
  for (Index c = 0; c < count; ++c) {
    codec.decode(c, a.data());
    for (Index e = 0; e < count; ++e) {
      codec.decode(e, b.data());
      bool le = true;
      for (Index i = 0; i < k && le; ++i) le = X.leq(a[i], b[i]);
      m[c * count + e] = le;
    }
  }
  return FiniteSpace(std::move(labels), std::move(m));
}

Index SubspaceOfPower::count() const { return Index(std::count(member.begin(), member.end(), char(1))); }

SubspaceOfPower SubspaceOfPower::full(const FiniteSpace& X, Index arity) {
  const Index count = checked_power(X.size(), arity);
  check_size(count, "power of degree " + std::to_string(arity));
  SubspaceOfPower s;
  s.arity = arity;
  s.codec = TupleCodec(X.size(), arity);
  s.member.assign(count, 1);
  return s;
}

void Covering::validate(const FiniteSpace& X) const {
  if (members.empty()) throw Error(ErrorKind::NotACovering, "covering has no members");
  std::vector<char> seen(X.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!X.is_open(members[i]))
      throw Error(ErrorKind::NotACovering, "member " + std::to_string(i) + " is not open (not an up-set)");
    for (Index x = 0; x < X.size(); ++x) seen[x] |= members[i][x];
  }
  for (Index x = 0; x < X.size(); ++x)
    if (!seen[x]) throw Error(ErrorKind::NotACovering, "point " + X.label(x) + " is not covered");
}

Covering trivial_cover(const FiniteSpace& X) {
  Covering c;
  c.name = "trivial";
  c.members.push_back(std::vector<char>(X.size(), 1));
  return c;
}

Covering minimal_open_cover(const FiniteSpace& X) {
  Covering c;
  c.name = "minimal";
  for (Index x = 0; x < X.size(); ++x) {
    auto u = X.minimal_open(x);
    if (std::find(c.members.begin(), c.members.end(), u) == c.members.end()) c.members.push_back(std::move(u));
  }
  return c;
}

SubspaceOfPower diagonal_neighborhood(const FiniteSpace& X, const Covering& cover, Index n) {
  if (n < 0) throw Error(ErrorKind::ValidationError, "negative degree");
  const Index k = n + 1;
  const Index count = checked_power(X.size(), k);
  check_size(count, "diagonal neighbourhood of degree " + std::to_string(n));
  SubspaceOfPower s;
  s.arity = k;
  s.codec = TupleCodec(X.size(), k);
  s.member.assign(count, 0);
  for (const auto& u : cover.members) {
    std::vector<Index> pts;
    for (Index x = 0; x < X.size(); ++x)
      if (u[x]) pts.push_back(x);
    const Index m = Index(pts.size());
    if (m == 0) continue;
    // odometer over pts^k
    std::vector<Index> idx(k, 0), t(k, pts[0]);
    while (true) {
      s.member[s.codec.encode(t.data())] = 1;
      Index i = k - 1;
      while (i >= 0 && idx[i] == m - 1) {
        idx[i] = 0;
        t[i] = pts[0];
        --i;
      }
      if (i < 0) break;
      t[i] = pts[++idx[i]];
    }
  }
  return s;
}

SubspaceOfPower product_with_full(const FiniteSpace& X, Index p_arity, const SubspaceOfPower& S) {
  const Index k = p_arity + S.arity;
  const Index count = checked_power(X.size(), k);
  check_size(count, "product of degree " + std::to_string(k - 1));
  SubspaceOfPower r;
  r.arity = k;
  r.codec = TupleCodec(X.size(), k);
  r.member.assign(count, 0);
  const Index inner = S.codec.count();
  for (Index c = 0; c < count; ++c) r.member[c] = S.member[c % inner];
  return r;
}

Components connected_components(const FiniteSpace& X, const SubspaceOfPower& S, const std::vector<char>& moving) {
  const Index k = S.arity;
  const Index count = S.codec.count();
  std::vector<char> mv = moving.empty() ? std::vector<char>(k, 1) : moving;
  if (Index(mv.size()) != k) throw Error(ErrorKind::DimensionMismatch, "coordinate mask has the wrong length");

  std::vector<Index> t(k);
  auto up_closed = [&] {
    for (Index c = 0; c < count; ++c) {
      if (!S.member[c]) continue;
      S.codec.decode(c, t.data());
      for (Index i = 0; i < k; ++i) {
        if (!mv[i]) continue;
        const Index keep = t[i];
        for (Index y = 0; y < X.size(); ++y)
          if (X.leq(keep, y)) {
            t[i] = y;
            if (!S.member[S.codec.encode(t.data())]) return false;
          }
        t[i] = keep;
      }
    }
    return true;
  };

  UnionFind uf(count);
  if (up_closed()) {
    // t <= t' inside an up-closed set is reachable by raising one coordinate at a time
    for (Index c = 0; c < count; ++c) {
      if (!S.member[c]) continue;
      S.codec.decode(c, t.data());
      for (Index i = 0; i < k; ++i) {
        if (!mv[i]) continue;
        const Index keep = t[i];
        for (Index y = 0; y < X.size(); ++y)
          if (y != keep && X.leq(keep, y)) {
            t[i] = y;
            uf.unite(c, S.codec.encode(t.data()));
          }
        t[i] = keep;
      }
    }
  } else {
    std::vector<Index> members;
    for (Index c = 0; c < count; ++c)
      if (S.member[c]) members.push_back(c);
    std::vector<Index> u(k);
    for (std::size_t a = 0; a < members.size(); ++a) {
      S.codec.decode(members[a], t.data());
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        S.codec.decode(members[b], u.data());
        bool le = true, ge = true;
        for (Index i = 0; i < k && (le || ge); ++i) {
          if (!mv[i]) {
            if (t[i] != u[i]) le = ge = false;
            continue;
          }
          le = le && X.leq(t[i], u[i]);
          ge = ge && X.leq(u[i], t[i]);
        }
        if (le || ge) uf.unite(members[a], members[b]);
      }
    }
  }

  Components out;
  out.id.assign(count, -1);
  std::vector<int> root_id(count, -1);
  for (Index c = 0; c < count; ++c) {
    if (!S.member[c]) continue;
    const Index r = uf.find(c);
    if (root_id[r] < 0) root_id[r] = int(out.count++);
    out.id[c] = root_id[r];
  }
  return out;
}

namespace {

// x is dominated inside `alive`: returns the witness.
std::optional<BeatStep> find_beat(const FiniteSpace& X, const std::vector<char>& alive, Index x) {
  const Index n = X.size();
  for (Index w = 0; w < n; ++w)
    if (alive[w] && w != x && X.leq(w, x) && X.leq(x, w)) return BeatStep{BeatStep::Twin, x, w};
  // below: points strictly under x; beat if they have a maximum
  std::optional<Index> best_down, best_up;
  bool any_down = false, any_up = false;
  for (Index y = 0; y < n; ++y) {
    if (!alive[y] || y == x) continue;
    if (X.leq(y, x) && !X.leq(x, y)) {
      any_down = true;
      bool top = true;
      for (Index z = 0; z < n && top; ++z)
        if (alive[z] && z != x && X.leq(z, x) && !X.leq(x, z)) top = X.leq(z, y);
      if (top) best_down = y;
    }
    if (X.leq(x, y) && !X.leq(y, x)) {
      any_up = true;
      bool bottom = true;
      for (Index z = 0; z < n && bottom; ++z)
        if (alive[z] && z != x && X.leq(x, z) && !X.leq(z, x)) bottom = X.leq(y, z);
      if (bottom) best_up = y;
    }
  }
  if (any_down && best_down) return BeatStep{BeatStep::Down, x, *best_down};
  if (any_up && best_up) return BeatStep{BeatStep::Up, x, *best_up};
  return std::nullopt;
}

bool step_valid(const FiniteSpace& X, const std::vector<char>& alive, const BeatStep& s) {
  const Index n = X.size();
  if (s.point < 0 || s.point >= n || s.witness < 0 || s.witness >= n) return false;
  if (!alive[s.point] || !alive[s.witness] || s.point == s.witness) return false;
  const Index x = s.point, w = s.witness;
  switch (s.kind) {
    case BeatStep::Twin:
      return X.leq(w, x) && X.leq(x, w);
    case BeatStep::Down:
      if (!(X.leq(w, x) && !X.leq(x, w))) return false;
      for (Index z = 0; z < n; ++z)
        if (alive[z] && z != x && X.leq(z, x) && !X.leq(x, z) && !X.leq(z, w)) return false;
      return true;
    case BeatStep::Up:
      if (!(X.leq(x, w) && !X.leq(w, x))) return false;
      for (Index z = 0; z < n; ++z)
        if (alive[z] && z != x && X.leq(x, z) && !X.leq(z, x) && !X.leq(w, z)) return false;
      return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<BeatStep>> contractibility_certificate(const FiniteSpace& X) {
  // Removing beat points never destroys another removal route to the core,
  // so a greedy pass decides dismantlability.
  std::vector<char> alive(X.size(), 1);
  std::vector<BeatStep> steps;
  Index left = X.size();
  while (left > 1) {
    bool progressed = false;
    for (Index x = X.size() - 1; x >= 0 && !progressed; --x) {
      if (!alive[x]) continue;
      if (auto s = find_beat(X, alive, x)) {
        steps.push_back(*s);
        alive[x] = 0;
        --left;
        progressed = true;
      }
    }
    if (!progressed) return std::nullopt;
  }
  return steps;
}

bool verify_certificate(const FiniteSpace& X, const std::vector<BeatStep>& cert) {
  std::vector<char> alive(X.size(), 1);
  for (const auto& s : cert) {
    if (!step_valid(X, alive, s)) return false;
    alive[s.point] = 0;
  }
  return std::count(alive.begin(), alive.end(), char(1)) == 1;
}

}  // namespace cohomolab
