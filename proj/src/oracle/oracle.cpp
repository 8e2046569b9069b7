#include "cohomolab/oracle/oracle.hpp"

#include <map>
#include <numeric>

namespace cohomolab::oracle {
namespace {

std::shared_ptr<const FpAbGroup> copies(const FpAbGroup& V, Index k) {
  std::vector<Integer> o;
  o.reserve(std::size_t(k * V.generator_count()));
  for (Index i = 0; i < k; ++i)
    for (const Integer& x : V.orders()) o.push_back(x);
  return std::make_shared<const FpAbGroup>(FpAbGroup::diagonal(std::move(o)));
}

std::vector<FpAbGroup> cohomology(const FpComplex& c, Index N) {
  FpComplexHomology h(c);
  std::vector<FpAbGroup> out;
  for (Index n = 0; n <= N; ++n) out.push_back(h.group(n));
  return out;
}

// plain union-find over the points of a subset
Index count_components(const FiniteSpace& X, const std::vector<char>& in, std::vector<Index>& comp) {
  const Index n = X.size();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if (in[x] && in[y] && X.comparable(x, y)) parent[find(x)] = find(y);
  comp.assign(n, -1);
  std::map<Index, Index> ids;
  for (Index x = 0; x < n; ++x)
    if (in[x]) comp[x] = ids.emplace(find(x), Index(ids.size())).first->second;
  return Index(ids.size());
}

}  // namespace

FpComplex bar_complex(const GModule& V, Index N, std::vector<BarComplexLevel>* levels) {
  const GroupAction& G = V.group();
  const Index g = G.order(), r = V.rank();
  FpComplex c;
  std::vector<Index> count(N + 2, 1);
  for (Index n = 1; n <= N + 1; ++n) count[n] = count[n - 1] * g;
  for (Index n = 0; n <= N + 1; ++n) c.groups.push_back(copies(V.V(), count[n]));
  if (levels) levels->clear();
  for (Index n = 0; n <= N + 1; ++n) {
    if (n == N + 1) {
      if (levels) levels->push_back({n, count[n], {}});
      break;
    }
    std::vector<Triplet> t;
    std::vector<Index> tup(n + 1), src(n);
    for (Index code = 0; code < count[n + 1]; ++code) {
      for (Index i = n, x = code; i >= 0; --i, x /= g) tup[i] = x % g;
      auto add = [&](const std::vector<Index>& s, const IntMatrix* act, int sign) {
        Index sc = 0;
        for (Index v : s) sc = sc * g + v;
        for (Index a = 0; a < r; ++a)
          for (Index b = 0; b < r; ++b) {
            const Integer e = act ? Integer(sign * (*act)(a, b)) : Integer(a == b ? sign : 0);
            if (e != 0) t.emplace_back(int(code * r + a), int(sc * r + b), e);
          }
      };
      // g_1 f(g_2 .. g_{n+1})
      for (Index i = 0; i < n; ++i) src[i] = tup[i + 1];
      add(src, &V.matrix(tup[0]), 1);
      for (Index i = 1; i <= n; ++i) {
        for (Index j = 0, o = 0; j <= n; ++j) {
          if (j == i) continue;
          src[o++] = j == i - 1 ? G.mul(tup[i - 1], tup[i]) : tup[j];
        }
        add(src, nullptr, i % 2 ? -1 : 1);
      }
      for (Index i = 0; i < n; ++i) src[i] = tup[i];
      add(src, nullptr, (n + 1) % 2 ? -1 : 1);
    }
    SparseIntMatrix d = sparse_from_triplets(count[n + 1] * r, count[n] * r, t);
    if (levels) levels->push_back({n, count[n], d});
    c.d.push_back(std::move(d));
  }
  return c;
}

std::vector<FpAbGroup> bar_group_cohomology(const GModule& V, Index N) { return cohomology(bar_complex(V, N), N); }

NerveComplex nerve_complex(const FiniteSpace& X, const Covering& cover, const FpAbGroup& V, Index N,
                           NerveCoefficients mode) {
  const Index m = Index(cover.members.size()), n = X.size(), r = V.generator_count();
  NerveComplex out;
  std::vector<std::map<std::vector<Index>, Index>> index(N + 2);
  std::vector<std::vector<std::vector<Index>>> comp(N + 2);  // point -> component per simplex
  for (Index k = 0; k <= N + 1; ++k) {
    out.simplices.emplace_back();
    out.components.emplace_back();
    std::vector<Index> s(k + 1);
    std::iota(s.begin(), s.end(), 0);
    if (k + 1 > m) continue;
    while (true) {
      std::vector<char> in(n, 1);
      for (Index i : s)
        for (Index x = 0; x < n; ++x) in[x] = in[x] && cover.members[i][x];
      std::vector<Index> cmp;
      const Index cnt = count_components(X, in, cmp);
      if (cnt > 0) {
        index[k].emplace(s, Index(out.simplices[k].size()));
        out.simplices[k].push_back(s);
        out.components[k].push_back(mode == NerveCoefficients::Constant ? 1 : cnt);
        comp[k].push_back(std::move(cmp));
      }
      // next (k+1)-subset of 0..m-1
      Index i = k;
      while (i >= 0 && s[i] == m - k - 1 + i) --i;
      if (i < 0) break;
      ++s[i];
      for (Index j = i + 1; j <= k; ++j) s[j] = s[j - 1] + 1;
    }
  }
  // offsets of each simplex's block
  std::vector<std::vector<Index>> off(N + 2);
  for (Index k = 0; k <= N + 1; ++k) {
    Index total = 0;
    for (Index c : out.components[k]) {
      off[k].push_back(total);
      total += c;
    }
    out.complex.groups.push_back(copies(V, total));
  }
  for (Index k = 0; k <= N; ++k) {
    std::vector<Triplet> t;
    for (std::size_t si = 0; si < out.simplices[k + 1].size(); ++si) {
      const auto& s = out.simplices[k + 1][si];
      for (Index i = 0; i <= k + 1; ++i) {
        std::vector<Index> face;
        for (Index j = 0; j <= k + 1; ++j)
          if (j != i) face.push_back(s[j]);
        const Index fi = index[k].at(face);
        const int sign = i % 2 ? -1 : 1;
        // component c of U_s sits inside one component of U_face
        for (Index c = 0; c < out.components[k + 1][si]; ++c) {
          Index fc = 0;
          if (mode == NerveCoefficients::LocallyConstant) {
            Index x = 0;
            while (comp[k + 1][si][x] != c) ++x;
            fc = comp[k][fi][x];
          }
          for (Index a = 0; a < r; ++a)
            t.emplace_back(int((off[k + 1][si] + c) * r + a), int((off[k][fi] + fc) * r + a), Integer(sign));
        }
      }
    }
    out.complex.d.push_back(sparse_from_triplets(out.complex.groups[k + 1]->generator_count(),
                                                 out.complex.groups[k]->generator_count(), t));
  }
  return out;
}

std::vector<FpAbGroup> cech_nerve_cohomology(const FiniteSpace& X, const Covering& cover, const FpAbGroup& V,
                                             Index N, NerveCoefficients mode) {
  return cohomology(nerve_complex(X, cover, V, N, mode).complex, N);
}

}  // namespace cohomolab::oracle
