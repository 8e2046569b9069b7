#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "cohomolab/error.hpp"
#include "cohomolab/finspace/action.hpp"
#include "cohomolab/finspace/space.hpp"

using namespace cohomolab;

namespace {

FiniteSpace sierpinski() { return FiniteSpace::from_relations({"a", "b"}, {{0, 1}}); }

FiniteSpace pseudocircle() {
  return FiniteSpace::from_relations({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

std::vector<char> set_of(const FiniteSpace& X, std::initializer_list<const char*> names) {
  std::vector<char> s(X.size(), 0);
  for (auto n : names) s[*X.index_of(n)] = 1;
  return s;
}

// every preorder on n labelled points
std::vector<FiniteSpace> all_preorders(Index n) {
  std::vector<FiniteSpace> out;
  std::vector<std::pair<Index, Index>> offdiag;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) offdiag.push_back({i, j});
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
  for (unsigned mask = 0; mask < (1u << offdiag.size()); ++mask) {
    std::vector<char> m(n * n, 0);
    for (Index i = 0; i < n; ++i) m[i * n + i] = 1;
    for (std::size_t b = 0; b < offdiag.size(); ++b)
      if (mask >> b & 1) m[offdiag[b].first * n + offdiag[b].second] = 1;
    bool trans = true;
    for (Index i = 0; i < n && trans; ++i)
      for (Index j = 0; j < n && trans; ++j)
        for (Index k = 0; k < n && trans; ++k)
          if (m[i * n + j] && m[j * n + k] && !m[i * n + k]) trans = false;
    if (trans) out.emplace_back(labels, m);
  }
  return out;
}

// components by explicit graph search over all pairs
Index component_count_oracle(const FiniteSpace& X, const SubspaceOfPower& S) {
  std::vector<Index> pts;
  for (Index c = 0; c < S.codec.count(); ++c)
    if (S.member[c]) pts.push_back(c);
  auto comparable = [&](Index a, Index b) {
    auto ta = S.codec.decode(a), tb = S.codec.decode(b);
    bool le = true, ge = true;
    for (Index i = 0; i < S.arity; ++i) {
      le = le && X.leq(ta[i], tb[i]);
      ge = ge && X.leq(tb[i], ta[i]);
    }
    return le || ge;
  };
  std::vector<char> seen(pts.size(), 0);
  Index comps = 0;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < pts.size(); ++v)
        if (!seen[v] && comparable(pts[u], pts[v])) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
  }
  return comps;
}

}  // namespace

TEST_CASE("preorder validation") {
  CHECK_THROWS_AS(FiniteSpace({"a", "b"}, {1, 1, 0, 0}), Error);
  CHECK_THROWS_AS(FiniteSpace({"a", "b", "c"}, {1, 1, 0, 0, 1, 1, 0, 0, 1}), Error);
  auto P = pseudocircle();
  CHECK(P.leq(0, 2));
  CHECK_FALSE(P.leq(2, 0));
  CHECK_FALSE(P.comparable(0, 1));
  CHECK(all_preorders(3).size() == 29);
  CHECK(all_preorders(4).size() == 355);
}

TEST_CASE("power space") {
  auto pt = FiniteSpace::discrete(1);
  CHECK(power_space(pt, 3).size() == 1);

  auto D = power_space(FiniteSpace::discrete(2), 2);
  CHECK(D.size() == 4);
  CHECK(D.is_discrete());

  auto S2 = power_space(sierpinski(), 2);
  REQUIRE(S2.size() == 4);
  // closed points are minimal elements: only (a,a)
  Index closed = 0;
  for (Index x = 0; x < 4; ++x) {
    bool minimal = true;
    for (Index y = 0; y < 4; ++y)
      if (y != x && S2.leq(y, x)) minimal = false;
    closed += minimal;
  }
  CHECK(closed == 1);
  CHECK(S2.label(0) == "(a,a)");
  CHECK(S2.leq(0, 1));
  CHECK(S2.leq(1, 3));
  CHECK_FALSE(S2.comparable(1, 2));

  Index old = size_limit();
  set_size_limit(100);
  CHECK_THROWS_AS(power_space(FiniteSpace::discrete(4), 4), Error);
  set_size_limit(old);
}

TEST_CASE("minimal open cover") {
  auto c3 = minimal_open_cover(FiniteSpace::discrete(3));
  CHECK(c3.members.size() == 3);

  auto S = sierpinski();
  auto cs = minimal_open_cover(S);
  REQUIRE(cs.members.size() == 2);
  CHECK(cs.members[0] == set_of(S, {"a", "b"}));
  CHECK(cs.members[1] == set_of(S, {"b"}));

  auto P = pseudocircle();
  auto cp = minimal_open_cover(P);
  std::set<std::vector<char>> got(cp.members.begin(), cp.members.end());
  std::set<std::vector<char>> want{set_of(P, {"c"}), set_of(P, {"d"}), set_of(P, {"a", "c", "d"}),
                                   set_of(P, {"b", "c", "d"})};
  CHECK(got == want);
  CHECK(cp.members.size() == 4);

  Covering bad;
  bad.members = {set_of(P, {"a"})};
  CHECK_THROWS_AS(bad.validate(P), Error);
  Covering missing;
  missing.members = {set_of(P, {"a", "c", "d"})};
  CHECK_THROWS_AS(missing.validate(P), Error);
  Covering empty;
  CHECK_THROWS_AS(empty.validate(P), Error);
}

TEST_CASE("diagonal neighbourhood") {
  auto S = sierpinski();
  for (Index n = 0; n < 4; ++n)
    CHECK(diagonal_neighborhood(S, trivial_cover(S), n).count() == checked_power(2, n + 1));
  auto P = pseudocircle();
  CHECK(diagonal_neighborhood(P, minimal_open_cover(P), 0).count() == 4);

  Covering c;
  c.members = {set_of(S, {"b"}), set_of(S, {"a", "b"})};
  CHECK(diagonal_neighborhood(S, c, 1).count() == 4);

  // pseudocircle minimal cover, n = 1: 1 + 1 + 9 + 9 minus the shared {c,d}^2 pairs
  auto u1 = diagonal_neighborhood(P, minimal_open_cover(P), 1);
  CHECK(u1.count() == 14);
}

TEST_CASE("minimal cover gives the smallest neighbourhood, exhaustively") {
  for (Index n_pts = 1; n_pts <= 4; ++n_pts)
    for (const auto& X : all_preorders(n_pts)) {
      std::vector<std::vector<char>> opens;
      for (unsigned m = 1; m < (1u << n_pts); ++m) {
        std::vector<char> s(n_pts);
        for (Index x = 0; x < n_pts; ++x) s[x] = m >> x & 1;
        if (X.is_open(s)) opens.push_back(s);
      }
      auto mc = minimal_open_cover(X);
      std::vector<SubspaceOfPower> minimal;
      for (Index n = 0; n <= 2; ++n) minimal.push_back(diagonal_neighborhood(X, mc, n));
      for (unsigned sub = 1; sub < (1u << opens.size()); ++sub) {
        Covering c;
        for (std::size_t i = 0; i < opens.size(); ++i)
          if (sub >> i & 1) c.members.push_back(opens[i]);
        std::vector<char> un(n_pts, 0);
        for (auto& u : c.members)
          for (Index x = 0; x < n_pts; ++x) un[x] |= u[x];
        if (std::count(un.begin(), un.end(), char(1)) != n_pts) continue;
        for (Index n = 1; n <= 2; ++n) {
          auto big = diagonal_neighborhood(X, c, n);
          bool ok = true;
          for (Index t = 0; t < big.codec.count(); ++t) ok = ok && (!minimal[n].member[t] || big.member[t]);
          for (Index x = 0; x < n_pts; ++x) {
            std::vector<Index> diag(n + 1, x);
            ok = ok && big.member[big.codec.encode(diag)];
          }
          if (!ok) FAIL("containment fails");
        }
      }
    }
}

TEST_CASE("connected components") {
  auto D = FiniteSpace::discrete(3);
  auto cd = connected_components(D, SubspaceOfPower::full(D, 2));
  CHECK(cd.count == 9);

  auto cone = FiniteSpace::from_relations({"a", "b", "t"}, {{0, 2}, {1, 2}});
  CHECK(connected_components(cone, SubspaceOfPower::full(cone, 3)).count == 1);

  auto P = pseudocircle();
  auto u1 = diagonal_neighborhood(P, minimal_open_cover(P), 1);
  // (a,a) <= (c,c) >= (b,b) ties the four blocks U_x^2 together
  CHECK(component_count_oracle(P, u1) == 1);
  CHECK(connected_components(P, u1).count == 1);

  // random subsets (not up-closed) against the pairwise oracle
  std::mt19937 rng(7);
  for (const auto& X : all_preorders(3))
    for (int trial = 0; trial < 4; ++trial) {
      auto S = SubspaceOfPower::full(X, 2);
      for (auto& m : S.member) m = rng() % 3 != 0;
      CHECK(connected_components(X, S).count == component_count_oracle(X, S));
      auto N = diagonal_neighborhood(X, minimal_open_cover(X), 2);
      CHECK(connected_components(X, N).count == component_count_oracle(X, N));
    }

  // masked: first coordinate frozen
  auto S = SubspaceOfPower::full(cone, 2);
  auto masked = connected_components(cone, S, {0, 1});
  CHECK(masked.count == 3);
}

TEST_CASE("contractibility certificates") {
  auto pt = FiniteSpace::discrete(1);
  auto c0 = contractibility_certificate(pt);
  REQUIRE(c0);
  CHECK(c0->empty());
  CHECK(verify_certificate(pt, *c0));

  auto cone = FiniteSpace::from_relations({"a", "b", "t"}, {{0, 2}, {1, 2}});
  auto cc = contractibility_certificate(cone);
  REQUIRE(cc);
  CHECK(cc->size() == 2);
  CHECK(verify_certificate(cone, *cc));

  CHECK_FALSE(contractibility_certificate(pseudocircle()));
  CHECK_FALSE(contractibility_certificate(FiniteSpace::discrete(2)));

  // twins collapse
  auto twin = FiniteSpace::from_relations({"a", "b"}, {{0, 1}, {1, 0}});
  auto ct = contractibility_certificate(twin);
  REQUIRE(ct);
  CHECK(verify_certificate(twin, *ct));

  // tampered certificate is rejected
  auto bad = *cc;
  std::swap(bad[0].point, bad[0].witness);
  CHECK_FALSE(verify_certificate(cone, bad));

  // replay agrees with existence over all small preorders; every space with a maximum dismantles
  for (Index n = 1; n <= 4; ++n)
    for (const auto& X : all_preorders(n)) {
      auto c = contractibility_certificate(X);
      if (c) CHECK(verify_certificate(X, *c));
      bool has_max = false;
      for (Index m = 0; m < n && !has_max; ++m) {
        bool top = true;
        for (Index x = 0; x < n; ++x) top = top && X.leq(x, m);
        has_max = top;
      }
      if (has_max) CHECK(c.has_value());
    }
}

TEST_CASE("group actions") {
  auto P = pseudocircle();
  CHECK(GroupAction::trivial(P).is_trivial());

  ActionSpec swap_ab;
  swap_ab.element_names = {"e", "s"};
  swap_ab.table = {{0, 1}, {1, 0}};
  swap_ab.permutations = {{0, 1, 2, 3}, {1, 0, 2, 3}};
  GroupAction g1(swap_ab, P);
  CHECK(g1.order() == 2);
  CHECK(g1.stabilizes(minimal_open_cover(P)));

  auto both = swap_ab;
  both.permutations[1] = {1, 0, 3, 2};
  GroupAction g2(both, P);
  CHECK(g2.is_free());
  auto u2 = diagonal_neighborhood(P, minimal_open_cover(P), 2);
  CHECK(g2.stabilizes(u2));

  auto ac = swap_ab;
  ac.permutations[1] = {2, 1, 0, 3};
  CHECK_THROWS_AS(GroupAction(ac, P), Error);
  try {
    GroupAction bad(ac, P);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOrderAutomorphism);
  }

  auto notgroup = swap_ab;
  notgroup.table = {{0, 1}, {1, 1}};
  try {
    GroupAction bad(notgroup, P);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAGroup);
  }

  auto nothom = swap_ab;
  nothom.permutations[0] = {1, 0, 2, 3};
  try {
    GroupAction bad(nothom, P);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHomomorphism);
  }

  Covering skew;
  skew.members = {set_of(P, {"a", "c", "d"}), set_of(P, {"b", "c", "d"}), set_of(P, {"c", "d"})};
  CHECK(g1.stabilizes(skew));
  Covering lopsided;
  lopsided.members = {set_of(P, {"a", "c", "d"}), set_of(P, {"b", "c"}), set_of(P, {"d"})};
  CHECK_FALSE(GroupAction(swap_ab, P).stabilizes(lopsided));

  // every order automorphism keeps the minimal cover
  for (Index n = 1; n <= 4; ++n)
    for (const auto& X : all_preorders(n)) {
      std::vector<Index> p(n);
      for (Index i = 0; i < n; ++i) p[i] = i;
      do {
        bool aut = true;
        for (Index x = 0; x < n && aut; ++x)
          for (Index y = 0; y < n && aut; ++y) aut = X.leq(x, y) == X.leq(p[x], p[y]);
        if (!aut) continue;
        // cyclic group generated by p
        std::vector<std::vector<Index>> powers{std::vector<Index>(n)};
        for (Index i = 0; i < n; ++i) powers[0][i] = i;
        while (true) {
          std::vector<Index> next(n);
          for (Index i = 0; i < n; ++i) next[i] = p[powers.back()[i]];
          if (next == powers[0]) break;
          powers.push_back(next);
        }
        ActionSpec s;
        const Index k = Index(powers.size());
        for (Index i = 0; i < k; ++i) {
          s.element_names.push_back("g" + std::to_string(i));
          std::vector<Index> row(k);
          for (Index j = 0; j < k; ++j) row[j] = (i + j) % k;
          s.table.push_back(row);
        }
        s.permutations = powers;
        GroupAction act(s, X);
        CHECK(act.stabilizes(minimal_open_cover(X)));
      } while (std::next_permutation(p.begin(), p.end()));
    }
}
