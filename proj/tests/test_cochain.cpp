#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cohomolab/cochain/cochain.hpp"
#include "cohomolab/error.hpp"
#include "cohomolab/fpabelian/smith.hpp"

using namespace cohomolab;

namespace {

using SpacePtr = std::shared_ptr<const FiniteSpace>;
using ModulePtr = std::shared_ptr<const GModule>;

SpacePtr space(FiniteSpace X) { return std::make_shared<const FiniteSpace>(std::move(X)); }

SpacePtr sierpinski() { return space(FiniteSpace::from_relations({"a", "b"}, {{0, 1}})); }

ModulePtr trivial_module(const FiniteSpace& X, std::vector<Integer> orders) {
  return std::make_shared<const GModule>(GModule::trivial(FpAbGroup::diagonal(orders), GroupAction::trivial(X)));
}

// Z/n acting on itself (discrete) by translation
ActionSpec cyclic_regular(Index n) {
  ActionSpec s;
  for (Index i = 0; i < n; ++i) {
    s.element_names.push_back("g" + std::to_string(i));
    std::vector<Index> row(n), perm(n);
    for (Index j = 0; j < n; ++j) row[j] = perm[j] = (i + j) % n;
    s.table.push_back(row);
    s.permutations.push_back(perm);
  }
  return s;
}

std::vector<FiniteSpace> small_spaces() {
  return {FiniteSpace::discrete(1),
          FiniteSpace::discrete(2),
          FiniteSpace::from_relations({"a", "b"}, {{0, 1}}),
          FiniteSpace::from_relations({"a", "b", "t"}, {{0, 2}, {1, 2}}),
          FiniteSpace::from_relations({"b", "x", "y"}, {{0, 1}, {0, 2}}),
          FiniteSpace::from_relations({"a", "b", "c"}, {{0, 1}, {1, 2}}),
          FiniteSpace::discrete(3)};
}

std::vector<Region> regions_for(const FiniteSpace& X, Index arity) {
  std::vector<Region> r{Region::none(), Region::full()};
  r.push_back(Region::of(diagonal_neighborhood(X, minimal_open_cover(X), arity - 1)));
  r.push_back(Region::of(diagonal_neighborhood(X, trivial_cover(X), arity - 1)));
  return r;
}

// ambient coboundary straight from the formula, independent of tuple_operator
IntVector ambient_coboundary(const FiniteSpace& X, Index m, Index arity, const IntVector& f) {
  TupleCodec src(X.size(), arity), tgt(X.size(), arity + 1);
  IntVector out = zero_vector(tgt.count() * m);
  for (Index t = 0; t < tgt.count(); ++t) {
    auto tt = tgt.decode(t);
    for (Index i = 0; i <= arity; ++i) {
      auto face = tt;
      face.erase(face.begin() + i);
      Index s = src.encode(face);
      for (Index v = 0; v < m; ++v) out[t * m + v] += (i % 2 ? -1 : 1) * f[s * m + v];
    }
  }
  return out;
}

IntVector random_vector(std::mt19937& rng, Index n) {
  IntVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = Integer(int(rng() % 7) - 3);
  return v;
}

// lattice generated by the columns of A plus relation columns, as an HNF
IntMatrix span_with(const IntMatrix& A, const std::vector<Integer>& orders) {
  std::vector<Index> tors;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) tors.push_back(Index(i));
  IntMatrix R = zero_matrix(A.rows(), Index(tors.size()));
  for (std::size_t k = 0; k < tors.size(); ++k) R(tors[k], Index(k)) = orders[tors[k]];
  return hermite_column_form(hcat(A, R));
}

}  // namespace

TEST_CASE("cochain group examples") {
  auto pt = space(FiniteSpace::discrete(1));
  auto Zpt = trivial_module(*pt, {0});
  for (Index k = 1; k <= 4; ++k)
    CHECK(CochainGroup::build(pt, Zpt, k, Region::full(), false)->group().invariants().str() == "Z");

  auto two = space(FiniteSpace::discrete(2));
  CHECK(CochainGroup::build(two, trivial_module(*two, {0}), 1, Region::full(), false)->group().invariants().str() ==
        "Z^2");

  auto S = sierpinski();
  CHECK(CochainGroup::build(S, trivial_module(*S, {0}), 1, Region::full(), false)->group().invariants().str() ==
        "Z");
  auto A = CochainGroup::build(S, trivial_module(*S, {0, 2}), 2, Region::none(), false);
  CHECK(A->generator_count() == 8);
  CHECK(A->group().invariants().free_rank == 4);
  CHECK(A->group().invariants().torsion.size() == 4);

  auto bad = diagonal_neighborhood(*S, minimal_open_cover(*S), 2);
  CHECK_THROWS_AS(CochainGroup::build(S, trivial_module(*S, {0}), 2, Region::of(bad), false), Error);
}

TEST_CASE("differential examples") {
  auto two = space(FiniteSpace::discrete(2));
  auto Z = trivial_module(*two, {0});
  auto A0 = CochainGroup::build(two, Z, 1, Region::none(), false);
  auto A1 = CochainGroup::build(two, Z, 2, Region::none(), false);
  auto d = simplicial_differential(*A0, *A1);

  IntVector c(2);
  c << 5, 5;
  CHECK(is_zero(d.apply(c)));

  IntVector f(2);
  f << 1, 0;  // f(u) = 1, f(v) = 0
  IntVector df = A1->values(d.apply(f));
  // (u,v) has code 1: f(v) - f(u)
  CHECK(df[1] == -1);
  CHECK(df[2] == 1);
  CHECK(df[0] == 0);
  CHECK(df[3] == 0);
}

TEST_CASE("d o d = 0 and agreement with the ambient formula") {
  std::mt19937 rng(11);
  const std::vector<std::vector<Integer>> Vs{{0}, {2}, {0, 2}};
  for (const auto& X0 : small_spaces()) {
    auto X = space(X0);
    for (const auto& V : Vs) {
      auto M = trivial_module(*X, V);
      const Index m = Index(V.size());
      for (std::size_t r = 0; r < 4; ++r) {
        std::vector<CochainGroupPtr> A;
        for (Index k = 1; k <= 5; ++k) A.push_back(CochainGroup::build(X, M, k, regions_for(*X, k)[r], false));
        std::vector<GroupMap> d;
        for (Index k = 0; k + 1 < Index(A.size()); ++k) d.push_back(simplicial_differential(*A[k], *A[k + 1]));
        for (Index k = 0; k + 1 < Index(d.size()); ++k) CHECK(d[k + 1].after(d[k]).is_zero());
        for (Index k = 0; k < Index(d.size()); ++k) {
          IntVector x = random_vector(rng, A[k]->generator_count());
          IntVector lhs = A[k + 1]->values(d[k].apply(x));
          IntVector rhs = ambient_coboundary(*X, m, k + 1, A[k]->values(x));
          CHECK(A[k + 1]->ambient_group()->equal_elements(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("inclusion chain of continuity conditions") {
  for (const auto& X0 : small_spaces()) {
    auto X = space(X0);
    auto M = trivial_module(*X, {0, 3});
    for (Index k = 1; k <= 4; ++k) {
      auto c = CochainGroup::build(X, M, k, Region::full(), false);
      auto triv = CochainGroup::build(X, M, k, Region::of(diagonal_neighborhood(*X, trivial_cover(*X), k - 1)), false);
      auto mc = minimal_open_cover(*X);
      auto germ = CochainGroup::build(X, M, k, Region::of(diagonal_neighborhood(*X, mc, k - 1)), false);
      auto all = CochainGroup::build(X, M, k, Region::none(), false);
      CHECK(triv->contains(*c));
      CHECK(c->contains(*triv));
      CHECK(germ->contains(*c));
      CHECK(all->contains(*germ));
      // any covering: between A_c and the minimal one
      Covering half = mc;
      if (half.members.size() > 1) {
        std::vector<char> un(X->size(), 0);
        for (auto& u : half.members)
          for (Index x = 0; x < X->size(); ++x) un[x] |= u[x];
        half.members.push_back(un);
        auto cr = CochainGroup::build(X, M, k, Region::of(diagonal_neighborhood(*X, half, k - 1)), false);
        CHECK(cr->contains(*c));
        CHECK(germ->contains(*cr));
      }
    }
  }
}

TEST_CASE("group action on cochains") {
  auto two = space(FiniteSpace::discrete(2));
  ActionSpec swap = cyclic_regular(2);
  GroupAction G(swap, *two);
  auto M = std::make_shared<const GModule>(GModule::trivial(FpAbGroup::free(1), G));
  auto A0 = CochainGroup::build(two, M, 1, Region::full(), false);
  IntVector ind_u(2);
  ind_u << 1, 0;
  IntVector moved = act_on_cochain(*A0, 1, ind_u);
  CHECK(moved[0] == 0);
  CHECK(moved[1] == 1);
  CHECK(act_on_cochain(*A0, 0, ind_u) == ind_u);

  // fixed subgroup: constants on the orbit
  auto F = fixed_subgroup(A0);
  CHECK(F->group().invariants().str() == "Z");
  for (Index g = 0; g < 2; ++g) {
    IntVector f = inclusion_map(*F, *A0).apply(F->unit(0));
    CHECK(act_on_cochain(*A0, g, f) == f);
  }

  // sign action: f(v) = -f(u)
  IntMatrix minus(1, 1);
  minus(0, 0) = -1;
  auto Ms = std::make_shared<const GModule>(
      GModule::from_generators(FpAbGroup::free(1), G, std::vector<Index>{1}, std::vector<IntMatrix>{minus}));
  auto B0 = CochainGroup::build(two, Ms, 1, Region::full(), false);
  auto FB = fixed_subgroup(B0);
  CHECK(FB->group().invariants().str() == "Z");
  IntVector w = inclusion_map(*FB, *B0).apply(FB->unit(0));
  CHECK(w[0] == -w[1]);
  CHECK(w[0] != 0);
}

TEST_CASE("module validation") {
  auto two = space(FiniteSpace::discrete(2));
  GroupAction G(cyclic_regular(2), *two);
  IntMatrix twice(1, 1);
  twice(0, 0) = 2;
  CHECK_THROWS_AS(GModule::from_generators(FpAbGroup::free(1), G, {1}, {twice}), Error);
  // x -> 2x on Z/3 has order 2 as an automorphism: fine
  CHECK_NOTHROW(GModule::from_generators(FpAbGroup::diagonal({3}), G, {1}, {twice}));
  // x -> 2x on Z/5 has order 4: violates s^2 = e
  try {
    GModule::from_generators(FpAbGroup::diagonal({5}), G, {1}, {twice});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHomomorphism);
  }
  IntMatrix half(1, 1);
  half(0, 0) = 1;
  IntMatrix mix(2, 2);
  mix << 1, 0, 1, 1;  // Z -> Z/2 component: well defined on Z + Z/2
  CHECK_NOTHROW(GModule::from_generators(FpAbGroup::diagonal({0, 2}), G, {1}, {mix}));
  IntMatrix bad(2, 2);
  bad << 1, 1, 0, 1;  // Z/2 generator into Z: not well defined
  CHECK_THROWS_AS(GModule::from_generators(FpAbGroup::diagonal({0, 2}), G, {1}, {bad}), Error);
}

TEST_CASE("fixed subgroups against the kernel of g.f - f") {
  // dense ambient action matrix from the formula
  auto ambient_action = [](const FiniteSpace& X, const GModule& M, Index arity, Index g) {
    const GroupAction& G = M.group();
    TupleCodec c(X.size(), arity);
    const Index m = M.rank();
    IntMatrix P = zero_matrix(c.count() * m, c.count() * m);
    for (Index t = 0; t < c.count(); ++t) {
      auto tt = c.decode(t);
      for (auto& x : tt) x = G.act(G.inv(g), x);
      Index s = c.encode(tt);
      P.block(t * m, s * m, m, m) = M.matrix(g);
    }
    return P;
  };

  struct Case {
    Index n;
    std::vector<Integer> V;
    bool sign;
  };
  for (Case cs : {Case{2, {0}, false}, Case{2, {0}, true}, Case{2, {2}, false}, Case{3, {0}, false},
                  Case{2, {0, 2}, true}, Case{3, {3}, true}, Case{4, {0}, false}}) {
    auto X = space(FiniteSpace::discrete(cs.n));
    GroupAction G(cyclic_regular(cs.n), *X);
    const Index m = Index(cs.V.size());
    IntMatrix gen = identity_matrix(m);
    if (cs.sign) gen = -gen;
    if (cs.sign && cs.n == 3) gen = identity_matrix(m);  // negation has order 2, not 3
    auto M = std::make_shared<const GModule>(
        GModule::from_generators(FpAbGroup::diagonal(cs.V), G, {1}, std::vector<IntMatrix>{gen}));
    for (Index k = 1; k <= 2; ++k) {
      auto A = CochainGroup::build(X, M, k, Region::none(), false);
      auto F = fixed_subgroup(A);
      // kernel of stacked (P_g - I) modulo relations
      TupleCodec c(X->size(), k);
      const Index N = c.count() * m;
      std::vector<Integer> amb_orders;
      for (Index t = 0; t < c.count(); ++t) amb_orders.insert(amb_orders.end(), cs.V.begin(), cs.V.end());
      std::vector<Index> tors;
      for (Index i = 0; i < N; ++i)
        if (amb_orders[i] != 0) tors.push_back(i);
      const Index T = Index(tors.size());
      IntMatrix K = zero_matrix(G.order() * N, N + G.order() * T);
      for (Index g = 0; g < G.order(); ++g) {
        K.block(g * N, 0, N, N) = ambient_action(*X, *M, k, g) - identity_matrix(N);
        for (Index j = 0; j < T; ++j) K(g * N + tors[j], N + g * T + j) = amb_orders[tors[j]];
      }
      IntMatrix ker = kernel_basis(K);
      IntMatrix oracle = span_with(IntMatrix(ker.topRows(N)), amb_orders);
      IntMatrix ours = span_with(to_dense(F->inclusion().matrix()), amb_orders);
      bool same = oracle.rows() == ours.rows() && oracle.cols() == ours.cols() && oracle == ours;
      CHECK(same);
    }
  }
}

TEST_CASE("action respects the differential and the germ model check") {
  // pseudocircle with the swap of a,b and of c,d
  auto P = space(FiniteSpace::from_relations({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  ActionSpec s;
  s.element_names = {"e", "s"};
  s.table = {{0, 1}, {1, 0}};
  s.permutations = {{0, 1, 2, 3}, {1, 0, 3, 2}};
  GroupAction G(s, *P);
  IntMatrix mix(2, 2);
  mix << 1, 0, 1, 1;
  auto M = std::make_shared<const GModule>(GModule::from_generators(FpAbGroup::diagonal({0, 2}), G, {1}, {mix}));
  std::mt19937 rng(5);
  auto mc = minimal_open_cover(*P);
  for (Index k = 1; k <= 3; ++k) {
    for (const Region& r : {Region::none(), Region::full(), Region::of(diagonal_neighborhood(*P, mc, k - 1))}) {
      auto A = CochainGroup::build(P, M, k, r, false);
      Region r1 = r.kind == Region::Subspace ? Region::of(diagonal_neighborhood(*P, mc, k)) : r;
      auto B = CochainGroup::build(P, M, k + 1, r1, false);
      auto d = simplicial_differential(*A, *B);
      for (int trial = 0; trial < 3; ++trial) {
        IntVector f = random_vector(rng, A->generator_count());
        CHECK(B->group().equal_elements(d.apply(act_on_cochain(*A, 1, f)), act_on_cochain(*B, 1, d.apply(f))));
      }
      auto F = fixed_subgroup(A);
      auto E = CochainGroup::build(P, M, k, r, true);
      CHECK(F->contains(*E));
      CHECK(E->contains(*F));
      CHECK(A->contains(*E));
    }
  }
  // a region the group does not preserve
  Covering lopsided;
  std::vector<char> acd{1, 0, 1, 1}, bc{0, 1, 1, 0}, d{0, 0, 0, 1};
  lopsided.members = {acd, bc, d};
  CHECK_THROWS_AS(CochainGroup::build(P, M, 2, Region::of(diagonal_neighborhood(*P, lopsided, 1)), true), Error);
}
