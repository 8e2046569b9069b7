#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cohomolab/bicomplex/bridge.hpp"
#include "cohomolab/bicomplex/column.hpp"
#include "cohomolab/cli/model.hpp"
#include "cohomolab/error.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace cohomolab;
using suite::expected_total;
using suite::inv;
using suite::model;

namespace {

DoubleComplex complex_of(const Model& m, bool eq, Corruption c = {}) {
  return DoubleComplex(m.X, m.M, m.covering("minimal"), {eq, 3, c});
}

void require_all(const std::vector<Check>& cs) {
  for (const Check& c : cs) {
    INFO(c.name << ": " << c.witness);
    CHECK(c.ok);
  }
}

bool any_failure(const std::vector<Check>& cs) {
  for (const Check& c : cs)
    if (!c.ok) return true;
  return false;
}

}  // namespace

TEST_CASE("cyclic oracle reproduces textbook values") {
  CHECK(brute::cyclic_cohomology(2, 1, 0, 2) == inv(0, {2}));
  CHECK(brute::cyclic_cohomology(2, 1, 0, 1) == inv(0));
  CHECK(brute::cyclic_cohomology(4, -1, 0, 0) == inv(0));
  CHECK(brute::cyclic_cohomology(4, -1, 0, 1) == inv(0, {2}));
  CHECK(brute::cyclic_cohomology(5, 1, 3, 4) == inv(0));
}

TEST_CASE("suite models: structure, augmentations, rows and total cohomology") {
  for (const auto& name : suite::models)
    for (bool eq : {false, true}) {
      CAPTURE(name);
      CAPTURE(eq);
      const Model m = model(name);
      const DoubleComplex dc = complex_of(m, eq);
      require_all(structural_checks(dc));
      require_all(augmentation_checks(dc));
      require_all(row_exactness_checks(dc));
      const IsoReport iso = row_augmentation_iso(dc);
      CHECK(iso.ok());
      const auto want = expected_total(name, eq);
      REQUIRE(iso.degrees.size() == want.size());
      for (std::size_t n = 0; n < want.size(); ++n) {
        CAPTURE(n);
        CHECK(iso.degrees[n].target.str() == want[n].str());
        CHECK(iso.degrees[n].source == iso.degrees[n].target);
      }
    }
}

TEST_CASE("psi bridge: one sign profile for every cocycle") {
  for (const auto& name : suite::models)
    for (bool eq : {false, true}) {
      CAPTURE(name);
      CAPTURE(eq);
      const DoubleComplex dc = complex_of(model(name), eq);
      const PsiSurvey s = psi_survey(dc, 3);
      INFO(s.witness);
      CHECK(s.ok);
      CHECK(std::find(s.common.begin(), s.common.end(), "-(-1)^p") != s.common.end());
    }
  // integral coefficients with cocycles in odd degree pin the sign
  for (const auto& name : {"discrete2_swap", "regular_z3", "regular_z4"}) {
    CAPTURE(name);
    const PsiSurvey s = psi_survey(complex_of(model(name), true), 3);
    CHECK(s.common == std::vector<std::string>{"-(-1)^p"});
    CHECK(s.profile == "-(-1)^p");
  }
}

TEST_CASE("psi bridge: element found satisfies D(c) = j(f) - i(f)") {
  const DoubleComplex dc = complex_of(model("regular_z4"), true);
  for (Index n = 1; n <= 3; ++n)
    for (const IntVector& f : cocycle_generators(dc.col_d(n))) {
      const PsiResult r = psi_bridge(dc, n, f);
      REQUIRE(r.ok);
      const IntVector inc = inclusion_map(dc.col_source(n), dc.row_source(n)).apply(f);
      const IntVector lhs = dc.total_d(n - 1).apply(r.c);
      const IntVector rhs = dc.total_j(n).apply(f) - dc.total_i(n).apply(inc);
      CHECK(dc.total_group(n)->is_zero_element(lhs - rhs));
    }
}

TEST_CASE("psi bridge rejects non-cocycles") {
  const DoubleComplex dc = complex_of(model("discrete2_swap"), false);
  IntVector f = zero_vector(dc.col_source(1).generator_count());
  bool found = false;
  for (Index i = 0; i < f.size() && !found; ++i) {
    f.setZero();
    f[i] = 1;
    found = !dc.col_source(2).group().is_zero_element(dc.col_d(1).apply(f));
  }
  REQUIRE(found);
  CHECK_THROWS_AS(psi_bridge(dc, 1, f), Error);
  try {
    psi_bridge(dc, 1, f);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACocycle);
  }
}

TEST_CASE("sign corruption breaks anticommutativity, contraction and psi") {
  Corruption c;
  c.sign = true;
  const DoubleComplex dc = complex_of(model("regular_z3"), true, c);
  CHECK(any_failure(structural_checks(dc)));
  CHECK(any_failure(row_exactness_checks(dc)));
  const PsiSurvey s = psi_survey(dc, 3);
  CHECK_FALSE(s.ok);
  CHECK(s.witness.find("D(c) - (j(f) - i(f))") != std::string::npos);
}

TEST_CASE("differential corruption is caught with a witness") {
  Corruption c;
  c.differential = true;
  const DoubleComplex dc = complex_of(model("cone2_swap"), false, c);
  CHECK_FALSE(dc.corruption_note().empty());
  bool caught = false;
  for (const Check& k : structural_checks(dc))
    if (!k.ok) {
      caught = true;
      CHECK(k.witness.find("generator") != std::string::npos);
    }
  CHECK(caught);
}

TEST_CASE("coverings must be G-invariant in the equivariant setting") {
  const Model m = model("cone2_swap");
  Covering lopsided{"lopsided", {{1, 1, 1}, {1, 0, 1}}};
  CHECK_NOTHROW(DoubleComplex(m.X, m.M, lopsided, {false, 2, {}}));
  try {
    DoubleComplex(m.X, m.M, lopsided, {true, 2, {}});
    FAIL("expected NotGInvariantCovering");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotGInvariantCovering);
  }
}

TEST_CASE("equivariantization") {
  for (const auto& name : {"discrete2_swap", "regular_z3", "regular_klein"}) {
    CAPTURE(name);
    const Model m = model(name);
    const DoubleComplex plain = complex_of(m, false), eq = complex_of(m, true);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (Index p = 0; p <= 1; ++p) {
      const Index q = 1;
      const CochainGroup& src = plain.grid(p, q);
      const CochainGroup& tgt = eq.grid(p, q);
      const GroupMap E = equivariantization(src, tgt);
      const GroupMap up = inclusion_map(tgt, src);
      // equivariant input comes back unchanged
      for (int t = 0; t < 5; ++t) {
        IntVector r = zero_vector(tgt.generator_count());
        for (Index i = 0; i < r.size(); ++i) r[i] = coef(rng);
        CHECK(tgt.group().is_zero_element(E.apply(up.apply(r)) - r));
      }
      // vertical differential commutes with it when the action is free
      const GroupMap E1 = equivariantization(plain.grid(p, q + 1), eq.grid(p, q + 1));
      for (int t = 0; t < 5; ++t) {
        IntVector f = zero_vector(src.generator_count());
        for (Index i = 0; i < f.size(); ++i) f[i] = coef(rng);
        const IntVector a = eq.dv(p, q).apply(E.apply(f));
        const IntVector b = E1.apply(plain.dv(p, q).apply(f));
        CHECK(eq.grid(p, q + 1).group().is_zero_element(a - b));
      }
    }
  }
  const Model cone = model("cone2_swap");
  const DoubleComplex plain = complex_of(cone, false), eq = complex_of(cone, true);
  try {
    equivariantization(plain.grid(0, 0), eq.grid(0, 0));
    FAIL("expected NotFreeAction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFreeAction);
  }
}

TEST_CASE("column analysis") {
  SUBCASE("cone: continuous column is acyclic above degree 0") {
    const Model m = model("cone2_swap");
    for (Index p = 0; p <= 1; ++p) {
      CAPTURE(p);
      const ColumnReport r = column_analysis(m.X, m.M, m.covering("minimal"), p, 2);
      require_all(r.contraction);
      require_all(r.kernels);
      require_all(r.sequences);
      CHECK(r.inclusion.ok());
      for (Index q = 1; q <= 2; ++q) CHECK(r.continuous[q].trivial());
    }
  }
  SUBCASE("pseudocircle and basepoints") {
    const Model m = model("pseudocircle_swap");
    for (Index star = 0; star < m.X->size(); ++star) {
      const ColumnReport r = column_analysis(m.X, m.M, m.covering("minimal"), 0, 2, star);
      CHECK(r.checks_ok());
      CHECK(r.basepoint == star);
    }
    try {
      column_analysis(m.X, m.M, m.covering("minimal"), 0, 2, m.X->size());
      FAIL("expected BasepointInvalid");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BasepointInvalid);
    }
  }
}

TEST_CASE("model files") {
  const Model m = parse_model(
      "[space]\npoints a b t\na < t\nb < t\n"
      "[group]\ngenerator s = (a b)\n"
      "[module]\nV = Z + Z/2\naction s = 1 0 ; 1 1\n"
      "[covering]\ncover top = {a b t}\ndefault = top\n"
      "[bounds]\nN = 2\nseed = 9\n",
      "inline");
  CHECK(m.X->size() == 3);
  CHECK(m.group().order() == 2);
  CHECK(m.M->rank() == 2);
  CHECK(m.default_covering == "top");
  CHECK(m.bound == 2);
  CHECK(m.seed == 9);
  CHECK(m.covering("top").members.size() == 1);
  CHECK(m.covering("minimal").members.size() == 3);

  auto fails = [](const std::string& text, ErrorKind kind, const std::string& where) {
    try {
      parse_model(text, "bad");
      FAIL("accepted: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
      CHECK(std::string(e.what()).find(where) != std::string::npos);
    }
  };
  fails("[space]\npoints a\n[module]\nV = Q\n", ErrorKind::ParseError, "bad:4:");
  fails("[space]\npoints a b\na < c\n", ErrorKind::ParseError, "bad:3:");
  fails("[space]\npoints a b\n[covering]\ncover u = {a}\n", ErrorKind::NotACovering, "bad:");
  CHECK_THROWS(m.covering("nope"));
}
