#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cohomolab/error.hpp"
#include "cohomolab/spectral/scalars.hpp"
#include "cohomolab/spectral/spectral.hpp"
#include "suite.hpp"

using namespace cohomolab;
using suite::expected_total;
using suite::inv;
using suite::model;

namespace {

DoubleComplex complex_of(const std::string& name, bool eq, Corruption c = {}) {
  const Model m = model(name);
  return DoubleComplex(m.X, m.M, m.covering("minimal"), {eq, 3, c});
}

IntMatrix mat(Index r, Index c, std::initializer_list<long> xs) {
  IntMatrix m(r, c);
  auto it = xs.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

void require_all(const std::vector<Check>& cs) {
  for (const Check& c : cs) {
    INFO(c.name << ": " << c.witness);
    CHECK(c.ok);
  }
}

// H^q of column p straight from d_v, no reduction involved.
Invariants column_cohomology(const DoubleComplex& dc, Index p, Index q) {
  FpComplex col;
  for (Index k = 0; p + k <= dc.top(); ++k) {
    col.groups.push_back(dc.grid(p, k).group_ptr());
    if (p + k < dc.top()) col.d.push_back(dc.dv(p, k).matrix());
  }
  return FpComplexHomology(col).homology(q);
}

}  // namespace

TEST_CASE("scalars over F_p") {
  const Scalars f(Integer(3));
  const IntMatrix M = mat(2, 3, {1, 1, 1, 0, 1, 2});
  const IntMatrix K = f.kernel(M);
  REQUIRE(K.cols() == 1);
  CHECK(is_zero(f.reduce(IntMatrix(M * K))));
  IntVector b(2);
  b << 2, 0;
  auto x = f.solve(M, b);
  REQUIRE(x);
  CHECK(is_zero(f.reduce(IntVector(M * *x - b))));
  CHECK_FALSE(f.solve(mat(2, 1, {1, 1}), b));

  // F_3^3 / <e1 + e2>: two generators of order 3
  const Subquotient q(f, identity_matrix(3), mat(3, 1, {1, 1, 0}));
  CHECK(q.invariants() == inv(0, {3, 3}));
  IntVector e1 = zero_vector(3);
  e1[0] = 1;
  auto c = q.coords(e1);
  REQUIRE(c);
  CHECK(c->size() == 2);
}

TEST_CASE("scalars over Z") {
  const Scalars z;
  const IntMatrix M = mat(1, 2, {2, 4});
  const IntMatrix K = z.kernel(M);
  REQUIRE(K.cols() == 1);
  CHECK(is_zero(IntMatrix(M * K)));
  IntVector b(1);
  b << 3;
  CHECK_FALSE(z.solve(M, b));
  b << 6;
  CHECK(z.solve(M, b));

  const Subquotient q(z, identity_matrix(2), mat(2, 1, {2, 0}));
  CHECK(q.invariants() == inv(1, {2}));
  const Subquotient empty(z, IntMatrix(0, 0), IntMatrix(0, 0));
  CHECK(empty.invariants().trivial());
}

TEST_CASE("one point: E_2 is V in the corner and nothing moves after") {
  const DoubleComplex dc = complex_of("point", false);
  const SpectralSequence ss = compute_pages(dc, 10);
  require_all(ss.checks);
  REQUIRE(ss.pages.size() >= 3);
  const SpectralPage& E2 = ss.pages[2];
  for (Index p = 0; p <= 3; ++p)
    for (Index q = 0; p + q <= 3; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(E2.entry(p, q).invariants() == (p == 0 && q == 0 ? inv(1) : inv(0)));
    }
  CHECK(ss.stable_from >= 0);
  CHECK(ss.stable_from <= 2);
  CHECK(convergence_report(ss, dc).match());
}

TEST_CASE("Sierpinski space converges to Z in degree 0") {
  const DoubleComplex dc = complex_of("sierpinski", false);
  const SpectralSequence ss = compute_pages(dc, 10);
  require_all(ss.checks);
  const ConvergenceReport rep = convergence_report(ss, dc);
  CHECK(rep.match());
  CHECK(rep.degrees[0].filtration[0] == inv(1));
}

TEST_CASE("suite models: pages are consistent and converge to H(Tot)") {
  for (const auto& name : suite::models)
    for (bool eq : {false, true}) {
      CAPTURE(name);
      CAPTURE(eq);
      const DoubleComplex dc = complex_of(name, eq);
      const SpectralSequence ss = compute_pages(dc, 10);
      require_all(ss.checks);
      REQUIRE(ss.stable_from >= 0);
      const ConvergenceReport rep = convergence_report(ss, dc);
      const auto want = expected_total(name, eq);
      REQUIRE(rep.degrees.size() == want.size());
      for (std::size_t n = 0; n < want.size(); ++n) {
        CAPTURE(n);
        INFO(rep.degrees[n].witness);
        CHECK(rep.degrees[n].match);
        CHECK(rep.degrees[n].filtration[0].str() == want[n].str());
      }
    }
}

TEST_CASE("E_1 is column cohomology") {
  for (const std::string name : {"discrete2_swap", "regular_z2", "doublecone4_swap"}) {
    CAPTURE(name);
    const DoubleComplex dc = complex_of(name, true);
    const SpectralSequence ss = compute_pages(dc, 2);
    const SpectralPage& E1 = ss.pages[1];
    for (Index p = 0; p <= 3; ++p)
      for (Index q = 0; p + q <= 3; ++q) {
        CAPTURE(p);
        CAPTURE(q);
        CHECK(E1.entry(p, q).invariants() == column_cohomology(dc, p, q));
      }
  }
}

TEST_CASE("group cohomology shows up through d_1") {
  const DoubleComplex dc = complex_of("discrete2_swap", true);
  const SpectralSequence ss = compute_pages(dc, 10);
  CHECK(ss.pages[1].has_nonzero_differential());
  const SpectralPage& inf = ss.last();
  CHECK(inf.entry(2, 0).invariants() == inv(0, {2}));
  CHECK(inf.entry(1, 0).invariants() == inv(0));
  CHECK(inf.entry(3, 0).invariants() == inv(0));
}

TEST_CASE("transposed filtration") {
  for (const std::string name : {"cone2_swap", "regular_z3", "doublecone4_swap"})
    for (bool eq : {false, true}) {
      CAPTURE(name);
      CAPTURE(eq);
      require_all(transposed_checks(complex_of(name, eq), 3));
    }
}

TEST_CASE("bounds and stabilization") {
  const DoubleComplex dc = complex_of("discrete2_swap", true);
  try {
    compute_pages(dc, 5, 4);
    FAIL("expected BoundTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundTooSmall);
  }
  CHECK_THROWS_AS(compute_pages(dc, 0), Error);

  const SpectralSequence short_run = compute_pages(dc, 1);
  CHECK(short_run.stable_from == -1);
  try {
    convergence_report(short_run, dc);
    FAIL("expected NotStabilized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStabilized);
  }

  // a smaller trusted range needs fewer pages
  const SpectralSequence low = compute_pages(dc, 10, 1);
  CHECK(low.last().r == 3);
  CHECK(low.stable_from >= 0);
  CHECK(convergence_report(low, dc).match());
}

TEST_CASE("corrupted complexes are rejected with a witness") {
  for (bool sign : {false, true}) {
    CAPTURE(sign);
    Corruption c;
    (sign ? c.sign : c.differential) = true;
    const DoubleComplex dc = complex_of("cone2_swap", false, c);
    try {
      const SpectralSequence ss = compute_pages(dc, 10);
      FAIL("corruption went through");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CompositionNotZero);
      CHECK(std::string(e.what()).find("generator") != std::string::npos);
    }
  }
}
