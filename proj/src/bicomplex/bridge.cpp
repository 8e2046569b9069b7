#include "cohomolab/bicomplex/bridge.hpp"

#include <algorithm>
#include <random>

#include "cohomolab/error.hpp"

namespace cohomolab {

const std::vector<SignProfile>& sign_profiles() {
  static const std::vector<SignProfile> all = {
      {"(-1)^p", 1, 1, 0},   {"1", 1, 0, 0},  {"(-1)^q", 1, 0, 1},
      {"-(-1)^p", -1, 1, 0}, {"-1", -1, 0, 0}, {"-(-1)^q", -1, 0, 1},
  };
  return all;
}

void PsiResult::require() const {
  if (!ok) throw Error(ErrorKind::SignProfileFailure, "no sign profile gives D(c) = j(f) - i(f): " + witness);
}

IntVector continuous_cochain(const DoubleComplex& dc, Index n, const IntVector& ambient) {
  const CochainGroup& A = dc.col_source(n);
  if (auto x = A.read(ambient)) return *x;
  // tell the two failure modes apart
  if (dc.equivariant()) {
    auto plain = CochainGroup::build(dc.space_ptr(), dc.module_ptr(), n + 1, Region::full(), false);
    if (plain->read(ambient)) throw Error(ErrorKind::NotEquivariant, "cochain is continuous but not equivariant");
  }
  throw Error(ErrorKind::NotContinuous, "cochain is not locally constant on X^" + std::to_string(n + 1));
}

PsiResult psi_bridge(const DoubleComplex& dc, Index n, const IntVector& f) {
  if (n < 1 || n > dc.top()) throw Error(ErrorKind::BoundTooSmall, "psi needs 1 <= n <= N+1");
  const CochainGroup& A = dc.col_source(n);
  if (f.size() != A.generator_count()) throw Error(ErrorKind::DimensionMismatch, "f has the wrong length");
  if (n < dc.top() && !dc.col_source(n + 1).group().is_zero_element(dc.col_d(n).apply(f)))
    throw Error(ErrorKind::NotACocycle, "f is not a cocycle: df = " + format_vector(dc.col_d(n).apply(f)));

  const Index e = dc.module().group().identity();
  const TupleCodec& ac = A.codec();
  // f placed unsigned at every (p, q) with p + q = n - 1
  std::vector<IntVector> placed;
  for (Index p = 0; p < n; ++p) {
    const Index q = n - 1 - p;
    GroupMap psi = tuple_operator(
        A, dc.grid(p, q), [&](const Index* t, std::vector<Term>& out) { out.push_back({1, ac.encode(t), e}); },
        ErrorKind::NotContinuous, "psi at (" + std::to_string(p) + "," + std::to_string(q) + ")");
    placed.push_back(psi.apply(f));
  }
  const GroupMap inc = inclusion_map(A, dc.row_source(n));
  const IntVector want = dc.total_j(n).apply(f) - dc.total_i(n).apply(inc.apply(f));
  const GroupMap D = dc.total_d(n - 1);
  const FpAbGroup& tot = *dc.total_group(n);

  PsiResult r;
  for (const SignProfile& sp : sign_profiles()) {
    if (dc.options().corruption.sign && sp.name != "(-1)^p") continue;
    IntVector c = zero_vector(dc.total_group(n - 1)->generator_count());
    for (Index p = 0; p < n; ++p) {
      const Index q = n - 1 - p;
      IntVector part = placed[p];
      if (sp.sign(p, q) < 0) part = -part;
      c += dc.to_total(n - 1, p, part);
    }
    c = dc.total_group(n - 1)->reduce(c);
    const IntVector diff = tot.reduce(D.apply(c) - want);
    if (is_zero(diff)) {
      if (!r.ok) {
        r.ok = true;
        r.profile = sp.name;
        r.c = c;
      }
      r.working.push_back(sp.name);
      continue;
    }
    if (!r.ok && r.witness.empty())
      r.witness = "profile " + sp.name + ": c = " + format_vector(c) + ", D(c) - (j(f) - i(f)) = " + format_vector(diff);
  }
  if (r.ok) r.witness.clear();
  return r;
}

PsiSurvey psi_survey(const DoubleComplex& dc, Index upto) {
  PsiSurvey s;
  std::vector<std::string> common;
  for (const SignProfile& sp : sign_profiles()) common.push_back(sp.name);
  for (Index n = 1; n <= std::min(upto, dc.top() - 1); ++n)
    for (const IntVector& f : cocycle_generators(dc.col_d(n))) {
      ++s.cocycles;
      const PsiResult r = psi_bridge(dc, n, f);
      std::vector<std::string> keep;
      for (const auto& name : common)
        if (std::find(r.working.begin(), r.working.end(), name) != r.working.end()) keep.push_back(name);
      if (keep.empty() && s.witness.empty())
        s.witness = "degree " + std::to_string(n) + " cocycle " + format_vector(f) + ": " +
                    (r.ok ? "works only with " + r.profile : r.witness);
      common = std::move(keep);
    }
  s.ok = !common.empty();
  if (s.ok) s.profile = common.front();
  s.common = std::move(common);
  return s;
}

GroupMap equivariantization(const CochainGroup& source, const CochainGroup& target) {
  if (source.arity() != target.arity()) throw Error(ErrorKind::DimensionMismatch, "equivariantization keeps the arity");
  if (!target.equivariant()) throw Error(ErrorKind::ValidationError, "target must be an equivariant group");
  const GroupAction& G = target.module().group();
  if (!G.is_free()) throw Error(ErrorKind::NotFreeAction, "the group action on X is not free");
  // phi(x): the unique g with g . rep(orbit of x) = x
  std::vector<Index> phi(G.points(), -1);
  for (Index x = 0; x < G.points(); ++x) {
    if (phi[x] >= 0) continue;
    for (Index g = 0; g < G.order(); ++g) phi[G.act(g, x)] = g;
  }
  const TupleCodec& c = source.codec();
  return tuple_operator(
      source, target,
      [&](const Index* t, std::vector<Term>& out) {
        const Index s = phi[t[0]];
        out.push_back({1, G.act_tuple(G.inv(s), c.encode(t), c), s});
      },
      ErrorKind::NotContinuous, "equivariantization");
}

std::vector<Check> equivariantization_trials(const DoubleComplex& plain, const DoubleComplex& eq, std::uint64_t seed,
                                             Index trials, Index max_degree) {
  struct Position {
    Index p, q;
    GroupMap E, up, up1;
    std::vector<IntVector> cocycles;
  };
  std::vector<Position> pos;
  for (Index n = 0; n <= std::min(max_degree, plain.top() - 1); ++n)
    for (Index p = 0; p <= n; ++p) {
      const Index q = n - p;
      pos.push_back({p, q, equivariantization(plain.grid(p, q), eq.grid(p, q)),
                     inclusion_map(eq.grid(p, q), plain.grid(p, q)),
                     inclusion_map(eq.grid(p, q + 1), plain.grid(p, q + 1)), cocycle_generators(plain.dv(p, q))});
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Check> out;
  for (Index t = 0; t < trials; ++t) {
    const Position& P = pos[std::size_t(t) % pos.size()];
    const CochainGroup& src = plain.grid(P.p, P.q);
    IntVector u = zero_vector(eq.grid(P.p, P.q).generator_count());
    for (Index i = 0; i < u.size(); ++i) u[i] = coef(rng);
    IntVector f = P.up.apply(u);
    for (const IntVector& z : P.cocycles) f += Integer(coef(rng)) * z;
    f = src.group().reduce(f);
    const IntVector lhs = P.up1.apply(eq.dv(P.p, P.q).apply(P.E.apply(f)));
    const IntVector rhs = plain.dv(P.p, P.q).apply(f);
    Check c{"d_v equivariantize = d_v at (" + std::to_string(P.p) + "," + std::to_string(P.q) + ") trial " +
                std::to_string(t),
            true, {}};
    const IntVector diff = plain.grid(P.p, P.q + 1).group().reduce(lhs - rhs);
    if (!plain.grid(P.p, P.q + 1).group().is_zero_element(diff)) {
      c.ok = false;
      c.witness = "f' = [" + format_vector(f) + "], d_v E(f') - d_v f' = [" + format_vector(diff) + "]";
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace cohomolab
