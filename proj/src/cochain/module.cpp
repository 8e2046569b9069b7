#include "cohomolab/cochain/module.hpp"

#include <deque>

#include "cohomolab/error.hpp"
#include "cohomolab/fpabelian/smith.hpp"

namespace cohomolab {

namespace {

bool congruent(const IntMatrix& a, const IntMatrix& b, const std::vector<Integer>& orders) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      Integer d = a(i, j) - b(i, j);
      if (orders[i] == 0 ? d != 0 : d % orders[i] != 0) return false;
    }
  return true;
}

IntMatrix reduced(IntMatrix a, const std::vector<Integer>& orders) {
  for (Index i = 0; i < a.rows(); ++i)
    if (orders[i] != 0)
      for (Index j = 0; j < a.cols(); ++j) a(i, j) = floor_mod(a(i, j), orders[i]);
  return a;
}

}  // namespace

std::optional<IntVector> FixedLattice::coords(const IntVector& v, const std::vector<Integer>& v_orders) const {
  if (whole) {
    IntVector r = v;
    for (Index i = 0; i < r.size(); ++i)
      if (v_orders[i] != 0) r[i] = floor_mod(r[i], v_orders[i]);
    return r;
  }
  return quotient.coords(v);
}

GModule::GModule(FpAbGroup V, GroupAction action, std::vector<IntMatrix> matrices)
    : V_(std::make_shared<const FpAbGroup>(std::move(V))), action_(std::move(action)), mats_(std::move(matrices)) {
  if (!V_->is_diagonal())
    throw Error(ErrorKind::ValidationError, "coefficient group must be given by invariant factors");
  const Index m = rank();
  const auto& o = V_->orders();
  if (Index(mats_.size()) != action_.order())
    throw Error(ErrorKind::NotHomomorphism, "need one action matrix per group element");
  for (Index g = 0; g < action_.order(); ++g) {
    if (mats_[g].rows() != m || mats_[g].cols() != m)
      throw Error(ErrorKind::NotAnAutomorphism, "action matrix of " + action_.name(g) + " is not " +
                                                    std::to_string(m) + "x" + std::to_string(m));
    // relations go to relations
    for (Index j = 0; j < m; ++j) {
      if (o[j] == 0) continue;
      for (Index i = 0; i < m; ++i) {
        Integer x = mats_[g](i, j) * o[j];
        if (o[i] == 0 ? x != 0 : x % o[i] != 0)
          throw Error(ErrorKind::NotAnAutomorphism, "action of " + action_.name(g) + " is not well defined on V");
      }
    }
    mats_[g] = reduced(mats_[g], o);
  }
  const IntMatrix I = identity_matrix(m);
  if (!congruent(mats_[action_.identity()], I, o))
    throw Error(ErrorKind::NotHomomorphism, "identity element does not act as the identity");
  for (Index g = 0; g < action_.order(); ++g)
    for (Index h = 0; h < action_.order(); ++h) {
      IntMatrix p = mats_[g] * mats_[h];
      if (!congruent(p, mats_[action_.mul(g, h)], o))
        throw Error(ErrorKind::NotHomomorphism,
                    "module action of " + action_.name(g) + "*" + action_.name(h) + " is not the product");
    }
  // implied by the homomorphism property, kept as a guard
  for (Index g = 0; g < action_.order(); ++g) {
    IntMatrix p = mats_[g] * mats_[action_.inv(g)];
    if (!congruent(p, I, o))
      throw Error(ErrorKind::NotAnAutomorphism, "action of " + action_.name(g) + " is not invertible");
  }
  ident_.resize(action_.order());
  for (Index g = 0; g < action_.order(); ++g) {
    ident_[g] = congruent(mats_[g], I, o);
    trivial_ = trivial_ && ident_[g];
  }
}

GModule GModule::from_generators(FpAbGroup V, GroupAction action, const std::vector<Index>& generators,
                                 const std::vector<IntMatrix>& generator_matrices) {
  const Index n = action.order();
  const Index m = V.generator_count();
  if (generators.size() != generator_matrices.size())
    throw Error(ErrorKind::ValidationError, "one matrix per generator expected");
  std::vector<IntMatrix> mats(n);
  std::vector<char> have(n, 0);
  mats[action.identity()] = identity_matrix(m);
  have[action.identity()] = 1;
  std::deque<Index> todo{action.identity()};
  while (!todo.empty()) {
    Index g = todo.front();
    todo.pop_front();
    for (std::size_t k = 0; k < generators.size(); ++k) {
      if (generator_matrices[k].rows() != m || generator_matrices[k].cols() != m)
        throw Error(ErrorKind::NotAnAutomorphism, "action matrix has the wrong size");
      Index h = action.mul(g, generators[k]);
      if (have[h]) continue;
      mats[h] = mats[g] * generator_matrices[k];
      have[h] = 1;
      todo.push_back(h);
    }
  }
  for (Index g = 0; g < n; ++g)
    if (!have[g]) throw Error(ErrorKind::ValidationError, "module generators do not generate the group");
  // products along different words must agree; the constructor checks that
  GModule M(std::move(V), std::move(action), std::move(mats));
  for (std::size_t k = 0; k < generators.size(); ++k)
    if (!congruent(M.matrix(generators[k]), generator_matrices[k], M.V().orders()))
      throw Error(ErrorKind::NotHomomorphism, "generator matrices violate a group relation");
  return M;
}

GModule GModule::trivial(FpAbGroup V, GroupAction action) {
  const Index m = V.generator_count();
  std::vector<IntMatrix> mats(action.order(), identity_matrix(m));
  return GModule(std::move(V), std::move(action), std::move(mats));
}

std::shared_ptr<const FixedLattice> GModule::fixed(const std::vector<Index>& subgroup) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->lattices.find(subgroup);
  if (it != cache_->lattices.end()) return it->second;

  auto F = std::make_shared<FixedLattice>();
  const Index m = rank();
  const auto& o = V_->orders();
  std::vector<Index> moving;
  for (Index h : subgroup)
    if (!ident_[h]) moving.push_back(h);
  if (moving.empty()) {
    F->whole = true;
    F->orders = o;
    F->embed = identity_matrix(m);
  } else {
    // v with (A_h - I) v in R for every h: kernel of [M | D], first m coordinates
    std::vector<Index> tors;
    for (Index i = 0; i < m; ++i)
      if (o[i] != 0) tors.push_back(i);
    const Index blocks = Index(moving.size());
    const Index t = Index(tors.size());
    IntMatrix K = zero_matrix(blocks * m, m + blocks * t);
    for (Index b = 0; b < blocks; ++b) {
      K.block(b * m, 0, m, m) = mats_[moving[b]] - identity_matrix(m);
      for (Index k = 0; k < t; ++k) K(b * m + tors[k], m + b * t + k) = o[tors[k]];
    }
    IntMatrix ker = kernel_basis(K);
    IntMatrix R = zero_matrix(m, t);
    for (Index k = 0; k < t; ++k) R(tors[k], k) = o[tors[k]];
    IntMatrix L = hcat(IntMatrix(ker.topRows(m)), R);
    F->quotient = LatticeQuotient(L, R);
    F->orders = F->quotient.orders();
    F->embed = F->quotient.generators();
  }
  cache_->lattices.emplace(subgroup, F);
  return F;
}

}  // namespace cohomolab
