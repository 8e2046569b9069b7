#pragma once

// Models shipped in models/ and what H(Tot) should be for each of them.

#include <string>
#include <vector>

#include "cohomolab/cli/model.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace suite {

using namespace cohomolab;

inline Model model(const std::string& name) { return load_model(std::string(COHOMOLAB_MODELS_DIR) + "/" + name + ".model"); }

inline const std::vector<std::string> models = {
    "point",        "sierpinski",        "discrete2_swap", "cone2_swap", "cocone3_swap",  "doublecone4_swap",
    "pseudocircle_swap", "regular_z2", "regular_z3",     "regular_z4", "regular_klein"};

inline Invariants inv(Index free, std::vector<Integer> tors = {}) { return Invariants{std::move(tors), free}; }

// H^n(Tot), n = 0..3, against references that do not touch the double complex.
// Plain: locally constant cochains on a finite space only see pi_0, and
// homogeneous cochains on a set are acyclic above degree 0, so H = V, 0, 0, 0.
// Equivariant with a fixed point: the same complex retracts onto that point,
// giving V^G, 0, 0, 0. Regular actions give group cohomology.
inline std::vector<Invariants> expected_total(const std::string& name, bool eq) {
  const Invariants z = inv(1), zero = inv(0);
  auto flat = [&](Invariants h0) { return std::vector<Invariants>{h0, zero, zero, zero}; };
  auto cyclic = [](long m, long a, long k) {
    std::vector<Invariants> out;
    for (long n = 0; n <= 3; ++n) out.push_back(brute::cyclic_cohomology(m, a, k, n));
    return out;
  };
  if (name == "point" || name == "sierpinski" || name == "cone2_swap" || name == "pseudocircle_swap") return flat(z);
  if (name == "discrete2_swap") return eq ? cyclic(2, 1, 0) : flat(z);
  if (name == "cocone3_swap") return flat(eq ? zero : inv(0, {3}));  // -1 on Z/3 fixes only 0
  if (name == "doublecone4_swap") return flat(inv(1, {2}));          // V^G = 2Z + Z/2
  if (name == "regular_z2") return eq ? cyclic(2, 1, 2) : flat(inv(0, {2}));
  if (name == "regular_z3") return eq ? cyclic(3, 1, 3) : flat(inv(0, {3}));
  if (name == "regular_z4") return eq ? cyclic(4, -1, 0) : flat(z);
  if (name == "regular_klein") {
    if (!eq) return flat(inv(0, {2}));
    // Kunneth over F_2: dimension n + 1
    std::vector<Invariants> out;
    for (Index n = 0; n <= 3; ++n) out.push_back(inv(0, std::vector<Integer>(n + 1, 2)));
    return out;
  }
  FAIL("no reference for " << name);
  return {};
}

}  // namespace suite
