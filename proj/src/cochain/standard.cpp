#include "cohomolab/cochain/standard.hpp"

namespace cohomolab {

Variant parse_variant(const std::string& name) {
  if (name == "standard") return Variant::Standard;
  if (name == "continuous") return Variant::Continuous;
  if (name == "covering") return Variant::Covering;
  if (name == "germ") return Variant::Germ;
  throw Error(ErrorKind::ValidationError, "unknown variant '" + name + "' (standard, continuous, covering, germ)");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Standard: return "standard";
    case Variant::Continuous: return "continuous";
    case Variant::Covering: return "covering";
    case Variant::Germ: return "germ";
  }
  return "?";
}

FpComplex StandardComplex::complex() const {
  FpComplex c;
  for (const auto& g : groups) c.groups.push_back(g->group_ptr());
  for (const auto& m : d) c.d.push_back(m.matrix());
  return c;
}

StandardComplex standard_complex(const SpacePtr& X, const ModulePtr& M, Index top, Variant v, const Covering& cover,
                                 bool equivariant) {
  const Covering used = v == Variant::Germ ? minimal_open_cover(*X) : cover;
  if (v == Variant::Covering || v == Variant::Germ) {
    used.validate(*X);
    if (equivariant && !M->group().stabilizes(used))
      throw Error(ErrorKind::NotGInvariantCovering, "covering '" + used.name + "' is not G-invariant");
  }
  StandardComplex out;
  const std::string tag = variant_name(v) + (equivariant ? ",eq" : "");
  for (Index n = 0; n <= top; ++n) {
    Region r = Region::none();
    if (v == Variant::Continuous) r = Region::full();
    if (v == Variant::Covering || v == Variant::Germ) r = Region::of(diagonal_neighborhood(*X, used, n));
    out.groups.push_back(CochainGroup::build(X, M, n + 1, std::move(r), equivariant, "A_" + tag + "^" + std::to_string(n)));
  }
  for (Index n = 0; n < top; ++n) out.d.push_back(simplicial_differential(*out.groups[n], *out.groups[n + 1]));
  return out;
}

}  // namespace cohomolab
