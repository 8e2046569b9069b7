#pragma once

// Model files: a finite space, a group acting on it, a coefficient module and
// optional coverings. Grammar in docs/model-format.md.

#include <cstdint>
#include <string>
#include <vector>

#include "cohomolab/bicomplex/double_complex.hpp"

namespace cohomolab {

struct Model {
  std::string name;
  SpacePtr X;
  ModulePtr M;
  std::vector<Covering> coverings;    // named coverings from the file
  std::string default_covering = "minimal";
  Index bound = 3;
  Index r_max = 6;
  std::uint64_t seed = 1;

  const GroupAction& group() const { return M->group(); }
  /// "minimal", "trivial" or a name from the file; throws ValidationError.
  Covering covering(const std::string& name) const;
};

/// Throws ParseError / ValidationError (and the validation kinds of the
/// underlying constructors), each message prefixed with `source:line:`.
Model parse_model(const std::string& text, const std::string& source = "<model>");
Model load_model(const std::string& path);

}  // namespace cohomolab
