#pragma once

// The four commands of the cohomolab tool. Each fills a Report; nothing is
// timed or randomized beyond the seed, so equal inputs give equal reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohomolab/bicomplex/double_complex.hpp"
#include "cohomolab/cli/model.hpp"
#include "cohomolab/cochain/standard.hpp"

namespace cohomolab {

enum class Format { Text, Machine };

struct RunOptions {
  std::optional<Index> bound;
  std::optional<std::string> covering;
  bool equivariant = false;
  std::optional<std::uint64_t> seed;
  Variant variant = Variant::Continuous;  // cohomology only
  Corruption corruption;                  // selftest only
};

/// Exit statuses.
enum Status : int { Ok = 0, Negative = 1, InputError = 2, InternalError = 3 };

class Report {
 public:
  /// Human line (text format only).
  void say(std::string text) { text_.push_back(std::move(text)); }
  /// key=value line (machine format only).
  void kv(std::string key, std::string value) { fields_.emplace_back(std::move(key), std::move(value)); }
  void fail() { status_ = Negative; }
  int status() const { return status_; }
  /// Appends the lines and fields of `other`; its failures become ours.
  void merge(const Report& other);
  std::string render(Format f) const;

 private:
  std::vector<std::string> text_;
  std::vector<std::pair<std::string, std::string>> fields_;
  int status_ = Ok;
};

/// Ambient generators a command would touch: sum of |X|^(k) * rank(V) over
/// the arities it builds.
Index single_complex_size(const Model& m, Index N);
Index double_complex_size(const Model& m, Index N);
/// Throws SizeOverflow naming the count and the limit.
void guard_size(Index count, const std::string& what);

Report cmd_cohomology(const Model& m, const RunOptions& o);
Report cmd_spectral(const Model& m, const RunOptions& o);
Report cmd_verify_theorem(const Model& m, const RunOptions& o);
Report cmd_selftest(const Model& m, const RunOptions& o);

/// 2 for errors caused by the input, 3 for everything else.
int exit_status(ErrorKind kind);

}  // namespace cohomolab
