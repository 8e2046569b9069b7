#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "cohomolab/cli/commands.hpp"
#include "cohomolab/error.hpp"
#include "cohomolab/finspace/space.hpp"

using namespace cohomolab;

namespace {

// COHOMOLAB_SIZE_LIMIT, when set, replaces the default guard
void apply_size_limit() {
  const char* env = std::getenv("COHOMOLAB_SIZE_LIMIT");
  if (!env) return;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0' || v <= 0)
    throw Error(ErrorKind::ValidationError, std::string("COHOMOLAB_SIZE_LIMIT must be a positive integer, got '") +
                                                env + "'");
  set_size_limit(Index(v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of finite transformation groups with finite coefficient modules"};
  app.require_subcommand(1);

  std::string path, covering, format = "text", variant = "continuous", corrupt;
  long long bound = -1, seed = -1;
  bool equivariant = false;

  auto common = [&](CLI::App* c) {
    c->add_option("model", path, "model file")->required();
    c->add_option("--bound", bound, "highest degree N (default: from the model)")->check(CLI::Range(0, 12));
    c->add_option("--covering", covering, "covering name, 'minimal' or 'trivial'");
    c->add_flag("--equivariant", equivariant, "use G-equivariant cochains");
    c->add_option("--seed", seed, "seed for randomized checks")->check(CLI::NonNegativeNumber);
    c->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  };
  CLI::App* coh = app.add_subcommand("cohomology", "H^0..H^N of a single cochain complex");
  common(coh);
  coh->add_option("--variant", variant, "standard, continuous, covering or germ")
      ->check(CLI::IsMember({"standard", "continuous", "covering", "germ"}));
  CLI::App* spec = app.add_subcommand("spectral", "pages of the column spectral sequence and its convergence");
  common(spec);
  CLI::App* thm = app.add_subcommand("verify-theorem", "continuous vs germ equivariant cohomology on contractible X");
  common(thm);
  CLI::App* self = app.add_subcommand("selftest", "all identity checks and oracle comparisons");
  common(self);
  self->add_option("--corrupt", corrupt, "negative control: sign or differential")
      ->check(CLI::IsMember({"sign", "differential"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : InputError;
  }

  try {
    apply_size_limit();
    const Model m = load_model(path);
    RunOptions o;
    if (bound >= 0) o.bound = Index(bound);
    if (!covering.empty()) o.covering = covering;
    o.equivariant = equivariant;
    if (seed >= 0) o.seed = std::uint64_t(seed);
    o.variant = parse_variant(variant);
    o.corruption.sign = corrupt == "sign";
    o.corruption.differential = corrupt == "differential";

    Report r;
    if (*coh)
      r = cmd_cohomology(m, o);
    else if (*spec)
      r = cmd_spectral(m, o);
    else if (*thm)
      r = cmd_verify_theorem(m, o);
    else
      r = cmd_selftest(m, o);
    std::cout << r.render(format == "machine" ? Format::Machine : Format::Text);
    return r.status();
  } catch (const Error& e) {
    std::cerr << "cohomolab: " << e.what() << "\n";
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cohomolab: internal error: " << e.what() << "\n";
    return InternalError;
  }
}
