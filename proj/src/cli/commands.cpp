#include "cohomolab/cli/commands.hpp"

#include <sstream>

#include "cohomolab/bicomplex/bridge.hpp"
#include "cohomolab/bicomplex/column.hpp"
#include "cohomolab/error.hpp"
#include "cohomolab/oracle/oracle.hpp"
#include "cohomolab/spectral/spectral.hpp"

namespace cohomolab {
namespace {

std::string num(Index n) { return std::to_string(n); }

Index bound_of(const Model& m, const RunOptions& o) { return o.bound.value_or(m.bound); }
std::uint64_t seed_of(const Model& m, const RunOptions& o) { return o.seed.value_or(m.seed); }
Covering cover_of(const Model& m, const RunOptions& o) { return m.covering(o.covering.value_or(m.default_covering)); }

void header(Report& r, const std::string& cmd, const Model& m, Index N) {
  r.kv("command", cmd);
  r.kv("model", m.name);
  r.kv("points", num(m.X->size()));
  r.kv("group_order", num(m.group().order()));
  r.kv("V", m.M->V().invariants().str());
  r.kv("bound", num(N));
  r.say(cmd + " on " + m.name + ": |X| = " + num(m.X->size()) + ", |G| = " + num(m.group().order()) +
        ", V = " + m.M->V().invariants().str() + ", N = " + num(N));
}

std::vector<Invariants> cohomology_of(const FpComplex& c, Index N) {
  FpComplexHomology h(c);
  std::vector<Invariants> out;
  for (Index n = 0; n <= N; ++n) out.push_back(h.homology(n));
  return out;
}

// Groups of checks reported as one line each.
struct Tally {
  Report& r;
  std::string prefix;
  bool all_ok = true;

  void group(const std::string& key, const std::vector<Check>& cs) {
    Index bad = 0;
    const Check* first = nullptr;
    for (const Check& c : cs)
      if (!c.ok) {
        if (!first) first = &c;
        ++bad;
      }
    record(key, bad == 0, num(Index(cs.size()) - bad) + "/" + num(Index(cs.size())),
           first ? first->name + ": " + first->witness : std::string());
  }
  void record(const std::string& key, bool ok, const std::string& detail, const std::string& witness) {
    const std::string k = prefix + key;
    r.kv(k, ok ? "pass" : "fail");
    if (!detail.empty()) r.kv(k + ".detail", detail);
    if (!ok) r.kv(k + ".witness", witness);
    r.say(std::string(ok ? "  pass  " : "  FAIL  ") + k + (detail.empty() ? "" : "  (" + detail + ")"));
    if (!ok) r.say("        witness: " + witness);
    if (!ok) {
      all_ok = false;
      r.fail();
    }
  }
  // runs f; an exception is a failure of `key` with the message as witness
  template <class F>
  void guarded(const std::string& key, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      record(key, false, "", e.what());
    }
  }
};

void spectral_section(Report& r, const DoubleComplex& dc, Index r_max, const std::string& prefix, bool tables) {
  const Index N = dc.bound();
  const SpectralSequence ss = compute_pages(dc, r_max, N);
  r.kv(prefix + "engine", ss.engine);
  r.kv(prefix + "pages", num(ss.last().r));
  r.kv(prefix + "stable_from", num(ss.stable_from));
  if (tables)
    for (const SpectralPage& E : ss.pages) {
      r.say("E_" + num(E.r) + " (p across, q up; trusted p + q <= " + num(N) + ")");
      for (Index q = N; q >= 0; --q) {
        std::string row = "  q=" + num(q) + " |";
        for (Index p = 0; p + q <= N; ++p) {
          const std::string e = E.entry(p, q).invariants().str();
          row += " " + e + std::string(e.size() < 10 ? 10 - e.size() : 1, ' ');
          r.kv(prefix + "E" + num(E.r) + "." + num(p) + "." + num(q), e);
          if (!E.differential(p, q).is_zero())
            r.kv(prefix + "d" + num(E.r) + "." + num(p) + "." + num(q), "nonzero");
        }
        r.say(row);
      }
    }
  Tally t{r, prefix};
  t.group("page_checks", ss.checks);
  if (ss.stable_from < 0) {
    r.kv(prefix + "convergence", "not-stabilized");
    r.say("  pages up to E_" + num(ss.last().r) + " do not show stabilization; raise r_max");
    r.fail();
    return;
  }
  const ConvergenceReport rep = convergence_report(ss, dc);
  for (const auto& d : rep.degrees) {
    std::string gr;
    for (std::size_t p = 0; p < d.graded.size(); ++p) gr += (p ? ", " : "") + d.graded[p].str();
    r.kv(prefix + "H" + num(d.n), d.filtration[0].str());
    r.kv(prefix + "gr" + num(d.n), gr);
    r.say("  H^" + num(d.n) + "(Tot) = " + d.filtration[0].str() + "   graded: " + gr + (d.match ? "" : "   MISMATCH"));
  }
  std::vector<Check> conv;
  for (const auto& d : rep.degrees) conv.push_back({"degree " + num(d.n), d.match, d.witness});
  t.group("convergence", conv);
}

Invariants copies(const Invariants& a, Index k) {
  std::vector<Integer> orders;
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < a.free_rank; ++j) orders.push_back(0);
    for (const Integer& t : a.torsion) orders.push_back(t);
  }
  return invariants_from_orders(orders);
}

// is G acting on X freely and transitively
bool regular_action(const Model& m) { return m.group().is_free() && m.group().order() == m.X->size(); }

}  // namespace

std::string Report::render(Format f) const {
  std::ostringstream out;
  if (f == Format::Machine) {
    for (const auto& [k, v] : fields_) out << k << "=" << v << "\n";
    out << "status=" << status_ << "\n";
  } else {
    for (const auto& l : text_) out << l << "\n";
  }
  return out.str();
}

void Report::merge(const Report& other) {
  text_.insert(text_.end(), other.text_.begin(), other.text_.end());
  fields_.insert(fields_.end(), other.fields_.begin(), other.fields_.end());
  if (other.status_ != Ok) status_ = std::max(status_, other.status_);
}

Index single_complex_size(const Model& m, Index N) {
  Index total = 0;
  for (Index n = 0; n <= N + 1; ++n) total += checked_power(m.X->size(), n + 1) * m.M->rank();
  return total;
}

Index double_complex_size(const Model& m, Index N) {
  Index total = 0;
  for (Index k = 0; k <= N + 1; ++k) total += (k + 1) * checked_power(m.X->size(), k + 2) * m.M->rank();
  return total;
}

void guard_size(Index count, const std::string& what) {
  if (count > size_limit())
    throw Error(ErrorKind::SizeOverflow, what + " needs " + std::to_string(count) +
                                             " ambient generators, above the limit " + std::to_string(size_limit()) +
                                             " (set COHOMOLAB_SIZE_LIMIT or lower --bound)");
}

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeOverflow:
    case ErrorKind::NotAGroup:
    case ErrorKind::NotOrderAutomorphism:
    case ErrorKind::NotHomomorphism:
    case ErrorKind::NotAnAutomorphism:
    case ErrorKind::NotGInvariantCovering:
    case ErrorKind::NotACovering:
    case ErrorKind::BasepointInvalid:
    case ErrorKind::BoundTooSmall:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
      return InputError;
    default:
      return InternalError;
  }
}

Report cmd_cohomology(const Model& m, const RunOptions& o) {
  const Index N = bound_of(m, o);
  guard_size(single_complex_size(m, N), "cohomology up to degree " + num(N));
  Report r;
  header(r, "cohomology", m, N);
  const Covering cover = cover_of(m, o);
  r.kv("variant", variant_name(o.variant));
  r.kv("equivariant", o.equivariant ? "1" : "0");
  if (o.variant == Variant::Covering) r.kv("covering", cover.name);
  r.say("variant " + variant_name(o.variant) + (o.equivariant ? ", equivariant" : "") +
        (o.variant == Variant::Covering ? ", covering " + cover.name : ""));
  const StandardComplex sc = standard_complex(m.X, m.M, N + 1, o.variant, cover, o.equivariant);
  const auto h = cohomology_of(sc.complex(), N);
  for (Index n = 0; n <= N; ++n) {
    r.kv("H" + num(n), h[n].str());
    r.say("  H^" + num(n) + " = " + h[n].str());
  }
  return r;
}

Report cmd_spectral(const Model& m, const RunOptions& o) {
  const Index N = bound_of(m, o);
  guard_size(double_complex_size(m, N), "double complex up to total degree " + num(N + 1));
  Report r;
  header(r, "spectral", m, N);
  const Covering cover = cover_of(m, o);
  r.kv("covering", cover.name);
  r.kv("equivariant", o.equivariant ? "1" : "0");
  r.kv("r_max", num(m.r_max));
  const DoubleComplex dc(m.X, m.M, cover, {o.equivariant, N, {}});
  spectral_section(r, dc, m.r_max, "", true);
  r.kv("verdict", r.status() == Ok ? "CONVERGES" : "NOT-CONFIRMED");
  r.say(r.status() == Ok ? "verdict: CONVERGES" : "verdict: NOT-CONFIRMED");
  return r;
}

Report cmd_verify_theorem(const Model& m, const RunOptions& o) {
  const Index N = bound_of(m, o);
  guard_size(double_complex_size(m, N), "column evidence up to total degree " + num(N + 1));
  Report r;
  header(r, "verify-theorem", m, N);

  const auto cert = contractibility_certificate(*m.X);
  const bool certified = cert && verify_certificate(*m.X, *cert);
  r.kv("certificate", certified ? "dismantlable" : "none");
  if (certified) {
    std::string steps;
    for (const BeatStep& s : *cert) {
      const char* kind = s.kind == BeatStep::Down ? "down" : s.kind == BeatStep::Up ? "up" : "twin";
      steps += (steps.empty() ? "" : " ") + m.X->label(s.point) + "<" + kind + ":" + m.X->label(s.witness) + ">";
    }
    r.kv("certificate.steps", steps);
    r.say("contractibility certificate: " + (steps.empty() ? std::string("single point") : steps));
  } else {
    r.say("contractibility certificate: none (X does not dismantle to a point)");
  }

  const StandardComplex c = standard_complex(m.X, m.M, N + 1, Variant::Continuous, {}, true);
  const StandardComplex g = standard_complex(m.X, m.M, N + 1, Variant::Germ, {}, true);
  FpComplexHomology hc(c.complex()), hg(g.complex());
  const IsoReport iso =
      induced_isomorphism(hc, hg, N, [&](Index n) { return inclusion_map(*c.groups[n], *g.groups[n]); });
  bool all_iso = true;
  r.say("  n   H_c,eq          H_cg,eq         inclusion");
  for (const auto& d : iso.degrees) {
    const bool bij = d.injective && d.surjective;
    all_iso = all_iso && bij;
    const std::string verdict = bij ? "bijective" : d.injective ? "not-surjective" : d.surjective ? "not-injective" : "neither";
    r.kv("Hc_eq" + num(d.n), d.source.str());
    r.kv("Hcg_eq" + num(d.n), d.target.str());
    r.kv("inclusion" + num(d.n), verdict);
    if (!bij) r.kv("inclusion" + num(d.n) + ".witness", d.witness);
    std::string a = d.source.str(), b = d.target.str();
    a.resize(std::max<std::size_t>(a.size(), 15), ' ');
    b.resize(std::max<std::size_t>(b.size(), 15), ' ');
    r.say("  " + num(d.n) + "   " + a + " " + b + " " + verdict + (bij ? "" : "  " + d.witness));
  }

  // column evidence: exactness and the restriction sequences per column
  const Covering cover = minimal_open_cover(*m.X);
  bool columns_ok = true;
  for (Index p = 0; p <= N; ++p) {
    std::string state;
    try {
      const ColumnReport col = column_analysis(m.X, m.M, cover, p, N - p);
      state = col.checks_ok() ? "ok" : "fail";
      if (certified && col.inclusion.ok() == false) state = "fail";
      std::string hs;
      for (std::size_t q = 0; q < col.continuous.size(); ++q) hs += (q ? ", " : "") + col.continuous[q].str();
      r.kv("column" + num(p), state);
      r.kv("column" + num(p) + ".H", hs);
      r.say("  column " + num(p) + ": " + state + ", H^q(A_c^{" + num(p) + ",*}(X,U;V)) = " + hs);
    } catch (const Error& e) {
      state = "fail";
      r.kv("column" + num(p), state);
      r.kv("column" + num(p) + ".witness", e.what());
      r.say("  column " + num(p) + ": " + e.what());
    }
    columns_ok = columns_ok && state == "ok";
  }

  std::string verdict;
  if (!certified)
    verdict = "NO-CERTIFICATE";
  else if (all_iso)
    verdict = "THEOREM-CONFIRMED";
  else
    verdict = "NOT-CONFIRMED";
  r.kv("columns", columns_ok ? "ok" : "fail");
  r.kv("verdict", verdict);
  r.say("verdict: " + verdict);
  if (verdict != "THEOREM-CONFIRMED") r.fail();
  return r;
}

Report cmd_selftest(const Model& m, const RunOptions& o) {
  const Index N = bound_of(m, o);
  guard_size(2 * double_complex_size(m, N), "selftest up to total degree " + num(N + 1));
  Report r;
  header(r, "selftest", m, N);
  const Covering cover = cover_of(m, o);
  const std::uint64_t seed = seed_of(m, o);
  r.kv("covering", cover.name);
  r.kv("seed", std::to_string(seed));
  if (o.corruption.any())
    r.kv("corruption", o.corruption.sign ? "sign" : "differential");

  const bool equivariant_ok = m.group().stabilizes(cover);
  std::vector<bool> modes{false};
  if (equivariant_ok) modes.push_back(true);
  std::vector<std::unique_ptr<DoubleComplex>> dcs;
  for (bool eq : modes) {
    const std::string prefix = eq ? "eq." : "plain.";
    r.say(eq ? "equivariant double complex" : "plain double complex");
    dcs.push_back(std::make_unique<DoubleComplex>(m.X, m.M, cover, DoubleComplex::Options{eq, N, o.corruption}));
    const DoubleComplex& dc = *dcs.back();
    if (!dc.corruption_note().empty()) r.say("  corruption: " + dc.corruption_note());
    Tally t{r, prefix};
    t.group("structural", structural_checks(dc));
    t.group("augmentation", augmentation_checks(dc));
    t.group("row_exactness", row_exactness_checks(dc));
    t.guarded("row_iso", [&] {
      const IsoReport iso = row_augmentation_iso(dc);
      std::vector<Check> cs;
      for (const auto& d : iso.degrees)
        cs.push_back({"H(i*) in degree " + num(d.n), d.injective && d.surjective, d.witness});
      t.group("row_iso", cs);
    });
    t.guarded("psi", [&] {
      const PsiSurvey s = psi_survey(dc, N);
      r.kv(prefix + "psi.profile", s.ok ? s.profile : "none");
      r.kv(prefix + "psi.cocycles", num(s.cocycles));
      t.record("psi", s.ok, s.ok ? "profile " + s.profile + " on " + num(s.cocycles) + " cocycles" : "", s.witness);
    });
    t.guarded("spectral", [&] {
      Report inner;
      spectral_section(inner, dc, m.r_max, prefix + "spectral.", false);
      r.merge(inner);
      if (inner.status() != Ok) t.all_ok = false;
    });
  }
  if (!equivariant_ok) {
    r.kv("eq", "skipped");
    r.say("equivariant checks skipped: covering " + cover.name + " is not G-invariant");
  }

  Tally t{r, ""};
  if (dcs.size() == 2 && m.group().is_free() && !m.group().is_trivial()) {
    t.guarded("equivariantization", [&] {
      t.group("equivariantization", equivariantization_trials(*dcs[0], *dcs[1], seed, 25));
    });
  } else {
    r.kv("equivariantization", "skipped");
    r.say("  skip  equivariantization (needs a free non-trivial action)");
  }

  if (regular_action(m) && !o.corruption.any()) {
    t.guarded("oracle.bar", [&] {
      const auto bar = oracle::bar_group_cohomology(*m.M, N);
      const auto std_eq = cohomology_of(standard_complex(m.X, m.M, N + 1, Variant::Standard, {}, true).complex(), N);
      std::vector<Check> cs;
      for (Index n = 0; n <= N; ++n)
        cs.push_back({"degree " + num(n), bar[n].invariants() == std_eq[n],
                      "bar " + bar[n].invariants().str() + " vs standard " + std_eq[n].str()});
      t.group("oracle.bar", cs);
    });
  } else {
    r.kv("oracle.bar", "skipped");
    r.say("  skip  oracle.bar (needs G acting regularly on X)");
  }

  t.guarded("oracle.cech", [&] {
    const Covering U = minimal_open_cover(*m.X);
    const ColumnReport col = column_analysis(m.X, m.M, U, 0, N);
    const auto constant = oracle::cech_nerve_cohomology(*m.X, U, m.M->V(), N, oracle::NerveCoefficients::Constant);
    const auto sheaf =
        oracle::cech_nerve_cohomology(*m.X, U, m.M->V(), N, oracle::NerveCoefficients::LocallyConstant);
    // column 0 carries a free first point, so it sees one copy of the nerve
    // cohomology per component of X
    const Index k = connected_components(*m.X, SubspaceOfPower::full(*m.X, 1)).count;
    std::vector<Check> cs;
    std::string agree = "agree";
    for (Index n = 0; n <= N; ++n) {
      const Invariants want = copies(constant[n].invariants(), k);
      cs.push_back({"degree " + num(n), col.continuous[n] == want,
                    "column " + col.continuous[n].str() + " vs nerve^" + num(k) + " " + want.str()});
      if (!(sheaf[n].invariants() == constant[n].invariants()))
        agree = "differ in degree " + num(n) + ": " + sheaf[n].invariants().str() + " vs " +
                constant[n].invariants().str();
    }
    t.group("oracle.cech", cs);
    // reported, not judged: the nerve with locally constant coefficients
    r.kv("oracle.cech.locally_constant", agree);
    r.say("  info  nerve with locally constant coefficients: " + agree);
  });

  r.kv("verdict", r.status() == Ok ? "ALL-PASS" : "FAILURES");
  r.say(r.status() == Ok ? "verdict: ALL-PASS" : "verdict: FAILURES");
  return r;
}

}  // namespace cohomolab
