#include "cohomolab/cli/model.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "cohomolab/error.hpp"

namespace cohomolab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.')) return false;
  return true;
}

struct Line {
  int number;
  std::string text;
};

class Parser {
 public:
  Parser(std::string source) : src_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& msg, ErrorKind kind = ErrorKind::ParseError) const {
    throw Error(kind, src_ + ":" + std::to_string(line) + ": " + msg);
  }

  Model parse(const std::string& text) {
    split_sections(text);
    Model m;
    m.name = src_;
    parse_space();
    parse_group();
    parse_module();
    m.X = X_;
    m.M = M_;
    parse_covering(m);
    parse_bounds(m);
    return m;
  }

 private:
  void split_sections(const std::string& text) {
    std::istringstream in(text);
    std::string raw, current;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      const auto hash = raw.find('#');
      std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(n, "unterminated section header");
        current = trim(s.substr(1, s.size() - 2));
        static const std::vector<std::string> known = {"space", "group", "module", "covering", "bounds"};
        if (std::find(known.begin(), known.end(), current) == known.end()) fail(n, "unknown section [" + current + "]");
        if (header_.count(current)) fail(n, "section [" + current + "] appears twice");
        header_[current] = n;
        sections_[current];
        continue;
      }
      if (current.empty()) fail(n, "content before the first section");
      sections_[current].push_back({n, s});
    }
    if (!header_.count("space")) fail(n, "missing [space] section");
  }

  /// "key = value" or "key value" split.
  static std::pair<std::string, std::string> key_value(const std::string& s) {
    const auto eq = s.find('=');
    if (eq != std::string::npos) return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
    const auto sp = s.find_first_of(" \t");
    if (sp == std::string::npos) return {s, {}};
    return {trim(s.substr(0, sp)), trim(s.substr(sp + 1))};
  }

  Index point(int line, const std::string& name) const {
    auto i = X_->index_of(name);
    if (!i) fail(line, "unknown point '" + name + "'");
    return *i;
  }

  void parse_space() {
    std::vector<std::string> labels;
    std::vector<std::pair<Index, Index>> less;
    std::map<std::string, Index> idx;
    std::vector<std::pair<int, std::vector<std::string>>> chains;
    for (const Line& l : sections_["space"]) {
      auto [k, v] = key_value(l.text);
      if (k == "points") {
        if (!labels.empty()) fail(l.number, "points listed twice");
        for (const auto& w : words(v)) {
          if (!is_identifier(w)) fail(l.number, "bad point name '" + w + "'");
          if (idx.count(w)) fail(l.number, "duplicate point '" + w + "'");
          idx[w] = Index(labels.size());
          labels.push_back(w);
        }
        if (labels.empty()) fail(l.number, "no points");
        continue;
      }
      if (l.text.find('<') == std::string::npos) fail(l.number, "expected 'points ...' or a relation 'a < b'");
      std::vector<std::string> chain;
      std::string rest = l.text;
      for (std::size_t pos; (pos = rest.find('<')) != std::string::npos; rest = rest.substr(pos + 1))
        chain.push_back(trim(rest.substr(0, pos)));
      chain.push_back(trim(rest));
      chains.push_back({l.number, chain});
    }
    if (labels.empty()) fail(header_["space"], "space has no points", ErrorKind::ValidationError);
    for (const auto& [n, chain] : chains)
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        auto a = idx.find(chain[i]), b = idx.find(chain[i + 1]);
        if (a == idx.end()) fail(n, "unknown point '" + chain[i] + "'");
        if (b == idx.end()) fail(n, "unknown point '" + chain[i + 1] + "'");
        less.push_back({a->second, b->second});
      }
    X_ = std::make_shared<const FiniteSpace>(FiniteSpace::from_relations(labels, less));
  }

  std::vector<Index> permutation(int line, const std::string& s) const {
    const Index n = X_->size();
    std::vector<Index> perm(n);
    for (Index i = 0; i < n; ++i) perm[i] = i;
    std::vector<char> seen(n, 0);
    std::string rest = trim(s);
    while (!rest.empty()) {
      if (rest.front() != '(') fail(line, "permutation must be written in cycles, e.g. (a b)(c d)");
      const auto close = rest.find(')');
      if (close == std::string::npos) fail(line, "unterminated cycle");
      const auto cyc = words(rest.substr(1, close - 1));
      std::vector<Index> pts;
      for (const auto& w : cyc) {
        const Index x = point(line, w);
        if (seen[x]) fail(line, "point '" + w + "' appears twice in a permutation");
        seen[x] = 1;
        pts.push_back(x);
      }
      for (std::size_t i = 0; i < pts.size(); ++i) perm[pts[i]] = pts[(i + 1) % pts.size()];
      rest = trim(rest.substr(close + 1));
    }
    return perm;
  }

  void parse_group() {
    const Index n = X_->size();
    std::vector<Line>& lines = sections_["group"];
    if (lines.empty()) {
      spec_ = ActionSpec::trivial(n);
      action_line_ = header_.count("group") ? header_["group"] : 1;
      action_ = GroupAction(spec_, *X_);
      return;
    }
    action_line_ = lines.front().number;
    std::vector<std::string> gen_names;
    std::vector<std::vector<Index>> gen_perms;
    std::vector<std::string> elements;
    std::map<std::string, std::vector<std::string>> rows;
    std::map<std::string, std::vector<Index>> perms;
    std::map<std::string, int> where;
    for (const Line& l : lines) {
      auto [k, v] = key_value(l.text);
      const auto kw = words(k);
      if (kw.size() == 2 && kw[0] == "generator") {
        if (!is_identifier(kw[1]) || kw[1] == "e") fail(l.number, "bad generator name '" + kw[1] + "'");
        gen_names.push_back(kw[1]);
        gen_perms.push_back(permutation(l.number, v));
      } else if (k == "elements") {
        elements = words(v);
        if (elements.empty()) fail(l.number, "no elements");
      } else if (kw.size() == 2 && kw[0] == "row") {
        rows[kw[1]] = words(v);
        where[kw[1]] = l.number;
      } else if (kw.size() == 2 && kw[0] == "perm") {
        perms[kw[1]] = permutation(l.number, v);
        where["perm " + kw[1]] = l.number;
      } else {
        fail(l.number, "expected 'generator g = (..)', 'elements ...', 'row g = ...' or 'perm g = (..)'");
      }
    }
    if (!gen_names.empty() && !elements.empty())
      fail(action_line_, "use either generators or an element table, not both");
    if (!gen_names.empty()) {
      // close the generators under composition; elements named by shortest words
      std::vector<std::vector<Index>> elems{identity_perm(n)};
      std::vector<std::string> names{"e"};
      std::map<std::vector<Index>, Index> index{{elems[0], 0}};
      std::deque<Index> todo{0};
      while (!todo.empty()) {
        const Index g = todo.front();
        todo.pop_front();
        for (std::size_t k = 0; k < gen_perms.size(); ++k) {
          std::vector<Index> h(n);
          for (Index x = 0; x < n; ++x) h[x] = elems[g][gen_perms[k][x]];  // g o gen
          if (index.count(h)) continue;
          index[h] = Index(elems.size());
          names.push_back(g == 0 ? gen_names[k] : names[g] + "*" + gen_names[k]);
          elems.push_back(h);
          todo.push_back(Index(elems.size()) - 1);
          if (elems.size() > 10000) fail(action_line_, "generated group is too large", ErrorKind::ValidationError);
        }
      }
      spec_.element_names = names;
      spec_.permutations = elems;
      spec_.table.assign(elems.size(), std::vector<Index>(elems.size()));
      for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) {
          std::vector<Index> h(n);
          for (Index x = 0; x < n; ++x) h[x] = elems[a][elems[b][x]];
          spec_.table[a][b] = index.at(h);
        }
      for (std::size_t k = 0; k < gen_names.size(); ++k) generator_index_[gen_names[k]] = index.at(gen_perms[k]);
    } else {
      if (elements.empty()) fail(action_line_, "group section needs generators or elements");
      std::map<std::string, Index> idx;
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!is_identifier(elements[i])) fail(action_line_, "bad element name '" + elements[i] + "'");
        if (idx.count(elements[i])) fail(action_line_, "duplicate element '" + elements[i] + "'");
        idx[elements[i]] = Index(i);
      }
      spec_.element_names = elements;
      spec_.table.assign(elements.size(), std::vector<Index>(elements.size()));
      for (const auto& [g, row] : rows) {
        if (!idx.count(g)) fail(where[g], "row for unknown element '" + g + "'");
        if (row.size() != elements.size()) fail(where[g], "row must list " + std::to_string(elements.size()) + " products");
        for (std::size_t b = 0; b < row.size(); ++b) {
          auto it = idx.find(row[b]);
          if (it == idx.end()) fail(where[g], "unknown element '" + row[b] + "'");
          spec_.table[idx[g]][b] = it->second;
        }
      }
      for (const auto& e : elements)
        if (!rows.count(e)) fail(action_line_, "multiplication table misses the row of '" + e + "'", ErrorKind::ValidationError);
      spec_.permutations.assign(elements.size(), identity_perm(n));
      for (const auto& [g, p] : perms) {
        if (!idx.count(g)) fail(where["perm " + g], "permutation for unknown element '" + g + "'");
        spec_.permutations[idx[g]] = p;
      }
      for (const auto& [g, i] : idx) generator_index_[g] = i;
    }
    try {
      action_ = GroupAction(spec_, *X_);
    } catch (const Error& e) {
      fail(action_line_, e.what(), e.kind());
    }
  }

  static std::vector<Index> identity_perm(Index n) {
    std::vector<Index> p(n);
    for (Index i = 0; i < n; ++i) p[i] = i;
    return p;
  }

  std::vector<Integer> summands(int line, const std::string& v) const {
    std::vector<Integer> orders;
    std::string rest = v;
    std::vector<std::string> parts;
    for (std::size_t pos; (pos = rest.find('+')) != std::string::npos; rest = rest.substr(pos + 1))
      parts.push_back(trim(rest.substr(0, pos)));
    parts.push_back(trim(rest));
    for (const auto& p : parts) {
      if (p == "0") continue;
      auto bad = [&] { fail(line, "bad summand '" + p + "'; use Z, Z^k or Z/n"); };
      if (p.empty() || p[0] != 'Z') bad();
      try {
        if (p == "Z") {
          orders.push_back(0);
        } else if (p[1] == '^') {
          const long k = std::stol(p.substr(2));
          if (k < 1 || k > 64) bad();
          for (long i = 0; i < k; ++i) orders.push_back(0);
        } else if (p[1] == '/') {
          const long o = std::stol(p.substr(2));
          if (o < 2) bad();
          orders.push_back(Integer(o));
        } else {
          bad();
        }
      } catch (const std::logic_error&) {
        bad();
      }
    }
    return orders;
  }

  IntMatrix matrix(int line, const std::string& v, Index m) const {
    IntMatrix a = zero_matrix(m, m);
    std::string rest = v;
    std::vector<std::string> rows;
    for (std::size_t pos; (pos = rest.find(';')) != std::string::npos; rest = rest.substr(pos + 1))
      rows.push_back(trim(rest.substr(0, pos)));
    rows.push_back(trim(rest));
    if (Index(rows.size()) != m) fail(line, "action matrix needs " + std::to_string(m) + " rows separated by ';'");
    for (Index i = 0; i < m; ++i) {
      const auto w = words(rows[i]);
      if (Index(w.size()) != m) fail(line, "row " + std::to_string(i + 1) + " needs " + std::to_string(m) + " entries");
      for (Index j = 0; j < m; ++j) {
        try {
          a(i, j) = Integer(w[j]);
        } catch (const std::exception&) {
          fail(line, "bad integer '" + w[j] + "'");
        }
      }
    }
    return a;
  }

  void parse_module() {
    std::vector<Integer> orders{0};
    std::vector<std::pair<int, std::pair<std::string, std::string>>> acts;
    bool have_v = false;
    for (const Line& l : sections_["module"]) {
      auto [k, v] = key_value(l.text);
      const auto kw = words(k);
      if (k == "V") {
        if (have_v) fail(l.number, "V given twice");
        orders = summands(l.number, v);
        have_v = true;
      } else if (kw.size() == 2 && kw[0] == "action") {
        acts.push_back({l.number, {kw[1], v}});
      } else {
        fail(l.number, "expected 'V = ...' or 'action g = rows'");
      }
    }
    const FpAbGroup V = FpAbGroup::diagonal(orders);
    const Index m = V.generator_count();
    if (acts.empty()) {
      M_ = std::make_shared<const GModule>(GModule::trivial(V, action_));
      return;
    }
    std::vector<Index> gens;
    std::vector<IntMatrix> mats;
    for (const auto& [line, gv] : acts) {
      auto it = generator_index_.find(gv.first);
      if (it == generator_index_.end()) fail(line, "action for unknown group element '" + gv.first + "'");
      gens.push_back(it->second);
      mats.push_back(matrix(line, gv.second, m));
    }
    // from_generators checks the listed matrices against the group relations
    try {
      M_ = std::make_shared<const GModule>(GModule::from_generators(V, action_, gens, mats));
    } catch (const Error& e) {
      fail(acts.front().first, e.what(), e.kind());
    }
  }

  void parse_covering(Model& m) {
    if (!header_.count("covering")) return;
    const auto& lines = sections_["covering"];
    if (lines.empty()) fail(header_["covering"], "empty covering block", ErrorKind::ValidationError);
    for (const Line& l : lines) {
      auto [k, v] = key_value(l.text);
      const auto kw = words(k);
      if (k == "default") {
        m.default_covering = trim(v);
        default_line_ = l.number;
        continue;
      }
      if (kw.size() != 2 || kw[0] != "cover") fail(l.number, "expected 'cover NAME = {a b} {c}' or 'default = NAME'");
      const std::string name = kw[1];
      if (!is_identifier(name) || name == "minimal" || name == "trivial") fail(l.number, "bad covering name '" + name + "'");
      for (const auto& c : m.coverings)
        if (c.name == name) fail(l.number, "covering '" + name + "' defined twice");
      Covering cov;
      cov.name = name;
      std::string rest = trim(v);
      while (!rest.empty()) {
        if (rest.front() != '{') fail(l.number, "members are written as {a b}");
        const auto close = rest.find('}');
        if (close == std::string::npos) fail(l.number, "unterminated member");
        std::vector<char> member(X_->size(), 0);
        for (const auto& w : words(rest.substr(1, close - 1))) member[point(l.number, w)] = 1;
        cov.members.push_back(std::move(member));
        rest = trim(rest.substr(close + 1));
      }
      if (cov.members.empty()) fail(l.number, "covering has no members", ErrorKind::ValidationError);
      try {
        cov.validate(*X_);
      } catch (const Error& e) {
        fail(l.number, e.what(), e.kind());
      }
      m.coverings.push_back(std::move(cov));
    }
    try {
      (void)m.covering(m.default_covering);
    } catch (const Error& e) {
      fail(default_line_, e.what(), e.kind());
    }
  }

  void parse_bounds(Model& m) {
    for (const Line& l : sections_["bounds"]) {
      auto [k, v] = key_value(l.text);
      long long x = 0;
      try {
        std::size_t used = 0;
        x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(l.number, "'" + k + "' needs an integer value");
      }
      if (k == "N") {
        if (x < 0 || x > 12) fail(l.number, "N must lie in 0..12", ErrorKind::ValidationError);
        m.bound = Index(x);
      } else if (k == "r_max") {
        if (x < 1 || x > 64) fail(l.number, "r_max must lie in 1..64", ErrorKind::ValidationError);
        m.r_max = Index(x);
      } else if (k == "seed") {
        if (x < 0) fail(l.number, "seed must be non-negative", ErrorKind::ValidationError);
        m.seed = std::uint64_t(x);
      } else {
        fail(l.number, "unknown bound '" + k + "'");
      }
    }
  }

  std::string src_;
  std::map<std::string, std::vector<Line>> sections_;
  std::map<std::string, int> header_;
  SpacePtr X_;
  ActionSpec spec_;
  GroupAction action_;
  int action_line_ = 1;
  int default_line_ = 1;
  std::map<std::string, Index> generator_index_;
  ModulePtr M_;
};

}  // namespace

Covering Model::covering(const std::string& name) const {
  if (name == "minimal") return minimal_open_cover(*X);
  if (name == "trivial") return trivial_cover(*X);
  for (const auto& c : coverings)
    if (c.name == name) return c;
  throw Error(ErrorKind::ValidationError, "unknown covering '" + name + "'");
}

Model parse_model(const std::string& text, const std::string& source) { return Parser(source).parse(text); }

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  Model m = parse_model(ss.str(), path);
  auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  m.name = stem;
  return m;
}

}  // namespace cohomolab
