#include "cbvlab/corpus.hpp"

#include <fstream>
#include <sstream>

namespace cbvlab {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::pair<std::string, std::string> split_definition(const std::string& line, std::size_t lineno) {
  auto eq = line.find('=');
  if (eq == std::string::npos) throw CorpusError("expected 'name = ...'", lineno);
  std::string name = trim(line.substr(0, eq));
  if (!is_identifier(name)) throw CorpusError("bad name '" + name + "'", lineno);
  return {name, trim(line.substr(eq + 1))};
}

Term parse_at(const std::string& text, const Definitions& defs, std::size_t lineno) {
  try {
    return parse_term(text, defs);
  } catch (const ParseError& e) {
    throw CorpusError(std::string(e.what()) + " in '" + text + "'", lineno);
  }
}

std::size_t parse_count(const std::string& text, std::size_t lineno) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw CorpusError("expected a number, got '" + text + "'", lineno);
  }
}

bool starts_with_word(const std::string& line, std::string_view word) {
  return line.size() > word.size() && line.compare(0, word.size(), word) == 0 &&
         (line[word.size()] == ' ' || line[word.size()] == '\t');
}

}  // namespace

const Term* Corpus::find(std::string_view name) const {
  for (const auto& t : terms) {
    if (t.name == name) return &t.term;
  }
  return nullptr;
}

Corpus parse_corpus(std::string_view text) {
  Corpus c;
  Definitions defs = builtin_definitions();
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (starts_with_word(line, "step")) {
      std::string rest = trim(line.substr(4));
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw CorpusError("expected 'step a -> b'", lineno);
      std::string a = trim(rest.substr(0, arrow));
      std::string b = trim(rest.substr(arrow + 2));
      const Term* ta = c.find(a);
      const Term* tb = c.find(b);
      if (!ta || !tb) throw CorpusError("unknown name in step " + a + " -> " + b, lineno);
      bool found = false;
      for (auto& s : step_v(*ta)) {
        if (s.target == *tb) {
          c.steps.push_back({a, b, std::move(s)});
          found = true;
          break;
        }
      }
      if (!found) throw CorpusError(a + " does not reduce to " + b + " in one step", lineno);
    } else if (starts_with_word(line, "context")) {
      auto [name, body] = split_definition(line.substr(7), lineno);
      c.contexts.push_back({name, parse_at(body, defs, lineno)});
    } else if (starts_with_word(line, "budget")) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw CorpusError("expected 'budget key = n'", lineno);
      std::string key = trim(line.substr(6, eq - 6));
      std::size_t v = parse_count(trim(line.substr(eq + 1)), lineno);
      if (key == "budget") {
        c.budgets.budget = v;
      } else if (key == "search") {
        c.budgets.search = v;
      } else if (key == "depth") {
        c.budgets.depth = v;
      } else if (key == "trials") {
        c.budgets.trials = v;
      } else if (key == "seed") {
        c.budgets.seed = v;
      } else if (key == "max-set-size") {
        c.budgets.max_set_size = v;
      } else {
        throw CorpusError("unknown budget key '" + key + "'", lineno);
      }
    } else {
      auto [name, body] = split_definition(line, lineno);
      Term t = parse_at(body, defs, lineno);
      if (t.has_holes()) throw CorpusError("term '" + name + "' has holes; declare it as a context", lineno);
      if (c.find(name)) throw CorpusError("duplicate name '" + name + "'", lineno);
      defs[name] = t;
      c.terms.push_back({name, t});
    }
  }
  return c;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

const Corpus& default_corpus() {
  static const Corpus c = parse_corpus(default_corpus_text());
  return c;
}

}  // namespace cbvlab
