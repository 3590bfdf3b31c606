#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbvlab/cbv.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/taylor.hpp"

namespace cbvlab {

struct Budgets {
  std::size_t budget = 10;
  std::size_t search = 14;
  std::size_t depth = 4;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t max_set_size = kDefaultMaxSetSize;
};

struct NamedTerm {
  std::string name;
  Term term;
};

struct DeclaredStep {
  std::string from;
  std::string to;
  ReductionStep step;
};

/// Named terms, verified →v steps between them, named contexts and a budget
/// profile.
struct Corpus {
  std::vector<NamedTerm> terms;
  std::vector<DeclaredStep> steps;
  std::vector<NamedTerm> contexts;
  Budgets budgets;

  const Term* find(std::string_view name) const;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Lines are `name = term`, `step a -> b`, `context name = term`,
/// `budget key = n` (keys budget, search, depth, trials, seed, max-set-size)
/// and `#` comments. Terms may use the builtins and earlier names. Every
/// declared step is checked against step_v; CorpusError otherwise.
Corpus parse_corpus(std::string_view text);
Corpus load_corpus(const std::string& path);

/// The corpus shipped as corpus/default.corpus.
const Corpus& default_corpus();
std::string_view default_corpus_text();

}  // namespace cbvlab
