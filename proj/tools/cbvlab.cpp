#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbvlab/cbv.hpp"
#include "cbvlab/corpus.hpp"
#include "cbvlab/harness.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/resource.hpp"
#include "cbvlab/taylor.hpp"

using namespace cbvlab;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "text";
  std::size_t max_set_size = kDefaultMaxSetSize;
};

json sum_json(const Sum& s) {
  json a = json::array();
  for (const auto& t : s) a.push_back(to_string(t));
  return a;
}

std::string path_string(const Path& p) {
  std::string out;
  for (Dir d : p) out += d == Dir::Body ? 'b' : d == Dir::Fun ? 'f' : 'a';
  return out.empty() ? "." : out;
}

int emit_report(const Options& o, const PropertyReport& r) {
  if (o.format == "json") {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << to_text(r);
  }
  return r.holds() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Call-by-value lambda calculus, resource calculus and Taylor expansion lab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-set-size", o.max_set_size, "Cap on enumerated set sizes");

  std::string term_text, term2_text;
  std::size_t steps = 100, budget = 10, search = 14, depth = 4, trials = 200;
  std::uint64_t seed = 1;
  std::string strategy = "lo", property, corpus_path, candidate_text, report_path;
  bool count = false;
  unsigned jobs = 1;

  auto* parse = app.add_subcommand("parse", "Parse and pretty-print a term");
  parse->add_option("term", term_text)->required();

  auto* reduce = app.add_subcommand("reduce", "Reduce a term by beta_v");
  reduce->add_option("term", term_text)->required();
  reduce->add_option("--steps", steps, "Maximum number of steps");
  reduce->add_option("--strategy", strategy, "lo: leftmost-outermost trace; enumerate: all one-step reducts")
      ->check(CLI::IsMember({"lo", "enumerate"}));

  auto* taylor = app.add_subcommand("taylor", "Enumerate the Taylor expansion up to a size budget");
  taylor->add_option("term", term_text)->required();
  taylor->add_option("--budget", budget)->required();
  taylor->add_flag("--count", count, "Only count elements of each size");

  auto* nf = app.add_subcommand("nf", "Normalize a resource term");
  nf->add_option("term", term_text)->required();

  auto* nft = app.add_subcommand("nft", "Normal forms of the bounded Taylor expansion");
  nft->add_option("term", term_text)->required();
  nft->add_option("--budget", budget)->required();

  auto* leq = app.add_subcommand("leq", "Bounded check of NFT(M) included in NFT(N)");
  leq->add_option("m", term_text)->required();
  leq->add_option("n", term2_text)->required();
  leq->add_option("--budget", budget)->required();
  leq->add_option("--search", search)->required();

  auto* check = app.add_subcommand("check", "Run a property suite over a corpus");
  check->add_option("property", property)->required()->check(CLI::IsMember(suite_names()));
  check->add_option("--corpus", corpus_path, "Corpus file (default: built-in corpus)");
  auto* budget_opt = check->add_option("--budget", budget);
  auto* search_opt = check->add_option("--search", search);
  auto* depth_opt = check->add_option("--depth", depth);
  auto* trials_opt = check->add_option("--trials", trials);
  auto* seed_opt = check->add_option("--seed", seed);
  check->add_option("--jobs", jobs, "Worker threads");

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* por = demo->add_subcommand("por", "No parallel-or: bounded Taylor computations on pairs");
  por->add_option("--candidate", candidate_text, "Test a candidate term against the specification");
  std::size_t por_budget = 12, por_search = 16;
  por->add_option("--budget", por_budget);
  por->add_option("--search", por_search);

  auto* rep = app.add_subcommand("replay", "Re-run the instance of a JSON counterexample or report");
  rep->add_option("file", report_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse) {
      Term t = parse_term(term_text);
      if (o.format == "json") {
        std::cout << json{{"term", to_string(t)}, {"size", t.size()}, {"value", t.is_value()},
                          {"holes", t.max_hole()}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << to_string(t) << "\n";
      }
      return 0;
    }
    if (*reduce) {
      Term t = parse_term(term_text);
      if (strategy == "enumerate") {
        auto all = step_v(t);
        json out = json::array();
        for (const auto& s : all) {
          out.push_back({{"path", path_string(s.path)}, {"target", to_string(s.target)}});
          if (o.format == "text") std::cout << path_string(s.path) << "\t" << to_string(s.target) << "\n";
        }
        if (o.format == "json") std::cout << out.dump(2) << "\n";
        if (all.empty() && o.format == "text") std::cout << "normal\n";
        return 0;
      }
      json trace = json::array({to_string(t)});
      if (o.format == "text") std::cout << to_string(t) << "\n";
      ReduceResult r{false, t, 0};
      for (std::size_t i = 0; i < steps; ++i) {
        ReduceResult one = reduce_v(r.term, 1);
        if (one.normal && one.steps == 0) {
          r.normal = true;
          break;
        }
        r.term = one.term;
        ++r.steps;
        trace.push_back(to_string(r.term));
        if (o.format == "text") std::cout << "-> " << to_string(r.term) << "\n";
      }
      if (!r.normal) r.normal = step_v(r.term).empty();
      if (o.format == "json") {
        std::cout << json{{"trace", trace}, {"steps", r.steps}, {"normal", r.normal}}.dump(2) << "\n";
      } else {
        std::cout << (r.normal ? "normal form" : "timeout") << " after " << r.steps << " steps\n";
      }
      return 0;
    }
    if (*taylor) {
      Term t = parse_term(term_text);
      if (count) {
        auto counts = taylor_count(t, budget);
        if (o.format == "json") {
          std::cout << json(counts).dump() << "\n";
        } else {
          for (std::size_t n = 1; n < counts.size(); ++n) std::cout << n << "\t" << counts[n] << "\n";
        }
        return 0;
      }
      auto table = taylor_by_size(t, budget, o.max_set_size);
      json out = json::array();
      for (const auto& bucket : table) {
        for (const auto& s : bucket) {
          if (o.format == "json") {
            out.push_back(to_string(s));
          } else {
            std::cout << s.size() << "\t" << to_string(s) << "\n";
          }
        }
      }
      if (o.format == "json") std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*nf) {
      Sum s = normalize(parse_resource(term_text));
      if (o.format == "json") {
        std::cout << sum_json(s).dump(2) << "\n";
      } else {
        std::cout << to_string(s) << "\n";
      }
      return 0;
    }
    if (*nft) {
      Sum s = nft_bounded(parse_term(term_text), budget, o.max_set_size);
      if (o.format == "json") {
        std::cout << sum_json(s).dump(2) << "\n";
      } else {
        std::cout << to_string(s) << "\n";
      }
      return 0;
    }
    if (*leq) {
      auto r = leq_bounded(parse_term(term_text), parse_term(term2_text), budget, search, o.max_set_size);
      json missing = json::array();
      for (const auto& t : r.missing) missing.push_back(to_string(t));
      if (o.format == "json") {
        std::cout << json{{"status", r.holds ? "Holds" : "CounterexampleCandidate"},
                          {"checked", r.checked},
                          {"not_found", missing}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << (r.holds ? "Holds" : "CounterexampleCandidate") << " (" << r.checked << " normal forms)\n";
        for (const auto& t : r.missing) std::cout << "  not found within budget: " << to_string(t) << "\n";
      }
      return r.holds ? 0 : 1;
    }
    if (*check) {
      Corpus corpus = corpus_path.empty() ? default_corpus() : load_corpus(corpus_path);
      Budgets b = corpus.budgets;
      if (*budget_opt) b.budget = budget;
      if (*search_opt) b.search = search;
      if (*depth_opt) b.depth = depth;
      if (*trials_opt) b.trials = trials;
      if (*seed_opt) b.seed = seed;
      b.max_set_size = o.max_set_size;
      return emit_report(o, run_suite(property, corpus, b, jobs));
    }
    if (*por) {
      std::optional<Term> candidate;
      if (!candidate_text.empty()) candidate = parse_term(candidate_text);
      PropertyReport r = demo_por(candidate, por_budget, por_search, o.max_set_size);
      emit_report(o, r);
      return 0;
    }
    if (*rep) {
      std::ifstream in(report_path);
      if (!in) throw std::runtime_error("cannot open " + report_path);
      json j = json::parse(in);
      if (j.contains("counterexample")) j = j.at("counterexample");
      return emit_report(o, replay(j));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
