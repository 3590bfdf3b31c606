#include "cbvlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "cbvlab/cbv.hpp"
#include "cbvlab/detail/hash.hpp"
#include "cbvlab/generate.hpp"
#include "cbvlab/rigid.hpp"
#include "cbvlab/taylor.hpp"
#include "cbvlab/witness.hpp"

namespace cbvlab {

using nlohmann::json;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "Holds";
    case Status::Refuted:
      return "Refuted";
    case Status::Inconclusive:
      return "Inconclusive";
    case Status::NotApplicable:
      return "NotApplicable";
  }
  return "?";
}

json to_json(const PropertyReport& r) {
  json j;
  j["property"] = r.property;
  j["status"] = std::string(to_string(r.status));
  j["instances"] = r.instances;
  if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
  j["budgets"] = r.budgets;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["millis"] = r.millis;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.cases.empty()) {
    j["cases"] = json::array();
    for (const auto& c : r.cases) j["cases"].push_back(to_json(c));
  }
  return j;
}

namespace {

void text_rec(const PropertyReport& r, int indent, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  out << pad << r.property << ": " << to_string(r.status) << " (" << r.instances << " instances, "
      << static_cast<long long>(r.millis) << " ms)\n";
  if (!r.detail.empty()) {
    std::istringstream lines(r.detail);
    std::string line;
    while (std::getline(lines, line)) out << pad << "  " << line << "\n";
  }
  if (!r.counterexample.is_null()) out << pad << "  counterexample: " << r.counterexample.dump() << "\n";
  for (const auto& c : r.cases) text_rec(c, indent + 2, out);
}

PropertyReport named(std::string property) {
  PropertyReport r;
  r.property = std::move(property);
  return r;
}

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double millis() const { return std::chrono::duration<double, std::milli>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

std::string show(const Term& t) { return to_string(t); }
std::string show(const RTerm& t) { return to_string(t); }

json show_all(const std::vector<RTerm>& ts, std::size_t limit = 5) {
  json a = json::array();
  for (std::size_t i = 0; i < ts.size() && i < limit; ++i) a.push_back(show(ts[i]));
  return a;
}

json budgets_json(std::size_t budget, std::size_t search = 0, std::size_t depth = 0) {
  json b;
  b["budget"] = budget;
  if (search) b["search"] = search;
  if (depth) b["depth"] = depth;
  return b;
}

Term fill1(const Term& c, const Term& m) { return fill_context(c, {m}); }

void require_one_hole(const Term& c, const char* who) {
  if (c.max_hole() > 1) throw std::invalid_argument(std::string(who) + ": expected a context with hole _1 only");
}

void require_closed_holes(const Term& m, const char* who) {
  if (m.has_holes()) throw std::invalid_argument(std::string(who) + ": term has holes: " + show(m));
}

Term term_from(const json& j) { return parse_term(j.get<std::string>(), {}); }

}  // namespace

std::string to_text(const PropertyReport& r) {
  std::ostringstream out;
  text_rec(r, 0, out);
  return out.str();
}

// ---------------------------------------------------------------------------

PropertyReport check_partition(const Term& m, std::size_t budget, std::size_t max_set_size) {
  require_closed_holes(m, "check_partition");
  Timer timer;
  PropertyReport r = named("partition");
  r.budgets = budgets_json(budget);
  auto elems = taylor_enumerate(m, budget, max_set_size);
  Normalizer norm;
  std::unordered_map<RTerm, RTerm, RTermHash> owner;
  for (const auto& s : elems) {
    ++r.instances;
    for (const auto& t : norm.normalize(s)) {
      auto [it, fresh] = owner.emplace(t, s);
      if (!fresh && r.status == Status::Holds) {
        r.status = Status::Refuted;
        r.counterexample = {{"s", show(it->second)}, {"t", show(s)}, {"shared", show(t)}};
      }
    }
  }
  r.detail = std::to_string(elems.size()) + " elements, " + std::to_string(owner.size()) + " normal forms";
  if (!r.counterexample.is_null()) {
    r.counterexample["replay"] = {{"check", "partition"}, {"term", show(m)}, {"budget", budget}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport check_normalization(const Term& m, std::size_t budget, std::size_t max_set_size) {
  Timer timer;
  PropertyReport r = named("normalization");
  r.budgets = budgets_json(budget);
  Normalizer lo(Strategy::LeftmostOutermost, true);
  Normalizer ri(Strategy::RightmostInnermost, true);
  Normalizer comp(Strategy::Compositional);
  for (const auto& s : taylor_enumerate(m, budget, max_set_size)) {
    ++r.instances;
    try {
      const Sum& a = lo.normalize(s);
      const Sum& b = ri.normalize(s);
      const Sum& c = comp.normalize(s);
      if (a != b || a != c) {
        r.status = Status::Refuted;
        r.counterexample = {{"s", show(s)},
                            {"leftmost_outermost", to_string(a)},
                            {"rightmost_innermost", to_string(b)},
                            {"compositional", to_string(c)}};
        break;
      }
    } catch (const std::logic_error& e) {
      r.status = Status::Refuted;
      r.counterexample = {{"s", show(s)}, {"error", e.what()}};
      break;
    }
  }
  r.detail = std::to_string(lo.steps()) + " leftmost-outermost steps, " + std::to_string(ri.steps()) +
             " rightmost-innermost steps";
  if (!r.counterexample.is_null()) {
    r.counterexample["replay"] = {{"check", "normalization"}, {"term", show(m)}, {"budget", budget}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport check_simulation(const Term& m, const Term& n, std::size_t budget, std::size_t search,
                                std::size_t max_set_size) {
  require_closed_holes(m, "check_simulation");
  std::optional<ReductionStep> step;
  for (auto& s : step_v(m)) {
    if (s.target == n) {
      step = std::move(s);
      break;
    }
  }
  if (!step) throw std::invalid_argument("check_simulation: " + show(n) + " is not a one-step reduct of " + show(m));
  Timer timer;
  PropertyReport r = named("simulation");
  r.budgets = budgets_json(budget, search);
  Normalizer norm;

  NftIndex right(n, search, max_set_size);
  std::vector<RTerm> missing1;
  std::size_t checked1 = 0;
  for (const auto& s : taylor_enumerate(m, budget, max_set_size)) {
    ++r.instances;
    for (const auto& t : norm.normalize(s)) {
      ++checked1;
      if (!right.witness(t)) missing1.push_back(t);
    }
  }

  std::optional<std::vector<std::vector<RTerm>>> left_table;  // T_{B′}(m), built on demand
  std::vector<RTerm> missing2;
  std::size_t checked2 = 0, constructed = 0, searched = 0, largest = 0;
  for (const auto& s2 : taylor_enumerate(n, budget, max_set_size)) {
    ++r.instances;
    if (norm.normalize(s2).empty()) continue;
    ++checked2;
    auto w = expand_step(*step, s2);
    if (w && taylor_member(*w, m) && reaches(*w, s2) == Reachability::Reachable) {
      ++constructed;
      largest = std::max(largest, w->size());
      continue;
    }
    if (!left_table) left_table = taylor_by_size(m, search, max_set_size);
    bool found = false;
    for (std::size_t k = s2.size() + 1; k <= search && !found; ++k) {
      for (const auto& s : (*left_table)[k]) {
        if (reaches(s, s2) == Reachability::Reachable) {
          found = true;
          break;
        }
      }
    }
    if (found) {
      ++searched;
    } else {
      missing2.push_back(s2);
    }
  }

  std::ostringstream d;
  d << "direction 1: " << checked1 - missing1.size() << "/" << checked1 << " normal forms found in NFT_" << search
    << "(N)\n";
  d << "direction 2: " << checked2 - missing2.size() << "/" << checked2
    << " non-annihilating elements reached (" << constructed << " by inverting the step, largest witness size "
    << largest << "; " << searched << " by search)";
  r.detail = d.str();
  if (!missing1.empty() || !missing2.empty()) {
    r.status = Status::Inconclusive;
    r.counterexample = {{"direction1_not_found", show_all(missing1)},
                        {"direction2_not_reached", show_all(missing2)},
                        {"replay",
                         {{"check", "simulation"}, {"m", show(m)}, {"n", show(n)}, {"budget", budget},
                          {"search", search}}}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport check_monotone(const Term& context, const Term& m, const Term& n, std::size_t budget,
                              std::size_t search, std::size_t max_set_size) {
  require_one_hole(context, "check_monotone");
  Timer timer;
  PropertyReport r = named("monotone");
  r.budgets = budgets_json(budget, search);
  json replay_args = {{"check", "monotone"}, {"context", show(context)}, {"m", show(m)},
                      {"n", show(n)},        {"budget", budget},         {"search", search}};
  auto premise = leq_bounded(m, n, budget, search, max_set_size);
  if (!premise.holds) {
    r.status = Status::NotApplicable;
    r.detail = "premise m <= n not established at budget";
    r.millis = timer.millis();
    return r;
  }
  auto c = leq_bounded(fill1(context, m), fill1(context, n), budget, search, max_set_size);
  r.instances = c.checked;
  r.detail = std::to_string(c.checked) + " normal forms of C<m> checked";
  if (!c.holds) {
    r.status = Status::Inconclusive;
    r.counterexample = {{"not_found", show_all(c.missing)}, {"replay", replay_args}};
  }
  r.millis = timer.millis();
  return r;
}

StabilityInstance por_instance(const Term& context, std::size_t budget, std::size_t search) {
  const auto& d = builtin_definitions();
  StabilityInstance inst;
  inst.context = context;
  inst.families = {{parse_term("Pair(True, Omega)", d), parse_term("Pair(Omega, True)", d)}};
  inst.upper = {parse_term("Pair(True, True)", d)};
  inst.infima = {parse_term("Pair(Omega, Omega)", d)};
  inst.budget = budget;
  inst.search = search;
  return inst;
}

namespace {

json stability_replay(const StabilityInstance& inst) {
  json fam = json::array();
  for (const auto& x : inst.families) {
    json xs = json::array();
    for (const auto& t : x) xs.push_back(show(t));
    fam.push_back(xs);
  }
  json up = json::array(), inf = json::array();
  for (const auto& t : inst.upper) up.push_back(show(t));
  for (const auto& t : inst.infima) inf.push_back(show(t));
  return {{"check", "stability"}, {"context", show(inst.context)}, {"families", fam}, {"upper", up},
          {"infima", inf},        {"budget", inst.budget},          {"search", inst.search}};
}

Sum intersect(const Sum& a, const Sum& b) {
  Sum out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// NFT_B read off an index built at a larger budget.
Sum bounded_part(const NftIndex& idx, std::size_t budget) {
  Sum out;
  for (const auto& t : idx.normal_forms()) {
    if (idx.witness(t)->size() <= budget) out.insert(t);
  }
  return out;
}

}  // namespace

PropertyReport check_stability(const StabilityInstance& inst, std::size_t max_set_size) {
  Timer timer;
  PropertyReport r = named("stability");
  const std::size_t B = inst.budget, B2 = inst.search;
  r.budgets = budgets_json(B, B2);
  const std::size_t k = inst.families.size();
  auto not_applicable = [&](const std::string& why) {
    r.status = Status::NotApplicable;
    r.detail = "hypothesis not established at budget: " + why;
    r.millis = timer.millis();
    return r;
  };
  if (inst.upper.size() != k || inst.infima.size() != k || inst.context.max_hole() > k) {
    throw std::invalid_argument("check_stability: families, bounds and infima must match the context's holes");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (inst.families[i].empty()) return not_applicable("X_" + std::to_string(i + 1) + " is empty");
    for (const auto& x : inst.families[i]) {
      if (!x.is_value()) return not_applicable(show(x) + " is not a value");
    }
    if (!inst.upper[i].is_value()) return not_applicable(show(inst.upper[i]) + " is not a value");
    if (!inst.infima[i].is_value()) return not_applicable(show(inst.infima[i]) + " is not a value");

    const Term& v = inst.infima[i];
    std::optional<Sum> inter;
    for (const auto& x : inst.families[i]) {
      if (!leq_bounded(v, x, B, B2, max_set_size).holds) return not_applicable(show(v) + " <= " + show(x));
      if (!leq_bounded(x, inst.upper[i], B, B2, max_set_size).holds) {
        return not_applicable(show(x) + " <= " + show(inst.upper[i]));
      }
      Sum nx = nft_bounded(x, B, max_set_size);
      inter = inter ? intersect(*inter, nx) : nx;
    }
    NftIndex vi(v, B2, max_set_size);
    for (const auto& t : *inter) {
      if (!vi.witness(t)) return not_applicable(show(v) + " is not the infimum of X_" + std::to_string(i + 1));
    }
  }

  std::vector<Term> vs = inst.infima;
  NftIndex lhs_index(fill_context(inst.context, vs), B2, max_set_size);
  Sum lhs = bounded_part(lhs_index, B);

  // Every tuple N⃗ ∈ X_1 × … × X_k, odometer order.
  std::vector<std::size_t> pick(k, 0);
  std::optional<Sum> rhs;
  std::vector<RTerm> missing_sub, missing_sup;
  std::size_t tuples = 0;
  for (bool more = true; more;) {
    std::vector<Term> ns;
    for (std::size_t i = 0; i < k; ++i) ns.push_back(inst.families[i][pick[i]]);
    NftIndex idx(fill_context(inst.context, ns), B2, max_set_size);
    ++tuples;
    for (const auto& t : lhs) {
      if (!idx.witness(t) && std::find(missing_sub.begin(), missing_sub.end(), t) == missing_sub.end()) {
        missing_sub.push_back(t);
      }
    }
    Sum b = bounded_part(idx, B);
    rhs = rhs ? intersect(*rhs, b) : b;
    more = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (++pick[i] < inst.families[i].size()) {
        more = true;
        break;
      }
      pick[i] = 0;
    }
  }
  if (!rhs) rhs = Sum{};
  for (const auto& t : *rhs) {
    if (!lhs_index.witness(t)) missing_sup.push_back(t);
  }
  r.instances = tuples;
  std::ostringstream d;
  d << "NFT_" << B << "(C<V>) = " << to_string(lhs) << "\n";
  d << "intersection over " << tuples << " tuples of NFT_" << B << "(C<N>) = " << to_string(*rhs);
  r.detail = d.str();
  if (!missing_sub.empty() || !missing_sup.empty()) {
    r.status = Status::Inconclusive;
    r.counterexample = {{"lhs_not_in_all", show_all(missing_sub)},
                        {"intersection_not_in_lhs", show_all(missing_sup)},
                        {"replay", stability_replay(inst)}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport demo_por(const std::optional<Term>& candidate, std::size_t budget, std::size_t search,
                        std::size_t max_set_size) {
  Timer timer;
  const auto& d = builtin_definitions();
  const Term pto = parse_term("Pair(True, Omega)", d);
  const Term pot = parse_term("Pair(Omega, True)", d);
  const Term poo = parse_term("Pair(Omega, Omega)", d);
  const Term tru = d.at("True");
  const Term omega = d.at("Omega");
  PropertyReport r = named("por");
  r.budgets = budgets_json(budget, search);
  std::ostringstream out;
  json replay_args = {{"check", "por"}, {"budget", budget}, {"search", search}};

  if (!candidate) {
    Sum a = nft_bounded(pto, budget, max_set_size);
    Sum b = nft_bounded(pot, budget, max_set_size);
    Sum c = nft_bounded(poo, budget, max_set_size);
    Sum nt = nft_bounded(tru, budget, max_set_size);
    Sum no = nft_bounded(omega, budget, max_set_size);
    out << "NFT_" << budget << "(Pair(True, Omega))  = " << to_string(a) << "\n";
    out << "NFT_" << budget << "(Pair(Omega, True))  = " << to_string(b) << "\n";
    out << "NFT_" << budget << "(Pair(Omega, Omega)) = " << to_string(c) << "\n";
    PropertyReport stab = check_stability(por_instance(Term::hole(1), budget, search), max_set_size);
    r.cases.push_back(stab);
    out << "Pair(Omega, Omega) =_T inf { Pair(True, Omega), Pair(Omega, True) }: " << to_string(stab.status)
        << "\n";
    out << "Stability: Por Pair(Omega, Omega) =_T inf { Por Pair(True, Omega), Por Pair(Omega, True) }\n";
    out << "  =_T inf { True, True } =_T True\n";
    out << "Specification: Por Pair(Omega, Omega) =_T Omega, hence True =_T Omega\n";
    out << "but NFT_" << budget << "(True) has " << nt.size() << " elements and NFT_" << budget
        << "(Omega) = " << to_string(no) << ": no Por exists";
    const Sum empty_bag{RTerm::bag({})};
    bool ok = a == empty_bag && b == empty_bag && c == empty_bag && stab.holds() && !nt.empty() && no.empty();
    r.status = ok ? Status::Holds : Status::Inconclusive;
    r.instances = 5;
    r.detail = out.str();
    if (!ok) r.counterexample = {{"replay", replay_args}};
    r.millis = timer.millis();
    return r;
  }

  const Term& p = *candidate;
  replay_args["candidate"] = show(p);
  struct Line {
    int line;
    Term argument;
    const Term* expected;
    const char* expected_name;
  };
  const std::vector<Line> lines{{1, pto, &tru, "True"}, {1, pot, &tru, "True"}, {2, poo, &omega, "Omega"}};
  std::vector<int> failing;
  json failures = json::array();
  for (const auto& l : lines) {
    Term applied = Term::app(p, l.argument);
    EqReport eq = eq_bounded(applied, *l.expected, budget, search, max_set_size);
    ++r.instances;
    out << "line " << l.line << ": P " << show(l.argument) << " =_T " << l.expected_name << ": "
        << (eq.holds() ? "holds" : "fails") << " at budget\n";
    if (!eq.holds()) {
      if (std::find(failing.begin(), failing.end(), l.line) == failing.end()) failing.push_back(l.line);
      std::vector<RTerm> missing = eq.forward.missing;
      missing.insert(missing.end(), eq.backward.missing.begin(), eq.backward.missing.end());
      failures.push_back({{"line", l.line}, {"argument", show(l.argument)}, {"not_found", show_all(missing)}});
    }
  }
  if (failing.empty()) {
    out << "the candidate meets both specification lines at budget";
  } else {
    out << "the candidate fails specification line";
    if (failing.size() > 1) out << "s";
    for (std::size_t i = 0; i < failing.size(); ++i) out << (i ? " and " : " ") << failing[i];
    r.status = Status::Refuted;
    r.counterexample = {{"failing_lines", failing}, {"failures", failures}, {"replay", replay_args}};
  }
  r.detail = out.str();
  r.millis = timer.millis();
  return r;
}

PropertyReport check_theory_congruence(const Term& m, const Term& n, const Term& context, std::size_t budget,
                                       std::size_t search, std::size_t depth, std::size_t max_set_size) {
  require_one_hole(context, "check_theory_congruence");
  Timer timer;
  PropertyReport r = named("congruence");
  r.budgets = budgets_json(budget, search, depth);
  json replay_args = {{"check", "congruence"}, {"m", show(m)},        {"n", show(n)},        {"context", show(context)},
                      {"budget", budget},      {"search", search}, {"depth", depth}};
  const std::size_t size_cap = 4 * std::max(m.size(), n.size()) + 16;
  Term a = m, b = n;
  auto chain = reduction_path(m, n, depth, size_cap);
  if (!chain) {
    chain = reduction_path(n, m, depth, size_cap);
    std::swap(a, b);
  }
  if (!chain) {
    r.status = Status::NotApplicable;
    r.detail = "no →v chain of at most " + std::to_string(depth) + " steps between the terms";
    r.millis = timer.millis();
    return r;
  }
  Term ca = fill1(context, a), cb = fill1(context, b);
  std::size_t lifted_depth = chain->size() * std::max<std::size_t>(1, hole_degree(context, 1));
  auto lifted = reduction_path(ca, cb, lifted_depth, 4 * std::max(ca.size(), cb.size()) + 16);

  // C⟨a⟩ <= C⟨b⟩: witnesses for the reduct side are searched.
  LeqReport forward = leq_bounded(ca, cb, budget, search, max_set_size);

  // C⟨b⟩ <= C⟨a⟩: witnesses are built by inverting the chain, else searched.
  NftIndex right(cb, budget, max_set_size);
  std::optional<NftIndex> left_index;
  Normalizer norm;
  std::vector<RTerm> missing;
  std::size_t constructed = 0, searched = 0;
  for (const auto& t : right.normal_forms()) {
    const RTerm& s2 = *right.witness(t);
    if (lifted) {
      auto w = expand_chain(*lifted, s2);
      if (w && taylor_member(*w, ca) && norm.normalize(*w).count(t)) {
        ++constructed;
        continue;
      }
    }
    if (!left_index) left_index.emplace(ca, search, max_set_size);
    if (left_index->witness(t)) {
      ++searched;
    } else {
      missing.push_back(t);
    }
  }
  r.instances = forward.checked + right.normal_forms().size();
  std::ostringstream d;
  d << "C<a> = " << show(ca) << ", C<b> = " << show(cb) << ", " << chain->size() << "-step chain\n";
  d << "C<a> <= C<b>: " << forward.checked - forward.missing.size() << "/" << forward.checked << " found\n";
  d << "C<b> <= C<a>: " << right.normal_forms().size() - missing.size() << "/" << right.normal_forms().size()
    << " found (" << constructed << " by inverting the chain, " << searched << " by search)";
  r.detail = d.str();
  if (!forward.holds || !missing.empty()) {
    r.status = Status::Inconclusive;
    r.counterexample = {{"forward_not_found", show_all(forward.missing)},
                        {"backward_not_found", show_all(missing)},
                        {"replay", replay_args}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport check_unodavanti(const Term& m, std::size_t budget, std::size_t depth, std::size_t max_set_size) {
  require_closed_holes(m, "check_unodavanti");
  Timer timer;
  PropertyReport r = named("unodavanti");
  r.budgets = budgets_json(budget, 0, depth);
  auto reducts = reducts_v(m, depth, 4 * m.size() + 16);
  std::vector<RTerm> missing;
  for (const auto& t : nft_bounded(m, budget, max_set_size)) {
    ++r.instances;
    bool found = std::any_of(reducts.begin(), reducts.end(), [&](const Term& n) { return taylor_member(t, n); });
    if (!found) missing.push_back(t);
  }
  r.detail = std::to_string(r.instances) + " normal forms against " + std::to_string(reducts.size()) + " reducts";
  if (!missing.empty()) {
    r.status = Status::Inconclusive;
    r.counterexample = {{"no_reduct_contains", show_all(missing)},
                        {"replay", {{"check", "unodavanti"}, {"term", show(m)}, {"budget", budget}, {"depth", depth}}}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport check_remarks(const Term& m, std::size_t budget, std::size_t max_set_size) {
  Timer timer;
  PropertyReport r = named("remarks");
  r.budgets = budgets_json(budget);
  auto steps = step_v(m);
  std::size_t shape = 0, persistence = 0;
  json first;
  for (const auto& s : taylor_enumerate(m, budget, max_set_size)) {
    ++r.instances;
    if (m.is_value() && s.kind() != RKind::Bag) {
      ++shape;
      if (first.is_null()) first = {{"remark", "value shape"}, {"s", show(s)}};
    }
    if (!is_normal(s)) continue;
    for (const auto& st : steps) {
      if (!taylor_member(s, st.target)) {
        ++persistence;
        if (first.is_null()) first = {{"remark", "normal persistence"}, {"s", show(s)}, {"reduct", show(st.target)}};
      }
    }
  }
  r.detail = std::to_string(shape) + " value-shape violations, " + std::to_string(persistence) +
             " normal-persistence violations over " + std::to_string(steps.size()) + " reducts";
  if (!first.is_null()) {
    r.status = Status::Refuted;
    r.counterexample = first;
    r.counterexample["replay"] = {{"check", "remarks"}, {"term", show(m)}, {"budget", budget}};
  }
  r.millis = timer.millis();
  return r;
}

namespace {

// Agreement of the structural test with enumeration on one pair.
bool exact_on(const RTerm& s, const Term& m) {
  Sum e = taylor_enumerate(m, s.size());
  return taylor_member(s, m) == (e.count(s) > 0);
}

}  // namespace

PropertyReport check_taylor_exactness(std::uint64_t seed, std::size_t pairs) {
  Timer timer;
  PropertyReport r = named("taylor");
  r.seed = seed;
  r.budgets = {{"pairs", pairs}};
  TermGen gen(seed);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    std::uint32_t holes = gen.below(4) == 0 ? 1 : 0;
    Term m = gen.term(7, holes);
    RTerm s = gen.below(2) == 0 ? gen.taylor_element(m, 10) : gen.taylor_element(gen.term(7, holes), 10);
    ++r.instances;
    bool member = taylor_member(s, m);
    positives += member;
    if (!exact_on(s, m)) {
      r.status = Status::Refuted;
      r.counterexample = {{"s", show(s)},
                          {"term", show(m)},
                          {"member", member},
                          {"replay", {{"check", "taylor"}, {"s", show(s)}, {"term", show(m)}}}};
      break;
    }
  }
  r.detail = std::to_string(positives) + " of " + std::to_string(r.instances) + " pairs are members";
  r.millis = timer.millis();
  return r;
}

// ---------------------------------------------------------------------------
// Rigid lemmas

namespace {

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// ∏ over bag occurrences of n!, and whether every bag has distinct elements.
void bag_factorials(const RTerm& c, std::size_t& product, bool& distinct) {
  switch (c.kind()) {
    case RKind::Abs:
      bag_factorials(c.body(), product, distinct);
      break;
    case RKind::App:
      bag_factorials(c.fun(), product, distinct);
      bag_factorials(c.arg(), product, distinct);
      break;
    case RKind::Bag: {
      const auto& e = c.elems();
      product *= factorial(e.size());
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) distinct = false;
      for (const auto& x : e) bag_factorials(x, product, distinct);
      break;
    }
    default:
      break;
  }
}

struct FillKey {
  RTerm context;
  std::vector<std::vector<RTerm>> multisets;
  bool operator==(const FillKey&) const = default;
};

class RigidTrial {
 public:
  RigidTrial(std::uint64_t seed, std::size_t trial, std::size_t budget, std::size_t cap)
      : gen_(detail::combine(seed, trial)), budget_(budget), cap_(cap) {}

  // Returns a counterexample, or null.
  json run() {
    std::uint32_t holes = static_cast<std::uint32_t>(gen_.below(3));  // 0, 1 or 2
    context_ = holes == 0 ? gen_.term(5) : gen_.context(5, holes);
    for (std::uint32_t i = 0; i < holes; ++i) values_.push_back(gen_.value(4));

    json found = te_of_contexts();
    if (found.is_null()) found = round_trip();
    if (found.is_null()) found = injectivity();
    if (found.is_null()) found = reduction_compatibility();
    return found;
  }

  std::size_t fills() const { return fills_; }
  std::size_t rigids() const { return rigids_; }
  std::size_t spots() const { return spots_; }

  json describe() const {
    json vs = json::array();
    for (const auto& v : values_) vs.push_back(show(v));
    return {{"context", show(context_)}, {"values", vs}};
  }

 private:
  json te_of_contexts() {
    Sum lhs = taylor_fill_set(context_, values_, budget_, cap_);
    Sum rhs = taylor_enumerate(fill_context(context_, values_), budget_, cap_);
    if (lhs == rhs) return nullptr;
    std::vector<RTerm> only_l, only_r;
    std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(only_l));
    std::set_difference(rhs.begin(), rhs.end(), lhs.begin(), lhs.end(), std::back_inserter(only_r));
    return {{"lemma", "Te of contexts"}, {"only_in_fills", show_all(only_l)}, {"only_in_expansion", show_all(only_r)}};
  }

  json round_trip() {
    for (const auto& c : taylor_enumerate(context_, budget_, cap_)) {
      auto rs = rigids_of(c, cap_);
      std::size_t product = 1;
      bool distinct = true;
      bag_factorials(c, product, distinct);
      bool count_ok = distinct ? rs.size() == product : rs.size() <= product;
      if (!count_ok) {
        return {{"lemma", "Rigid cardinality"}, {"c", show(c)}, {"rigids", rs.size()}, {"factorials", product}};
      }
      for (const auto& r : rs) {
        ++rigids_;
        if (underlying(r) != c) return {{"lemma", "Rigid round trip"}, {"c", show(c)}, {"rigid", to_string(r)}};
      }
    }
    return nullptr;
  }

  json injectivity() {
    std::vector<std::vector<RTerm>> pools;
    for (const auto& v : values_) {
      auto pool = value_approximants(v, budget_, cap_);
      std::stable_sort(pool.begin(), pool.end(), [](const RTerm& a, const RTerm& b) { return a.size() < b.size(); });
      pools.push_back(std::move(pool));
    }
    std::unordered_map<RTerm, FillKey, RTermHash> seen;
    for (const auto& c : taylor_enumerate(context_, budget_, cap_)) {
      std::vector<std::size_t> degrees;
      for (std::uint32_t i = 1; i <= values_.size(); ++i) degrees.push_back(hole_degree(c, i));
      auto rs = rigids_of(c, cap_);
      std::vector<std::vector<RTerm>> args(values_.size());
      json bad;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t hole, std::size_t used) {
        if (!bad.is_null()) return;
        if (hole == degrees.size()) {
          FillKey key{c, args};
          for (auto& ms : key.multisets) std::sort(ms.begin(), ms.end());
          for (const auto& r : rs) {
            if (++fills_ > cap_) throw BudgetExceeded("rigid injectivity check exceeds the work cap");
            RTerm t = fill_rigid(r, args);
            auto [it, fresh] = seen.emplace(t, key);
            if (!fresh && !(it->second == key)) {
              bad = {{"lemma", "injectivity"}, {"fill", show(t)}, {"c1", show(it->second.context)},
                     {"c2", show(c)},          {"rigid", to_string(r)}};
              return;
            }
          }
          return;
        }
        if (args[hole].size() == degrees[hole]) {
          rec(hole + 1, used);
          return;
        }
        for (const auto& v : pools[hole]) {
          if (c.size() + used + v.size() - 1 > budget_) break;
          args[hole].push_back(v);
          rec(hole, used + v.size() - 1);
          args[hole].pop_back();
        }
      };
      rec(0, 0);
      if (!bad.is_null()) return bad;
    }
    return nullptr;
  }

  json reduction_compatibility() {
    if (values_.empty()) return nullptr;
    std::vector<RTerm> candidates;
    for (const auto& c : taylor_enumerate(context_, budget_, cap_)) {
      if (hole_degree(c, 1) > 0) candidates.push_back(c);
    }
    if (candidates.empty()) return nullptr;
    const RTerm& c = candidates[gen_.below(candidates.size())];
    auto rs = rigids_of(c, cap_);
    auto it = rs.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(gen_.below(rs.size())));
    const Rigid& r = *it;
    std::vector<std::vector<RTerm>> args;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      std::vector<RTerm> list;
      for (std::size_t k = hole_degree(c, static_cast<std::uint32_t>(i + 1)); k > 0; --k) {
        RTerm bag = gen_.taylor_element(values_[i], 6);
        while (bag.elems().size() != 1) bag = gen_.taylor_element(values_[i], 6);
        list.push_back(bag.elems()[0]);
      }
      args.push_back(std::move(list));
    }
    Normalizer norm;
    Sum whole = norm.normalize(fill_rigid(r, args));
    Sum pieces;
    for (const auto& w : norm.normalize(RTerm::bag({args[0][0]}))) {
      auto wargs = args;
      wargs[0][0] = w.elems()[0];
      Sum part = norm.normalize(fill_rigid(r, wargs));
      pieces.insert(part.begin(), part.end());
    }
    ++spots_;
    if (whole == pieces) return nullptr;
    return {{"lemma", "reduction compatibility"}, {"rigid", to_string(r)}, {"value", show(args[0][0])},
            {"whole", to_string(whole)},           {"pieces", to_string(pieces)}};
  }

  TermGen gen_;
  std::size_t budget_;
  std::size_t cap_;
  Term context_;
  std::vector<Term> values_;
  std::size_t fills_ = 0, rigids_ = 0, spots_ = 0;
};

}  // namespace

PropertyReport check_rigid_trial(std::uint64_t seed, std::size_t trial, std::size_t budget, std::size_t max_set_size) {
  Timer timer;
  PropertyReport r = named("rigid");
  r.seed = seed;
  r.budgets = {{"budget", budget}, {"trial", trial}};
  RigidTrial t(seed, trial, budget, max_set_size);
  json bad = t.run();
  r.instances = 1;
  r.detail = t.describe().dump();
  if (!bad.is_null()) {
    r.status = Status::Refuted;
    r.counterexample = bad;
    r.counterexample["instance"] = t.describe();
    r.counterexample["replay"] = {{"check", "rigid"}, {"seed", seed}, {"trial", trial}, {"budget", budget}};
  }
  r.millis = timer.millis();
  return r;
}

PropertyReport check_rigid_lemmas(std::uint64_t seed, std::size_t trials, std::size_t budget,
                                  std::size_t max_set_size) {
  Timer timer;
  PropertyReport r = named("rigid");
  r.seed = seed;
  r.budgets = {{"budget", budget}, {"trials", trials}};
  std::size_t fills = 0, rigids = 0, spots = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    RigidTrial t(seed, i, budget, max_set_size);
    json bad;
    try {
      bad = t.run();
    } catch (const BudgetExceeded& e) {
      r.status = Status::Inconclusive;
      r.counterexample = {{"trial", i}, {"error", e.what()}, {"instance", t.describe()}};
      break;
    }
    ++r.instances;
    fills += t.fills();
    rigids += t.rigids();
    spots += t.spots();
    if (!bad.is_null()) {
      r.status = Status::Refuted;
      r.counterexample = bad;
      r.counterexample["instance"] = t.describe();
      r.counterexample["replay"] = {{"check", "rigid"}, {"seed", seed}, {"trial", i}, {"budget", budget}};
      break;
    }
  }
  r.detail = std::to_string(rigids) + " rigids round-tripped, " + std::to_string(fills) +
             " rigid fills compared, " + std::to_string(spots) + " reduction spot checks";
  r.millis = timer.millis();
  return r;
}

// ---------------------------------------------------------------------------
// Corpus suites

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"partition",  "simulation", "monotone", "stability",
                                              "congruence", "unodavanti", "rigid",    "remarks",
                                              "normalization", "taylor"};
  return names;
}

namespace {

using Job = std::function<PropertyReport()>;

std::vector<PropertyReport> run_jobs(const std::vector<Job>& jobs, unsigned threads) {
  std::vector<PropertyReport> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  auto run_one = [&](std::size_t i) {
    try {
      out[i] = jobs[i]();
    } catch (const BudgetExceeded& e) {
      out[i].status = Status::Inconclusive;
      out[i].detail = e.what();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (threads <= 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += threads) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Refuted beats Inconclusive beats Holds; NotApplicable cases are skipped,
// unless every case is.
PropertyReport merge(std::string name, std::vector<std::string> labels, std::vector<PropertyReport> cases) {
  PropertyReport r = named(std::move(name));
  bool any_applicable = false;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& c = cases[i];
    c.property = labels[i];
    r.millis += c.millis;
    if (c.status == Status::NotApplicable) continue;
    any_applicable = true;
    ++r.instances;
    if (c.status == Status::Refuted ||
        (c.status == Status::Inconclusive && r.status == Status::Holds)) {
      r.status = c.status;
      if (c.status == Status::Refuted || r.counterexample.is_null()) r.counterexample = c.counterexample;
    }
  }
  if (!any_applicable) r.status = Status::NotApplicable;
  std::size_t holds = static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const PropertyReport& c) { return c.holds(); }));
  r.detail = std::to_string(holds) + " of " + std::to_string(cases.size()) + " cases hold";
  r.cases = std::move(cases);
  return r;
}

}  // namespace

PropertyReport run_suite(std::string_view property, const Corpus& corpus, const Budgets& b, unsigned jobs) {
  Timer timer;
  std::vector<Job> work;
  std::vector<std::string> labels;
  const std::size_t cap = b.max_set_size;
  auto one_hole = [](const NamedTerm& c) { return c.term.max_hole() <= 1; };

  if (property == "partition" || property == "normalization" || property == "unodavanti" ||
      property == "remarks") {
    for (const auto& t : corpus.terms) {
      labels.push_back(t.name);
      if (property == "partition") {
        work.push_back([&, m = t.term] { return check_partition(m, b.budget, cap); });
      } else if (property == "normalization") {
        work.push_back([&, m = t.term] { return check_normalization(m, b.budget, cap); });
      } else if (property == "unodavanti") {
        work.push_back([&, m = t.term] { return check_unodavanti(m, b.budget, b.depth, cap); });
      } else {
        work.push_back([&, m = t.term] { return check_remarks(m, b.budget, cap); });
      }
    }
  } else if (property == "simulation") {
    for (const auto& s : corpus.steps) {
      labels.push_back(s.from + " -> " + s.to);
      work.push_back([&, st = s.step] { return check_simulation(st.source, st.target, b.budget, b.search, cap); });
    }
  } else if (property == "monotone") {
    const Term omega = builtin_definitions().at("Omega");
    for (const auto& c : corpus.contexts) {
      if (!one_hole(c)) continue;
      for (const auto& t : corpus.terms) {
        labels.push_back(c.name + "[Omega <= " + t.name + "]");
        work.push_back(
            [&, ctx = c.term, n = t.term, omega] { return check_monotone(ctx, omega, n, b.budget, b.search, cap); });
      }
    }
  } else if (property == "stability") {
    for (const auto& c : corpus.contexts) {
      if (!one_hole(c)) continue;
      labels.push_back(c.name + " (Por instance)");
      work.push_back([&, ctx = c.term] { return check_stability(por_instance(ctx, b.budget, b.search), cap); });
    }
  } else if (property == "congruence") {
    for (const auto& c : corpus.contexts) {
      if (!one_hole(c)) continue;
      for (const auto& s : corpus.steps) {
        labels.push_back(c.name + "[" + s.from + " = " + s.to + "]");
        work.push_back([&, ctx = c.term, st = s.step] {
          return check_theory_congruence(st.source, st.target, ctx, b.budget, b.search, b.depth, cap);
        });
      }
    }
  } else if (property == "rigid") {
    PropertyReport r = check_rigid_lemmas(b.seed, b.trials, b.budget, cap);
    r.millis = timer.millis();
    return r;
  } else if (property == "taylor") {
    PropertyReport r = check_taylor_exactness(b.seed, b.trials * 5);
    r.millis = timer.millis();
    return r;
  } else {
    throw std::invalid_argument("unknown property '" + std::string(property) + "'");
  }

  PropertyReport r = merge(std::string(property), labels, run_jobs(work, jobs));
  r.budgets = budgets_json(b.budget, b.search, b.depth);
  r.seed = b.seed;
  r.millis = timer.millis();
  return r;
}

PropertyReport replay(const json& counterexample) {
  const json& a = counterexample.contains("replay") ? counterexample.at("replay") : counterexample;
  const std::string check = a.at("check").get<std::string>();
  auto num = [&](const char* key) { return a.at(key).get<std::size_t>(); };
  if (check == "partition") return check_partition(term_from(a.at("term")), num("budget"));
  if (check == "normalization") return check_normalization(term_from(a.at("term")), num("budget"));
  if (check == "remarks") return check_remarks(term_from(a.at("term")), num("budget"));
  if (check == "unodavanti") return check_unodavanti(term_from(a.at("term")), num("budget"), num("depth"));
  if (check == "simulation") {
    return check_simulation(term_from(a.at("m")), term_from(a.at("n")), num("budget"), num("search"));
  }
  if (check == "monotone") {
    return check_monotone(term_from(a.at("context")), term_from(a.at("m")), term_from(a.at("n")), num("budget"),
                          num("search"));
  }
  if (check == "congruence") {
    return check_theory_congruence(term_from(a.at("m")), term_from(a.at("n")), term_from(a.at("context")),
                                   num("budget"), num("search"), num("depth"));
  }
  if (check == "stability") {
    StabilityInstance inst;
    inst.context = term_from(a.at("context"));
    for (const auto& xs : a.at("families")) {
      std::vector<Term> fam;
      for (const auto& x : xs) fam.push_back(term_from(x));
      inst.families.push_back(std::move(fam));
    }
    for (const auto& x : a.at("upper")) inst.upper.push_back(term_from(x));
    for (const auto& x : a.at("infima")) inst.infima.push_back(term_from(x));
    inst.budget = num("budget");
    inst.search = num("search");
    return check_stability(inst);
  }
  if (check == "por") {
    std::optional<Term> candidate;
    if (a.contains("candidate")) candidate = term_from(a.at("candidate"));
    return demo_por(candidate, num("budget"), num("search"));
  }
  if (check == "taylor") {
    Timer timer;
    PropertyReport r = named("taylor");
    RTerm s = parse_resource(a.at("s").get<std::string>());
    Term m = term_from(a.at("term"));
    r.instances = 1;
    if (!exact_on(s, m)) {
      r.status = Status::Refuted;
      r.counterexample = counterexample;
    }
    r.millis = timer.millis();
    return r;
  }
  if (check == "rigid") return check_rigid_trial(a.at("seed").get<std::uint64_t>(), num("trial"), num("budget"));
  throw std::invalid_argument("replay: unknown check '" + check + "'");
}

}  // namespace cbvlab
