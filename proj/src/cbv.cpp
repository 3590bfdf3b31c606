#include "cbvlab/cbv.hpp"

#include <map>
#include <stdexcept>

namespace cbvlab {

bool is_redex_v(const Term& t) {
  return t.kind() == TermKind::App && t.fun().kind() == TermKind::Abs && t.arg().is_value();
}

namespace {

void collect(const Term& root, const Term& t, Path& path, std::vector<ReductionStep>& out) {
  switch (t.kind()) {
    case TermKind::App:
      if (is_redex_v(t)) {
        Term contractum = open(t.fun().body(), t.arg());
        out.push_back({root, replace_at(root, path, contractum), path});
      }
      path.push_back(Dir::Fun);
      collect(root, t.fun(), path, out);
      path.back() = Dir::Arg;
      collect(root, t.arg(), path, out);
      path.pop_back();
      break;
    case TermKind::Abs:
      path.push_back(Dir::Body);
      collect(root, t.body(), path, out);
      path.pop_back();
      break;
    default:
      break;
  }
}

// First redex in pre-order, contracted; empty Term if normal.
Term leftmost_outermost(const Term& t) {
  switch (t.kind()) {
    case TermKind::App: {
      if (is_redex_v(t)) return open(t.fun().body(), t.arg());
      if (Term f = leftmost_outermost(t.fun())) return Term::app(std::move(f), t.arg());
      if (Term a = leftmost_outermost(t.arg())) return Term::app(t.fun(), std::move(a));
      return {};
    }
    case TermKind::Abs:
      if (Term b = leftmost_outermost(t.body())) return Term::abs(t.name(), std::move(b));
      return {};
    default:
      return {};
  }
}

}  // namespace

std::vector<ReductionStep> step_v(const Term& m) {
  std::vector<ReductionStep> out;
  Path path;
  collect(m, m, path, out);
  return out;
}

ReduceResult reduce_v(const Term& m, std::size_t max_steps) {
  ReduceResult r{false, m, 0};
  while (true) {
    Term next = leftmost_outermost(r.term);
    if (!next) {
      r.normal = true;
      return r;
    }
    if (r.steps == max_steps) return r;
    r.term = std::move(next);
    ++r.steps;
  }
}

std::set<Term> reducts_v(const Term& m, std::size_t depth, std::size_t size_cap) {
  std::set<Term> seen;
  if (m.size() > size_cap) return seen;
  seen.insert(m);
  std::vector<Term> frontier{m};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Term> next;
    for (const Term& t : frontier) {
      for (auto& step : step_v(t)) {
        if (step.target.size() > size_cap) continue;
        if (seen.insert(step.target).second) next.push_back(step.target);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

bool joinable_v(const Term& a, const Term& b, std::size_t depth, std::size_t size_cap) {
  auto ra = reducts_v(a, depth, size_cap);
  auto rb = reducts_v(b, depth, size_cap);
  for (const Term& t : ra) {
    if (rb.count(t)) return true;
  }
  return false;
}

std::optional<std::vector<ReductionStep>> reduction_path(const Term& from, const Term& to, std::size_t depth,
                                                         std::size_t size_cap) {
  if (from == to) return std::vector<ReductionStep>{};
  std::map<Term, ReductionStep> parent;
  std::vector<Term> frontier{from};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Term> next;
    for (const Term& t : frontier) {
      for (auto& step : step_v(t)) {
        if (step.target.size() > size_cap || step.target == from || parent.count(step.target)) continue;
        Term target = step.target;
        parent.emplace(target, std::move(step));
        if (target == to) {
          std::vector<ReductionStep> chain;
          for (Term cur = to; cur != from;) {
            const ReductionStep& s = parent.at(cur);
            chain.push_back(s);
            cur = s.source;
          }
          return std::vector<ReductionStep>(chain.rbegin(), chain.rend());
        }
        next.push_back(std::move(target));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

const Term& subterm_at(const Term& m, const Path& path) {
  const Term* cur = &m;
  for (Dir d : path) {
    switch (d) {
      case Dir::Body:
        if (cur->kind() != TermKind::Abs) throw std::invalid_argument("subterm_at: path leaves the term");
        cur = &cur->body();
        break;
      case Dir::Fun:
      case Dir::Arg:
        if (cur->kind() != TermKind::App) throw std::invalid_argument("subterm_at: path leaves the term");
        cur = d == Dir::Fun ? &cur->fun() : &cur->arg();
        break;
    }
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Path& path, std::size_t i, const Term& r) {
  if (i == path.size()) return r;
  switch (path[i]) {
    case Dir::Body:
      return Term::abs(t.name(), replace_rec(t.body(), path, i + 1, r));
    case Dir::Fun:
      return Term::app(replace_rec(t.fun(), path, i + 1, r), t.arg());
    case Dir::Arg:
      return Term::app(t.fun(), replace_rec(t.arg(), path, i + 1, r));
  }
  return t;
}

}  // namespace

Term replace_at(const Term& m, const Path& path, const Term& replacement) {
  subterm_at(m, path);
  return replace_rec(m, path, 0, replacement);
}

}  // namespace cbvlab
