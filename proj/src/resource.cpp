#include "cbvlab/resource.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "cbvlab/detail/hash.hpp"
#include "cbvlab/detail/lexer.hpp"

namespace cbvlab {

namespace {
const std::string kEmptyName;
const std::vector<RTerm> kNoElems;
}  // namespace

RTerm RTerm::var(std::string name) {
  auto n = std::make_shared<RNode>();
  n->kind = RKind::Var;
  n->hash = detail::combine(11, detail::hash_string(name));
  n->name = std::move(name);
  return RTerm(std::move(n));
}

RTerm RTerm::bound(std::uint32_t index) {
  auto n = std::make_shared<RNode>();
  n->kind = RKind::Bound;
  n->index = index;
  n->hash = detail::combine(12, index);
  n->loose = index + 1;
  return RTerm(std::move(n));
}

RTerm RTerm::hole(std::uint32_t index) {
  if (index == 0) throw std::invalid_argument("hole indices start at 1");
  auto n = std::make_shared<RNode>();
  n->kind = RKind::Hole;
  n->index = index;
  n->hash = detail::combine(13, index);
  n->max_hole = index;
  return RTerm(std::move(n));
}

RTerm RTerm::abs(std::string hint, RTerm body) {
  if (!body || body.is_value()) throw std::invalid_argument("resource abstraction body must be a simple term");
  auto n = std::make_shared<RNode>();
  n->kind = RKind::Abs;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->hash = detail::combine(14, body.hash());
  n->loose = body.loose() == 0 ? 0 : body.loose() - 1;
  n->max_hole = body.max_hole();
  n->a = std::move(body);
  return RTerm(std::move(n));
}

RTerm RTerm::app(RTerm fun, RTerm arg) {
  if (!fun || !arg || fun.is_value() || arg.is_value()) {
    throw std::invalid_argument("resource application needs simple terms on both sides");
  }
  auto n = std::make_shared<RNode>();
  n->kind = RKind::App;
  n->size = fun.size() + arg.size();
  n->hash = detail::combine(detail::combine(15, fun.hash()), arg.hash());
  n->loose = std::max(fun.loose(), arg.loose());
  n->max_hole = std::max(fun.max_hole(), arg.max_hole());
  n->a = std::move(fun);
  n->b = std::move(arg);
  return RTerm(std::move(n));
}

RTerm RTerm::bag(std::vector<RTerm> elems) {
  for (const auto& e : elems) {
    if (!e || !e.is_value()) throw std::invalid_argument("bag elements must be resource values");
  }
  std::sort(elems.begin(), elems.end());
  auto n = std::make_shared<RNode>();
  n->kind = RKind::Bag;
  std::uint64_t h = detail::combine(16, elems.size());
  std::size_t size = 1;
  for (const auto& e : elems) {
    h = detail::combine(h, e.hash());
    size += e.size();
    n->loose = std::max(n->loose, e.loose());
    n->max_hole = std::max(n->max_hole, e.max_hole());
  }
  n->hash = h;
  n->size = size;
  n->elems = std::move(elems);
  return RTerm(std::move(n));
}

RKind RTerm::kind() const { return node_->kind; }
const std::string& RTerm::name() const { return node_ ? node_->name : kEmptyName; }
std::uint32_t RTerm::index() const { return node_->index; }
const RTerm& RTerm::body() const { return node_->a; }
const RTerm& RTerm::fun() const { return node_->a; }
const RTerm& RTerm::arg() const { return node_->b; }
const std::vector<RTerm>& RTerm::elems() const { return node_ ? node_->elems : kNoElems; }
std::size_t RTerm::size() const { return node_ ? node_->size : 0; }
std::uint64_t RTerm::hash() const { return node_ ? node_->hash : 0; }
std::uint32_t RTerm::loose() const { return node_ ? node_->loose : 0; }
std::uint32_t RTerm::max_hole() const { return node_ ? node_->max_hole : 0; }

bool RTerm::is_value() const {
  auto k = kind();
  return k == RKind::Var || k == RKind::Bound || k == RKind::Hole || k == RKind::Abs;
}

std::strong_ordering operator<=>(const RTerm& a, const RTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const RNode& x = *a.node_;
  const RNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.hash <=> y.hash; c != 0) return c;
  if (auto c = x.size <=> y.size; c != 0) return c;
  switch (x.kind) {
    case RKind::Var:
      return x.name.compare(y.name) <=> 0;
    case RKind::Bound:
    case RKind::Hole:
      return x.index <=> y.index;
    case RKind::Abs:
      return x.a <=> y.a;
    case RKind::App:
      if (auto c = x.a <=> y.a; c != 0) return c;
      return x.b <=> y.b;
    case RKind::Bag: {
      if (auto c = x.elems.size() <=> y.elems.size(); c != 0) return c;
      for (std::size_t i = 0; i < x.elems.size(); ++i) {
        if (auto c = x.elems[i] <=> y.elems[i]; c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

bool operator==(const RTerm& a, const RTerm& b) { return (a <=> b) == 0; }

// ---------------------------------------------------------------------------
// Degrees, shifting and linear substitution

std::size_t degree(const RTerm& s, const std::string& x) {
  switch (s.kind()) {
    case RKind::Var:
      return s.name() == x ? 1 : 0;
    case RKind::Abs:
      return degree(s.body(), x);
    case RKind::App:
      return degree(s.fun(), x) + degree(s.arg(), x);
    case RKind::Bag: {
      std::size_t n = 0;
      for (const auto& e : s.elems()) n += degree(e, x);
      return n;
    }
    default:
      return 0;
  }
}

std::size_t hole_degree(const RTerm& s, std::uint32_t i) {
  if (s.max_hole() < i) return 0;
  switch (s.kind()) {
    case RKind::Hole:
      return s.index() == i ? 1 : 0;
    case RKind::Abs:
      return hole_degree(s.body(), i);
    case RKind::App:
      return hole_degree(s.fun(), i) + hole_degree(s.arg(), i);
    case RKind::Bag: {
      std::size_t n = 0;
      for (const auto& e : s.elems()) n += hole_degree(e, i);
      return n;
    }
    default:
      return 0;
  }
}

RTerm shift(const RTerm& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case RKind::Bound:
      return RTerm::bound(static_cast<std::uint32_t>(static_cast<int>(t.index()) + delta));
    case RKind::Abs:
      return RTerm::abs(t.name(), shift(t.body(), delta, cutoff + 1));
    case RKind::App:
      return RTerm::app(shift(t.fun(), delta, cutoff), shift(t.arg(), delta, cutoff));
    case RKind::Bag: {
      std::vector<RTerm> es;
      es.reserve(t.elems().size());
      for (const auto& e : t.elems()) es.push_back(shift(e, delta, cutoff));
      return RTerm::bag(std::move(es));
    }
    default:
      return t;
  }
}

namespace {

std::size_t count_index(const RTerm& t, std::uint32_t depth) {
  if (t.loose() <= depth) return 0;
  switch (t.kind()) {
    case RKind::Bound:
      return t.index() == depth ? 1 : 0;
    case RKind::Abs:
      return count_index(t.body(), depth + 1);
    case RKind::App:
      return count_index(t.fun(), depth) + count_index(t.arg(), depth);
    case RKind::Bag: {
      std::size_t n = 0;
      for (const auto& e : t.elems()) n += count_index(e, depth);
      return n;
    }
    default:
      return 0;
  }
}

RTerm close_name(const RTerm& t, const std::string& x, std::uint32_t depth) {
  switch (t.kind()) {
    case RKind::Var:
      return t.name() == x ? RTerm::bound(depth) : t;
    case RKind::Bound:
      return t.index() >= depth ? RTerm::bound(t.index() + 1) : t;
    case RKind::Abs:
      return RTerm::abs(t.name(), close_name(t.body(), x, depth + 1));
    case RKind::App:
      return RTerm::app(close_name(t.fun(), x, depth), close_name(t.arg(), x, depth));
    case RKind::Bag: {
      std::vector<RTerm> es;
      es.reserve(t.elems().size());
      for (const auto& e : t.elems()) es.push_back(close_name(e, x, depth));
      return RTerm::bag(std::move(es));
    }
    default:
      return t;
  }
}

// Replaces the occurrences of index `depth`, in traversal order, by
// values[slot[0]], values[slot[1]], ... and lowers the other dangling indices.
class OccurrenceFiller {
 public:
  OccurrenceFiller(const std::vector<RTerm>& values, const std::vector<std::size_t>& slot)
      : values_(values), slot_(slot) {}

  RTerm fill(const RTerm& t, std::uint32_t depth) {
    if (t.loose() <= depth) return t;
    switch (t.kind()) {
      case RKind::Bound:
        if (t.index() == depth) return shift(values_[slot_[next_++]], static_cast<int>(depth));
        return RTerm::bound(t.index() - 1);
      case RKind::Abs:
        return RTerm::abs(t.name(), fill(t.body(), depth + 1));
      case RKind::App: {
        RTerm f = fill(t.fun(), depth);
        RTerm a = fill(t.arg(), depth);
        return RTerm::app(std::move(f), std::move(a));
      }
      case RKind::Bag: {
        std::vector<RTerm> es;
        es.reserve(t.elems().size());
        for (const auto& e : t.elems()) es.push_back(fill(e, depth));
        return RTerm::bag(std::move(es));
      }
      default:
        return t;
    }
  }

 private:
  const std::vector<RTerm>& values_;
  const std::vector<std::size_t>& slot_;
  std::size_t next_ = 0;
};

}  // namespace

Sum linear_subst_bound(const RTerm& body, const std::vector<RTerm>& values) {
  Sum out;
  if (count_index(body, 0) != values.size()) return out;
  std::vector<RTerm> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  // Equal values share a slot id so next_permutation visits each distinct
  // assignment once.
  std::vector<std::size_t> slot(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    slot[i] = (i > 0 && sorted[i] == sorted[i - 1]) ? slot[i - 1] : i;
  }
  do {
    OccurrenceFiller filler(sorted, slot);
    out.insert(filler.fill(body, 0));
  } while (std::next_permutation(slot.begin(), slot.end()));
  return out;
}

Sum linear_subst(const RTerm& s, const std::string& x, const RTerm& bag) {
  if (!bag || bag.kind() != RKind::Bag) throw std::invalid_argument("linear_subst: argument must be a bag");
  return linear_subst_bound(close_name(s, x, 0), bag.elems());
}

// ---------------------------------------------------------------------------
// Redexes and one-step reduction

RedexKind redex_kind(const RTerm& t) {
  if (t.kind() != RKind::App || t.fun().kind() != RKind::Bag) return RedexKind::None;
  const auto& head = t.fun().elems();
  if (head.size() != 1) return RedexKind::Clash;
  if (head[0].kind() == RKind::Abs && t.arg().kind() == RKind::Bag) return RedexKind::Beta;
  return RedexKind::None;
}

Sum contract(const RTerm& t) {
  switch (redex_kind(t)) {
    case RedexKind::Beta:
      return linear_subst_bound(t.fun().elems()[0].body(), t.arg().elems());
    case RedexKind::Clash:
      return {};
    case RedexKind::None:
      break;
  }
  throw std::logic_error("contract: not a redex: " + to_string(t));
}

namespace {

void positions_rec(const RTerm& t, RPath& path, std::vector<RPath>& out) {
  switch (t.kind()) {
    case RKind::App:
      if (redex_kind(t) != RedexKind::None) out.push_back(path);
      path.push_back(0);
      positions_rec(t.fun(), path, out);
      path.back() = 1;
      positions_rec(t.arg(), path, out);
      path.pop_back();
      break;
    case RKind::Abs:
      path.push_back(0);
      positions_rec(t.body(), path, out);
      path.pop_back();
      break;
    case RKind::Bag:
      for (std::uint32_t i = 0; i < t.elems().size(); ++i) {
        path.push_back(i);
        positions_rec(t.elems()[i], path, out);
        path.pop_back();
      }
      break;
    default:
      break;
  }
}

bool first_lo(const RTerm& t, RPath& path) {
  switch (t.kind()) {
    case RKind::App:
      if (redex_kind(t) != RedexKind::None) return true;
      path.push_back(0);
      if (first_lo(t.fun(), path)) return true;
      path.back() = 1;
      if (first_lo(t.arg(), path)) return true;
      path.pop_back();
      return false;
    case RKind::Abs:
      path.push_back(0);
      if (first_lo(t.body(), path)) return true;
      path.pop_back();
      return false;
    case RKind::Bag:
      for (std::uint32_t i = 0; i < t.elems().size(); ++i) {
        path.push_back(i);
        if (first_lo(t.elems()[i], path)) return true;
        path.pop_back();
      }
      return false;
    default:
      return false;
  }
}

// Right-to-left post-order: the first redex met contains no other redex.
bool first_ri(const RTerm& t, RPath& path) {
  switch (t.kind()) {
    case RKind::App:
      path.push_back(1);
      if (first_ri(t.arg(), path)) return true;
      path.back() = 0;
      if (first_ri(t.fun(), path)) return true;
      path.pop_back();
      return redex_kind(t) != RedexKind::None;
    case RKind::Abs:
      path.push_back(0);
      if (first_ri(t.body(), path)) return true;
      path.pop_back();
      return false;
    case RKind::Bag:
      for (std::uint32_t i = static_cast<std::uint32_t>(t.elems().size()); i-- > 0;) {
        path.push_back(i);
        if (first_ri(t.elems()[i], path)) return true;
        path.pop_back();
      }
      return false;
    default:
      return false;
  }
}

Sum fire_rec(const RTerm& t, const RPath& path, std::size_t i) {
  if (i == path.size()) return contract(t);
  Sum out;
  switch (t.kind()) {
    case RKind::App:
      if (path[i] == 0) {
        for (const auto& u : fire_rec(t.fun(), path, i + 1)) out.insert(RTerm::app(u, t.arg()));
      } else {
        for (const auto& u : fire_rec(t.arg(), path, i + 1)) out.insert(RTerm::app(t.fun(), u));
      }
      return out;
    case RKind::Abs:
      for (const auto& u : fire_rec(t.body(), path, i + 1)) out.insert(RTerm::abs(t.name(), u));
      return out;
    case RKind::Bag: {
      const auto& es = t.elems();
      if (path[i] >= es.size()) break;
      for (const auto& u : fire_rec(es[path[i]], path, i + 1)) {
        std::vector<RTerm> copy = es;
        copy[path[i]] = u;
        out.insert(RTerm::bag(std::move(copy)));
      }
      return out;
    }
    default:
      break;
  }
  throw std::invalid_argument("fire_at: path does not address a subterm");
}

}  // namespace

std::vector<RPath> redex_positions(const RTerm& t) {
  std::vector<RPath> out;
  RPath path;
  positions_rec(t, path, out);
  return out;
}

Sum fire_at(const RTerm& t, const RPath& path) { return fire_rec(t, path, 0); }

Sum one_step_reducts(const RTerm& t) {
  Sum out;
  for (const auto& p : redex_positions(t)) {
    Sum s = fire_at(t, p);
    out.insert(s.begin(), s.end());
  }
  return out;
}

StepResult step_r(const RTerm& s) {
  RPath path;
  if (!first_lo(s, path)) return {};
  return {false, fire_at(s, path)};
}

bool is_normal(const RTerm& s) {
  RPath path;
  return !first_lo(s, path);
}

// ---------------------------------------------------------------------------
// Normalisation

const Sum& Normalizer::normalize(const RTerm& s) {
  return strategy_ == Strategy::Compositional ? compositional(s) : stepwise(s);
}

Sum Normalizer::normalize(const Sum& s) {
  Sum out;
  for (const auto& t : s) {
    const Sum& n = normalize(t);
    out.insert(n.begin(), n.end());
  }
  return out;
}

const Sum& Normalizer::stepwise(const RTerm& s) {
  if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  RPath path;
  bool found = strategy_ == Strategy::LeftmostOutermost ? first_lo(s, path) : first_ri(s, path);
  Sum out;
  if (!found) {
    out.insert(s);
  } else {
    ++steps_;
    Sum next = fire_at(s, path);
    for (const auto& u : next) {
      if (check_measure_ && u.size() >= s.size()) {
        throw std::logic_error("size did not decrease: " + to_string(s) + " -> " + to_string(u));
      }
      const Sum& n = stepwise(u);
      out.insert(n.begin(), n.end());
    }
  }
  return cache_.emplace(s, std::move(out)).first->second;
}

const Sum& Normalizer::compositional(const RTerm& s) {
  if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  Sum out;
  switch (s.kind()) {
    case RKind::Var:
    case RKind::Bound:
    case RKind::Hole:
      out.insert(s);
      break;
    case RKind::Abs:
      for (const auto& b : compositional(s.body())) out.insert(RTerm::abs(s.name(), b));
      break;
    case RKind::Bag: {
      const auto& es = s.elems();
      std::vector<const Sum*> choices;
      choices.reserve(es.size());
      bool empty = false;
      for (const auto& e : es) {
        const Sum& c = compositional(e);
        if (c.empty()) empty = true;
        choices.push_back(&c);
      }
      if (empty) break;
      std::vector<Sum::const_iterator> pick;
      for (const Sum* c : choices) pick.push_back(c->begin());
      while (true) {
        std::vector<RTerm> combo;
        combo.reserve(pick.size());
        for (auto& it : pick) combo.push_back(*it);
        out.insert(RTerm::bag(std::move(combo)));
        std::size_t k = 0;
        for (; k < pick.size(); ++k) {
          if (++pick[k] != choices[k]->end()) break;
          pick[k] = choices[k]->begin();
        }
        if (k == pick.size()) break;
      }
      break;
    }
    case RKind::App: {
      const Sum& fs = compositional(s.fun());
      if (fs.empty()) break;
      const Sum& as = compositional(s.arg());
      for (const auto& f : fs) {
        for (const auto& a : as) {
          const Sum& r = root_of_normal_app(RTerm::app(f, a));
          out.insert(r.begin(), r.end());
        }
      }
      break;
    }
  }
  return cache_.emplace(s, std::move(out)).first->second;
}

const Sum& Normalizer::root_of_normal_app(const RTerm& s) {
  if (auto it = root_cache_.find(s); it != root_cache_.end()) return it->second;
  Sum out;
  switch (redex_kind(s)) {
    case RedexKind::None:
      out.insert(s);
      break;
    case RedexKind::Clash:
      ++steps_;
      break;
    case RedexKind::Beta:
      ++steps_;
      for (const auto& u : contract(s)) {
        if (check_measure_ && u.size() >= s.size()) {
          throw std::logic_error("size did not decrease: " + to_string(s) + " -> " + to_string(u));
        }
        const Sum& n = compositional(u);
        out.insert(n.begin(), n.end());
      }
      break;
  }
  return root_cache_.emplace(s, std::move(out)).first->second;
}

Sum normalize(const RTerm& s, Strategy strategy) {
  Normalizer n(strategy);
  return n.normalize(s);
}

Reachability reaches(const RTerm& from, const RTerm& to, std::size_t max_visited) {
  if (from == to) return Reachability::Reachable;
  std::unordered_set<RTerm, RTermHash> seen;
  std::vector<RTerm> stack{from};
  while (!stack.empty()) {
    RTerm t = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(t).second) continue;
    if (seen.size() > max_visited) return Reachability::Unknown;
    for (const auto& u : one_step_reducts(t)) {
      if (u == to) return Reachability::Reachable;
      if (u.size() > to.size()) stack.push_back(u);
    }
  }
  return Reachability::Unreachable;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

using detail::Lexer;
using detail::Tok;

class ResourceParser {
 public:
  explicit ResourceParser(std::string_view text) : lex_(text) {}

  RTerm parse() {
    RTerm t = term();
    if (lex_.peek().kind != Tok::End) throw ParseError("unexpected trailing input", lex_.peek().pos);
    return t;
  }

 private:
  bool at_simple_start() const {
    auto k = lex_.peek().kind;
    return k == Tok::LBracket || k == Tok::LParen;
  }

  RTerm term() {
    std::size_t pos = lex_.peek().pos;
    RTerm t = primary();
    if (t.is_value()) return t;
    while (at_simple_start()) {
      std::size_t apos = lex_.peek().pos;
      RTerm a = primary();
      if (a.is_value()) throw ParseError("application argument must be a simple term", apos);
      t = RTerm::app(std::move(t), std::move(a));
    }
    (void)pos;
    return t;
  }

  RTerm primary() {
    auto tok = lex_.next();
    switch (tok.kind) {
      case Tok::LBracket: {
        std::vector<RTerm> es;
        if (lex_.peek().kind != Tok::RBracket) {
          while (true) {
            std::size_t vpos = lex_.peek().pos;
            RTerm v = term();
            if (!v.is_value()) throw ParseError("bag elements must be values", vpos);
            es.push_back(std::move(v));
            if (lex_.peek().kind == Tok::Comma) {
              lex_.next();
              continue;
            }
            break;
          }
        }
        lex_.expect(Tok::RBracket, "']'");
        return RTerm::bag(std::move(es));
      }
      case Tok::LParen: {
        RTerm t = term();
        lex_.expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Lambda: {
        auto name = lex_.expect(Tok::Ident, "a binder name");
        if (lex_.peek().kind == Tok::Ident) {
          throw ParseError("resource abstractions take one binder (the body must be a simple term)",
                           lex_.peek().pos);
        }
        lex_.expect(Tok::Dot, "'.'");
        scope_.push_back(name.text);
        std::size_t bpos = lex_.peek().pos;
        RTerm body = term();
        scope_.pop_back();
        if (body.is_value()) throw ParseError("abstraction body must be a simple term", bpos);
        return RTerm::abs(name.text, std::move(body));
      }
      case Tok::Ident:
        for (std::size_t j = scope_.size(); j-- > 0;) {
          if (scope_[j] == tok.text) return RTerm::bound(static_cast<std::uint32_t>(scope_.size() - 1 - j));
        }
        return RTerm::var(tok.text);
      case Tok::Hole:
        return RTerm::hole(tok.hole);
      default:
        throw ParseError("expected a resource term", tok.pos);
    }
  }

  Lexer lex_;
  std::vector<std::string> scope_;
};

void collect_free(const RTerm& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case RKind::Var:
      out.insert(t.name());
      break;
    case RKind::Abs:
      collect_free(t.body(), out);
      break;
    case RKind::App:
      collect_free(t.fun(), out);
      collect_free(t.arg(), out);
      break;
    case RKind::Bag:
      for (const auto& e : t.elems()) collect_free(e, out);
      break;
    default:
      break;
  }
}

class RPrinter {
 public:
  explicit RPrinter(const RTerm& t) { collect_free(t, avoid_); }

  void print(const RTerm& t, int prec) {
    switch (t.kind()) {
      case RKind::Var:
        out_ += t.name();
        break;
      case RKind::Bound:
        if (t.index() < scope_.size()) {
          out_ += scope_[scope_.size() - 1 - t.index()];
        } else {
          out_ += "#" + std::to_string(t.index());
        }
        break;
      case RKind::Hole:
        out_ += "_" + std::to_string(t.index());
        break;
      case RKind::Abs: {
        std::string n = t.name().empty() ? "x" : t.name();
        while (avoid_.count(n) || std::find(scope_.begin(), scope_.end(), n) != scope_.end()) n += "'";
        out_ += "\\" + n + ". ";
        scope_.push_back(n);
        print(t.body(), 0);
        scope_.pop_back();
        break;
      }
      case RKind::Bag: {
        out_ += "[";
        bool first = true;
        for (const auto& e : t.elems()) {
          if (!first) out_ += ", ";
          first = false;
          print(e, 0);
        }
        out_ += "]";
        break;
      }
      case RKind::App:
        if (prec == 2) out_ += "(";
        print(t.fun(), 1);
        out_ += " ";
        print(t.arg(), 2);
        if (prec == 2) out_ += ")";
        break;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  std::set<std::string> avoid_;
  std::vector<std::string> scope_;
  std::string out_;
};

}  // namespace

RTerm parse_resource(std::string_view text) { return ResourceParser(text).parse(); }

RTerm parse_simple(std::string_view text) {
  RTerm t = parse_resource(text);
  if (t.is_value()) throw ParseError("expected a simple resource term (bag or application)", 0);
  return t;
}

std::string to_string(const RTerm& t) {
  if (!t) return "<null>";
  RPrinter p(t);
  p.print(t, 0);
  return p.take();
}

std::string to_string(const Sum& s) {
  if (s.empty()) return "0";
  std::string out = "{ ";
  bool first = true;
  for (const auto& t : s) {
    if (!first) out += " ; ";
    first = false;
    out += to_string(t);
  }
  return out + " }";
}

}  // namespace cbvlab
