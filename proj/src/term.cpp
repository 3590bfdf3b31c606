#include "cbvlab/term.hpp"

#include <algorithm>
#include <stdexcept>

#include "cbvlab/detail/hash.hpp"

namespace cbvlab {

namespace {

const std::string kEmpty;

}  // namespace

Term Term::free(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Free;
  n->hash = detail::combine(1, detail::hash_string(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::bound(std::uint32_t index) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Bound;
  n->index = index;
  n->hash = detail::combine(2, index);
  n->loose = index + 1;
  return Term(std::move(n));
}

Term Term::hole(std::uint32_t index) {
  if (index == 0) throw std::invalid_argument("hole indices start at 1");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Hole;
  n->index = index;
  n->hash = detail::combine(3, index);
  n->max_hole = index;
  return Term(std::move(n));
}

Term Term::abs(std::string hint, Term body) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Abs;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->hash = detail::combine(4, body.hash());
  n->max_hole = body.max_hole();
  n->loose = body.loose() == 0 ? 0 : body.loose() - 1;
  n->a = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::App;
  n->size = 1 + fun.size() + arg.size();
  n->hash = detail::combine(detail::combine(5, fun.hash()), arg.hash());
  n->max_hole = std::max(fun.max_hole(), arg.max_hole());
  n->loose = std::max(fun.loose(), arg.loose());
  n->a = std::move(fun);
  n->b = std::move(arg);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_ ? node_->name : kEmpty; }
std::uint32_t Term::index() const { return node_->index; }
const Term& Term::body() const { return node_->a; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
std::size_t Term::size() const { return node_ ? node_->size : 0; }
std::uint64_t Term::hash() const { return node_ ? node_->hash : 0; }
std::uint32_t Term::max_hole() const { return node_ ? node_->max_hole : 0; }
std::uint32_t Term::loose() const { return node_ ? node_->loose : 0; }

bool Term::is_value() const {
  auto k = kind();
  return k == TermKind::Free || k == TermKind::Bound || k == TermKind::Abs;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.hash <=> y.hash; c != 0) return c;
  if (auto c = x.size <=> y.size; c != 0) return c;
  switch (x.kind) {
    case TermKind::Free:
      return x.name.compare(y.name) <=> 0;
    case TermKind::Bound:
    case TermKind::Hole:
      return x.index <=> y.index;
    case TermKind::Abs:
      return x.a <=> y.a;
    case TermKind::App:
      if (auto c = x.a <=> y.a; c != 0) return c;
      return x.b <=> y.b;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

bool alpha_eq(const Term& a, const Term& b) { return a == b; }

namespace {

void collect_free(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Free:
      out.insert(t.name());
      break;
    case TermKind::Abs:
      collect_free(t.body(), out);
      break;
    case TermKind::App:
      collect_free(t.fun(), out);
      collect_free(t.arg(), out);
      break;
    default:
      break;
  }
}

Term replace_free(const Term& t, const std::string& x, const Term& v, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::Free:
      return t.name() == x ? shift(v, static_cast<int>(depth)) : t;
    case TermKind::Abs:
      return Term::abs(t.name(), replace_free(t.body(), x, v, depth + 1));
    case TermKind::App:
      return Term::app(replace_free(t.fun(), x, v, depth), replace_free(t.arg(), x, v, depth));
    default:
      return t;
  }
}

// Binds free names of `arg` to the enclosing binders `scope` (innermost last).
Term bind_into(const Term& arg, const std::vector<std::string>& scope, std::uint32_t depth) {
  switch (arg.kind()) {
    case TermKind::Free:
      for (std::size_t j = scope.size(); j-- > 0;) {
        if (scope[j] == arg.name()) {
          return Term::bound(depth + static_cast<std::uint32_t>(scope.size() - 1 - j));
        }
      }
      return arg;
    case TermKind::Bound:
      if (arg.index() >= depth) {
        return Term::bound(arg.index() + static_cast<std::uint32_t>(scope.size()));
      }
      return arg;
    case TermKind::Abs:
      return Term::abs(arg.name(), bind_into(arg.body(), scope, depth + 1));
    case TermKind::App:
      return Term::app(bind_into(arg.fun(), scope, depth), bind_into(arg.arg(), scope, depth));
    default:
      return arg;
  }
}

template <class OnHole>
Term fill_rec(const Term& c, std::vector<std::string>& scope, OnHole& on_hole) {
  if (!c.has_holes()) return c;
  switch (c.kind()) {
    case TermKind::Hole: {
      const Term* arg = on_hole(c.index());
      return arg ? bind_into(*arg, scope, 0) : c;
    }
    case TermKind::Abs: {
      scope.push_back(c.name());
      Term body = fill_rec(c.body(), scope, on_hole);
      scope.pop_back();
      return Term::abs(c.name(), std::move(body));
    }
    case TermKind::App: {
      Term f = fill_rec(c.fun(), scope, on_hole);
      Term a = fill_rec(c.arg(), scope, on_hole);
      return Term::app(std::move(f), std::move(a));
    }
    default:
      return c;
  }
}

Term open_rec(const Term& t, const Term& value, std::uint32_t depth) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(value, static_cast<int>(depth));
      return Term::bound(t.index() - 1);
    case TermKind::Abs:
      return Term::abs(t.name(), open_rec(t.body(), value, depth + 1));
    case TermKind::App:
      return Term::app(open_rec(t.fun(), value, depth), open_rec(t.arg(), value, depth));
    default:
      return t;
  }
}

Term close_rec(const Term& t, const std::string& name, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::Free:
      return t.name() == name ? Term::bound(depth) : t;
    case TermKind::Bound:
      return t.index() >= depth ? Term::bound(t.index() + 1) : t;
    case TermKind::Abs:
      return Term::abs(t.name(), close_rec(t.body(), name, depth + 1));
    case TermKind::App:
      return Term::app(close_rec(t.fun(), name, depth), close_rec(t.arg(), name, depth));
    default:
      return t;
  }
}

class Printer {
 public:
  explicit Printer(const Term& t) { collect_free(t, avoid_); }

  void print(const Term& t, int prec) {
    switch (t.kind()) {
      case TermKind::Free:
        out_ += t.name();
        break;
      case TermKind::Bound:
        if (t.index() < scope_.size()) {
          out_ += scope_[scope_.size() - 1 - t.index()];
        } else {
          out_ += "#" + std::to_string(t.index());
        }
        break;
      case TermKind::Hole:
        out_ += "_" + std::to_string(t.index());
        break;
      case TermKind::Abs: {
        if (prec > 0) out_ += "(";
        out_ += "\\";
        const Term* cur = &t;
        std::size_t pushed = 0;
        while (cur->kind() == TermKind::Abs) {
          if (pushed > 0) out_ += " ";
          std::string n = fresh(cur->name());
          out_ += n;
          scope_.push_back(std::move(n));
          ++pushed;
          cur = &cur->body();
        }
        out_ += ". ";
        print(*cur, 0);
        scope_.resize(scope_.size() - pushed);
        if (prec > 0) out_ += ")";
        break;
      }
      case TermKind::App:
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
  std::string fresh(const std::string& hint) {
    std::string n = hint.empty() ? "x" : hint;
    while (avoid_.count(n) || std::find(scope_.begin(), scope_.end(), n) != scope_.end()) n += "'";
    return n;
  }

  std::set<std::string> avoid_;
  std::vector<std::string> scope_;
  std::string out_;
};

}  // namespace

std::set<std::string> free_names(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

Term subst_value(const Term& m, const std::string& x, const Term& v) {
  if (!v || !v.is_value()) throw std::invalid_argument("subst_value: substituted term must be a value");
  if (m.has_holes()) throw std::invalid_argument("subst_value: term must not contain holes");
  return replace_free(m, x, v, 0);
}

Term fill_context(const Term& c, const std::vector<Term>& args) {
  if (c.max_hole() > args.size()) {
    throw std::invalid_argument("fill_context: hole _" + std::to_string(c.max_hole()) + " exceeds " +
                                std::to_string(args.size()) + " arguments");
  }
  std::vector<std::string> scope;
  auto on_hole = [&](std::uint32_t i) -> const Term* { return &args[i - 1]; };
  return fill_rec(c, scope, on_hole);
}

Term fill_occurrences(const Term& c, std::uint32_t i, const std::vector<Term>& per_occurrence) {
  std::vector<std::string> scope;
  std::size_t next = 0;
  auto on_hole = [&](std::uint32_t h) -> const Term* {
    if (h != i) return nullptr;
    if (next >= per_occurrence.size()) throw std::invalid_argument("fill_occurrences: too few arguments");
    return &per_occurrence[next++];
  };
  Term out = fill_rec(c, scope, on_hole);
  if (next != per_occurrence.size()) throw std::invalid_argument("fill_occurrences: too many arguments");
  return out;
}

std::size_t hole_degree(const Term& c, std::uint32_t i) {
  if (c.max_hole() < i) return 0;
  switch (c.kind()) {
    case TermKind::Hole:
      return c.index() == i ? 1 : 0;
    case TermKind::Abs:
      return hole_degree(c.body(), i);
    case TermKind::App:
      return hole_degree(c.fun(), i) + hole_degree(c.arg(), i);
    default:
      return 0;
  }
}

Term shift(const Term& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      return Term::bound(static_cast<std::uint32_t>(static_cast<int>(t.index()) + delta));
    case TermKind::Abs:
      return Term::abs(t.name(), shift(t.body(), delta, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fun(), delta, cutoff), shift(t.arg(), delta, cutoff));
    default:
      return t;
  }
}

Term open(const Term& body, const Term& value) { return open_rec(body, value, 0); }

Term close(const Term& t, const std::string& name) { return close_rec(t, name, 0); }

std::string to_string(const Term& t) {
  if (!t) return "<null>";
  Printer p(t);
  p.print(t, 0);
  return p.take();
}

}  // namespace cbvlab
