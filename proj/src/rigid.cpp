#include "cbvlab/rigid.hpp"

#include <algorithm>
#include <stdexcept>

namespace cbvlab {

Rigid Rigid::var(std::string name) { return Rigid(RigidKind::Var, 0, std::move(name), {}); }
Rigid Rigid::bound(std::uint32_t index) { return Rigid(RigidKind::Bound, index, {}, {}); }
Rigid Rigid::hole(std::uint32_t index) {
  if (index == 0) throw std::invalid_argument("hole indices start at 1");
  return Rigid(RigidKind::Hole, index, {}, {});
}
Rigid Rigid::abs(std::string hint, Rigid body) {
  if (body.is_value()) throw std::invalid_argument("rigid abstraction body must be simple");
  return Rigid(RigidKind::Abs, 0, std::move(hint), {std::move(body)});
}
Rigid Rigid::app(Rigid fun, Rigid arg) {
  if (fun.is_value() || arg.is_value()) throw std::invalid_argument("rigid application of a value");
  return Rigid(RigidKind::App, 0, {}, {std::move(fun), std::move(arg)});
}
Rigid Rigid::list(std::vector<Rigid> elems) {
  for (const auto& e : elems) {
    if (!e.is_value()) throw std::invalid_argument("rigid list elements must be values");
  }
  return Rigid(RigidKind::List, 0, {}, std::move(elems));
}

bool Rigid::is_value() const { return kind_ != RigidKind::App && kind_ != RigidKind::List; }

std::strong_ordering operator<=>(const Rigid& a, const Rigid& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.index_ <=> b.index_; c != 0) return c;
  if (a.kind_ == RigidKind::Var) {
    if (auto c = a.name_ <=> b.name_; c != 0) return c;
  }
  return std::lexicographical_compare_three_way(a.kids_.begin(), a.kids_.end(), b.kids_.begin(), b.kids_.end());
}

namespace {

class RigidEnumerator {
 public:
  explicit RigidEnumerator(std::size_t cap) : cap_(cap) {}

  std::set<Rigid> of(const RTerm& c) {
    switch (c.kind()) {
      case RKind::Var:
        return {Rigid::var(c.name())};
      case RKind::Bound:
        return {Rigid::bound(c.index())};
      case RKind::Hole:
        return {Rigid::hole(c.index())};
      case RKind::Abs: {
        std::set<Rigid> out;
        for (auto& b : of(c.body())) out.insert(Rigid::abs(c.name(), b));
        return out;
      }
      case RKind::App: {
        auto fs = of(c.fun());
        auto as = of(c.arg());
        guard(fs.size() * as.size());
        std::set<Rigid> out;
        for (const auto& f : fs) {
          for (const auto& a : as) out.insert(Rigid::app(f, a));
        }
        return out;
      }
      case RKind::Bag: {
        std::vector<RTerm> order = c.elems();  // canonically sorted
        std::set<Rigid> out;
        do {
          std::vector<std::vector<Rigid>> choices;
          for (const auto& e : order) {
            auto rs = of(e);
            choices.emplace_back(rs.begin(), rs.end());
          }
          std::vector<Rigid> current;
          product(choices, current, out);
        } while (std::next_permutation(order.begin(), order.end()));
        return out;
      }
    }
    return {};
  }

 private:
  void guard(std::size_t n) const {
    if (n > cap_) throw BudgetExceeded("Rigid(c) exceeds the set-size cap of " + std::to_string(cap_));
  }

  void product(const std::vector<std::vector<Rigid>>& choices, std::vector<Rigid>& current,
               std::set<Rigid>& out) const {
    if (current.size() == choices.size()) {
      out.insert(Rigid::list(current));
      guard(out.size());
      return;
    }
    for (const auto& r : choices[current.size()]) {
      current.push_back(r);
      product(choices, current, out);
      current.pop_back();
    }
  }

  std::size_t cap_;
};

RTerm bind_into(const RTerm& v, const std::vector<std::string>& scope, std::uint32_t depth) {
  switch (v.kind()) {
    case RKind::Var:
      for (std::size_t j = scope.size(); j-- > 0;) {
        if (scope[j] == v.name()) return RTerm::bound(depth + static_cast<std::uint32_t>(scope.size() - 1 - j));
      }
      return v;
    case RKind::Bound:
      return v.index() >= depth ? RTerm::bound(v.index() + static_cast<std::uint32_t>(scope.size())) : v;
    case RKind::Abs:
      return RTerm::abs(v.name(), bind_into(v.body(), scope, depth + 1));
    case RKind::App:
      return RTerm::app(bind_into(v.fun(), scope, depth), bind_into(v.arg(), scope, depth));
    case RKind::Bag: {
      std::vector<RTerm> out;
      for (const auto& e : v.elems()) out.push_back(bind_into(e, scope, depth));
      return RTerm::bag(std::move(out));
    }
    default:
      return v;
  }
}

class Filler {
 public:
  explicit Filler(const std::vector<std::vector<RTerm>>& args) : args_(args), next_(args.size(), 0) {}

  RTerm fill(const Rigid& r) {
    switch (r.kind()) {
      case RigidKind::Var:
        return RTerm::var(r.name());
      case RigidKind::Bound:
        return RTerm::bound(r.index());
      case RigidKind::Hole: {
        std::size_t i = r.index() - 1;
        if (i >= args_.size() || next_[i] >= args_[i].size()) {
          throw std::invalid_argument("fill_rigid: too few values for hole _" + std::to_string(r.index()));
        }
        return bind_into(args_[i][next_[i]++], scope_, 0);
      }
      case RigidKind::Abs: {
        scope_.push_back(r.name());
        RTerm b = fill(r.body());
        scope_.pop_back();
        return RTerm::abs(r.name(), std::move(b));
      }
      case RigidKind::App: {
        RTerm f = fill(r.fun());
        return RTerm::app(std::move(f), fill(r.arg()));
      }
      case RigidKind::List: {
        std::vector<RTerm> out;
        for (const auto& e : r.elems()) out.push_back(fill(e));
        return RTerm::bag(std::move(out));
      }
    }
    throw std::logic_error("fill_rigid: unknown kind");
  }

  void finish() const {
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (next_[i] != args_[i].size()) {
        throw std::invalid_argument("fill_rigid: too many values for hole _" + std::to_string(i + 1));
      }
    }
  }

 private:
  const std::vector<std::vector<RTerm>>& args_;
  std::vector<std::size_t> next_;
  std::vector<std::string> scope_;
};

void free_vars(const Rigid& r, std::set<std::string>& out) {
  if (r.kind() == RigidKind::Var) out.insert(r.name());
  if (r.kind() == RigidKind::Abs || r.kind() == RigidKind::App || r.kind() == RigidKind::List) {
    for (const auto& k : r.elems()) free_vars(k, out);
  }
}

void print(const Rigid& r, const std::set<std::string>& avoid, std::vector<std::string>& scope, std::string& out,
           int prec) {
  switch (r.kind()) {
    case RigidKind::Var:
      out += r.name();
      break;
    case RigidKind::Bound:
      out += r.index() < scope.size() ? scope[scope.size() - 1 - r.index()] : "#" + std::to_string(r.index());
      break;
    case RigidKind::Hole:
      out += "_" + std::to_string(r.index());
      break;
    case RigidKind::Abs: {
      std::string n = r.name().empty() ? "x" : r.name();
      while (avoid.count(n) || std::find(scope.begin(), scope.end(), n) != scope.end()) n += "'";
      out += "\\" + n + ". ";
      scope.push_back(n);
      print(r.body(), avoid, scope, out, 0);
      scope.pop_back();
      break;
    }
    case RigidKind::App:
      if (prec == 2) out += "(";
      print(r.fun(), avoid, scope, out, 1);
      out += " ";
      print(r.arg(), avoid, scope, out, 2);
      if (prec == 2) out += ")";
      break;
    case RigidKind::List:
      out += "<";
      for (std::size_t i = 0; i < r.elems().size(); ++i) {
        if (i) out += ", ";
        print(r.elems()[i], avoid, scope, out, 0);
      }
      out += ">";
      break;
  }
}

}  // namespace

std::set<Rigid> rigids_of(const RTerm& c, std::size_t max_set_size) { return RigidEnumerator(max_set_size).of(c); }

RTerm underlying(const Rigid& r) {
  switch (r.kind()) {
    case RigidKind::Var:
      return RTerm::var(r.name());
    case RigidKind::Bound:
      return RTerm::bound(r.index());
    case RigidKind::Hole:
      return RTerm::hole(r.index());
    case RigidKind::Abs:
      return RTerm::abs(r.name(), underlying(r.body()));
    case RigidKind::App:
      return RTerm::app(underlying(r.fun()), underlying(r.arg()));
    case RigidKind::List: {
      std::vector<RTerm> out;
      for (const auto& e : r.elems()) out.push_back(underlying(e));
      return RTerm::bag(std::move(out));
    }
  }
  throw std::logic_error("underlying: unknown kind");
}

std::size_t hole_degree(const Rigid& r, std::uint32_t i) {
  if (r.kind() == RigidKind::Hole) return r.index() == i ? 1 : 0;
  std::size_t n = 0;
  if (r.kind() == RigidKind::Abs || r.kind() == RigidKind::App || r.kind() == RigidKind::List) {
    for (const auto& k : r.elems()) n += hole_degree(k, i);
  }
  return n;
}

RTerm fill_rigid(const Rigid& r, const std::vector<std::vector<RTerm>>& args) {
  for (const auto& list : args) {
    for (const auto& v : list) {
      if (!v || !v.is_value()) throw std::invalid_argument("fill_rigid: arguments must be resource values");
    }
  }
  Filler f(args);
  RTerm out = f.fill(r);
  f.finish();
  return out;
}

namespace {

struct FillSearch {
  const std::vector<std::vector<RTerm>>& pools;  // per hole, ascending size
  const std::vector<std::size_t>& degrees;
  const std::set<Rigid>& rigids;
  std::size_t slack;
  std::size_t budget;
  std::size_t cap;
  Sum& out;
  std::size_t work = 0;
  std::vector<std::vector<RTerm>> args;

  void run(std::size_t hole, std::size_t used) {
    if (hole == degrees.size()) {
      for (const auto& r : rigids) {
        if (++work > cap) throw BudgetExceeded("taylor_fill_set exceeds the work cap of " + std::to_string(cap));
        RTerm t = fill_rigid(r, args);
        if (t.size() <= budget) out.insert(std::move(t));
      }
      return;
    }
    if (args[hole].size() == degrees[hole]) {
      run(hole + 1, used);
      return;
    }
    for (const auto& v : pools[hole]) {
      if (used + v.size() - 1 > slack) break;
      args[hole].push_back(v);
      run(hole, used + v.size() - 1);
      args[hole].pop_back();
    }
  }
};

}  // namespace

Sum taylor_fill_set(const Term& c, const std::vector<Term>& values, std::size_t budget, std::size_t max_set_size) {
  if (values.size() < c.max_hole()) throw std::invalid_argument("taylor_fill_set: too few values for the context");
  for (const auto& v : values) {
    if (!v.is_value()) throw std::invalid_argument("taylor_fill_set: not a value: " + to_string(v));
  }
  std::vector<std::vector<RTerm>> pools;
  for (const auto& v : values) {
    auto pool = value_approximants(v, budget, max_set_size);
    std::stable_sort(pool.begin(), pool.end(), [](const RTerm& a, const RTerm& b) { return a.size() < b.size(); });
    pools.push_back(std::move(pool));
  }
  Sum out;
  for (const auto& ctx : taylor_enumerate(c, budget, max_set_size)) {
    std::vector<std::size_t> degrees;
    for (std::uint32_t i = 1; i <= values.size(); ++i) degrees.push_back(hole_degree(ctx, i));
    auto rigids = rigids_of(ctx, max_set_size);
    FillSearch search{pools, degrees, rigids, budget - ctx.size(), budget, max_set_size, out, 0,
                      std::vector<std::vector<RTerm>>(values.size())};
    search.run(0, 0);
  }
  return out;
}

std::string to_string(const Rigid& r) {
  std::set<std::string> avoid;
  free_vars(r, avoid);
  std::vector<std::string> scope;
  std::string out;
  print(r, avoid, scope, out, 0);
  return out;
}

}  // namespace cbvlab
