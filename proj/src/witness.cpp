#include "cbvlab/witness.hpp"

#include "cbvlab/taylor.hpp"

namespace cbvlab {

namespace {

// Matches s′ ∈ T(open(P, V)) against P at binder depth d. Occurrences of
// index d in P are where V was substituted.
class RedexInverter {
 public:
  explicit RedexInverter(const Term& value) : value_(value) {}

  std::optional<RTerm> match(const Term& p, const RTerm& s, std::uint32_t d) {
    switch (p.kind()) {
      case TermKind::Free:
      case TermKind::Hole:
        if (!taylor_member(s, p)) return std::nullopt;
        return s;
      case TermKind::Bound: {
        if (p.index() == d) return occurrence(s, d);
        Term image = p.index() > d ? Term::bound(p.index() - 1) : p;
        if (!taylor_member(s, image)) return std::nullopt;
        return RTerm::bag(std::vector<RTerm>(s.elems().size(), RTerm::bound(p.index())));
      }
      case TermKind::Abs: {
        if (s.kind() != RKind::Bag) return std::nullopt;
        std::vector<RTerm> out;
        for (const auto& e : s.elems()) {
          if (e.kind() != RKind::Abs) return std::nullopt;
          auto b = match(p.body(), e.body(), d + 1);
          if (!b) return std::nullopt;
          out.push_back(RTerm::abs(e.name(), *b));
        }
        return RTerm::bag(std::move(out));
      }
      case TermKind::App: {
        if (s.kind() != RKind::App) return std::nullopt;
        auto f = match(p.fun(), s.fun(), d);
        if (!f) return std::nullopt;
        auto a = match(p.arg(), s.arg(), d);
        if (!a) return std::nullopt;
        return RTerm::app(*f, *a);
      }
    }
    return std::nullopt;
  }

  const std::vector<RTerm>& collected() const { return collected_; }

 private:
  std::optional<RTerm> occurrence(const RTerm& s, std::uint32_t d) {
    if (s.kind() != RKind::Bag) return std::nullopt;
    Term shifted = shift(value_, static_cast<int>(d));
    for (const auto& e : s.elems()) {
      if (!taylor_member(RTerm::bag({e}), shifted)) return std::nullopt;
      collected_.push_back(shift(e, -static_cast<int>(d)));
    }
    return RTerm::bag(std::vector<RTerm>(s.elems().size(), RTerm::bound(d)));
  }

  const Term& value_;
  std::vector<RTerm> collected_;
};

std::optional<RTerm> walk(const Term& m, const Path& path, std::size_t i, const RTerm& s) {
  if (i == path.size()) {
    const Term& lam = m.fun();
    RedexInverter inv(m.arg());
    auto p = inv.match(lam.body(), s, 0);
    if (!p) return std::nullopt;
    return RTerm::app(RTerm::bag({RTerm::abs(lam.name(), *p)}), RTerm::bag(inv.collected()));
  }
  switch (path[i]) {
    case Dir::Body: {
      if (s.kind() != RKind::Bag) return std::nullopt;
      std::vector<RTerm> out;
      for (const auto& e : s.elems()) {
        if (e.kind() != RKind::Abs) return std::nullopt;
        auto b = walk(m.body(), path, i + 1, e.body());
        if (!b) return std::nullopt;
        out.push_back(RTerm::abs(e.name(), *b));
      }
      return RTerm::bag(std::move(out));
    }
    case Dir::Fun: {
      if (s.kind() != RKind::App || !taylor_member(s.arg(), m.arg())) return std::nullopt;
      auto f = walk(m.fun(), path, i + 1, s.fun());
      if (!f) return std::nullopt;
      return RTerm::app(*f, s.arg());
    }
    case Dir::Arg: {
      if (s.kind() != RKind::App || !taylor_member(s.fun(), m.fun())) return std::nullopt;
      auto a = walk(m.arg(), path, i + 1, s.arg());
      if (!a) return std::nullopt;
      return RTerm::app(s.fun(), *a);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RTerm> expand_step(const ReductionStep& step, const RTerm& s_prime) {
  if (!is_redex_v(subterm_at(step.source, step.path))) return std::nullopt;
  return walk(step.source, step.path, 0, s_prime);
}

std::optional<RTerm> expand_chain(const std::vector<ReductionStep>& chain, const RTerm& s_prime) {
  std::optional<RTerm> s = s_prime;
  for (auto it = chain.rbegin(); it != chain.rend() && s; ++it) s = expand_step(*it, *s);
  return s;
}

}  // namespace cbvlab
