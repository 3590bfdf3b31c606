#include "cbvlab/generate.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace cbvlab {

Term TermGen::leaf(std::uint32_t depth, std::uint32_t holes) {
  static const std::array<const char*, 3> names{"x", "y", "z"};
  std::size_t choices = 3 + (depth > 0 ? 2 : 0) + (holes > 0 ? 2 : 0);
  std::size_t k = below(choices);
  if (k < 3) return Term::free(names[k]);
  k -= 3;
  if (depth > 0) {
    if (k < 2) return Term::bound(static_cast<std::uint32_t>(below(depth)));
    k -= 2;
  }
  return Term::hole(1 + static_cast<std::uint32_t>(below(holes)));
}

Term TermGen::gen(std::size_t size, std::uint32_t depth, std::uint32_t holes, bool value_only) {
  static const std::array<const char*, 4> hints{"a", "b", "c", "d"};
  if (size <= 1) {
    Term t = leaf(depth, holes);
    // A hole is not a value; fall back to a variable where one is required.
    if (value_only && t.kind() == TermKind::Hole) return Term::free("x");
    return t;
  }
  bool abs = value_only || size == 2 || below(2) == 0;
  if (abs) {
    return Term::abs(hints[depth % hints.size()], gen(size - 1, depth + 1, holes, false));
  }
  std::size_t left = 1 + below(size - 2);
  Term f = gen(left, depth, holes, false);
  Term a = gen(size - 1 - left, depth, holes, false);
  return Term::app(std::move(f), std::move(a));
}

Term TermGen::term(std::size_t max_size, std::uint32_t holes) {
  return gen(1 + below(max_size), 0, holes, false);
}

Term TermGen::value(std::size_t max_size, std::uint32_t holes) {
  return gen(1 + below(max_size), 0, holes, true);
}

Term TermGen::context(std::size_t max_size, std::uint32_t holes) {
  for (;;) {
    Term c = term(max_size, holes);
    bool all = true;
    for (std::uint32_t i = 1; i <= holes && all; ++i) all = hole_degree(c, i) > 0;
    if (all) return c;
  }
}

RTerm TermGen::sample(const Term& m) {
  static const std::array<std::size_t, 9> copies{0, 0, 1, 1, 1, 1, 2, 2, 3};
  auto n = [&] { return copies[below(copies.size())]; };
  switch (m.kind()) {
    case TermKind::Free:
      return RTerm::bag(std::vector<RTerm>(n(), RTerm::var(m.name())));
    case TermKind::Bound:
      return RTerm::bag(std::vector<RTerm>(n(), RTerm::bound(m.index())));
    case TermKind::Hole:
      return RTerm::bag(std::vector<RTerm>(n(), RTerm::hole(m.index())));
    case TermKind::Abs: {
      std::vector<RTerm> elems;
      for (std::size_t k = n(); k > 0; --k) elems.push_back(RTerm::abs(m.name(), sample(m.body())));
      return RTerm::bag(std::move(elems));
    }
    case TermKind::App: {
      RTerm f = sample(m.fun());
      return RTerm::app(std::move(f), sample(m.arg()));
    }
  }
  return {};
}

namespace {

std::size_t smallest_element(const Term& m) {
  return m.kind() == TermKind::App ? smallest_element(m.fun()) + smallest_element(m.arg()) : 1;
}

}  // namespace

RTerm TermGen::taylor_element(const Term& m, std::size_t max_size) {
  if (smallest_element(m) > max_size) {
    throw std::invalid_argument("taylor_element: T(m) has no element of size <= " + std::to_string(max_size));
  }
  for (;;) {
    RTerm s = sample(m);
    if (s.size() <= max_size) return s;
  }
}

}  // namespace cbvlab
