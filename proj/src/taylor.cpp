#include "cbvlab/taylor.hpp"

#include <algorithm>
#include <limits>

namespace cbvlab {

bool taylor_member(const RTerm& s, const Term& m) {
  if (!s || !m) return false;
  switch (m.kind()) {
    case TermKind::Free:
      if (s.kind() != RKind::Bag) return false;
      return std::all_of(s.elems().begin(), s.elems().end(),
                         [&](const RTerm& e) { return e.kind() == RKind::Var && e.name() == m.name(); });
    case TermKind::Bound:
      if (s.kind() != RKind::Bag) return false;
      return std::all_of(s.elems().begin(), s.elems().end(),
                         [&](const RTerm& e) { return e.kind() == RKind::Bound && e.index() == m.index(); });
    case TermKind::Hole:
      if (s.kind() != RKind::Bag) return false;
      return std::all_of(s.elems().begin(), s.elems().end(),
                         [&](const RTerm& e) { return e.kind() == RKind::Hole && e.index() == m.index(); });
    case TermKind::Abs:
      if (s.kind() != RKind::Bag) return false;
      return std::all_of(s.elems().begin(), s.elems().end(), [&](const RTerm& e) {
        return e.kind() == RKind::Abs && taylor_member(e.body(), m.body());
      });
    case TermKind::App:
      return s.kind() == RKind::App && taylor_member(s.fun(), m.fun()) && taylor_member(s.arg(), m.arg());
  }
  return false;
}

namespace {

using Table = std::vector<std::vector<RTerm>>;

RTerm atom_of(const Term& m) {
  switch (m.kind()) {
    case TermKind::Free:
      return RTerm::var(m.name());
    case TermKind::Bound:
      return RTerm::bound(m.index());
    case TermKind::Hole:
      return RTerm::hole(m.index());
    default:
      throw std::logic_error("atom_of: not a variable or hole");
  }
}

class Enumerator {
 public:
  Enumerator(std::size_t budget, std::size_t cap) : budget_(budget), cap_(cap) {}

  const Table& get(const Term& m) {
    if (auto it = memo_.find(m.id()); it != memo_.end()) return it->second;
    Table t(budget_ + 1);
    switch (m.kind()) {
      case TermKind::Free:
      case TermKind::Bound:
      case TermKind::Hole: {
        RTerm a = atom_of(m);
        std::vector<RTerm> elems;
        for (std::size_t n = 1; n <= budget_; ++n) {
          push(t[n], RTerm::bag(elems));
          elems.push_back(a);
        }
        break;
      }
      case TermKind::App: {
        const Table& f = get(m.fun());
        const Table& a = get(m.arg());
        for (std::size_t n = 2; n <= budget_; ++n) {
          for (std::size_t i = 1; i < n; ++i) {
            for (const auto& x : f[i]) {
              for (const auto& y : a[n - i]) push(t[n], RTerm::app(x, y));
            }
          }
        }
        break;
      }
      case TermKind::Abs: {
        const Table& b = get(m.body());
        std::vector<RTerm> items;  // ascending size
        for (std::size_t n = 1; n + 2 <= budget_; ++n) {
          for (const auto& body : b[n]) items.push_back(RTerm::abs(m.name(), body));
        }
        std::vector<RTerm> current;
        multisets(items, 0, budget_ - 1, current, t);
        break;
      }
    }
    return memo_.emplace(m.id(), std::move(t)).first->second;
  }

 private:
  void push(std::vector<RTerm>& bucket, RTerm s) {
    if (++total_ > cap_) {
      throw BudgetExceeded("Taylor enumeration exceeds the set-size cap of " + std::to_string(cap_));
    }
    bucket.push_back(std::move(s));
  }

  // Emits every multiset over items[start..] of total size <= remaining.
  void multisets(const std::vector<RTerm>& items, std::size_t start, std::size_t remaining,
                 std::vector<RTerm>& current, Table& out) {
    RTerm bag = RTerm::bag(current);
    push(out[bag.size()], bag);
    for (std::size_t j = start; j < items.size(); ++j) {
      if (items[j].size() > remaining) break;
      current.push_back(items[j]);
      multisets(items, j, remaining - items[j].size(), current, out);
      current.pop_back();
    }
  }

  std::size_t budget_;
  std::size_t cap_;
  std::size_t total_ = 0;
  std::unordered_map<const void*, Table> memo_;
};

using Counts = std::vector<std::uint64_t>;
constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > kSat ? kSat : static_cast<std::uint64_t>(p);
}

class Counter {
 public:
  explicit Counter(std::size_t budget) : budget_(budget) {}

  const Counts& get(const Term& m) {
    if (auto it = memo_.find(m.id()); it != memo_.end()) return it->second;
    Counts c(budget_ + 1, 0);
    switch (m.kind()) {
      case TermKind::Free:
      case TermKind::Bound:
      case TermKind::Hole:
        for (std::size_t n = 1; n <= budget_; ++n) c[n] = 1;
        break;
      case TermKind::App: {
        const Counts& f = get(m.fun());
        const Counts& a = get(m.arg());
        for (std::size_t n = 2; n <= budget_; ++n) {
          for (std::size_t i = 1; i < n; ++i) c[n] = sat_add(c[n], sat_mul(f[i], a[n - i]));
        }
        break;
      }
      case TermKind::Abs: {
        const Counts& b = get(m.body());
        if (budget_ == 0) break;
        // Multisets of values: product over value sizes j of (1 - x^j)^(-c_j).
        std::size_t limit = budget_ - 1;
        Counts poly(limit + 1, 0);
        poly[0] = 1;
        for (std::size_t j = 2; j <= limit; ++j) {
          std::uint64_t kinds = b[j - 1];
          if (kinds == 0) continue;
          Counts next(limit + 1, 0);
          for (std::size_t t = 0; t <= limit; ++t) {
            // C(kinds + k - 1, k) ways to pick k values of size j.
            unsigned __int128 binom = 1;
            for (std::size_t k = 0; k * j <= t; ++k) {
              if (k > 0) {
                binom = binom * (static_cast<unsigned __int128>(kinds) + k - 1) / k;
                if (binom > kSat) binom = kSat;
              }
              next[t] = sat_add(next[t], sat_mul(static_cast<std::uint64_t>(binom), poly[t - k * j]));
            }
          }
          poly = std::move(next);
        }
        for (std::size_t n = 1; n <= budget_; ++n) c[n] = poly[n - 1];
        break;
      }
    }
    return memo_.emplace(m.id(), std::move(c)).first->second;
  }

 private:
  std::size_t budget_;
  std::unordered_map<const void*, Counts> memo_;
};

}  // namespace

std::vector<std::vector<RTerm>> taylor_by_size(const Term& m, std::size_t budget, std::size_t max_set_size) {
  Enumerator e(budget, max_set_size);
  return e.get(m);
}

Sum taylor_enumerate(const Term& m, std::size_t budget, std::size_t max_set_size) {
  Sum out;
  for (auto& bucket : taylor_by_size(m, budget, max_set_size)) out.insert(bucket.begin(), bucket.end());
  return out;
}

std::vector<std::uint64_t> taylor_count(const Term& m, std::size_t budget) {
  Counter c(budget);
  return c.get(m);
}

std::vector<RTerm> value_approximants(const Term& value, std::size_t max_size, std::size_t max_set_size) {
  std::vector<RTerm> out;
  switch (value.kind()) {
    case TermKind::Free:
    case TermKind::Bound:
      if (max_size >= 1) out.push_back(atom_of(value));
      return out;
    case TermKind::Abs: {
      if (max_size < 2) return out;
      auto table = taylor_by_size(value.body(), max_size - 1, max_set_size);
      for (const auto& bucket : table) {
        for (const auto& b : bucket) out.push_back(RTerm::abs(value.name(), b));
      }
      return out;
    }
    default:
      throw std::invalid_argument("value_approximants: not a value: " + to_string(value));
  }
}

NftIndex::NftIndex(const Term& m, std::size_t budget, std::size_t max_set_size) : budget_(budget) {
  auto table = taylor_by_size(m, budget, max_set_size);
  Normalizer norm;
  for (const auto& bucket : table) {
    for (const auto& s : bucket) {
      ++elements_;
      for (const auto& t : norm.normalize(s)) {
        normal_forms_.insert(t);
        witness_.emplace(t, s);
      }
    }
  }
}

const RTerm* NftIndex::witness(const RTerm& t) const {
  auto it = witness_.find(t);
  return it == witness_.end() ? nullptr : &it->second;
}

Sum nft_bounded(const Term& m, std::size_t budget, std::size_t max_set_size) {
  return NftIndex(m, budget, max_set_size).normal_forms();
}

std::optional<RTerm> nft_member(const RTerm& t, const Term& m, std::size_t search_budget,
                                std::size_t max_set_size) {
  if (!is_normal(t)) throw std::invalid_argument("nft_member: " + to_string(t) + " is not normal");
  if (t.size() > search_budget) return std::nullopt;
  auto table = taylor_by_size(m, search_budget, max_set_size);
  Normalizer norm;
  // Normal forms are never larger than their source.
  for (std::size_t n = t.size(); n <= search_budget; ++n) {
    for (const auto& s : table[n]) {
      if (norm.normalize(s).count(t)) return s;
    }
  }
  return std::nullopt;
}

LeqReport leq_bounded(const Sum& left_normal_forms, const NftIndex& right) {
  LeqReport r;
  for (const auto& t : left_normal_forms) {
    ++r.checked;
    if (!right.witness(t)) {
      r.holds = false;
      r.missing.push_back(t);
    }
  }
  return r;
}

LeqReport leq_bounded(const Term& m, const Term& n, std::size_t budget, std::size_t search_budget,
                      std::size_t max_set_size) {
  Sum left = nft_bounded(m, budget, max_set_size);
  if (left.empty()) return {};
  return leq_bounded(left, NftIndex(n, search_budget, max_set_size));
}

EqReport eq_bounded(const Term& m, const Term& n, std::size_t budget, std::size_t search_budget,
                    std::size_t max_set_size) {
  return {leq_bounded(m, n, budget, search_budget, max_set_size),
          leq_bounded(n, m, budget, search_budget, max_set_size)};
}

}  // namespace cbvlab
