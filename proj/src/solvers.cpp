#include "lebdyn/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lebdyn/errors.hpp"

namespace lebdyn {

namespace {

std::size_t universe_of(std::span<const Bits> sets) {
  if (sets.empty()) throw UsageError("set cover: empty family");
  const std::size_t n = sets.front().size();
  for (const auto& s : sets)
    if (s.size() != n) throw UsageError("set cover: sets over different universes");
  return n;
}

void require_coverable(std::span<const Bits> sets, std::size_t n) {
  Bits all(n);
  for (const auto& s : sets) all |= s;
  if (all.count() != n) throw UsageError("set cover: family does not cover the universe");
}

class SetCoverSearch {
 public:
  SetCoverSearch(std::span<const Bits> sets, std::size_t budget) : budget_(budget) {
    n_ = sets.front().size();
    // Drop duplicates and dominated sets; the optimum size is unchanged.
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sets[a].count() > sets[b].count(); });
    for (std::size_t i : order) {
      bool dominated = false;
      for (std::size_t k : kept_)
        if (sets[i].is_subset_of(sets[k])) {
          dominated = true;
          break;
        }
      if (!dominated) kept_.push_back(i);
    }
    std::sort(kept_.begin(), kept_.end());
    for (std::size_t i : kept_) sets_.push_back(sets[i]);

    containing_.assign(n_, {});
    elem_union_.assign(n_, Bits(n_));
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      for (auto e = sets_[s].find_first(); e != Bits::npos; e = sets_[s].find_next(e)) {
        containing_[e].push_back(s);
        elem_union_[e] |= sets_[s];
      }
    }
  }

  SetCoverSolution run(const SetCoverSolution& warm) {
    best_ = warm.chosen;
    Bits uncovered(n_);
    uncovered.set();
    std::vector<std::size_t> stack;
    search(uncovered, stack);
    SetCoverSolution out;
    out.chosen = best_;
    std::sort(out.chosen.begin(), out.chosen.end());
    out.exact = true;
    out.nodes = nodes_;
    return out;
  }

 private:
  std::size_t lower_bound(const Bits& uncovered) const {
    // Elements whose covering families are pairwise disjoint each need their own set.
    std::size_t independent = 0;
    Bits blocked(n_);
    for (auto e = uncovered.find_first(); e != Bits::npos; e = uncovered.find_next(e)) {
      if (blocked.test(e)) continue;
      ++independent;
      blocked |= elem_union_[e];
    }
    std::size_t max_gain = 0;
    for (const auto& s : sets_) max_gain = std::max(max_gain, (s & uncovered).count());
    const std::size_t count = uncovered.count();
    const std::size_t by_size = max_gain == 0 ? count : (count + max_gain - 1) / max_gain;
    return std::max(independent, by_size);
  }

  void search(const Bits& uncovered, std::vector<std::size_t>& stack) {
    if (++nodes_ > budget_)
      throw BudgetError("exact set cover exceeded node budget of " + std::to_string(budget_));
    if (uncovered.none()) {
      if (stack.size() < best_.size()) {
        best_.clear();
        for (std::size_t s : stack) best_.push_back(kept_[s]);
      }
      return;
    }
    if (stack.size() + lower_bound(uncovered) >= best_.size()) return;

    std::size_t pick = Bits::npos;
    std::size_t fewest = sets_.size() + 1;
    for (auto e = uncovered.find_first(); e != Bits::npos; e = uncovered.find_next(e)) {
      if (containing_[e].size() < fewest) {
        fewest = containing_[e].size();
        pick = e;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> cands;  // (gain, set)
    for (std::size_t s : containing_[pick]) cands.emplace_back((sets_[s] & uncovered).count(), s);
    std::stable_sort(cands.begin(), cands.end(), [](auto a, auto b) { return a.first > b.first; });
    for (const auto& [gain, s] : cands) {
      stack.push_back(s);
      search(uncovered - sets_[s], stack);
      stack.pop_back();
    }
  }

  std::size_t n_ = 0;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> kept_;
  std::vector<Bits> sets_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<Bits> elem_union_;
  std::vector<std::size_t> best_;
};

}  // namespace

SetCoverSolution greedy_set_cover(std::span<const Bits> sets) {
  const std::size_t n = universe_of(sets);
  require_coverable(sets, n);
  Bits uncovered(n);
  uncovered.set();
  SetCoverSolution out;
  while (uncovered.any()) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::size_t gain = (sets[i] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    out.chosen.push_back(best);
    uncovered -= sets[best];
    ++out.nodes;
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  out.exact = false;
  return out;
}

SetCoverSolution exact_set_cover(std::span<const Bits> sets, std::size_t node_budget) {
  const auto warm = greedy_set_cover(sets);
  if (warm.chosen.size() <= 1) return {warm.chosen, true, warm.nodes};
  SetCoverSearch search(sets, node_budget);
  return search.run(warm);
}

SetCoverSolution solve_set_cover(std::span<const Bits> sets, SolveMode mode, std::size_t node_budget) {
  return mode == SolveMode::exact ? exact_set_cover(sets, node_budget) : greedy_set_cover(sets);
}

std::vector<std::vector<std::size_t>> enumerate_set_covers_of_size(std::span<const Bits> sets, std::size_t size,
                                                                   std::size_t node_budget) {
  const std::size_t n = universe_of(sets);
  const std::size_t m = sets.size();
  std::vector<Bits> suffix_union(m + 1, Bits(n));
  for (std::size_t i = m; i-- > 0;) suffix_union[i] = suffix_union[i + 1] | sets[i];

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> chosen;
  std::size_t nodes = 0;
  Bits covered(n);

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (++nodes > node_budget)
      throw BudgetError("subcover enumeration exceeded node budget of " + std::to_string(node_budget));
    if (chosen.size() == size) {
      if (covered.count() == n) out.push_back(chosen);
      return;
    }
    if (i == m || m - i < size - chosen.size()) return;
    Bits uncovered = ~covered;
    if (!uncovered.is_subset_of(suffix_union[i])) return;
    // In a minimum cover every member adds something not covered by the earlier ones.
    if (!(sets[i] & uncovered).none()) {
      const Bits saved = covered;
      covered |= sets[i];
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
      covered = saved;
    }
    rec(i + 1);
  };
  if (size > 0) rec(0);
  return out;
}

IndependentSetSolution greedy_independent_set(std::size_t n,
                                              const std::function<bool(PointId, PointId)>& conflict) {
  std::vector<PointId> chosen;
  IndependentSetSolution out;
  for (PointId v = 0; v < n; ++v) {
    bool ok = true;
    for (PointId u : chosen) {
      ++out.nodes;
      if (conflict(u, v)) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(v);
  }
  out.members = PointSet(std::move(chosen));
  out.exact = false;
  return out;
}

IndependentSetSolution exact_independent_set(std::span<const Bits> adjacency, std::size_t node_budget) {
  const std::size_t n = adjacency.size();
  IndependentSetSolution out;
  if (n == 0) {
    out.exact = true;
    return out;
  }
  std::vector<PointId> best;
  std::vector<PointId> cur;
  std::size_t nodes = 0;

  auto clique_cover_bound = [&](Bits p) {
    std::size_t cliques = 0;
    while (p.any()) {
      const auto u = p.find_first();
      Bits cand = p & adjacency[u];
      p.reset(u);
      while (cand.any()) {
        const auto w = cand.find_first();
        p.reset(w);
        cand &= adjacency[w];
      }
      ++cliques;
    }
    return cliques;
  };

  std::function<void(const Bits&)> rec = [&](const Bits& p) {
    if (++nodes > node_budget)
      throw BudgetError("exact independent set exceeded node budget of " + std::to_string(node_budget));
    if (p.none()) {
      if (cur.size() > best.size() || best.empty()) best = cur;
      return;
    }
    if (cur.size() + clique_cover_bound(p) <= best.size()) return;
    const auto v = p.find_first();
    Bits without_nbrs = p - adjacency[v];
    without_nbrs.reset(v);
    cur.push_back(static_cast<PointId>(v));
    rec(without_nbrs);
    cur.pop_back();
    Bits without_v = p;
    without_v.reset(v);
    rec(without_v);
  };
  Bits all(n);
  all.set();
  rec(all);
  out.members = PointSet(best);
  out.exact = true;
  out.nodes = nodes;
  return out;
}

}  // namespace lebdyn
