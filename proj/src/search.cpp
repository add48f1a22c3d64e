// Copyright 2026 The polarcover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polarcover/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "polarcover/counting.hpp"
#include "polarcover/error.hpp"

namespace polarcover {

std::string_view search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kOptimal: return "OPTIMAL";
    case SearchStatus::kFeasible: return "FEASIBLE";
    case SearchStatus::kInfeasible: return "INFEASIBLE";
    case SearchStatus::kBudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

CoverInstance build_instance(SpacePtr space, std::vector<int> allowed_dims,
                             const EnumerationBudget& budget) {
  CoverInstance inst;
  const PolarSpace& P = *space;
  std::sort(allowed_dims.begin(), allowed_dims.end());
  allowed_dims.erase(std::unique(allowed_dims.begin(), allowed_dims.end()), allowed_dims.end());
  if (allowed_dims.empty()) throw DomainError("no candidate dimensions given");
  for (int d : allowed_dims) {
    if (d < 1 || d > P.rank()) {
      throw DomainError("candidate dimension " + std::to_string(d) + " outside 1.." +
                        std::to_string(P.rank()));
    }
  }
  inst.space = space;
  inst.allowed_dims = allowed_dims;
  inst.generators = P.generators(budget);
  for (int d : allowed_dims) {
    auto subs = d == P.rank() ? inst.generators : P.enumerate_ti(d, budget);
    for (auto& s : subs) inst.candidates.push_back(std::move(s));
  }
  auto id_of = [&](const Subspace& g) {
    const auto it = std::lower_bound(inst.generators.begin(), inst.generators.end(), g);
    return static_cast<std::uint32_t>(it - inst.generators.begin());
  };
  inst.covers.reserve(inst.candidates.size());
  for (const auto& c : inst.candidates) {
    std::vector<std::uint32_t> ids;
    if (c.dim() == P.rank()) {
      ids.push_back(id_of(c));
    } else {
      for (const auto& g : P.generators_through(c, budget)) ids.push_back(id_of(g));
    }
    std::sort(ids.begin(), ids.end());
    inst.covers.push_back(std::move(ids));
  }
  return inst;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Shared {
  const CoverInstance* inst = nullptr;
  SearchBudget budget;
  Clock::time_point start;
  bool first_only = false;           // stop at the first cover found
  std::size_t enumerate_limit = 0;   // > 0: collect covers, no bound pruning
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  std::atomic<std::uint64_t> peak{0};
  std::mutex mu;
  std::vector<std::size_t> best_rows;
  std::vector<std::vector<std::size_t>> solutions;
  std::uint64_t lcm = 0;  // common denominator for the weighted bound
  int top_size = 0;       // largest set size in the instance
  std::size_t top_alpha = std::numeric_limits<std::size_t>::max();  // disjoint top-size sets
};

// Dancing links over the generator columns.
class Dlx {
 public:
  explicit Dlx(Shared& sh) : sh_(sh) {
    const auto& inst = *sh.inst;
    const int ncols = static_cast<int>(inst.generators.size());
    const std::size_t total = 1 + ncols + std::accumulate(
        inst.covers.begin(), inst.covers.end(), std::size_t{0},
        [](std::size_t a, const auto& v) { return a + v.size(); });
    L_.resize(total);
    R_.resize(total);
    U_.resize(total);
    D_.resize(total);
    C_.resize(total);
    row_.resize(total, -1);
    S_.assign(ncols + 1, 0);
    for (int c = 0; c <= ncols; ++c) {
      L_[c] = c == 0 ? ncols : c - 1;
      R_[c] = c == ncols ? 0 : c + 1;
      U_[c] = D_[c] = c;
      C_[c] = c;
    }
    int next = ncols + 1;
    row_size_.resize(inst.covers.size());
    for (std::size_t r = 0; r < inst.covers.size(); ++r) {
      const auto& cov = inst.covers[r];
      row_size_[r] = static_cast<int>(cov.size());
      int first = -1;
      for (std::uint32_t g : cov) {
        const int c = static_cast<int>(g) + 1;
        const int x = next++;
        C_[x] = c;
        row_[x] = static_cast<int>(r);
        U_[x] = U_[c];
        D_[x] = c;
        D_[U_[c]] = x;
        U_[c] = x;
        ++S_[c];
        if (first < 0) {
          first = x;
          L_[x] = R_[x] = x;
        } else {
          L_[x] = L_[first];
          R_[x] = first;
          R_[L_[first]] = x;
          L_[first] = x;
        }
      }
      row_node_.push_back(first);
    }
    // Distinct row sizes, for the largest-active-set query.
    std::vector<int> sizes(row_size_.begin(), row_size_.end());
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    sizes_ = sizes;
    size_index_.resize(row_size_.size());
    active_by_size_.assign(sizes_.size(), 0);
    for (std::size_t r = 0; r < row_size_.size(); ++r) {
      size_index_[r] = static_cast<int>(
          std::lower_bound(sizes_.begin(), sizes_.end(), row_size_[r]) - sizes_.begin());
      ++active_by_size_[size_index_[r]];
    }
  }

  int choose_column() const {
    int best = -1;
    int best_size = std::numeric_limits<int>::max();
    for (int c = R_[0]; c != 0; c = R_[c]) {
      if (S_[c] < best_size) {
        best_size = S_[c];
        best = c;
        if (best_size <= 1) break;
      }
    }
    return best;
  }

  int column_size(int c) const { return S_[c]; }
  int first_in(int c) const { return D_[c]; }
  int next_in(int x) const { return D_[x]; }
  int row_of(int x) const { return row_[x]; }
  bool done() const { return R_[0] == 0; }

  void cover(int c) {
    L_[R_[c]] = L_[c];
    R_[L_[c]] = R_[c];
    for (int i = D_[c]; i != c; i = D_[i]) {
      --active_by_size_[size_index_[row_[i]]];
      for (int j = R_[i]; j != i; j = R_[j]) {
        U_[D_[j]] = U_[j];
        D_[U_[j]] = D_[j];
        --S_[C_[j]];
      }
    }
  }

  void uncover(int c) {
    for (int i = U_[c]; i != c; i = U_[i]) {
      ++active_by_size_[size_index_[row_[i]]];
      for (int j = L_[i]; j != i; j = L_[j]) {
        ++S_[C_[j]];
        U_[D_[j]] = j;
        D_[U_[j]] = j;
      }
    }
    L_[R_[c]] = c;
    R_[L_[c]] = c;
  }

  void select(int x) {
    for (int j = R_[x]; j != x; j = R_[j]) cover(C_[j]);
  }
  void unselect(int x) {
    for (int j = L_[x]; j != x; j = L_[j]) uncover(C_[j]);
  }

  // Lower bound on the number of further rows needed; max() if some
  // uncovered column has no candidates left.
  std::size_t bound(BoundKind kind) const {
    std::size_t uncovered = 0;
    for (int c = R_[0]; c != 0; c = R_[c]) {
      if (S_[c] == 0) return std::numeric_limits<std::size_t>::max();
      ++uncovered;
    }
    if (uncovered == 0) return 0;
    int largest = 0;
    for (std::size_t s = sizes_.size(); s-- > 0;) {
      if (active_by_size_[s] > 0) {
        largest = sizes_[s];
        break;
      }
    }
    if (largest == 0) return std::numeric_limits<std::size_t>::max();
    std::size_t simple = (uncovered + largest - 1) / static_cast<std::size_t>(largest);
    if (kind == BoundKind::kSimple || sh_.lcm == 0) return simple;
    std::uint64_t total = 0;
    for (int c = R_[0]; c != 0; c = R_[c]) {
      int m = 0;
      for (int i = D_[c]; i != c; i = D_[i]) m = std::max(m, row_size_[row_[i]]);
      total += sh_.lcm / static_cast<std::uint64_t>(m);
    }
    const std::size_t weighted = static_cast<std::size_t>((total + sh_.lcm - 1) / sh_.lcm);
    if (kind == BoundKind::kWeighted) return std::max(simple, weighted);
    return std::max({simple, weighted, packing(uncovered)});
  }

  // Top-size sets are pairwise disjoint, so at most top_alpha of them occur
  // in a cover; everything else has size <= the next active size.
  std::size_t packing(std::size_t uncovered) const {
    const std::size_t top = sizes_.size() - 1;
    if (sizes_[top] != sh_.top_size) return 0;
    const std::size_t s1 = static_cast<std::size_t>(sh_.top_size);
    std::size_t x1 = std::min<std::size_t>(active_by_size_[top], uncovered / s1);
    if (sh_.top_alpha != std::numeric_limits<std::size_t>::max()) {
      const std::size_t left = sh_.top_alpha > top_chosen_ ? sh_.top_alpha - top_chosen_ : 0;
      x1 = std::min(x1, left);
    }
    std::size_t s2 = 0;
    for (std::size_t s = top; s-- > 0;) {
      if (active_by_size_[s] > 0) {
        s2 = static_cast<std::size_t>(sizes_[s]);
        break;
      }
    }
    const std::size_t rest = uncovered - s1 * x1;
    if (rest == 0) return x1;
    if (s2 == 0) return std::numeric_limits<std::size_t>::max();
    return x1 + (rest + s2 - 1) / s2;
  }

  void push_row(std::size_t r) {
    chosen_.push_back(r);
    if (row_size_[r] == sh_.top_size) ++top_chosen_;
  }
  void pop_row() {
    if (row_size_[chosen_.back()] == sh_.top_size) --top_chosen_;
    chosen_.pop_back();
  }

  std::vector<std::size_t>& chosen() { return chosen_; }

 private:
  Shared& sh_;
  std::vector<int> L_, R_, U_, D_, C_, row_, S_;
  std::vector<int> row_node_;
  std::vector<int> row_size_;
  std::vector<int> sizes_;
  std::vector<int> size_index_;
  std::vector<int> active_by_size_;
  std::vector<std::size_t> chosen_;
  std::size_t top_chosen_ = 0;
};

bool out_of_budget(Shared& sh) {
  if (sh.stop.load(std::memory_order_relaxed)) return true;
  const std::uint64_t n = sh.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
  if (n > sh.budget.nodes) {
    sh.exhausted = true;
    sh.stop = true;
    return true;
  }
  if ((n & 1023) == 0) {
    const double secs = std::chrono::duration<double>(Clock::now() - sh.start).count();
    if (secs > sh.budget.seconds) {
      sh.exhausted = true;
      sh.stop = true;
      return true;
    }
  }
  return false;
}

void record(Shared& sh, const std::vector<std::size_t>& rows) {
  std::lock_guard<std::mutex> lock(sh.mu);
  if (sh.enumerate_limit > 0) {
    sh.solutions.push_back(rows);
    if (sh.solutions.size() >= sh.enumerate_limit) sh.stop = true;
    return;
  }
  if (rows.size() < sh.best.load()) {
    sh.best = rows.size();
    sh.best_rows = rows;
  }
  if (sh.first_only) sh.stop = true;
}

void search(Dlx& dlx, Shared& sh) {
  if (out_of_budget(sh)) return;
  auto& chosen = dlx.chosen();
  std::uint64_t depth = chosen.size();
  std::uint64_t peak = sh.peak.load(std::memory_order_relaxed);
  while (depth > peak && !sh.peak.compare_exchange_weak(peak, depth)) {
  }
  if (dlx.done()) {
    record(sh, chosen);
    return;
  }
  const std::size_t lb = dlx.bound(sh.budget.bound);
  if (lb == std::numeric_limits<std::size_t>::max()) return;
  if (sh.enumerate_limit == 0 && chosen.size() + lb >= sh.best.load(std::memory_order_relaxed)) {
    return;
  }
  const int c = dlx.choose_column();
  dlx.cover(c);
  for (int x = dlx.first_in(c); x != c; x = dlx.next_in(x)) {
    dlx.push_row(static_cast<std::size_t>(dlx.row_of(x)));
    dlx.select(x);
    search(dlx, sh);
    dlx.unselect(x);
    dlx.pop_row();
    if (sh.stop.load(std::memory_order_relaxed)) break;
    if (sh.enumerate_limit == 0 &&
        chosen.size() + 1 >= sh.best.load(std::memory_order_relaxed)) {
      break;
    }
  }
  dlx.uncover(c);
}

std::uint64_t size_lcm(const CoverInstance& inst) {
  std::uint64_t l = 1;
  for (const auto& cov : inst.covers) {
    const std::uint64_t s = cov.size();
    if (s == 0) continue;
    l = std::lcm(l, s);
    if (l > (std::uint64_t{1} << 40)) return 0;
  }
  return l;
}

// Maximum number of pairwise disjoint sets among the largest ones: a
// maximum clique in the disjointness graph, by branch and bound with a
// greedy colouring bound. Gives up (returns max()) after `node_limit`.
std::size_t max_disjoint(const std::vector<const std::vector<std::uint32_t>*>& sets,
                         std::uint64_t node_limit) {
  const std::size_t n = sets.size();
  const std::size_t words = (n + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  std::vector<Bits> adj(n, Bits(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = *sets[i];
      const auto& b = *sets[j];
      bool meet = false;
      for (std::size_t x = 0, y = 0; x < a.size() && y < b.size() && !meet;) {
        if (a[x] == b[y]) meet = true;
        else if (a[x] < b[y]) ++x;
        else ++y;
      }
      if (!meet) {
        adj[i][j / 64] |= std::uint64_t{1} << (j % 64);
        adj[j][i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
  std::size_t best = 0;
  std::uint64_t nodes = 0;
  bool aborted = false;
  auto count = [](const Bits& b) {
    std::size_t c = 0;
    for (auto w : b) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  };
  std::function<void(Bits, std::size_t)> expand = [&](Bits cand, std::size_t depth) {
    if (aborted) return;
    if (++nodes > node_limit) {
      aborted = true;
      return;
    }
    // Greedy colouring of the candidates gives the bound.
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    {
      Bits uncol = cand;
      std::size_t c = 0;
      while (count(uncol) > 0) {
        ++c;
        Bits q = uncol;
        while (true) {
          std::size_t v = n;
          for (std::size_t w = 0; w < words; ++w) {
            if (q[w]) {
              v = w * 64 + static_cast<std::size_t>(__builtin_ctzll(q[w]));
              break;
            }
          }
          if (v == n) break;
          uncol[v / 64] &= ~(std::uint64_t{1} << (v % 64));
          q[v / 64] &= ~(std::uint64_t{1} << (v % 64));
          for (std::size_t w = 0; w < words; ++w) q[w] &= ~adj[v][w];
          order.push_back(v);
          colour.push_back(c);
        }
      }
    }
    if (order.empty()) {
      best = std::max(best, depth);
      return;
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (depth + colour[i] <= best) return;
      const std::size_t v = order[i];
      Bits next(words);
      for (std::size_t w = 0; w < words; ++w) next[w] = cand[w] & adj[v][w];
      expand(next, depth + 1);
      cand[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      if (aborted) return;
    }
  };
  Bits all(words, 0);
  for (std::size_t i = 0; i < n; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
  expand(all, 0);
  return aborted ? std::numeric_limits<std::size_t>::max() : best;
}

void prepare(Shared& sh) {
  sh.lcm = size_lcm(*sh.inst);
  std::vector<const std::vector<std::uint32_t>*> top;
  for (const auto& cov : sh.inst->covers) {
    sh.top_size = std::max(sh.top_size, static_cast<int>(cov.size()));
  }
  for (const auto& cov : sh.inst->covers) {
    if (static_cast<int>(cov.size()) == sh.top_size) top.push_back(&cov);
  }
  if (sh.budget.bound == BoundKind::kPacking && top.size() <= 4096) {
    sh.top_alpha = max_disjoint(top, 2'000'000);
  }
}

// Runs the search; the root column's rows are shared out among workers
// when more than one thread is allowed.
void run(Shared& sh) {
  sh.start = Clock::now();
  prepare(sh);
  const int threads = sh.budget.deterministic ? 1 : std::max(1, sh.budget.threads);
  if (threads == 1) {
    Dlx dlx(sh);
    search(dlx, sh);
    return;
  }
  Dlx probe(sh);
  if (probe.done()) {
    record(sh, {});
    return;
  }
  const int c = probe.choose_column();
  std::vector<int> root_rows;
  for (int x = probe.first_in(c); x != c; x = probe.next_in(x)) root_rows.push_back(x);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      Dlx dlx(sh);
      dlx.cover(c);
      while (!sh.stop.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= root_rows.size()) break;
        const int x = root_rows[i];
        if (sh.enumerate_limit == 0 && 1 >= sh.best.load()) break;
        dlx.push_row(static_cast<std::size_t>(dlx.row_of(x)));
        dlx.select(x);
        search(dlx, sh);
        dlx.unselect(x);
        dlx.pop_row();
      }
      dlx.uncover(c);
    });
  }
  for (auto& th : pool) th.join();
}

OvoidSet to_ovoid(const CoverInstance& inst, const std::vector<std::size_t>& rows) {
  std::vector<Subspace> members;
  for (std::size_t r : rows) members.push_back(inst.candidates[r]);
  return OvoidSet(inst.space, std::move(members));
}

void check_witness(const OvoidSet& o) {
  if (verify(o).status != Status::kExact) {
    throw std::logic_error("search produced a set that does not verify");
  }
}

}  // namespace

SearchResult min_generalized_ovoid(const CoverInstance& instance, const SearchBudget& budget,
                                   const std::optional<OvoidSet>& incumbent) {
  Shared sh;
  sh.inst = &instance;
  sh.budget = budget;
  if (incumbent) {
    std::vector<std::size_t> rows;
    for (const auto& m : incumbent->members()) {
      const auto it = std::lower_bound(instance.candidates.begin(), instance.candidates.end(), m);
      if (it == instance.candidates.end() || *it != m) {
        throw DomainError("incumbent member " + to_text(m) + " is not a candidate");
      }
      rows.push_back(static_cast<std::size_t>(it - instance.candidates.begin()));
    }
    if (verify(*incumbent).status != Status::kExact) {
      throw DomainError("incumbent is not a generalized ovoid");
    }
    sh.best = rows.size();
    sh.best_rows = rows;
  }
  std::size_t root_bound = 0;
  {
    Shared probe_sh;
    probe_sh.inst = &instance;
    probe_sh.budget = budget;
    prepare(probe_sh);
    Dlx probe(probe_sh);
    root_bound = probe.bound(budget.bound);
  }
  run(sh);
  SearchResult res;
  res.stats.nodes = std::min<std::uint64_t>(sh.nodes.load(), budget.nodes);
  res.stats.seconds = std::chrono::duration<double>(Clock::now() - sh.start).count();
  res.stats.peak_frontier = sh.peak.load();
  const bool found = sh.best.load() != std::numeric_limits<std::size_t>::max();
  if (found) {
    res.best = to_ovoid(instance, sh.best_rows);
    check_witness(*res.best);
    res.size = res.best->size();
  }
  if (sh.exhausted) {
    res.status = SearchStatus::kBudgetExhausted;
    res.lower_bound_proved =
        root_bound == std::numeric_limits<std::size_t>::max() ? 0 : root_bound;
  } else if (found) {
    res.status = SearchStatus::kOptimal;
    res.lower_bound_proved = res.size;
  } else {
    res.status = SearchStatus::kInfeasible;
    res.lower_bound_proved = 0;
  }
  return res;
}

SearchResult homogeneous_exists(SpacePtr space, int k, const SearchBudget& budget,
                                const std::optional<OvoidSet>& warm_start) {
  const PolarSpace& P = *space;
  if (k < 1 || k > P.rank()) throw DomainError("need 1 <= k <= rank");
  const BigInt target_big = ovoid_size(P.rank(), k, P.e2(), P.q());
  const std::size_t target = static_cast<std::size_t>(target_big);
  SearchResult res;
  if (warm_start) {
    const OvoidSet& w = *warm_start;
    if (!(w.space().descriptor() == P.descriptor()) || !(w.space().form() == P.form())) {
      throw DomainError("warm start lives in a different space");
    }
    if (w.homogeneous_dim() == k && verify(w).status == Status::kExact) {
      res.status = SearchStatus::kFeasible;
      res.best = w;
      res.size = w.size();
      res.lower_bound_proved = target;
      return res;
    }
  }
  if (k == P.rank()) {
    res.best = OvoidSet(space, P.generators());
    res.status = SearchStatus::kFeasible;
    res.size = res.best->size();
    res.lower_bound_proved = target;
    return res;
  }
  const CoverInstance inst = build_instance(space, {k});
  Shared sh;
  sh.inst = &inst;
  sh.budget = budget;
  sh.first_only = true;
  sh.best = target + 1;
  run(sh);
  res.stats.nodes = std::min<std::uint64_t>(sh.nodes.load(), budget.nodes);
  res.stats.seconds = std::chrono::duration<double>(Clock::now() - sh.start).count();
  res.stats.peak_frontier = sh.peak.load();
  if (!sh.best_rows.empty()) {
    res.best = to_ovoid(inst, sh.best_rows);
    check_witness(*res.best);
    if (res.best->size() != target) throw std::logic_error("homogeneous cover of the wrong size");
    res.size = target;
    res.status = SearchStatus::kFeasible;
    res.lower_bound_proved = target;
  } else if (sh.exhausted) {
    res.status = SearchStatus::kBudgetExhausted;
  } else {
    res.status = SearchStatus::kInfeasible;
  }
  return res;
}

std::vector<std::vector<std::size_t>> enumerate_exact_covers(const CoverInstance& instance,
                                                             std::size_t limit,
                                                             const SearchBudget& budget) {
  if (limit == 0) return {};
  Shared sh;
  sh.inst = &instance;
  sh.budget = budget;
  sh.budget.deterministic = true;
  sh.enumerate_limit = limit;
  run(sh);
  return sh.solutions;
}

}  // namespace polarcover
