#include "lobsterctl/hitting_set.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

bool hits_all(const VertexSet& candidate, const std::vector<VertexSet>& catalog) {
  return std::all_of(catalog.begin(), catalog.end(), [&](const VertexSet& s) {
    return std::any_of(s.begin(), s.end(), [&](Vertex v) { return contains(candidate, v); });
  });
}

namespace {

// Search over one component, vertices relabelled 0..m-1.
class Component {
 public:
  Component(std::vector<std::vector<int>> sets, int universe)
      : sets_(std::move(sets)), chosen_(universe, 0), banned_(universe, 0), hits_(sets_.size(), 0) {
    member_of_.resize(universe);
    for (std::size_t s = 0; s < sets_.size(); ++s)
      for (int v : sets_[s]) member_of_[v].push_back(s);
  }

  // Smallest feasible size; fills best_.
  int solve() {
    for (int budget = 0;; ++budget) {
      if (search(budget)) return budget;
    }
  }

  // Number of hitting sets of exactly `size` elements, capped.
  std::uint64_t count(int size, std::uint64_t cap, bool& complete) {
    count_ = 0;
    cap_ = cap;
    enumerate(size);
    complete = count_ < cap_;
    return count_;
  }

  const std::vector<int>& best() const { return best_; }

 private:
  // first unhit set, preferring the one with fewest allowed elements
  int pick_unhit() const {
    int pick = -1;
    int pick_size = 0;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (hits_[s]) continue;
      int allowed = 0;
      for (int v : sets_[s]) allowed += !banned_[v];
      if (pick < 0 || allowed < pick_size) {
        pick = static_cast<int>(s);
        pick_size = allowed;
      }
    }
    return pick;
  }

  // Greedy packing of pairwise disjoint unhit sets: a lower bound on the
  // number of further elements needed.
  int lower_bound() const {
    std::vector<char> used(chosen_.size(), 0);
    int bound = 0;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (hits_[s]) continue;
      bool disjoint = true;
      for (int v : sets_[s]) {
        if (!banned_[v] && used[v]) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++bound;
      for (int v : sets_[s]) used[v] = 1;
    }
    return bound;
  }

  void choose(int v, int delta) {
    chosen_[v] = delta > 0;
    for (std::size_t s : member_of_[v]) hits_[s] += delta;
  }

  template <class Leaf>
  bool branch(int budget, Leaf&& at_leaf) {
    const int s = pick_unhit();
    if (s < 0) return at_leaf();
    if (budget == 0 || lower_bound() > budget) return false;
    std::vector<int> banned_here;
    bool stop = false;
    for (int v : sets_[s]) {
      if (banned_[v]) continue;
      choose(v, +1);
      path_.push_back(v);
      stop = branch(budget - 1, at_leaf);
      path_.pop_back();
      choose(v, -1);
      if (stop) break;
      // later branches exclude v so each hitting set is reached once
      banned_[v] = 1;
      banned_here.push_back(v);
    }
    for (int v : banned_here) banned_[v] = 0;
    return stop;
  }

  bool search(int budget) {
    return branch(budget, [this] {
      best_ = path_;
      std::sort(best_.begin(), best_.end());
      return true;
    });
  }

  void enumerate(int size) {
    branch(size, [this, size] {
      if (static_cast<int>(path_.size()) == size) ++count_;
      return count_ >= cap_;
    });
  }

  std::vector<std::vector<int>> sets_;
  std::vector<std::vector<std::size_t>> member_of_;
  std::vector<char> chosen_;
  std::vector<char> banned_;
  std::vector<int> hits_;
  std::vector<int> path_;
  std::vector<int> best_;
  std::uint64_t count_ = 0;
  std::uint64_t cap_ = 0;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

HittingSetResult minimum_hitting_set(const std::vector<VertexSet>& catalog, bool count_all, std::uint64_t count_cap) {
  HittingSetResult out;
  out.count = 1;
  if (catalog.empty()) return out;

  std::vector<VertexSet> family;
  for (const auto& s : catalog) {
    VertexSet norm = make_vertex_set(s);
    if (norm.empty()) throw Error(ErrorCode::invalid_argument, "catalog contains an empty set");
    family.push_back(std::move(norm));
  }
  std::sort(family.begin(), family.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<VertexSet> reduced;
  for (const auto& s : family) {
    bool superset = std::any_of(reduced.begin(), reduced.end(), [&](const VertexSet& r) {
      return std::includes(s.begin(), s.end(), r.begin(), r.end());
    });
    if (!superset) reduced.push_back(s);
  }

  // components over shared vertices
  std::map<Vertex, int> index;
  for (const auto& s : reduced)
    for (Vertex v : s) index.emplace(v, 0);
  std::vector<Vertex> label;
  for (auto& [v, i] : index) {
    i = static_cast<int>(label.size());
    label.push_back(v);
  }
  std::vector<int> parent(label.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& s : reduced)
    for (std::size_t i = 1; i < s.size(); ++i)
      parent[find_root(parent, index[s[i]])] = find_root(parent, index[s[0]]);

  std::map<int, std::vector<const VertexSet*>> groups;
  for (const auto& s : reduced) groups[find_root(parent, index[s[0]])].push_back(&s);

  for (const auto& [root, sets] : groups) {
    std::map<Vertex, int> local;
    for (const auto* s : sets)
      for (Vertex v : *s) local.emplace(v, 0);
    std::vector<Vertex> back;
    for (auto& [v, i] : local) {
      i = static_cast<int>(back.size());
      back.push_back(v);
    }
    std::vector<std::vector<int>> relabelled;
    for (const auto* s : sets) {
      std::vector<int> r;
      for (Vertex v : *s) r.push_back(local[v]);
      relabelled.push_back(std::move(r));
    }
    Component comp(std::move(relabelled), static_cast<int>(back.size()));
    const int size = comp.solve();
    out.size += size;
    for (int v : comp.best()) out.best.push_back(back[v]);
    if (count_all) {
      bool complete = true;
      out.count = saturating_mul(out.count, comp.count(size, count_cap, complete));
      out.count_complete = out.count_complete && complete;
    }
  }
  std::sort(out.best.begin(), out.best.end());
  if (!count_all) {
    out.count = 0;
    out.count_complete = false;
  }
  return out;
}

}  // namespace lobsterctl
