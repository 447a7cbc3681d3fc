#include "core/max_flow.hpp"

#include <algorithm>
#include <limits>

namespace vpmcf {

MaxFlow::MaxFlow(int32_t node_count, int32_t source, int32_t sink)
    : n_(node_count), source_(source), sink_(sink), head_(node_count, -1) {}

void MaxFlow::add_edge(int32_t from, int32_t to, double cap_forward, double cap_backward) {
  const int32_t a = static_cast<int32_t>(arc_to_.size());
  arc_to_.push_back(to);
  arc_cap_.push_back(cap_forward);
  arc_next_.push_back(head_[from]);
  head_[from] = a;

  arc_to_.push_back(from);
  arc_cap_.push_back(cap_backward);
  arc_next_.push_back(head_[to]);
  head_[to] = a + 1;
}

bool MaxFlow::bfs_levels() {
  level_.assign(n_, -1);
  level_[source_] = 0;
  std::vector<int32_t> queue;
  queue.reserve(n_);
  queue.push_back(source_);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int32_t u = queue[qi];
    for (int32_t a = head_[u]; a >= 0; a = arc_next_[a]) {
      const int32_t v = arc_to_[a];
      if (arc_cap_[a] > 0.0 && level_[v] < 0) {
        level_[v] = level_[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level_[sink_] >= 0;
}

double MaxFlow::solve() {
  double total = 0.0;
  std::vector<int32_t> path;
  path.reserve(n_);
  while (bfs_levels()) {
    iter_ = head_;
    path.clear();
    int32_t u = source_;
    while (true) {
      if (u == sink_) {
        double push = std::numeric_limits<double>::infinity();
        for (int32_t a : path) push = std::min(push, arc_cap_[a]);
        for (int32_t a : path) {
          arc_cap_[a] -= push;
          arc_cap_[a ^ 1] += push;
        }
        total += push;
        // Retreat to the first saturated arc on the path.
        size_t keep = 0;
        while (keep < path.size() && arc_cap_[path[keep]] > 0.0) ++keep;
        path.resize(keep);
        u = path.empty() ? source_ : arc_to_[path.back()];
        continue;
      }
      int32_t a = iter_[u];
      while (a >= 0 && !(arc_cap_[a] > 0.0 && level_[arc_to_[a]] == level_[u] + 1)) {
        a = arc_next_[a];
      }
      iter_[u] = a;
      if (a < 0) {
        level_[u] = -1;  // dead end; prune
        if (path.empty()) break;
        u = path.size() >= 2 ? arc_to_[path[path.size() - 2]] : source_;
        path.pop_back();
        continue;
      }
      path.push_back(a);
      u = arc_to_[a];
    }
  }
  return total;
}

std::vector<uint8_t> MaxFlow::min_cut_source_side() const {
  std::vector<uint8_t> side(static_cast<size_t>(n_), 0);
  std::vector<int32_t> queue;
  queue.reserve(n_);
  side[static_cast<size_t>(source_)] = 1;
  queue.push_back(source_);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int32_t u = queue[qi];
    for (int32_t a = head_[u]; a >= 0; a = arc_next_[a]) {
      const int32_t v = arc_to_[a];
      if (arc_cap_[a] > 0.0 && !side[static_cast<size_t>(v)]) {
        side[static_cast<size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
  }
  return side;
}

}  // namespace vpmcf
