#pragma once

#include <cstdint>
#include <vector>

namespace vpmcf {

// Exact max-flow / min-cut on a directed graph with real capacities (Dinic).
// Arc order is fixed by insertion, so the returned cut is deterministic.  The
// source side reported by `min_cut_source_side` is the set of nodes reachable
// from the source in the final residual graph, i.e. the inclusion-minimal
// minimum cut.
class MaxFlow {
 public:
  MaxFlow(int32_t node_count, int32_t source, int32_t sink);

  void add_edge(int32_t from, int32_t to, double cap_forward, double cap_backward);

  double solve();

  // Valid after solve(): flags[i] != 0 iff node i is on the source side.
  std::vector<uint8_t> min_cut_source_side() const;

 private:
  bool bfs_levels();

  int32_t n_;
  int32_t source_;
  int32_t sink_;
  std::vector<int32_t> arc_to_;
  std::vector<double> arc_cap_;
  std::vector<int32_t> arc_next_;   // next arc in node's list
  std::vector<int32_t> head_;       // first arc per node
  std::vector<int32_t> level_;
  std::vector<int32_t> iter_;
};

}  // namespace vpmcf
