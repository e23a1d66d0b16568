#pragma once

#include <functional>
#include <vector>

namespace ufact
{
  /// Plain adjacency-list digraph over nodes 0..n-1.
  class digraph
  {
  public:
    explicit digraph(int n = 0) : succ_(n) {}

    int size() const { return static_cast<int>(succ_.size()); }
    int add_node()
    {
      succ_.emplace_back();
      return size() - 1;
    }
    void add_edge(int from, int to) { succ_[from].push_back(to); }
    /// Sorts adjacency lists and removes duplicate edges.
    void dedupe();

    const std::vector<int>& succ(int v) const { return succ_[v]; }

    digraph reversed() const;
    std::vector<bool> reachable_from(const std::vector<int>& sources) const;

  private:
    std::vector<std::vector<int>> succ_;
  };

  struct scc_result
  {
    std::vector<int> comp;       ///< node -> component id
    std::vector<bool> nontrivial; ///< component contains a cycle
    int count = 0;
  };

  /// Iterative Tarjan.  Component ids come out in reverse topological order.
  scc_result tarjan_scc(const digraph& g);

  /// Shortest path (as node list, both ends included) from `from` to a node
  /// satisfying `target`, moving only through nodes satisfying `allowed`.
  /// Empty when none.  `from` itself counts as a target only if
  /// `allow_empty` is set.
  std::vector<int> bfs_path(const digraph& g, int from,
                            const std::function<bool(int)>& target,
                            const std::function<bool(int)>& allowed,
                            bool allow_empty = true);
}
