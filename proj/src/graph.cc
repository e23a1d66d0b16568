#include <ufact/graph.hh>

#include <algorithm>
#include <deque>

namespace ufact
{
  void
  digraph::dedupe()
  {
    for (auto& v : succ_)
      {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
  }

  digraph
  digraph::reversed() const
  {
    digraph r(size());
    for (int v = 0; v < size(); ++v)
      for (int w : succ_[v])
        r.add_edge(w, v);
    return r;
  }

  std::vector<bool>
  digraph::reachable_from(const std::vector<int>& sources) const
  {
    std::vector<bool> seen(size(), false);
    std::vector<int> stack;
    for (int s : sources)
      if (!seen[s])
        {
          seen[s] = true;
          stack.push_back(s);
        }
    while (!stack.empty())
      {
        int v = stack.back();
        stack.pop_back();
        for (int w : succ_[v])
          if (!seen[w])
            {
              seen[w] = true;
              stack.push_back(w);
            }
      }
    return seen;
  }

  scc_result
  tarjan_scc(const digraph& g)
  {
    int n = g.size();
    scc_result r;
    r.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    // explicit call stack: (node, next child position)
    std::vector<std::pair<int, std::size_t>> calls;
    int counter = 0;
    for (int root = 0; root < n; ++root)
      {
        if (index[root] >= 0)
          continue;
        calls.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!calls.empty())
          {
            auto& [v, i] = calls.back();
            const auto& succ = g.succ(v);
            if (i < succ.size())
              {
                int w = succ[i++];
                if (index[w] < 0)
                  {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    calls.emplace_back(w, 0);
                  }
                else if (on_stack[w])
                  low[v] = std::min(low[v], index[w]);
                continue;
              }
            int done = v;
            calls.pop_back();
            if (!calls.empty())
              {
                int parent = calls.back().first;
                low[parent] = std::min(low[parent], low[done]);
              }
            if (low[done] == index[done])
              {
                int id = r.count++;
                bool cyc = false;
                int size = 0;
                int w;
                do
                  {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    r.comp[w] = id;
                    ++size;
                  }
                while (w != done);
                if (size > 1)
                  cyc = true;
                else
                  for (int x : g.succ(done))
                    cyc = cyc || x == done;
                r.nontrivial.push_back(cyc);
              }
          }
      }
    return r;
  }

  std::vector<int>
  bfs_path(const digraph& g, int from, const std::function<bool(int)>& target,
           const std::function<bool(int)>& allowed, bool allow_empty)
  {
    if (allow_empty && target(from))
      return {from};
    std::vector<int> parent(g.size(), -2);
    std::deque<int> todo{from};
    parent[from] = -1;
    while (!todo.empty())
      {
        int v = todo.front();
        todo.pop_front();
        for (int w : g.succ(v))
          {
            if (!allowed(w))
              continue;
            if (target(w))
              {
                std::vector<int> path{w};
                for (int x = v; x >= 0; x = parent[x])
                  path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
              }
            if (parent[w] != -2)
              continue;
            parent[w] = v;
            todo.push_back(w);
          }
      }
    return {};
  }
}
