#pragma once

// Strongly connected components and reachability on small adjacency-list
// graphs with vertices numbered 0..n-1.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace dualsm {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Component index of every vertex (iterative Tarjan). Components are numbered
// in reverse topological order of the condensation.
inline std::vector<std::size_t> scc_ids(const Adjacency& adj) {
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> frames;  // vertex, next edge
    std::size_t counter = 0;
    std::size_t components = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        frames.emplace_back(root, 0);
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next == 0 && index[v] == unvisited) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (next < adj[v].size()) {
                const std::size_t w = adj[v][next++];
                if (index[w] == unvisited) {
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = components;
                } while (w != v);
                ++components;
            }
            const std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const std::size_t parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comp;
}

// Vertices reachable from `from` by a path of length >= 1.
inline std::vector<bool> reachable_from(const Adjacency& adj, std::size_t from) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> todo(adj[from].begin(), adj[from].end());
    while (!todo.empty()) {
        const std::size_t v = todo.back();
        todo.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        for (std::size_t w : adj[v]) {
            if (!seen[w]) todo.push_back(w);
        }
    }
    return seen;
}

}  // namespace dualsm
