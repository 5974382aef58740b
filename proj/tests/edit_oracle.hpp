// tests/edit_oracle.hpp

// Copyright 2026  The pseval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "pseval/metrics.hpp"

namespace pseval::testing {

// Every string of length <= max_len over {0..alphabet-1}, and the all-pairs
// shortest path over single insert/delete/substitute moves, found by BFS.
// Nothing here shares code with the dynamic program under test.
class EditGraph {
 public:
  EditGraph(int alphabet, int max_len) : alphabet_(alphabet), max_len_(max_len) {
    std::vector<std::vector<int>> frontier{{}};
    nodes_.push_back({});
    for (int len = 1; len <= max_len; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& s : frontier)
        for (int c = 0; c < alphabet; ++c) {
          auto t = s;
          t.push_back(c);
          next.push_back(t);
        }
      nodes_.insert(nodes_.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = static_cast<int>(i);
    adj_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) adj_[i] = neighbours(nodes_[i]);
  }

  const std::vector<std::vector<int>>& nodes() const { return nodes_; }

  // Distances from node `src` to every node.
  std::vector<int> bfs(std::size_t src) const {
    std::vector<int> dist(nodes_.size(), -1);
    std::deque<int> q{static_cast<int>(src)};
    dist[src] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : adj_[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
    }
    return dist;
  }

 private:
  std::vector<int> neighbours(const std::vector<int>& s) const {
    std::vector<int> out;
    for (std::size_t p = 0; p < s.size(); ++p) {
      auto del = s;
      del.erase(del.begin() + static_cast<std::ptrdiff_t>(p));
      out.push_back(index_.at(del));
      for (int c = 0; c < alphabet_; ++c)
        if (c != s[p]) {
          auto sub = s;
          sub[p] = c;
          out.push_back(index_.at(sub));
        }
    }
    if (static_cast<int>(s.size()) < max_len_)
      for (std::size_t p = 0; p <= s.size(); ++p)
        for (int c = 0; c < alphabet_; ++c) {
          auto ins = s;
          ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(p), c);
          out.push_back(index_.at(ins));
        }
    return out;
  }

  int alphabet_, max_len_;
  std::vector<std::vector<int>> nodes_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<int>> adj_;
};

// Replays an alignment's operations and reports whether they are consistent
// with the two sequences and the summary counts.
template <typename T>
bool alignment_is_consistent(const std::vector<T>& ref, const std::vector<T>& hyp, const Alignment& a) {
  std::size_t h = 0, s = 0, d = 0, ins = 0, ri = 0, hi = 0;
  for (const auto& op : a.ops) {
    switch (op.op) {
      case EditOp::Hit:
      case EditOp::Substitution:
        if (!op.ref_index || !op.hyp_index || *op.ref_index != ri || *op.hyp_index != hi) return false;
        if ((op.op == EditOp::Hit) != (ref[ri] == hyp[hi])) return false;
        ++(op.op == EditOp::Hit ? h : s);
        ++ri;
        ++hi;
        break;
      case EditOp::Deletion:
        if (!op.ref_index || op.hyp_index || *op.ref_index != ri) return false;
        ++d;
        ++ri;
        break;
      case EditOp::Insertion:
        if (op.ref_index || !op.hyp_index || *op.hyp_index != hi) return false;
        ++ins;
        ++hi;
        break;
    }
  }
  return ri == ref.size() && hi == hyp.size() && h == a.hits && s == a.substitutions && d == a.deletions &&
         ins == a.insertions && a.distance() == s + d + ins;
}

// Result of checking align() against the exhaustive oracle.
struct OracleReport {
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::string first_failure;
};

inline OracleReport check_align_exhaustive(int alphabet = 3, int max_len = 6) {
  const EditGraph g(alphabet, max_len);
  OracleReport r;
  const auto& nodes = g.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto dist = g.bfs(i);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      ++r.pairs;
      const Alignment a = align(nodes[i], nodes[j]);
      if (static_cast<int>(a.distance()) != dist[j] || !alignment_is_consistent(nodes[i], nodes[j], a)) {
        if (r.mismatches++ == 0)
          r.first_failure = "pair (" + std::to_string(i) + ", " + std::to_string(j) + "): align " +
                            std::to_string(a.distance()) + " vs oracle " + std::to_string(dist[j]);
      }
    }
  }
  return r;
}

}  // namespace pseval::testing
