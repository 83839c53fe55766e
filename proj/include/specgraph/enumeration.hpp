// enumeration.hpp — exhaustive enumeration of connected subsets (edge or
// vertex flavored) of bounded size. Each connected subset whose smallest
// member is the seed is generated exactly once: candidates are consumed in
// increasing id order and become forbidden for the remaining branches of the
// same level. Exponential in the cap; intended for desk-scale caps (<= ~13).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

namespace detail {

enum : char { kFree = 0, kInSet = 1, kInExt = 2, kForbidden = 3 };

template <class NeighborFn, class Visitor>
class SubsetEnumerator {
 public:
  SubsetEnumerator(int item_count, const NeighborFn& neighbors, const std::vector<char>& allowed,
                   int cap, long long budget, Visitor& visitor)
      : neighbors_(neighbors),
        allowed_(allowed),
        cap_(cap),
        budget_(budget),
        visitor_(visitor),
        status_(static_cast<size_t>(item_count), kFree) {}

  long long run(std::span<const int> seeds) {
    for (int seed : seeds) {
      if (!allowed_[static_cast<size_t>(seed)]) continue;
      seed_ = seed;
      status_[static_cast<size_t>(seed)] = kInSet;
      size_ = 1;
      visitor_.push(seed);
      std::vector<int> ext;
      neighbors_(seed, [&](int f) {
        if (f > seed_ && allowed_[static_cast<size_t>(f)] &&
            status_[static_cast<size_t>(f)] == kFree) {
          status_[static_cast<size_t>(f)] = kInExt;
          ext.push_back(f);
        }
      });
      grow(ext);
      for (int f : ext) status_[static_cast<size_t>(f)] = kFree;
      visitor_.pop(seed);
      size_ = 0;
      status_[static_cast<size_t>(seed)] = kFree;
    }
    return visited_;
  }

 private:
  void grow(const std::vector<int>& ext) {
    ++visited_;
    if (visited_ > budget_)
      throw resource_error("connected-subset enumeration exceeded its budget of " +
                           std::to_string(budget_) + " subsets; lower the cap");
    visitor_.visit();
    if (size_ >= cap_) return;
    size_t processed = 0;
    for (size_t idx = 0; idx < ext.size(); ++idx) {
      int e = ext[idx];
      status_[static_cast<size_t>(e)] = kInSet;
      ++size_;
      visitor_.push(e);
      std::vector<int> child;
      child.reserve(ext.size() - idx);
      for (size_t j = idx + 1; j < ext.size(); ++j) child.push_back(ext[j]);
      size_t first_new = child.size();
      neighbors_(e, [&](int f) {
        if (f > seed_ && allowed_[static_cast<size_t>(f)] &&
            status_[static_cast<size_t>(f)] == kFree) {
          status_[static_cast<size_t>(f)] = kInExt;
          child.push_back(f);
        }
      });
      grow(child);
      for (size_t j = first_new; j < child.size(); ++j)
        status_[static_cast<size_t>(child[j])] = kFree;
      visitor_.pop(e);
      --size_;
      status_[static_cast<size_t>(e)] = kForbidden;
      ++processed;
    }
    // restore for the caller's remaining branches
    for (size_t idx = 0; idx < processed; ++idx)
      status_[static_cast<size_t>(ext[idx])] = kInExt;
  }

  const NeighborFn& neighbors_;
  const std::vector<char>& allowed_;
  int cap_;
  long long budget_;
  Visitor& visitor_;
  std::vector<char> status_;
  int seed_ = 0;
  int size_ = 0;
  long long visited_ = 0;
};

}  // namespace detail

// Enumerate all connected subsets of size <= cap whose items satisfy
// `allowed`, restricted to subsets whose minimum item lies in `seeds`.
// Returns the number of subsets visited.
template <class NeighborFn, class Visitor>
long long enumerate_connected_subsets(int item_count, const NeighborFn& neighbors,
                                      const std::vector<char>& allowed,
                                      std::span<const int> seeds, int cap, long long budget,
                                      Visitor& visitor) {
  if (cap < 1) throw validation_error("enumeration cap must be >= 1");
  detail::SubsetEnumerator<NeighborFn, Visitor> it(item_count, neighbors, allowed, cap, budget,
                                                   visitor);
  return it.run(seeds);
}

// Edge-to-edge adjacency of a metric graph (edges sharing a vertex).
struct EdgeNeighborFn {
  const MetricGraph* g;
  template <class Emit>
  void operator()(int edge_id, Emit&& emit) const {
    const Edge& e = g->edge(edge_id);
    for (int v : {e.source, e.target})
      for (int f : g->incident(v))
        if (f != edge_id) emit(f);
  }
};

// Vertex-to-vertex adjacency.
struct VertexNeighborFn {
  const MetricGraph* g;
  template <class Emit>
  void operator()(int v, Emit&& emit) const {
    for (int eid : g->incident(v)) emit(g->other_end(eid, v));
  }
};

}  // namespace specgraph
