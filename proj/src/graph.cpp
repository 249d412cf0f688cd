#include "coarsetiler/graph.hpp"

#include <queue>

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  Graph::Graph(std::size_t       vertex_count,
               std::vector<Edge> edges,
               std::vector<bool> boundary,
               Genset            genset)
      : vertex_count_(vertex_count),
        edges_(std::move(edges)),
        boundary_(std::move(boundary)),
        genset_(std::move(genset)) {
    if (vertex_count_ >= kNoLabel) {
      throw Error(ErrorCode::invalid_argument, "too many vertices");
    }
    if (boundary_.empty()) {
      boundary_.assign(vertex_count_, false);
    } else if (boundary_.size() != vertex_count_) {
      throw Error(ErrorCode::invalid_argument,
                  "boundary flags do not match the vertex count");
    }
    if (genset_.inverse.size() != genset_.names.size()) {
      throw Error(ErrorCode::invalid_argument, "genset without inverses");
    }
    std::vector<std::size_t> degree(vertex_count_ + 1, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto const& e = edges_[i];
      if (e.tail >= vertex_count_ || e.head >= vertex_count_) {
        throw Error(ErrorCode::invalid_argument,
                    "edge " + std::to_string(i) + " has an endpoint out of range");
      }
      if (e.label != kNoLabel && e.label >= genset_.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "edge " + std::to_string(i) + " has an unknown label");
      }
      ++degree[e.tail];
      if (e.head != e.tail) {
        ++degree[e.head];
      }
    }
    adjacency_start_.assign(vertex_count_ + 1, 0);
    for (std::size_t v = 0; v < vertex_count_; ++v) {
      adjacency_start_[v + 1] = adjacency_start_[v] + degree[v];
    }
    adjacency_.resize(adjacency_start_[vertex_count_]);
    std::vector<std::size_t> fill(adjacency_start_.begin(),
                                  adjacency_start_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto const& e           = edges_[i];
      adjacency_[fill[e.tail]++] = static_cast<EdgeIndex>(i);
      if (e.head != e.tail) {
        adjacency_[fill[e.head]++] = static_cast<EdgeIndex>(i);
      }
    }
  }

  std::vector<Vertex> Graph::boundary_vertices() const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < vertex_count_; ++v) {
      if (boundary_[v]) {
        out.push_back(static_cast<Vertex>(v));
      }
    }
    return out;
  }

  bool Graph::is_closed() const noexcept {
    for (bool b : boundary_) {
      if (b) {
        return false;
      }
    }
    return true;
  }

  std::span<EdgeIndex const> Graph::incident(Vertex v) const {
    if (v >= vertex_count_) {
      throw Error(ErrorCode::invalid_argument, "vertex out of range");
    }
    return {adjacency_.data() + adjacency_start_[v],
            adjacency_start_[v + 1] - adjacency_start_[v]};
  }

  bool Graph::is_connected() const {
    if (vertex_count_ == 0) {
      return true;
    }
    std::vector<bool>  seen(vertex_count_, false);
    std::queue<Vertex> queue;
    queue.push(0);
    seen[0]           = true;
    std::size_t count = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop();
      for (auto e : incident(v)) {
        auto w = edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          queue.push(w);
        }
      }
    }
    return count == vertex_count_;
  }

  Graph Graph::with_boundary(std::vector<bool> boundary) const {
    return Graph(vertex_count_, edges_, std::move(boundary), genset_);
  }

  bool Graph::operator==(Graph const& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_
           && boundary_ == other.boundary_ && genset_ == other.genset_;
  }

  ToyGraph path_graph(std::size_t vertex_count) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < vertex_count; ++i) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
    }
    return Graph(vertex_count, std::move(edges));
  }

  ToyGraph cycle_graph(std::size_t vertex_count) {
    auto edges = path_graph(vertex_count).edges();
    if (vertex_count > 2) {
      edges.push_back({static_cast<Vertex>(vertex_count - 1), 0});
    }
    return Graph(vertex_count, std::move(edges));
  }

}  // namespace coarsetiler
