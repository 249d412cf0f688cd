#ifndef COARSETILER_GRAPH_HPP_
#define COARSETILER_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coarsetiler/automaton.hpp"

namespace coarsetiler {

  using Vertex    = std::uint32_t;
  using EdgeIndex = std::uint32_t;

  inline constexpr std::uint32_t kNoLabel = 0xFFFFFFFFu;

  struct Edge {
    Vertex        tail;
    Vertex        head;
    std::uint32_t label = kNoLabel;  // index into the graph's Genset

    auto operator<=>(Edge const&) const = default;
  };

  // Finite oriented multigraph with an optional generator labelling and a set
  // of boundary vertices, i.e. vertices exempt from the equation dpsi = c.
  // Cayley balls expose their sphere as the boundary; closed graphs have none.
  class Graph {
   public:
    Graph() = default;
    Graph(std::size_t       vertex_count,
          std::vector<Edge> edges,
          std::vector<bool> boundary = {},
          Genset            genset   = {});

    std::size_t vertex_count() const noexcept {
      return vertex_count_;
    }
    std::size_t edge_count() const noexcept {
      return edges_.size();
    }
    std::vector<Edge> const& edges() const noexcept {
      return edges_;
    }
    Edge const& edge(EdgeIndex e) const {
      return edges_.at(e);
    }

    bool is_boundary(Vertex v) const {
      return boundary_.at(v);
    }
    std::vector<bool> const& boundary() const noexcept {
      return boundary_;
    }
    std::vector<Vertex> boundary_vertices() const;
    bool                is_closed() const noexcept;

    Genset const& genset() const noexcept {
      return genset_;
    }
    bool is_labelled() const noexcept {
      return !genset_.empty();
    }

    // Edge indices incident to v, in increasing order.
    std::span<EdgeIndex const> incident(Vertex v) const;

    bool is_connected() const;

    // Same graph with a different boundary set.
    Graph with_boundary(std::vector<bool> boundary) const;

    bool operator==(Graph const& other) const;

   private:
    std::size_t            vertex_count_ = 0;
    std::vector<Edge>      edges_;
    std::vector<bool>      boundary_;
    Genset                 genset_;
    std::vector<EdgeIndex> adjacency_;
    std::vector<std::size_t> adjacency_start_;
  };

  // Finite test substrate; same representation as every other graph here.
  using ToyGraph = Graph;

  // A few named toy graphs used by tests and examples.
  ToyGraph path_graph(std::size_t vertex_count);
  ToyGraph cycle_graph(std::size_t vertex_count);

}  // namespace coarsetiler

#endif  // COARSETILER_GRAPH_HPP_
