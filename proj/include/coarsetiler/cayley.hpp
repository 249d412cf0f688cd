#ifndef COARSETILER_CAYLEY_HPP_
#define COARSETILER_CAYLEY_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "coarsetiler/automaton.hpp"
#include "coarsetiler/graph.hpp"

namespace coarsetiler {

  inline constexpr std::size_t kDefaultVertexCap = 2'000'000;

  // Ball of radius R around the identity in the Cayley graph of a preset.
  //
  // Vertices are ordered level-major, then lexicographically by canonical
  // word (letters compared by generator position). Each vertex keeps the
  // least canonical word among those reaching it during the search. Every
  // edge {x, x*s} is stored once, oriented from the smaller index, labelled
  // by the generator s with tail * s = head. The sphere is the boundary of
  // graph().
  class CayleyBall {
   public:
    std::size_t radius() const noexcept {
      return radius_;
    }
    std::size_t vertex_count() const noexcept {
      return words_.size();
    }
    std::vector<GroupWord> const& words() const noexcept {
      return words_;
    }
    std::vector<std::uint32_t> const& distances() const noexcept {
      return distance_;
    }
    std::uint32_t distance(Vertex v) const {
      return distance_.at(v);
    }
    bool in_sphere(Vertex v) const {
      return distance_.at(v) == radius_;
    }
    std::vector<Edge> const& edges() const noexcept {
      return graph_.edges();
    }
    Graph const& graph() const noexcept {
      return graph_;
    }
    Genset const& genset() const noexcept {
      return graph_.genset();
    }

    // Number of vertices at distance <= r (vertices are level-major).
    std::size_t prefix_size(std::size_t r) const;

    bool operator==(CayleyBall const&) const = default;

   private:
    friend CayleyBall build_ball(AutomatonSpec const&, std::size_t, std::size_t);
    friend CayleyBall make_ball(std::size_t,
                                std::vector<GroupWord>,
                                std::vector<Edge>,
                                Genset);

    std::size_t                radius_ = 0;
    std::vector<GroupWord>     words_;
    std::vector<std::uint32_t> distance_;
    Graph                      graph_;
  };

  // Throws ResourceError past vertex_cap and Error{unsupported} for specs
  // without an exact word problem.
  CayleyBall build_ball(AutomatonSpec const& spec,
                        std::size_t          radius,
                        std::size_t          vertex_cap = kDefaultVertexCap);

  // Reassembles a ball from stored data; distances are recomputed from the
  // edges and must match the level-major order.
  CayleyBall make_ball(std::size_t            radius,
                       std::vector<GroupWord> words,
                       std::vector<Edge>      edges,
                       Genset                 genset);

  struct VertexClasses {
    std::vector<Vertex> interior;
    std::vector<Vertex> sphere;
  };

  VertexClasses classify_vertices(CayleyBall const& ball);

  std::vector<Edge> oriented_edges(CayleyBall const& ball);

}  // namespace coarsetiler

#endif  // COARSETILER_CAYLEY_HPP_
