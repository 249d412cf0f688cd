#ifndef COARSETILER_SOLVER_HPP_
#define COARSETILER_SOLVER_HPP_

// Constructive solution of d psi = c on a finite graph whose boundary
// vertices are exempt from the equation.
//
// The tree-based solver works on the BFS spanning tree rooted at vertex 0.
// A tree edge is FINITE when the subtree below it contains no boundary
// vertex; such edges carry the sum of c beneath them. The remaining
// (LOCALLY_INFINITE) edges form a pruned tree. From each component root the
// solver follows a ray, always to the least-index child across a
// LOCALLY_INFINITE edge, solving the equation vertex by vertex and letting
// the excess leave through the boundary vertex that ends the ray. Side
// branches of the ray are attached with value zero and solved the same way.
//
// On a closed graph (no boundary) every edge is FINITE and a solution exists
// iff the total of c vanishes.

#include <cstdint>
#include <optional>
#include <vector>

#include "coarsetiler/cayley.hpp"
#include "coarsetiler/chains.hpp"
#include "coarsetiler/graph.hpp"

namespace coarsetiler {

  enum class EdgeClass : std::uint8_t { not_in_tree, finite, locally_infinite };

  inline constexpr EdgeIndex kNoEdge = 0xFFFFFFFFu;

  struct SpanningTree {
    Vertex                           root = 0;
    std::vector<Vertex>              parent;       // parent[root] == root
    std::vector<EdgeIndex>           parent_edge;  // kNoEdge at the root
    std::vector<std::uint32_t>       depth;
    std::vector<std::vector<Vertex>> children;     // increasing order
    std::vector<EdgeClass>           edge_class;   // per graph edge
    std::vector<std::vector<Vertex>> rays;         // filled by the solver

    std::size_t tree_edge_count() const noexcept;
  };

  // BFS tree with the smallest-index-parent rule, edges classified.
  // Throws Error{validation} when the graph is disconnected.
  SpanningTree spanning_tree(Graph const& g);

  struct LemmaSolution {
    Chain1       psi;
    SpanningTree tree;
  };

  // Throws Error{unsolvable} (UnsolvableOnClosedGraph) on a closed graph with
  // nonzero total, Error{validation} on a disconnected graph.
  LemmaSolution solve_lemma(Graph const& g, Chain0 const& c);

  Chain1 solve_on_ball(Graph const& g, Chain0 const& c);

  inline constexpr std::uint32_t kDefaultCollar = 2;

  // All-ones target on a preset ball. The tree is classified on the ball of
  // radius R + collar and psi is restricted back, so an edge near the sphere
  // counts as LOCALLY_INFINITE only if its subtree still reaches the larger
  // sphere. Dead ends a level or two past the sphere are then seen as
  // finite, which keeps the decorations of the radius-(R - 2) tiles
  // independent of R. collar = 0 is solve_on_ball on the ball itself.
  Chain1 solve_fundamental(AutomatonSpec const& spec,
                           CayleyBall const&    ball,
                           Modulus              p,
                           std::uint32_t        collar     = kDefaultCollar,
                           std::size_t          vertex_cap = kDefaultVertexCap);

  // Gaussian elimination over Z_p on the full incidence system d psi = c
  // (every vertex constrained, boundary flags ignored). Requires prime p.
  std::optional<Chain1> oracle_solve_finite(Graph const& g, Chain0 const& c);

}  // namespace coarsetiler

#endif  // COARSETILER_SOLVER_HPP_
