#ifndef COARSETILER_TILES_HPP_
#define COARSETILER_TILES_HPP_

// Combinatorial tiles. A tile sits on a vertex x of a generator-labelled
// graph and has one face per generator s, the face crossed by the edge
// towards x * s. Decorating with a 1-chain psi puts psi(e) bumps on the tail
// face of e and as many dents on its head face; the opposition function pairs
// the two.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsetiler/cayley.hpp"
#include "coarsetiler/chains.hpp"
#include "coarsetiler/graph.hpp"

namespace coarsetiler {

  enum class Polarity : std::uint8_t { bump, dent, unknown };

  char const*              polarity_name(Polarity p) noexcept;
  std::optional<Polarity> polarity_from_name(std::string const& s) noexcept;

  struct FaceProfile {
    std::uint32_t generator = 0;
    Polarity      polarity  = Polarity::bump;
    Residue       count     = 0;

    // Flat faces are normalized to BUMP with count 0.
    static FaceProfile make(std::uint32_t generator,
                            Polarity      polarity,
                            Residue       count);
    static FaceProfile unknown(std::uint32_t generator);

    bool is_known() const noexcept {
      return polarity != Polarity::unknown;
    }
    bool is_flat() const noexcept {
      return is_known() && count == 0;
    }

    auto operator<=>(FaceProfile const&) const = default;
  };

  FaceProfile opposition(FaceProfile const& f, Genset const& genset);

  struct TileType {
    std::vector<FaceProfile> faces;  // one per generator, in genset order

    bool is_complete() const noexcept;

    auto operator<=>(TileType const&) const = default;
  };

  struct TileSet {
    Modulus               p;
    Genset                genset;
    std::vector<TileType> types;  // sorted, distinct

    std::optional<std::uint32_t> index_of(TileType const& t) const;

    // (2p)^|S|, saturating at UINT64_MAX.
    std::uint64_t alphabet_bound() const noexcept;

    bool operator==(TileSet const&) const = default;
  };

  // A tiling of (part of) a labelled graph. Edges with both endpoints
  // assigned belong to the patch; the matching-rule equation is demanded at
  // interior vertices.
  struct PatchTiling {
    Graph                                     graph;
    TileSet                                   tiles;
    std::vector<std::optional<std::uint32_t>> assignment;  // per vertex
    std::vector<bool>                         interior;    // per vertex

    bool                has_edge(EdgeIndex e) const;
    TileType const&     tile_at(Vertex v) const;
    std::vector<Vertex> interior_vertices() const;

    bool operator==(PatchTiling const&) const = default;
  };

  struct Decoration {
    std::vector<TileType> vertex_tiles;  // may contain UNKNOWN faces
    TileSet               tileset;       // complete tiles, sorted
    PatchTiling           patch;
  };

  // vertex_tiles covers every ball vertex; tileset collects the complete
  // tiles (those of non-sphere vertices). The patch assigns every complete
  // tile and marks as interior the vertices all of whose neighbours are
  // assigned.
  Decoration decorate(CayleyBall const& ball, Chain1 const& psi);

  // Same on an arbitrary labelled graph; every vertex whose faces are all
  // known is assigned.
  Decoration decorate(Graph const& g, Chain1 const& psi);

  // psi'(e) = number of bumps on the tail face of e (minus the number of
  // dents). Edges outside the patch get 0. Throws Error{validation} naming
  // the edge when a face is missing.
  Chain1 reconstruct_chain(PatchTiling const& patch, Modulus p);

  enum class MatchSide { tail, head };

  struct VerificationReport {
    std::vector<EdgeIndex> matching_violations;  // sorted
    std::vector<Vertex>    boundary_violations;  // sorted

    bool ok() const noexcept {
      return matching_violations.empty() && boundary_violations.empty();
    }
    bool operator==(VerificationReport const&) const = default;
  };

  // Edges whose faces do not satisfy o(face) = opposite face, tested from the
  // given side.
  std::vector<EdgeIndex> matching_violations(PatchTiling const& patch,
                                             MatchSide side = MatchSide::tail);

  // Matching rules on every patch edge and d psi' = 1 at every interior
  // vertex.
  VerificationReport verify_tiling(PatchTiling const& patch, Modulus p);

}  // namespace coarsetiler

#endif  // COARSETILER_TILES_HPP_
