#ifndef COARSETILER_EXPORT_HPP_
#define COARSETILER_EXPORT_HPP_

// Presentation-only exports; nothing reads these back.

#include <string>

#include "coarsetiler/automaton.hpp"
#include "coarsetiler/cayley.hpp"
#include "coarsetiler/tiles.hpp"

namespace coarsetiler {

  // Undirected-looking digraph with one rank=same group per distance.
  std::string ball_to_dot(CayleyBall const& ball, AutomatonSpec const& spec);

  // Adjacency of the assigned tiles; matching violations drawn red.
  std::string patch_to_dot(PatchTiling const& patch);

  // One glyph per tile type: a regular polygon (a square for four
  // generators) with labelled sides carrying count-many triangular bumps
  // (outwards) or notches (inwards).
  std::string tileset_to_svg(TileSet const& tiles);

}  // namespace coarsetiler

#endif  // COARSETILER_EXPORT_HPP_
