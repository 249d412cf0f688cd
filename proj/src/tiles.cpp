#include "coarsetiler/tiles.hpp"

#include <algorithm>
#include <limits>

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  char const* polarity_name(Polarity p) noexcept {
    switch (p) {
      case Polarity::bump:
        return "bump";
      case Polarity::dent:
        return "dent";
      case Polarity::unknown:
        return "unknown";
    }
    return "";
  }

  std::optional<Polarity> polarity_from_name(std::string const& s) noexcept {
    if (s == "bump") {
      return Polarity::bump;
    }
    if (s == "dent") {
      return Polarity::dent;
    }
    if (s == "unknown") {
      return Polarity::unknown;
    }
    return std::nullopt;
  }

  FaceProfile FaceProfile::make(std::uint32_t generator,
                                Polarity      polarity,
                                Residue       count) {
    if (polarity == Polarity::unknown) {
      return unknown(generator);
    }
    return {generator, count == 0 ? Polarity::bump : polarity, count};
  }

  FaceProfile FaceProfile::unknown(std::uint32_t generator) {
    return {generator, Polarity::unknown, 0};
  }

  FaceProfile opposition(FaceProfile const& f, Genset const& genset) {
    auto const inv = genset.inverse.at(f.generator);
    switch (f.polarity) {
      case Polarity::bump:
        return FaceProfile::make(inv, Polarity::dent, f.count);
      case Polarity::dent:
        return FaceProfile::make(inv, Polarity::bump, f.count);
      case Polarity::unknown:
        break;
    }
    return FaceProfile::unknown(inv);
  }

  bool TileType::is_complete() const noexcept {
    return std::all_of(faces.begin(), faces.end(), [](FaceProfile const& f) {
      return f.is_known();
    });
  }

  std::optional<std::uint32_t> TileSet::index_of(TileType const& t) const {
    auto it = std::lower_bound(types.begin(), types.end(), t);
    if (it == types.end() || *it != t) {
      return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - types.begin());
  }

  std::uint64_t TileSet::alphabet_bound() const noexcept {
    std::uint64_t const base   = 2ull * p.value();
    std::uint64_t       result = 1;
    for (std::size_t i = 0; i < genset.size(); ++i) {
      if (result > std::numeric_limits<std::uint64_t>::max() / base) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      result *= base;
    }
    return result;
  }

  bool PatchTiling::has_edge(EdgeIndex e) const {
    auto const& ed = graph.edge(e);
    return assignment.at(ed.tail).has_value()
           && assignment.at(ed.head).has_value();
  }

  TileType const& PatchTiling::tile_at(Vertex v) const {
    auto const& a = assignment.at(v);
    if (!a) {
      throw Error(ErrorCode::invalid_argument,
                  "vertex " + std::to_string(v) + " has no tile");
    }
    return tiles.types.at(*a);
  }

  std::vector<Vertex> PatchTiling::interior_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < interior.size(); ++v) {
      if (interior[v]) {
        out.push_back(v);
      }
    }
    return out;
  }

  Decoration decorate(Graph const& g, Chain1 const& psi) {
    if (!g.is_labelled()) {
      throw Error(ErrorCode::invalid_argument,
                  "decoration needs a generator-labelled graph");
    }
    if (psi.size() != g.edge_count()) {
      throw Error(ErrorCode::invalid_argument,
                  "1-chain size does not match the edge count");
    }
    auto const& genset = g.genset();
    auto const  n      = g.vertex_count();

    std::vector<TileType> tiles(n);
    for (auto& t : tiles) {
      for (std::uint32_t s = 0; s < genset.size(); ++s) {
        t.faces.push_back(FaceProfile::unknown(s));
      }
    }
    auto place = [&](Vertex v, FaceProfile f, EdgeIndex e) {
      auto& slot = tiles[v].faces[f.generator];
      if (slot.is_known()) {
        throw Error(ErrorCode::validation,
                    "edge " + std::to_string(e) + " reuses face "
                        + genset.names[f.generator] + " of vertex "
                        + std::to_string(v));
      }
      slot = f;
    };
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      auto const& ed = g.edge(e);
      if (ed.label == kNoLabel || ed.label >= genset.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "edge " + std::to_string(e) + " has no generator label");
      }
      if (ed.tail == ed.head) {
        throw Error(ErrorCode::invalid_argument,
                    "edge " + std::to_string(e) + " is a loop");
      }
      place(ed.tail, FaceProfile::make(ed.label, Polarity::bump, psi[e]), e);
      place(ed.head,
            FaceProfile::make(genset.inverse[ed.label], Polarity::dent, psi[e]),
            e);
    }

    std::vector<bool> assigned(n, false);
    TileSet           set{psi.modulus(), genset, {}};
    for (Vertex v = 0; v < n; ++v) {
      if (!g.is_boundary(v) && tiles[v].is_complete()) {
        assigned[v] = true;
        set.types.push_back(tiles[v]);
      }
    }
    std::sort(set.types.begin(), set.types.end());
    set.types.erase(std::unique(set.types.begin(), set.types.end()),
                    set.types.end());

    PatchTiling patch{g, set, std::vector<std::optional<std::uint32_t>>(n),
                      std::vector<bool>(n, false)};
    for (Vertex v = 0; v < n; ++v) {
      if (!assigned[v]) {
        continue;
      }
      patch.assignment[v] = set.index_of(tiles[v]);
      bool inner          = true;
      for (auto e : g.incident(v)) {
        auto const& ed = g.edge(e);
        inner          = inner && assigned[ed.tail] && assigned[ed.head];
      }
      patch.interior[v] = inner;
    }
    return {std::move(tiles), std::move(set), std::move(patch)};
  }

  Decoration decorate(CayleyBall const& ball, Chain1 const& psi) {
    return decorate(ball.graph(), psi);
  }

  namespace {
    struct EdgeFaces {
      FaceProfile tail;
      FaceProfile head;
    };

    EdgeFaces faces_of(PatchTiling const& patch, EdgeIndex e) {
      auto const& ed     = patch.graph.edge(e);
      auto const& genset = patch.graph.genset();
      if (ed.label == kNoLabel || ed.label >= genset.size()) {
        throw Error(ErrorCode::validation,
                    "edge " + std::to_string(e) + " has no generator label");
      }
      return {patch.tile_at(ed.tail).faces.at(ed.label),
              patch.tile_at(ed.head).faces.at(genset.inverse[ed.label])};
    }

    std::int64_t signed_bumps(FaceProfile const& f) {
      return f.polarity == Polarity::dent ? -std::int64_t(f.count)
                                          : std::int64_t(f.count);
    }

    void check_modulus(PatchTiling const& patch, Modulus p) {
      if (!(patch.tiles.p == p)) {
        throw Error(ErrorCode::invalid_argument,
                    "modulus " + std::to_string(p.value())
                        + " differs from the patch modulus "
                        + std::to_string(patch.tiles.p.value()));
      }
    }
  }  // namespace

  Chain1 reconstruct_chain(PatchTiling const& patch, Modulus p) {
    check_modulus(patch, p);
    Chain1 psi(p, patch.graph.edge_count());
    for (EdgeIndex e = 0; e < patch.graph.edge_count(); ++e) {
      if (!patch.has_edge(e)) {
        continue;
      }
      auto f = faces_of(patch, e);
      if (!f.tail.is_known() || !f.head.is_known()) {
        throw Error(ErrorCode::validation,
                    "edge " + std::to_string(e) + ": face missing");
      }
      psi.set(e, signed_bumps(f.tail));
    }
    return psi;
  }

  std::vector<EdgeIndex> matching_violations(PatchTiling const& patch,
                                             MatchSide          side) {
    auto const&            genset = patch.graph.genset();
    std::vector<EdgeIndex> out;
    for (EdgeIndex e = 0; e < patch.graph.edge_count(); ++e) {
      if (!patch.has_edge(e)) {
        continue;
      }
      auto f  = faces_of(patch, e);
      bool ok = f.tail.is_known() && f.head.is_known()
                && (side == MatchSide::tail
                        ? opposition(f.tail, genset) == f.head
                        : opposition(f.head, genset) == f.tail);
      if (!ok) {
        out.push_back(e);
      }
    }
    return out;
  }

  VerificationReport verify_tiling(PatchTiling const& patch, Modulus p) {
    check_modulus(patch, p);
    VerificationReport report;
    report.matching_violations = matching_violations(patch, MatchSide::tail);

    // psi' read from whichever face is present, so that a single bad face
    // does not hide the boundary check.
    Chain1 psi(p, patch.graph.edge_count());
    for (EdgeIndex e = 0; e < patch.graph.edge_count(); ++e) {
      if (!patch.has_edge(e)) {
        continue;
      }
      auto f = faces_of(patch, e);
      if (f.tail.is_known()) {
        psi.set(e, signed_bumps(f.tail));
      } else if (f.head.is_known()) {
        psi.set(e, -signed_bumps(f.head));
      }
    }
    auto const d = boundary(psi, patch.graph);
    for (Vertex v = 0; v < patch.graph.vertex_count(); ++v) {
      if (patch.interior.at(v) && d[v] != 1 % p.value()) {
        report.boundary_violations.push_back(v);
      }
    }
    return report;
  }

}  // namespace coarsetiler
