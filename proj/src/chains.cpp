#include "coarsetiler/chains.hpp"

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  Modulus::Modulus(std::uint64_t p) : p_(0) {
    if (p < 2 || p > 0x7FFFFFFFull) {
      throw Error(ErrorCode::invalid_argument,
                  "modulus must satisfy 2 <= p < 2^31, got "
                      + std::to_string(p));
    }
    p_ = static_cast<std::uint32_t>(p);
  }

  bool Modulus::is_prime() const noexcept {
    if (p_ < 4) {
      return true;
    }
    if (p_ % 2 == 0) {
      return false;
    }
    for (std::uint64_t q = 3; q * q <= p_; q += 2) {
      if (p_ % q == 0) {
        return false;
      }
    }
    return true;
  }

  Chain0 Chain0::ones(Modulus p, std::size_t vertex_count) {
    Chain0 c(p, vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) {
      c.set(v, 1);
    }
    return c;
  }

  Residue Chain0::sum() const noexcept {
    Residue s = 0;
    for (auto v : values()) {
      s = modulus().add(s, v);
    }
    return s;
  }

  Residue Chain1::along(Graph const& g, EdgeIndex e, Vertex from) const {
    auto const& ed = g.edge(e);
    if (ed.tail == from) {
      return (*this)[e];
    }
    if (ed.head == from) {
      return modulus().neg((*this)[e]);
    }
    throw Error(ErrorCode::invalid_argument, "vertex is not on the edge");
  }

  Chain0 boundary(Chain1 const& psi, Graph const& g) {
    if (psi.size() != g.edge_count()) {
      throw Error(ErrorCode::invalid_argument,
                  "1-chain size does not match the edge count");
    }
    auto const p = psi.modulus();
    Chain0     out(p, g.vertex_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      auto k = psi[e];
      if (k == 0) {
        continue;
      }
      auto const& ed = g.edge(e);
      out.add(ed.head, k);
      out.add(ed.tail, p.neg(k));
    }
    return out;
  }

  std::vector<Vertex> residual(Graph const&  g,
                               Chain1 const& psi,
                               Chain0 const& c) {
    if (!(psi.modulus() == c.modulus())) {
      throw Error(ErrorCode::invalid_argument, "modulus mismatch");
    }
    if (c.size() != g.vertex_count()) {
      throw Error(ErrorCode::invalid_argument,
                  "0-chain size does not match the vertex count");
    }
    auto const          d = boundary(psi, g);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (d[v] != c[v]) {
        out.push_back(v);
      }
    }
    return out;
  }

}  // namespace coarsetiler
