#ifndef COARSETILER_CHAINS_HPP_
#define COARSETILER_CHAINS_HPP_

// Z_p-valued 0-chains (on vertices) and 1-chains (on oriented edges) of a
// finite graph, and the boundary operator d[x -> y] = y - x.
//
// Residues are stored as least non-negative representatives. Reversing an
// edge negates its value, so a 1-chain is fully described by its values on
// the canonically oriented edges.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coarsetiler/graph.hpp"

namespace coarsetiler {

  using Residue = std::uint32_t;

  // The cyclic group Z_p; p need not be prime.
  class Modulus {
   public:
    explicit Modulus(std::uint64_t p);

    std::uint32_t value() const noexcept {
      return p_;
    }

    Residue reduce(std::int64_t x) const noexcept {
      auto r = x % static_cast<std::int64_t>(p_);
      return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
      auto s = static_cast<std::uint64_t>(a) + b;
      return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept {
      return a >= b ? a - b : static_cast<Residue>(a + (p_ - b));
    }
    Residue neg(Residue a) const noexcept {
      return a == 0 ? 0 : p_ - a;
    }
    Residue mul(Residue a, Residue b) const noexcept {
      return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }

    bool is_prime() const noexcept;

    bool operator==(Modulus const&) const = default;

   private:
    std::uint32_t p_;
  };

  namespace detail {
    template <typename Tag>
    class ChainBase {
     public:
      ChainBase(Modulus p, std::size_t size) : p_(p), values_(size, 0) {}

      Modulus modulus() const noexcept {
        return p_;
      }
      std::size_t size() const noexcept {
        return values_.size();
      }
      Residue operator[](std::size_t i) const {
        return values_.at(i);
      }
      void set(std::size_t i, std::int64_t value) {
        values_.at(i) = p_.reduce(value);
      }
      void add(std::size_t i, std::int64_t value) {
        values_.at(i) = p_.add(values_.at(i), p_.reduce(value));
      }
      std::span<Residue const> values() const noexcept {
        return values_;
      }
      bool is_zero() const noexcept {
        for (auto v : values_) {
          if (v != 0) {
            return false;
          }
        }
        return true;
      }
      // Number of nonzero entries.
      std::size_t support_size() const noexcept {
        std::size_t n = 0;
        for (auto v : values_) {
          n += v != 0;
        }
        return n;
      }

      bool operator==(ChainBase const&) const = default;

     private:
      Modulus              p_;
      std::vector<Residue> values_;
    };
  }  // namespace detail

  // Values indexed by vertex.
  class Chain0 : public detail::ChainBase<struct VertexTag> {
   public:
    using ChainBase::ChainBase;

    static Chain0 ones(Modulus p, std::size_t vertex_count);

    Residue sum() const noexcept;
  };

  // Values indexed by edge, on the edge's stored orientation.
  class Chain1 : public detail::ChainBase<struct EdgeTag> {
   public:
    using ChainBase::ChainBase;

    // Value on the edge read from `from` towards the other endpoint.
    Residue along(Graph const& g, EdgeIndex e, Vertex from) const;
  };

  Chain0 boundary(Chain1 const& psi, Graph const& g);

  // Sorted vertices v with (d psi)(v) != c(v).
  std::vector<Vertex> residual(Graph const&  g,
                               Chain1 const& psi,
                               Chain0 const& c);

}  // namespace coarsetiler

#endif  // COARSETILER_CHAINS_HPP_
