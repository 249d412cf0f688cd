#ifndef COARSETILER_QUOTIENTS_HPP_
#define COARSETILER_QUOTIENTS_HPP_

// Level-n quotients of automaton groups (the action on the d^n vertices of
// level n), their orders and Cayley graphs, and the aperiodicity certificate
// built from them: if p divides no quotient order, the all-ones 0-chain is
// not a boundary on any quotient Cayley graph, so no tiling decorated by a
// solution of d psi = 1 can be invariant under the corresponding subgroup.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarsetiler/automaton.hpp"
#include "coarsetiler/chains.hpp"
#include "coarsetiler/graph.hpp"

namespace coarsetiler {

  inline constexpr std::size_t kDefaultElementCap = 1'000'000;

  // Level action of each generator, in genset order.
  std::vector<Permutation> level_quotient(AutomatonSpec const& spec,
                                          std::size_t          level,
                                          std::size_t leaf_cap = kDefaultLeafCap);

  // Elements of the generated permutation group in BFS order (identity
  // first, products x * s with generators in order). Throws ResourceError,
  // carrying the count reached, past element_cap.
  std::vector<Permutation> enumerate_group(std::span<Permutation const> gens,
                                           std::size_t element_cap
                                           = kDefaultElementCap);

  std::uint64_t quotient_order(std::span<Permutation const> gens,
                               std::size_t element_cap = kDefaultElementCap);

  // One edge per pair {x, x * s} oriented from the smaller BFS index and
  // labelled by s; generators fixing x contribute nothing. Closed graph.
  ToyGraph quotient_cayley(std::span<Permutation const> gens,
                           Genset const&                genset,
                           std::size_t element_cap = kDefaultElementCap);

  struct ObstructionResult {
    bool                  all_ones_is_boundary = false;
    std::optional<Chain1> witness;
  };

  // Decides whether the all-ones 0-chain is a boundary over Z_p using the
  // elimination oracle. Requires a connected graph and prime p.
  ObstructionResult obstruction_check(Graph const& g, Modulus p);

  std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

  enum class Verdict { pass, fail, incomplete };

  char const* verdict_name(Verdict v) noexcept;

  struct LevelReport {
    std::size_t                                     level = 0;
    bool                                            complete = false;
    std::uint64_t                                   order = 0;  // lower bound if incomplete
    std::vector<std::pair<std::uint64_t, unsigned>> factorization;
    bool                                            p_divides   = false;
    bool                                            obstruction = false;
    std::string                                     error;

    bool operator==(LevelReport const&) const = default;
  };

  struct CertificateReport {
    std::string              group;
    std::uint32_t            p = 0;
    std::vector<LevelReport> levels;
    Verdict                  verdict = Verdict::incomplete;
    std::string              scope;
    std::vector<std::string> trusted_inputs;

    bool operator==(CertificateReport const&) const = default;
  };

  struct CertificateCaps {
    std::size_t elements = kDefaultElementCap;
    std::size_t leaves   = kDefaultLeafCap;
  };

  // Requires prime p (the obstruction oracle works over a field).
  CertificateReport aperiodicity_certificate(AutomatonSpec const& spec,
                                             Modulus              p,
                                             std::size_t          first_level,
                                             std::size_t          last_level,
                                             CertificateCaps caps = {});

  std::string render_text(CertificateReport const& report);

}  // namespace coarsetiler

#endif  // COARSETILER_QUOTIENTS_HPP_
