#ifndef COARSETILER_AUTOMATON_HPP_
#define COARSETILER_AUTOMATON_HPP_

// Self-similar groups given by wreath recursion: states with a root
// permutation on the alphabet {0, ..., d-1} and one section per letter.
//
// Product convention, used everywhere in the library: g * h acts as "first g,
// then h". Consequently
//
//   root(g * h)  = root(h) o root(g)            (images composed left to right)
//   (g * h)_x    = g_x * h_{g(x)}
//
// Words are sequences of state indices; the identity state is never stored.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coarsetiler {

  using Letter = std::uint16_t;

  inline constexpr Letter kIdentityLetter = 0xFFFF;

  // Default bound on d^n for level actions.
  inline constexpr std::size_t kDefaultLeafCap = std::size_t(1) << 24;

  class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images);

    static Permutation identity(std::size_t degree);

    std::size_t degree() const noexcept {
      return images_.size();
    }

    std::uint32_t operator[](std::size_t i) const {
      return images_[i];
    }

    std::vector<std::uint32_t> const& images() const noexcept {
      return images_;
    }

    // The permutation "first *this, then next".
    Permutation then(Permutation const& next) const;
    Permutation inverse() const;
    bool        is_identity() const noexcept;

    // Cycle notation, e.g. "(0 1)(2 3)"; "()" for the identity.
    std::string cycles() const;

    // Accepts an image list "[1,0,2]" or cycle notation "(0 1 2)".
    static Permutation parse(std::string_view text, std::size_t degree);

    auto operator<=>(Permutation const&) const = default;

   private:
    std::vector<std::uint32_t> images_;
  };

  struct GroupWord {
    std::vector<Letter> letters;

    GroupWord() = default;
    explicit GroupWord(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t size() const noexcept {
      return letters.size();
    }
    bool empty() const noexcept {
      return letters.empty();
    }

    auto operator<=>(GroupWord const&) const = default;
  };

  GroupWord operator*(GroupWord const& u, GroupWord const& v);

  struct GroupWordHash {
    std::size_t operator()(GroupWord const& w) const noexcept;
  };

  // Names and formal inverses of a symmetric generating set. Labels on graph
  // edges are indices into this table.
  struct Genset {
    std::vector<std::string>   names;
    std::vector<std::uint32_t> inverse;

    std::size_t size() const noexcept {
      return names.size();
    }
    bool empty() const noexcept {
      return names.empty();
    }
    std::optional<std::uint32_t> find(std::string_view name) const;

    bool operator==(Genset const&) const = default;
  };

  enum class Preset { grigorchuk, fabrykowski_gupta };

  char const*           preset_name(Preset p) noexcept;
  std::optional<Preset> preset_from_name(std::string_view name) noexcept;

  struct StateDef {
    std::string         name;
    Permutation         root;
    std::vector<Letter> sections;  // kIdentityLetter for the identity state

    bool operator==(StateDef const&) const = default;
  };

  // Length-reducing rewriting system with rules of the form xy -> z or
  // xy -> (empty). Reduction is done with a stack, so the result contains no
  // left-hand side as a factor.
  class PairRewriting {
   public:
    PairRewriting() = default;
    explicit PairRewriting(std::size_t alphabet);

    void add_rule(Letter x, Letter y, Letter result);

    // kNoRule when xy is not a left-hand side.
    static constexpr Letter kNoRule = 0xFFFE;
    Letter rule(Letter x, Letter y) const noexcept;

    std::vector<Letter> reduce(std::vector<Letter> const& word) const;

    // Checks every overlap xyz of two left-hand sides. Since each rule
    // strictly shortens, local confluence gives confluence.
    bool is_confluent() const;

   private:
    std::size_t         alphabet_ = 0;
    std::vector<Letter> table_;
  };

  class AutomatonSpec {
   public:
    // Validates every invariant; throws Error{validation} on failure.
    AutomatonSpec(std::size_t           alphabet_size,
                  std::vector<StateDef> states,
                  std::vector<Letter>   genset,
                  std::vector<Letter>   inverses,
                  std::optional<Preset> preset = std::nullopt);

    static AutomatonSpec grigorchuk();
    static AutomatonSpec fabrykowski_gupta();
    // Throws Error{invalid_argument} "unknown preset" for other names.
    static AutomatonSpec from_preset(std::string_view name);

    std::size_t alphabet_size() const noexcept {
      return alphabet_size_;
    }
    std::size_t state_count() const noexcept {
      return states_.size();
    }
    StateDef const& state(Letter s) const {
      return states_.at(s);
    }
    std::vector<StateDef> const& states() const noexcept {
      return states_;
    }

    // Generators in declared order, as state indices.
    std::vector<Letter> const& generators() const noexcept {
      return genset_;
    }
    // Formal inverse of a generator state.
    Letter inverse_of(Letter generator) const;

    // Names and inverses indexed by position in the generating set.
    Genset genset() const;
    // Position of a state in the generating set.
    std::optional<std::uint32_t> genset_index(Letter state) const;

    std::optional<Preset> preset() const noexcept {
      return preset_;
    }
    bool has_exact_word_problem() const noexcept {
      return preset_.has_value();
    }

    PairRewriting const& rewriting() const noexcept {
      return rewriting_;
    }

    std::optional<Letter> find_state(std::string_view name) const;

    // Parses a word over the generating set; every character is one letter.
    GroupWord   parse_word(std::string_view text) const;
    std::string format(GroupWord const& w) const;

    bool operator==(AutomatonSpec const& other) const;

   private:
    std::size_t           alphabet_size_;
    std::vector<StateDef> states_;
    std::vector<Letter>   genset_;
    std::vector<Letter>   inverses_;  // indexed by state; kIdentityLetter if none
    std::optional<Preset> preset_;
    PairRewriting         rewriting_;
  };

  // Permutation induced on the first level of the tree.
  Permutation root_permutation(GroupWord const& w, AutomatonSpec const& spec);

  // Section of w at a first-level vertex, before canonicalization.
  GroupWord section(GroupWord const&     w,
                    std::size_t          letter,
                    AutomatonSpec const& spec);

  GroupWord formal_inverse(GroupWord const& w, AutomatonSpec const& spec);

  // Presets: preset rewriting rules. Custom specs: free reduction only.
  GroupWord canonicalize(GroupWord const& w, AutomatonSpec const& spec);

  // Exact word problem; built-in presets only (Error{unsupported} otherwise).
  // depth_cap == 0 selects the default 10 * |w| + 64.
  bool is_identity(GroupWord const&     w,
                   AutomatonSpec const& spec,
                   std::size_t          depth_cap = 0);

  // Action on the d^n vertices of level n, leaves ordered as base-d numbers
  // with the first letter most significant.
  Permutation level_action(GroupWord const&     w,
                           std::size_t          level,
                           AutomatonSpec const& spec,
                           std::size_t          leaf_cap = kDefaultLeafCap);

  // For custom specs: u and v act identically on every level up to depth.
  bool equal_up_to_depth(GroupWord const&     u,
                         GroupWord const&     v,
                         std::size_t          depth,
                         AutomatonSpec const& spec);

}  // namespace coarsetiler

#endif  // COARSETILER_AUTOMATON_HPP_
