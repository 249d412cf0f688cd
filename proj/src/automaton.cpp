#include "coarsetiler/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  char const* error_code_name(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::invalid_argument:
        return "invalid argument";
      case ErrorCode::parse:
        return "parse error";
      case ErrorCode::validation:
        return "validation error";
      case ErrorCode::resource:
        return "resource limit";
      case ErrorCode::unsolvable:
        return "UnsolvableOnClosedGraph";
      case ErrorCode::unsupported:
        return "unsupported";
      case ErrorCode::internal:
        return "internal error";
    }
    return "unknown error";
  }

  ////////////////////////////////////////////////////////////////////////
  // Permutation
  ////////////////////////////////////////////////////////////////////////

  Permutation::Permutation(std::vector<std::uint32_t> images)
      : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) {
        throw Error(ErrorCode::invalid_argument, "not a permutation");
      }
      seen[x] = true;
    }
  }

  Permutation Permutation::identity(std::size_t degree) {
    std::vector<std::uint32_t> im(degree);
    std::iota(im.begin(), im.end(), 0u);
    Permutation result;
    result.images_ = std::move(im);
    return result;
  }

  Permutation Permutation::then(Permutation const& next) const {
    if (next.degree() != degree()) {
      throw Error(ErrorCode::invalid_argument, "permutation degree mismatch");
    }
    Permutation result;
    result.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) {
      result.images_[i] = next.images_[images_[i]];
    }
    return result;
  }

  Permutation Permutation::inverse() const {
    Permutation result;
    result.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) {
      result.images_[images_[i]] = static_cast<std::uint32_t>(i);
    }
    return result;
  }

  bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) {
        return false;
      }
    }
    return true;
  }

  std::string Permutation::cycles() const {
    std::ostringstream os;
    std::vector<bool>  done(degree(), false);
    bool               any = false;
    for (std::size_t i = 0; i < degree(); ++i) {
      if (done[i] || images_[i] == i) {
        continue;
      }
      any = true;
      os << '(';
      std::size_t j = i;
      do {
        done[j] = true;
        os << j;
        j = images_[j];
        if (j != i) {
          os << ' ';
        }
      } while (j != i);
      os << ')';
    }
    if (!any) {
      os << "()";
    }
    return os.str();
  }

  namespace {
    std::vector<std::uint32_t> parse_numbers(std::string_view text) {
      std::vector<std::uint32_t> out;
      std::size_t                i = 0;
      while (i < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
          std::uint64_t v = 0;
          while (i < text.size()
                 && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
            if (v > 0xFFFFFFFFull) {
              throw Error(ErrorCode::parse, "permutation entry too large");
            }
            ++i;
          }
          out.push_back(static_cast<std::uint32_t>(v));
        } else if (text[i] == ',' || text[i] == ' ' || text[i] == '\t') {
          ++i;
        } else {
          throw Error(ErrorCode::parse,
                      std::string("unexpected character '") + text[i]
                          + "' in permutation");
        }
      }
      return out;
    }
  }  // namespace

  Permutation Permutation::parse(std::string_view text, std::size_t degree) {
    auto const first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      return identity(degree);
    }
    text.remove_prefix(first);
    text = text.substr(0, text.find_last_not_of(" \t") + 1);

    if (text.front() == '[') {
      if (text.back() != ']') {
        throw Error(ErrorCode::parse, "unterminated image list");
      }
      auto images = parse_numbers(text.substr(1, text.size() - 2));
      if (images.size() != degree) {
        throw Error(ErrorCode::validation,
                    "image list has " + std::to_string(images.size())
                        + " entries, expected " + std::to_string(degree));
      }
      return Permutation(std::move(images));
    }

    std::vector<std::uint32_t> images(degree);
    std::iota(images.begin(), images.end(), 0u);
    std::vector<bool> moved(degree, false);
    std::size_t       i = 0;
    while (i < text.size()) {
      if (text[i] == ' ') {
        ++i;
        continue;
      }
      if (text[i] != '(') {
        throw Error(ErrorCode::parse, "expected '(' in cycle notation");
      }
      auto close = text.find(')', i);
      if (close == std::string_view::npos) {
        throw Error(ErrorCode::parse, "unterminated cycle");
      }
      auto cycle = parse_numbers(text.substr(i + 1, close - i - 1));
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        auto x = cycle[k];
        if (x >= degree || moved[x]) {
          throw Error(ErrorCode::validation,
                      "cycle entry " + std::to_string(x) + " is invalid");
        }
        moved[x]  = true;
        images[x] = cycle[(k + 1) % cycle.size()];
      }
      i = close + 1;
    }
    return Permutation(std::move(images));
  }

  ////////////////////////////////////////////////////////////////////////
  // Words and generating sets
  ////////////////////////////////////////////////////////////////////////

  GroupWord operator*(GroupWord const& u, GroupWord const& v) {
    GroupWord result = u;
    result.letters.insert(result.letters.end(), v.letters.begin(),
                          v.letters.end());
    return result;
  }

  std::size_t GroupWordHash::operator()(GroupWord const& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto l : w.letters) {
      h ^= l + 1;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  std::optional<std::uint32_t> Genset::find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) {
        return static_cast<std::uint32_t>(i);
      }
    }
    return std::nullopt;
  }

  char const* preset_name(Preset p) noexcept {
    switch (p) {
      case Preset::grigorchuk:
        return "grigorchuk";
      case Preset::fabrykowski_gupta:
        return "fabrykowski-gupta";
    }
    return "";
  }

  std::optional<Preset> preset_from_name(std::string_view name) noexcept {
    if (name == "grigorchuk") {
      return Preset::grigorchuk;
    }
    if (name == "fabrykowski-gupta") {
      return Preset::fabrykowski_gupta;
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // PairRewriting
  ////////////////////////////////////////////////////////////////////////

  PairRewriting::PairRewriting(std::size_t alphabet)
      : alphabet_(alphabet), table_(alphabet * alphabet, kNoRule) {}

  void PairRewriting::add_rule(Letter x, Letter y, Letter result) {
    table_.at(x * alphabet_ + y) = result;
  }

  Letter PairRewriting::rule(Letter x, Letter y) const noexcept {
    if (x >= alphabet_ || y >= alphabet_) {
      return kNoRule;
    }
    return table_[x * alphabet_ + y];
  }

  std::vector<Letter> PairRewriting::reduce(
      std::vector<Letter> const& word) const {
    std::vector<Letter> out;
    out.reserve(word.size());
    for (Letter cur : word) {
      if (cur == kIdentityLetter) {
        continue;
      }
      bool keep = true;
      while (!out.empty()) {
        Letter r = rule(out.back(), cur);
        if (r == kNoRule) {
          break;
        }
        out.pop_back();
        if (r == kIdentityLetter) {
          keep = false;
          break;
        }
        cur = r;
      }
      if (keep) {
        out.push_back(cur);
      }
    }
    return out;
  }

  bool PairRewriting::is_confluent() const {
    auto const n = static_cast<Letter>(alphabet_);
    for (Letter x = 0; x < n; ++x) {
      for (Letter y = 0; y < n; ++y) {
        Letter xy = rule(x, y);
        if (xy == kNoRule) {
          continue;
        }
        for (Letter z = 0; z < n; ++z) {
          Letter yz = rule(y, z);
          if (yz == kNoRule) {
            continue;
          }
          auto left  = reduce({xy, z});
          auto right = reduce({x, yz});
          if (left != right) {
            return false;
          }
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // AutomatonSpec
  ////////////////////////////////////////////////////////////////////////

  namespace {
    [[noreturn]] void invalid(std::string const& what) {
      throw Error(ErrorCode::validation, what);
    }
  }  // namespace

  AutomatonSpec::AutomatonSpec(std::size_t           alphabet_size,
                               std::vector<StateDef> states,
                               std::vector<Letter>   genset,
                               std::vector<Letter>   inverses,
                               std::optional<Preset> preset)
      : alphabet_size_(alphabet_size),
        states_(std::move(states)),
        genset_(std::move(genset)),
        inverses_(),
        preset_(preset) {
    if (alphabet_size_ < 2) {
      invalid("alphabet_size: must be at least 2");
    }
    if (states_.empty()) {
      invalid("states: at least one generator state is required");
    }
    if (states_.size() >= PairRewriting::kNoRule) {
      invalid("states: too many states");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
      auto const& s    = states_[i];
      auto const  path = "states[" + std::to_string(i) + "]";
      if (s.name.size() != 1
          || std::isspace(static_cast<unsigned char>(s.name[0]))
          || s.name == "e") {
        invalid(path + ".name: state names are single characters other than "
                       "'e' (reserved for the identity)");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (states_[j].name == s.name) {
          invalid(path + ".name: duplicate state '" + s.name + "'");
        }
      }
      if (s.root.degree() != alphabet_size_) {
        invalid(path + ".root_perm: degree differs from alphabet_size");
      }
      if (s.sections.size() != alphabet_size_) {
        invalid(path + ".sections: expected "
                + std::to_string(alphabet_size_) + " entries");
      }
      for (std::size_t x = 0; x < s.sections.size(); ++x) {
        auto t = s.sections[x];
        if (t != kIdentityLetter && t >= states_.size()) {
          invalid(path + ".sections[" + std::to_string(x)
                  + "]: undeclared state");
        }
      }
    }
    if (genset_.empty()) {
      invalid("genset: must not be empty");
    }
    if (inverses.size() != genset_.size()) {
      invalid("inverses: one entry per generator is required");
    }
    inverses_.assign(states_.size(), kIdentityLetter);
    for (std::size_t i = 0; i < genset_.size(); ++i) {
      auto g = genset_[i];
      if (g >= states_.size()) {
        invalid("genset[" + std::to_string(i) + "]: undeclared state");
      }
      if (std::count(genset_.begin(), genset_.end(), g) != 1) {
        invalid("genset: duplicate generator '" + states_[g].name + "'");
      }
      inverses_[g] = inverses[i];
    }
    for (auto g : genset_) {
      auto inv = inverses_[g];
      if (inv >= states_.size()
          || std::find(genset_.begin(), genset_.end(), inv) == genset_.end()) {
        invalid("inverses." + states_[g].name
                + ": inverse must be a generator");
      }
      if (inverses_[inv] != g) {
        invalid("inverses." + states_[g].name
                + ": inverse map is not an involution");
      }
    }

    rewriting_ = PairRewriting(states_.size());
    for (auto g : genset_) {
      rewriting_.add_rule(g, inverses_[g], kIdentityLetter);
    }
    if (preset_ == Preset::grigorchuk) {
      // a = 0, b = 1, c = 2, d = 3; {1, b, c, d} is a Klein four-group.
      for (Letter x = 1; x <= 3; ++x) {
        for (Letter y = 1; y <= 3; ++y) {
          if (x != y) {
            rewriting_.add_rule(x, y, static_cast<Letter>(6 - x - y));
          }
        }
      }
    } else if (preset_ == Preset::fabrykowski_gupta) {
      // a = 0, A = 1, b = 2, B = 3; both generators have order three.
      rewriting_.add_rule(0, 0, 1);
      rewriting_.add_rule(1, 1, 0);
      rewriting_.add_rule(2, 2, 3);
      rewriting_.add_rule(3, 3, 2);
    }
    if (!rewriting_.is_confluent()) {
      throw Error(ErrorCode::internal, "rewriting rules are not confluent");
    }

    // x * inverse(x) must act trivially; checked to a modest depth.
    std::size_t depth = 0;
    for (std::size_t leaves = alphabet_size_; leaves <= 4096 && depth < 8;
         leaves *= alphabet_size_) {
      ++depth;
    }
    for (auto g : genset_) {
      GroupWord w({g, inverses_[g]});
      if (!level_action(w, depth, *this).is_identity()) {
        invalid("inverses." + states_[g].name + ": '" + states_[g].name
                + states_[inverses_[g]].name + "' does not act trivially");
      }
    }
    if (preset_) {
      // is_identity decides single letters by this lookup.
      for (Letter s = 0; s < states_.size(); ++s) {
        if (level_action(GroupWord({s}), depth, *this).is_identity()) {
          throw Error(ErrorCode::internal,
                      "preset state acts trivially: " + states_[s].name);
        }
      }
    }
  }

  AutomatonSpec AutomatonSpec::grigorchuk() {
    auto const            swap = Permutation({1, 0});
    auto const            id   = Permutation::identity(2);
    std::vector<StateDef> states{
        {"a", swap, {kIdentityLetter, kIdentityLetter}},
        {"b", id, {0, 2}},
        {"c", id, {0, 3}},
        {"d", id, {kIdentityLetter, 1}},
    };
    return AutomatonSpec(
        2, std::move(states), {0, 1, 2, 3}, {0, 1, 2, 3}, Preset::grigorchuk);
  }

  AutomatonSpec AutomatonSpec::fabrykowski_gupta() {
    auto const            rot  = Permutation({1, 2, 0});
    auto const            id   = Permutation::identity(3);
    auto const            none = kIdentityLetter;
    std::vector<StateDef> states{
        {"a", rot, {none, none, none}},
        {"A", rot.inverse(), {none, none, none}},
        {"b", id, {0, none, 2}},
        {"B", id, {1, none, 3}},
    };
    return AutomatonSpec(3,
                         std::move(states),
                         {0, 1, 2, 3},
                         {1, 0, 3, 2},
                         Preset::fabrykowski_gupta);
  }

  AutomatonSpec AutomatonSpec::from_preset(std::string_view name) {
    auto p = preset_from_name(name);
    if (!p) {
      throw Error(ErrorCode::invalid_argument,
                  "unknown preset '" + std::string(name) + "'");
    }
    return *p == Preset::grigorchuk ? grigorchuk() : fabrykowski_gupta();
  }

  Letter AutomatonSpec::inverse_of(Letter generator) const {
    auto inv = generator < inverses_.size() ? inverses_[generator]
                                            : kIdentityLetter;
    if (inv == kIdentityLetter) {
      throw Error(ErrorCode::invalid_argument,
                  "state has no declared inverse");
    }
    return inv;
  }

  Genset AutomatonSpec::genset() const {
    Genset g;
    for (auto s : genset_) {
      g.names.push_back(states_[s].name);
      g.inverse.push_back(*genset_index(inverses_[s]));
    }
    return g;
  }

  std::optional<std::uint32_t> AutomatonSpec::genset_index(Letter state) const {
    auto it = std::find(genset_.begin(), genset_.end(), state);
    if (it == genset_.end()) {
      return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - genset_.begin());
  }

  std::optional<Letter> AutomatonSpec::find_state(std::string_view name) const {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].name == name) {
        return static_cast<Letter>(i);
      }
    }
    return std::nullopt;
  }

  GroupWord AutomatonSpec::parse_word(std::string_view text) const {
    GroupWord w;
    for (std::size_t i = 0; i < text.size(); ++i) {
      auto s = find_state(text.substr(i, 1));
      if (!s || !genset_index(*s)) {
        throw Error(ErrorCode::invalid_argument,
                    "unknown letter '" + std::string(1, text[i])
                        + "' at position " + std::to_string(i));
      }
      w.letters.push_back(*s);
    }
    return w;
  }

  std::string AutomatonSpec::format(GroupWord const& w) const {
    std::string out;
    for (auto l : w.letters) {
      out += states_.at(l).name;
    }
    return out;
  }

  bool AutomatonSpec::operator==(AutomatonSpec const& other) const {
    return alphabet_size_ == other.alphabet_size_ && states_ == other.states_
           && genset_ == other.genset_ && inverses_ == other.inverses_
           && preset_ == other.preset_;
  }

  ////////////////////////////////////////////////////////////////////////
  // Wreath recursion
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void check_word(GroupWord const& w, AutomatonSpec const& spec) {
      for (auto l : w.letters) {
        if (l >= spec.state_count()) {
          throw Error(ErrorCode::invalid_argument, "unknown letter in word");
        }
      }
    }

    // Section at x together with the image of x.
    std::pair<GroupWord, std::size_t> section_and_image(
        GroupWord const&     w,
        std::size_t          x,
        AutomatonSpec const& spec) {
      GroupWord result;
      for (auto l : w.letters) {
        auto const& st = spec.state(l);
        auto        s  = st.sections[x];
        if (s != kIdentityLetter) {
          result.letters.push_back(s);
        }
        x = st.root[x];
      }
      return {std::move(result), x};
    }

    void fill_level_action(GroupWord const&            w,
                           std::size_t                 level,
                           AutomatonSpec const&        spec,
                           std::vector<std::uint32_t>& out,
                           std::size_t                 offset,
                           std::size_t                 block) {
      if (w.empty()) {
        for (std::size_t j = 0; j < block; ++j) {
          out[offset + j] = static_cast<std::uint32_t>(offset + j);
        }
        return;
      }
      if (level == 0) {
        out[offset] = static_cast<std::uint32_t>(offset);
        return;
      }
      // offset is the first leaf of the subtree being filled; images are
      // absolute, so the subtree's base has to be added back.
      auto const d   = spec.alphabet_size();
      auto const sub = block / d;
      for (std::size_t x = 0; x < d; ++x) {
        auto [wx, y] = section_and_image(w, x, spec);
        fill_level_action(wx, level - 1, spec, out, offset + x * sub, sub);
        for (std::size_t j = 0; j < sub; ++j) {
          auto& img = out[offset + x * sub + j];
          img       = static_cast<std::uint32_t>(img - (offset + x * sub)
                                           + offset + y * sub);
        }
      }
    }
  }  // namespace

  Permutation root_permutation(GroupWord const& w, AutomatonSpec const& spec) {
    check_word(w, spec);
    auto const                 d = spec.alphabet_size();
    std::vector<std::uint32_t> images(d);
    for (std::size_t x = 0; x < d; ++x) {
      std::size_t y = x;
      for (auto l : w.letters) {
        y = spec.state(l).root[y];
      }
      images[x] = static_cast<std::uint32_t>(y);
    }
    return Permutation(std::move(images));
  }

  GroupWord section(GroupWord const&     w,
                    std::size_t          letter,
                    AutomatonSpec const& spec) {
    check_word(w, spec);
    if (letter >= spec.alphabet_size()) {
      throw Error(ErrorCode::invalid_argument,
                  "letter " + std::to_string(letter) + " out of range");
    }
    return section_and_image(w, letter, spec).first;
  }

  GroupWord formal_inverse(GroupWord const& w, AutomatonSpec const& spec) {
    GroupWord result;
    result.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      result.letters.push_back(spec.inverse_of(*it));
    }
    return result;
  }

  GroupWord canonicalize(GroupWord const& w, AutomatonSpec const& spec) {
    check_word(w, spec);
    return GroupWord(spec.rewriting().reduce(w.letters));
  }

  namespace {
    bool is_identity_rec(GroupWord const&     w,
                         AutomatonSpec const& spec,
                         std::size_t          depth,
                         std::size_t          cap) {
      if (depth > cap) {
        throw Error(ErrorCode::internal,
                    "word problem recursion exceeded depth "
                        + std::to_string(cap));
      }
      auto const cw = canonicalize(w, spec);
      if (cw.empty()) {
        return true;
      }
      if (cw.size() == 1) {
        // Every preset state acts nontrivially (checked at construction).
        return false;
      }
      if (!root_permutation(cw, spec).is_identity()) {
        return false;
      }
      for (std::size_t x = 0; x < spec.alphabet_size(); ++x) {
        auto s = canonicalize(section(cw, x, spec), spec);
        // Sections of canonical preset words are strictly shorter; this is
        // what makes the recursion terminate.
        if (s.size() >= cw.size()) {
          throw Error(ErrorCode::internal,
                      "section of '" + spec.format(cw)
                          + "' did not contract");
        }
        if (!is_identity_rec(s, spec, depth + 1, cap)) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  bool is_identity(GroupWord const&     w,
                   AutomatonSpec const& spec,
                   std::size_t          depth_cap) {
    if (!spec.has_exact_word_problem()) {
      throw Error(ErrorCode::unsupported,
                  "exact word problem is only available for built-in presets");
    }
    if (depth_cap == 0) {
      depth_cap = 10 * w.size() + 64;
    }
    return is_identity_rec(w, spec, 0, depth_cap);
  }

  Permutation level_action(GroupWord const&     w,
                           std::size_t          level,
                           AutomatonSpec const& spec,
                           std::size_t          leaf_cap) {
    check_word(w, spec);
    std::size_t leaves = 1;
    for (std::size_t i = 0; i < level; ++i) {
      if (leaves > leaf_cap / spec.alphabet_size()) {
        throw ResourceError("level " + std::to_string(level)
                            + " exceeds the leaf cap of "
                            + std::to_string(leaf_cap));
      }
      leaves *= spec.alphabet_size();
    }
    std::vector<std::uint32_t> images(leaves);
    fill_level_action(w, level, spec, images, 0, leaves);
    return Permutation(std::move(images));
  }

  bool equal_up_to_depth(GroupWord const&     u,
                         GroupWord const&     v,
                         std::size_t          depth,
                         AutomatonSpec const& spec) {
    return level_action(u, depth, spec) == level_action(v, depth, spec);
  }

}  // namespace coarsetiler
