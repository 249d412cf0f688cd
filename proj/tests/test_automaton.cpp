#include <doctest.h>

#include "coarsetiler/automaton.hpp"
#include "coarsetiler/errors.hpp"
#include "support.hpp"

using namespace coarsetiler;

namespace {

  std::string random_word(support::Rng& rng, std::string const& gens,
                          std::size_t max_len) {
    std::string w;
    auto        len = support::uniform(rng, 1, max_len);
    for (std::size_t i = 0; i < len; ++i) {
      w += gens[support::uniform(rng, 0, gens.size() - 1)];
    }
    return w;
  }

  std::vector<std::size_t> as_sizes(Permutation const& p) {
    return {p.images().begin(), p.images().end()};
  }

  template <typename F>
  ErrorCode code_of(F&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    FAIL("no exception");
    return ErrorCode::internal;
  }

  AutomatonSpec adding_machine() {
    // t = (0 1)(1, t) with inverse T = (0 1)(T, 1).
    std::vector<StateDef> states{
        {"t", Permutation({1, 0}), {kIdentityLetter, 0}},
        {"T", Permutation({1, 0}), {1, kIdentityLetter}}};
    return AutomatonSpec(2, states, {0, 1}, {1, 0});
  }

}  // namespace

TEST_SUITE("automaton") {
  TEST_CASE("permutations parse from image lists and cycles") {
    auto p = Permutation::parse("[1,2,0]", 3);
    auto q = Permutation::parse("(0 1 2)", 3);
    CHECK(p == q);
    CHECK(p.cycles() == "(0 1 2)");
    CHECK(Permutation::identity(4).cycles() == "()");
    CHECK(p.then(p.inverse()).is_identity());
    // first p then swap(0 1): 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
    auto s = Permutation::parse("(0 1)", 3);
    CHECK(p.then(s).images() == std::vector<std::uint32_t>{0, 2, 1});
    CHECK_THROWS_AS(Permutation::parse("[1,1]", 2), Error);
    CHECK_THROWS_AS(Permutation::parse("[1,0", 2), Error);
    CHECK_THROWS_AS(Permutation::parse("(0 5)", 3), Error);
    CHECK_THROWS_AS(Permutation({0, 0}), Error);
  }

  TEST_CASE("preset shapes") {
    auto g = AutomatonSpec::grigorchuk();
    CHECK(g.alphabet_size() == 2);
    CHECK(g.state_count() == 4);
    CHECK(g.genset().names == std::vector<std::string>{"a", "b", "c", "d"});
    for (auto s : g.generators()) {
      CHECK(g.inverse_of(s) == s);
    }
    auto f = AutomatonSpec::fabrykowski_gupta();
    CHECK(f.alphabet_size() == 3);
    CHECK(f.genset().names == std::vector<std::string>{"a", "A", "b", "B"});
    CHECK(f.genset().inverse == std::vector<std::uint32_t>{1, 0, 3, 2});
    CHECK(AutomatonSpec::from_preset("grigorchuk") == g);
    CHECK(AutomatonSpec::from_preset("fabrykowski-gupta") == f);
  }

  TEST_CASE("unknown preset names are rejected") {
    try {
      AutomatonSpec::from_preset("nosuch");
      FAIL("accepted");
    } catch (Error const& e) {
      CHECK(e.code() == ErrorCode::invalid_argument);
      CHECK(std::string(e.what()).find("unknown preset") != std::string::npos);
    }
  }

  TEST_CASE("preset rewriting systems are confluent") {
    CHECK(AutomatonSpec::grigorchuk().rewriting().is_confluent());
    CHECK(AutomatonSpec::fabrykowski_gupta().rewriting().is_confluent());
    PairRewriting bad(3);
    bad.add_rule(0, 1, 2);  // ab -> c
    bad.add_rule(1, 2, 0);  // bc -> a; abc reduces to cc and to aa
    CHECK_FALSE(bad.is_confluent());
  }

  TEST_CASE("canonical forms") {
    auto g  = AutomatonSpec::grigorchuk();
    auto cf = [&](std::string const& w) {
      return g.format(canonicalize(g.parse_word(w), g));
    };
    CHECK(cf("bc") == "d");
    CHECK(cf("cb") == "d");
    CHECK(cf("bcd") == "");
    CHECK(cf("aa") == "");
    CHECK(cf("abba") == "");
    CHECK(cf("abcab") == "adab");
    CHECK(cf("abab") == "abab");

    auto f   = AutomatonSpec::fabrykowski_gupta();
    auto fcf = [&](std::string const& w) {
      return f.format(canonicalize(f.parse_word(w), f));
    };
    CHECK(fcf("aa") == "A");
    CHECK(fcf("aaa") == "");
    CHECK(fcf("aA") == "");
    CHECK(fcf("bbb") == "");
    CHECK(fcf("abBA") == "");
    CHECK(fcf("abab") == "abab");
  }

  TEST_CASE("canonicalization is idempotent and keeps the action") {
    auto rng = support::make_rng(1);
    for (auto const& spec :
         {AutomatonSpec::grigorchuk(), AutomatonSpec::fabrykowski_gupta()}) {
      std::string gens;
      for (auto const& n : spec.genset().names) {
        gens += n;
      }
      for (int i = 0; i < 200; ++i) {
        auto w  = spec.parse_word(random_word(rng, gens, 24));
        auto cw = canonicalize(w, spec);
        CHECK(canonicalize(cw, spec) == cw);
        CHECK(cw.size() <= w.size());
        auto const level = spec.alphabet_size() == 2 ? 8u : 5u;
        CHECK(level_action(cw, level, spec) == level_action(w, level, spec));
      }
    }
  }

  TEST_CASE("classical Grigorchuk relations and their proper sub-powers") {
    auto g     = AutomatonSpec::grigorchuk();
    auto table = support::grigorchuk_table();
    CHECK(is_identity(g.parse_word("bcd"), g));
    struct Case {
      std::string base;
      std::size_t order;
    };
    for (auto [base, order] : {Case{"ad", 4}, Case{"ac", 8}, Case{"ab", 16}}) {
      CAPTURE(base);
      CHECK(is_identity(g.parse_word(support::repeat(base, order)), g));
      CHECK(support::walk_trivial(table, support::repeat(base, order), 12));
      for (std::size_t k = 1; k < order; ++k) {
        CAPTURE(k);
        auto w = support::repeat(base, k);
        CHECK_FALSE(is_identity(g.parse_word(w), g));
        CHECK_FALSE(support::walk_trivial(table, w, 12));
      }
    }
    for (char s : std::string("abcd")) {
      CHECK_FALSE(is_identity(g.parse_word(std::string(1, s)), g));
      CHECK(is_identity(g.parse_word(std::string(2, s)), g));
    }
  }

  TEST_CASE("Fabrykowski-Gupta generators have order three") {
    auto f     = AutomatonSpec::fabrykowski_gupta();
    auto table = support::fabrykowski_gupta_table();
    for (std::string s : {"a", "b"}) {
      CHECK(is_identity(f.parse_word(support::repeat(s, 3)), f));
      CHECK_FALSE(is_identity(f.parse_word(s), f));
      CHECK_FALSE(is_identity(f.parse_word(support::repeat(s, 2)), f));
      CHECK(support::walk_trivial(table, support::repeat(s, 3), 7));
    }
    CHECK_FALSE(is_identity(f.parse_word("ab"), f));
    CHECK_FALSE(is_identity(f.parse_word("abAB"), f));
  }

  TEST_CASE("w times its formal inverse is trivial (1000 random words)") {
    auto rng = support::make_rng(2);
    auto g   = AutomatonSpec::grigorchuk();
    auto f   = AutomatonSpec::fabrykowski_gupta();
    for (int i = 0; i < 1000; ++i) {
      auto const& spec = i % 2 == 0 ? g : f;
      auto        w    = spec.parse_word(random_word(rng, i % 2 == 0 ? "abcd" : "aAbB", 40));
      CHECK(is_identity(w * formal_inverse(w, spec), spec));
      CHECK(is_identity(formal_inverse(w, spec) * w, spec));
    }
  }

  TEST_CASE("word problem agrees with a Mealy walk on level 12") {
    auto rng = support::make_rng(3);
    auto g   = AutomatonSpec::grigorchuk();
    auto gt  = support::grigorchuk_table();
    int  trivial = 0;
    for (int i = 0; i < 400; ++i) {
      // Short words over {a, b} and {a, d} hit relations often.
      std::string alphabet = i % 3 == 0 ? "ab" : i % 3 == 1 ? "ad" : "abcd";
      auto        text     = random_word(rng, alphabet, 16);
      bool        exact    = is_identity(g.parse_word(text), g);
      CAPTURE(text);
      CHECK(exact == support::walk_trivial(gt, text, 12));
      trivial += exact;
    }
    CHECK(trivial > 20);

    auto f  = AutomatonSpec::fabrykowski_gupta();
    auto ft = support::fabrykowski_gupta_table();
    for (int i = 0; i < 200; ++i) {
      auto text = random_word(rng, "aAbB", 10);
      CAPTURE(text);
      CHECK(is_identity(f.parse_word(text), f) == support::walk_trivial(ft, text, 7));
    }
  }

  TEST_CASE("level actions match the Mealy walk") {
    auto rng = support::make_rng(4);
    auto g   = AutomatonSpec::grigorchuk();
    auto gt  = support::grigorchuk_table();
    for (int i = 0; i < 40; ++i) {
      auto text  = random_word(rng, "abcd", 20);
      auto level = support::uniform(rng, 0, 12);
      CAPTURE(text);
      CHECK(as_sizes(level_action(g.parse_word(text), level, g))
            == support::walk_action(gt, text, level));
    }
    auto f  = AutomatonSpec::fabrykowski_gupta();
    auto ft = support::fabrykowski_gupta_table();
    for (int i = 0; i < 40; ++i) {
      auto text  = random_word(rng, "aAbB", 20);
      auto level = support::uniform(rng, 0, 7);
      CAPTURE(text);
      CHECK(as_sizes(level_action(f.parse_word(text), level, f))
            == support::walk_action(ft, text, level));
    }
  }

  TEST_CASE("level actions are homomorphisms") {
    auto rng = support::make_rng(5);
    auto g   = AutomatonSpec::grigorchuk();
    for (int i = 0; i < 200; ++i) {
      auto u     = g.parse_word(random_word(rng, "abcd", 15));
      auto v     = g.parse_word(random_word(rng, "abcd", 15));
      auto level = support::uniform(rng, 1, 9);
      CHECK(level_action(u * v, level, g)
            == level_action(u, level, g).then(level_action(v, level, g)));
      CHECK(level_action(formal_inverse(u, g), level, g)
            == level_action(u, level, g).inverse());
    }
  }

  TEST_CASE("level n+1 restricts to level n") {
    auto rng = support::make_rng(6);
    for (auto const& spec :
         {AutomatonSpec::grigorchuk(), AutomatonSpec::fabrykowski_gupta()}) {
      auto const d = spec.alphabet_size();
      for (int i = 0; i < 60; ++i) {
        auto w     = spec.parse_word(random_word(rng, d == 2 ? "abcd" : "aAbB", 20));
        auto level = support::uniform(rng, 0, d == 2 ? 9 : 5);
        auto lo    = level_action(w, level, spec);
        auto hi    = level_action(w, level + 1, spec);
        for (std::size_t leaf = 0; leaf < hi.degree(); ++leaf) {
          REQUIRE(hi[leaf] / d == lo[leaf / d]);
        }
      }
    }
  }

  TEST_CASE("sections follow the product rule") {
    auto rng = support::make_rng(7);
    auto g   = AutomatonSpec::grigorchuk();
    for (int i = 0; i < 100; ++i) {
      auto u    = g.parse_word(random_word(rng, "abcd", 10));
      auto v    = g.parse_word(random_word(rng, "abcd", 10));
      auto root = root_permutation(u, g);
      for (std::size_t x = 0; x < 2; ++x) {
        // (uv)_x = u_x v_{u(x)}, compared as tree automorphisms
        auto lhs = section(u * v, x, g);
        auto rhs = section(u, x, g) * section(v, root[x], g);
        CHECK(level_action(lhs, 8, g) == level_action(rhs, 8, g));
      }
      CHECK(root_permutation(u * v, g) == root.then(root_permutation(v, g)));
    }
  }

  TEST_CASE("leaf cap and bad letters") {
    auto g = AutomatonSpec::grigorchuk();
    CHECK(code_of([&] { level_action(g.parse_word("a"), 30, g, 1 << 10); })
          == ErrorCode::resource);
    CHECK(code_of([&] { g.parse_word("abx"); }) == ErrorCode::invalid_argument);
    CHECK(code_of([&] { section(g.parse_word("a"), 2, g); })
          == ErrorCode::invalid_argument);
  }

  TEST_CASE("spec validation names the offending field") {
    auto check_message = [](auto&& make, std::string const& needle) {
      try {
        make();
        FAIL("accepted");
      } catch (Error const& e) {
        CHECK(e.code() == ErrorCode::validation);
        CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                      e.what());
      }
    };
    using S = std::vector<StateDef>;
    check_message([] { AutomatonSpec(1, S{{"a", Permutation({0}), {0}}}, {0}, {0}); },
                  "alphabet_size");
    check_message(
        [] {
          AutomatonSpec(2, S{{"e", Permutation({1, 0}), {kIdentityLetter, kIdentityLetter}}},
                        {0}, {0});
        },
        "states[0].name");
    check_message(
        [] {
          AutomatonSpec(2, S{{"a", Permutation({1, 0}), {kIdentityLetter, 7}}},
                        {0}, {0});
        },
        "states[0].sections[1]");
    check_message(
        [] {
          AutomatonSpec(2, S{{"a", Permutation({0, 1, 2}), {kIdentityLetter, kIdentityLetter}}},
                        {0}, {0});
        },
        "states[0].root_perm");
    // An element of order three declared as its own inverse.
    check_message(
        [] {
          AutomatonSpec(3, S{{"a", Permutation({1, 2, 0}),
                              {kIdentityLetter, kIdentityLetter, kIdentityLetter}}},
                        {0}, {0});
        },
        "inverses");
  }

  TEST_CASE("custom specs: free reduction, no exact word problem") {
    auto t = adding_machine();
    CHECK_FALSE(t.has_exact_word_problem());
    CHECK(t.format(canonicalize(t.parse_word("tTtt"), t)) == "tt");
    CHECK(code_of([&] { is_identity(t.parse_word("tT"), t); })
          == ErrorCode::unsupported);
    // t generates Z acting as +1 on 2-adic integers; t^4 fixes level 2 only.
    CHECK(equal_up_to_depth(t.parse_word("tttt"), GroupWord{}, 2, t));
    CHECK_FALSE(equal_up_to_depth(t.parse_word("tttt"), GroupWord{}, 3, t));
  }
}
