#ifndef COARSETILER_TESTS_SUPPORT_HPP_
#define COARSETILER_TESTS_SUPPORT_HPP_

// Generators and brute-force oracles shared by the test binaries. Nothing
// here calls into the library's algorithms; the oracles work from their own
// copies of the automaton tables.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace support {

  using Rng = std::mt19937_64;

  inline Rng make_rng(std::uint64_t salt = 0) {
    return Rng(0x5eed'c0a5'7e11'0000ull ^ salt);
  }

  inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  ////////////////////////////////////////////////////////////////////////
  // Mealy automata, written out by hand
  ////////////////////////////////////////////////////////////////////////

  // State -1 is the identity.
  struct Mealy {
    int                           degree;
    std::string                   names;  // one character per state
    std::vector<std::vector<int>> out;    // out[s][x]
    std::vector<std::vector<int>> next;   // next[s][x]

    int state(char ch) const {
      auto pos = names.find(ch);
      return pos == std::string::npos ? -2 : static_cast<int>(pos);
    }
  };

  // a swaps; b = (a, c), c = (a, d), d = (1, b).
  inline Mealy grigorchuk_table() {
    return Mealy{2,
                 "abcd",
                 {{1, 0}, {0, 1}, {0, 1}, {0, 1}},
                 {{-1, -1}, {0, 2}, {0, 3}, {-1, 1}}};
  }

  // a = (0 1 2) rooted rotation, A its inverse, b = (a, 1, b), B = (A, 1, B).
  inline Mealy fabrykowski_gupta_table() {
    return Mealy{3,
                 "aAbB",
                 {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}, {0, 1, 2}},
                 {{-1, -1, -1}, {-1, -1, -1}, {0, -1, 2}, {1, -1, 3}}};
  }

  // Image of a leaf under a word, applying the letters left to right.
  inline std::vector<int> apply(Mealy const& m, std::string const& word,
                                std::vector<int> leaf) {
    for (char ch : word) {
      int s = m.state(ch);
      for (auto& x : leaf) {
        if (s == -1) {
          break;
        }
        int const y = m.out[s][x];
        s           = m.next[s][x];
        x           = y;
      }
    }
    return leaf;
  }

  inline std::vector<int> leaf_of(int degree, std::size_t level, std::size_t index) {
    std::vector<int> leaf(level);
    for (std::size_t i = level; i-- > 0;) {
      leaf[i] = static_cast<int>(index % degree);
      index /= degree;
    }
    return leaf;
  }

  inline std::size_t index_of(int degree, std::vector<int> const& leaf) {
    std::size_t idx = 0;
    for (auto x : leaf) {
      idx = idx * degree + static_cast<std::size_t>(x);
    }
    return idx;
  }

  inline std::size_t power(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp-- > 0) {
      r *= base;
    }
    return r;
  }

  // Action on level n as an image list, leaves ordered with the first letter
  // most significant.
  inline std::vector<std::size_t> walk_action(Mealy const&       m,
                                              std::string const& word,
                                              std::size_t        level) {
    auto const               n = power(m.degree, level);
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) {
      images[i] = index_of(m.degree, apply(m, word, leaf_of(m.degree, level, i)));
    }
    return images;
  }

  inline bool walk_trivial(Mealy const& m, std::string const& word, std::size_t level) {
    auto images = walk_action(m, word, level);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] != i) {
        return false;
      }
    }
    return true;
  }

  inline std::string repeat(std::string const& w, std::size_t k) {
    std::string out;
    for (std::size_t i = 0; i < k; ++i) {
      out += w;
    }
    return out;
  }

  // Sizes of the balls of radius 0..R, elements told apart by their action
  // on the given level.
  inline std::vector<std::size_t> ball_sizes_by_action(Mealy const&       m,
                                                       std::string const& gens,
                                                       std::size_t        radius,
                                                       std::size_t        level) {
    using Action = std::vector<std::size_t>;
    std::vector<std::size_t> sizes;
    auto                     id = walk_action(m, "", level);
    std::set<Action>         seen{id};
    std::vector<Action>      frontier{id};
    std::vector<std::vector<std::size_t>> gen_actions;
    for (char g : gens) {
      gen_actions.push_back(walk_action(m, std::string(1, g), level));
    }
    sizes.push_back(1);
    for (std::size_t r = 1; r <= radius; ++r) {
      std::vector<Action> next;
      for (auto const& x : frontier) {
        for (auto const& s : gen_actions) {
          Action y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = s[x[i]];  // first x, then s
          }
          if (seen.insert(y).second) {
            next.push_back(std::move(y));
          }
        }
      }
      frontier = std::move(next);
      sizes.push_back(seen.size());
    }
    return sizes;
  }

  // Order of the group generated by permutations (image lists), by closure.
  inline std::size_t closure_order(std::vector<std::vector<std::size_t>> const& gens) {
    using Perm = std::vector<std::size_t>;
    Perm id(gens.front().size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    std::set<Perm>    seen{id};
    std::vector<Perm> todo{id};
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto const& s : gens) {
        Perm y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          y[i] = s[x[i]];
        }
        if (seen.insert(y).second) {
          todo.push_back(std::move(y));
        }
      }
    }
    return seen.size();
  }

  inline bool is_power_of(std::uint64_t n, std::uint64_t q) {
    if (n == 0) {
      return false;
    }
    while (n % q == 0) {
      n /= q;
    }
    return n == 1;
  }

  ////////////////////////////////////////////////////////////////////////
  // Plain graphs
  ////////////////////////////////////////////////////////////////////////

  struct SimpleGraph {
    std::size_t                                      n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // tail < head
  };

  inline bool connected(SimpleGraph const& g) {
    if (g.n == 0) {
      return false;
    }
    std::vector<std::size_t> parent(g.n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    std::size_t parts = g.n;
    for (auto [a, b] : g.edges) {
      auto ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --parts;
      }
    }
    return parts == 1;
  }

  // Every simple graph on n labelled vertices that is connected.
  inline std::vector<SimpleGraph> all_connected_graphs(std::size_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) {
        pairs.emplace_back(a, b);
      }
    }
    std::vector<SimpleGraph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      SimpleGraph g{n, {}};
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1) {
          g.edges.push_back(pairs[i]);
        }
      }
      if (connected(g)) {
        out.push_back(std::move(g));
      }
    }
    return out;
  }

  // Random connected graph: a random spanning tree plus extra edges,
  // parallel edges allowed when multi is set.
  inline SimpleGraph random_connected(Rng& rng, std::size_t n, std::size_t extra,
                                      bool multi = false) {
    SimpleGraph g{n, {}};
    for (std::uint32_t v = 1; v < n; ++v) {
      auto u = static_cast<std::uint32_t>(uniform(rng, 0, v - 1));
      g.edges.emplace_back(u, v);
    }
    for (std::size_t i = 0; i < extra && n >= 2; ++i) {
      auto a = static_cast<std::uint32_t>(uniform(rng, 0, n - 1));
      auto b = static_cast<std::uint32_t>(uniform(rng, 0, n - 1));
      if (a == b) {
        continue;
      }
      std::pair e{std::min(a, b), std::max(a, b)};
      if (!multi && std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end()) {
        continue;
      }
      g.edges.push_back(e);
    }
    std::shuffle(g.edges.begin(), g.edges.end(), rng);
    return g;
  }

  // Brute force: does some psi in Z_p^E have d psi = c, with d(x->y) = y - x?
  inline bool brute_force_solvable(SimpleGraph const& g, std::vector<long> const& c,
                                   long p) {
    std::size_t const E     = g.edges.size();
    std::size_t       total = 1;
    for (std::size_t i = 0; i < E; ++i) {
      total *= static_cast<std::size_t>(p);
    }
    std::vector<long> psi(E, 0);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rest = k;
      for (std::size_t i = 0; i < E; ++i) {
        psi[i] = static_cast<long>(rest % p);
        rest /= p;
      }
      std::vector<long> d(g.n, 0);
      for (std::size_t i = 0; i < E; ++i) {
        d[g.edges[i].first] -= psi[i];
        d[g.edges[i].second] += psi[i];
      }
      bool ok = true;
      for (std::size_t v = 0; v < g.n && ok; ++v) {
        ok = ((d[v] - c[v]) % p + p) % p == 0;
      }
      if (ok) {
        return true;
      }
    }
    return false;
  }

}  // namespace support

#endif  // COARSETILER_TESTS_SUPPORT_HPP_
