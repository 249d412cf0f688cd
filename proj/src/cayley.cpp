#include "coarsetiler/cayley.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <unordered_map>

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  std::size_t CayleyBall::prefix_size(std::size_t r) const {
    auto it = std::upper_bound(
        distance_.begin(), distance_.end(), static_cast<std::uint32_t>(r));
    return static_cast<std::size_t>(it - distance_.begin());
  }

  namespace {

    // Deduplicates group elements: identical canonical words first, then
    // buckets keyed by the action on a fixed tree level, where candidates are
    // compared exactly with the word problem.
    class ElementIndex {
     public:
      explicit ElementIndex(AutomatonSpec const& spec) : spec_(spec) {
        auto const d = spec.alphabet_size();
        depth_       = 0;
        for (std::size_t leaves = d; leaves <= 512; leaves *= d) {
          ++depth_;
        }
        for (Letter s = 0; s < spec.state_count(); ++s) {
          state_actions_.push_back(
              level_action(GroupWord({s}), depth_, spec).images());
        }
      }

      std::uint64_t fingerprint(GroupWord const& w) const {
        std::vector<std::uint32_t> img(state_actions_.front().size());
        for (std::size_t i = 0; i < img.size(); ++i) {
          img[i] = static_cast<std::uint32_t>(i);
        }
        for (auto l : w.letters) {
          auto const& act = state_actions_[l];
          for (auto& x : img) {
            x = act[x];
          }
        }
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : img) {
          h ^= x + 1;
          h *= 1099511628211ull;
        }
        return h;
      }

      std::optional<Vertex> find(GroupWord const&              w,
                                 std::uint64_t                 fp,
                                 std::vector<GroupWord> const& words) {
        if (auto it = by_word_.find(w); it != by_word_.end()) {
          return it->second;
        }
        auto it = by_fingerprint_.find(fp);
        if (it == by_fingerprint_.end()) {
          return std::nullopt;
        }
        for (auto v : it->second) {
          if (is_identity(w * formal_inverse(words[v], spec_), spec_)) {
            by_word_.emplace(w, v);
            return v;
          }
        }
        return std::nullopt;
      }

      void insert(GroupWord const& w, std::uint64_t fp, Vertex v) {
        by_word_.emplace(w, v);
        by_fingerprint_[fp].push_back(v);
      }

      void alias(GroupWord const& w, Vertex v) {
        by_word_.emplace(w, v);
      }

     private:
      AutomatonSpec const&                                    spec_;
      std::size_t                                             depth_;
      std::vector<std::vector<std::uint32_t>>                 state_actions_;
      std::unordered_map<GroupWord, Vertex, GroupWordHash>    by_word_;
      std::unordered_map<std::uint64_t, std::vector<Vertex>> by_fingerprint_;
    };

  }  // namespace

  CayleyBall build_ball(AutomatonSpec const& spec,
                        std::size_t          radius,
                        std::size_t          vertex_cap) {
    if (!spec.has_exact_word_problem()) {
      throw Error(ErrorCode::unsupported,
                  "Cayley balls need an exact word problem (built-in presets)");
    }
    if (vertex_cap == 0) {
      throw Error(ErrorCode::invalid_argument, "vertex cap must be positive");
    }
    auto const& gens = spec.generators();

    // Discovery ids; renumbered level by level at the end.
    std::vector<GroupWord>           words{GroupWord()};
    std::vector<std::uint32_t>       level_of{0};
    std::vector<std::vector<Vertex>> levels{{0}};
    ElementIndex                     index(spec);
    index.insert(GroupWord(), index.fingerprint(GroupWord()), 0);

    for (std::size_t r = 0; r < radius; ++r) {
      std::vector<Vertex> next;
      for (auto x : levels[r]) {
        for (auto s : gens) {
          auto w  = canonicalize(words[x] * GroupWord({s}), spec);
          auto fp = index.fingerprint(w);
          if (auto y = index.find(w, fp, words)) {
            if (level_of[*y] == r + 1 && w < words[*y]) {
              words[*y] = w;
            }
            continue;
          }
          if (words.size() >= vertex_cap) {
            throw ResourceError("ball exceeds the vertex cap of "
                                    + std::to_string(vertex_cap),
                                words.size() + 1);
          }
          auto v = static_cast<Vertex>(words.size());
          words.push_back(w);
          level_of.push_back(static_cast<std::uint32_t>(r + 1));
          index.insert(w, fp, v);
          next.push_back(v);
        }
      }
      std::sort(next.begin(), next.end(), [&words](Vertex u, Vertex v) {
        return words[u] < words[v];
      });
      levels.push_back(std::move(next));
    }

    std::vector<Vertex> final_id(words.size());
    std::vector<Vertex> order;
    order.reserve(words.size());
    for (auto const& level : levels) {
      for (auto v : level) {
        final_id[v] = static_cast<Vertex>(order.size());
        order.push_back(v);
      }
    }

    std::vector<Edge> edges;
    for (auto x : order) {
      for (std::uint32_t i = 0; i < gens.size(); ++i) {
        auto w  = canonicalize(words[x] * GroupWord({gens[i]}), spec);
        auto fp = index.fingerprint(w);
        auto y  = index.find(w, fp, words);
        if (y && final_id[x] < final_id[*y]) {
          edges.push_back({final_id[x], final_id[*y], i});
        }
      }
    }

    CayleyBall ball;
    ball.radius_ = radius;
    ball.words_.reserve(order.size());
    ball.distance_.reserve(order.size());
    std::vector<bool> sphere;
    sphere.reserve(order.size());
    for (auto v : order) {
      ball.words_.push_back(words[v]);
      ball.distance_.push_back(level_of[v]);
      sphere.push_back(level_of[v] == radius);
    }
    ball.graph_ = Graph(
        order.size(), std::move(edges), std::move(sphere), spec.genset());
    return ball;
  }

  CayleyBall make_ball(std::size_t            radius,
                       std::vector<GroupWord> words,
                       std::vector<Edge>      edges,
                       Genset                 genset) {
    if (words.empty() || !words.front().empty()) {
      throw Error(ErrorCode::validation,
                  "vertices[0]: a ball starts with the identity");
    }
    auto const                 n = words.size();
    Graph                      probe(n, edges, {}, genset);
    std::vector<std::uint32_t> dist(n, 0xFFFFFFFFu);
    std::queue<Vertex>         queue;
    dist[0] = 0;
    queue.push(0);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop();
      for (auto e : probe.incident(v)) {
        auto const& ed = probe.edge(e);
        auto        w  = ed.tail == v ? ed.head : ed.tail;
        if (dist[w] == 0xFFFFFFFFu) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
      }
    }
    std::vector<bool> sphere(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] > radius || (v > 0 && dist[v] < dist[v - 1])) {
        throw Error(ErrorCode::validation,
                    "vertices: not a level-major ball of radius "
                        + std::to_string(radius));
      }
      sphere[v] = dist[v] == radius;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].tail >= edges[i].head) {
        throw Error(ErrorCode::validation,
                    "edges[" + std::to_string(i)
                        + "]: tail must precede head");
      }
    }
    CayleyBall ball;
    ball.radius_   = radius;
    ball.words_    = std::move(words);
    ball.distance_ = std::move(dist);
    ball.graph_    = Graph(n, std::move(edges), std::move(sphere),
                        std::move(genset));
    return ball;
  }

  VertexClasses classify_vertices(CayleyBall const& ball) {
    VertexClasses out;
    for (Vertex v = 0; v < ball.vertex_count(); ++v) {
      (ball.in_sphere(v) ? out.sphere : out.interior).push_back(v);
    }
    return out;
  }

  std::vector<Edge> oriented_edges(CayleyBall const& ball) {
    return ball.edges();
  }

}  // namespace coarsetiler
