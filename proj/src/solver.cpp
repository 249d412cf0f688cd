#include "coarsetiler/solver.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  std::size_t SpanningTree::tree_edge_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(edge_class.begin(), edge_class.end(), [](EdgeClass c) {
          return c != EdgeClass::not_in_tree;
        }));
  }

  namespace {
    constexpr std::uint32_t kUnreached = 0xFFFFFFFFu;

    // Vertices in BFS order from the root (non-decreasing depth).
    std::vector<Vertex> bfs_order(SpanningTree const& t) {
      std::vector<Vertex> order{t.root};
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto w : t.children[order[i]]) {
          order.push_back(w);
        }
      }
      return order;
    }
  }  // namespace

  SpanningTree spanning_tree(Graph const& g) {
    auto const   n = g.vertex_count();
    SpanningTree t;
    t.edge_class.assign(g.edge_count(), EdgeClass::not_in_tree);
    t.parent.assign(n, 0);
    t.parent_edge.assign(n, kNoEdge);
    t.depth.assign(n, kUnreached);
    t.children.assign(n, {});
    if (n == 0) {
      return t;
    }

    std::queue<Vertex> queue;
    t.depth[0] = 0;
    queue.push(0);
    std::size_t reached = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop();
      for (auto e : g.incident(v)) {
        auto const& ed = g.edge(e);
        auto        w  = ed.tail == v ? ed.head : ed.tail;
        if (t.depth[w] == kUnreached) {
          t.depth[w] = t.depth[v] + 1;
          ++reached;
          queue.push(w);
        }
      }
    }
    if (reached != n) {
      throw Error(ErrorCode::validation, "graph is disconnected");
    }

    // Parent: least-index neighbour one level up, joined by its least-index
    // edge.
    for (Vertex v = 1; v < n; ++v) {
      Vertex    best      = kUnreached;
      EdgeIndex best_edge = kNoEdge;
      for (auto e : g.incident(v)) {
        auto const& ed = g.edge(e);
        auto        w  = ed.tail == v ? ed.head : ed.tail;
        if (t.depth[w] + 1 != t.depth[v]) {
          continue;
        }
        if (w < best || (w == best && e < best_edge)) {
          best      = w;
          best_edge = e;
        }
      }
      t.parent[v]      = best;
      t.parent_edge[v] = best_edge;
      t.children[best].push_back(v);
    }

    auto const        order = bfs_order(t);
    std::vector<bool> reaches_boundary(n, false);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto v = *it;
      if (g.is_boundary(v)) {
        reaches_boundary[v] = true;
      }
      if (v != t.root) {
        if (reaches_boundary[v]) {
          reaches_boundary[t.parent[v]] = true;
        }
        t.edge_class[t.parent_edge[v]] = reaches_boundary[v]
                                             ? EdgeClass::locally_infinite
                                             : EdgeClass::finite;
      }
    }
    return t;
  }

  LemmaSolution solve_lemma(Graph const& g, Chain0 const& c) {
    if (c.size() != g.vertex_count()) {
      throw Error(ErrorCode::invalid_argument,
                  "0-chain size does not match the vertex count");
    }
    auto const    p = c.modulus();
    LemmaSolution sol{Chain1(p, g.edge_count()), spanning_tree(g)};
    auto&         t = sol.tree;
    if (g.vertex_count() == 0) {
      return sol;
    }

    if (g.is_closed() && c.sum() != 0) {
      throw Error(ErrorCode::unsolvable,
                  "total of c is "
                      + std::to_string(c.sum()) + " mod "
                      + std::to_string(p.value()));
    }

    // Value on the tree edge parent(v) -> v, written in stored orientation.
    auto assign = [&](Vertex v, Residue value) {
      auto e = t.parent_edge[v];
      sol.psi.set(e, g.edge(e).tail == t.parent[v] ? value : p.neg(value));
    };

    // Subtree sums of c; only consumed below FINITE edges.
    auto const           order = bfs_order(t);
    std::vector<Residue> below(g.vertex_count(), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto v   = *it;
      below[v] = p.add(below[v], c[v]);
      if (v != t.root) {
        below[t.parent[v]] = p.add(below[t.parent[v]], below[v]);
      }
    }

    // Step 1: finite subtrees.
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (v != t.root && t.edge_class[t.parent_edge[v]] == EdgeClass::finite) {
        assign(v, below[v]);
      }
    }
    if (g.is_closed()) {
      return sol;
    }

    // Steps 2 and 3: rays through the pruned tree, components in FIFO order.
    std::deque<Vertex> roots{t.root};
    while (!roots.empty()) {
      auto cur = roots.front();
      roots.pop_front();
      std::vector<Vertex> ray{cur};
      Residue             inflow = 0;
      while (true) {
        // Demand of cur together with its finite hanging subtrees.
        Residue             demand = c[cur];
        std::vector<Vertex> infinite_children;
        for (auto w : t.children[cur]) {
          if (t.edge_class[t.parent_edge[w]] == EdgeClass::finite) {
            demand = p.add(demand, below[w]);
          } else {
            infinite_children.push_back(w);
          }
        }
        if (infinite_children.empty()) {
          // cur is a boundary vertex: the excess leaves here.
          break;
        }
        auto next = infinite_children.front();
        for (std::size_t i = 1; i < infinite_children.size(); ++i) {
          roots.push_back(infinite_children[i]);
        }
        inflow = p.sub(inflow, demand);
        assign(next, inflow);
        ray.push_back(next);
        cur = next;
      }
      t.rays.push_back(std::move(ray));
    }
    return sol;
  }

  Chain1 solve_on_ball(Graph const& g, Chain0 const& c) {
    return solve_lemma(g, c).psi;
  }

  Chain1 solve_fundamental(AutomatonSpec const& spec,
                           CayleyBall const&    ball,
                           Modulus              p,
                           std::uint32_t        collar,
                           std::size_t          vertex_cap) {
    if (collar == 0) {
      return solve_on_ball(ball.graph(), Chain0::ones(p, ball.vertex_count()));
    }
    auto const big = build_ball(spec, ball.radius() + collar, vertex_cap);
    auto const n   = ball.vertex_count();
    if (big.prefix_size(ball.radius()) != n
        || !std::equal(ball.words().begin(), ball.words().end(),
                       big.words().begin())) {
      throw Error(ErrorCode::validation,
                  "ball does not match the preset it is solved for");
    }
    auto const psi = solve_on_ball(big.graph(), Chain0::ones(p, big.vertex_count()));
    // Both edge lists are sorted, and the small ball's edges are exactly the
    // big ball's edges between its first n vertices.
    Chain1    out(p, ball.edges().size());
    EdgeIndex k = 0;
    for (EdgeIndex e = 0; e < big.edges().size(); ++e) {
      auto const& ed = big.edges()[e];
      if (ed.tail >= n || ed.head >= n) {
        continue;
      }
      if (k >= ball.edges().size() || !(ball.edges()[k] == ed)) {
        throw Error(ErrorCode::internal, "ball edges are not a prefix");
      }
      out.set(k++, psi[e]);
    }
    if (k != ball.edges().size()) {
      throw Error(ErrorCode::internal, "ball edges are not a prefix");
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sparse Gaussian elimination over GF(p)
  ////////////////////////////////////////////////////////////////////////

  namespace {
    using Entry = std::pair<std::uint32_t, Residue>;  // column, value
    using Row   = std::vector<Entry>;                 // sorted by column

    Residue power(Modulus p, Residue base, std::uint64_t exp) {
      Residue result = 1 % p.value();
      while (exp > 0) {
        if (exp & 1) {
          result = p.mul(result, base);
        }
        base = p.mul(base, base);
        exp >>= 1;
      }
      return result;
    }

    Residue inverse(Modulus p, Residue a) {
      return power(p, a, p.value() - 2);
    }

    // target <- target - factor * source
    Row axpy(Modulus p, Row const& target, Residue factor, Row const& source) {
      Row         out;
      std::size_t i = 0, j = 0;
      out.reserve(target.size() + source.size());
      while (i < target.size() || j < source.size()) {
        if (j == source.size()
            || (i < target.size() && target[i].first < source[j].first)) {
          out.push_back(target[i++]);
        } else if (i == target.size() || source[j].first < target[i].first) {
          out.emplace_back(source[j].first,
                           p.neg(p.mul(factor, source[j].second)));
          ++j;
        } else {
          auto v = p.sub(target[i].second, p.mul(factor, source[j].second));
          if (v != 0) {
            out.emplace_back(target[i].first, v);
          }
          ++i;
          ++j;
        }
      }
      return out;
    }

    Residue coefficient(Row const& row, std::uint32_t col) {
      auto it = std::lower_bound(
          row.begin(), row.end(), Entry{col, 0}, [](auto const& a, auto const& b) {
            return a.first < b.first;
          });
      return it != row.end() && it->first == col ? it->second : 0;
    }
  }  // namespace

  std::optional<Chain1> oracle_solve_finite(Graph const& g, Chain0 const& c) {
    auto const p = c.modulus();
    if (!p.is_prime()) {
      throw Error(ErrorCode::invalid_argument,
                  "the elimination oracle requires a prime modulus, got "
                      + std::to_string(p.value()));
    }
    if (c.size() != g.vertex_count()) {
      throw Error(ErrorCode::invalid_argument,
                  "0-chain size does not match the vertex count");
    }
    auto const n = g.vertex_count();
    auto const m = g.edge_count();

    // Row v: +1 on edges entering v, -1 on edges leaving v.
    std::vector<Row>                        rows(n);
    std::vector<Residue>                    rhs(n);
    std::vector<std::vector<std::uint32_t>> col_rows(m);
    for (Vertex v = 0; v < n; ++v) {
      for (auto e : g.incident(v)) {
        auto const& ed = g.edge(e);
        if (ed.head == ed.tail) {
          continue;
        }
        rows[v].emplace_back(e, ed.head == v ? 1 % p.value() : p.neg(1));
        col_rows[e].push_back(v);
      }
      std::sort(rows[v].begin(), rows[v].end());
      rhs[v] = c[v];
    }

    std::vector<bool>                                 active(n, true);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;  // row, col
    for (std::size_t step = 0; step < n; ++step) {
      // Sparsest active row.
      std::uint32_t best = 0xFFFFFFFFu;
      for (std::uint32_t r = 0; r < n; ++r) {
        if (active[r]
            && (best == 0xFFFFFFFFu || rows[r].size() < rows[best].size())) {
          best = r;
        }
      }
      if (best == 0xFFFFFFFFu) {
        break;
      }
      active[best] = false;
      if (rows[best].empty()) {
        if (rhs[best] != 0) {
          return std::nullopt;
        }
        continue;
      }
      auto const col = rows[best].front().first;
      auto const inv = inverse(p, rows[best].front().second);
      for (auto& [k, v] : rows[best]) {
        v = p.mul(v, inv);
      }
      rhs[best] = p.mul(rhs[best], inv);
      pivots.emplace_back(best, col);

      auto const touched = std::move(col_rows[col]);
      col_rows[col].clear();
      for (auto r : touched) {
        if (!active[r]) {
          continue;
        }
        auto f = coefficient(rows[r], col);
        if (f == 0) {
          continue;
        }
        auto updated = axpy(p, rows[r], f, rows[best]);
        // Register r under columns it did not contain before.
        for (auto const& [k, v] : updated) {
          if (coefficient(rows[r], k) == 0) {
            col_rows[k].push_back(r);
          }
        }
        rows[r] = std::move(updated);
        rhs[r]  = p.sub(rhs[r], p.mul(f, rhs[best]));
      }
    }

    Chain1 psi(p, m);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      auto [r, col] = *it;
      Residue value = rhs[r];
      for (auto const& [k, v] : rows[r]) {
        if (k != col) {
          value = p.sub(value, p.mul(v, psi[k]));
        }
      }
      psi.set(col, value);
    }
    return psi;
  }

}  // namespace coarsetiler
