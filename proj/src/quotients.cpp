#include "coarsetiler/quotients.hpp"

#include <sstream>
#include <tuple>
#include <unordered_set>

#include "coarsetiler/errors.hpp"
#include "coarsetiler/solver.hpp"

namespace coarsetiler {

  std::vector<Permutation> level_quotient(AutomatonSpec const& spec,
                                          std::size_t          level,
                                          std::size_t          leaf_cap) {
    std::vector<Permutation> out;
    for (auto s : spec.generators()) {
      out.push_back(level_action(GroupWord({s}), level, spec, leaf_cap));
    }
    return out;
  }

  namespace {
    struct IndexHash {
      std::vector<Permutation> const* elements;
      std::size_t operator()(std::uint32_t i) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : (*elements)[i].images()) {
          h ^= x + 1;
          h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
      }
    };

    struct IndexEq {
      std::vector<Permutation> const* elements;
      bool operator()(std::uint32_t a, std::uint32_t b) const noexcept {
        return (*elements)[a] == (*elements)[b];
      }
    };

    // BFS closure; when edges is non-null also records (x, s, x * s).
    std::vector<Permutation> closure(
        std::span<Permutation const>                                  gens,
        std::size_t                                                   cap,
        std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>*
            products) {
      if (gens.empty()) {
        throw Error(ErrorCode::invalid_argument, "no generators");
      }
      if (cap == 0) {
        throw Error(ErrorCode::invalid_argument, "element cap must be positive");
      }
      std::vector<Permutation> elements{
          Permutation::identity(gens.front().degree())};
      std::unordered_set<std::uint32_t, IndexHash, IndexEq> seen(
          64, IndexHash{&elements}, IndexEq{&elements});
      seen.insert(0);
      for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::uint32_t s = 0; s < gens.size(); ++s) {
          elements.push_back(elements[i].then(gens[s]));
          auto candidate = static_cast<std::uint32_t>(elements.size() - 1);
          auto [it, fresh] = seen.insert(candidate);
          if (!fresh) {
            elements.pop_back();
          } else if (elements.size() > cap) {
            throw ResourceError("group exceeds the element cap of "
                                    + std::to_string(cap),
                                cap);
          }
          if (products) {
            products->emplace_back(static_cast<std::uint32_t>(i), s, *it);
          }
        }
      }
      return elements;
    }
  }  // namespace

  std::vector<Permutation> enumerate_group(std::span<Permutation const> gens,
                                           std::size_t element_cap) {
    return closure(gens, element_cap, nullptr);
  }

  std::uint64_t quotient_order(std::span<Permutation const> gens,
                               std::size_t                  element_cap) {
    return enumerate_group(gens, element_cap).size();
  }

  ToyGraph quotient_cayley(std::span<Permutation const> gens,
                           Genset const&                genset,
                           std::size_t                  element_cap) {
    if (genset.size() != gens.size()) {
      throw Error(ErrorCode::invalid_argument,
                  "one generator name per permutation is required");
    }
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>
                      products;
    auto const        elements = closure(gens, element_cap, &products);
    std::vector<Edge> edges;
    // products are generated in (x, s) order, so edges come out sorted.
    for (auto [x, s, y] : products) {
      if (x < y) {
        edges.push_back({x, y, s});
      }
    }
    return Graph(elements.size(), std::move(edges), {}, genset);
  }

  ObstructionResult obstruction_check(Graph const& g, Modulus p) {
    if (!g.is_connected()) {
      throw Error(ErrorCode::validation, "graph is disconnected");
    }
    auto witness = oracle_solve_finite(
        g.with_boundary({}), Chain0::ones(p, g.vertex_count()));
    ObstructionResult result;
    result.all_ones_is_boundary = witness.has_value();
    result.witness              = std::move(witness);
    return result;
  }

  std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
      unsigned e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      if (e > 0) {
        out.emplace_back(q, e);
      }
    }
    if (n > 1) {
      out.emplace_back(n, 1);
    }
    return out;
  }

  char const* verdict_name(Verdict v) noexcept {
    switch (v) {
      case Verdict::pass:
        return "PASS";
      case Verdict::fail:
        return "FAIL";
      case Verdict::incomplete:
        return "INCOMPLETE";
    }
    return "";
  }

  namespace {
    std::vector<std::string> trusted_inputs_for(AutomatonSpec const& spec) {
      if (spec.preset() == Preset::grigorchuk) {
        return {"The Grigorchuk group is a residually finite torsion 2-group, "
                "so every finite quotient is a 2-group and the index of every "
                "finite-index subgroup is a power of 2."};
      }
      if (spec.preset() == Preset::fabrykowski_gupta) {
        return {"Every finite quotient of the Fabrykowski-Gupta group is a "
                "3-group, so the index of "
                "every finite-index subgroup is a power of 3."};
      }
      return {};
    }
  }  // namespace

  CertificateReport aperiodicity_certificate(AutomatonSpec const& spec,
                                             Modulus              p,
                                             std::size_t          first_level,
                                             std::size_t          last_level,
                                             CertificateCaps      caps) {
    if (!p.is_prime()) {
      throw Error(ErrorCode::invalid_argument,
                  "certificates need a prime modulus, got "
                      + std::to_string(p.value()));
    }
    if (first_level > last_level) {
      throw Error(ErrorCode::invalid_argument, "empty level range");
    }
    CertificateReport report;
    report.group          = spec.preset() ? preset_name(*spec.preset()) : "custom";
    report.p              = p.value();
    report.trusted_inputs = trusted_inputs_for(spec);

    bool any_failure    = false;
    bool any_incomplete = false;
    for (auto n = first_level; n <= last_level; ++n) {
      LevelReport lr;
      lr.level = n;
      try {
        auto const gens  = level_quotient(spec, n, caps.leaves);
        auto const graph = quotient_cayley(gens, spec.genset(), caps.elements);
        lr.order         = graph.vertex_count();
        lr.factorization = factorize(lr.order);
        lr.p_divides     = lr.order % p.value() == 0;
        lr.obstruction   = obstruction_check(graph, p).all_ones_is_boundary;
        lr.complete      = true;
        any_failure      = any_failure || lr.p_divides || lr.obstruction;
      } catch (ResourceError const& e) {
        lr.order       = e.lower_bound();
        lr.error       = e.what();
        any_incomplete = true;
      }
      report.levels.push_back(std::move(lr));
    }
    report.verdict = any_failure      ? Verdict::fail
                     : any_incomplete ? Verdict::incomplete
                                      : Verdict::pass;

    std::ostringstream scope;
    scope << "A PASS certifies that " << p.value()
          << " divides the order of none of the level quotients "
          << first_level << ".." << last_level
          << " and that the all-ones chain is not a boundary on their Cayley "
             "graphs. Extending this to every finite-index subgroup relies on "
             "the trusted inputs, which are not verified here.";
    report.scope = scope.str();
    return report;
  }

  std::string render_text(CertificateReport const& report) {
    std::ostringstream os;
    os << "group: " << report.group << "\n";
    os << "p: " << report.p << "\n";
    for (auto const& lr : report.levels) {
      os << "level " << lr.level << ": ";
      if (!lr.complete) {
        os << "INCOMPLETE (order >= " << lr.order << "; " << lr.error << ")\n";
        continue;
      }
      os << "order " << lr.order << " =";
      if (lr.factorization.empty()) {
        os << " 1";
      }
      for (std::size_t i = 0; i < lr.factorization.size(); ++i) {
        os << (i == 0 ? " " : " * ") << lr.factorization[i].first;
        if (lr.factorization[i].second > 1) {
          os << "^" << lr.factorization[i].second;
        }
      }
      os << "; p divides order: " << (lr.p_divides ? "yes" : "no")
         << "; all-ones is a boundary: " << (lr.obstruction ? "yes" : "no")
         << "\n";
    }
    os << "verdict: " << verdict_name(report.verdict) << "\n";
    os << "scope: " << report.scope << "\n";
    if (report.trusted_inputs.empty()) {
      os << "trusted inputs: none\n";
    }
    for (auto const& t : report.trusted_inputs) {
      os << "trusted input: " << t << "\n";
    }
    return os.str();
  }

}  // namespace coarsetiler
