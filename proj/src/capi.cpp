#include "coarsetiler/coarsetiler.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "coarsetiler/automaton.hpp"
#include "coarsetiler/cayley.hpp"
#include "coarsetiler/errors.hpp"
#include "coarsetiler/export.hpp"
#include "coarsetiler/quotients.hpp"
#include "coarsetiler/serialize.hpp"
#include "coarsetiler/solver.hpp"
#include "coarsetiler/tiles.hpp"

using namespace coarsetiler;

struct ct_group {
  AutomatonSpec spec;
};

struct ct_ball {
  AutomatonSpec spec;
  CayleyBall    ball;
};

struct ct_graph {
  Graph graph;
};

struct ct_solution {
  Graph               graph;
  Chain0              target;
  Chain1              psi;
  std::vector<Vertex> residual;
};

struct ct_patch {
  PatchTiling patch;
};

namespace {

  thread_local std::string last_error;

  ct_status to_status(ErrorCode code) {
    switch (code) {
      case ErrorCode::invalid_argument:
        return CT_ERR_INVALID_ARGUMENT;
      case ErrorCode::parse:
        return CT_ERR_PARSE;
      case ErrorCode::validation:
        return CT_ERR_VALIDATION;
      case ErrorCode::resource:
        return CT_ERR_RESOURCE;
      case ErrorCode::unsolvable:
        return CT_ERR_UNSOLVABLE;
      case ErrorCode::unsupported:
        return CT_ERR_UNSUPPORTED;
      case ErrorCode::internal:
        return CT_ERR_INTERNAL;
    }
    return CT_ERR_INTERNAL;
  }

  template <typename F>
  ct_status guarded(F&& body) {
    last_error.clear();
    try {
      body();
      return CT_OK;
    } catch (Error const& e) {
      last_error = std::string(error_code_name(e.code())) + ": " + e.what();
      return to_status(e.code());
    } catch (std::bad_alloc const&) {
      last_error = "out of memory";
      return CT_ERR_RESOURCE;
    } catch (std::exception const& e) {
      last_error = e.what();
      return CT_ERR_INTERNAL;
    }
  }

  void require(bool cond, char const* what) {
    if (!cond) {
      throw Error(ErrorCode::invalid_argument, what);
    }
  }

  char* copy_string(std::string const& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
      throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
  }

  ct_caps caps_or_default(ct_caps const* caps) {
    return caps != nullptr ? *caps : ct_caps_default();
  }

  GroupWord read_word(AutomatonSpec const& spec, char const* word) {
    require(word != nullptr, "word is null");
    std::string_view text(word);
    if (text == "e") {
      return {};
    }
    return spec.parse_word(text);
  }

  Chain0 read_target(char const* target, Modulus p, std::size_t n) {
    std::string_view t = target != nullptr ? target : "ones";
    if (t == "ones") {
      return Chain0::ones(p, n);
    }
    if (t == "zero") {
      return Chain0(p, n);
    }
    auto c = chain0_from_json(parse_json_text(std::string(t)), n);
    if (c.modulus() != p) {
      throw Error(ErrorCode::validation,
                  "p: target is over Z_" + std::to_string(c.modulus().value())
                      + " but the run uses Z_" + std::to_string(p.value()));
    }
    return c;
  }

  ct_solution* finish_solution(Graph const& g, Chain0 c, Chain1 psi) {
    auto res = residual(g, psi, c);
    return new ct_solution{g, std::move(c), std::move(psi), std::move(res)};
  }

}  // namespace

extern "C" {

char const* ct_version(void) {
  return "0.1.0";
}

char const* ct_last_error(void) {
  return last_error.c_str();
}

char const* ct_status_name(ct_status status) {
  switch (status) {
    case CT_OK:
      return "ok";
    case CT_ERR_INVALID_ARGUMENT:
      return error_code_name(ErrorCode::invalid_argument);
    case CT_ERR_PARSE:
      return error_code_name(ErrorCode::parse);
    case CT_ERR_VALIDATION:
      return error_code_name(ErrorCode::validation);
    case CT_ERR_RESOURCE:
      return error_code_name(ErrorCode::resource);
    case CT_ERR_UNSOLVABLE:
      return error_code_name(ErrorCode::unsolvable);
    case CT_ERR_UNSUPPORTED:
      return error_code_name(ErrorCode::unsupported);
    case CT_ERR_INTERNAL:
      return error_code_name(ErrorCode::internal);
  }
  return "unknown";
}

void ct_string_free(char* s) {
  std::free(s);
}

ct_caps ct_caps_default(void) {
  return ct_caps{kDefaultVertexCap, kDefaultElementCap, kDefaultLeafCap,
                 kDefaultCollar};
}

// Groups

ct_status ct_group_preset(char const* name, ct_group** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new ct_group{AutomatonSpec::from_preset(name)};
  });
}

ct_status ct_group_parse(char const* json, ct_group** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new ct_group{spec_from_json(parse_json_text(json))};
  });
}

ct_status ct_group_dump(ct_group const* group, char** json) {
  return guarded([&] {
    require(group != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(to_json(group->spec)));
  });
}

void ct_group_free(ct_group* group) {
  delete group;
}

ct_status ct_word_canonicalize(ct_group const* group,
                               char const*     word,
                               char**          out) {
  return guarded([&] {
    require(group != nullptr && out != nullptr, "null argument");
    auto w = canonicalize(read_word(group->spec, word), group->spec);
    *out   = copy_string(group->spec.format(w));
  });
}

ct_status ct_word_is_identity(ct_group const* group,
                              char const*     word,
                              int*            out) {
  return guarded([&] {
    require(group != nullptr && out != nullptr, "null argument");
    *out = is_identity(read_word(group->spec, word), group->spec) ? 1 : 0;
  });
}

ct_status ct_word_level_action(ct_group const* group,
                               char const*     word,
                               size_t          level,
                               ct_caps const*  caps,
                               char**          out) {
  return guarded([&] {
    require(group != nullptr && out != nullptr, "null argument");
    auto perm = level_action(read_word(group->spec, word), level, group->spec,
                             caps_or_default(caps).leaves);
    std::string text = "[";
    for (std::size_t i = 0; i < perm.degree(); ++i) {
      text += (i ? "," : "") + std::to_string(perm.images()[i]);
    }
    *out = copy_string(text + "]");
  });
}

// Balls

ct_status ct_ball_build(ct_group const* group,
                        size_t          radius,
                        ct_caps const*  caps,
                        ct_ball**       out) {
  return guarded([&] {
    require(group != nullptr && out != nullptr, "null argument");
    auto ball = build_ball(group->spec, radius, caps_or_default(caps).vertices);
    *out      = new ct_ball{group->spec, std::move(ball)};
  });
}

ct_status ct_ball_parse(ct_group const* group, char const* json, ct_ball** out) {
  return guarded([&] {
    require(group != nullptr && json != nullptr && out != nullptr,
            "null argument");
    auto ball = ball_from_json(parse_json_text(json), group->spec);
    *out      = new ct_ball{group->spec, std::move(ball)};
  });
}

size_t ct_ball_vertex_count(ct_ball const* ball) {
  return ball ? ball->ball.vertex_count() : 0;
}

size_t ct_ball_edge_count(ct_ball const* ball) {
  return ball ? ball->ball.edges().size() : 0;
}

size_t ct_ball_sphere_count(ct_ball const* ball) {
  return ball ? ball->ball.graph().boundary_vertices().size() : 0;
}

ct_status ct_ball_dump(ct_ball const* ball, char** json) {
  return guarded([&] {
    require(ball != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(to_json(ball->ball, ball->spec)));
  });
}

ct_status ct_ball_dot(ct_ball const* ball, char** dot) {
  return guarded([&] {
    require(ball != nullptr && dot != nullptr, "null argument");
    *dot = copy_string(ball_to_dot(ball->ball, ball->spec));
  });
}

void ct_ball_free(ct_ball* ball) {
  delete ball;
}

// Graphs

ct_status ct_graph_parse(char const* json, ct_graph** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new ct_graph{graph_from_json(parse_json_text(json))};
  });
}

ct_status ct_graph_dump(ct_graph const* graph, char** json) {
  return guarded([&] {
    require(graph != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(to_json(graph->graph)));
  });
}

size_t ct_graph_vertex_count(ct_graph const* graph) {
  return graph ? graph->graph.vertex_count() : 0;
}

void ct_graph_free(ct_graph* graph) {
  delete graph;
}

// Solving

ct_status ct_solve_ball(ct_ball const* ball,
                        uint32_t       p,
                        char const*    target,
                        ct_caps const* caps,
                        ct_solution**  out) {
  return guarded([&] {
    require(ball != nullptr && out != nullptr, "null argument");
    Modulus const mod(p);
    auto const&   g = ball->ball.graph();
    auto          c = read_target(target, mod, g.vertex_count());
    bool const    ones = target == nullptr || std::string_view(target) == "ones";
    auto const    cfg  = caps_or_default(caps);
    auto psi = ones ? solve_fundamental(ball->spec, ball->ball, mod, cfg.collar,
                                        cfg.vertices)
                    : solve_on_ball(g, c);
    *out = finish_solution(g, std::move(c), std::move(psi));
  });
}

ct_status ct_solve_graph(ct_graph const* graph,
                         uint32_t        p,
                         char const*     target,
                         ct_solution**   out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    Modulus const mod(p);
    auto const&   g   = graph->graph;
    auto          c   = read_target(target, mod, g.vertex_count());
    auto          psi = solve_on_ball(g, c);
    *out              = finish_solution(g, std::move(c), std::move(psi));
  });
}

ct_status ct_solution_chain(ct_solution const* sol, char** json) {
  return guarded([&] {
    require(sol != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(to_json(sol->psi)));
  });
}

ct_status ct_solution_residual(ct_solution const* sol, char** json) {
  return guarded([&] {
    require(sol != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(Json(sol->residual)));
  });
}

size_t ct_solution_residual_size(ct_solution const* sol) {
  return sol ? sol->residual.size() : 0;
}

int ct_solution_residual_on_boundary(ct_solution const* sol) {
  if (sol == nullptr) {
    return 0;
  }
  for (auto v : sol->residual) {
    if (!sol->graph.is_boundary(v)) {
      return 0;
    }
  }
  return 1;
}

void ct_solution_free(ct_solution* sol) {
  delete sol;
}

// Tiles

ct_status ct_patch_from_ball(ct_ball const* ball,
                             uint32_t       p,
                             ct_caps const* caps,
                             ct_patch**     out) {
  return guarded([&] {
    require(ball != nullptr && out != nullptr, "null argument");
    auto const cfg = caps_or_default(caps);
    auto psi = solve_fundamental(ball->spec, ball->ball, Modulus(p), cfg.collar,
                                 cfg.vertices);
    *out = new ct_patch{decorate(ball->ball, psi).patch};
  });
}

ct_status ct_patch_from_solution(ct_solution const* sol, ct_patch** out) {
  return guarded([&] {
    require(sol != nullptr && out != nullptr, "null argument");
    require(sol->graph.is_labelled(), "tiles need a generator-labelled graph");
    *out = new ct_patch{decorate(sol->graph, sol->psi).patch};
  });
}

ct_status ct_patch_parse(char const* json, ct_patch** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new ct_patch{patch_from_json(parse_json_text(json))};
  });
}

ct_status ct_patch_dump(ct_patch const* patch, char** json) {
  return guarded([&] {
    require(patch != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(to_json(patch->patch)));
  });
}

ct_status ct_patch_tileset_dump(ct_patch const* patch, char** json) {
  return guarded([&] {
    require(patch != nullptr && json != nullptr, "null argument");
    *json = copy_string(dump(to_json(patch->patch.tiles)));
  });
}

ct_status ct_patch_svg(ct_patch const* patch, char** svg) {
  return guarded([&] {
    require(patch != nullptr && svg != nullptr, "null argument");
    *svg = copy_string(tileset_to_svg(patch->patch.tiles));
  });
}

ct_status ct_patch_dot(ct_patch const* patch, char** dot) {
  return guarded([&] {
    require(patch != nullptr && dot != nullptr, "null argument");
    *dot = copy_string(patch_to_dot(patch->patch));
  });
}

size_t ct_patch_type_count(ct_patch const* patch) {
  return patch ? patch->patch.tiles.types.size() : 0;
}

uint64_t ct_patch_alphabet_bound(ct_patch const* patch) {
  return patch ? patch->patch.tiles.alphabet_bound() : 0;
}

uint32_t ct_patch_modulus(ct_patch const* patch) {
  return patch ? patch->patch.tiles.p.value() : 0;
}

ct_status ct_patch_verify(ct_patch const* patch,
                          uint32_t        p,
                          int*            ok,
                          char**          report) {
  return guarded([&] {
    require(patch != nullptr && ok != nullptr, "null argument");
    Modulus const mod = p == 0 ? patch->patch.tiles.p : Modulus(p);
    auto const    rep = verify_tiling(patch->patch, mod);
    *ok               = rep.ok() ? 1 : 0;
    if (report != nullptr) {
      *report = copy_string(dump(to_json(rep)));
    }
  });
}

void ct_patch_free(ct_patch* patch) {
  delete patch;
}

// Certificates

ct_status ct_certify(ct_group const* group,
                     uint32_t        p,
                     size_t          first_level,
                     size_t          last_level,
                     ct_caps const*  caps,
                     ct_verdict*     verdict,
                     char**          json,
                     char**          text) {
  return guarded([&] {
    require(group != nullptr && verdict != nullptr, "null argument");
    auto const cfg = caps_or_default(caps);
    auto const rep = aperiodicity_certificate(group->spec, Modulus(p),
                                              first_level, last_level,
                                              {cfg.elements, cfg.leaves});
    switch (rep.verdict) {
      case Verdict::pass:
        *verdict = CT_VERDICT_PASS;
        break;
      case Verdict::fail:
        *verdict = CT_VERDICT_FAIL;
        break;
      case Verdict::incomplete:
        *verdict = CT_VERDICT_INCOMPLETE;
        break;
    }
    if (json != nullptr) {
      *json = copy_string(dump(to_json(rep)));
    }
    if (text != nullptr) {
      *text = copy_string(render_text(rep));
    }
  });
}

}  // extern "C"
