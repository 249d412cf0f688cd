#ifndef COARSETILER_COARSETILER_H_
#define COARSETILER_COARSETILER_H_

/* C interface to the coarsetiler library.
 *
 * Objects are opaque handles released with their *_free function (NULL is
 * accepted). Functions that can fail return a ct_status; on failure the
 * message is available from ct_last_error() on the same thread until the
 * next call. Strings returned through char** are heap allocated and must be
 * released with ct_string_free. Documents are exchanged as JSON text. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(COARSETILER_BUILDING)
#    define CT_API __declspec(dllexport)
#  else
#    define CT_API __declspec(dllimport)
#  endif
#else
#  define CT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ct_status {
  CT_OK = 0,
  CT_ERR_INVALID_ARGUMENT = 1,
  CT_ERR_PARSE = 2,
  CT_ERR_VALIDATION = 3,
  CT_ERR_RESOURCE = 4,
  CT_ERR_UNSOLVABLE = 5,
  CT_ERR_UNSUPPORTED = 6,
  CT_ERR_INTERNAL = 7
} ct_status;

typedef enum ct_verdict {
  CT_VERDICT_PASS = 0,
  CT_VERDICT_FAIL = 1,
  CT_VERDICT_INCOMPLETE = 2
} ct_verdict;

typedef struct ct_group    ct_group;
typedef struct ct_ball     ct_ball;
typedef struct ct_graph    ct_graph;
typedef struct ct_solution ct_solution;
typedef struct ct_patch    ct_patch;

typedef struct ct_caps {
  size_t   vertices; /* Cayley ball size */
  size_t   elements; /* quotient group size */
  size_t   leaves;   /* tree level size for level actions */
  uint32_t collar;   /* extra radius used to classify ball edges */
} ct_caps;

CT_API const char* ct_version(void);
CT_API const char* ct_last_error(void);
CT_API const char* ct_status_name(ct_status status);
CT_API void        ct_string_free(char* s);
CT_API ct_caps     ct_caps_default(void);

/* Groups: "grigorchuk", "fabrykowski-gupta", or a spec document. */
CT_API ct_status ct_group_preset(const char* name, ct_group** out);
CT_API ct_status ct_group_parse(const char* json, ct_group** out);
CT_API ct_status ct_group_dump(const ct_group* group, char** json);
CT_API void      ct_group_free(ct_group* group);

/* Words are strings of generator names; "" and "e" are the identity. */
CT_API ct_status ct_word_canonicalize(const ct_group* group,
                                      const char*     word,
                                      char**          out);
CT_API ct_status ct_word_is_identity(const ct_group* group,
                                     const char*     word,
                                     int*            out);
/* Image list of the action on level n, e.g. "[1,0,3,2]". */
CT_API ct_status ct_word_level_action(const ct_group* group,
                                      const char*     word,
                                      size_t          level,
                                      const ct_caps*  caps,
                                      char**          out);

CT_API ct_status ct_ball_build(const ct_group* group,
                               size_t          radius,
                               const ct_caps*  caps,
                               ct_ball**       out);
CT_API ct_status ct_ball_parse(const ct_group* group,
                               const char*     json,
                               ct_ball**       out);
CT_API size_t    ct_ball_vertex_count(const ct_ball* ball);
CT_API size_t    ct_ball_edge_count(const ct_ball* ball);
CT_API size_t    ct_ball_sphere_count(const ct_ball* ball);
CT_API ct_status ct_ball_dump(const ct_ball* ball, char** json);
CT_API ct_status ct_ball_dot(const ct_ball* ball, char** dot);
CT_API void      ct_ball_free(ct_ball* ball);

/* Plain graphs with an optional boundary, e.g. toy inputs. */
CT_API ct_status ct_graph_parse(const char* json, ct_graph** out);
CT_API ct_status ct_graph_dump(const ct_graph* graph, char** json);
CT_API size_t    ct_graph_vertex_count(const ct_graph* graph);
CT_API void      ct_graph_free(ct_graph* graph);

/* target is "ones", "zero" or a 0-chain document {p, entries}.
 * On a ball the all-ones target is solved with the collar from caps; other
 * targets are solved on the ball itself. */
CT_API ct_status ct_solve_ball(const ct_ball* ball,
                               uint32_t       p,
                               const char*    target,
                               const ct_caps* caps,
                               ct_solution**  out);
CT_API ct_status ct_solve_graph(const ct_graph* graph,
                                uint32_t        p,
                                const char*     target,
                                ct_solution**   out);
CT_API ct_status ct_solution_chain(const ct_solution* sol, char** json);
/* Sorted JSON list of vertices where d psi differs from the target. */
CT_API ct_status ct_solution_residual(const ct_solution* sol, char** json);
CT_API size_t    ct_solution_residual_size(const ct_solution* sol);
/* 1 when every residual vertex is a boundary (sphere) vertex. */
CT_API int       ct_solution_residual_on_boundary(const ct_solution* sol);
CT_API void      ct_solution_free(ct_solution* sol);

/* Decorates a ball (or a graph with its own solution) into a patch. */
CT_API ct_status ct_patch_from_ball(const ct_ball*  ball,
                                    uint32_t        p,
                                    const ct_caps*  caps,
                                    ct_patch**      out);
CT_API ct_status ct_patch_from_solution(const ct_solution* sol,
                                        ct_patch**         out);
CT_API ct_status ct_patch_parse(const char* json, ct_patch** out);
CT_API ct_status ct_patch_dump(const ct_patch* patch, char** json);
CT_API ct_status ct_patch_tileset_dump(const ct_patch* patch, char** json);
CT_API ct_status ct_patch_svg(const ct_patch* patch, char** svg);
CT_API ct_status ct_patch_dot(const ct_patch* patch, char** dot);
CT_API size_t    ct_patch_type_count(const ct_patch* patch);
CT_API uint64_t  ct_patch_alphabet_bound(const ct_patch* patch);
CT_API uint32_t  ct_patch_modulus(const ct_patch* patch);
/* Runs the verifier with modulus p (0 means the patch's own). *ok is 1
 * when there are no violations; report receives the JSON report. */
CT_API ct_status ct_patch_verify(const ct_patch* patch,
                                 uint32_t        p,
                                 int*            ok,
                                 char**          report);
CT_API void      ct_patch_free(ct_patch* patch);

/* Certificate over levels first..last. json and text may be NULL. */
CT_API ct_status ct_certify(const ct_group* group,
                            uint32_t        p,
                            size_t          first_level,
                            size_t          last_level,
                            const ct_caps*  caps,
                            ct_verdict*     verdict,
                            char**          json,
                            char**          text);

#ifdef __cplusplus
}
#endif

#endif /* COARSETILER_COARSETILER_H_ */
