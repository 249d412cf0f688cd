#ifndef COARSETILER_SERIALIZE_HPP_
#define COARSETILER_SERIALIZE_HPP_

// JSON documents. Objects are emitted with sorted keys and arrays in index
// order, so equal values always serialize to identical bytes. Readers throw
// Error{parse} or Error{validation} with the path of the first offending
// field, e.g. "states[1].sections[0]: undeclared state 'x'".

#include <cstddef>
#include <string>

#include <json.hpp>

#include "coarsetiler/automaton.hpp"
#include "coarsetiler/cayley.hpp"
#include "coarsetiler/chains.hpp"
#include "coarsetiler/quotients.hpp"
#include "coarsetiler/tiles.hpp"

namespace coarsetiler {

  using Json = nlohmann::json;

  // {alphabet_size, states:[{name, root_perm, sections}], genset, inverses,
  //  preset_id?}
  Json          to_json(AutomatonSpec const& spec);
  AutomatonSpec spec_from_json(Json const& doc);

  // {radius, vertices, edges:[[tail, head, label]], sphere}
  Json       to_json(CayleyBall const& ball, AutomatonSpec const& spec);
  CayleyBall ball_from_json(Json const& doc, AutomatonSpec const& spec);

  // {p, entries:[[index, value]]}, zero entries omitted.
  Json   to_json(Chain0 const& c);
  Json   to_json(Chain1 const& c);
  Chain0 chain0_from_json(Json const& doc, std::size_t vertex_count);
  Chain1 chain1_from_json(Json const& doc, std::size_t edge_count);

  // {vertices, edges:[[tail, head] or [tail, head, label]], boundary?,
  //  genset?, inverses?}
  Json     to_json(Graph const& g);
  ToyGraph graph_from_json(Json const& doc);

  // {p, genset, inverses, types:[[{gen, polarity, count}]], alphabet_bound}
  Json to_json(TileSet const& tiles);

  // Tile set keys without alphabet_bound, plus
  // {assignment:[[vertex, type]], graph:{vertices, edges, interior}}
  Json        to_json(PatchTiling const& patch);
  PatchTiling patch_from_json(Json const& doc);

  Json to_json(VerificationReport const& report);

  // {group, p, levels:[{n, order, factorization, p_divides, obstruction}],
  //  verdict, scope, trusted_inputs}
  Json              to_json(CertificateReport const& report);
  CertificateReport certificate_from_json(Json const& doc);

  // Parses text, mapping syntax errors onto Error{parse}.
  Json parse_json_text(std::string const& text);

  // Deterministic rendering used for every emitted file.
  std::string dump(Json const& doc);

}  // namespace coarsetiler

#endif  // COARSETILER_SERIALIZE_HPP_
