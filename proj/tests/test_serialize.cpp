#include <doctest.h>

#include "coarsetiler/errors.hpp"
#include "coarsetiler/serialize.hpp"
#include "coarsetiler/solver.hpp"
#include "support.hpp"

using namespace coarsetiler;

namespace {

  // Runs f and returns the error it throws.
  template <typename F>
  Error error_of(F&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e;
    }
    FAIL("no error");
    return Error(ErrorCode::internal, "");
  }

  bool mentions(Error const& e, std::string const& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }

  Json adding_machine_doc() {
    return Json::parse(R"js({
      "alphabet_size": 2,
      "states": [
        {"name": "t", "root_perm": "(0 1)", "sections": ["e", "t"]},
        {"name": "T", "root_perm": "[1,0]", "sections": ["T", "e"]}
      ],
      "genset": ["t", "T"],
      "inverses": {"t": "T", "T": "t"}
    })js");
  }

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("preset specs round-trip") {
    for (auto const& spec :
         {AutomatonSpec::grigorchuk(), AutomatonSpec::fabrykowski_gupta()}) {
      auto doc = to_json(spec);
      CHECK(spec_from_json(doc) == spec);
      CHECK(dump(to_json(spec_from_json(parse_json_text(dump(doc))))) == dump(doc));
    }
    auto g = to_json(AutomatonSpec::grigorchuk());
    CHECK(g["preset_id"] == "grigorchuk");
    CHECK(g["states"][1]["sections"] == Json::array({"a", "c"}));
    CHECK(g["states"][0]["root_perm"] == "[1,0]");
  }

  TEST_CASE("custom specs accept both permutation notations") {
    auto spec = spec_from_json(adding_machine_doc());
    CHECK_FALSE(spec.preset());
    CHECK(spec.state(0).root == spec.state(1).root);
    CHECK(spec_from_json(to_json(spec)) == spec);
  }

  TEST_CASE("spec errors carry the field path") {
    auto doc = adding_machine_doc();
    doc["states"][1]["sections"][0] = "x";
    auto e = error_of([&] { spec_from_json(doc); });
    CHECK(e.code() == ErrorCode::validation);
    CHECK(std::string(e.what()) == "states[1].sections[0]: undeclared state 'x'");

    doc = adding_machine_doc();
    doc.erase("genset");
    e = error_of([&] { spec_from_json(doc); });
    CHECK(e.code() == ErrorCode::parse);
    CHECK(mentions(e, "genset: missing field"));

    doc = adding_machine_doc();
    doc["states"][0]["root_perm"] = "[1,1]";
    CHECK(mentions(error_of([&] { spec_from_json(doc); }), "states[0].root_perm"));

    doc = adding_machine_doc();
    doc["alphabet_size"] = -3;
    CHECK(mentions(error_of([&] { spec_from_json(doc); }), "alphabet_size"));

    doc = adding_machine_doc();
    doc["inverses"]["t"] = "t";
    CHECK(error_of([&] { spec_from_json(doc); }).code() == ErrorCode::validation);
  }

  TEST_CASE("preset ids must match the built-in tables") {
    auto doc = to_json(AutomatonSpec::grigorchuk());
    doc["states"][3]["sections"][1] = "c";
    auto e = error_of([&] { spec_from_json(doc); });
    CHECK(e.code() == ErrorCode::validation);
    CHECK(mentions(e, "preset_id"));
    doc = to_json(AutomatonSpec::grigorchuk());
    doc["preset_id"] = "nosuch";
    CHECK(mentions(error_of([&] { spec_from_json(doc); }), "unknown preset"));
  }

  TEST_CASE("malformed text") {
    auto e = error_of([] { parse_json_text("{\"a\": "); });
    CHECK(e.code() == ErrorCode::parse);
  }

  TEST_CASE("balls round-trip") {
    for (auto const& spec :
         {AutomatonSpec::grigorchuk(), AutomatonSpec::fabrykowski_gupta()}) {
      auto b   = build_ball(spec, 4);
      auto doc = to_json(b, spec);
      CHECK(ball_from_json(parse_json_text(dump(doc)), spec) == b);
      CHECK(doc["vertices"].size() == b.vertex_count());
    }
    auto g   = AutomatonSpec::grigorchuk();
    auto doc = to_json(build_ball(g, 2), g);
    CHECK(doc["vertices"][0] == "");
    CHECK(doc["edges"][0] == Json::array({0, 1, "a"}));
    CHECK(doc["sphere"] == Json::array({5, 6, 7, 8, 9, 10}));

    auto bad = doc;
    bad["sphere"] = Json::array({5});
    CHECK(mentions(error_of([&] { ball_from_json(bad, g); }), "sphere"));
    bad = doc;
    bad["edges"][2][2] = "z";
    CHECK(mentions(error_of([&] { ball_from_json(bad, g); }), "edges[2][2]"));
    bad = doc;
    bad["vertices"][3] = "q";
    CHECK(mentions(error_of([&] { ball_from_json(bad, g); }), "vertices[3]"));
  }

  TEST_CASE("chains round-trip") {
    auto   rng = support::make_rng(41);
    Chain1 c(Modulus(7), 30);
    for (std::size_t i = 0; i < 30; ++i) {
      c.set(i, static_cast<std::int64_t>(support::uniform(rng, 0, 6)));
    }
    auto doc = to_json(c);
    CHECK(chain1_from_json(parse_json_text(dump(doc)), 30) == c);
    CHECK(doc["entries"].size() == c.support_size());

    auto bad = Json::parse(R"({"p": 3, "entries": [[0, 3]]})");
    CHECK(mentions(error_of([&] { chain0_from_json(bad, 2); }), "entries[0][1]"));
    bad = Json::parse(R"({"p": 3, "entries": [[5, 1]]})");
    CHECK(mentions(error_of([&] { chain0_from_json(bad, 2); }), "entries[0][0]"));
    bad = Json::parse(R"({"p": 1, "entries": []})");
    CHECK_THROWS_AS(chain0_from_json(bad, 2), Error);
  }

  TEST_CASE("graphs round-trip") {
    auto g = cycle_graph(5).with_boundary({false, true, false, false, true});
    CHECK(graph_from_json(parse_json_text(dump(to_json(g)))) == g);
    Graph labelled(2, {{0, 1, 0}, {1, 0, 1}}, {}, Genset{{"s", "S"}, {1, 0}});
    CHECK(graph_from_json(to_json(labelled)) == labelled);

    auto doc = Json::parse(R"({"vertices": 2, "edges": [[0, 1]],
                               "genset": ["s"], "inverses": {"s": "s"}})");
    CHECK(mentions(error_of([&] { graph_from_json(doc); }), "edges[0]"));
    doc = Json::parse(R"({"vertices": 2, "edges": [[0, 2]]})");
    CHECK(mentions(error_of([&] { graph_from_json(doc); }), "edges[0]"));
  }

  TEST_CASE("patches round-trip") {
    auto spec = AutomatonSpec::grigorchuk();
    auto b    = build_ball(spec, 5);
    auto d    = decorate(b, solve_fundamental(spec, b, Modulus(3)));
    auto doc  = to_json(d.patch);
    auto back = patch_from_json(parse_json_text(dump(doc)));
    CHECK(back == d.patch);
    CHECK(dump(to_json(back)) == dump(doc));

    auto bad = doc;
    bad["types"][0][1]["count"] = 3;
    CHECK(mentions(error_of([&] { patch_from_json(bad); }), "types[0][1].count"));
    bad = doc;
    bad["types"][0][1]["polarity"] = "ridge";
    CHECK(mentions(error_of([&] { patch_from_json(bad); }), "types[0][1].polarity"));
    bad = doc;
    bad["assignment"][0][1] = 10000;
    CHECK(mentions(error_of([&] { patch_from_json(bad); }), "assignment[0][1]"));
    bad = doc;
    bad.erase("graph");
    CHECK(mentions(error_of([&] { patch_from_json(bad); }), "graph: missing field"));
  }

  TEST_CASE("certificates round-trip") {
    auto r    = aperiodicity_certificate(AutomatonSpec::grigorchuk(), Modulus(3), 1, 3);
    auto doc  = to_json(r);
    CHECK(certificate_from_json(parse_json_text(dump(doc))) == r);
    CHECK(doc["verdict"] == "PASS");
    CHECK(doc["levels"][2]["order"] == 128);
    CHECK(doc["levels"][2]["factorization"] == Json::parse("[[2, 7]]"));
    auto capped = aperiodicity_certificate(AutomatonSpec::grigorchuk(), Modulus(3), 4, 4,
                                           {100, kDefaultLeafCap});
    CHECK(certificate_from_json(to_json(capped)) == capped);
  }

  TEST_CASE("output is byte-stable") {
    auto spec = AutomatonSpec::fabrykowski_gupta();
    auto a    = dump(to_json(build_ball(spec, 3), spec));
    auto b    = dump(to_json(build_ball(spec, 3), spec));
    CHECK(a == b);
    // Keys come out sorted.
    CHECK(a.find("\"edges\"") < a.find("\"radius\""));
    CHECK(a.find("\"radius\"") < a.find("\"sphere\""));
    CHECK(a.find("\"sphere\"") < a.find("\"vertices\""));
  }
}
