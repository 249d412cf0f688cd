#include <doctest.h>

#include <memory>
#include <string>

#include <json.hpp>

#include "coarsetiler/coarsetiler.h"

using Json = nlohmann::json;

namespace {

  // Owns a string handed out by the library.
  std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    ct_string_free(s);
    return out;
  }

  template <typename T, void (*Free)(T*)>
  struct Handle {
    T* p = nullptr;
    ~Handle() {
      Free(p);
    }
    T** out() {
      return &p;
    }
    operator T*() const {
      return p;
    }
  };

  using Group    = Handle<ct_group, ct_group_free>;
  using Ball     = Handle<ct_ball, ct_ball_free>;
  using GraphH   = Handle<ct_graph, ct_graph_free>;
  using Solution = Handle<ct_solution, ct_solution_free>;
  using Patch    = Handle<ct_patch, ct_patch_free>;

  std::string last_error() {
    return ct_last_error();
  }

  char const* kTriangle = R"({"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]]})";

}  // namespace

TEST_CASE("version, status names and defaults") {
  CHECK(std::string(ct_version()).size() > 0);
  CHECK(std::string(ct_status_name(CT_OK)) == "ok");
  CHECK(std::string(ct_status_name(CT_ERR_UNSOLVABLE)) == "UnsolvableOnClosedGraph");
  auto caps = ct_caps_default();
  CHECK(caps.vertices > 0);
  CHECK(caps.elements > 0);
  CHECK(caps.leaves > 0);
  CHECK(caps.collar == 2);
  // Freeing null is a no-op everywhere.
  ct_string_free(nullptr);
  ct_group_free(nullptr);
  ct_ball_free(nullptr);
  ct_graph_free(nullptr);
  ct_solution_free(nullptr);
  ct_patch_free(nullptr);
}

TEST_CASE("groups and words") {
  Group g;
  REQUIRE(ct_group_preset("grigorchuk", g.out()) == CT_OK);
  char* s = nullptr;
  REQUIRE(ct_word_canonicalize(g, "abcab", &s) == CT_OK);
  CHECK(take(s) == "adab");
  int id = -1;
  REQUIRE(ct_word_is_identity(g, "bcd", &id) == CT_OK);
  CHECK(id == 1);
  REQUIRE(ct_word_is_identity(g, "abab", &id) == CT_OK);
  CHECK(id == 0);
  REQUIRE(ct_word_is_identity(g, "e", &id) == CT_OK);
  CHECK(id == 1);
  REQUIRE(ct_word_level_action(g, "a", 2, nullptr, &s) == CT_OK);
  CHECK(take(s) == "[2,3,0,1]");
  REQUIRE(ct_word_level_action(g, "b", 2, nullptr, &s) == CT_OK);
  CHECK(take(s) == "[1,0,2,3]");

  CHECK(ct_word_canonicalize(g, "abz", &s) == CT_ERR_INVALID_ARGUMENT);
  CHECK(last_error().find("invalid argument: ") == 0);

  ct_caps tight = ct_caps_default();
  tight.leaves  = 8;
  CHECK(ct_word_level_action(g, "a", 4, &tight, &s) == CT_ERR_RESOURCE);

  REQUIRE(ct_group_dump(g, &s) == CT_OK);
  auto  doc = take(s);
  Group back;
  REQUIRE(ct_group_parse(doc.c_str(), back.out()) == CT_OK);
  REQUIRE(ct_group_dump(back, &s) == CT_OK);
  CHECK(take(s) == doc);

  Group bad;
  CHECK(ct_group_preset("nosuch", bad.out()) == CT_ERR_INVALID_ARGUMENT);
  CHECK(last_error().find("unknown preset") != std::string::npos);
  CHECK(bad.p == nullptr);
  CHECK(ct_group_parse("{", bad.out()) == CT_ERR_PARSE);
  CHECK(ct_group_parse("{}", bad.out()) == CT_ERR_PARSE);
  CHECK(ct_group_preset(nullptr, bad.out()) == CT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("balls") {
  Group g;
  REQUIRE(ct_group_preset("fabrykowski-gupta", g.out()) == CT_OK);
  Ball b;
  REQUIRE(ct_ball_build(g, 3, nullptr, b.out()) == CT_OK);
  CHECK(ct_ball_vertex_count(b) == 29);
  CHECK(ct_ball_sphere_count(b) == 16);
  CHECK(ct_ball_edge_count(b) > 0);

  char* s = nullptr;
  REQUIRE(ct_ball_dump(b, &s) == CT_OK);
  auto doc = take(s);
  CHECK(Json::parse(doc)["vertices"].size() == 29);
  Ball back;
  REQUIRE(ct_ball_parse(g, doc.c_str(), back.out()) == CT_OK);
  REQUIRE(ct_ball_dump(back, &s) == CT_OK);
  CHECK(take(s) == doc);
  REQUIRE(ct_ball_dot(b, &s) == CT_OK);
  CHECK(take(s).rfind("digraph ball", 0) == 0);

  ct_caps tight  = ct_caps_default();
  tight.vertices = 10;
  Ball big;
  CHECK(ct_ball_build(g, 5, &tight, big.out()) == CT_ERR_RESOURCE);
  CHECK(last_error().find("resource limit: ") == 0);

  auto bad = Json::parse(doc);
  bad["sphere"] = Json::array();
  CHECK(ct_ball_parse(g, bad.dump().c_str(), big.out()) == CT_ERR_VALIDATION);
  CHECK(last_error().find("sphere") != std::string::npos);
}

TEST_CASE("solving on balls and graphs") {
  Group g;
  REQUIRE(ct_group_preset("grigorchuk", g.out()) == CT_OK);
  Ball b;
  REQUIRE(ct_ball_build(g, 6, nullptr, b.out()) == CT_OK);
  for (char const* target : {"ones", static_cast<char const*>(nullptr), "zero"}) {
    Solution sol;
    REQUIRE(ct_solve_ball(b, 3, target, nullptr, sol.out()) == CT_OK);
    CHECK(ct_solution_residual_on_boundary(sol) == 1);
    char* s = nullptr;
    REQUIRE(ct_solution_chain(sol, &s) == CT_OK);
    auto chain = Json::parse(take(s));
    CHECK(chain["p"] == 3);
    if (target && std::string(target) == "zero") {
      CHECK(chain["entries"].empty());
      CHECK(ct_solution_residual_size(sol) == 0);
    }
    REQUIRE(ct_solution_residual(sol, &s) == CT_OK);
    CHECK(Json::parse(take(s)).size() == ct_solution_residual_size(sol));
  }

  Solution s1;
  char const* target = R"({"p": 5, "entries": [[0, 1], [3, 4]]})";
  REQUIRE(ct_solve_ball(b, 5, target, nullptr, s1.out()) == CT_OK);
  CHECK(ct_solution_residual_on_boundary(s1) == 1);
  Solution s2;
  CHECK(ct_solve_ball(b, 3, target, nullptr, s2.out()) == CT_ERR_VALIDATION);
  CHECK(ct_solve_ball(b, 1, "ones", nullptr, s2.out()) == CT_ERR_INVALID_ARGUMENT);
  CHECK(ct_solve_ball(b, 3, "twos", nullptr, s2.out()) == CT_ERR_PARSE);

  GraphH tri;
  REQUIRE(ct_graph_parse(kTriangle, tri.out()) == CT_OK);
  CHECK(ct_graph_vertex_count(tri) == 3);
  Solution none;
  CHECK(ct_solve_graph(tri, 2, "ones", none.out()) == CT_ERR_UNSOLVABLE);
  CHECK(last_error().find("UnsolvableOnClosedGraph") == 0);
  CHECK(none.p == nullptr);
  Solution some;
  REQUIRE(ct_solve_graph(tri, 3, "ones", some.out()) == CT_OK);
  CHECK(ct_solution_residual_size(some) == 0);
  Patch np;
  CHECK(ct_patch_from_solution(some, np.out()) == CT_ERR_INVALID_ARGUMENT);

  char* s = nullptr;
  REQUIRE(ct_graph_dump(tri, &s) == CT_OK);
  auto expected        = Json::parse(kTriangle);
  expected["boundary"] = Json::array();
  CHECK(Json::parse(take(s)) == expected);
}

TEST_CASE("patches") {
  Group g;
  REQUIRE(ct_group_preset("grigorchuk", g.out()) == CT_OK);
  Ball b;
  REQUIRE(ct_ball_build(g, 6, nullptr, b.out()) == CT_OK);
  Patch p;
  REQUIRE(ct_patch_from_ball(b, 3, nullptr, p.out()) == CT_OK);
  CHECK(ct_patch_modulus(p) == 3);
  CHECK(ct_patch_alphabet_bound(p) == 1296);
  CHECK(ct_patch_type_count(p) > 0);
  CHECK(ct_patch_type_count(p) <= 1296);

  int   ok = 0;
  char* s  = nullptr;
  REQUIRE(ct_patch_verify(p, 0, &ok, &s) == CT_OK);
  CHECK(ok == 1);
  auto report = Json::parse(take(s));
  CHECK(report["matching_violations"].empty());
  CHECK(ct_patch_verify(p, 5, &ok, nullptr) == CT_ERR_INVALID_ARGUMENT);

  REQUIRE(ct_patch_tileset_dump(p, &s) == CT_OK);
  auto ts = Json::parse(take(s));
  CHECK(ts["types"].size() == ct_patch_type_count(p));
  CHECK(ts["alphabet_bound"] == 1296);
  REQUIRE(ct_patch_svg(p, &s) == CT_OK);
  CHECK(take(s).find("<svg") == 0);
  REQUIRE(ct_patch_dot(p, &s) == CT_OK);
  CHECK(take(s).rfind("digraph patch", 0) == 0);

  REQUIRE(ct_patch_dump(p, &s) == CT_OK);
  auto  doc = take(s);
  Patch back;
  REQUIRE(ct_patch_parse(doc.c_str(), back.out()) == CT_OK);
  REQUIRE(ct_patch_dump(back, &s) == CT_OK);
  CHECK(take(s) == doc);

  // Swap one assigned tile for another type: the verifier notices.
  auto tampered = Json::parse(doc);
  auto& first   = tampered["assignment"][0][1];
  first         = first.get<int>() == 0 ? 1 : 0;
  Patch t;
  REQUIRE(ct_patch_parse(tampered.dump().c_str(), t.out()) == CT_OK);
  REQUIRE(ct_patch_verify(t, 0, &ok, &s) == CT_OK);
  CHECK(ok == 0);
  CHECK_FALSE(Json::parse(take(s))["matching_violations"].empty());

  Patch bad;
  CHECK(ct_patch_parse("[]", bad.out()) == CT_ERR_PARSE);
}

TEST_CASE("certificates") {
  Group g;
  REQUIRE(ct_group_preset("grigorchuk", g.out()) == CT_OK);
  ct_verdict v    = CT_VERDICT_INCOMPLETE;
  char*      json = nullptr;
  char*      text = nullptr;
  REQUIRE(ct_certify(g, 3, 1, 3, nullptr, &v, &json, &text) == CT_OK);
  CHECK(v == CT_VERDICT_PASS);
  auto doc = Json::parse(take(json));
  CHECK(doc["levels"][2]["order"] == 128);
  CHECK(take(text).find("verdict: PASS") != std::string::npos);

  REQUIRE(ct_certify(g, 2, 1, 1, nullptr, &v, nullptr, nullptr) == CT_OK);
  CHECK(v == CT_VERDICT_FAIL);

  ct_caps tight  = ct_caps_default();
  tight.elements = 1000;
  REQUIRE(ct_certify(g, 3, 4, 4, &tight, &v, nullptr, nullptr) == CT_OK);
  CHECK(v == CT_VERDICT_INCOMPLETE);

  CHECK(ct_certify(g, 4, 1, 2, nullptr, &v, nullptr, nullptr) == CT_ERR_INVALID_ARGUMENT);
  CHECK(ct_certify(nullptr, 3, 1, 2, nullptr, &v, nullptr, nullptr)
        == CT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("last error is per call") {
  Group g;
  CHECK(ct_group_preset("nosuch", g.out()) != CT_OK);
  CHECK_FALSE(last_error().empty());
  REQUIRE(ct_group_preset("grigorchuk", g.out()) == CT_OK);
  CHECK(last_error().empty());
}
