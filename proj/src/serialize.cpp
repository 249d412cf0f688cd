#include "coarsetiler/serialize.hpp"

#include <algorithm>

#include "coarsetiler/errors.hpp"

namespace coarsetiler {

  namespace {

    // Read-only cursor into a document that remembers where it is.
    class Field {
     public:
      Field(Json const& j, std::string path) : j_(j), path_(std::move(path)) {}

      [[noreturn]] void fail(std::string const& what,
                             ErrorCode code = ErrorCode::parse) const {
        throw Error(code, (path_.empty() ? "document" : path_) + ": " + what);
      }

      bool has(char const* key) const {
        return j_.is_object() && j_.contains(key);
      }

      Field operator[](char const* key) const {
        if (!j_.is_object()) {
          fail("expected an object");
        }
        auto it = j_.find(key);
        auto p  = path_.empty() ? std::string(key) : path_ + "." + key;
        if (it == j_.end()) {
          throw Error(ErrorCode::parse, p + ": missing field");
        }
        return Field(*it, p);
      }

      Field operator[](std::size_t i) const {
        if (!j_.is_array() || i >= j_.size()) {
          fail("expected an array with at least " + std::to_string(i + 1)
               + " entries");
        }
        return Field(j_[i], path_ + "[" + std::to_string(i) + "]");
      }

      Field operator[](int i) const {
        return (*this)[static_cast<std::size_t>(i)];
      }

      std::size_t size() const {
        if (!j_.is_array()) {
          fail("expected an array");
        }
        return j_.size();
      }

      std::uint64_t as_uint(std::uint64_t max = 0xFFFFFFFFull) const {
        if (!j_.is_number_unsigned()
            && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0)) {
          fail("expected a non-negative integer");
        }
        auto v = j_.get<std::uint64_t>();
        if (v > max) {
          fail("value " + std::to_string(v) + " is too large");
        }
        return v;
      }

      std::string as_string() const {
        if (!j_.is_string()) {
          fail("expected a string");
        }
        return j_.get<std::string>();
      }

      bool as_bool() const {
        if (!j_.is_boolean()) {
          fail("expected a boolean");
        }
        return j_.get<bool>();
      }

      Json const& json() const noexcept {
        return j_;
      }
      std::string const& path() const noexcept {
        return path_;
      }

     private:
      Json const& j_;
      std::string path_;
    };

    Json genset_inverses(Genset const& g) {
      Json inv = Json::object();
      for (std::size_t i = 0; i < g.size(); ++i) {
        inv[g.names[i]] = g.names[g.inverse[i]];
      }
      return inv;
    }

    Genset read_genset(Field const& names, Field const& inverses) {
      Genset g;
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto name = names[i].as_string();
        if (g.find(name)) {
          names[i].fail("duplicate generator '" + name + "'",
                        ErrorCode::validation);
        }
        g.names.push_back(std::move(name));
      }
      for (auto const& name : g.names) {
        auto inv = g.find(inverses[name.c_str()].as_string());
        if (!inv) {
          inverses[name.c_str()].fail("inverse is not a generator",
                                      ErrorCode::validation);
        }
        g.inverse.push_back(*inv);
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.inverse[g.inverse[i]] != i) {
          inverses[g.names[i].c_str()].fail("inverse map is not an involution",
                                            ErrorCode::validation);
        }
      }
      return g;
    }

    std::uint32_t read_label(Field const& f, Genset const& g) {
      auto name = f.as_string();
      auto i    = g.find(name);
      if (!i) {
        f.fail("unknown generator '" + name + "'", ErrorCode::validation);
      }
      return *i;
    }

    std::vector<bool> read_index_set(Field const& f, std::size_t n) {
      std::vector<bool> out(n, false);
      for (std::size_t i = 0; i < f.size(); ++i) {
        auto v = f[i].as_uint();
        if (v >= n) {
          f[i].fail("vertex index out of range", ErrorCode::validation);
        }
        out[v] = true;
      }
      return out;
    }

    Json index_set(std::vector<bool> const& flags) {
      Json out = Json::array();
      for (std::size_t v = 0; v < flags.size(); ++v) {
        if (flags[v]) {
          out.push_back(v);
        }
      }
      return out;
    }

    template <typename Chain>
    Json chain_to_json(Chain const& c) {
      Json entries = Json::array();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
          entries.push_back(Json::array({i, c[i]}));
        }
      }
      return Json{{"p", c.modulus().value()}, {"entries", entries}};
    }

    template <typename Chain>
    Chain chain_from_json(Json const& doc, std::size_t size) {
      Field   root(doc, "");
      Modulus p(root["p"].as_uint());
      Chain   c(p, size);
      auto    entries = root["entries"];
      for (std::size_t i = 0; i < entries.size(); ++i) {
        auto e     = entries[i];
        auto index = e[0].as_uint();
        auto value = e[1].as_uint();
        if (index >= size) {
          e[0].fail("index out of range", ErrorCode::validation);
        }
        if (value >= p.value()) {
          e[1].fail("value is not a reduced residue", ErrorCode::validation);
        }
        c.set(index, static_cast<std::int64_t>(value));
      }
      return c;
    }

    Json edges_to_json(Graph const& g) {
      Json edges = Json::array();
      for (auto const& e : g.edges()) {
        Json row = Json::array({e.tail, e.head});
        if (e.label != kNoLabel) {
          row.push_back(g.genset().names[e.label]);
        }
        edges.push_back(row);
      }
      return edges;
    }

    std::vector<Edge> read_edges(Field const&  f,
                                 std::size_t   n,
                                 Genset const& g,
                                 bool          labels_required) {
      std::vector<Edge> out;
      for (std::size_t i = 0; i < f.size(); ++i) {
        auto row = f[i];
        auto len = row.size();
        if (len < 2 || len > 3 || (labels_required && len != 3)) {
          row.fail(labels_required ? "expected [tail, head, label]"
                                   : "expected [tail, head] or "
                                     "[tail, head, label]");
        }
        Edge e{static_cast<Vertex>(row[0].as_uint()),
               static_cast<Vertex>(row[1].as_uint()),
               kNoLabel};
        if (e.tail >= n || e.head >= n) {
          row.fail("endpoint out of range", ErrorCode::validation);
        }
        if (len == 3) {
          e.label = read_label(row[2], g);
        }
        out.push_back(e);
      }
      return out;
    }

    std::string root_perm_text(Permutation const& p) {
      Json images = p.images();
      return images.dump();
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Automaton specs
  ////////////////////////////////////////////////////////////////////////

  Json to_json(AutomatonSpec const& spec) {
    Json states = Json::array();
    for (auto const& s : spec.states()) {
      Json sections = Json::array();
      for (auto t : s.sections) {
        sections.push_back(t == kIdentityLetter ? std::string("e")
                                                : spec.state(t).name);
      }
      states.push_back({{"name", s.name},
                        {"root_perm", root_perm_text(s.root)},
                        {"sections", sections}});
    }
    Json genset   = Json::array();
    Json inverses = Json::object();
    for (auto g : spec.generators()) {
      genset.push_back(spec.state(g).name);
      inverses[spec.state(g).name] = spec.state(spec.inverse_of(g)).name;
    }
    Json doc{{"alphabet_size", spec.alphabet_size()},
             {"states", states},
             {"genset", genset},
             {"inverses", inverses}};
    if (spec.preset()) {
      doc["preset_id"] = preset_name(*spec.preset());
    }
    return doc;
  }

  AutomatonSpec spec_from_json(Json const& doc) {
    Field      root(doc, "");
    auto const d = root["alphabet_size"].as_uint(0xFFFF);
    if (d < 2) {
      root["alphabet_size"].fail("must be at least 2", ErrorCode::validation);
    }
    auto                     states_f = root["states"];
    std::vector<std::string> names;
    for (std::size_t i = 0; i < states_f.size(); ++i) {
      names.push_back(states_f[i]["name"].as_string());
    }
    auto lookup = [&](Field const& f) -> Letter {
      auto name = f.as_string();
      if (name == "e") {
        return kIdentityLetter;
      }
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        f.fail("undeclared state '" + name + "'", ErrorCode::validation);
      }
      return static_cast<Letter>(it - names.begin());
    };

    std::vector<StateDef> states;
    for (std::size_t i = 0; i < states_f.size(); ++i) {
      auto     sf = states_f[i];
      StateDef s;
      s.name = names[i];
      try {
        s.root = Permutation::parse(sf["root_perm"].as_string(), d);
      } catch (Error const& e) {
        if (e.code() == ErrorCode::parse && std::string(e.what()).find(':')
                                                != std::string::npos) {
          throw;
        }
        sf["root_perm"].fail(e.what(), e.code() == ErrorCode::invalid_argument
                                           ? ErrorCode::validation
                                           : e.code());
      }
      auto secs = sf["sections"];
      for (std::size_t x = 0; x < secs.size(); ++x) {
        s.sections.push_back(lookup(secs[x]));
      }
      states.push_back(std::move(s));
    }

    std::vector<Letter> genset;
    std::vector<Letter> inverses;
    auto                gf = root["genset"];
    auto                inv_f = root["inverses"];
    for (std::size_t i = 0; i < gf.size(); ++i) {
      auto g = lookup(gf[i]);
      if (g == kIdentityLetter) {
        gf[i].fail("the identity is not a generator", ErrorCode::validation);
      }
      genset.push_back(g);
      auto inv = lookup(inv_f[names[g].c_str()]);
      if (inv == kIdentityLetter) {
        inv_f[names[g].c_str()].fail("the identity is not an inverse",
                                     ErrorCode::validation);
      }
      inverses.push_back(inv);
    }

    if (root.has("preset_id")) {
      auto id     = root["preset_id"];
      auto preset = AutomatonSpec::from_preset(id.as_string());
      AutomatonSpec plain(d, states, genset, inverses, preset.preset());
      if (!(plain == preset)) {
        id.fail("document does not match the built-in preset",
                ErrorCode::validation);
      }
      return preset;
    }
    return AutomatonSpec(d, std::move(states), std::move(genset),
                         std::move(inverses));
  }

  ////////////////////////////////////////////////////////////////////////
  // Balls
  ////////////////////////////////////////////////////////////////////////

  Json to_json(CayleyBall const& ball, AutomatonSpec const& spec) {
    Json vertices = Json::array();
    for (auto const& w : ball.words()) {
      vertices.push_back(spec.format(w));
    }
    Json sphere = Json::array();
    for (Vertex v = 0; v < ball.vertex_count(); ++v) {
      if (ball.in_sphere(v)) {
        sphere.push_back(v);
      }
    }
    return Json{{"radius", ball.radius()},
                {"vertices", vertices},
                {"edges", edges_to_json(ball.graph())},
                {"sphere", sphere}};
  }

  CayleyBall ball_from_json(Json const& doc, AutomatonSpec const& spec) {
    Field                  root(doc, "");
    auto                   radius = root["radius"].as_uint();
    auto                   vf     = root["vertices"];
    std::vector<GroupWord> words;
    for (std::size_t i = 0; i < vf.size(); ++i) {
      try {
        words.push_back(spec.parse_word(vf[i].as_string()));
      } catch (Error const& e) {
        if (e.code() == ErrorCode::parse) {
          throw;
        }
        vf[i].fail(e.what(), ErrorCode::validation);
      }
    }
    auto const genset = spec.genset();
    auto edges        = read_edges(root["edges"], words.size(), genset, true);
    auto ball = make_ball(radius, std::move(words), std::move(edges), genset);
    auto sphere = read_index_set(root["sphere"], ball.vertex_count());
    if (sphere != ball.graph().boundary()) {
      root["sphere"].fail("does not match the vertices at distance "
                              + std::to_string(radius),
                          ErrorCode::validation);
    }
    return ball;
  }

  ////////////////////////////////////////////////////////////////////////
  // Chains and graphs
  ////////////////////////////////////////////////////////////////////////

  Json to_json(Chain0 const& c) {
    return chain_to_json(c);
  }

  Json to_json(Chain1 const& c) {
    return chain_to_json(c);
  }

  Chain0 chain0_from_json(Json const& doc, std::size_t vertex_count) {
    return chain_from_json<Chain0>(doc, vertex_count);
  }

  Chain1 chain1_from_json(Json const& doc, std::size_t edge_count) {
    return chain_from_json<Chain1>(doc, edge_count);
  }

  Json to_json(Graph const& g) {
    Json doc{{"vertices", g.vertex_count()},
             {"edges", edges_to_json(g)},
             {"boundary", index_set(g.boundary())}};
    if (g.is_labelled()) {
      doc["genset"]   = g.genset().names;
      doc["inverses"] = genset_inverses(g.genset());
    }
    return doc;
  }

  ToyGraph graph_from_json(Json const& doc) {
    Field  root(doc, "");
    auto   n = root["vertices"].as_uint();
    Genset genset;
    if (root.has("genset")) {
      genset = read_genset(root["genset"], root["inverses"]);
    }
    auto edges = read_edges(root["edges"], n, genset, false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!genset.empty() && edges[i].label == kNoLabel) {
        root["edges"][i].fail("label required when a genset is declared",
                              ErrorCode::validation);
      }
    }
    std::vector<bool> boundary;
    if (root.has("boundary")) {
      boundary = read_index_set(root["boundary"], n);
    }
    return Graph(n, std::move(edges), std::move(boundary), std::move(genset));
  }

  ////////////////////////////////////////////////////////////////////////
  // Patches
  ////////////////////////////////////////////////////////////////////////

  Json to_json(TileSet const& tiles) {
    auto const& genset = tiles.genset;
    Json        types  = Json::array();
    for (auto const& t : tiles.types) {
      Json faces = Json::array();
      for (auto const& f : t.faces) {
        faces.push_back({{"gen", genset.names[f.generator]},
                         {"polarity", polarity_name(f.polarity)},
                         {"count", f.count}});
      }
      types.push_back(faces);
    }
    return Json{{"p", tiles.p.value()},
                {"genset", genset.names},
                {"inverses", genset_inverses(genset)},
                {"types", types},
                {"alphabet_bound", tiles.alphabet_bound()}};
  }

  Json to_json(PatchTiling const& patch) {
    auto doc = to_json(patch.tiles);
    doc.erase("alphabet_bound");
    Json assignment = Json::array();
    for (std::size_t v = 0; v < patch.assignment.size(); ++v) {
      if (patch.assignment[v]) {
        assignment.push_back(Json::array({v, *patch.assignment[v]}));
      }
    }
    doc["assignment"] = assignment;
    doc["graph"]      = {{"vertices", patch.graph.vertex_count()},
                         {"edges", edges_to_json(patch.graph)},
                         {"interior", index_set(patch.interior)}};
    if (!patch.graph.is_closed()) {
      doc["graph"]["boundary"] = index_set(patch.graph.boundary());
    }
    return doc;
  }

  PatchTiling patch_from_json(Json const& doc) {
    Field   root(doc, "");
    Modulus p(root["p"].as_uint());
    auto    genset = read_genset(root["genset"], root["inverses"]);

    TileSet set{p, genset, {}};
    auto    tf = root["types"];
    for (std::size_t i = 0; i < tf.size(); ++i) {
      auto tile = tf[i];
      if (tile.size() != genset.size()) {
        tile.fail("expected one face per generator", ErrorCode::validation);
      }
      TileType t;
      for (std::uint32_t s = 0; s < genset.size(); ++s) {
        auto face = tile[std::size_t{s}];
        auto gen  = read_label(face["gen"], genset);
        if (gen != s) {
          face["gen"].fail("faces must follow genset order",
                           ErrorCode::validation);
        }
        auto pol = polarity_from_name(face["polarity"].as_string());
        if (!pol) {
          face["polarity"].fail("expected bump, dent or unknown",
                                ErrorCode::validation);
        }
        auto count = face["count"].as_uint();
        if (count >= p.value()) {
          face["count"].fail("count must be below p", ErrorCode::validation);
        }
        auto f = FaceProfile::make(gen, *pol, static_cast<Residue>(count));
        if (f.polarity != *pol) {
          face["polarity"].fail("flat faces are written as bump",
                                ErrorCode::validation);
        }
        t.faces.push_back(f);
      }
      if (!set.types.empty() && !(set.types.back() < t)) {
        tile.fail("types must be sorted and distinct", ErrorCode::validation);
      }
      set.types.push_back(std::move(t));
    }

    auto gf    = root["graph"];
    auto n     = gf["vertices"].as_uint();
    auto edges = read_edges(gf["edges"], n, genset, true);
    auto interior = read_index_set(gf["interior"], n);
    std::vector<bool> boundary;
    if (gf.has("boundary")) {
      boundary = read_index_set(gf["boundary"], n);
    }

    std::vector<std::optional<std::uint32_t>> assignment(n);
    auto                                      af = root["assignment"];
    for (std::size_t i = 0; i < af.size(); ++i) {
      auto v = af[i][0].as_uint();
      auto t = af[i][1].as_uint();
      if (v >= n) {
        af[i][0].fail("vertex index out of range", ErrorCode::validation);
      }
      if (t >= set.types.size()) {
        af[i][1].fail("tile type out of range", ErrorCode::validation);
      }
      if (assignment[v]) {
        af[i][0].fail("vertex assigned twice", ErrorCode::validation);
      }
      assignment[v] = static_cast<std::uint32_t>(t);
    }
    for (Vertex v = 0; v < n; ++v) {
      if (interior[v] && !assignment[v]) {
        gf["interior"].fail("interior vertex " + std::to_string(v)
                                + " has no tile",
                            ErrorCode::validation);
      }
    }
    return PatchTiling{Graph(n, std::move(edges), std::move(boundary), genset),
                       std::move(set),
                       std::move(assignment),
                       std::move(interior)};
  }

  Json to_json(VerificationReport const& report) {
    return Json{{"ok", report.ok()},
                {"matching_violations", report.matching_violations},
                {"boundary_violations", report.boundary_violations}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Certificates
  ////////////////////////////////////////////////////////////////////////

  Json to_json(CertificateReport const& report) {
    Json levels = Json::array();
    for (auto const& lr : report.levels) {
      Json fac = Json::array();
      for (auto [q, e] : lr.factorization) {
        fac.push_back(Json::array({q, e}));
      }
      Json l{{"n", lr.level},
             {"complete", lr.complete},
             {"order", lr.order},
             {"factorization", fac},
             {"p_divides", lr.p_divides},
             {"obstruction", lr.obstruction}};
      if (!lr.error.empty()) {
        l["error"] = lr.error;
      }
      levels.push_back(l);
    }
    return Json{{"group", report.group},
                {"p", report.p},
                {"levels", levels},
                {"verdict", verdict_name(report.verdict)},
                {"scope", report.scope},
                {"trusted_inputs", report.trusted_inputs}};
  }

  CertificateReport certificate_from_json(Json const& doc) {
    Field             root(doc, "");
    CertificateReport r;
    r.group   = root["group"].as_string();
    r.p       = static_cast<std::uint32_t>(root["p"].as_uint());
    auto verd = root["verdict"].as_string();
    if (verd == "PASS") {
      r.verdict = Verdict::pass;
    } else if (verd == "FAIL") {
      r.verdict = Verdict::fail;
    } else if (verd == "INCOMPLETE") {
      r.verdict = Verdict::incomplete;
    } else {
      root["verdict"].fail("unknown verdict", ErrorCode::validation);
    }
    r.scope = root["scope"].as_string();
    auto tf = root["trusted_inputs"];
    for (std::size_t i = 0; i < tf.size(); ++i) {
      r.trusted_inputs.push_back(tf[i].as_string());
    }
    auto lf = root["levels"];
    for (std::size_t i = 0; i < lf.size(); ++i) {
      auto        l = lf[i];
      LevelReport lr;
      lr.level       = l["n"].as_uint();
      lr.complete    = l["complete"].as_bool();
      lr.order       = l["order"].as_uint(~0ull);
      lr.p_divides   = l["p_divides"].as_bool();
      lr.obstruction = l["obstruction"].as_bool();
      auto ff        = l["factorization"];
      for (std::size_t k = 0; k < ff.size(); ++k) {
        lr.factorization.emplace_back(
            ff[k][0].as_uint(~0ull),
            static_cast<unsigned>(ff[k][1].as_uint()));
      }
      if (l.has("error")) {
        lr.error = l["error"].as_string();
      }
      r.levels.push_back(std::move(lr));
    }
    return r;
  }

  Json parse_json_text(std::string const& text) {
    try {
      return Json::parse(text);
    } catch (Json::parse_error const& e) {
      throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
    }
  }

  std::string dump(Json const& doc) {
    return doc.dump(1, ' ') + "\n";
  }

}  // namespace coarsetiler
