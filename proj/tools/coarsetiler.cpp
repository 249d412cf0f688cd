// coarsetiler command-line tool. Everything goes through the C interface.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coarsetiler/coarsetiler.h"

namespace fs = std::filesystem;

namespace {

  // Exit codes: 0 success, 1 the checked property does not hold, 2 error.
  constexpr int kExitCheckFailed = 1;
  constexpr int kExitError       = 2;

  struct Failure {
    std::string message;
  };

  void check(ct_status status) {
    if (status != CT_OK) {
      throw Failure{ct_last_error()};
    }
  }

  struct StringDeleter {
    void operator()(char* s) const {
      ct_string_free(s);
    }
  };
  using CString = std::unique_ptr<char, StringDeleter>;

  template <typename F>
  std::string take(F&& producer) {
    char* raw = nullptr;
    check(producer(&raw));
    CString owned(raw);
    return std::string(owned.get());
  }

  template <typename T, void (*Free)(T*)>
  struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    Handle(Handle const&) = delete;
    Handle& operator=(Handle const&) = delete;
    ~Handle() {
      Free(ptr);
    }
    T** out() {
      return &ptr;
    }
    T* get() const {
      return ptr;
    }
  };

  using Group    = Handle<ct_group, ct_group_free>;
  using Ball     = Handle<ct_ball, ct_ball_free>;
  using ToyGraph = Handle<ct_graph, ct_graph_free>;
  using Solution = Handle<ct_solution, ct_solution_free>;
  using Patch    = Handle<ct_patch, ct_patch_free>;

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Failure{"cannot read '" + path + "'"};
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  struct Options {
    std::string group;
    std::string spec;
    std::string toy;
    std::size_t radius = 0;
    std::uint32_t p    = 3;
    std::string target = "ones";
    std::string levels = "1..3";
    std::string out;
    std::string patch;
    std::string format = "text";
    bool        dot    = false;
    ct_caps     caps   = ct_caps_default();
  };

  void load_group(Options const& o, Group& g) {
    if (!o.spec.empty()) {
      check(ct_group_parse(read_file(o.spec).c_str(), g.out()));
    } else if (!o.group.empty()) {
      check(ct_group_preset(o.group.c_str(), g.out()));
    } else {
      throw Failure{"one of --group or --spec is required"};
    }
  }

  // Writes to DIR/name when --out is given, otherwise to stdout.
  void emit(Options const& o, std::string const& name, std::string const& text) {
    if (o.out.empty()) {
      std::cout << text;
      return;
    }
    fs::create_directories(o.out);
    auto const path = fs::path(o.out) / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
      throw Failure{"cannot write '" + path.string() + "'"};
    }
    std::cerr << "wrote " << path.string() << "\n";
  }

  std::string read_target(std::string const& target) {
    if (target == "ones" || target == "zero") {
      return target;
    }
    return read_file(target);
  }

  std::pair<std::size_t, std::size_t> parse_levels(std::string const& text) {
    auto const dots = text.find("..");
    try {
      if (dots == std::string::npos) {
        auto n = std::stoul(text);
        return {n, n};
      }
      return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
    } catch (std::exception const&) {
      throw Failure{"--levels expects A..B, got '" + text + "'"};
    }
  }

  int cmd_ball(Options const& o) {
    Group g;
    load_group(o, g);
    Ball b;
    check(ct_ball_build(g.get(), o.radius, &o.caps, b.out()));
    emit(o, "ball.json",
         take([&](char** s) { return ct_ball_dump(b.get(), s); }));
    if (o.dot) {
      emit(o, "ball.dot", take([&](char** s) { return ct_ball_dot(b.get(), s); }));
    }
    return 0;
  }

  int cmd_solve(Options const& o) {
    Solution sol;
    auto const target = read_target(o.target);
    if (!o.toy.empty()) {
      ToyGraph tg;
      check(ct_graph_parse(read_file(o.toy).c_str(), tg.out()));
      check(ct_solve_graph(tg.get(), o.p, target.c_str(), sol.out()));
    } else {
      Group g;
      load_group(o, g);
      Ball b;
      check(ct_ball_build(g.get(), o.radius, &o.caps, b.out()));
      check(ct_solve_ball(b.get(), o.p, target.c_str(), &o.caps, sol.out()));
    }
    auto const chain = take([&](char** s) { return ct_solution_chain(sol.get(), s); });
    auto const res
        = take([&](char** s) { return ct_solution_residual(sol.get(), s); });
    if (o.out.empty()) {
      std::cout << "{\"psi\": " << chain << ", \"residual\": " << res << "}\n";
    } else {
      emit(o, "psi.json", chain);
      emit(o, "residual.json", res);
    }
    bool const ok = ct_solution_residual_on_boundary(sol.get()) != 0;
    std::cerr << "residual: " << ct_solution_residual_size(sol.get())
              << " vertices, " << (ok ? "all" : "not all")
              << " on the boundary\n";
    return ok ? 0 : kExitCheckFailed;
  }

  int cmd_tiles(Options const& o) {
    Patch patch;
    if (!o.toy.empty()) {
      ToyGraph tg;
      check(ct_graph_parse(read_file(o.toy).c_str(), tg.out()));
      Solution sol;
      check(ct_solve_graph(tg.get(), o.p, read_target(o.target).c_str(),
                           sol.out()));
      check(ct_patch_from_solution(sol.get(), patch.out()));
    } else {
      Group g;
      load_group(o, g);
      Ball b;
      check(ct_ball_build(g.get(), o.radius, &o.caps, b.out()));
      check(ct_patch_from_ball(b.get(), o.p, &o.caps, patch.out()));
    }
    emit(o, "tileset.json",
         take([&](char** s) { return ct_patch_tileset_dump(patch.get(), s); }));
    if (!o.out.empty()) {
      emit(o, "patch.json",
           take([&](char** s) { return ct_patch_dump(patch.get(), s); }));
      emit(o, "tiles.svg",
           take([&](char** s) { return ct_patch_svg(patch.get(), s); }));
    }
    std::cerr << ct_patch_type_count(patch.get()) << " tile types (bound "
              << ct_patch_alphabet_bound(patch.get()) << ")\n";
    return 0;
  }

  int cmd_verify(Options const& o, std::optional<std::uint32_t> p) {
    Patch patch;
    check(ct_patch_parse(read_file(o.patch).c_str(), patch.out()));
    int  ok     = 0;
    auto report = take([&](char** s) {
      return ct_patch_verify(patch.get(), p.value_or(0), &ok, s);
    });
    emit(o, "verification.json", report);
    std::cerr << (ok ? "OK" : "VIOLATIONS") << "\n";
    return ok ? 0 : kExitCheckFailed;
  }

  int cmd_certify(Options const& o) {
    Group g;
    load_group(o, g);
    auto const [first, last] = parse_levels(o.levels);
    ct_verdict verdict       = CT_VERDICT_FAIL;
    char*      json_raw      = nullptr;
    char*      text_raw      = nullptr;
    check(ct_certify(g.get(), o.p, first, last, &o.caps, &verdict, &json_raw,
                     &text_raw));
    CString json(json_raw), text(text_raw);
    if (!o.out.empty()) {
      emit(o, "certificate.json", json.get());
      emit(o, "certificate.txt", text.get());
    } else {
      std::cout << (o.format == "json" ? json.get() : text.get());
    }
    return verdict == CT_VERDICT_PASS ? 0 : kExitCheckFailed;
  }

  int cmd_export_dot(Options const& o) {
    if (!o.patch.empty()) {
      Patch patch;
      check(ct_patch_parse(read_file(o.patch).c_str(), patch.out()));
      emit(o, "patch.dot",
           take([&](char** s) { return ct_patch_dot(patch.get(), s); }));
      return 0;
    }
    Group g;
    load_group(o, g);
    Ball b;
    check(ct_ball_build(g.get(), o.radius, &o.caps, b.out()));
    emit(o, "ball.dot", take([&](char** s) { return ct_ball_dot(b.get(), s); }));
    return 0;
  }

  int cmd_dump_preset(Options const& o, std::string const& name) {
    Group g;
    check(ct_group_preset(name.c_str(), g.out()));
    emit(o, name + ".json",
         take([&](char** s) { return ct_group_dump(g.get(), s); }));
    return 0;
  }

  void add_group_options(CLI::App* cmd, Options& o) {
    auto* grp = cmd->add_option("--group", o.group,
                                "preset: grigorchuk or fabrykowski-gupta")
                    ->envname("COARSETILER_GROUP");
    auto* spc = cmd->add_option("--spec", o.spec, "automaton spec JSON file")
                    ->check(CLI::ExistingFile);
    grp->excludes(spc);
  }

  void add_radius(CLI::App* cmd, Options& o) {
    cmd->add_option("-r,--radius", o.radius, "ball radius")
        ->envname("COARSETILER_RADIUS");
  }

  void add_modulus(CLI::App* cmd, Options& o) {
    cmd->add_option("-p", o.p, "coefficient modulus")
        ->check(CLI::Range(2u, 0x7FFFFFFFu))
        ->envname("COARSETILER_P");
  }

  void add_caps(CLI::App* cmd, Options& o) {
    cmd->add_option("--cap-vertices", o.caps.vertices, "ball vertex cap")
        ->check(CLI::PositiveNumber)
        ->envname("COARSETILER_CAP_VERTICES");
    cmd->add_option("--cap-elements", o.caps.elements, "quotient element cap")
        ->check(CLI::PositiveNumber)
        ->envname("COARSETILER_CAP_ELEMENTS");
    cmd->add_option("--cap-leaves", o.caps.leaves, "tree level size cap")
        ->check(CLI::PositiveNumber)
        ->envname("COARSETILER_CAP_LEAVES");
    cmd->add_option("--collar", o.caps.collar,
                    "extra radius for classifying ball edges")
        ->envname("COARSETILER_COLLAR");
  }

  void add_out(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "output directory (default: stdout)")
        ->envname("COARSETILER_OUT");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aperiodic tile sets from automaton groups over Z_p"};
  app.set_version_flag("--version", std::string(ct_version()));
  app.require_subcommand(1);

  Options                      o;
  std::optional<std::uint32_t> verify_p;
  std::string                  preset_name;

  auto* ball = app.add_subcommand("ball", "build a Cayley ball");
  add_group_options(ball, o);
  add_radius(ball, o);
  add_caps(ball, o);
  add_out(ball, o);
  ball->add_flag("--dot", o.dot, "also write a DOT rendering");

  auto* solve = app.add_subcommand("solve", "solve d psi = c on a ball or toy graph");
  add_group_options(solve, o);
  solve->add_option("--toy", o.toy, "toy graph JSON file")
      ->check(CLI::ExistingFile);
  add_radius(solve, o);
  add_modulus(solve, o);
  solve->add_option("--c", o.target, "target 0-chain: ones, zero or a JSON file");
  add_caps(solve, o);
  add_out(solve, o);

  auto* tiles = app.add_subcommand("tiles", "derive the tile set of a ball");
  add_group_options(tiles, o);
  tiles->add_option("--toy", o.toy, "labelled toy graph JSON file")
      ->check(CLI::ExistingFile);
  add_radius(tiles, o);
  add_modulus(tiles, o);
  tiles->add_option("--c", o.target, "target for toy graphs: ones, zero or a file");
  add_caps(tiles, o);
  add_out(tiles, o);

  auto* verify = app.add_subcommand("verify", "check a patch tiling");
  verify->add_option("patch", o.patch, "patch JSON file")->required();
  verify->add_option("-p", verify_p, "modulus (default: the patch's own)")
      ->check(CLI::Range(2u, 0x7FFFFFFFu));
  add_out(verify, o);

  auto* certify = app.add_subcommand("certify", "aperiodicity certificate");
  add_group_options(certify, o);
  add_modulus(certify, o);
  certify->add_option("--levels", o.levels, "level range A..B")
      ->envname("COARSETILER_LEVELS");
  certify->add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"text", "json"}));
  add_caps(certify, o);
  add_out(certify, o);

  auto* export_dot = app.add_subcommand("export-dot", "DOT for a ball or patch");
  add_group_options(export_dot, o);
  add_radius(export_dot, o);
  export_dot->add_option("--patch", o.patch, "patch JSON file")
      ->check(CLI::ExistingFile);
  add_caps(export_dot, o);
  add_out(export_dot, o);

  auto* dump_preset = app.add_subcommand("dump-preset", "print a preset spec");
  dump_preset->add_option("name", preset_name, "preset name")->required();
  add_out(dump_preset, o);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*ball) {
      return cmd_ball(o);
    }
    if (*solve) {
      return cmd_solve(o);
    }
    if (*tiles) {
      return cmd_tiles(o);
    }
    if (*verify) {
      return cmd_verify(o, verify_p);
    }
    if (*certify) {
      return cmd_certify(o);
    }
    if (*export_dot) {
      return cmd_export_dot(o);
    }
    if (*dump_preset) {
      return cmd_dump_preset(o, preset_name);
    }
  } catch (Failure const& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitError;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
