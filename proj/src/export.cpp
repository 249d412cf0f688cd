#include "coarsetiler/export.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace coarsetiler {

  namespace {
    std::string quoted(std::string const& s) {
      std::string out = "\"";
      for (char ch : s) {
        if (ch == '"' || ch == '\\') {
          out += '\\';
        }
        out += ch;
      }
      return out + "\"";
    }

    std::string xml_escape(std::string const& s) {
      std::string out;
      for (char ch : s) {
        switch (ch) {
          case '<':
            out += "&lt;";
            break;
          case '>':
            out += "&gt;";
            break;
          case '&':
            out += "&amp;";
            break;
          case '"':
            out += "&quot;";
            break;
          default:
            out += ch;
        }
      }
      return out;
    }

    // Fixed precision keeps the output byte-stable across platforms.
    std::string num(double x) {
      std::ostringstream os;
      os.setf(std::ios::fixed);
      os.precision(2);
      os << (std::abs(x) < 0.005 ? 0.0 : x);
      return os.str();
    }
  }  // namespace

  std::string ball_to_dot(CayleyBall const& ball, AutomatonSpec const& spec) {
    std::ostringstream os;
    os << "digraph ball {\n";
    os << "  graph [rankdir=TB];\n";
    os << "  node [shape=circle, fontsize=10];\n";
    std::map<std::uint32_t, std::vector<Vertex>> by_distance;
    for (Vertex v = 0; v < ball.vertex_count(); ++v) {
      auto word = spec.format(ball.words()[v]);
      os << "  " << v << " [label=" << quoted(word.empty() ? "e" : word);
      if (ball.in_sphere(v)) {
        os << ", style=dashed";
      }
      os << "];\n";
      by_distance[ball.distance(v)].push_back(v);
    }
    for (auto const& [d, vs] : by_distance) {
      os << "  { rank=same;";
      for (auto v : vs) {
        os << " " << v << ";";
      }
      os << " }  // distance " << d << "\n";
    }
    auto const& names = ball.genset().names;
    for (auto const& e : ball.edges()) {
      os << "  " << e.tail << " -> " << e.head
         << " [label=" << quoted(names[e.label]) << "];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string patch_to_dot(PatchTiling const& patch) {
    auto const bad = matching_violations(patch);
    auto const& names = patch.graph.genset().names;
    std::ostringstream os;
    os << "digraph patch {\n";
    os << "  node [shape=box, fontsize=10];\n";
    for (Vertex v = 0; v < patch.graph.vertex_count(); ++v) {
      if (!patch.assignment[v]) {
        continue;
      }
      os << "  " << v << " [label=\"" << v << ": T" << *patch.assignment[v]
         << "\"" << (patch.interior[v] ? "" : ", style=dashed") << "];\n";
    }
    for (EdgeIndex e = 0; e < patch.graph.edge_count(); ++e) {
      if (!patch.has_edge(e)) {
        continue;
      }
      auto const& ed = patch.graph.edge(e);
      os << "  " << ed.tail << " -> " << ed.head
         << " [label=" << quoted(names[ed.label]);
      if (std::binary_search(bad.begin(), bad.end(), e)) {
        os << ", color=red";
      }
      os << "];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string tileset_to_svg(TileSet const& tiles) {
    constexpr double cell    = 140.0;
    constexpr double radius  = 45.0;
    constexpr int    columns = 8;
    auto const       sides   = std::max<std::size_t>(tiles.genset.size(), 3);
    auto const       count   = tiles.types.size();
    auto const       rows    = (count + columns - 1) / columns;
    double const     width   = cell * std::min<std::size_t>(count, columns);
    double const     height  = cell * std::max<std::size_t>(rows, 1);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
       << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
       << " " << num(height) << "\">\n";
    os << "<style>text{font-family:monospace;font-size:10px}</style>\n";

    double const pi = std::numbers::pi;
    for (std::size_t i = 0; i < count; ++i) {
      double const cx = cell * (i % columns) + cell / 2;
      double const cy = cell * (i / columns) + cell / 2;
      // Corner k at angle -135deg + k * 360/sides, so a square sits upright.
      auto corner = [&](std::size_t k) {
        double a = -3 * pi / 4 + 2 * pi * static_cast<double>(k % sides)
                                     / static_cast<double>(sides);
        return std::pair{cx + radius * std::cos(a), cy + radius * std::sin(a)};
      };
      os << "<g id=\"type" << i << "\">\n";
      std::ostringstream path;
      path << "M " << num(corner(0).first) << " " << num(corner(0).second);
      for (std::size_t s = 0; s < sides; ++s) {
        auto [x0, y0] = corner(s);
        auto [x1, y1] = corner(s + 1);
        double const dx = x1 - x0, dy = y1 - y0;
        double const len = std::hypot(dx, dy);
        // Outward normal for a clockwise (screen) polygon.
        double const nx = dy / len, ny = -dx / len;
        FaceProfile const* face
            = s < tiles.types[i].faces.size() ? &tiles.types[i].faces[s]
                                              : nullptr;
        if (face && face->is_known() && face->count > 0) {
          double const k    = face->count;
          double const w    = std::min(len / (2 * k + 1), 10.0);
          double const h    = face->polarity == Polarity::dent ? -w : w;
          double const span = w * k;
          double const t0   = (len - span) / 2;
          for (std::size_t b = 0; b < face->count; ++b) {
            double const a0 = t0 + w * b;
            double const am = a0 + w / 2;
            double const a1 = a0 + w;
            path << " L " << num(x0 + dx * a0 / len) << " "
                 << num(y0 + dy * a0 / len);
            path << " L " << num(x0 + dx * am / len + nx * h) << " "
                 << num(y0 + dy * am / len + ny * h);
            path << " L " << num(x0 + dx * a1 / len) << " "
                 << num(y0 + dy * a1 / len);
          }
        }
        path << " L " << num(x1) << " " << num(y1);
        if (s < tiles.genset.size()) {
          double const mx = (x0 + x1) / 2 - nx * 10;
          double const my = (y0 + y1) / 2 - ny * 10;
          os << "<text x=\"" << num(mx) << "\" y=\"" << num(my)
             << "\" text-anchor=\"middle\">"
             << xml_escape(tiles.genset.names[s]) << "</text>\n";
        }
      }
      path << " Z";
      os << "<path d=\"" << path.str()
         << "\" fill=\"#eef\" stroke=\"#225\" stroke-width=\"1.5\"/>\n";
      os << "<text x=\"" << num(cx) << "\" y=\"" << num(cy + radius + 22)
         << "\" text-anchor=\"middle\">T" << i << "</text>\n";
      os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
  }

}  // namespace coarsetiler
