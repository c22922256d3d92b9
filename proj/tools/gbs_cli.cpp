// Command-line front end for the gbs library.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gbs/factors.hpp"
#include "gbs/words.hpp"

namespace {

using namespace gbs;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Path> read_words(const Graph& g, const std::string& path) {
  std::vector<Path> out;
  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Path w = parse_word(g, line);
      if (w.start != g.basepoint() || g.end_of(w) != g.basepoint()) {
        throw ParseError("word is not a loop at the basepoint");
      }
      out.push_back(w);
    } catch (const ParseError& e) {
      throw ParseError(path + ": line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

struct Input {
  Graph graph;
  AllowedFamily allowed;
  std::vector<Path> words;
};

// Loads graph (and words), then applies the allowed-family mode.
Input load(const std::string& graph_path, const std::string& words_path,
           const std::string& mode) {
  GraphDocument doc = parse_graph(read_file(graph_path));
  Input in{doc.graph, doc.allowed, {}};
  if (!words_path.empty()) in.words = read_words(in.graph, words_path);
  if (mode == "default") {
    in.allowed = AllowedFamily(in.graph.vertex_count());
  } else if (mode == "amin") {
    auto seq = reduce_graph(in.graph, in.allowed);
    for (const auto& r : seq.moves) {
      for (auto& w : in.words) w = r.push(w);
    }
    in.graph = seq.graph;
    in.allowed = amin_sets(in.graph);
  }
  return in;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead algorithm for GBS groups"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string graph_path, words_path, output, mode = "file", vertex, dot, moves;
  int verbosity = 0;
  app.add_option("-o,--output", output, "Write the result here instead of stdout");
  app.add_flag("-v,--verbose", verbosity, "Diagnostics on stderr");

  auto with_graph = [&](CLI::App* c) {
    c->add_option("graph", graph_path, "Graph file (gbs v1)")->required();
  };
  auto with_words = [&](CLI::App* c) {
    c->add_option("words", words_path, "Words file, one loop per line")->required();
  };
  auto with_mode = [&](CLI::App* c) {
    c->add_option("--allowed", mode, "Allowed family: file, default or amin")
        ->check(CLI::IsMember({"file", "default", "amin"}));
  };

  auto* validate = app.add_subcommand("validate", "Parse and check invariants");
  with_graph(validate);
  auto* reduce = app.add_subcommand("reduce", "Collapse collapsible edges");
  with_graph(reduce);
  with_mode(reduce);
  auto* subdivide = app.add_subcommand("subdivide", "Subdivide loop edges");
  with_graph(subdivide);
  auto* tl = app.add_subcommand("tl", "Translation length of each word");
  with_graph(tl);
  with_words(tl);
  auto* wh = app.add_subcommand("whitehead", "Whitehead graph at a vertex");
  with_graph(wh);
  with_words(wh);
  with_mode(wh);
  wh->add_option("--vertex", vertex, "Vertex name")->required();
  wh->add_option("--dot", dot, "Also write DOT here");
  auto* cs = app.add_subcommand("check-simple", "Decide simplicity");
  with_graph(cs);
  with_words(cs);
  with_mode(cs);
  cs->add_option("--moves", moves, "Write the move log here");
  auto* mf = app.add_subcommand("minimal-factors", "Minimal special-factor system");
  with_graph(mf);
  with_words(mf);
  with_mode(mf);
  auto* cx = app.add_subcommand("complexity", "Complexity triple");
  with_graph(cx);

  CLI11_PARSE(app, argc, argv);

  try {
    Output out(output);
    std::ostream& os = out.stream();
    if (validate->parsed()) {
      Input in = load(graph_path, "", "file");
      os << "ok " << in.graph.vertex_count() << " vertices " << in.graph.edge_count()
         << " edges " << to_string(classify_elementary(in.graph)) << "\n";
    } else if (reduce->parsed()) {
      Input in = load(graph_path, "", mode);
      auto seq = reduce_graph(in.graph, in.allowed);
      os << serialize_graph(seq.graph, mode == "amin" ? amin_sets(seq.graph)
                                                      : seq.allowed);
    } else if (subdivide->parsed()) {
      Input in = load(graph_path, "", "file");
      auto doc = subdivide_loops(in.graph, in.allowed);
      os << serialize_graph(doc.graph, doc.allowed);
    } else if (tl->parsed()) {
      Input in = load(graph_path, words_path, "file");
      for (const auto& w : in.words) os << translation_length(in.graph, w) << "\n";
    } else if (wh->parsed()) {
      Input in = load(graph_path, words_path, mode);
      auto v = in.graph.find_vertex(vertex);
      if (!v) throw ParseError("unknown vertex '" + vertex + "'");
      auto w = whitehead_graph(in.graph, in.words, *v);
      auto cut = find_admissible_cut(w, in.allowed);
      os << "whitehead " << vertex << "\n";
      for (const auto& x : w.link.elements) {
        os << "node " << format_link_element(in.graph, x) << "\n";
      }
      for (auto [x, y] : w.edges) {
        os << "turn " << format_link_element(in.graph, w.link.elements[x]) << " "
           << format_link_element(in.graph, w.link.elements[y]) << "\n";
      }
      auto names = [&](const std::vector<int>& s) {
        std::string r;
        for (int x : s) {
          r += (r.empty() ? "" : ",") + format_link_element(in.graph, w.link.elements[x]);
        }
        return r;
      };
      if (!cut) {
        os << "cut none\n";
      } else if (cut->kind == AdmissibleCut::Kind::Component) {
        os << "cut component " << cut->stabilizer_index << " " << names(cut->component)
           << "\n";
      } else {
        os << "cut point "
           << format_link_element(in.graph, w.link.elements[cut->point]) << " "
           << names(cut->side) << "\n";
      }
      if (!dot.empty()) write_text(dot, to_dot(in.graph, w, cut));
    } else if (cs->parsed()) {
      Input in = load(graph_path, words_path, mode);
      // the move log records the marking; give unmarked graphs one
      if (!moves.empty() && in.graph.marking().empty()) {
        in.graph.set_marking(spanning_generators(in.graph));
      }
      auto r = check_simple(in.graph, in.allowed, in.words);
      os << serialize_result(in.graph, r);
      if (!moves.empty()) write_text(moves, serialize_moves(r.history));
      if (verbosity > 0) {
        std::cerr << "moves " << r.history.size() << " max edges " << r.max_edges
                  << "\n";
      }
    } else if (mf->parsed()) {
      Input in = load(graph_path, words_path, mode);
      auto r = minimal_factor_system(in.graph, in.allowed, in.words);
      os << serialize_system(in.graph, r.system);
      if (verbosity > 0) {
        for (const auto& e : r.recursion) {
          std::cerr << "recursion " << to_string(e.parent) << " -> "
                    << to_string(e.child) << "\n";
        }
      }
    } else if (cx->parsed()) {
      Input in = load(graph_path, "", "file");
      os << to_string(complexity(in.graph)) << "\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
