#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "sepstab/scan.hpp"
#include "sepstab/whitehead.hpp"

using namespace sepstab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string side_name(const DiscSide& s) {
  std::string base = s.kind == DiscSide::Kind::Handle ? "T" + std::to_string(s.disc + 1)
                                                      : "D" + std::to_string(s.disc);
  return base + (s.plus ? "+" : "-");
}

std::string label_text(const Presentation& p, const LabeledEdge& e) {
  if (e.label.empty()) return "1";
  GroupWord w;
  for (auto c : e.label) w.push_back(Letter((std::uint16_t)e.piece, (std::uint16_t)(c / 2), c & 1));
  return p.word_to_string(w);
}

int cmd_scan(const std::string& config_path) {
  ScanConfig cfg = ScanConfig::from_json(read_file(config_path));
  ScanResult res = run_scan(cfg);
  write_scan_outputs(cfg, res);
  std::cout << metadata_json(cfg, res) << "\n";
  bool undetermined_only = res.verdict_counts[3] == res.records.size();
  return undetermined_only ? 3 : 0;
}

int cmd_certify(const std::string& pres_path, const std::string& rep_path, int depth,
                const NestingParams& params, double tol, int enlargement, double advisory) {
  Presentation p = Presentation::from_json(read_file(pres_path));
  Representation rep = Representation::from_json(p, read_file(rep_path));
  for (const std::string& w : rep.warnings()) std::cerr << "warning: " << w << "\n";
  StabilityVerdict v = certify(rep, p, depth, params, tol, enlargement, advisory);
  std::cout << v.to_json(p) << "\n";
  return v.kind == VerdictKind::Undetermined ? 3 : 0;
}

int cmd_whitehead(const std::string& pres_path, const std::string& word, bool dot) {
  Presentation p = Presentation::from_json(read_file(pres_path));
  CyclicClass g = cyclic_class(p, p.parse_word(word));

  if (p.shape() == Shape::Handlebody) {
    WhiteheadGraph wg = whitehead_graph(p, g);
    if (dot) {
      std::cout << "graph whitehead {\n";
      for (int v = 0; v < 2 * wg.rank; ++v)
        std::cout << "  v" << v << " [label=\"" << p.letter_name(p.letter_from_id(v)) << "\"];\n";
      for (auto [u, v] : wg.edges) std::cout << "  v" << u << " -- v" << v << ";\n";
      std::cout << "}\n";
      return 0;
    }
    std::cout << "class: " << p.word_to_string(g.word()) << "\n";
    std::cout << "vertices:";
    for (int v = 0; v < 2 * wg.rank; ++v)
      std::cout << " " << p.letter_name(p.letter_from_id(v));
    std::cout << "\nedges:\n";
    for (auto [u, v] : wg.edges)
      std::cout << "  " << p.letter_name(p.letter_from_id(u)) << " -- "
                << p.letter_name(p.letter_from_id(v)) << "\n";
    std::cout << "connected: " << (is_connected(wg) ? "yes" : "no") << "\n";
    std::cout << "cut_vertices: " << cut_vertices(wg).size() << "\n";
    SeparabilityCertificate cert = is_separable_free(p, g);
    std::cout << "separable: " << (cert.separable ? "yes" : "no") << "\n";
    if (cert.witness)
      std::cout << "witness: " << p.word_to_string(cert.witness->word()) << "\n";
    return 0;
  }

  LabeledWhiteheadGraph lg = labeled_whitehead_graph(p, g);
  if (dot) {
    std::cout << "digraph labeled_whitehead {\n";
    for (size_t v = 0; v < lg.vertices.size(); ++v)
      std::cout << "  v" << v << " [label=\"" << side_name(lg.vertices[v]) << "\"];\n";
    for (const LabeledEdge& e : lg.edges)
      std::cout << "  v" << e.from << " -> v" << e.to << " [label=\"" << label_text(p, e)
                << "\"];\n";
    std::cout << "}\n";
    return 0;
  }
  std::cout << "class: " << p.word_to_string(g.word()) << "\n";
  std::cout << "vertices:";
  for (const DiscSide& s : lg.vertices) std::cout << " " << side_name(s);
  std::cout << "\nedges:\n";
  for (const LabeledEdge& e : lg.edges)
    std::cout << "  " << side_name(lg.vertices[e.from]) << " -> " << side_name(lg.vertices[e.to])
              << "  [piece " << e.piece << ", label " << label_text(p, e) << "]\n";
  StrongConnectivityReport rep = strong_connectivity(p, lg);
  std::cout << "components:\n";
  for (const auto& c : rep.components)
    std::cout << "  size " << c.cycle_vertices.size() << ", edges " << c.edge_indices.size()
              << ", strongly_connected " << (c.strongly_connected ? "yes" : "no") << "\n";
  std::cout << "all_strongly_connected: " << (rep.all_strongly_connected() ? "yes" : "no")
            << "\n";
  auto cut = has_strong_cutpoint(p, lg);
  std::cout << "strong_cutpoint: " << (cut ? std::to_string(*cut) : std::string("none")) << "\n";
  LabeledClassification cls = classify_labeled(p, g);
  std::cout << "classification: "
            << (cls == LabeledClassification::NotSeparableCertified ? "NOT_SEPARABLE_CERTIFIED"
                                                                    : "CONSISTENT_WITH_SEPARABLE")
            << "\n";
  return 0;
}

int cmd_separable(const std::string& pres_path, int max_length, int enlargement) {
  Presentation p = Presentation::from_json(read_file(pres_path));
  for (const CyclicClass& g : enumerate_separable_classes(p, max_length, enlargement))
    std::cout << p.word_to_string(g.word()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-depth separable-stability certificates for compression-body groups"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* scan = app.add_subcommand("scan", "run a character-variety slice scan");
  scan->add_option("config", config_path, "scan config JSON file")->required();

  std::string pres_path, rep_path, word;
  int depth = 4, enlargement = 0, max_length = 4;
  NestingParams params;
  double tol = 1e-10;
  bool dot = false;

  CLI::App* certify = app.add_subcommand("certify", "certify one representation");
  certify->add_option("presentation", pres_path, "presentation JSON file")->required();
  certify->add_option("representation", rep_path, "representation JSON file")->required();
  certify->add_option("--depth", depth, "test-set depth N");
  certify->add_option("--stride", params.stride, "orbit subsample step");
  certify->add_option("--spacing", params.spacing, "required plane gap");
  certify->add_option("--reps", params.reps, "periods laid out per class");
  certify->add_option("--tol", tol, "isometry classification tolerance");
  certify->add_option("--enlargement", enlargement, "enlargement rounds");
  double advisory = 0.05;
  certify->add_option("--advisory", advisory, "advisory min_ratio floor (reported only)");

  CLI::App* whitehead = app.add_subcommand("whitehead", "print the Whitehead graph of a class");
  whitehead->add_option("presentation", pres_path, "presentation JSON file")->required();
  whitehead->add_option("word", word, "cyclic word")->required();
  whitehead->add_flag("--dot", dot, "emit Graphviz DOT text");

  CLI::App* separable = app.add_subcommand("separable", "enumerate separable classes");
  separable->add_option("presentation", pres_path, "presentation JSON file")->required();
  separable->add_option("--max-length", max_length, "class length bound")->required();
  separable->add_option("--enlargement", enlargement, "enlargement rounds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed()) return cmd_scan(config_path);
    if (certify->parsed())
      return cmd_certify(pres_path, rep_path, depth, params, tol, enlargement, advisory);
    if (whitehead->parsed()) return cmd_whitehead(pres_path, word, dot);
    if (separable->parsed()) return cmd_separable(pres_path, max_length, enlargement);
  } catch (const UndeterminedError& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
