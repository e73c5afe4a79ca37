#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepstab/normal_form.hpp"
#include "sepstab/presentation.hpp"

namespace sepstab {

// ---------------------------------------------------------------------------
// Classical (handlebody) side: cyclic words over a free basis, letter ids
// 2k + (inverted ? 1 : 0) for basis letter k.

using FreeWord = std::vector<int>;

inline int free_inv(int id) { return id ^ 1; }
FreeWord free_cyclic_reduce(FreeWord w);
// least over rotations of w and w^-1; the dedup key for cyclic words
FreeWord free_cyclic_canonical(const FreeWord& w);

FreeWord to_free_word(const Presentation& p, const CyclicClass& g);
CyclicClass from_free_word(const Presentation& p, const FreeWord& w);

struct WhiteheadGraph {
  int rank = 0;  // 2*rank vertices
  std::vector<std::pair<int, int>> edges;  // unordered vertex-id pairs

  int degree(int v) const;
};

// the letter-adjacency graph of the cyclic word
WhiteheadGraph whitehead_graph(const Presentation& p, const CyclicClass& g);
WhiteheadGraph whitehead_graph_of(int rank, const FreeWord& w);

// connectivity restricted to vertices with at least one incident edge
bool is_connected(const WhiteheadGraph& g);
std::vector<int> cut_vertices(const WhiteheadGraph& g);
std::vector<int> isolated_vertices(const WhiteheadGraph& g);

// A Whitehead automorphism of the free part, or a Fouxe-Rabinovitch
// conjugation of a whole factor (used by the free-product enlargement).
struct WhiteheadMove {
  enum class Kind { Permutation, Multiplier, FactorConjugation };
  Kind kind = Kind::Permutation;
  // Permutation: image[id] for every letter id (a signed permutation).
  std::vector<int> image;
  // Multiplier: multiplier letter a and the set A (letter-id membership,
  // a in A, a^-1 not in A).
  int multiplier = 0;
  std::vector<bool> set;
  // FactorConjugation: conjugate all of `factor` by the letter `conjugator`.
  int factor = 0;
  Letter conjugator;

  std::string describe(const Presentation& p) const;
};

FreeWord apply_move(const WhiteheadMove& m, const FreeWord& w);
// permutation generators (inversions + transpositions) and all multiplier moves
std::vector<WhiteheadMove> whitehead_generators(int rank);

struct MinimizeResult {
  CyclicClass minimal;
  std::vector<WhiteheadMove> moves;
};

// Greedy strict descent to the minimal Aut-orbit length (peak reduction
// makes this reach the global minimum).
MinimizeResult minimize(const Presentation& p, const CyclicClass& g);

struct SeparabilityCertificate {
  bool separable = false;
  // separable: a minimal-level representative omitting a basis letter
  std::optional<CyclicClass> witness;
  std::vector<WhiteheadMove> moves;
  // not separable: how much of the minimal level set was explored
  std::size_t level_set_explored = 0;
};

// Decides membership in a proper free factor by exploring the minimal level
// set of the Whitehead orbit.  Throws UndeterminedError past `budget` nodes.
SeparabilityCertificate is_separable_free(const Presentation& p, const CyclicClass& g,
                                          std::size_t budget = 1'000'000);

// ---------------------------------------------------------------------------
// Labeled (compression-body) side.

// Sides of the disc system: one pair per handle letter, plus one pair per
// separating disc between the first surface piece and each further one.
struct DiscSide {
  enum class Kind { Handle, Separating };
  Kind kind = Kind::Handle;
  int disc = 0;    // handle index or separating-disc target piece
  bool plus = false;

  friend bool operator==(const DiscSide&, const DiscSide&) = default;
};

struct LabeledEdge {
  int from = 0;  // vertex index
  int to = 0;
  int piece = 0;                 // surface factor owning the label
  SurfaceGroup::FWord label;     // read from->to; reversed traversal inverts
};

struct LabeledWhiteheadGraph {
  std::vector<DiscSide> vertices;
  std::vector<LabeledEdge> edges;
  std::vector<int> piece_of_vertex;
  // a closed curve crossing a disc re-enters through the opposite side: the
  // two sides of a handle disc are identified when composing cycle labels
  std::vector<int> cycle_vertex;   // vertex index -> quotient id
  int cycle_vertex_count = 0;
  bool no_crossings = false;       // w lies in a complementary piece
  std::string note;

  int vertex_index(DiscSide s) const;
};

LabeledWhiteheadGraph labeled_whitehead_graph(const Presentation& p, const CyclicClass& g);

struct StrongConnectivityReport {
  // one entry per connected component of the quotient graph (isolated
  // vertices included; an edgeless component is not strongly connected)
  struct Component {
    std::vector<int> cycle_vertices;
    std::vector<int> edge_indices;
    bool strongly_connected = false;
  };
  std::vector<Component> components;
  bool all_strongly_connected() const;
};

StrongConnectivityReport strong_connectivity(const Presentation& p,
                                             const LabeledWhiteheadGraph& g);

// A quotient vertex witnessing a two-sided decomposition with a
// non-strongly-connected side, if one exists.  Throws UndeterminedError when
// the partition search exceeds its budget (2^16 partitions per vertex).
std::optional<int> has_strong_cutpoint(const Presentation& p, const LabeledWhiteheadGraph& g);

// apply per-cycle-vertex potentials h: label(u,v) -> h_u * label * h_v^-1
LabeledWhiteheadGraph relabel(const LabeledWhiteheadGraph& g,
                              const std::vector<SurfaceGroup::FWord>& potentials);

enum class LabeledClassification {
  NotSeparableCertified,
  ConsistentWithSeparable,
};

LabeledClassification classify_labeled(const Presentation& p, const CyclicClass& g);

}  // namespace sepstab
