#ifndef FGCERT_COVERS_HPP
#define FGCERT_COVERS_HPP

#include <vector>

#include "fgcert/words.hpp"

namespace fgcert {

/// A permutation of {0, ..., d-1} stored as its image table.
using Permutation = std::vector<int>;

Permutation identity_permutation(int d);
Permutation inverse_permutation(const Permutation& p);
/// Left-to-right composition: result(v) = q(p(v)), i.e. apply p first.
Permutation compose(const Permutation& p, const Permutation& q);
long long permutation_order(const Permutation& p);

/// A finite connected cover of the rank-r rose, encoded by one vertex
/// permutation per generator. Crossing generator i forward from vertex v
/// lands on perm(i)[v]; the basepoint is vertex 0. The cover determines the
/// index-d subgroup of words whose path from the basepoint closes up.
///
/// Immutable after construction; the constructor validates that every table
/// is a bijection and that the graph is connected.
class CoverGraph {
public:
  CoverGraph(int rank, std::vector<Permutation> perms);

  static CoverGraph rose(int rank);

  int rank() const { return rank_; }
  int degree() const { return degree_; }
  const Permutation& perm(int gen) const { return perms_[gen]; }
  const Permutation& inv_perm(int gen) const { return inv_perms_[gen]; }
  const std::vector<Permutation>& perms() const { return perms_; }

  /// Endpoint of the lift of w starting at v (letters applied left to
  /// right).
  int act(int v, const Word& w) const;
  int act_letter(int v, int letter) const;

  /// Membership of w in the cover's subgroup: the lift at the basepoint
  /// closes up.
  bool contains(const Word& w) const;

  /// Minimal n >= 1 with w^n in the subgroup, i.e. the basepoint cycle
  /// length of the permutation induced by w.
  int degree_of(const Word& w) const;

  /// The permutation v -> act(v, w).
  Permutation induced_permutation(const Word& w) const;

  /// Spanning-tree coset representatives: rep[v] is the tree path word from
  /// the basepoint to v, produced by a breadth-first search that scans each
  /// vertex's edges by generator index, forward direction before backward.
  /// rep[0] is empty and act(0, rep[v]) = v.
  std::vector<Word> coset_reps() const;

  /// True iff the subgroup is normal: every Schreier generator of the
  /// basepoint stabilizer induces the identity permutation, which makes the
  /// stabilizer equal the kernel of the action.
  bool is_normal() const;

  bool operator==(const CoverGraph& other) const {
    return rank_ == other.rank_ && degree_ == other.degree_ &&
           perms_ == other.perms_;
  }

private:
  int rank_;
  int degree_;
  std::vector<Permutation> perms_;
  std::vector<Permutation> inv_perms_;
};

/// Spanning tree data shared by coset_reps and the homology basis.
struct SpanningTree {
  std::vector<Word> reps;
  /// Tree edges in forward form (source vertex, generator index).
  std::vector<std::pair<int, int>> edges;
};

SpanningTree spanning_tree(const CoverGraph& c);

/// Cover of degree |w| in which the lift of the cyclically reduced word w
/// at the basepoint is an embedded cycle through every vertex. The letters
/// of w trace a vertex cycle 0 -> 1 -> ... -> |w|-1 -> 0; each generator's
/// partial injection is then completed by matching unmatched sources to
/// unmatched targets in ascending vertex order.
CoverGraph marshall_hall_cover(const Word& w);

/// Basepoint component of the fiber product; its subgroup is the
/// intersection of the two inputs' subgroups. Vertices are relabelled in
/// breadth-first discovery order so the result is canonical.
CoverGraph intersect(const CoverGraph& c1, const CoverGraph& c2);

/// Relabels vertices in breadth-first discovery order. Two based covers
/// are isomorphic exactly when their canonical forms are equal.
CoverGraph canonical_form(const CoverGraph& c);

/// The regular cover of the kernel of the action homomorphism: vertices are
/// the elements of the permutation group generated by the edge
/// permutations, acted on by right multiplication. Throws ClosureTooLarge
/// if the group order exceeds max_order.
CoverGraph regular_closure(const CoverGraph& c, int max_order = 10000);

/// One coset representative word per orbit of the coset translation action
/// of the centralizer of b (the cyclic group generated by its primitive
/// root) on the vertices of a normal cover. Evaluating a homology
/// functional on (b^n)^rep over these representatives covers every
/// conjugate (b^n)^g, g in the ambient free group. Orbit representatives
/// are the least vertex of each orbit, listed in increasing order.
std::vector<Word> double_coset_reps(const CoverGraph& c, const Word& b);

/// Vertex orbits behind double_coset_reps, least vertex first in each.
std::vector<std::vector<int>> centralizer_orbits(const CoverGraph& c,
                                                 const Word& b);

/// The lift of base^degree at `vertex`, where degree is the vertex's cycle
/// length under the permutation induced by base. rep_conjugator is the
/// tree-path conjugator h with conjugate(base^degree, h) in the basepoint
/// subgroup (the inverse of the tree path to `vertex`).
struct Elevation {
  Word base;
  int vertex;
  int degree;
  Word rep_conjugator;
};

Elevation elevation_at(const CoverGraph& c, const Word& base, int vertex);

} // namespace fgcert

#endif
