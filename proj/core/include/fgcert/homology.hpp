#ifndef FGCERT_HOMOLOGY_HPP
#define FGCERT_HOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgcert/covers.hpp"

namespace fgcert {

using ClassVector = std::vector<long long>;
using Functional = std::vector<long long>;

/// Integer first homology of a cover graph, with the basis fixed as the
/// non-tree edges of the breadth-first spanning tree, sorted by
/// (vertex, generator). The basis is reconstructible from the cover alone,
/// so serialized functionals are unambiguous.
class HomologyBasis {
public:
  explicit HomologyBasis(CoverGraph cover);

  const CoverGraph& cover() const { return cover_; }
  const std::vector<Word>& reps() const { return tree_.reps; }
  const std::vector<std::pair<int, int>>& tree_edges() const {
    return tree_.edges;
  }
  const std::vector<std::pair<int, int>>& basis_edges() const {
    return basis_edges_;
  }
  int betti() const { return static_cast<int>(basis_edges_.size()); }

  /// Signed non-tree edge crossing counts of the lift of `w` starting at
  /// `start`; the lift must close up.
  ClassVector class_of_loop(int start, const Word& w) const;

  /// Homology class of a subgroup element, traced from the basepoint.
  ClassVector class_of(const Word& w) const { return class_of_loop(0, w); }

  ClassVector class_of(const Elevation& e) const;

private:
  CoverGraph cover_;
  SpanningTree tree_;
  std::vector<std::pair<int, int>> basis_edges_;
  /// (vertex, generator) -> basis index, -1 for tree edges.
  std::vector<int> edge_index_;
};

/// Integer covector phi with phi.target = 1 and phi.k = 0 for every k in
/// `kill`, or nullopt when no such covector exists over the integers.
/// Solvability is decided by diagonalizing the stacked matrix with
/// unimodular row and column operations (columns scanned in basis order),
/// and the returned solution is the deterministic back-substitution one.
std::optional<Functional> find_functional(const ClassVector& target,
                                          const std::vector<ClassVector>& kill);

struct WeakConstraint {
  ClassVector cls;
  long long m;
  long long n;
};

/// Integer covector phi with phi.target = 1 and m*(phi.cls) != n for every
/// constraint. Tries the all-kill solution first, then perturbs along the
/// null-space generators with coefficients of increasing absolute value up
/// to `bound`.
std::optional<Functional>
find_functional_weak(const ClassVector& target,
                     const std::vector<WeakConstraint>& constraints,
                     int bound = 5);

/// Degree-p cover of the rose with vertex set Z/p on which generator i acts
/// by adding residues[i]; a word lies in the subgroup exactly when its
/// abelianization pairs to zero with the residues mod p.
CoverGraph cyclic_cover(int rank, const std::vector<long long>& residues,
                        long long p);

struct SearchCaps {
  int max_index = 10000;
  int max_prime = 13;
  int max_rounds = 50;
  int weak_bound = 5;
  int jobs = 1;
};

/// Reported when the cover refinement search hits its caps.
class SearchExhausted : public Error {
public:
  using Error::Error;
};

class NotIndependent : public Error {
public:
  NotIndependent(std::string what, std::size_t i, std::size_t j)
      : Error(std::move(what)), pair(i, j) {}
  std::pair<std::size_t, std::size_t> pair;
};

struct SearchResult {
  CoverGraph cover;
  Functional functional;
  bool weak = false;
  /// Degree of `a` in the found cover and the value phi(class of a^m).
  int m = 0;
  /// Degree of each b and the functional values over the centralizer-orbit
  /// representatives (integers, not reduced mod anything).
  std::vector<int> degrees;
  std::vector<std::vector<long long>> values;
  int rounds = 0;
};

/// Finds a normal cover and a retraction functional for `a` against the
/// words `bs`: phi pairs to 1 with the class of a^m at the basepoint and,
/// in strong mode, to 0 with every class of every lift of every b (all
/// vertices, hence all ambient conjugates). With allow_weak, falls back to
/// the inequality form m*phi(class((b^n)^g)) != n.
///
/// The search starts from the regular closure of the cover in which the
/// cyclic form of `a` embeds, after first trying the rose, and refines by
/// intersecting with mod-p cyclic covers whose defining map kills the
/// abelianization of `a` but not that of an obstructing b, and with covers
/// embedding the obstructing b, renormalizing after each step.
///
/// When `start` is given (a normal cover), the search begins there instead
/// of the rose and only refines downward.
SearchResult independence_search(const Word& a, std::span<const Word> bs,
                                 const SearchCaps& caps, bool allow_weak,
                                 const CoverGraph* start = nullptr);

} // namespace fgcert

#endif
