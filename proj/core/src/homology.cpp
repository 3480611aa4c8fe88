#include "fgcert/homology.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <future>
#include <limits>
#include <set>

namespace fgcert {

namespace {

using i128 = __int128;

constexpr i128 kEntryCap = i128(1) << 96;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

void check_entry(i128 x) {
  if (abs128(x) > kEntryCap)
    throw Overflow("integer elimination entries grew too large");
}

long long to_i64(i128 x) {
  if (x > std::numeric_limits<long long>::max() ||
      x < std::numeric_limits<long long>::min())
    throw Overflow("solution entry exceeds 64 bits");
  return static_cast<long long>(x);
}

/// Division rounding to nearest (ties toward zero), so remainders stay
/// within |b|/2 during elimination.
i128 rounded_div(i128 a, i128 b) {
  i128 q = a / b;
  i128 r = a - q * b;
  if (2 * abs128(r) > abs128(b))
    q += (a < 0) == (b < 0) ? 1 : -1;
  return q;
}

using Mat = std::vector<std::vector<i128>>;

struct Diagonalization {
  Mat u;       // rows x rows, unimodular
  Mat v;       // cols x cols, unimodular
  Mat d;       // u * a * v, nonzero only on the diagonal
  int rank = 0;
};

Mat identity_mat(std::size_t n) {
  Mat m(n, std::vector<i128>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

/// Unimodular diagonalization. Pivots are chosen as the least absolute
/// nonzero entry of the active submatrix (ties by row, then column), which
/// keeps growth in check and fixes the output deterministically.
Diagonalization diagonalize(Mat a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  Diagonalization out;
  out.u = identity_mat(rows);
  out.v = identity_mat(cols);
  std::size_t k = 0;
  while (k < rows && k < cols) {
    std::size_t pi = rows, pj = cols;
    i128 best = 0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (a[i][j] != 0 &&
            (pi == rows || abs128(a[i][j]) < best)) {
          best = abs128(a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi == rows)
      break;
    std::swap(a[pi], a[k]);
    std::swap(out.u[pi], out.u[k]);
    if (pj != k) {
      for (std::size_t i = 0; i < rows; ++i)
        std::swap(a[i][pj], a[i][k]);
      for (std::size_t i = 0; i < cols; ++i)
        std::swap(out.v[i][pj], out.v[i][k]);
    }
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0)
          continue;
        i128 q = rounded_div(a[i][k], a[k][k]);
        for (std::size_t j = 0; j < cols; ++j) {
          a[i][j] -= q * a[k][j];
          check_entry(a[i][j]);
        }
        for (std::size_t j = 0; j < rows; ++j) {
          out.u[i][j] -= q * out.u[k][j];
          check_entry(out.u[i][j]);
        }
        if (a[i][k] != 0) {
          // Remainder became the smaller pivot.
          std::swap(a[i], a[k]);
          std::swap(out.u[i], out.u[k]);
          clean = false;
        }
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0)
          continue;
        i128 q = rounded_div(a[k][j], a[k][k]);
        for (std::size_t i = 0; i < rows; ++i) {
          a[i][j] -= q * a[i][k];
          check_entry(a[i][j]);
        }
        for (std::size_t i = 0; i < cols; ++i) {
          out.v[i][j] -= q * out.v[i][k];
          check_entry(out.v[i][j]);
        }
        if (a[k][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i)
            std::swap(a[i][j], a[i][k]);
          for (std::size_t i = 0; i < cols; ++i)
            std::swap(out.v[i][j], out.v[i][k]);
          clean = false;
        }
      }
    }
    ++k;
  }
  out.rank = static_cast<int>(k);
  out.d = std::move(a);
  return out;
}

struct IntegerSolution {
  bool solvable = false;
  std::vector<long long> particular;
  std::vector<std::vector<long long>> null_basis;
};

/// Solves `rows * x = rhs` over the integers via the diagonalization above.
IntegerSolution solve_integer_system(const std::vector<ClassVector>& rows,
                                     const std::vector<long long>& rhs) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  for (const ClassVector& row : rows)
    if (row.size() != c)
      throw DimensionMismatch("system rows have unequal lengths");
  Mat a(r, std::vector<i128>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      a[i][j] = rows[i][j];
  Diagonalization diag = diagonalize(std::move(a));

  // d * y = u * rhs, then x = v * y.
  std::vector<i128> target(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      target[i] += diag.u[i][j] * rhs[j];

  IntegerSolution out;
  std::vector<i128> y(c, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (i < static_cast<std::size_t>(diag.rank)) {
      if (target[i] % diag.d[i][i] != 0)
        return out;
      y[i] = target[i] / diag.d[i][i];
    } else if (target[i] != 0) {
      return out;
    }
  }
  out.solvable = true;
  out.particular.resize(c);
  for (std::size_t i = 0; i < c; ++i) {
    i128 acc = 0;
    for (std::size_t j = 0; j < c; ++j)
      acc += diag.v[i][j] * y[j];
    out.particular[i] = to_i64(acc);
  }
  for (std::size_t j = static_cast<std::size_t>(diag.rank); j < c; ++j) {
    std::vector<long long> gen(c);
    for (std::size_t i = 0; i < c; ++i)
      gen[i] = to_i64(diag.v[i][j]);
    out.null_basis.push_back(std::move(gen));
  }
  return out;
}

long long dot(const Functional& phi, const ClassVector& v) {
  if (phi.size() != v.size())
    throw DimensionMismatch("dot product of unequal lengths");
  i128 acc = 0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    acc += i128(phi[i]) * v[i];
  return to_i64(acc);
}

} // namespace

HomologyBasis::HomologyBasis(CoverGraph cover)
    : cover_(std::move(cover)), tree_(spanning_tree(cover_)) {
  const int d = cover_.degree();
  edge_index_.assign(static_cast<size_t>(d) * cover_.rank(), -1);
  std::set<std::pair<int, int>> tree_set(tree_.edges.begin(),
                                         tree_.edges.end());
  for (int v = 0; v < d; ++v)
    for (int g = 0; g < cover_.rank(); ++g)
      if (!tree_set.count({v, g}))
        basis_edges_.emplace_back(v, g);
  // basis_edges_ is already sorted by (vertex, generator).
  for (std::size_t i = 0; i < basis_edges_.size(); ++i) {
    auto [v, g] = basis_edges_[i];
    edge_index_[static_cast<size_t>(v) * cover_.rank() + g] =
        static_cast<int>(i);
  }
}

ClassVector HomologyBasis::class_of_loop(int start, const Word& w) const {
  if (start < 0 || start >= cover_.degree())
    throw VertexOutOfRange("class_of_loop at vertex " + std::to_string(start));
  ClassVector coeffs(basis_edges_.size(), 0);
  int v = start;
  for (int x : w.letters()) {
    int g = std::abs(x) - 1;
    int src, next;
    if (x > 0) {
      src = v;
      next = cover_.perm(g)[static_cast<size_t>(v)];
    } else {
      next = cover_.inv_perm(g)[static_cast<size_t>(v)];
      src = next;
    }
    int idx = edge_index_[static_cast<size_t>(src) * cover_.rank() + g];
    if (idx >= 0)
      coeffs[static_cast<size_t>(idx)] += x > 0 ? 1 : -1;
    v = next;
  }
  if (v != start)
    throw Error("lift does not close up; homology class undefined");
  return coeffs;
}

ClassVector HomologyBasis::class_of(const Elevation& e) const {
  return class_of_loop(e.vertex, power(e.base, e.degree));
}

std::optional<Functional>
find_functional(const ClassVector& target,
                const std::vector<ClassVector>& kill) {
  std::vector<ClassVector> rows;
  rows.push_back(target);
  std::set<ClassVector> seen;
  for (const ClassVector& k : kill) {
    if (k.size() != target.size())
      throw DimensionMismatch("kill vector of wrong length");
    if (std::all_of(k.begin(), k.end(), [](long long x) { return x == 0; }))
      continue;
    if (seen.insert(k).second)
      rows.push_back(k);
  }
  std::vector<long long> rhs(rows.size(), 0);
  rhs[0] = 1;
  IntegerSolution sol = solve_integer_system(rows, rhs);
  if (!sol.solvable)
    return std::nullopt;
  return sol.particular;
}

std::optional<Functional>
find_functional_weak(const ClassVector& target,
                     const std::vector<WeakConstraint>& constraints,
                     int bound) {
  for (const WeakConstraint& c : constraints) {
    if (c.cls.size() != target.size())
      throw DimensionMismatch("constraint vector of wrong length");
    bool zero = std::all_of(c.cls.begin(), c.cls.end(),
                            [](long long x) { return x == 0; });
    if (zero && c.n == 0)
      return std::nullopt; // m * 0 = 0 = n is forced for every covector
  }

  auto satisfied = [&](const Functional& phi) {
    for (const WeakConstraint& c : constraints)
      if (c.m * dot(phi, c.cls) == c.n)
        return false;
    return true;
  };

  // The all-zero solution first.
  std::vector<ClassVector> kill;
  for (const WeakConstraint& c : constraints)
    kill.push_back(c.cls);
  if (auto phi = find_functional(target, kill); phi && satisfied(*phi))
    return phi;

  IntegerSolution base = solve_integer_system({target}, {1});
  if (!base.solvable)
    return std::nullopt;
  Functional phi0 = base.particular;
  if (satisfied(phi0))
    return phi0;

  // Forced constraints: classes orthogonal to the whole null space have a
  // fixed value over every solution.
  for (const WeakConstraint& c : constraints) {
    bool fixed = true;
    for (const std::vector<long long>& gen : base.null_basis)
      if (dot(gen, c.cls) != 0) {
        fixed = false;
        break;
      }
    if (fixed && c.m * dot(phi0, c.cls) == c.n)
      return std::nullopt;
  }

  // Sweep phi0 + t * direction over single null generators and a few mixed
  // directions, |t| <= bound.
  std::vector<std::vector<long long>> directions = base.null_basis;
  const std::size_t k = base.null_basis.size();
  for (int mix = 2; mix <= 4 && k >= 2; ++mix) {
    std::vector<long long> dir(target.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      long long w = static_cast<long long>(i % static_cast<size_t>(mix)) + 1;
      for (std::size_t j = 0; j < dir.size(); ++j)
        dir[j] += w * base.null_basis[i][j];
    }
    directions.push_back(std::move(dir));
  }

  // Precompute dot products so each candidate is O(#constraints).
  std::vector<long long> base_vals;
  for (const WeakConstraint& c : constraints)
    base_vals.push_back(dot(phi0, c.cls));
  for (const std::vector<long long>& dir : directions) {
    std::vector<long long> dir_vals;
    for (const WeakConstraint& c : constraints)
      dir_vals.push_back(dot(dir, c.cls));
    for (int t = 1; t <= bound; ++t) {
      for (int sign : {1, -1}) {
        bool ok = true;
        for (std::size_t q = 0; q < constraints.size() && ok; ++q)
          ok = constraints[q].m *
                   (base_vals[q] + static_cast<long long>(sign) * t *
                                       dir_vals[q]) !=
               constraints[q].n;
        if (ok) {
          Functional phi = phi0;
          for (std::size_t j = 0; j < phi.size(); ++j)
            phi[j] += static_cast<long long>(sign) * t * dir[j];
          return phi;
        }
      }
    }
  }
  return std::nullopt;
}

CoverGraph cyclic_cover(int rank, const std::vector<long long>& residues,
                        long long p) {
  if (p < 2)
    throw NotPrime("modulus must be a prime >= 2");
  for (long long f = 2; f * f <= p; ++f)
    if (p % f == 0)
      throw NotPrime(std::to_string(p) + " is not prime");
  if (static_cast<int>(residues.size()) != rank)
    throw DimensionMismatch("one residue per generator required");
  bool all_zero = true;
  for (long long r : residues)
    if (((r % p) + p) % p != 0)
      all_zero = false;
  if (all_zero)
    throw AllZeroResidues("residue vector vanishes mod p");
  const int d = static_cast<int>(p);
  std::vector<Permutation> perms;
  perms.reserve(static_cast<size_t>(rank));
  for (int g = 0; g < rank; ++g) {
    long long shift = ((residues[static_cast<size_t>(g)] % p) + p) % p;
    Permutation perm(static_cast<size_t>(d));
    for (int v = 0; v < d; ++v)
      perm[static_cast<size_t>(v)] = static_cast<int>((v + shift) % p);
    perms.push_back(std::move(perm));
  }
  return CoverGraph(rank, std::move(perms));
}

namespace {

/// Orbit partition of the vertices under coset translation by the
/// centralizer of b. Assumes the cover is normal.
std::vector<int>
orbit_representatives(const CoverGraph& cover, const std::vector<Word>& reps,
                      const Word& b) {
  Word z = primitive_root(b).root;
  const int z0 = cover.act(0, z);
  std::vector<bool> seen(static_cast<size_t>(cover.degree()), false);
  std::vector<int> out;
  for (int v = 0; v < cover.degree(); ++v) {
    if (seen[static_cast<size_t>(v)])
      continue;
    out.push_back(v);
    int u = v;
    while (!seen[static_cast<size_t>(u)]) {
      seen[static_cast<size_t>(u)] = true;
      u = cover.act(z0, reps[static_cast<size_t>(u)]);
    }
  }
  return out;
}

struct CoverEvaluation {
  bool ok = false;
  bool weak = false;
  Functional functional;
  int m = 0;
  std::vector<int> degrees;
  std::vector<std::vector<long long>> values;
  /// Index into bs of the word blamed for failure.
  std::size_t obstruction = 0;
  std::string reason;
};

CoverEvaluation evaluate_cover(const CoverGraph& cover, const Word& a,
                               std::span<const Word> bs, bool allow_weak,
                               int weak_bound) {
  CoverEvaluation ev;
  HomologyBasis basis(cover);
  ev.m = cover.degree_of(a);
  ClassVector target = basis.class_of(power(a, ev.m));

  std::vector<std::vector<ClassVector>> classes(bs.size());
  for (std::size_t j = 0; j < bs.size(); ++j) {
    int n = cover.degree_of(bs[j]);
    ev.degrees.push_back(n);
    Word pow_b = power(bs[j], n);
    for (int v : orbit_representatives(cover, basis.reps(), bs[j]))
      classes[j].push_back(
          basis.class_of(conjugate(pow_b, basis.reps()[static_cast<size_t>(v)])));
  }

  std::vector<ClassVector> kill;
  for (const auto& cs : classes)
    kill.insert(kill.end(), cs.begin(), cs.end());

  try {
    if (auto phi = find_functional(target, kill)) {
      ev.ok = true;
      ev.functional = std::move(*phi);
    } else if (allow_weak) {
      std::vector<WeakConstraint> constraints;
      for (std::size_t j = 0; j < bs.size(); ++j)
        for (const ClassVector& c : classes[j])
          constraints.push_back(
              {c, static_cast<long long>(ev.m), ev.degrees[j]});
      if (auto phi = find_functional_weak(target, constraints, weak_bound)) {
        ev.ok = true;
        ev.weak = true;
        ev.functional = std::move(*phi);
      }
    }
  } catch (const Overflow&) {
    ev.ok = false;
    ev.obstruction = 0;
    ev.reason = "integer solver overflow on a cover of degree " +
                std::to_string(cover.degree());
    return ev;
  }

  if (ev.ok) {
    for (const auto& cs : classes) {
      std::vector<long long> vals;
      for (const ClassVector& c : cs)
        vals.push_back(dot(ev.functional, c));
      ev.values.push_back(std::move(vals));
    }
    return ev;
  }

  // Blame the shortest prefix of bs whose kill set already breaks the
  // strong system; with no prefix at all the target class itself is the
  // obstruction.
  try {
    std::vector<ClassVector> prefix;
    if (!find_functional(target, prefix)) {
      ev.obstruction = 0;
      ev.reason = "class of a^m is not integrally primitive";
      return ev;
    }
    for (std::size_t j = 0; j < bs.size(); ++j) {
      prefix.insert(prefix.end(), classes[j].begin(), classes[j].end());
      if (!find_functional(target, prefix)) {
        ev.obstruction = j;
        ev.reason = "lifts of " + to_text(bs[j]) + " obstruct the functional";
        return ev;
      }
    }
  } catch (const Overflow&) {
  }
  ev.obstruction = bs.empty() ? 0 : bs.size() - 1;
  ev.reason = "inequality constraints unsatisfied within perturbation bound";
  return ev;
}

/// Basis of the hyperplane of residue vectors r mod p with r . ab_a = 0,
/// ordered so that vectors with r . ab_b != 0 come first. Covers built from
/// the leading vectors unwind b without changing a's degree; when the
/// abelianizations are proportional mod p the remaining vectors still give
/// covers in which both words unwind together.
std::vector<std::vector<long long>>
residue_vectors(long long p, const std::vector<long long>& ab_a,
                const std::vector<long long>& ab_b) {
  auto norm = [p](long long x) { return ((x % p) + p) % p; };
  const std::size_t r = ab_a.size();
  std::vector<std::vector<long long>> hyperplane;
  std::size_t pivot = r;
  for (std::size_t i = 0; i < r; ++i)
    if (norm(ab_a[i]) != 0) {
      pivot = i;
      break;
    }
  if (pivot == r) {
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<long long> e(r, 0);
      e[i] = 1;
      hyperplane.push_back(std::move(e));
    }
  } else {
    // Modular inverse of ab_a[pivot] by Fermat.
    long long inv = 1, base = norm(ab_a[pivot]), exp = p - 2;
    while (exp > 0) {
      if (exp & 1)
        inv = inv * base % p;
      base = base * base % p;
      exp >>= 1;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == pivot)
        continue;
      std::vector<long long> v(r, 0);
      v[i] = 1;
      v[pivot] = norm(-norm(ab_a[i]) * inv % p);
      hyperplane.push_back(std::move(v));
    }
  }
  std::stable_sort(hyperplane.begin(), hyperplane.end(),
                   [&](const std::vector<long long>& x,
                       const std::vector<long long>& y) {
                     auto pairs = [&](const std::vector<long long>& v) {
                       long long acc = 0;
                       for (std::size_t i = 0; i < r; ++i)
                         acc = (acc + norm(v[i]) * norm(ab_b[i])) % p;
                       return acc != 0 ? 0 : 1;
                     };
                     return pairs(x) < pairs(y);
                   });
  return hyperplane;
}

std::vector<long long> primes_up_to(int cap) {
  std::vector<long long> out;
  for (int n = 2; n <= cap; ++n) {
    bool prime = true;
    for (int f = 2; f * f <= n; ++f)
      if (n % f == 0)
        prime = false;
    if (prime)
      out.push_back(n);
  }
  return out;
}

} // namespace

SearchResult independence_search(const Word& a, std::span<const Word> bs,
                                 const SearchCaps& caps, bool allow_weak,
                                 const CoverGraph* start) {
  if (a.trivial())
    throw TrivialWord("independence_search needs a nontrivial target word");
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (bs[j].trivial())
      throw TrivialWord("independence_search over a trivial word");
    if (bs[j].rank() != a.rank())
      throw RankMismatch("independence_search over mixed ranks");
    if (allow_weak) {
      if (oracle_conjugate(a, bs[j]))
        throw NotIndependent("word " + to_text(bs[j]) +
                                 " is conjugate to " + to_text(a),
                             0, j + 1);
    } else {
      std::array<Word, 2> pair{a, bs[j]};
      if (find_dependent_pair(pair))
        throw NotIndependent("word " + to_text(bs[j]) +
                                 " is not independent from " + to_text(a),
                             0, j + 1);
    }
  }

  const std::vector<long long> primes = primes_up_to(caps.max_prime);
  const std::vector<long long> ab_a = abelianization(a);

  CoverGraph current = start ? *start : CoverGraph::rose(a.rank());
  std::optional<CoverGraph> anchor;
  bool anchor_tried = false;
  std::string last_reason = "no cover attempted";

  auto finish = [&](const CoverGraph& cover, CoverEvaluation&& ev,
                    int round) {
    SearchResult res{cover,
                     std::move(ev.functional),
                     ev.weak,
                     ev.m,
                     std::move(ev.degrees),
                     std::move(ev.values),
                     round};
    return res;
  };

  for (int round = 0; round <= caps.max_rounds; ++round) {
    CoverEvaluation ev =
        evaluate_cover(current, a, bs, allow_weak, caps.weak_bound);
    if (ev.ok)
      return finish(current, std::move(ev), round);
    last_reason = ev.reason;

    if (!anchor_tried) {
      // The cover embedding a's cyclic form, offered as a refinement
      // candidate from here on.
      anchor_tried = true;
      try {
        anchor = regular_closure(marshall_hall_cover(cyclic_reduce(a).word()),
                                 caps.max_index);
      } catch (const ClosureTooLarge&) {
      }
    }

    const Word& obstructing = bs.empty() ? a : bs[ev.obstruction];
    std::vector<CoverGraph> candidates;
    if (anchor)
      candidates.push_back(*anchor);
    const std::vector<long long> ab_b = abelianization(obstructing);
    for (long long p : primes)
      for (const std::vector<long long>& res :
           residue_vectors(p, ab_a, ab_b))
        candidates.push_back(cyclic_cover(a.rank(), res, p));
    candidates.push_back(
        marshall_hall_cover(cyclic_reduce(obstructing).word()));

    // Refine along each candidate, then examine the results in order of
    // (degree, permutation tables): the first success is the preferred one
    // whether candidates are evaluated sequentially or concurrently.
    std::vector<CoverGraph> refined;
    for (const CoverGraph& d : candidates) {
      try {
        CoverGraph r = regular_closure(intersect(current, d), caps.max_index);
        if (r.degree() > current.degree())
          refined.push_back(std::move(r));
      } catch (const ClosureTooLarge&) {
      }
    }
    std::sort(refined.begin(), refined.end(),
              [](const CoverGraph& x, const CoverGraph& y) {
                return x.degree() != y.degree() ? x.degree() < y.degree()
                                                : x.perms() < y.perms();
              });
    refined.erase(std::unique(refined.begin(), refined.end()), refined.end());
    if (refined.empty())
      throw SearchExhausted("refinement stalled on " + to_text(obstructing) +
                            " (" + last_reason + ")");

    std::optional<CoverEvaluation> success;
    std::size_t success_index = 0;
    if (caps.jobs > 1) {
      std::vector<std::future<CoverEvaluation>> futures;
      futures.reserve(refined.size());
      for (std::size_t i = 0; i < refined.size(); ++i)
        futures.push_back(std::async(std::launch::async, [&, i] {
          return evaluate_cover(refined[i], a, bs, allow_weak,
                                caps.weak_bound);
        }));
      for (std::size_t i = 0; i < futures.size(); ++i) {
        CoverEvaluation cev = futures[i].get();
        if (cev.ok && !success) {
          success = std::move(cev);
          success_index = i;
        }
      }
    } else {
      for (std::size_t i = 0; i < refined.size(); ++i) {
        CoverEvaluation cev =
            evaluate_cover(refined[i], a, bs, allow_weak, caps.weak_bound);
        if (cev.ok) {
          success = std::move(cev);
          success_index = i;
          break;
        }
      }
    }
    if (success)
      return finish(refined[success_index], std::move(*success), round + 1);

    // Nothing solved; merge the smallest strict refinement and keep going.
    current = std::move(refined.front());
  }
  throw SearchExhausted("round cap reached; last obstruction: " + last_reason);
}

} // namespace fgcert
