#include "fgcert/covers.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>

namespace fgcert {

Permutation identity_permutation(int d) {
  Permutation p(static_cast<size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t v = 0; v < p.size(); ++v)
    inv[static_cast<size_t>(p[v])] = static_cast<int>(v);
  return inv;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw ShapeMismatch("composing permutations of different degrees");
  Permutation r(p.size());
  for (std::size_t v = 0; v < p.size(); ++v)
    r[v] = q[static_cast<size_t>(p[v])];
  return r;
}

long long permutation_order(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  long long order = 1;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (seen[v])
      continue;
    long long len = 0;
    std::size_t u = v;
    while (!seen[u]) {
      seen[u] = true;
      u = static_cast<size_t>(p[u]);
      ++len;
    }
    long long g = std::gcd(order, len);
    if (order > (1LL << 62) / (len / g))
      throw Overflow("permutation order overflows");
    order = order / g * len;
  }
  return order;
}

CoverGraph::CoverGraph(int rank, std::vector<Permutation> perms)
    : rank_(rank), perms_(std::move(perms)) {
  if (rank < 1 || static_cast<int>(perms_.size()) != rank)
    throw NotAPermutation("expected one permutation per generator");
  if (perms_[0].empty())
    throw NotAPermutation("cover must have at least one vertex");
  degree_ = static_cast<int>(perms_[0].size());
  for (const Permutation& p : perms_) {
    if (static_cast<int>(p.size()) != degree_)
      throw NotAPermutation("permutation degrees disagree");
    std::vector<bool> hit(p.size(), false);
    for (int img : p) {
      if (img < 0 || img >= degree_ || hit[static_cast<size_t>(img)])
        throw NotAPermutation("vertex table is not a bijection");
      hit[static_cast<size_t>(img)] = true;
    }
  }
  inv_perms_.reserve(perms_.size());
  for (const Permutation& p : perms_)
    inv_perms_.push_back(inverse_permutation(p));

  // Orbit of the basepoint must be everything.
  std::vector<bool> seen(static_cast<size_t>(degree_), false);
  std::queue<int> queue;
  seen[0] = true;
  queue.push(0);
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int g = 0; g < rank_; ++g) {
      for (int u : {perms_[static_cast<size_t>(g)][static_cast<size_t>(v)],
                    inv_perms_[static_cast<size_t>(g)][static_cast<size_t>(v)]}) {
        if (!seen[static_cast<size_t>(u)]) {
          seen[static_cast<size_t>(u)] = true;
          ++reached;
          queue.push(u);
        }
      }
    }
  }
  if (reached != degree_)
    throw NotConnected("cover graph is not connected");
}

CoverGraph CoverGraph::rose(int rank) {
  return CoverGraph(rank, std::vector<Permutation>(
                              static_cast<size_t>(rank), Permutation{0}));
}

int CoverGraph::act_letter(int v, int letter) const {
  const std::size_t g = static_cast<size_t>(std::abs(letter)) - 1;
  return letter > 0 ? perms_[g][static_cast<size_t>(v)]
                    : inv_perms_[g][static_cast<size_t>(v)];
}

int CoverGraph::act(int v, const Word& w) const {
  if (w.rank() != rank_)
    throw RankMismatch("acting by a word of different rank");
  if (v < 0 || v >= degree_)
    throw VertexOutOfRange("act from vertex " + std::to_string(v));
  for (int x : w.letters())
    v = act_letter(v, x);
  return v;
}

bool CoverGraph::contains(const Word& w) const { return act(0, w) == 0; }

int CoverGraph::degree_of(const Word& w) const {
  int v = act(0, w);
  int n = 1;
  while (v != 0) {
    v = act(v, w);
    ++n;
  }
  return n;
}

Permutation CoverGraph::induced_permutation(const Word& w) const {
  Permutation p(static_cast<size_t>(degree_));
  for (int v = 0; v < degree_; ++v)
    p[static_cast<size_t>(v)] = act(v, w);
  return p;
}

SpanningTree spanning_tree(const CoverGraph& c) {
  const int d = c.degree();
  std::vector<std::vector<int>> rep_letters(static_cast<size_t>(d));
  std::vector<bool> seen(static_cast<size_t>(d), false);
  std::vector<std::pair<int, int>> edges;
  std::queue<int> queue;
  seen[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int g = 0; g < c.rank(); ++g) {
      int fwd = c.perm(g)[static_cast<size_t>(v)];
      if (!seen[static_cast<size_t>(fwd)]) {
        seen[static_cast<size_t>(fwd)] = true;
        rep_letters[static_cast<size_t>(fwd)] =
            rep_letters[static_cast<size_t>(v)];
        rep_letters[static_cast<size_t>(fwd)].push_back(g + 1);
        edges.emplace_back(v, g);
        queue.push(fwd);
      }
      int bwd = c.inv_perm(g)[static_cast<size_t>(v)];
      if (!seen[static_cast<size_t>(bwd)]) {
        seen[static_cast<size_t>(bwd)] = true;
        rep_letters[static_cast<size_t>(bwd)] =
            rep_letters[static_cast<size_t>(v)];
        rep_letters[static_cast<size_t>(bwd)].push_back(-(g + 1));
        // Forward form of the edge crossed backward from v.
        edges.emplace_back(bwd, g);
        queue.push(bwd);
      }
    }
  }
  SpanningTree tree;
  tree.reps.reserve(static_cast<size_t>(d));
  for (int v = 0; v < d; ++v)
    tree.reps.push_back(Word(c.rank(), rep_letters[static_cast<size_t>(v)]));
  tree.edges = std::move(edges);
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

std::vector<Word> CoverGraph::coset_reps() const {
  return spanning_tree(*this).reps;
}

bool CoverGraph::is_normal() const {
  // Stabilizer of the basepoint is generated by the Schreier generators
  // rep_v . gen . rep_{act(v, gen)}^-1; the subgroup is normal exactly when
  // each of them acts trivially on every vertex.
  std::vector<Word> reps = coset_reps();
  std::vector<Permutation> rep_perms;
  rep_perms.reserve(reps.size());
  for (const Word& r : reps)
    rep_perms.push_back(induced_permutation(r));
  for (int v = 0; v < degree_; ++v) {
    for (int g = 0; g < rank_; ++g) {
      int u = perms_[static_cast<size_t>(g)][static_cast<size_t>(v)];
      Permutation schreier =
          compose(compose(rep_perms[static_cast<size_t>(v)],
                          perms_[static_cast<size_t>(g)]),
                  inverse_permutation(rep_perms[static_cast<size_t>(u)]));
      for (int x = 0; x < degree_; ++x)
        if (schreier[static_cast<size_t>(x)] != x)
          return false;
    }
  }
  return true;
}

CoverGraph marshall_hall_cover(const Word& w) {
  if (w.trivial())
    throw TrivialWord("marshall_hall_cover of the trivial word");
  const std::vector<int>& ls = w.letters();
  if (ls.front() == -ls.back())
    throw NotCyclicallyReduced("marshall_hall_cover needs a cyclically "
                               "reduced word");
  const int d = static_cast<int>(ls.size());
  const int none = -1;
  std::vector<std::vector<int>> partial(
      static_cast<size_t>(w.rank()),
      std::vector<int>(static_cast<size_t>(d), none));
  for (int j = 0; j < d; ++j) {
    int x = ls[static_cast<size_t>(j)];
    int g = std::abs(x) - 1;
    int src = x > 0 ? j : (j + 1) % d;
    int dst = x > 0 ? (j + 1) % d : j;
    std::vector<int>& table = partial[static_cast<size_t>(g)];
    if (table[static_cast<size_t>(src)] != none &&
        table[static_cast<size_t>(src)] != dst)
      throw NotCyclicallyReduced("word cycle is not folded");
    table[static_cast<size_t>(src)] = dst;
  }
  // Complete each partial injection: unmatched sources to unmatched targets
  // in ascending order.
  for (std::vector<int>& table : partial) {
    std::vector<bool> used(static_cast<size_t>(d), false);
    for (int img : table)
      if (img != none)
        used[static_cast<size_t>(img)] = true;
    std::vector<int> targets;
    for (int v = 0; v < d; ++v)
      if (!used[static_cast<size_t>(v)])
        targets.push_back(v);
    std::size_t next = 0;
    for (int v = 0; v < d; ++v)
      if (table[static_cast<size_t>(v)] == none)
        table[static_cast<size_t>(v)] = targets[next++];
  }
  return CoverGraph(w.rank(), std::move(partial));
}

CoverGraph intersect(const CoverGraph& c1, const CoverGraph& c2) {
  if (c1.rank() != c2.rank())
    throw RankMismatch("intersecting covers of different ranks");
  const int d2 = c2.degree();
  auto key = [d2](int v1, int v2) {
    return static_cast<long long>(v1) * d2 + v2;
  };
  std::map<long long, int> label;
  std::vector<std::pair<int, int>> order;
  std::queue<std::pair<int, int>> queue;
  label[key(0, 0)] = 0;
  order.emplace_back(0, 0);
  queue.emplace(0, 0);
  while (!queue.empty()) {
    auto [v1, v2] = queue.front();
    queue.pop();
    for (int g = 0; g < c1.rank(); ++g) {
      for (bool fwd : {true, false}) {
        int u1 = fwd ? c1.perm(g)[static_cast<size_t>(v1)]
                     : c1.inv_perm(g)[static_cast<size_t>(v1)];
        int u2 = fwd ? c2.perm(g)[static_cast<size_t>(v2)]
                     : c2.inv_perm(g)[static_cast<size_t>(v2)];
        if (label.emplace(key(u1, u2), static_cast<int>(order.size())).second) {
          order.emplace_back(u1, u2);
          queue.emplace(u1, u2);
        }
      }
    }
  }
  const int d = static_cast<int>(order.size());
  std::vector<Permutation> perms(static_cast<size_t>(c1.rank()),
                                 Permutation(static_cast<size_t>(d)));
  for (int v = 0; v < d; ++v) {
    auto [v1, v2] = order[static_cast<size_t>(v)];
    for (int g = 0; g < c1.rank(); ++g) {
      int u1 = c1.perm(g)[static_cast<size_t>(v1)];
      int u2 = c2.perm(g)[static_cast<size_t>(v2)];
      perms[static_cast<size_t>(g)][static_cast<size_t>(v)] =
          label.at(key(u1, u2));
    }
  }
  return CoverGraph(c1.rank(), std::move(perms));
}

CoverGraph canonical_form(const CoverGraph& c) {
  std::vector<int> label(static_cast<size_t>(c.degree()), -1);
  std::vector<int> order;
  std::queue<int> queue;
  label[0] = 0;
  order.push_back(0);
  queue.push(0);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int g = 0; g < c.rank(); ++g) {
      for (bool fwd : {true, false}) {
        int u = fwd ? c.perm(g)[static_cast<size_t>(v)]
                    : c.inv_perm(g)[static_cast<size_t>(v)];
        if (label[static_cast<size_t>(u)] == -1) {
          label[static_cast<size_t>(u)] = static_cast<int>(order.size());
          order.push_back(u);
          queue.push(u);
        }
      }
    }
  }
  std::vector<Permutation> perms(
      static_cast<size_t>(c.rank()),
      Permutation(static_cast<size_t>(c.degree())));
  for (int v = 0; v < c.degree(); ++v) {
    int old = order[static_cast<size_t>(v)];
    for (int g = 0; g < c.rank(); ++g)
      perms[static_cast<size_t>(g)][static_cast<size_t>(v)] =
          label[static_cast<size_t>(c.perm(g)[static_cast<size_t>(old)])];
  }
  return CoverGraph(c.rank(), std::move(perms));
}

CoverGraph regular_closure(const CoverGraph& c, int max_order) {
  // Enumerate the permutation group generated by the edge permutations by
  // breadth-first right multiplication; the identity is the basepoint.
  std::vector<Permutation> gens;
  gens.reserve(static_cast<size_t>(c.rank()));
  for (int g = 0; g < c.rank(); ++g)
    gens.push_back(c.perm(g));

  std::map<Permutation, int> label;
  std::vector<Permutation> elements;
  std::queue<int> queue;
  Permutation id = identity_permutation(c.degree());
  label[id] = 0;
  elements.push_back(id);
  queue.push(0);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int g = 0; g < c.rank(); ++g) {
      for (bool fwd : {true, false}) {
        Permutation next =
            fwd ? compose(elements[static_cast<size_t>(v)], gens[static_cast<size_t>(g)])
                : compose(elements[static_cast<size_t>(v)],
                          inverse_permutation(gens[static_cast<size_t>(g)]));
        auto [it, inserted] =
            label.emplace(std::move(next), static_cast<int>(elements.size()));
        if (inserted) {
          if (static_cast<int>(elements.size()) >= max_order)
            throw ClosureTooLarge("regular closure exceeds " +
                                  std::to_string(max_order) + " elements");
          elements.push_back(it->first);
          queue.push(it->second);
        }
      }
    }
  }
  const int d = static_cast<int>(elements.size());
  std::vector<Permutation> perms(static_cast<size_t>(c.rank()),
                                 Permutation(static_cast<size_t>(d)));
  for (int v = 0; v < d; ++v)
    for (int g = 0; g < c.rank(); ++g)
      perms[static_cast<size_t>(g)][static_cast<size_t>(v)] = label.at(
          compose(elements[static_cast<size_t>(v)], gens[static_cast<size_t>(g)]));
  return CoverGraph(c.rank(), std::move(perms));
}

std::vector<std::vector<int>> centralizer_orbits(const CoverGraph& c,
                                                 const Word& b) {
  if (b.trivial())
    throw TrivialWord("centralizer orbits of the trivial word");
  if (!c.is_normal())
    throw NotNormal("double coset representatives need a normal cover");
  Word z = primitive_root(b).root;
  // Coset translation by z: vertex of rep_v maps to the vertex reached by
  // lifting rep_v from the endpoint of z.
  std::vector<Word> reps = c.coset_reps();
  const int z0 = c.act(0, z);
  Permutation translate(static_cast<size_t>(c.degree()));
  for (int v = 0; v < c.degree(); ++v)
    translate[static_cast<size_t>(v)] = c.act(z0, reps[static_cast<size_t>(v)]);
  std::vector<bool> seen(static_cast<size_t>(c.degree()), false);
  std::vector<std::vector<int>> orbits;
  for (int v = 0; v < c.degree(); ++v) {
    if (seen[static_cast<size_t>(v)])
      continue;
    std::vector<int> orbit;
    int u = v;
    while (!seen[static_cast<size_t>(u)]) {
      seen[static_cast<size_t>(u)] = true;
      orbit.push_back(u);
      u = translate[static_cast<size_t>(u)];
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<Word> double_coset_reps(const CoverGraph& c, const Word& b) {
  std::vector<Word> reps = c.coset_reps();
  std::vector<Word> out;
  for (const std::vector<int>& orbit : centralizer_orbits(c, b))
    out.push_back(reps[static_cast<size_t>(orbit.front())]);
  return out;
}

Elevation elevation_at(const CoverGraph& c, const Word& base, int vertex) {
  if (vertex < 0 || vertex >= c.degree())
    throw VertexOutOfRange("elevation at vertex " + std::to_string(vertex));
  int v = c.act(vertex, base);
  int n = 1;
  while (v != vertex) {
    v = c.act(v, base);
    ++n;
  }
  std::vector<Word> reps = c.coset_reps();
  return Elevation{base, vertex, n,
                   invert(reps[static_cast<size_t>(vertex)])};
}

} // namespace fgcert
