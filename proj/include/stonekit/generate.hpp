#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "stonekit/descent.hpp"
#include "stonekit/dlat.hpp"
#include "stonekit/finposet.hpp"
#include "stonekit/fork.hpp"
#include "stonekit/stone.hpp"
#include "stonekit/topology.hpp"

// Seeded generators for the randomized suites. Every generator builds an
// instance that satisfies its hypotheses by construction.

namespace stonekit::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Assignment permutation(Rng& rng, std::size_t n) {
  Assignment p = identity_assignment(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Random DAG on a shuffled upper triangle, then closed.
inline FinPoset poset(Rng& rng, std::size_t n, double density = -1) {
  if (density < 0) density = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
  const Assignment perm = permutation(rng, n);
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng, density)) pairs.emplace_back(perm[i], perm[j]);
  return FinPoset::from_pairs(n, pairs);
}

/// Random preorder: a random poset on k classes, points spread over classes.
inline FinSpace space(Rng& rng, std::size_t n) {
  if (n == 0) return FinSpace{};
  const std::size_t k = uniform(rng, 1, n);
  FinPoset base = poset(rng, k);
  Assignment cls(n);
  for (std::size_t x = 0; x < n; ++x) cls[x] = x < k ? x : uniform(rng, 0, k - 1);
  const Assignment perm = permutation(rng, n);
  std::vector<Mask> rows(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (base.leq(cls[x], cls[y])) rows[perm[x]] |= bit(perm[y]);
  return FinSpace::from_rows(std::move(rows));
}

/// Random continuous map. Points are visited in an order compatible with the
/// preorder and each picks uniformly among the targets consistent with the
/// choices so far; if none is left the map falls back to a constant.
inline Assignment monotone_assignment(Rng& rng, const FinSpace& src, const FinSpace& dst) {
  const std::size_t n = src.size(), m = dst.size();
  if (n == 0) return {};
  if (m == 0) throw Error(ErrorKind::Index, "no map into the empty space");
  Assignment order = identity_assignment(n);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(src.down(a)) < std::popcount(src.down(b));
  });
  Assignment out(n, m);
  for (std::size_t x : order) {
    std::vector<std::size_t> cand;
    for (std::size_t q = 0; q < m; ++q) {
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y) {
        if (out[y] == m) continue;
        if (src.leq(y, x) && !dst.leq(out[y], q)) ok = false;
        if (src.leq(x, y) && !dst.leq(q, out[y])) ok = false;
      }
      if (ok) cand.push_back(q);
    }
    if (cand.empty()) return Assignment(n, uniform(rng, 0, m - 1));
    out[x] = cand[uniform(rng, 0, cand.size() - 1)];
  }
  return out;
}

inline SpectralMap spectral_map(Rng& rng, const FinSpace& src, const FinSpace& dst) {
  return SpectralMap::validate(src, dst, monotone_assignment(rng, src, dst));
}

/// Lattice map L -> M dual to a random monotone map between the
/// join-irreducible posets ji(M) -> ji(L): S |-> phi^{-1}(S).
inline LatticeMap lattice_map(Rng& rng, const DistLattice& l, const DistLattice& m) {
  const FinSpace pl = FinSpace::from_poset(l.join_irreducibles());
  const FinSpace pm = FinSpace::from_poset(m.join_irreducibles());
  if (pl.size() == 0) {
    // L = 1: only possible when M = 1 as well, since 0 != 1 must be kept.
    return LatticeMap::validate(l, m, Assignment(l.size(), 0));
  }
  const Assignment phi = monotone_assignment(rng, pm, pl);
  Assignment a(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    Mask pre = 0;
    for (std::size_t q = 0; q < phi.size(); ++q)
      if (has(l.element(i), phi[q])) pre |= bit(q);
    a[i] = m.index(pre);
  }
  return LatticeMap::validate(l, m, std::move(a));
}

/// Split fork X0 -> X1 => X2 with injective f and beta; alpha is drawn
/// from the fibers of v so that v∘alpha = f∘u.
inline ForkDiagram split_fork(Rng& rng, std::size_t max_size) {
  const std::size_t s0 = uniform(rng, 1, std::max<std::size_t>(1, max_size / 2));
  const std::size_t s1 = uniform(rng, s0, std::max(s0, max_size));
  const std::size_t s2 = uniform(rng, s1, std::max(s1, max_size));
  const Assignment p1 = permutation(rng, s1), p2 = permutation(rng, s2);
  Assignment f(s0), u(s1), beta(s1), v(s2), alpha(s1);
  for (std::size_t x = 0; x < s0; ++x) f[x] = p1[x];
  for (std::size_t y = 0; y < s1; ++y) beta[y] = p2[y];
  std::vector<long> f_inv(s1, -1), b_inv(s2, -1);
  for (std::size_t x = 0; x < s0; ++x) f_inv[f[x]] = static_cast<long>(x);
  for (std::size_t y = 0; y < s1; ++y) b_inv[beta[y]] = static_cast<long>(y);
  for (std::size_t y = 0; y < s1; ++y) u[y] = f_inv[y] >= 0 ? static_cast<std::size_t>(f_inv[y]) : uniform(rng, 0, s0 - 1);
  for (std::size_t z = 0; z < s2; ++z) v[z] = b_inv[z] >= 0 ? static_cast<std::size_t>(b_inv[z]) : uniform(rng, 0, s1 - 1);
  for (std::size_t y = 0; y < s1; ++y) {
    if (f_inv[y] >= 0) {
      alpha[y] = beta[y];
      continue;
    }
    std::vector<std::size_t> fiber;
    for (std::size_t z = 0; z < s2; ++z)
      if (v[z] == f[u[y]]) fiber.push_back(z);
    alpha[y] = fiber[uniform(rng, 0, fiber.size() - 1)];
  }
  return ForkDiagram::validate(ParallelRow{s0, s1, s2, f, alpha, beta}, u, v);
}

/// Sub-row of a split fork carried by random subsets, relabelled.
inline LadderDiagram injective_ladder(Rng& rng, std::size_t max_size) {
  ForkDiagram top = split_fork(rng, max_size);
  const ParallelRow& x = top.row();
  LadderDiagram l;
  l.top = x;
  l.u = top.u();
  l.v = top.v();

  std::vector<std::size_t> y1;
  for (std::size_t a = 0; a < x.s1; ++a)
    if (coin(rng, 0.7)) y1.push_back(a);
  Mask need2 = 0;
  for (std::size_t a : y1) need2 |= bit(x.a[a]) | bit(x.b[a]);
  std::vector<std::size_t> y2;
  for (std::size_t c = 0; c < x.s2; ++c)
    if (has(need2, c) || coin(rng, 0.3)) y2.push_back(c);
  std::vector<std::size_t> y0;
  for (std::size_t a = 0; a < x.s0; ++a)
    if (std::find(y1.begin(), y1.end(), x.f[a]) != y1.end() && coin(rng, 0.8)) y0.push_back(a);

  auto shuffled = [&](std::vector<std::size_t> v) {
    std::shuffle(v.begin(), v.end(), rng);
    return v;
  };
  l.i0 = shuffled(y0);
  l.i1 = shuffled(y1);
  l.i2 = shuffled(y2);
  auto position = [](const Assignment& inc, std::size_t target) {
    return static_cast<std::size_t>(std::find(inc.begin(), inc.end(), target) - inc.begin());
  };
  ParallelRow& b = l.bottom;
  b.s0 = l.i0.size();
  b.s1 = l.i1.size();
  b.s2 = l.i2.size();
  for (std::size_t k : l.i0) b.f.push_back(position(l.i1, x.f[k]));
  for (std::size_t k : l.i1) {
    b.a.push_back(position(l.i2, x.a[k]));
    b.b.push_back(position(l.i2, x.b[k]));
  }
  return l;
}

/// Equalizer top row with i1 a bijection; i0 is surjective with probability
/// one half so that both outcomes of the lemma occur.
inline LadderDiagram retraction_ladder(Rng& rng, std::size_t max_size) {
  const std::size_t s1 = uniform(rng, 1, std::max<std::size_t>(1, max_size));
  const std::size_t s2 = uniform(rng, 1, std::max<std::size_t>(1, max_size));
  LadderDiagram l;
  ParallelRow& x = l.top;
  x.s1 = s1;
  x.s2 = s2;
  for (std::size_t y = 0; y < s1; ++y) {
    x.a.push_back(uniform(rng, 0, s2 - 1));
    x.b.push_back(coin(rng, 0.5) ? x.a.back() : uniform(rng, 0, s2 - 1));
  }
  for (std::size_t y = 0; y < s1; ++y)
    if (x.a[y] == x.b[y]) x.f.push_back(y);
  x.s0 = x.f.size();
  {
    const Assignment p = permutation(rng, x.s0);
    Assignment f(x.s0);
    for (std::size_t k = 0; k < x.s0; ++k) f[p[k]] = x.f[k];
    x.f = f;
  }

  l.i1 = permutation(rng, s1);
  l.r1 = invert(l.i1);

  Mask need2 = 0;
  for (std::size_t y = 0; y < s1; ++y) need2 |= bit(x.a[y]) | bit(x.b[y]);
  std::vector<std::size_t> y2;
  for (std::size_t c = 0; c < s2; ++c)
    if (has(need2, c) || coin(rng, 0.4)) y2.push_back(c);
  std::shuffle(y2.begin(), y2.end(), rng);
  l.i2 = y2;

  std::vector<std::size_t> y0;
  const bool full = coin(rng, 0.5);
  for (std::size_t k = 0; k < x.s0; ++k)
    if (full || coin(rng, 0.6)) y0.push_back(k);
  if (y0.empty() && x.s0 > 0) y0.push_back(uniform(rng, 0, x.s0 - 1));  // r0 : X0 -> Y0 must exist
  std::shuffle(y0.begin(), y0.end(), rng);
  l.i0 = y0;

  auto retraction = [&](const Assignment& inc, std::size_t big) {
    Assignment r(big);
    for (std::size_t t = 0; t < big; ++t) {
      auto it = std::find(inc.begin(), inc.end(), t);
      r[t] = it != inc.end() ? static_cast<std::size_t>(it - inc.begin())
                             : (inc.empty() ? 0 : uniform(rng, 0, inc.size() - 1));
    }
    return r;
  };
  ParallelRow& b = l.bottom;
  b.s0 = l.i0.size();
  b.s1 = s1;
  b.s2 = l.i2.size();
  const Assignment r2 = retraction(l.i2, s2);
  for (std::size_t k : l.i0) b.f.push_back((*l.r1)[x.f[k]]);
  for (std::size_t y = 0; y < s1; ++y) {
    b.a.push_back(r2[x.a[l.i1[y]]]);
    b.b.push_back(r2[x.b[l.i1[y]]]);
  }
  l.r2 = r2;
  l.r0 = retraction(l.i0, x.s0);
  return l;
}

/// A G-invariant partial order for the cyclic group generated by sigma.
inline FinPoset invariant_poset(Rng& rng, const Assignment& sigma, std::size_t order, std::size_t attempts) {
  const std::size_t n = sigma.size();
  std::vector<Mask> rows(n, 0);
  for (std::size_t x = 0; x < n; ++x) rows[x] = bit(x);
  for (std::size_t t = 0; t < attempts; ++t) {
    const std::size_t a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
    if (a == b) continue;
    std::vector<Mask> trial = rows;
    std::size_t pa = a, pb = b;
    for (std::size_t k = 0; k < order; ++k) {
      trial[pa] |= bit(pb);
      pa = sigma[pa];
      pb = sigma[pb];
    }
    close_preorder(trial);
    bool antisymmetric = true;
    for (std::size_t x = 0; x < n && antisymmetric; ++x)
      for (std::size_t y = x + 1; y < n && antisymmetric; ++y)
        if (has(trial[x], y) && has(trial[y], x)) antisymmetric = false;
    if (antisymmetric) rows = std::move(trial);
  }
  return FinPoset::from_rows(std::move(rows));
}

/// Random action of the cyclic group of the given order (2 or 3) on a
/// random invariant poset with n points.
inline GroupAction cyclic_action(Rng& rng, std::size_t n, std::size_t order) {
  const Assignment perm = permutation(rng, n);
  Assignment sigma = identity_assignment(n);
  std::size_t i = 0;
  while (i + order <= n) {
    if (coin(rng, 0.7)) {
      for (std::size_t k = 0; k < order; ++k) sigma[perm[i + k]] = perm[i + (k + 1) % order];
      i += order;
    } else {
      ++i;
    }
  }
  FinPoset p = invariant_poset(rng, sigma, order, uniform(rng, 0, 2 * n));
  return GroupAction::generated(FinSpace::from_poset(p), {sigma});
}

/// Random partition of n points into at most k classes.
inline EquivRelation relation(Rng& rng, std::size_t n) {
  if (n == 0) return EquivRelation{};
  const std::size_t k = uniform(rng, 1, n);
  Assignment lab(n);
  for (std::size_t x = 0; x < n; ++x) lab[x] = uniform(rng, 0, k - 1);
  return EquivRelation::from_labels(lab);
}

/// Split descent diagram dual to the kernel pair of the projection
/// q : X×C -> X with section s(x) = (x, c0):
/// Ω(X) -> Ω(X×C) => Ω(K), K = {((x,c),(x,c'))}, alpha = Ω(pr2), beta = Ω(pr1),
/// u = Ω(s), v = Ω(t) with t(y) = (y, s q y).
inline DescentDiagram split_descent(const FinPoset& x, const FinPoset& c, std::size_t c0) {
  const std::size_t nx = x.size(), nc = c.size();
  if (c0 >= nc) throw Error(ErrorKind::Index, "base point outside C");
  auto yi = [&](std::size_t a, std::size_t b) { return a * nc + b; };
  auto ki = [&](std::size_t a, std::size_t b, std::size_t b2) { return (a * nc + b) * nc + b2; };
  std::vector<Mask> yrows(nx * nc, 0), krows(nx * nc * nc, 0);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t a2 = 0; a2 < nx; ++a2) {
      if (!x.leq(a, a2)) continue;
      for (std::size_t b = 0; b < nc; ++b)
        for (std::size_t b2 = 0; b2 < nc; ++b2) {
          if (c.leq(b, b2)) yrows[yi(a, b)] |= bit(yi(a2, b2));
          for (std::size_t d = 0; d < nc; ++d)
            for (std::size_t d2 = 0; d2 < nc; ++d2)
              if (c.leq(b, b2) && c.leq(d, d2)) krows[ki(a, b, d)] |= bit(ki(a2, b2, d2));
        }
    }
  const FinSpace sx = FinSpace::from_poset(x);
  const FinSpace sy = FinSpace::from_rows(std::move(yrows));
  const FinSpace sk = FinSpace::from_rows(std::move(krows));
  Assignment q(nx * nc), s(nx), t(nx * nc), pr1(sk.size()), pr2(sk.size());
  for (std::size_t a = 0; a < nx; ++a) {
    s[a] = yi(a, c0);
    for (std::size_t b = 0; b < nc; ++b) {
      q[yi(a, b)] = a;
      t[yi(a, b)] = ki(a, b, c0);
      for (std::size_t d = 0; d < nc; ++d) {
        pr1[ki(a, b, d)] = yi(a, b);
        pr2[ki(a, b, d)] = yi(a, d);
      }
    }
  }
  LatticeMap f = omega_of_map(SpectralMap::validate(sy, sx, q));
  LatticeMap alpha = omega_of_map(SpectralMap::validate(sk, sy, pr2));
  LatticeMap beta = omega_of_map(SpectralMap::validate(sk, sy, pr1));
  Assignment u = omega_of_map(SpectralMap::validate(sx, sy, s)).assignment();
  Assignment v = omega_of_map(SpectralMap::validate(sy, sk, t)).assignment();
  return DescentDiagram::validate(std::move(f), std::move(alpha), std::move(beta), std::move(u), std::move(v));
}

/// One representative of every isomorphism class of posets on n points,
/// found by closing every relation on the upper triangle.
inline std::vector<FinPoset> posets_up_to_iso(std::size_t n) {
  std::vector<Pair> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  if (slots.size() >= 63) throw Error(ErrorKind::Size, "too many points for exhaustive enumeration");
  std::vector<FinPoset> reps;
  std::vector<std::vector<Mask>> seen;
  for (Mask m = 0; m < bit(slots.size()); ++m) {
    std::vector<Pair> pairs;
    for_each_bit(m, [&](std::size_t k) { pairs.push_back(slots[k]); });
    FinPoset p = FinPoset::from_pairs(n, pairs);
    if (std::find(seen.begin(), seen.end(), p.up_rows()) != seen.end()) continue;
    seen.push_back(p.up_rows());
    bool fresh = true;
    for (const auto& r : reps)
      if (r.comparable_pairs() == p.comparable_pairs() && is_isomorphic(r, p)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(std::move(p));
  }
  return reps;
}

/// Every continuous map src -> dst, in lexicographic order.
inline std::vector<Assignment> all_monotone_maps(const FinSpace& src, const FinSpace& dst) {
  std::vector<Assignment> out;
  const std::size_t n = src.size(), m = dst.size();
  if (n == 0) return {Assignment{}};
  if (m == 0) return {};
  Assignment a(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        if (src.leq(x, y) && !dst.leq(a[x], a[y])) ok = false;
    if (ok) out.push_back(a);
    std::size_t k = 0;
    while (k < n && ++a[k] == m) a[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace stonekit::gen
