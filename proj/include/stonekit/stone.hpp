#pragma once

#include <cstddef>
#include <vector>

#include "stonekit/dlat.hpp"
#include "stonekit/error.hpp"
#include "stonekit/finposet.hpp"
#include "stonekit/topology.hpp"

// Stone duality between finite distributive lattices and finite spectral
// spaces (= finite posets).

namespace stonekit {

struct Spectrum {
  FinSpace space;
  std::vector<PrimeIdeal> points;  // points[i] is the prime ideal of point i
};

/// Prime spectrum with the topology generated by d(a) = {I : a not in I}.
/// The specialization order is computed from the basic opens: I <= J iff every
/// d(a) containing J also contains I.
inline Spectrum spec_of_lattice(const DistLattice& l) {
  std::vector<PrimeIdeal> pts = prime_ideals(l);
  const std::size_t n = pts.size();
  std::vector<Mask> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool below = true;
      for (std::size_t a = 0; a < l.size() && below; ++a)
        if (!pts[j].contains(a) && pts[i].contains(a)) below = false;
      if (below) rows[i] |= bit(j);
    }
  FinSpace space = FinSpace::from_rows(std::move(rows), l.join_irreducibles().labels());
  detail::ensure(space.is_t0(), "spectrum of a distributive lattice is not T0");
  return {std::move(space), std::move(pts)};
}

/// Basic open d(a) of spec(L) as a set of points.
inline Mask basic_open(const Spectrum& s, std::size_t a) {
  Mask out = 0;
  for (std::size_t i = 0; i < s.points.size(); ++i)
    if (!s.points[i].contains(a)) out |= bit(i);
  return out;
}

/// spec(f) : spec(dst) -> spec(src), I |-> f^{-1}(I).
inline SpectralMap spec_of_map(const LatticeMap& f) {
  Spectrum from = spec_of_lattice(f.dst());
  Spectrum to = spec_of_lattice(f.src());
  Assignment assign(from.points.size());
  for (std::size_t i = 0; i < from.points.size(); ++i) {
    PrimeIdeal pre;
    for (std::size_t a = 0; a < f.src().size(); ++a)
      if (from.points[i].contains(f(a))) pre.members.push_back(a);
    std::size_t found = to.points.size();
    for (std::size_t j = 0; j < to.points.size(); ++j)
      if (to.points[j] == pre) found = j;
    detail::ensure(found < to.points.size(), "preimage of a prime ideal is not prime", {i});
    assign[i] = found;
  }
  return SpectralMap::validate(from.space, to.space, std::move(assign));
}

/// Ω(X) in Birkhoff form together with each element's open set.
struct Frame {
  DistLattice lattice;
  std::vector<Mask> opens;  // opens[i] is the subset of X for element i
};

/// Lattice of opens. Join-irreducibles are the minimal open neighbourhoods,
/// i.e. the points of KQ(X); for T0 spaces element masks are the opens
/// themselves.
inline Frame omega_frame(const FinSpace& x, std::size_t cap = downset_cap()) {
  Kolmogorov k = kq(x);
  Frame fr{DistLattice::from_birkhoff(k.poset, cap), {}};
  fr.opens.reserve(fr.lattice.size());
  for (Mask s : fr.lattice.elements()) {
    Mask u = 0;
    for_each_bit(s, [&](std::size_t c) { u |= k.relation.class_mask(c); });
    fr.opens.push_back(u);
  }
  return fr;
}

inline DistLattice omega(const FinSpace& x, std::size_t cap = downset_cap()) { return omega_frame(x, cap).lattice; }

inline std::size_t frame_index(const Frame& fr, Mask open) {
  for (std::size_t i = 0; i < fr.opens.size(); ++i)
    if (fr.opens[i] == open) return i;
  throw Error(ErrorKind::Internal, "set is not open");
}

/// Ω(φ) : Ω(dst) -> Ω(src), U |-> φ^{-1}(U).
inline LatticeMap omega_of_map(const SpectralMap& phi) {
  Frame src = omega_frame(phi.dst());
  Frame dst = omega_frame(phi.src());
  Assignment assign(src.lattice.size());
  for (std::size_t i = 0; i < src.opens.size(); ++i) assign[i] = frame_index(dst, phi.preimage(src.opens[i]));
  return LatticeMap::validate(src.lattice, dst.lattice, std::move(assign));
}

/// Witness x |-> {U open : x not in U} for X ≅ spec(Ω(X)), verified to be a
/// homeomorphism.
inline Assignment round_trip_space(const FinSpace& x) {
  require_t0(x);
  Frame fr = omega_frame(x);
  Spectrum s = spec_of_lattice(fr.lattice);
  Assignment w(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    PrimeIdeal ideal;
    for (std::size_t i = 0; i < fr.opens.size(); ++i)
      if (!has(fr.opens[i], p)) ideal.members.push_back(i);
    std::size_t found = s.points.size();
    for (std::size_t j = 0; j < s.points.size(); ++j)
      if (s.points[j] == ideal) found = j;
    detail::ensure(found < s.points.size(), "point does not give a prime ideal of its opens", {p});
    w[p] = found;
  }
  detail::ensure(is_homeomorphism(x, s.space, w), "X -> spec(Ω(X)) is not a homeomorphism");
  return w;
}

/// Lattice isomorphism L -> Ω(spec(L)), a |-> d(a), validated.
inline LatticeMap round_trip_lattice(const DistLattice& l) {
  Spectrum s = spec_of_lattice(l);
  Frame fr = omega_frame(s.space);
  Assignment assign(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) assign[a] = frame_index(fr, basic_open(s, a));
  LatticeMap m = LatticeMap::validate(l, fr.lattice, std::move(assign));
  detail::ensure(m.bijective(), "L -> Ω(spec(L)) is not bijective");
  return m;
}

/// Hochster dual spec(Ω(X)^op), reindexed onto the points of X: the prime
/// ideal J of Ω(X)^op sits at the point x whose prime ideal of Ω(X) is the
/// complement of J.
inline FinSpace hochster_dual(const FinSpace& x) {
  require_t0(x);
  Frame fr = omega_frame(x);
  NormalizedLattice op = opposite_with_witness(fr.lattice);
  Spectrum s = spec_of_lattice(op.lattice);
  const Assignment back = invert(op.witness);  // op index -> Ω(X) index
  Assignment point_of(s.points.size(), x.size());
  for (std::size_t j = 0; j < s.points.size(); ++j) {
    // Complement of J in Ω(X); it must be {U : p not in U} for a unique p.
    std::vector<bool> in_ideal(fr.opens.size(), true);
    for (std::size_t e : s.points[j].members) in_ideal[back[e]] = false;
    for (std::size_t p = 0; p < x.size(); ++p) {
      bool match = true;
      for (std::size_t i = 0; i < fr.opens.size() && match; ++i) match = in_ideal[i] == !has(fr.opens[i], p);
      if (match) point_of[j] = p;
    }
    detail::ensure(point_of[j] < x.size(), "prime filter of Ω(X) is not a point", {j});
  }
  detail::ensure(is_injective(point_of), "Hochster point correspondence is not bijective");
  std::vector<Mask> rows(x.size(), 0);
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = 0; j < s.points.size(); ++j)
      if (s.space.leq(i, j)) rows[point_of[i]] |= bit(point_of[j]);
  return FinSpace::from_rows(std::move(rows), x.labels());
}

}  // namespace stonekit
