#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stonekit/bits.hpp"
#include "stonekit/error.hpp"
#include "stonekit/finposet.hpp"

namespace stonekit {

/// Finite distributive lattice in Birkhoff normal form: the downsets of its
/// poset of join-irreducibles, indexed in canonical (size, mask) order. Join is
/// union, meet is intersection, element 0 is the bottom and the last element
/// the top.
class DistLattice {
 public:
  DistLattice() : elements_{Mask{0}} {}

  static DistLattice from_birkhoff(FinPoset ji, std::size_t cap = downset_cap()) {
    DistLattice l;
    l.elements_ = downsets(ji, cap);
    l.ji_ = std::move(ji);
    return l;
  }

  const FinPoset& join_irreducibles() const { return ji_; }
  std::size_t size() const { return elements_.size(); }
  Mask element(std::size_t i) const { return elements_[i]; }
  const std::vector<Mask>& elements() const { return elements_; }

  std::size_t bottom() const { return 0; }
  std::size_t top() const { return elements_.size() - 1; }

  std::optional<std::size_t> find(Mask m) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), m, CanonicalLess{});
    if (it == elements_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  std::size_t index(Mask m) const {
    auto i = find(m);
    detail::ensure(i.has_value(), "mask is not an element of the lattice");
    return *i;
  }

  std::size_t join(std::size_t a, std::size_t b) const { return index(elements_[a] | elements_[b]); }
  std::size_t meet(std::size_t a, std::size_t b) const { return index(elements_[a] & elements_[b]); }
  bool leq(std::size_t a, std::size_t b) const { return subset(elements_[a], elements_[b]); }

  /// The join-irreducible element generated by p, i.e. the principal downset of p.
  std::size_t principal(std::size_t p) const { return index(ji_.down(p)); }

  friend bool operator==(const DistLattice& a, const DistLattice& b) { return a.ji_ == b.ji_; }

 private:
  FinPoset ji_;
  std::vector<Mask> elements_;
};

inline DistLattice from_birkhoff(const FinPoset& p, std::size_t cap = downset_cap()) {
  return DistLattice::from_birkhoff(p, cap);
}

/// Table form of a lattice, used for import and export only.
struct LatticeTables {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;
  std::size_t bot = 0;
  std::size_t top = 0;
};

inline LatticeTables to_tables(const DistLattice& l) {
  LatticeTables t;
  t.n = l.size();
  t.meet.assign(t.n, std::vector<std::size_t>(t.n));
  t.join.assign(t.n, std::vector<std::size_t>(t.n));
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b) {
      t.meet[a][b] = l.meet(a, b);
      t.join[a][b] = l.join(a, b);
    }
  t.bot = l.bottom();
  t.top = l.top();
  return t;
}

/// A lattice in Birkhoff form together with the isomorphism from the input
/// carrier: witness[i] is the Birkhoff index of input element i.
struct NormalizedLattice {
  DistLattice lattice;
  Assignment witness;
};

namespace detail {

// Birkhoff normalisation of an abstract finite distributive lattice on
// 0..m-1 given by its order and join. The join-irreducibles are the non-bottom
// elements that differ from the join of everything strictly below them.
inline NormalizedLattice normalize(std::size_t m, std::size_t bot,
                                   const std::function<bool(std::size_t, std::size_t)>& leq,
                                   const std::function<std::size_t(std::size_t, std::size_t)>& join,
                                   std::size_t cap = downset_cap()) {
  std::vector<std::size_t> ji;
  for (std::size_t a = 0; a < m; ++a) {
    if (a == bot) continue;
    std::size_t below = bot;
    for (std::size_t b = 0; b < m; ++b)
      if (b != a && leq(b, a)) below = join(below, b);
    if (below != a) ji.push_back(a);
  }
  check_point_count(ji.size());
  std::vector<Mask> rows(ji.size(), 0);
  for (std::size_t i = 0; i < ji.size(); ++i)
    for (std::size_t j = 0; j < ji.size(); ++j)
      if (leq(ji[i], ji[j])) rows[i] |= bit(j);
  NormalizedLattice out{DistLattice::from_birkhoff(FinPoset::from_rows(std::move(rows)), cap), {}};
  out.witness.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    Mask s = 0;
    for (std::size_t j = 0; j < ji.size(); ++j)
      if (leq(ji[j], a)) s |= bit(j);
    auto idx = out.lattice.find(s);
    ensure(idx.has_value(), "join-irreducible support is not a downset", {a});
    out.witness[a] = *idx;
  }
  ensure(out.lattice.size() == m && is_injective(out.witness), "Birkhoff witness is not bijective");
  return out;
}

}  // namespace detail

/// Validates lattice tables (commutativity, associativity, absorption, bounds,
/// distributivity) and returns the Birkhoff form with the isomorphism witness.
inline NormalizedLattice from_tables(const LatticeTables& t) {
  const std::size_t n = t.n;
  if (n == 0) throw Error(ErrorKind::NotALattice, "a lattice must contain 0 and 1");
  if (t.meet.size() != n || t.join.size() != n) throw Error(ErrorKind::Index, "tables must be n x n");
  for (std::size_t a = 0; a < n; ++a) {
    if (t.meet[a].size() != n || t.join[a].size() != n) throw Error(ErrorKind::Index, "tables must be n x n", {a});
    for (std::size_t b = 0; b < n; ++b)
      if (t.meet[a][b] >= n || t.join[a][b] >= n) throw Error(ErrorKind::Index, "table entry out of range", {a, b});
  }
  if (t.bot >= n || t.top >= n) throw Error(ErrorKind::Index, "bounds out of range");
  const auto& M = t.meet;
  const auto& J = t.join;
  auto fail = [](const std::string& law, std::vector<std::size_t> w) {
    throw Error(ErrorKind::NotALattice, law + " fails", std::move(w), law);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (M[a][b] != M[b][a]) fail("meet commutativity", {a, b});
      if (J[a][b] != J[b][a]) fail("join commutativity", {a, b});
      if (M[a][J[a][b]] != a) fail("absorption a^(avb)=a", {a, b});
      if (J[a][M[a][b]] != a) fail("absorption av(a^b)=a", {a, b});
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (M[a][M[b][c]] != M[M[a][b]][c]) fail("meet associativity", {a, b, c});
        if (J[a][J[b][c]] != J[J[a][b]][c]) fail("join associativity", {a, b, c});
      }
  for (std::size_t a = 0; a < n; ++a) {
    if (J[t.bot][a] != a || M[t.bot][a] != t.bot) fail("bottom bound", {a});
    if (M[t.top][a] != a || J[t.top][a] != t.top) fail("top bound", {a});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (M[a][J[b][c]] != J[M[a][b]][M[a][c]])
          throw Error(ErrorKind::NotDistributive, detail::concat("a^(bvc) != (a^b)v(a^c) at (", a, ",", b, ",", c, ")"),
                      {a, b, c}, "distributivity");
  return detail::normalize(
      n, t.bot, [&](std::size_t a, std::size_t b) { return M[a][b] == a; },
      [&](std::size_t a, std::size_t b) { return J[a][b]; });
}

/// Prime ideal as a sorted list of element indices.
struct PrimeIdeal {
  std::vector<std::size_t> members;

  bool contains(std::size_t a) const { return std::binary_search(members.begin(), members.end(), a); }
  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

/// Prime ideals ordered by generator: position p holds {S : p not in S}.
inline std::vector<PrimeIdeal> prime_ideals(const DistLattice& l) {
  std::vector<PrimeIdeal> out;
  const std::size_t n = l.join_irreducibles().size();
  for (std::size_t p = 0; p < n; ++p) {
    PrimeIdeal ideal;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (!has(l.element(i), p)) ideal.members.push_back(i);
    out.push_back(std::move(ideal));
  }
  return out;
}

namespace detail {

inline bool is_prime_ideal(const DistLattice& l, const std::vector<bool>& in) {
  const std::size_t m = l.size();
  bool nonempty = false, proper = false;
  for (std::size_t a = 0; a < m; ++a) {
    nonempty = nonempty || in[a];
    proper = proper || !in[a];
  }
  if (!nonempty || !proper) return false;
  for (std::size_t a = 0; a < m; ++a) {
    if (!in[a]) continue;
    for (std::size_t b = 0; b < m; ++b) {
      if (l.leq(b, a) && !in[b]) return false;
      if (in[b] && !in[l.join(a, b)]) return false;
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (in[l.meet(a, b)] && !in[a] && !in[b]) return false;
  return true;
}

}  // namespace detail

/// Oracle for prime_ideals straight from the ideal and primality axioms. Up to
/// 16 elements every subset is tested; above that the candidates are the
/// principal downsets, which are the only ideals of a finite lattice.
inline std::vector<PrimeIdeal> prime_ideals_bruteforce(const DistLattice& l) {
  const std::size_t m = l.size();
  std::vector<std::vector<bool>> found;
  if (m <= 16) {
    for (Mask s = 0; s < bit(m); ++s) {
      std::vector<bool> in(m);
      for (std::size_t a = 0; a < m; ++a) in[a] = has(s, a);
      if (detail::is_prime_ideal(l, in)) found.push_back(std::move(in));
    }
  } else {
    for (std::size_t top = 0; top < m; ++top) {
      std::vector<bool> in(m);
      for (std::size_t a = 0; a < m; ++a) in[a] = l.leq(a, top);
      if (detail::is_prime_ideal(l, in)) found.push_back(std::move(in));
    }
  }
  // Canonical position: the generator p whose principal downset is the least
  // element outside the ideal.
  std::vector<PrimeIdeal> out(l.join_irreducibles().size());
  std::vector<bool> filled(out.size(), false);
  for (const auto& in : found) {
    std::size_t least = m;
    for (std::size_t a = 0; a < m && least == m; ++a)
      if (!in[a]) least = a;
    for (std::size_t a = 0; a < m; ++a)
      if (!in[a] && !l.leq(least, a)) least = m + 1;
    detail::ensure(least < m, "complement of a prime ideal has no least element");
    std::size_t gen = out.size();
    for (std::size_t p = 0; p < out.size(); ++p)
      if (l.principal(p) == least) gen = p;
    detail::ensure(gen < out.size() && !filled[gen], "prime ideal not generated by a join-irreducible");
    for (std::size_t a = 0; a < m; ++a)
      if (in[a]) out[gen].members.push_back(a);
    filled[gen] = true;
  }
  detail::ensure(std::all_of(filled.begin(), filled.end(), [](bool b) { return b; }),
                 "some join-irreducible generates no prime ideal");
  return out;
}

/// Bounded lattice homomorphism between Birkhoff-form lattices.
class LatticeMap {
 public:
  /// Checks the order, join, meet and bound laws; throws with the first
  /// violating pair in index order.
  static LatticeMap validate(DistLattice src, DistLattice dst, Assignment assign) {
    if (assign.size() != src.size())
      throw Error(ErrorKind::Index, detail::concat("assignment has ", assign.size(), " entries, expected ", src.size()));
    for (std::size_t a = 0; a < assign.size(); ++a)
      if (assign[a] >= dst.size()) throw Error(ErrorKind::Index, "assignment value out of range", {a, assign[a]});
    const auto& f = assign;
    const std::size_t m = src.size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (src.leq(a, b) && !dst.leq(f[a], f[b]))
          throw Error(ErrorKind::NotMonotone, detail::concat("order not preserved at (", a, ",", b, ")"), {a, b});
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (f[src.join(a, b)] != dst.join(f[a], f[b]))
          throw Error(ErrorKind::NotJoinPreserving, detail::concat("join not preserved at (", a, ",", b, ")"), {a, b});
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (f[src.meet(a, b)] != dst.meet(f[a], f[b]))
          throw Error(ErrorKind::NotMeetPreserving, detail::concat("meet not preserved at (", a, ",", b, ")"), {a, b});
    if (f[src.bottom()] != dst.bottom())
      throw Error(ErrorKind::BoundsViolated, "bottom not preserved", {src.bottom(), f[src.bottom()]});
    if (f[src.top()] != dst.top()) throw Error(ErrorKind::BoundsViolated, "top not preserved", {src.top(), f[src.top()]});
    return unchecked(std::move(src), std::move(dst), std::move(assign));
  }

  /// No validation. Only for tests and mutation probes.
  static LatticeMap unchecked(DistLattice src, DistLattice dst, Assignment assign) {
    LatticeMap m;
    m.src_ = std::move(src);
    m.dst_ = std::move(dst);
    m.assign_ = std::move(assign);
    return m;
  }

  static LatticeMap identity(const DistLattice& l) { return unchecked(l, l, identity_assignment(l.size())); }

  const DistLattice& src() const { return src_; }
  const DistLattice& dst() const { return dst_; }
  const Assignment& assignment() const { return assign_; }
  std::size_t operator()(std::size_t a) const { return assign_[a]; }

  bool bijective() const { return src_.size() == dst_.size() && is_injective(assign_); }

 /// Identity of the trivial lattice.
  LatticeMap() : assign_{0} {}

 private:
  DistLattice src_, dst_;
  Assignment assign_;
};

inline LatticeMap validate_lattice_map(const DistLattice& src, const DistLattice& dst, Assignment assign) {
  return LatticeMap::validate(src, dst, std::move(assign));
}

/// outer ∘ inner.
inline LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner) {
  if (!(inner.dst() == outer.src())) throw Error(ErrorKind::Index, "composition of non-composable lattice maps");
  return LatticeMap::validate(inner.src(), outer.dst(), compose(outer.assignment(), inner.assignment()));
}

/// Inverse of a bijective lattice map, validated as a lattice map.
inline LatticeMap inverse(const LatticeMap& f) {
  if (!f.bijective()) throw Error(ErrorKind::Index, "lattice map is not bijective");
  return LatticeMap::validate(f.dst(), f.src(), invert(f.assignment()));
}

/// Lattice isomorphism L -> M induced by an isomorphism of join-irreducibles.
inline std::optional<Assignment> lattice_isomorphism(const DistLattice& l, const DistLattice& m) {
  auto w = is_isomorphic(l.join_irreducibles(), m.join_irreducibles());
  if (!w) return std::nullopt;
  Assignment out(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) {
    Mask s = 0;
    for_each_bit(l.element(a), [&](std::size_t p) { s |= bit((*w)[p]); });
    out[a] = m.index(s);
  }
  return out;
}

/// Re-normalises the sub-lattice on `carrier` (element indices of `l`) after
/// checking that it contains 0 and 1 and is closed under both operations.
/// witness[k] is the Birkhoff index of carrier[k].
inline NormalizedLattice sublattice(const DistLattice& l, const std::vector<std::size_t>& carrier) {
  std::vector<long> pos(l.size(), -1);
  for (std::size_t k = 0; k < carrier.size(); ++k) pos[carrier[k]] = static_cast<long>(k);
  detail::ensure(pos[l.bottom()] >= 0 && pos[l.top()] >= 0, "sub-lattice carrier misses a bound");
  for (std::size_t a : carrier)
    for (std::size_t b : carrier)
      detail::ensure(pos[l.join(a, b)] >= 0 && pos[l.meet(a, b)] >= 0, "sub-lattice carrier not closed", {a, b});
  return detail::normalize(
      carrier.size(), static_cast<std::size_t>(pos[l.bottom()]),
      [&](std::size_t i, std::size_t j) { return l.leq(carrier[i], carrier[j]); },
      [&](std::size_t i, std::size_t j) { return static_cast<std::size_t>(pos[l.join(carrier[i], carrier[j])]); });
}

struct Equalizer {
  DistLattice lattice;
  LatticeMap inclusion;
  std::vector<std::size_t> carrier;  // {x : alpha(x) = beta(x)}, ascending
};

/// Sub-lattice on an ascending carrier together with its validated inclusion.
inline Equalizer equalizer_on(const DistLattice& l, std::vector<std::size_t> carrier) {
  NormalizedLattice sub = sublattice(l, carrier);
  Assignment incl(carrier.size());
  for (std::size_t k = 0; k < carrier.size(); ++k) incl[sub.witness[k]] = carrier[k];
  return {sub.lattice, LatticeMap::validate(sub.lattice, l, std::move(incl)), std::move(carrier)};
}

/// Equalizer of two parallel lattice maps, computed on underlying sets and
/// then re-normalised with freshly computed join-irreducibles.
inline Equalizer equalizer(const LatticeMap& alpha, const LatticeMap& beta) {
  if (!(alpha.src() == beta.src()) || !(alpha.dst() == beta.dst()))
    throw Error(ErrorKind::Index, "equalizer of non-parallel lattice maps");
  std::vector<std::size_t> carrier;
  for (std::size_t x = 0; x < alpha.src().size(); ++x)
    if (alpha(x) == beta(x)) carrier.push_back(x);
  return equalizer_on(alpha.src(), std::move(carrier));
}

struct Product {
  DistLattice lattice;
  LatticeMap first;
  LatticeMap second;

  /// Index of the pair (a, b).
  std::size_t pair(std::size_t a, std::size_t b) const {
    return lattice.index(first.dst().element(a) | (second.dst().element(b) << first.dst().join_irreducibles().size()));
  }
};

/// Componentwise product; its join-irreducibles are the disjoint union of the
/// factors' join-irreducibles (first factor first).
inline Product product(const DistLattice& l1, const DistLattice& l2, std::size_t cap = downset_cap()) {
  const std::size_t n1 = l1.join_irreducibles().size();
  DistLattice prod = DistLattice::from_birkhoff(disjoint_union(l1.join_irreducibles(), l2.join_irreducibles()), cap);
  Assignment p1(prod.size()), p2(prod.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    p1[i] = l1.index(prod.element(i) & full_mask(n1));
    p2[i] = l2.index(prod.element(i) >> n1);
  }
  return {prod, LatticeMap::validate(prod, l1, std::move(p1)), LatticeMap::validate(prod, l2, std::move(p2))};
}

/// Opposite lattice (order reversed, join and meet swapped) re-normalised to
/// Birkhoff form. witness[a] is the index in the opposite lattice of a.
inline NormalizedLattice opposite_with_witness(const DistLattice& l) {
  return detail::normalize(
      l.size(), l.top(), [&](std::size_t a, std::size_t b) { return l.leq(b, a); },
      [&](std::size_t a, std::size_t b) { return l.meet(a, b); });
}

inline DistLattice opposite(const DistLattice& l) { return opposite_with_witness(l).lattice; }

/// Every element of a finite lattice is finite in the frame-theoretic sense.
inline std::vector<std::size_t> finite_elements(const DistLattice& l) { return identity_assignment(l.size()); }

}  // namespace stonekit
