#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stonekit/bits.hpp"
#include "stonekit/error.hpp"
#include "stonekit/finposet.hpp"

namespace stonekit {

/// Finite topological space stored as its specialization preorder:
/// x <= y iff y lies in the closure of {x}. Open sets are the down-sets of the
/// preorder and closed sets the up-sets.
class FinSpace {
 public:
  FinSpace() = default;

  /// Reflexive-transitive closure of the generating pairs; cycles are allowed.
  static FinSpace from_pairs(std::size_t n, std::span<const Pair> pairs, std::vector<std::string> labels = {}) {
    check_point_count(n);
    std::vector<Mask> rows(n, 0);
    for (const auto& [x, y] : pairs) {
      if (x >= n || y >= n)
        throw Error(ErrorKind::Index, detail::concat("pair (", x, ",", y, ") out of range for n=", n), {x, y});
      rows[x] |= bit(y);
    }
    return from_rows(std::move(rows), std::move(labels));
  }

  static FinSpace from_rows(std::vector<Mask> rows, std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    check_point_count(n);
    if (!labels.empty() && labels.size() != n)
      throw Error(ErrorKind::Index, detail::concat("expected ", n, " labels, got ", labels.size()));
    for (std::size_t x = 0; x < n; ++x)
      if (rows[x] & ~full_mask(n)) throw Error(ErrorKind::Index, "relation row out of range", {x});
    close_preorder(rows);
    FinSpace s;
    s.down_ = transpose(rows);
    s.up_ = std::move(rows);
    s.labels_ = std::move(labels);
    return s;
  }

  static FinSpace from_poset(const FinPoset& p) { return from_rows(p.up_rows(), p.labels()); }
  static FinSpace discrete(std::size_t n) { return from_pairs(n, {}); }
  static FinSpace indiscrete(std::size_t n) {
    std::vector<Mask> rows(n, full_mask(n));
    return from_rows(std::move(rows));
  }

  std::size_t size() const { return up_.size(); }
  bool leq(std::size_t x, std::size_t y) const { return has(up_[x], y); }
  Mask up(std::size_t x) const { return up_[x]; }
  Mask down(std::size_t x) const { return down_[x]; }
  const std::vector<Mask>& up_rows() const { return up_; }
  Mask all() const { return full_mask(size()); }

  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }
  std::string label(std::size_t x) const { return labels_.empty() ? std::to_string(x) : labels_[x]; }

  bool is_open(Mask a) const {
    bool ok = true;
    for_each_bit(a, [&](std::size_t y) { ok = ok && subset(down_[y], a); });
    return ok;
  }
  bool is_closed(Mask a) const { return is_open(all() & ~a); }

  /// First pair of distinct points with equal closures, if any.
  std::optional<Pair> t0_violation() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = x + 1; y < size(); ++y)
        if (leq(x, y) && leq(y, x)) return Pair{x, y};
    return std::nullopt;
  }
  bool is_t0() const { return !t0_violation().has_value(); }

  /// The specialization order as a poset; throws NotT0 when it is not antisymmetric.
  FinPoset as_poset() const {
    if (auto v = t0_violation())
      throw Error(ErrorKind::NotT0, detail::concat("points ", v->first, " and ", v->second, " have equal closures"),
                  {v->first, v->second});
    return FinPoset::from_rows(up_, labels_);
  }

  friend bool operator==(const FinSpace& a, const FinSpace& b) { return a.up_ == b.up_ && a.labels_ == b.labels_; }

 private:
  std::vector<Mask> up_;
  std::vector<Mask> down_;
  std::vector<std::string> labels_;
};

inline void require_t0(const FinSpace& x) { (void)x.as_poset(); }

inline FinSpace disjoint_union(const FinSpace& a, const FinSpace& b) {
  check_point_count(a.size() + b.size());
  std::vector<Mask> rows;
  for (std::size_t x = 0; x < a.size(); ++x) rows.push_back(a.up(x));
  for (std::size_t x = 0; x < b.size(); ++x) rows.push_back(b.up(x) << a.size());
  std::vector<std::string> labels;
  if (a.has_labels() || b.has_labels()) {
    for (std::size_t x = 0; x < a.size(); ++x) labels.push_back(a.label(x));
    for (std::size_t x = 0; x < b.size(); ++x) labels.push_back(b.label(x));
  }
  return FinSpace::from_rows(std::move(rows), std::move(labels));
}

inline FinSpace opposite(const FinSpace& x) { return FinSpace::from_rows(transpose(x.up_rows()), x.labels()); }

/// Continuous map of finite spaces, i.e. a monotone map of specialization
/// preorders. Between finite spectral spaces every continuous map is spectral.
class SpectralMap {
 public:
  static SpectralMap validate(FinSpace src, FinSpace dst, Assignment assign) {
    if (assign.size() != src.size())
      throw Error(ErrorKind::Index, detail::concat("assignment has ", assign.size(), " entries, expected ", src.size()));
    for (std::size_t x = 0; x < assign.size(); ++x)
      if (assign[x] >= dst.size()) throw Error(ErrorKind::Index, "assignment value out of range", {x, assign[x]});
    for (std::size_t x = 0; x < src.size(); ++x)
      for (std::size_t y = 0; y < src.size(); ++y)
        if (src.leq(x, y) && !dst.leq(assign[x], assign[y]))
          throw Error(ErrorKind::NotMonotone, detail::concat("map is not continuous at (", x, ",", y, ")"), {x, y});
    SpectralMap m;
    m.src_ = std::move(src);
    m.dst_ = std::move(dst);
    m.assign_ = std::move(assign);
    return m;
  }

  static SpectralMap identity(const FinSpace& x) { return validate(x, x, identity_assignment(x.size())); }

  const FinSpace& src() const { return src_; }
  const FinSpace& dst() const { return dst_; }
  const Assignment& assignment() const { return assign_; }
  std::size_t operator()(std::size_t x) const { return assign_[x]; }

  Mask image(Mask a) const {
    Mask out = 0;
    for_each_bit(a, [&](std::size_t x) { out |= bit(assign_[x]); });
    return out;
  }
  Mask preimage(Mask b) const {
    Mask out = 0;
    for (std::size_t x = 0; x < assign_.size(); ++x)
      if (has(b, assign_[x])) out |= bit(x);
    return out;
  }

 private:
  FinSpace src_, dst_;
  Assignment assign_;
};

/// outer ∘ inner.
inline SpectralMap compose(const SpectralMap& outer, const SpectralMap& inner) {
  if (!(inner.dst() == outer.src())) throw Error(ErrorKind::Index, "composition of non-composable maps");
  return SpectralMap::validate(inner.src(), outer.dst(), compose(outer.assignment(), inner.assignment()));
}

/// Subspace on the points of `a`, listed in ascending order; returns the
/// space and its embedding.
inline std::pair<FinSpace, Assignment> subspace(const FinSpace& x, Mask a) {
  const Assignment pts = to_indices(a);
  std::vector<Mask> rows(pts.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (x.leq(pts[i], pts[j])) rows[i] |= bit(j);
    if (x.has_labels()) labels.push_back(x.label(pts[i]));
  }
  return {FinSpace::from_rows(std::move(rows), std::move(labels)), pts};
}

/// Connected components of the comparability graph, ordered by least point.
inline std::vector<Mask> components(const FinSpace& x) {
  std::vector<Mask> out;
  Mask seen = 0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (has(seen, p)) continue;
    Mask comp = bit(p), frontier = bit(p);
    while (frontier) {
      Mask next = 0;
      for_each_bit(frontier, [&](std::size_t q) { next |= x.up(q) | x.down(q); });
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

/// Up-closure of A under the specialization preorder.
inline Mask closure(const FinSpace& x, Mask a) {
  Mask out = 0;
  for_each_bit(a, [&](std::size_t p) { out |= x.up(p); });
  return out;
}

/// Partition of the points of a finite space. Canonical form: each class
/// sorted, classes ordered by least element.
class EquivRelation {
 public:
  EquivRelation() = default;

  static EquivRelation from_classes(std::size_t n, std::vector<std::vector<std::size_t>> classes) {
    check_point_count(n);
    std::vector<bool> seen(n, false);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) throw Error(ErrorKind::Index, "empty equivalence class", {c});
      for (std::size_t x : classes[c]) {
        if (x >= n) throw Error(ErrorKind::Index, "class member out of range", {c, x});
        if (seen[x]) throw Error(ErrorKind::Index, "point in two classes", {x});
        seen[x] = true;
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      if (!seen[x]) throw Error(ErrorKind::Index, "point not covered by the partition", {x});
    std::vector<std::size_t> cls(n);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (std::size_t x : classes[c]) cls[x] = c;
    return from_labels(cls);
  }

  /// Equivalence relation generated by the pairs.
  static EquivRelation generated(std::size_t n, std::span<const Pair> pairs) {
    check_point_count(n);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : pairs) {
      if (a >= n || b >= n) throw Error(ErrorKind::Index, "pair out of range", {a, b});
      const std::size_t ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<std::size_t> cls(n);
    for (std::size_t x = 0; x < n; ++x) cls[x] = find(x);
    return from_labels(cls);
  }

  static EquivRelation discrete(std::size_t n) { return from_labels(identity_assignment(n)); }

  /// Classes given by any labelling of points.
  static EquivRelation from_labels(const std::vector<std::size_t>& label) {
    EquivRelation r;
    r.class_of_.assign(label.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> first;  // (label, class)
    for (std::size_t x = 0; x < label.size(); ++x) {
      auto it = std::find_if(first.begin(), first.end(), [&](const auto& e) { return e.first == label[x]; });
      if (it == first.end()) {
        first.emplace_back(label[x], r.classes_.size());
        r.classes_.emplace_back();
        it = std::prev(first.end());
      }
      r.classes_[it->second].push_back(x);
      r.class_of_[x] = it->second;
    }
    return r;
  }

  std::size_t points() const { return class_of_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_of(std::size_t x) const { return class_of_[x]; }
  const Assignment& projection() const { return class_of_; }
  Mask class_mask(std::size_t c) const {
    Mask m = 0;
    for (std::size_t x : classes_[c]) m |= bit(x);
    return m;
  }

  friend bool operator==(const EquivRelation& a, const EquivRelation& b) { return a.class_of_ == b.class_of_; }

 private:
  std::vector<std::vector<std::size_t>> classes_;
  Assignment class_of_;
};

/// R^{-1}(A): union of the classes meeting A.
inline Mask saturation(const EquivRelation& r, Mask a) {
  Mask out = 0;
  for (std::size_t c = 0; c < r.class_count(); ++c)
    if (r.class_mask(c) & a) out |= r.class_mask(c);
  return out;
}

inline Mask saturation(const FinSpace& x, const EquivRelation& r, Mask a) {
  if (r.points() != x.size()) throw Error(ErrorKind::Index, "relation does not live on this space");
  return saturation(r, a);
}

inline EquivRelation kernel(const Assignment& f) { return EquivRelation::from_labels(f); }

/// All open sets (down-sets of the preorder) in canonical order.
inline std::vector<Mask> opens(const FinSpace& x, std::size_t cap = downset_cap()) {
  // Down-sets are unions of preorder classes; enumerate down-sets of the
  // quotient poset and pull back.
  EquivRelation eq = EquivRelation::from_labels([&] {
    Assignment lab(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) lab[p] = static_cast<std::size_t>(std::countr_zero(x.up(p) & x.down(p)));
    return lab;
  }());
  std::vector<Mask> rows(eq.class_count(), 0);
  for (std::size_t c = 0; c < eq.class_count(); ++c)
    for_each_bit(x.up(eq.classes()[c].front()), [&](std::size_t y) { rows[c] |= bit(eq.class_of(y)); });
  std::vector<Mask> out;
  for (Mask s : downsets(FinPoset::from_rows(std::move(rows)), cap)) {
    Mask m = 0;
    for_each_bit(s, [&](std::size_t c) { m |= eq.class_mask(c); });
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

inline std::vector<Mask> closed_sets(const FinSpace& x, std::size_t cap = downset_cap()) {
  std::vector<Mask> out;
  for (Mask u : opens(x, cap)) out.push_back(x.all() & ~u);
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

/// Kolmogorov quotient: classes of x <= y <= x, ordered by least element.
struct Kolmogorov {
  FinPoset poset;
  Assignment projection;
  EquivRelation relation;
};

inline Kolmogorov kq(const FinSpace& x) {
  Assignment lab(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) lab[p] = static_cast<std::size_t>(std::countr_zero(x.up(p) & x.down(p)));
  EquivRelation eq = EquivRelation::from_labels(lab);
  std::vector<Mask> rows(eq.class_count(), 0);
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < eq.class_count(); ++c) {
    const std::size_t rep = eq.classes()[c].front();
    for_each_bit(x.up(rep), [&](std::size_t y) { rows[c] |= bit(eq.class_of(y)); });
    if (x.has_labels()) labels.push_back(x.label(rep));
  }
  return {FinPoset::from_rows(std::move(rows), std::move(labels)), eq.projection(), eq};
}

inline SpectralMap kq_unit(const FinSpace& x, const Kolmogorov& k) {
  return SpectralMap::validate(x, FinSpace::from_poset(k.poset), k.projection);
}

struct ReflectionReport {
  bool t0 = false;
  bool unit_injective = false;
  bool unit_surjective = false;
  bool unit_embedding = false;      // homeomorphism onto its image
  bool unit_homeomorphism = false;
  bool noetherian_spectral = false;  // a finite space is noetherian spectral iff T0
};

struct SpectralReflection {
  FinSpace reflection;
  SpectralMap unit;
  ReflectionReport report;
};

namespace detail {

// x <= y iff f(x) <= f(y) for all x, y.
inline bool reflects_order(const SpectralMap& f) {
  for (std::size_t a = 0; a < f.src().size(); ++a)
    for (std::size_t b = 0; b < f.src().size(); ++b)
      if (f.src().leq(a, b) != f.dst().leq(f(a), f(b))) return false;
  return true;
}

}  // namespace detail

/// The spectral reflection of a finite space is its Kolmogorov quotient: a
/// finite T0 space is already noetherian spectral. The report is read off the
/// computed unit, not from the T0 flag.
inline SpectralReflection spectral_reflection(const FinSpace& x) {
  Kolmogorov k = kq(x);
  SpectralMap unit = kq_unit(x, k);
  ReflectionReport rep;
  rep.t0 = x.is_t0();
  rep.noetherian_spectral = rep.t0;
  rep.unit_injective = is_injective(unit.assignment());
  rep.unit_surjective = is_surjective(unit.assignment(), unit.dst().size());
  rep.unit_embedding = rep.unit_injective && detail::reflects_order(unit);
  rep.unit_homeomorphism = rep.unit_embedding && rep.unit_surjective;
  detail::ensure(rep.unit_injective == rep.t0, "reflection unit injective iff T0 fails");
  detail::ensure(rep.unit_homeomorphism == rep.noetherian_spectral, "reflection unit homeo iff noetherian spectral fails");
  return {unit.dst(), unit, rep};
}

enum class OracleMode { Off, On, Auto };

inline constexpr std::size_t kQuotientOracleLimit = 12;

/// Open sets of X/R straight from the definition of the quotient topology:
/// subsets V of classes whose preimage is open in X. Enumerates 2^|classes|.
inline std::vector<Mask> quotient_opens_oracle(const FinSpace& x, const EquivRelation& r) {
  std::vector<Mask> out;
  const std::size_t k = r.class_count();
  if (k >= 63) throw Error(ErrorKind::Size, "too many classes for the quotient oracle");
  for (Mask v = 0; v < bit(k); ++v) {
    Mask pre = 0;
    for_each_bit(v, [&](std::size_t c) { pre |= r.class_mask(c); });
    if (x.is_open(pre)) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

struct Quotient {
  FinSpace space;
  SpectralMap map;
  EquivRelation relation;
};

/// Topological quotient X/R. The preorder on classes is the transitive closure
/// of {([x],[y]) : x <= y}; below the oracle limit (or always with On) it is
/// cross-checked against quotient_opens_oracle and OracleMismatch is raised
/// on disagreement.
inline Quotient quotient(const FinSpace& x, const EquivRelation& r, OracleMode oracle = OracleMode::Auto) {
  if (r.points() != x.size()) throw Error(ErrorKind::Index, "relation does not live on this space");
  const std::size_t k = r.class_count();
  std::vector<Mask> rows(k, 0);
  for (std::size_t p = 0; p < x.size(); ++p)
    for_each_bit(x.up(p), [&](std::size_t q) { rows[r.class_of(p)] |= bit(r.class_of(q)); });
  std::vector<std::string> labels;
  if (x.has_labels())
    for (const auto& cls : r.classes()) {
      std::string s;
      for (std::size_t p : cls) s += (s.empty() ? "" : "|") + x.label(p);
      labels.push_back(s);
    }
  FinSpace q = FinSpace::from_rows(std::move(rows), std::move(labels));
  const bool check = oracle == OracleMode::On || (oracle == OracleMode::Auto && x.size() <= kQuotientOracleLimit);
  if (check && opens(q) != quotient_opens_oracle(x, r))
    throw Error(ErrorKind::OracleMismatch, "transitive-closure quotient disagrees with the quotient topology");
  return {q, SpectralMap::validate(x, q, r.projection()), r};
}

/// Coequalizer of g, h : Z -> Y in topological spaces: the quotient of Y by
/// the equivalence relation generated by (g(z), h(z)).
inline Quotient topological_coequalizer(const SpectralMap& g, const SpectralMap& h,
                                        OracleMode oracle = OracleMode::Auto) {
  if (!(g.src() == h.src()) || !(g.dst() == h.dst())) throw Error(ErrorKind::Index, "maps are not parallel");
  std::vector<Pair> pairs;
  for (std::size_t z = 0; z < g.src().size(); ++z) pairs.emplace_back(g(z), h(z));
  return quotient(g.dst(), EquivRelation::generated(g.dst().size(), pairs), oracle);
}

/// Images of all closed sets are closed; checked exhaustively.
inline bool is_closed_map(const SpectralMap& f) {
  for (Mask c : closed_sets(f.src()))
    if (!f.dst().is_closed(f.image(c))) return false;
  return true;
}

/// A finite subspace is T1 iff it is discrete, i.e. an antichain.
inline bool is_t1_subspace(const FinSpace& x, Mask a) {
  bool ok = true;
  for_each_bit(a, [&](std::size_t p) { ok = ok && (x.up(p) & a) == bit(p); });
  return ok;
}

/// Whether `w` is a homeomorphism: a bijection with x <= y iff w(x) <= w(y).
inline bool is_homeomorphism(const FinSpace& a, const FinSpace& b, const Assignment& w) {
  if (a.size() != b.size() || w.size() != a.size()) return false;
  for (std::size_t v : w)
    if (v >= b.size()) return false;
  if (!is_injective(w)) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(w[x], w[y])) return false;
  return true;
}

/// Homeomorphism between finite spaces, if one exists.
inline std::optional<Assignment> homeomorphism(const FinSpace& a, const FinSpace& b) {
  return detail::relation_isomorphism(a, b);
}

}  // namespace stonekit
