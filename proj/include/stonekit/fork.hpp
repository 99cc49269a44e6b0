#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stonekit/error.hpp"
#include "stonekit/finposet.hpp"

// Fork diagrams of finite sets and the two ladder lemmas, as decision
// procedures. Sets are sizes; maps are index arrays.

namespace stonekit {

/// Outcome of a pointwise check; `witness` holds the first offending elements
/// in iteration order.
struct Verdict {
  bool holds = true;
  std::string which;
  std::vector<std::size_t> witness;

  explicit operator bool() const { return holds; }

  static Verdict pass() { return {}; }
  static Verdict fail(std::string which, std::vector<std::size_t> witness) {
    return {false, std::move(which), std::move(witness)};
  }
};

namespace detail {

inline void check_map(const Assignment& m, std::size_t from, std::size_t to, const char* name) {
  if (m.size() != from)
    throw Error(ErrorKind::Index, concat("map ", name, " has ", m.size(), " entries, expected ", from), {}, name);
  for (std::size_t x = 0; x < from; ++x)
    if (m[x] >= to) throw Error(ErrorKind::Index, concat("map ", name, " value out of range"), {x, m[x]}, name);
}

// First x with a(x) != b(x).
inline std::optional<std::size_t> first_difference(const Assignment& a, const Assignment& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != b[x]) return x;
  return std::nullopt;
}

}  // namespace detail

/// Three sets with f : S0 -> S1 and a parallel pair a, b : S1 -> S2. No
/// equation is imposed.
struct ParallelRow {
  std::size_t s0 = 0, s1 = 0, s2 = 0;
  Assignment f, a, b;

  void validate() const {
    detail::check_map(f, s0, s1, "f");
    detail::check_map(a, s1, s2, "alpha");
    detail::check_map(b, s1, s2, "beta");
  }
};

/// Brute force: f injective and image(f) = {x : a(x) = b(x)}.
inline Verdict is_equalizer(const ParallelRow& row) {
  row.validate();
  for (std::size_t x = 0; x < row.s0; ++x)
    for (std::size_t y = x + 1; y < row.s0; ++y)
      if (row.f[x] == row.f[y]) return Verdict::fail("f not injective", {x, y});
  std::vector<bool> in_image(row.s1, false);
  for (std::size_t x = 0; x < row.s0; ++x) in_image[row.f[x]] = true;
  for (std::size_t y = 0; y < row.s1; ++y) {
    const bool agrees = row.a[y] == row.b[y];
    if (in_image[y] && !agrees) return Verdict::fail("image(f) not in agreement set", {y});
    if (agrees && !in_image[y]) return Verdict::fail("agreement point outside image(f)", {y});
  }
  return Verdict::pass();
}

/// A fork X0 -> X1 => X2 (alpha∘f = beta∘f) with optional splittings
/// u : X1 -> X0 and v : X2 -> X1.
class ForkDiagram {
 public:
  static ForkDiagram validate(ParallelRow row, std::optional<Assignment> u = std::nullopt,
                              std::optional<Assignment> v = std::nullopt) {
    row.validate();
    for (std::size_t x = 0; x < row.s0; ++x)
      if (row.a[row.f[x]] != row.b[row.f[x]])
        throw Error(ErrorKind::HypothesisFailed, "alpha∘f != beta∘f", {x}, "fork");
    if (u) detail::check_map(*u, row.s1, row.s0, "u");
    if (v) detail::check_map(*v, row.s2, row.s1, "v");
    ForkDiagram d;
    d.row_ = std::move(row);
    d.u_ = std::move(u);
    d.v_ = std::move(v);
    return d;
  }

  const ParallelRow& row() const { return row_; }
  const Assignment& f() const { return row_.f; }
  const Assignment& alpha() const { return row_.a; }
  const Assignment& beta() const { return row_.b; }
  const std::optional<Assignment>& u() const { return u_; }
  const std::optional<Assignment>& v() const { return v_; }

 private:
  ParallelRow row_;
  std::optional<Assignment> u_, v_;
};

/// u∘f = id, v∘beta = id, v∘alpha = f∘u, checked pointwise in that order.
inline Verdict split_fork_check(const ForkDiagram& d) {
  if (!d.u() || !d.v()) throw Error(ErrorKind::MissingSplitting, "split fork check needs both u and v");
  const Assignment& u = *d.u();
  const Assignment& v = *d.v();
  if (auto x = detail::first_difference(compose(u, d.f()), identity_assignment(d.row().s0)))
    return Verdict::fail("u∘f=id", {*x});
  if (auto x = detail::first_difference(compose(v, d.beta()), identity_assignment(d.row().s1)))
    return Verdict::fail("v∘beta=id", {*x});
  if (auto x = detail::first_difference(compose(v, d.alpha()), compose(d.f(), u)))
    return Verdict::fail("v∘alpha=f∘u", {*x});
  return Verdict::pass();
}

inline bool is_split_fork(const ForkDiagram& d) { return split_fork_check(d).holds; }

inline Verdict is_equalizer(const ForkDiagram& d) { return is_equalizer(d.row()); }

/// Top row X, bottom row Y, vertical maps i_k : Y_k -> X_k and, for the
/// retraction lemma, r_k : X_k -> Y_k.
struct LadderDiagram {
  ParallelRow top;
  std::optional<Assignment> u, v;
  ParallelRow bottom;  // g, gamma, delta
  Assignment i0, i1, i2;
  std::optional<Assignment> r0, r1, r2;

  void validate() const {
    top.validate();
    bottom.validate();
    detail::check_map(i0, bottom.s0, top.s0, "i0");
    detail::check_map(i1, bottom.s1, top.s1, "i1");
    detail::check_map(i2, bottom.s2, top.s2, "i2");
    if (u) detail::check_map(*u, top.s1, top.s0, "u");
    if (v) detail::check_map(*v, top.s2, top.s1, "v");
    if (r0) detail::check_map(*r0, top.s0, bottom.s0, "r0");
    if (r1) detail::check_map(*r1, top.s1, bottom.s1, "r1");
    if (r2) detail::check_map(*r2, top.s2, bottom.s2, "r2");
  }
};

struct InjectiveLemmaReport {
  Verdict bottom_is_equalizer;  // (a)
  Verdict lifting_condition;    // (b)
  bool equivalent = false;      // (a) <=> (b)
};

struct RetractionLemmaReport {
  Verdict r0_bijective;         // (a)
  Verdict square_commutes;      // (b) g∘r0 = r1∘f
  Verdict bottom_is_equalizer;  // (c)
  bool equivalent = false;      // (a) <=> (b) <=> (c)
};

namespace detail {

[[noreturn]] inline void hypothesis_failed(const std::string& which, std::vector<std::size_t> witness) {
  throw Error(ErrorKind::HypothesisFailed, which, std::move(witness), which);
}

inline void require_equal(const Assignment& lhs, const Assignment& rhs, const std::string& which) {
  if (auto x = first_difference(lhs, rhs)) hypothesis_failed(which, {*x});
}

inline void require_injective(const Assignment& m, const std::string& which) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x + 1; y < m.size(); ++y)
      if (m[x] == m[y]) hypothesis_failed(which, {x, y});
}

}  // namespace detail

/// Ladder under a split fork with injective i0, i1. Decides
/// (a) the bottom fork is an equalizer, and
/// (b) every y1 with gamma(y1) = delta(y1) has u(i1(y1)) in the image of i0,
/// each independently, and records whether they agree.
///
/// Hypotheses: (i) top split; (ii) i0, i1 injective; (iii) f∘i0 = i1∘g;
/// (iv) alpha∘i1 = i2∘gamma and beta∘i1 = i2∘delta. The bottom row must
/// itself be a fork (gamma∘g = delta∘g); without it (a) can fail vacuously.
inline InjectiveLemmaReport lemma_injective_decide(const LadderDiagram& l) {
  l.validate();
  if (!l.u || !l.v) throw Error(ErrorKind::MissingSplitting, "top fork needs splittings u and v");
  {
    ParallelRow top = l.top;
    for (std::size_t x = 0; x < top.s0; ++x)
      if (top.a[top.f[x]] != top.b[top.f[x]]) detail::hypothesis_failed("(i) top fork", {x});
    Verdict split = split_fork_check(ForkDiagram::validate(top, l.u, l.v));
    if (!split) detail::hypothesis_failed("(i) " + split.which, split.witness);
  }
  detail::require_injective(l.i0, "(ii) i0 injective");
  detail::require_injective(l.i1, "(ii) i1 injective");
  detail::require_equal(compose(l.top.f, l.i0), compose(l.i1, l.bottom.f), "(iii) f∘i0=i1∘g");
  detail::require_equal(compose(l.top.a, l.i1), compose(l.i2, l.bottom.a), "(iv) alpha∘i1=i2∘gamma");
  detail::require_equal(compose(l.top.b, l.i1), compose(l.i2, l.bottom.b), "(iv) beta∘i1=i2∘delta");
  detail::require_equal(compose(l.bottom.a, l.bottom.f), compose(l.bottom.b, l.bottom.f), "bottom fork gamma∘g=delta∘g");

  InjectiveLemmaReport rep;
  rep.bottom_is_equalizer = is_equalizer(l.bottom);
  const Assignment& u = *l.u;
  for (std::size_t y1 = 0; y1 < l.bottom.s1 && rep.lifting_condition.holds; ++y1) {
    if (l.bottom.a[y1] != l.bottom.b[y1]) continue;
    bool lifted = false;
    for (std::size_t y0 = 0; y0 < l.bottom.s0 && !lifted; ++y0) lifted = u[l.i1[y1]] == l.i0[y0];
    if (!lifted) rep.lifting_condition = Verdict::fail("no y0 with i0(y0)=u(i1(y1))", {y1});
  }
  rep.equivalent = rep.bottom_is_equalizer.holds == rep.lifting_condition.holds;
  return rep;
}

/// Ladder with retractions. Hypotheses: (i) top is an equalizer and
/// gamma∘g = delta∘g; (ii) r_k∘i_k = id; (iii) i1 bijective; (iv) the three
/// squares with i_k commute. Decides (a) r0 bijective, (b) g∘r0 = r1∘f and
/// (c) the bottom fork is an equalizer independently.
inline RetractionLemmaReport lemma_retraction_decide(const LadderDiagram& l) {
  l.validate();
  if (!l.r0 || !l.r1 || !l.r2) throw Error(ErrorKind::MissingSplitting, "retraction lemma needs r0, r1 and r2");
  if (Verdict top = is_equalizer(l.top); !top) detail::hypothesis_failed("(i) top equalizer: " + top.which, top.witness);
  detail::require_equal(compose(l.bottom.a, l.bottom.f), compose(l.bottom.b, l.bottom.f), "(i) gamma∘g=delta∘g");
  detail::require_equal(compose(*l.r0, l.i0), identity_assignment(l.bottom.s0), "(ii) r0∘i0=id");
  detail::require_equal(compose(*l.r1, l.i1), identity_assignment(l.bottom.s1), "(ii) r1∘i1=id");
  detail::require_equal(compose(*l.r2, l.i2), identity_assignment(l.bottom.s2), "(ii) r2∘i2=id");
  if (l.bottom.s1 != l.top.s1) detail::hypothesis_failed("(iii) i1 bijective", {});
  detail::require_injective(l.i1, "(iii) i1 bijective");
  detail::require_equal(compose(l.top.f, l.i0), compose(l.i1, l.bottom.f), "(iv) f∘i0=i1∘g");
  detail::require_equal(compose(l.top.a, l.i1), compose(l.i2, l.bottom.a), "(iv) alpha∘i1=i2∘gamma");
  detail::require_equal(compose(l.top.b, l.i1), compose(l.i2, l.bottom.b), "(iv) beta∘i1=i2∘delta");

  RetractionLemmaReport rep;
  const Assignment& r0 = *l.r0;
  for (std::size_t x = 0; x < l.top.s0 && rep.r0_bijective.holds; ++x)
    for (std::size_t y = x + 1; y < l.top.s0 && rep.r0_bijective.holds; ++y)
      if (r0[x] == r0[y]) rep.r0_bijective = Verdict::fail("r0 not injective", {x, y});
  if (rep.r0_bijective.holds) {
    std::vector<bool> hit(l.bottom.s0, false);
    for (std::size_t y : r0) hit[y] = true;
    for (std::size_t y = 0; y < l.bottom.s0 && rep.r0_bijective.holds; ++y)
      if (!hit[y]) rep.r0_bijective = Verdict::fail("r0 not surjective", {y});
  }
  if (auto x = detail::first_difference(compose(l.bottom.f, r0), compose(*l.r1, l.top.f)))
    rep.square_commutes = Verdict::fail("g∘r0 != r1∘f", {*x});
  rep.bottom_is_equalizer = is_equalizer(l.bottom);
  rep.equivalent = rep.r0_bijective.holds == rep.square_commutes.holds &&
                   rep.square_commutes.holds == rep.bottom_is_equalizer.holds;
  return rep;
}

}  // namespace stonekit
