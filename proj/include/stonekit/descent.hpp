#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stonekit/dlat.hpp"
#include "stonekit/error.hpp"
#include "stonekit/finposet.hpp"
#include "stonekit/fork.hpp"
#include "stonekit/stone.hpp"
#include "stonekit/topology.hpp"

// Coequalizers of finite spectral spaces computed through Stone duality,
// their comparison with topological coequalizers, split descent diagrams of
// lattices and orbit spaces of finite group actions.

namespace stonekit {

/// Parallel pair g, h : Z -> Y of spectral maps between T0 spaces.
class CoeqProblem {
 public:
  static CoeqProblem validate(SpectralMap g, SpectralMap h) {
    if (!(g.src() == h.src()) || !(g.dst() == h.dst()))
      throw Error(ErrorKind::Index, "g and h must share source and target");
    CoeqProblem p;
    p.g_ = std::move(g);
    p.h_ = std::move(h);
    return p;
  }

  const FinSpace& source() const { return g_.src(); }
  const FinSpace& target() const { return g_.dst(); }
  const SpectralMap& g() const { return g_; }
  const SpectralMap& h() const { return h_; }

 private:
  SpectralMap g_, h_;
};

struct SpectralCoequalizer {
  FinSpace space;       // spec(E)
  SpectralMap map;      // phi_S : Y -> spec(E)
  Equalizer equalizer;  // E = eq(Ω(g), Ω(h)) inside Ω(Y)
};

/// spec of the lattice equalizer of Ω(g), Ω(h) : Ω(Y) -> Ω(Z); phi_S is
/// spec of the inclusion E -> Ω(Y) precomposed with Y ≅ spec(Ω(Y)).
inline SpectralCoequalizer spectral_coequalizer(const CoeqProblem& p) {
  require_t0(p.target());
  require_t0(p.source());
  // Ω(Z) is the product of the frames of the components of Z, so the
  // equalizer of Ω(g), Ω(h) is the intersection of the componentwise ones.
  const DistLattice oy = omega(p.target());
  std::vector<bool> keep(oy.size(), true);
  for (Mask comp : components(p.source())) {
    auto [zc, emb] = subspace(p.source(), comp);
    Equalizer part = equalizer(omega_of_map(SpectralMap::validate(zc, p.target(), compose(p.g().assignment(), emb))),
                               omega_of_map(SpectralMap::validate(zc, p.target(), compose(p.h().assignment(), emb))));
    std::vector<bool> here(oy.size(), false);
    for (std::size_t k : part.carrier) here[k] = true;
    for (std::size_t k = 0; k < oy.size(); ++k) keep[k] = keep[k] && here[k];
  }
  std::vector<std::size_t> carrier;
  for (std::size_t k = 0; k < oy.size(); ++k)
    if (keep[k]) carrier.push_back(k);
  Equalizer eq = equalizer_on(oy, std::move(carrier));
  SpectralMap spec_incl = spec_of_map(eq.inclusion);  // spec(Ω(Y)) -> spec(E)
  Assignment unit = round_trip_space(p.target());     // Y -> spec(Ω(Y))
  SpectralMap phi = SpectralMap::validate(p.target(), spec_incl.dst(), compose(spec_incl.assignment(), unit));
  for (std::size_t z = 0; z < p.source().size(); ++z)
    detail::ensure(phi(p.g()(z)) == phi(p.h()(z)), "phi_S does not coequalize g and h", {z});
  FinSpace space = phi.dst();
  return {std::move(space), std::move(phi), std::move(eq)};
}

/// Relates T^Top and T^Spec through p with p∘phi_T = phi_S.
struct ComparisonReport {
  Quotient topological;
  SpectralCoequalizer spectral;
  Assignment p;
  bool top_t0 = false;
  bool p_surjective = false;
  bool p_injective = false;
  bool p_closed = false;
  bool phi_s_closed = false;
  bool p_homeomorphism = false;
  // p factors as KQ(T^Top) -> T^Spec through this homeomorphism.
  Kolmogorov top_kq;
  Assignment kq_homeomorphism;
};

inline ComparisonReport comparison(const CoeqProblem& problem, OracleMode oracle = OracleMode::Auto) {
  ComparisonReport r;
  r.spectral = spectral_coequalizer(problem);
  r.topological = topological_coequalizer(problem.g(), problem.h(), oracle);
  const FinSpace& ttop = r.topological.space;
  const FinSpace& tspec = r.spectral.space;
  const SpectralMap& phi_t = r.topological.map;
  const SpectralMap& phi_s = r.spectral.map;

  r.p.assign(ttop.size(), tspec.size());
  for (std::size_t y = 0; y < problem.target().size(); ++y) {
    std::size_t& slot = r.p[phi_t(y)];
    detail::ensure(slot == tspec.size() || slot == phi_s(y), "comparison map is not well defined", {y});
    slot = phi_s(y);
  }
  SpectralMap pmap = SpectralMap::validate(ttop, tspec, r.p);
  r.top_t0 = ttop.is_t0();
  r.p_surjective = is_surjective(r.p, tspec.size());
  r.p_injective = is_injective(r.p);
  r.p_homeomorphism = is_homeomorphism(ttop, tspec, r.p);
  r.phi_s_closed = is_closed_map(phi_s);
  r.p_closed = is_closed_map(pmap);
  detail::ensure(r.p_surjective, "comparison map is not surjective");
  detail::ensure(!r.phi_s_closed || r.p_closed, "phi_S closed but comparison map not closed");

  r.top_kq = kq(ttop);
  r.kq_homeomorphism.assign(r.top_kq.poset.size(), tspec.size());
  for (std::size_t t = 0; t < ttop.size(); ++t) {
    std::size_t& slot = r.kq_homeomorphism[r.top_kq.projection[t]];
    detail::ensure(slot == tspec.size() || slot == r.p[t], "comparison map does not factor through KQ", {t});
    slot = r.p[t];
  }
  detail::ensure(is_homeomorphism(FinSpace::from_poset(r.top_kq.poset), tspec, r.kq_homeomorphism),
                 "comparison map is not the T0-reflection of T^Top");
  detail::ensure(r.p_homeomorphism == r.top_t0, "p homeomorphism iff T^Top T0 fails");
  return r;
}

/// Spectral quotient X//R: the spectral coequalizer of the pair
/// (x, min[x]) from a discrete space of one point per element of X.
inline SpectralCoequalizer spectral_quotient(const FinSpace& x, const EquivRelation& r) {
  if (r.points() != x.size()) throw Error(ErrorKind::Index, "relation does not live on this space");
  Assignment first(x.size()), second(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    first[p] = p;
    second[p] = r.classes()[r.class_of(p)].front();
  }
  FinSpace z = FinSpace::discrete(x.size());
  return spectral_coequalizer(
      CoeqProblem::validate(SpectralMap::validate(z, x, first), SpectralMap::validate(z, x, second)));
}

/// Lattice fork L0 -> L1 => L2 with set-level splittings u, v.
class DescentDiagram {
 public:
  static DescentDiagram validate(LatticeMap f, LatticeMap alpha, LatticeMap beta, Assignment u, Assignment v) {
    if (!(f.dst() == alpha.src()) || !(alpha.src() == beta.src()) || !(alpha.dst() == beta.dst()))
      throw Error(ErrorKind::Index, "descent diagram maps do not compose");
    detail::check_map(u, f.dst().size(), f.src().size(), "u");
    detail::check_map(v, alpha.dst().size(), alpha.src().size(), "v");
    for (std::size_t x = 0; x < f.src().size(); ++x)
      if (alpha(f(x)) != beta(f(x))) throw Error(ErrorKind::HypothesisFailed, "alpha∘f != beta∘f", {x}, "fork");
    DescentDiagram d;
    d.f_ = std::move(f);
    d.alpha_ = std::move(alpha);
    d.beta_ = std::move(beta);
    d.u_ = std::move(u);
    d.v_ = std::move(v);
    return d;
  }

  const DistLattice& l0() const { return f_->src(); }
  const DistLattice& l1() const { return f_->dst(); }
  const DistLattice& l2() const { return alpha_->dst(); }
  const LatticeMap& f() const { return *f_; }
  const LatticeMap& alpha() const { return *alpha_; }
  const LatticeMap& beta() const { return *beta_; }
  const Assignment& u() const { return u_; }
  const Assignment& v() const { return v_; }

  /// The underlying fork of sets.
  ForkDiagram underlying() const {
    return ForkDiagram::validate(
        ParallelRow{l0().size(), l1().size(), l2().size(), f().assignment(), alpha().assignment(), beta().assignment()},
        u_, v_);
  }

 private:
  std::optional<LatticeMap> f_, alpha_, beta_;
  Assignment u_, v_;
};

struct DescentReport {
  std::vector<std::size_t> agreement;  // {x in L1 : alpha(x) = beta(x)}
  Equalizer equalizer;
  Assignment l0_to_equalizer;  // lattice iso L0 -> E induced by f
  // Dual side: spec(f) coequalizes spec(alpha), spec(beta).
  SpectralMap spec_f;
  SpectralMap spec_alpha;
  SpectralMap spec_beta;
  SpectralCoequalizer coequalizer;
  Assignment spec_l0_to_coequalizer;  // homeomorphism theta with theta∘spec(f) = phi_S
};

/// Checks the split equations on underlying sets, certifies f as the
/// equalizer of (alpha, beta) and builds the dual coequalizer with an explicit
/// homeomorphism to spec(L0).
inline DescentReport verify_split_descent(const DescentDiagram& d) {
  ForkDiagram fork = d.underlying();
  if (Verdict split = split_fork_check(fork); !split)
    throw Error(ErrorKind::SplitEquationFailed, split.which, split.witness, split.which);

  DescentReport rep;
  for (std::size_t x = 0; x < d.l1().size(); ++x)
    if (d.alpha()(x) == d.beta()(x)) rep.agreement.push_back(x);
  if (Verdict eq = is_equalizer(fork); !eq)
    throw Error(ErrorKind::NotEqualizerImage, eq.which, eq.witness, eq.which);

  rep.equalizer = equalizer(d.alpha(), d.beta());
  detail::ensure(rep.equalizer.carrier == rep.agreement, "lattice equalizer differs from the set equalizer");
  rep.l0_to_equalizer.resize(d.l0().size());
  for (std::size_t x = 0; x < d.l0().size(); ++x) {
    auto it = std::find(rep.equalizer.carrier.begin(), rep.equalizer.carrier.end(), d.f()(x));
    detail::ensure(it != rep.equalizer.carrier.end(), "f(x) outside the equalizer", {x});
    rep.l0_to_equalizer[x] = rep.equalizer.inclusion.assignment().size();
    for (std::size_t k = 0; k < rep.equalizer.lattice.size(); ++k)
      if (rep.equalizer.inclusion(k) == *it) rep.l0_to_equalizer[x] = k;
  }
  LatticeMap iso = LatticeMap::validate(d.l0(), rep.equalizer.lattice, rep.l0_to_equalizer);
  detail::ensure(iso.bijective(), "L0 -> E is not bijective");

  rep.spec_f = spec_of_map(d.f());
  rep.spec_alpha = spec_of_map(d.alpha());
  rep.spec_beta = spec_of_map(d.beta());
  rep.coequalizer = spectral_coequalizer(CoeqProblem::validate(rep.spec_alpha, rep.spec_beta));
  const FinSpace& t = rep.coequalizer.space;
  const FinSpace& s0 = rep.spec_f.dst();
  rep.spec_l0_to_coequalizer.assign(s0.size(), t.size());
  for (std::size_t y = 0; y < rep.spec_f.src().size(); ++y) {
    std::size_t& slot = rep.spec_l0_to_coequalizer[rep.spec_f(y)];
    detail::ensure(slot == t.size() || slot == rep.coequalizer.map(y), "spec(f) does not factor the coequalizer", {y});
    slot = rep.coequalizer.map(y);
  }
  detail::ensure(is_homeomorphism(s0, t, rep.spec_l0_to_coequalizer), "spec(L0) is not the spectral coequalizer");
  return rep;
}

/// Finite group acting on a finite T0 space by order automorphisms.
class GroupAction {
 public:
  static GroupAction validate(FinSpace x, std::vector<Assignment> elements) {
    require_t0(x);
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < elements.size(); ++k) {
      detail::check_map(elements[k], n, n, "group element");
      if (!is_homeomorphism(x, x, elements[k]))
        throw Error(ErrorKind::NotAutomorphism, detail::concat("group element ", k, " is not an order automorphism"), {k});
    }
    auto index_of = [&](const Assignment& a) -> std::optional<std::size_t> {
      for (std::size_t k = 0; k < elements.size(); ++k)
        if (elements[k] == a) return k;
      return std::nullopt;
    };
    if (!index_of(identity_assignment(n))) throw Error(ErrorKind::NotAGroup, "identity is missing");
    for (std::size_t a = 0; a < elements.size(); ++a) {
      if (!index_of(invert(elements[a]))) throw Error(ErrorKind::NotAGroup, "inverse is missing", {a});
      for (std::size_t b = 0; b < elements.size(); ++b)
        if (!index_of(compose(elements[a], elements[b])))
          throw Error(ErrorKind::NotAGroup, "not closed under composition", {a, b});
    }
    GroupAction g;
    g.space_ = std::move(x);
    g.elements_ = std::move(elements);
    return g;
  }

  /// Closure of the generators under composition.
  static GroupAction generated(FinSpace x, const std::vector<Assignment>& generators) {
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < generators.size(); ++k) detail::check_map(generators[k], n, n, "generator");
    std::vector<Assignment> elems{identity_assignment(n)};
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& g : generators) {
        Assignment c = compose(g, elems[i]);
        if (std::find(elems.begin(), elems.end(), c) == elems.end()) {
          if (!is_injective(c)) throw Error(ErrorKind::NotAutomorphism, "generator is not a bijection");
          elems.push_back(std::move(c));
        }
      }
    return validate(std::move(x), std::move(elems));
  }

  const FinSpace& space() const { return space_; }
  const std::vector<Assignment>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

 private:
  FinSpace space_;
  std::vector<Assignment> elements_;
};

struct OrbitReport {
  CoeqProblem fork;              // projection and action on the disjoint union of |G| copies
  ComparisonReport comparison;   // topological vs spectral coequalizer of the fork
  FinSpace orbit_space;          // X/G
  Assignment homeomorphism;      // X/G -> spectral coequalizer
  bool order_is_one_step = false;  // [x] <= [y] iff x <= g(y) for some g
};

/// The fork ⊔_G X => X (projection, action), its two coequalizers and the
/// homeomorphism between the orbit space and the spectral coequalizer.
inline OrbitReport group_coequalizer(const GroupAction& action, OracleMode oracle = OracleMode::Auto) {
  const FinSpace& x = action.space();
  const std::size_t n = x.size();
  FinSpace copies;
  for (std::size_t k = 0; k < action.order(); ++k) copies = disjoint_union(copies, x);
  Assignment proj(copies.size()), act(copies.size());
  for (std::size_t k = 0; k < action.order(); ++k)
    for (std::size_t p = 0; p < n; ++p) {
      proj[k * n + p] = p;
      act[k * n + p] = action.elements()[k][p];
    }
  CoeqProblem fork =
      CoeqProblem::validate(SpectralMap::validate(copies, x, proj), SpectralMap::validate(copies, x, act));
  ComparisonReport cmp = comparison(fork, oracle);
  FinSpace orbit = cmp.topological.space;
  const EquivRelation& orbits = cmp.topological.relation;

  // One-step order: [a] <= [b] iff a <= g(b) for some g.
  std::vector<Mask> rows(orbits.class_count(), 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& g : action.elements())
        if (x.leq(a, g[b])) rows[orbits.class_of(a)] |= bit(orbits.class_of(b));
  bool one_step = true;
  for (std::size_t c = 0; c < orbits.class_count(); ++c) one_step = one_step && (rows[c] | bit(c)) == orbit.up(c);
  detail::ensure(orbit.is_t0(), "orbit space of a finite group action is not T0");
  detail::ensure(one_step, "orbit order is not the one-step projection of the order");
  detail::ensure(cmp.p_homeomorphism, "spectral coequalizer differs from the orbit space");
  Assignment w = cmp.p;
  return {std::move(fork), std::move(cmp), std::move(orbit), std::move(w), one_step};
}

}  // namespace stonekit
