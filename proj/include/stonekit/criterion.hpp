#pragma once

#include <cstddef>
#include <optional>

#include "stonekit/descent.hpp"
#include "stonekit/fork.hpp"
#include "stonekit/topology.hpp"

// Sufficient condition for the comparison map X/R -> X//R to be a
// homeomorphism: p_S closed, every fiber of p_S discrete, and every fiber of
// x inside the R-saturation of cl{x}.

namespace stonekit {

struct QuotientCriterionReport {
  Quotient topological;            // X/R
  SpectralCoequalizer spectral;    // X//R with p_S
  Assignment comparison;           // c : X/R -> X//R
  Verdict p_closed;                // witness: a closed set whose image is not closed (as point list)
  Verdict fibers_t1;               // witness: comparable pair x < y in one fiber
  Verdict fibers_saturated;        // witness: x and a fiber point outside R^{-1}(cl{x})
  bool c_homeomorphism = false;

  bool hypotheses_hold() const { return p_closed && fibers_t1 && fibers_saturated; }
};

inline QuotientCriterionReport check_quotient_criterion(const FinSpace& x, const EquivRelation& r,
                                                        OracleMode oracle = OracleMode::Auto) {
  require_t0(x);
  if (r.points() != x.size()) throw Error(ErrorKind::Index, "relation does not live on this space");
  QuotientCriterionReport rep;
  rep.spectral = spectral_quotient(x, r);
  rep.topological = quotient(x, r, oracle);
  const SpectralMap& ps = rep.spectral.map;
  const std::size_t n = x.size();

  rep.comparison.assign(rep.topological.space.size(), rep.spectral.space.size());
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t& slot = rep.comparison[rep.topological.map(p)];
    detail::ensure(slot == rep.spectral.space.size() || slot == ps(p), "comparison map is not well defined", {p});
    slot = ps(p);
  }
  rep.c_homeomorphism = is_homeomorphism(rep.topological.space, rep.spectral.space, rep.comparison);

  for (Mask c : closed_sets(x)) {
    if (!rep.spectral.space.is_closed(ps.image(c))) {
      rep.p_closed = Verdict::fail("p_S not closed", to_indices(c));
      break;
    }
  }

  for (std::size_t p = 0; p < n && rep.fibers_t1; ++p) {
    const Mask fiber = ps.preimage(bit(ps(p)));
    for_each_bit(fiber, [&](std::size_t q) {
      if (rep.fibers_t1 && q != p && x.leq(p, q)) rep.fibers_t1 = Verdict::fail("fiber not T1", {p, q});
    });
  }

  for (std::size_t p = 0; p < n && rep.fibers_saturated; ++p) {
    const Mask fiber = ps.preimage(bit(ps(p)));
    const Mask sat = saturation(r, closure(x, bit(p)));
    for_each_bit(fiber & ~sat, [&](std::size_t q) {
      if (rep.fibers_saturated) rep.fibers_saturated = Verdict::fail("fiber outside saturation", {p, q});
    });
  }

  if (rep.hypotheses_hold())
    detail::ensure(rep.c_homeomorphism, "quotient criterion hypotheses hold but c is not a homeomorphism");
  return rep;
}

}  // namespace stonekit
