// A short walk through the library: Birkhoff lattices, spectra, Stone round
// trips and the two coequalizers of the worked fork.

#include <iostream>
#include <vector>

#include "stonekit/criterion.hpp"
#include "stonekit/descent.hpp"
#include "stonekit/stone.hpp"

using namespace stonekit;

namespace {

void show(const char* name, const FinSpace& x) {
  std::cout << name << ": " << x.size() << (x.size() == 1 ? " point, " : " points, ") << (x.is_t0() ? "T0" : "not T0") << ", order {";
  const char* sep = "";
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      if (a != b && x.leq(a, b)) {
        std::cout << sep << x.label(a) << "<=" << x.label(b);
        sep = ", ";
      }
  std::cout << "}\n";
}

}  // namespace

int main() {
  // The four-element Boolean lattice is the downsets of a 2-point antichain.
  const DistLattice l = from_birkhoff(FinPoset::antichain(2));
  std::cout << "lattice with " << l.size() << " elements\n";
  const Spectrum s = spec_of_lattice(l);
  show("spec(L)", s.space);
  std::cout << "Omega(spec(L)) has " << omega(s.space).size() << " elements\n";

  // Spec of Omega of a T0 space returns the space, with the witness.
  const std::vector<Pair> vee{{0, 1}, {0, 2}};
  const FinSpace x = FinSpace::from_pairs(3, vee, {"g", "p", "q"});
  const Assignment w = round_trip_space(x);
  std::cout << "round trip is a homeomorphism: " << std::boolalpha
            << is_homeomorphism(x, spec_of_lattice(omega(x)).space, w) << "\n";

  // The worked fork: two copies of a 2-chain glued in opposite directions.
  const std::vector<Pair> y_pairs{{1, 0}, {2, 3}};
  const FinSpace y = FinSpace::from_pairs(4, y_pairs, {"a0", "a1", "b0", "b1"});
  const FinSpace z = FinSpace::discrete(2);
  const CoeqProblem p =
      CoeqProblem::validate(SpectralMap::validate(z, y, {0, 1}), SpectralMap::validate(z, y, {2, 3}));
  const ComparisonReport c = comparison(p);
  show("topological coequalizer", c.topological.space);
  show("spectral coequalizer", c.spectral.space);
  std::cout << "comparison map injective: " << c.p_injective << "\n";

  // The same collapse as a quotient by an equivalence relation.
  const QuotientCriterionReport q = check_quotient_criterion(y, EquivRelation::from_labels({0, 1, 0, 1}));
  std::cout << "quotient criterion hypotheses hold: " << q.hypotheses_hold()
            << " (first failure: " << q.fibers_t1.which << ")\n";

  // Swapping the middle of the diamond poset leaves a 3-chain of orbits.
  const std::vector<Pair> diamond{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const FinSpace d = FinSpace::from_pairs(4, diamond, {"bot", "l", "r", "top"});
  const OrbitReport o = group_coequalizer(GroupAction::generated(d, {{0, 2, 1, 3}}));
  show("orbit space", o.orbit_space);
  return 0;
}
