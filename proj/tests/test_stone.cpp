#include <gtest/gtest.h>

#include <vector>

#include "bridge.hpp"
#include "oracle.hpp"
#include "stonekit/generate.hpp"
#include "stonekit/stone.hpp"
#include "support.hpp"

using namespace stonekit;

namespace {

DistLattice two() { return from_birkhoff(FinPoset::antichain(1)); }
DistLattice boolean4() { return from_birkhoff(FinPoset::antichain(2)); }

}  // namespace

TEST(Spec, TwoIsOnePoint) { EXPECT_EQ(spec_of_lattice(two()).space.size(), 1u); }

TEST(Spec, ThreeChainIsTwoChain) {
  const Spectrum s = spec_of_lattice(from_birkhoff(FinPoset::chain(2)));
  ASSERT_EQ(s.space.size(), 2u);
  EXPECT_TRUE(s.space.leq(0, 1));
  EXPECT_FALSE(s.space.leq(1, 0));
  // One basic open separates the two points.
  EXPECT_EQ(basic_open(s, 1), Mask{0b01});
}

TEST(Spec, TrivialLatticeIsEmpty) { EXPECT_EQ(spec_of_lattice(from_birkhoff(FinPoset{})).space.size(), 0u); }

TEST(Spec, ReproducesBirkhoffPosetOnTheNose) {
  gen::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const FinPoset p = gen::poset(rng, gen::uniform(rng, 0, 7));
    EXPECT_EQ(spec_of_lattice(from_birkhoff(p)).space.as_poset(), p);
  }
}

TEST(Spec, BasicOpensAreALatticeMorphism) {
  for (std::size_t n = 0; n <= 4; ++n)
    for (const FinPoset& p : gen::posets_up_to_iso(n)) {
      const DistLattice l = from_birkhoff(p);
      const Spectrum s = spec_of_lattice(l);
      for (std::size_t a = 0; a < l.size(); ++a)
        for (std::size_t b = 0; b < l.size(); ++b) {
          EXPECT_EQ(basic_open(s, l.join(a, b)), basic_open(s, a) | basic_open(s, b));
          EXPECT_EQ(basic_open(s, l.meet(a, b)), basic_open(s, a) & basic_open(s, b));
        }
    }
}

TEST(SpecOfMap, IdentityGoesToIdentity) {
  const DistLattice l = from_birkhoff(FinPoset::chain(3));
  EXPECT_EQ(spec_of_map(LatticeMap::identity(l)).assignment(), identity_assignment(3));
}

TEST(SpecOfMap, BoundsInclusionCollapsesBothPrimes) {
  const SpectralMap f = spec_of_map(LatticeMap::validate(two(), boolean4(), {0, 3}));
  EXPECT_EQ(f.src().size(), 2u);
  EXPECT_EQ(f.dst().size(), 1u);
  EXPECT_EQ(f.assignment(), (Assignment{0, 0}));
}

TEST(SpecOfMap, IsContravariant) {
  gen::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    // Nontrivial lattices: the trivial lattice maps only to itself.
    const DistLattice a = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 4)));
    const DistLattice b = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 4)));
    const DistLattice c = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 4)));
    const LatticeMap f = gen::lattice_map(rng, a, b), g = gen::lattice_map(rng, b, c);
    EXPECT_EQ(spec_of_map(compose(g, f)).assignment(), compose(spec_of_map(f), spec_of_map(g)).assignment());
  }
}

TEST(Omega, OnePointIsTwo) { EXPECT_EQ(omega(FinSpace::discrete(1)), two()); }

TEST(Omega, TwoPointDiscreteIsBooleanFour) { EXPECT_EQ(omega(FinSpace::discrete(2)), boolean4()); }

TEST(Omega, TwoChainIsThreeChain) {
  const Frame fr = omega_frame(support::chain_space(2));
  EXPECT_EQ(fr.lattice, from_birkhoff(FinPoset::chain(2)));
  // Opens: empty, the generic point, everything.
  EXPECT_EQ(fr.opens, (std::vector<Mask>{0b00, 0b01, 0b11}));
}

TEST(Omega, OpensMatchOracle) {
  gen::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const FinSpace x = gen::space(rng, gen::uniform(rng, 1, 7));
    const Frame fr = omega_frame(x);
    const std::vector<Mask> want = oracle::opens(bridge::rel(x));
    std::vector<Mask> got = fr.opens;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
  }
}

TEST(OmegaOfMap, IdentityGoesToIdentity) {
  const FinSpace x = support::chain_space(3);
  EXPECT_EQ(omega_of_map(SpectralMap::identity(x)).assignment(), identity_assignment(4));
}

TEST(OmegaOfMap, ConstantMapReflectsBounds) {
  const LatticeMap f = omega_of_map(SpectralMap::validate(FinSpace::discrete(2), FinSpace::discrete(1), {0, 0}));
  EXPECT_EQ(f.src(), two());
  EXPECT_EQ(f.dst(), boolean4());
  EXPECT_EQ(f.assignment(), (Assignment{0, 3}));
}

TEST(OmegaOfMap, IsContravariant) {
  gen::Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const FinSpace a = gen::space(rng, gen::uniform(rng, 1, 5));
    const FinSpace b = gen::space(rng, gen::uniform(rng, 1, 5));
    const FinSpace c = gen::space(rng, gen::uniform(rng, 1, 5));
    const SpectralMap f = gen::spectral_map(rng, a, b), g = gen::spectral_map(rng, b, c);
    EXPECT_EQ(omega_of_map(compose(g, f)).assignment(), compose(omega_of_map(f), omega_of_map(g)).assignment());
  }
}

TEST(Hochster, ReversesTwoChain) {
  const FinSpace h = hochster_dual(support::chain_space(2));
  EXPECT_TRUE(h.leq(1, 0));
  EXPECT_FALSE(h.leq(0, 1));
}

TEST(Hochster, AntichainIsSelfDual) { EXPECT_EQ(hochster_dual(FinSpace::discrete(3)).up_rows(), FinSpace::discrete(3).up_rows()); }

TEST(Hochster, EqualsOppositeOrderExactly) {
  gen::Rng rng(35);
  for (int i = 0; i < 150; ++i) {
    const FinSpace x = FinSpace::from_poset(gen::poset(rng, gen::uniform(rng, 0, 7)));
    const FinSpace h = hochster_dual(x);
    EXPECT_EQ(h.up_rows(), opposite(x).up_rows());
    EXPECT_EQ(hochster_dual(h).up_rows(), x.up_rows());
  }
}

TEST(Hochster, RejectsNonT0) { EXPECT_ERROR_KIND(hochster_dual(FinSpace::indiscrete(2)), NotT0); }

TEST(RoundTrip, OnePoint) { EXPECT_EQ(round_trip_space(FinSpace::discrete(1)), (Assignment{0})); }

TEST(RoundTrip, TwoChainExplicitly) {
  const FinSpace x = support::chain_space(2);
  const Assignment w = round_trip_space(x);
  const Spectrum s = spec_of_lattice(omega(x));
  const Frame fr = omega_frame(x);
  // Point 0 (generic) lies in every nonempty open, so its ideal is {∅}.
  for (std::size_t p = 0; p < 2; ++p) {
    std::vector<std::size_t> want;
    for (std::size_t k = 0; k < fr.opens.size(); ++k)
      if (!has(fr.opens[k], p)) want.push_back(k);
    EXPECT_EQ(s.points[w[p]].members, want);
  }
  EXPECT_EQ(s.points[w[0]].members, (std::vector<std::size_t>{0}));
}

TEST(RoundTrip, RejectsNonT0) { EXPECT_ERROR_KIND(round_trip_space(FinSpace::indiscrete(2)), NotT0); }

TEST(RoundTrip, LatticeSide) {
  EXPECT_EQ(round_trip_lattice(two()).assignment(), (Assignment{0, 1}));
  const LatticeMap m = round_trip_lattice(boolean4());
  EXPECT_TRUE(m.bijective());
  EXPECT_EQ(m.dst(), boolean4());
}

TEST(RoundTrip, ExhaustiveSmallPosets) {
  for (std::size_t n = 0; n <= 5; ++n)
    for (const FinPoset& p : gen::posets_up_to_iso(n)) {
      const FinSpace x = FinSpace::from_poset(p);
      const Assignment w = round_trip_space(x);
      EXPECT_TRUE(is_homeomorphism(x, spec_of_lattice(omega(x)).space, w));
      const LatticeMap m = round_trip_lattice(from_birkhoff(p));
      EXPECT_TRUE(m.bijective());
    }
}

// round trip ∘ f = spec(Ω f) ∘ round trip, pointwise.
TEST(RoundTrip, IsNatural) {
  gen::Rng rng(36);
  for (int i = 0; i < 100; ++i) {
    const FinSpace a = FinSpace::from_poset(gen::poset(rng, gen::uniform(rng, 1, 5)));
    const FinSpace b = FinSpace::from_poset(gen::poset(rng, gen::uniform(rng, 1, 5)));
    const SpectralMap f = gen::spectral_map(rng, a, b);
    const SpectralMap sf = spec_of_map(omega_of_map(f));
    EXPECT_EQ(compose(round_trip_space(b), f.assignment()), compose(sf.assignment(), round_trip_space(a)));

    const DistLattice l = from_birkhoff(a.as_poset()), m = from_birkhoff(b.as_poset());
    const LatticeMap g = gen::lattice_map(rng, l, m);
    const LatticeMap og = omega_of_map(spec_of_map(g));
    EXPECT_EQ(compose(round_trip_lattice(m).assignment(), g.assignment()),
              compose(og.assignment(), round_trip_lattice(l).assignment()));
  }
}
