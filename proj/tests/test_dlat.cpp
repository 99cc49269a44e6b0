#include <gtest/gtest.h>

#include <functional>
#include <set>
#include <vector>

#include "bridge.hpp"
#include "oracle.hpp"
#include "stonekit/dlat.hpp"
#include "stonekit/generate.hpp"
#include "support.hpp"

using namespace stonekit;

namespace {

DistLattice two() { return from_birkhoff(FinPoset::antichain(1)); }
DistLattice boolean4() { return from_birkhoff(FinPoset::antichain(2)); }
DistLattice chain3() { return from_birkhoff(FinPoset::chain(2)); }

/// Meet and join tables of a finite lattice given by its order, by search
/// for greatest lower and least upper bounds.
LatticeTables tables_from_order(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                                std::size_t bot, std::size_t top) {
  LatticeTables t{n, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)),
                  std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)), bot, top};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        bool glb = leq(c, a) && leq(c, b), lub = leq(a, c) && leq(b, c);
        for (std::size_t d = 0; d < n; ++d) {
          if (glb && leq(d, a) && leq(d, b) && !leq(d, c)) glb = false;
          if (lub && leq(a, d) && leq(b, d) && !leq(c, d)) lub = false;
        }
        if (glb) t.meet[a][b] = c;
        if (lub) t.join[a][b] = c;
      }
    }
  return t;
}

}  // namespace

TEST(Birkhoff, SinglePointGivesTwo) {
  const DistLattice l = two();
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.element(l.bottom()), 0u);
  EXPECT_EQ(l.element(l.top()), 1u);
  EXPECT_TRUE(l.leq(0, 1));
}

TEST(Birkhoff, AntichainGivesBooleanFour) {
  const DistLattice l = boolean4();
  EXPECT_EQ(l.size(), 4u);
  EXPECT_EQ(l.join(1, 2), 3u);
  EXPECT_EQ(l.meet(1, 2), 0u);
}

TEST(Birkhoff, EmptyPosetGivesTrivialLattice) {
  const DistLattice l = from_birkhoff(FinPoset{});
  EXPECT_EQ(l.size(), 1u);
  EXPECT_EQ(l.bottom(), l.top());
}

TEST(Birkhoff, CapIsEnforced) { EXPECT_ERROR_KIND(from_birkhoff(FinPoset::antichain(6), 40), Size); }

TEST(Birkhoff, LatticeLawsHold) {
  gen::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const DistLattice l = from_birkhoff(gen::poset(rng, gen::uniform(rng, 0, 5)));
    for (std::size_t a = 0; a < l.size(); ++a) {
      EXPECT_TRUE(l.leq(l.bottom(), a));
      EXPECT_TRUE(l.leq(a, l.top()));
      for (std::size_t b = 0; b < l.size(); ++b)
        for (std::size_t c = 0; c < l.size(); ++c)
          ASSERT_EQ(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
    }
  }
}

TEST(Tables, TwoRoundTripsWithIdentityWitness) {
  const NormalizedLattice n = from_tables(to_tables(two()));
  EXPECT_EQ(n.lattice.size(), 2u);
  EXPECT_EQ(n.witness, (Assignment{0, 1}));
}

TEST(Tables, BooleanFourHasTwoAtomsAsGenerators) {
  // 0, a, b, 1 listed in a non-canonical order: 1, a, 0, b.
  const std::vector<std::size_t> rank{2, 1, 0, 1};  // 1 > a, b > 0
  auto leq = [&](std::size_t x, std::size_t y) { return x == y || rank[x] < rank[y]; };
  const NormalizedLattice n = from_tables(tables_from_order(4, leq, 2, 0));
  EXPECT_EQ(n.lattice.join_irreducibles().size(), 2u);
  EXPECT_EQ(n.lattice.join_irreducibles().comparable_pairs(), 0u);
  EXPECT_EQ(n.witness[2], n.lattice.bottom());
  EXPECT_EQ(n.witness[0], n.lattice.top());
}

TEST(Tables, DiamondIsNotDistributive) {
  auto leq = [](std::size_t x, std::size_t y) { return x == y || x == 0 || y == 4; };
  const Error e = support::error_of([&] { from_tables(tables_from_order(5, leq, 0, 4)); });
  EXPECT_EQ(e.kind(), ErrorKind::NotDistributive);
  ASSERT_EQ(e.witness().size(), 3u);
  // a^(bvc) = a differs from (a^b)v(a^c) = 0 at the reported triple.
  const auto& w = e.witness();
  EXPECT_NE(w[0], 0u);
}

TEST(Tables, PentagonIsNotDistributive) {
  // 0 < a < c < 1 and 0 < b < 1.
  const std::vector<Pair> pairs{{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}};
  const FinPoset p = FinPoset::from_pairs(5, pairs);
  EXPECT_ERROR_KIND(from_tables(tables_from_order(5, [&](std::size_t x, std::size_t y) { return p.leq(x, y); }, 0, 4)),
                    NotDistributive);
}

TEST(Tables, BrokenTablesAreNotLattices) {
  LatticeTables t = to_tables(boolean4());
  t.meet[1][2] = 3;
  EXPECT_ERROR_KIND(from_tables(t), NotALattice);
  LatticeTables empty;
  EXPECT_ERROR_KIND(from_tables(empty), NotALattice);
  LatticeTables ragged = to_tables(two());
  ragged.join[0].pop_back();
  EXPECT_ERROR_KIND(from_tables(ragged), Index);
}

TEST(Tables, ExportImportIsIsomorphic) {
  gen::Rng rng(22);
  for (int i = 0; i < 40; ++i) {
    const DistLattice l = from_birkhoff(gen::poset(rng, gen::uniform(rng, 0, 6)));
    if (l.size() > 64) continue;
    const NormalizedLattice n = from_tables(to_tables(l));
    // Normalization may reorder join-irreducibles; the witness must be an iso.
    const LatticeMap w = LatticeMap::validate(l, n.lattice, n.witness);
    EXPECT_TRUE(w.bijective());
    EXPECT_TRUE(is_isomorphic(l.join_irreducibles(), n.lattice.join_irreducibles()));
  }
}

TEST(PrimeIdeals, TwoHasOne) {
  const auto ps = prime_ideals(two());
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].members, (std::vector<std::size_t>{0}));
}

TEST(PrimeIdeals, BooleanFourHasTwo) {
  const auto ps = prime_ideals(boolean4());
  ASSERT_EQ(ps.size(), 2u);
  // Elements: 0, {0}, {1}, {0,1}. Ideals {0,a} and {0,b}.
  EXPECT_EQ(ps[0].members, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(ps[1].members, (std::vector<std::size_t>{0, 1}));
}

TEST(PrimeIdeals, TrivialLatticeHasNone) { EXPECT_TRUE(prime_ideals(from_birkhoff(FinPoset{})).empty()); }

TEST(PrimeIdeals, FastPathMatchesBruteForceExhaustively) {
  for (std::size_t n = 0; n <= 5; ++n)
    for (const FinPoset& p : gen::posets_up_to_iso(n)) {
      const DistLattice l = from_birkhoff(p);
      EXPECT_EQ(prime_ideals(l), prime_ideals_bruteforce(l));
    }
}

TEST(PrimeIdeals, MatchOracle) {
  gen::Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const DistLattice l = from_birkhoff(gen::poset(rng, gen::uniform(rng, 0, 7)));
    oracle::SetLattice s;
    for (std::size_t k = 0; k < l.size(); ++k) s.elems.push_back(l.element(k));
    std::set<std::vector<bool>> want;
    for (const auto& ideal : oracle::prime_ideals(s)) want.insert(ideal);
    std::set<std::vector<bool>> got;
    for (const PrimeIdeal& p : prime_ideals(l)) {
      std::vector<bool> in(l.size(), false);
      for (std::size_t k : p.members) in[k] = true;
      got.insert(in);
    }
    EXPECT_EQ(got, want);
  }
}

TEST(LatticeMapValidation, IdentityIsValid) {
  for (const DistLattice& l : {two(), boolean4(), chain3()})
    EXPECT_NO_THROW(LatticeMap::validate(l, l, identity_assignment(l.size())));
}

TEST(LatticeMapValidation, CardinalityIsNotJoinPreserving) {
  const Error e = support::error_of([] { LatticeMap::validate(boolean4(), chain3(), {0, 1, 1, 2}); });
  EXPECT_EQ(e.kind(), ErrorKind::NotJoinPreserving);
  EXPECT_EQ(e.witness(), (std::vector<std::size_t>{1, 2}));
}

TEST(LatticeMapValidation, ConstantTopViolatesBounds) {
  const Error e = support::error_of([] { LatticeMap::validate(two(), two(), {1, 1}); });
  EXPECT_EQ(e.kind(), ErrorKind::BoundsViolated);
  EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1}));
}

TEST(LatticeMapValidation, OtherViolations) {
  EXPECT_ERROR_KIND(LatticeMap::validate(two(), two(), {1, 0}), NotMonotone);
  // Sends both atoms to top: joins fine, meet {a}^{b}=0 is not preserved.
  EXPECT_ERROR_KIND(LatticeMap::validate(boolean4(), two(), {0, 1, 1, 1}), NotMeetPreserving);
  EXPECT_ERROR_KIND(LatticeMap::validate(two(), two(), {0}), Index);
  EXPECT_ERROR_KIND(LatticeMap::validate(two(), two(), {0, 2}), Index);
}

TEST(LatticeMapValidation, CompositionAndInverse) {
  gen::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const DistLattice a = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 4)));
    const DistLattice b = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 4)));
    const DistLattice c = from_birkhoff(gen::poset(rng, gen::uniform(rng, 0, 4)));
    EXPECT_NO_THROW(compose(gen::lattice_map(rng, b, c), gen::lattice_map(rng, a, b)));
  }
  const LatticeMap swap = LatticeMap::validate(boolean4(), boolean4(), {0, 2, 1, 3});
  ASSERT_TRUE(swap.bijective());
  EXPECT_EQ(inverse(swap).assignment(), (Assignment{0, 2, 1, 3}));
  EXPECT_ERROR_KIND(inverse(LatticeMap::validate(boolean4(), two(), {0, 0, 1, 1})), Index);
}

TEST(Equalizer, IdentityPairGivesL) {
  const DistLattice l = chain3();
  const Equalizer e = equalizer(LatticeMap::identity(l), LatticeMap::identity(l));
  EXPECT_EQ(e.lattice, l);
  EXPECT_EQ(e.carrier, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Equalizer, AtomSwapFixesOnlyBounds) {
  const DistLattice l = boolean4();
  const Equalizer e = equalizer(LatticeMap::identity(l), LatticeMap::validate(l, l, {0, 2, 1, 3}));
  EXPECT_EQ(e.carrier, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(e.lattice, two());
  EXPECT_EQ(e.inclusion.assignment(), (Assignment{0, 3}));
}

TEST(Equalizer, IdentityComposedWithItself) {
  const DistLattice l = two();
  const LatticeMap id = LatticeMap::identity(l);
  EXPECT_EQ(equalizer(id, compose(id, id)).lattice, two());
}

TEST(Equalizer, NonParallelMapsAreRejected) {
  EXPECT_ERROR_KIND(equalizer(LatticeMap::identity(two()), LatticeMap::identity(boolean4())), Index);
}

TEST(Equalizer, CarrierIsTheSetEqualizer) {
  gen::Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    const DistLattice l = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 5)));
    const DistLattice m = from_birkhoff(gen::poset(rng, gen::uniform(rng, 1, 5)));
    const LatticeMap a = gen::lattice_map(rng, l, m), b = gen::lattice_map(rng, l, m);
    std::vector<std::size_t> agree;
    for (std::size_t x = 0; x < l.size(); ++x)
      if (a(x) == b(x)) agree.push_back(x);
    const Equalizer e = equalizer(a, b);
    EXPECT_EQ(e.carrier, agree);
    EXPECT_EQ(e.lattice.size(), agree.size());
    EXPECT_EQ(compose(a, e.inclusion).assignment(), compose(b, e.inclusion).assignment());
  }
}

TEST(Sublattice, ClosedCarriersOnly) {
  EXPECT_ERROR_KIND(sublattice(boolean4(), {0, 1, 2}), Internal);
  EXPECT_ERROR_KIND(sublattice(boolean4(), {1, 3}), Internal);
  EXPECT_EQ(sublattice(boolean4(), {0, 1, 3}).lattice, chain3());
}

TEST(Product, TwoTimesTwoIsBooleanFour) {
  const Product p = product(two(), two());
  EXPECT_TRUE(lattice_isomorphism(p.lattice, boolean4()));
  EXPECT_EQ(p.first(p.pair(1, 0)), 1u);
  EXPECT_EQ(p.second(p.pair(1, 0)), 0u);
}

TEST(Product, TrivialFactorIsNeutral) {
  const Product p = product(chain3(), from_birkhoff(FinPoset{}));
  EXPECT_TRUE(lattice_isomorphism(p.lattice, chain3()));
}

TEST(Product, IteratedGivesBooleanEight) {
  const Product p = product(product(two(), two()).lattice, two());
  EXPECT_EQ(p.lattice.size(), 8u);
  EXPECT_TRUE(lattice_isomorphism(p.lattice, from_birkhoff(FinPoset::antichain(3))));
}

TEST(Product, ComponentwiseOrder) {
  const DistLattice a = chain3(), b = boolean4();
  const Product p = product(a, b);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      for (std::size_t x2 = 0; x2 < a.size(); ++x2)
        for (std::size_t y2 = 0; y2 < b.size(); ++y2)
          EXPECT_EQ(p.lattice.leq(p.pair(x, y), p.pair(x2, y2)), a.leq(x, x2) && b.leq(y, y2));
}

TEST(Opposite, SelfDualExamples) {
  EXPECT_EQ(opposite(two()), two());
  // The 3-chain reverses its join-irreducibles, so equality holds only up to iso.
  EXPECT_TRUE(lattice_isomorphism(opposite(chain3()), chain3()));
  EXPECT_TRUE(lattice_isomorphism(opposite(boolean4()), boolean4()));
}

TEST(Opposite, VeeAgainstWedge) {
  const std::vector<Pair> vee{{0, 1}, {0, 2}}, wedge{{1, 0}, {2, 0}};
  const DistLattice a = opposite(from_birkhoff(FinPoset::from_pairs(3, vee)));
  EXPECT_TRUE(lattice_isomorphism(a, from_birkhoff(FinPoset::from_pairs(3, wedge))));
}

TEST(Opposite, IsAnInvolutionUpToIsomorphism) {
  gen::Rng rng(26);
  for (int i = 0; i < 60; ++i) {
    const DistLattice l = from_birkhoff(gen::poset(rng, gen::uniform(rng, 0, 5)));
    const NormalizedLattice op = opposite_with_witness(l);
    for (std::size_t a = 0; a < l.size(); ++a)
      for (std::size_t b = 0; b < l.size(); ++b) ASSERT_EQ(l.leq(a, b), op.lattice.leq(op.witness[b], op.witness[a]));
    EXPECT_TRUE(lattice_isomorphism(opposite(op.lattice), l));
  }
}

TEST(FiniteElements, AreAllElements) {
  EXPECT_EQ(finite_elements(two()), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(finite_elements(boolean4()).size(), 4u);
  EXPECT_EQ(finite_elements(from_birkhoff(FinPoset{})), (std::vector<std::size_t>{0}));
}
