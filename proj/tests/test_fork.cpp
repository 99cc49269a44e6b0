#include <gtest/gtest.h>

#include <vector>

#include "json_io.hpp"
#include "stonekit/fork.hpp"
#include "stonekit/generate.hpp"
#include "support.hpp"

using namespace stonekit;

namespace {

ParallelRow row(std::size_t s0, std::size_t s1, std::size_t s2, Assignment f, Assignment a, Assignment b) {
  return ParallelRow{s0, s1, s2, std::move(f), std::move(a), std::move(b)};
}

ForkDiagram bundled_split_fork() { return io::parse_fork(io::load_file(support::data("split_fork.json"))); }

/// Both rows equal to `r`, identity verticals and retractions.
LadderDiagram identity_ladder(const ParallelRow& r, Assignment u, Assignment v) {
  LadderDiagram l;
  l.top = r;
  l.bottom = r;
  l.u = u;
  l.v = v;
  l.i0 = l.r0.emplace(identity_assignment(r.s0));
  l.i1 = l.r1.emplace(identity_assignment(r.s1));
  l.i2 = l.r2.emplace(identity_assignment(r.s2));
  return l;
}

}  // namespace

TEST(SplitFork, SingletonsWithIdentities) {
  const ForkDiagram d = ForkDiagram::validate(row(1, 1, 1, {0}, {0}, {0}), Assignment{0}, Assignment{0});
  EXPECT_TRUE(is_split_fork(d));
}

TEST(SplitFork, TwoPointIdentityInstance) {
  const Assignment id = identity_assignment(2);
  const ForkDiagram d = ForkDiagram::validate(row(2, 2, 2, id, id, id), id, id);
  EXPECT_TRUE(is_split_fork(d));
  // v must be a section of beta: the swap is not.
  const ForkDiagram bad = ForkDiagram::validate(row(2, 2, 2, id, id, id), id, Assignment{1, 0});
  const Verdict v = split_fork_check(bad);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.which, "v∘beta=id");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{0}));
}

TEST(SplitFork, BundledInstanceAndOnePointMutation) {
  const ForkDiagram d = bundled_split_fork();
  EXPECT_TRUE(is_split_fork(d));
  const ForkDiagram bad = ForkDiagram::validate(d.row(), d.u(), Assignment{1, 1});
  const Verdict v = split_fork_check(bad);
  EXPECT_EQ(v.which, "v∘beta=id");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{0}));
}

TEST(SplitFork, ThirdEquationWitness) {
  // u∘f = id and v∘beta = id hold, v∘alpha differs from f∘u at 1.
  const ForkDiagram d = ForkDiagram::validate(row(1, 2, 2, {0}, {0, 0}, {0, 1}), Assignment{0, 0}, Assignment{0, 1});
  EXPECT_TRUE(is_split_fork(d));
  const ForkDiagram bad = ForkDiagram::validate(row(1, 2, 2, {0}, {0, 1}, {0, 1}), Assignment{0, 0}, Assignment{0, 1});
  const Verdict v = split_fork_check(bad);
  EXPECT_EQ(v.which, "v∘alpha=f∘u");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{1}));
}

TEST(SplitFork, NeedsSplittings) {
  const ForkDiagram d = ForkDiagram::validate(row(1, 1, 1, {0}, {0}, {0}));
  EXPECT_ERROR_KIND(split_fork_check(d), MissingSplitting);
}

TEST(ForkDiagram, RejectsNonForksAndBadMaps) {
  const Error e = support::error_of([] { ForkDiagram::validate(row(1, 2, 2, {1}, {0, 0}, {0, 1})); });
  EXPECT_EQ(e.kind(), ErrorKind::HypothesisFailed);
  EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0}));
  EXPECT_ERROR_KIND(ForkDiagram::validate(row(1, 2, 2, {2}, {0, 0}, {0, 0})), Index);
  EXPECT_ERROR_KIND(ForkDiagram::validate(row(1, 2, 2, {0}, {0}, {0, 0})), Index);
  EXPECT_ERROR_KIND(ForkDiagram::validate(row(1, 1, 1, {0}, {0}, {0}), Assignment{1}), Index);
}

TEST(Equalizer, SplitForksAreEqualizers) {
  EXPECT_TRUE(is_equalizer(bundled_split_fork()));
  gen::Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    const ForkDiagram d = gen::split_fork(rng, 6);
    ASSERT_TRUE(is_split_fork(d));
    EXPECT_TRUE(is_equalizer(d));
  }
}

TEST(Equalizer, ConstantFIsNotInjective) {
  const Verdict v = is_equalizer(row(2, 2, 1, {0, 0}, {0, 0}, {0, 0}));
  EXPECT_EQ(v.which, "f not injective");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{0, 1}));
}

TEST(Equalizer, MissingAgreementPoint) {
  const Verdict v = is_equalizer(row(1, 2, 2, {0}, {0, 1}, {0, 1}));
  EXPECT_EQ(v.which, "agreement point outside image(f)");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{1}));
}

TEST(Equalizer, ImageOutsideAgreementSet) {
  const Verdict v = is_equalizer(row(1, 2, 2, {1}, {0, 0}, {1, 1}));
  EXPECT_EQ(v.which, "image(f) not in agreement set");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{1}));
}

TEST(InjectiveLemma, IdentityLadder) {
  const ForkDiagram d = bundled_split_fork();
  const InjectiveLemmaReport r = lemma_injective_decide(identity_ladder(d.row(), *d.u(), *d.v()));
  EXPECT_TRUE(r.bottom_is_equalizer);
  EXPECT_TRUE(r.lifting_condition);
  EXPECT_TRUE(r.equivalent);
}

TEST(InjectiveLemma, EmptyBottomWithAgreementPoint) {
  const LadderDiagram l = io::parse_ladder(io::load_file(support::data("ladder_injective.json"))).ladder;
  const InjectiveLemmaReport r = lemma_injective_decide(l);
  EXPECT_FALSE(r.bottom_is_equalizer);
  EXPECT_FALSE(r.lifting_condition);
  EXPECT_EQ(r.lifting_condition.witness, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(r.equivalent);
}

TEST(InjectiveLemma, HypothesisFailures) {
  const ForkDiagram d = bundled_split_fork();
  LadderDiagram l = identity_ladder(d.row(), *d.u(), *d.v());
  l.u.reset();
  EXPECT_ERROR_KIND(lemma_injective_decide(l), MissingSplitting);

  l = identity_ladder(d.row(), *d.u(), *d.v());
  l.v = Assignment{1, 1};
  Error e = support::error_of([&] { lemma_injective_decide(l); });
  EXPECT_EQ(e.kind(), ErrorKind::HypothesisFailed);
  EXPECT_EQ(e.which(), "(i) v∘beta=id");

  l = identity_ladder(d.row(), *d.u(), *d.v());
  l.i1 = {0, 0};
  e = support::error_of([&] { lemma_injective_decide(l); });
  EXPECT_EQ(e.which(), "(ii) i1 injective");
  EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1}));

  l = identity_ladder(d.row(), *d.u(), *d.v());
  l.i2 = {1, 0};
  e = support::error_of([&] { lemma_injective_decide(l); });
  EXPECT_EQ(e.which(), "(iv) alpha∘i1=i2∘gamma");
}

// (iii) and (iv) force the bottom fork only when i2 is injective.
TEST(InjectiveLemma, BottomForkIsRequired) {
  const ForkDiagram d = bundled_split_fork();
  LadderDiagram l;
  l.top = d.row();
  l.u = d.u();
  l.v = d.v();
  l.bottom = row(1, 1, 2, {0}, {0}, {1});
  l.i0 = {0};
  l.i1 = {0};
  l.i2 = {0, 0};
  const Error e = support::error_of([&] { lemma_injective_decide(l); });
  EXPECT_EQ(e.kind(), ErrorKind::HypothesisFailed);
  EXPECT_EQ(e.which(), "bottom fork gamma∘g=delta∘g");
  EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0}));
}

TEST(InjectiveLemma, GeneratedLaddersAgree) {
  gen::Rng rng(52);
  std::size_t yes = 0, no = 0;
  for (int i = 0; i < 300; ++i) {
    const InjectiveLemmaReport r = lemma_injective_decide(gen::injective_ladder(rng, 6));
    ASSERT_TRUE(r.equivalent);
    (r.lifting_condition ? yes : no) += 1;
  }
  EXPECT_GT(yes, 0u);
  EXPECT_GT(no, 0u);
}

TEST(RetractionLemma, IdentityLadder) {
  const ForkDiagram d = bundled_split_fork();
  const RetractionLemmaReport r = lemma_retraction_decide(identity_ladder(d.row(), *d.u(), *d.v()));
  EXPECT_TRUE(r.r0_bijective);
  EXPECT_TRUE(r.square_commutes);
  EXPECT_TRUE(r.bottom_is_equalizer);
  EXPECT_TRUE(r.equivalent);
}

TEST(RetractionLemma, NonSurjectiveSectionFailsAllThree) {
  // X0 = X1 = {0,1}, X2 = {0}; the bottom keeps only one point of X0.
  LadderDiagram l;
  l.top = row(2, 2, 1, {0, 1}, {0, 0}, {0, 0});
  l.bottom = row(1, 2, 1, {0}, {0, 0}, {0, 0});
  l.i0 = {0};
  l.i1 = {0, 1};
  l.i2 = {0};
  l.r0 = Assignment{0, 0};
  l.r1 = Assignment{0, 1};
  l.r2 = Assignment{0};
  const RetractionLemmaReport r = lemma_retraction_decide(l);
  EXPECT_EQ(r.r0_bijective.witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.square_commutes.witness, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r.bottom_is_equalizer.witness, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(r.equivalent);
}

TEST(RetractionLemma, HypothesisFailures) {
  const ForkDiagram d = bundled_split_fork();
  LadderDiagram l = identity_ladder(d.row(), *d.u(), *d.v());
  l.r2.reset();
  EXPECT_ERROR_KIND(lemma_retraction_decide(l), MissingSplitting);

  l = identity_ladder(d.row(), *d.u(), *d.v());
  l.r1 = Assignment{1, 1};
  EXPECT_EQ(support::error_of([&] { lemma_retraction_decide(l); }).which(), "(ii) r1∘i1=id");

  // Top row that is a fork but not an equalizer.
  const ParallelRow notEq = row(1, 2, 1, {0}, {0, 0}, {0, 0});
  l = identity_ladder(notEq, {0, 0}, {0});
  EXPECT_EQ(support::error_of([&] { lemma_retraction_decide(l); }).which(),
            "(i) top equalizer: agreement point outside image(f)");
}

TEST(RetractionLemma, GeneratedLaddersAgree) {
  gen::Rng rng(53);
  std::size_t yes = 0, no = 0;
  for (int i = 0; i < 300; ++i) {
    const RetractionLemmaReport r = lemma_retraction_decide(gen::retraction_ladder(rng, 6));
    ASSERT_TRUE(r.equivalent);
    (r.bottom_is_equalizer ? yes : no) += 1;
  }
  EXPECT_GT(yes, 0u);
  EXPECT_GT(no, 0u);
}
