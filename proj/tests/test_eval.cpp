#include <doctest.h>

#include <cmath>

#include "ppattach/eval.hpp"
#include "ppattach/tbl.hpp"
#include "support.hpp"

using namespace ppattach;
using testsupport::bundled_lexicon;

namespace {

std::vector<AttachmentProblem> example_problems(const std::vector<Sentence>& corpus, Mode mode) {
  return extract_problems(std::span<const Sentence>(corpus), bundled_lexicon(), mode).problems;
}

// Independent recomputation of the exact tail sum in long double, with the
// pmf accumulated multiplicatively instead of through lgamma.
long double oracle_binomial_two_sided(std::size_t x, std::size_t n, long double p) {
  std::vector<long double> pmf(n + 1);
  pmf[0] = std::pow(1.0L - p, (long double)n);
  for (std::size_t k = 1; k <= n; ++k)
    pmf[k] = pmf[k - 1] * (long double)(n - k + 1) / (long double)k * p / (1.0L - p);
  long double cut = pmf[x] * (1.0L + 1e-7L);
  long double total = 0.0L;
  for (std::size_t k = 0; k <= n; ++k)
    if (pmf[k] <= cut) total += pmf[k];
  return total > 1.0L ? 1.0L : total;
}

}  // namespace

TEST_CASE("evaluate counts correctness, unresolvables and per-category tallies") {
  std::vector<Sentence> corpus = {
      parse_sentence("[ng I] [vg sent] [ng cup] [ig to {gold=1}] [ng her]"),      // fixable
      parse_sentence("[ng a] [vg saw] [ng b] [ig of {gold=2}] [ng c]"),           // correct
      parse_sentence("[ng cats] [ng dogs] [ig with {gold=coord:0,1}] [ng tags]"), // unresolvable
      parse_sentence("[ng a] [ng b] [ig because {gold=right}] [ng c]")};          // unresolvable
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  REQUIRE(problems.size() == 4);

  EvaluationReport report = evaluate(problems, 3);
  CHECK(report.n_tried == 4);
  CHECK(report.n_correct == 1);
  CHECK(report.n_unresolvable == 2);
  CHECK(report.n_not_handled == 3);
  CHECK(report.accuracy == doctest::Approx(0.25));
  CHECK(report.baseline_accuracy == doctest::Approx(0.25));
  CHECK(report.accuracy_excluding_unresolvable == doctest::Approx(0.5));
  CHECK(report.per_category.at(Category::Vnpn).n == 2);
  CHECK(report.per_category.at(Category::Vnpn).correct == 1);
  CHECK(report.per_category.at(Category::Xnpn).n == 1);
  CHECK(report.per_category.at(Category::Xnpn).correct == 0);
  CHECK(report.per_category.at(Category::SubConj).n == 1);

  std::size_t category_sum = 0;
  for (const auto& [category, tally] : report.per_category) category_sum += tally.n;
  CHECK(category_sum == report.n_tried);

  // fix the first problem and re-evaluate
  problems[0].current_guess = 1;
  EvaluationReport fixed = evaluate(problems);
  CHECK(fixed.n_correct == 2);
  CHECK(fixed.error_reduction ==
        doctest::Approx(error_reduction(fixed.baseline_accuracy, fixed.accuracy)));

  CHECK_THROWS_AS(evaluate(std::vector<AttachmentProblem>{}), std::invalid_argument);
  problems[0].gold.reset();
  CHECK_THROWS_AS(evaluate(problems), std::invalid_argument);
}

TEST_CASE("error reduction reproduces the reference pairs from raw counts") {
  // 59.0% -> 83.1% gives a 58.9% error reduction
  {
    double baseline = 1770.0 / 3000.0;
    double accuracy = 2494.0 / 3000.0;
    CHECK(round1(100.0 * baseline) == 59.0);
    CHECK(round1(100.0 * accuracy) == 83.1);
    CHECK(round1(100.0 * error_reduction(baseline, accuracy)) == 58.9);
  }
  // 67.7% -> 75.4% gives 24.0%
  {
    double baseline = 1524.0 / 2252.0;
    double accuracy = 1699.0 / 2252.0;
    CHECK(round1(100.0 * baseline) == 67.7);
    CHECK(round1(100.0 * accuracy) == 75.4);
    CHECK(round1(100.0 * error_reduction(baseline, accuracy)) == 24.0);
  }
  CHECK(error_reduction(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(error_reduction(1.0, 1.0) == 0.0);
}

TEST_CASE("error reduction is invariant under duplicating every problem") {
  std::vector<Sentence> corpus = {
      parse_sentence("[ng I] [vg sent] [ng cup] [ig to {gold=1}] [ng her]"),
      parse_sentence("[ng a] [vg saw] [ng b] [ig of {gold=2}] [ng c]"),
      parse_sentence("[ng a] [vg saw] [ng b] [ig with {gold=1}] [ng c]")};
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  std::vector<AttachmentProblem> doubled = problems;
  doubled.insert(doubled.end(), problems.begin(), problems.end());
  EvaluationReport one = evaluate(problems);
  EvaluationReport two = evaluate(doubled);
  CHECK(one.accuracy == doctest::Approx(two.accuracy));
  CHECK(one.error_reduction == doctest::Approx(two.error_reduction));
}

TEST_CASE("rounding is half-up to one decimal") {
  CHECK(round1(23.84) == 23.8);
  CHECK(round1(23.85) == 23.9);
  CHECK(round1(23.96) == 24.0);
  CHECK(round1(0.0) == 0.0);
  CHECK(round1(100.0) == 100.0);
}

TEST_CASE("binomial significance: exact tail sums against an independent oracle") {
  CHECK(binomial_significance(50, 100, 50, 100) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(binomial_significance(0, 100, 100, 100) < 1e-20);

  // frozen oracle values (long-double multiplicative pmf summation)
  double p_3000 = binomial_significance(2493, 3000, 2535, 3000);
  CHECK(p_3000 == doctest::Approx(0.0362516401763848).epsilon(1e-9));
  CHECK(p_3000 ==
        doctest::Approx((double)oracle_binomial_two_sided(2493, 3000, 2535.0L / 3000.0L))
            .epsilon(1e-9));
  CHECK(p_3000 <= 0.05);

  double p_1000 = binomial_significance(831, 1000, 845, 1000);
  CHECK(p_1000 == doctest::Approx(0.2212098713782901).epsilon(1e-9));
  CHECK(p_1000 ==
        doctest::Approx((double)oracle_binomial_two_sided(831, 1000, 845.0L / 1000.0L))
            .epsilon(1e-9));

  CHECK_THROWS_AS(binomial_significance(0, 0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(binomial_significance(1, 2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(binomial_significance(3, 2, 1, 2), std::invalid_argument);

  // degenerate reference proportions
  CHECK(binomial_significance(0, 50, 0, 50) == 1.0);
  CHECK(binomial_significance(1, 50, 0, 50) == 0.0);
  CHECK(binomial_significance(50, 50, 50, 50) == 1.0);

  // the normal-approximation branch stays close to the exact tail
  double exact = binomial_significance(8300, 10000, 8450, 10000);
  double approx = std::erfc(std::fabs(8300.0 - 10000.0 * 0.845) /
                            std::sqrt(10000.0 * 0.845 * 0.155) / std::sqrt(2.0));
  CHECK(exact == doctest::Approx(approx).epsilon(0.05));
  double large = binomial_significance(83000, 100000, 84500, 100000);
  CHECK(large < exact);
  CHECK(large > 0.0);
}

TEST_CASE("a uniform router equals plain application plus evaluation") {
  std::vector<Sentence> corpus = synthesize_corpus(testsupport::small_quotas(31), 313);
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  RuleSequence sequence = train(problems, bundled_lexicon(), Mode::All, 1);

  std::vector<AttachmentProblem> fresh = example_problems(corpus, Mode::All);
  apply_sequence(sequence, fresh, bundled_lexicon());
  EvaluationReport direct = evaluate(fresh);

  std::vector<AttachmentProblem> routed = example_problems(corpus, Mode::All);
  EvaluationReport composite =
      composite_evaluate(CompositeRouter::uniform(sequence), routed, bundled_lexicon());
  CHECK(composite.n_correct == direct.n_correct);
  CHECK(composite.accuracy == doctest::Approx(direct.accuracy));
}

TEST_CASE("a router of empty sequences reproduces the baseline") {
  std::vector<Sentence> corpus = synthesize_corpus(testsupport::small_quotas(32), 329);
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  EvaluationReport report = composite_evaluate(CompositeRouter{}, problems, bundled_lexicon());
  CHECK(report.accuracy == doctest::Approx(report.baseline_accuracy));
}

TEST_CASE("per-category routing beats both single sequences on a split corpus") {
  // category vnpn wants a verb move on 'to'; category noleftnoun wants a far
  // noun move on the same word, so one sequence cannot serve both
  std::vector<Sentence> corpus = {
      parse_sentence("[ng I] [vg sent] [ng cup] [ig to {gold=1}] [ng her]"),
      parse_sentence("[ng man] [vg flew] [ng key] [ig to {gold=1}] [ng office]"),
      parse_sentence("[ng book] [jg red] [rg quickly] [ig to {gold=0}] [ng her]"),
      parse_sentence("[ng story] [ng cat] [rg slowly] [ig to {gold=0}] [ng him]")};
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  REQUIRE(problems.size() == 4);
  CHECK(problems[0].category == Category::Vnpn);
  CHECK(problems[2].category == Category::NoLeftNoun);

  auto train_category = [&](Category category) {
    std::vector<AttachmentProblem> subset;
    for (const AttachmentProblem& problem : problems)
      if (problem.category == category) subset.push_back(problem);
    reset_to_adjacent(subset);
    return train(subset, bundled_lexicon(), Mode::All, 1);
  };
  RuleSequence for_vnpn = train_category(Category::Vnpn);
  RuleSequence for_noleftnoun = train_category(Category::NoLeftNoun);
  CHECK(!for_vnpn.rules.empty());
  CHECK(!for_noleftnoun.rules.empty());

  auto single_accuracy = [&](const RuleSequence& sequence) {
    std::vector<AttachmentProblem> fresh = example_problems(corpus, Mode::All);
    apply_sequence(sequence, fresh, bundled_lexicon());
    return evaluate(fresh).accuracy;
  };
  CompositeRouter router;
  router.routes[Category::Vnpn] = for_vnpn;
  router.routes[Category::NoLeftNoun] = for_noleftnoun;
  std::vector<AttachmentProblem> routed = example_problems(corpus, Mode::All);
  EvaluationReport composite = composite_evaluate(router, routed, bundled_lexicon());

  CHECK(composite.accuracy == doctest::Approx(1.0));
  CHECK(composite.accuracy > single_accuracy(for_vnpn));
  CHECK(composite.accuracy > single_accuracy(for_noleftnoun));
}

TEST_CASE("composite evaluation demands matching modes") {
  std::vector<Sentence> corpus = {
      parse_sentence("[ng I] [vg sent] [ng cup] [ig to {gold=1}] [ng her]")};
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  RuleSequence sequence;
  sequence.meta.mode = Mode::VA;
  sequence.rules.push_back(TrainedRule{
      Rule{{FeatureProbe{ProbeSite::IGroup, ProbeTest::WordIs, "to"}},
           MoveAction{MoveDirection::Left, std::nullopt}},
      1});
  CHECK_THROWS_AS(
      composite_evaluate(CompositeRouter::uniform(sequence), problems, bundled_lexicon()),
      std::invalid_argument);
}

TEST_CASE("unresolvable problems are never scored correct under any routing") {
  std::vector<Sentence> corpus = {
      parse_sentence("[ng cats] [ng dogs] [ig with {gold=coord:0,1}] [ng tags]"),
      parse_sentence("[ng I] [vg sent] [ng cup] [ig to {gold=1}] [ng her]")};
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  RuleSequence sequence = train(problems, bundled_lexicon(), Mode::All, 1);
  for (int i = 0; i < 3; ++i) {
    std::vector<AttachmentProblem> fresh = example_problems(corpus, Mode::All);
    EvaluationReport report =
        composite_evaluate(CompositeRouter::uniform(sequence), fresh, bundled_lexicon());
    CHECK(report.n_unresolvable == 1);
    for (const AttachmentProblem& problem : fresh)
      if (!is_resolvable(problem)) CHECK_FALSE(is_correct(problem));
  }
}

TEST_CASE("reports come out in a fixed shape with counts beside percentages") {
  std::vector<Sentence> corpus = {
      parse_sentence("[ng I] [vg sent] [ng cup] [ig to {gold=1}] [ng her]")};
  std::vector<AttachmentProblem> problems = example_problems(corpus, Mode::All);
  EvaluationReport report = evaluate(problems, 2);
  std::string text = format_report(report);
  CHECK(text.find("tried") != std::string::npos);
  CHECK(text.find("(0/1)") != std::string::npos);
  CHECK(text.find("not-handled") != std::string::npos);
  std::string machine = format_report_machine(report);
  CHECK(machine.find("n_tried=1\n") != std::string::npos);
  CHECK(machine.find("cat.vnpn.n=1\n") != std::string::npos);
  CHECK(machine.find("cat.subconj.n=0\n") != std::string::npos);
  CHECK(machine.find("baseline=0.0\n") != std::string::npos);
}
