#include "ppattach/eval.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ppattach/tbl.hpp"

namespace ppattach {

double error_reduction(double baseline_accuracy, double accuracy) {
  if (baseline_accuracy >= 1.0) return 0.0;
  return (accuracy - baseline_accuracy) / (1.0 - baseline_accuracy);
}

EvaluationReport evaluate(std::span<const AttachmentProblem> problems,
                          std::size_t n_not_handled) {
  if (problems.empty()) throw std::invalid_argument("evaluate: empty problem list");
  EvaluationReport report;
  report.n_tried = problems.size();
  report.n_not_handled = n_not_handled;
  for (Category category : kAllCategories) report.per_category[category];  // fixed shape

  std::size_t baseline_correct = 0;
  for (const AttachmentProblem& problem : problems) {
    if (!problem.gold)
      throw std::invalid_argument("evaluate: problem without a gold annotation");
    CategoryScore& tally = report.per_category[problem.category];
    ++tally.n;
    if (is_correct(problem)) {
      ++report.n_correct;
      ++tally.correct;
    }
    if (!is_resolvable(problem)) ++report.n_unresolvable;
    if (const auto* left = std::get_if<LeftGroup>(&*problem.gold);
        left && left->position == problem.igroup_pos - 1)
      ++baseline_correct;
  }
  report.accuracy = double(report.n_correct) / double(report.n_tried);
  report.baseline_accuracy = double(baseline_correct) / double(report.n_tried);
  report.error_reduction = error_reduction(report.baseline_accuracy, report.accuracy);
  std::size_t resolvable = report.n_tried - report.n_unresolvable;
  report.accuracy_excluding_unresolvable =
      resolvable == 0 ? 0.0 : double(report.n_correct) / double(resolvable);
  return report;
}

namespace {

double log_binom_pmf(std::size_t k, std::size_t n, double p) {
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
         std::lgamma(double(n - k) + 1) + double(k) * std::log(p) +
         double(n - k) * std::log1p(-p);
}

}  // namespace

double binomial_significance(std::size_t correct_a, std::size_t n_a, std::size_t correct_b,
                             std::size_t n_b) {
  if (n_a == 0 || n_b == 0) throw std::invalid_argument("binomial_significance: zero sample size");
  if (correct_a > n_a || correct_b > n_b)
    throw std::invalid_argument("binomial_significance: count exceeds sample size");
  double reference = double(correct_b) / double(n_b);
  if (reference == 0.0) return correct_a == 0 ? 1.0 : 0.0;
  if (reference == 1.0) return correct_a == n_a ? 1.0 : 0.0;

  if (n_a <= 10000) {
    // Exact two-sided tail: sum the probability of every outcome no more
    // likely than the observed one (with a small relative slack for ties).
    double log_cut = log_binom_pmf(correct_a, n_a, reference) + std::log1p(1e-7);
    double total = 0.0;
    for (std::size_t k = 0; k <= n_a; ++k) {
      double lp = log_binom_pmf(k, n_a, reference);
      if (lp <= log_cut) total += std::exp(lp);
    }
    return std::min(1.0, total);
  }
  double mean = double(n_a) * reference;
  double sd = std::sqrt(double(n_a) * reference * (1.0 - reference));
  double z = (double(correct_a) - mean) / sd;
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

const RuleSequence& CompositeRouter::route(Category category) const {
  static const RuleSequence empty;
  auto it = routes.find(category);
  return it == routes.end() ? empty : it->second;
}

CompositeRouter CompositeRouter::uniform(RuleSequence sequence) {
  CompositeRouter router;
  for (Category category : kAllCategories) router.routes[category] = sequence;
  return router;
}

EvaluationReport composite_evaluate(const CompositeRouter& router,
                                    std::span<AttachmentProblem> problems, const Lexicon& lexicon,
                                    std::size_t n_not_handled) {
  if (problems.empty()) throw std::invalid_argument("composite_evaluate: empty problem list");
  reset_to_adjacent(problems);
  for (const AttachmentProblem& problem : problems) {
    const RuleSequence& sequence = router.route(problem.category);
    if (!sequence.rules.empty() && sequence.meta.mode != problem.mode)
      throw std::invalid_argument("composite_evaluate: rule-set mode differs from problem mode");
  }
  // Problems are independent, so per-problem application equals a sweep.
  for (AttachmentProblem& problem : problems) {
    const RuleSequence& sequence = router.route(problem.category);
    for (const TrainedRule& trained : sequence.rules) apply_rule(trained.rule, problem, lexicon);
  }
  return evaluate(problems, n_not_handled);
}

double round1(double percent) { return std::floor(percent * 10.0 + 0.5) / 10.0; }

namespace {

std::string pct(double fraction) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", round1(fraction * 100.0));
  return buffer;
}

}  // namespace

std::string format_report(const EvaluationReport& report) {
  std::string out;
  auto line = [&](const char* label, const std::string& value) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "%-26s %s\n", label, value.c_str());
    out += buffer;
  };
  line("tried", std::to_string(report.n_tried));
  line("correct", std::to_string(report.n_correct));
  line("unresolvable", std::to_string(report.n_unresolvable));
  line("not-handled", std::to_string(report.n_not_handled));
  line("accuracy", pct(report.accuracy) + "%  (" + std::to_string(report.n_correct) + "/" +
                       std::to_string(report.n_tried) + ")");
  line("accuracy-excl-unresolv", pct(report.accuracy_excluding_unresolvable) + "%  (" +
                                     std::to_string(report.n_correct) + "/" +
                                     std::to_string(report.n_tried - report.n_unresolvable) + ")");
  line("baseline", pct(report.baseline_accuracy) + "%");
  line("error-reduction", pct(report.error_reduction) + "%");
  out += "per-category:\n";
  for (const auto& [category, tally] : report.per_category) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "  %-12s n=%-6zu correct=%-6zu accuracy=%s%%\n",
                  std::string(to_string(category)).c_str(), tally.n, tally.correct,
                  pct(tally.accuracy()).c_str());
    out += buffer;
  }
  return out;
}

std::string format_report_machine(const EvaluationReport& report) {
  std::string out;
  auto kv = [&](const std::string& key, const std::string& value) {
    out += key + "=" + value + "\n";
  };
  kv("n_tried", std::to_string(report.n_tried));
  kv("n_correct", std::to_string(report.n_correct));
  kv("n_unresolvable", std::to_string(report.n_unresolvable));
  kv("n_not_handled", std::to_string(report.n_not_handled));
  kv("accuracy", pct(report.accuracy));
  kv("accuracy_excluding_unresolvable", pct(report.accuracy_excluding_unresolvable));
  kv("baseline", pct(report.baseline_accuracy));
  kv("error_reduction", pct(report.error_reduction));
  for (const auto& [category, tally] : report.per_category) {
    std::string prefix = "cat." + std::string(to_string(category));
    kv(prefix + ".n", std::to_string(tally.n));
    kv(prefix + ".correct", std::to_string(tally.correct));
    kv(prefix + ".accuracy", pct(tally.accuracy()));
  }
  return out;
}

}  // namespace ppattach
