#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ppattach/lexicon.hpp"
#include "ppattach/problems.hpp"
#include "ppattach/rules.hpp"

namespace ppattach {

struct CategoryScore {
  std::size_t n = 0;
  std::size_t correct = 0;

  double accuracy() const { return n == 0 ? 0.0 : double(correct) / double(n); }
};

struct EvaluationReport {
  std::size_t n_tried = 0;
  std::size_t n_correct = 0;
  std::size_t n_unresolvable = 0;
  std::size_t n_not_handled = 0;
  double accuracy = 0.0;
  double baseline_accuracy = 0.0;  // adjacent-guess accuracy
  double error_reduction = 0.0;
  /// Accuracy with unresolvable-gold problems dropped from the denominator
  /// (the other bookkeeping convention; the main accuracy keeps them in).
  double accuracy_excluding_unresolvable = 0.0;
  std::map<Category, CategoryScore> per_category;
};

/// (accuracy - baseline) / (1 - baseline); 0 when the baseline is already 1.
double error_reduction(double baseline_accuracy, double accuracy);

/// Scores the problems' current guesses. A problem is correct iff its gold is
/// LeftGroup(i) and the guess is i; unresolvable-gold problems count wrong and
/// are tallied. Throws std::invalid_argument on an empty list or a problem
/// without gold.
EvaluationReport evaluate(std::span<const AttachmentProblem> problems,
                          std::size_t n_not_handled = 0);

/// Two-sided significance of the difference between proportions a and b:
/// exact binomial test of correct_a out of n_a against the fixed reference
/// proportion correct_b/n_b, computed by pmf summation for n_a <= 10^4 and by
/// normal approximation above. Throws std::invalid_argument on zero n or
/// counts exceeding n.
double binomial_significance(std::size_t correct_a, std::size_t n_a, std::size_t correct_b,
                             std::size_t n_b);

/// Per-category rule-set routing: every category owns a sequence (the empty
/// sequence is legal and leaves that category at the baseline).
struct CompositeRouter {
  std::map<Category, RuleSequence> routes;

  const RuleSequence& route(Category category) const;
  static CompositeRouter uniform(RuleSequence sequence);
};

/// Routes each problem by category to its sequence, applies from the
/// adjacent-guess state, then evaluates jointly. Throws when a routed
/// non-empty sequence's mode mismatches the problems'.
EvaluationReport composite_evaluate(const CompositeRouter& router,
                                    std::span<AttachmentProblem> problems, const Lexicon& lexicon,
                                    std::size_t n_not_handled = 0);

/// Percentage rounded half-up to one decimal (the reporting convention).
double round1(double percent);

/// Fixed-order plain-text report; raw counts are always shown next to the
/// rounded percentages.
std::string format_report(const EvaluationReport& report);

/// Machine-readable key=value block, one metric per line, for golden-file
/// tests.
std::string format_report_machine(const EvaluationReport& report);

}  // namespace ppattach
