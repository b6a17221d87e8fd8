#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppattach/lexicon.hpp"
#include "ppattach/problems.hpp"
#include "ppattach/rules.hpp"

namespace ppattach {

/// The declared rule-template inventory. Versioned so trained models state
/// what space they were searched over.
struct TemplateInventory {
  std::string_view version = "v1";
  bool two_conjunct = true;  // pair an I-group probe with one other-site probe

  static const TemplateInventory& v1();
};

/// True iff every probe of the condition holds on the problem's current
/// context. Probes on absent sites (no right neighbor, no left verb) are
/// false, never errors.
bool condition_holds(const Rule& rule, const AttachmentProblem& problem, const Lexicon& lexicon);

bool probe_holds(const FeatureProbe& probe, const AttachmentProblem& problem,
                 const Lexicon& lexicon);

/// Where the rule would move the guess: scans candidates strictly beyond the
/// current guess in the action's direction, nearest first, and returns the
/// first candidate satisfying the target constraint (the nearest candidate
/// when unconstrained). Empty when the condition fails or nothing matches.
/// Does not mutate the problem.
std::optional<std::size_t> propose_move(const Rule& rule, const AttachmentProblem& problem,
                                        const Lexicon& lexicon);

/// propose_move plus the mutation: sets current_guess on success.
std::optional<std::size_t> apply_rule(const Rule& rule, AttachmentProblem& problem,
                                      const Lexicon& lexicon);

/// Data-driven template instantiation: every returned rule repairs at least
/// one currently incorrect problem (condition true there, move lands on its
/// gold group). Deduplicated and sorted by canonical_key, so the result is a
/// set independent of problem order.
std::vector<Rule> enumerate_candidate_rules(std::span<const AttachmentProblem> problems,
                                            const Lexicon& lexicon,
                                            const TemplateInventory& templates =
                                                TemplateInventory::v1());

struct RuleScore {
  int net = 0;    // repairs minus breakages over a single sweep
  int fixes = 0;  // gross repairs, the first tie-break

  bool operator==(const RuleScore&) const = default;
};

/// Net gain of one rule: +1 per incorrect guess moved onto gold, -1 per
/// correct guess moved off it; problems the rule does not fire on contribute 0.
RuleScore score_rule(const Rule& rule, std::span<const AttachmentProblem> problems,
                     const Lexicon& lexicon);

/// Reference scorer: plain rule-by-rule, problem-by-problem loop. Kept as the
/// serial baseline the fast kernel is tested and benchmarked against.
std::vector<RuleScore> score_rules_serial(std::span<const Rule> rules,
                                          std::span<const AttachmentProblem> problems,
                                          const Lexicon& lexicon);

/// Fast scorer: interns the probes and actions of the candidate set, then
/// tallies each problem's firing rules directly, parallelized over problems
/// with OpenMP when available. Integer tallies merge associatively, so the
/// result is identical to score_rules_serial.
std::vector<RuleScore> score_rules(std::span<const Rule> rules,
                                   std::span<const AttachmentProblem> problems,
                                   const Lexicon& lexicon);

enum class Execution { Serial, Parallel };

struct TrainOptions {
  Mode mode{Mode::All};
  int threshold = 2;
  std::string corpus_digest = "-";
  Execution execution{Execution::Parallel};
  TemplateInventory templates{};
};

/// Greedy error-driven training. Problems must be freshly initialized to
/// adjacent guesses and all carry gold annotations; they are mutated in place
/// as rules are accepted. Stops when the best candidate's net gain drops
/// below the threshold. Ties break on more gross fixes, then the smallest
/// canonical_key. Throws std::invalid_argument on an empty problem list or a
/// threshold below 1.
RuleSequence train(std::vector<AttachmentProblem>& problems, const Lexicon& lexicon,
                   const TrainOptions& options);
RuleSequence train(std::vector<AttachmentProblem>& problems, const Lexicon& lexicon, Mode mode,
                   int threshold);

/// Runs the sequence in learned order, one full sweep per rule. Problems must
/// be freshly initialized and share the sequence's mode (mismatch throws).
void apply_sequence(const RuleSequence& sequence, std::span<AttachmentProblem> problems,
                    const Lexicon& lexicon);

}  // namespace ppattach
