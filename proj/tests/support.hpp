#pragma once

// Shared test helpers: the bundled lexicon, a random-sentence fuzzer, the
// naive brute-force training oracle, and a replay checker for the
// error-monotonicity contract. The oracle code deliberately re-derives
// everything from first principles (fresh copies, no interning, no shared
// scan logic beyond the public API) so it can catch the fast paths drifting.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppattach/corpus.hpp"
#include "ppattach/eval.hpp"
#include "ppattach/lexicon.hpp"
#include "ppattach/problems.hpp"
#include "ppattach/rules.hpp"
#include "ppattach/synthesis.hpp"
#include "ppattach/tbl.hpp"

#ifndef PPATTACH_DATA_DIR
#define PPATTACH_DATA_DIR "data"
#endif

namespace testsupport {

using namespace ppattach;

inline const Lexicon& bundled_lexicon() {
  static const Lexicon lexicon = load_lexicon_file(std::string(PPATTACH_DATA_DIR) + "/lexicon.tsv");
  return lexicon;
}

inline Lexicon lexicon_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_lexicon(in, "<inline>");
}

// ---------------------------------------------------------------------------
// Random sentences for property tests. Gold annotations are always valid for
// the format; some I-groups are left unannotated.

struct Fuzzer {
  SynthRng rng;

  explicit Fuzzer(std::uint64_t seed) : rng(seed) {}

  std::string word() {
    static const std::vector<std::string> words = {
        "cup",  "man",  "saw",  "to",   "of",    "which", "that", "quickly", "red",
        "home", "dogs", "cats", "sent", "about", "from",  "tag",  "book",    "went"};
    if (rng.chance(0.04)) {
      // tokens that stress the escaping rules
      static const std::vector<std::string> odd = {"[x]", "{y}", "a\\b", "}", "[", "\\",
                                                   "Chief", "1,234.5"};
      return odd[rng.below(odd.size())];
    }
    return words[rng.below(words.size())];
  }

  Sentence sentence() {
    Sentence out;
    std::size_t n_groups = 1 + rng.below(9);
    for (std::size_t i = 0; i < n_groups; ++i) {
      GroupKind kind = kAllGroupKinds[rng.below(5)];
      std::vector<Token> tokens;
      std::size_t n_tokens = 1 + (rng.chance(0.25) ? rng.below(2) : 0);
      for (std::size_t t = 0; t < n_tokens; ++t)
        tokens.push_back(Token{word(), std::string(kUntaggedPos)});
      out.groups.push_back(SyntaxGroup::make(kind, std::move(tokens)));
    }
    for (std::size_t i = 0; i < out.groups.size(); ++i) {
      if (out.groups[i].kind != GroupKind::IGroup) continue;
      double roll = rng.unit();
      if (roll < 0.2) continue;  // unannotated
      if (roll < 0.6 && i > 0) {
        out.gold_attachments.emplace(i, LeftGroup{rng.below(i)});
      } else if (roll < 0.7) {
        out.gold_attachments.emplace(i, RightAttachment{});
      } else if (roll < 0.85 && i >= 2) {
        std::size_t first = rng.below(i - 1);
        out.gold_attachments.emplace(i, CoordinationOfGroups{{first, first + 1 + rng.below(i - first - 1)}});
      } else {
        out.gold_attachments.emplace(i, Unattachable{"fuzz"});
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Brute-force oracle. Scores by copying the problem, applying the rule via
// the public single-rule API, and recounting errors before and after.

inline int naive_errors(const std::vector<AttachmentProblem>& problems) {
  int errors = 0;
  for (const AttachmentProblem& problem : problems)
    if (!is_correct(problem)) ++errors;
  return errors;
}

inline RuleScore naive_score(const Rule& rule, const std::vector<AttachmentProblem>& problems,
                             const Lexicon& lexicon) {
  RuleScore score;
  for (const AttachmentProblem& problem : problems) {
    AttachmentProblem copy = problem;
    if (!apply_rule(rule, copy, lexicon)) continue;
    bool before = is_correct(problem);
    bool after = is_correct(copy);
    if (!before && after) {
      ++score.net;
      ++score.fixes;
    } else if (before && !after) {
      --score.net;
    }
  }
  return score;
}

// Argmax over an already-enumerated candidate set under the declared
// tie-break: net gain, then gross fixes, then smallest canonical key. The
// candidates arrive in canonical order, so first-strict-improvement wins.
inline std::optional<std::size_t> naive_best_rule(const std::vector<Rule>& candidates,
                                                  const std::vector<AttachmentProblem>& problems,
                                                  const Lexicon& lexicon) {
  if (candidates.empty()) return std::nullopt;
  std::size_t best = 0;
  RuleScore best_score = naive_score(candidates[0], problems, lexicon);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    RuleScore score = naive_score(candidates[i], problems, lexicon);
    if (score.net > best_score.net ||
        (score.net == best_score.net && score.fixes > best_score.fixes)) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

// Replays a trained sequence step by step and checks, at every step, that the
// accepted rule is the brute-force argmax and that it repairs at least
// `threshold` net errors; checks the stopping condition at the end. Problems
// must be the freshly initialized training set. Returns a description of the
// first violation, or the empty string.
inline std::string replay_training(const RuleSequence& sequence,
                                   std::vector<AttachmentProblem> problems,
                                   const Lexicon& lexicon) {
  for (std::size_t step = 0; step < sequence.rules.size(); ++step) {
    const TrainedRule& accepted = sequence.rules[step];
    std::vector<Rule> candidates = enumerate_candidate_rules(problems, lexicon);
    auto best = naive_best_rule(candidates, problems, lexicon);
    if (!best) return "step " + std::to_string(step) + ": no candidates but a rule was accepted";
    if (!(candidates[*best] == accepted.rule))
      return "step " + std::to_string(step) + ": accepted rule is not the oracle argmax (oracle: " +
             canonical_key(candidates[*best]) + ", accepted: " + canonical_key(accepted.rule) + ")";
    RuleScore score = naive_score(accepted.rule, problems, lexicon);
    if (score.net != accepted.net_gain)
      return "step " + std::to_string(step) + ": recorded gain " +
             std::to_string(accepted.net_gain) + " != recounted " + std::to_string(score.net);
    if (score.net < sequence.meta.threshold)
      return "step " + std::to_string(step) + ": accepted gain below threshold";
    int errors_before = naive_errors(problems);
    for (AttachmentProblem& problem : problems) apply_rule(accepted.rule, problem, lexicon);
    int errors_after = naive_errors(problems);
    if (errors_before - errors_after != score.net)
      return "step " + std::to_string(step) + ": error drop " +
             std::to_string(errors_before - errors_after) + " != net gain " +
             std::to_string(score.net);
  }
  std::vector<Rule> candidates = enumerate_candidate_rules(problems, lexicon);
  auto best = naive_best_rule(candidates, problems, lexicon);
  if (best) {
    RuleScore score = naive_score(candidates[*best], problems, lexicon);
    if (score.net >= sequence.meta.threshold)
      return "training stopped while a rule with gain " + std::to_string(score.net) +
             " was still available";
  }
  return {};
}

// Small synthetic training sets for the oracle-equivalence runs.
inline std::vector<CategoryQuota> small_quotas(std::uint64_t seed) {
  SynthRng rng(seed);
  std::vector<CategoryQuota> quotas;
  for (Category category : kAllCategories) {
    if (!rng.chance(0.7)) continue;
    CategoryQuota quota;
    quota.category = category;
    quota.adjacent = rng.below(5);
    quota.nearest_verb = rng.below(4);
    quota.other_left = rng.below(3);
    quota.right_attach = rng.below(2);
    quota.coordination = rng.below(2);
    quota.unattachable = 0;
    quotas.push_back(quota);
  }
  if (quotas.empty()) quotas.push_back(CategoryQuota{Category::Vnpn, 2, 3, 1, 0, 0, 0});
  return quotas;
}

}  // namespace testsupport
