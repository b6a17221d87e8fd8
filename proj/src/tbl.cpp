#include "ppattach/tbl.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace ppattach {

const TemplateInventory& TemplateInventory::v1() {
  static const TemplateInventory inventory{};
  return inventory;
}

namespace {

const SyntaxGroup* site_group(const AttachmentProblem& problem, ProbeSite site) {
  const std::vector<SyntaxGroup>& groups = problem.sentence->groups;
  switch (site) {
    case ProbeSite::IGroup:
      return &groups[problem.igroup_pos];
    case ProbeSite::RightNeighbor:
      return problem.igroup_pos + 1 < groups.size() ? &groups[problem.igroup_pos + 1] : nullptr;
    case ProbeSite::CurrentGuess:
      return &groups[problem.current_guess];
    case ProbeSite::AdjacentLeft:
      return problem.igroup_pos > 0 ? &groups[problem.igroup_pos - 1] : nullptr;
    case ProbeSite::NearestLeftVerb: {
      auto verb = nearest_left_verb(*problem.sentence, problem.igroup_pos);
      return verb ? &groups[*verb] : nullptr;
    }
  }
  return nullptr;
}

// Does this group's head license the problem's I-group word (head or, for
// multi-word I-groups, the underscore-joined full form)?
bool licenses_igroup(const SyntaxGroup& group, const AttachmentProblem& problem,
                     const Lexicon& lexicon) {
  const auto& licensed = lexicon.preps_licensed_by(head_word(group));
  if (licensed.empty()) return false;
  const SyntaxGroup& igroup = problem.sentence->groups[problem.igroup_pos];
  if (licensed.count(head_word(igroup))) return true;
  return igroup.tokens.size() > 1 && licensed.count(full_form(igroup)) > 0;
}

bool group_test_holds(const SyntaxGroup& group, ProbeTest test, const std::string& value,
                      const AttachmentProblem& problem, const Lexicon& lexicon, bool igroup_site) {
  const std::string& head = head_word(group);
  switch (test) {
    case ProbeTest::WordIs:
      if (head == value) return true;
      return igroup_site && group.tokens.size() > 1 && full_form(group) == value;
    case ProbeTest::StemHas:
      return lexicon.stems_of(head).count(value) > 0;
    case ProbeTest::PosIs: {
      const std::string& tag = group.tokens[group.head_index].pos;
      if (tag != kUntaggedPos && tag == value) return true;
      return lexicon.pos_of(head).count(value) > 0;
    }
    case ProbeTest::NounClassHas:
      return lexicon.noun_classes_of(head).count(value) > 0;
    case ProbeTest::VerbClassHas:
      return lexicon.verb_classes_of(head).count(value) > 0;
    case ProbeTest::SubcatHas:
      return lexicon.subcats_of(head).count(value) > 0;
    case ProbeTest::LicensesPrep:
      return licenses_igroup(group, problem, lexicon);
    case ProbeTest::GroupKindIs:
      return to_string(group.kind) == value;
  }
  return false;
}

// Candidate positions strictly beyond the current guess, nearest first.
void scan_positions(const AttachmentProblem& problem, MoveDirection direction,
                    std::vector<std::size_t>& out) {
  out.clear();
  if (direction == MoveDirection::Left) {
    for (std::size_t i = problem.candidates.size(); i-- > 0;)
      if (problem.candidates[i] < problem.current_guess) out.push_back(problem.candidates[i]);
  } else {
    for (std::size_t candidate : problem.candidates)
      if (candidate > problem.current_guess) out.push_back(candidate);
  }
}

bool constraint_ok(const SyntaxGroup& group, const TargetConstraint& constraint,
                   const Lexicon& lexicon) {
  switch (constraint.test) {
    case ProbeTest::GroupKindIs:
      return to_string(group.kind) == constraint.value;
    case ProbeTest::NounClassHas:
      return lexicon.noun_classes_of(head_word(group)).count(constraint.value) > 0;
    case ProbeTest::VerbClassHas:
      return lexicon.verb_classes_of(head_word(group)).count(constraint.value) > 0;
    default:
      return false;
  }
}

std::optional<std::size_t> gold_left_position(const AttachmentProblem& problem) {
  if (!problem.gold) return std::nullopt;
  if (const auto* left = std::get_if<LeftGroup>(&*problem.gold)) return left->position;
  return std::nullopt;
}

// All probes true on the problem's current context, in a fixed order.
template <typename Fn>
void for_each_true_probe(const AttachmentProblem& problem, const Lexicon& lexicon, Fn&& fn) {
  for (ProbeSite site : {ProbeSite::IGroup, ProbeSite::RightNeighbor, ProbeSite::CurrentGuess,
                         ProbeSite::AdjacentLeft, ProbeSite::NearestLeftVerb}) {
    const SyntaxGroup* group = site_group(problem, site);
    if (!group) continue;
    const std::string& head = head_word(*group);
    fn(FeatureProbe{site, ProbeTest::WordIs, head});
    if (site == ProbeSite::IGroup && group->tokens.size() > 1)
      fn(FeatureProbe{site, ProbeTest::WordIs, full_form(*group)});
    const std::string& tag = group->tokens[group->head_index].pos;
    if (tag != kUntaggedPos) fn(FeatureProbe{site, ProbeTest::PosIs, tag});
    for (const std::string& pos : lexicon.pos_of(head))
      if (pos != tag) fn(FeatureProbe{site, ProbeTest::PosIs, pos});
    for (const std::string& stem : lexicon.stems_of(head))
      fn(FeatureProbe{site, ProbeTest::StemHas, stem});
    for (const std::string& cls : lexicon.noun_classes_of(head))
      fn(FeatureProbe{site, ProbeTest::NounClassHas, cls});
    for (const std::string& cls : lexicon.verb_classes_of(head))
      fn(FeatureProbe{site, ProbeTest::VerbClassHas, cls});
    for (const std::string& subcat : lexicon.subcats_of(head))
      fn(FeatureProbe{site, ProbeTest::SubcatHas, subcat});
    if (licenses_igroup(*group, problem, lexicon))
      fn(FeatureProbe{site, ProbeTest::LicensesPrep, ""});
    fn(FeatureProbe{site, ProbeTest::GroupKindIs, std::string(to_string(group->kind))});
  }
}

}  // namespace

bool probe_holds(const FeatureProbe& probe, const AttachmentProblem& problem,
                 const Lexicon& lexicon) {
  const SyntaxGroup* group = site_group(problem, probe.site);
  if (!group) return false;
  return group_test_holds(*group, probe.test, probe.value, problem, lexicon,
                          probe.site == ProbeSite::IGroup);
}

bool condition_holds(const Rule& rule, const AttachmentProblem& problem, const Lexicon& lexicon) {
  for (const FeatureProbe& probe : rule.condition)
    if (!probe_holds(probe, problem, lexicon)) return false;
  return true;
}

std::optional<std::size_t> propose_move(const Rule& rule, const AttachmentProblem& problem,
                                        const Lexicon& lexicon) {
  if (!condition_holds(rule, problem, lexicon)) return std::nullopt;
  std::vector<std::size_t> scan;
  scan_positions(problem, rule.action.direction, scan);
  for (std::size_t position : scan) {
    if (!rule.action.constraint ||
        constraint_ok(problem.sentence->groups[position], *rule.action.constraint, lexicon))
      return position;
  }
  return std::nullopt;
}

std::optional<std::size_t> apply_rule(const Rule& rule, AttachmentProblem& problem,
                                      const Lexicon& lexicon) {
  auto moved = propose_move(rule, problem, lexicon);
  if (moved) problem.current_guess = *moved;
  return moved;
}

namespace {

constexpr std::uint32_t kNoProbe = 0xFFFFFFFFu;

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
  return (std::uint64_t(a) << 32) | b;
}

// none=0, kind=1, nounclass=2, verbclass=3
inline std::uint64_t pack_action(MoveDirection direction, int constraint_kind,
                                 std::uint32_t value_id) {
  return (std::uint64_t(direction == MoveDirection::Right) << 40) |
         (std::uint64_t(constraint_kind) << 32) | value_id;
}

int constraint_kind_of(const std::optional<TargetConstraint>& constraint) {
  if (!constraint) return 0;
  switch (constraint->test) {
    case ProbeTest::GroupKindIs: return 1;
    case ProbeTest::NounClassHas: return 2;
    default: return 3;
  }
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& key) const {
    return std::hash<std::uint64_t>()(key.first * 0x9e3779b97f4a7c15ULL ^ key.second);
  }
};

// Candidate rules with, per rule, the number of incorrect problems whose
// repair generated it. Net gain can never exceed that count, which lets the
// trainer skip rules that cannot reach its threshold. Rules are deduplicated
// on interned integer keys; no per-candidate strings are built here.
struct CandidateSet {
  std::vector<Rule> rules;
  std::vector<int> potential_fixes;
};

CandidateSet enumerate_candidates(std::span<const AttachmentProblem> problems,
                                  const Lexicon& lexicon, const TemplateInventory& templates) {
  CandidateSet out;
  std::unordered_map<std::string, std::uint32_t> probe_ids;
  std::vector<FeatureProbe> probe_by_id;
  std::unordered_map<std::string, std::uint32_t> value_ids;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t, PairHash> rule_ids;

  auto intern_probe = [&](const FeatureProbe& probe) {
    auto [it, inserted] = probe_ids.emplace(to_string(probe), std::uint32_t(probe_ids.size()));
    if (inserted) probe_by_id.push_back(probe);
    return it->second;
  };

  std::vector<std::size_t> scan;
  std::vector<std::pair<std::uint64_t, MoveAction>> actions;  // packed key + action
  std::vector<std::uint32_t> probes;
  std::vector<std::uint32_t> igroup_probes;
  for (const AttachmentProblem& problem : problems) {
    if (is_correct(problem)) continue;
    auto gold = gold_left_position(problem);
    if (!gold || *gold == problem.current_guess) continue;
    if (!std::binary_search(problem.candidates.begin(), problem.candidates.end(), *gold))
      continue;

    MoveDirection direction =
        *gold < problem.current_guess ? MoveDirection::Left : MoveDirection::Right;
    scan_positions(problem, direction, scan);

    // Actions whose nearest-match scan lands exactly on this problem's gold.
    actions.clear();
    auto try_action = [&](std::optional<TargetConstraint> constraint) {
      for (std::size_t position : scan) {
        if (constraint &&
            !constraint_ok(problem.sentence->groups[position], *constraint, lexicon))
          continue;
        if (position == *gold) {
          std::uint32_t value_id = 0;
          if (constraint)
            value_id =
                value_ids.emplace(constraint->value, std::uint32_t(value_ids.size())).first->second +
                1;
          actions.emplace_back(pack_action(direction, constraint_kind_of(constraint), value_id),
                               MoveAction{direction, std::move(constraint)});
        }
        return;  // first match decides, landing or not
      }
    };
    try_action(std::nullopt);
    try_action(TargetConstraint{ProbeTest::GroupKindIs, "vg"});
    try_action(TargetConstraint{ProbeTest::GroupKindIs, "ng"});
    const SyntaxGroup& gold_group = problem.sentence->groups[*gold];
    for (const std::string& cls : lexicon.noun_classes_of(head_word(gold_group)))
      try_action(TargetConstraint{ProbeTest::NounClassHas, cls});
    for (const std::string& cls : lexicon.verb_classes_of(head_word(gold_group)))
      try_action(TargetConstraint{ProbeTest::VerbClassHas, cls});
    if (actions.empty()) continue;

    probes.clear();
    igroup_probes.clear();
    for_each_true_probe(problem, lexicon, [&](const FeatureProbe& probe) {
      std::uint32_t id = intern_probe(probe);
      probes.push_back(id);
      if (probe.site == ProbeSite::IGroup) igroup_probes.push_back(id);
    });

    auto add_condition = [&](std::uint32_t first, std::uint32_t second) {
      std::uint64_t condition_key =
          second == kNoProbe ? pack_pair(first, kNoProbe)
                             : pack_pair(std::min(first, second), std::max(first, second));
      for (const auto& [action_key, action] : actions) {
        auto [it, inserted] = rule_ids.emplace(std::make_pair(condition_key, action_key),
                                               std::uint32_t(out.rules.size()));
        if (inserted) {
          Rule rule;
          rule.condition.push_back(probe_by_id[first]);
          if (second != kNoProbe) rule.condition.push_back(probe_by_id[second]);
          rule.action = action;
          out.rules.push_back(std::move(rule));
          out.potential_fixes.push_back(1);
        } else {
          ++out.potential_fixes[it->second];
        }
      }
    };
    for (std::uint32_t probe : probes) add_condition(probe, kNoProbe);
    if (templates.two_conjunct) {
      for (std::uint32_t igroup_probe : igroup_probes)
        for (std::uint32_t other : probes) {
          bool other_is_igroup =
              std::find(igroup_probes.begin(), igroup_probes.end(), other) != igroup_probes.end();
          if (!other_is_igroup) add_condition(igroup_probe, other);
        }
    }
  }
  return out;
}

}  // namespace

std::vector<Rule> enumerate_candidate_rules(std::span<const AttachmentProblem> problems,
                                            const Lexicon& lexicon,
                                            const TemplateInventory& templates) {
  CandidateSet set = enumerate_candidates(problems, lexicon, templates);
  std::vector<std::string> keys(set.rules.size());
  for (std::size_t i = 0; i < set.rules.size(); ++i) keys[i] = canonical_key(set.rules[i]);
  std::vector<std::size_t> order(set.rules.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<Rule> rules;
  rules.reserve(order.size());
  for (std::size_t index : order) rules.push_back(std::move(set.rules[index]));
  return rules;
}

namespace {

// Transition of one problem under one landing: +1 fix, -1 break, 0 otherwise.
inline void tally_transition(bool before_correct, bool after_correct, RuleScore& score) {
  if (!before_correct && after_correct) {
    ++score.net;
    ++score.fixes;
  } else if (before_correct && !after_correct) {
    --score.net;
  }
}

}  // namespace

RuleScore score_rule(const Rule& rule, std::span<const AttachmentProblem> problems,
                     const Lexicon& lexicon) {
  RuleScore score;
  for (const AttachmentProblem& problem : problems) {
    auto moved = propose_move(rule, problem, lexicon);
    if (!moved) continue;
    auto gold = gold_left_position(problem);
    tally_transition(gold && *gold == problem.current_guess, gold && *gold == *moved, score);
  }
  return score;
}

std::vector<RuleScore> score_rules_serial(std::span<const Rule> rules,
                                          std::span<const AttachmentProblem> problems,
                                          const Lexicon& lexicon) {
  std::vector<RuleScore> scores(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) scores[i] = score_rule(rules[i], problems, lexicon);
  return scores;
}

namespace {

// The candidate rule set with probes, conditions, actions and constraint
// values interned to dense ids, so scoring a problem is hash lookups over
// integers instead of per-rule condition evaluation.
struct InternedRuleSet {
  std::unordered_map<std::string, std::uint32_t> probe_ids;      // canonical probe text
  std::unordered_map<std::string, std::uint32_t> value_ids;      // constraint values
  std::unordered_map<std::uint64_t, std::uint32_t> condition_ids;  // packed probe id pair
  std::unordered_map<std::uint64_t, std::uint32_t> action_ids;     // packed action
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> rules_by_cond_action;

  std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& table,
                       const std::string& key) {
    return table.emplace(key, std::uint32_t(table.size())).first->second;
  }

  explicit InternedRuleSet(std::span<const Rule> rules) {
    for (std::size_t index = 0; index < rules.size(); ++index) {
      const Rule& rule = rules[index];
      if (rule.condition.empty() || rule.condition.size() > 2)
        throw std::invalid_argument("a rule condition holds 1 or 2 probes");
      if (rule.condition.size() == 2 && rule.condition[0].site == rule.condition[1].site &&
          rule.condition[0].test == rule.condition[1].test)
        throw std::invalid_argument(
            "the probes of a 2-conjunct condition must address distinct (site, test) pairs");
      std::uint32_t p0 = intern(probe_ids, to_string(rule.condition[0]));
      std::uint32_t p1 = rule.condition.size() > 1 ? intern(probe_ids, to_string(rule.condition[1]))
                                                   : kNoProbe;
      if (p1 != kNoProbe && p1 < p0) std::swap(p0, p1);
      std::uint64_t cond_key = pack_pair(p0, p1);
      std::uint32_t cond_id =
          condition_ids.emplace(cond_key, std::uint32_t(condition_ids.size())).first->second;

      std::uint32_t value_id = 0;
      if (rule.action.constraint) value_id = intern(value_ids, rule.action.constraint->value) + 1;
      std::uint64_t action_key = pack_action(rule.action.direction,
                                             constraint_kind_of(rule.action.constraint), value_id);
      std::uint32_t action_id =
          action_ids.emplace(action_key, std::uint32_t(action_ids.size())).first->second;

      rules_by_cond_action[pack_pair(cond_id, action_id)].push_back(std::uint32_t(index));
    }
  }
};

struct ProblemTallier {
  ProblemTallier(const InternedRuleSet& rule_set, const Lexicon& lex)
      : interned(rule_set), lexicon(lex) {}

  const InternedRuleSet& interned;
  const Lexicon& lexicon;

  // scratch, reused across problems
  std::vector<std::uint32_t> probe_hits;
  std::vector<std::uint32_t> cond_hits;
  std::vector<std::pair<std::uint32_t, std::size_t>> action_landings;  // (action id, landing)
  std::vector<std::size_t> scan;
  std::vector<std::uint64_t> seen;

  void emit_action(MoveDirection direction, int constraint_kind, std::uint32_t value_id,
                   std::size_t landing) {
    auto it = interned.action_ids.find(pack_action(direction, constraint_kind, value_id));
    if (it != interned.action_ids.end()) action_landings.emplace_back(it->second, landing);
  }

  // Enumerates every interned action that fires on this problem together with
  // its landing, honoring nearest-first-match semantics: a constraint value
  // lands on the nearest scan position where it first becomes true.
  void collect_actions(const AttachmentProblem& problem) {
    action_landings.clear();
    for (MoveDirection direction : {MoveDirection::Left, MoveDirection::Right}) {
      scan_positions(problem, direction, scan);
      if (scan.empty()) continue;
      emit_action(direction, 0, 0, scan[0]);
      seen.clear();
      auto first_occurrence = [&](int kind, std::uint32_t value_id, std::size_t landing) {
        std::uint64_t key = (std::uint64_t(kind) << 32) | value_id;
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
        seen.push_back(key);
        emit_action(direction, kind, value_id, landing);
      };
      for (std::size_t position : scan) {
        const SyntaxGroup& group = problem.sentence->groups[position];
        if (auto it = interned.value_ids.find(std::string(to_string(group.kind)));
            it != interned.value_ids.end())
          first_occurrence(1, it->second + 1, position);
        const std::string& head = head_word(group);
        for (const std::string& cls : lexicon.noun_classes_of(head))
          if (auto it = interned.value_ids.find(cls); it != interned.value_ids.end())
            first_occurrence(2, it->second + 1, position);
        for (const std::string& cls : lexicon.verb_classes_of(head))
          if (auto it = interned.value_ids.find(cls); it != interned.value_ids.end())
            first_occurrence(3, it->second + 1, position);
      }
    }
  }

  void tally(const AttachmentProblem& problem, std::vector<RuleScore>& scores) {
    probe_hits.clear();
    for_each_true_probe(problem, lexicon, [&](const FeatureProbe& probe) {
      auto it = interned.probe_ids.find(to_string(probe));
      if (it != interned.probe_ids.end()) probe_hits.push_back(it->second);
    });
    std::sort(probe_hits.begin(), probe_hits.end());
    probe_hits.erase(std::unique(probe_hits.begin(), probe_hits.end()), probe_hits.end());

    cond_hits.clear();
    auto add_cond = [&](std::uint32_t a, std::uint32_t b) {
      auto it = interned.condition_ids.find(pack_pair(a, b));
      if (it != interned.condition_ids.end()) cond_hits.push_back(it->second);
    };
    for (std::size_t i = 0; i < probe_hits.size(); ++i) {
      add_cond(probe_hits[i], kNoProbe);
      for (std::size_t j = i + 1; j < probe_hits.size(); ++j)
        add_cond(probe_hits[i], probe_hits[j]);
    }
    if (cond_hits.empty()) return;

    collect_actions(problem);
    if (action_landings.empty()) return;

    auto gold = gold_left_position(problem);
    bool before = gold && *gold == problem.current_guess;
    for (std::uint32_t cond_id : cond_hits) {
      for (const auto& [action_id, landing] : action_landings) {
        auto it = interned.rules_by_cond_action.find(pack_pair(cond_id, action_id));
        if (it == interned.rules_by_cond_action.end()) continue;
        bool after = gold && *gold == landing;
        for (std::uint32_t rule_index : it->second)
          tally_transition(before, after, scores[rule_index]);
      }
    }
  }
};

std::vector<RuleScore> score_rules_tallied(std::span<const Rule> rules,
                                           std::span<const AttachmentProblem> problems,
                                           const Lexicon& lexicon,
                                           const InternedRuleSet& interned) {
  std::vector<RuleScore> scores(rules.size());
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<RuleScore> local(rules.size());
    ProblemTallier tallier{interned, lexicon};
#pragma omp for schedule(static) nowait
    for (long i = 0; i < long(problems.size()); ++i) tallier.tally(problems[i], local);
#pragma omp critical
    {
      for (std::size_t i = 0; i < scores.size(); ++i) {
        scores[i].net += local[i].net;
        scores[i].fixes += local[i].fixes;
      }
    }
  }
#else
  ProblemTallier tallier{interned, lexicon};
  for (const AttachmentProblem& problem : problems) tallier.tally(problem, scores);
#endif
  return scores;
}

}  // namespace

std::vector<RuleScore> score_rules(std::span<const Rule> rules,
                                   std::span<const AttachmentProblem> problems,
                                   const Lexicon& lexicon) {
  if (rules.empty() || problems.empty()) return std::vector<RuleScore>(rules.size());
  const InternedRuleSet interned(rules);
  return score_rules_tallied(rules, problems, lexicon, interned);
}

RuleSequence train(std::vector<AttachmentProblem>& problems, const Lexicon& lexicon,
                   const TrainOptions& options) {
  if (problems.empty()) throw std::invalid_argument("train: empty problem list");
  if (options.threshold < 1) throw std::invalid_argument("train: threshold must be >= 1");
  for (const AttachmentProblem& problem : problems) {
    if (problem.mode != options.mode)
      throw std::invalid_argument("train: problem mode differs from requested mode");
    if (!problem.gold) throw std::invalid_argument("train: problems must carry gold annotations");
  }

  RuleSequence sequence;
  sequence.meta = RuleSequenceMeta{options.mode, options.threshold, options.corpus_digest};
  while (true) {
    CandidateSet candidates = enumerate_candidates(problems, lexicon, options.templates);
    // A rule's net gain is bounded by the number of repairs that generated
    // it, so rules below the threshold can be dropped before scoring.
    std::vector<Rule> viable;
    viable.reserve(candidates.rules.size());
    for (std::size_t i = 0; i < candidates.rules.size(); ++i)
      if (candidates.potential_fixes[i] >= options.threshold)
        viable.push_back(std::move(candidates.rules[i]));
    if (viable.empty()) break;

    std::vector<RuleScore> scores = options.execution == Execution::Serial
                                        ? score_rules_serial(viable, problems, lexicon)
                                        : score_rules(viable, problems, lexicon);
    int best_net = scores[0].net;
    int best_fixes = scores[0].fixes;
    for (const RuleScore& score : scores) {
      if (score.net > best_net || (score.net == best_net && score.fixes > best_fixes)) {
        best_net = score.net;
        best_fixes = score.fixes;
      }
    }
    if (best_net < options.threshold) break;
    // Ties break on the smallest canonical key; keys are built only for the
    // tied leaders.
    std::size_t best = scores.size();
    std::string best_key;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i].net != best_net || scores[i].fixes != best_fixes) continue;
      std::string key = canonical_key(viable[i]);
      if (best == scores.size() || key < best_key) {
        best = i;
        best_key = std::move(key);
      }
    }
    sequence.rules.push_back(TrainedRule{viable[best], best_net});
    for (AttachmentProblem& problem : problems) apply_rule(viable[best], problem, lexicon);
  }
  return sequence;
}

RuleSequence train(std::vector<AttachmentProblem>& problems, const Lexicon& lexicon, Mode mode,
                   int threshold) {
  TrainOptions options;
  options.mode = mode;
  options.threshold = threshold;
  return train(problems, lexicon, options);
}

void apply_sequence(const RuleSequence& sequence, std::span<AttachmentProblem> problems,
                    const Lexicon& lexicon) {
  for (const AttachmentProblem& problem : problems) {
    if (problem.mode != sequence.meta.mode)
      throw std::invalid_argument(
          "apply_sequence: problems were extracted in a different mode than the rules were "
          "trained in");
  }
  for (const TrainedRule& trained : sequence.rules)
    for (AttachmentProblem& problem : problems) apply_rule(trained.rule, problem, lexicon);
}

}  // namespace ppattach
