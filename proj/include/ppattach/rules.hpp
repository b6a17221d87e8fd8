#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppattach/corpus.hpp"
#include "ppattach/problems.hpp"

namespace ppattach {

/// Where a condition probe looks, relative to the problem.
enum class ProbeSite { IGroup, RightNeighbor, CurrentGuess, AdjacentLeft, NearestLeftVerb };

/// What the probe tests about the group at its site. All word-level tests are
/// over the group's head word (plus, at the I-group site, the underscore-joined
/// full form of multi-word I-groups). LicensesPrep takes no value: it asks
/// whether the site's head word licenses the problem's I-group word.
enum class ProbeTest {
  WordIs,
  StemHas,
  PosIs,
  NounClassHas,
  VerbClassHas,
  SubcatHas,
  LicensesPrep,
  GroupKindIs,
};

std::string_view to_string(ProbeSite site);
std::string_view to_string(ProbeTest test);
std::optional<ProbeSite> probe_site_from(std::string_view name);
std::optional<ProbeTest> probe_test_from(std::string_view name);

struct FeatureProbe {
  ProbeSite site{ProbeSite::IGroup};
  ProbeTest test{ProbeTest::WordIs};
  std::string value;  // empty for LicensesPrep

  bool operator==(const FeatureProbe&) const = default;
};

enum class MoveDirection { Left, Right };

std::string_view to_string(MoveDirection direction);

/// Constraint on the landing group of a move; test is one of GroupKindIs,
/// NounClassHas, VerbClassHas.
struct TargetConstraint {
  ProbeTest test{ProbeTest::GroupKindIs};
  std::string value;

  bool operator==(const TargetConstraint&) const = default;
};

struct MoveAction {
  MoveDirection direction{MoveDirection::Left};
  std::optional<TargetConstraint> constraint;

  bool operator==(const MoveAction&) const = default;
};

/// Trigger plus directed move. Conditions hold 1 or 2 probes; the probes of a
/// 2-conjunct condition address distinct (site, test) pairs.
struct Rule {
  std::vector<FeatureProbe> condition;
  MoveAction action;

  bool operator==(const Rule&) const = default;
};

struct TrainedRule {
  Rule rule;
  int net_gain = 0;

  bool operator==(const TrainedRule&) const = default;
};

struct RuleSequenceMeta {
  Mode mode{Mode::All};
  int threshold = 1;
  std::string corpus_digest = "-";

  bool operator==(const RuleSequenceMeta&) const = default;
};

/// The learned model: rules applied strictly in order.
struct RuleSequence {
  RuleSequenceMeta meta;
  std::vector<TrainedRule> rules;

  bool operator==(const RuleSequence&) const = default;
};

/// Canonical s-expression encodings, e.g.
///   (igroup word-is to)
///   (and (igroup word-is to) (guess nounclass-has artifact))
///   (move left (kind-is vg))
/// Values that contain whitespace, parens, quotes or backslashes are quoted.
std::string to_string(const FeatureProbe& probe);
std::string condition_string(const Rule& rule);
std::string action_string(const MoveAction& action);

/// `condition<TAB>action`; total order for deterministic tie-breaking.
std::string canonical_key(const Rule& rule);

/// Rule file: `#!` metadata header lines, then one `GAIN<TAB>COND<TAB>ACTION`
/// line per rule. Plain `#` comments and blank lines are ignored.
std::string serialize_rules(const RuleSequence& sequence);
RuleSequence parse_rules(std::istream& in, std::string_view source = "<rules>");
RuleSequence parse_rules_file(const std::string& path);
void write_rules_file(const RuleSequence& sequence, const std::string& path);

/// FNV-1a 64-bit digest as 16 lowercase hex chars; used to stamp rule files
/// with the training corpus they came from.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace ppattach
