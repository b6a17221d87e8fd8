#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppattach/errors.hpp"

namespace ppattach {

/// POS value of tokens that have not been tagged yet.
inline constexpr std::string_view kUntaggedPos = "UNTAGGED";

/// Coarse tag set used for head-word-only corpora: words made of digits,
/// commas and periods (with at least one digit) are NUMBER, all else NONNUMBER.
inline constexpr std::string_view kNumberPos = "NUMBER";
inline constexpr std::string_view kNonNumberPos = "NONNUMBER";

struct Token {
  std::string surface;
  std::string pos{kUntaggedPos};

  bool operator==(const Token&) const = default;
};

enum class GroupKind { NounGroup, VerbGroup, AdjectiveGroup, AdverbGroup, IGroup };

inline constexpr GroupKind kAllGroupKinds[] = {
    GroupKind::NounGroup, GroupKind::VerbGroup, GroupKind::AdjectiveGroup,
    GroupKind::AdverbGroup, GroupKind::IGroup};

/// Two-letter tag used in the sentence format: ng, vg, jg, rg, ig.
std::string_view to_string(GroupKind kind);
std::optional<GroupKind> group_kind_from(std::string_view tag);

/// A typed, contiguous token span. head_index always points at a token.
struct SyntaxGroup {
  GroupKind kind{GroupKind::NounGroup};
  std::vector<Token> tokens;
  std::size_t head_index = 0;

  /// Builds a group with the head chosen by the default head rule:
  /// last token, except verb groups take their last token tagged as a verb
  /// (tag starting with 'V' or 'v'), falling back to the last token.
  static SyntaxGroup make(GroupKind kind, std::vector<Token> tokens);

  bool operator==(const SyntaxGroup&) const = default;
};

const std::string& head_word(const SyntaxGroup& group);

/// Surface tokens joined with `joiner`; the feature form of multi-word
/// I-groups ("according to" -> "according_to").
std::string full_form(const SyntaxGroup& group, char joiner = '_');

// Gold attachment target of an I-group.
struct LeftGroup {
  std::size_t position;
  bool operator==(const LeftGroup&) const = default;
};
struct RightAttachment {
  bool operator==(const RightAttachment&) const = default;
};
struct CoordinationOfGroups {
  std::vector<std::size_t> positions;  // sorted, unique, size >= 2
  bool operator==(const CoordinationOfGroups&) const = default;
};
struct Unattachable {
  std::string reason;
  bool operator==(const Unattachable&) const = default;
};
using GoldTarget = std::variant<LeftGroup, RightAttachment, CoordinationOfGroups, Unattachable>;

struct Sentence {
  std::vector<SyntaxGroup> groups;
  /// Keyed by group position; every key indexes an IGroup.
  std::map<std::size_t, GoldTarget> gold_attachments;

  bool operator==(const Sentence&) const = default;
};

/// Parses one line of the group-annotated format:
///   [ng I] [vg had sent] [ng a cup] [ig to {gold=1}] [ng her]
/// Gold specs: a group index, `right`, `coord:i,j[,k...]`, or `none:REASON`.
/// Literal [ ] { } \ inside tokens are backslash-escaped.
/// Throws FormatError (column set) on malformed input.
Sentence parse_sentence(std::string_view line);

/// Canonical single-line form; parse_sentence(serialize_sentence(s)) == s.
std::string serialize_sentence(const Sentence& sentence);

/// The textual gold spec as it appears inside {gold=...}: an index, `right`,
/// `coord:i,j`, or `none:REASON`.
std::string gold_spec_string(const GoldTarget& gold);

/// Reads a whole corpus: one sentence per line, `#` comments and blank lines
/// ignored. FormatErrors are rethrown with the source name and line number.
std::vector<Sentence> read_group_corpus(std::istream& in, std::string_view source = "<corpus>");
std::vector<Sentence> read_group_corpus_file(const std::string& path);

enum class AttachLabel { Verb, Noun };

/// Head-word quadruple record: `v n1 p n2 label` with label V or N.
struct Quadruple {
  std::string v;
  std::string n1;
  std::string p;
  std::string n2;
  AttachLabel label{AttachLabel::Verb};

  bool operator==(const Quadruple&) const = default;
};

Quadruple parse_quadruple(std::string_view line);
std::vector<Quadruple> read_quadruple_corpus(std::istream& in,
                                             std::string_view source = "<corpus>");
std::vector<Quadruple> read_quadruple_corpus_file(const std::string& path);

/// [vg v][ng n1][ig p][ng n2]; gold LeftGroup(0) for Verb, LeftGroup(1) for Noun.
Sentence quadruple_to_sentence(const Quadruple& quadruple);

/// NUMBER iff every character is a digit, comma or period and at least one is
/// a digit; NONNUMBER otherwise. Throws std::invalid_argument on empty input.
std::string_view coarse_pos_tag(std::string_view word);

/// Tags every token in place with coarse_pos_tag of its surface.
void coarse_tag_tokens(Sentence& sentence);

}  // namespace ppattach
