#include <doctest.h>

#include <sstream>

#include "ppattach/corpus.hpp"
#include "support.hpp"

using namespace ppattach;

TEST_CASE("parse_sentence reads groups, order and gold annotations") {
  Sentence sentence = parse_sentence("[ng I] [vg had sent] [ng a cup] [ig to {gold=1}] [ng her]");
  REQUIRE(sentence.groups.size() == 5);
  CHECK(sentence.groups[0].kind == GroupKind::NounGroup);
  CHECK(sentence.groups[1].kind == GroupKind::VerbGroup);
  CHECK(sentence.groups[3].kind == GroupKind::IGroup);
  CHECK(sentence.groups[1].tokens.size() == 2);
  REQUIRE(sentence.gold_attachments.count(3) == 1);
  CHECK(sentence.gold_attachments.at(3) == GoldTarget{LeftGroup{1}});
}

TEST_CASE("parse_sentence reads coordination gold") {
  Sentence sentence = parse_sentence("[ng cats] [ng dogs] [ig with {gold=coord:0,1}] [ng tags]");
  REQUIRE(sentence.gold_attachments.count(2) == 1);
  CHECK(sentence.gold_attachments.at(2) ==
        GoldTarget{CoordinationOfGroups{{0, 1}}});
}

TEST_CASE("parse_sentence accepts a sentence with no I-group") {
  Sentence sentence = parse_sentence("[ng I]");
  CHECK(sentence.groups.size() == 1);
  CHECK(sentence.gold_attachments.empty());
}

TEST_CASE("parse_sentence rejects malformed input with a column") {
  CHECK_THROWS_AS(parse_sentence("[ng I"), FormatError);
  CHECK_THROWS_AS(parse_sentence("[xx word]"), FormatError);
  CHECK_THROWS_AS(parse_sentence("no brackets"), FormatError);
  CHECK_THROWS_AS(parse_sentence("[ng a] [ng b] [ig of {gold=9}] [ng c]"), FormatError);
  // gold must be strictly left
  CHECK_THROWS_AS(parse_sentence("[ng a] [ng b] [ig of {gold=2}] [ng c]"), FormatError);
  CHECK_THROWS_AS(parse_sentence("[ng a] [ng b] [ig of {gold=3}] [ng c]"), FormatError);
  // gold only on I-groups
  CHECK_THROWS_AS(parse_sentence("[ng a {gold=0}] [ig of] [ng c]"), FormatError);
  // coordination needs two distinct positions
  CHECK_THROWS_AS(parse_sentence("[ng a] [ng b] [ig of {gold=coord:1,1}] [ng c]"), FormatError);

  try {
    parse_sentence("[ng ok] [zz bad]");
    FAIL("expected a FormatError");
  } catch (const FormatError& error) {
    CHECK(error.column() > 0);
  }
}

TEST_CASE("escaped brackets and braces round-trip inside tokens") {
  Sentence sentence = parse_sentence("[ng \\[x\\] \\{y\\}] [ng a] [ig of {gold=0}] [ng b]");
  CHECK(sentence.groups[0].tokens[0].surface == "[x]");
  CHECK(sentence.groups[0].tokens[1].surface == "{y}");
  CHECK(parse_sentence(serialize_sentence(sentence)) == sentence);
}

TEST_CASE("sentence round-trip holds on random sentences") {
  testsupport::Fuzzer fuzzer(7);
  for (int i = 0; i < 500; ++i) {
    Sentence sentence = fuzzer.sentence();
    std::string line = serialize_sentence(sentence);
    CHECK(parse_sentence(line) == sentence);
  }
}

TEST_CASE("corpus reader skips comments and blank lines and reports line numbers") {
  std::istringstream in("# header\n\n[ng a] [ig of] [ng b]\n[ng ok]\n");
  std::vector<Sentence> corpus = read_group_corpus(in, "test.grp");
  CHECK(corpus.size() == 2);

  std::istringstream bad("# fine\n[ng ok]\n[bad\n");
  try {
    read_group_corpus(bad, "test.grp");
    FAIL("expected a FormatError");
  } catch (const FormatError& error) {
    CHECK(error.line() == 3);
    CHECK(error.source() == "test.grp");
    CHECK(std::string(error.what()).find("test.grp:3") != std::string::npos);
  }
}

TEST_CASE("head word follows the last-token convention") {
  Sentence sentence = parse_sentence("[ng a cup] [vg had sent] [ig according to] [rg so]");
  CHECK(head_word(sentence.groups[0]) == "cup");
  CHECK(head_word(sentence.groups[1]) == "sent");
  CHECK(head_word(sentence.groups[2]) == "to");
  CHECK(head_word(sentence.groups[3]) == "so");
  CHECK(full_form(sentence.groups[2]) == "according_to");
}

TEST_CASE("verb groups head on the last verb-tagged token when tags exist") {
  SyntaxGroup tagged = SyntaxGroup::make(
      GroupKind::VerbGroup, {Token{"will", "MD"}, Token{"go", "VB"}, Token{"up", "RP"}});
  CHECK(head_word(tagged) == "go");
  SyntaxGroup untagged = SyntaxGroup::make(
      GroupKind::VerbGroup, {Token{"had", std::string(kUntaggedPos)},
                             Token{"sent", std::string(kUntaggedPos)}});
  CHECK(head_word(untagged) == "sent");
}

TEST_CASE("parse_quadruple maps fields and labels") {
  Quadruple sent = parse_quadruple("sent cup to her V");
  CHECK(sent == Quadruple{"sent", "cup", "to", "her", AttachLabel::Verb});
  Quadruple saw = parse_quadruple("saw man with telescope N");
  CHECK(saw == Quadruple{"saw", "man", "with", "telescope", AttachLabel::Noun});
  CHECK_THROWS_AS(parse_quadruple("a b c"), FormatError);
  CHECK_THROWS_AS(parse_quadruple("a b c d X"), FormatError);
}

TEST_CASE("quadruple_to_sentence emits vg ng ig ng with the labeled gold") {
  Sentence verb_case = quadruple_to_sentence(Quadruple{"sent", "cup", "to", "her", AttachLabel::Verb});
  REQUIRE(verb_case.groups.size() == 4);
  CHECK(verb_case.groups[0].kind == GroupKind::VerbGroup);
  CHECK(verb_case.groups[2].kind == GroupKind::IGroup);
  CHECK(verb_case.gold_attachments.at(2) == GoldTarget{LeftGroup{0}});
  for (const SyntaxGroup& group : verb_case.groups) CHECK(group.head_index == 0);

  Sentence noun_case =
      quadruple_to_sentence(Quadruple{"saw", "man", "with", "telescope", AttachLabel::Noun});
  CHECK(noun_case.gold_attachments.at(2) == GoldTarget{LeftGroup{1}});

  // extraction of the emitted sentence yields exactly one vnpn problem
  Extraction extraction =
      extract_problems(noun_case, testsupport::bundled_lexicon(), Mode::All);
  REQUIRE(extraction.problems.size() == 1);
  CHECK(extraction.problems[0].category == Category::Vnpn);
  CHECK(extraction.tally.n_not_handled() == 0);
}

TEST_CASE("coarse_pos_tag splits numbers from everything else") {
  CHECK(coarse_pos_tag("1,234.5") == kNumberPos);
  CHECK(coarse_pos_tag("telescope") == kNonNumberPos);
  CHECK(coarse_pos_tag("3a") == kNonNumberPos);
  CHECK(coarse_pos_tag(",.") == kNonNumberPos);  // no digit
  CHECK(coarse_pos_tag("7") == kNumberPos);
  CHECK_THROWS_AS(coarse_pos_tag(""), std::invalid_argument);

  // deterministic two-way partition over arbitrary strings
  testsupport::SynthRng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::string word;
    std::size_t length = 1 + rng.below(6);
    for (std::size_t c = 0; c < length; ++c)
      word += "ab,.019"[rng.below(7)];
    auto tag = coarse_pos_tag(word);
    CHECK((tag == kNumberPos || tag == kNonNumberPos));
    CHECK(coarse_pos_tag(word) == tag);
  }
}

TEST_CASE("gold spec strings mirror the corpus syntax") {
  CHECK(gold_spec_string(LeftGroup{4}) == "4");
  CHECK(gold_spec_string(RightAttachment{}) == "right");
  CHECK(gold_spec_string(CoordinationOfGroups{{0, 2}}) == "coord:0,2");
  CHECK(gold_spec_string(Unattachable{"mistagged"}) == "none:mistagged");
}
