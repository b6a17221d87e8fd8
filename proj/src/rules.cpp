#include "ppattach/rules.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "ppattach/errors.hpp"

namespace ppattach {

std::string_view to_string(ProbeSite site) {
  switch (site) {
    case ProbeSite::IGroup: return "igroup";
    case ProbeSite::RightNeighbor: return "right";
    case ProbeSite::CurrentGuess: return "guess";
    case ProbeSite::AdjacentLeft: return "left";
    case ProbeSite::NearestLeftVerb: return "left-verb";
  }
  return "?";
}

std::string_view to_string(ProbeTest test) {
  switch (test) {
    case ProbeTest::WordIs: return "word-is";
    case ProbeTest::StemHas: return "stem-has";
    case ProbeTest::PosIs: return "pos-is";
    case ProbeTest::NounClassHas: return "nounclass-has";
    case ProbeTest::VerbClassHas: return "verbclass-has";
    case ProbeTest::SubcatHas: return "subcat-has";
    case ProbeTest::LicensesPrep: return "licenses-prep";
    case ProbeTest::GroupKindIs: return "kind-is";
  }
  return "?";
}

std::optional<ProbeSite> probe_site_from(std::string_view name) {
  for (ProbeSite site : {ProbeSite::IGroup, ProbeSite::RightNeighbor, ProbeSite::CurrentGuess,
                         ProbeSite::AdjacentLeft, ProbeSite::NearestLeftVerb})
    if (name == to_string(site)) return site;
  return std::nullopt;
}

std::optional<ProbeTest> probe_test_from(std::string_view name) {
  for (ProbeTest test : {ProbeTest::WordIs, ProbeTest::StemHas, ProbeTest::PosIs,
                         ProbeTest::NounClassHas, ProbeTest::VerbClassHas, ProbeTest::SubcatHas,
                         ProbeTest::LicensesPrep, ProbeTest::GroupKindIs})
    if (name == to_string(test)) return test;
  return std::nullopt;
}

std::string_view to_string(MoveDirection direction) {
  return direction == MoveDirection::Left ? "left" : "right";
}

namespace {

bool needs_quoting(std::string_view value) {
  if (value.empty()) return true;
  for (char c : value) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= ' ' || c == '(' || c == ')' || c == '"' || c == '\\') return true;
  }
  return false;
}

void append_atom(std::string& out, std::string_view value) {
  if (!needs_quoting(value)) {
    out += value;
    return;
  }
  out += '"';
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string to_string(const FeatureProbe& probe) {
  std::string out = "(";
  out += to_string(probe.site);
  out += ' ';
  out += to_string(probe.test);
  if (probe.test != ProbeTest::LicensesPrep) {
    out += ' ';
    append_atom(out, probe.value);
  }
  out += ')';
  return out;
}

std::string condition_string(const Rule& rule) {
  if (rule.condition.size() == 1) return to_string(rule.condition[0]);
  std::string out = "(and";
  for (const FeatureProbe& probe : rule.condition) {
    out += ' ';
    out += to_string(probe);
  }
  out += ')';
  return out;
}

std::string action_string(const MoveAction& action) {
  std::string out = "(move ";
  out += to_string(action.direction);
  if (action.constraint) {
    out += " (";
    out += to_string(action.constraint->test);
    out += ' ';
    append_atom(out, action.constraint->value);
    out += ')';
  }
  out += ')';
  return out;
}

std::string canonical_key(const Rule& rule) {
  return condition_string(rule) + '\t' + action_string(rule.action);
}

namespace {

// Minimal s-expression reader: lists of atoms, quoted atoms with \" and \\.
struct SexpNode {
  bool is_list = false;
  std::string atom;
  std::vector<SexpNode> items;
};

struct SexpReader {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw FormatError(message, {}, 0, pos + 1);
  }
  bool done() const { return pos >= text.size(); }
  void skip_spaces() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  SexpNode read() {
    skip_spaces();
    if (done()) fail("unexpected end of expression");
    if (text[pos] == '(') {
      ++pos;
      SexpNode node;
      node.is_list = true;
      while (true) {
        skip_spaces();
        if (done()) fail("missing ')'");
        if (text[pos] == ')') {
          ++pos;
          return node;
        }
        node.items.push_back(read());
      }
    }
    if (text[pos] == ')') fail("unexpected ')'");
    SexpNode node;
    if (text[pos] == '"') {
      ++pos;
      while (true) {
        if (done()) fail("unterminated quoted atom");
        char c = text[pos++];
        if (c == '"') break;
        if (c == '\\') {
          if (done()) fail("dangling escape in quoted atom");
          c = text[pos++];
        }
        node.atom += c;
      }
      return node;
    }
    while (!done() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '(' &&
           text[pos] != ')')
      node.atom += text[pos++];
    return node;
  }
};

[[noreturn]] void bad_rule(const std::string& message) { throw FormatError(message); }

const std::string& atom_of(const SexpNode& node, const char* what) {
  if (node.is_list) bad_rule(std::string("expected an atom for ") + what);
  return node.atom;
}

FeatureProbe parse_probe(const SexpNode& node) {
  if (!node.is_list || node.items.size() < 2 || node.items.size() > 3)
    bad_rule("a probe is (site test value?)");
  FeatureProbe probe;
  auto site = probe_site_from(atom_of(node.items[0], "probe site"));
  if (!site) bad_rule("unknown probe site '" + node.items[0].atom + "'");
  probe.site = *site;
  auto test = probe_test_from(atom_of(node.items[1], "probe test"));
  if (!test) bad_rule("unknown probe test '" + node.items[1].atom + "'");
  probe.test = *test;
  if (probe.test == ProbeTest::LicensesPrep) {
    if (node.items.size() != 2) bad_rule("licenses-prep takes no value");
  } else {
    if (node.items.size() != 3) bad_rule("probe test needs a value");
    probe.value = atom_of(node.items[2], "probe value");
    if (probe.test == ProbeTest::GroupKindIs && !group_kind_from(probe.value))
      bad_rule("unknown group kind '" + probe.value + "'");
  }
  return probe;
}

Rule parse_rule_parts(std::string_view cond_text, std::string_view action_text) {
  Rule rule;
  SexpReader cond_reader{cond_text};
  SexpNode cond = cond_reader.read();
  cond_reader.skip_spaces();
  if (!cond_reader.done()) bad_rule("trailing text after condition");
  if (cond.is_list && !cond.items.empty() && !cond.items[0].is_list &&
      cond.items[0].atom == "and") {
    if (cond.items.size() != 3) bad_rule("(and ...) takes exactly 2 probes");
    rule.condition.push_back(parse_probe(cond.items[1]));
    rule.condition.push_back(parse_probe(cond.items[2]));
    if (rule.condition[0].site == rule.condition[1].site &&
        rule.condition[0].test == rule.condition[1].test)
      bad_rule("the probes of a 2-conjunct condition must address distinct (site, test) pairs");
  } else {
    rule.condition.push_back(parse_probe(cond));
  }

  SexpReader action_reader{action_text};
  SexpNode action = action_reader.read();
  action_reader.skip_spaces();
  if (!action_reader.done()) bad_rule("trailing text after action");
  if (!action.is_list || action.items.size() < 2 || action.items.size() > 3 ||
      action.items[0].is_list || action.items[0].atom != "move")
    bad_rule("an action is (move DIRECTION constraint?)");
  const std::string& direction = atom_of(action.items[1], "move direction");
  if (direction == "left")
    rule.action.direction = MoveDirection::Left;
  else if (direction == "right")
    rule.action.direction = MoveDirection::Right;
  else
    bad_rule("unknown move direction '" + direction + "'");
  if (action.items.size() == 3) {
    const SexpNode& constraint = action.items[2];
    if (!constraint.is_list || constraint.items.size() != 2)
      bad_rule("a target constraint is (test value)");
    auto test = probe_test_from(atom_of(constraint.items[0], "constraint test"));
    if (!test || (*test != ProbeTest::GroupKindIs && *test != ProbeTest::NounClassHas &&
                  *test != ProbeTest::VerbClassHas))
      bad_rule("target constraint must be kind-is, nounclass-has or verbclass-has");
    TargetConstraint target{*test, atom_of(constraint.items[1], "constraint value")};
    if (target.test == ProbeTest::GroupKindIs && !group_kind_from(target.value))
      bad_rule("unknown group kind '" + target.value + "'");
    rule.action.constraint = std::move(target);
  }
  return rule;
}

}  // namespace

std::string serialize_rules(const RuleSequence& sequence) {
  std::string out;
  out += "#! ppattach-rules v1\n";
  out += "#! mode ";
  out += to_string(sequence.meta.mode);
  out += '\n';
  out += "#! threshold " + std::to_string(sequence.meta.threshold) + '\n';
  out += "#! corpus-digest ";
  out += sequence.meta.corpus_digest.empty() ? "-" : sequence.meta.corpus_digest;
  out += '\n';
  for (const TrainedRule& trained : sequence.rules) {
    out += std::to_string(trained.net_gain);
    out += '\t';
    out += canonical_key(trained.rule);
    out += '\n';
  }
  return out;
}

RuleSequence parse_rules(std::istream& in, std::string_view source) {
  RuleSequence sequence;
  bool saw_mode = false;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      if (line.rfind("#!", 0) == 0) {
        std::string_view rest = std::string_view(line).substr(2);
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        std::size_t space = rest.find(' ');
        std::string_view key = rest.substr(0, space);
        std::string_view value = space == std::string_view::npos ? "" : rest.substr(space + 1);
        if (key == "ppattach-rules") {
          if (value != "v1") bad_rule("unsupported rules format version '" + std::string(value) + "'");
        } else if (key == "mode") {
          auto mode = mode_from(value);
          if (!mode) bad_rule("unknown mode '" + std::string(value) + "'");
          sequence.meta.mode = *mode;
          saw_mode = true;
        } else if (key == "threshold") {
          int threshold = 0;
          auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), threshold);
          if (ec != std::errc() || ptr != value.data() + value.size() || threshold < 1)
            bad_rule("bad threshold '" + std::string(value) + "'");
          sequence.meta.threshold = threshold;
        } else if (key == "corpus-digest") {
          sequence.meta.corpus_digest = std::string(value);
        } else {
          bad_rule("unknown metadata key '" + std::string(key) + "'");
        }
        continue;
      }
      bool blank_or_comment = true;
      for (char c : line)
        if (c != ' ' && c != '\t') {
          blank_or_comment = (c == '#');
          break;
        }
      if (blank_or_comment) continue;

      std::size_t tab1 = line.find('\t');
      std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
      if (tab2 == std::string::npos) bad_rule("a rule line is GAIN<TAB>CONDITION<TAB>ACTION");
      std::string_view gain_text = std::string_view(line).substr(0, tab1);
      int gain = 0;
      auto [ptr, ec] = std::from_chars(gain_text.data(), gain_text.data() + gain_text.size(), gain);
      if (ec != std::errc() || ptr != gain_text.data() + gain_text.size())
        bad_rule("bad gain '" + std::string(gain_text) + "'");
      Rule rule = parse_rule_parts(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1),
                                   std::string_view(line).substr(tab2 + 1));
      sequence.rules.push_back(TrainedRule{std::move(rule), gain});
    } catch (const FormatError& error) {
      throw error.at(source, line_number);
    }
  }
  if (!saw_mode) throw FormatError("missing '#! mode' header", std::string(source));
  return sequence;
}

RuleSequence parse_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file", path);
  return parse_rules(in, path);
}

void write_rules_file(const RuleSequence& sequence, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write file", path);
  out << serialize_rules(sequence);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

}  // namespace ppattach
