#include "ppattach/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ppattach {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

bool is_verbal_tag(std::string_view pos) {
  return !pos.empty() && (pos[0] == 'V' || pos[0] == 'v') && pos != kUntaggedPos;
}

}  // namespace

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::NounGroup: return "ng";
    case GroupKind::VerbGroup: return "vg";
    case GroupKind::AdjectiveGroup: return "jg";
    case GroupKind::AdverbGroup: return "rg";
    case GroupKind::IGroup: return "ig";
  }
  return "?";
}

std::optional<GroupKind> group_kind_from(std::string_view tag) {
  if (tag == "ng") return GroupKind::NounGroup;
  if (tag == "vg") return GroupKind::VerbGroup;
  if (tag == "jg") return GroupKind::AdjectiveGroup;
  if (tag == "rg") return GroupKind::AdverbGroup;
  if (tag == "ig") return GroupKind::IGroup;
  return std::nullopt;
}

SyntaxGroup SyntaxGroup::make(GroupKind kind, std::vector<Token> tokens) {
  if (tokens.empty()) throw std::invalid_argument("syntax group needs at least one token");
  SyntaxGroup group{kind, std::move(tokens), 0};
  group.head_index = group.tokens.size() - 1;
  if (kind == GroupKind::VerbGroup) {
    for (std::size_t i = group.tokens.size(); i-- > 0;) {
      if (is_verbal_tag(group.tokens[i].pos)) {
        group.head_index = i;
        break;
      }
    }
  }
  return group;
}

const std::string& head_word(const SyntaxGroup& group) {
  return group.tokens.at(group.head_index).surface;
}

std::string full_form(const SyntaxGroup& group, char joiner) {
  std::string out;
  for (const Token& token : group.tokens) {
    if (!out.empty()) out += joiner;
    out += token.surface;
  }
  return out;
}

namespace {

[[noreturn]] void fail(std::string message, std::size_t column) {
  throw FormatError(std::move(message), {}, 0, column);
}

// Cursor over one line; columns are 1-based for diagnostics.
struct LineCursor {
  std::string_view line;
  std::size_t pos = 0;

  bool done() const { return pos >= line.size(); }
  char peek() const { return line[pos]; }
  std::size_t column() const { return pos + 1; }
  void skip_spaces() {
    while (!done() && is_space(peek())) ++pos;
  }
};

// Reads characters until an unescaped stop character or whitespace boundary.
// Handles backslash escapes for [ ] { } \ and passes other escaped chars
// through literally.
std::string read_escaped(LineCursor& cursor, std::string_view stops, bool stop_at_space) {
  std::string out;
  while (!cursor.done()) {
    char c = cursor.peek();
    if (c == '\\') {
      if (cursor.pos + 1 >= cursor.line.size())
        fail("dangling backslash escape", cursor.column());
      out += cursor.line[cursor.pos + 1];
      cursor.pos += 2;
      continue;
    }
    if (stop_at_space && is_space(c)) break;
    if (stops.find(c) != std::string_view::npos) break;
    out += c;
    ++cursor.pos;
  }
  return out;
}

// Bounded digit parse; group indices larger than any sentence are format
// errors, not exceptions from the standard library.
std::optional<std::size_t> parse_index(std::string_view field) {
  if (field.empty() || field.size() > 6) return std::nullopt;
  std::size_t value = 0;
  for (char c : field) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + std::size_t(c - '0');
  }
  return value;
}

GoldTarget parse_gold_spec(std::string_view spec, std::size_t column) {
  if (spec == "right") return RightAttachment{};
  if (spec.rfind("none:", 0) == 0) return Unattachable{std::string(spec.substr(5))};
  if (spec.rfind("coord:", 0) == 0) {
    CoordinationOfGroups coordination;
    std::string_view rest = spec.substr(6);
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      auto position = parse_index(rest.substr(0, comma));
      if (!position) fail("malformed coordination index in gold spec", column);
      coordination.positions.push_back(*position);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    std::sort(coordination.positions.begin(), coordination.positions.end());
    coordination.positions.erase(
        std::unique(coordination.positions.begin(), coordination.positions.end()),
        coordination.positions.end());
    if (coordination.positions.size() < 2)
      fail("coordination gold needs at least 2 distinct positions", column);
    return coordination;
  }
  if (auto position = parse_index(spec)) return LeftGroup{*position};
  fail("unrecognized gold spec '" + std::string(spec) + "'", column);
}

struct ParsedGroup {
  SyntaxGroup group;
  std::optional<GoldTarget> gold;
  std::size_t gold_column = 0;
};

ParsedGroup parse_group(LineCursor& cursor) {
  // cursor sits on '['
  std::size_t open_column = cursor.column();
  ++cursor.pos;
  cursor.skip_spaces();
  std::string tag = read_escaped(cursor, "[]{}", true);
  auto kind = group_kind_from(tag);
  if (!kind) fail("unknown group kind tag '" + tag + "'", open_column + 1);

  ParsedGroup parsed;
  std::vector<Token> tokens;
  while (true) {
    cursor.skip_spaces();
    if (cursor.done()) fail("unterminated group (missing ']')", open_column);
    char c = cursor.peek();
    if (c == ']') {
      ++cursor.pos;
      break;
    }
    if (c == '{') {
      std::size_t brace_column = cursor.column();
      ++cursor.pos;
      std::string body = read_escaped(cursor, "}", false);
      if (cursor.done() || cursor.peek() != '}') fail("unterminated gold annotation", brace_column);
      ++cursor.pos;
      if (body.rfind("gold=", 0) != 0)
        fail("expected 'gold=' inside braces", brace_column);
      if (*kind != GroupKind::IGroup)
        fail("gold annotation on a non-I-group", brace_column);
      if (parsed.gold) fail("duplicate gold annotation", brace_column);
      parsed.gold = parse_gold_spec(std::string_view(body).substr(5), brace_column);
      parsed.gold_column = brace_column;
      continue;
    }
    if (c == '[') fail("unexpected '[' inside group", cursor.column());
    std::size_t token_column = cursor.column();
    std::string surface = read_escaped(cursor, "[]{}", true);
    if (surface.empty()) fail("empty token", token_column);
    tokens.push_back(Token{std::move(surface), std::string(kUntaggedPos)});
  }
  if (tokens.empty()) fail("group has no tokens", open_column);
  parsed.group = SyntaxGroup::make(*kind, std::move(tokens));
  return parsed;
}

}  // namespace

Sentence parse_sentence(std::string_view line) {
  Sentence sentence;
  LineCursor cursor{line};
  std::vector<std::pair<std::optional<GoldTarget>, std::size_t>> golds;
  while (true) {
    cursor.skip_spaces();
    if (cursor.done()) break;
    if (cursor.peek() != '[')
      fail("expected '[' to open a group", cursor.column());
    ParsedGroup parsed = parse_group(cursor);
    sentence.groups.push_back(std::move(parsed.group));
    golds.emplace_back(std::move(parsed.gold), parsed.gold_column);
  }
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (!golds[i].first) continue;
    const GoldTarget& gold = *golds[i].first;
    std::size_t column = golds[i].second;
    if (const auto* left = std::get_if<LeftGroup>(&gold)) {
      if (left->position >= sentence.groups.size())
        fail("gold index " + std::to_string(left->position) + " out of range", column);
      if (left->position >= i)
        fail("gold index " + std::to_string(left->position) + " is not strictly left of group " +
                 std::to_string(i),
             column);
    } else if (const auto* coord = std::get_if<CoordinationOfGroups>(&gold)) {
      for (std::size_t position : coord->positions) {
        if (position >= i)
          fail("coordination position " + std::to_string(position) +
                   " is not strictly left of group " + std::to_string(i),
               column);
      }
    }
    sentence.gold_attachments.emplace(i, gold);
  }
  return sentence;
}

namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (char c : text) {
    if (c == '[' || c == ']' || c == '{' || c == '}' || c == '\\') out += '\\';
    out += c;
  }
}

}  // namespace

std::string gold_spec_string(const GoldTarget& gold) {
  if (const auto* left = std::get_if<LeftGroup>(&gold)) return std::to_string(left->position);
  if (std::holds_alternative<RightAttachment>(gold)) return "right";
  if (const auto* coord = std::get_if<CoordinationOfGroups>(&gold)) {
    std::string out = "coord:";
    for (std::size_t i = 0; i < coord->positions.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(coord->positions[i]);
    }
    return out;
  }
  return "none:" + std::get<Unattachable>(gold).reason;
}

std::string serialize_sentence(const Sentence& sentence) {
  std::string out;
  for (std::size_t i = 0; i < sentence.groups.size(); ++i) {
    const SyntaxGroup& group = sentence.groups[i];
    if (i) out += ' ';
    out += '[';
    out += to_string(group.kind);
    for (const Token& token : group.tokens) {
      out += ' ';
      append_escaped(out, token.surface);
    }
    if (auto it = sentence.gold_attachments.find(i); it != sentence.gold_attachments.end()) {
      out += " {gold=";
      append_escaped(out, gold_spec_string(it->second));
      out += '}';
    }
    out += ']';
  }
  return out;
}

namespace {

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!is_space(c) && c != '\r') return false;
  }
  return true;
}

template <typename Record, typename Parse>
std::vector<Record> read_lines(std::istream& in, std::string_view source, Parse parse) {
  std::vector<Record> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    try {
      records.push_back(parse(line));
    } catch (const FormatError& error) {
      throw error.at(source, line_number);
    }
  }
  return records;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file", path);
  return in;
}

}  // namespace

std::vector<Sentence> read_group_corpus(std::istream& in, std::string_view source) {
  return read_lines<Sentence>(in, source, [](const std::string& line) { return parse_sentence(line); });
}

std::vector<Sentence> read_group_corpus_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_group_corpus(in, path);
}

Quadruple parse_quadruple(std::string_view line) {
  std::istringstream fields{std::string(line)};
  std::vector<std::string> parts;
  std::string part;
  while (fields >> part) parts.push_back(part);
  if (parts.size() != 5)
    fail("expected 5 fields (v n1 p n2 label), got " + std::to_string(parts.size()), 1);
  AttachLabel label;
  if (parts[4] == "V")
    label = AttachLabel::Verb;
  else if (parts[4] == "N")
    label = AttachLabel::Noun;
  else
    fail("unknown label '" + parts[4] + "' (want V or N)", 1);
  return Quadruple{parts[0], parts[1], parts[2], parts[3], label};
}

std::vector<Quadruple> read_quadruple_corpus(std::istream& in, std::string_view source) {
  return read_lines<Quadruple>(in, source,
                               [](const std::string& line) { return parse_quadruple(line); });
}

std::vector<Quadruple> read_quadruple_corpus_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_quadruple_corpus(in, path);
}

Sentence quadruple_to_sentence(const Quadruple& quadruple) {
  Sentence sentence;
  auto single = [](GroupKind kind, const std::string& word) {
    return SyntaxGroup::make(kind, {Token{word, std::string(kUntaggedPos)}});
  };
  sentence.groups.push_back(single(GroupKind::VerbGroup, quadruple.v));
  sentence.groups.push_back(single(GroupKind::NounGroup, quadruple.n1));
  sentence.groups.push_back(single(GroupKind::IGroup, quadruple.p));
  sentence.groups.push_back(single(GroupKind::NounGroup, quadruple.n2));
  std::size_t target = quadruple.label == AttachLabel::Verb ? 0 : 1;
  sentence.gold_attachments.emplace(2, LeftGroup{target});
  return sentence;
}

std::string_view coarse_pos_tag(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("coarse_pos_tag: empty word");
  bool has_digit = false;
  for (char c : word) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      has_digit = true;
    } else if (c != ',' && c != '.') {
      return kNonNumberPos;
    }
  }
  return has_digit ? kNumberPos : kNonNumberPos;
}

void coarse_tag_tokens(Sentence& sentence) {
  for (SyntaxGroup& group : sentence.groups)
    for (Token& token : group.tokens) token.pos = std::string(coarse_pos_tag(token.surface));
}

}  // namespace ppattach
