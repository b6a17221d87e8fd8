#include "ppattach/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ppattach/errors.hpp"

namespace ppattach {

namespace {

const Lexicon::ValueSet kEmptySet;

std::string ascii_lower(std::string_view word) {
  std::string out(word);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const Lexicon::ValueSet& Lexicon::lookup(const Map& map, std::string_view word) {
  if (auto it = map.find(std::string(word)); it != map.end()) return it->second;
  std::string lower = ascii_lower(word);
  if (lower != word) {
    if (auto it = map.find(lower); it != map.end()) return it->second;
  }
  return kEmptySet;
}

const Lexicon::ValueSet& Lexicon::pos_of(std::string_view word) const {
  return lookup(pos_, word);
}
const Lexicon::ValueSet& Lexicon::stems_of(std::string_view word) const {
  return lookup(stems_, word);
}
const Lexicon::ValueSet& Lexicon::noun_classes_of(std::string_view word) const {
  return lookup(noun_classes_, word);
}
const Lexicon::ValueSet& Lexicon::verb_classes_of(std::string_view word) const {
  return lookup(verb_classes_, word);
}
const Lexicon::ValueSet& Lexicon::subcats_of(std::string_view word) const {
  return lookup(subcats_, word);
}
const Lexicon::ValueSet& Lexicon::preps_licensed_by(std::string_view word) const {
  return lookup(licensed_preps_, word);
}

bool Lexicon::is_preposition(std::string_view word) const {
  if (preposition_list_.empty())
    throw std::logic_error("is_preposition: preposition list is empty");
  if (preposition_list_.count(std::string(word))) return true;
  std::string lower = ascii_lower(word);
  return lower != word && preposition_list_.count(lower) > 0;
}

void Lexicon::add_pos(std::string word, std::string value) {
  pos_[std::move(word)].insert(std::move(value));
}
void Lexicon::add_stem(std::string word, std::string value) {
  stems_[std::move(word)].insert(std::move(value));
}
void Lexicon::add_noun_class(std::string word, std::string value) {
  noun_classes_[std::move(word)].insert(std::move(value));
}
void Lexicon::add_verb_class(std::string word, std::string value) {
  verb_classes_[std::move(word)].insert(std::move(value));
}
void Lexicon::add_subcat(std::string word, std::string value) {
  subcats_[std::move(word)].insert(std::move(value));
}
void Lexicon::add_licensed_prep(std::string word, std::string value) {
  licensed_preps_[std::move(word)].insert(std::move(value));
}
void Lexicon::add_preposition(std::string word) {
  preposition_list_.insert(std::move(word));
}

Lexicon load_lexicon(std::istream& in, std::string_view source) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> parts;
    std::string part;
    while (fields >> part) {
      if (part[0] == '#') break;  // trailing comment
      parts.push_back(part);
    }
    if (parts.empty()) continue;
    const std::string& section = parts[0];
    auto need = [&](std::size_t n) {
      if (parts.size() < n)
        throw FormatError("malformed " + section + " row (need at least " + std::to_string(n) +
                              " fields)",
                          std::string(source), line_number);
    };
    if (section == "PREPLIST") {
      need(2);
      for (std::size_t i = 1; i < parts.size(); ++i) lexicon.add_preposition(parts[i]);
      continue;
    }
    void (Lexicon::*add)(std::string, std::string) = nullptr;
    if (section == "POS")
      add = &Lexicon::add_pos;
    else if (section == "STEM")
      add = &Lexicon::add_stem;
    else if (section == "SEM_NOUN")
      add = &Lexicon::add_noun_class;
    else if (section == "SEM_VERB")
      add = &Lexicon::add_verb_class;
    else if (section == "SUBCAT")
      add = &Lexicon::add_subcat;
    else if (section == "PREPS")
      add = &Lexicon::add_licensed_prep;
    else
      throw FormatError("unknown section name '" + section + "'", std::string(source),
                        line_number);
    need(3);
    for (std::size_t i = 2; i < parts.size(); ++i) (lexicon.*add)(parts[1], parts[i]);
  }
  return lexicon;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file", path);
  return load_lexicon(in, path);
}

}  // namespace ppattach
