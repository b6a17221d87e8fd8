#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

namespace ppattach {

/// Word-level knowledge the rules may test. All lookups are total: unknown
/// words yield the empty set. Each lookup tries the exact form first, then the
/// ASCII-lowercased form, so sentence-initial capitalization does not hide an
/// entry. Immutable in practice once loaded; safe for concurrent reads.
class Lexicon {
 public:
  using ValueSet = std::set<std::string>;

  const ValueSet& pos_of(std::string_view word) const;
  const ValueSet& stems_of(std::string_view word) const;
  const ValueSet& noun_classes_of(std::string_view word) const;
  const ValueSet& verb_classes_of(std::string_view word) const;
  const ValueSet& subcats_of(std::string_view word) const;
  const ValueSet& preps_licensed_by(std::string_view word) const;
  const ValueSet& preposition_list() const { return preposition_list_; }

  /// True iff the word (exact or lowercased) is on the preposition list;
  /// unlisted words are subordinate conjunctions. Throws std::logic_error when
  /// the list is empty, since classification then has no basis.
  bool is_preposition(std::string_view word) const;

  void add_pos(std::string word, std::string value);
  void add_stem(std::string word, std::string value);
  void add_noun_class(std::string word, std::string value);
  void add_verb_class(std::string word, std::string value);
  void add_subcat(std::string word, std::string value);
  void add_licensed_prep(std::string word, std::string value);
  void add_preposition(std::string word);

 private:
  using Map = std::unordered_map<std::string, ValueSet>;

  static const ValueSet& lookup(const Map& map, std::string_view word);

  Map pos_;
  Map stems_;
  Map noun_classes_;
  Map verb_classes_;
  Map subcats_;
  Map licensed_preps_;
  ValueSet preposition_list_;
};

/// Loads the line-oriented lexicon format. First field is the section tag
/// (POS, STEM, SEM_NOUN, SEM_VERB, SUBCAT, PREPS, PREPLIST); for PREPLIST the
/// remaining fields are preposition words (multi-word joined with
/// underscores), otherwise field 2 is the key and fields 3+ the values.
/// `#` comment lines and blank lines are ignored. Duplicate rows union.
Lexicon load_lexicon(std::istream& in, std::string_view source = "<lexicon>");
Lexicon load_lexicon_file(const std::string& path);

}  // namespace ppattach
