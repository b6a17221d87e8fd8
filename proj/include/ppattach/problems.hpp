#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ppattach/corpus.hpp"
#include "ppattach/lexicon.hpp"

namespace ppattach {

/// Six-way partition of tryable attachment problems, keyed on the I-group
/// content and the kinds of the neighboring groups.
enum class Category { Vnpn, Vnpx, Xnpn, Xnpx, NoLeftNoun, SubConj };

inline constexpr std::array<Category, 6> kAllCategories = {
    Category::Vnpn, Category::Vnpx,       Category::Xnpn,
    Category::Xnpx, Category::NoLeftNoun, Category::SubConj};

std::string_view to_string(Category category);
std::optional<Category> category_from(std::string_view name);

/// Which attachment points are on offer: every left group, or just the
/// adjacent group plus the nearest left verb group.
enum class Mode { All, VA };

std::string_view to_string(Mode mode);
std::optional<Mode> mode_from(std::string_view name);

/// One I-group to attach. References its immutable sentence; current_guess is
/// the only mutable state and is owned by whichever pass applies rules.
struct AttachmentProblem {
  const Sentence* sentence = nullptr;
  std::size_t sentence_id = 0;
  std::size_t igroup_pos = 0;
  std::vector<std::size_t> candidates;  // ascending, all < igroup_pos
  std::size_t current_guess = 0;
  std::optional<GoldTarget> gold;
  Category category{Category::Vnpn};
  Mode mode{Mode::All};
};

struct ExtractionTally {
  std::size_t n_tried = 0;
  std::size_t n_no_left = 0;   // fewer than 2 groups on the left
  std::size_t n_no_right = 0;  // nothing to the right

  std::size_t n_not_handled() const { return n_no_left + n_no_right; }
};

struct Extraction {
  std::vector<AttachmentProblem> problems;
  ExtractionTally tally;
};

/// Tryable: at least 2 groups on the left and 1 on the right.
bool is_tryable(const Sentence& sentence, std::size_t igroup_pos);

/// Largest verb-group index strictly left of igroup_pos, if any.
std::optional<std::size_t> nearest_left_verb(const Sentence& sentence, std::size_t igroup_pos);

/// Category of a tryable I-group. Throws std::logic_error when not tryable.
Category categorize_problem(const Sentence& sentence, std::size_t igroup_pos,
                            const Lexicon& lexicon);

/// One problem per tryable I-group, categorized and initialized to the
/// adjacent guess; non-tryable I-groups are tallied, never errors.
Extraction extract_problems(const Sentence& sentence, const Lexicon& lexicon, Mode mode,
                            std::size_t sentence_id = 0);
Extraction extract_problems(std::span<const Sentence> corpus, const Lexicon& lexicon, Mode mode);

/// True iff gold is a LeftGroup inside the candidate set. Right attachments,
/// coordinations and unattachables can never be guessed correctly.
bool is_resolvable(const AttachmentProblem& problem);

/// True iff gold is LeftGroup(i) and the current guess is i.
bool is_correct(const AttachmentProblem& problem);

/// Resets every guess to the adjacent group (the initial state).
void reset_to_adjacent(std::span<AttachmentProblem> problems);

}  // namespace ppattach
