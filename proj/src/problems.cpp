#include "ppattach/problems.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppattach {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Vnpn: return "vnpn";
    case Category::Vnpx: return "vnpx";
    case Category::Xnpn: return "xnpn";
    case Category::Xnpx: return "xnpx";
    case Category::NoLeftNoun: return "noleftnoun";
    case Category::SubConj: return "subconj";
  }
  return "?";
}

std::optional<Category> category_from(std::string_view name) {
  for (Category category : kAllCategories)
    if (name == to_string(category)) return category;
  return std::nullopt;
}

std::string_view to_string(Mode mode) { return mode == Mode::All ? "all" : "v-a"; }

std::optional<Mode> mode_from(std::string_view name) {
  if (name == "all") return Mode::All;
  if (name == "v-a") return Mode::VA;
  return std::nullopt;
}

bool is_tryable(const Sentence& sentence, std::size_t igroup_pos) {
  return igroup_pos >= 2 && igroup_pos + 1 < sentence.groups.size();
}

std::optional<std::size_t> nearest_left_verb(const Sentence& sentence, std::size_t igroup_pos) {
  for (std::size_t i = std::min(igroup_pos, sentence.groups.size()); i-- > 0;) {
    if (sentence.groups[i].kind == GroupKind::VerbGroup) return i;
  }
  return std::nullopt;
}

Category categorize_problem(const Sentence& sentence, std::size_t igroup_pos,
                            const Lexicon& lexicon) {
  if (igroup_pos >= sentence.groups.size() ||
      sentence.groups[igroup_pos].kind != GroupKind::IGroup)
    throw std::logic_error("categorize_problem: position is not an I-group");
  if (!is_tryable(sentence, igroup_pos))
    throw std::logic_error("categorize_problem: problem is not tryable");

  if (!lexicon.is_preposition(head_word(sentence.groups[igroup_pos]))) return Category::SubConj;
  if (sentence.groups[igroup_pos - 1].kind != GroupKind::NounGroup) return Category::NoLeftNoun;
  bool verb_two_left = sentence.groups[igroup_pos - 2].kind == GroupKind::VerbGroup;
  bool noun_right = sentence.groups[igroup_pos + 1].kind == GroupKind::NounGroup;
  if (verb_two_left) return noun_right ? Category::Vnpn : Category::Vnpx;
  return noun_right ? Category::Xnpn : Category::Xnpx;
}

Extraction extract_problems(const Sentence& sentence, const Lexicon& lexicon, Mode mode,
                            std::size_t sentence_id) {
  Extraction extraction;
  for (std::size_t pos = 0; pos < sentence.groups.size(); ++pos) {
    if (sentence.groups[pos].kind != GroupKind::IGroup) continue;
    if (pos < 2) {
      ++extraction.tally.n_no_left;
      continue;
    }
    if (pos + 1 >= sentence.groups.size()) {
      ++extraction.tally.n_no_right;
      continue;
    }
    AttachmentProblem problem;
    problem.sentence = &sentence;
    problem.sentence_id = sentence_id;
    problem.igroup_pos = pos;
    problem.mode = mode;
    if (mode == Mode::All) {
      for (std::size_t i = 0; i < pos; ++i) problem.candidates.push_back(i);
    } else {
      problem.candidates.push_back(pos - 1);
      if (auto verb = nearest_left_verb(sentence, pos); verb && *verb != pos - 1)
        problem.candidates.insert(problem.candidates.begin(), *verb);
    }
    problem.current_guess = pos - 1;
    if (auto it = sentence.gold_attachments.find(pos); it != sentence.gold_attachments.end())
      problem.gold = it->second;
    problem.category = categorize_problem(sentence, pos, lexicon);
    extraction.problems.push_back(std::move(problem));
    ++extraction.tally.n_tried;
  }
  return extraction;
}

Extraction extract_problems(std::span<const Sentence> corpus, const Lexicon& lexicon, Mode mode) {
  Extraction merged;
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    Extraction one = extract_problems(corpus[id], lexicon, mode, id);
    merged.tally.n_tried += one.tally.n_tried;
    merged.tally.n_no_left += one.tally.n_no_left;
    merged.tally.n_no_right += one.tally.n_no_right;
    for (AttachmentProblem& problem : one.problems)
      merged.problems.push_back(std::move(problem));
  }
  return merged;
}

bool is_resolvable(const AttachmentProblem& problem) {
  if (!problem.gold) return false;
  const auto* left = std::get_if<LeftGroup>(&*problem.gold);
  if (!left) return false;
  return std::binary_search(problem.candidates.begin(), problem.candidates.end(), left->position);
}

bool is_correct(const AttachmentProblem& problem) {
  if (!problem.gold) return false;
  const auto* left = std::get_if<LeftGroup>(&*problem.gold);
  return left && left->position == problem.current_guess;
}

void reset_to_adjacent(std::span<AttachmentProblem> problems) {
  for (AttachmentProblem& problem : problems) problem.current_guess = problem.igroup_pos - 1;
}

}  // namespace ppattach
