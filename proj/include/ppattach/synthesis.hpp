#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "ppattach/corpus.hpp"
#include "ppattach/problems.hpp"

namespace ppattach {

/// Self-contained PRNG (xorshift64*) so generated corpora are byte-identical
/// across standard libraries and platforms.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next();
  /// Uniform in [0, bound); bound > 0.
  std::size_t below(std::size_t bound);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double probability);

 private:
  std::uint64_t state_;
};

/// How many problems of one category to emit, split by gold target kind.
/// n = adjacent + nearest_verb + other_left + right_attach + coordination +
/// unattachable. nearest_verb problems get a gold on a left verb group that is
/// not the adjacent group; other_left ones on a left group that is neither the
/// adjacent group nor the nearest left verb.
struct CategoryQuota {
  Category category{Category::Vnpn};
  std::size_t adjacent = 0;
  std::size_t nearest_verb = 0;
  std::size_t other_left = 0;
  std::size_t right_attach = 0;
  std::size_t coordination = 0;
  std::size_t unattachable = 0;

  std::size_t n() const {
    return adjacent + nearest_verb + other_left + right_attach + coordination + unattachable;
  }
};

/// Quotas reproducing the reference six-category corpus profile at 500
/// problems: per-category prevalence, adjacent-attachment rate, verb-or-
/// adjacent rate and unresolvable rate all land within 2 percentage points of
/// the profile, with an overall adjacent baseline of 66.8%.
std::vector<CategoryQuota> table1_quotas_500();

/// Same cell proportions scaled to roughly `n_problems` (each quota row scaled
/// and re-rounded); used by the benchmark for larger corpora.
std::vector<CategoryQuota> table1_quotas_scaled(std::size_t n_problems);

/// Deterministically emits one single-I-group sentence per quota unit, in
/// shuffled order. Word choice is correlated with the gold target so the
/// corpus is learnable, with a small noise rate. The word pools are covered by
/// the bundled illustrative lexicon.
std::vector<Sentence> synthesize_corpus(const std::vector<CategoryQuota>& quotas,
                                        std::uint64_t seed);

/// Serializes with a small header comment; stable bytes for a given input.
std::string corpus_to_text(const std::vector<Sentence>& corpus);

}  // namespace ppattach
