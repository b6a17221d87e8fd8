// Benchmarks the rule-scoring kernels: the plain serial reference against the
// interned tally scorer (OpenMP-parallel over problems when available).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "ppattach/eval.hpp"
#include "ppattach/lexicon.hpp"
#include "ppattach/synthesis.hpp"
#include "ppattach/tbl.hpp"

using namespace ppattach;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scoring kernel benchmark"};
  std::size_t n_problems = 2000;
  std::size_t repetitions = 3;
  std::string lexicon_path = "data/lexicon.tsv";
  bool skip_serial = false;
  app.add_option("--problems", n_problems, "synthetic corpus size")->capture_default_str();
  app.add_option("--reps", repetitions, "timing repetitions")->capture_default_str();
  app.add_option("--lexicon", lexicon_path, "lexicon file")->capture_default_str();
  app.add_flag("--skip-serial", skip_serial, "time only the fast kernel");
  CLI11_PARSE(app, argc, argv);

  Lexicon lexicon = load_lexicon_file(lexicon_path);
  std::vector<Sentence> corpus =
      synthesize_corpus(table1_quotas_scaled(n_problems), 20240217);
  Extraction extraction = extract_problems(corpus, lexicon, Mode::All);
  std::vector<Rule> candidates = enumerate_candidate_rules(extraction.problems, lexicon);

#ifdef _OPENMP
  std::printf("threads              %d\n", omp_get_max_threads());
#else
  std::printf("threads              1 (built without OpenMP)\n");
#endif
  std::printf("problems             %zu\n", extraction.problems.size());
  std::printf("candidate rules      %zu\n", candidates.size());

  double fast_best = 1e300;
  std::vector<RuleScore> fast_scores;
  for (std::size_t i = 0; i < repetitions; ++i) {
    auto start = std::chrono::steady_clock::now();
    fast_scores = score_rules(candidates, extraction.problems, lexicon);
    fast_best = std::min(fast_best, seconds_since(start));
  }
  std::printf("tally kernel         %.3f s\n", fast_best);

  if (!skip_serial) {
    double serial_best = 1e300;
    std::vector<RuleScore> serial_scores;
    for (std::size_t i = 0; i < repetitions; ++i) {
      auto start = std::chrono::steady_clock::now();
      serial_scores = score_rules_serial(candidates, extraction.problems, lexicon);
      serial_best = std::min(serial_best, seconds_since(start));
    }
    std::printf("serial reference     %.3f s\n", serial_best);
    std::printf("speedup              %.1fx\n", serial_best / fast_best);
    std::printf("results identical    %s\n", fast_scores == serial_scores ? "yes" : "NO");
    if (fast_scores != serial_scores) return 1;
  }

  auto start = std::chrono::steady_clock::now();
  TrainOptions options;
  options.mode = Mode::All;
  options.threshold = 2;
  RuleSequence sequence = train(extraction.problems, lexicon, options);
  std::printf("full training        %.3f s (%zu rules)\n", seconds_since(start),
              sequence.rules.size());
  return 0;
}
