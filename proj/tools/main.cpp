// Command-line frontend: extract, categorize, train, apply, eval, composite
// and stats over group-annotated or head-word-quadruple corpora. Outputs are
// byte-identical across runs on identical inputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppattach/corpus.hpp"
#include "ppattach/eval.hpp"
#include "ppattach/lexicon.hpp"
#include "ppattach/problems.hpp"
#include "ppattach/rules.hpp"
#include "ppattach/tbl.hpp"

namespace {

using namespace ppattach;

struct LoadedCorpus {
  std::vector<Sentence> sentences;
  std::string digest;
  bool quadruples = false;
};

bool has_suffix(const std::string& path, std::string_view suffix) {
  return path.size() >= suffix.size() &&
         path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Quadruple corpora (.quad) become 4-group sentences with coarse POS tags;
// anything else is the group-annotated format.
LoadedCorpus load_corpus(const std::string& path) {
  LoadedCorpus loaded;
  std::string bytes = slurp(path);
  loaded.digest = fnv1a_hex(bytes);
  std::istringstream in(bytes);
  if (has_suffix(path, ".quad")) {
    loaded.quadruples = true;
    for (const Quadruple& quadruple : read_quadruple_corpus(in, path)) {
      Sentence sentence = quadruple_to_sentence(quadruple);
      coarse_tag_tokens(sentence);
      loaded.sentences.push_back(std::move(sentence));
    }
  } else {
    loaded.sentences = read_group_corpus(in, path);
  }
  return loaded;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw FormatError("cannot write file", out_path);
  out << text;
}

Mode parse_mode(const std::string& name) {
  auto mode = mode_from(name);
  if (!mode) throw FormatError("unknown mode '" + name + "' (want all or v-a)");
  return *mode;
}

std::string problem_record(const AttachmentProblem& problem, bool with_guess) {
  std::string out = std::to_string(problem.sentence_id);
  out += '\t';
  out += std::to_string(problem.igroup_pos);
  out += '\t';
  out += to_string(problem.category);
  out += '\t';
  out += to_string(problem.mode);
  out += '\t';
  for (std::size_t i = 0; i < problem.candidates.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(problem.candidates[i]);
  }
  out += '\t';
  out += problem.gold ? gold_spec_string(*problem.gold) : "-";
  if (with_guess) {
    out += '\t';
    out += std::to_string(problem.current_guess);
  }
  out += '\n';
  return out;
}

std::string percent_cell(double fraction) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%5.1f%%", round1(fraction * 100.0));
  return buffer;
}

// Per-category adjacent / verb-or-adjacent / unresolvable / prevalence table.
struct StatsRow {
  std::size_t n = 0;
  std::size_t adjacent = 0;
  std::size_t verb_or_adjacent = 0;
  std::size_t unresolvable = 0;
};

std::map<Category, StatsRow> stats_rows(std::span<const AttachmentProblem> problems) {
  std::map<Category, StatsRow> rows;
  for (Category category : kAllCategories) rows[category];
  for (const AttachmentProblem& problem : problems) {
    if (!problem.gold)
      throw FormatError("stats needs gold annotations; sentence " +
                        std::to_string(problem.sentence_id) + " lacks one");
    StatsRow& row = rows[problem.category];
    ++row.n;
    if (const auto* left = std::get_if<LeftGroup>(&*problem.gold)) {
      if (left->position == problem.igroup_pos - 1) {
        ++row.adjacent;
        ++row.verb_or_adjacent;
      } else if (auto verb = nearest_left_verb(*problem.sentence, problem.igroup_pos);
                 verb && *verb == left->position) {
        ++row.verb_or_adjacent;
      }
    } else {
      ++row.unresolvable;
    }
  }
  return rows;
}

int run_stats(const std::string& corpus_path, const std::string& lexicon_path, bool machine,
              const std::string& out_path) {
  LoadedCorpus corpus = load_corpus(corpus_path);
  Lexicon lexicon = load_lexicon_file(lexicon_path);
  Extraction extraction = extract_problems(corpus.sentences, lexicon, Mode::All);
  if (extraction.problems.empty()) throw FormatError("corpus has no tryable problems");
  auto rows = stats_rows(extraction.problems);

  StatsRow overall;
  for (const auto& [category, row] : rows) {
    overall.n += row.n;
    overall.adjacent += row.adjacent;
    overall.verb_or_adjacent += row.verb_or_adjacent;
    overall.unresolvable += row.unresolvable;
  }

  std::string out;
  if (machine) {
    auto emit = [&](const std::string& name, const StatsRow& row) {
      auto pct = [&](std::size_t count) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.1f",
                      round1(row.n == 0 ? 0.0 : 100.0 * double(count) / double(row.n)));
        return std::string(buffer);
      };
      out += "stats." + name + ".n=" + std::to_string(row.n) + "\n";
      out += "stats." + name + ".a=" + pct(row.adjacent) + "\n";
      out += "stats." + name + ".va=" + pct(row.verb_or_adjacent) + "\n";
      out += "stats." + name + ".err=" + pct(row.unresolvable) + "\n";
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.1f",
                    round1(100.0 * double(row.n) / double(overall.n)));
      out += "stats." + name + ".prev=" + std::string(buffer) + "\n";
    };
    for (const auto& [category, row] : rows) emit(std::string(to_string(category)), row);
    emit("overall", overall);
    out += "stats.n_not_handled=" + std::to_string(extraction.tally.n_not_handled()) + "\n";
  } else {
    out += "category           A     V-A     Err    Prev       n\n";
    auto emit = [&](const std::string& name, const StatsRow& row) {
      char line[128];
      double n = row.n == 0 ? 1.0 : double(row.n);
      std::snprintf(line, sizeof(line), "%-12s %s  %s  %s  %s  %6zu\n", name.c_str(),
                    percent_cell(double(row.adjacent) / n).c_str(),
                    percent_cell(double(row.verb_or_adjacent) / n).c_str(),
                    percent_cell(double(row.unresolvable) / n).c_str(),
                    percent_cell(double(row.n) / double(overall.n)).c_str(), row.n);
      out += line;
    };
    for (const auto& [category, row] : rows) emit(std::string(to_string(category)), row);
    emit("overall", overall);
    out += "not-handled  " + std::to_string(extraction.tally.n_not_handled()) + "\n";
  }
  write_output(out, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transformation-based preposition and subordinate-conjunction attachment"};
  app.require_subcommand(1);

  std::string corpus_path, lexicon_path, rules_path, out_path, mode_name;
  std::vector<std::string> routed_rules;
  int threshold = 0;
  bool machine = false;

  auto add_common = [&](CLI::App* sub, bool needs_rules) {
    sub->add_option("--corpus", corpus_path, "corpus file (.quad switches format)")->required();
    sub->add_option("--lexicon", lexicon_path, "lexicon file")->required();
    sub->add_option("-o,--out", out_path, "output path (default: stdout)");
    if (needs_rules) sub->add_option("--rules", rules_path, "rules file")->required();
    return sub;
  };

  CLI::App* extract = add_common(app.add_subcommand("extract", "dump attachment problems"), false);
  extract->add_option("--mode", mode_name, "all or v-a")->default_val("all");
  CLI::App* categorize =
      add_common(app.add_subcommand("categorize", "category per tryable I-group"), false);
  CLI::App* train_cmd = add_common(app.add_subcommand("train", "learn a rule sequence"), false);
  train_cmd->add_option("--mode", mode_name, "all or v-a")->default_val("all");
  train_cmd->add_option("--threshold", threshold,
                        "minimum net repairs per accepted rule (default 2; 3 for .quad)");
  train_cmd->get_option("--out")->required();
  CLI::App* apply_cmd = add_common(app.add_subcommand("apply", "apply rules, dump guesses"), true);
  apply_cmd->add_option("--mode", mode_name, "must match the rules' mode when given");
  CLI::App* eval_cmd = add_common(app.add_subcommand("eval", "apply rules and score"), true);
  eval_cmd->add_option("--mode", mode_name, "must match the rules' mode when given");
  eval_cmd->add_flag("--machine", machine, "key=value output");
  CLI::App* composite =
      add_common(app.add_subcommand("composite", "per-category rule routing"), false);
  composite
      ->add_option("--rules", routed_rules,
                   "CATEGORY=RULEFILE (repeatable; unrouted categories stay at baseline)")
      ->required();
  composite->add_option("--mode", mode_name, "must match the routed rules' mode when given");
  composite->add_flag("--machine", machine, "key=value output");
  CLI::App* stats = add_common(app.add_subcommand("stats", "per-category corpus profile"), false);
  stats->add_flag("--machine", machine, "key=value output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return run_stats(corpus_path, lexicon_path, machine, out_path);

    LoadedCorpus corpus = load_corpus(corpus_path);
    Lexicon lexicon = load_lexicon_file(lexicon_path);

    if (extract->parsed() || categorize->parsed()) {
      Mode mode = extract->parsed() ? parse_mode(mode_name) : Mode::All;
      Extraction extraction = extract_problems(corpus.sentences, lexicon, mode);
      std::string out;
      for (const AttachmentProblem& problem : extraction.problems) {
        if (categorize->parsed()) {
          out += std::to_string(problem.sentence_id) + "\t" +
                 std::to_string(problem.igroup_pos) + "\t" +
                 std::string(to_string(problem.category)) + "\n";
        } else {
          out += problem_record(problem, false);
        }
      }
      write_output(out, out_path);
      return 0;
    }

    if (train_cmd->parsed()) {
      Mode mode = parse_mode(mode_name);
      if (train_cmd->count("--threshold") == 0) threshold = corpus.quadruples ? 3 : 2;
      if (threshold < 1) throw FormatError("threshold must be >= 1");
      Extraction extraction = extract_problems(corpus.sentences, lexicon, mode);
      if (extraction.problems.empty()) throw FormatError("corpus has no tryable problems");
      TrainOptions options;
      options.mode = mode;
      options.threshold = threshold;
      options.corpus_digest = corpus.digest;
      RuleSequence sequence = train(extraction.problems, lexicon, options);
      write_rules_file(sequence, out_path);
      std::cerr << "learned " << sequence.rules.size() << " rules\n";
      return 0;
    }

    // apply / eval / composite share the rules-vs-request mode check.
    auto resolve_mode = [&](Mode rules_mode, const CLI::App* sub) {
      if (sub->count("--mode") != 0 && parse_mode(mode_name) != rules_mode)
        throw FormatError("requested mode '" + mode_name + "' conflicts with rules mode '" +
                          std::string(to_string(rules_mode)) + "'");
      return rules_mode;
    };

    if (apply_cmd->parsed() || eval_cmd->parsed()) {
      const CLI::App* sub = apply_cmd->parsed() ? apply_cmd : eval_cmd;
      RuleSequence sequence = parse_rules_file(rules_path);
      Mode mode = resolve_mode(sequence.meta.mode, sub);
      Extraction extraction = extract_problems(corpus.sentences, lexicon, mode);
      if (extraction.problems.empty()) throw FormatError("corpus has no tryable problems");
      apply_sequence(sequence, extraction.problems, lexicon);
      std::string out;
      if (apply_cmd->parsed()) {
        for (const AttachmentProblem& problem : extraction.problems)
          out += problem_record(problem, true);
      } else {
        EvaluationReport report =
            evaluate(extraction.problems, extraction.tally.n_not_handled());
        out = machine ? format_report_machine(report) : format_report(report);
      }
      write_output(out, out_path);
      return 0;
    }

    if (composite->parsed()) {
      CompositeRouter router;
      for (const std::string& spec : routed_rules) {
        std::size_t eq = spec.find('=');
        if (eq == std::string::npos)
          throw FormatError("composite rules are CATEGORY=RULEFILE, got '" + spec + "'");
        auto category = category_from(spec.substr(0, eq));
        if (!category) throw FormatError("unknown category '" + spec.substr(0, eq) + "'");
        if (router.routes.count(*category))
          throw FormatError("category '" + spec.substr(0, eq) + "' routed twice");
        router.routes[*category] = parse_rules_file(spec.substr(eq + 1));
      }
      Mode mode = Mode::All;
      bool mode_set = false;
      for (const auto& [category, sequence] : router.routes) {
        if (sequence.rules.empty()) continue;
        if (!mode_set) {
          mode = sequence.meta.mode;
          mode_set = true;
        } else if (sequence.meta.mode != mode) {
          throw FormatError("routed rule files disagree on mode");
        }
      }
      if (composite->count("--mode") != 0) {
        Mode requested = parse_mode(mode_name);
        if (mode_set && requested != mode)
          throw FormatError("requested mode conflicts with routed rules mode");
        mode = requested;
      }
      Extraction extraction = extract_problems(corpus.sentences, lexicon, mode);
      if (extraction.problems.empty()) throw FormatError("corpus has no tryable problems");
      EvaluationReport report = composite_evaluate(router, extraction.problems, lexicon,
                                                   extraction.tally.n_not_handled());
      write_output(machine ? format_report_machine(report) : format_report(report), out_path);
      return 0;
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
