// Writes a synthetic attachment corpus with the bundled category profile.
// The default invocation regenerates data/table1_500.grp byte-for-byte.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ppattach/synthesis.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic attachment-corpus generator"};
  std::size_t n_problems = 500;
  std::uint64_t seed = 20240217;
  std::string out_path;
  app.add_option("--problems", n_problems, "approximate number of problems")
      ->capture_default_str();
  app.add_option("--seed", seed, "generator seed")->capture_default_str();
  app.add_option("-o,--out", out_path, "output path (default: stdout)");
  CLI11_PARSE(app, argc, argv);

  auto quotas = n_problems == 500 ? ppattach::table1_quotas_500()
                                  : ppattach::table1_quotas_scaled(n_problems);
  std::string text = ppattach::corpus_to_text(ppattach::synthesize_corpus(quotas, seed));
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << text;
  return 0;
}
