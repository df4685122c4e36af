// Writes a seeded synthetic profile file plus matching encoding config and
// synonym lexicon, for demos and tests.
#include "psel/error.hpp"
#include "psel/synthetic.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic software-engineer profile dataset"};
  std::size_t count = 100;
  std::uint64_t seed = 7;
  std::string out_dir = "synthetic";
  app.add_option("--count", count, "number of profiles")->check(CLI::Range(2, 1000000));
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--out", out_dir, "output directory");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "cannot create '" << out_dir << "': " << ec.message() << '\n';
    return 2;
  }
  std::ofstream profiles(fs::path(out_dir) / "profiles.csv");
  std::ofstream encoding(fs::path(out_dir) / "encoding.json");
  std::ofstream lexicon(fs::path(out_dir) / "lexicon.tsv");
  if (!profiles || !encoding || !lexicon) {
    std::cerr << "cannot write into '" << out_dir << "'\n";
    return 2;
  }
  psel::write_profiles(profiles, psel::synthetic::generate_profiles(count, seed));
  encoding << psel::dump_encoding_config(psel::synthetic::encoding_config());
  psel::synthetic::write_lexicon(lexicon);
  std::cout << "wrote " << count << " profiles to " << (fs::path(out_dir) / "profiles.csv").string() << '\n';
  return 0;
}
