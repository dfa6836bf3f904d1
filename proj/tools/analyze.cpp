// Command-line front end: loads a tournament (embedded FIFA 2022 group or
// file), runs the full analysis and emits a text or JSON report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rrsvd/errors.hpp"
#include "rrsvd/fifa2022.hpp"
#include "rrsvd/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNumericError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rrsvd::ParameterError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-robin tournament analysis via singular value decomposition"};

  std::string group_letter;
  std::string file_path;
  std::string section_name = "all";
  std::string format = "text";
  std::size_t rank = 1;
  std::optional<std::uint64_t> seed;
  std::string output_path;

  auto* group_opt =
      app.add_option("--group", group_letter, "Embedded FIFA 2022 group, one of A..H");
  auto* file_opt = app.add_option("--file", file_path, "Tournament file to analyze");
  group_opt->excludes(file_opt);
  app.add_option("--section", section_name,
                 "Report section: matrix|svd|scores|corrections|polar|standings|all")
      ->capture_default_str();
  app.add_option("--format", format, "Output format: text|json")->capture_default_str();
  app.add_option("--rank", rank, "Order of the predicted matrix")->capture_default_str();
  app.add_option("--seed", seed, "Coin-toss seed, overrides any seed in the file");
  app.add_option("--output", output_path, "Write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (group_letter.empty() == file_path.empty()) {
    std::cerr << "error: exactly one of --group or --file is required\n";
    return kExitInputError;
  }
  if (format != "text" && format != "json") {
    std::cerr << "error: unknown format: " << format << "\n";
    return kExitInputError;
  }
  const auto section = rrsvd::section_from_string(section_name);
  if (!section) {
    std::cerr << "error: unknown section: " << section_name << "\n";
    return kExitInputError;
  }

  try {
    rrsvd::Tournament tournament = [&] {
      if (!group_letter.empty()) {
        if (group_letter.size() != 1)
          throw rrsvd::ParameterError("unknown group letter: " + group_letter +
                                      " (expected A through H)");
        return rrsvd::fifa2022::group(group_letter[0]);
      }
      return rrsvd::parse_tournament(read_file(file_path));
    }();
    if (seed) tournament = tournament.with_coin_seed(*seed);

    const rrsvd::PerformanceMatrix matrix =
        !group_letter.empty() ? rrsvd::fifa2022::reference_matrix(group_letter[0])
                              : rrsvd::build_performance_matrix(tournament);

    const rrsvd::AnalysisReport report = rrsvd::analyze_tournament(tournament, matrix, rank);
    const std::string rendered = format == "json"
                                     ? rrsvd::to_json(report, *section).dump(2) + "\n"
                                     : rrsvd::to_text(report, *section);

    if (output_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(output_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write file: " << output_path << "\n";
        return kExitInputError;
      }
      out << rendered;
    }
    return kExitOk;
  } catch (const rrsvd::ConvergenceError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const rrsvd::ParseError& e) {
    std::cerr << "error: " << (file_path.empty() ? "" : file_path + ": ") << e.what() << "\n";
    return kExitInputError;
  } catch (const rrsvd::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const rrsvd::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumericError;
  }
}
