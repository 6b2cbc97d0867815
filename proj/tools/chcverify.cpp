// Command-line front end. Links only the C interface.

#include <chcverify.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

constexpr int kExitSafe = 0;
constexpr int kExitUnsafe = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

// Writes via a temporary file and rename so an interrupted run never leaves a
// partial dump behind.
bool write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    if (!out.flush()) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify safety of constrained Horn clauses over linear rational arithmetic"};
  std::string file;
  std::size_t max_refinements = 10;
  std::string dump_dir;
  std::vector<std::string> dumps;
  std::string format = "human";
  std::string thresholds = "on";
  app.add_option("FILE", file, "CHC program")->required();
  app.add_option("--max-refinements", max_refinements, "Refinement iterations before giving up")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--dump-dir", dump_dir, "Directory for dump files (default: current directory)");
  app.add_option("--dump", dumps, "Intermediate artefacts to dump")->check(CLI::IsMember({"qa", "spec", "model", "ps"}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--thresholds", thresholds, "Widening with thresholds")->check(CLI::IsMember({"on", "off"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  chcv_program* program = nullptr;
  if (chcv_program_parse_file(file.c_str(), &program) != CHCV_OK) {
    std::cerr << "chcverify: " << file << ": " << chcv_last_error() << '\n';
    return kExitInputError;
  }

  chcv_config cfg;
  chcv_config_default(&cfg);
  cfg.max_refinements = max_refinements;
  cfg.use_thresholds = thresholds == "on";
  for (const auto& d : dumps) {
    if (d == "qa") cfg.dumps |= CHCV_DUMP_QA;
    if (d == "spec") cfg.dumps |= CHCV_DUMP_SPEC;
    if (d == "model") cfg.dumps |= CHCV_DUMP_MODEL;
    if (d == "ps") cfg.dumps |= CHCV_DUMP_PS;
  }

  chcv_result* result = nullptr;
  chcv_status st = chcv_verify(program, &cfg, &result);
  chcv_program_free(program);
  if (st != CHCV_OK) {
    std::cerr << "chcverify: " << chcv_last_error() << '\n';
    return st == CHCV_ERR_INVALID_ARGUMENT ? kExitInputError : kExitUnknown;
  }

  if (chcv_result_dump_count(result) > 0) {
    std::filesystem::path dir = dump_dir.empty() ? std::filesystem::current_path() : std::filesystem::path(dump_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (std::size_t i = 0; i < chcv_result_dump_count(result); ++i) {
      auto path = dir / chcv_result_dump_name(result, i);
      if (!write_atomically(path, chcv_result_dump_content(result, i))) {
        std::cerr << "chcverify: cannot write " << path.string() << '\n';
      }
    }
  }

  const std::string name = std::filesystem::path(file).filename().string();
  const chcv_verdict v = chcv_result_verdict(result);
  if (format == "json") {
    std::cout << chcv_result_json(result, name.c_str()) << '\n';
  } else {
    const char* label = v == CHCV_SAFE ? "safe" : v == CHCV_UNSAFE ? "unsafe" : "unknown";
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", chcv_result_time_ms(result) / 1000.0);
    std::cout << "program | n | result | time\n"
              << name << " | " << chcv_result_refinements(result) << " | " << label << " | " << time << '\n';
    if (v == CHCV_UNSAFE) std::cout << "counterexample: " << chcv_result_witness(result) << '\n';
    if (v == CHCV_UNKNOWN) std::cout << "reason: " << chcv_result_reason(result) << '\n';
  }
  chcv_result_free(result);
  return v == CHCV_SAFE ? kExitSafe : v == CHCV_UNSAFE ? kExitUnsafe : kExitUnknown;
}
