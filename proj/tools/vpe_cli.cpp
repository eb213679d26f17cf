// Command-line front end: runs one command per invocation, prints the human
// report on stdout and writes the machine report with --out.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vpe/error.hpp"
#include "vpe/generator.hpp"
#include "vpe/problem.hpp"
#include "vpe/runner.hpp"

namespace {

constexpr int kInputError = 3;

std::array<double, 3> parse_schedule(const std::string& text) {
  std::array<double, 3> out{};
  std::stringstream in(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(in, item, ',')) {
    if (k == 3) throw vpe::Error(vpe::ErrorKind::BadParameter, "--schedule takes eps,delta0,gamma");
    std::size_t used = 0;
    out[k++] = std::stod(item, &used);
    if (used != item.size()) throw vpe::Error(vpe::ErrorKind::BadParameter, "--schedule: bad number '" + item + "'");
  }
  if (k != 3) throw vpe::Error(vpe::ErrorKind::BadParameter, "--schedule takes eps,delta0,gamma");
  return out;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int emit(const vpe::RunReport& report, const std::string& out_path) {
  std::cout << report.human;
  if (!out_path.empty() && !write_file(out_path, report.document.dump(2) + "\n")) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kInputError;
  }
  return vpe::exit_code(report.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational principles on non-symmetric distance spaces"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string out_path;
  std::string picker = "exact";
  std::string schedule_text;
  std::size_t samples = 0;
  vpe::RunFlags flags;

  const char* commands[] = {"check-distance", "bp", "ekeland", "caristi", "ep"};
  const char* descriptions[] = {
      "Report identity, symmetry and triangle behaviour of the distance",
      "Borwein-Preiss construction with certificate",
      "Ekeland construction with certificate",
      "Caristi fixed point of a set-valued map",
      "Equilibrium point of a bifunction",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("problem", problem_path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--tol", flags.tol, "Verification tolerance")->default_val(vpe::kDefaultTol);
    sub->add_option("--seed", flags.seed, "Seed for the quasi picker and sampled scans");
    sub->add_option("--picker", picker, "Iterate picker")->check(CLI::IsMember({"exact", "quasi"}));
    sub->add_option("--max-iter", flags.max_iter, "Iteration budget (default 10*|X|)");
    sub->add_option("--out", out_path, "Write the machine report here");
    sub->add_option("--schedule", schedule_text, "Override as \"eps,delta0,gamma\"");
    if (i == 0) sub->add_option("--samples", samples, "Sample this many triples instead of a full scan");
  }

  std::uint64_t gen_seed = 1;
  std::size_t gen_size = 5;
  std::string gen_family = "table";
  std::string gen_mode = "bp";
  CLI::App* gen = app.add_subcommand("generate", "Write a random problem file");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--size", gen_size, "Number of points")->check(CLI::PositiveNumber);
  gen->add_option("--family", gen_family, "Distance family");
  gen->add_option("--mode", gen_mode, "bp, ekeland, caristi or ep")
      ->check(CLI::IsMember({"bp", "ekeland", "caristi", "ep"}));
  gen->add_option("--out", out_path, "Output path (default stdout)");

  std::string report_path;
  CLI::App* verify = app.add_subcommand("verify", "Recheck a stored report without rerunning");
  verify->add_option("report", report_path, "Report written by --out")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (gen->parsed()) {
      const auto family = vpe::family_from_string(gen_family);
      if (!family) throw vpe::Error(vpe::ErrorKind::BadParameter, "unknown family '" + gen_family + "'");
      const auto problem = vpe::generate_instance(gen_seed, gen_size, *family, *vpe::mode_from_string(gen_mode));
      const std::string text = vpe::canonical_text(problem);
      if (out_path.empty()) {
        std::cout << text;
      } else if (!write_file(out_path, text)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kInputError;
      }
      return 0;
    }
    if (verify->parsed()) {
      std::ifstream in(report_path);
      const auto stored = nlohmann::json::parse(in, nullptr, false);
      if (stored.is_discarded()) {
        std::cerr << "error: " << report_path << " is not valid JSON\n";
        return kInputError;
      }
      return emit(vpe::verify_stored(stored), "");
    }

    std::string command;
    for (const CLI::App* sub : app.get_subcommands()) command = sub->get_name();
    flags.picker = picker == "quasi" ? vpe::Picker::Kind::quasi : vpe::Picker::Kind::exact;
    if (!schedule_text.empty()) flags.schedule = parse_schedule(schedule_text);
    if (samples > 0) flags.samples = samples;
    const vpe::ProblemFile problem = vpe::parse_problem(problem_path);
    return emit(vpe::run(command, problem, flags), out_path);
  } catch (const vpe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
