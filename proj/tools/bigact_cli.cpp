// bigact: verification driver for the elementary abelian tower and its
// automorphism group. See README.md for the subcommands.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bigact/report.hpp"
#include "bigact/version.hpp"

using bigact::report::ExitCode;
using bigact::report::Format;
using bigact::report::RunConfig;

namespace {

void shared_flags(CLI::App *cmd, RunConfig &cfg, std::string &format) {
  cmd->add_option("--p", cfg.p, "odd prime p")->capture_default_str();
  cmd->add_option("--s", cfg.s, "q0 = p^s")->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "random lines per cover class")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed of the line sampler")->capture_default_str();
  cmd->add_option("--cache-dir", cfg.cache_dir, "uniformizer cache (overrides BIGACT_CACHE_DIR)");
  cmd->add_option("--out", cfg.out, "write the report here instead of stdout");
  cmd->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}))->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "OpenMP threads");
  cmd->add_flag("--timings", cfg.timings, "include wall-clock timings (makes output nondeterministic)");
}

std::vector<int> parse_coords(const std::string &s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception &) {
      throw bigact::report::UsageError("bad coordinate '" + item + "'");
    }
    if (used != item.size())
      throw bigact::report::UsageError("bad coordinate '" + item + "'");
    out.push_back(v);
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"bigact: exact verification of a big-action tower"};
  app.set_version_flag("--version", std::string(bigact::kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  std::string a_text;

  auto *verify = app.add_subcommand("verify", "run every check and the formula audit");
  auto *conductor = app.add_subcommand("conductor", "conductor of one cover class");
  auto *genus = app.add_subcommand("genus", "class genera, g(F) and the big-action verdict");
  auto *comm = app.add_subcommand("commutators", "certify sigma_i, tau_j and their commutators");
  auto *prolong = app.add_subcommand("prolong", "prolong x -> x + a through the tower");
  auto *audit = app.add_subcommand("audit", "compare closed forms with the pipeline");
  for (auto *c : {verify, conductor, genus, comm, prolong, audit})
    shared_flags(c, cfg, format);
  conductor->add_option("--class", cfg.class_label, "y2, v1, v2, w, y1 or ree")->required();
  prolong->add_option("--a", a_text, "coordinates of a, comma separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage_error);
  }

  try {
    cfg.commands = {app.get_subcommands().front()->get_name()};
    cfg.format = format == "md" ? Format::md : Format::json;
    if (!a_text.empty())
      cfg.a_coords = parse_coords(a_text);

    const auto outcome = bigact::report::run(cfg);
    const auto text = bigact::report::render(outcome.report, cfg.format);
    if (cfg.out)
      bigact::report::write_atomic(*cfg.out, text);
    else
      std::cout << text;
    if (outcome.report.at("status").contains("failed_check"))
      std::cerr << "integrity failure: " << outcome.report["status"]["failed_check"].get<std::string>() << "\n";
    return outcome.exit_code;
  } catch (const bigact::report::UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::integrity_failure;
  }
}
