// ksv: Saint-Venant solutions for thin cylindrical shells.
//
//   ksv solve   --config case.json [--mode all] [--grid-s 512] [--grid-z 5] [--out DIR] [--psi-variant corollary]
//   ksv verify  --config case.json --table DIR/field_exact.csv [--out DIR]
//   ksv section --config case.json [--grid-s 512]
//
// Exit status: 0 gates pass, 1 a gate failed, 2 bad input, 3 solver error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ksv/config.hpp"
#include "ksv/errors.hpp"

namespace {

struct Overrides {
  std::optional<std::string> mode;
  std::optional<std::size_t> grid_s;
  std::optional<std::size_t> grid_z;
  std::optional<std::string> out;
  std::optional<std::string> psi_variant;
};

void add_common(CLI::App* cmd, std::string& config, Overrides& o) {
  cmd->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  cmd->add_option("--grid-s", o.grid_s, "arc-length samples (even, >= 64)");
  cmd->add_option("--out", o.out, "output directory");
}

ksv::RunConfig configure(const std::string& path, const Overrides& o) {
  ksv::RunConfig cfg = ksv::load_config(path);
  if (o.mode) cfg.mode = ksv::parse_run_mode(*o.mode);
  if (o.grid_s) cfg.grid_s = *o.grid_s;
  if (o.grid_z) cfg.grid_z = *o.grid_z;
  if (o.out) cfg.output.dir = *o.out;
  if (o.psi_variant) cfg.psi_variant = ksv::parse_psi_variant(*o.psi_variant);
  ksv::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form Saint-Venant solutions for thin cylindrical shells"};
  app.require_subcommand(1);

  std::string config;
  std::string table;
  Overrides o;

  CLI::App* solve = app.add_subcommand("solve", "solve, verify and write field tables and a summary");
  add_common(solve, config, o);
  solve->add_option("--mode", o.mode, "exact | thin | circular | all");
  solve->add_option("--grid-z", o.grid_z, "z-stations over the tube length (>= 2)");
  solve->add_option("--psi-variant", o.psi_variant, "corollary | flexure-fn (circular field table)");

  CLI::App* verify = app.add_subcommand("verify", "re-certify a saved field table");
  add_common(verify, config, o);
  verify->add_option("--table", table, "field table written by solve")->required()->check(CLI::ExistingFile);

  CLI::App* section = app.add_subcommand("section", "section properties only");
  add_common(section, config, o);

  CLI11_PARSE(app, argc, argv);

  try {
    const ksv::RunConfig cfg = configure(config, o);
    if (*solve) {
      const ksv::RunResult r = ksv::run_case(cfg);
      std::cout << r.summary;
      for (const auto& a : r.artifacts) std::cerr << "wrote " << a << "\n";
      for (const auto& f : r.failed_gates) std::cerr << "gate failed: " << f << "\n";
      return r.exit_status;
    }
    if (*verify) {
      const ksv::RunResult r = ksv::verify_table(cfg, table);
      std::cout << r.summary;
      if (o.out) {
        std::filesystem::create_directories(*o.out);
        std::ofstream(std::filesystem::path(*o.out) / "verify.json") << r.summary;
      }
      for (const auto& f : r.failed_gates) std::cerr << "gate failed: " << f << "\n";
      return r.exit_status;
    }
    std::cout << ksv::section_summary(cfg);
    return 0;
  } catch (const ksv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ksv::ValidationError& e) {
    std::cerr << "invalid " << e.field() << ": " << e.what() << "\n";
    return 2;
  } catch (const ksv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
