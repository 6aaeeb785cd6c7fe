#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refl1d/commands.hpp"
#include "refl1d/error.hpp"

namespace {

std::vector<double> parse_epsilons(const std::string& list) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string tok = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      refl1d::fail(refl1d::ErrKind::config, "--epsilons: bad number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local solution behind a reflected shock (1D barotropic flow)"};
  app.require_subcommand(1);

  std::string config_path, out_dir, epsilons;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "path to the run configuration")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
  };
  CLI::App* hugoniot = app.add_subcommand("hugoniot", "reflection-point data as JSON");
  CLI::App* solve = app.add_subcommand("solve", "run the fixed-point solver, write CSV/JSON");
  CLI::App* verify = app.add_subcommand("verify", "re-solve and run every independent check");
  CLI::App* sweep = app.add_subcommand("sweep", "convergence study over a list of extents");
  add_common(hugoniot);
  add_common(solve);
  add_common(verify);
  add_common(sweep);
  sweep->add_option("--epsilons", epsilons, "comma-separated list of extents")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    refl1d::RunConfig cfg = refl1d::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (hugoniot->parsed()) return refl1d::cmd_hugoniot(cfg);
    if (solve->parsed()) return refl1d::cmd_solve(cfg);
    if (verify->parsed()) return refl1d::cmd_verify(cfg);
    if (sweep->parsed()) return refl1d::cmd_sweep(cfg, parse_epsilons(epsilons));
  } catch (const refl1d::Error& e) {
    nlohmann::ordered_json j;
    j["error"]["kind"] = refl1d::kind_name(e.kind());
    j["error"]["message"] = e.what();
    std::cout << j.dump(2) << "\n";
    return refl1d::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
