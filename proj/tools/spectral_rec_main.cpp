#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spectral_rec/commands.hpp"
#include "spectral_rec/config.hpp"
#include "spectral_rec/error.hpp"

namespace {

int code(spectral_rec::ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  using namespace spectral_rec;

  CLI::App app{"Topological recursion, free energies and WKB quantization on rational spectral curves"};
  app.require_subcommand(1);
  bool h_model = false;
  app.add_flag("--h-model", h_model, "Rescale y by 1/2");

  std::string config_path;
  std::string out_dir = ".";
  std::string suite = "all";
  int order = 0;

  auto* compute = app.add_subcommand("compute", "Compute correlators, free energies and WKB terms");
  compute->add_option("config", config_path, "Curve configuration (TOML)")->required();
  compute->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("config", config_path, "Curve configuration (TOML)")->required();
  verify->add_option("--suite", suite, "correlators | free-energies | wkb | all")
      ->check(CLI::IsMember({"correlators", "free-energies", "wkb", "all"}));
  verify->add_option("--out", out_dir, "Directory holding a cached w.json");

  auto* wkb = app.add_subcommand("wkb", "Print the WKB expansion");
  wkb->add_option("config", config_path, "Curve configuration (TOML)")->required();
  wkb->add_option("--order", order, "Highest S_m")->required()->check(CLI::Range(2, 256));
  std::string wkb_out;
  wkb->add_option("--out", wkb_out, "Also write wkb.json into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::kInvalidInput);
  }

  const RunOptions options{h_model, 0};
  try {
    const CurveConfig config = load_config(config_path);
    if (*compute) {
      for (const auto& p : run_compute(config, out_dir, options)) std::cout << p.string() << '\n';
      return code(ExitCode::kSuccess);
    }
    if (*verify) return code(run_verify(config, suite, out_dir, std::cout, options));
    std::ostringstream doc;
    run_wkb(config, order, doc, options);
    std::cout << doc.str();
    if (!wkb_out.empty()) {
      std::filesystem::create_directories(wkb_out);
      std::ofstream(std::filesystem::path(wkb_out) / "wkb.json", std::ios::binary) << doc.str();
    }
    return code(ExitCode::kSuccess);
  } catch (const Error& e) {
    std::cerr << "spectral-rec: " << e.what() << '\n';
    return code(exit_code(e.kind()));
  } catch (const std::exception& e) {
    std::cerr << "spectral-rec: " << e.what() << '\n';
    return code(ExitCode::kInternalError);
  }
}
