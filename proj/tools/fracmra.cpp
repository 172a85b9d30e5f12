#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "fracmra/cli.hpp"

namespace cli = fracmra::cli;

int main(int argc, char** argv) {
  CLI::App app{"Fractional multiresolution analysis toolkit"};
  app.require_subcommand(1);

  cli::RunConfig config;
  const std::map<std::string, cli::OutputFormat> formats{{"json", cli::OutputFormat::json},
                                                          {"csv", cli::OutputFormat::csv}};
  const std::vector<std::tuple<std::string, cli::Command, std::string>> commands{
      {"frft", cli::Command::frft, "fractional Fourier transform of a signal"},
      {"validate", cli::Command::validate, "scaling-function verdict report"},
      {"orthonormalize", cli::Command::orthonormalize, "periodization before and after orthonormalization"},
      {"gram", cli::Command::gram, "Gram matrix of the chirped translates"},
      {"framebounds", cli::Command::framebounds, "admissibility and frame ratio estimates"},
      {"report", cli::Command::report, "verdict report with plot data"},
      {"cwt", cli::Command::cwt, "continuous fractional wavelet transform table"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, command, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--alpha", config.alpha, "transform order in radians");
    sub->add_option("--scaling", config.scaling, "haar | shannon | bspline<m>, prefix on: to orthonormalize");
    sub->add_option("--wavelet", config.wavelet, "haar | shannon | mexican_hat | gaussian | derived:<scaling>");
    sub->add_option("--signal", config.signal, "gaussian | chirp | rectangle | hermite | random | CSV path");
    sub->add_option("--grid-n", config.grid_n, "samples, power of two >= 256");
    sub->add_option("--domain", config.domain_half_width, "half width of the time grid");
    sub->add_option("--tol", config.tol, "verdict tolerance");
    sub->add_option("--seed", config.seed, "seed for random signals");
    sub->add_option("--trials", config.trials, "frame estimate trials");
    sub->add_option("--out", config.out_path, "output file (default stdout)");
    sub->add_option("--format", config.format, "json | csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->callback([&config, command = command] { config.command = command; });
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << cli::error_json("UsageError", e.what());
    return cli::kExitFailure;
  }

  const auto outcome = cli::run(config);
  if (!outcome.error.empty()) std::cerr << outcome.error;
  if (config.out_path.empty()) std::cout << outcome.artifact;
  return outcome.exit_code;
}
