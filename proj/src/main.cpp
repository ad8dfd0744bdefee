#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "esd/cli.hpp"
#include "esd/qmat.hpp"

int main(int argc, char** argv) {
  CLI::App app{"two-qubit entanglement under damping noise,"
               " with and without local error correction"};
  app.require_subcommand(1);

  std::string channel = "ad";
  std::string family = "phi";
  std::string alpha = "pi/4";
  std::string code = "auto";
  std::string format = "csv";
  std::string out;
  double kappa = 1.0;
  std::size_t grid = 101;
  int fig_id = 0;

  auto add_common = [&](CLI::App* sub, bool with_alpha) {
    sub->add_option("--channel", channel, "noise kind: ad, pd, combined");
    sub->add_option("--family", family, "initial state family: phi, psi");
    if (with_alpha) {
      sub->add_option("--alpha", alpha,
                      "mixing angle in radians, or a pi/N literal");
    }
    sub->add_option("--kappa", kappa,
                    "dephasing to damping rate ratio, combined channel only");
    sub->add_option("--code", code,
                    "none, leung4, phase3, laflamme5, or auto per channel");
    sub->add_option("--grid", grid, "number of grid points");
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--out", out, "output path");
  };

  CLI::App* sweep =
      app.add_subcommand("sweep", "metrics vs error probability");
  add_common(sweep, true);
  CLI::App* onset = app.add_subcommand(
      "onset-table", "sudden death onset vs mixing angle");
  add_common(onset, false);
  CLI::App* figure = app.add_subcommand(
      "figure", "emit the data series behind one stock figure");
  figure->add_option("id", fig_id, "figure number, 1 through 8")->required();
  figure->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (figure->parsed()) {
      std::cout << "wrote " << esd::run_figure(fig_id, out) << '\n';
      return 0;
    }
    esd::RunConfig cfg;
    cfg.command =
        sweep->parsed() ? esd::Command::Sweep : esd::Command::OnsetTable;
    cfg.channel_kind = esd::parse_channel(channel);
    cfg.family = esd::parse_family(family);
    cfg.alpha = esd::parse_angle(alpha);
    cfg.kappa = kappa;
    cfg.code = code == "auto" ? esd::default_code(cfg.channel_kind)
                              : esd::parse_code(code);
    cfg.grid_size = grid;
    cfg.format = esd::parse_format(format);
    cfg.output_path = out;
    if (cfg.command == esd::Command::Sweep) {
      esd::run_sweep(cfg);
    } else {
      esd::run_onset_table(cfg);
    }
    std::cout << "wrote " << esd::resolve_output_path(cfg) << '\n';
    return 0;
  } catch (const esd::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const esd::ComputeError& e) {
    std::cerr << "compute error: " << e.what() << '\n';
    return 3;
  } catch (const esd::DimensionError& e) {
    std::cerr << "compute error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
