// Run configuration, sweep/onset/figure engines, and deterministic CSV/JSON
// emission. The binary front end is a thin argument parser over these.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "esd/pipeline.hpp"

namespace esd {

enum class Command { Sweep, OnsetTable, Figure };
enum class OutputFormat { Csv, Json };

// One plotted point: uncorrected and corrected metrics at probability p.
struct SweepRecord {
  double p = 0.0;
  double c_unc = 0.0;
  double c_cor = 0.0;
  double f_unc = 0.0;
  double f_cor = 0.0;
};

// One onset-table row. analytic_available is false when no closed form
// covers the scenario (any corrected run); an engaged optional is a finite
// onset and a disengaged one means no sudden death. flagged marks rows
// where the two columns disagree by more than 1e-4, treating an analytic
// value of exactly 1 and a numeric NONE as the same statement.
struct OnsetRow {
  double alpha = 0.0;
  bool analytic_available = false;
  std::optional<double> analytic;
  std::optional<double> numeric;
  bool flagged = false;
};

struct RunConfig {
  Command command = Command::Sweep;
  ChannelKind channel_kind = ChannelKind::AD;
  Family family = Family::Phi;
  double alpha = 0.78539816339744831;
  double kappa = 1.0;
  CodeKind code = CodeKind::None;
  std::size_t grid_size = 101;
  std::string output_path;  // empty: derived from the rest of the config
  OutputFormat format = OutputFormat::Csv;
};

// Evaluates both pipelines on grid_size evenly spaced p values spanning
// [0,1], writes the records to the configured destination, and returns
// them. With no code selected the corrected columns repeat the uncorrected
// ones. Rejects alpha outside (0, pi/2) and grid_size < 2 before any
// computation; write failures raise IoError naming the path.
std::vector<SweepRecord> run_sweep(const RunConfig& config);

// One row per alpha on the interior grid k*pi/(2*(grid_size+1)),
// k = 1..grid_size. Writes and returns the rows.
std::vector<OnsetRow> run_onset_table(const RunConfig& config);

// Emits the CSV data series behind one of the eight stock figures and
// returns the path written. An empty output_path derives a default name.
// fig_id outside 1..8 raises std::invalid_argument.
std::string run_figure(int fig_id, const std::string& output_path);

// Accepts a plain real number or the literal forms "pi/N" and "Mpi/N".
double parse_angle(const std::string& text);

// The code conventionally paired with each channel kind.
CodeKind default_code(ChannelKind kind);

// Filename derived from the config, prefixed by the ESDSIM_OUT_DIR
// environment variable when it is set. An explicit output_path is
// returned untouched.
std::string resolve_output_path(const RunConfig& config);

// Fixed 12-significant-digit formatting shared by every writer.
std::string format_number(double v);

// Name <-> enum plumbing shared by the front end and the writers.
std::string channel_name(ChannelKind kind);
std::string family_name(Family family);
std::string code_name(CodeKind code);
ChannelKind parse_channel(const std::string& text);
Family parse_family(const std::string& text);
CodeKind parse_code(const std::string& text);
OutputFormat parse_format(const std::string& text);

}  // namespace esd
