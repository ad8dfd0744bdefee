#include "esd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "esd/analytic.hpp"
#include "esd/metrics.hpp"
#include "esd/qmat.hpp"

namespace esd {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

std::optional<double> kappa_arg(const RunConfig& c) {
  if (c.channel_kind == ChannelKind::Combined) return c.kappa;
  return std::nullopt;
}

void validate(const RunConfig& c) {
  if (c.grid_size < 2) {
    throw std::invalid_argument("grid size must be at least 2");
  }
  if (!(c.alpha > 0.0) || !(c.alpha < kPi / 2.0)) {
    throw std::invalid_argument("alpha must lie strictly between 0 and pi/2");
  }
  if (c.kappa < 0.0) {
    throw std::invalid_argument("kappa must be nonnegative");
  }
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string prepend_out_dir(const std::string& name) {
  const char* dir = std::getenv("ESDSIM_OUT_DIR");
  if (dir != nullptr && dir[0] != '\0') return std::string(dir) + "/" + name;
  return name;
}

// Filename fragment: digits stay, '.' becomes 'p', sign marks become 'm'.
std::string number_tag(double v) {
  std::string s;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  for (const char* q = buf; *q; ++q) {
    if (*q == '.') s += 'p';
    else if (*q == '-') s += 'm';
    else if (*q == '+') continue;
    else s += *q;
  }
  return s;
}

std::vector<SweepRecord> compute_sweep(const RunConfig& c) {
  const TwoQubitState initial = make_state(c.family, c.alpha);
  std::vector<SweepRecord> out;
  out.reserve(c.grid_size);
  for (std::size_t i = 0; i < c.grid_size; ++i) {
    const double p = double(i) / double(c.grid_size - 1);
    SweepRecord rec;
    rec.p = p;
    const Scenario unc =
        Scenario::at(c.channel_kind, CodeKind::None, p, kappa_arg(c));
    const ComplexMatrix rho_u = evolve_pair(initial, unc);
    rec.c_unc = clamp01(concurrence(rho_u));
    rec.f_unc = clamp01(fidelity_with_initial(rho_u, initial));
    if (c.code == CodeKind::None) {
      rec.c_cor = rec.c_unc;
      rec.f_cor = rec.f_unc;
    } else {
      const Scenario cor = Scenario::at(c.channel_kind, c.code, p, kappa_arg(c));
      const ComplexMatrix rho_c = evolve_pair(initial, cor);
      rec.c_cor = clamp01(concurrence(rho_c));
      rec.f_cor = clamp01(fidelity_with_initial(rho_c, initial));
    }
    out.push_back(rec);
  }
  return out;
}

bool onset_discrepancy(const OnsetRow& r) {
  if (!r.analytic_available) return false;
  if (r.analytic && r.numeric) return std::abs(*r.analytic - *r.numeric) > 1e-4;
  // An exact 1 marks death only at the endpoint, which the numeric grid
  // (capped below 1) rightly reports as no death at all.
  if (r.analytic && !r.numeric) return *r.analytic != 1.0;
  if (!r.analytic && r.numeric) return true;
  return false;
}

std::vector<OnsetRow> compute_onset(const RunConfig& c) {
  std::vector<OnsetRow> rows;
  rows.reserve(c.grid_size);
  const Scenario proto =
      Scenario::at(c.channel_kind, c.code, 0.0, kappa_arg(c));
  for (std::size_t k = 1; k <= c.grid_size; ++k) {
    OnsetRow row;
    row.alpha = double(k) * kPi / (2.0 * double(c.grid_size + 1));
    if (c.code == CodeKind::None) {
      row.analytic_available = true;
      const auto a =
          esd_onset_analytic(c.family, c.channel_kind, row.alpha, kappa_arg(c));
      if (a) row.analytic = a->value();
    }
    const auto n = esd_onset_numeric(proto, c.family, row.alpha);
    if (n) row.numeric = n->value();
    row.flagged = onset_discrepancy(row);
    rows.push_back(row);
  }
  return rows;
}

void echo_config(std::ostringstream& os, const RunConfig& c,
                 const char* command) {
  os << "# command " << command << '\n';
  os << "# channel " << channel_name(c.channel_kind) << '\n';
  os << "# family " << family_name(c.family) << '\n';
  if (c.command == Command::Sweep) {
    os << "# alpha " << format_number(c.alpha) << '\n';
  }
  if (c.channel_kind == ChannelKind::Combined) {
    os << "# kappa " << format_number(c.kappa) << '\n';
  }
  os << "# code " << code_name(c.code) << '\n';
  os << "# grid " << c.grid_size << '\n';
}

std::string sweep_csv(const RunConfig& c,
                      const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  echo_config(os, c, "sweep");
  os << "p,c_unc,c_cor,f_unc,f_cor\n";
  for (const SweepRecord& r : records) {
    os << format_number(r.p) << ',' << format_number(r.c_unc) << ','
       << format_number(r.c_cor) << ',' << format_number(r.f_unc) << ','
       << format_number(r.f_cor) << '\n';
  }
  return os.str();
}

std::string sweep_json(const RunConfig& c,
                       const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"command\": \"sweep\",\n";
  os << "  \"channel\": \"" << channel_name(c.channel_kind) << "\",\n";
  os << "  \"family\": \"" << family_name(c.family) << "\",\n";
  os << "  \"alpha\": " << format_number(c.alpha) << ",\n";
  if (c.channel_kind == ChannelKind::Combined) {
    os << "  \"kappa\": " << format_number(c.kappa) << ",\n";
  }
  os << "  \"code\": \"" << code_name(c.code) << "\",\n";
  os << "  \"grid\": " << c.grid_size << ",\n";
  os << "  \"records\": [\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    os << "    {\"p\": " << format_number(r.p)
       << ", \"c_unc\": " << format_number(r.c_unc)
       << ", \"c_cor\": " << format_number(r.c_cor)
       << ", \"f_unc\": " << format_number(r.f_unc)
       << ", \"f_cor\": " << format_number(r.f_cor) << '}'
       << (i + 1 < records.size() ? ",\n" : "\n");
  }
  os << "  ]\n";
  os << "}\n";
  return os.str();
}

std::string onset_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("NONE");
}

std::string onset_csv(const RunConfig& c, const std::vector<OnsetRow>& rows) {
  std::ostringstream os;
  echo_config(os, c, "onset-table");
  os << "alpha,analytic,numeric,flag\n";
  for (const OnsetRow& r : rows) {
    os << format_number(r.alpha) << ','
       << (r.analytic_available ? onset_cell(r.analytic) : std::string("NA"))
       << ',' << onset_cell(r.numeric) << ',' << (r.flagged ? '1' : '0')
       << '\n';
  }
  return os.str();
}

std::string onset_json(const RunConfig& c, const std::vector<OnsetRow>& rows) {
  auto cell = [](bool available, const std::optional<double>& v) {
    if (!available) return std::string("\"NA\"");
    if (!v) return std::string("\"NONE\"");
    return format_number(*v);
  };
  std::ostringstream os;
  os << "{\n";
  os << "  \"command\": \"onset-table\",\n";
  os << "  \"channel\": \"" << channel_name(c.channel_kind) << "\",\n";
  os << "  \"family\": \"" << family_name(c.family) << "\",\n";
  if (c.channel_kind == ChannelKind::Combined) {
    os << "  \"kappa\": " << format_number(c.kappa) << ",\n";
  }
  os << "  \"code\": \"" << code_name(c.code) << "\",\n";
  os << "  \"grid\": " << c.grid_size << ",\n";
  os << "  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const OnsetRow& r = rows[i];
    os << "    {\"alpha\": " << format_number(r.alpha)
       << ", \"analytic\": " << cell(r.analytic_available, r.analytic)
       << ", \"numeric\": " << cell(true, r.numeric)
       << ", \"flagged\": " << (r.flagged ? "true" : "false") << '}'
       << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  os << "  ]\n";
  os << "}\n";
  return os.str();
}

std::vector<SweepRecord> figure_series(ChannelKind kind, Family fam,
                                       double alpha, CodeKind code) {
  RunConfig c;
  c.channel_kind = kind;
  c.family = fam;
  c.alpha = alpha;
  c.code = code;
  c.kappa = 1.0;
  c.grid_size = 101;
  return compute_sweep(c);
}

void fig_success(std::ostringstream& os) {
  os << "# figure 1\n";
  os << "# probability that every error stays correctable vs per-bit error"
        " probability\n";
  os << "p,success_4bit,success_9bit\n";
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    os << format_number(p) << ','
       << format_number(code_success_probability(4, 1, p)) << ','
       << format_number(code_success_probability(9, 2, p)) << '\n';
  }
}

void fig_metric_pair(std::ostringstream& os, int id, ChannelKind kind,
                     Family fam, CodeKind code) {
  const auto quarter = figure_series(kind, fam, kPi / 4, code);
  const auto twelfth = figure_series(kind, fam, kPi / 12, code);
  os << "# figure " << id << '\n';
  os << "# channel " << channel_name(kind) << '\n';
  os << "# family " << family_name(fam);
  if (kind == ChannelKind::PD) os << " (psi gives the same curves)";
  os << '\n';
  os << "# code " << code_name(code) << '\n';
  os << "p,c_unc_pi4,c_cor_pi4,f_unc_pi4,f_cor_pi4,"
        "c_unc_pi12,c_cor_pi12,f_unc_pi12,f_cor_pi12\n";
  for (std::size_t i = 0; i < quarter.size(); ++i) {
    const SweepRecord& a = quarter[i];
    const SweepRecord& b = twelfth[i];
    os << format_number(a.p) << ',' << format_number(a.c_unc) << ','
       << format_number(a.c_cor) << ',' << format_number(a.f_unc) << ','
       << format_number(a.f_cor) << ',' << format_number(b.c_unc) << ','
       << format_number(b.c_cor) << ',' << format_number(b.f_unc) << ','
       << format_number(b.f_cor) << '\n';
  }
}

void delta_columns(std::ostringstream& os, const SweepRecord& r) {
  os << ',' << format_number(r.c_cor - r.c_unc) << ','
     << format_number(r.f_cor - r.f_unc);
}

void fig_ad_deltas(std::ostringstream& os) {
  const auto phi4 = figure_series(ChannelKind::AD, Family::Phi, kPi / 4,
                                  CodeKind::Leung4);
  const auto phi12 = figure_series(ChannelKind::AD, Family::Phi, kPi / 12,
                                   CodeKind::Leung4);
  const auto psi4 = figure_series(ChannelKind::AD, Family::Psi, kPi / 4,
                                  CodeKind::Leung4);
  const auto psi12 = figure_series(ChannelKind::AD, Family::Psi, kPi / 12,
                                   CodeKind::Leung4);
  os << "# figure 5\n";
  os << "# corrected minus uncorrected metrics under amplitude damping\n";
  os << "# code leung4\n";
  os << "p,dc_phi_pi4,df_phi_pi4,dc_phi_pi12,df_phi_pi12,"
        "dc_psi_pi4,df_psi_pi4,dc_psi_pi12,df_psi_pi12\n";
  for (std::size_t i = 0; i < phi4.size(); ++i) {
    os << format_number(phi4[i].p);
    delta_columns(os, phi4[i]);
    delta_columns(os, phi12[i]);
    delta_columns(os, psi4[i]);
    delta_columns(os, psi12[i]);
    os << '\n';
  }
}

void fig_pd_deltas(std::ostringstream& os) {
  const auto quarter = figure_series(ChannelKind::PD, Family::Phi, kPi / 4,
                                     CodeKind::Phase3);
  const auto twelfth = figure_series(ChannelKind::PD, Family::Phi, kPi / 12,
                                     CodeKind::Phase3);
  os << "# figure 6\n";
  os << "# corrected minus uncorrected metrics under phase damping\n";
  os << "# code phase3 (both families share these curves)\n";
  os << "p,dc_pi4,df_pi4,dc_pi12,df_pi12\n";
  for (std::size_t i = 0; i < quarter.size(); ++i) {
    os << format_number(quarter[i].p);
    delta_columns(os, quarter[i]);
    delta_columns(os, twelfth[i]);
    os << '\n';
  }
}

void fig_single_noise_onsets(std::ostringstream& os) {
  os << "# figure 7\n";
  os << "# sudden death onset vs mixing angle; psi rows and the uncorrected"
        " pd column never die and are omitted\n";
  os << "alpha,ad_uncorrected,ad_corrected,pd_corrected\n";
  const Scenario ad = Scenario::at(ChannelKind::AD, CodeKind::Leung4, 0.0);
  const Scenario pd = Scenario::at(ChannelKind::PD, CodeKind::Phase3, 0.0);
  for (int k = 1; k <= 31; ++k) {
    const double alpha = k * kPi / 64.0;
    const auto unc = esd_onset_analytic(Family::Phi, ChannelKind::AD, alpha);
    const auto cor_ad = esd_onset_numeric(ad, Family::Phi, alpha);
    const auto cor_pd = esd_onset_numeric(pd, Family::Phi, alpha);
    os << format_number(alpha) << ','
       << onset_cell(unc ? std::optional<double>(unc->value()) : std::nullopt)
       << ','
       << onset_cell(cor_ad ? std::optional<double>(cor_ad->value())
                            : std::nullopt)
       << ','
       << onset_cell(cor_pd ? std::optional<double>(cor_pd->value())
                            : std::nullopt)
       << '\n';
  }
}

void fig_combined_onsets(std::ostringstream& os) {
  os << "# figure 8\n";
  os << "# sudden death onset vs mixing angle under combined noise\n";
  os << "# code laflamme5\n";
  os << "alpha,uncorrected_k1,corrected_k1,uncorrected_k10,corrected_k10\n";
  const Scenario cb1 =
      Scenario::at(ChannelKind::Combined, CodeKind::Laflamme5, 0.0, 1.0);
  const Scenario cb10 =
      Scenario::at(ChannelKind::Combined, CodeKind::Laflamme5, 0.0, 10.0);
  for (int k = 1; k <= 31; ++k) {
    const double alpha = k * kPi / 64.0;
    os << format_number(alpha);
    const auto unc1 =
        esd_onset_analytic(Family::Phi, ChannelKind::Combined, alpha, 1.0);
    const auto cor1 = esd_onset_numeric(cb1, Family::Phi, alpha);
    const auto unc10 =
        esd_onset_analytic(Family::Phi, ChannelKind::Combined, alpha, 10.0);
    const auto cor10 = esd_onset_numeric(cb10, Family::Phi, alpha);
    os << ','
       << onset_cell(unc1 ? std::optional<double>(unc1->value())
                          : std::nullopt)
       << ','
       << onset_cell(cor1 ? std::optional<double>(cor1->value())
                          : std::nullopt)
       << ','
       << onset_cell(unc10 ? std::optional<double>(unc10->value())
                           : std::nullopt)
       << ','
       << onset_cell(cor10 ? std::optional<double>(cor10->value())
                           : std::nullopt)
       << '\n';
  }
}

}  // namespace

std::vector<SweepRecord> run_sweep(const RunConfig& config) {
  RunConfig c = config;
  c.command = Command::Sweep;
  validate(c);
  const std::vector<SweepRecord> records = compute_sweep(c);
  const std::string body =
      c.format == OutputFormat::Csv ? sweep_csv(c, records)
                                    : sweep_json(c, records);
  write_text_file(resolve_output_path(c), body);
  return records;
}

std::vector<OnsetRow> run_onset_table(const RunConfig& config) {
  RunConfig c = config;
  c.command = Command::OnsetTable;
  validate(c);
  const std::vector<OnsetRow> rows = compute_onset(c);
  const std::string body = c.format == OutputFormat::Csv
                               ? onset_csv(c, rows)
                               : onset_json(c, rows);
  write_text_file(resolve_output_path(c), body);
  return rows;
}

std::string run_figure(int fig_id, const std::string& output_path) {
  if (fig_id < 1 || fig_id > 8) {
    throw std::invalid_argument("figure id must be between 1 and 8");
  }
  std::ostringstream os;
  switch (fig_id) {
    case 1:
      fig_success(os);
      break;
    case 2:
      fig_metric_pair(os, 2, ChannelKind::AD, Family::Phi, CodeKind::Leung4);
      break;
    case 3:
      fig_metric_pair(os, 3, ChannelKind::AD, Family::Psi, CodeKind::Leung4);
      break;
    case 4:
      fig_metric_pair(os, 4, ChannelKind::PD, Family::Phi, CodeKind::Phase3);
      break;
    case 5:
      fig_ad_deltas(os);
      break;
    case 6:
      fig_pd_deltas(os);
      break;
    case 7:
      fig_single_noise_onsets(os);
      break;
    default:
      fig_combined_onsets(os);
      break;
  }
  const std::string path =
      output_path.empty()
          ? prepend_out_dir("fig" + std::to_string(fig_id) + ".csv")
          : output_path;
  write_text_file(path, os.str());
  return path;
}

double parse_angle(const std::string& text) {
  const auto fail = [&text]() {
    throw std::invalid_argument("cannot parse angle: " + text);
  };
  try {
    const std::size_t pos = text.find("pi");
    if (pos == std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) fail();
      return v;
    }
    double mult = 1.0;
    if (pos > 0) {
      const std::string head = text.substr(0, pos);
      std::size_t used = 0;
      mult = std::stod(head, &used);
      if (used != head.size()) fail();
    }
    double divisor = 1.0;
    if (pos + 2 < text.size()) {
      if (text[pos + 2] != '/') fail();
      const std::string tail = text.substr(pos + 3);
      if (tail.empty()) fail();
      std::size_t used = 0;
      divisor = std::stod(tail, &used);
      if (used != tail.size()) fail();
      if (divisor == 0.0) fail();
    }
    return mult * kPi / divisor;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle: " + text);
  }
  return 0.0;
}

CodeKind default_code(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AD:
      return CodeKind::Leung4;
    case ChannelKind::PD:
      return CodeKind::Phase3;
    case ChannelKind::Combined:
      return CodeKind::Laflamme5;
  }
  throw std::invalid_argument("unknown channel kind");
}

std::string resolve_output_path(const RunConfig& config) {
  if (!config.output_path.empty()) return config.output_path;
  const char* ext = config.format == OutputFormat::Csv ? ".csv" : ".json";
  std::string name;
  if (config.command == Command::Sweep) {
    name = "sweep_" + channel_name(config.channel_kind) + "_" +
           family_name(config.family) + "_a" + number_tag(config.alpha) + "_" +
           code_name(config.code);
  } else {
    name = "onset_" + channel_name(config.channel_kind) + "_" +
           family_name(config.family) + "_" + code_name(config.code);
  }
  if (config.channel_kind == ChannelKind::Combined) {
    name += "_k" + number_tag(config.kappa);
  }
  return prepend_out_dir(name + ext);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // collapse the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AD:
      return "ad";
    case ChannelKind::PD:
      return "pd";
    case ChannelKind::Combined:
      return "combined";
  }
  return "?";
}

std::string family_name(Family family) {
  return family == Family::Phi ? "phi" : "psi";
}

std::string code_name(CodeKind code) {
  switch (code) {
    case CodeKind::None:
      return "none";
    case CodeKind::Leung4:
      return "leung4";
    case CodeKind::Phase3:
      return "phase3";
    case CodeKind::Laflamme5:
      return "laflamme5";
  }
  return "?";
}

ChannelKind parse_channel(const std::string& text) {
  if (text == "ad") return ChannelKind::AD;
  if (text == "pd") return ChannelKind::PD;
  if (text == "combined") return ChannelKind::Combined;
  throw std::invalid_argument("unknown channel: " + text);
}

Family parse_family(const std::string& text) {
  if (text == "phi") return Family::Phi;
  if (text == "psi") return Family::Psi;
  throw std::invalid_argument("unknown family: " + text);
}

CodeKind parse_code(const std::string& text) {
  if (text == "none") return CodeKind::None;
  if (text == "leung4") return CodeKind::Leung4;
  if (text == "phase3") return CodeKind::Phase3;
  if (text == "laflamme5") return CodeKind::Laflamme5;
  throw std::invalid_argument("unknown code: " + text);
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format: " + text);
}

}  // namespace esd
