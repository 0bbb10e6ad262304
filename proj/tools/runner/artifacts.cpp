#include "artifacts.hpp"

#include <cstdio>

#include "lowrank/errors.hpp"

namespace lowrank::runner {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& name,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), columns_(columns.size()) {
  if (!out_) throw ConfigError("cannot write " + path.string());
  out_ << "# lowrank-csv " << kCsvVersion << ' ' << name << "\r\n";
  for (const auto& c : columns) *this << c;
  end_row();
}

void CsvWriter::separator() {
  if (filled_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out_ << buf;
  return *this;
}

CsvWriter& CsvWriter::operator<<(long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& value) {
  separator();
  if (value.find_first_of(",\"\r\n") == std::string::npos) {
    out_ << value;
    return *this;
  }
  out_ << '"';
  for (char ch : value) {
    if (ch == '"') out_ << '"';
    out_ << ch;
  }
  out_ << '"';
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw InvalidStateError("CsvWriter: row has the wrong number of fields");
  out_ << "\r\n";
  filled_ = 0;
}

void write_moments(const std::filesystem::path& path, const BgkRun& run) {
  CsvWriter csv(path, "moments",
                {"step", "t_over_tau", "mean_density", "mean_u1", "mean_u2", "mean_u3", "mean_temperature", "nmae"});
  for (const auto& r : run.records) {
    csv << r.step << r.time << r.moments.mean_density << r.moments.mean_velocity[0] << r.moments.mean_velocity[1]
        << r.moments.mean_velocity[2] << r.moments.mean_temperature << r.nmae;
    csv.end_row();
  }
}

void write_steps(const std::filesystem::path& path, const BgkRun& run) {
  CsvWriter csv(path, "steps",
                {"step", "sweeps", "eps_conv", "converged", "lsqr_unconverged", "assemble_s", "solve_s", "wall_s"});
  for (const auto& r : run.records) {
    if (r.step == 0) continue;
    csv << r.step << r.report.sweeps << r.report.eps_conv << (r.report.converged ? 1 : 0) << r.report.lsqr_unconverged
        << r.report.assemble_seconds << r.report.solve_seconds << r.report.wall_seconds;
    csv.end_row();
  }
}

void write_relax_error(const std::filesystem::path& path, const BgkRun& run) {
  CsvWriter csv(path, "relax-error", {"step", "t_over_tau", "nmae"});
  for (const auto& r : run.records) {
    csv << r.step << r.time << r.nmae;
    csv.end_row();
  }
}

void write_advection_error(const std::filesystem::path& path, const AdvectionRun& run) {
  CsvWriter csv(path, "advection-error", {"step", "time", "relative_error", "max_rank", "reduction_error"});
  for (const auto& r : run.records) {
    csv << r.step << r.time << r.relative_error << r.max_rank << r.reduction_error;
    csv.end_row();
  }
}

void write_heatmap(const std::filesystem::path& path, const std::vector<HeatmapCell>& cells) {
  CsvWriter csv(path, "nmae-heatmap", {"modes", "ratio", "b_v", "nmae"});
  for (const auto& c : cells) {
    csv << c.modes << c.ratio << c.b_v << c.nmae;
    csv.end_row();
  }
}

void write_scaling(const std::filesystem::path& path, const std::vector<ScalingRow>& rows) {
  CsvWriter csv(path, "scaling", {"modes", "rank", "dof", "workers", "steps", "assemble_s", "solve_s", "wall_s"});
  for (const auto& r : rows) {
    csv << r.modes << r.rank << r.dof << r.workers << r.steps << r.assemble_seconds << r.solve_seconds
        << r.wall_seconds;
    csv.end_row();
  }
}

}  // namespace lowrank::runner
