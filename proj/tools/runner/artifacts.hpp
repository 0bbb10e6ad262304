#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace lowrank::runner {

/// RFC 4180 style CSV preceded by a "# lowrank-csv v1 <name>" schema line.
/// Numbers are written with 17 significant digits so files are reproducible
/// bit for bit.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& name, const std::vector<std::string>& columns);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(long value);
  CsvWriter& operator<<(int value) { return *this << static_cast<long>(value); }
  CsvWriter& operator<<(const std::string& value);
  void end_row();

 private:
  void separator();

  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

inline constexpr const char* kCsvVersion = "v1";

void write_moments(const std::filesystem::path& path, const BgkRun& run);
void write_steps(const std::filesystem::path& path, const BgkRun& run);
void write_relax_error(const std::filesystem::path& path, const BgkRun& run);
void write_advection_error(const std::filesystem::path& path, const AdvectionRun& run);
void write_heatmap(const std::filesystem::path& path, const std::vector<HeatmapCell>& cells);
void write_scaling(const std::filesystem::path& path, const std::vector<ScalingRow>& rows);

}  // namespace lowrank::runner
