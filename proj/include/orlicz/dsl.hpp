#pragma once

#include "orlicz/bilinear.hpp"
#include "orlicz/function_lab.hpp"
#include "orlicz/young.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace orlicz {

// Spec strings shared by the CLI and the experiment configs.
//
// Young:    power:p=2 | powerp:p=3 | exp | window:c=2 | linear:c=0.5
//           | complement(<young>) | @file.csv (columns x,y)
// Function: indicator:a=4[,start=0] | gaussian:s=1[,c=0,xi0=0] | sinc:w=1
//           | bl_gauss[:xi0=0] | @file.csv (columns x,re,im)
// Symbol:   constant:c=1 | difference:gauss[:w=1,c=0] | difference:bump[:w=1,c=0]
//           | difference:sign:W=4 | difference:@file.csv (columns v,re,im)
//           | measure:delta@t,w;delta@t,w[:alpha=1,beta=-1]
//
// Malformed specs throw std::invalid_argument naming the offending part.

[[nodiscard]] YoungFunction parse_young(const std::string& spec);
/// Presets are sampled on `grid`; CSV input carries its own grid.
[[nodiscard]] SampledFunction parse_function(const std::string& spec, const Grid& grid);
[[nodiscard]] Symbol parse_symbol(const std::string& spec);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index by name; throws std::invalid_argument when absent.
  [[nodiscard]] std::size_t column(const std::string& name) const;
};

/// Reals as 17 significant digits; inf, -inf and nan spelled out.
[[nodiscard]] std::string format_real(double v);
[[nodiscard]] double parse_real(const std::string& text);

[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);
[[nodiscard]] std::string to_csv(const CsvTable& table);
void write_text(const std::filesystem::path& path, const std::string& text);

/// x,re,im rows; the grid is recovered from the x column.
[[nodiscard]] SampledFunction read_function_csv(const std::filesystem::path& path);
[[nodiscard]] CsvTable function_table(const SampledFunction& f);

}  // namespace orlicz
