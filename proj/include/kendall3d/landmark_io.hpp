// landmark_io.hpp — landmark configurations and simulated samples on disk.
//
// Configuration files:
//   CSV   one landmark per line, "x,y,z"; an optional first line "x,y,z" is
//         treated as a header.
//   JSON  {"name": "...", "landmarks": [[x, y, z], ...]}; name optional.
// Sample files:
//   JSON  [{"landmarks": [[x,y,z],...], "preshape": [[..],...]}, ...]
//   CSV   header l1_x,l1_y,l1_z,...,lk_z (configurations) or
//         z1_x,...(pre-shapes), then one flattened sample per line.
// CSV numbers are written with 17 significant digits; JSON uses the
// shortest representation that round-trips.

#pragma once

#include "kendall3d/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kendall3d {

enum class FileFormat { Csv, Json };

/// From the file extension (.csv / .json); InvalidArgument otherwise.
FileFormat format_from_path(const std::filesystem::path& path);
/// Parses "csv" or "json".
FileFormat parse_format(std::string_view name);

struct LandmarkFile {
  std::optional<std::string> name;
  Configuration configuration;
};

LandmarkFile parse_landmark_file(std::string_view text, FileFormat format);
LandmarkFile read_landmark_file(const std::filesystem::path& path,
                                std::optional<FileFormat> format = std::nullopt);
Configuration read_configuration(const std::filesystem::path& path,
                                 std::optional<FileFormat> format = std::nullopt);

std::string format_configuration(const Configuration& config, FileFormat format,
                                 const std::optional<std::string>& name = std::nullopt);
void write_configuration(const Configuration& config, const std::filesystem::path& path,
                         FileFormat format, const std::optional<std::string>& name = std::nullopt);

struct SampleWriteOptions {
  bool include_landmarks = true;
  bool include_preshape = true;
};

struct SampleRecord {
  std::optional<ShapeMatrix> landmarks;
  std::optional<ShapeMatrix> preshape;
};

std::string format_samples(const std::vector<PreShape>& samples, FileFormat format,
                           const SampleWriteOptions& options = {});
void write_samples(const std::vector<PreShape>& samples, const std::filesystem::path& path,
                   FileFormat format, const SampleWriteOptions& options = {});

std::vector<SampleRecord> parse_samples(std::string_view text, FileFormat format);
std::vector<SampleRecord> read_samples(const std::filesystem::path& path,
                                       std::optional<FileFormat> format = std::nullopt);

}  // namespace kendall3d
