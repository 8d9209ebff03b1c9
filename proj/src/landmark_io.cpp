// landmark_io.cpp — CSV and JSON readers/writers.

#include "kendall3d/landmark_io.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/shape_core.hpp"
#include "kendall3d/simulation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kendall3d {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& field, int line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || p != last || field.empty() || !std::isfinite(value))
    throw ParseError("line " + std::to_string(line) + ": '" + field + "' is not a finite number",
                     line);
  return value;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::string number17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_to_json(const ShapeMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

ShapeMatrix matrix_from_json(const json& rows, const std::string& what) {
  if (!rows.is_array()) throw ParseError(what + " must be an array of [x, y, z] triples", 0);
  ShapeMatrix m(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != 3)
      throw ParseError(what + " entry " + std::to_string(r + 1) + " must have exactly 3 numbers", 0);
    for (int c = 0; c < 3; ++c) {
      if (!row[c].is_number())
        throw ParseError(what + " entry " + std::to_string(r + 1) + " has a non-numeric value", 0);
      m(static_cast<Eigen::Index>(r), c) = row[c].get<double>();
    }
  }
  return m;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

}  // namespace

FileFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".csv") return FileFormat::Csv;
  if (ext == ".json") return FileFormat::Json;
  throw InvalidArgument("cannot infer file format from '" + path.string() +
                        "' (use .csv or .json, or pass the format explicitly)");
}

FileFormat parse_format(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "csv") return FileFormat::Csv;
  if (n == "json") return FileFormat::Json;
  throw InvalidArgument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

LandmarkFile parse_landmark_file(std::string_view text, FileFormat format) {
  if (format == FileFormat::Json) {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("landmarks"))
      throw ParseError("JSON configuration must be an object with a \"landmarks\" array", 0);
    std::optional<std::string> name;
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string", 0);
      name = doc["name"].get<std::string>();
    }
    return {name, Configuration(matrix_from_json(doc["landmarks"], "landmark"))};
  }

  std::vector<std::array<double, 3>> rows;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (t.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      std::string compact;
      for (char ch : lower(t))
        if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
      if (compact == "x,y,z") continue;
    }
    const auto fields = split_fields(t);
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(line) + ": expected 3 comma-separated values, got " +
                           std::to_string(fields.size()),
                       line);
    rows.push_back({parse_number(fields[0], line), parse_number(fields[1], line),
                    parse_number(fields[2], line)});
  }
  ShapeMatrix m(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < 3; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][c];
  return {std::nullopt, Configuration(std::move(m))};
}

LandmarkFile read_landmark_file(const std::filesystem::path& path,
                                std::optional<FileFormat> format) {
  const FileFormat f = format.value_or(format_from_path(path));
  try {
    return parse_landmark_file(read_text(path), f);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    rethrow_with_context(e, path.string());
  }
}

Configuration read_configuration(const std::filesystem::path& path,
                                 std::optional<FileFormat> format) {
  return read_landmark_file(path, format).configuration;
}

std::string format_configuration(const Configuration& config, FileFormat format,
                                 const std::optional<std::string>& name) {
  const ShapeMatrix& p = config.points();
  if (format == FileFormat::Json) {
    json doc = json::object();
    if (name) doc["name"] = *name;
    doc["landmarks"] = matrix_to_json(p);
    return doc.dump(2) + "\n";
  }
  std::string out = "x,y,z\n";
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    out += number17(p(r, 0)) + "," + number17(p(r, 1)) + "," + number17(p(r, 2)) + "\n";
  return out;
}

void write_configuration(const Configuration& config, const std::filesystem::path& path,
                         FileFormat format, const std::optional<std::string>& name) {
  write_text(path, format_configuration(config, format, name));
}

std::string format_samples(const std::vector<PreShape>& samples, FileFormat format,
                           const SampleWriteOptions& options) {
  if (!options.include_landmarks && !options.include_preshape)
    throw InvalidArgument("format_samples: nothing to write");
  const int k = samples.empty() ? 0 : samples.front().k();
  std::vector<Configuration> configs;
  if (options.include_landmarks && !samples.empty()) configs = samples_to_configurations(samples, k);

  if (format == FileFormat::Json) {
    json doc = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      json rec = json::object();
      if (options.include_landmarks) rec["landmarks"] = matrix_to_json(configs[i].points());
      if (options.include_preshape) rec["preshape"] = matrix_to_json(samples[i].matrix());
      doc.push_back(std::move(rec));
    }
    return doc.dump(2) + "\n";
  }

  // CSV carries one matrix per row: the configuration when requested,
  // otherwise the pre-shape.
  const bool landmarks = options.include_landmarks;
  const char prefix = landmarks ? 'l' : 'z';
  const int rows = samples.empty() ? 0 : (landmarks ? k : k - 1);
  std::string out;
  for (int r = 0; r < rows; ++r) {
    for (const char* axis : {"x", "y", "z"}) {
      if (!out.empty()) out += ',';
      out += prefix + std::to_string(r + 1) + "_" + axis;
    }
  }
  out += '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ShapeMatrix& m = landmarks ? configs[i].points() : samples[i].matrix();
    std::string line;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (int c = 0; c < 3; ++c) {
        if (!line.empty()) line += ',';
        line += number17(m(r, c));
      }
    out += line + '\n';
  }
  return out;
}

void write_samples(const std::vector<PreShape>& samples, const std::filesystem::path& path,
                   FileFormat format, const SampleWriteOptions& options) {
  write_text(path, format_samples(samples, format, options));
}

std::vector<SampleRecord> parse_samples(std::string_view text, FileFormat format) {
  std::vector<SampleRecord> out;
  if (format == FileFormat::Json) {
    const json doc = parse_json(text);
    if (!doc.is_array()) throw ParseError("sample file must be a JSON array", 0);
    for (const json& rec : doc) {
      if (!rec.is_object()) throw ParseError("sample records must be objects", 0);
      SampleRecord r;
      if (rec.contains("landmarks")) r.landmarks = matrix_from_json(rec["landmarks"], "landmark");
      if (rec.contains("preshape")) r.preshape = matrix_from_json(rec["preshape"], "preshape row");
      out.push_back(std::move(r));
    }
    return out;
  }

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::vector<std::string> header;
  while (std::getline(in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (header.empty()) {
      if (t.empty()) continue;
      header = split_fields(t);
      if (header.size() % 3 != 0 || header[0].empty() || (header[0][0] != 'l' && header[0][0] != 'z'))
        throw ParseError("line " + std::to_string(line) +
                             ": expected a sample header of l<i>_<axis> or z<i>_<axis> columns",
                         line);
      continue;
    }
    if (t.empty()) continue;
    const auto fields = split_fields(t);
    if (fields.size() != header.size())
      throw ParseError("line " + std::to_string(line) + ": expected " +
                           std::to_string(header.size()) + " values, got " +
                           std::to_string(fields.size()),
                       line);
    ShapeMatrix m(static_cast<Eigen::Index>(fields.size() / 3), 3);
    for (std::size_t f = 0; f < fields.size(); ++f)
      m(static_cast<Eigen::Index>(f / 3), static_cast<Eigen::Index>(f % 3)) =
          parse_number(fields[f], line);
    SampleRecord r;
    (header[0][0] == 'l' ? r.landmarks : r.preshape) = std::move(m);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SampleRecord> read_samples(const std::filesystem::path& path,
                                       std::optional<FileFormat> format) {
  return parse_samples(read_text(path), format.value_or(format_from_path(path)));
}

}  // namespace kendall3d
