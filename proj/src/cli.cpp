// cli.cpp — subcommands as thin compositions of the library operations.

#include "kendall3d/cli.hpp"

#include "kendall3d/cross_check.hpp"
#include "kendall3d/kendall_curvature.hpp"
#include "kendall3d/landmark_io.hpp"
#include "kendall3d/log.hpp"
#include "kendall3d/numeric_oracle.hpp"
#include "kendall3d/shape_core.hpp"
#include "kendall3d/simulation.hpp"
#include "kendall3d/tangent_basis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace kendall3d::cli {
namespace {

using nlohmann::ordered_json;

constexpr double kCheckTolerance = 1e-3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string format;
  std::string output;
  bool json = false;
};

struct BasisOpts {
  double tol = kDefaultKernelTol;
};
struct CurvatureOpts {
  std::string plane;
  std::string u_coords;
  std::string v_coords;
};
struct SimulateOpts {
  double sigma = 0.0;
  int n = 0;
  std::uint64_t seed = 0;
  bool emit_configs = false;
  unsigned threads = 1;
};
struct CheckOpts {
  double step = OracleConfig{}.step;
  int trials = 5;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_output = true) {
  sub->add_option("--input,-i", c.input, "Landmark file (CSV or JSON)")->required();
  sub->add_option("--format", c.format, "Input format: csv or json (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  if (with_output) sub->add_option("--output,-o", c.output, "Write the result to this file");
  sub->add_flag("--json", c.json, "Machine-readable JSON on standard output");
}

LandmarkFile load(const Common& c) {
  std::optional<FileFormat> f;
  if (!c.format.empty()) f = parse_format(c.format);
  return read_landmark_file(c.input, f);
}

ordered_json matrix_json(const ShapeMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

ordered_json vector_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("error writing '" + path + "'");
}

void emit(const Common& c, const ordered_json& doc, const std::string& text, std::ostream& out) {
  if (!c.output.empty()) write_file(c.output, doc.dump(2) + "\n");
  if (c.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

int cmd_preshape(const Common& c, std::ostream& out) {
  const LandmarkFile file = load(c);
  const PreShape z = to_preshape(file.configuration);
  const Eigen::Vector3d s = singular_values(z);
  ordered_json doc;
  doc["command"] = "preshape";
  doc["name"] = file.name ? ordered_json(*file.name) : ordered_json(nullptr);
  doc["k"] = z.k();
  doc["d"] = shape_space_dimension(z.k());
  doc["rank"] = numerical_rank(z);
  doc["singular_values"] = vector_json(s);
  doc["centroid_size"] = centroid_size(file.configuration);
  doc["preshape"] = matrix_json(z.matrix());

  std::ostringstream text;
  text << "k = " << z.k() << ", d = " << shape_space_dimension(z.k())
       << ", rank = " << numerical_rank(z) << "\n"
       << "singular values: " << fmt(s(0)) << " " << fmt(s(1)) << " " << fmt(s(2)) << "\n"
       << "centroid size: " << fmt(centroid_size(file.configuration)) << "\n"
       << "pre-shape:\n";
  for (Eigen::Index r = 0; r < z.matrix().rows(); ++r)
    text << "  " << fmt(z.matrix()(r, 0)) << " " << fmt(z.matrix()(r, 1)) << " "
         << fmt(z.matrix()(r, 2)) << "\n";
  emit(c, doc, text.str(), out);
  return kSuccess;
}

int cmd_basis(const Common& c, const BasisOpts& o, std::ostream& out) {
  const PreShape z = to_preshape(load(c).configuration);
  const HorizontalBasis basis = horizontal_basis(z, o.tol);
  double horizontality = 0.0;
  ordered_json vectors = ordered_json::array();
  for (int i = 0; i < basis.dimension(); ++i) {
    const AmbientVector t = basis.vector(i);
    horizontality = std::max(horizontality, horizontality_violation(z, t));
    vectors.push_back(vector_json(Eigen::Map<const Eigen::VectorXd>(t.data(), t.size())));
  }
  const double ortho = orthonormality_residual(basis);
  ordered_json doc;
  doc["command"] = "basis";
  doc["k"] = z.k();
  doc["d"] = basis.dimension();
  doc["tol"] = o.tol;
  doc["flattening"] = "row-major";
  doc["orthonormality_residual"] = ortho;
  doc["horizontality_residual"] = horizontality;
  doc["vectors"] = std::move(vectors);

  std::ostringstream text;
  text << "horizontal basis at k = " << z.k() << ": d = " << basis.dimension() << " vectors\n"
       << "orthonormality residual: " << fmt(ortho) << "\n"
       << "horizontality residual: " << fmt(horizontality) << "\n";
  emit(c, doc, text.str(), out);
  return kSuccess;
}

int cmd_curvature(const Common& c, const CurvatureOpts& o, std::ostream& out) {
  const bool by_plane = !o.plane.empty();
  const bool by_coords = !o.u_coords.empty() || !o.v_coords.empty();
  if (by_plane == by_coords)
    throw UsageError("curvature: give either --plane A,B or both --u-coords and --v-coords");

  PlaneSpec plane;
  ordered_json plane_json;
  if (by_plane) {
    const auto comma = o.plane.find(',');
    if (comma == std::string::npos) throw UsageError("--plane expects two labels, e.g. dl2,dl3");
    try {
      plane = LabelPlane{parse_basis_label(o.plane.substr(0, comma)),
                         parse_basis_label(o.plane.substr(comma + 1))};
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    const auto& lp = std::get<LabelPlane>(plane);
    plane_json = {{"type", "labels"}, {"u", to_string(lp.u)}, {"v", to_string(lp.v)}};
  } else {
    if (o.u_coords.empty() || o.v_coords.empty())
      throw UsageError("--u-coords and --v-coords must be given together");
    const auto u = parse_list(o.u_coords, "--u-coords");
    const auto v = parse_list(o.v_coords, "--v-coords");
    plane = CoefficientPlane{Eigen::Map<const Eigen::VectorXd>(u.data(), u.size()),
                             Eigen::Map<const Eigen::VectorXd>(v.data(), v.size())};
    plane_json = {{"type", "coefficients"}, {"u", u}, {"v", v}};
  }

  const CurvatureReport r = compute_curvature(load(c).configuration, plane);
  ordered_json labels = ordered_json::array();
  for (const auto& l : r.labels) labels.push_back(to_string(l));
  ordered_json doc;
  doc["command"] = "curvature";
  doc["k"] = r.k;
  doc["d"] = r.dimension;
  doc["plane"] = plane_json;
  doc["sectional_curvature"] = r.curvature;
  doc["bracket_norm_sq"] = r.bracket_norm_sq;
  doc["bracket"] = {{"eta12", r.bracket.c12}, {"eta13", r.bracket.c13}, {"eta23", r.bracket.c23}};
  doc["lambdas"] = vector_json(r.lambdas);
  doc["gram_condition_number"] = r.gram_condition_number;
  doc["labels"] = std::move(labels);
  doc["u_coefficients"] = vector_json(r.u_coefficients);
  doc["v_coefficients"] = vector_json(r.v_coefficients);

  std::ostringstream text;
  text << "K = " << fmt(r.curvature) << "\n"
       << "|[u,v]^V|^2 = " << fmt(r.bracket_norm_sq) << "\n"
       << "bracket (eta12, eta13, eta23) = (" << fmt(r.bracket.c12) << ", " << fmt(r.bracket.c13)
       << ", " << fmt(r.bracket.c23) << ")\n"
       << "lambdas = (" << fmt(r.lambdas(0)) << ", " << fmt(r.lambdas(1)) << ", "
       << fmt(r.lambdas(2)) << ")\n"
       << "Gram condition number = " << fmt(r.gram_condition_number) << "\n";
  emit(c, doc, text.str(), out);
  return kSuccess;
}

int cmd_simulate(const Common& c, const SimulateOpts& o, std::ostream& out) {
  const PreShape z = to_preshape(load(c).configuration);
  SimulationSpec spec;
  spec.sigma = o.sigma;
  spec.n_samples = o.n;
  spec.seed = o.seed;
  spec.threads = o.threads;
  const SimulationResult result = simulate_in_tangent_space(z, spec);

  SampleWriteOptions write_opts;
  write_opts.include_landmarks = o.emit_configs;
  write_opts.include_preshape = true;

  ordered_json doc;
  doc["command"] = "simulate";
  doc["k"] = z.k();
  doc["d"] = shape_space_dimension(z.k());
  doc["n"] = o.n;
  doc["sigma"] = o.sigma;
  doc["seed"] = o.seed;
  doc["rejections"] = result.rejections;

  if (!c.output.empty()) {
    FileFormat f = FileFormat::Json;
    try {
      f = format_from_path(c.output);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    // The CSV variant carries one matrix per row; with --emit-configs that is
    // the configuration, otherwise the pre-shape.
    write_samples(result.samples, c.output, f, write_opts);
    doc["output"] = c.output;
  } else {
    ordered_json samples = ordered_json::array();
    const auto configs = o.emit_configs ? samples_to_configurations(result.samples, z.k())
                                        : std::vector<Configuration>{};
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
      ordered_json rec;
      if (o.emit_configs) rec["landmarks"] = matrix_json(configs[i].points());
      rec["preshape"] = matrix_json(result.samples[i].matrix());
      rec["coordinates"] = vector_json(result.coordinates[i]);
      samples.push_back(std::move(rec));
    }
    doc["samples"] = std::move(samples);
  }

  if (c.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << "simulated " << o.n << " samples at k = " << z.k() << " (d = "
        << shape_space_dimension(z.k()) << "), sigma = " << fmt(o.sigma) << ", seed = " << o.seed
        << ", rejections = " << result.rejections << "\n";
    if (c.output.empty()) out << format_samples(result.samples, FileFormat::Csv, write_opts);
    else out << "written to " << c.output << "\n";
  }
  return kSuccess;
}

int cmd_check(const Common& c, const CheckOpts& o, std::ostream& out) {
  const PreShape z = to_preshape(load(c).configuration);
  OracleConfig cfg;
  cfg.step = o.step;
  const CrossCheckReport report = cross_check(z, o.trials, o.seed, cfg);
  const bool passed = report.max_relative_error <= kCheckTolerance;

  ordered_json trials = ordered_json::array();
  for (const auto& t : report.trials)
    trials.push_back({{"closed_form", t.closed_form},
                      {"oracle", t.oracle},
                      {"relative_error", t.relative_error},
                      {"sectional_curvature", t.curvature}});
  ordered_json doc;
  doc["command"] = "check";
  doc["k"] = z.k();
  doc["step"] = o.step;
  doc["trials"] = std::move(trials);
  doc["max_relative_discrepancy"] = report.max_relative_error;
  doc["tolerance"] = kCheckTolerance;
  doc["passed"] = passed;

  std::ostringstream text;
  text << "max relative discrepancy: " << std::scientific << std::setprecision(3)
       << report.max_relative_error << " over " << o.trials << " trials ("
       << (passed ? "ok" : "FAILED") << ", tolerance " << kCheckTolerance << ")\n";
  emit(c, doc, text.str(), out);
  return passed ? kSuccess : kCheckFailed;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::Spec:
      return kDataError;
    case ErrorKind::DegenerateConfiguration:
    case ErrorKind::SingularShape:
    case ErrorKind::DegenerateSpectrum:
    case ErrorKind::NoUniqueLogarithm:
    case ErrorKind::IllConditionedBasis:
    case ErrorKind::DegeneratePlane:
      return kDegenerate;
  }
  return kDataError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  log::configure_from_env();

  CLI::App app{"Kendall 3D shape-space geometry: pre-shapes, horizontal bases, sectional "
               "curvature and tangent-space simulation"};
  app.require_subcommand(1);

  Common common;
  BasisOpts basis_opts;
  CurvatureOpts curvature_opts;
  SimulateOpts simulate_opts;
  CheckOpts check_opts;

  auto* preshape = app.add_subcommand("preshape", "Pre-shape matrix and diagnostics");
  add_common(preshape, common);

  auto* basis = app.add_subcommand("basis", "Orthonormal horizontal basis (3k-7 vectors)");
  add_common(basis, common);
  basis->add_option("--tol", basis_opts.tol, "Relative kernel eigenvalue cut")
      ->capture_default_str();

  auto* curvature = app.add_subcommand("curvature", "Sectional curvature of a tangent plane");
  add_common(curvature, common);
  curvature->add_option("--plane", curvature_opts.plane,
                        "Two adapted-basis labels, e.g. dl2,dl3 or xi12,xi14");
  curvature->add_option("--u-coords", curvature_opts.u_coords,
                        "Comma-separated adapted-basis coefficients of u");
  curvature->add_option("--v-coords", curvature_opts.v_coords,
                        "Comma-separated adapted-basis coefficients of v");

  auto* simulate = app.add_subcommand("simulate", "Gaussian samples in the tangent space");
  add_common(simulate, common);
  simulate->add_option("--sigma", simulate_opts.sigma, "Per-coordinate standard deviation")
      ->required();
  simulate->add_option("--n", simulate_opts.n, "Number of samples")->required();
  simulate->add_option("--seed", simulate_opts.seed, "RNG seed")->required();
  simulate->add_option("--threads", simulate_opts.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  simulate->add_flag("--emit-configs", simulate_opts.emit_configs,
                     "Include centered landmark configurations with each sample");

  auto* check = app.add_subcommand("check", "Closed form vs finite-difference oracle");
  add_common(check, common, false);
  check->add_option("--step", check_opts.step, "Oracle finite-difference step")
      ->capture_default_str();
  check->add_option("--trials", check_opts.trials, "Random planes to test")
      ->capture_default_str();
  check->add_option("--seed", check_opts.seed, "RNG seed for the planes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  auto report_error = [&](const std::string& kind, const std::string& message, int code) {
    err << "kendall3d: " << message << "\n";
    if (common.json) {
      ordered_json doc;
      doc["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
      out << doc.dump(2) << "\n";
    }
    return code;
  };

  try {
    if (*preshape) return cmd_preshape(common, out);
    if (*basis) return cmd_basis(common, basis_opts, out);
    if (*curvature) return cmd_curvature(common, curvature_opts, out);
    if (*simulate) return cmd_simulate(common, simulate_opts, out);
    if (*check) return cmd_check(common, check_opts, out);
  } catch (const UsageError& e) {
    return report_error("usage", e.what(), kUsage);
  } catch (const Error& e) {
    return report_error(std::string(to_string(e.kind())), e.what(), exit_code_for(e.kind()));
  }
  return kUsage;
}

}  // namespace kendall3d::cli
