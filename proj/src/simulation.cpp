// simulation.cpp — tangent-space sampling.

#include "kendall3d/simulation.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/log.hpp"
#include "kendall3d/shape_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace kendall3d {
namespace {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Factor F with F·Fᵀ equal to the requested covariance.
Matrix covariance_factor(const SimulationSpec& spec, int d) {
  if (!spec.covariance) {
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma))
      throw SpecError("simulation: sigma must be positive and finite");
    return spec.sigma * Matrix::Identity(d, d);
  }
  const Matrix& c = *spec.covariance;
  if (c.rows() != d || c.cols() != d) {
    std::ostringstream os;
    os << "simulation: covariance must be " << d << "x" << d << ", got " << c.rows() << "x"
       << c.cols();
    throw SpecError(os.str());
  }
  if (!c.allFinite() || (c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw SpecError("simulation: covariance must be finite and symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(c);
  if (eig.eigenvalues().minCoeff() < -1e-12)
    throw SpecError("simulation: covariance is not positive semi-definite");
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

}  // namespace

SimulationResult simulate_in_tangent_space(const PreShape& z, const SimulationSpec& spec) {
  return simulate_in_tangent_space(horizontal_basis(z), spec);
}

SimulationResult simulate_in_tangent_space(const HorizontalBasis& basis,
                                           const SimulationSpec& spec) {
  if (spec.n_samples < 1) throw SpecError("simulation: n_samples must be >= 1");
  if (spec.max_rejections < 0) throw SpecError("simulation: max_rejections must be >= 0");
  const int d = basis.dimension();
  const Matrix factor = covariance_factor(spec, d);
  const bool isotropic = !spec.covariance.has_value();
  const auto n = static_cast<std::size_t>(spec.n_samples);

  std::vector<std::optional<PreShape>> samples(n);
  std::vector<Vector> coords(n);
  std::vector<std::size_t> rejected(n, 0);

  auto draw_one = [&](std::size_t i) {
    std::mt19937_64 rng = substream(spec.seed, i);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector standard(d);
    for (int attempt = 0;; ++attempt) {
      for (int c = 0; c < d; ++c) standard(c) = normal(rng);
      Vector c = isotropic ? Vector(spec.sigma * standard) : Vector(factor * standard);
      if (c.norm() < std::numbers::pi) {
        samples[i].emplace(exp_sphere(basis.base_point(), from_coordinates(c, basis)));
        coords[i] = std::move(c);
        rejected[i] = static_cast<std::size_t>(attempt);
        return;
      }
      if (attempt + 1 > spec.max_rejections) {
        std::ostringstream os;
        os << "simulation: sample " << i << " rejected " << attempt + 1
           << " consecutive draws with norm >= pi; sigma is too large";
        throw SpecError(os.str());
      }
      log::debug("simulation: rejected draw for sample " + std::to_string(i) +
                 " (norm >= pi)");
    }
  };

  unsigned workers = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : spec.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) draw_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
              draw_one(i);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              next.store(n);
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  SimulationResult result;
  result.samples.reserve(n);
  for (auto& s : samples) result.samples.push_back(std::move(*s));
  result.coordinates = std::move(coords);
  for (std::size_t r : rejected) result.rejections += r;
  if (result.rejections > 0)
    log::info("simulation: " + std::to_string(result.rejections) + " draws rejected");
  return result;
}

std::vector<Configuration> samples_to_configurations(const std::vector<PreShape>& samples, int k) {
  const Matrix ht = helmert_submatrix(k).transpose();
  std::vector<Configuration> out;
  out.reserve(samples.size());
  for (const PreShape& s : samples) {
    if (s.k() != k)
      throw InvalidArgument("samples_to_configurations: sample has k = " + std::to_string(s.k()) +
                            ", expected " + std::to_string(k));
    out.emplace_back(ShapeMatrix(ht * s.matrix()));
  }
  return out;
}

}  // namespace kendall3d
