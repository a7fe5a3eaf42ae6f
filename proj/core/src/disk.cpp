#include "hyperlex/disk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperlex/error.hpp"

namespace hyperlex {

const char* rho_mode_name(RhoMode mode) {
  return mode == RhoMode::Paper ? "paper" : "euclidean";
}

PolarPoint to_polar(double x, double y, RhoMode mode) {
  if (!(x > 0.0)) {
    fail(Errc::Domain, "polar transform requires x > 0, got " + std::to_string(x));
  }
  if (y < 0.0) {
    fail(Errc::Domain, "polar transform requires y >= 0, got " + std::to_string(y));
  }
  const double squared = x * x + y * y;
  const double rho = mode == RhoMode::Paper ? squared : std::sqrt(squared);
  return {rho, std::atan(y / x)};
}

DiskPoint to_disk(double rho, double theta) {
  if (rho < 0.0) {
    fail(Errc::Domain, "disk transform requires rho >= 0, got " + std::to_string(rho));
  }
  DiskPoint point;
  point.clamped = rho >= 1.0;
  const double bounded = point.clamped ? kDiskClamp : rho;
  // atanh(r) == 1/2 ln((1+r)/(1-r)); the libm form keeps small radii exact.
  point.rho_prime = std::atanh(bounded);
  point.theta_prime = theta;
  return point;
}

EmbedResult embed_words(const MeanProfileTable& profiles,
                        std::span<const WordId> words, RhoMode mode) {
  EmbedResult result;
  for (WordId word : words) {
    if (word >= profiles.x.size()) {
      result.errors.push_back({word, "word id out of range"});
      continue;
    }
    const bool has_row = profiles.row_support[word] > 0;
    const bool has_col = profiles.col_support[word] > 0;
    if (!has_row || !has_col) {
      std::string message = "no observed pair as ";
      if (!has_row && !has_col) {
        message += "target or context";
      } else {
        message += has_row ? "context" : "target";
      }
      result.errors.push_back({word, std::move(message)});
      continue;
    }
    const double x = profiles.x[word];
    const double y = profiles.y[word];
    const PolarPoint polar = to_polar(x, y, mode);
    const DiskPoint point = to_disk(polar.rho, polar.theta);
    result.coordinates.push_back({word, x, y, polar.rho, point.rho_prime,
                                  point.theta_prime, point.clamped});
  }
  std::sort(result.coordinates.begin(), result.coordinates.end(),
            [](const DiskCoordinates& a, const DiskCoordinates& b) {
              if (a.rho_prime != b.rho_prime) return a.rho_prime < b.rho_prime;
              return a.word < b.word;
            });
  return result;
}

std::vector<double> drifts(std::span<const double> values) {
  std::vector<double> out;
  if (values.size() < 2) return out;
  out.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    out.push_back(std::abs(values[i] - values[i - 1]));
  }
  return out;
}

namespace {

AxisConvergence axis_convergence(std::span<const std::uint32_t> epochs,
                                 std::span<const double> values, double epsilon) {
  const std::vector<double> diffs = drifts(values);
  // Last position whose drift is still at or above epsilon; convergence
  // starts right after it.
  std::size_t first_stable = 1;
  for (std::size_t j = diffs.size(); j > 0; --j) {
    if (diffs[j - 1] >= epsilon) {
      first_stable = j + 1;
      break;
    }
  }
  AxisConvergence axis;
  if (first_stable <= diffs.size()) {
    axis.converged = true;
    axis.epoch = epochs[first_stable];
  }
  return axis;
}

}  // namespace

ConvergenceResult convergence(const ConvergenceTrace& trace, double epsilon_rho,
                              double epsilon_theta) {
  if (trace.epochs.size() < 2) {
    fail(Errc::Degenerate, "convergence needs at least 2 epochs, got " +
                               std::to_string(trace.epochs.size()));
  }
  if (trace.rho_prime.size() != trace.epochs.size() ||
      trace.theta_prime.size() != trace.epochs.size()) {
    fail(Errc::Internal, "convergence trace arrays misaligned");
  }
  for (std::size_t i = 1; i < trace.epochs.size(); ++i) {
    if (trace.epochs[i] <= trace.epochs[i - 1]) {
      fail(Errc::Internal, "convergence trace epochs not strictly increasing");
    }
  }
  ConvergenceResult result;
  result.rho = axis_convergence(trace.epochs, trace.rho_prime, epsilon_rho);
  result.theta = axis_convergence(trace.epochs, trace.theta_prime, epsilon_theta);
  return result;
}

}  // namespace hyperlex
