#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperlex/boltzmann.hpp"

namespace hyperlex {

/// Radial coordinate mode: the default takes rho = x^2 + y^2 (the
/// squared norm), the euclidean alternative takes sqrt(x^2 + y^2) for
/// sensitivity checks.
enum class RhoMode { Paper, Euclidean };

const char* rho_mode_name(RhoMode mode);

struct PolarPoint {
  double rho;
  double theta;
};

/// rho per mode, theta = arctan(y/x). Requires x > 0 and y >= 0.
PolarPoint to_polar(double x, double y, RhoMode mode = RhoMode::Paper);

struct DiskPoint {
  double rho_prime;
  double theta_prime;
  bool clamped;
};

/// rho' = 1/2 ln((1+rho)/(1-rho)), theta' = theta. rho >= 1 violates the
/// open-disk domain: the value is clamped to 1 - 1e-9 and flagged rather
/// than rejected, so batch embeddings survive degenerate words.
DiskPoint to_disk(double rho, double theta);

inline constexpr double kDiskClamp = 1.0 - 1e-9;

struct DiskCoordinates {
  WordId word;
  double x;
  double y;
  double rho;
  double rho_prime;    // popularity axis; smaller = more popular
  double theta_prime;  // similarity axis
  bool clamped;
};

struct EmbedError {
  WordId word;
  std::string message;
};

struct EmbedResult {
  std::vector<DiskCoordinates> coordinates;  // ascending rho_prime
  std::vector<EmbedError> errors;
};

/// mean profile -> polar -> disk for each word; words missing a profile
/// direction become error entries without aborting the batch.
EmbedResult embed_words(const MeanProfileTable& profiles,
                        std::span<const WordId> words,
                        RhoMode mode = RhoMode::Paper);

struct ConvergenceTrace {
  WordId word = 0;
  std::vector<std::uint32_t> epochs;  // strictly increasing
  std::vector<double> rho_prime;
  std::vector<double> theta_prime;
};

/// Absolute successive differences; one element shorter than values.
std::vector<double> drifts(std::span<const double> values);

struct AxisConvergence {
  bool converged = false;
  std::uint32_t epoch = 0;  // first epoch from which every drift stays below epsilon
};

struct ConvergenceResult {
  AxisConvergence rho;
  AxisConvergence theta;
};

/// Earliest epoch per axis after which all successive drifts stay below
/// the axis epsilon. Requires at least two recorded epochs.
ConvergenceResult convergence(const ConvergenceTrace& trace, double epsilon_rho,
                              double epsilon_theta);

}  // namespace hyperlex
