#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gazeload/estimator.hpp"

namespace gazeload {

struct StatsError : std::runtime_error {
  explicit StatsError(const std::string& what) : std::runtime_error(what) {}
};

// Number of high-load peaks in a flag sequence. A peak is a contiguous
// high episode spanning at least min_run estimates; episodes separated by
// fewer than gap_estimates consecutive low estimates are counted as one
// (single-estimate dips are closed over to debounce flicker).
int count_peaks(const std::vector<bool>& flags, int min_run = 3,
                int gap_estimates = 2);
int count_peaks(std::span<const LoadEstimate> estimates, int min_run = 3,
                int gap_estimates = 2);

// Sample Pearson correlation coefficient, clamped to [-1, 1].
// Throws StatsError on length mismatch, n < 3, or zero variance.
double pearson_r(std::span<const double> x, std::span<const double> y);

// Two-tailed significance of r under Student's t with n-2 degrees of
// freedom, evaluated through the regularized incomplete beta function.
// |r| = 1 returns 0 by convention; r = 0 returns 1.
double p_value(double r, int n);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Absolute accuracy well below 1e-9 over the t-test parameter range.
double regularized_incomplete_beta(double a, double b, double x);

struct CorrelationResult {
  double r = 0.0;
  int n = 0;
  double p_two_tailed = 1.0;
};

// Per-session scalars extracted from a recorded session.
struct SessionFeatures {
  std::string session_id;
  int peak_count = 0;
  double duration_s = 0.0;
  std::map<std::string, int> event_counts;
  std::map<std::string, std::string> tags;
};

// Feature addressing for correlate_features:
//   "peaks"          -> peak_count
//   "duration"       -> duration_s
//   "event:<label>"  -> event_counts[label] (0 when absent)
//   "tag:<key>"      -> tags[key] mapped through tag_mapping (required)
// A session with no value for the feature is skipped (pairwise deletion).
struct FeatureSelector {
  std::string name;
  std::map<std::string, double> tag_mapping;
};

std::optional<double> select_feature(const SessionFeatures& f,
                                     const FeatureSelector& sel);

CorrelationResult correlate_features(const std::vector<SessionFeatures>& table,
                                     const FeatureSelector& x,
                                     const FeatureSelector& y);

}  // namespace gazeload
