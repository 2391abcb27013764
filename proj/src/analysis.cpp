#include "gazeload/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace gazeload {

int count_peaks(const std::vector<bool>& flags, int min_run, int gap_estimates) {
  // Collect maximal high runs as [start, end) index pairs.
  struct Run { std::size_t start, end; };
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < flags.size()) {
    if (!flags[i]) { ++i; continue; }
    std::size_t j = i;
    while (j < flags.size() && flags[j]) ++j;
    runs.push_back({i, j});
    i = j;
  }

  // Merge runs whose separating low gap is shorter than gap_estimates.
  int peaks = 0;
  std::size_t k = 0;
  while (k < runs.size()) {
    std::size_t span_start = runs[k].start;
    std::size_t span_end = runs[k].end;
    while (k + 1 < runs.size() &&
           runs[k + 1].start - span_end < static_cast<std::size_t>(gap_estimates)) {
      span_end = runs[k + 1].end;
      ++k;
    }
    if (span_end - span_start >= static_cast<std::size_t>(min_run)) ++peaks;
    ++k;
  }
  return peaks;
}

int count_peaks(std::span<const LoadEstimate> estimates, int min_run,
                int gap_estimates) {
  std::vector<bool> flags;
  flags.reserve(estimates.size());
  for (const auto& e : estimates) flags.push_back(e.high_load);
  return count_peaks(flags, min_run, gap_estimates);
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw StatsError("pearson_r: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw StatsError("pearson_r: need at least 3 pairs");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw StatsError("pearson_r: zero variance");

  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);

  // Use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) where the continued
  // fraction converges fastest.
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double p_value(double r, int n) {
  if (n < 3) throw StatsError("p_value: need n >= 3");
  if (!(r >= -1.0 && r <= 1.0)) throw StatsError("p_value: |r| > 1");
  if (std::abs(r) >= 1.0) return 0.0;

  const double df = static_cast<double>(n - 2);
  const double t2 = r * r * df / (1.0 - r * r);
  // Two-tailed tail probability of Student's t: p = I_{df/(df+t^2)}(df/2, 1/2).
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

std::optional<double> select_feature(const SessionFeatures& f,
                                     const FeatureSelector& sel) {
  if (sel.name == "peaks") return static_cast<double>(f.peak_count);
  if (sel.name == "duration") return f.duration_s;
  if (sel.name.starts_with("event:")) {
    const std::string label = sel.name.substr(6);
    auto it = f.event_counts.find(label);
    return static_cast<double>(it == f.event_counts.end() ? 0 : it->second);
  }
  if (sel.name.starts_with("tag:")) {
    const std::string key = sel.name.substr(4);
    auto it = f.tags.find(key);
    if (it == f.tags.end()) return std::nullopt;
    auto mapped = sel.tag_mapping.find(it->second);
    if (mapped == sel.tag_mapping.end()) return std::nullopt;
    return mapped->second;
  }
  throw StatsError("unknown feature: " + sel.name);
}

CorrelationResult correlate_features(const std::vector<SessionFeatures>& table,
                                     const FeatureSelector& x,
                                     const FeatureSelector& y) {
  std::vector<double> xs, ys;
  for (const auto& f : table) {
    const auto vx = select_feature(f, x);
    const auto vy = select_feature(f, y);
    if (vx && vy) {
      xs.push_back(*vx);
      ys.push_back(*vy);
    }
  }

  CorrelationResult out;
  out.n = static_cast<int>(xs.size());
  out.r = pearson_r(xs, ys);
  out.p_two_tailed = p_value(out.r, out.n);
  return out;
}

}  // namespace gazeload
