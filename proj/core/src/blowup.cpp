#include "ese/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ese/error.hpp"

namespace ese {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "unknown";
}

Regime classify_regime(int n, double p) {
  if (!(p > 1.0)) throw Error(ErrorKind::invalid_argument, "reaction exponent p must be > 1");
  const double q = n * (p - 1.0);
  if (q < 2.0) return Regime::subcritical;
  if (q == 2.0) return Regime::critical;
  return Regime::supercritical;
}

double blowup_threshold(int n, double p, double c) {
  if (!(p > 1.0)) throw Error(ErrorKind::invalid_argument, "reaction exponent p must be > 1");
  if (!(c >= n * (p - 1.0) && c < 2.0)) {
    std::ostringstream msg;
    msg << "c = " << c << " outside [n(p-1), 2) = [" << n * (p - 1.0) << ", 2)";
    throw Error(ErrorKind::invalid_c, msg.str());
  }
  return std::pow(4.0 * n / (2.0 - c), 1.0 / (p - 1.0));
}

double ode_blowup_time(double f0, double p) {
  if (!(f0 > 0.0 && p > 1.0)) throw Error(ErrorKind::invalid_argument, "ode oracle needs f0 > 0 and p > 1");
  return std::pow(f0, 1.0 - p) / (p - 1.0);
}

double ode_oracle(double f0, double p, double t) {
  const double t_star = ode_blowup_time(f0, p);
  if (t >= t_star) {
    std::ostringstream msg;
    msg << "t = " << t << " is past the blowup time " << t_star;
    throw Error(ErrorKind::past_blowup, msg.str());
  }
  return std::pow(std::pow(f0, 1.0 - p) - (p - 1.0) * t, -1.0 / (p - 1.0));
}

BlowupEstimate estimate_blowup_time(const SolveTrace& trace, double p, std::size_t tail) {
  if (!trace.blew_up()) throw Error(ErrorKind::not_blowup, "trace status is not blowup");
  const std::size_t k = std::min(tail, trace.samples.size());
  if (k < 3) throw Error(ErrorKind::insufficient_samples, "blowup extrapolation needs >= 3 samples");

  const auto first = trace.samples.end() - static_cast<std::ptrdiff_t>(k);
  std::vector<double> t, g;
  for (auto it = first; it != trace.samples.end(); ++it) {
    t.push_back(it->t);
    g.push_back(std::pow(it->f.max(), 1.0 - p));
  }
  double t_mean = 0.0, g_mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    t_mean += t[i];
    g_mean += g[i];
  }
  t_mean /= static_cast<double>(k);
  g_mean /= static_cast<double>(k);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxy += (t[i] - t_mean) * (g[i] - g_mean);
    sxx += (t[i] - t_mean) * (t[i] - t_mean);
  }
  if (sxx == 0.0) throw Error(ErrorKind::insufficient_samples, "tail samples share one time");
  const double slope = sxy / sxx;
  if (!(slope < 0.0)) throw Error(ErrorKind::not_blowup, "(max f)^(1-p) is not decreasing on the tail");

  BlowupEstimate out;
  out.samples_used = k;
  out.t_estimate = t_mean - g_mean / slope;
  const auto [g_lo, g_hi] = std::minmax_element(g.begin(), g.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(g[i] - (g_mean + slope * (t[i] - t_mean))));
  out.fit_residual = *g_hi > *g_lo ? worst / (*g_hi - *g_lo) : 0.0;
  return out;
}

bool center_monotonicity_check(const SolveTrace& trace, double threshold, double t0) {
  auto it = std::find_if(trace.samples.begin(), trace.samples.end(), [&](const Sample& s) { return s.t >= t0; });
  if (it == trace.samples.end() || it->f.max() < threshold) {
    std::ostringstream msg;
    msg << "no grid value reaches " << threshold << " at t0 = " << t0;
    throw Error(ErrorKind::threshold_never_met, msg.str());
  }
  double last = it->f.max();
  for (++it; it != trace.samples.end(); ++it) {
    const double m = it->f.max();
    if (m < last) return false;
    last = m;
  }
  return true;
}

std::optional<ThresholdHit> normalized_threshold_hit(const SolveTrace& trace, double p, double threshold) {
  for (const auto& s : trace.samples) {
    if (!(s.t > 0.0)) continue;
    const double value = std::pow(s.t, 1.0 / (p - 1.0)) * s.f.max();
    if (value >= threshold) return ThresholdHit{s.f.grid().point(s.f.argmax()), s.t, value};
  }
  return std::nullopt;
}

SolveTrace normalize_to_unit_time(const SolveTrace& trace, double p, double t0) {
  if (!(t0 > 0.0)) throw Error(ErrorKind::non_positive_time, "normalization time must be > 0");
  return rescale_trace(trace, RescaleSpec{1.0 / std::sqrt(t0), p});
}

BlowupReport analyze_blowup(const SolveTrace& trace, int n, double p, double c) {
  BlowupReport r;
  r.regime = classify_regime(n, p);
  r.detected = trace.blew_up();
  r.method = trace.blew_up() ? "declared by " + trace.status.detail + "; linear fit of (max f)^(1-p) over tail samples"
                             : "no blowup declared";
  if (c >= n * (p - 1.0) && c < 2.0) {
    r.threshold_value = blowup_threshold(n, p, c);
    r.threshold_met_at = normalized_threshold_hit(trace, p, *r.threshold_value);
  }
  if (r.detected) {
    try {
      const auto est = estimate_blowup_time(trace, p);
      r.t_estimate = est.t_estimate;
      r.fit_residual = est.fit_residual;
    } catch (const Error& e) {
      r.method += std::string("; estimate unavailable: ") + e.what();
    }
  }
  return r;
}

}  // namespace ese
