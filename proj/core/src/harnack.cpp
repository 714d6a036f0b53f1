#include "ese/harnack.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ese/error.hpp"

namespace ese {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_time(double t) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << "Harnack quantity needs t > 0, got " << t;
    throw Error(ErrorKind::non_positive_time, msg.str());
  }
}

// α Δu + β |∇u|² + c e^{u(p-1)} without the time term.
std::vector<double> spatial_part(const Field& u, const HarnackConstants& k, double p) {
  const Field lap = laplacian(u);
  const Field g2 = grad_sq(u);
  std::vector<double> h(u.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    h[i] = k.alpha * lap[i] + k.beta * g2[i] + k.c * std::exp(u[i] * (p - 1.0));
  return h;
}

bool strictly_inside(const Point& x, const std::vector<Interval>& rect) {
  for (std::size_t k = 0; k < rect.size(); ++k)
    if (!(x[k] > rect[k].lo && x[k] < rect[k].hi)) return false;
  return true;
}

}  // namespace

double localizer_b_min(int n, const HarnackConstants& k) {
  if (k.beta == 0.0) throw Error(ErrorKind::beta_zero, "localized estimate needs beta > 0");
  if (!(k.alpha > k.beta && k.beta > 0.0)) throw Error(ErrorKind::invalid_argument, "localizer needs alpha > beta > 0");
  const double gap = k.alpha - k.beta;
  const double q = n * k.alpha * k.alpha;
  return q / (2.0 * gap) * (6.0 + q / (gap * k.beta));
}

LocalizerSpec make_localizer(std::vector<Interval> rect, const HarnackConstants& k, double b) {
  if (rect.empty() || rect.size() > static_cast<std::size_t>(max_dim))
    throw Error(ErrorKind::invalid_argument, "localizer rectangle must have 1..3 axes");
  for (const auto& iv : rect)
    if (!(iv.hi > iv.lo)) throw Error(ErrorKind::invalid_argument, "localizer interval must have hi > lo");
  const int n = static_cast<int>(rect.size());
  const double b_min = localizer_b_min(n, k);
  if (!(b > b_min)) {
    std::ostringstream msg;
    msg << "localizer b = " << b << " must exceed " << b_min;
    throw Error(ErrorKind::invalid_argument, msg.str());
  }
  const double a_min = n * k.alpha * k.alpha / (2.0 * (k.alpha - k.beta));
  if (k.a < a_min) throw Error(ErrorKind::invalid_argument, "localizer a below n*alpha^2/(2(alpha-beta))");
  return {std::move(rect), k.a, b};
}

Field harnack_h0(const Field& u, double t, const HarnackConstants& k, double p) {
  require_positive_time(t);
  std::vector<double> h = spatial_part(u, k, p);
  const double time_term = k.a / t;
  for (double& v : h) v += time_term;
  return Field(u.grid(), std::move(h));
}

double phi_r(const Point& x, double t, const LocalizerSpec& loc) {
  if (!(t > 0.0) || !strictly_inside(x, loc.rect)) return kInf;
  double v = loc.a / t;
  for (std::size_t k = 0; k < loc.rect.size(); ++k) {
    const double dl = x[k] - loc.rect[k].lo;
    const double dh = loc.rect[k].hi - x[k];
    v += loc.b / (dl * dl) + loc.b / (dh * dh);
  }
  return v;
}

Field harnack_hr(const Field& u, double t, const HarnackConstants& k, double p, const LocalizerSpec& loc) {
  if (k.beta == 0.0) throw Error(ErrorKind::beta_zero, "localized estimate needs beta > 0");
  require_positive_time(t);
  if (static_cast<int>(loc.rect.size()) != u.grid().dim())
    throw Error(ErrorKind::invalid_argument, "localizer rectangle dimension differs from grid");
  std::vector<double> h = spatial_part(u, k, p);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point x = u.grid().point(i);
    h[i] = strictly_inside(x, loc.rect) ? h[i] + phi_r(x, t, loc) : kInf;
  }
  return Field(u.grid(), std::move(h));
}

TimeWindow default_window(const SolveTrace& trace) {
  const double tf = trace.final_time();
  return {0.05 * tf, 0.9 * tf};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
  }
  return "unknown";
}

namespace {

template <class Eval>
HarnackReport scan(const SolveTrace& trace, TimeWindow window, double tolerance, Eval&& eval) {
  if (!(window.t_min > 0.0)) throw Error(ErrorKind::non_positive_time, "scan window must start at t_min > 0");
  HarnackReport r;
  r.window = window;
  r.tolerance = tolerance;
  r.min_h = kInf;
  for (const auto& s : trace.samples) {
    if (s.t < window.t_min || s.t > window.t_max) continue;
    const Field h = eval(log_field(s.f), s.t);
    const std::size_t i = h.argmin();
    r.min_curve.push_back({s.t, h[i]});
    if (h[i] < r.min_h) {
      r.min_h = h[i];
      r.argmin_x = h.grid().point(i);
      r.argmin_t = s.t;
    }
  }
  if (r.min_curve.empty()) throw Error(ErrorKind::window_too_small, "no samples inside the scan window");
  r.verdict = r.min_h >= -tolerance ? Verdict::consistent : Verdict::violated;
  return r;
}

}  // namespace

HarnackReport scan_h0(const SolveTrace& trace, const HarnackConstants& k, double p, TimeWindow window,
                      double tolerance) {
  return scan(trace, window, tolerance, [&](const Field& u, double t) { return harnack_h0(u, t, k, p); });
}

HarnackReport scan_hr(const SolveTrace& trace, const HarnackConstants& k, double p, const LocalizerSpec& loc,
                      TimeWindow window, double tolerance) {
  return scan(trace, window, tolerance, [&](const Field& u, double t) { return harnack_hr(u, t, k, p, loc); });
}

Verdict certify(const HarnackReport& coarse, const HarnackReport& fine) {
  const double eps = coarse.tolerance;
  const bool coarse_ok = coarse.min_h >= -eps;
  const bool fine_ok = fine.min_h >= -eps;
  if (coarse_ok && fine.min_h >= -0.5 * eps) return Verdict::certified;
  if (coarse_ok && fine_ok) return Verdict::consistent;
  return Verdict::violated;
}

ResidualStats evolution_residual(const SolveTrace& trace, const HarnackConstants& k, double p, TimeWindow window) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const double t = trace.samples[i].t;
    if (t >= window.t_min && t <= window.t_max) idx.push_back(i);
  }
  if (idx.size() < 3) throw Error(ErrorKind::window_too_small, "evolution residual needs >= 3 samples in the window");
  if (!(trace.samples[idx.front()].t > 0.0))
    throw Error(ErrorKind::non_positive_time, "evolution residual window must start at t > 0");

  // Consecutive samples in the window; the difference stencil stays inside it.
  struct Level {
    double t;
    Field u;
    Field h;
  };
  auto level = [&](std::size_t i) {
    const auto& s = trace.samples[i];
    Field u = log_field(s.f);
    Field h = harnack_h0(u, s.t, k, p);
    return Level{s.t, std::move(u), std::move(h)};
  };

  double max_res = 0.0, sum = 0.0, max_ht = 0.0;
  std::size_t count = 0;
  Level prev = level(idx[0]);
  Level cur = level(idx[1]);
  for (std::size_t j = 1; j + 1 < idx.size(); ++j) {
    Level next = level(idx[j + 1]);
    const double h1 = cur.t - prev.t, h2 = next.t - cur.t;
    const double wp = -h2 / (h1 * (h1 + h2));
    const double wc = (h2 - h1) / (h1 * h2);
    const double wn = h1 / (h2 * (h1 + h2));

    const Field lap_h = laplacian(cur.h);
    const Field gh_gu = grad_dot(cur.h, cur.u);
    const Field hess = hessian_norm_sq(cur.u);
    const Field g2 = grad_sq(cur.u);
    const double phi = k.a / cur.t;
    const double phi_t = -k.a / (cur.t * cur.t);
    const double mix = (k.alpha * (p - 1.0) + k.beta - k.c * p) * (p - 1.0);
    for (std::size_t i = 0; i < cur.u.size(); ++i) {
      const double x = std::exp(cur.u[i] * (p - 1.0));
      const double lhs = wp * prev.h[i] + wc * cur.h[i] + wn * next.h[i];
      const double rhs = lap_h[i] + 2.0 * gh_gu[i] + (p - 1.0) * x * cur.h[i] + 2.0 * (k.alpha - k.beta) * hess[i] +
                         mix * x * g2[i] - (p - 1.0) * x * phi + phi_t;
      const double r = std::abs(lhs - rhs);
      max_res = std::max(max_res, r);
      sum += r;
      max_ht = std::max(max_ht, std::abs(lhs));
      ++count;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }

  ResidualStats out;
  out.samples_used = idx.size() - 2;
  out.max_abs_ht = max_ht;
  if (max_ht > 0.0) {
    out.max_rel = max_res / max_ht;
    out.mean_rel = sum / static_cast<double>(count) / max_ht;
  }
  return out;
}

FFormCoefficients f_form(const HarnackConstants& k, double /*p*/) {
  if (!(k.alpha > 0.0)) throw Error(ErrorKind::invalid_argument, "f_form needs alpha > 0");
  return {k.a / k.alpha, 1.0 - k.beta / k.alpha, 1.0 - k.c / k.alpha};
}

}  // namespace ese
