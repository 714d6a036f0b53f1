#include "ese/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ese/error.hpp"

namespace ese {

std::string_view to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "reflecting"; }

Boundary boundary_from_string(std::string_view s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "reflecting") return Boundary::reflecting;
  throw Error(ErrorKind::invalid_argument, "unknown boundary rule '" + std::string(s) + "'");
}

Grid::Grid(std::span<const std::size_t> extents, std::span<const Interval> box, Boundary boundary)
    : dim_(static_cast<int>(extents.size())), boundary_(boundary) {
  if (dim_ < 1 || dim_ > max_dim)
    throw Error(ErrorKind::invalid_argument, "grid dimension must be 1..3");
  if (box.size() != extents.size())
    throw Error(ErrorKind::invalid_argument, "box and extents disagree on dimension");
  size_ = 1;
  for (int k = 0; k < dim_; ++k) {
    if (extents[k] < 4) throw Error(ErrorKind::invalid_argument, "grid needs at least 4 points per axis");
    if (!(box[k].hi > box[k].lo)) throw Error(ErrorKind::invalid_argument, "box interval must have hi > lo");
    extents_[k] = extents[k];
    box_[k] = box[k];
    const double cells = boundary == Boundary::periodic ? static_cast<double>(extents[k])
                                                         : static_cast<double>(extents[k] - 1);
    spacing_[k] = box[k].length() / cells;
    strides_[k] = size_;
    size_ *= extents[k];
  }
}

Grid Grid::cube(int dim, std::size_t points, Interval interval, Boundary boundary) {
  if (dim < 1 || dim > max_dim) throw Error(ErrorKind::invalid_argument, "grid dimension must be 1..3");
  std::vector<std::size_t> extents(dim, points);
  std::vector<Interval> box(dim, interval);
  return Grid(extents, box, boundary);
}

double Grid::min_spacing() const { return *std::min_element(spacing_.begin(), spacing_.begin() + dim_); }

std::array<std::size_t, max_dim> Grid::multi_index(std::size_t flat) const {
  std::array<std::size_t, max_dim> idx{0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    idx[k] = flat % extents_[k];
    flat /= extents_[k];
  }
  return idx;
}

Point Grid::point(std::size_t flat) const {
  Point x{0.0, 0.0, 0.0};
  const auto idx = multi_index(flat);
  for (int k = 0; k < dim_; ++k) x[k] = coordinate(k, idx[k]);
  return x;
}

Grid Grid::scaled(double factor) const {
  Grid g = *this;
  for (int k = 0; k < dim_; ++k) {
    g.box_[k] = {box_[k].lo * factor, box_[k].hi * factor};
    g.spacing_[k] = spacing_[k] * factor;
  }
  return g;
}

bool Grid::operator==(const Grid& other) const {
  if (dim_ != other.dim_ || boundary_ != other.boundary_) return false;
  for (int k = 0; k < dim_; ++k)
    if (extents_[k] != other.extents_[k] || box_[k] != other.box_[k]) return false;
  return true;
}

Field::Field(Grid grid, double fill) : grid_(std::move(grid)), values_(grid_.size(), fill) {}

Field::Field(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "field has " << values_.size() << " values, grid has " << grid_.size() << " points";
    throw Error(ErrorKind::invalid_argument, msg.str());
  }
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

std::size_t Field::argmin() const {
  return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
}
std::size_t Field::argmax() const {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

double Field::interpolate(const Point& x) const {
  const int dim = grid_.dim();
  std::array<std::size_t, max_dim> lower{0, 0, 0}, upper{0, 0, 0};
  std::array<double, max_dim> weight{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) {
    const auto& iv = grid_.interval(k);
    if (!(x[k] >= iv.lo && x[k] <= iv.hi)) {
      std::ostringstream msg;
      msg << "coordinate " << x[k] << " outside [" << iv.lo << ", " << iv.hi << "] on axis " << k;
      throw Error(ErrorKind::out_of_window, msg.str());
    }
    const std::size_t n = grid_.extent(k);
    const double s = (x[k] - iv.lo) / grid_.spacing(k);
    auto i0 = static_cast<std::size_t>(std::floor(s));
    double frac = s - static_cast<double>(i0);
    if (grid_.boundary() == Boundary::periodic) {
      i0 %= n;
      lower[k] = i0;
      upper[k] = (i0 + 1) % n;
    } else {
      if (i0 >= n - 1) {
        i0 = n - 2;
        frac = 1.0;
      }
      lower[k] = i0;
      upper[k] = i0 + 1;
    }
    weight[k] = frac;
  }
  double sum = 0.0;
  for (unsigned corner = 0; corner < (1u << dim); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (int k = 0; k < dim; ++k) {
      const bool hi = (corner >> k) & 1u;
      w *= hi ? weight[k] : 1.0 - weight[k];
      flat += (hi ? upper[k] : lower[k]) * grid_.stride(k);
    }
    if (w != 0.0) sum += w * values_[flat];
  }
  return sum;
}

void require_positive(const Field& f, std::string_view context) {
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      std::ostringstream msg;
      msg << context << ": value " << v[i] << " at grid index " << i;
      throw Error(ErrorKind::non_positive_field, msg.str());
    }
  }
}

namespace {

// Signed flat offsets to the previous/next neighbour along one axis, per
// axis index. Reflecting axes mirror evenly about the end points.
struct AxisOffsets {
  std::vector<std::ptrdiff_t> prev;
  std::vector<std::ptrdiff_t> next;
};

std::array<AxisOffsets, max_dim> make_offsets(const Grid& g) {
  std::array<AxisOffsets, max_dim> out;
  for (int k = 0; k < g.dim(); ++k) {
    const auto n = static_cast<std::ptrdiff_t>(g.extent(k));
    const auto stride = static_cast<std::ptrdiff_t>(g.stride(k));
    out[k].prev.resize(n);
    out[k].next.resize(n);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      std::ptrdiff_t lo = i - 1, hi = i + 1;
      if (g.boundary() == Boundary::periodic) {
        lo = (lo + n) % n;
        hi = hi % n;
      } else {
        if (lo < 0) lo = 1;
        if (hi >= n) hi = n - 2;
      }
      out[k].prev[i] = (lo - i) * stride;
      out[k].next[i] = (hi - i) * stride;
    }
  }
  return out;
}

template <class Fn>
void for_each_point(const Grid& g, Fn&& fn) {
  const std::size_t n0 = g.extent(0);
  const std::size_t n1 = g.dim() > 1 ? g.extent(1) : 1;
  const std::size_t n2 = g.dim() > 2 ? g.extent(2) : 1;
  std::size_t flat = 0;
  for (std::size_t i2 = 0; i2 < n2; ++i2)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t i0 = 0; i0 < n0; ++i0, ++flat) fn(flat, std::array<std::size_t, max_dim>{i0, i1, i2});
}

}  // namespace

void apply_laplacian(const Grid& grid, std::span<const double> in, std::span<double> out) {
  const auto off = make_offsets(grid);
  const int dim = grid.dim();
  std::array<double, max_dim> inv_h2{};
  for (int k = 0; k < dim; ++k) inv_h2[k] = 1.0 / (grid.spacing(k) * grid.spacing(k));

  if (dim == 1) {
    const std::size_t n = in.size();
    const double w = inv_h2[0];
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (in[i - 1] - 2.0 * in[i] + in[i + 1]) * w;
    for (std::size_t i : {std::size_t{0}, n - 1})
      out[i] = (in[i + off[0].prev[i]] - 2.0 * in[i] + in[i + off[0].next[i]]) * w;
    return;
  }
  for_each_point(grid, [&](std::size_t flat, const std::array<std::size_t, max_dim>& idx) {
    const double c = in[flat];
    double acc = 0.0;
    for (int k = 0; k < dim; ++k)
      acc += (in[flat + off[k].prev[idx[k]]] - 2.0 * c + in[flat + off[k].next[idx[k]]]) * inv_h2[k];
    out[flat] = acc;
  });
}

Field laplacian(const Field& f) {
  std::vector<double> out(f.size());
  apply_laplacian(f.grid(), f.values(), out);
  return Field(f.grid(), std::move(out));
}

Field partial(const Field& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw Error(ErrorKind::invalid_argument, "axis out of range");
  const auto off = make_offsets(g);
  const auto in = f.values();
  const double inv_2h = 0.5 / g.spacing(axis);
  std::vector<double> out(f.size());
  for_each_point(g, [&](std::size_t flat, const std::array<std::size_t, max_dim>& idx) {
    out[flat] = (in[flat + off[axis].next[idx[axis]]] - in[flat + off[axis].prev[idx[axis]]]) * inv_2h;
  });
  return Field(g, std::move(out));
}

Field grad_dot(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorKind::invalid_argument, "grad_dot on mismatched grids");
  std::vector<double> out(a.size(), 0.0);
  for (int k = 0; k < a.grid().dim(); ++k) {
    const Field da = partial(a, k);
    const Field db = &a == &b ? da : partial(b, k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += da[i] * db[i];
  }
  return Field(a.grid(), std::move(out));
}

Field grad_sq(const Field& f) { return grad_dot(f, f); }

Field hessian_norm_sq(const Field& f) {
  const Grid& g = f.grid();
  const auto off = make_offsets(g);
  const auto in = f.values();
  const int dim = g.dim();
  std::vector<double> out(f.size());
  for_each_point(g, [&](std::size_t flat, const std::array<std::size_t, max_dim>& idx) {
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double hk = g.spacing(k);
      const auto pk = off[k].prev[idx[k]];
      const auto nk = off[k].next[idx[k]];
      const double dkk = (in[flat + pk] - 2.0 * in[flat] + in[flat + nk]) / (hk * hk);
      acc += dkk * dkk;
      for (int l = k + 1; l < dim; ++l) {
        const auto pl = off[l].prev[idx[l]];
        const auto nl = off[l].next[idx[l]];
        const double dkl = (in[flat + nk + nl] - in[flat + nk + pl] - in[flat + pk + nl] + in[flat + pk + pl]) /
                           (4.0 * hk * g.spacing(l));
        acc += 2.0 * dkl * dkl;
      }
    }
    out[flat] = acc;
  });
  return Field(g, std::move(out));
}

Field log_field(const Field& f) {
  require_positive(f, "log_field");
  std::vector<double> out(f.size());
  const auto in = f.values();
  std::transform(in.begin(), in.end(), out.begin(), [](double v) { return std::log(v); });
  return Field(f.grid(), std::move(out));
}

}  // namespace ese
