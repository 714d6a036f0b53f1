#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ese {

inline constexpr int max_dim = 3;

using Point = std::array<double, max_dim>;

enum class Boundary { periodic, reflecting };

std::string_view to_string(Boundary b);
Boundary boundary_from_string(std::string_view s);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Uniform tensor-product grid on a box, dim <= 3.
///
/// Point i on axis k sits at lo_k + i * h_k. On a periodic axis the point
/// count N_k covers [lo_k, hi_k) and h_k = L_k / N_k; on a reflecting axis
/// both ends are grid points and h_k = L_k / (N_k - 1). The flat index runs
/// fastest along axis 0.
class Grid {
 public:
  Grid(std::span<const std::size_t> extents, std::span<const Interval> box, Boundary boundary);

  /// Same extent and interval on every axis.
  static Grid cube(int dim, std::size_t points, Interval interval, Boundary boundary);

  int dim() const { return dim_; }
  Boundary boundary() const { return boundary_; }
  std::size_t extent(int axis) const { return extents_[axis]; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  const Interval& interval(int axis) const { return box_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  double min_spacing() const;
  std::size_t size() const { return size_; }

  double coordinate(int axis, std::size_t i) const { return box_[axis].lo + static_cast<double>(i) * spacing_[axis]; }
  std::array<std::size_t, max_dim> multi_index(std::size_t flat) const;
  Point point(std::size_t flat) const;

  /// Box and spacing multiplied by `factor`; extents and boundary unchanged.
  Grid scaled(double factor) const;

  bool operator==(const Grid& other) const;

 private:
  int dim_ = 1;
  Boundary boundary_ = Boundary::periodic;
  std::array<std::size_t, max_dim> extents_{1, 1, 1};
  std::array<std::size_t, max_dim> strides_{1, 1, 1};
  std::array<Interval, max_dim> box_{};
  std::array<double, max_dim> spacing_{1.0, 1.0, 1.0};
  std::size_t size_ = 1;
};

/// Scalar samples on a grid. Immutable once constructed.
class Field {
 public:
  explicit Field(Grid grid, double fill = 0.0);
  Field(Grid grid, std::vector<double> values);

  template <class Fn>
  static Field sample(const Grid& grid, Fn&& fn) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.point(i));
    return Field(grid, std::move(values));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double min() const;
  double max() const;
  std::size_t argmin() const;
  std::size_t argmax() const;

  /// Multilinear interpolation. Throws OutOfWindow outside the box.
  double interpolate(const Point& x) const;

  std::vector<double> release() && { return std::move(values_); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Throws NonPositiveField if any value is <= 0 (or NaN).
void require_positive(const Field& f, std::string_view context);

// Second-order central-difference operators; boundary per grid rule.

Field laplacian(const Field& f);
Field partial(const Field& f, int axis);
Field grad_sq(const Field& f);
/// Pointwise ∇a·∇b.
Field grad_dot(const Field& a, const Field& b);
/// Frobenius norm squared of the discrete Hessian. In 1-D this is (u_xx)^2.
Field hessian_norm_sq(const Field& f);
/// Pointwise natural log; throws NonPositiveField instead of clipping.
Field log_field(const Field& f);

/// Allocation-free Laplacian for the integrator's inner loop.
void apply_laplacian(const Grid& grid, std::span<const double> in, std::span<double> out);

}  // namespace ese
