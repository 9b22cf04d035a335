#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tclust {

// Index of a point in the universe of a FiniteMetric.
struct PointId {
  std::size_t index = 0;

  friend constexpr auto operator<=>(PointId, PointId) = default;
};

// Distance oracle over a finite point universe, either an explicit symmetric
// matrix or a set of Euclidean coordinates. Immutable after construction.
//
// Every "within radius" decision in the library goes through within(), which
// is a closed comparison d <= bound + tolerance. The tolerance defaults to 0.
class FiniteMetric {
 public:
  enum class Kind { matrix, euclidean };

  // Rows must form a square matrix. With validate set, checks finiteness,
  // zero diagonal, positive off-diagonal entries, symmetry and the triangle
  // inequality in O(n^3), the latter up to an additive tolerance; throws
  // ValidationError naming the offending entry.
  static FiniteMetric from_matrix(const std::vector<std::vector<double>>& rows,
                                  bool validate = true, double tolerance = 0.0);

  // Coincident coordinates are allowed (distinct ids at distance 0).
  static FiniteMetric euclidean(std::size_t dim,
                                const std::vector<std::vector<double>>& coords);

  Kind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  // Coordinate dimension; 0 for matrix metrics.
  std::size_t dim() const { return dim_; }

  double distance(PointId a, PointId b) const;
  // Coordinates of a Euclidean point.
  std::span<const double> coords(PointId p) const;
  // Row-major n*n matrix for matrix metrics.
  std::span<const double> matrix() const;

  bool contains(PointId p) const { return p.index < size_; }
  void check(PointId p) const;

  double tolerance() const { return tolerance_; }
  FiniteMetric with_tolerance(double tolerance) const;
  bool within(double value, double bound) const {
    return value <= bound + tolerance_;
  }

  friend bool operator==(const FiniteMetric&, const FiniteMetric&) = default;

 private:
  FiniteMetric() = default;

  Kind kind_ = Kind::matrix;
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
  double tolerance_ = 0.0;
};

// { p in candidates : d(center, p) <= radius }, preserving candidate order.
std::vector<PointId> ball_members(const FiniteMetric& m,
                                  std::span<const PointId> candidates,
                                  PointId center, double radius);

double diameter(const FiniteMetric& m, std::span<const PointId> support);

// Smallest strictly positive pairwise distance, or 0 when there is none.
double min_positive_distance(const FiniteMetric& m,
                             std::span<const PointId> support);

// Diameter divided by the smallest positive distance. Throws
// DegenerateSpreadError when the support has no positive distance.
double spread(const FiniteMetric& m, std::span<const PointId> support);

}  // namespace tclust

template <>
struct std::hash<tclust::PointId> {
  std::size_t operator()(tclust::PointId p) const noexcept {
    return std::hash<std::size_t>{}(p.index);
  }
};
