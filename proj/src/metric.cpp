#include "tclust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tclust/error.hpp"

namespace tclust {

namespace {

std::string fmt_entry(std::size_t i, std::size_t j, double v) {
  std::ostringstream os;
  os << "d(" << i << "," << j << ")=" << v;
  return os.str();
}

}  // namespace

FiniteMetric FiniteMetric::from_matrix(
    const std::vector<std::vector<double>>& rows, bool validate,
    double tolerance) {
  FiniteMetric m;
  m.kind_ = Kind::matrix;
  m.size_ = rows.size();
  m.data_.reserve(m.size_ * m.size_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      std::ostringstream os;
      os << "distance matrix row " << i << " has " << rows[i].size()
         << " entries, expected " << rows.size();
      throw ValidationError(os.str());
    }
    m.data_.insert(m.data_.end(), rows[i].begin(), rows[i].end());
  }
  if (!validate) return m;

  const std::size_t n = m.size_;
  auto at = [&](std::size_t i, std::size_t j) { return m.data_[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("distance must be finite and nonnegative: " +
                              fmt_entry(i, j, v));
      }
      if (i == j && v != 0.0) {
        throw ValidationError("nonzero diagonal: " + fmt_entry(i, j, v));
      }
      if (i != j && v == 0.0) {
        throw ValidationError("distinct points at distance 0: " +
                              fmt_entry(i, j, v));
      }
      if (v != at(j, i)) {
        throw ValidationError("asymmetric distances: " + fmt_entry(i, j, v) +
                              " vs " + fmt_entry(j, i, at(j, i)));
      }
    }
  }
  // 1e-12 relative slack absorbs decimal round-off in stored matrices;
  // the comparison tolerance is added on top.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dij = at(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const double direct = at(i, k);
        const double via = dij + at(j, k);
        if (direct > via + tolerance + 1e-12 * std::max(1.0, direct)) {
          std::ostringstream os;
          os << "triangle inequality violated for (" << i << "," << j << ","
             << k << "): " << fmt_entry(i, k, direct) << " > "
             << fmt_entry(i, j, dij) << " + " << fmt_entry(j, k, at(j, k));
          throw ValidationError(os.str());
        }
      }
    }
  }
  return m;
}

FiniteMetric FiniteMetric::euclidean(
    std::size_t dim, const std::vector<std::vector<double>>& coords) {
  if (dim == 0) throw ValidationError("euclidean dimension must be positive");
  FiniteMetric m;
  m.kind_ = Kind::euclidean;
  m.dim_ = dim;
  m.size_ = coords.size();
  m.data_.reserve(dim * coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].size() != dim) {
      std::ostringstream os;
      os << "point " << i << " has " << coords[i].size()
         << " coordinates, expected " << dim;
      throw ValidationError(os.str());
    }
    for (double c : coords[i]) {
      if (!std::isfinite(c)) {
        throw ValidationError("non-finite coordinate at point " +
                              std::to_string(i));
      }
    }
    m.data_.insert(m.data_.end(), coords[i].begin(), coords[i].end());
  }
  return m;
}

void FiniteMetric::check(PointId p) const {
  if (p.index >= size_) {
    throw InvalidPointError("point id " + std::to_string(p.index) +
                            " out of range (universe size " +
                            std::to_string(size_) + ")");
  }
}

double FiniteMetric::distance(PointId a, PointId b) const {
  check(a);
  check(b);
  if (kind_ == Kind::matrix) return data_[a.index * size_ + b.index];
  const double* pa = data_.data() + a.index * dim_;
  const double* pb = data_.data() + b.index * dim_;
  double sum = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double diff = pa[k] - pb[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

std::span<const double> FiniteMetric::coords(PointId p) const {
  check(p);
  if (kind_ != Kind::euclidean) {
    throw InvalidArgumentError("coords() on a matrix metric");
  }
  return {data_.data() + p.index * dim_, dim_};
}

std::span<const double> FiniteMetric::matrix() const {
  if (kind_ != Kind::matrix) {
    throw InvalidArgumentError("matrix() on a euclidean metric");
  }
  return data_;
}

FiniteMetric FiniteMetric::with_tolerance(double tolerance) const {
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
    throw InvalidArgumentError("tolerance must be finite and nonnegative");
  }
  FiniteMetric copy = *this;
  copy.tolerance_ = tolerance;
  return copy;
}

std::vector<PointId> ball_members(const FiniteMetric& m,
                                  std::span<const PointId> candidates,
                                  PointId center, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgumentError("radius must be >= 0");
  std::vector<PointId> out;
  for (PointId p : candidates) {
    if (m.within(m.distance(center, p), radius)) out.push_back(p);
  }
  return out;
}

double diameter(const FiniteMetric& m, std::span<const PointId> support) {
  double best = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      best = std::max(best, m.distance(support[i], support[j]));
    }
  }
  return best;
}

double min_positive_distance(const FiniteMetric& m,
                             std::span<const PointId> support) {
  double best = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      const double d = m.distance(support[i], support[j]);
      if (d > 0.0 && (best == 0.0 || d < best)) best = d;
    }
  }
  return best;
}

double spread(const FiniteMetric& m, std::span<const PointId> support) {
  const double lo = min_positive_distance(m, support);
  if (lo == 0.0) {
    throw DegenerateSpreadError(
        "spread is undefined: support has no positive distance");
  }
  return diameter(m, support) / lo;
}

}  // namespace tclust
