#include "cion/core.hpp"

#include <cmath>

namespace cion {

std::size_t FeatureStore::append(std::span<const float> v) {
  if (dim_ == 0) dim_ = v.size();
  if (v.size() != dim_) throw ShapeMismatch("FeatureStore: dimension mismatch");
  for (float x : v) {
    if (!std::isfinite(x)) throw Error("FeatureStore: non-finite entry");
  }
  const std::size_t row = size();
  data_.insert(data_.end(), v.begin(), v.end());
  return row;
}

FeatureD centroid(const std::vector<FeatureD>& members) {
  if (members.empty()) throw EmptySet("centroid: empty member list");
  const std::size_t dim = members.front().size();
  FeatureD mean(dim, 0.0);
  for (const FeatureD& m : members) {
    if (m.size() != dim) throw ShapeMismatch("centroid: dimension mismatch");
    for (std::size_t d = 0; d < dim; ++d) mean[d] += m[d];
  }
  const double inv = 1.0 / static_cast<double>(members.size());
  for (double& x : mean) x *= inv;
  return mean;
}

void add_rows(const FeatureStore& fs, std::span<const std::uint32_t> rows,
              FeatureD& sum) {
  for (std::uint32_t r : rows) {
    const auto v = fs.row(r);
    for (std::size_t d = 0; d < v.size(); ++d) sum[d] += v[d];
  }
}

FeatureD centroid(const FeatureStore& fs, std::span<const std::uint32_t> rows) {
  if (rows.empty()) throw EmptySet("centroid: empty row set");
  FeatureD mean(fs.dim(), 0.0);
  add_rows(fs, rows, mean);
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& x : mean) x *= inv;
  return mean;
}

Hypersphere bounding_sphere(const FeatureStore& fs,
                            std::span<const std::uint32_t> rows) {
  Hypersphere s;
  s.centroid = centroid(fs, rows);
  const double nc = norm(std::span<const double>(s.centroid));
  double r = 0.0;
  for (std::uint32_t i : rows) {
    const auto v = fs.row(i);
    r = std::max(r, cosine_distance_prenormed(v, norm(v),
                                              std::span<const double>(s.centroid), nc));
  }
  s.radius = r;
  return s;
}

}  // namespace cion
