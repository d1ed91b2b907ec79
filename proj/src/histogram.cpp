#include "sedsim/histogram.hpp"

#include <cmath>
#include <stdexcept>

#include "sedsim/constants.hpp"

namespace sedsim {

RadialHistogram::RadialHistogram(double bin_width, double r_max)
    : bin_width_(bin_width), r_max_(r_max) {
  if (!(bin_width > 0.0) || !(r_max > bin_width))
    throw std::invalid_argument("RadialHistogram: need 0 < bin_width < r_max");
  weights_.assign(static_cast<std::size_t>(std::ceil(r_max / bin_width)), 0.0);
}

void RadialHistogram::accumulate(double r, double dt) {
  if (dt < 0.0) throw std::invalid_argument("accumulate: dt must be >= 0");
  total_time_ += dt;
  const auto bin = static_cast<std::size_t>(std::floor(r / bin_width_));
  if (r < 0.0 || bin >= weights_.size()) {
    out_of_range_ += dt;
    return;
  }
  weights_[bin] += dt;
}

void RadialHistogram::merge(const RadialHistogram& other) {
  if (!same_binning(other)) throw std::invalid_argument("merge: histogram binning mismatch");
  for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += other.weights_[i];
  total_time_ += other.total_time_;
  out_of_range_ += other.out_of_range_;
}

RadialHistogram merge(RadialHistogram a, const RadialHistogram& b) {
  a.merge(b);
  return a;
}

RadialHistogram RadialHistogram::restore(double bin_width, double r_max,
                                         std::vector<double> weights, double total_time,
                                         double out_of_range) {
  RadialHistogram h(bin_width, r_max);
  if (weights.size() != h.weights_.size())
    throw std::invalid_argument("restore: weight count does not match binning");
  h.weights_ = std::move(weights);
  h.total_time_ = total_time;
  h.out_of_range_ = out_of_range;
  return h;
}

RadialHistogram::DensityTable RadialHistogram::normalize() const {
  if (!(total_time_ > 0.0)) throw std::logic_error("normalize: histogram holds no time");
  DensityTable table;
  table.bin_width = bin_width_;
  table.r_center.resize(weights_.size());
  table.p.resize(weights_.size());
  const double norm = 1.0 / (total_time_ * bin_width_);
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    table.r_center[i] = (static_cast<double>(i) + 0.5) * bin_width_;
    table.p[i] = weights_[i] * norm;
  }
  return table;
}

double l1_distance(const RadialHistogram::DensityTable& density,
                   const std::function<double(double)>& reference) {
  double sum = 0.0;
  for (std::size_t i = 0; i < density.p.size(); ++i)
    sum += std::abs(density.p[i] - reference(density.r_center[i])) * density.bin_width;
  return sum;
}

double l1_distance_to_qm(const RadialHistogram::DensityTable& density, double bohr) {
  return l1_distance(density, [bohr](double r) { return qm_radial_density(r, bohr); });
}

}  // namespace sedsim
