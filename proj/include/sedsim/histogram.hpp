#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sedsim {

// Time-weighted occupancy of radial bins. Residence beyond r_max is tracked
// separately so that binned mass plus out-of-range mass always equals the
// total accumulated time.
class RadialHistogram {
 public:
  RadialHistogram() = default;
  RadialHistogram(double bin_width, double r_max);

  // Adds dt of residence at radius r. dt must be >= 0.
  void accumulate(double r, double dt);

  // Per-bin weights and total time add; throws std::invalid_argument on a
  // binning mismatch. Commutative and associative.
  void merge(const RadialHistogram& other);

  // Rebuilds a histogram from serialized pieces (checkpoint restore).
  static RadialHistogram restore(double bin_width, double r_max, std::vector<double> weights,
                                 double total_time, double out_of_range);

  struct DensityTable {
    std::vector<double> r_center;  // [cm]
    std::vector<double> p;         // [1/cm]
    double bin_width = 0.0;
  };

  // P_i = weights_i / (total_time * bin_width). Throws std::logic_error when
  // no time has been accumulated.
  DensityTable normalize() const;

  double bin_width() const { return bin_width_; }
  double r_max() const { return r_max_; }
  std::size_t bin_count() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double total_time() const { return total_time_; }
  double out_of_range_time() const { return out_of_range_; }
  bool same_binning(const RadialHistogram& other) const {
    return bin_width_ == other.bin_width_ && weights_.size() == other.weights_.size();
  }

 private:
  double bin_width_ = 0.0;
  double r_max_ = 0.0;
  std::vector<double> weights_;
  double total_time_ = 0.0;
  double out_of_range_ = 0.0;
};

RadialHistogram merge(RadialHistogram a, const RadialHistogram& b);

// Sum_i |P_i - ref(r_center_i)| * bin_width.
double l1_distance(const RadialHistogram::DensityTable& density,
                   const std::function<double(double)>& reference);

// Distance to the hydrogen ground-state density with Bohr radius `bohr`.
double l1_distance_to_qm(const RadialHistogram::DensityTable& density, double bohr);

}  // namespace sedsim
