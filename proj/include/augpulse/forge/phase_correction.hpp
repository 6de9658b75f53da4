#pragma once

#include <string>
#include <vector>

namespace augpulse {

// Corrective Z phase (degrees) per DirectRx angle on a fixed 0..180 grid.
class PhaseCorrectionTable {
 public:
  static constexpr int kGridPoints = 41;
  static constexpr double kStep = 4.5;

  PhaseCorrectionTable();  // all zeros
  explicit PhaseCorrectionTable(std::vector<double> corrections_deg);

  // Linear interpolation; |theta| is used, theta clamped to [0, 180].
  double at(double theta_deg) const;
  const std::vector<double>& values() const { return corr_; }
  static double grid_angle(int i) { return i * kStep; }

  // CSV with header `theta_deg,correction_deg`.
  std::string to_csv() const;
  static PhaseCorrectionTable from_csv(const std::string& text);
  void save(const std::string& path) const;
  static PhaseCorrectionTable load(const std::string& path);

 private:
  std::vector<double> corr_;
};

}  // namespace augpulse
