#include "augpulse/forge/phase_correction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "augpulse/circuit/assembly.hpp"
#include "augpulse/errors.hpp"

namespace augpulse {

PhaseCorrectionTable::PhaseCorrectionTable() : corr_(kGridPoints, 0.0) {}

PhaseCorrectionTable::PhaseCorrectionTable(std::vector<double> c) : corr_(std::move(c)) {
  if (static_cast<int>(corr_.size()) != kGridPoints)
    throw UserError("phase correction table needs " + std::to_string(kGridPoints) + " rows");
}

double PhaseCorrectionTable::at(double theta_deg) const {
  const double t = std::clamp(std::abs(theta_deg), 0.0, 180.0) / kStep;
  const int i = std::min(static_cast<int>(t), kGridPoints - 2);
  const double f = t - i;
  return corr_[i] * (1 - f) + corr_[i + 1] * f;
}

std::string PhaseCorrectionTable::to_csv() const {
  std::ostringstream os;
  os << "theta_deg,correction_deg\n";
  for (int i = 0; i < kGridPoints; ++i)
    os << format_angle(grid_angle(i)) << ',' << format_angle(corr_[i]) << '\n';
  return os.str();
}

PhaseCorrectionTable PhaseCorrectionTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> vals;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#' || line.rfind("theta_deg", 0) == 0) continue;
    double theta = 0, c = 0;
    char comma = 0;
    std::istringstream ls(line);
    if (!(ls >> theta >> comma >> c) || comma != ',')
      throw ParseError(row, "expected theta_deg,correction_deg");
    if (std::abs(theta - grid_angle(static_cast<int>(vals.size()))) > 1e-9)
      throw ParseError(row, "theta off the 4.5 degree grid");
    vals.push_back(c);
  }
  return PhaseCorrectionTable(std::move(vals));
}

void PhaseCorrectionTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw UserError("cannot write '" + path + "'");
  out << to_csv();
}

PhaseCorrectionTable PhaseCorrectionTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_csv(ss.str());
}

}  // namespace augpulse
