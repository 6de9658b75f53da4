#pragma once

#include <memory>
#include <vector>

#include "augpulse/linalg.hpp"

namespace augpulse {

enum class Shape { Gaussian, Drag, GaussianSquare, Constant, FrequencyShifted };

// Sampled complex waveform description. Samples are taken at bin centres
// (t + 0.5) so symmetric shapes render symmetrically.
struct Envelope {
  Shape shape = Shape::Constant;
  cplx amp{0.0, 0.0};
  int duration = 0;
  double sigma = 0.0;         // dt
  double beta = 0.0;          // DRAG coefficient, dt
  int width = 0;              // GaussianSquare flat top, dt
  double detuning_ghz = 0.0;  // FrequencyShifted only
  double dt_ns = 0.0;         // FrequencyShifted only
  std::shared_ptr<const Envelope> base;

  static Envelope gaussian(cplx amp, int duration, double sigma);
  static Envelope drag(cplx amp, int duration, double sigma, double beta);
  static Envelope gaussian_square(cplx amp, int duration, double sigma, int width);
  static Envelope constant(cplx amp, int duration);
  // Multiplies the base samples by exp(+i 2 pi detuning t dt), so mixing the
  // result with f equals mixing the base with f + detuning.
  static Envelope frequency_shifted(const Envelope& base, double detuning_ghz, double dt_ns);

  // Uniformly scales the complex amplitude (the base for FrequencyShifted).
  Envelope scaled(cplx factor) const;
  Envelope with_width(int new_width) const;
  // Peak amplitude, looking through FrequencyShifted wrappers.
  cplx peak_amp() const;

  bool operator==(const Envelope& o) const;
};

// Throws AmplitudeOverflow if any sample exceeds unit magnitude.
std::vector<cplx> render_samples(const Envelope& e);

const char* shape_name(Shape s);

}  // namespace augpulse
