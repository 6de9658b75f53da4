#include "augpulse/pulse/envelope.hpp"

#include <cmath>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

constexpr double kAmpSlack = 1e-12;

void check_common(const Envelope& e) {
  if (e.duration <= 0) throw UserError("envelope duration must be positive");
  if (std::abs(e.amp) > 1.0 + kAmpSlack) throw AmplitudeOverflow("envelope |amp| > 1");
  if (!std::isfinite(e.amp.real()) || !std::isfinite(e.amp.imag()))
    throw UserError("envelope amplitude not finite");
}

void check_sigma(const Envelope& e) {
  if (!(e.sigma > 0.0)) throw UserError("envelope sigma must be positive");
}

double gauss(double x, double sigma) { return std::exp(-x * x / (2.0 * sigma * sigma)); }

}  // namespace

Envelope Envelope::gaussian(cplx amp, int duration, double sigma) {
  Envelope e;
  e.shape = Shape::Gaussian;
  e.amp = amp;
  e.duration = duration;
  e.sigma = sigma;
  check_common(e);
  check_sigma(e);
  return e;
}

Envelope Envelope::drag(cplx amp, int duration, double sigma, double beta) {
  Envelope e = gaussian(amp, duration, sigma);
  e.shape = Shape::Drag;
  e.beta = beta;
  return e;
}

Envelope Envelope::gaussian_square(cplx amp, int duration, double sigma, int width) {
  Envelope e = gaussian(amp, duration, sigma);
  e.shape = Shape::GaussianSquare;
  if (width < 0 || width > duration) throw UserError("flat-top width outside [0, duration]");
  e.width = width;
  return e;
}

Envelope Envelope::constant(cplx amp, int duration) {
  Envelope e;
  e.shape = Shape::Constant;
  e.amp = amp;
  e.duration = duration;
  check_common(e);
  return e;
}

Envelope Envelope::frequency_shifted(const Envelope& base, double detuning_ghz, double dt_ns) {
  if (base.shape == Shape::FrequencyShifted)
    return frequency_shifted(*base.base, base.detuning_ghz + detuning_ghz, dt_ns);
  if (!(dt_ns > 0.0)) throw UserError("frequency shift needs dt > 0");
  Envelope e;
  e.shape = Shape::FrequencyShifted;
  e.amp = base.amp;
  e.duration = base.duration;
  e.detuning_ghz = detuning_ghz;
  e.dt_ns = dt_ns;
  e.base = std::make_shared<const Envelope>(base);
  return e;
}

Envelope Envelope::scaled(cplx factor) const {
  if (shape == Shape::FrequencyShifted)
    return frequency_shifted(base->scaled(factor), detuning_ghz, dt_ns);
  Envelope e = *this;
  e.amp *= factor;
  check_common(e);
  return e;
}

Envelope Envelope::with_width(int new_width) const {
  if (shape != Shape::GaussianSquare) throw UserError("with_width needs a GaussianSquare");
  const int rise = duration - width;
  return gaussian_square(amp, new_width + rise, sigma, new_width);
}

cplx Envelope::peak_amp() const { return shape == Shape::FrequencyShifted ? base->amp : amp; }

bool Envelope::operator==(const Envelope& o) const {
  if (shape != o.shape || amp != o.amp || duration != o.duration || sigma != o.sigma ||
      beta != o.beta || width != o.width || detuning_ghz != o.detuning_ghz || dt_ns != o.dt_ns)
    return false;
  if (!base || !o.base) return !base && !o.base;
  return *base == *o.base;
}

std::vector<cplx> render_samples(const Envelope& e) {
  std::vector<cplx> out(static_cast<size_t>(e.duration));
  const double T = e.duration;
  switch (e.shape) {
    case Shape::Constant:
      std::fill(out.begin(), out.end(), e.amp);
      break;
    case Shape::Gaussian:
    case Shape::Drag:
      for (int t = 0; t < e.duration; ++t) {
        const double x = t + 0.5 - T / 2.0;
        const double g = gauss(x, e.sigma);
        const double dg = -x / (e.sigma * e.sigma) * g;
        out[t] = e.amp * (g + (e.shape == Shape::Drag ? kI * e.beta * dg : cplx{}));
      }
      break;
    case Shape::GaussianSquare: {
      const double rise = (T - e.width) / 2.0;
      for (int t = 0; t < e.duration; ++t) {
        const double tc = t + 0.5;
        double v = 1.0;
        if (tc < rise) v = gauss(tc - rise, e.sigma);
        else if (tc > rise + e.width) v = gauss(tc - rise - e.width, e.sigma);
        out[t] = e.amp * v;
      }
      break;
    }
    case Shape::FrequencyShifted: {
      out = render_samples(*e.base);
      const double step = 2.0 * kPi * e.detuning_ghz * e.dt_ns;
      for (int t = 0; t < e.duration; ++t) out[t] *= std::exp(kI * (step * t));
      break;
    }
  }
  for (const auto& s : out)
    if (std::abs(s) > 1.0 + kAmpSlack)
      throw AmplitudeOverflow(std::string(shape_name(e.shape)) + " sample magnitude " +
                              std::to_string(std::abs(s)) + " exceeds 1");
  return out;
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Gaussian: return "gaussian";
    case Shape::Drag: return "drag";
    case Shape::GaussianSquare: return "gaussian_square";
    case Shape::Constant: return "constant";
    case Shape::FrequencyShifted: return "frequency_shifted";
  }
  return "?";
}

}  // namespace augpulse
