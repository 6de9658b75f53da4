#include <gtest/gtest.h>

#include <random>

#include "augpulse/errors.hpp"
#include "augpulse/pulse/mock_backend.hpp"
#include "augpulse/pulse/schedule.hpp"
#include "support.hpp"

using namespace augpulse;
using augpulse::fixtures::mock;

TEST(Envelope, ConstantSamples) {
  const auto s = render_samples(Envelope::constant(0.5, 4));
  ASSERT_EQ(s.size(), 4u);
  for (const auto& v : s) EXPECT_EQ(v, cplx(0.5, 0.0));
}

TEST(Envelope, DragWithZeroBetaIsGaussian) {
  const auto g = render_samples(Envelope::gaussian(0.3, 160, 40));
  const auto d = render_samples(Envelope::drag(0.3, 160, 40, 0.0));
  ASSERT_EQ(g.size(), d.size());
  for (size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], d[i]);
}

TEST(Envelope, FrequencyShiftedConstantRotatesPhase) {
  const double dt = 0.22, alpha = -0.3;
  const auto s = render_samples(Envelope::frequency_shifted(Envelope::constant(0.109, 159), alpha, dt));
  const double step = 2.0 * kPi * alpha * dt;
  for (size_t t = 0; t < s.size(); ++t) {
    EXPECT_NEAR(std::abs(s[t]), 0.109, 1e-15);
    EXPECT_LT(std::abs(s[t] - 0.109 * std::exp(kI * (step * static_cast<double>(t)))), 1e-13);
  }
}

TEST(Envelope, AmplitudeAndShapeChecks) {
  EXPECT_THROW(Envelope::constant(1.5, 4), AmplitudeOverflow);
  EXPECT_THROW(Envelope::gaussian(0.5, 0, 4), UserError);
  EXPECT_THROW(Envelope::gaussian(0.5, 10, 0), UserError);
  EXPECT_THROW(Envelope::gaussian_square(0.5, 10, 2, 11), UserError);
  // A legal peak with a large DRAG term overshoots.
  EXPECT_THROW(render_samples(Envelope::drag(1.0, 40, 4, 20)), AmplitudeOverflow);
}

TEST(Envelope, RandomEnvelopesStayWithinUnitMagnitude) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  int rendered = 0;
  for (int i = 0; i < 300; ++i) {
    const int dur = 16 + static_cast<int>(u(rng) * 600);
    const double amp = u(rng), sigma = 2 + u(rng) * dur / 4.0;
    const cplx a = std::polar(amp, 2 * kPi * u(rng));
    Envelope e;
    switch (i % 4) {
      case 0: e = Envelope::gaussian(a, dur, sigma); break;
      case 1: e = Envelope::drag(a, dur, sigma, (u(rng) - 0.5) * 4); break;
      case 2: e = Envelope::gaussian_square(a, dur, sigma, static_cast<int>(u(rng) * dur)); break;
      default: e = Envelope::frequency_shifted(Envelope::gaussian(a, dur, sigma), u(rng) - 0.5, 0.22);
    }
    try {
      for (const auto& s : render_samples(e)) ASSERT_LE(std::abs(s), 1.0 + 1e-12);
      ++rendered;
    } catch (const AmplitudeOverflow&) {
      // only DRAG can overshoot its peak amplitude
      EXPECT_EQ(e.shape, Shape::Drag);
    }
  }
  EXPECT_GT(rendered, 250);
}

TEST(Envelope, GaussianAreaIsLinearInAmplitude) {
  auto area = [](double a) {
    double s = 0;
    for (const auto& v : render_samples(Envelope::gaussian(a, 160, 40))) s += std::abs(v);
    return s;
  };
  EXPECT_NEAR(area(0.4) / area(0.1), 4.0, 1e-12);
  EXPECT_NEAR(area(0.05) / area(0.1), 0.5, 1e-12);
}

TEST(Schedule, AsapPlacement) {
  PulseSchedule s;
  s.add(play("d0", Envelope::gaussian(0.1, 160, 40)), Align::Asap);
  EXPECT_EQ(s.instructions()[0].start, 0);
  s.add(play("d0", Envelope::gaussian(0.1, 160, 40)), Align::Asap);
  EXPECT_EQ(s.instructions()[1].start, 160);
  EXPECT_EQ(s.duration(), 320);
}

TEST(Schedule, AppendIsPersistent) {
  PulseSchedule a;
  const PulseSchedule b = append(a, play("d0", Envelope::constant(0.1, 8)), Align::Asap);
  EXPECT_TRUE(a.empty());
  EXPECT_EQ(b.duration(), 8);
}

TEST(Schedule, OverlapIsRejected) {
  PulseSchedule s;
  s.add(play("d0", Envelope::constant(0.1, 100), 0));
  EXPECT_THROW(s.add(play("d0", Envelope::constant(0.1, 10), 50)), OverlapError);
  EXPECT_NO_THROW(s.add(play("d1", Envelope::constant(0.1, 10), 50)));
  EXPECT_NO_THROW(s.add(frame_change("d0", 30, 50)));
}

TEST(Render, EmptyChannelIsZero) {
  PulseSchedule s;
  s.add(play("d0", Envelope::constant(0.1, 10)));
  s.add(frame_change("d1", 90));
  const auto r = render_channel(s, "d1", 0.22);
  EXPECT_EQ(r.size(), 10u);
  for (const auto& v : r) EXPECT_EQ(v, cplx(0, 0));
  EXPECT_THROW(render_channel(s, "d7", 0.22), UnknownChannel);
}

TEST(Render, FrameChangesComposeAdditively) {
  PulseSchedule a, b;
  for (PulseSchedule* s : {&a, &b}) s->add(play("d0", Envelope::constant(0.2, 4)), Align::Asap);
  a.add(frame_change("d0", 30), Align::Asap);
  a.add(frame_change("d0", 50), Align::Asap);
  b.add(frame_change("d0", 80), Align::Asap);
  for (PulseSchedule* s : {&a, &b}) s->add(play("d0", Envelope::constant(0.2, 4)), Align::Asap);
  const auto ra = render_channel(a, "d0", 0.22), rb = render_channel(b, "d0", 0.22);
  for (size_t i = 0; i < ra.size(); ++i) EXPECT_LT(std::abs(ra[i] - rb[i]), 1e-15);
  EXPECT_LT(std::abs(ra[5] - std::polar(0.2, deg2rad(80))), 1e-15);
}

TEST(MixLo, QuarterPeriodCosine) {
  PulseSchedule s;
  s.add(play("d0", Envelope::constant(1.0, 8)));
  const double dt = 0.25, f = 1.0;  // 2 pi f dt = pi / 2
  const auto m = mix_lo(s, "d0", f, dt);
  const double want[] = {1, 0, -1, 0, 1, 0, -1, 0};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(m[i], want[i], 1e-12);
}

TEST(MixLo, FrequencyShiftEqualsShiftedCarrier) {
  const double dt = 0.22, f01 = 5.0, delta = -0.3;
  const Envelope base = Envelope::drag(0.3, 160, 40, -1.2);
  PulseSchedule a, b;
  a.add(play("d0", Envelope::frequency_shifted(base, delta, dt)));
  b.add(play("d0", base));
  const auto ma = mix_lo(a, "d0", f01, dt), mb = mix_lo(b, "d0", f01 + delta, dt);
  for (size_t i = 0; i < ma.size(); ++i) EXPECT_NEAR(ma[i], mb[i], 1e-12);
}

TEST(MixLo, LinearInSchedule) {
  const Envelope e1 = Envelope::gaussian(0.3, 64, 16), e2 = Envelope::constant(cplx(0.1, 0.2), 64);
  PulseSchedule a, b, both;
  a.add(play("d0", e1));
  b.add(play("d0", e2));
  // Envelopes cannot overlap on one channel, so compare against mixing the summed samples.
  const auto ra = mix_lo(a, "d0", 4.9, 0.22), rb = mix_lo(b, "d0", 4.9, 0.22);
  const auto s1 = render_samples(e1), s2 = render_samples(e2);
  for (size_t t = 0; t < ra.size(); ++t) {
    const cplx d = s1[t] + s2[t];
    const double want = (d * std::exp(kI * (2 * kPi * 4.9 * 0.22 * static_cast<double>(t)))).real();
    EXPECT_NEAR(ra[t] + rb[t], want, 1e-12);
  }
}

TEST(Backend, BundledMockLoads) {
  const BackendConfig& b = mock();
  EXPECT_DOUBLE_EQ(b.dt_ns, 0.22);
  ASSERT_EQ(b.num_qubits(), 2);
  EXPECT_DOUBLE_EQ(b.qubits[0].f01_ghz, 5.0);
  EXPECT_DOUBLE_EQ(b.qubits[0].alpha_ghz, -0.3);
  EXPECT_DOUBLE_EQ(b.qubits[0].t1_us, 94.0);
  EXPECT_DOUBLE_EQ(b.qubits[0].t2_us, 88.0);
  EXPECT_EQ(b.find_cmd("x", {0})->duration(), 160);
  EXPECT_EQ(b.find_cmd("rx90", {1})->duration(), 160);
  EXPECT_EQ(b.find_cmd("cnot", {0, 1})->duration(), 1344);
}

TEST(Backend, JsonRoundTrip) {
  EXPECT_EQ(backend_from_json(backend_to_json(mock())), mock());
  const PulseSchedule& s = *mock().find_cmd("cnot", {1, 0});
  EXPECT_EQ(schedule_from_json(schedule_to_json(s)), s);
}

TEST(Backend, InvariantViolationsCarryPointer) {
  auto j = backend_to_json(mock());
  j["qubits"][1]["t2_us"] = 200.0;
  try {
    backend_from_json(j);
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.pointer, "/qubits/1/t2_us");
  }
}

TEST(Backend, SchemaErrors) {
  auto j = backend_to_json(mock());
  j.erase("dt_ns");
  EXPECT_THROW(backend_from_json(j), SchemaError);
  j = backend_to_json(mock());
  j["format_version"] = 99;
  EXPECT_THROW(backend_from_json(j), SchemaError);
  j = backend_to_json(mock());
  j["cmd_def"].erase(j["cmd_def"].begin());
  EXPECT_THROW(backend_from_json(j), InvariantViolation);
  EXPECT_THROW(load_backend("/nonexistent/backend.json"), UserError);
}

TEST(Backend, MockBuilderMatchesShippedTimings) {
  const BackendConfig b = build_mock_backend(MockParams{});
  EXPECT_EQ(b.find_cmd("x", {0})->duration(), 160);
  EXPECT_EQ(b.find_cmd("cnot", {0, 1})->duration(), 1344);
  const BackendConfig line = build_mock_backend(line_mock_params(MockParams{}, 5));
  EXPECT_EQ(line.num_qubits(), 5);
  EXPECT_EQ(line.control_channels.size(), 8u);
  EXPECT_NE(line.control_channel(3, 4), nullptr);
  EXPECT_EQ(line.control_channel(0, 2), nullptr);
}
