#include <gtest/gtest.h>

#include <cmath>

#include "bsnoma/errors.hpp"
#include "bsnoma/scenario.hpp"

using namespace bsnoma;

TEST(Params, DefaultsMatchReferenceTable) {
  SystemParams p;
  EXPECT_DOUBLE_EQ(p.bw_hz, 1e6);
  EXPECT_NEAR(p.sigma2_n_w, 3.981e-15, 1e-18);
  EXPECT_DOUBLE_EQ(p.p_max_w, 10.0);
  EXPECT_DOUBLE_EQ(p.xi, 0.6);
  EXPECT_DOUBLE_EQ(p.p_c_ce_w, 0.1);
  EXPECT_DOUBLE_EQ(p.p_c_rsu_w, 1.0);
  EXPECT_NEAR(p.p_c_rs_w, 3.162e-7, 1e-10);
  EXPECT_DOUBLE_EQ(p.r_min, 0.5);
  EXPECT_DOUBLE_EQ(p.alpha, 4.0);
  EXPECT_NO_THROW(p.validate());
}

TEST(Params, ValidateRejectsBrokenInvariants) {
  SystemParams p;
  p.rho = 1.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = SystemParams{};
  p.t_t = {0.6, 0.5};
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = SystemParams{};
  p.xi = 1.5;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = SystemParams{};
  p.i_max = 0;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Units, DbmConversion) {
  EXPECT_DOUBLE_EQ(dbm_to_watt(40.0), 10.0);
  EXPECT_DOUBLE_EQ(dbm_to_watt(30.0), 1.0);
  EXPECT_NEAR(watt_to_dbm(1e-3), 0.0, 1e-12);
}

TEST(Bpp, PointsInsideDiscAndDeterministic) {
  const Topology a = place_sensors_bpp(2, 5.0, 7);
  const Topology b = place_sensors_bpp(2, 5.0, 7);
  ASSERT_TRUE(a.positions.has_value());
  ASSERT_EQ(a.positions->sensors.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_LE(distance(a.positions->ce, a.positions->sensors[k]), 5.0);
    EXPECT_EQ(a.positions->sensors[k].x, b.positions->sensors[k].x);
    EXPECT_EQ(a.positions->sensors[k].y, b.positions->sensors[k].y);
    EXPECT_EQ(a.d_f[k], b.d_f[k]);
  }
  EXPECT_NO_THROW(a.validate());
}

TEST(Bpp, MeanRadiusIsTwoThirdsOfDisc) {
  const Topology t = place_sensors_bpp(1000, 5.0, 1);
  double sum = 0.0;
  for (double d : t.d_f) sum += d;
  EXPECT_NEAR(sum / 1000.0, 5.0 * 2.0 / 3.0, 0.02 * 5.0 * 2.0 / 3.0);
}

TEST(Bpp, DistancesToReaderFollowPositions) {
  const Point rsu{40.0, 0.0};
  const Topology t = place_sensors_bpp(3, 5.0, 11, rsu);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(t.d_b[k], distance(rsu, t.positions->sensors[k]), 1e-12);
  }
}

TEST(Bpp, RejectsBadArguments) {
  EXPECT_THROW(place_sensors_bpp(0, 5.0, 1), InvalidArgument);
  EXPECT_THROW(place_sensors_bpp(2, 0.0, 1), InvalidArgument);
  EXPECT_THROW(place_sensors_bpp(2, -1.0, 1), InvalidArgument);
}

TEST(Channels, CompositeLargeScaleGain) {
  SystemParams p;
  const auto ch = sample_channels(Topology::fixed({5.0, 5.0}, {30.0, 30.0}), p, 3);
  const double expect = std::pow(5.0, -4.0) * std::pow(30.0, -4.0);
  EXPECT_NEAR(ch.d_k[0], 1.975e-9, 1e-12);
  EXPECT_NEAR(ch.d_k[0], expect, 1e-12 * expect);
  EXPECT_NEAR(ch.d_k[1], expect, 1e-12 * expect);
}

TEST(Channels, ZeroExponentGivesUnitGain) {
  SystemParams p;
  p.alpha = 0.0;
  const auto ch = sample_channels(Topology::fixed({3.0, 9.0}, {20.0, 70.0}), p, 3);
  EXPECT_EQ(ch.d_k[0], 1.0);
  EXPECT_EQ(ch.d_k[1], 1.0);
}

TEST(Channels, ForwardGainConventions) {
  SystemParams p;
  const Topology topo = Topology::fixed({10.0, 5.0}, {50.0, 30.0});
  const auto power = sample_channels(topo, p, 9);
  p.path_loss = PathLossConvention::kAmplitude;
  const auto amplitude = sample_channels(topo, p, 9);
  for (std::size_t k = 0; k < 2; ++k) {
    const double lf = std::pow(topo.d_f[k], -4.0);
    EXPECT_NEAR(power.g_f[k], lf * std::norm(power.h_f[k]), 1e-15 * power.g_f[k]);
    EXPECT_NEAR(amplitude.g_f[k], lf * lf * std::norm(amplitude.h_f[k]), 1e-15 * amplitude.g_f[k]);
  }
}

TEST(Channels, RayleighPowerHasUnitMean) {
  SystemParams p;
  const Topology topo = Topology::fixed({1.0, 1.0}, {1.0, 1.0});
  double sum = 0.0;
  const int n = 50000;
  for (int s = 0; s < n; ++s) {
    const auto ch = sample_channels(topo, p, static_cast<std::uint64_t>(s));
    sum += std::norm(ch.h_f[0]) + std::norm(ch.h_f[1]);
  }
  EXPECT_NEAR(sum / (2.0 * n), 1.0, 0.02);
}

TEST(Channels, SamePseudoRandomDrawsForSameSeed) {
  SystemParams p;
  const Topology topo = Topology::fixed({10.0, 5.0}, {50.0, 30.0});
  const auto a = make_channel(topo, p, 77);
  const auto b = make_channel(topo, p, 77);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a.h_f[k], b.h_f[k]);
    EXPECT_EQ(a.g_hat[k], b.g_hat[k]);
  }
}

TEST(Csi, PerfectCsiLimit) {
  SystemParams p;
  p.rho = 0.0;
  const auto ch = make_channel(Topology::fixed({10.0, 5.0}, {50.0, 30.0}), p, 5);
  EXPECT_EQ(ch.sigma2_e, 0.0);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(ch.sigma2_hat[k], ch.d_k[k]);
}

TEST(Csi, ErrorVarianceFromFarSensor) {
  SystemParams p;
  p.rho = 0.005;
  const auto ch = make_channel(Topology::fixed({5.0, 5.0}, {30.0, 30.0}), p, 5);
  EXPECT_NEAR(ch.sigma2_e, 9.877e-12, 1e-15);
}

TEST(Csi, DecompositionIdentity) {
  SystemParams p;
  p.rho = 0.007;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto ch = make_channel(Topology::fixed({10.0, 5.0}, {50.0, 30.0}), p, s);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(ch.sigma2_hat[k] + ch.sigma2_e_k[k], ch.d_k[k], 1e-15 * ch.d_k[k]);
    }
    EXPECT_EQ(ch.sigma2_e, p.rho * std::min(ch.d_k[0], ch.d_k[1]));
  }
}

TEST(Csi, RelabelsSoSecondSensorIsStronger) {
  SystemParams p;
  int swapped = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto raw = sample_channels(Topology::fixed({10.0, 5.0}, {50.0, 30.0}), p, s);
    const auto ch = estimate_csi(raw, p);
    EXPECT_GT(ch.g_hat[1], ch.g_hat[0]);
    if (ch.source[0] == 1) {
      ++swapped;
      EXPECT_EQ(ch.h_f[0], raw.h_f[1]);
      EXPECT_EQ(ch.d_k[0], raw.d_k[1]);
    }
  }
  EXPECT_GT(swapped, 0);
}

TEST(Csi, IdempotentOnOrderedChannel) {
  SystemParams p;
  const auto once = make_channel(Topology::fixed({10.0, 5.0}, {50.0, 30.0}), p, 21);
  const auto twice = estimate_csi(once, p);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(once.g_hat[k], twice.g_hat[k]);
    EXPECT_EQ(once.g_f[k], twice.g_f[k]);
    EXPECT_EQ(once.source[k], twice.source[k]);
  }
  EXPECT_EQ(once.sigma2_e, twice.sigma2_e);
}

TEST(Csi, RejectsRhoOfOne) {
  SystemParams p;
  const auto raw = sample_channels(Topology::fixed({10.0, 5.0}, {50.0, 30.0}), p, 1);
  p.rho = 1.0;
  EXPECT_THROW(estimate_csi(raw, p), InvalidArgument);
}

TEST(Energy, IncidentPower) {
  EXPECT_DOUBLE_EQ(incident_power(1.0, 1e-8), 1e-8);
  EXPECT_EQ(incident_power(0.0, 0.3), 0.0);
  EXPECT_NEAR(incident_power(10.0, 1.975e-9), 1.975e-8, 1e-22);
}

TEST(Energy, HarvestedPowerModes) {
  SystemParams p;
  EXPECT_EQ(harvested_power(1e-3, 1.0, p, 0).transmission_w, 0.0);
  const auto h = harvested_power(1e-6, 0.4, p, 0);
  EXPECT_NEAR(h.transmission_w, 1.8e-7, 1e-20);
  EXPECT_NEAR(h.harvesting_w, 3e-7, 1e-20);
  EXPECT_NEAR(h.total(), 4.8e-7, 1e-20);
  EXPECT_THROW(harvested_power(1e-6, 0.0, p, 0), InvalidArgument);
  EXPECT_THROW(harvested_power(1e-6, 1.1, p, 0), InvalidArgument);
}

TEST(Seeds, MixSeedSeparatesStreams) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(5, 3), mix_seed(5, 3));
}
