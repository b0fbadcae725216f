// Copyright 2026 The evplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evplace/charging.hpp"

#include <cmath>
#include <set>

#include "doctest.h"
#include "evplace/rng.hpp"

namespace evplace {
namespace {

// Independent fixed-step explicit Euler integration of ds/dt = p(s)/C.
double euler_soc(const ChargingCurve& curve, double battery_kwh, double soc0,
                 double duration_s, double dt_s) {
  double s = soc0;
  double t = 0.0;
  while (t < duration_s && s < 1.0) {
    double step = std::min(dt_s, duration_s - t);
    s += curve.power_at(s) * (step / 3600.0) / battery_kwh;
    t += step;
  }
  return std::min(s, 1.0);
}

ChargingCurve random_curve(Rng& rng) {
  int pieces = static_cast<int>(rng.uniform_int(1, 3));
  ChargingCurve curve;
  double soc = 0.0;
  curve.breakpoints.emplace_back(0.0, rng.uniform(5.0, 150.0));
  for (int i = 1; i < pieces; ++i) {
    soc += rng.uniform(0.1, 0.8 / pieces);
    if (soc >= 0.95) break;
    curve.breakpoints.emplace_back(soc, rng.uniform(5.0, 150.0));
  }
  curve.breakpoints.emplace_back(1.0, rng.uniform(5.0, 150.0));
  curve.validate();
  return curve;
}

TEST_CASE("constant AC charge matches linear closed form") {
  ChargingCurve ac = ChargingCurve::constant(9.35);
  // 9.35 kW for one hour into 50 kWh adds exactly 0.187.
  CHECK(soc_after_charge(ac, 50.0, 0.5, 3600.0) == doctest::Approx(0.687).epsilon(1e-12));
  CHECK(soc_after_charge(ac, 50.0, 0.5, 0.0) == 0.5);
  // Clamp at full.
  CHECK(soc_after_charge(ac, 50.0, 0.9, 4 * 3600.0) == 1.0);
  // Already full or above: unchanged.
  CHECK(soc_after_charge(ac, 50.0, 1.0, 3600.0) == 1.0);
}

TEST_CASE("tapered DC charge matches exponential closed form") {
  VehicleSpec v = VehicleSpec::default_compact();
  const ChargingCurve& dc = v.curve(ChargingMode::DC);
  // From 50% the power is 110 - 100 s, so after 600 s the SOC is
  // 1.1 - 0.6 * exp(-1/3).
  double expected = 1.1 - 0.6 * std::exp(-1.0 / 3.0);
  CHECK(soc_after_charge(dc, 50.0, 0.5, 600.0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(soc_after_charge(dc, 50.0, 0.5, 600.0) ==
        doctest::Approx(0.6700812136557264).epsilon(1e-12));
  // Crossing the knee at 50%: flat 60 kW segment first. Reaching 0.5 from
  // 0.2 takes 0.25 h, the remaining 350 s continue on the taper.
  double t_knee_s = 0.25 * 3600.0;
  double rest = soc_after_charge(dc, 50.0, 0.5, 1250.0 - t_knee_s);
  CHECK(soc_after_charge(dc, 50.0, 0.2, 1250.0) ==
        doctest::Approx(rest).epsilon(1e-12));
}

TEST_CASE("Euler integration confirms the closed form") {
  Rng rng = substream(20260819, "euler-oracle");
  for (int trial = 0; trial < 40; ++trial) {
    ChargingCurve curve = random_curve(rng);
    double cap = rng.uniform(20.0, 100.0);
    double soc0 = rng.uniform(0.0, 0.95);
    double dur = rng.uniform(30.0, 3600.0);
    double exact = soc_after_charge(curve, cap, soc0, dur);
    double e1 = euler_soc(curve, cap, soc0, dur, 0.01);
    double e2 = euler_soc(curve, cap, soc0, dur, 0.005);
    // First-order method: |exact - e2| is about |e1 - e2|.
    double bound = 4.0 * std::abs(e1 - e2) + 1e-7;
    CHECK(std::abs(exact - e2) <= bound);
  }
}

TEST_CASE("charging is monotone in start SOC and duration") {
  Rng rng = substream(20260819, "charge-monotone");
  for (int trial = 0; trial < 30; ++trial) {
    ChargingCurve curve = random_curve(rng);
    double cap = rng.uniform(20.0, 100.0);
    double s1 = rng.uniform(0.0, 0.9);
    double s2 = s1 + rng.uniform(0.0, 1.0 - s1);
    double t1 = rng.uniform(0.0, 3600.0);
    double t2 = t1 + rng.uniform(0.0, 3600.0);
    CHECK(soc_after_charge(curve, cap, s1, t1) <=
          soc_after_charge(curve, cap, s2, t1) + 1e-12);
    CHECK(soc_after_charge(curve, cap, s1, t1) <=
          soc_after_charge(curve, cap, s1, t2) + 1e-12);
    // Charging in two stints equals one stint of the combined length.
    double split = soc_after_charge(curve, cap,
                                    soc_after_charge(curve, cap, s1, t1),
                                    t2 - t1);
    CHECK(split == doctest::Approx(soc_after_charge(curve, cap, s1, t2))
                       .epsilon(1e-9));
  }
}

TEST_CASE("zero-power plateau stops progress") {
  ChargingCurve stalled{{{0.0, 0.0}, {1.0, 0.0}}};
  CHECK(soc_after_charge(stalled, 50.0, 0.3, 7200.0) == 0.3);
}

TEST_CASE("negative SOC recovers through constant extrapolation") {
  ChargingCurve ac = ChargingCurve::constant(9.35);
  // Below the curve domain the first breakpoint power applies.
  CHECK(soc_after_charge(ac, 50.0, -0.1, 3600.0) ==
        doctest::Approx(-0.1 + 0.187).epsilon(1e-12));
}

TEST_CASE("trip consumption from distance") {
  VehicleSpec v = VehicleSpec::default_compact();
  CHECK(trip_soc_delta(26.0, v) == doctest::Approx(0.099996).epsilon(1e-12));
  CHECK(trip_soc_delta(260.0, v) == doctest::Approx(0.99996).epsilon(1e-12));
  CHECK(trip_soc_delta(0.0, v) == 0.0);
  CHECK_THROWS_AS(trip_soc_delta(-1.0, v), std::invalid_argument);
}

TEST_CASE("breaks derive from gaps between trips") {
  std::vector<Trip> trips(3);
  trips[0].start_time = 0;
  trips[0].end_time = 600;
  trips[0].end_location = Point{10.0, 20.0};
  trips[1].start_time = 1800;
  trips[1].end_time = 2400;
  trips[1].end_location = Point{30.0, 40.0};
  trips[2].start_time = 2400;  // back to back: no break
  trips[2].end_time = 3000;

  auto breaks = breaks_from_trips(trips, "d7");
  REQUIRE(breaks.size() == 1);
  CHECK(breaks[0].id == "d7_b0");
  CHECK(breaks[0].start_time == 600);
  CHECK(breaks[0].end_time == 1800);
  CHECK(breaks[0].location == Point{10.0, 20.0});
  CHECK(breaks[0].chargeable);
}

TEST_CASE("curve validation rejects malformed input") {
  CHECK_THROWS_AS((ChargingCurve{{{0.0, 10.0}}}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ChargingCurve{{{0.1, 10.0}, {1.0, 10.0}}}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ChargingCurve{{{0.0, 10.0}, {0.0, 5.0}, {1.0, 1.0}}}
                       .validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ChargingCurve{{{0.0, -1.0}, {1.0, 10.0}}}.validate()),
                  std::invalid_argument);
}

TEST_CASE("default vehicle parameters") {
  VehicleSpec v = VehicleSpec::default_compact();
  CHECK(v.battery_kwh == 50.0);
  CHECK(v.consumption_kwh_per_100km == 19.23);
  CHECK(v.curve(ChargingMode::AC).power_at(0.3) ==
        doctest::Approx(9.35).epsilon(1e-12));
  CHECK(v.curve(ChargingMode::DC).power_at(0.0) == 60.0);
  CHECK(v.curve(ChargingMode::DC).power_at(0.5) == 60.0);
  CHECK(v.curve(ChargingMode::DC).power_at(1.0) == 10.0);
  CHECK(v.curve(ChargingMode::DC).power_at(0.75) ==
        doctest::Approx(35.0).epsilon(1e-12));
}

TEST_CASE("rng streams are deterministic and independent") {
  Rng a = substream(42, "alpha");
  Rng a2 = substream(42, "alpha");
  Rng b = substream(42, "beta");
  std::vector<std::uint64_t> seq_a, seq_a2, seq_b;
  for (int i = 0; i < 8; ++i) {
    seq_a.push_back(a.next_u64());
    seq_a2.push_back(a2.next_u64());
    seq_b.push_back(b.next_u64());
  }
  CHECK(seq_a == seq_a2);
  CHECK(seq_a != seq_b);

  Rng c = substream(7, "ints");
  std::set<std::int64_t> seen;
  for (int i = 0; i < 200; ++i) {
    std::int64_t v = c.uniform_int(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);

  Rng d = substream(7, "perm");
  auto pick = d.sample_without_replacement(10, 4);
  CHECK(pick.size() == 4);
  CHECK(std::set<int>(pick.begin(), pick.end()).size() == 4);
}

}  // namespace
}  // namespace evplace
