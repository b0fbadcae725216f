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

#include <algorithm>
#include <cmath>
#include <limits>

namespace evplace {

namespace {

// Linear power segment p(s) = a + b * s valid while s < hi.
struct Segment {
  double a = 0.0;
  double b = 0.0;
  double hi = 1.0;
};

Segment segment_at(const ChargingCurve& curve, double s) {
  const auto& bp = curve.breakpoints;
  if (s < bp.front().first) {
    return {bp.front().second, 0.0, bp.front().first};
  }
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (s < bp[i].first) {
      double b = (bp[i].second - bp[i - 1].second) /
                 (bp[i].first - bp[i - 1].first);
      double a = bp[i - 1].second - b * bp[i - 1].first;
      return {a, b, bp[i].first};
    }
  }
  return {bp.back().second, 0.0, std::numeric_limits<double>::infinity()};
}

}  // namespace

double soc_after_charge(const ChargingCurve& curve, double battery_kwh,
                        double soc0, double duration_s) {
  if (duration_s < 0.0) {
    throw std::invalid_argument("soc_after_charge: negative duration");
  }
  if (battery_kwh <= 0.0) {
    throw std::invalid_argument("soc_after_charge: battery_kwh <= 0");
  }
  if (soc0 >= 1.0) return soc0;

  const double cap = battery_kwh;
  double t_rem = duration_s / 3600.0;  // curve power is kW, so time in hours
  double s = soc0;
  while (t_rem > 0.0 && s < 1.0) {
    Segment seg = segment_at(curve, s);
    double hi = std::min(seg.hi, 1.0);
    double p_now = seg.a + seg.b * s;
    if (p_now <= 0.0) break;  // zero-power equilibrium, no further progress
    if (seg.b == 0.0) {
      double t_hi = (hi - s) * cap / seg.a;
      if (t_hi > t_rem) {
        s += seg.a * t_rem / cap;
        t_rem = 0.0;
      } else {
        s = hi;
        t_rem -= t_hi;
      }
    } else {
      // s(t) = s + (p_now / b) * (exp(b * t / cap) - 1). The segment end is
      // unreachable when the power hits zero first, i.e. p(hi) <= 0.
      double ratio = seg.b * (hi - s) / p_now;
      double t_hi = ratio <= -1.0 ? std::numeric_limits<double>::infinity()
                                  : (cap / seg.b) * std::log1p(ratio);
      if (t_hi > t_rem) {
        s += (p_now / seg.b) * std::expm1(seg.b * t_rem / cap);
        t_rem = 0.0;
      } else {
        s = hi;
        t_rem -= t_hi;
      }
    }
  }
  return std::clamp(s, soc0, 1.0);
}

double trip_soc_delta(double trip_distance_km, const VehicleSpec& vehicle) {
  if (trip_distance_km < 0.0) {
    throw std::invalid_argument("trip_soc_delta: negative distance");
  }
  return trip_distance_km * vehicle.consumption_kwh_per_100km / 100.0 /
         vehicle.battery_kwh;
}

std::vector<Break> breaks_from_trips(std::span<const Trip> trips,
                                     const std::string& driver_id) {
  std::vector<Break> out;
  for (std::size_t i = 0; i + 1 < trips.size(); ++i) {
    if (trips[i + 1].start_time <= trips[i].end_time) continue;
    Break b;
    b.id = driver_id + "_b" + std::to_string(i);
    b.location = trips[i].end_location;
    b.start_time = trips[i].end_time;
    b.end_time = trips[i + 1].start_time;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace evplace
