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

#ifndef EVPLACE_CHARGING_H_
#define EVPLACE_CHARGING_H_

#include <span>
#include <string>
#include <vector>

#include "evplace/types.hpp"

namespace evplace {

// State of charge after charging for duration_s seconds starting at soc0,
// following ds/dt = p(s) / capacity with p piecewise linear. Solved exactly
// segment by segment; the result is clamped to [soc0, 1].
double soc_after_charge(const ChargingCurve& curve, double battery_kwh,
                        double soc0, double duration_s);

// Battery fraction consumed by a trip of the given length.
double trip_soc_delta(double trip_distance_km, const VehicleSpec& vehicle);

// Breaks between consecutive trips of one day schedule. Zero-length gaps are
// skipped; the break location is the end of the earlier trip. Ids are
// "<driver_id>_b<k>" with k the index of the earlier trip.
std::vector<Break> breaks_from_trips(std::span<const Trip> trips,
                                     const std::string& driver_id);

}  // namespace evplace

#endif  // EVPLACE_CHARGING_H_
