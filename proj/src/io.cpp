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

#include "evplace/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace evplace {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

// Strictness backbone: every object must carry exactly known keys.
void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& required,
                 const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (required.count(item.key()) == 0 && optional.count(item.key()) == 0) {
      fail(where, "unknown key \"" + item.key() + "\"");
    }
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) fail(where, "missing key \"" + key + "\"");
  }
}

double number_of(const json& obj, const std::string& where,
                 const std::string& key) {
  const json& value = obj.at(key);
  if (!value.is_number()) fail(where, "key \"" + key + "\" must be a number");
  return value.get<double>();
}

std::int64_t integer_of(const json& obj, const std::string& where,
                        const std::string& key) {
  const json& value = obj.at(key);
  if (!value.is_number_integer()) {
    fail(where, "key \"" + key + "\" must be an integer");
  }
  return value.get<std::int64_t>();
}

std::string string_of(const json& obj, const std::string& where,
                      const std::string& key) {
  const json& value = obj.at(key);
  if (!value.is_string()) fail(where, "key \"" + key + "\" must be a string");
  return value.get<std::string>();
}

bool bool_of(const json& obj, const std::string& where,
             const std::string& key) {
  const json& value = obj.at(key);
  if (!value.is_boolean()) fail(where, "key \"" + key + "\" must be a bool");
  return value.get<bool>();
}

json point_to_json(const Point& p) { return json::array({p.x(), p.y()}); }

Point point_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
      !value[1].is_number()) {
    fail(where, "expected [x, y]");
  }
  return Point(value[0].get<double>(), value[1].get<double>());
}

json curve_to_json(const ChargingCurve& curve) {
  json points = json::array();
  for (const auto& [soc, kw] : curve.breakpoints) {
    points.push_back(json::array({soc, kw}));
  }
  return points;
}

ChargingCurve curve_from_json(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of [soc, kw] pairs");
  ChargingCurve curve;
  for (const json& pair : value) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      fail(where, "expected [soc, kw]");
    }
    curve.breakpoints.emplace_back(pair[0].get<double>(),
                                   pair[1].get<double>());
  }
  return curve;
}

json vehicle_to_json(const VehicleSpec& vehicle) {
  json curves;
  for (const auto& [mode, curve] : vehicle.curves) {
    curves[std::string(to_string(mode))] = curve_to_json(curve);
  }
  return json{{"battery_kwh", vehicle.battery_kwh},
              {"consumption_kwh_per_100km", vehicle.consumption_kwh_per_100km},
              {"curves", curves}};
}

VehicleSpec vehicle_from_json(const json& value, const std::string& where) {
  expect_keys(value, where,
              {"battery_kwh", "consumption_kwh_per_100km", "curves"});
  VehicleSpec vehicle;
  vehicle.battery_kwh = number_of(value, where, "battery_kwh");
  vehicle.consumption_kwh_per_100km =
      number_of(value, where, "consumption_kwh_per_100km");
  vehicle.curves.clear();
  if (!value.at("curves").is_object()) fail(where, "curves must be an object");
  for (const auto& item : value.at("curves").items()) {
    vehicle.curves[mode_from_string(item.key())] =
        curve_from_json(item.value(), where + ".curves." + item.key());
  }
  return vehicle;
}

json trip_to_json(const Trip& trip) {
  return json{{"start", point_to_json(trip.start_location)},
              {"end", point_to_json(trip.end_location)},
              {"start_time", trip.start_time},
              {"end_time", trip.end_time},
              {"soc_delta", trip.soc_delta}};
}

Trip trip_from_json(const json& value, const std::string& where) {
  expect_keys(value, where,
              {"start", "end", "start_time", "end_time", "soc_delta"});
  Trip trip;
  trip.start_location = point_from_json(value.at("start"), where + ".start");
  trip.end_location = point_from_json(value.at("end"), where + ".end");
  trip.start_time = integer_of(value, where, "start_time");
  trip.end_time = integer_of(value, where, "end_time");
  trip.soc_delta = number_of(value, where, "soc_delta");
  return trip;
}

json break_to_json(const Break& b) {
  return json{{"id", b.id},
              {"location", point_to_json(b.location)},
              {"start_time", b.start_time},
              {"end_time", b.end_time},
              {"chargeable", b.chargeable}};
}

Break break_from_json(const json& value, const std::string& where) {
  expect_keys(value, where,
              {"id", "location", "start_time", "end_time", "chargeable"});
  Break b;
  b.id = string_of(value, where, "id");
  b.location = point_from_json(value.at("location"), where + ".location");
  b.start_time = integer_of(value, where, "start_time");
  b.end_time = integer_of(value, where, "end_time");
  b.chargeable = bool_of(value, where, "chargeable");
  return b;
}

json driver_to_json(const Driver& driver) {
  json trips = json::array();
  for (const Trip& t : driver.trips) trips.push_back(trip_to_json(t));
  json breaks = json::array();
  for (const Break& b : driver.breaks) breaks.push_back(break_to_json(b));
  return json{{"id", driver.id},
              {"vehicle", vehicle_to_json(driver.vehicle)},
              {"trips", trips},
              {"breaks", breaks},
              {"start_soc", driver.start_soc},
              {"end_soc_target", driver.end_soc_target},
              {"soc_floor", driver.soc_floor},
              {"has_wallbox", driver.has_wallbox},
              {"in_city", driver.in_city},
              {"set_index", driver.set_index}};
}

Driver driver_from_json(const json& value, const std::string& where) {
  expect_keys(value, where,
              {"id", "vehicle", "trips", "breaks", "start_soc",
               "end_soc_target", "soc_floor", "has_wallbox", "in_city",
               "set_index"});
  Driver driver;
  driver.id = string_of(value, where, "id");
  driver.vehicle = vehicle_from_json(value.at("vehicle"), where + ".vehicle");
  if (!value.at("trips").is_array()) fail(where, "trips must be an array");
  int index = 0;
  for (const json& t : value.at("trips")) {
    driver.trips.push_back(
        trip_from_json(t, where + ".trips[" + std::to_string(index++) + "]"));
  }
  if (!value.at("breaks").is_array()) fail(where, "breaks must be an array");
  index = 0;
  for (const json& b : value.at("breaks")) {
    driver.breaks.push_back(break_from_json(
        b, where + ".breaks[" + std::to_string(index++) + "]"));
  }
  driver.start_soc = number_of(value, where, "start_soc");
  driver.end_soc_target = number_of(value, where, "end_soc_target");
  driver.soc_floor = number_of(value, where, "soc_floor");
  driver.has_wallbox = bool_of(value, where, "has_wallbox");
  driver.in_city = bool_of(value, where, "in_city");
  driver.set_index = static_cast<int>(integer_of(value, where, "set_index"));
  return driver;
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  json j;
  j["name"] = instance.name;
  json drivers = json::array();
  for (const Driver& d : instance.drivers) drivers.push_back(driver_to_json(d));
  j["drivers"] = drivers;
  json locations = json::array();
  for (const auto& [token, position] : instance.locations) {
    locations.push_back(
        json{{"token", token}, {"position", point_to_json(position)}});
  }
  j["locations"] = locations;
  json catalog = json::array();
  for (const StationType& type : instance.catalog) {
    catalog.push_back(json{{"location", type.location},
                           {"mode", std::string(to_string(type.mode))},
                           {"ports", type.ports},
                           {"cost", type.cost}});
  }
  j["catalog"] = catalog;
  json nearby;
  for (const auto& [break_id, tokens] : instance.nearby) {
    nearby[break_id] = tokens;
  }
  j["nearby"] = nearby.is_null() ? json::object() : nearby;
  if (!instance.time_points.empty()) j["time_points"] = instance.time_points;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("instance", e.what());
  }
  expect_keys(j, "instance",
              {"name", "drivers", "locations", "catalog", "nearby"},
              {"time_points"});
  Instance instance;
  instance.name = string_of(j, "instance", "name");
  if (!j.at("drivers").is_array()) fail("instance", "drivers must be an array");
  int index = 0;
  for (const json& d : j.at("drivers")) {
    instance.drivers.push_back(driver_from_json(
        d, "instance.drivers[" + std::to_string(index++) + "]"));
  }
  if (!j.at("locations").is_array()) {
    fail("instance", "locations must be an array");
  }
  index = 0;
  for (const json& entry : j.at("locations")) {
    const std::string where =
        "instance.locations[" + std::to_string(index++) + "]";
    expect_keys(entry, where, {"token", "position"});
    instance.locations.emplace_back(
        string_of(entry, where, "token"),
        point_from_json(entry.at("position"), where + ".position"));
  }
  if (!j.at("catalog").is_array()) fail("instance", "catalog must be an array");
  index = 0;
  for (const json& entry : j.at("catalog")) {
    const std::string where =
        "instance.catalog[" + std::to_string(index++) + "]";
    expect_keys(entry, where, {"location", "mode", "ports", "cost"});
    StationType type;
    type.location = string_of(entry, where, "location");
    type.mode = mode_from_string(string_of(entry, where, "mode"));
    type.ports = static_cast<int>(integer_of(entry, where, "ports"));
    type.cost = number_of(entry, where, "cost");
    instance.catalog.push_back(std::move(type));
  }
  if (!j.at("nearby").is_object()) fail("instance", "nearby must be an object");
  for (const auto& item : j.at("nearby").items()) {
    if (!item.value().is_array()) {
      fail("instance.nearby." + item.key(), "expected an array of tokens");
    }
    std::vector<std::string> tokens;
    for (const json& token : item.value()) {
      if (!token.is_string()) {
        fail("instance.nearby." + item.key(), "tokens must be strings");
      }
      tokens.push_back(token.get<std::string>());
    }
    instance.nearby.emplace(item.key(), std::move(tokens));
  }
  if (j.contains("time_points")) {
    if (!j.at("time_points").is_array()) {
      fail("instance", "time_points must be an array");
    }
    for (const json& t : j.at("time_points")) {
      if (!t.is_number_integer()) {
        fail("instance.time_points", "entries must be integers");
      }
      instance.time_points.push_back(t.get<Seconds>());
    }
  }
  instance.validate();
  return instance;
}

std::string stations_to_geojson(const std::vector<Station>& stations) {
  json features = json::array();
  for (const Station& st : stations) {
    features.push_back(
        json{{"type", "Feature"},
             {"geometry",
              json{{"type", "Point"},
                   {"coordinates", point_to_json(st.position)}}},
             {"properties", json{{"location", st.location},
                                 {"mode", std::string(to_string(st.mode))},
                                 {"ports", st.ports},
                                 {"cost", st.cost}}}});
  }
  json j{{"type", "FeatureCollection"}, {"features", features}};
  return j.dump(2) + "\n";
}

std::vector<Station> stations_from_geojson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("stations", e.what());
  }
  expect_keys(j, "stations", {"type", "features"});
  if (string_of(j, "stations", "type") != "FeatureCollection") {
    fail("stations", "type must be FeatureCollection");
  }
  if (!j.at("features").is_array()) {
    fail("stations", "features must be an array");
  }
  std::vector<Station> stations;
  int index = 0;
  for (const json& feature : j.at("features")) {
    const std::string where =
        "stations.features[" + std::to_string(index++) + "]";
    expect_keys(feature, where, {"type", "geometry", "properties"});
    if (string_of(feature, where, "type") != "Feature") {
      fail(where, "type must be Feature");
    }
    const json& geometry = feature.at("geometry");
    expect_keys(geometry, where + ".geometry", {"type", "coordinates"});
    if (string_of(geometry, where + ".geometry", "type") != "Point") {
      fail(where + ".geometry", "type must be Point");
    }
    const json& properties = feature.at("properties");
    expect_keys(properties, where + ".properties",
                {"location", "mode", "ports"}, {"cost"});
    Station st;
    st.position = point_from_json(geometry.at("coordinates"),
                                  where + ".geometry.coordinates");
    st.location = string_of(properties, where + ".properties", "location");
    st.mode =
        mode_from_string(string_of(properties, where + ".properties", "mode"));
    st.ports =
        static_cast<int>(integer_of(properties, where + ".properties",
                                    "ports"));
    if (st.ports < 1) fail(where + ".properties", "ports must be positive");
    st.cost = properties.contains("cost")
                  ? number_of(properties, where + ".properties", "cost")
                  : 0.0;
    stations.push_back(std::move(st));
  }
  return stations;
}

namespace {

Polygon ring_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() < 3) {
    fail(where, "a ring needs at least three points");
  }
  Polygon part;
  for (const json& point : value) {
    part.ring.push_back(point_from_json(point, where));
  }
  if (part.ring.size() > 3 &&
      (part.ring.front() - part.ring.back()).norm() == 0.0) {
    part.ring.pop_back();
  }
  return part;
}

void polygon_from_json(const json& coords, const std::string& where,
                       Region* region) {
  if (!coords.is_array()) fail(where, "expected polygon coordinates");
  int index = 0;
  for (const json& ring : coords) {
    region->parts.push_back(
        ring_from_json(ring, where + "[" + std::to_string(index++) + "]"));
  }
}

void geometry_from_json(const json& geometry, const std::string& where,
                        Region* region) {
  expect_keys(geometry, where, {"type", "coordinates"});
  const std::string type = string_of(geometry, where, "type");
  if (type == "Polygon") {
    polygon_from_json(geometry.at("coordinates"), where + ".coordinates",
                      region);
  } else if (type == "MultiPolygon") {
    if (!geometry.at("coordinates").is_array()) {
      fail(where, "expected multipolygon coordinates");
    }
    int index = 0;
    for (const json& polygon : geometry.at("coordinates")) {
      polygon_from_json(
          polygon, where + ".coordinates[" + std::to_string(index++) + "]",
          region);
    }
  } else {
    fail(where, "geometry must be Polygon or MultiPolygon");
  }
}

}  // namespace

Region region_from_geojson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("region", e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    fail("region", "expected a GeoJSON object");
  }
  Region region;
  const std::string type = j.at("type").get<std::string>();
  if (type == "FeatureCollection") {
    expect_keys(j, "region", {"type", "features"});
    if (!j.at("features").is_array()) {
      fail("region", "features must be an array");
    }
    int index = 0;
    for (const json& feature : j.at("features")) {
      const std::string where =
          "region.features[" + std::to_string(index++) + "]";
      expect_keys(feature, where, {"type", "geometry"}, {"properties"});
      geometry_from_json(feature.at("geometry"), where + ".geometry", &region);
    }
  } else if (type == "Feature") {
    expect_keys(j, "region", {"type", "geometry"}, {"properties"});
    geometry_from_json(j.at("geometry"), "region.geometry", &region);
  } else {
    geometry_from_json(j, "region", &region);
  }
  if (region.empty()) fail("region", "no polygon found");
  return region;
}

std::vector<RawAgent> agents_from_csv(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  const std::string header =
      "agent_id,start_x,start_y,end_x,end_y,start_time,end_time,distance_km,"
      "transport";
  std::vector<RawAgent> agents;
  std::map<std::string, std::size_t> index_of;
  bool saw_header = false;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != header) {
        fail("trips line 1", "header must be \"" + header + "\"");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(
          start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    const std::string where = "trips line " + std::to_string(line_no);
    if (fields.size() != 9) {
      fail(where, "expected 9 fields, found " +
                      std::to_string(fields.size()));
    }
    RawTrip trip;
    try {
      trip.start = Point(std::stod(fields[1]), std::stod(fields[2]));
      trip.end = Point(std::stod(fields[3]), std::stod(fields[4]));
      trip.start_time = static_cast<Seconds>(std::stoll(fields[5]));
      trip.end_time = static_cast<Seconds>(std::stoll(fields[6]));
      trip.distance_km = std::stod(fields[7]);
    } catch (const std::exception&) {
      fail(where, "malformed number");
    }
    trip.transport = fields[8];
    if (fields[0].empty()) fail(where, "agent_id must not be empty");
    if (trip.end_time <= trip.start_time) {
      fail(where, "end_time must exceed start_time");
    }
    if (trip.distance_km < 0.0) fail(where, "distance_km must be nonnegative");
    auto it = index_of.find(fields[0]);
    if (it == index_of.end()) {
      index_of.emplace(fields[0], agents.size());
      agents.push_back(RawAgent{fields[0], {}});
      it = index_of.find(fields[0]);
    }
    RawAgent& agent = agents[it->second];
    if (!agent.trips.empty() &&
        trip.start_time < agent.trips.back().end_time) {
      fail(where, "trip starts before the previous trip of agent " +
                      agent.id + " ends");
    }
    agent.trips.push_back(std::move(trip));
  }
  if (!saw_header) fail("trips line 1", "missing header");
  for (const RawAgent& agent : agents) agent.validate();
  return agents;
}

namespace {

// One number formatter everywhere: shortest round-trip via the JSON dumper,
// so CSV and JSON bytes agree and reruns reproduce exactly.
std::string number_text(double value) { return json(value).dump(); }

json report_totals(const SimReport& report) {
  double detoured_rate =
      report.num_needing > 0
          ? static_cast<double>(report.detoured) / report.num_needing
          : 0.0;
  double not_compatible_rate =
      report.num_needing > 0
          ? static_cast<double>(report.not_compatible) / report.num_needing
          : 0.0;
  return json{{"drivers", report.drivers.size()},
              {"needing", report.num_needing},
              {"good_no_detour", report.good_no_detour},
              {"detoured", report.detoured},
              {"not_compatible", report.not_compatible},
              {"detoured_rate", detoured_rate},
              {"not_compatible_rate", not_compatible_rate}};
}

}  // namespace

std::string report_to_json(const SimReport& report) {
  json drivers = json::array();
  for (const DriverReport& entry : report.drivers) {
    json operations = json::array();
    for (const ExecutedOperation& op : entry.operations) {
      operations.push_back(json{{"break_id", op.break_id},
                                {"mode", std::string(to_string(op.mode))},
                                {"station", op.station},
                                {"distance_m", op.distance_m}});
    }
    drivers.push_back(json{{"driver_id", entry.driver_id},
                           {"outcome", std::string(to_string(entry.outcome))},
                           {"needs_public", entry.needs_public},
                           {"start_soc", entry.start_soc},
                           {"end_soc", entry.end_soc},
                           {"operations", operations}});
  }
  json j{{"drivers", drivers}, {"totals", report_totals(report)}};
  return j.dump(2) + "\n";
}

std::string report_summary_csv(const SimReport& report) {
  const json totals = report_totals(report);
  std::ostringstream out;
  out << "drivers,needing,good_no_detour,detoured,not_compatible,"
         "detoured_rate,not_compatible_rate\n";
  out << report.drivers.size() << ',' << report.num_needing << ','
      << report.good_no_detour << ',' << report.detoured << ','
      << report.not_compatible << ','
      << number_text(totals.at("detoured_rate").get<double>()) << ','
      << number_text(totals.at("not_compatible_rate").get<double>()) << '\n';
  return out.str();
}

std::string occupancy_csv(const SimReport& report) {
  std::ostringstream out;
  out << "station,port,driver,break,start,end\n";
  for (const StationTrace& trace : report.stations) {
    for (std::size_t port = 0; port < trace.ports.size(); ++port) {
      for (const PortUse& use : trace.ports[port]) {
        out << trace.station.location << ',' << port << ',' << use.driver_id
            << ',' << use.break_id << ',' << use.start << ',' << use.end
            << '\n';
      }
    }
  }
  return out.str();
}

std::string solution_to_json(const Solution& solution) {
  json assignment = json::object();
  for (const auto& [name, value] : solution.assignment) {
    if (std::abs(value) > 1e-9) assignment[name] = value;
  }
  json j{{"status", std::string(to_string(solution.status))},
         {"objective", solution.objective},
         {"dual_bound", solution.dual_bound},
         {"gap", solution.gap},
         {"nodes", solution.nodes},
         {"lp_iterations", solution.lp_iterations},
         {"assignment", assignment}};
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
  if (!out) throw std::invalid_argument("failed writing " + path);
}

}  // namespace evplace
