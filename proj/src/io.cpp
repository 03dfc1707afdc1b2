// Copyright 2026 The splitmesh Authors
//
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

#include "splitmesh/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "splitmesh/version.hpp"

namespace splitmesh {

namespace {

// 17 significant digits round-trip a double exactly.
std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void append_channel_header(std::string& out, int channels) {
  for (int k = 1; k <= channels; ++k) {
    out += ",ch";
    out += std::to_string(k);
  }
  out += '\n';
}

void append_probability_row(std::string& out,
                            const std::vector<double>& probs) {
  for (double p : probs) {
    out += ',';
    out += fmt17(p);
  }
  out += '\n';
}

}  // namespace

std::string trace_csv(const EvolutionTrace& trace) {
  std::string out = "stage";
  append_channel_header(out, 2 * trace.grid_side);
  for (std::size_t d = 0; d < trace.stages.size(); ++d) {
    out += std::to_string(d);
    append_probability_row(out, trace.stages[d]);
  }
  return out;
}

std::string curves_csv(const DetectorCurves& curves, int grid_side) {
  std::string out = "theta";
  append_channel_header(out, 2 * grid_side);
  for (std::size_t i = 0; i < curves.rows.size(); ++i) {
    out += fmt17(curves.thetas[i]);
    append_probability_row(out, curves.rows[i]);
  }
  return out;
}

std::string trace_pgm(const EvolutionTrace& trace) {
  constexpr long kMaxval = 65535;
  const int channels = 2 * trace.grid_side;
  std::string out = "P2\n";
  out += std::to_string(channels) + " " +
         std::to_string(trace.stages.size()) + "\n";
  out += std::to_string(kMaxval) + "\n";
  for (const auto& stage : trace.stages) {
    for (std::size_t k = 0; k < stage.size(); ++k) {
      if (k > 0) out += ' ';
      const long pixel =
          std::clamp(std::lround(stage[k] * kMaxval), 0L, kMaxval);
      out += std::to_string(pixel);
    }
    out += '\n';
  }
  return out;
}

namespace {

double parse_full_double(std::string_view text, const std::string& what) {
  const std::string s(text);
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + " '" + s + "'");
  }
  if (pos != s.size()) {
    throw std::invalid_argument("bad " + what + " '" + s + "'");
  }
  return value;
}

}  // namespace

MixingAngle parse_angle_literal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty angle literal");
  if (text.rfind("T:", 0) == 0) {
    return theta_from_transmission(
        TransmissionPercent(parse_full_double(text.substr(2), "transmission")));
  }
  const std::size_t pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) {
    return MixingAngle(parse_full_double(text, "angle"));
  }
  std::string_view coef_sv = text.substr(0, pi_pos);
  double coef = 1.0;
  if (coef_sv == "-") {
    coef = -1.0;
  } else if (!coef_sv.empty() && coef_sv != "+") {
    if (coef_sv.back() == '*') coef_sv.remove_suffix(1);
    coef = parse_full_double(coef_sv, "angle");
  }
  std::string_view rest = text.substr(pi_pos + 2);
  double denom = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw std::invalid_argument("bad angle '" + std::string(text) + "'");
    }
    denom = parse_full_double(rest.substr(1), "angle");
    if (denom == 0.0) {
      throw std::invalid_argument("zero denominator in angle '" +
                                  std::string(text) + "'");
    }
  }
  return MixingAngle(coef * std::numbers::pi / denom);
}

std::vector<MixingAngle> parse_theta_grid(std::string_view text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string_view::npos
                             ? std::string_view::npos
                             : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos ||
      text.find(':', c2 + 1) != std::string_view::npos) {
    throw std::invalid_argument("grid must be start:stop:count, got '" +
                                std::string(text) + "'");
  }
  const double start = parse_angle_literal(text.substr(0, c1)).radians();
  const double stop =
      parse_angle_literal(text.substr(c1 + 1, c2 - c1 - 1)).radians();
  const double count_raw =
      parse_full_double(text.substr(c2 + 1), "grid count");
  const long count = std::lround(count_raw);
  if (count_raw != static_cast<double>(count) || count < 1) {
    throw std::invalid_argument("grid count must be a positive integer");
  }
  std::vector<MixingAngle> grid;
  grid.reserve(count);
  if (count == 1) {
    grid.emplace_back(start);
    return grid;
  }
  for (long i = 0; i < count; ++i) {
    grid.emplace_back(start + (stop - start) *
                                  (static_cast<double>(i) / (count - 1)));
  }
  return grid;
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::json policy;
  policy["kind"] = manifest.policy_kind;
  if (manifest.policy_kind == "uniform") {
    policy["theta_radians"] = manifest.uniform_theta_radians;
    policy["theta_literal"] = manifest.theta_literal;
  } else if (manifest.policy_kind == "file") {
    policy["path"] = manifest.theta_file;
    if (manifest.has_fallback_theta) {
      policy["fallback_theta_radians"] = manifest.fallback_theta_radians;
    }
  } else if (manifest.policy_kind == "random") {
    policy["mean_transmission"] = manifest.mean_transmission;
    policy["sigma_transmission"] = manifest.sigma_transmission;
    policy["seed"] = manifest.seed;
    policy["sampled_transmissions"] = manifest.sampled_transmissions;
  } else if (manifest.policy_kind == "preset") {
    policy["name"] = manifest.preset;
  } else {
    throw std::invalid_argument("unknown policy kind '" +
                                manifest.policy_kind + "'");
  }
  const nlohmann::json doc = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"schedule_order", kScheduleOrderTag},
      {"grid_side", manifest.grid_side},
      {"channels", 2 * manifest.grid_side},
      {"input", manifest.input_literal},
      {"policy", policy},
  };
  return doc.dump(2) + "\n";
}

}  // namespace splitmesh
