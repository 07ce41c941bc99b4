// Copyright 2026 The nullvalue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nullvalue/errors.h"
#include "nullvalue/experiment.h"

namespace nullvalue {
namespace {

using Json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

std::vector<std::string> ExperimentConfig::invalid_fields() const {
  std::vector<std::string> bad;
  auto prob = [&bad](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) bad.emplace_back(name);
  };
  prob(p_front, "p_front");
  prob(p_back, "p_back");
  prob(eta_w, "eta_w");
  prob(eta_p, "eta_p");
  if (!(dark_rate >= 0.0) || !std::isfinite(dark_rate)) bad.emplace_back("dark_rate");
  if (bin_count < 1) bad.emplace_back("bin_count");
  if (!std::isfinite(ellipticity_phase)) bad.emplace_back("ellipticity_phase");
  if (!std::isfinite(delta_m)) bad.emplace_back("delta_M");
  return bad;
}

void ExperimentConfig::validate() const {
  const auto bad = invalid_fields();
  if (!bad.empty()) throw InvalidArgument("invalid experiment config fields: " + join(bad));
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("experiment config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("experiment config must be a JSON object");

  ExperimentConfig cfg;
  std::vector<std::string> bad;
  auto number = [&](const char* key, double& field) {
    if (!doc.contains(key)) return;
    if (doc[key].is_number()) {
      field = doc[key].get<double>();
    } else {
      bad.emplace_back(key);
    }
  };
  number("p_front", cfg.p_front);
  number("p_back", cfg.p_back);
  number("eta_w", cfg.eta_w);
  number("eta_p", cfg.eta_p);
  number("dark_rate", cfg.dark_rate);
  number("ellipticity_phase", cfg.ellipticity_phase);
  number("delta_M", cfg.delta_m);
  if (doc.contains("bin_count")) {
    const auto& v = doc["bin_count"];
    if (v.is_number_integer() && v.get<std::int64_t>() >= 1 &&
        v.get<std::int64_t>() <= std::numeric_limits<int>::max()) {
      cfg.bin_count = v.get<int>();
    } else {
      bad.emplace_back("bin_count");
    }
  }
  if (doc.contains("photons_per_measurement")) {
    const auto& v = doc["photons_per_measurement"];
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      cfg.photons_per_measurement = v.get<std::uint64_t>();
    } else {
      bad.emplace_back("photons_per_measurement");
    }
  }
  static const std::vector<std::string> kKnown = {
      "p_front",   "p_back",    "eta_w", "eta_p", "dark_rate", "bin_count", "photons_per_measurement",
      "ellipticity_phase", "delta_M"};
  for (const auto& item : doc.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), item.key()) == kKnown.end()) {
      bad.push_back("unknown key '" + item.key() + "'");
    }
  }
  for (const auto& name : cfg.invalid_fields()) {
    if (std::find(bad.begin(), bad.end(), name) == bad.end()) bad.push_back(name);
  }
  if (!bad.empty()) throw InvalidArgument("invalid experiment config fields: " + join(bad));
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read experiment config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str());
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  Json doc;
  doc["p_front"] = cfg.p_front;
  doc["p_back"] = cfg.p_back;
  doc["eta_w"] = cfg.eta_w;
  doc["eta_p"] = cfg.eta_p;
  doc["dark_rate"] = cfg.dark_rate;
  doc["bin_count"] = cfg.bin_count;
  doc["photons_per_measurement"] = cfg.photons_per_measurement;
  doc["ellipticity_phase"] = cfg.ellipticity_phase;
  doc["delta_M"] = cfg.delta_m;
  return doc.dump(2);
}

}  // namespace nullvalue
