#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace plane_chroma {

/// What a CLI run did; echoed as JSON so runs can be reproduced.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  nlohmann::json verdict = nlohmann::json::object();
  std::map<std::string, double> timings;  // seconds

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command", m.command}, {"parameters", m.parameters}, {"inputs", m.inputs},
                     {"outputs", m.outputs}, {"verdict", m.verdict},       {"timings", m.timings}};
  j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
}

inline void from_json(const nlohmann::json& j, RunManifest& m) {
  j.at("command").get_to(m.command);
  j.at("parameters").get_to(m.parameters);
  j.at("inputs").get_to(m.inputs);
  j.at("outputs").get_to(m.outputs);
  m.verdict = j.at("verdict");
  j.at("timings").get_to(m.timings);
  const auto& s = j.at("seed");
  m.seed = s.is_null() ? std::nullopt : std::optional<std::uint64_t>(s.get<std::uint64_t>());
}

}  // namespace plane_chroma
