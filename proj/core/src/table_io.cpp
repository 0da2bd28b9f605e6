#include "dualproc/table_io.hpp"

#include <array>

#include <json.hpp>

#include "dualproc/errors.hpp"

namespace dualproc {

namespace {

using nlohmann::json;

std::string key_of(StateId s) { return std::to_string(s.index); }

StateId state_from_key(const std::string& key, int num_states) {
  size_t pos = 0;
  const int idx = std::stoi(key, &pos);
  if (pos != key.size() || idx < 0 || idx >= num_states) {
    throw ConfigError("snapshot has invalid state key '" + key + "'");
  }
  return StateId{idx};
}

}  // namespace

std::string table_to_json_text(const LookupTable& table) {
  json doc;
  doc["discount"] = table.discount();
  doc["learning_rate"] = table.learning_rate();
  doc["num_states"] = table.num_states();
  doc["terminal"] = table.terminal().index;

  json values = json::object();
  json qvalues = json::object();
  json counts = json::object();
  for (int i = 0; i < table.num_states(); ++i) {
    const StateId s{i};
    values[key_of(s)] = table.value(s);
    json qrow = json::object();
    json crows = json::object();
    for (Action a : kAllActions) {
      qrow[std::string(to_string(a))] = table.q(s, a);
      json crow = json::object();
      for (StateId next : table.envelope(s)) {
        crow[key_of(next)] = table.count(s, a, next);
      }
      crows[std::string(to_string(a))] = std::move(crow);
    }
    qvalues[key_of(s)] = std::move(qrow);
    counts[key_of(s)] = std::move(crows);
  }
  doc["values"] = std::move(values);
  doc["qvalues"] = std::move(qvalues);
  doc["transition_counts"] = std::move(counts);
  return doc.dump(2) + "\n";
}

LookupTable table_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    const int num_states = doc.at("num_states").get<int>();
    const StateId terminal{doc.at("terminal").get<int>()};
    const double discount = doc.at("discount").get<double>();
    const double learning_rate = doc.at("learning_rate").get<double>();

    std::vector<std::vector<StateId>> envelopes(static_cast<size_t>(num_states));
    std::vector<std::array<std::vector<double>, kNumActions>> counts(
        static_cast<size_t>(num_states));
    std::vector<double> values(static_cast<size_t>(num_states), 0.0);
    std::vector<double> qvalues(static_cast<size_t>(num_states) * kNumActions, 0.0);

    for (const auto& [key, val] : doc.at("values").items()) {
      values[static_cast<size_t>(state_from_key(key, num_states).index)] =
          val.get<double>();
    }
    for (const auto& [key, row] : doc.at("qvalues").items()) {
      const StateId s = state_from_key(key, num_states);
      for (Action a : kAllActions) {
        qvalues[static_cast<size_t>(s.index) * kNumActions + static_cast<int>(a)] =
            row.at(std::string(to_string(a))).get<double>();
      }
    }
    for (const auto& [key, rows] : doc.at("transition_counts").items()) {
      const StateId s = state_from_key(key, num_states);
      auto& env = envelopes[static_cast<size_t>(s.index)];
      // nlohmann objects iterate in sorted key order, but numeric strings
      // sort lexicographically; rebuild the numeric order explicitly.
      for (const auto& [nkey, unused] : rows.at("North").items()) {
        (void)unused;
        env.push_back(state_from_key(nkey, num_states));
      }
      std::sort(env.begin(), env.end());
      for (Action a : kAllActions) {
        const auto& crow = rows.at(std::string(to_string(a)));
        if (crow.size() != env.size()) {
          throw ConfigError("snapshot count rows disagree on the envelope");
        }
        auto& dest = counts[static_cast<size_t>(s.index)][static_cast<int>(a)];
        dest.reserve(env.size());
        for (StateId next : env) {
          dest.push_back(crow.at(key_of(next)).get<double>());
        }
      }
    }
    return LookupTable::restore(num_states, terminal, discount, learning_rate,
                                std::move(envelopes), counts, std::move(qvalues),
                                std::move(values));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("snapshot is malformed: ") + e.what());
  }
}

}  // namespace dualproc
