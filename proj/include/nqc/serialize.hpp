#pragma once

// JSON forms of solver outcomes and bench reports. Needs the single-header
// nlohmann/json (json.hpp) on the include path.

#include <json.hpp>

#include "bench.hpp"
#include "solver.hpp"

namespace nqc {

inline nlohmann::ordered_json to_json(const SolveOutcome& out) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(out.verdict);
  if (out.solution) {
    j["solution"] = std::vector<int>(out.solution->columns().begin(), out.solution->columns().end());
  } else {
    j["solution"] = nullptr;
  }
  j["btCount"] = out.stats.bt_count;
  j["block5Repeats"] = out.stats.block5_repeats;
  j["wallTimeMicros"] = static_cast<double>(out.stats.wall_time.count()) / 1000.0;
  j["entryBlock"] = out.stats.entry_block;
  return j;
}

inline nlohmann::ordered_json to_json(const BenchReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["sampleSize"] = r.sample_size;
  j["tMean"] = r.t_mean;
  j["t90Mean"] = r.t90_mean;
  j["tMin"] = r.t_min;
  j["tMax"] = r.t_max;
  j["fnCount"] = r.fn_count;
  j["tRow"] = r.t_row;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& [bt, freq] : r.bt_histogram) hist.push_back({{"btCount", bt}, {"frequency", freq}});
  j["btHistogram"] = std::move(hist);
  j["noBtShare"] = r.no_bt_share;
  return j;
}

inline BenchReport bench_report_from_json(const nlohmann::json& j) {
  BenchReport r;
  r.n = j.at("n").get<int>();
  r.sample_size = j.at("sampleSize").get<std::size_t>();
  r.t_mean = j.at("tMean").get<double>();
  r.t90_mean = j.at("t90Mean").get<double>();
  r.t_min = j.at("tMin").get<double>();
  r.t_max = j.at("tMax").get<double>();
  r.fn_count = j.at("fnCount").get<std::size_t>();
  r.t_row = j.at("tRow").get<double>();
  for (const auto& entry : j.at("btHistogram")) {
    r.bt_histogram[entry.at("btCount").get<int>()] = entry.at("frequency").get<std::size_t>();
  }
  r.no_bt_share = j.at("noBtShare").get<double>();
  return r;
}

}  // namespace nqc
