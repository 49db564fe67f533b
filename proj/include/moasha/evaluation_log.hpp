// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "moasha/errors.hpp"
#include "moasha/types.hpp"

namespace moasha {

// Append-mostly evaluation log. Writers are serialized; reads take a
// snapshot. Records are kept ordered by (t_end, config_id) — completions
// from wall-clock workers can arrive slightly out of order, so append inserts
// at the sorted position (almost always the back).
class EvaluationLog {
 public:
  void append(EvaluationRecord rec) {
    validate_record(rec);
    std::lock_guard lock(mu_);
    auto pos = std::upper_bound(records_.begin(), records_.end(), rec, before);
    records_.insert(pos, std::move(rec));
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return records_.size();
  }

  std::vector<EvaluationRecord> snapshot() const {
    std::lock_guard lock(mu_);
    return records_;
  }

 private:
  static bool before(const EvaluationRecord& a, const EvaluationRecord& b) {
    if (a.t_end != b.t_end) return a.t_end < b.t_end;
    return a.config_id < b.config_id;
  }

  mutable std::mutex mu_;
  std::vector<EvaluationRecord> records_;
};

// One record per line; field order is fixed. Doubles are emitted with
// shortest round-trip precision, so save/load reproduces values bit for bit.
inline std::string to_jsonl_line(const EvaluationRecord& rec) {
  nlohmann::ordered_json j;
  j["config_id"] = rec.config_id;
  j["rung"] = rec.rung;
  j["budget"] = rec.budget;
  j["objectives"] = rec.objectives;
  j["t_start"] = rec.t_start;
  j["t_end"] = rec.t_end;
  return j.dump();
}

inline EvaluationRecord record_from_json(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  EvaluationRecord rec;
  rec.config_id = j.at("config_id").get<ConfigId>();
  rec.rung = j.at("rung").get<int>();
  rec.budget = j.at("budget").get<double>();
  rec.objectives = j.at("objectives").get<ObjectiveVector>();
  rec.t_start = j.at("t_start").get<double>();
  rec.t_end = j.at("t_end").get<double>();
  return rec;
}

inline void save_log(const std::vector<EvaluationRecord>& records, std::ostream& out) {
  for (const auto& rec : records) {
    out << to_jsonl_line(rec) << '\n';
  }
}

inline void save_log(const std::vector<EvaluationRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open log file for writing: " + path);
  save_log(records, out);
}

inline std::vector<EvaluationRecord> load_log(std::istream& in) {
  std::vector<EvaluationRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(line));
  }
  return records;
}

inline std::vector<EvaluationRecord> load_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open log file: " + path);
  return load_log(in);
}

}  // namespace moasha
