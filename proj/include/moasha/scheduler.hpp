// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "moasha/errors.hpp"
#include "moasha/evaluation_log.hpp"
#include "moasha/pareto.hpp"
#include "moasha/search_space.hpp"
#include "moasha/types.hpp"

namespace moasha {

inline constexpr std::uint64_t kSampleStreamSalt = 0x73616d706c6572ULL;

// Geometric budget ladder: rung k runs for min_budget * eta^(offset + k)
// resource units, except the top rung which runs at exactly max_budget.
struct BudgetLadder {
  int eta = 3;
  double min_budget = 1.0;   // r0
  double max_budget = 1.0;   // R
  int offset = 0;            // bracket offset s

  void validate() const {
    if (eta < 2) throw ConfigError("budget ladder: eta must be >= 2");
    if (!(min_budget > 0.0)) throw ConfigError("budget ladder: min budget must be positive");
    if (min_budget > max_budget) throw ConfigError("budget ladder: min budget exceeds max budget");
    if (offset < 0) throw ConfigError("budget ladder: offset must be >= 0");
    if (top_rung() < 0) throw ConfigError("budget ladder: offset larger than the rung count");
  }

  // floor(log_eta(max/min)) - offset, computed by repeated multiplication so
  // exact powers are never lost to floating-point log rounding.
  int top_rung() const {
    const double cap = max_budget * (1.0 + 1e-12);
    int power = 0;
    double b = min_budget;
    while (b * eta <= cap) {
      b *= eta;
      ++power;
    }
    return power - offset;
  }

  int rung_count() const { return top_rung() + 1; }

  double budget(int rung) const {
    if (rung == top_rung()) return max_budget;
    double b = min_budget;
    for (int i = 0; i < offset + rung; ++i) b *= eta;
    return std::min(b, max_budget);
  }
};

// Per-rung scheduler state: completions in arrival order plus the set of
// configurations already promoted out of this rung. The selector ranking is
// cached until the next completion lands.
struct RungState {
  std::vector<Candidate> completed;
  std::unordered_set<ConfigId> promoted;
  std::optional<Ranking> ranking_cache;
};

class RungTable {
 public:
  explicit RungTable(BudgetLadder ladder) : ladder_(ladder), rungs_(ladder.rung_count()) {
    ladder.validate();
  }

  const BudgetLadder& ladder() const { return ladder_; }
  int rung_count() const { return static_cast<int>(rungs_.size()); }
  RungState& rung(int k) { return rungs_.at(static_cast<std::size_t>(k)); }
  const RungState& rung(int k) const { return rungs_.at(static_cast<std::size_t>(k)); }

  std::size_t promotion_quota(int k) const {
    return rung(k).completed.size() / static_cast<std::size_t>(ladder_.eta);
  }

  void add_completed(int k, Candidate cand) {
    auto& rs = rung(k);
    rs.completed.push_back(std::move(cand));
    rs.ranking_cache.reset();
  }

 private:
  BudgetLadder ladder_;
  std::vector<RungState> rungs_;
};

// A unit of work handed to a worker: evaluate `config` for `budget` resource
// units on behalf of rung `rung`.
struct Job {
  Configuration config;
  int rung = 0;
  double budget = 0.0;
};

// Scheduler protocol shared by all methods. get_job and report_result are
// atomic transitions on the shared state; workers interact with the
// scheduler only through them, from any number of threads.
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  // Next unit of work, or nullopt when nothing can be issued right now.
  virtual std::optional<Job> get_job() = 0;

  // Deliver the objectives of a previously issued job. Unknown or duplicate
  // reports raise ProtocolError and leave the state untouched.
  virtual void report_result(ConfigId id, int rung, const ObjectiveVector& objectives,
                             double t_start, double t_end) = 0;

  // Drop a failed job: the configuration is excluded from its rung.
  virtual void report_failure(ConfigId id, int rung) = 0;

  virtual std::size_t failure_count() const = 0;
};

namespace detail {

// Issued-but-unreported jobs keyed by (config, rung).
class PendingJobs {
 public:
  void insert(ConfigId id, int rung) { pending_.emplace(id, rung); }

  void settle(ConfigId id, int rung, const char* what) {
    const auto it = pending_.find(std::make_pair(id, rung));
    if (it == pending_.end()) {
      throw ProtocolError(std::string(what) + ": no outstanding job for this configuration/rung");
    }
    pending_.erase(it);
  }

 private:
  std::set<std::pair<ConfigId, int>> pending_;
};

}  // namespace detail

struct AshaOptions {
  // 0 = unlimited. When positive, no fresh configurations are sampled past
  // this count; get_job returns nullopt once promotions are exhausted too.
  std::size_t max_configurations = 0;
};

// Asynchronous successive halving with a pluggable multi-objective selector.
// Promotion decisions are made on partial rung information: scanning from the
// second-highest rung down, the selector ranks that rung's completions, the
// top floor(|completed|/eta) form the promotion candidates, and the best
// not-yet-promoted candidate (if the promotion quota has room) moves up one
// rung. If no rung yields a promotion, a fresh configuration starts at rung 0.
class AshaScheduler final : public Scheduler {
 public:
  AshaScheduler(BudgetLadder ladder, SearchSpace space, Selector selector,
                std::uint64_t experiment_seed, EvaluationLog& log, AshaOptions options = {})
      : table_(ladder),
        space_(std::move(space)),
        selector_(std::move(selector)),
        experiment_seed_(experiment_seed),
        rng_(make_engine(hash_combine(experiment_seed, kSampleStreamSalt))),
        log_(log),
        options_(options) {
    validate_space(space_);
  }

  std::optional<Job> get_job() override {
    std::lock_guard lock(mu_);
    const auto& ladder = table_.ladder();
    for (int k = table_.ladder().top_rung() - 1; k >= 0; --k) {
      auto& rs = table_.rung(k);
      const std::size_t quota = table_.promotion_quota(k);
      if (quota == 0 || rs.promoted.size() >= quota) continue;
      if (!rs.ranking_cache) rs.ranking_cache = selector_(rs.completed);
      const Ranking& ranking = *rs.ranking_cache;
      for (std::size_t i = 0; i < quota; ++i) {
        const ConfigId id = ranking[i];
        if (rs.promoted.contains(id)) continue;
        rs.promoted.insert(id);
        Job job{configs_.at(id), k + 1, ladder.budget(k + 1)};
        pending_.insert(id, k + 1);
        return job;
      }
      // The promotion quota has room but every current candidate was already
      // promoted; quota slots were spent on earlier partial-information picks.
    }
    if (options_.max_configurations != 0 && issued_configs_ >= options_.max_configurations) {
      return std::nullopt;
    }
    Configuration cfg = sample_configuration(space_, rng_);
    cfg.id = next_id_++;
    cfg.seed = config_seed(experiment_seed_, cfg.id);
    configs_.emplace(cfg.id, cfg);
    ++issued_configs_;
    pending_.insert(cfg.id, 0);
    return Job{std::move(cfg), 0, ladder.budget(0)};
  }

  void report_result(ConfigId id, int rung, const ObjectiveVector& objectives, double t_start,
                     double t_end) override {
    std::lock_guard lock(mu_);
    if (rung < 0 || rung >= table_.rung_count()) {
      throw ProtocolError("report_result: rung out of range");
    }
    EvaluationRecord rec{id, rung, table_.ladder().budget(rung), objectives, t_start, t_end};
    validate_record(rec);
    pending_.settle(id, rung, "report_result");
    table_.add_completed(rung, Candidate{id, objectives});
    log_.append(std::move(rec));
  }

  void report_failure(ConfigId id, int rung) override {
    std::lock_guard lock(mu_);
    pending_.settle(id, rung, "report_failure");
    failed_.emplace_back(id, rung);
  }

  std::size_t failure_count() const override {
    std::lock_guard lock(mu_);
    return failed_.size();
  }

  // Test/audit access; not synchronized against concurrent workers.
  const RungTable& table() const { return table_; }
  std::size_t sampled_configurations() const { return issued_configs_; }

 private:
  mutable std::mutex mu_;
  RungTable table_;
  SearchSpace space_;
  Selector selector_;
  std::uint64_t experiment_seed_;
  std::mt19937_64 rng_;
  EvaluationLog& log_;
  AshaOptions options_;
  std::unordered_map<ConfigId, Configuration> configs_;
  detail::PendingJobs pending_;
  std::vector<std::pair<ConfigId, int>> failed_;
  ConfigId next_id_ = 1;
  std::size_t issued_configs_ = 0;
};

// Pure random search: every configuration is evaluated once at the full
// budget. The log uses a single-rung ladder (rung 0 at max budget).
class RandomSearchScheduler final : public Scheduler {
 public:
  RandomSearchScheduler(double full_budget, SearchSpace space, std::uint64_t experiment_seed,
                        EvaluationLog& log)
      : full_budget_(full_budget),
        space_(std::move(space)),
        experiment_seed_(experiment_seed),
        rng_(make_engine(hash_combine(experiment_seed, kSampleStreamSalt))),
        log_(log) {
    validate_space(space_);
    if (!(full_budget > 0.0)) throw ConfigError("random search: budget must be positive");
  }

  std::optional<Job> get_job() override {
    std::lock_guard lock(mu_);
    Configuration cfg = sample_configuration(space_, rng_);
    cfg.id = next_id_++;
    cfg.seed = config_seed(experiment_seed_, cfg.id);
    pending_.insert(cfg.id, 0);
    return Job{std::move(cfg), 0, full_budget_};
  }

  void report_result(ConfigId id, int rung, const ObjectiveVector& objectives, double t_start,
                     double t_end) override {
    std::lock_guard lock(mu_);
    EvaluationRecord rec{id, rung, full_budget_, objectives, t_start, t_end};
    validate_record(rec);
    pending_.settle(id, rung, "report_result");
    log_.append(std::move(rec));
  }

  void report_failure(ConfigId id, int rung) override {
    std::lock_guard lock(mu_);
    pending_.settle(id, rung, "report_failure");
    ++failures_;
  }

  std::size_t failure_count() const override {
    std::lock_guard lock(mu_);
    return failures_;
  }

 private:
  mutable std::mutex mu_;
  double full_budget_;
  SearchSpace space_;
  std::uint64_t experiment_seed_;
  std::mt19937_64 rng_;
  EvaluationLog& log_;
  detail::PendingJobs pending_;
  ConfigId next_id_ = 1;
  std::size_t failures_ = 0;
};

// Synchronous successive halving, the rung-barrier baseline: a bracket of
// configurations runs each rung to completion before the top 1/eta are
// promoted, so workers idle while a rung drains. Brackets repeat until the
// caller stops asking for jobs.
class SyncHalvingScheduler final : public Scheduler {
 public:
  SyncHalvingScheduler(BudgetLadder ladder, SearchSpace space, Selector selector,
                       std::uint64_t experiment_seed, EvaluationLog& log,
                       std::size_t bracket_size = 0)
      : table_(ladder),
        space_(std::move(space)),
        selector_(std::move(selector)),
        experiment_seed_(experiment_seed),
        rng_(make_engine(hash_combine(experiment_seed, kSampleStreamSalt))),
        log_(log) {
    validate_space(space_);
    if (bracket_size == 0) {
      bracket_size = 1;
      for (int i = 0; i < ladder.top_rung(); ++i) {
        bracket_size *= static_cast<std::size_t>(ladder.eta);
      }
    }
    bracket_size_ = bracket_size;
    start_bracket();
  }

  std::optional<Job> get_job() override {
    std::lock_guard lock(mu_);
    if (issue_queue_.empty() && outstanding_ == 0) advance_bracket();
    if (issue_queue_.empty()) return std::nullopt;  // rung barrier
    Configuration cfg = issue_queue_.back();
    issue_queue_.pop_back();
    ++outstanding_;
    pending_.insert(cfg.id, current_rung_);
    return Job{std::move(cfg), current_rung_, table_.ladder().budget(current_rung_)};
  }

  void report_result(ConfigId id, int rung, const ObjectiveVector& objectives, double t_start,
                     double t_end) override {
    std::lock_guard lock(mu_);
    EvaluationRecord rec{id, rung, table_.ladder().budget(rung), objectives, t_start, t_end};
    validate_record(rec);
    pending_.settle(id, rung, "report_result");
    rung_results_.push_back(Candidate{id, objectives});
    --outstanding_;
    table_.add_completed(rung, Candidate{id, objectives});
    log_.append(std::move(rec));
  }

  void report_failure(ConfigId id, int rung) override {
    std::lock_guard lock(mu_);
    pending_.settle(id, rung, "report_failure");
    --outstanding_;
    ++failures_;
  }

  std::size_t failure_count() const override {
    std::lock_guard lock(mu_);
    return failures_;
  }

  const RungTable& table() const { return table_; }

 private:
  void start_bracket() {
    current_rung_ = 0;
    rung_results_.clear();
    issue_queue_.clear();
    for (std::size_t i = 0; i < bracket_size_; ++i) {
      Configuration cfg = sample_configuration(space_, rng_);
      cfg.id = next_id_++;
      cfg.seed = config_seed(experiment_seed_, cfg.id);
      configs_.emplace(cfg.id, cfg);
      issue_queue_.push_back(std::move(cfg));
    }
  }

  // Called at a completed rung barrier: promote the top 1/eta, or start a
  // fresh bracket when the ladder (or the candidate pool) is exhausted.
  void advance_bracket() {
    const std::size_t quota =
        rung_results_.size() / static_cast<std::size_t>(table_.ladder().eta);
    if (current_rung_ >= table_.ladder().top_rung() || quota == 0) {
      start_bracket();
      return;
    }
    const Ranking ranking = selector_(rung_results_);
    auto& rs = table_.rung(current_rung_);
    std::vector<Configuration> promoted;
    promoted.reserve(quota);
    for (std::size_t i = 0; i < quota; ++i) {
      rs.promoted.insert(ranking[i]);
      promoted.push_back(configs_.at(ranking[i]));
    }
    rung_results_.clear();
    ++current_rung_;
    // LIFO issue order; reverse so ranking[0] is issued first.
    issue_queue_.assign(promoted.rbegin(), promoted.rend());
  }

  mutable std::mutex mu_;
  RungTable table_;
  SearchSpace space_;
  Selector selector_;
  std::uint64_t experiment_seed_;
  std::mt19937_64 rng_;
  EvaluationLog& log_;
  std::size_t bracket_size_ = 0;
  std::unordered_map<ConfigId, Configuration> configs_;
  detail::PendingJobs pending_;
  std::vector<Configuration> issue_queue_;
  std::vector<Candidate> rung_results_;
  int current_rung_ = 0;
  std::size_t outstanding_ = 0;
  ConfigId next_id_ = 1;
  std::size_t failures_ = 0;
};

}  // namespace moasha
