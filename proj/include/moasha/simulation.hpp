// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <thread>
#include <vector>

#include "moasha/scheduler.hpp"
#include "moasha/types.hpp"

namespace moasha {

using EvalFn = std::function<Evaluation(const Configuration&, double budget)>;

struct SimOptions {
  int workers = 1;
  // Simulated seconds. No new jobs start once the virtual clock passes this;
  // in-flight evaluations are drained and reported.
  double time_budget = std::numeric_limits<double>::infinity();
  // Stop when the scheduler has nothing to issue and nothing is in flight
  // (instead of when the budget runs out).
  bool run_to_quiescence = false;
};

struct SimStats {
  std::size_t evaluations = 0;
  std::size_t failures = 0;
  double makespan = 0.0;
  // Busy time summed over workers, clipped to the accounting window
  // [0, min(time_budget, makespan)].
  double busy_time = 0.0;
  double window = 0.0;
  double idle_fraction() const {
    return window > 0.0 ? 1.0 - busy_time / (window * static_cast<double>(workers)) : 0.0;
  }
  int workers = 1;
};

// Deterministic discrete-event loop: free workers pull jobs, each evaluation
// completes at now + duration, and the virtual clock jumps from completion to
// completion. Everything is a pure function of (scheduler state, benchmark),
// so a fixed seed reproduces the run exactly.
inline SimStats run_simulated(Scheduler& scheduler, const EvalFn& evaluate,
                              const SimOptions& options) {
  struct InFlight {
    double t_end = 0.0;
    std::uint64_t seq = 0;  // tie-break: earlier assignment completes first
    double t_start = 0.0;
    int worker = 0;
    ConfigId id = 0;
    int rung = 0;
    ObjectiveVector objectives;
  };
  struct Later {
    bool operator()(const InFlight& a, const InFlight& b) const {
      if (a.t_end != b.t_end) return a.t_end > b.t_end;
      return a.seq > b.seq;
    }
  };

  SimStats stats;
  stats.workers = options.workers;
  std::priority_queue<InFlight, std::vector<InFlight>, Later> in_flight;
  std::vector<int> free_workers;
  for (int w = options.workers - 1; w >= 0; --w) free_workers.push_back(w);

  double now = 0.0;
  std::uint64_t seq = 0;
  std::size_t failures_since_progress = 0;
  const auto accounting_end = [&] {
    return options.run_to_quiescence ? stats.makespan
                                     : std::min(options.time_budget, stats.makespan);
  };

  for (;;) {
    while (!free_workers.empty() && (options.run_to_quiescence || now < options.time_budget)) {
      auto job = scheduler.get_job();
      if (!job) break;
      const int worker = free_workers.back();
      InFlight fl;
      fl.seq = seq++;
      fl.t_start = now;
      fl.worker = worker;
      fl.id = job->config.id;
      fl.rung = job->rung;
      try {
        Evaluation ev = evaluate(job->config, job->budget);
        fl.objectives = std::move(ev.objectives);
        fl.t_end = now + std::max(ev.duration, 0.0);
      } catch (const std::exception&) {
        scheduler.report_failure(job->config.id, job->rung);
        ++stats.failures;
        // Failures consume no simulated time; a benchmark that rejects every
        // job would otherwise spin here forever.
        if (++failures_since_progress > 100000) {
          throw ValidationError("simulated run: every evaluation is failing");
        }
        continue;
      }
      failures_since_progress = 0;
      free_workers.pop_back();
      in_flight.push(std::move(fl));
    }
    if (in_flight.empty()) break;
    InFlight done = in_flight.top();
    in_flight.pop();
    now = done.t_end;
    stats.makespan = std::max(stats.makespan, done.t_end);
    scheduler.report_result(done.id, done.rung, done.objectives, done.t_start, done.t_end);
    ++stats.evaluations;
    free_workers.push_back(done.worker);
    std::sort(free_workers.begin(), free_workers.end(), std::greater<int>());
    const double clip = options.run_to_quiescence ? done.t_end : options.time_budget;
    stats.busy_time += std::max(0.0, std::min(done.t_end, clip) - std::min(done.t_start, clip));
  }
  stats.window = accounting_end();
  return stats;
}

struct WallOptions {
  int workers = 1;
  double time_budget = 1.0;  // wall seconds
  // Artificial work: sleep this many seconds per budget unit, emulating
  // evaluation cost for benchmarks that compute instantly.
  double delay_per_unit = 0.0;
};

struct WallStats {
  std::size_t evaluations = 0;
  std::size_t failures = 0;
};

// Real concurrent workers against the same scheduler protocol. Timestamps
// are wall seconds since the run started; completions may reach the log
// slightly out of order, which the log's sorted insert absorbs.
inline WallStats run_wall_clock(Scheduler& scheduler, const EvalFn& evaluate,
                                const WallOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto now_s = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  std::atomic<std::size_t> evaluations{0};
  std::atomic<std::size_t> failures{0};

  auto worker_loop = [&] {
    while (true) {
      if (now_s() >= options.time_budget) return;
      auto job = scheduler.get_job();
      if (!job) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
        continue;
      }
      const double t_start = now_s();
      try {
        Evaluation ev = evaluate(job->config, job->budget);
        if (options.delay_per_unit > 0.0) {
          std::this_thread::sleep_for(
              std::chrono::duration<double>(options.delay_per_unit * job->budget));
        }
        const double t_end = now_s();
        scheduler.report_result(job->config.id, job->rung, ev.objectives, t_start, t_end);
        evaluations.fetch_add(1, std::memory_order_relaxed);
      } catch (const std::exception&) {
        scheduler.report_failure(job->config.id, job->rung);
        failures.fetch_add(1, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(options.workers));
  for (int w = 0; w < options.workers; ++w) pool.emplace_back(worker_loop);
  for (auto& t : pool) t.join();

  WallStats stats;
  stats.evaluations = evaluations.load();
  stats.failures = failures.load();
  return stats;
}

}  // namespace moasha
