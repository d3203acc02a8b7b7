#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "palloc/allocators.hpp"
#include "palloc/types.hpp"

namespace palloc {

struct Job {
  std::int64_t id = 0;
  std::int64_t submit_time = 0;  // seconds
  std::int64_t run_time = 0;     // seconds, positive
  std::int64_t procs = 0;        // requested processors, positive
};

struct Trace {
  std::vector<Job> jobs;  // nondecreasing submit times
  std::string source;
  std::int64_t scale_divisor = 1;  // procs are divided (rounding up) at simulation time
  std::int64_t skipped = 0;        // records dropped while parsing
};

/// Parses Standard Workload Format text: ';' comment lines, data lines of at
/// least 18 whitespace-separated fields. Field 1 is the job id, 2 the submit
/// time, 4 the run time, 5 the processor count (falling back to field 8 when
/// nonpositive). Jobs left with nonpositive run time, processors, or submit
/// time are skipped and counted. Malformed lines raise ParseError.
Trace parse_swf(std::string_view text, std::string source = "");

struct EventRecord {
  std::int64_t time = 0;
  std::int64_t job_id = 0;
  std::int64_t free_before = 0;          // free processors when the job starts
  std::vector<Total> decision_totals;    // one per decision algorithm
};

/// One situation algorithm's pass over a trace: the per-start-event scores
/// of every decision algorithm on the free set the situation produced.
struct SituationRun {
  Algo situation = Algo::mm;
  std::vector<Algo> decisions;
  std::vector<EventRecord> events;
  std::int64_t skipped_jobs = 0;
  std::vector<std::string> warnings;
};

/// Event-driven replay: jobs start strictly FCFS (a blocked queue head
/// blocks its successors; no backfilling); at every start each decision
/// algorithm scores the current free set and the situation algorithm's
/// allocation is committed; completions at time t precede starts at time t,
/// ordered by job id. Deterministic for fixed inputs.
SituationRun simulate(const Trace& trace, const std::vector<Coord>& mesh_extents,
                      Algo situation, const std::vector<Algo>& decisions);

struct SimResult {
  std::vector<SituationRun> runs;
};

/// One simulate() run per situation algorithm, same decisions throughout.
SimResult simulate_matrix(const Trace& trace, const std::vector<Coord>& mesh_extents,
                          const std::vector<Algo>& situations,
                          const std::vector<Algo>& decisions);

/// Exact per-decision sums and event counts for one run.
std::vector<std::pair<Total, std::int64_t>> decision_sums(const SituationRun& run);

/// CSV matrix: situation rows, decision columns in the stable order mc1x1,
/// mm, mm-inc, hilbert-bf; cells are mean totals to two decimals.
std::string decision_matrix_csv(const SimResult& result);

/// CSV event log: situation, time, job, free_count, one column per decision.
std::string event_log_csv(const SimResult& result);

}  // namespace palloc
