#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "palloc/allocators.hpp"
#include "palloc/simulator.hpp"
#include "support.hpp"

using namespace palloc;

namespace {

// 18-field SWF data line with only the fields the parser reads filled in.
std::string swf_line(std::int64_t id, std::int64_t submit, std::int64_t run,
                     std::int64_t procs, std::int64_t req_procs = -1) {
  std::string line = std::to_string(id) + " " + std::to_string(submit) + " -1 " +
                     std::to_string(run) + " " + std::to_string(procs);
  line += " -1 -1 " + std::to_string(req_procs);
  for (int f = 9; f <= 18; ++f) line += " -1";
  return line + "\n";
}

// Replays an event log against its trace: free counts must match a
// from-scratch reconstruction and every started job must free its cells.
void audit_conservation(const Trace& trace, const SituationRun& run,
                        std::int64_t mesh_size) {
  std::map<std::int64_t, const Job*> jobs_by_id;
  for (const Job& j : trace.jobs) jobs_by_id[j.id] = &j;

  // (end_time, job id) -> processors to release, processed before starts.
  std::multimap<std::pair<std::int64_t, std::int64_t>, std::int64_t> completions;
  std::int64_t free = mesh_size;
  for (const EventRecord& e : run.events) {
    while (!completions.empty() && completions.begin()->first.first <= e.time) {
      free += completions.begin()->second;
      completions.erase(completions.begin());
    }
    CHECK(free == e.free_before);
    const Job* job = jobs_by_id.at(e.job_id);
    const std::int64_t need =
        (job->procs + trace.scale_divisor - 1) / trace.scale_divisor;
    CHECK(need <= free);
    free -= need;
    completions.insert({{e.time + job->run_time, e.job_id}, need});
  }
  while (!completions.empty()) {
    free += completions.begin()->second;
    completions.erase(completions.begin());
  }
  CHECK(free == mesh_size);  // everything started was freed exactly once
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("swf parsing field map") {
  const std::string text =
      "; SWF comment\n"
      "   ; indented comment\n"
      "\n" +
      swf_line(1, 0, 600, 32) + swf_line(2, 10, 300, -1, 16) + swf_line(3, 20, -5, 4) +
      swf_line(4, 30, 100, -1, -1);
  const Trace trace = parse_swf(text, "inline");
  REQUIRE(trace.jobs.size() == 2);
  CHECK(trace.jobs[0].id == 1);
  CHECK(trace.jobs[0].submit_time == 0);
  CHECK(trace.jobs[0].run_time == 600);
  CHECK(trace.jobs[0].procs == 32);
  CHECK(trace.jobs[1].procs == 16);  // fallback to requested processors
  CHECK(trace.skipped == 2);         // nonpositive run time / processors
  CHECK(trace.source == "inline");
}

TEST_CASE("swf parsing errors carry line numbers") {
  try {
    parse_swf("1 2 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  try {
    parse_swf(swf_line(1, 0, 10, 4) + "1 x 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("empty trace gives an empty result") {
  const Trace trace = parse_swf("; nothing but comments\n");
  CHECK(trace.jobs.empty());
  const SituationRun run = simulate(trace, {4, 4}, Algo::mm, {Algo::mm});
  CHECK(run.events.empty());
  SimResult result;
  result.runs.push_back(run);
  CHECK(decision_matrix_csv(result) == "situation,mm\nmm,0.00\n");
}

TEST_CASE("single job on an empty mesh") {
  const Trace trace = parse_swf(swf_line(1, 0, 100, 4));
  const std::vector<Algo> decisions(kAllAlgos.begin(), kAllAlgos.end());
  const SituationRun run = simulate(trace, {4, 4}, Algo::mm, decisions);
  REQUIRE(run.events.size() == 1);
  CHECK(run.events[0].time == 0);
  CHECK(run.events[0].free_before == 16);
  const Mesh empty({4, 4});
  for (std::size_t j = 0; j < decisions.size(); ++j) {
    CHECK(run.events[0].decision_totals[j] ==
          allocate_with(empty, 4, decisions[j]).total_distance);
  }
}

TEST_CASE("fcfs without backfilling") {
  // Job 1 fills the whole mesh; job 2 also needs everything; job 3 is tiny
  // but must wait behind job 2.
  const Trace trace =
      parse_swf(swf_line(1, 0, 100, 16) + swf_line(2, 1, 50, 16) + swf_line(3, 2, 10, 1));
  const SituationRun run = simulate(trace, {4, 4}, Algo::hilbert_bf, {Algo::hilbert_bf});
  REQUIRE(run.events.size() == 3);
  CHECK(run.events[0].time == 0);
  CHECK(run.events[1].time == 100);  // job 2 starts when job 1 completes
  CHECK(run.events[2].time == 150);  // job 3 waited behind job 2
}

TEST_CASE("oversized jobs are skipped with a warning") {
  const Trace trace = parse_swf(swf_line(1, 0, 10, 40) + swf_line(2, 0, 10, 4));
  const SituationRun run = simulate(trace, {4, 4}, Algo::mm, {Algo::mm});
  CHECK(run.skipped_jobs == 1);
  REQUIRE(run.warnings.size() == 1);
  CHECK(run.events.size() == 1);
  CHECK(run.events[0].job_id == 2);
}

TEST_CASE("scale divisor applies at simulation time") {
  Trace trace = parse_swf(swf_line(1, 0, 10, 40));
  trace.scale_divisor = 4;
  const SituationRun run = simulate(trace, {4, 4}, Algo::mm, {Algo::mm});
  REQUIRE(run.events.size() == 1);
  CHECK(run.events[0].free_before == 16);
  // ceil(40 / 4) = 10 cells committed.
  CHECK(run.skipped_jobs == 0);
}

TEST_CASE("simulation is deterministic and conserves processors") {
  std::string text;
  Lcg64 rng(21);
  std::int64_t t = 0;
  for (std::int64_t id = 1; id <= 40; ++id) {
    t += static_cast<std::int64_t>(rng.next_below(30));
    const std::int64_t procs = 1 + static_cast<std::int64_t>(rng.next_below(12));
    const std::int64_t run_time = 5 + static_cast<std::int64_t>(rng.next_below(120));
    text += swf_line(id, t, run_time, procs);
  }
  const Trace trace = parse_swf(text);
  const std::vector<Algo> decisions(kAllAlgos.begin(), kAllAlgos.end());

  const SituationRun a = simulate(trace, {6, 6}, Algo::mc1x1, decisions);
  const SituationRun b = simulate(trace, {6, 6}, Algo::mc1x1, decisions);
  CHECK(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].decision_totals == b.events[i].decision_totals);
  }
  audit_conservation(trace, a, 36);

  // Event-wise mm-inc <= mm for every situation algorithm.
  for (Algo situation : kAllAlgos) {
    const SituationRun run = simulate(trace, {6, 6}, situation, {Algo::mm, Algo::mm_inc});
    audit_conservation(trace, run, 36);
    for (const EventRecord& e : run.events) {
      CHECK(e.decision_totals[1] <= e.decision_totals[0]);
    }
  }
}

TEST_CASE("matrix csv layout") {
  CHECK(decision_matrix_csv(SimResult{}) == "situation\n");

  SimResult one;
  SituationRun run;
  run.situation = Algo::mm;
  run.decisions = {Algo::mm};
  run.events.push_back(EventRecord{0, 1, 16, {42}});
  one.runs.push_back(run);
  CHECK(decision_matrix_csv(one) == "situation,mm\nmm,42.00\n");

  const Trace trace = parse_swf(swf_line(1, 0, 10, 3) + swf_line(2, 1, 10, 5));
  const std::vector<Algo> all(kAllAlgos.begin(), kAllAlgos.end());
  const SimResult matrix = simulate_matrix(trace, {4, 4}, all, all);
  const std::string csv = decision_matrix_csv(matrix);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 situation rows
  CHECK(csv.substr(0, csv.find('\n')) == "situation,mc1x1,mm,mm-inc,hilbert-bf");

  const std::string events = event_log_csv(matrix);
  CHECK(std::count(events.begin(), events.end(), '\n') == 9);  // header + 4*2 events
}

}  // TEST_SUITE
