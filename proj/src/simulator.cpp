#include "palloc/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <queue>
#include <sstream>
#include <tuple>

#include "palloc/numeric.hpp"

namespace palloc {

namespace {

std::int64_t parse_swf_field(std::string_view field, std::int64_t line_no) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc() && ptr == last) return value;
  // Some archives carry fractional seconds; truncate them.
  double dvalue = 0.0;
  auto [dptr, dec] = std::from_chars(first, last, dvalue);
  if (dec == std::errc() && dptr == last) return static_cast<std::int64_t>(dvalue);
  throw ParseError("swf line " + std::to_string(line_no) + ": bad field '" +
                   std::string(field) + "'");
}

}  // namespace

Trace parse_swf(std::string_view text, std::string source) {
  Trace trace;
  trace.source = std::move(source);
  std::int64_t line_no = 0;
  std::size_t pos = 0;
  std::vector<std::string_view> fields;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) continue;
    if (line[start] == ';') continue;

    fields.clear();
    std::size_t i = start;
    while (i < line.size()) {
      const std::size_t ws = line.find_first_of(" \t\r", i);
      const std::size_t end = ws == std::string_view::npos ? line.size() : ws;
      if (end > i) fields.push_back(line.substr(i, end - i));
      i = end + 1;
    }
    if (fields.size() < 18) {
      throw ParseError("swf line " + std::to_string(line_no) + ": expected 18 fields, got " +
                       std::to_string(fields.size()));
    }
    Job job;
    job.id = parse_swf_field(fields[0], line_no);
    job.submit_time = parse_swf_field(fields[1], line_no);
    job.run_time = parse_swf_field(fields[3], line_no);
    job.procs = parse_swf_field(fields[4], line_no);
    if (job.procs <= 0) job.procs = parse_swf_field(fields[7], line_no);
    if (job.run_time <= 0 || job.procs <= 0 || job.submit_time < 0) {
      ++trace.skipped;
      continue;
    }
    trace.jobs.push_back(job);
  }
  std::stable_sort(trace.jobs.begin(), trace.jobs.end(),
                   [](const Job& a, const Job& b) { return a.submit_time < b.submit_time; });
  return trace;
}

SituationRun simulate(const Trace& trace, const std::vector<Coord>& mesh_extents,
                      Algo situation, const std::vector<Algo>& decisions) {
  if (mesh_extents.size() != 2) {
    throw std::invalid_argument("simulate: 2D mesh extents required");
  }
  Mesh mesh(mesh_extents);
  const std::int64_t mesh_size = mesh.size();

  SituationRun run;
  run.situation = situation;
  run.decisions = decisions;

  // Arrival order: (submit time, job id); FCFS from there on.
  std::vector<std::size_t> arrival(trace.jobs.size());
  for (std::size_t i = 0; i < arrival.size(); ++i) arrival[i] = i;
  std::sort(arrival.begin(), arrival.end(), [&](std::size_t a, std::size_t b) {
    const Job& ja = trace.jobs[a];
    const Job& jb = trace.jobs[b];
    if (ja.submit_time != jb.submit_time) return ja.submit_time < jb.submit_time;
    if (ja.id != jb.id) return ja.id < jb.id;
    return a < b;
  });

  struct Running {
    std::int64_t end_time;
    std::int64_t job_id;
    std::vector<Point> cells;

    bool operator>(const Running& other) const {
      return std::tie(end_time, job_id) > std::tie(other.end_time, other.job_id);
    }
  };
  std::priority_queue<Running, std::vector<Running>, std::greater<>> running;

  auto scaled_procs = [&](const Job& j) {
    return (j.procs + trace.scale_divisor - 1) / trace.scale_divisor;
  };

  std::deque<std::size_t> queue;
  std::size_t next_arrival = 0;
  std::int64_t now = 0;

  auto admit_arrivals = [&](std::int64_t t) {
    while (next_arrival < arrival.size() &&
           trace.jobs[arrival[next_arrival]].submit_time <= t) {
      const std::size_t ji = arrival[next_arrival++];
      const Job& job = trace.jobs[ji];
      if (scaled_procs(job) > mesh_size) {
        ++run.skipped_jobs;
        run.warnings.push_back("job " + std::to_string(job.id) + " needs " +
                               std::to_string(scaled_procs(job)) + " processors, mesh has " +
                               std::to_string(mesh_size) + "; skipped");
        continue;
      }
      queue.push_back(ji);
    }
  };

  admit_arrivals(now);
  for (;;) {
    // Start queued jobs FCFS while the head fits.
    while (!queue.empty()) {
      const Job& job = trace.jobs[queue.front()];
      const std::int64_t need = scaled_procs(job);
      if (need > mesh.free_count()) break;

      EventRecord event;
      event.time = now;
      event.job_id = job.id;
      event.free_before = mesh.free_count();
      event.decision_totals.reserve(decisions.size());
      for (Algo d : decisions) {
        event.decision_totals.push_back(allocate_with(mesh, need, d).total_distance);
      }
      run.events.push_back(std::move(event));

      Allocation placed = allocate_with(mesh, need, situation);
      Running r;
      r.end_time = now + job.run_time;
      r.job_id = job.id;
      r.cells = placed.selected.points;
      for (const Point& cell : r.cells) {
        if (mesh.occupied(cell)) throw std::logic_error("simulate: double allocation");
        mesh.set_occupied(cell, true);
      }
      running.push(std::move(r));
      queue.pop_front();
    }

    // Advance to the next completion or arrival.
    const bool more_arrivals = next_arrival < arrival.size();
    if (running.empty() && !more_arrivals) break;
    std::int64_t next_time;
    if (running.empty()) {
      next_time = trace.jobs[arrival[next_arrival]].submit_time;
    } else if (!more_arrivals) {
      next_time = running.top().end_time;
    } else {
      next_time = std::min(running.top().end_time,
                           trace.jobs[arrival[next_arrival]].submit_time);
    }
    now = std::max(now, next_time);
    while (!running.empty() && running.top().end_time <= now) {
      for (const Point& cell : running.top().cells) {
        if (!mesh.occupied(cell)) throw std::logic_error("simulate: double free");
        mesh.set_occupied(cell, false);
      }
      running.pop();
    }
    admit_arrivals(now);
    if (queue.empty() && running.empty() && next_arrival >= arrival.size()) break;
  }

  return run;
}

SimResult simulate_matrix(const Trace& trace, const std::vector<Coord>& mesh_extents,
                          const std::vector<Algo>& situations,
                          const std::vector<Algo>& decisions) {
  SimResult result;
  result.runs.reserve(situations.size());
  for (Algo s : situations) {
    result.runs.push_back(simulate(trace, mesh_extents, s, decisions));
  }
  return result;
}

std::vector<std::pair<Total, std::int64_t>> decision_sums(const SituationRun& run) {
  std::vector<std::pair<Total, std::int64_t>> sums(run.decisions.size(), {0, 0});
  for (const EventRecord& e : run.events) {
    for (std::size_t j = 0; j < sums.size(); ++j) {
      sums[j].first += e.decision_totals[j];
      ++sums[j].second;
    }
  }
  return sums;
}

namespace {

// Stable reporting order, filtered to the algorithms actually present.
std::vector<Algo> canonical_subset(const std::vector<Algo>& algos) {
  std::vector<Algo> out;
  for (Algo a : kAllAlgos) {
    if (std::find(algos.begin(), algos.end(), a) != algos.end()) out.push_back(a);
  }
  return out;
}

std::size_t index_of(const std::vector<Algo>& algos, Algo a) {
  return static_cast<std::size_t>(std::find(algos.begin(), algos.end(), a) - algos.begin());
}

}  // namespace

std::string decision_matrix_csv(const SimResult& result) {
  std::vector<Algo> decision_cols;
  if (!result.runs.empty()) decision_cols = canonical_subset(result.runs.front().decisions);

  std::ostringstream out;
  out << "situation";
  for (Algo d : decision_cols) out << ',' << algo_name(d);
  out << '\n';

  std::vector<const SituationRun*> rows;
  for (Algo s : kAllAlgos) {
    for (const SituationRun& run : result.runs) {
      if (run.situation == s) rows.push_back(&run);
    }
  }
  for (const SituationRun* run : rows) {
    out << algo_name(run->situation);
    const auto sums = decision_sums(*run);
    for (Algo d : decision_cols) {
      const std::size_t j = index_of(run->decisions, d);
      if (j >= sums.size() || sums[j].second == 0) {
        out << ",0.00";
      } else {
        out << ',' << decimal_round2(sums[j].first, sums[j].second);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string event_log_csv(const SimResult& result) {
  std::vector<Algo> decision_cols;
  if (!result.runs.empty()) decision_cols = canonical_subset(result.runs.front().decisions);

  std::ostringstream out;
  out << "situation,time,job,free_count";
  for (Algo d : decision_cols) out << ',' << algo_name(d);
  out << '\n';
  for (Algo s : kAllAlgos) {
    for (const SituationRun& run : result.runs) {
      if (run.situation != s) continue;
      for (const EventRecord& e : run.events) {
        out << algo_name(run.situation) << ',' << e.time << ',' << e.job_id << ','
            << e.free_before;
        for (Algo d : decision_cols) {
          const std::size_t j = index_of(run.decisions, d);
          if (j < e.decision_totals.size()) {
            out << ',' << e.decision_totals[j];
          } else {
            out << ',';
          }
        }
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace palloc
