#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "palloc/allocators.hpp"
#include "palloc/geometry.hpp"
#include "palloc/instances.hpp"
#include "palloc/json_io.hpp"
#include "palloc/numeric.hpp"
#include "palloc/optimal.hpp"
#include "palloc/parallel.hpp"
#include "palloc/ptas.hpp"
#include "palloc/simulator.hpp"

namespace {

using palloc::Algo;
using palloc::Coord;
using palloc::Total;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<Coord> parse_extents(const std::string& text) {
  std::vector<Coord> extents;
  std::string token;
  for (char c : text + "x") {
    if (c == 'x' || c == 'X' || c == ',') {
      if (!token.empty()) {
        extents.push_back(std::stoll(token));
        token.clear();
      }
    } else {
      token.push_back(c);
    }
  }
  if (extents.empty()) throw std::invalid_argument("bad extents '" + text + "'");
  return extents;
}

Algo parse_algo(const std::string& name) {
  auto a = palloc::algo_from_name(name);
  if (!a) throw std::invalid_argument("unknown algorithm '" + name + "'");
  return *a;
}

std::vector<Algo> parse_algo_list(const std::string& list) {
  std::vector<Algo> out;
  std::string token;
  for (char c : list + ",") {
    if (c == ',') {
      if (!token.empty()) {
        out.push_back(parse_algo(token));
        token.clear();
      }
    } else {
      token.push_back(c);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty algorithm list");
  return out;
}

void emit(const nlohmann::json& j) { std::cout << j.dump() << '\n'; }

// Loads a free set from --points or --mesh, whichever was given.
palloc::PointMultiset load_free_set(const std::string& points_path,
                                    const std::string& mesh_path) {
  if (!points_path.empty()) return palloc::multiset_from_string(read_file(points_path));
  return palloc::mesh_from_string(read_file(mesh_path)).free_points();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"palloc: communication-aware processor allocation toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads for the parallel kernels (0 = default)");

  // allocate
  auto* allocate = app.add_subcommand("allocate", "run one allocation strategy");
  std::string alloc_algo, alloc_mesh, alloc_points;
  std::int64_t alloc_k = 0;
  bool alloc_fast = false;
  allocate->add_option("--algo", alloc_algo, "mm, mm-inc, mc1x1 or hilbert-bf")->required();
  auto* alloc_mesh_opt = allocate->add_option("--mesh", alloc_mesh, "mesh JSON file");
  allocate->add_option("--points", alloc_points, "point multiset JSON file")
      ->excludes(alloc_mesh_opt);
  allocate->add_option("--k", alloc_k, "processors to allocate")
      ->required()
      ->check(CLI::PositiveNumber);
  allocate->add_flag("--fast-candidates", alloc_fast,
                     "restrict mm medians to input points (2-approximation only)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  std::string oracle_mesh, oracle_points;
  std::int64_t oracle_k = 0, oracle_budget = 10'000'000;
  auto* oracle_mesh_opt = oracle->add_option("--mesh", oracle_mesh, "mesh JSON file");
  oracle->add_option("--points", oracle_points, "point multiset JSON file")
      ->excludes(oracle_mesh_opt);
  oracle->add_option("--k", oracle_k, "subset size")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--budget", oracle_budget, "max subsets to enumerate");

  // ptas
  auto* ptas = app.add_subcommand("ptas", "strip-enumeration approximation scheme");
  std::string ptas_points;
  std::int64_t ptas_k = 0, ptas_budget = 100'000'000;
  int ptas_m = 5;
  bool ptas_auto_m = false;
  ptas->add_option("--points", ptas_points, "point multiset JSON file")->required();
  ptas->add_option("--k", ptas_k, "subset size")->required()->check(CLI::PositiveNumber);
  ptas->add_option("--m", ptas_m, "strips per axis (>= 5)");
  ptas->add_flag("--auto-m", ptas_auto_m,
                 "use the largest divisor of k that is >= 5 instead of failing");
  ptas->add_option("--budget", ptas_budget, "max configurations to evaluate");

  // k3
  auto* k3 = app.add_subcommand("k3", "exact minimum-distance triple (2D)");
  std::string k3_mesh, k3_points;
  auto* k3_mesh_opt = k3->add_option("--mesh", k3_mesh, "mesh JSON file");
  k3->add_option("--points", k3_points, "point multiset JSON file")->excludes(k3_mesh_opt);

  // shapes
  auto* shapes = app.add_subcommand("shapes", "optimal unconstrained clusters for small k");
  std::int64_t shapes_max_k = 9, shapes_budget = 200'000'000;
  Coord shapes_radius = 0;
  shapes->add_option("--max-k", shapes_max_k, "table rows for k = 2..max-k (max 12)")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{12}));
  shapes->add_option("--radius", shapes_radius, "search box half-width (default 2k)");
  shapes->add_option("--budget", shapes_budget, "search node budget");

  // gen
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  auto* gen_lower2d = gen->add_subcommand("lower2d", "2D adversarial family for mm");
  std::int64_t g2_k = 8;
  Coord g2_scale = 1000;
  gen_lower2d->add_option("--k", g2_k, "cluster size (multiple of 8)")->required();
  gen_lower2d->add_option("--scale", g2_scale, "integer scale (eps = 1/scale)");
  auto* gen_cross = gen->add_subcommand("crosspoly", "d-dimensional cross-polytope family");
  std::int64_t gc_k = 12;
  int gc_d = 3;
  Coord gc_scale = 1000;
  gen_cross->add_option("--k", gc_k, "cluster size (multiple of 4d)")->required();
  gen_cross->add_option("--d", gc_d, "dimension (>= 2)")->required();
  gen_cross->add_option("--scale", gc_scale, "integer scale (eps = 1/scale)");
  auto* gen_mesh = gen->add_subcommand("mesh", "seeded random mesh");
  std::string gm_extents = "16x16";
  double gm_occupancy = 0.5;
  std::uint64_t gm_seed = 1;
  gen_mesh->add_option("--extents", gm_extents, "mesh extents, e.g. 16x16");
  gen_mesh->add_option("--occupancy", gm_occupancy, "occupied fraction in [0,1]");
  gen_mesh->add_option("--seed", gm_seed, "generator seed");
  auto* gen_points = gen->add_subcommand("points", "seeded random point multiset");
  std::int64_t gp_n = 10;
  int gp_d = 2;
  Coord gp_lo = 0, gp_hi = 10;
  std::uint64_t gp_seed = 1;
  gen_points->add_option("--n", gp_n, "point count")->required();
  gen_points->add_option("--d", gp_d, "dimension");
  gen_points->add_option("--lo", gp_lo, "minimum coordinate");
  gen_points->add_option("--hi", gp_hi, "maximum coordinate");
  gen_points->add_option("--seed", gp_seed, "generator seed");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "trace-driven job-stream simulation");
  std::string sim_swf, sim_extents = "16x16", sim_situations, sim_decisions;
  std::string sim_matrix_out, sim_events_out;
  std::int64_t sim_divisor = 1;
  simulate->add_option("--swf", sim_swf, "SWF trace file")->required();
  simulate->add_option("--extents", sim_extents, "mesh extents, e.g. 16x16");
  simulate->add_option("--situations", sim_situations,
                       "comma-separated situation algorithms (default: all)");
  simulate->add_option("--decisions", sim_decisions,
                       "comma-separated decision algorithms (default: all)");
  simulate->add_option("--scale-divisor", sim_divisor, "divide job processor counts (ceil)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--matrix-out", sim_matrix_out, "write the matrix CSV here");
  simulate->add_option("--events-out", sim_events_out, "write the event-log CSV here");

  // ratio
  auto* ratio = app.add_subcommand("ratio", "algorithm total vs oracle optimum");
  std::string ratio_algo, ratio_instance;
  std::int64_t ratio_k = 0, ratio_budget = 10'000'000;
  ratio->add_option("--algo", ratio_algo, "mm, mm-inc or mc1x1")->required();
  ratio->add_option("--instance", ratio_instance, "point multiset JSON file")->required();
  ratio->add_option("--k", ratio_k, "subset size")->required()->check(CLI::PositiveNumber);
  ratio->add_option("--budget", ratio_budget, "oracle subset budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  palloc::set_thread_count(threads);

  if (*allocate) {
    if (alloc_mesh.empty() && alloc_points.empty()) {
      throw std::invalid_argument("allocate: --mesh or --points is required");
    }
    const Algo algo = parse_algo(alloc_algo);
    palloc::Allocation result;
    if (algo == Algo::hilbert_bf) {
      if (alloc_mesh.empty()) {
        throw std::invalid_argument("allocate: hilbert-bf needs --mesh");
      }
      result = palloc::hilbert_bf_allocate(palloc::mesh_from_string(read_file(alloc_mesh)),
                                           alloc_k);
    } else {
      const palloc::PointMultiset free = load_free_set(alloc_points, alloc_mesh);
      const auto cands = alloc_fast ? palloc::MmCandidates::input_points
                                    : palloc::MmCandidates::full;
      switch (algo) {
        case Algo::mm: result = palloc::mm_allocate(free, alloc_k, cands); break;
        case Algo::mm_inc: result = palloc::mm_inc_allocate(free, alloc_k); break;
        case Algo::mc1x1: result = palloc::mc1x1_select(free, alloc_k); break;
        default: break;
      }
    }
    emit(palloc::to_json(result));
    return 0;
  }

  if (*oracle) {
    if (oracle_mesh.empty() && oracle_points.empty()) {
      throw std::invalid_argument("oracle: --mesh or --points is required");
    }
    const palloc::PointMultiset p = load_free_set(oracle_points, oracle_mesh);
    emit(palloc::to_json(palloc::brute_force_opt(p, oracle_k, oracle_budget)));
    return 0;
  }

  if (*ptas) {
    const palloc::PointMultiset p = palloc::multiset_from_string(read_file(ptas_points));
    int m = ptas_m;
    if (ptas_auto_m) {
      m = 0;
      for (int cand = static_cast<int>(std::min<std::int64_t>(ptas_k, 1'000'000)); cand >= 5;
           --cand) {
        if (ptas_k % cand == 0) {
          m = cand;
          break;
        }
      }
      if (m == 0) throw std::invalid_argument("ptas: k has no divisor >= 5");
    }
    emit(palloc::to_json(palloc::ptas_select(p, ptas_k, m, ptas_budget)));
    return 0;
  }

  if (*k3) {
    if (k3_mesh.empty() && k3_points.empty()) {
      throw std::invalid_argument("k3: --mesh or --points is required");
    }
    emit(palloc::to_json(palloc::exact_k3(load_free_set(k3_points, k3_mesh))));
    return 0;
  }

  if (*shapes) {
    nlohmann::json table = nlohmann::json::array();
    for (std::int64_t k = 2; k <= shapes_max_k; ++k) {
      const Coord radius = shapes_radius > 0 ? shapes_radius : static_cast<Coord>(2 * k);
      const palloc::UnconstrainedResult r =
          palloc::unconstrained_optimal(k, radius, shapes_budget);
      nlohmann::json row = palloc::to_json(r.alloc);
      row["k"] = k;
      table.push_back(row);
    }
    emit(table);
    return 0;
  }

  if (*gen) {
    if (*gen_lower2d) {
      emit(palloc::to_json(palloc::gen_lower_bound_2d(g2_k, g2_scale)));
    } else if (*gen_cross) {
      emit(palloc::to_json(palloc::gen_lower_bound_crosspolytope(gc_k, gc_d, gc_scale)));
    } else if (*gen_mesh) {
      emit(palloc::to_json(
          palloc::gen_random_mesh(parse_extents(gm_extents), gm_occupancy, gm_seed)));
    } else if (*gen_points) {
      emit(palloc::to_json(palloc::gen_random_points(gp_n, gp_d, gp_lo, gp_hi, gp_seed)));
    }
    return 0;
  }

  if (*simulate) {
    palloc::Trace trace = palloc::parse_swf(read_file(sim_swf), sim_swf);
    trace.scale_divisor = sim_divisor;
    if (trace.skipped > 0) {
      std::cerr << "warning: skipped " << trace.skipped << " unusable trace records\n";
    }
    const std::vector<Algo> situations =
        sim_situations.empty() ? std::vector<Algo>(palloc::kAllAlgos.begin(),
                                                   palloc::kAllAlgos.end())
                               : parse_algo_list(sim_situations);
    const std::vector<Algo> decisions =
        sim_decisions.empty() ? std::vector<Algo>(palloc::kAllAlgos.begin(),
                                                  palloc::kAllAlgos.end())
                              : parse_algo_list(sim_decisions);
    const palloc::SimResult result =
        palloc::simulate_matrix(trace, parse_extents(sim_extents), situations, decisions);
    for (const auto& run : result.runs) {
      for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
    }
    const std::string matrix = palloc::decision_matrix_csv(result);
    if (sim_matrix_out.empty()) {
      std::cout << matrix;
    } else {
      write_file(sim_matrix_out, matrix);
    }
    if (!sim_events_out.empty()) {
      write_file(sim_events_out, palloc::event_log_csv(result));
    }
    return 0;
  }

  if (*ratio) {
    const Algo algo = parse_algo(ratio_algo);
    const palloc::PointMultiset p = palloc::multiset_from_string(read_file(ratio_instance));
    palloc::Allocation alloc;
    palloc::Fraction bound;
    const int d = p.dim;
    switch (algo) {
      case Algo::mm:
        alloc = palloc::mm_allocate(p, ratio_k);
        bound = {4 * d - 1, 2 * d};  // 2 - 1/(2d)
        break;
      case Algo::mm_inc:
        alloc = palloc::mm_inc_allocate(p, ratio_k);
        bound = {4 * d - 1, 2 * d};
        break;
      case Algo::mc1x1:
        alloc = palloc::mc1x1_select(p, ratio_k);
        bound = {(2 * ratio_k - 2) * d, ratio_k};  // (2 - 2/k) d
        break;
      default:
        throw std::invalid_argument("ratio: no finite bound exists for " + ratio_algo);
    }
    const std::int64_t g = std::gcd(bound.num, bound.den);
    bound.num /= g;
    bound.den /= g;
    const palloc::Allocation opt = palloc::brute_force_opt(p, ratio_k, ratio_budget);
    nlohmann::json j;
    j["algorithm"] = alloc.algorithm;
    j["total"] = alloc.total_distance;
    j["opt"] = opt.total_distance;
    j["ratio"] = opt.total_distance == 0
                     ? (alloc.total_distance == 0 ? "1.000000" : "inf")
                     : palloc::decimal_trunc(alloc.total_distance, opt.total_distance, 6);
    j["bound"] = std::to_string(bound.num) + "/" + std::to_string(bound.den);
    j["bound_value"] = palloc::decimal_trunc(bound.num, bound.den, 6);
    // Exact cross-multiplied comparison: total/opt <= bound.
    j["pass"] = alloc.total_distance * bound.den <= opt.total_distance * bound.num;
    emit(j);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
