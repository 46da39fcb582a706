// Acceptance suite: one PASS/FAIL line per criterion.
//
//   trifilt_acceptance                 run all criteria
//   trifilt_acceptance --criterion N   run criterion N only

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "support/instances.hpp"
#include "trifilt/bench.hpp"
#include "trifilt/filtration.hpp"
#include "trifilt/io.hpp"
#include "trifilt/oracle.hpp"
#include "trifilt/pipeline.hpp"
#include "trifilt/scanner.hpp"
#include "trifilt/triangulation.hpp"
#include "trifilt/verify.hpp"

namespace {

using namespace trifilt;
using testing::Instance;
using testing::Order;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& what) {
    if (ok) first_failure = what;
    ok = false;
  }
};

// 200 instances over d in {1,2,3}, 3 <= |X| <= 12, cycling through the three orders.
std::vector<Instance> oracle_instances(std::size_t count, std::size_t max_points) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    const int dim = 1 + static_cast<int>(i % 3);
    const auto order = static_cast<Order>((i / 3) % 3);
    const std::size_t n = 3 + (i * 7 + i / 9) % (max_points - 2);
    out.push_back(testing::random_instance(10'000 + i, dim, n, order));
  }
  return out;
}

bool same_simplex_set(const std::vector<Simplex>& a, const std::vector<Simplex>& b) { return a == b; }

Outcome incr_matches_oracle() {
  Outcome r;
  std::size_t simplices = 0;
  for (const auto& inst : oracle_instances(200, 12)) {
    const auto ledger = scan(inst.cloud, inst.f, Strategy::Local);
    const auto incr = assemble_incr(ledger, derive_triples(ledger), inst.cloud).all();
    const auto brute = oracle::brute_incr(inst.cloud, inst.f);
    simplices += brute.size();
    if (!same_simplex_set(incr, brute))
      r.fail(inst.label + ": " + std::to_string(incr.size()) + " vs oracle " + std::to_string(brute.size()));
  }
  r.detail = "200 instances, " + std::to_string(simplices) + " oracle simplices";
  return r;
}

Outcome strategies_agree() {
  Outcome r;
  std::size_t pairs = 0;
  for (const auto& inst : oracle_instances(200, 12)) {
    const auto a = scan(inst.cloud, inst.f, Strategy::Naive);
    const auto b = scan(inst.cloud, inst.f, Strategy::NonLocal);
    const auto c = scan(inst.cloud, inst.f, Strategy::Local);
    pairs += a.num_pairs();
    if (!(a == b) || !(b == c)) r.fail(inst.label + ": ledgers differ");
    const auto ta = derive_triples(a), tb = derive_triples(b), tc = derive_triples(c);
    if (ta != tb || tb != tc) r.fail(inst.label + ": triples differ");
  }
  r.detail = "200 instances, " + std::to_string(pairs) + " conflict pairs each";
  return r;
}

Outcome radii_exact() {
  Outcome r;
  std::size_t checked = 0;
  for (const auto& inst : oracle_instances(100, 10)) {
    const auto incr = compute_incr(inst.cloud, inst.f, Strategy::Local);
    const auto births = compute_births(incr, inst.cloud, inst.f, {.keep_exact = true});
    for (int k = 0; k <= incr.max_dim(); ++k) {
      const auto level = incr.level(k);
      for (SimplexStore::Index i = 0; i < level.size(); ++i) {
        const auto& s = level[i];
        const auto where = inst.label + " " + s.to_string();
        ++checked;
        if (births.omega_sq(k, i) != oracle::brute_omega(inst.cloud, inst.f, s)) r.fail(where + ": omega");
        if (births.m_sq(k, i) != oracle::brute_miniball_sq(inst.cloud, s)) r.fail(where + ": m");
        if (births.m_sq(k, i) > births.omega_sq(k, i) || births.at(k, i).m > births.at(k, i).omega)
          r.fail(where + ": m > omega");
        if (k == 0) continue;
        for (auto j : incr.facets(k, i)) {
          const auto& lo = births.at(k - 1, j);
          const auto& hi = births.at(k, i);
          if (births.omega_sq(k - 1, j) > births.omega_sq(k, i) || births.m_sq(k - 1, j) > births.m_sq(k, i) ||
              lo.omega > hi.omega || lo.m > hi.m || lo.gamma[0] > hi.gamma[0] || lo.gamma[1] > hi.gamma[1])
            r.fail(where + ": facet not below");
        }
      }
    }
  }
  r.detail = "100 instances, " + std::to_string(checked) + " simplices";
  return r;
}

// The radii at which the alpha filtration of X_p changes, thinned to five.
std::vector<Rational> sample_radii(std::vector<Rational> alpha) {
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  std::vector<Rational> out;
  for (int q = 0; q < 5; ++q) {
    const auto idx = static_cast<std::size_t>(q) * (alpha.size() - 1) / 4;
    out.push_back(alpha[idx]);
  }
  return out;
}

Outcome containment() {
  Outcome r;
  std::size_t tests = 0;
  for (const auto& inst : oracle_instances(200, 12)) {
    const auto incr = compute_incr(inst.cloud, inst.f, Strategy::Local);
    const auto births = compute_births(incr, inst.cloud, inst.f, {.keep_exact = true});
    const auto n = static_cast<Rank>(inst.cloud.size());
    for (Rank a = 0; a < n; ++a)
      for (Rank b = 0; b < n; ++b) {
        const GridIndex p{a, b};
        const auto pts = testing::sublevel(inst.cloud, inst.f, p);
        if (pts.empty()) continue;
        const auto del = oracle::brute_delaunay(inst.cloud, pts);
        std::vector<Rational> alpha;
        alpha.reserve(del.size());
        for (const auto& s : del) alpha.push_back(oracle::alpha_sq_radius(inst.cloud, pts, s));
        for (const auto& radius : sample_radii(alpha)) {
          ++tests;
          for (std::size_t i = 0; i < del.size(); ++i) {
            if (alpha[i] > radius) continue;
            const auto& s = del[i];
            const auto idx = incr.find(s);
            const bool inside = idx && inst.f.join(s).leq(p) && births.omega_sq(s.dim(), *idx) <= radius;
            if (!inside) {
              r.fail(inst.label + " p=(" + std::to_string(a) + "," + std::to_string(b) + ") " + s.to_string());
              break;
            }
          }
        }
      }
  }
  r.detail = "200 instances, " + std::to_string(tests) + " (p, r) pairs";
  return r;
}

io::Prepared prepared(const io::Dataset& data, const std::vector<Value2>& values, std::uint64_t seed) {
  io::InputData in{data.dim, data.points, values};
  return io::prepare(in, {.seed = seed});
}

Outcome weak_equivalence() {
  Outcome r;
  std::size_t samples = 0;
  auto run = [&](const PointCloud& cloud, const BiFunction& f, const std::string& label, std::uint64_t seed) {
    const auto rep = verify::verify_equivalence(cloud, f, 50, seed);
    samples += rep.samples;
    if (rep.samples != 50) r.fail(label + ": only " + std::to_string(rep.samples) + " samples");
    if (!rep.mismatches.empty()) r.fail(label + ": " + rep.mismatches.front());
  };
  // Noisy circles with the interlevel filtration of the height.
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto data = io::generate_dataset("circle", 25, 50 + s);
    const auto prep = prepared(data, interlevel(io::compute_function(data, "height", s)), s);
    run(prep.cloud, prep.f, "noisy circle seed " + std::to_string(50 + s), s);
  }
  for (std::uint64_t s = 0; s < 2; ++s) {
    const auto data = io::generate_dataset("square", 25, 60 + s);
    const auto prep = prepared(data, interlevel(io::compute_function(data, "codensity", s)), s);
    run(prep.cloud, prep.f, "square codensity seed " + std::to_string(60 + s), s);
  }
  for (std::uint64_t s = 0; s < 2; ++s) {
    const auto data = io::generate_dataset("sphere", 14, 70 + s);
    const auto prep = prepared(data, interlevel(io::compute_function(data, "height", s)), s);
    run(prep.cloud, prep.f, "sphere height seed " + std::to_string(70 + s), s);
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    const int dim = 1 + static_cast<int>(s % 3);
    const std::size_t n = dim == 3 ? 12 : dim == 2 ? 20 : 25;
    const auto inst = testing::random_instance(20'000 + s, dim, n, static_cast<Order>(s % 3));
    run(inst.cloud, inst.f, inst.label, s);
  }
  r.detail = "20 instances, " + std::to_string(samples) + " samples";
  return r;
}

Outcome triples_match_definition() {
  Outcome r;
  std::size_t triples = 0;
  for (const auto& inst : oracle_instances(200, 12)) {
    const auto ledger = scan(inst.cloud, inst.f, Strategy::Local);
    const auto def = oracle::definitional_conflicts(inst.cloud, inst.f);
    std::vector<std::pair<Simplex, std::pair<PointId, PointId>>> mine;
    for (const auto& t : derive_triples(ledger)) mine.push_back({t.cell, {t.x, t.y}});
    triples += def.triples.size();
    if (mine != def.triples)
      r.fail(inst.label + ": " + std::to_string(mine.size()) + " vs " + std::to_string(def.triples.size()));
    const std::vector<std::pair<Simplex, std::vector<PointId>>> expected(def.pairs.begin(), def.pairs.end());
    if (ledger.canonical() != expected) r.fail(inst.label + ": conflict pairs differ");
  }
  r.detail = "200 instances, " + std::to_string(triples) + " triples";
  return r;
}

Outcome scaling() {
  Outcome r;
  std::ostringstream detail;
  std::vector<std::string> failures;
  const std::vector<std::pair<std::string, std::string>> cells{{"circle", "height"}, {"sphere", "codensity"}};
  for (const auto& [ds, fn] : cells) {
    bench::BenchConfig cfg;
    cfg.datasets = {ds};
    cfg.functions = {fn};
    cfg.sizes = {100, 200, 400, 800, 1600};
    cfg.threads = bench::threads_from_env();
    const auto rows = bench::run_bench(cfg);
    const auto slope = bench::fit_slopes(rows).at(0);
    detail << ds << "+" << fn << " size slope " << io::format_double(std::round(slope.size_slope * 1000) / 1000)
           << " time slope " << io::format_double(std::round(slope.time_slope * 1000) / 1000) << "; ";
    if (slope.size_slope < 0.85 || slope.size_slope > 1.35) failures.push_back(ds + " size slope out of [0.85, 1.35]");
    if (slope.time_slope > 2.5) failures.push_back(ds + " time slope above 2.5");
  }
  for (const auto& f : failures) r.fail(f);
  // The 3D size curve is still steep at these sizes (see README); name that
  // case so the test harness can tell it from any other failure.
  if (failures == std::vector<std::string>{"sphere size slope out of [0.85, 1.35]"})
    detail << "only deviation: 3D size slope; ";
  r.detail = detail.str();
  r.detail.resize(r.detail.size() - 2);
  return r;
}

Outcome engine_soundness() {
  Outcome r;
  std::size_t ops = 0;
  for (int dim = 1; dim <= 3; ++dim)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      io::UniformSource rng(30'000 + seed * 5 + static_cast<std::uint64_t>(dim));
      const std::size_t n = 12 + seed;
      auto cloud = with_frame(dim, testing::random_points(rng, dim, n));
      Triangulation t(cloud);
      std::vector<char> live(n, 0);
      for (int op = 0; op < 500; ++op, ++ops) {
        const auto v = static_cast<PointId>(std::min(n - 1, static_cast<std::size_t>(rng.next() * static_cast<double>(n))));
        if (live[static_cast<std::size_t>(v)])
          t.remove(v);
        else
          t.insert(v);
        live[static_cast<std::size_t>(v)] ^= 1;

        std::vector<PointId> ids = cloud.frame_ids();
        for (std::size_t i = 0; i < n; ++i)
          if (live[i]) ids.push_back(static_cast<PointId>(i));
        std::sort(ids.begin(), ids.end());
        std::vector<Simplex> expected;
        for (const auto& s : oracle::brute_delaunay(cloud, ids))
          if (s.dim() == dim) expected.push_back(s);
        std::sort(expected.begin(), expected.end());

        const std::string where = "d=" + std::to_string(dim) + " seed " + std::to_string(seed) + " op " + std::to_string(op);
        try {
          t.validate();
        } catch (const std::exception& e) {
          r.fail(where + ": " + e.what());
        }
        if (!t.is_delaunay()) r.fail(where + ": empty-circumsphere property broken");
        if (t.cells() != expected) r.fail(where + ": cells differ from the oracle");
        if (!r.ok) return r;
      }
    }
  r.detail = std::to_string(ops) + " mutations over 12 sequences";
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome r;
  const auto dir = std::filesystem::temp_directory_path() / ("trifilt_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto input = dir / "input.txt";
  {
    const auto data = io::generate_dataset("torus", 300, 9);
    io::InputData in{data.dim, data.points, interlevel(io::compute_function(data, "codensity", 9))};
    std::ofstream out(input);
    io::write_input(out, in);
  }

  if (const char* cli = std::getenv("TRIFILT_CLI")) {
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / ("run" + std::to_string(run) + ".scc");
      const std::string cmd = std::string("\"") + cli + "\" compute \"" + input.string() +
                              "\" --filtration both --algorithm local --seed 1 -o \"" + out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) r.fail("compute exited nonzero");
    }
    for (const char* kind : {"del", "delcech"}) {
      const auto a = slurp(dir / ("run0_" + std::string(kind) + ".scc"));
      const auto b = slurp(dir / ("run1_" + std::string(kind) + ".scc"));
      if (a.empty()) r.fail(std::string("empty ") + kind + " output");
      if (a != b) r.fail(std::string(kind) + " outputs differ");
    }
    r.detail = "two CLI runs writing both filtrations, torus n=300";
  } else {
    std::string outputs[2];
    for (auto& o : outputs) {
      const auto data = io::read_input_file(input.string());
      const auto prep = io::prepare(data, {.seed = 1});
      const auto res = run_pipeline(prep.cloud, prep.f, Strategy::Local);
      std::ostringstream s;
      io::write_scc2020(s, emit_filtration(res.incr, res.births, FiltrationKind::Del), {"seed 1"});
      o = s.str();
    }
    if (outputs[0] != outputs[1]) r.fail("library outputs differ");
    r.detail = "two in-process runs (TRIFILT_CLI unset), torus n=300";
  }
  std::filesystem::remove_all(dir);
  return r;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"incremental complex equals the witness oracle", incr_matches_oracle},
      {"scan strategies produce identical ledgers", strategies_agree},
      {"exact radii, m <= omega and facet monotonicity", radii_exact},
      {"sublevel alpha complexes are contained", containment},
      {"Betti numbers agree with the Cech complex", weak_equivalence},
      {"conflict triples equal the grid definition", triples_match_definition},
      {"size and runtime scaling", scaling},
      {"engine stays Delaunay under insert and delete", engine_soundness},
      {"compute output is byte-identical across runs", determinism},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
      return 64;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion must be 1.." << criteria.size() << '\n';
    return 64;
  }

  bool all_ok = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only && static_cast<int>(k) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k].run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << k + 1 << ": " << (out.ok ? "PASS" : "FAIL") << "  " << criteria[k].name << " ("
              << out.detail;
    if (!out.ok) std::cout << (out.detail.empty() ? "" : "; ") << "first failure: " << out.first_failure;
    std::cout << "; " << static_cast<long>(secs * 10) / 10.0 << " s)" << std::endl;
    all_ok &= out.ok;
  }
  return all_ok ? 0 : 1;
}
