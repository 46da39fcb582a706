#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trifilt/bench.hpp"
#include "trifilt/io.hpp"
#include "trifilt/pipeline.hpp"
#include "trifilt/verify.hpp"

namespace {

using namespace trifilt;

struct InputFlags {
  std::string path;
  int dim = 0;
  bool interlevel = false;
  std::uint64_t seed = 0;
  double perturb = 1e-9;
  double frame_scale = 1e4;

  void attach(CLI::App& app) {
    app.add_option("input", path, "Input file: d coordinates then two values per line")->required();
    app.add_option("--dim", dim, "Force the ambient dimension")->check(CLI::Range(1, 3));
    app.add_flag("--interlevel", interlevel, "Rows hold one value delta; use gamma = (-delta, delta)");
    app.add_option("--seed", seed, "Perturbation seed");
    app.add_option("--perturb", perturb, "Jitter magnitude relative to the bounding-box diameter")
        ->check(CLI::PositiveNumber);
    app.add_option("--frame-scale", frame_scale, "Frame circumradius in bounding-box diameters")
        ->check(CLI::Range(1.0 + 1e-12, 1e12));
  }

  io::Prepared load() const {
    io::ParseOptions popt;
    if (dim) popt.dim = dim;
    popt.interlevel = interlevel;
    const auto data = io::read_input_file(path, popt);
    return io::prepare(data, {.seed = seed, .perturb = perturb, .frame_scale = frame_scale});
  }
};

std::vector<std::string> describe(const InputFlags& in, std::string_view kind, Strategy strategy) {
  std::ostringstream cfg;
  cfg << "filtration=" << kind << " algorithm=" << to_string(strategy) << " perturb=" << io::format_double(in.perturb)
      << " frame-scale=" << io::format_double(in.frame_scale) << " interlevel=" << (in.interlevel ? 1 : 0);
  return {"trifilt " TRIFILT_VERSION, "seed " + std::to_string(in.seed), cfg.str()};
}

void write_output(const std::string& path, const FiltrationOutput& out, const std::vector<std::string>& comments) {
  if (path.empty() || path == "-") {
    io::write_scc2020(std::cout, out, comments);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  io::write_scc2020(file, out, comments);
  if (!file.flush()) throw Error("failed writing " + path);
}

// "out.scc" with suffix "_del" becomes "out_del.scc".
std::string suffixed(const std::string& path, std::string_view suffix) {
  const std::filesystem::path p(path);
  auto name = p.stem().string() + std::string(suffix) + p.extension().string();
  return (p.parent_path() / name).string();
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

int run_compute(const InputFlags& in, const std::string& kind, const std::string& algorithm, const std::string& out) {
  const auto strategy = parse_strategy(algorithm);
  const auto prep = in.load();
  const auto result = run_pipeline(prep.cloud, prep.f, strategy);
  if (kind == "both") {
    if (out.empty() || out == "-") throw Error("--filtration both needs -o PATH");
    write_output(suffixed(out, "_del"), emit_filtration(result.incr, result.births, FiltrationKind::Del),
                 describe(in, "del", strategy));
    write_output(suffixed(out, "_delcech"), emit_filtration(result.incr, result.births, FiltrationKind::DelCech),
                 describe(in, "delcech", strategy));
  } else {
    const auto k = parse_filtration_kind(kind);
    write_output(out, emit_filtration(result.incr, result.births, k), describe(in, kind, strategy));
  }
  return 0;
}

int run_verify(const InputFlags& in, const verify::VerifyOptions& options) {
  const auto prep = in.load();
  const auto report = verify::run_checks(prep.cloud, prep.f, options);
  std::cout << "points used: " << report.points_used << " of " << prep.cloud.num_data() << '\n';
  for (const auto& c : report.checks) {
    std::cout << (c.skipped ? "skip " : c.ok ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << '\n';
  }
  const auto bad = report.mismatches();
  std::cout << bad << " mismatches\n";
  return bad ? 2 : 0;
}

int run_generate(const std::string& dataset, std::size_t n, std::uint64_t seed, const std::string& function,
                 bool use_interlevel, const std::string& out) {
  const auto data = io::generate_dataset(dataset, n, seed);
  const auto delta = io::compute_function(data, function, seed);
  io::InputData input;
  input.dim = data.dim;
  input.points = data.points;
  if (use_interlevel) {
    input.values = interlevel(delta);
  } else {
    for (std::size_t i = 0; i < delta.size(); ++i)
      input.values.push_back({delta[i], data.points[i][static_cast<std::size_t>(data.dim - 1)]});
  }
  if (out.empty() || out == "-") {
    io::write_input(std::cout, input);
    return 0;
  }
  std::ofstream file(out);
  if (!file) throw Error("cannot open " + out + " for writing");
  io::write_input(file, input);
  if (!file.flush()) throw Error("failed writing " + out);
  return 0;
}

int run_bench_cmd(bench::BenchConfig config, const std::string& out) {
  const auto rows = bench::run_bench(config);
  std::ostringstream text;
  bench::write_csv(text, rows);
  if (out.empty() || out == "-") {
    std::cout << text.str();
  } else {
    std::ofstream file(out);
    if (!file) throw Error("cannot open " + out + " for writing");
    file << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delaunay and Delaunay-Cech trifiltrations of bifunction point clouds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "trifilt " TRIFILT_VERSION);

  InputFlags compute_in;
  std::string kind = "del", algorithm = "local", out;
  auto* compute = app.add_subcommand("compute", "Write the trifiltration in scc2020 format");
  compute_in.attach(*compute);
  compute->add_option("--filtration", kind, "del, delcech or both")
      ->check(CLI::IsMember({"del", "delcech", "both"}));
  compute->add_option("--algorithm", algorithm, "Conflict scan strategy")
      ->check(CLI::IsMember({"naive", "nonlocal", "local"}));
  compute->add_option("-o,--output", out, "Output path (stdout if omitted)");

  InputFlags verify_in;
  verify::VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Compare against brute-force oracles on a reduced instance");
  verify_in.attach(*verify_cmd);
  verify_cmd->add_option("--max-points", vopt.max_points, "Truncate the input to this many points")
      ->check(CLI::Range(1, 64));
  verify_cmd->add_option("--samples", vopt.samples, "Sampled (p, r) pairs for the homology check");

  std::string dataset = "circle", function = "height", gen_out;
  std::size_t n = 100;
  std::uint64_t gen_seed = 1;
  bool gen_interlevel = false;
  auto* generate = app.add_subcommand("generate", "Write a synthetic input file");
  generate->add_option("--dataset", dataset, "circle, square, sphere, torus or cube");
  generate->add_option("-n,--points", n, "Number of points")->check(CLI::PositiveNumber);
  generate->add_option("--function", function, "codensity, coeccentricity, height or random");
  generate->add_option("--seed", gen_seed, "Sampling seed");
  generate->add_flag("--interlevel", gen_interlevel, "Values (-delta, delta) instead of (delta, height)");
  generate->add_option("-o,--output", gen_out, "Output path (stdout if omitted)");

  bench::BenchConfig bcfg;
  std::vector<std::string> bdatasets{"circle"}, bfunctions{"height"}, bsizes;
  std::string balgorithm = "local", bench_out;
  bool no_interlevel = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline over datasets, functions and sizes");
  bench_cmd->add_option("--dataset", bdatasets, "Datasets, comma separated or repeated");
  bench_cmd->add_option("--function", bfunctions, "Functions, comma separated or repeated");
  bench_cmd->add_option("--sizes", bsizes, "Point counts, comma separated");
  bench_cmd->add_option("--seed", bcfg.seed, "Sampling seed");
  bench_cmd->add_option("--algorithm", balgorithm, "Conflict scan strategy")
      ->check(CLI::IsMember({"naive", "nonlocal", "local"}));
  bench_cmd->add_flag("--no-interlevel", no_interlevel, "Use gamma = (delta, height)");
  bench_cmd->add_option("-o,--output", bench_out, "CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) return run_compute(compute_in, kind, algorithm, out);
    if (*verify_cmd) return run_verify(verify_in, vopt);
    if (*generate) return run_generate(dataset, n, gen_seed, function, gen_interlevel, gen_out);
    if (*bench_cmd) {
      bcfg.datasets = split_list(bdatasets);
      bcfg.functions = split_list(bfunctions);
      if (!bsizes.empty()) {
        bcfg.sizes.clear();
        for (const auto& s : split_list(bsizes)) bcfg.sizes.push_back(std::stoul(s));
      }
      bcfg.strategy = parse_strategy(balgorithm);
      bcfg.interlevel = !no_interlevel;
      bcfg.threads = bench::threads_from_env();
      return run_bench_cmd(bcfg, bench_out);
    }
  } catch (const io::ParseError& e) {
    std::cerr << "trifilt: " << compute_in.path << verify_in.path << ": " << e.what() << '\n';
    return 1;
  } catch (const GeneralPositionError& e) {
    std::cerr << "trifilt: " << e.what() << "\n  the input is degenerate after perturbation; retry with another --seed\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "trifilt: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
