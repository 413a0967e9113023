/*
 * Copyright 2026 The fuzzydd authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzydd/fmtr_io.hpp"
#include "fuzzydd/fuzzy_relation.hpp"
#include "fuzzydd/image.hpp"

namespace fs = std::filesystem;
using namespace fuzzydd;

namespace {

enum class Engine { Mtbdd, Dense };

const std::map<std::string, Engine> kEngineNames{{"mtbdd", Engine::Mtbdd},
                                                 {"dense", Engine::Dense}};
const std::map<std::string, SimilarityNorm> kNormNames{
    {"delta", SimilarityNorm::Delta}, {"sqrt-delta", SimilarityNorm::SqrtDelta}};
const std::map<std::string, Neighborhood> kNeighborhoodNames{
    {"4", Neighborhood::Four}, {"8", Neighborhood::Eight}};

const char* engine_name(Engine e) {
  return e == Engine::Mtbdd ? "mtbdd" : "dense";
}

/// Locale-independent fixed-point rendering (the CSV must not depend on the
/// environment).
std::string format_double(double value, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct RunReport {
  std::string input;
  Engine engine = Engine::Mtbdd;
  int precision = 1;
  double seconds = 0.0;
  std::uint64_t entries = 0;
  std::optional<std::size_t> nodes;      // diagram engine only
  std::optional<std::size_t> terminals;  // diagram engine only
  std::uint64_t kilobytes = 0;
  std::optional<unsigned> squarings;
};

RunReport report_for_relation(const std::string& input,
                              const FuzzyRelation& r, double seconds) {
  const RelationStats stats = relation_stats(r);
  RunReport rep;
  rep.input = input;
  rep.engine = Engine::Mtbdd;
  rep.precision = r.precision().digits();
  rep.seconds = seconds;
  rep.entries = static_cast<std::uint64_t>(r.domain_size()) * r.domain_size();
  rep.nodes = stats.nodes;
  rep.terminals = stats.terminals;
  rep.kilobytes = stats.kilobytes();
  return rep;
}

RunReport report_for_dense(const std::string& input, const DenseRelation& r,
                           double seconds) {
  RunReport rep;
  rep.input = input;
  rep.engine = Engine::Dense;
  rep.precision = r.precision().digits();
  rep.seconds = seconds;
  rep.entries = static_cast<std::uint64_t>(r.size()) * r.size();
  rep.kilobytes = dense_memory_bytes(r.size()) / 1000;
  return rep;
}

void print_report(const RunReport& r) {
  std::cout << "input=" << r.input << " engine=" << engine_name(r.engine)
            << " precision=" << r.precision
            << " seconds=" << format_double(r.seconds, 6)
            << " entries=" << r.entries;
  if (r.nodes) std::cout << " nodes=" << *r.nodes;
  if (r.terminals) std::cout << " terminals=" << *r.terminals;
  std::cout << " kb=" << r.kilobytes;
  if (r.squarings) std::cout << " squarings=" << *r.squarings;
  std::cout << '\n';
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const fs::path& path, const std::vector<RunReport>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot create CSV file: " + path.string());
  out << "input,engine,precision,seconds,entries,nodes,terminals,kb\n";
  for (const RunReport& r : rows) {
    out << csv_quote(r.input) << ',' << engine_name(r.engine) << ','
        << r.precision << ',' << format_double(r.seconds, 6) << ','
        << r.entries << ',';
    if (r.nodes) out << *r.nodes;
    out << ',';
    if (r.terminals) out << *r.terminals;
    out << ',' << r.kilobytes << '\n';
  }
  if (!out.flush()) throw error("failed writing CSV file: " + path.string());
}

bool is_image_path(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".ppm" || ext == ".pgm";
}

void check_dense_cap(std::uint32_t n, std::uint32_t cap) {
  if (n > cap)
    throw usage_error("dense engine refuses domain size " + std::to_string(n) +
                      " (cap " + std::to_string(cap) +
                      ", see --max-dense-n)");
}

// ---- affinity ----------------------------------------------------------

struct AffinityArgs {
  std::string image_path;
  std::string out_path;
  int precision = 1;
  SimilarityNorm norm = SimilarityNorm::Delta;
  Neighborhood neighborhood = Neighborhood::Four;
};

int cmd_affinity(const AffinityArgs& args) {
  const Image img = load_image_file(args.image_path);
  NodeTable table(Precision(args.precision));

  const Stopwatch watch;
  const FuzzyRelation rel =
      build_affinity(table, img, args.norm, args.neighborhood);
  const double seconds = watch.seconds();

  write_fmtr_file(args.out_path, rel);
  print_report(report_for_relation(args.image_path, rel, seconds));
  return 0;
}

// ---- compose / closure -------------------------------------------------

struct ComposeArgs {
  std::string a_path;
  std::string b_path;
  std::string out_path;
  Engine engine = Engine::Mtbdd;
  std::uint32_t max_dense_n = 4096;
};

int cmd_compose(const ComposeArgs& args) {
  const FmtrData a = read_fmtr_file(args.a_path);
  const FmtrData b = read_fmtr_file(args.b_path);
  if (a.n != b.n)
    throw usage_error("composition operands must have equal domain size");
  if (!(a.precision == b.precision))
    throw usage_error("composition operands must have equal precision");

  const std::string input = args.a_path + "," + args.b_path;
  if (args.engine == Engine::Dense) {
    check_dense_cap(a.n, args.max_dense_n);
    const DenseRelation da = to_dense(a);
    const DenseRelation db = to_dense(b);
    const Stopwatch watch;
    const DenseRelation out = dense_mmc(da, db);
    const double seconds = watch.seconds();
    write_fmtr_file(args.out_path, out);
    print_report(report_for_dense(input, out, seconds));
  } else {
    NodeTable table(a.precision);
    const FuzzyRelation ra = to_relation(table, a);
    const FuzzyRelation rb = to_relation(table, b);
    const Stopwatch watch;
    const FuzzyRelation out = max_min_compose(ra, rb);
    const double seconds = watch.seconds();
    write_fmtr_file(args.out_path, out);
    print_report(report_for_relation(input, out, seconds));
  }
  return 0;
}

struct ClosureArgs {
  std::string in_path;
  std::string out_path;
  Engine engine = Engine::Mtbdd;
  std::uint32_t max_dense_n = 4096;
};

int cmd_closure(const ClosureArgs& args) {
  const FmtrData data = read_fmtr_file(args.in_path);
  if (args.engine == Engine::Dense) {
    check_dense_cap(data.n, args.max_dense_n);
    const DenseRelation in = to_dense(data);
    const Stopwatch watch;
    const DenseRelation out = floyd_warshall_closure(in);
    const double seconds = watch.seconds();
    write_fmtr_file(args.out_path, out);
    print_report(report_for_dense(args.in_path, out, seconds));
  } else {
    NodeTable table(data.precision);
    const FuzzyRelation in = to_relation(table, data);
    unsigned squarings = 0;
    const Stopwatch watch;
    const FuzzyRelation out = transitive_closure(in, &squarings);
    const double seconds = watch.seconds();
    write_fmtr_file(args.out_path, out);
    RunReport rep = report_for_relation(args.in_path, out, seconds);
    rep.squarings = squarings;
    print_report(rep);
  }
  return 0;
}

// ---- stats -------------------------------------------------------------

int cmd_stats(const std::string& in_path,
              const std::optional<double>& threshold) {
  if (threshold && (*threshold <= 0.0 || *threshold > 1.0))
    throw usage_error("threshold must be in (0, 1]");
  const FmtrData data = read_fmtr_file(in_path);
  NodeTable table(data.precision);
  const FuzzyRelation rel = to_relation(table, data);
  const RelationStats stats = relation_stats(rel);
  const std::uint64_t entries =
      static_cast<std::uint64_t>(data.n) * data.n;
  std::cout << "input=" << in_path << " n=" << data.n
            << " precision=" << data.precision.digits()
            << " entries=" << entries << " nodes=" << stats.nodes
            << " terminals=" << stats.terminals
            << " array_kb=" << dense_memory_bytes(data.n) / 1000
            << " mtbdd_kb=" << stats.kilobytes() << '\n';
  if (threshold) {
    // The cut is computed on the integer grade so 0.3 at p=1 keeps q=3
    // despite 0.3 * 10 falling just below 3 in binary floating point.
    const double cut = *threshold * data.precision.scale() - 1e-9;
    rel.for_each_nonzero(
        [&](std::uint32_t i, std::uint32_t j, MembershipValue v) {
          if (static_cast<double>(v.raw()) >= cut)
            std::cout << i << ' ' << j << ' ' << v.raw() << '\n';
        });
  }
  return 0;
}

// ---- bench -------------------------------------------------------------

enum class BenchOp { Compose, Closure };

const std::map<std::string, BenchOp> kOpNames{{"compose", BenchOp::Compose},
                                              {"closure", BenchOp::Closure}};

struct BenchArgs {
  std::string manifest_path;
  std::string out_path;
  BenchOp op = BenchOp::Closure;
  SimilarityNorm norm = SimilarityNorm::Delta;
  Neighborhood neighborhood = Neighborhood::Four;
  std::uint32_t max_dense_n = 4096;
};

struct BenchJob {
  std::string raw_path;
  fs::path resolved;
  Engine engine = Engine::Mtbdd;
  int precision = 1;
  std::size_t line = 0;
};

std::vector<BenchJob> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open manifest: " + path.string());

  std::vector<BenchJob> jobs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ls(line);
    BenchJob job;
    std::string engine_str, extra;
    if (!(ls >> job.raw_path >> engine_str >> job.precision) || (ls >> extra))
      throw parse_error("manifest line " + std::to_string(line_no) +
                            ": want '<input-path> <engine> <precision>'",
                        line_no);
    const auto engine = kEngineNames.find(engine_str);
    if (engine == kEngineNames.end())
      throw parse_error("manifest line " + std::to_string(line_no) +
                            ": unknown engine '" + engine_str + "'",
                        line_no);
    job.engine = engine->second;
    if (job.precision < 1 || job.precision > 3)
      throw parse_error("manifest line " + std::to_string(line_no) +
                            ": precision must be 1, 2 or 3",
                        line_no);
    // Paths resolve against the manifest's own directory, so manifests can
    // move together with their inputs.
    const fs::path p(job.raw_path);
    job.resolved = p.is_absolute() ? p : path.parent_path() / p;
    job.line = line_no;
    jobs.push_back(job);
  }
  return jobs;
}

RunReport run_bench_job(const BenchJob& job, const BenchArgs& args) {
  const Precision p(job.precision);
  const bool image = is_image_path(job.resolved);

  if (job.engine == Engine::Dense) {
    DenseRelation in(1, p);
    if (image) {
      const Image img = load_image_file(job.resolved.string());
      check_dense_cap(img.pixel_count(), args.max_dense_n);
      in = build_affinity_dense(img, p, args.norm, args.neighborhood);
    } else {
      const FmtrData data = read_fmtr_file(job.resolved.string());
      if (!(data.precision == p))
        throw usage_error("manifest line " + std::to_string(job.line) +
                          ": file precision " +
                          std::to_string(data.precision.digits()) +
                          " differs from the manifest's " +
                          std::to_string(job.precision));
      check_dense_cap(data.n, args.max_dense_n);
      in = to_dense(data);
    }
    const Stopwatch watch;
    const DenseRelation out = args.op == BenchOp::Closure
                                  ? floyd_warshall_closure(in)
                                  : dense_mmc(in, in);
    const double seconds = watch.seconds();
    return report_for_dense(job.raw_path, out, seconds);
  }

  NodeTable table(p);
  std::optional<FuzzyRelation> in;
  if (image) {
    const Image img = load_image_file(job.resolved.string());
    in = build_affinity(table, img, args.norm, args.neighborhood);
  } else {
    const FmtrData data = read_fmtr_file(job.resolved.string());
    if (!(data.precision == p))
      throw usage_error("manifest line " + std::to_string(job.line) +
                        ": file precision " +
                        std::to_string(data.precision.digits()) +
                        " differs from the manifest's " +
                        std::to_string(job.precision));
    in = to_relation(table, data);
  }
  const Stopwatch watch;
  const FuzzyRelation out = args.op == BenchOp::Closure
                                ? transitive_closure(*in)
                                : max_min_compose(*in, *in);
  const double seconds = watch.seconds();
  return report_for_relation(job.raw_path, out, seconds);
}

int cmd_bench(const BenchArgs& args) {
  const std::vector<BenchJob> jobs = read_manifest(args.manifest_path);
  std::vector<RunReport> rows;
  rows.reserve(jobs.size());
  for (const BenchJob& job : jobs) {
    RunReport rep = run_bench_job(job, args);
    print_report(rep);
    rows.push_back(std::move(rep));
  }
  write_csv(args.out_path, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy binary relations on multi-terminal decision diagrams"};
  app.require_subcommand(1);

  AffinityArgs affinity_args;
  CLI::App* affinity = app.add_subcommand(
      "affinity", "Build the fuzzy adjacency relation of an image");
  affinity->add_option("image", affinity_args.image_path, "PPM/PGM input")
      ->required();
  affinity->add_option("--out", affinity_args.out_path, "output relation file")
      ->required();
  affinity
      ->add_option("--precision", affinity_args.precision,
                   "fractional digits of grades")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  affinity
      ->add_option("--normalize", affinity_args.norm,
                   "similarity normalization")
      ->transform(CLI::CheckedTransformer(kNormNames))
      ->default_str("delta");
  affinity
      ->add_option("--neighborhood", affinity_args.neighborhood,
                   "pixel adjacency")
      ->transform(CLI::CheckedTransformer(kNeighborhoodNames))
      ->default_str("4");

  ComposeArgs compose_args;
  CLI::App* compose =
      app.add_subcommand("compose", "Max-min composition of two relations");
  compose->add_option("a", compose_args.a_path, "left relation file")
      ->required();
  compose->add_option("b", compose_args.b_path, "right relation file")
      ->required();
  compose->add_option("--out", compose_args.out_path, "output relation file")
      ->required();
  compose->add_option("--engine", compose_args.engine, "implementation")
      ->transform(CLI::CheckedTransformer(kEngineNames))
      ->default_str("mtbdd");
  compose
      ->add_option("--max-dense-n", compose_args.max_dense_n,
                   "dense engine size cap")
      ->capture_default_str();

  ClosureArgs closure_args;
  CLI::App* closure = app.add_subcommand(
      "closure", "Max-min transitive closure of a reflexive relation");
  closure->add_option("input", closure_args.in_path, "relation file")
      ->required();
  closure->add_option("--out", closure_args.out_path, "output relation file")
      ->required();
  closure->add_option("--engine", closure_args.engine, "implementation")
      ->transform(CLI::CheckedTransformer(kEngineNames))
      ->default_str("mtbdd");
  closure
      ->add_option("--max-dense-n", closure_args.max_dense_n,
                   "dense engine size cap")
      ->capture_default_str();

  std::string stats_path;
  double stats_threshold = 0.0;
  CLI::App* stats =
      app.add_subcommand("stats", "Size figures for a relation file");
  stats->add_option("input", stats_path, "relation file")->required();
  CLI::Option* stats_thr_opt = stats->add_option(
      "--threshold", stats_threshold,
      "also list pairs with grade >= this value, one 'i j q' line each");

  BenchArgs bench_args;
  CLI::App* bench =
      app.add_subcommand("bench", "Run a manifest of timed jobs into a CSV");
  bench->add_option("manifest", bench_args.manifest_path,
                    "one '<input-path> <engine> <precision>' per line")
      ->required();
  bench->add_option("--out", bench_args.out_path, "output CSV file")
      ->required();
  bench->add_option("--op", bench_args.op, "operation to benchmark")
      ->transform(CLI::CheckedTransformer(kOpNames))
      ->default_str("closure");
  bench->add_option("--normalize", bench_args.norm, "similarity normalization")
      ->transform(CLI::CheckedTransformer(kNormNames))
      ->default_str("delta");
  bench
      ->add_option("--neighborhood", bench_args.neighborhood,
                   "pixel adjacency")
      ->transform(CLI::CheckedTransformer(kNeighborhoodNames))
      ->default_str("4");
  bench
      ->add_option("--max-dense-n", bench_args.max_dense_n,
                   "dense engine size cap")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(affinity)) return cmd_affinity(affinity_args);
    if (app.got_subcommand(compose)) return cmd_compose(compose_args);
    if (app.got_subcommand(closure)) return cmd_closure(closure_args);
    if (app.got_subcommand(stats))
      return cmd_stats(stats_path, stats_thr_opt->count()
                                       ? std::optional<double>(stats_threshold)
                                       : std::nullopt);
    if (app.got_subcommand(bench)) return cmd_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
