#include "dynamo/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "dynamo/core.hpp"
#include "dynamo/io.hpp"
#include "dynamo/laminate.hpp"
#include "dynamo/oracle.hpp"
#include "dynamo/planewave.hpp"

namespace dynamo::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err)
      : cfg_(cfg), in_(in), out_(out), err_(err) {}

  int run() {
    switch (cfg_.command) {
      case Command::VerifyHull: return verify_hull();
      case Command::Decompose: return decompose_cmd();
      case Command::WaveCone: return wavecone();
      case Command::Sample: return sample();
      case Command::Residual: return residual();
    }
    return kExitUsage;
  }

 private:
  HullParams params() const { return HullParams(cfg_.r, cfg_.s); }

  Tolerances tolerances() const {
    Tolerances t;
    t.eps_mem = cfg_.tol;
    if (t.eps_root >= t.eps_mem) t.eps_root = t.eps_mem * 1e-3;
    t.validate();
    return t;
  }

  SampleConfig sample_config() const { return {cfg_.seed, cfg_.count, params(), cfg_.kind}; }

  void stamp(json& j) const {
    if (!cfg_.deterministic) j["timestamp"] = utc_timestamp();
  }

  Triple read_triple() {
    std::string text;
    if (cfg_.input == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(cfg_.input);
      if (!f) throw UsageError("cannot open input file: " + cfg_.input);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    try {
      return parse_triple(text);
    } catch (const DynamoError& e) {
      throw UsageError(e.what());
    }
  }

  void emit(const std::string& text) {
    if (cfg_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.output, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + cfg_.output);
    f << text;
  }

  void emit(const json& j) { emit(j.dump(2) + "\n"); }

  int verify_hull() {
    HullCheckOptions opts;
    opts.decomposition_bound = cfg_.tol;
    opts.inner_slack = cfg_.tol * 0.1;
    const HullCheckReport rep = two_sided_hull_check(sample_config(), tolerances(), opts);

    if (cfg_.format == Format::Csv) {
      std::string text = "stage,index,Bx,By,Bz,ux,uy,uz,Ex,Ey,Ez,residual\n";
      for (const auto& f : rep.failures) {
        text += f.stage + "," + std::to_string(f.index);
        for (const Vec3* v : {&f.point.B, &f.point.u, &f.point.E}) {
          text += "," + format_double(v->x) + "," + format_double(v->y) + "," + format_double(v->z);
        }
        text += "," + format_double(f.residual) + "\n";
      }
      emit(text);
    } else {
      json j = to_json(rep);
      j["tolerances"] = {{"inner_slack", opts.inner_slack}, {"decomposition_bound", opts.decomposition_bound}};
      stamp(j);
      emit(j);
    }
    if (!cfg_.output.empty()) {
      out_ << "verify-hull: checked " << rep.checked() << ", failures " << rep.failure_count << ", seed "
           << rep.seed << "\n";
    }
    return rep.ok() ? kExitOk : kExitFailure;
  }

  int decompose_cmd() {
    const Triple z = read_triple();
    const HullParams p = params();
    const Tolerances tol = tolerances();
    try {
      const Decomposition d = decompose(z, p, cfg_.kind, tol);
      const VerificationReport v = verify_decomposition(d, z, p, cfg_.kind, tol);
      const double lm = lambda_mu_residual(d, z, p);
      if (cfg_.format == Format::Csv) {
        std::string text = "lambda,z1_Bx,z1_By,z1_Bz,z1_ux,z1_uy,z1_uz,z1_Ex,z1_Ey,z1_Ez,"
                           "z2_Bx,z2_By,z2_Bz,z2_ux,z2_uy,z2_uz,z2_Ex,z2_Ey,z2_Ez,max_residual\n";
        text += format_double(d.lambda);
        for (const Triple* t : {&d.z1, &d.z2}) {
          for (const Vec3* vec : {&t->B, &t->u, &t->E}) {
            text += "," + format_double(vec->x) + "," + format_double(vec->y) + "," + format_double(vec->z);
          }
        }
        emit(text + "," + format_double(v.max_residual) + "\n");
      } else {
        emit(to_json(d, v, lm));
      }
      return v.passed ? kExitOk : kExitFailure;
    } catch (const NotInHullError& e) {
      emit(json{{"error", "not-in-hull"}, {"witness", to_json(e.witness())}});
      return kExitFailure;
    }
  }

  int wavecone() {
    const Triple z = read_triple();
    const Tolerances tol = tolerances();
    const bool member = in_wave_cone(z, cfg_.kind, tol);
    json j = {{"verdict", member ? "in-cone" : "not-in-cone"},
              {"kind", std::string(to_string(cfg_.kind))},
              {"g1", eval_g1(z)},
              {"g3", eval_g3(z)}};
    if (member) {
      try {
        const WaveVector xi = wave_vector_for(z, cfg_.kind, tol);
        j["xi"] = to_json(xi);
        j["condition_residual"] = plane_wave_condition_residual(z, xi, cfg_.kind);
      } catch (const DynamoError& e) {
        j["xi"] = nullptr;
        j["note"] = e.what();
      }
    }
    if (cfg_.format == Format::Csv) {
      emit("verdict,g1,g3\n" + j["verdict"].get<std::string>() + "," + format_double(eval_g1(z)) + "," +
           format_double(eval_g3(z)) + "\n");
    } else {
      emit(j);
    }
    return kExitOk;
  }

  int sample() {
    const SampleConfig sc = sample_config();
    const Tolerances tol = tolerances();
    const auto samples = sample_first_laminate(sc);
    if (cfg_.format == Format::Csv) {
      std::string text = std::string(kSampleCsvHeader) + "\n";
      for (const auto& s : samples) text += sample_csv_row(s.point, sc.params, sc.kind, tol) + "\n";
      emit(text);
    } else {
      json rows = json::array();
      for (const auto& s : samples) {
        rows.push_back({{"point", to_json(s.point)},
                        {"lambda", s.lambda},
                        {"in_hull", in_hull(s.point, sc.params, sc.kind, tol)},
                        {"g1", eval_g1(s.point)},
                        {"g2", eval_g2(s.point, sc.params)},
                        {"g3", eval_g3(s.point)}});
      }
      json j = {{"seed", sc.seed}, {"kind", std::string(to_string(sc.kind))}, {"params", to_json(sc.params)},
                {"samples", rows}};
      stamp(j);
      emit(j);
    }
    return kExitOk;
  }

  // A random direction in the cone of the configured kind, drawn from the seed.
  Triple random_cone_direction() const {
    SampleStream rng(cfg_.seed, 0);
    Triple dir{rng.unit_vector(), rng.unit_vector(), rng.unit_vector()};
    dir.E -= dot(dir.E, dir.B) * dir.B;
    if (has_velocity_constraint(cfg_.kind)) dir.E = rng.uniform(-2.0, 2.0) * cross(dir.B, dir.u);
    return dir;
  }

  int residual() {
    if (cfg_.grid_n < 8 || cfg_.grid_n % 4 != 0) throw UsageError("--n must be a multiple of 4 and at least 8");
    const Triple dir = cfg_.residual_direction_given ? read_triple() : random_cone_direction();
    const WaveVector xi = wave_vector_for(dir, cfg_.kind, tolerances());
    const int sizes[] = {cfg_.grid_n / 2, cfg_.grid_n};
    const ConvergenceReport conv = residual_convergence(dir, xi, cfg_.kind, sizes);
    const bool ok = conv.converges(3.0);

    if (cfg_.format == Format::Csv) {
      std::string text = "n,h,gauss,faraday,incompressibility\n";
      for (const auto& l : conv.levels) {
        text += std::to_string(l.grid.n) + "," + format_double(l.grid.h) + "," + format_double(l.gauss) + "," +
                format_double(l.faraday) + "," + format_double(l.incompressibility) + "\n";
      }
      emit(text);
    } else {
      json j = to_json(conv);
      j["direction"] = to_json(dir);
      j["xi"] = to_json(xi);
      j["kind"] = std::string(to_string(cfg_.kind));
      j["seed"] = cfg_.seed;
      j["min_ratio"] = 3.0;
      j["converged"] = ok;
      stamp(j);
      emit(j);
    }
    return ok ? kExitOk : kExitFailure;
  }

  const RunConfig& cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_common_options(CLI::App* sub, RunConfig& cfg, std::string& kind, std::string& format) {
  sub->add_option("--r", cfg.r, "magnetic radius r > 0")->check(CLI::PositiveNumber);
  sub->add_option("--s", cfg.s, "velocity radius s > 0")->check(CLI::PositiveNumber);
  sub->add_option("--kind", kind, "wave cone kind")
      ->check(CLI::IsMember({"nonstationary", "nonstationary-incompressible", "stationary",
                             "stationary-incompressible"}));
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--count", cfg.count, "number of samples");
  sub->add_option("--tol", cfg.tol, "membership / residual tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--output", cfg.output, "output path (default stdout)");
  sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--deterministic", cfg.deterministic, "suppress timestamps for byte-identical reports");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string kind = "nonstationary";
  std::string format = "json";

  CLI::App app{"Relaxation hull of the kinematic dynamo constraint set"};
  app.require_subcommand(1);
  auto* verify = app.add_subcommand("verify-hull", "two-sided hull check campaign");
  auto* decomp = app.add_subcommand("decompose", "split a hull point into a first-laminate pair");
  auto* cone = app.add_subcommand("wavecone", "wave cone membership of a direction");
  auto* samp = app.add_subcommand("sample", "emit first-laminate samples");
  auto* resid = app.add_subcommand("residual", "plane-wave residual convergence table");
  for (auto* sub : {verify, decomp, cone, samp, resid}) add_common_options(sub, cfg, kind, format);
  for (auto* sub : {decomp, cone, resid}) {
    sub->add_option("--input", cfg.input, "Triple JSON file ('-' for stdin)");
  }
  resid->add_option("--n", cfg.grid_n, "finest grid size (also runs n/2)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (verify->parsed()) cfg.command = Command::VerifyHull;
  if (decomp->parsed()) cfg.command = Command::Decompose;
  if (cone->parsed()) cfg.command = Command::WaveCone;
  if (samp->parsed()) cfg.command = Command::Sample;
  if (resid->parsed()) {
    cfg.command = Command::Residual;
    cfg.residual_direction_given = resid->count("--input") > 0;
  }
  cfg.kind = *parse_cone_kind(kind);
  cfg.format = format == "csv" ? Format::Csv : Format::Json;

  try {
    return Runner(cfg, in, out, err).run();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DynamoError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitFailure;
  }
}

}  // namespace dynamo::cli
