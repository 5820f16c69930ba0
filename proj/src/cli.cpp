#include "gowerk/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gowerk/euclidesation.hpp"
#include "gowerk/kkmeans.hpp"
#include "gowerk/matrix_io.hpp"
#include "gowerk/repro.hpp"
#include "gowerk/transforms.hpp"

namespace gowerk::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string output;
  std::string format;
  double eps_psd = kEpsPsd;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--output", c.output, "Output file path");
  cmd.add_option("--format", c.format, "Output matrix format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--eps-psd", c.eps_psd, "Relative tolerance for zero eigenvalues")
      ->check(CLI::NonNegativeNumber);
}

json matrix_json(const Matrix& m) { return json::parse(io::format_json(m)); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Writes `m` to the requested output, or embeds it in the report under
// `key` when no output path was given.
void emit_matrix(const Common& c, const Matrix& m, json& report, const char* key) {
  if (c.output.empty()) {
    report[key] = matrix_json(m);
    report["output"] = nullptr;
    return;
  }
  const io::MatrixFormat fmt =
      c.format.empty() ? io::format_for_path(c.output) : io::parse_format(c.format);
  io::write_matrix(c.output, m, fmt);
  report["output"] = c.output;
}

Matrix load_nonempty(const std::string& path) {
  Matrix m = io::read_matrix(path);
  if (m.size() == 0) throw Error(ErrorCode::ParseError, path + " holds an empty matrix");
  return m;
}

DissimilarityMatrix load_dissimilarity(const std::string& path) {
  return validate_dissimilarity(SquareMatrix::from(load_nonempty(path)));
}

KernelMatrix load_kernel(const std::string& path) {
  return KernelMatrix::from(load_nonempty(path));
}

// Exactly one of --kernel / --input; distances go through the centered
// transform.
KernelMatrix kernel_from(const std::string& kernel_path, const std::string& input_path) {
  if (!kernel_path.empty() && !input_path.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give either --kernel or --input, not both");
  }
  if (!kernel_path.empty()) return load_kernel(kernel_path);
  if (!input_path.empty()) return centered_transform(load_dissimilarity(input_path));
  throw Error(ErrorCode::InvalidArgument, "one of --kernel or --input is required");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveSemidefinite: return kExitNotPsd;
    case ErrorCode::InvalidK:
    case ErrorCode::KTooLarge: return kExitBadK;
    case ErrorCode::ConvergenceFailure: return kExitInternal;
    default: return kExitValidation;
  }
}

}  // namespace

unsigned threads_from_env() {
  const char* raw = std::getenv("GOWERK_THREADS");
  if (raw == nullptr) return 0;
  try {
    const long v = std::stol(raw);
    return v > 0 ? static_cast<unsigned>(v) : 0u;
  } catch (const std::exception&) {
    return 0;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-to-kernel transforms, Euclidean repair and kernel k-means", "gowerk"};
  app.require_subcommand(1);

  // transform
  Common transform_common;
  std::string transform_input;
  std::string transform_s;
  auto* transform = app.add_subcommand("transform", "Distance matrix -> kernel matrix");
  transform->add_option("--input", transform_input, "Dissimilarity matrix")->required();
  transform->add_option("--s", transform_s, "Projection vector (default 1/m)");
  add_common(*transform, transform_common);

  // embed
  Common embed_common;
  std::string embed_kernel;
  std::string embed_input;
  auto* embed_cmd = app.add_subcommand("embed", "Kernel matrix -> coordinates");
  embed_cmd->add_option("--kernel", embed_kernel, "Kernel matrix");
  embed_cmd->add_option("--input", embed_input, "Dissimilarity matrix (centered first)");
  add_common(*embed_cmd, embed_common);

  // check
  Common check_common;
  std::string check_input;
  std::string check_embedding;
  bool check_roundtrip = false;
  double check_tol = 1e-6;
  auto* check = app.add_subcommand("check", "Euclidean / metric diagnostics");
  check->add_option("--input", check_input, "Dissimilarity matrix")->required();
  check->add_option("--embedding", check_embedding, "Coordinates to compare against");
  check->add_flag("--roundtrip", check_roundtrip,
                  "Compare row distances of --embedding with --input");
  check->add_option("--tol", check_tol, "Round-trip max abs tolerance")
      ->check(CLI::NonNegativeNumber);
  add_common(*check, check_common);

  // euclidise
  Common euclidise_common;
  std::string euclidise_input;
  std::string euclidise_mode = "corrected";
  auto* euclidise_cmd = app.add_subcommand("euclidise", "Repair a non-Euclidean matrix");
  euclidise_cmd->add_option("--input", euclidise_input, "Dissimilarity matrix")->required();
  euclidise_cmd->add_option("--mode", euclidise_mode, "corrected | original-gower")
      ->check(CLI::IsMember({"corrected", "original-gower"}));
  add_common(*euclidise_cmd, euclidise_common);

  // cluster
  Common cluster_common;
  std::string cluster_kernel;
  std::string cluster_input;
  LloydOptions lloyd_opts;
  std::string cluster_init = "kmeans++";
  auto* cluster = app.add_subcommand("cluster", "Kernel k-means");
  cluster->add_option("--kernel", cluster_kernel, "Kernel matrix");
  cluster->add_option("--input", cluster_input, "Dissimilarity matrix (centered first)");
  cluster->add_option("--k", lloyd_opts.k, "Number of clusters")->required();
  cluster->add_option("--restarts", lloyd_opts.restarts, "Independent restarts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cluster->add_option("--seed", lloyd_opts.seed, "Random seed")->capture_default_str();
  cluster->add_option("--max-iter", lloyd_opts.max_iter, "Iteration cap per restart")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cluster->add_option("--init", cluster_init, "kmeans++ | random")
      ->check(CLI::IsMember({"kmeans++", "random"}));
  add_common(*cluster, cluster_common);

  // paper-repro
  repro::Options repro_opts;
  std::vector<std::string> repro_only;
  auto* repro_cmd =
      app.add_subcommand("paper-repro", "Re-run the worked examples and property suites");
  repro_cmd->add_option("--only", repro_only, "section5 | section6 | properties")
      ->check(CLI::IsMember({repro::kSection5, repro::kSection6, repro::kProperties}));
  repro_cmd->add_option("--tol", repro_opts.print_tol,
                        "Tolerance against published one-decimal matrices")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  repro_cmd->add_option("--eps-psd", repro_opts.eps_psd, "Relative zero-eigenvalue tolerance")
      ->check(CLI::NonNegativeNumber);
  repro_cmd->add_option("--seed", repro_opts.seed, "Seed for randomized suites");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return kExitValidation;
  }

  const unsigned threads = threads_from_env();

  try {
    json report;
    int code = kExitOk;

    if (*transform) {
      const DissimilarityMatrix d = load_dissimilarity(transform_input);
      const SVector s = transform_s.empty() ? SVector::uniform(d.size())
                                            : SVector::from(io::read_vector(transform_s));
      const KernelMatrix f = gower_transform(d, s);
      const EigenDecomposition eig = sym_eigen(f);
      const double lmin = eig.eigenvalues(eig.eigenvalues.size() - 1);
      const bool euclidean = lmin >= -transform_common.eps_psd * spectral_scale(eig.eigenvalues);
      report = {{"command", "transform"},
                {"m", d.size()},
                {"s", transform_s.empty() ? json("uniform") : json(transform_s)},
                {"lambda_min", lmin},
                {"lambda_max", eig.eigenvalues(0)},
                {"euclidean", euclidean},
                {"verdict", euclidean ? "euclidean" : "non-euclidean"}};
      emit_matrix(transform_common, f.values(), report, "kernel");
    } else if (*embed_cmd) {
      const KernelMatrix f = kernel_from(embed_kernel, embed_input);
      const Embedding y = embed(f, embed_common.eps_psd);
      report = {{"command", "embed"},
                {"m", f.size()},
                {"rank", y.rank()},
                {"retained_eigenvalues", vector_json(y.retained_eigenvalues)}};
      emit_matrix(embed_common, y.points, report, "points");
    } else if (*check) {
      if (check_roundtrip && check_embedding.empty()) {
        throw Error(ErrorCode::InvalidArgument, "--roundtrip needs --embedding");
      }
      const DissimilarityMatrix d = load_dissimilarity(check_input);
      const EuclideanVerdict v = is_euclidean(d, check_common.eps_psd);
      report = {{"command", "check"},
                {"m", d.size()},
                {"euclidean", v.euclidean},
                {"lambda_min", v.lambda_min},
                {"lambda_max", v.lambda_max},
                {"sigma", std::max(0.0, -v.lambda_min)},
                {"metric_constant", metric_constant(d)},
                {"max_triangle_violation", max_triangle_violation(d)}};
      if (!check_embedding.empty()) {
        const Matrix y = io::read_matrix(check_embedding);
        if (y.rows() != d.size()) {
          throw Error(ErrorCode::DimensionMismatch,
                      "embedding has " + std::to_string(y.rows()) + " rows, matrix has " +
                          std::to_string(d.size()));
        }
        const Matrix diff = row_distances(y).values() - d.values();
        const double max_abs = diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
        const bool ok = max_abs <= check_tol;
        report["roundtrip"] = {{"max_abs_diff", max_abs},
                               {"sum_sq_diff", diff.squaredNorm()},
                               {"tolerance", check_tol},
                               {"ok", ok}};
        if (!ok) code = kExitReproFailure;
      }
    } else if (*euclidise_cmd) {
      const DissimilarityMatrix d = load_dissimilarity(euclidise_input);
      const EuclidesationReport r = euclidise(d, parse_shift_mode(euclidise_mode), euclidise_common.eps_psd);
      report = {{"command", "euclidise"},
                {"mode", std::string(to_string(r.mode))},
                {"sigma", r.sigma},
                {"pre_lambda_min", r.pre_lambda_min},
                {"post_lambda_min", r.post_lambda_min},
                {"euclidean_after",
                 r.post_lambda_min >= -euclidise_common.eps_psd * r.post_spectral_scale}};
      emit_matrix(euclidise_common, r.repaired.values(), report, "repaired");
    } else if (*cluster) {
      const KernelMatrix f = kernel_from(cluster_kernel, cluster_input);
      lloyd_opts.init = parse_init_method(cluster_init);
      lloyd_opts.threads = threads;
      const Clustering c = lloyd(f, lloyd_opts);
      report = {{"assignments", c.assignments}, {"k", c.k},
                {"cost", c.cost},               {"iterations", c.iterations},
                {"restarts_used", c.restarts_used}, {"seed", c.seed}};
      if (!cluster_common.output.empty()) {
        io::write_text_atomically(cluster_common.output, report.dump(2) + "\n");
      }
    } else if (*repro_cmd) {
      repro_opts.only = {repro_only.begin(), repro_only.end()};
      repro_opts.threads = threads;
      const auto checks = repro::run(repro_opts);
      json list = json::array();
      int passed = 0;
      for (const auto& c : checks) {
        passed += c.pass ? 1 : 0;
        list.push_back({{"id", c.id},
                        {"section", c.section},
                        {"status", c.pass ? "PASS" : "FAIL"},
                        {"detail", c.detail}});
        err << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
      }
      const bool ok = repro::all_pass(checks);
      report = {{"command", "paper-repro"},
                {"checks", std::move(list)},
                {"passed", passed},
                {"failed", static_cast<int>(checks.size()) - passed},
                {"all_pass", ok}};
      if (!ok) code = kExitReproFailure;
    }

    out << report.dump(2) << "\n";
    return code;
  } catch (const NotPositiveSemidefiniteError& e) {
    err << json{{"error", std::string(to_string(e.code()))},
                {"message", e.what()},
                {"eigenvalue", e.eigenvalue()}}
               .dump()
        << "\n";
    return kExitNotPsd;
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
        << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kExitInternal;
  }
}

}  // namespace gowerk::cli
