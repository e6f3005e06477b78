#include "cli.hpp"

#include "CLI11.hpp"

#include <rolextract/errors.hpp>
#include <rolextract/extract.hpp>
#include <rolextract/generators.hpp>
#include <rolextract/io.hpp>
#include <rolextract/rng.hpp>
#include <rolextract/similarity.hpp>
#include <rolextract/spectra.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace rolextract::cli {

namespace {

// Raised for flag combinations that parse but cannot be honoured.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<double> resolve_beta2(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("--beta2 must be a number or 'auto', got '" + text + "'");
  }
  if (used != text.size() || !(value > 0.0) || !std::isfinite(value))
    throw ConfigError("--beta2 must be a positive number or 'auto', got '" + text + "'");
  return value;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot open " + path + " for writing");
  file << text;
}

struct Depth {
  int k = 6;
  bool fixed_point = false;
};

void add_depth(CLI::App& cmd, Depth& depth, const char* k_help) {
  auto* k = cmd.add_option("--k", depth.k, k_help)->check(CLI::PositiveNumber);
  cmd.add_flag("--fixed-point", depth.fixed_point, "Iterate to the fixed point instead of k steps")->excludes(k);
}

struct GenerateConfig {
  std::string kind;
  std::vector<int> sizes;
  std::uint64_t seed = 0;
  bool shuffle = false;
  double p_in = 0.0;
  double p_out = 0.0;
  std::string out;
  std::string truth;
};

int cmd_generate(const GenerateConfig& cfg, std::ostream& out) {
  const auto kind = parse_structure_kind(cfg.kind);
  if (!kind) throw ConfigError("unknown --kind '" + cfg.kind + "'");
  StructureParams params;
  params.sizes = cfg.sizes;
  if (cfg.shuffle) {
    int n = 0;
    if (params.sizes.empty() && *kind == StructureKind::SignedExample) params.sizes = {2, 1, 3};
    for (int s : params.sizes) n += s;
    params.perm = random_permutation(n, cfg.seed);
  }
  GroundTruth truth;
  try {
    truth = generate_structure(*kind, params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  Adjacency graph = truth.adjacency;
  const bool perturbed = cfg.p_in > 0.0 || cfg.p_out > 0.0;
  const std::uint64_t flip_seed = CounterRng(cfg.seed).substream(1).seed();
  if (perturbed) {
    if (graph.kind() != GraphKind::Unweighted) throw ConfigError("only unsigned structures can be perturbed");
    graph = perturb(graph, {cfg.p_in, cfg.p_out, flip_seed});
  }

  std::ostringstream edges;
  write_edge_list(edges, graph);
  emit(cfg.out, edges.str(), out);

  if (!cfg.truth.empty()) {
    std::optional<PerturbationModel> model;
    if (perturbed) model = PerturbationModel{cfg.p_in, cfg.p_out, flip_seed};
    emit(cfg.truth, ground_truth_json(truth.roles, truth.assignment, model), out);
  }
  return kOk;
}

struct ExtractConfig {
  std::string input;
  std::string beta2 = "auto";
  Depth depth;
  double trunc_tol = 1e-10;
  double angle_tol = 1e-6;
  double gap_ratio = 0.5;
  std::uint64_t seed = 0;
  std::string method = "auto";
  int max_roles = 32;
  std::string out;
};

int cmd_extract(const ExtractConfig& cfg, std::ostream& out) {
  ExtractOptions options;
  options.beta2 = resolve_beta2(cfg.beta2);
  options.steps = cfg.depth.fixed_point ? std::nullopt : std::optional<int>(cfg.depth.k);
  options.trunc_tol = cfg.trunc_tol;
  options.angle_tol = cfg.angle_tol;
  options.gap_ratio = cfg.gap_ratio;
  options.seed = cfg.seed;
  options.max_roles = cfg.max_roles;
  if (cfg.method == "auto") {
    options.method = ClusterMethod::Auto;
  } else if (cfg.method == "angular") {
    options.method = ClusterMethod::Angular;
  } else if (cfg.method == "kmeans") {
    options.method = ClusterMethod::SphericalKMeans;
  } else {
    throw ConfigError("unknown --method '" + cfg.method + "'");
  }
  const Adjacency a = read_edge_list_file(cfg.input);
  emit(cfg.out, extraction_json(extract_roles(a, options)), out);
  return kOk;
}

struct SpectrumConfig {
  std::string input;
  std::string beta2 = "auto";
  std::optional<int> k;
  int top = 10;
  double gap_ratio = 0.5;
  double trunc_tol = 1e-10;
  std::string out;
  std::string json;
  std::string svg;
};

int cmd_spectrum(const SpectrumConfig& cfg, std::ostream& out) {
  SpectrumOptions options;
  options.beta2 = resolve_beta2(cfg.beta2);
  options.steps = cfg.k;
  options.top_m = cfg.top;
  options.gap_ratio = cfg.gap_ratio;
  options.trunc_tol = cfg.trunc_tol;
  const Adjacency a = read_edge_list_file(cfg.input);
  const SpectrumReport report = spectrum_report(a, options);
  emit(cfg.out, spectrum_csv(report), out);
  if (!cfg.json.empty()) emit(cfg.json, spectrum_json(report), out);
  if (!cfg.svg.empty()) emit(cfg.svg, spectrum_svg(report), out);
  return kOk;
}

struct SimilarityConfig {
  std::string input;
  std::string beta2 = "auto";
  Depth depth;
  std::string out;
};

int cmd_similarity(const SimilarityConfig& cfg, std::ostream& out) {
  const Adjacency a = read_edge_list_file(cfg.input);
  const auto beta2 = resolve_beta2(cfg.beta2);
  const double b2 = beta2 ? *beta2 : default_beta2(a);
  const SimilarityState s = cfg.depth.fixed_point ? fixed_point(a, b2) : iterate(a, b2, cfg.depth.k);
  std::string text;
  for (Eigen::Index i = 0; i < s.S.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.S.cols(); ++j) {
      if (j > 0) text += '\t';
      text += format_real(s.S(i, j));
    }
    text += '\n';
  }
  emit(cfg.out, text, out);
  return kOk;
}

int cmd_betabound(const std::string& input, std::ostream& out) {
  const Adjacency a = read_edge_list_file(input);
  const double rho = beta_bound(a);
  out << "rho\t" << format_real(rho) << "\nbeta2_max\t" << format_real(1.0 / rho) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Role extraction from directed graphs via neighborhood pattern similarity", "rolextract"};
  app.require_subcommand(1);

  GenerateConfig gen;
  auto* generate = app.add_subcommand("generate", "Write an ideal (optionally perturbed) structure");
  generate->add_option("--kind", gen.kind,
                       "community | overlapping | bipartite_communities | block_cycle | signed_example")
      ->required();
  generate->add_option("--sizes", gen.sizes, "Role sizes, comma separated")->delimiter(',');
  generate->add_option("--seed", gen.seed, "Seed for --shuffle and perturbation");
  generate->add_flag("--shuffle", gen.shuffle, "Randomly permute node ids");
  generate->add_option("--p-in", gen.p_in, "Probability an edge is removed")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--p-out", gen.p_out, "Probability a missing edge is added")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--out", gen.out, "Edge list path (default stdout)");
  generate->add_option("--truth", gen.truth, "Ground-truth JSON path");

  ExtractConfig ext;
  auto* extract = app.add_subcommand("extract", "Recover roles and the role matrix; prints JSON");
  extract->add_option("input", ext.input, "Edge list")->required();
  extract->add_option("--beta2", ext.beta2, "beta^2 or 'auto' (0.81 / rho)");
  add_depth(*extract, ext.depth, "Recurrence steps (default 6)");
  extract->add_option("--trunc-tol", ext.trunc_tol, "Relative truncation of the factor")->check(CLI::NonNegativeNumber);
  extract->add_option("--angle-tol", ext.angle_tol, "Angular grouping tolerance (radians)")
      ->check(CLI::NonNegativeNumber);
  extract->add_option("--gap-ratio", ext.gap_ratio, "Gap threshold for the role count")->check(CLI::Range(0.0, 1.0));
  extract->add_option("--seed", ext.seed, "k-means seed");
  extract->add_option("--method", ext.method, "auto | angular | kmeans");
  extract->add_option("--max-roles", ext.max_roles, "Largest role count considered")->check(CLI::PositiveNumber);
  extract->add_option("--out", ext.out, "Output path (default stdout)");

  SpectrumConfig spec;
  auto* spectrum = app.add_subcommand("spectrum", "Singular values of A, S^1/2 and S as CSV");
  spectrum->add_option("input", spec.input, "Edge list")->required();
  spectrum->add_option("--beta2", spec.beta2, "beta^2 or 'auto' (0.81 / rho)");
  auto* spec_k = spectrum->add_option("--k", spec.k, "Recurrence steps (default: fixed point)")
                     ->check(CLI::PositiveNumber);
  bool spec_fixed = false;
  spectrum->add_flag("--fixed-point", spec_fixed, "Iterate to the fixed point (default)")->excludes(spec_k);
  spectrum->add_option("--top", spec.top, "Number of singular values")->check(CLI::PositiveNumber);
  spectrum->add_option("--gap-ratio", spec.gap_ratio, "Gap threshold for gap_index")->check(CLI::Range(0.0, 1.0));
  spectrum->add_option("--trunc-tol", spec.trunc_tol, "Relative truncation of the factor")
      ->check(CLI::NonNegativeNumber);
  spectrum->add_option("--out", spec.out, "CSV path (default stdout)");
  spectrum->add_option("--json", spec.json, "JSON summary path");
  spectrum->add_option("--svg", spec.svg, "SVG plot path");

  SimilarityConfig sim;
  auto* similarity = app.add_subcommand("similarity", "Dense similarity matrix S as TSV");
  similarity->add_option("input", sim.input, "Edge list")->required();
  similarity->add_option("--beta2", sim.beta2, "beta^2 or 'auto' (0.81 / rho)");
  add_depth(*similarity, sim.depth, "Recurrence steps (default 6)");
  similarity->add_option("--out", sim.out, "Output path (default stdout)");

  std::string bound_input;
  auto* betabound = app.add_subcommand("betabound", "Spectral radius rho and the admissible beta^2 bound 1/rho");
  betabound->add_option("input", bound_input, "Edge list")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*extract) return cmd_extract(ext, out);
    if (*spectrum) return cmd_spectrum(spec, out);
    if (*similarity) return cmd_similarity(sim, out);
    if (*betabound) return cmd_betabound(bound_input, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const InadmissibleBeta& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (" << e.iterations() << " iterations)\n";
    return kNotConverged;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInvalidConfig;
}

}  // namespace rolextract::cli
