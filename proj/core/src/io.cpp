#include "rolextract/io.hpp"

#include "rolextract/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace rolextract {

using nlohmann::json;

namespace {

// Rounds to what "%.9g" shows, so JSON dumps the same digits as the text files.
double round9(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_real(value));
}

std::vector<double> round9(const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(round9(v));
  return out;
}

std::vector<double> flatten(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long long parse_id(const std::string& token, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0)
    throw ParseError("invalid node id '" + token + "'", line);
  return value;
}

double parse_weight(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid weight '" + token + "'", line);
  }
  if (used != token.size() || !std::isfinite(value)) throw ParseError("invalid weight '" + token + "'", line);
  return value;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

Adjacency read_edge_list(std::istream& in) {
  constexpr long long kMaxNodes = 1 << 16;
  std::map<std::pair<long long, long long>, double> edges;
  long long declared = -1;
  long long max_id = -1;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::istringstream header(text.substr(1));
      std::string key;
      std::string value;
      if (header >> key >> value && key == "nodes:") {
        declared = parse_id(value, line);
        if (declared > kMaxNodes) throw ParseError("node count too large", line);
      }
      continue;
    }
    std::istringstream fields(text);
    std::vector<std::string> tokens;
    for (std::string token; fields >> token;) tokens.push_back(token);
    if (tokens.size() < 2 || tokens.size() > 3) throw ParseError("expected 'src dst [weight]'", line);
    const long long src = parse_id(tokens[0], line);
    const long long dst = parse_id(tokens[1], line);
    if (src >= kMaxNodes || dst >= kMaxNodes) throw ParseError("node id too large", line);
    const double weight = tokens.size() == 3 ? parse_weight(tokens[2], line) : 1.0;
    if (!edges.emplace(std::pair{src, dst}, weight).second)
      throw ParseError("duplicate edge " + tokens[0] + " -> " + tokens[1], line);
    max_id = std::max({max_id, src, dst});
  }
  if (edges.empty()) throw ParseError("edge list contains no edges", 0);
  if (declared >= 0 && max_id >= declared)
    throw ParseError("node id " + std::to_string(max_id) + " exceeds declared node count", 0);
  const Eigen::Index n = declared >= 0 ? declared : max_id + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, weight] : edges) m(key.first, key.second) = weight;
  return Adjacency::infer(std::move(m));
}

Adjacency read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Adjacency& a) {
  out << "# nodes: " << a.size() << '\n';
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      if (a(i, j) != 0.0) out << i << '\t' << j << '\t' << format_real(a(i, j)) << '\n';
    }
  }
}

void write_edge_list_file(const std::string& path, const Adjacency& a) {
  auto out = open_output(path);
  write_edge_list(out, a);
}

std::string ground_truth_json(const RoleMatrix& roles, const Assignment& assignment,
                              const std::optional<PerturbationModel>& perturbation) {
  json doc;
  doc["n"] = assignment.num_nodes();
  doc["q"] = roles.size();
  doc["B"] = flatten(roles.matrix());
  doc["sigma"] = assignment.labels();
  if (assignment.is_signed()) doc["signs"] = assignment.signs();
  if (perturbation) {
    doc["perturbation"] = {{"p_in", round9(perturbation->p_in)},
                           {"p_out", round9(perturbation->p_out)},
                           {"seed", perturbation->seed}};
  }
  return doc.dump(2) + "\n";
}

GroundTruth parse_ground_truth(const std::string& text) {
  try {
    const json doc = json::parse(text);
    const int n = doc.at("n").get<int>();
    const int q = doc.at("q").get<int>();
    const auto flat = doc.at("B").get<std::vector<double>>();
    auto labels = doc.at("sigma").get<std::vector<int>>();
    std::vector<int> signs;
    if (doc.contains("signs")) signs = doc.at("signs").get<std::vector<int>>();
    if (n < 0 || q < 0 || static_cast<int>(labels.size()) != n ||
        flat.size() != static_cast<std::size_t>(q) * static_cast<std::size_t>(q))
      throw ParseError("ground truth dimensions are inconsistent", 0);
    Eigen::MatrixXd b(q, q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) b(i, j) = flat[static_cast<std::size_t>(i * q + j)];
    GroundTruth truth;
    truth.roles = RoleMatrix(std::move(b));
    truth.assignment = Assignment(std::move(labels), q, std::move(signs));
    truth.adjacency = Adjacency::infer(ideal_matrix(truth.roles, truth.assignment));
    return truth;
  } catch (const json::exception& e) {
    throw ParseError(std::string("ground truth: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("ground truth: ") + e.what(), 0);
  }
}

std::string extraction_json(const ExtractionResult& result) {
  json doc;
  doc["q"] = result.q_est;
  doc["sigma"] = result.assignment.labels();
  doc["B"] = flatten(result.roles.matrix());
  doc["residual"] = round9(result.residual);
  doc["unassigned"] = result.unassigned;
  doc["params"] = {
      {"beta2", round9(result.beta2)},
      {"steps", result.steps},
      {"fixed_point", result.fixed_point},
      {"factor_rank", result.factor_rank},
      {"method", std::string(to_string(result.method_used))},
      {"checkerboard", result.checkerboard},
  };
  if (result.assignment.is_signed()) doc["signs"] = result.assignment.signs();
  return doc.dump(2) + "\n";
}

std::string spectrum_csv(const SpectrumReport& report) {
  std::string out = "index,sigma_A,sigma_S_half,sigma_S\n";
  for (std::size_t i = 0; i < report.sigma_A.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_real(report.sigma_A[i]) + "," +
           format_real(report.sigma_S_half[i]) + "," + format_real(report.sigma_S[i]) + "\n";
  }
  return out;
}

std::string spectrum_json(const SpectrumReport& report) {
  json doc;
  doc["sigma_A"] = round9(report.sigma_A);
  doc["sigma_S_half"] = round9(report.sigma_S_half);
  doc["sigma_S"] = round9(report.sigma_S);
  doc["gap_index"] = report.gap_index;
  doc["beta2"] = round9(report.beta2);
  doc["depth"] = report.depth;
  doc["fixed_point"] = report.fixed_point;
  return doc.dump(2) + "\n";
}

std::string spectrum_svg(const SpectrumReport& report) {
  constexpr double kPanelW = 260.0;
  constexpr double kPanelH = 200.0;
  constexpr double kMargin = 50.0;
  const std::pair<const char*, const std::vector<double>*> panels[] = {
      {"sigma(A)", &report.sigma_A},
      {"sigma(S^1/2)", &report.sigma_S_half},
      {"sigma(S)", &report.sigma_S},
  };
  const double width = 3 * (kPanelW + kMargin) + kMargin;
  const double height = kPanelH + 2 * kMargin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < 3; ++p) {
    const auto& values = *panels[p].second;
    const double x0 = kMargin + static_cast<double>(p) * (kPanelW + kMargin);
    const double y0 = kMargin;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double v : values) {
      if (v > 0.0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (hi == 0.0) {
      lo = 0.1;
      hi = 1.0;
    }
    const double log_lo = std::floor(std::log10(lo));
    const double log_hi = std::max(log_lo + 1.0, std::ceil(std::log10(hi)));
    const auto count = static_cast<double>(std::max<std::size_t>(values.size(), 1));
    auto px = [&](std::size_t i) { return x0 + (static_cast<double>(i) + 0.5) / count * kPanelW; };
    auto py = [&](double v) { return y0 + kPanelH * (log_hi - std::log10(v)) / (log_hi - log_lo); };

    svg << "<g>\n<text x=\"" << x0 + kPanelW / 2 << "\" y=\"" << y0 - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << panels[p].first << "</text>\n"
        << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << kPanelW << "\" height=\"" << kPanelH
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double e = log_lo; e <= log_hi; e += 1.0) {
      const double y = y0 + kPanelH * (log_hi - e) / (log_hi - log_lo);
      svg << "<line x1=\"" << x0 - 4 << "\" y1=\"" << y << "\" x2=\"" << x0 << "\" y2=\"" << y
          << "\" stroke=\"black\"/>\n<text x=\"" << x0 - 6 << "\" y=\"" << y + 4
          << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      svg << "<text x=\"" << px(i) << "\" y=\"" << y0 + kPanelH + 14 << "\" text-anchor=\"middle\">" << i + 1
          << "</text>\n";
      // Zero values have no place on a log axis.
      if (values[i] <= 0.0) continue;
      svg << "<circle cx=\"" << px(i) << "\" cy=\"" << py(values[i]) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rolextract
