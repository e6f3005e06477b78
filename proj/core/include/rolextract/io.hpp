#pragma once

#include "rolextract/extract.hpp"
#include "rolextract/generators.hpp"
#include "rolextract/graph.hpp"
#include "rolextract/spectra.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace rolextract {

/// Text with nine significant digits ("%.9g"), the precision of every file we write.
std::string format_real(double value);

/// Edge list: one "src dst [weight]" line per edge with 0-based ids separated
/// by tabs or spaces; a missing weight means 1. Lines starting with '#' are
/// comments, except "# nodes: N", which fixes the node count so isolated
/// trailing nodes survive a round trip. Without it n is the largest id + 1.
/// Duplicate edges, bad numbers and files without edges raise ParseError.
/// The graph kind is inferred from the weights.
Adjacency read_edge_list(std::istream& in);
Adjacency read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Adjacency& a);
void write_edge_list_file(const std::string& path, const Adjacency& a);

/// {"n", "q", "B" (row-major), "sigma" (0-based labels, -1 unassigned), "signs"?,
/// "perturbation"?}. The perturbation entry records the flips applied to the
/// written graph; the rest describes the ideal structure.
std::string ground_truth_json(const RoleMatrix& roles, const Assignment& assignment,
                              const std::optional<PerturbationModel>& perturbation = std::nullopt);
/// Parses the document above; throws ParseError on schema violations.
GroundTruth parse_ground_truth(const std::string& text);

/// {"q", "sigma", "B", "residual", "unassigned", "params", "signs"?}
std::string extraction_json(const ExtractionResult& result);

/// Header "index,sigma_A,sigma_S_half,sigma_S" then one 1-based row per value.
std::string spectrum_csv(const SpectrumReport& report);
std::string spectrum_json(const SpectrumReport& report);
/// Three log-scale scatter panels (A, S^{1/2}, S) as an SVG 1.1 document.
std::string spectrum_svg(const SpectrumReport& report);

}  // namespace rolextract
