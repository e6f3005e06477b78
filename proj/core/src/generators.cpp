#include "rolextract/generators.hpp"

#include "rolextract/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace rolextract {

std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  CounterRng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[j]);
  }
  return p;
}

std::string_view to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::Community: return "community";
    case StructureKind::Overlapping: return "overlapping";
    case StructureKind::BipartiteCommunities: return "bipartite_communities";
    case StructureKind::BlockCycle: return "block_cycle";
    case StructureKind::SignedExample: return "signed_example";
  }
  return "unknown";
}

std::optional<StructureKind> parse_structure_kind(std::string_view name) {
  for (auto kind : {StructureKind::Community, StructureKind::Overlapping,
                    StructureKind::BipartiteCommunities, StructureKind::BlockCycle,
                    StructureKind::SignedExample}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

RoleMatrix structure_role_matrix(StructureKind kind, int q) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  switch (kind) {
    case StructureKind::Community:
      if (q < 1) throw std::invalid_argument("community structure needs at least one role");
      b.setIdentity();
      break;
    case StructureKind::Overlapping:
      // q - 1 communities that all overlap through the last role.
      if (q < 3) throw std::invalid_argument("overlapping structure needs at least three roles");
      b.setIdentity();
      b.col(q - 1).setOnes();
      b.row(q - 1).setOnes();
      break;
    case StructureKind::BipartiteCommunities: {
      if (q < 2 || q % 2 != 0)
        throw std::invalid_argument("bipartite communities need an even, positive role count");
      const int h = q / 2;
      b.topRightCorner(h, h).setIdentity();
      b.bottomLeftCorner(h, h).setIdentity();
      break;
    }
    case StructureKind::BlockCycle:
      if (q < 2) throw std::invalid_argument("block cycle needs at least two roles");
      for (int i = 0; i < q; ++i) b(i, (i + 1) % q) = 1.0;
      break;
    case StructureKind::SignedExample:
      if (q != 3) throw std::invalid_argument("signed example has exactly three roles");
      for (int i = 0; i < q; ++i) b(i, (i + 1) % q) = 1.0;
      break;
  }
  return RoleMatrix(std::move(b));
}

namespace {

// Generalizes the sign layout (+,-), (-), (+,-,-) of the 6-node example: the
// first and last roles lead with +1, everything else is -1.
std::vector<int> default_signs(const std::vector<int>& sizes) {
  std::vector<int> signs;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    for (int j = 0; j < sizes[r]; ++j) signs.push_back(r != 1 && j == 0 ? 1 : -1);
  }
  return signs;
}

}  // namespace

GroundTruth generate_structure(StructureKind kind, const StructureParams& params) {
  std::vector<int> sizes = params.sizes;
  if (kind == StructureKind::SignedExample && sizes.empty()) sizes = {2, 1, 3};
  if (sizes.empty()) throw std::invalid_argument("structure needs role sizes");
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("role sizes must be positive, got " + std::to_string(s));
  }

  RoleMatrix roles = structure_role_matrix(kind, static_cast<int>(sizes.size()));
  std::vector<int> signs;
  if (kind == StructureKind::SignedExample) {
    signs = params.signs.empty() ? default_signs(sizes) : params.signs;
  } else if (!params.signs.empty()) {
    throw std::invalid_argument("signs are only meaningful for the signed example");
  }

  Assignment assignment = Assignment::from_blocks(sizes, params.perm, signs);
  Adjacency adjacency = build_ideal(roles, sizes, params.perm, signs, /*require_connected=*/true);
  return {std::move(adjacency), std::move(roles), std::move(assignment)};
}

}  // namespace rolextract
