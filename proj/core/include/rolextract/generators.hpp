#pragma once

#include "rolextract/graph.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace rolextract {

enum class StructureKind { Community, Overlapping, BipartiteCommunities, BlockCycle, SignedExample };

std::string_view to_string(StructureKind kind);
std::optional<StructureKind> parse_structure_kind(std::string_view name);

struct StructureParams {
  /// Role sizes in block order. Community, BlockCycle and Overlapping take one
  /// size per role; BipartiteCommunities takes 2q sizes (the q left parts, then
  /// the q right parts); SignedExample takes three sizes, default {2, 1, 3}.
  std::vector<int> sizes;
  /// Node at each block position; empty means identity.
  std::vector<int> perm;
  /// Signs per block position for SignedExample; empty selects the default pattern.
  std::vector<int> signs;
};

struct GroundTruth {
  Adjacency adjacency;
  RoleMatrix roles;
  Assignment assignment;
};

/// Role matrix of a structure with q roles (for BipartiteCommunities, q = 2 * communities).
RoleMatrix structure_role_matrix(StructureKind kind, int q);

/// Ideal graph with the given structure. Every returned role matrix is minimal.
GroundTruth generate_structure(StructureKind kind, const StructureParams& params);

}  // namespace rolextract
