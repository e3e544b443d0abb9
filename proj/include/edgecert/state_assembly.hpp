#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgecert/building_blocks.hpp"
#include "edgecert/complex_linalg.hpp"
#include "edgecert/structured_spectrum.hpp"

namespace edgecert {

/// One stored entry; indices are positions (0-based) in the owning label list
/// or, for global entries, flat basis indices.
struct Entry {
  int row = 0;
  int col = 0;
  cplx value;
};

enum class BlockShape {
  Pair,    // scale * [[1, z], [z^{-1}, 1]]
  Cycle,   // scale * cycle_block(z)
  Path,    // scale * path_block(z)
  Sparse,  // explicit entries, both triangles stored
};

/// A principal block on a list of basis labels. Matrices are generated on
/// demand so that an n = 1000 assembly stays O(n^2) in memory.
struct BlockSpec {
  std::vector<BasisLabel> labels;
  BlockShape shape = BlockShape::Sparse;
  double scale = 1.0;
  UnitComplexList z;             // Cycle, Path
  double pair_angle = 0.0;       // Pair
  std::vector<Entry> entries;    // Sparse, sorted by (row, col)
  std::string tag;               // human-readable origin, e.g. "alpha k=5"

  int dim() const { return static_cast<int>(labels.size()); }
  cplx entry(int i, int j) const;
  std::vector<Entry> nonzeros() const;  // both triangles, unordered
  HermitianMatrix matrix() const;

  /// O(dim) inertia form, available for Pair/Cycle/Path and for Sparse blocks
  /// whose entries are tridiagonal.
  std::optional<BorderedTridiagonal> structure() const;
};

/// n^2 x n^2 Hermitian matrix as a direct sum of principal blocks and 1 x 1
/// diagonal entries. Every label is covered exactly once.
struct StateAssembly {
  int n = 0;
  std::vector<BlockSpec> blocks;
  std::map<BasisLabel, double> diagonal;

  /// Throws InternalContradiction unless every label is covered exactly once
  /// and block/label sizes agree.
  void check_coverage() const;

  /// All nonzero entries with flat global indices (both triangles).
  std::vector<Entry> global_entries() const;

  /// Index of the block containing `label`, or -1 for a diagonal entry.
  int block_of(const BasisLabel& label) const;

  /// Dense materialization; gated to n <= kDenseLimit.
  HermitianMatrix densify() const;
};

inline constexpr int kDenseLimit = 12;

void require_dense_allowed(int n);

/// Groups global entries into connected components: components with two or
/// more labels become Sparse blocks (labels sorted), the rest become diagonal
/// entries (zero where nothing is stored). Entries are copied, never recomputed.
StateAssembly assembly_from_entries(int n, const std::vector<Entry>& entries);

/// Image of a global entry under the partial transpose
/// out[(a,b),(c,d)] = m[(c,b),(a,d)].
Entry gamma_image(const Entry& e, int n);

/// Partial transpose done entry by entry on the block structure.
StateAssembly partial_transpose(const StateAssembly& a);

}  // namespace edgecert
