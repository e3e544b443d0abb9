#include "edgecert/state_assembly.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "edgecert/error.hpp"

namespace edgecert {

namespace {

bool entry_less(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

// Superdiagonal (k, k+1) of the cycle block, k 1-based; z_1 = 1.
cplx cycle_super(const UnitComplexList& z, int k) {
  return unit(z.angle(k + 1) - (k == 1 ? 0.0 : z.angle(k)));
}

}  // namespace

cplx BlockSpec::entry(int i, int j) const {
  const int d = dim();
  if (i < 0 || j < 0 || i >= d || j >= d) throw_invalid("block entry index out of range");
  if (i > j) return std::conj(entry(j, i));
  switch (shape) {
    case BlockShape::Pair:
      return scale * (i == j ? cplx{1.0} : unit(pair_angle));
    case BlockShape::Cycle:
      if (i == j) return 2.0 * scale;
      if (j == i + 1) return scale * cycle_super(z, i + 1);
      if (i == 0 && j == d - 1) return scale * z.value(d);
      return {};
    case BlockShape::Path:
      if (i == j) return 2.0 * scale;
      if (j == i + 1) return scale * z.value(j + 1);
      return {};
    case BlockShape::Sparse: {
      const Entry key{i, j, {}};
      auto it = std::lower_bound(entries.begin(), entries.end(), key, entry_less);
      if (it != entries.end() && it->row == i && it->col == j) return it->value;
      return {};
    }
  }
  return {};
}

std::vector<Entry> BlockSpec::nonzeros() const {
  if (shape == BlockShape::Sparse) return entries;
  const int d = dim();
  std::vector<Entry> out;
  out.reserve(3 * static_cast<std::size_t>(d));
  auto push = [&](int i, int j, cplx v) {
    out.push_back({i, j, v});
    if (i != j) out.push_back({j, i, std::conj(v)});
  };
  switch (shape) {
    case BlockShape::Pair:
      push(0, 0, scale);
      push(1, 1, scale);
      push(0, 1, scale * unit(pair_angle));
      break;
    case BlockShape::Cycle:
      for (int i = 0; i < d; ++i) push(i, i, 2.0 * scale);
      for (int k = 1; k < d; ++k) push(k - 1, k, scale * cycle_super(z, k));
      push(0, d - 1, scale * z.value(d));
      break;
    case BlockShape::Path:
      for (int i = 0; i < d; ++i) push(i, i, 2.0 * scale);
      for (int k = 2; k <= d; ++k) push(k - 2, k - 1, scale * z.value(k));
      break;
    case BlockShape::Sparse:
      break;
  }
  return out;
}

HermitianMatrix BlockSpec::matrix() const {
  const int d = dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (const Entry& e : nonzeros()) m(e.row, e.col) = e.value;
  return HermitianMatrix(std::move(m));
}

std::optional<BorderedTridiagonal> BlockSpec::structure() const {
  switch (shape) {
    case BlockShape::Pair:
      return pair_block_structure(pair_angle, scale);
    case BlockShape::Cycle:
      return cycle_block_structure(z, scale);
    case BlockShape::Path:
      return path_block_structure(z, scale);
    case BlockShape::Sparse:
      break;
  }
  const int d = dim();
  BorderedTridiagonal t;
  t.diag.assign(d, 0.0);
  t.super.assign(std::max(0, d - 1), cplx{});
  for (const Entry& e : entries) {
    if (e.row == e.col) {
      t.diag[e.row] = e.value.real();
    } else if (e.col == e.row + 1) {
      t.super[e.row] = e.value;
    } else if (e.row != e.col + 1) {
      return std::nullopt;
    }
  }
  return t;
}

void StateAssembly::check_coverage() const {
  if (n < 1) throw Error(ErrorKind::InternalContradiction, "assembly has no dimension");
  std::vector<int> hits(static_cast<std::size_t>(n) * n, 0);
  auto mark = [&](const BasisLabel& l) {
    if (l.row < 1 || l.row > n || l.col < 1 || l.col > n)
      throw Error(ErrorKind::InternalContradiction, "assembly label out of range");
    ++hits[l.flat(n)];
  };
  for (const BlockSpec& b : blocks) {
    if (b.shape == BlockShape::Pair && b.dim() != 2)
      throw Error(ErrorKind::InternalContradiction, "pair block must have two labels");
    if ((b.shape == BlockShape::Cycle || b.shape == BlockShape::Path) && b.dim() != b.z.size() + 1)
      throw Error(ErrorKind::InternalContradiction, "block size does not match its parameters");
    for (const BasisLabel& l : b.labels) mark(l);
  }
  for (const auto& [l, v] : diagonal) mark(l);
  for (std::size_t k = 0; k < hits.size(); ++k)
    if (hits[k] != 1) {
      const BasisLabel l = BasisLabel::from_flat(static_cast<int>(k), n);
      throw Error(ErrorKind::InternalContradiction, "label e_{" + std::to_string(l.row) + "," +
                                                        std::to_string(l.col) + "} covered " +
                                                        std::to_string(hits[k]) + " times");
    }
}

std::vector<Entry> StateAssembly::global_entries() const {
  std::vector<Entry> out;
  std::size_t total = diagonal.size();
  for (const BlockSpec& b : blocks) total += b.shape == BlockShape::Sparse ? b.entries.size() : 3 * b.labels.size();
  out.reserve(total);
  for (const BlockSpec& b : blocks) {
    for (const Entry& e : b.nonzeros()) {
      if (e.value == cplx{}) continue;
      out.push_back({b.labels[e.row].flat(n), b.labels[e.col].flat(n), e.value});
    }
  }
  for (const auto& [l, v] : diagonal)
    if (v != 0.0) out.push_back({l.flat(n), l.flat(n), v});
  return out;
}

int StateAssembly::block_of(const BasisLabel& label) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (const BasisLabel& l : blocks[b].labels)
      if (l == label) return static_cast<int>(b);
  return -1;
}

void require_dense_allowed(int n) {
  if (n > kDenseLimit)
    throw Error(ErrorKind::DenseGate, "dense materialization is limited to n <= " +
                                          std::to_string(kDenseLimit) + " (got n=" + std::to_string(n) + ")");
}

HermitianMatrix StateAssembly::densify() const {
  require_dense_allowed(n);
  const int dim = n * n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const Entry& e : global_entries()) m(e.row, e.col) = e.value;
  return HermitianMatrix(std::move(m));
}

Entry gamma_image(const Entry& e, int n) {
  const BasisLabel r = BasisLabel::from_flat(e.row, n);
  const BasisLabel c = BasisLabel::from_flat(e.col, n);
  // m[(i1,i2),(j1,j2)] lands at out[(j1,i2),(i1,j2)].
  const BasisLabel out_r{c.row, r.col};
  const BasisLabel out_c{r.row, c.col};
  return {out_r.flat(n), out_c.flat(n), e.value};
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

StateAssembly assembly_from_entries(int n, const std::vector<Entry>& entries) {
  const int dim = n * n;
  DisjointSets sets(dim);
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim)
      throw Error(ErrorKind::InternalContradiction, "entry outside the n^2 basis");
    if (e.row != e.col) sets.unite(e.row, e.col);
  }

  // Flat indices are already in lexicographic label order, so iterating them in
  // order lists each component's labels sorted.
  std::vector<int> component_of(dim, -1);
  std::vector<std::vector<int>> members;
  for (int k = 0; k < dim; ++k) {
    const int root = sets.find(k);
    if (component_of[root] < 0) {
      component_of[root] = static_cast<int>(members.size());
      members.emplace_back();
    }
    members[component_of[root]].push_back(k);
  }
  std::vector<int> local(dim, 0);
  for (const auto& m : members)
    for (std::size_t t = 0; t < m.size(); ++t) local[m[t]] = static_cast<int>(t);

  std::vector<std::vector<Entry>> per_component(members.size());
  for (const Entry& e : entries) {
    const int c = component_of[sets.find(e.row)];
    per_component[c].push_back({local[e.row], local[e.col], e.value});
  }

  StateAssembly out;
  out.n = n;
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& list = per_component[c];
    std::sort(list.begin(), list.end(), entry_less);
    for (std::size_t t = 1; t < list.size(); ++t)
      if (list[t].row == list[t - 1].row && list[t].col == list[t - 1].col)
        throw Error(ErrorKind::InternalContradiction, "duplicate entry in assembly");
    if (members[c].size() == 1) {
      const BasisLabel l = BasisLabel::from_flat(members[c][0], n);
      double v = 0.0;
      if (!list.empty()) {
        if (list[0].value.imag() != 0.0)
          throw Error(ErrorKind::InternalContradiction, "non-real diagonal entry");
        v = list[0].value.real();
      }
      out.diagonal.emplace(l, v);
      continue;
    }
    BlockSpec b;
    b.shape = BlockShape::Sparse;
    for (int k : members[c]) b.labels.push_back(BasisLabel::from_flat(k, n));
    b.entries = std::move(list);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

StateAssembly partial_transpose(const StateAssembly& a) {
  std::vector<Entry> entries = a.global_entries();
  for (Entry& e : entries) e = gamma_image(e, a.n);
  return assembly_from_entries(a.n, entries);
}

}  // namespace edgecert
