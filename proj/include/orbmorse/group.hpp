#pragma once

#include <memory>
#include <vector>

#include "orbmorse/affine_isometry.hpp"

namespace orbmorse {

// Finite group of affine isometries, closed under composition and inverse,
// with the identity at element index 0. Each element carries the generator
// word that produced it, so representations given on generators extend to the
// whole group by multiplying along words.
class FiniteActionGroup {
 public:
  FiniteActionGroup() = default;

  // Closure of the generators under composition mod the lattice. Throws
  // OrderExceeded once the closure grows past max_order, NotIsometry or
  // LatticeNotPreserved for bad generators.
  static FiniteActionGroup generate(const std::vector<AffineIsometry>& generators, int dim,
                                    bool lattice, int max_order = 10000);

  int dim() const { return dim_; }
  bool lattice() const { return lattice_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const AffineIsometry& element(int i) const { return elements_[i]; }
  const std::vector<AffineIsometry>& elements() const { return elements_; }

  // Indices of the input generators inside elements(), in input order.
  const std::vector<int>& generator_indices() const { return generator_indices_; }

  int multiply(int i, int j) const;
  int inverse(int i) const;
  int element_order(int i) const;
  int power(int g, long long k) const;

  // Generator word composing to element i: element(i) = gen[w0] * gen[w1] * ...
  // where gen[j] is the j-th input generator and the rightmost factor acts first.
  const std::vector<int>& word(int i) const { return words_[i]; }

  // For subgroups carved out of a parent group: the parent element index of
  // each subgroup element. Empty for groups built by generate().
  const std::vector<int>& parent_indices() const { return parent_indices_; }

  // Index of the element equal to g, or -1.
  int find(const AffineIsometry& g, double tol = 1e-9) const;

 private:
  void build_tables();

  std::vector<AffineIsometry> elements_;
  std::vector<int> generator_indices_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inverse_;
  std::vector<int> parent_indices_;
  int dim_ = 0;
  bool lattice_ = false;

  friend FiniteActionGroup subgroup(const FiniteActionGroup&, std::vector<int>);
};

// Partition of element indices into conjugacy classes; the identity's
// singleton class comes first, classes ordered by smallest member.
std::vector<std::vector<int>> conjugacy_classes(const FiniteActionGroup& G);

// Subgroup on the given parent element indices (identity added if absent).
// The subset must be closed under the parent multiplication. Generators of
// the result are all its non-identity elements.
FiniteActionGroup subgroup(const FiniteActionGroup& G, std::vector<int> members);

// Subgroup of all h commuting with g.
FiniteActionGroup centralizer(const FiniteActionGroup& G, int g);

}  // namespace orbmorse
