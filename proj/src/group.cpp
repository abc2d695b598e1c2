#include "orbmorse/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "orbmorse/errors.hpp"

namespace orbmorse {

FiniteActionGroup FiniteActionGroup::generate(const std::vector<AffineIsometry>& generators,
                                              int dim, bool lattice, int max_order) {
  if (max_order < 1) throw FileFormatError("max_order must be positive");
  FiniteActionGroup G;
  G.dim_ = dim;
  G.lattice_ = lattice;

  std::vector<AffineIsometry> gens;
  gens.reserve(generators.size());
  bool all_exact = true;
  for (const AffineIsometry& g : generators) {
    if (g.dim() != dim) throw FileFormatError("generator dimension mismatch");
    validate_isometry(g, lattice);
    gens.push_back(canonicalize(g, lattice));
    all_exact = all_exact && gens.back().exact();
  }

  G.elements_.push_back(AffineIsometry::identity(dim));
  G.words_.push_back({});

  std::unordered_map<std::string, int> index_by_key;
  auto locate = [&](const AffineIsometry& g) -> int {
    if (all_exact) {
      auto it = index_by_key.find(g.exact_key());
      return it == index_by_key.end() ? -1 : it->second;
    }
    for (int i = 0; i < static_cast<int>(G.elements_.size()); ++i)
      if (isometry_equal(G.elements_[i], g, lattice)) return i;
    return -1;
  };
  auto insert = [&](AffineIsometry g, std::vector<int> word) -> int {
    int idx = static_cast<int>(G.elements_.size());
    if (all_exact) index_by_key.emplace(g.exact_key(), idx);
    G.elements_.push_back(std::move(g));
    G.words_.push_back(std::move(word));
    return idx;
  };
  if (all_exact) index_by_key.emplace(G.elements_[0].exact_key(), 0);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < gens.size(); ++j) {
      AffineIsometry next = compose(G.elements_[cur], gens[j], lattice);
      if (locate(next) >= 0) continue;
      if (static_cast<int>(G.elements_.size()) >= max_order)
        throw OrderExceeded("group closure exceeds max_order " + std::to_string(max_order));
      std::vector<int> word = G.words_[cur];
      word.push_back(static_cast<int>(j));
      queue.push_back(insert(std::move(next), std::move(word)));
    }
  }

  for (const AffineIsometry& g : gens) {
    int idx = locate(g);
    G.generator_indices_.push_back(idx);
  }
  G.build_tables();
  return G;
}

void FiniteActionGroup::build_tables() {
  const int m = order();
  mult_.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      AffineIsometry p = compose(elements_[i], elements_[j], lattice_);
      int k = find(p);
      if (k < 0) throw DomainError("group is not closed under composition");
      mult_[i][j] = k;
    }
  }
  inverse_.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      if (mult_[i][j] == 0) {
        inverse_[i] = j;
        break;
      }
    if (inverse_[i] < 0) throw DomainError("group element without inverse");
  }
}

int FiniteActionGroup::find(const AffineIsometry& g, double tol) const {
  for (int i = 0; i < order(); ++i)
    if (isometry_equal(elements_[i], g, lattice_, tol)) return i;
  return -1;
}

int FiniteActionGroup::multiply(int i, int j) const { return mult_[i][j]; }

int FiniteActionGroup::inverse(int i) const { return inverse_[i]; }

int FiniteActionGroup::element_order(int i) const {
  int r = 1;
  int cur = i;
  while (cur != 0) {
    cur = mult_[cur][i];
    ++r;
  }
  return r;
}

int FiniteActionGroup::power(int g, long long k) const {
  long long m = element_order(g);
  long long e = ((k % m) + m) % m;
  int out = 0;
  for (long long s = 0; s < e; ++s) out = mult_[out][g];
  return out;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteActionGroup& G) {
  const int m = G.order();
  std::vector<bool> seen(m, false);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < m; ++g) {
    if (seen[g]) continue;
    std::vector<int> cls;
    for (int h = 0; h < m; ++h) {
      int c = G.multiply(G.multiply(h, g), G.inverse(h));
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

FiniteActionGroup subgroup(const FiniteActionGroup& G, std::vector<int> members) {
  if (std::find(members.begin(), members.end(), 0) == members.end()) members.push_back(0);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  const int m = static_cast<int>(members.size());
  std::vector<int> pos_of(G.order(), -1);
  for (int i = 0; i < m; ++i) pos_of[members[i]] = i;

  FiniteActionGroup S;
  S.dim_ = G.dim();
  S.lattice_ = G.lattice();
  S.parent_indices_ = members;
  S.elements_.reserve(m);
  for (int p : members) S.elements_.push_back(G.element(p));

  S.mult_.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int k = pos_of[G.multiply(members[i], members[j])];
      if (k < 0) throw DomainError("subset is not closed under multiplication");
      S.mult_[i][j] = k;
    }
  }
  S.inverse_.assign(m, -1);
  for (int i = 0; i < m; ++i) S.inverse_[i] = pos_of[G.inverse(members[i])];

  for (int i = 1; i < m; ++i) S.generator_indices_.push_back(i);
  S.words_.assign(m, {});
  for (int i = 1; i < m; ++i) S.words_[i] = {i - 1};
  return S;
}

FiniteActionGroup centralizer(const FiniteActionGroup& G, int g) {
  std::vector<int> members;
  for (int h = 0; h < G.order(); ++h)
    if (G.multiply(h, g) == G.multiply(g, h)) members.push_back(h);
  return subgroup(G, std::move(members));
}

}  // namespace orbmorse
