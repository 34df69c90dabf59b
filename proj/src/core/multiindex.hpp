#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace daafd {

// Exponent tuple alpha = (alpha_1, ..., alpha_N) of a monomial z^alpha.
// Entries are non-negative; degree() is |alpha|.
class MultiIndex {
 public:
  explicit MultiIndex(int dim) : e_(static_cast<std::size_t>(dim), 0), deg_(0) {
    if (dim < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  }

  MultiIndex(std::initializer_list<int> entries) : e_(entries), deg_(0) {
    if (e_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    for (int v : e_) {
      if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
      deg_ += v;
    }
  }

  static MultiIndex unit(int dim, int axis) {
    MultiIndex m(dim);
    m.checked_axis(axis);
    m.e_[static_cast<std::size_t>(axis)] = 1;
    m.deg_ = 1;
    return m;
  }

  int dim() const { return static_cast<int>(e_.size()); }
  int degree() const { return deg_; }
  bool is_zero() const { return deg_ == 0; }
  int operator[](int axis) const { return e_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& entries() const { return e_; }

  MultiIndex plus(const MultiIndex& o) const {
    require_same_dim(o);
    MultiIndex out(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += o.e_[i];
    out.deg_ = deg_ + o.deg_;
    return out;
  }

  // Componentwise difference; caller must ensure *this >= o (see dominates()).
  MultiIndex minus(const MultiIndex& o) const {
    require_same_dim(o);
    MultiIndex out(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      out.e_[i] -= o.e_[i];
      if (out.e_[i] < 0) throw std::invalid_argument("MultiIndex: negative difference");
    }
    out.deg_ = deg_ - o.deg_;
    return out;
  }

  bool dominates(const MultiIndex& o) const {
    require_same_dim(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] < o.e_[i]) return false;
    return true;
  }

  MultiIndex bump(int axis, int delta) const {
    checked_axis(axis);
    MultiIndex out(*this);
    out.e_[static_cast<std::size_t>(axis)] += delta;
    if (out.e_[static_cast<std::size_t>(axis)] < 0)
      throw std::invalid_argument("MultiIndex: bump below zero");
    out.deg_ += delta;
    return out;
  }

  // Graded lexicographic order (degree first); used as the canonical,
  // deterministic iteration order of coefficient maps.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
    return a.e_ < b.e_;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

 private:
  void checked_axis(int axis) const {
    if (axis < 0 || axis >= dim()) throw std::invalid_argument("MultiIndex: axis out of range");
  }
  void require_same_dim(const MultiIndex& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  }

  std::vector<int> e_;
  int deg_;
};

// alpha! / |alpha|!, in (0, 1]. Computed as a telescoping product of ratios,
// so no factorial ever materializes. Equals 1 exactly when alpha is supported
// on a single axis.
inline double da_weight(const MultiIndex& a) {
  double w = 1.0;
  int cum = 0;
  for (int u = 0; u < a.dim(); ++u) {
    for (int j = 1; j <= a[u]; ++j) {
      ++cum;
      w *= static_cast<double>(j) / static_cast<double>(cum);
    }
  }
  return w;
}

// |alpha|! / alpha!, the multinomial coefficient (reciprocal of da_weight).
inline double da_inverse_weight(const MultiIndex& a) {
  double w = 1.0;
  int cum = 0;
  for (int u = 0; u < a.dim(); ++u) {
    for (int j = 1; j <= a[u]; ++j) {
      ++cum;
      w *= static_cast<double>(cum) / static_cast<double>(j);
    }
  }
  return w;
}

// All multi-indices of dimension dim with degree <= max_degree, sorted in the
// graded lexicographic order of operator<.
inline std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(dim), 0);
  // enumerate compositions of d into dim parts, for each degree d
  for (int d = 0; d <= max_degree; ++d) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[0] = d;
    while (true) {
      MultiIndex m(dim);
      for (int u = 0; u < dim; ++u) m = m.bump(u, cur[static_cast<std::size_t>(u)]);
      out.push_back(m);
      // next composition in colex-style order
      int i = dim - 2;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == 0) --i;
      if (i < 0) break;
      int tail = cur[static_cast<std::size_t>(dim - 1)];
      cur[static_cast<std::size_t>(i)] -= 1;
      cur[static_cast<std::size_t>(i + 1)] = tail + 1;
      if (i + 1 != dim - 1) cur[static_cast<std::size_t>(dim - 1)] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace daafd
