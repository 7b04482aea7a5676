#pragma once

// Graded spaces, structure-constant tensors, even maps and the instance
// bundles built from them.

#include <cstddef>
#include <string>
#include <vector>

#include "bihom/linalg.hpp"

namespace bihom {

/// Finite homogeneous basis e_0..e_{dim-1}; parity[i] is |e_i| in Z/2.
struct SuperSpace {
  std::vector<int> parity;

  SuperSpace() = default;
  explicit SuperSpace(std::vector<int> p) : parity(std::move(p)) {
    for (int x : parity)
      if (x != 0 && x != 1) throw std::invalid_argument("parity entries must be 0 or 1");
  }
  static SuperSpace even(std::size_t dim) { return SuperSpace(std::vector<int>(dim, 0)); }

  std::size_t dim() const { return parity.size(); }
  int operator[](std::size_t i) const { return parity[i]; }

  /// Parity of a nonzero vector if homogeneous, -1 if mixed, 0 for the zero vector.
  template <class V>
  int homogeneous_parity(const V& v) const {
    bool even = false, odd = false;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) (parity[i] ? odd : even) = true;
    if (even && odd) return -1;
    return odd ? 1 : 0;
  }

  friend bool operator==(const SuperSpace&, const SuperSpace&) = default;
};

/// e_i * e_j = sum_k c(i,j,k) e_k.
template <Field K>
class ProductTensor {
 public:
  using Scalar = typename K::Scalar;

  ProductTensor() = default;
  ProductTensor(K field, std::size_t dim) : field_(field), dim_(dim), c_(dim * dim * dim, field.zero()) {}

  const K& field() const { return field_; }
  std::size_t dim() const { return dim_; }

  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Bilinear extension: sum_{i,j,k} u_i v_j c(i,j,k) e_k.
  Vec<K> operator()(const Vec<K>& u, const Vec<K>& v) const {
    if (u.size() != dim_ || v.size() != dim_)
      throw DimensionError("evaluate: vectors of length " + std::to_string(u.size()) + ", " +
                           std::to_string(v.size()) + " on a " + std::to_string(dim_) + "-dimensional space");
    Vec<K> out(dim_, field_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (v[j].is_zero()) continue;
        const Scalar w = u[i] * v[j];
        const Scalar* row = &c_[(i * dim_ + j) * dim_];
        for (std::size_t k = 0; k < dim_; ++k)
          if (!row[k].is_zero()) out[k] += w * row[k];
      }
    }
    return out;
  }

  /// Column e_i * e_j.
  Vec<K> basis_product(std::size_t i, std::size_t j) const {
    const Scalar* row = &c_[(i * dim_ + j) * dim_];
    return Vec<K>(row, row + dim_);
  }

  /// The tensor of (u, v) -> this(a u, b v).
  ProductTensor precompose(const Matrix<K>& a, const Matrix<K>& b) const {
    ProductTensor out(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        auto v = (*this)(a.col(i), b.col(j));
        for (std::size_t k = 0; k < dim_; ++k) out(i, j, k) = v[k];
      }
    return out;
  }

  friend bool operator==(const ProductTensor& a, const ProductTensor& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  K field_{};
  std::size_t dim_ = 0;
  std::vector<Scalar> c_;
};

template <Field K>
Vec<K> evaluate(const ProductTensor<K>& t, const Vec<K>& u, const Vec<K>& v) {
  return t(u, v);
}

template <Field K>
Vec<K> basis_vector(const K& f, std::size_t dim, std::size_t i) {
  Vec<K> e(dim, f.zero());
  e.at(i) = f.one();
  return e;
}

template <Field K>
bool is_zero_vector(const Vec<K>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

template <Field K>
Vec<K> add(Vec<K> a, const Vec<K>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <Field K>
Vec<K> sub(Vec<K> a, const Vec<K>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <Field K>
Vec<K> scale(const typename K::Scalar& s, Vec<K> a) {
  for (auto& x : a) x *= s;
  return a;
}

template <Field K>
std::string vec_str(const Vec<K>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

/// (H, ⊣, ⊢, α, ε). Axiom status is established only by the checker.
template <Field K>
struct DialgebraInstance {
  K field{};
  SuperSpace space;
  ProductTensor<K> left;   // ⊣
  ProductTensor<K> right;  // ⊢
  Matrix<K> alpha;
  Matrix<K> epsilon;

  std::size_t dim() const { return space.dim(); }

  static DialgebraInstance zero(K f, SuperSpace s) {
    const auto n = s.dim();
    return {f, s, ProductTensor<K>(f, n), ProductTensor<K>(f, n), Matrix<K>::identity(f, n),
            Matrix<K>::identity(f, n)};
  }

  /// Component shapes agree with the space.
  void check_shapes() const {
    const auto n = dim();
    if (left.dim() != n || right.dim() != n || alpha.rows() != n || alpha.cols() != n || epsilon.rows() != n ||
        epsilon.cols() != n)
      throw DimensionError("instance components do not share one " + std::to_string(n) + "-dimensional space");
  }

  friend bool operator==(const DialgebraInstance& a, const DialgebraInstance& b) {
    return a.space == b.space && a.left == b.left && a.right == b.right && a.alpha == b.alpha &&
           a.epsilon == b.epsilon;
  }
};

/// (H, ·, α, ε).
template <Field K>
struct SuperalgebraInstance {
  K field{};
  SuperSpace space;
  ProductTensor<K> prod;
  Matrix<K> alpha;
  Matrix<K> epsilon;

  std::size_t dim() const { return space.dim(); }

  void check_shapes() const {
    const auto n = dim();
    if (prod.dim() != n || alpha.rows() != n || alpha.cols() != n || epsilon.rows() != n || epsilon.cols() != n)
      throw DimensionError("instance components do not share one " + std::to_string(n) + "-dimensional space");
  }

  friend bool operator==(const SuperalgebraInstance& a, const SuperalgebraInstance& b) {
    return a.space == b.space && a.prod == b.prod && a.alpha == b.alpha && a.epsilon == b.epsilon;
  }
};

/// Homogeneous linear map of degree `parity`: m(i,j) = 0 unless |e_i| = |e_j| + parity.
template <Field K>
struct ParityMap {
  Matrix<K> m;
  int parity = 0;

  friend bool operator==(const ParityMap&, const ParityMap&) = default;
};

template <Field K>
struct DifferentialInstance {
  SuperalgebraInstance<K> base;
  ParityMap<K> d;

  friend bool operator==(const DifferentialInstance&, const DifferentialInstance&) = default;
};

// ---------------------------------------------------------------------------
// Powers of commuting structure maps.

class NonCommutingMaps : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Field K>
Matrix<K> matrix_power(const Matrix<K>& m, int e) {
  if (!m.is_square()) throw DimensionError("power of a non-square matrix");
  Matrix<K> base = m;
  if (e < 0) {
    auto inv = inverse(m);
    if (!inv) throw SingularMap("negative power of a singular map");
    base = *inv;
    e = -e;
  }
  Matrix<K> result = Matrix<K>::identity(m.field(), m.rows());
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

/// f^m ∘ g^n for commuting f, g; negative exponents require invertibility.
template <Field K>
Matrix<K> hom_power(const Matrix<K>& f, const Matrix<K>& g, int m, int n) {
  if (!(f * g == g * f)) throw NonCommutingMaps("hom_power: structure maps do not commute");
  try {
    auto fm = matrix_power(f, m);
    auto gn = matrix_power(g, n);
    return fm * gn;
  } catch (const SingularMap&) {
    throw SingularMap("hom_power: exponent (" + std::to_string(m) + ", " + std::to_string(n) +
                      ") needs an inverse of a singular structure map");
  }
}

// ---------------------------------------------------------------------------
// Grading checks.

struct TensorViolation {
  std::string tensor;
  std::size_t i, j, k;
};

struct MapViolation {
  std::string map;
  std::size_t row, col;
};

struct GradingReport {
  std::vector<TensorViolation> tensors;
  std::vector<MapViolation> maps;
  bool empty() const { return tensors.empty() && maps.empty(); }
};

template <Field K>
void check_tensor_grading(const SuperSpace& s, const ProductTensor<K>& t, const std::string& name,
                          GradingReport& report) {
  const auto n = s.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!t(i, j, k).is_zero() && s[k] != ((s[i] + s[j]) & 1)) report.tensors.push_back({name, i, j, k});
}

/// Records entries (row, col) of a map of the given degree that break the grading.
template <Field K>
void check_map_grading(const SuperSpace& target, const SuperSpace& source, const Matrix<K>& m,
                       const std::string& name, GradingReport& report, int degree = 0) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && target[i] != ((source[j] + degree) & 1)) report.maps.push_back({name, i, j});
}

template <Field K>
GradingReport check_grading(const DialgebraInstance<K>& h) {
  h.check_shapes();
  GradingReport r;
  check_tensor_grading(h.space, h.left, "left", r);
  check_tensor_grading(h.space, h.right, "right", r);
  check_map_grading(h.space, h.space, h.alpha, "alpha", r);
  check_map_grading(h.space, h.space, h.epsilon, "epsilon", r);
  return r;
}

template <Field K>
GradingReport check_grading(const SuperalgebraInstance<K>& a) {
  a.check_shapes();
  GradingReport r;
  check_tensor_grading(a.space, a.prod, "prod", r);
  check_map_grading(a.space, a.space, a.alpha, "alpha", r);
  check_map_grading(a.space, a.space, a.epsilon, "epsilon", r);
  return r;
}

template <Field K>
GradingReport check_grading(const DifferentialInstance<K>& d) {
  auto r = check_grading(d.base);
  check_map_grading(d.base.space, d.base.space, d.d.m, "d", r, d.d.parity);
  return r;
}

/// Zeroes every entry that breaks the grading.
template <Field K>
void project_graded(DialgebraInstance<K>& h) {
  auto r = check_grading(h);
  for (const auto& v : r.tensors) (v.tensor == "left" ? h.left : h.right)(v.i, v.j, v.k) = h.field.zero();
  for (const auto& v : r.maps) (v.map == "alpha" ? h.alpha : h.epsilon)(v.row, v.col) = h.field.zero();
}

template <Field K>
void project_graded(SuperalgebraInstance<K>& a) {
  auto r = check_grading(a);
  for (const auto& v : r.tensors) a.prod(v.i, v.j, v.k) = a.field.zero();
  for (const auto& v : r.maps) (v.map == "alpha" ? a.alpha : a.epsilon)(v.row, v.col) = a.field.zero();
}

template <Field K>
void project_graded(DifferentialInstance<K>& d) {
  project_graded(d.base);
  GradingReport r;
  check_map_grading(d.base.space, d.base.space, d.d.m, "d", r, d.d.parity);
  for (const auto& v : r.maps) d.d.m(v.row, v.col) = d.base.field.zero();
}

/// Parity-pattern slots (i, j) available to a map of degree `degree`.
inline std::vector<std::pair<std::size_t, std::size_t>> parity_slots(const SuperSpace& s, int degree) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (s[i] == ((s[j] + degree) & 1)) slots.emplace_back(i, j);
  return slots;
}

}  // namespace bihom
