#pragma once

// Seeded instance families. Every base is a superdialgebra with identity
// structure maps; each carries an even endomorphism sampler so that twists
// by its powers give BiHom-superdialgebras with nontrivial maps.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bihom/constructions.hpp"

namespace bihom {

using Rng = std::mt19937_64;

namespace rnd {

inline long range(Rng& r, long lo, long hi) { return lo + static_cast<long>(r() % static_cast<std::uint64_t>(hi - lo + 1)); }
inline bool coin(Rng& r) { return r() & 1; }

template <Field K>
typename K::Scalar small(const K& f, Rng& r) {
  return f.from_int(range(r, -3, 3));
}

template <Field K>
typename K::Scalar nonzero(const K& f, Rng& r) {
  for (;;) {
    auto x = f.from_int(range(r, -3, 3));
    if (!x.is_zero()) return x;
  }
}

}  // namespace rnd

template <Field K>
struct Family {
  std::string name;
  DialgebraInstance<K> base;                      // superdialgebra, α = ε = Id
  std::function<Matrix<K>(Rng&)> endomorphism;    // even, multiplicative for both products
};

namespace detail {

/// ⊣ = ⊢ = the associative product given on basis pairs.
template <Field K>
DialgebraInstance<K> associative_dialgebra(const K& f, SuperSpace s, const std::function<Vec<K>(std::size_t, std::size_t)>& mul) {
  const auto n = s.dim();
  auto h = DialgebraInstance<K>::zero(f, s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = mul(i, j);
      for (std::size_t k = 0; k < n; ++k) h.left(i, j, k) = h.right(i, j, k) = v[k];
    }
  return h;
}

template <Field K>
SuperalgebraInstance<K> as_superalgebra(const DialgebraInstance<K>& h) {
  return {h.field, h.space, h.left, h.alpha, h.epsilon};
}

/// Matrix units E_ab, a algebra spanned by a subset of them.
struct UnitBasis {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> units;

  std::ptrdiff_t index(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i] == std::pair{a, b}) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  static UnitBasis upper(std::size_t n) {
    UnitBasis u{n, {}};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) u.units.emplace_back(a, b);
    return u;
  }
  static UnitBasis full(std::size_t n) {
    UnitBasis u{n, {}};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) u.units.emplace_back(a, b);
    return u;
  }

  SuperSpace space(const std::vector<int>& g) const {
    std::vector<int> p;
    for (auto [a, b] : units) p.push_back((g[a] + g[b]) & 1);
    return SuperSpace(p);
  }

  template <Field K>
  DialgebraInstance<K> algebra(const K& f, const std::vector<int>& g) const {
    return associative_dialgebra<K>(f, space(g), [&](std::size_t i, std::size_t j) {
      Vec<K> v(units.size(), f.zero());
      auto [a, b] = units[i];
      auto [c, d] = units[j];
      if (b == c) v[static_cast<std::size_t>(index(a, d))] = f.one();
      return v;
    });
  }

  /// X ↦ P X P⁻¹ in this basis; P must preserve the span.
  template <Field K>
  Matrix<K> conjugation(const K& f, const Matrix<K>& p) const {
    auto pi = *inverse(p);
    Matrix<K> out(f, units.size(), units.size());
    for (std::size_t col = 0; col < units.size(); ++col) {
      Matrix<K> e(f, n, n);
      e(units[col].first, units[col].second) = f.one();
      auto c = p * e * pi;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (!c(a, b).is_zero()) {
            auto idx = index(a, b);
            if (idx < 0) throw std::logic_error("conjugation leaves the subalgebra");
            out(static_cast<std::size_t>(idx), col) = c(a, b);
          }
    }
    return out;
  }
};

template <Field K>
Matrix<K> random_diagonal(const K& f, Rng& r, std::size_t n) {
  auto p = Matrix<K>::identity(f, n);
  for (std::size_t i = 0; i < n; ++i) p(i, i) = rnd::nonzero(f, r);
  return p;
}

inline std::vector<int> random_grading(Rng& r, std::size_t n) {
  std::vector<int> g(n);
  for (auto& x : g) x = static_cast<int>(r() & 1);
  return g;
}

/// Even unimodular change of basis: identity plus strictly upper entries inside parity blocks.
template <Field K>
Matrix<K> random_even_unimodular(const K& f, Rng& r, const SuperSpace& s) {
  const auto n = s.dim();
  auto p = Matrix<K>::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s[i] == s[j] && rnd::coin(r)) p(i, j) = rnd::small(f, r);
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Families.

enum class FamilyKind {
  Zero,
  Field1,
  Grassmann1,
  Grassmann2,
  Diagonal,
  DualNumbers,
  Truncated3,
  UpperTriangular,
  Matrix11,
  DifferentialUpper,
};

inline constexpr FamilyKind kAllFamilies[] = {
    FamilyKind::Zero,        FamilyKind::Field1,     FamilyKind::Grassmann1,      FamilyKind::Grassmann2,
    FamilyKind::Diagonal,    FamilyKind::DualNumbers, FamilyKind::Truncated3,     FamilyKind::UpperTriangular,
    FamilyKind::Matrix11,    FamilyKind::DifferentialUpper,
};

/// Smallest dimension a family can be sampled at.
inline std::size_t min_dim(FamilyKind k) {
  switch (k) {
    case FamilyKind::Zero:
    case FamilyKind::Field1: return 1;
    case FamilyKind::Grassmann1:
    case FamilyKind::Diagonal:
    case FamilyKind::DualNumbers: return 2;
    case FamilyKind::Truncated3:
    case FamilyKind::UpperTriangular:
    case FamilyKind::DifferentialUpper: return 3;
    case FamilyKind::Grassmann2:
    case FamilyKind::Matrix11: return 4;
  }
  return 1;
}

template <Field K>
Family<K> sample_family(const K& f, Rng& r, FamilyKind kind, std::size_t max_dim) {
  using detail::associative_dialgebra;
  switch (kind) {
    case FamilyKind::Zero: {
      const auto n = static_cast<std::size_t>(rnd::range(r, 1, static_cast<long>(std::min<std::size_t>(max_dim, 4))));
      SuperSpace s(detail::random_grading(r, n));
      return {"zero", DialgebraInstance<K>::zero(f, s), [f, s](Rng& g) {
                const auto n = s.dim();
                Matrix<K> m(f, n, n);
                for (std::size_t i = 0; i < n; ++i)
                  for (std::size_t j = 0; j < n; ++j)
                    if (s[i] == s[j]) m(i, j) = rnd::small(f, g);
                return m;
              }};
    }
    case FamilyKind::Field1: {
      auto h = associative_dialgebra<K>(f, SuperSpace::even(1), [&](std::size_t, std::size_t) { return Vec<K>{f.one()}; });
      return {"field", h, [f](Rng& g) { return rnd::coin(g) ? Matrix<K>::identity(f, 1) : Matrix<K>(f, 1, 1); }};
    }
    case FamilyKind::Grassmann1: {
      // 1, ξ
      auto h = associative_dialgebra<K>(f, SuperSpace({0, 1}), [&](std::size_t i, std::size_t j) {
        Vec<K> v(2, f.zero());
        if (i + j < 2) v[i + j] = f.one();
        return v;
      });
      return {"grassmann1", h, [f](Rng& g) {
                auto m = Matrix<K>::identity(f, 2);
                m(1, 1) = rnd::small(f, g);
                return m;
              }};
    }
    case FamilyKind::Grassmann2: {
      // 1, ξ1, ξ2, ξ1ξ2
      auto h = associative_dialgebra<K>(f, SuperSpace({0, 1, 1, 0}), [&](std::size_t i, std::size_t j) {
        Vec<K> v(4, f.zero());
        if (i == 0) v[j] = f.one();
        else if (j == 0) v[i] = f.one();
        else if (i == 1 && j == 2) v[3] = f.one();
        else if (i == 2 && j == 1) v[3] = -f.one();
        return v;
      });
      return {"grassmann2", h, [f](Rng& g) {
                auto m = Matrix<K>::identity(f, 4);
                for (std::size_t a = 1; a <= 2; ++a)
                  for (std::size_t b = 1; b <= 2; ++b) m(a, b) = rnd::small(f, g);
                m(3, 3) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
                return m;
              }};
    }
    case FamilyKind::Diagonal: {
      const auto n = static_cast<std::size_t>(rnd::range(r, 2, static_cast<long>(std::min<std::size_t>(max_dim, 3))));
      auto h = associative_dialgebra<K>(f, SuperSpace::even(n), [&](std::size_t i, std::size_t j) {
        Vec<K> v(n, f.zero());
        if (i == j) v[i] = f.one();
        return v;
      });
      return {"diagonal" + std::to_string(n), h, [f, n](Rng& g) {
                // e_i ↦ sum of the e_j assigned to i; unassigned targets are dropped
                Matrix<K> m(f, n, n);
                for (std::size_t j = 0; j < n; ++j) {
                  auto src = rnd::range(g, -1, static_cast<long>(n) - 1);
                  if (src >= 0) m(j, static_cast<std::size_t>(src)) = f.one();
                }
                return m;
              }};
    }
    case FamilyKind::DualNumbers: {
      auto h = associative_dialgebra<K>(f, SuperSpace::even(2), [&](std::size_t i, std::size_t j) {
        Vec<K> v(2, f.zero());
        if (i + j < 2) v[i + j] = f.one();
        return v;
      });
      return {"dual-numbers", h, [f](Rng& g) {
                auto m = Matrix<K>::identity(f, 2);
                m(1, 1) = rnd::small(f, g);
                return m;
              }};
    }
    case FamilyKind::Truncated3: {
      auto h = associative_dialgebra<K>(f, SuperSpace::even(3), [&](std::size_t i, std::size_t j) {
        Vec<K> v(3, f.zero());
        if (i + j < 3) v[i + j] = f.one();
        return v;
      });
      return {"truncated3", h, [f](Rng& g) {
                // x ↦ cx + bx², x² ↦ c²x²
                auto c = rnd::small(f, g), b = rnd::small(f, g);
                auto m = Matrix<K>::identity(f, 3);
                m(1, 1) = c;
                m(2, 1) = b;
                m(2, 2) = c * c;
                return m;
              }};
    }
    case FamilyKind::UpperTriangular: {
      const std::size_t n = max_dim >= 6 && rnd::coin(r) ? 3 : 2;
      auto g = detail::random_grading(r, n);
      auto ub = detail::UnitBasis::upper(n);
      auto h = ub.algebra(f, g);
      return {"upper" + std::to_string(n), h, [f, ub](Rng& rg) {
                if (ub.n == 2 && rnd::range(rg, 0, 2) == 0) {
                  // diagonal part
                  Matrix<K> m(f, 3, 3);
                  m(0, 0) = m(2, 2) = f.one();
                  return m;
                }
                return ub.conjugation(f, detail::random_diagonal(f, rg, ub.n));
              }};
    }
    case FamilyKind::Matrix11: {
      auto ub = detail::UnitBasis::full(2);
      auto h = ub.algebra(f, {0, 1});
      return {"matrix11", h, [f, ub](Rng& rg) {
                auto p = Matrix<K>::identity(f, 2);
                p(1, 1) = rnd::nonzero(f, rg);
                return ub.conjugation(f, p);
              }};
    }
    case FamilyKind::DifferentialUpper: {
      // p ⊣ q = p·dq, p ⊢ q = dp·q with d = [z, -], z even and strictly in the first row
      const std::size_t n = max_dim >= 6 && rnd::coin(r) ? 3 : 2;
      auto g = detail::random_grading(r, n);
      g[n - 1] = g[0];
      auto ub = detail::UnitBasis::upper(n);
      auto a = detail::as_superalgebra(ub.algebra(f, g));
      auto c = rnd::nonzero(f, r);
      Matrix<K> zmat(f, n, n);
      zmat(0, n - 1) = c;
      const auto dim = ub.units.size();
      ParityMap<K> d{Matrix<K>(f, dim, dim), 0};
      for (std::size_t col = 0; col < dim; ++col) {
        Matrix<K> e(f, n, n);
        e(ub.units[col].first, ub.units[col].second) = f.one();
        auto v = zmat * e - e * zmat;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (!v(x, y).is_zero()) d.m(static_cast<std::size_t>(ub.index(x, y)), col) = v(x, y);
      }
      auto h = from_differential(DifferentialInstance<K>{a, d});
      return {"differential-upper" + std::to_string(n), h, [f, ub](Rng& rg) {
                // conjugations fixing z
                auto p = Matrix<K>::identity(f, ub.n);
                if (ub.n == 2) {
                  p(0, 1) = rnd::small(f, rg);
                } else {
                  p(0, 0) = p(2, 2) = rnd::nonzero(f, rg);
                  p(1, 1) = rnd::nonzero(f, rg);
                }
                return ub.conjugation(f, p);
              }};
    }
  }
  throw std::logic_error("unknown family");
}

// ---------------------------------------------------------------------------
// Corpus.

template <Field K>
struct CorpusEntry {
  std::string name;
  DialgebraInstance<K> base;  // superdialgebra with identity structure maps
  Matrix<K> endo;             // even endomorphism of base
  int i = 0;                  // instance = twist of base by (endo^i, endo^j)
  int j = 0;
  DialgebraInstance<K> instance;

  Matrix<K> endo_power(int k) const { return matrix_power(endo, k); }
  bool is_base() const { return i == 0 && j == 0; }
};

/// (base, ⊣∘(f⊗f), ⊢∘(f⊗f), f, f).
template <Field K>
DialgebraInstance<K> hom_instance(const CorpusEntry<K>& e) {
  return twist_unchecked(e.base, e.endo, e.endo);
}

template <Field K>
std::vector<CorpusEntry<K>> generate_corpus(const K& f, std::uint64_t seed, std::size_t max_dim, std::size_t count) {
  Rng r(seed);
  std::vector<FamilyKind> kinds;
  for (auto k : kAllFamilies)
    if (min_dim(k) <= max_dim) kinds.push_back(k);
  if (kinds.empty()) throw std::invalid_argument("corpus: max dimension must be at least 1");
  std::vector<CorpusEntry<K>> out;
  for (std::size_t idx = 0; idx < count; ++idx) {
    auto fam = sample_family(f, r, kinds[idx % kinds.size()], max_dim);
    auto endo = fam.endomorphism(r);
    GradingReport gr;
    check_map_grading(fam.base.space, fam.base.space, endo, "endo", gr);
    if (!gr.maps.empty()) {
      // odd unipotent conjugations are not even; fall back to the identity
      endo = Matrix<K>::identity(f, fam.base.dim());
    }
    int i = 0, j = 0;
    if (idx % 3 != 0) {
      i = static_cast<int>(rnd::range(r, 0, 2));
      j = static_cast<int>(rnd::range(r, 0, 2));
    }
    auto p = detail::random_even_unimodular(f, r, fam.base.space);
    auto pi = *inverse(p);
    CorpusEntry<K> e;
    e.name = fam.name + "-" + std::to_string(idx);
    e.base = transport(fam.base, p);
    e.endo = p * endo * pi;
    e.i = i;
    e.j = j;
    e.instance = twist_unchecked(e.base, matrix_power(e.endo, i), matrix_power(e.endo, j));
    auto rep = check_bihom_superdialgebra(e.instance, 1);
    if (!rep.empty()) throw std::logic_error("corpus instance " + e.name + " fails: " + detail::first_violation(rep));
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Differential instances.

template <Field K>
std::vector<std::pair<std::string, DifferentialInstance<K>>> differential_instances(const K& f, std::uint64_t seed) {
  Rng r(seed);
  std::vector<std::pair<std::string, DifferentialInstance<K>>> out;
  auto inner = [&](const detail::UnitBasis& ub, const Matrix<K>& z) {
    const auto dim = ub.units.size();
    Matrix<K> d(f, dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
      Matrix<K> e(f, ub.n, ub.n);
      e(ub.units[col].first, ub.units[col].second) = f.one();
      auto v = z * e - e * z;
      for (std::size_t x = 0; x < ub.n; ++x)
        for (std::size_t y = 0; y < ub.n; ++y)
          if (!v(x, y).is_zero()) d(static_cast<std::size_t>(ub.index(x, y)), col) = v(x, y);
    }
    return d;
  };

  for (std::size_t n : {2u, 3u}) {
    auto ub = detail::UnitBasis::upper(n);
    auto g = detail::random_grading(r, n);
    for (std::size_t j = 1; j < n; ++j) g[j] = g[0];
    auto a = detail::as_superalgebra(ub.algebra(f, g));
    Matrix<K> z(f, n, n);
    for (std::size_t j = 1; j < n; ++j) z(0, j) = rnd::nonzero(f, r);
    out.emplace_back("upper" + std::to_string(n) + "-inner", DifferentialInstance<K>{a, {inner(ub, z), 0}});
  }

  {
    auto h = sample_family(f, r, FamilyKind::Grassmann2, 4).base;
    auto a = detail::as_superalgebra(h);
    Matrix<K> d(f, 4, 4);
    d(1, 2) = f.one();  // ξ2 ↦ ξ1
    out.emplace_back("grassmann2", DifferentialInstance<K>{a, {d, 0}});
    Matrix<K> pi(f, 4, 4);
    pi(0, 0) = f.one();
    auto b = a;
    b.prod = a.prod.precompose(pi, pi);
    b.alpha = b.epsilon = pi;
    out.emplace_back("grassmann2-projected", DifferentialInstance<K>{b, {d, 0}});
  }

  {
    // T2 ⊕ k with f the projection onto T2
    const std::size_t dim = 4;
    auto ub = detail::UnitBasis::upper(2);
    auto t2 = ub.algebra(f, {0, 0});
    SuperalgebraInstance<K> a{f, SuperSpace::even(dim), ProductTensor<K>(f, dim), Matrix<K>::identity(f, dim),
                              Matrix<K>::identity(f, dim)};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) a.prod(i, j, k) = t2.left(i, j, k);
    a.prod(3, 3, 3) = f.one();
    auto proj = Matrix<K>::identity(f, dim);
    proj(3, 3) = f.zero();
    Matrix<K> z(f, 2, 2);
    z(0, 1) = rnd::nonzero(f, r);
    auto d3 = inner(ub, z);
    Matrix<K> d(f, dim, dim);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) d(i, j) = d3(i, j);
    auto both = a;
    both.prod = a.prod.precompose(proj, proj);
    both.alpha = both.epsilon = proj;
    out.emplace_back("upper2-plus-k", DifferentialInstance<K>{both, {d, 0}});
    auto one = a;
    one.prod = a.prod.precompose(proj, Matrix<K>::identity(f, dim));
    one.alpha = proj;
    out.emplace_back("upper2-plus-k-left", DifferentialInstance<K>{one, {d, 0}});
  }

  for (int par : {0, 1}) {
    // zero products, nilpotent d of either degree
    SuperSpace s(par == 0 ? std::vector<int>{0, 0, 1} : std::vector<int>{0, 1, 1});
    SuperalgebraInstance<K> a{f, s, ProductTensor<K>(f, 3), Matrix<K>::identity(f, 3), Matrix<K>::identity(f, 3)};
    Matrix<K> d(f, 3, 3);
    if (par == 0) d(0, 1) = rnd::nonzero(f, r);
    else d(1, 0) = rnd::nonzero(f, r);
    out.emplace_back(par == 0 ? "zero-even-d" : "zero-odd-d", DifferentialInstance<K>{a, {d, par}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutations.

struct Mutation {
  bool left = true;
  std::size_t i = 0, j = 0, k = 0;
};

/// Adds a nonzero scalar to one grading-allowed structure constant.
template <Field K>
Mutation mutate(DialgebraInstance<K>& h, Rng& r) {
  const auto n = h.dim();
  std::vector<Mutation> allowed;
  for (bool left : {true, false})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (((h.space[i] + h.space[j]) & 1) == h.space[k]) allowed.push_back({left, i, j, k});
  if (allowed.empty()) throw std::invalid_argument("mutate: no structure constant is allowed by the grading");
  auto m = allowed[r() % allowed.size()];
  auto& t = m.left ? h.left : h.right;
  t(m.i, m.j, m.k) += rnd::nonzero(h.field, r);
  return m;
}

}  // namespace bihom
