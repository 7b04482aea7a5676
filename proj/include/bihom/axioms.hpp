#pragma once

// Exact decision procedures for the axiom systems of superdialgebras,
// Hom-superdialgebras, BiHom-associative superalgebras and
// BiHom-superdialgebras. Every identity is bilinear or trilinear, so
// checking basis tuples decides it for all elements.

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bihom/graded.hpp"

namespace bihom {

inline constexpr std::size_t kDefaultMaxViolations = 100;

template <Field K>
struct Violation {
  std::string axiom;
  std::vector<std::size_t> indices;  // basis pair or triple
  Vec<K> lhs;
  Vec<K> rhs;
};

/// Violations in check order: axiom order first, then lexicographic basis tuple.
template <Field K>
struct ViolationReport {
  std::vector<Violation<K>> violations;
  std::map<std::string, std::size_t> counts;  // total per axiom, including ones past the cap
  std::vector<std::string> checked;           // axiom ids in check order
  std::size_t max_per_axiom = kDefaultMaxViolations;

  bool empty() const { return violations.empty(); }
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [_, c] : counts) t += c;
    return t;
  }
  bool has(const std::string& axiom) const {
    auto it = counts.find(axiom);
    return it != counts.end() && it->second > 0;
  }

  void record(const std::string& axiom, std::vector<std::size_t> idx, const Vec<K>& lhs, const Vec<K>& rhs) {
    auto& c = counts[axiom];
    if (c++ < max_per_axiom) violations.push_back({axiom, std::move(idx), lhs, rhs});
  }
  void begin(const std::string& axiom) {
    if (counts.try_emplace(axiom, 0).second) checked.push_back(axiom);
  }
  void merge(const ViolationReport& o) {
    for (const auto& a : o.checked) begin(a);
    for (const auto& v : o.violations) violations.push_back(v);
    for (const auto& [a, c] : o.counts) counts[a] += c;
  }
};

/// Cap from BIHOM_MAX_VIOLATIONS if set, otherwise the default.
inline std::size_t max_violations_from_env() {
  if (const char* s = std::getenv("BIHOM_MAX_VIOLATIONS")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultMaxViolations;
}

namespace detail {

template <Field K>
struct Ctx {
  const K& f;
  std::size_t n;
  std::vector<Vec<K>> e;  // basis vectors

  Ctx(const K& field, std::size_t dim) : f(field), n(dim) {
    for (std::size_t i = 0; i < n; ++i) e.push_back(basis_vector(f, n, i));
  }
};

template <Field K>
using Tri = std::function<Vec<K>(const Vec<K>&, const Vec<K>&, const Vec<K>&)>;

template <Field K>
using Bi = std::function<Vec<K>(const Vec<K>&, const Vec<K>&)>;

template <Field K>
void check_trilinear(const Ctx<K>& c, const std::string& id, const Tri<K>& lhs, const Tri<K>& rhs,
                     ViolationReport<K>& r) {
  r.begin(id);
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j)
      for (std::size_t k = 0; k < c.n; ++k) {
        auto a = lhs(c.e[i], c.e[j], c.e[k]);
        auto b = rhs(c.e[i], c.e[j], c.e[k]);
        if (!(a == b)) r.record(id, {i, j, k}, a, b);
      }
}

template <Field K>
void check_bilinear(const Ctx<K>& c, const std::string& id, const Bi<K>& lhs, const Bi<K>& rhs,
                    ViolationReport<K>& r) {
  r.begin(id);
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j) {
      auto a = lhs(c.e[i], c.e[j]);
      auto b = rhs(c.e[i], c.e[j]);
      if (!(a == b)) r.record(id, {i, j}, a, b);
    }
}

/// f ∘ g = g ∘ f, compared column by column.
template <Field K>
void check_commute(const Ctx<K>& c, const std::string& id, const Matrix<K>& f, const Matrix<K>& g,
                   ViolationReport<K>& r) {
  r.begin(id);
  auto fg = f * g, gf = g * f;
  for (std::size_t j = 0; j < c.n; ++j) {
    auto a = fg.col(j), b = gf.col(j);
    if (!(a == b)) r.record(id, {j}, a, b);
  }
}

/// f(p ⋆ q) = f(p) ⋆ f(q).
template <Field K>
void check_multiplicative_map(const Ctx<K>& c, const std::string& id, const Matrix<K>& f, const ProductTensor<K>& t,
                              ViolationReport<K>& r) {
  check_bilinear<K>(
      c, id, [&](const Vec<K>& p, const Vec<K>& q) { return f.apply(t(p, q)); },
      [&](const Vec<K>& p, const Vec<K>& q) { return t(f.apply(p), f.apply(q)); }, r);
}

}  // namespace detail

/// Five identities of a superdialgebra; structure maps are ignored.
template <Field K>
ViolationReport<K> check_superdialgebra(const DialgebraInstance<K>& h, std::size_t cap = kDefaultMaxViolations) {
  h.check_shapes();
  ViolationReport<K> r;
  r.max_per_axiom = cap;
  detail::Ctx<K> c(h.field, h.dim());
  const auto& L = h.left;
  const auto& R = h.right;
  using V = const Vec<K>&;
  // (i) p ⊢ (q ⊣ r) = (p ⊢ q) ⊣ r
  detail::check_trilinear<K>(
      c, "Def1.i", [&](V p, V q, V s) { return R(p, L(q, s)); }, [&](V p, V q, V s) { return L(R(p, q), s); }, r);
  // (ii) p ⊣ (q ⊣ r) = (p ⊣ q) ⊣ r = p ⊣ (q ⊢ r)
  detail::check_trilinear<K>(
      c, "Def1.ii.a", [&](V p, V q, V s) { return L(p, L(q, s)); }, [&](V p, V q, V s) { return L(L(p, q), s); }, r);
  detail::check_trilinear<K>(
      c, "Def1.ii.b", [&](V p, V q, V s) { return L(L(p, q), s); }, [&](V p, V q, V s) { return L(p, R(q, s)); }, r);
  // (iii) p ⊢ (q ⊢ r) = (p ⊢ q) ⊢ r = (p ⊣ q) ⊢ r
  detail::check_trilinear<K>(
      c, "Def1.iii.a", [&](V p, V q, V s) { return R(p, R(q, s)); }, [&](V p, V q, V s) { return R(R(p, q), s); }, r);
  detail::check_trilinear<K>(
      c, "Def1.iii.b", [&](V p, V q, V s) { return R(R(p, q), s); }, [&](V p, V q, V s) { return R(L(p, q), s); }, r);
  return r;
}

/// Hom-superdialgebra axioms with structure map alpha; epsilon is ignored.
template <Field K>
ViolationReport<K> check_hom_superdialgebra(const DialgebraInstance<K>& h, std::size_t cap = kDefaultMaxViolations) {
  h.check_shapes();
  ViolationReport<K> r;
  r.max_per_axiom = cap;
  detail::Ctx<K> c(h.field, h.dim());
  const auto& L = h.left;
  const auto& R = h.right;
  const auto& a = h.alpha;
  using V = const Vec<K>&;
  detail::check_multiplicative_map(c, "Def2.i.left", a, L, r);
  detail::check_multiplicative_map(c, "Def2.i.right", a, R, r);
  // (ii) α(p) ⊣ (q ⊣ r) = (p ⊣ q) ⊣ α(r) = α(p) ⊣ (q ⊢ r)
  detail::check_trilinear<K>(
      c, "Def2.ii.a", [&](V p, V q, V s) { return L(a.apply(p), L(q, s)); },
      [&](V p, V q, V s) { return L(L(p, q), a.apply(s)); }, r);
  detail::check_trilinear<K>(
      c, "Def2.ii.b", [&](V p, V q, V s) { return L(L(p, q), a.apply(s)); },
      [&](V p, V q, V s) { return L(a.apply(p), R(q, s)); }, r);
  // (iii) α(p) ⊢ (q ⊢ r) = (p ⊢ q) ⊢ α(r) = (p ⊣ q) ⊢ α(r)
  detail::check_trilinear<K>(
      c, "Def2.iii.a", [&](V p, V q, V s) { return R(a.apply(p), R(q, s)); },
      [&](V p, V q, V s) { return R(R(p, q), a.apply(s)); }, r);
  detail::check_trilinear<K>(
      c, "Def2.iii.b", [&](V p, V q, V s) { return R(R(p, q), a.apply(s)); },
      [&](V p, V q, V s) { return R(L(p, q), a.apply(s)); }, r);
  // (iv) α(p) ⊢ (q ⊣ r) = (p ⊢ q) ⊣ α(r)
  detail::check_trilinear<K>(
      c, "Def2.iv", [&](V p, V q, V s) { return R(a.apply(p), L(q, s)); },
      [&](V p, V q, V s) { return L(R(p, q), a.apply(s)); }, r);
  return r;
}

template <Field K>
ViolationReport<K> check_bihom_assoc_superalgebra(const SuperalgebraInstance<K>& A,
                                                  std::size_t cap = kDefaultMaxViolations) {
  A.check_shapes();
  ViolationReport<K> r;
  r.max_per_axiom = cap;
  detail::Ctx<K> c(A.field, A.dim());
  const auto& P = A.prod;
  const auto& a = A.alpha;
  const auto& e = A.epsilon;
  using V = const Vec<K>&;
  detail::check_commute(c, "Def3.i", a, e, r);
  detail::check_multiplicative_map(c, "Def3.ii.alpha", a, P, r);
  detail::check_multiplicative_map(c, "Def3.ii.epsilon", e, P, r);
  // (iii) α(p)·(q·r) = (p·q)·ε(r)
  detail::check_trilinear<K>(
      c, "Def3.iii", [&](V p, V q, V s) { return P(a.apply(p), P(q, s)); },
      [&](V p, V q, V s) { return P(P(p, q), e.apply(s)); }, r);
  return r;
}

namespace detail {

template <Field K>
void check_bihom_mult(const DialgebraInstance<K>& h, const Ctx<K>& c, ViolationReport<K>& r) {
  check_multiplicative_map(c, "Def4.ii.left", h.alpha, h.left, r);
  check_multiplicative_map(c, "Def4.ii.right", h.alpha, h.right, r);
  check_multiplicative_map(c, "Def4.iii.left", h.epsilon, h.left, r);
  check_multiplicative_map(c, "Def4.iii.right", h.epsilon, h.right, r);
}

}  // namespace detail

/// The seven BiHom-superdialgebra axioms, implemented literally (no Koszul signs).
template <Field K>
ViolationReport<K> check_bihom_superdialgebra(const DialgebraInstance<K>& h,
                                              std::size_t cap = kDefaultMaxViolations) {
  h.check_shapes();
  ViolationReport<K> r;
  r.max_per_axiom = cap;
  detail::Ctx<K> c(h.field, h.dim());
  const auto& L = h.left;
  const auto& R = h.right;
  const auto& a = h.alpha;
  const auto& e = h.epsilon;
  using V = const Vec<K>&;
  detail::check_commute(c, "Def4.i", a, e, r);
  detail::check_bihom_mult(h, c, r);
  // (iv) (p ⊣ q) ⊣ ε(r) = α(p) ⊣ (q ⊣ r)
  detail::check_trilinear<K>(
      c, "Def4.iv", [&](V p, V q, V s) { return L(L(p, q), e.apply(s)); },
      [&](V p, V q, V s) { return L(a.apply(p), L(q, s)); }, r);
  // (v) (p ⊢ q) ⊣ ε(r) = α(p) ⊢ (q ⊣ r)
  detail::check_trilinear<K>(
      c, "Def4.v", [&](V p, V q, V s) { return L(R(p, q), e.apply(s)); },
      [&](V p, V q, V s) { return R(a.apply(p), L(q, s)); }, r);
  // (vi) (p ⊣ q) ⊢ ε(r) = α(p) ⊣ (q ⊢ r)
  detail::check_trilinear<K>(
      c, "Def4.vi", [&](V p, V q, V s) { return R(L(p, q), e.apply(s)); },
      [&](V p, V q, V s) { return L(a.apply(p), R(q, s)); }, r);
  // (vii) (p ⊢ q) ⊢ ε(r) = α(p) ⊢ (q ⊢ r)
  detail::check_trilinear<K>(
      c, "Def4.vii", [&](V p, V q, V s) { return R(R(p, q), e.apply(s)); },
      [&](V p, V q, V s) { return R(a.apply(p), R(q, s)); }, r);
  return r;
}

template <Field K>
struct MultiplicativeResult {
  bool multiplicative;
  ViolationReport<K> report;
};

/// Axioms (ii)-(iii) of the BiHom-superdialgebra system.
template <Field K>
MultiplicativeResult<K> check_multiplicative(const DialgebraInstance<K>& h, std::size_t cap = kDefaultMaxViolations) {
  h.check_shapes();
  ViolationReport<K> r;
  r.max_per_axiom = cap;
  detail::Ctx<K> c(h.field, h.dim());
  detail::check_bihom_mult(h, c, r);
  return {r.empty(), std::move(r)};
}

/// Both structure maps bijective.
template <Field K>
bool check_regular(const DialgebraInstance<K>& h) {
  h.check_shapes();
  return rank(h.alpha) == h.dim() && rank(h.epsilon) == h.dim();
}

}  // namespace bihom
