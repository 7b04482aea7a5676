#pragma once

// Algebra-producing operations: Yau-type twists and their corollaries,
// the associative and differential embeddings, subalgebras and ideals,
// quotients, and morphism verification.

#include <optional>
#include <string>
#include <vector>

#include "bihom/axioms.hpp"

namespace bihom {

/// A construction's hypothesis failed; `name` identifies the hypothesis.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string name, std::string witness)
      : std::invalid_argument(name + (witness.empty() ? "" : ": " + witness)),
        name_(std::move(name)),
        witness_(std::move(witness)) {}
  const std::string& name() const { return name_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string name_;
  std::string witness_;
};

namespace detail {

template <Field K>
std::string first_violation(const ViolationReport<K>& r) {
  if (r.empty()) return {};
  const auto& v = r.violations.front();
  std::string idx;
  for (std::size_t i = 0; i < v.indices.size(); ++i) idx += (i ? "," : "") + std::to_string(v.indices[i]);
  return v.axiom + " at (" + idx + "): " + vec_str<K>(v.lhs) + " != " + vec_str<K>(v.rhs);
}

template <Field K>
void require_empty(const ViolationReport<K>& r, const std::string& name) {
  if (!r.empty()) throw PreconditionError(name, first_violation(r));
}

template <Field K>
void require_commute(const Matrix<K>& f, const Matrix<K>& g, const std::string& name) {
  auto fg = f * g, gf = g * f;
  for (std::size_t j = 0; j < f.cols(); ++j)
    if (!(fg.col(j) == gf.col(j)))
      throw PreconditionError(name, "column " + std::to_string(j) + ": " + vec_str<K>(fg.col(j)) +
                                        " != " + vec_str<K>(gf.col(j)));
}

template <Field K>
void require_even(const SuperSpace& s, const Matrix<K>& m, const std::string& name) {
  GradingReport r;
  check_map_grading(s, s, m, name, r);
  if (!r.maps.empty())
    throw PreconditionError(name + " is not even",
                            "entry (" + std::to_string(r.maps[0].row) + "," + std::to_string(r.maps[0].col) + ")");
}

/// f is multiplicative for both products of h.
template <Field K>
void require_endomorphism(const DialgebraInstance<K>& h, const Matrix<K>& f, const std::string& name) {
  Ctx<K> c(h.field, h.dim());
  ViolationReport<K> r;
  r.max_per_axiom = 1;
  check_multiplicative_map(c, name + ".left", f, h.left, r);
  check_multiplicative_map(c, name + ".right", f, h.right, r);
  require_empty(r, name + " is not an endomorphism");
}

template <Field K>
void require_square(const DialgebraInstance<K>& h, const Matrix<K>& m, const std::string& name) {
  if (m.rows() != h.dim() || m.cols() != h.dim())
    throw DimensionError(name + " must be " + std::to_string(h.dim()) + "x" + std::to_string(h.dim()));
}

}  // namespace detail

/// (H, ⊣∘(a⊗e), ⊢∘(a⊗e), α∘a, ε∘e) with no hypothesis checks.
template <Field K>
DialgebraInstance<K> twist_unchecked(const DialgebraInstance<K>& h, const Matrix<K>& a, const Matrix<K>& e) {
  return {h.field, h.space, h.left.precompose(a, e), h.right.precompose(a, e), h.alpha * a, h.epsilon * e};
}

/// Twist of a BiHom-superdialgebra by two commuting endomorphisms that also
/// commute with both structure maps.
template <Field K>
DialgebraInstance<K> yau_twist(const DialgebraInstance<K>& h, const Matrix<K>& a, const Matrix<K>& e) {
  h.check_shapes();
  detail::require_square(h, a, "alpha'");
  detail::require_square(h, e, "epsilon'");
  detail::require_empty(check_bihom_superdialgebra(h, 1), "input is not a BiHom-superdialgebra");
  detail::require_even(h.space, a, "alpha'");
  detail::require_even(h.space, e, "epsilon'");
  detail::require_endomorphism(h, a, "alpha'");
  detail::require_endomorphism(h, e, "epsilon'");
  detail::require_commute(a, e, "alpha' and epsilon' do not commute");
  detail::require_commute(a, h.alpha, "alpha' does not commute with alpha");
  detail::require_commute(a, h.epsilon, "alpha' does not commute with epsilon");
  detail::require_commute(e, h.alpha, "epsilon' does not commute with alpha");
  detail::require_commute(e, h.epsilon, "epsilon' does not commute with epsilon");
  return twist_unchecked(h, a, e);
}

/// (H, ⊣∘(α^n⊗ε^n), ⊢∘(α^n⊗ε^n), α^{n+1}, ε^{n+1}) for multiplicative H.
template <Field K>
DialgebraInstance<K> power_twist(const DialgebraInstance<K>& h, int n) {
  if (n < 0) throw std::invalid_argument("power_twist: n must be non-negative");
  auto m = check_multiplicative(h, 1);
  detail::require_empty(m.report, "input is not multiplicative");
  detail::require_commute(h.alpha, h.epsilon, "structure maps do not commute");
  return twist_unchecked(h, matrix_power(h.alpha, n), matrix_power(h.epsilon, n));
}

/// From a Hom-superdialgebra (H, ⊣, ⊢, α) and an endomorphism e commuting with α:
/// (H, ⊣∘(α⊗e), ⊢∘(α⊗e), α², α∘e).
template <Field K>
DialgebraInstance<K> hom_to_bihom(const DialgebraInstance<K>& h, const Matrix<K>& e) {
  h.check_shapes();
  detail::require_square(h, e, "epsilon");
  detail::require_empty(check_hom_superdialgebra(h, 1), "input is not a Hom-superdialgebra");
  detail::require_even(h.space, e, "epsilon");
  detail::require_endomorphism(h, e, "epsilon");
  detail::require_commute(e, h.alpha, "epsilon does not commute with alpha");
  DialgebraInstance<K> base = h;
  base.epsilon = h.alpha;
  return twist_unchecked(base, h.alpha, e);
}

/// Products ∘(α⁻¹⊗ε⁻¹) with identity structure maps, for regular H.
template <Field K>
DialgebraInstance<K> untwist_regular(const DialgebraInstance<K>& h) {
  h.check_shapes();
  auto ai = inverse(h.alpha);
  if (!ai) throw SingularMap("untwist_regular: alpha is singular");
  auto ei = inverse(h.epsilon);
  if (!ei) throw SingularMap("untwist_regular: epsilon is singular");
  detail::require_empty(check_bihom_superdialgebra(h, 1), "input is not a BiHom-superdialgebra");
  auto out = twist_unchecked(h, *ai, *ei);
  out.alpha = Matrix<K>::identity(h.field, h.dim());
  out.epsilon = Matrix<K>::identity(h.field, h.dim());
  return out;
}

/// (D, ⊣∘(a⊗e), ⊢∘(a⊗e), a, e) for a superdialgebra D and commuting endomorphisms a, e.
template <Field K>
DialgebraInstance<K> superdialgebra_to_bihom(const DialgebraInstance<K>& d, const Matrix<K>& a, const Matrix<K>& e) {
  d.check_shapes();
  detail::require_square(d, a, "alpha");
  detail::require_square(d, e, "epsilon");
  detail::require_empty(check_superdialgebra(d, 1), "input is not a superdialgebra");
  detail::require_even(d.space, a, "alpha");
  detail::require_even(d.space, e, "epsilon");
  detail::require_endomorphism(d, a, "alpha");
  detail::require_endomorphism(d, e, "epsilon");
  detail::require_commute(a, e, "alpha and epsilon do not commute");
  return {d.field, d.space, d.left.precompose(a, e), d.right.precompose(a, e), a, e};
}

/// ⊣ = ⊢ = · for a BiHom-associative superalgebra.
template <Field K>
DialgebraInstance<K> from_associative(const SuperalgebraInstance<K>& a) {
  a.check_shapes();
  detail::require_empty(check_bihom_assoc_superalgebra(a, 1), "input is not a BiHom-associative superalgebra");
  return {a.field, a.space, a.prod, a.prod, a.alpha, a.epsilon};
}

/// Status of each hypothesis of the differential construction.
template <Field K>
std::vector<std::pair<std::string, std::string>> differential_failures(const DifferentialInstance<K>& dd) {
  const auto& A = dd.base;
  const auto& d = dd.d.m;
  const auto n = A.dim();
  const K& f = A.field;
  std::vector<std::pair<std::string, std::string>> fails;
  auto r = check_bihom_assoc_superalgebra(A, 1);
  if (!r.empty()) fails.emplace_back("base is not a BiHom-associative superalgebra", detail::first_violation(r));
  GradingReport g;
  check_map_grading(A.space, A.space, d, "d", g, dd.d.parity);
  if (!g.maps.empty())
    fails.emplace_back("d is not homogeneous of degree " + std::to_string(dd.d.parity),
                       "entry (" + std::to_string(g.maps[0].row) + "," + std::to_string(g.maps[0].col) + ")");
  if (!(d * d).is_zero()) fails.emplace_back("d^2 != 0", (d * d).str());
  auto comm = [&](const Matrix<K>& x, const std::string& name) {
    if (!(d * x == x * d)) fails.emplace_back("d does not commute with " + name, "");
  };
  comm(A.alpha, "alpha");
  comm(A.epsilon, "epsilon");
  if (!(A.alpha * A.alpha == A.alpha)) fails.emplace_back("alpha is not idempotent", "");
  if (!(A.epsilon * A.epsilon == A.epsilon)) fails.emplace_back("epsilon is not idempotent", "");
  // d(p·q) = dp·q + (-1)^{|p||d|} p·dq
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ei = basis_vector(f, n, i), ej = basis_vector(f, n, j);
      auto lhs = d.apply(A.prod(ei, ej));
      auto t2 = A.prod(ei, d.apply(ej));
      if (koszul_sign(A.space[i], dd.d.parity) < 0) t2 = scale<K>(-f.one(), t2);
      auto rhs = add<K>(A.prod(d.apply(ei), ej), t2);
      if (!(lhs == rhs)) {
        fails.emplace_back("Leibniz rule fails",
                           "(" + std::to_string(i) + "," + std::to_string(j) + "): " + vec_str<K>(lhs) + " != " + vec_str<K>(rhs));
        return fails;
      }
    }
  return fails;
}

/// p ⊣ q = α(p)·dq, p ⊢ q = dp·ε(q).
template <Field K>
DialgebraInstance<K> from_differential(const DifferentialInstance<K>& dd) {
  dd.base.check_shapes();
  auto fails = differential_failures(dd);
  if (!fails.empty()) throw PreconditionError(fails.front().first, fails.front().second);
  const auto& A = dd.base;
  DialgebraInstance<K> out{A.field, A.space, A.prod.precompose(A.alpha, dd.d.m), A.prod.precompose(dd.d.m, A.epsilon),
                           A.alpha, A.epsilon};
  auto g = check_grading(out);
  if (!g.tensors.empty())
    throw PreconditionError("odd differential produces non-even products",
                            g.tensors[0].tensor + "(" + std::to_string(g.tensors[0].i) + "," +
                                std::to_string(g.tensors[0].j) + "," + std::to_string(g.tensors[0].k) + ")");
  return out;
}

/// Isomorphic copy of h along an invertible even change of basis P
/// (x ⋆' y = P(P⁻¹x ⋆ P⁻¹y), maps P α P⁻¹).
template <Field K>
DialgebraInstance<K> transport(const DialgebraInstance<K>& h, const Matrix<K>& p) {
  auto pi = inverse(p);
  if (!pi) throw SingularMap("transport: change of basis is singular");
  DialgebraInstance<K> out{h.field, h.space, ProductTensor<K>(h.field, h.dim()), ProductTensor<K>(h.field, h.dim()),
                           p * h.alpha * *pi, p * h.epsilon * *pi};
  auto l = h.left.precompose(*pi, *pi), r = h.right.precompose(*pi, *pi);
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j) {
      auto lv = p.apply(l.basis_product(i, j)), rv = p.apply(r.basis_product(i, j));
      for (std::size_t k = 0; k < h.dim(); ++k) {
        out.left(i, j, k) = lv[k];
        out.right(i, j, k) = rv[k];
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Subalgebras, ideals, quotients, morphisms.

template <Field K>
struct IdealWitness {
  std::vector<Vec<K>> basis;  // independent spanning vectors of T
  bool is_graded = false;
  bool is_subalgebra = false;
  bool is_left = false;
  bool is_right = false;
  bool is_two_sided = false;
  std::string failure;  // first offending condition, empty when two-sided
};

namespace detail {

/// Homogeneous components of each vector.
template <Field K>
std::vector<Vec<K>> homogeneous_parts(const SuperSpace& s, const K& f, const std::vector<Vec<K>>& vs) {
  std::vector<Vec<K>> out;
  for (const auto& v : vs)
    for (int par : {0, 1}) {
      Vec<K> w(v.size(), f.zero());
      for (std::size_t i = 0; i < v.size(); ++i)
        if (s[i] == par) w[i] = v[i];
      if (!is_zero_vector<K>(w)) out.push_back(std::move(w));
    }
  return out;
}

}  // namespace detail

template <Field K>
IdealWitness<K> classify_subspace(const DialgebraInstance<K>& h, const std::vector<Vec<K>>& spanning) {
  h.check_shapes();
  const auto n = h.dim();
  const K& f = h.field;
  for (std::size_t i = 0; i < spanning.size(); ++i)
    if (spanning[i].size() != n) throw DimensionError("spanning vector " + std::to_string(i) + " has wrong length");
  IdealWitness<K> w;
  w.basis = span_basis(f, n, spanning);
  const auto r = w.basis.size();
  auto member = [&](const Vec<K>& v) {
    if (is_zero_vector<K>(v)) return true;
    auto ext = w.basis;
    ext.push_back(v);
    return span_rank(f, n, ext) == r;
  };
  auto fail = [&](const std::string& msg) {
    if (w.failure.empty()) w.failure = msg;
  };

  w.is_graded = true;
  for (const auto& part : detail::homogeneous_parts(h.space, f, w.basis))
    if (!member(part)) {
      w.is_graded = false;
      break;
    }

  std::vector<Vec<K>> hb;
  for (std::size_t i = 0; i < n; ++i) hb.push_back(basis_vector(f, n, i));

  bool sub = true;
  for (std::size_t a = 0; a < r && sub; ++a) {
    if (!member(h.alpha.apply(w.basis[a]))) sub = false, fail("alpha(T) not in T at basis vector " + std::to_string(a));
    else if (!member(h.epsilon.apply(w.basis[a])))
      sub = false, fail("epsilon(T) not in T at basis vector " + std::to_string(a));
  }
  for (std::size_t a = 0; a < r && sub; ++a)
    for (std::size_t b = 0; b < r && sub; ++b)
      if (!member(h.left(w.basis[a], w.basis[b])) || !member(h.right(w.basis[a], w.basis[b])))
        sub = false, fail("T is not closed under the products at pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
  w.is_subalgebra = sub;

  bool left = sub, right = sub;
  for (std::size_t a = 0; a < r && left; ++a)
    for (std::size_t j = 0; j < n && left; ++j)
      if (!member(h.left(w.basis[a], hb[j])) || !member(h.right(w.basis[a], hb[j])))
        left = false, fail("T*H not in T at (T" + std::to_string(a) + ", e" + std::to_string(j) + ")");
  for (std::size_t a = 0; a < r && right; ++a)
    for (std::size_t j = 0; j < n && right; ++j)
      if (!member(h.left(hb[j], w.basis[a])) || !member(h.right(hb[j], w.basis[a])))
        right = false, fail("H*T not in T at (e" + std::to_string(j) + ", T" + std::to_string(a) + ")");
  w.is_left = left;
  w.is_right = right;
  w.is_two_sided = left && right;
  if (w.is_two_sided) w.failure.clear();
  return w;
}

/// Smallest subspace containing `seeds` that is stable under α, ε and
/// absorbs both products from both sides.
template <Field K>
std::vector<Vec<K>> generate_ideal(const DialgebraInstance<K>& h, const std::vector<Vec<K>>& seeds) {
  const auto n = h.dim();
  const K& f = h.field;
  auto basis = span_basis(f, n, seeds);
  for (std::size_t cursor = 0; cursor < basis.size(); ++cursor) {
    const auto v = basis[cursor];
    std::vector<Vec<K>> images{h.alpha.apply(v), h.epsilon.apply(v)};
    for (std::size_t j = 0; j < n; ++j) {
      auto e = basis_vector(f, n, j);
      images.push_back(h.left(v, e));
      images.push_back(h.left(e, v));
      images.push_back(h.right(v, e));
      images.push_back(h.right(e, v));
    }
    for (auto& x : images) {
      if (is_zero_vector<K>(x)) continue;
      auto ext = basis;
      ext.push_back(x);
      if (span_rank(f, n, ext) > basis.size()) basis.push_back(std::move(x));
    }
  }
  return basis;
}

template <Field K>
IdealWitness<K> ideal_sum(const DialgebraInstance<K>& h, const IdealWitness<K>& t1, const IdealWitness<K>& t2) {
  auto all = t1.basis;
  all.insert(all.end(), t2.basis.begin(), t2.basis.end());
  return classify_subspace(h, all);
}

template <Field K>
struct QuotientResult {
  DialgebraInstance<K> instance;
  Matrix<K> projection;  // dim(H/T) x dim(H)
  std::vector<Vec<K>> representatives;  // lifts of the quotient basis
};

template <Field K>
QuotientResult<K> quotient(const DialgebraInstance<K>& h, const IdealWitness<K>& t) {
  h.check_shapes();
  if (!t.is_two_sided) throw PreconditionError("subspace is not a two-sided ideal", t.failure);
  if (!t.is_graded) throw PreconditionError("ideal is not graded", "not spanned by homogeneous vectors");
  const auto n = h.dim();
  const K& f = h.field;
  auto tb = span_basis(f, n, detail::homogeneous_parts(h.space, f, t.basis));
  auto full = extend_to_basis(f, tb, n);
  const auto q = n - tb.size();
  auto binv = *inverse(Matrix<K>::from_columns(f, n, full));
  Matrix<K> proj(f, q, n);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t j = 0; j < n; ++j) proj(a, j) = binv(tb.size() + a, j);
  std::vector<Vec<K>> reps(full.begin() + static_cast<std::ptrdiff_t>(tb.size()), full.end());
  std::vector<int> parity;
  for (const auto& r : reps) parity.push_back(h.space.homogeneous_parity(r));
  SuperSpace qs(parity);
  DialgebraInstance<K> out{f, qs, ProductTensor<K>(f, q), ProductTensor<K>(f, q), Matrix<K>(f, q, q), Matrix<K>(f, q, q)};
  for (std::size_t a = 0; a < q; ++a) {
    auto ai = proj.apply(h.alpha.apply(reps[a]));
    auto ei = proj.apply(h.epsilon.apply(reps[a]));
    for (std::size_t k = 0; k < q; ++k) {
      out.alpha(k, a) = ai[k];
      out.epsilon(k, a) = ei[k];
    }
    for (std::size_t b = 0; b < q; ++b) {
      auto l = proj.apply(h.left(reps[a], reps[b]));
      auto r = proj.apply(h.right(reps[a], reps[b]));
      for (std::size_t k = 0; k < q; ++k) {
        out.left(a, b, k) = l[k];
        out.right(a, b, k) = r[k];
      }
    }
  }
  return {std::move(out), std::move(proj), std::move(reps)};
}

template <Field K>
struct MorphismWitness {
  Matrix<K> g;
  bool even = false;
  bool commutes_alpha = false;
  bool commutes_epsilon = false;
  bool left_compatible = false;
  bool right_compatible = false;
  std::vector<Vec<K>> kernel;
  std::vector<Vec<K>> image;
  IdealWitness<K> kernel_class;
  IdealWitness<K> image_class;

  bool is_morphism() const { return even && commutes_alpha && commutes_epsilon && left_compatible && right_compatible; }
};

template <Field K>
MorphismWitness<K> morphism_check(const DialgebraInstance<K>& h1, const DialgebraInstance<K>& h2, const Matrix<K>& g) {
  h1.check_shapes();
  h2.check_shapes();
  if (g.rows() != h2.dim() || g.cols() != h1.dim())
    throw DimensionError("morphism matrix must be " + std::to_string(h2.dim()) + "x" + std::to_string(h1.dim()));
  const K& f = h1.field;
  const auto n = h1.dim();
  MorphismWitness<K> w;
  w.g = g;
  GradingReport gr;
  check_map_grading(h2.space, h1.space, g, "g", gr);
  w.even = gr.maps.empty();
  w.commutes_alpha = g * h1.alpha == h2.alpha * g;
  w.commutes_epsilon = g * h1.epsilon == h2.epsilon * g;
  w.left_compatible = w.right_compatible = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ei = basis_vector(f, n, i), ej = basis_vector(f, n, j);
      auto gi = g.apply(ei), gj = g.apply(ej);
      if (!(h2.left(gi, gj) == g.apply(h1.left(ei, ej)))) w.left_compatible = false;
      if (!(h2.right(gi, gj) == g.apply(h1.right(ei, ej)))) w.right_compatible = false;
    }
  for (const auto& v : nullspace(g)) w.kernel.push_back(v.col(0));
  auto r = rref(g);
  for (auto p : r.pivots) w.image.push_back(g.col(p));
  w.kernel_class = classify_subspace(h1, w.kernel);
  w.image_class = classify_subspace(h2, w.image);
  return w;
}

}  // namespace bihom
