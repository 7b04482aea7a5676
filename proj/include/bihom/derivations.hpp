#pragma once

// Derivation-type maps as exact nullspaces. The linear systems are
// assembled directly from structure constants; the `satisfies_*`
// predicates evaluate the defining identities on basis elements and are
// what the brute-force enumeration filters with.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bihom/constructions.hpp"

namespace bihom {

/// Where the Koszul sign (-1)^{|p||d|} sits in the Leibniz rule.
enum class SignConvention {
  /// d(p⋆q) = d(p)⋆φ(q) + (-1)^{|d||p|} φ(p)⋆d(q)
  Standard,
  /// d(p⋆q) = φ(p)⋆d(q) + (-1)^{|p||d|} d(p)⋆φ(q)
  PaperDialgebra,
};

inline std::string to_string(SignConvention c) {
  return c == SignConvention::Standard ? "standard" : "paper-dialgebra";
}

/// γ d(p⋆q) = δ d(p)⋆φ(q) ± λ φ(p)⋆d(q); (1,1,1) gives ordinary derivations.
template <Field K>
struct GeneralizedParams {
  typename K::Scalar gamma, delta, lambda;

  static GeneralizedParams ordinary(const K& f) { return {f.one(), f.one(), f.one()}; }
  friend bool operator==(const GeneralizedParams&, const GeneralizedParams&) = default;
};

struct Signature {
  int m = 0;
  int n = 0;
  int parity = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

template <Field K>
struct DerivationSpace {
  Signature signature;
  GeneralizedParams<K> params;
  SignConvention convention = SignConvention::Standard;
  std::vector<ParityMap<K>> basis;

  std::size_t dim() const { return basis.size(); }
};

template <Field K>
struct QuasiPair {
  ParityMap<K> d;
  ParityMap<K> d_prime;
};

template <Field K>
struct QuasiSpace {
  Signature signature;
  SignConvention convention = SignConvention::Standard;
  std::vector<QuasiPair<K>> basis;

  /// The d-components span QDer.
  std::vector<ParityMap<K>> projections() const {
    std::vector<ParityMap<K>> out;
    for (const auto& q : basis) out.push_back(q.d);
    return out;
  }
};

class SearchSpaceTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Field K>
Vec<K> flatten(const Matrix<K>& m) {
  Vec<K> v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

template <Field K>
std::vector<Vec<K>> flatten_all(const std::vector<ParityMap<K>>& maps) {
  std::vector<Vec<K>> out;
  for (const auto& m : maps) out.push_back(flatten(m.m));
  return out;
}

/// [d, d'] = d∘d' - (-1)^{|d||d'|} d'∘d.
template <Field K>
ParityMap<K> bracket(const ParityMap<K>& d, const ParityMap<K>& dp) {
  if (d.m.rows() != dp.m.rows() || d.m.cols() != dp.m.cols()) throw DimensionError("bracket: maps on different spaces");
  auto a = d.m * dp.m;
  auto b = dp.m * d.m;
  return {koszul_sign(d.parity, dp.parity) > 0 ? a - b : a + b, (d.parity + dp.parity) & 1};
}

namespace detail {

/// Products and structure maps a derivation must respect.
template <Field K>
struct DerivationProblem {
  K field;
  SuperSpace space;
  std::vector<const ProductTensor<K>*> products;
  Matrix<K> alpha;
  Matrix<K> epsilon;
  Matrix<K> phi;  // α^m ε^n
};

template <Field K>
DerivationProblem<K> problem(const DialgebraInstance<K>& h, int m, int n) {
  h.check_shapes();
  return {h.field, h.space, {&h.left, &h.right}, h.alpha, h.epsilon, hom_power(h.alpha, h.epsilon, m, n)};
}

template <Field K>
DerivationProblem<K> problem(const SuperalgebraInstance<K>& a, int m, int n) {
  a.check_shapes();
  return {a.field, a.space, {&a.prod}, a.alpha, a.epsilon, hom_power(a.alpha, a.epsilon, m, n)};
}

/// Weights on d(p)⋆φ(q) and φ(p)⋆d(q) for a basis element p of parity pp.
template <Field K>
std::pair<typename K::Scalar, typename K::Scalar> leibniz_weights(const GeneralizedParams<K>& g, SignConvention c,
                                                                  int pp, int dpar) {
  const bool neg = koszul_sign(pp, dpar) < 0;
  if (c == SignConvention::Standard) return {g.delta, neg ? -g.lambda : g.lambda};
  return {neg ? -g.delta : g.delta, g.lambda};
}

/// Appends rows of f∘d - d∘f = 0 in the unknowns `slots` (offset into columns).
template <Field K>
void commutation_rows(const K& f, const Matrix<K>& map, const std::vector<std::pair<std::size_t, std::size_t>>& slots,
                      std::size_t offset, std::size_t ncols, std::vector<Vec<K>>& rows) {
  const auto n = map.rows();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Vec<K> row(ncols, f.zero());
      bool any = false;
      for (std::size_t u = 0; u < slots.size(); ++u) {
        auto [x, y] = slots[u];
        // (D f - f D)_{kl} = sum_t D_kt f_tl - f_kt D_tl
        auto c = f.zero();
        if (x == k) c += map(y, l);
        if (y == l) c -= map(k, x);
        if (!c.is_zero()) {
          row[offset + u] = c;
          any = true;
        }
      }
      if (any) rows.push_back(std::move(row));
    }
}

/// Appends rows of γ D'(e_i⋆e_j) - w1 D(e_i)⋆φ(e_j) - w2 φ(e_i)⋆D(e_j) = 0.
/// D' is D itself unless `dprime_offset` is set.
template <Field K>
void leibniz_rows(const DerivationProblem<K>& pr, const GeneralizedParams<K>& g, SignConvention conv, int dpar,
                  const std::vector<std::pair<std::size_t, std::size_t>>& slots, std::size_t d_offset,
                  std::size_t dprime_offset, std::size_t ncols, std::vector<Vec<K>>& rows) {
  const auto n = pr.space.dim();
  const K& f = pr.field;
  const auto& phi = pr.phi;
  for (const auto* t : pr.products) {
    const auto& c = *t;
    for (std::size_t i = 0; i < n; ++i) {
      auto [w1, w2] = leibniz_weights(g, conv, pr.space[i], dpar);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Vec<K> row(ncols, f.zero());
          bool any = false;
          for (std::size_t u = 0; u < slots.size(); ++u) {
            auto [x, y] = slots[u];
            // γ Σ_l c_ijl D'_kl
            if (x == k && !c(i, j, y).is_zero()) {
              row[dprime_offset + u] += g.gamma * c(i, j, y);
            }
            auto coef = f.zero();
            // Σ_{a,b} D_ai φ_bj c_abk : unknown D_xy with y == i
            if (y == i && !w1.is_zero()) {
              auto s = f.zero();
              for (std::size_t b = 0; b < n; ++b)
                if (!phi(b, j).is_zero() && !c(x, b, k).is_zero()) s += phi(b, j) * c(x, b, k);
              coef += w1 * s;
            }
            // Σ_{a,b} φ_ai D_bj c_abk : unknown D_xy with y == j
            if (y == j && !w2.is_zero()) {
              auto s = f.zero();
              for (std::size_t a = 0; a < n; ++a)
                if (!phi(a, i).is_zero() && !c(a, x, k).is_zero()) s += phi(a, i) * c(a, x, k);
              coef += w2 * s;
            }
            if (!coef.is_zero()) row[d_offset + u] -= coef;
          }
          for (const auto& x : row)
            if (!x.is_zero()) {
              any = true;
              break;
            }
          if (any) rows.push_back(std::move(row));
        }
    }
  }
}

template <Field K>
std::vector<Vec<K>> solve_rows(const K& f, std::size_t ncols, const std::vector<Vec<K>>& rows) {
  Matrix<K> m(f, rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = rows[r][c];
  std::vector<Vec<K>> out;
  for (const auto& v : nullspace(m)) out.push_back(v.col(0));
  return out;
}

template <Field K>
Matrix<K> map_from_slots(const K& f, std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& slots,
                         const Vec<K>& x, std::size_t offset) {
  Matrix<K> m(f, n, n);
  for (std::size_t u = 0; u < slots.size(); ++u) m(slots[u].first, slots[u].second) = x[offset + u];
  return m;
}

template <Field K>
DerivationSpace<K> solve_problem(const DerivationProblem<K>& pr, Signature sig, const GeneralizedParams<K>& g,
                                 SignConvention conv) {
  const auto n = pr.space.dim();
  const K& f = pr.field;
  auto slots = parity_slots(pr.space, sig.parity);
  std::vector<Vec<K>> rows;
  commutation_rows(f, pr.alpha, slots, 0, slots.size(), rows);
  commutation_rows(f, pr.epsilon, slots, 0, slots.size(), rows);
  leibniz_rows(pr, g, conv, sig.parity, slots, 0, 0, slots.size(), rows);
  DerivationSpace<K> out{sig, g, conv, {}};
  for (const auto& x : solve_rows(f, slots.size(), rows))
    out.basis.push_back({map_from_slots(f, n, slots, x, 0), sig.parity});
  return out;
}

}  // namespace detail

/// α^m ε^n-derivations of a BiHom-superalgebra (H, μ, α, ε) of the given parity.
template <Field K>
DerivationSpace<K> solve_superalgebra_derivations(const SuperalgebraInstance<K>& a, int m, int n, int parity,
                                                  SignConvention conv = SignConvention::Standard) {
  return detail::solve_problem(detail::problem(a, m, n), {m, n, parity}, GeneralizedParams<K>::ordinary(a.field), conv);
}

/// α^m ε^n-derivations of a BiHom-superdialgebra: both products constrained.
template <Field K>
DerivationSpace<K> solve_dialgebra_derivations(const DialgebraInstance<K>& h, int m, int n, int parity,
                                               SignConvention conv = SignConvention::Standard) {
  return detail::solve_problem(detail::problem(h, m, n), {m, n, parity}, GeneralizedParams<K>::ordinary(h.field), conv);
}

/// (γ, δ, λ)-(α^m ε^n)-derivations; the parameters are fixed inputs.
template <Field K>
DerivationSpace<K> solve_generalized(const DialgebraInstance<K>& h, const GeneralizedParams<K>& g, int m, int n,
                                     int parity, SignConvention conv = SignConvention::Standard) {
  return detail::solve_problem(detail::problem(h, m, n), {m, n, parity}, g, conv);
}

/// Joint solutions (d, d') of the quasi-derivation conditions.
template <Field K>
QuasiSpace<K> solve_quasi(const DialgebraInstance<K>& h, int m, int n, int parity,
                          SignConvention conv = SignConvention::Standard) {
  auto pr = detail::problem(h, m, n);
  const K& f = h.field;
  auto slots = parity_slots(h.space, parity);
  const auto s = slots.size();
  std::vector<Vec<K>> rows;
  detail::commutation_rows(f, h.alpha, slots, 0, 2 * s, rows);
  detail::commutation_rows(f, h.epsilon, slots, 0, 2 * s, rows);
  detail::commutation_rows(f, h.alpha, slots, s, 2 * s, rows);
  detail::commutation_rows(f, h.epsilon, slots, s, 2 * s, rows);
  detail::leibniz_rows(pr, GeneralizedParams<K>::ordinary(f), conv, parity, slots, 0, s, 2 * s, rows);
  QuasiSpace<K> out{{m, n, parity}, conv, {}};
  for (const auto& x : detail::solve_rows(f, 2 * s, rows))
    out.basis.push_back({{detail::map_from_slots(f, h.dim(), slots, x, 0), parity},
                         {detail::map_from_slots(f, h.dim(), slots, x, s), parity}});
  return out;
}

// ---------------------------------------------------------------------------
// Direct verification of the defining identities.

namespace detail {

/// Empty when γ d'(p⋆q) = w1 d(p)⋆φ(q) + w2 φ(p)⋆d(q) and both maps commute with α, ε.
template <Field K>
std::string leibniz_failure(const DerivationProblem<K>& pr, const ParityMap<K>& d, const ParityMap<K>& dprime,
                            const GeneralizedParams<K>& g, SignConvention conv) {
  const auto n = pr.space.dim();
  const K& f = pr.field;
  for (const auto* map : {&d, &dprime}) {
    if (!(map->m * pr.alpha == pr.alpha * map->m)) return "does not commute with alpha";
    if (!(map->m * pr.epsilon == pr.epsilon * map->m)) return "does not commute with epsilon";
    GradingReport gr;
    check_map_grading(pr.space, pr.space, map->m, "d", gr, map->parity);
    if (!gr.maps.empty()) return "not homogeneous of degree " + std::to_string(map->parity);
  }
  int ti = 0;
  for (const auto* t : pr.products) {
    for (std::size_t i = 0; i < n; ++i) {
      auto p = basis_vector(f, n, i);
      auto dp = d.m.apply(p), fp = pr.phi.apply(p);
      auto [w1, w2] = leibniz_weights(g, conv, pr.space[i], d.parity);
      for (std::size_t j = 0; j < n; ++j) {
        auto q = basis_vector(f, n, j);
        auto lhs = scale<K>(g.gamma, dprime.m.apply((*t)(p, q)));
        auto rhs = add<K>(scale<K>(w1, (*t)(dp, pr.phi.apply(q))), scale<K>(w2, (*t)(fp, d.m.apply(q))));
        if (!(lhs == rhs))
          return "Leibniz rule fails for product " + std::to_string(ti) + " at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")";
      }
    }
    ++ti;
  }
  return {};
}

}  // namespace detail

template <Field K>
bool satisfies_derivation(const DialgebraInstance<K>& h, const ParityMap<K>& d, int m, int n,
                          const GeneralizedParams<K>& g, SignConvention conv = SignConvention::Standard,
                          std::string* why = nullptr) {
  auto msg = detail::leibniz_failure(detail::problem(h, m, n), d, d, g, conv);
  if (why) *why = msg;
  return msg.empty();
}

template <Field K>
bool satisfies_derivation(const DialgebraInstance<K>& h, const ParityMap<K>& d, int m, int n,
                          SignConvention conv = SignConvention::Standard, std::string* why = nullptr) {
  return satisfies_derivation(h, d, m, n, GeneralizedParams<K>::ordinary(h.field), conv, why);
}

template <Field K>
bool satisfies_superalgebra_derivation(const SuperalgebraInstance<K>& a, const ParityMap<K>& d, int m, int n,
                                       SignConvention conv = SignConvention::Standard) {
  return detail::leibniz_failure(detail::problem(a, m, n), d, d, GeneralizedParams<K>::ordinary(a.field), conv).empty();
}

template <Field K>
bool satisfies_quasi(const DialgebraInstance<K>& h, const QuasiPair<K>& q, int m, int n,
                     SignConvention conv = SignConvention::Standard) {
  if (q.d.parity != q.d_prime.parity) return false;
  return detail::leibniz_failure(detail::problem(h, m, n), q.d, q.d_prime, GeneralizedParams<K>::ordinary(h.field), conv)
      .empty();
}

/// Spans agree: equal dimension and mutual membership.
template <Field K>
bool same_span(const K& f, std::size_t dim, const std::vector<ParityMap<K>>& a, const std::vector<ParityMap<K>>& b) {
  return span_equal(f, dim * dim, flatten_all(a), flatten_all(b));
}

template <Field K>
bool in_derivation_span(const K& f, std::size_t dim, const std::vector<ParityMap<K>>& basis, const ParityMap<K>& d) {
  return in_span(f, dim * dim, flatten_all(basis), flatten(d.m));
}

// ---------------------------------------------------------------------------
// Bracket closure.

template <Field K>
struct BracketEntry {
  std::size_t i, j;
  ParityMap<K> value;
  bool satisfies = false;  // defining constraints of the target signature
  bool in_span = false;    // lies in the solved target space
  bool antisymmetric = false;
  std::optional<Vec<K>> coordinates;  // in the target basis
};

template <Field K>
struct BracketReport {
  Signature target;
  GeneralizedParams<K> target_params;
  DerivationSpace<K> target_space;
  std::vector<BracketEntry<K>> entries;

  bool holds() const {
    for (const auto& e : entries)
      if (!e.satisfies || !e.in_span || !e.antisymmetric) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += (!e.satisfies || !e.in_span || !e.antisymmetric);
    return n;
  }
};

namespace detail {

template <Field K>
BracketReport<K> bracket_report(const DialgebraInstance<K>& h, const DerivationSpace<K>& s1,
                                const DerivationSpace<K>& s2, const GeneralizedParams<K>& target_params) {
  if (s1.convention != s2.convention) throw std::invalid_argument("bracket: spaces use different sign conventions");
  const Signature target{s1.signature.m + s2.signature.m, s1.signature.n + s2.signature.n,
                         (s1.signature.parity + s2.signature.parity) & 1};
  BracketReport<K> rep{target, target_params,
                       solve_generalized(h, target_params, target.m, target.n, target.parity, s1.convention), {}};
  const K& f = h.field;
  const auto n = h.dim();
  auto target_flat = flatten_all(rep.target_space.basis);
  for (std::size_t i = 0; i < s1.basis.size(); ++i)
    for (std::size_t j = 0; j < s2.basis.size(); ++j) {
      BracketEntry<K> e{i, j, bracket(s1.basis[i], s2.basis[j]), false, false, false, std::nullopt};
      e.satisfies = satisfies_derivation(h, e.value, target.m, target.n, target_params, s1.convention);
      e.coordinates = coordinates(f, n * n, target_flat, flatten(e.value.m));
      e.in_span = e.coordinates.has_value();
      auto rev = bracket(s2.basis[j], s1.basis[i]);
      auto sign = koszul_sign(s1.signature.parity, s2.signature.parity) > 0 ? -f.one() : f.one();
      e.antisymmetric = e.value.m == sign * rev.m;
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

}  // namespace detail

/// Brackets of basis pairs from Der at (m,n) and (s,t), tested against Der at (m+s, n+t).
template <Field K>
BracketReport<K> verify_bracket_closure(const DialgebraInstance<K>& h, const DerivationSpace<K>& s1,
                                        const DerivationSpace<K>& s2) {
  return detail::bracket_report(h, s1, s2, GeneralizedParams<K>::ordinary(h.field));
}

/// Brackets of generalized derivations tested against parameters (γ+γ', δ+δ', λ+λ').
template <Field K>
BracketReport<K> verify_generalized_bracket(const DialgebraInstance<K>& h, const DerivationSpace<K>& s1,
                                            const DerivationSpace<K>& s2) {
  GeneralizedParams<K> sum{s1.params.gamma + s2.params.gamma, s1.params.delta + s2.params.delta,
                           s1.params.lambda + s2.params.lambda};
  return detail::bracket_report(h, s1, s2, sum);
}

// ---------------------------------------------------------------------------
// Inner maps ad_r for α = ε.

template <Field K>
struct AdResult {
  ParityMap<K> map;
  bool left_leibniz = false;   // ad(p⊣q) = ad(p)⊣q + p⊣ad(q)
  bool right_leibniz = false;  // ad(p⊢q) = ad(p)⊢q + p⊢ad(q)
  std::string left_witness;
  std::string right_witness;
};

/// p ↦ p⊣ε(r) - (-1)^{|p||r|} α(r)⊢p and the status of both plain Leibniz rules.
template <Field K>
AdResult<K> ad_operator(const DialgebraInstance<K>& h, const Vec<K>& r) {
  h.check_shapes();
  const auto n = h.dim();
  const K& f = h.field;
  if (r.size() != n) throw DimensionError("ad: vector has wrong length");
  if (!(h.alpha == h.epsilon)) throw PreconditionError("ad requires alpha = epsilon", "");
  const int rp = h.space.homogeneous_parity(r);
  if (rp < 0) throw PreconditionError("ad requires a homogeneous element", vec_str<K>(r));
  const auto er = h.epsilon.apply(r), ar = h.alpha.apply(r);
  AdResult<K> out;
  out.map = {Matrix<K>(f, n, n), rp};
  for (std::size_t j = 0; j < n; ++j) {
    auto p = basis_vector(f, n, j);
    auto a = h.left(p, er);
    auto b = h.right(ar, p);
    auto v = koszul_sign(h.space[j], rp) > 0 ? sub<K>(a, b) : add<K>(a, b);
    for (std::size_t i = 0; i < n; ++i) out.map.m(i, j) = v[i];
  }
  auto check = [&](const ProductTensor<K>& t, std::string& witness) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto p = basis_vector(f, n, i), q = basis_vector(f, n, j);
        auto lhs = out.map.m.apply(t(p, q));
        auto rhs = add<K>(t(out.map.m.apply(p), q), t(p, out.map.m.apply(q)));
        if (!(lhs == rhs)) {
          witness = "(" + std::to_string(i) + "," + std::to_string(j) + "): " + vec_str<K>(lhs) + " != " + vec_str<K>(rhs);
          return false;
        }
      }
    return true;
  };
  out.left_leibniz = check(h.left, out.left_witness);
  out.right_leibniz = check(h.right, out.right_witness);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle over F_p.

inline constexpr double kBruteForceLimit = 1e7;

/// Enumerates every parity-pattern matrix over F_p and keeps those satisfying
/// the defining identities; returns a basis of their span.
inline DerivationSpace<PrimeField> brute_force_derivations(const DialgebraInstance<PrimeField>& h, int m, int n,
                                                           int parity, const GeneralizedParams<PrimeField>& g,
                                                           SignConvention conv = SignConvention::Standard) {
  const auto& f = h.field;
  const auto dim = h.dim();
  auto slots = parity_slots(h.space, parity);
  const double size = std::pow(static_cast<double>(f.p), static_cast<double>(slots.size()));
  if (size > kBruteForceLimit)
    throw SearchSpaceTooLarge("brute force: " + std::to_string(f.p) + "^" + std::to_string(slots.size()) +
                              " candidates exceeds the limit");
  auto pr = detail::problem(h, m, n);
  std::vector<std::uint64_t> digits(slots.size(), 0);
  std::vector<Vec<PrimeField>> solutions;
  const auto total = static_cast<std::uint64_t>(size);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    ParityMap<PrimeField> d{Matrix<PrimeField>(f, dim, dim), parity};
    for (std::size_t u = 0; u < slots.size(); ++u) {
      d.m(slots[u].first, slots[u].second) = ModP(x % f.p, f.p);
      x /= f.p;
    }
    if (detail::leibniz_failure(pr, d, d, g, conv).empty()) solutions.push_back(flatten(d.m));
  }
  DerivationSpace<PrimeField> out{{m, n, parity}, g, conv, {}};
  for (const auto& v : span_basis(f, dim * dim, solutions)) {
    Matrix<PrimeField> mm(f, dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) mm(i, j) = v[i * dim + j];
    out.basis.push_back({mm, parity});
  }
  return out;
}

inline DerivationSpace<PrimeField> brute_force_derivations(const DialgebraInstance<PrimeField>& h, int m, int n,
                                                           int parity,
                                                           SignConvention conv = SignConvention::Standard) {
  return brute_force_derivations(h, m, n, parity, GeneralizedParams<PrimeField>::ordinary(h.field), conv);
}

}  // namespace bihom
