// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bihom/corpus.hpp"
#include "bihom/derivations.hpp"

using namespace bihom;

namespace {

constexpr std::uint64_t kSeed = 20240611;
const RationalField Q;

struct Verdict {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (s > budget_s) {
    v.ok = false;
    v.detail += (v.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  failures += !v.ok;
  std::ostringstream t;
  t << std::fixed << std::setprecision(2) << s << "s/" << budget_s << "s";
  std::cout << (v.ok ? "PASS" : "FAIL") << " " << std::setw(2) << id << " " << name << " [" << t.str() << "]"
            << (v.detail.empty() ? "" : " " + v.detail) << std::endl;
}

template <Field K>
bool nonzero_products(const DialgebraInstance<K>& h) {
  return !(h.left.is_zero() && h.right.is_zero());
}

template <Field K>
Vec<K> random_homogeneous(const K& f, Rng& r, const SuperSpace& s, int parity) {
  Vec<K> v(s.dim(), f.zero());
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (s.parity[i] == parity) v[i] = rnd::small(f, r);
  return v;
}

std::string count(std::size_t bad, std::size_t total) {
  return std::to_string(total - bad) + "/" + std::to_string(total);
}

}  // namespace

int main() {
  const auto corpus = generate_corpus(Q, kSeed, 6, 100);

  criterion(1, "superdialgebras and Hom-superdialgebras are BiHom-superdialgebras", 5, [&] {
    std::size_t bad = 0, n = 0;
    for (std::size_t k = 0; k < 50; ++k, ++n) {
      const auto& e = corpus[k];
      bad += !check_superdialgebra(e.base, 1).empty() || !check_bihom_superdialgebra(e.base, 1).empty();
    }
    for (std::size_t k = 50; k < 100; ++k, ++n) {
      auto h = hom_instance(corpus[k]);
      bad += !(h.alpha == h.epsilon) || !check_hom_superdialgebra(h, 1).empty() ||
             !check_bihom_superdialgebra(h, 1).empty();
    }
    return Verdict{bad == 0, count(bad, n)};
  });

  criterion(2, "twisting by commuting endomorphisms preserves the axioms", 10, [&] {
    Rng r(kSeed + 2);
    std::size_t bad = 0;
    for (std::size_t k = 0; k < 100; ++k) {
      const auto& e = corpus[k];
      auto a = e.endo_power(static_cast<int>(rnd::range(r, 0, 2)));
      auto b = e.endo_power(static_cast<int>(rnd::range(r, 0, 2)));
      bad += !check_bihom_superdialgebra(yau_twist(e.instance, a, b), 1).empty();
    }
    return Verdict{bad == 0, count(bad, 100)};
  });

  criterion(3, "power, Hom, untwisting and superdialgebra constructions", 10, [&] {
    std::size_t bad = 0, n = 0, regular = 0;
    for (std::size_t k = 0; k < 40; ++k) {
      const auto& e = corpus[k];
      for (int p : {0, 1, 2}) {
        ++n;
        bad += !check_bihom_superdialgebra(power_twist(e.instance, p), 1).empty();
      }
      auto h = hom_instance(e);
      for (int p : {0, 1, 2}) {
        ++n;
        bad += !check_bihom_superdialgebra(hom_to_bihom(h, e.endo_power(p)), 1).empty();
      }
      ++n;
      bad += !check_bihom_superdialgebra(superdialgebra_to_bihom(e.base, e.endo_power(1), e.endo_power(2)), 1).empty();
      if (check_regular(e.instance)) {
        ++regular;
        ++n;
        auto u = untwist_regular(e.instance);
        bad += !check_superdialgebra(u, 1).empty() || !(u == e.base);
      }
    }
    return Verdict{bad == 0 && regular > 0, count(bad, n) + ", regular " + std::to_string(regular)};
  });

  criterion(4, "quotients by ideals and kernels, projections are morphisms", 10, [&] {
    Rng r(kSeed + 4);
    std::size_t bad = 0, n = 0;
    auto probe = [&](const DialgebraInstance<RationalField>& h, const std::vector<Vec<RationalField>>& vs) {
      auto w = classify_subspace(h, vs);
      ++n;
      if (!w.is_two_sided || !w.is_graded) {
        ++bad;
        return;
      }
      auto q = quotient(h, w);
      bad += !check_bihom_superdialgebra(q.instance, 1).empty() || !morphism_check(h, q.instance, q.projection).is_morphism();
    };
    for (std::size_t k = 0; k < 40; ++k) {
      const auto& e = corpus[k];
      const auto& h = e.instance;
      const auto dim = h.dim();
      probe(h, {});
      std::vector<Vec<RationalField>> all;
      for (std::size_t i = 0; i < dim; ++i) all.push_back(basis_vector(Q, dim, i));
      probe(h, all);
      probe(h, generate_ideal(h, {random_homogeneous(Q, r, h.space, static_cast<int>(rnd::range(r, 0, 1)))}));
      for (int p : {1, 2}) probe(h, morphism_check(h, h, e.endo_power(p)).kernel);
    }
    return Verdict{bad == 0, count(bad, n)};
  });

  criterion(5, "derivation solver agrees with exhaustive search over F_5", 60, [&] {
    PrimeField f(5);
    std::size_t bad = 0, n = 0;
    for (const auto& e : generate_corpus(f, kSeed, 2, 30))
      for (int m : {0, 1})
        for (int k : {0, 1})
          for (int par : {0, 1}) {
            ++n;
            auto s = solve_dialgebra_derivations(e.instance, m, k, par);
            auto b = brute_force_derivations(e.instance, m, k, par);
            bad += !(s.dim() == b.dim() && same_span(f, e.instance.dim(), s.basis, b.basis));
          }
    return Verdict{bad == 0, count(bad, n)};
  });

  criterion(6, "brackets of derivations close", 30, [&] {
    std::size_t bad = 0, pairs = 0;
    const std::vector<std::pair<int, int>> sigs{{0, 0}, {0, 1}};
    for (std::size_t k = 0; k < 20; ++k) {
      const auto& h = corpus[k].instance;
      for (auto [m1, n1] : sigs)
        for (auto [m2, n2] : sigs)
          for (int p1 : {0, 1})
            for (int p2 : {0, 1}) {
              auto rep = verify_bracket_closure(h, solve_dialgebra_derivations(h, m1, n1, p1),
                                                solve_dialgebra_derivations(h, m2, n2, p2));
              pairs += rep.entries.size();
              bad += rep.failures();
            }
    }
    return Verdict{bad == 0 && pairs > 0, count(bad, pairs) + " brackets"};
  });

  criterion(7, "generalized derivations with unit parameters are derivations", 10, [&] {
    std::size_t bad = 0, n = 0;
    const GeneralizedParams<RationalField> one{Q.one(), Q.one(), Q.one()};
    for (const auto& e : corpus) {
      const auto& h = e.instance;
      for (int m : {0, 1})
        for (int s : {0, 1})
          for (int par : {0, 1}) {
            ++n;
            auto a = solve_generalized(h, one, m, s, par), b = solve_dialgebra_derivations(h, m, s, par);
            bad += !(a.dim() == b.dim() && same_span(Q, h.dim(), a.basis, b.basis));
          }
    }
    return Verdict{bad == 0, count(bad, n)};
  });

  criterion(8, "every derivation d gives a quasi-derivation (d, d)", 10, [&] {
    std::size_t bad = 0, n = 0;
    for (std::size_t k = 0; k < 30; ++k) {
      const auto& h = corpus[k].instance;
      for (int m : {0, 1})
        for (int s : {0, 1})
          for (int par : {0, 1})
            for (const auto& d : solve_dialgebra_derivations(h, m, s, par).basis) {
              ++n;
              bad += !satisfies_quasi(h, QuasiPair<RationalField>{d, d}, m, s);
            }
    }
    return Verdict{bad == 0, count(bad, n)};
  });

  criterion(9, "inner maps satisfy the Leibniz rule for the left product", 10, [&] {
    Rng r(kSeed + 9);
    std::size_t left_bad = 0, right_bad = 0, n = 0, used = 0;
    std::string first;
    for (const auto& e : corpus) {
      if (used == 20) break;
      if (!(e.instance.alpha == e.instance.epsilon)) continue;
      ++used;
      for (int t = 0; t < 10; ++t) {
        auto v = random_homogeneous(Q, r, e.instance.space, static_cast<int>(rnd::range(r, 0, 1)));
        auto res = ad_operator(e.instance, v);
        ++n;
        if (!res.left_leibniz && first.empty()) first = e.name + " r=" + vec_str<RationalField>(v) + " at " + res.left_witness;
        left_bad += !res.left_leibniz;
        right_bad += !res.right_leibniz;
      }
    }
    std::string d = "left " + count(left_bad, n) + ", right " + count(right_bad, n);
    if (!first.empty()) d += "; first left failure " + first;
    return Verdict{left_bad == 0 && used == 20, d};
  });

  criterion(10, "differential superalgebras give BiHom-superdialgebras", 5, [&] {
    std::size_t bad = 0, n = 0;
    for (const auto& [name, d] : differential_instances(Q, kSeed)) {
      ++n;
      bad += !check_bihom_superdialgebra(from_differential(d), 1).empty();
    }
    return Verdict{bad == 0, count(bad, n)};
  });

  criterion(11, "single structure-constant mutations are detected", 10, [&] {
    Rng r(kSeed + 11);
    std::size_t detected = 0, n = 0;
    for (const auto& e : corpus) {
      if (n == 50) break;
      if (!nonzero_products(e.instance)) continue;
      ++n;
      auto h = e.instance;
      mutate(h, r);
      detected += !check_bihom_superdialgebra(h, 1).empty();
    }
    const double rate = n ? static_cast<double>(detected) / static_cast<double>(n) : 0;
    std::ostringstream d;
    d << "detected " << detected << "/" << n << " (" << std::fixed << std::setprecision(1) << 100 * rate
      << "%, threshold 95%)";
    return Verdict{n == 50 && rate >= 0.95, d.str()};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
