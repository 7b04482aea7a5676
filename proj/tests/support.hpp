#pragma once

#include <gtest/gtest.h>

#include <initializer_list>
#include <random>

#include "bihom/corpus.hpp"
#include "bihom/derivations.hpp"

namespace bihom::test {

inline const RationalField Q{};

template <Field K = RationalField>
Matrix<K> mat(std::initializer_list<std::initializer_list<long long>> rows, K f = K{}) {
  const auto r = rows.size();
  const auto c = rows.begin()->size();
  Matrix<K> m(f, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (auto x : row) m(i, j++) = f.from_int(x);
    ++i;
  }
  return m;
}

template <Field K = RationalField>
Vec<K> vec(std::initializer_list<long long> xs, K f = K{}) {
  Vec<K> v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

template <Field K>
Matrix<K> scalar_map(const K& f, std::size_t n, long long s) {
  return f.from_int(s) * Matrix<K>::identity(f, n);
}

/// 1-dim instance e⊣e = l·e, e⊢e = r·e with scalar maps.
template <Field K = RationalField>
DialgebraInstance<K> one_dim(long long l, long long r, long long a = 1, long long e = 1, K f = K{}) {
  auto h = DialgebraInstance<K>::zero(f, SuperSpace::even(1));
  h.left(0, 0, 0) = f.from_int(l);
  h.right(0, 0, 0) = f.from_int(r);
  h.alpha = scalar_map(f, 1, a);
  h.epsilon = scalar_map(f, 1, e);
  return h;
}

template <Field K>
Matrix<K> random_matrix(const K& f, std::mt19937_64& g, std::size_t r, std::size_t c, int lo = -4, int hi = 4) {
  Matrix<K> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(lo + static_cast<int>(g() % static_cast<unsigned>(hi - lo + 1)));
  return m;
}

template <Field K>
Vec<K> random_vec(const K& f, std::mt19937_64& g, std::size_t n) {
  return random_matrix(f, g, n, 1).col(0);
}

inline constexpr std::uint64_t kSeed = 20240611;

}  // namespace bihom::test
