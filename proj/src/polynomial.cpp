// Copyright 2026 The pwrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "pwrec/polynomial.hpp"

#include <numeric>

#include "pwrec/error.hpp"

namespace pwrec {

Polynomial random_polynomial(const Field& f, const Scalar& constant,
                             std::size_t degree, Rng& rng) {
  Polynomial poly;
  poly.reserve(degree + 1);
  poly.push_back(make_scalar(f, constant.value));
  for (std::size_t i = 0; i < degree; ++i) poly.push_back(random_scalar(f, rng));
  return poly;
}

Scalar evaluate(const Field& f, const Polynomial& poly, const Scalar& x) {
  Scalar acc{0};
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    acc = add(f, mul(f, acc, x), *it);
  }
  return acc;
}

Scalar lagrange_coeff(const Field& f, std::span<const Scalar> xs,
                      const Scalar& x0, std::size_t i) {
  if (i >= xs.size()) throw Error(Errc::kInvalidArgument, "index out of range");
  mpz_class num = 1;
  mpz_class den = 1;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j == i) continue;
    num *= x0.value - xs[j].value;
    den *= xs[i].value - xs[j].value;
    num %= f.q;
    den %= f.q;
  }
  Scalar d = make_scalar(f, den);
  if (d.value == 0) {
    throw Error(Errc::kDuplicateCoordinate, "duplicate interpolation coordinate");
  }
  return mul(f, make_scalar(f, num), inv(f, d));
}

Scalar interpolate_at(const Field& f, std::span<const Scalar> xs,
                      std::span<const Scalar> ys, const Scalar& x0) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw Error(Errc::kInvalidArgument, "interpolation needs matching points");
  }
  Scalar acc{0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc = add(f, acc, mul(f, lagrange_coeff(f, xs, x0, i), ys[i]));
  }
  return acc;
}

bool has_duplicates(std::span<const Scalar> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) return true;
    }
  }
  return false;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t for_each_subset(
    std::size_t n, std::size_t k,
    const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (k == 0 || k > n) return 0;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t visited = 0;
  for (;;) {
    ++visited;
    if (visit(idx)) return visited;
    // Advance to the next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return visited;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace pwrec
