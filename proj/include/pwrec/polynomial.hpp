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
#ifndef PWREC_POLYNOMIAL_HPP_
#define PWREC_POLYNOMIAL_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pwrec/group.hpp"

namespace pwrec {

// Coefficients a_0 .. a_{d}, lowest degree first.
using Polynomial = std::vector<Scalar>;

Polynomial random_polynomial(const Field& f, const Scalar& constant,
                             std::size_t degree, Rng& rng);
Scalar evaluate(const Field& f, const Polynomial& poly, const Scalar& x);

// lambda_{x0,i} = prod_{j != i} (x0 - x_j) / (x_i - x_j) mod q.
// Throws Errc::kDuplicateCoordinate if two coordinates coincide.
Scalar lagrange_coeff(const Field& f, std::span<const Scalar> xs,
                      const Scalar& x0, std::size_t i);

// Value at x0 of the unique polynomial of degree < |xs| through (xs, ys).
Scalar interpolate_at(const Field& f, std::span<const Scalar> xs,
                      std::span<const Scalar> ys, const Scalar& x0);

bool has_duplicates(std::span<const Scalar> xs);

std::uint64_t binomial(std::size_t n, std::size_t k);

// Visits the k-subsets of {0..n-1} in lexicographic order. The visitor
// returns true to stop early. Returns the number of subsets visited.
std::uint64_t for_each_subset(
    std::size_t n, std::size_t k,
    const std::function<bool(std::span<const std::size_t>)>& visit);

}  // namespace pwrec

#endif  // PWREC_POLYNOMIAL_HPP_
