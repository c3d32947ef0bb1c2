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
#include "pwrec/local_recovery.hpp"

#include <algorithm>

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

constexpr int kMaxKeyResamples = 64;

std::string position_tag(char family, std::size_t pos) {
  return std::string(1, family) + std::to_string(pos);
}

}  // namespace

std::string default_alphabet() {
  std::string out;
  for (char c = 0x20; c <= 0x7e; ++c) out.push_back(c);
  return out;
}

mpz_class PasswordSpec::password_space() const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), alphabet.size(), n);
  return r;
}

std::optional<std::size_t> PasswordSpec::index_of(char c) const {
  const auto pos = alphabet.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return pos;
}

void PasswordSpec::validate() const {
  if (alphabet.empty()) throw Error(Errc::kInvalidArgument, "empty alphabet");
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::kInvalidArgument, "alphabet repeats a character");
  }
  if (t < 1 || t > n) throw Error(Errc::kInvalidArgument, "need 1 <= t <= n");
}

void PasswordSpec::validate(const Field& f) const {
  validate();
  if (password_space() >= f.q) {
    throw Error(Errc::kInvalidArgument, "passwords do not fit in the field");
  }
}

void PasswordSpec::check_password(std::string_view p) const {
  if (p.size() != n) {
    throw Error(Errc::kInvalidArgument, "password length must be " + std::to_string(n));
  }
  for (char c : p) {
    if (!index_of(c)) throw Error(Errc::kInvalidArgument, "character outside alphabet");
  }
}

bool match(std::string_view x, std::string_view y, std::size_t t) {
  if (x.size() != y.size()) throw Error(Errc::kInvalidArgument, "length mismatch");
  std::size_t same = 0;
  for (std::size_t i = 0; i < x.size(); ++i) same += x[i] == y[i];
  return same >= t;
}

mpz_class encode_password(const PasswordSpec& spec, std::string_view p) {
  spec.check_password(p);
  mpz_class v = 0;
  for (char c : p) v = v * spec.alphabet_size() + *spec.index_of(c);
  return v;
}

std::optional<std::string> decode_password(const PasswordSpec& spec,
                                           const mpz_class& v) {
  if (v < 0 || v >= spec.password_space()) return std::nullopt;
  std::string out(spec.n, ' ');
  mpz_class rest = v;
  for (std::size_t i = spec.n; i-- > 0;) {
    const unsigned long digit = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(),
                                              spec.alphabet_size());
    out[i] = spec.alphabet[digit];
  }
  return out;
}

Scalar position_coordinate(const Field& f, const MacKey& key, std::size_t pos,
                           char c) {
  return mac_to_scalar(f, key, position_tag('h', pos), std::string_view(&c, 1));
}

Scalar position_mask(const Field& f, const MacKey& key, std::size_t pos, char c) {
  return mac_to_scalar(f, key, position_tag('g', pos), std::string_view(&c, 1));
}

LocalBlob local_register_with_key(const PasswordSpec& spec, const Field& field,
                                  std::string_view p, const MacKey& v, Rng& rng) {
  spec.validate(field);
  const mpz_class secret = encode_password(spec, p);

  std::vector<Scalar> xs;
  xs.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    xs.push_back(position_coordinate(field, v, i + 1, p[i]));
  }
  const bool zero = std::any_of(xs.begin(), xs.end(),
                                [](const Scalar& x) { return x.value == 0; });
  if (zero || has_duplicates(xs)) {
    throw Error(Errc::kCollisionExhausted, "mac coordinates collide under this key");
  }

  const Polynomial poly = random_polynomial(field, Scalar{secret}, spec.t - 1, rng);
  LocalBlob blob{v, {}, spec, field};
  blob.offsets.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const Scalar s = evaluate(field, poly, xs[i]);
    blob.offsets.push_back(sub(field, s, position_mask(field, v, i + 1, p[i])));
  }
  return blob;
}

LocalBlob local_register(const PasswordSpec& spec, const Field& field,
                         std::string_view p, Rng& rng) {
  spec.validate(field);
  spec.check_password(p);
  for (int attempt = 0; attempt < kMaxKeyResamples; ++attempt) {
    const MacKey v = MacKey::random(rng);
    try {
      return local_register_with_key(spec, field, p, v, rng);
    } catch (const Error& e) {
      if (e.code() != Errc::kCollisionExhausted) throw;
    }
  }
  throw Error(Errc::kCollisionExhausted,
              "no collision-free mac key found; field too small");
}

LocalRecoverResult local_recover(const LocalBlob& blob, std::string_view guess) {
  const PasswordSpec& spec = blob.spec;
  const Field& f = blob.field;
  spec.check_password(guess);
  if (blob.offsets.size() != spec.n) {
    throw Error(Errc::kMalformed, "blob offset count does not match n");
  }

  // Candidate points as seen through the guess.
  std::vector<Scalar> xs(spec.n), ys(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    xs[i] = position_coordinate(f, blob.v, i + 1, guess[i]);
    ys[i] = add(f, blob.offsets[i], position_mask(f, blob.v, i + 1, guess[i]));
  }

  LocalRecoverResult result;
  std::vector<Scalar> sub_x(spec.t), sub_y(spec.t);
  result.subsets_tried = for_each_subset(
      spec.n, spec.t, [&](std::span<const std::size_t> idx) {
        for (std::size_t j = 0; j < spec.t; ++j) {
          sub_x[j] = xs[idx[j]];
          sub_y[j] = ys[idx[j]];
        }
        if (has_duplicates(sub_x)) return false;
        auto candidate =
            decode_password(spec, interpolate_at(f, sub_x, sub_y, Scalar{0}).value);
        if (!candidate || !match(*candidate, guess, spec.t)) return false;

        // The points the candidate itself induces must put at least t on P'.
        std::size_t on_curve = 0;
        for (std::size_t i = 0; i < spec.n && on_curve < spec.t; ++i) {
          const char c = (*candidate)[i];
          const Scalar x = position_coordinate(f, blob.v, i + 1, c);
          const Scalar y = add(f, blob.offsets[i], position_mask(f, blob.v, i + 1, c));
          if (interpolate_at(f, sub_x, sub_y, x) == y) ++on_curve;
        }
        if (on_curve < spec.t) return false;
        result.password = std::move(*candidate);
        return true;
      });
  return result;
}

AssumptionInstance sample_assumption_instance(std::size_t n, std::size_t m,
                                              std::size_t t, const Scalar& alpha,
                                              const Field& field, Rng& rng) {
  if (n == 0 || m == 0 || t == 0) {
    throw Error(Errc::kInvalidArgument, "n, m and t must be positive");
  }
  const std::size_t total = n * m;
  if (field.q <= mpz_class(static_cast<unsigned long>(total))) {
    throw Error(Errc::kInvalidArgument, "field too small for n*m distinct points");
  }

  AssumptionInstance inst;
  inst.polynomial = random_polynomial(field, alpha, t - 1, rng);

  // nm distinct nonzero abscissas.
  std::vector<Scalar> xs;
  xs.reserve(total);
  while (xs.size() < total) {
    Scalar x = random_nonzero_scalar(field, rng);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }

  // Random partition into n groups of m; one random member of each group is
  // the on-polynomial index, which is the same as choosing S uniformly under
  // the one-per-subset constraint.
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  for (std::size_t i = total; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(static_cast<std::uint64_t>(i))]);
  }
  inst.subsets.resize(n);
  inst.on_polynomial.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    inst.on_polynomial[s] = rng.below(static_cast<std::uint64_t>(m));
    for (std::size_t j = 0; j < m; ++j) {
      const Scalar& x = xs[order[s * m + j]];
      Scalar y = j == inst.on_polynomial[s] ? evaluate(field, inst.polynomial, x)
                                            : random_scalar(field, rng);
      inst.subsets[s].push_back({x, y});
    }
  }
  return inst;
}

}  // namespace pwrec
