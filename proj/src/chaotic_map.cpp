/*
 * Copyright 2026 The chebauth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chebauth/chaotic_map.hpp"

#include <bit>
#include <stdexcept>

namespace chebauth {

namespace {

mpz_class import_be(ByteView bytes) {
  mpz_class out;
  if (!bytes.empty()) {
    mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return out;
}

}  // namespace

PrimeField::PrimeField(const mpz_class& modulus)
    : modulus_(modulus),
      byte_width_((mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8) {}

std::shared_ptr<const PrimeField> PrimeField::create(const mpz_class& modulus) {
  if (modulus <= 3) {
    throw std::invalid_argument("field modulus must be greater than 3");
  }
  if (mpz_probab_prime_p(modulus.get_mpz_t(), 50) == 0) {
    throw std::invalid_argument("field modulus is not prime: " +
                                modulus.get_str(10));
  }
  return std::shared_ptr<const PrimeField>(new PrimeField(modulus));
}

std::shared_ptr<const PrimeField> PrimeField::from_decimal(std::string_view p) {
  if (p.empty() || p.find_first_not_of("0123456789") != std::string_view::npos) {
    throw std::invalid_argument("modulus must be a decimal integer, got '" +
                                std::string(p) + "'");
  }
  return create(mpz_class(std::string(p), 10));
}

std::shared_ptr<const PrimeField> PrimeField::default_field() {
  static const std::shared_ptr<const PrimeField> field =
      from_decimal(kDefaultPrimeDecimal);
  return field;
}

FieldElement PrimeField::element(const mpz_class& value) const {
  return FieldElement(shared_from_this(), value);
}

FieldElement PrimeField::element(unsigned long value) const {
  return FieldElement(shared_from_this(), mpz_class(value));
}

FieldElement::FieldElement(std::shared_ptr<const PrimeField> field,
                           const mpz_class& value)
    : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("field element without a field");
  mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), field_->modulus().get_mpz_t());
}

Bytes FieldElement::to_bytes() const {
  const std::size_t width = field_->byte_width();
  Bytes out(width, 0);
  std::size_t count = 0;
  // mpz_export writes the minimal number of bytes; right-align them.
  Bytes tmp((mpz_sizeinbase(value_.get_mpz_t(), 2) + 7) / 8 + 1, 0);
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, value_.get_mpz_t());
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(count),
            out.end() - static_cast<std::ptrdiff_t>(count));
  return out;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.value_ == b.value_ &&
         (a.field_ == b.field_ || a.field_->modulus() == b.field_->modulus());
}

FieldElement cheb_eval(std::uint64_t n, const FieldElement& x) {
  const mpz_class& p = x.field().modulus();
  if (n == 0) return FieldElement(x.field_ptr(), 1);

  // Ladder invariant: lo = T_k(x), hi = T_{k+1}(x), with k the prefix of n
  // consumed so far. Starting from k = 1 skips the leading one bit.
  mpz_t lo, hi, cross, square;
  mpz_init_set(lo, x.value().get_mpz_t());
  mpz_init(hi);
  mpz_init(cross);
  mpz_init(square);

  // T_2 = 2x^2 - 1
  mpz_mul(hi, lo, lo);
  mpz_mul_2exp(hi, hi, 1);
  mpz_sub_ui(hi, hi, 1);
  mpz_mod(hi, hi, p.get_mpz_t());

  const int top = 63 - std::countl_zero(n);
  for (int i = top - 1; i >= 0; --i) {
    // cross = T_{2k+1} = 2 T_k T_{k+1} - x
    mpz_mul(cross, lo, hi);
    mpz_mul_2exp(cross, cross, 1);
    mpz_sub(cross, cross, x.value().get_mpz_t());
    mpz_mod(cross, cross, p.get_mpz_t());
    if ((n >> i) & 1U) {
      // (T_{2k+1}, T_{2k+2})
      mpz_mul(square, hi, hi);
      mpz_mul_2exp(square, square, 1);
      mpz_sub_ui(square, square, 1);
      mpz_mod(hi, square, p.get_mpz_t());
      mpz_swap(lo, cross);
    } else {
      // (T_{2k}, T_{2k+1})
      mpz_mul(square, lo, lo);
      mpz_mul_2exp(square, square, 1);
      mpz_sub_ui(square, square, 1);
      mpz_mod(lo, square, p.get_mpz_t());
      mpz_swap(hi, cross);
    }
  }

  FieldElement result(x.field_ptr(), mpz_class(lo));
  mpz_clear(lo);
  mpz_clear(hi);
  mpz_clear(cross);
  mpz_clear(square);
  return result;
}

FieldElement bits_to_field(const BitString& s,
                           std::shared_ptr<const PrimeField> field) {
  return FieldElement(std::move(field), import_be(s.bytes()));
}

}  // namespace chebauth
