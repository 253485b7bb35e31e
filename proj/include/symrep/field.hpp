#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace symrep {

// Field elements are packed as sum c_i p^i over the coefficients of the
// polynomial representative (little-endian base-p digits).
using Elem = std::uint32_t;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::vector<std::uint32_t> modulus;  // monic, length e+1, low degree first

  std::uint64_t order() const;
  bool operator==(const FieldSpec& o) const { return p == o.p && e == o.e && modulus == o.modulus; }
};

bool is_prime(std::uint64_t n);
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

// Canonical field of order p^e: modulus is the lex-least monic irreducible.
FieldSpec ff_make(std::uint32_t p, std::uint32_t e);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // Cached per (p, e).
  static FieldPtr get(std::uint32_t p, std::uint32_t e);
  static FieldPtr get(const FieldSpec& spec);

  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t e() const { return spec_.e; }
  std::uint64_t q() const { return q_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem from_int(std::int64_t v) const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  std::string format(Elem a) const;
  Elem parse(const std::string& s) const;

  // Least primitive element by encoding.
  Elem primitive_root() const { return gen_; }
  // Discrete log base primitive_root(); throws on zero.
  std::uint64_t dlog(Elem a) const;
  // Multiplicative order of a nonzero element.
  std::uint64_t order_of(Elem a) const;

  // dst[i] += c * src[i]
  void axpy(Elem* dst, Elem c, const Elem* src, std::size_t n) const;
  void scale(Elem* dst, Elem c, std::size_t n) const;

 private:
  enum class Kind { gf2, char2_table, small_table, prime_table, prime_big, generic };

  Elem poly_mul(Elem a, Elem b) const;
  void build_dlog() const;

  FieldSpec spec_;
  std::uint64_t q_;
  Kind kind_;
  Elem gen_ = 1;
  std::vector<std::uint64_t> q1_primes_;
  std::vector<Elem> add_;     // q*q when q <= 256 and e > 1
  std::vector<Elem> mul_;     // q*q when q <= 256
  std::vector<std::uint8_t> axpy_;  // q*256 when q <= 16
  std::vector<std::uint32_t> log_;  // size q, when q <= 2^16 (eager) or lazily up to 2^20
  std::vector<Elem> exp_;           // size 2(q-1)
  mutable std::once_flag dlog_once_;
  mutable std::vector<std::uint32_t> big_log_;
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Canonical embedding GF(p^e) -> GF(p^(e*s)): x maps to the least root of the
// base modulus among the subfield elements of the larger field.
struct Embedding {
  FieldPtr from, to;
  Elem gamma = 0;
  std::vector<Elem> table;  // filled when from->q() <= 2^16
  Elem operator()(Elem a) const;
};

std::shared_ptr<const Embedding> make_embedding(const FieldPtr& from, std::uint32_t s);
// Multiplicative order of q modulo n (n coprime to q).
std::uint64_t mult_order_mod(std::uint64_t q, std::uint64_t n);

}  // namespace symrep
