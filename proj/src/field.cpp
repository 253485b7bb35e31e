#include "symrep/field.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <sstream>
#include <stdexcept>

namespace symrep {

std::uint64_t FieldSpec::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  return q;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, over GF(p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm && !a.empty()) {
    std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t sub = c * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m
Poly frob_power(const Poly& m, std::uint32_t p, std::uint32_t k) {
  Poly x = poly_mod(Poly{0, 1}, m, p);
  for (std::uint32_t i = 0; i < k; ++i) {
    Poly base = x, acc{1};
    std::uint64_t ex = p;
    while (ex) {
      if (ex & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      ex >>= 1;
    }
    x = acc;
  }
  return x;
}

}  // namespace

// Rabin's test.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  if (n == 1) return true;
  Poly xq = frob_power(f, p, n);
  Poly x = poly_mod(Poly{0, 1}, f, p);
  if (xq != x) return false;
  for (std::uint64_t r : prime_factors(n)) {
    Poly h = frob_power(f, p, n / static_cast<std::uint32_t>(r));
    // h - x
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Poly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldSpec ff_make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw std::invalid_argument("ff_make: p=" + std::to_string(p) + " is not prime");
  if (e < 1 || e > 16) throw std::invalid_argument("ff_make: extension degree must be in [1,16]");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > (1ull << 31)) throw std::invalid_argument("ff_make: p^e exceeds 2^31");
  }
  FieldSpec spec{p, e, {}};
  if (e == 1) {
    spec.modulus = {0, 1};
    return spec;
  }
  // Enumerate lower coefficients as base-p counter (c_0 least significant).
  std::uint64_t count = q;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(e + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[e] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible(p, f)) {
      spec.modulus = f;
      return spec;
    }
  }
  throw std::logic_error("ff_make: no irreducible polynomial found");
}

FieldPtr Field::get(std::uint32_t p, std::uint32_t e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, e});
    if (it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const Field>(ff_make(p, e));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, e), f);
  return it->second;
}

FieldPtr Field::get(const FieldSpec& spec) {
  FieldPtr f = get(spec.p, spec.e);
  if (!(f->spec() == spec)) throw std::invalid_argument("Field::get: non-canonical modulus");
  return f;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.order()) {
  const std::uint32_t p = spec_.p;
  if (spec_.e == 1 && p == 2)
    kind_ = Kind::gf2;
  else if (p == 2 && q_ <= 256)
    kind_ = Kind::char2_table;
  else if (q_ <= 16)
    kind_ = Kind::small_table;
  else if (spec_.e == 1 && q_ <= 256)
    kind_ = Kind::prime_table;
  else if (spec_.e == 1)
    kind_ = Kind::prime_big;
  else
    kind_ = Kind::generic;

  if (q_ <= 256) {
    const std::size_t q = q_;
    if (spec_.e > 1) {
      add_.resize(q * q);
      for (std::size_t a = 0; a < q; ++a) {
        auto da = digits(static_cast<Elem>(a));
        for (std::size_t b = 0; b < q; ++b) {
          auto db = digits(static_cast<Elem>(b));
          for (std::uint32_t i = 0; i < spec_.e; ++i) db[i] = (da[i] + db[i]) % p;
          add_[a * q + b] = from_digits(db);
        }
      }
    }
    mul_.resize(q * q);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = a; b < q; ++b)
        mul_[a * q + b] = mul_[b * q + a] = poly_mul(static_cast<Elem>(a), static_cast<Elem>(b));
    if (q <= 16) {
      axpy_.resize(q * 256, 0);
      for (std::size_t c = 0; c < q; ++c)
        for (std::size_t d = 0; d < q; ++d)
          for (std::size_t s = 0; s < q; ++s)
            axpy_[c * 256 + (d << 4) + s] = static_cast<std::uint8_t>(add(static_cast<Elem>(d), mul_[c * q + s]));
    }
  }

  q1_primes_ = prime_factors(q_ - 1);
  if (q_ > 2) {
    for (Elem g = 1; g < q_; ++g) {
      if (order_of(g) == q_ - 1) {
        gen_ = g;
        break;
      }
    }
  }
  if (q_ <= (1u << 16)) {
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1) + 1, 1);
    Elem x = 1;
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
      exp_[k] = x;
      log_[x] = static_cast<std::uint32_t>(k);
      x = poly_mul(x, gen_);
    }
    for (std::uint64_t k = q_ - 1; k < exp_.size(); ++k) exp_[k] = exp_[k - (q_ - 1)];
  }
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(spec_.e);
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    d[i] = a % spec_.p;
    a /= spec_.p;
  }
  return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * spec_.p + (d[i] % spec_.p);
  return static_cast<Elem>(v);
}

Elem Field::poly_mul(Elem a, Elem b) const {
  if (spec_.e == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % spec_.p);
  Poly r = poly_mulmod(digits(a), digits(b), spec_.modulus, spec_.p);
  r.resize(spec_.e, 0);
  return from_digits(r);
}

Elem Field::add(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::gf2:
    case Kind::char2_table:
      return a ^ b;
    case Kind::prime_table:
    case Kind::prime_big: {
      std::uint64_t s = static_cast<std::uint64_t>(a) + b;
      return static_cast<Elem>(s >= spec_.p ? s - spec_.p : s);
    }
    default:
      break;
  }
  if (!add_.empty()) return add_[a * q_ + b];
  if (spec_.p == 2) return a ^ b;
  Elem r = 0, pw = 1;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    r += ((a % spec_.p + b % spec_.p) % spec_.p) * pw;
    a /= spec_.p;
    b /= spec_.p;
    pw *= spec_.p;
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (spec_.p == 2) return a;
  if (spec_.e == 1) return a == 0 ? 0 : spec_.p - a;
  Elem r = 0, pw = 1;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    Elem d = a % spec_.p;
    r += (d == 0 ? 0 : spec_.p - d) * pw;
    a /= spec_.p;
    pw *= spec_.p;
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (!mul_.empty()) return mul_[a * q_ + b];
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return poly_mul(a, b);
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (!log_.empty()) return a == 1 ? 1 : exp_[(q_ - 1) - log_[a]];
  if (spec_.e == 1) return inv_mod(a, spec_.p);
  return pow(a, q_ - 2);
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
  if (r < 0) r += spec_.p;
  return static_cast<Elem>(r);
}

std::uint64_t Field::order_of(Elem a) const {
  if (a == 0) throw std::domain_error("order of zero");
  std::uint64_t n = q_ - 1;
  for (std::uint64_t r : q1_primes_) {
    while (n % r == 0 && pow(a, n / r) == 1) n /= r;
  }
  return n;
}

void Field::build_dlog() const {
  if (q_ > (1u << 20)) throw std::length_error("dlog: field exceeds table cap 2^20");
  big_log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t k = 0; k < q_ - 1; ++k) {
    big_log_[x] = static_cast<std::uint32_t>(k);
    x = poly_mul(x, gen_);
  }
}

std::uint64_t Field::dlog(Elem a) const {
  if (a == 0) throw std::domain_error("dlog of zero");
  if (!log_.empty()) return log_[a];
  std::call_once(dlog_once_, [this] { build_dlog(); });
  return big_log_[a];
}

std::string Field::format(Elem a) const {
  if (spec_.e == 1) return std::to_string(a);
  auto d = digits(a);
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (spec_.p > 10 && i) out += ':';
    out += std::to_string(d[i]);
  }
  return out;
}

Elem Field::parse(const std::string& s) const {
  auto bad = [&] { return std::invalid_argument("bad field element '" + s + "' for GF(" + std::to_string(q_) + ")"); };
  if (s.empty()) throw bad();
  if (spec_.e == 1) {
    std::int64_t v = 0;
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-') {
      negative = true;
      i = 1;
    }
    if (i == s.size()) throw bad();
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw bad();
      v = v * 10 + (s[i] - '0');
      if (v > (1ll << 40)) throw bad();
    }
    return from_int(negative ? -v : v);
  }
  std::vector<std::uint32_t> d;
  if (spec_.p > 10) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) {
      if (part.empty()) throw bad();
      for (char ch : part)
        if (ch < '0' || ch > '9') throw bad();
      d.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    }
  } else {
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw bad();
      d.push_back(static_cast<std::uint32_t>(ch - '0'));
    }
  }
  if (d.size() != spec_.e) throw bad();
  for (auto x : d)
    if (x >= spec_.p) throw bad();
  return from_digits(d);
}

void Field::axpy(Elem* dst, Elem c, const Elem* src, std::size_t n) const {
  if (c == 0) return;
  switch (kind_) {
    case Kind::gf2:
      for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
      return;
    case Kind::char2_table: {
      if (c == 1) {
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
        return;
      }
      const Elem* mc = &mul_[c * q_];
      for (std::size_t i = 0; i < n; ++i) dst[i] ^= mc[src[i]];
      return;
    }
    case Kind::small_table: {
      const std::uint8_t* t = &axpy_[c * 256];
      for (std::size_t i = 0; i < n; ++i) dst[i] = t[(dst[i] << 4) | src[i]];
      return;
    }
    case Kind::prime_table: {
      const Elem* mc = &mul_[c * q_];
      const Elem p = spec_.p;
      for (std::size_t i = 0; i < n; ++i) {
        Elem s = dst[i] + mc[src[i]];
        dst[i] = s >= p ? s - p : s;
      }
      return;
    }
    case Kind::prime_big: {
      const std::uint64_t p = spec_.p;
      for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<Elem>((dst[i] + static_cast<std::uint64_t>(c) * src[i]) % p);
      return;
    }
    case Kind::generic:
      for (std::size_t i = 0; i < n; ++i)
        if (src[i]) dst[i] = add(dst[i], mul(c, src[i]));
      return;
  }
}

void Field::scale(Elem* dst, Elem c, std::size_t n) const {
  if (c == 1) return;
  if (c == 0) {
    std::fill(dst, dst + n, 0);
    return;
  }
  if (!mul_.empty()) {
    const Elem* mc = &mul_[c * q_];
    for (std::size_t i = 0; i < n; ++i) dst[i] = mc[dst[i]];
    return;
  }
  for (std::size_t i = 0; i < n; ++i) dst[i] = mul(c, dst[i]);
}

Elem Embedding::operator()(Elem a) const {
  if (!table.empty()) return table[a];
  auto d = from->digits(a);
  Elem r = 0, pw = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    r = to->add(r, to->mul(static_cast<Elem>(d[i]), pw));
    pw = to->mul(pw, gamma);
  }
  return r;
}

std::shared_ptr<const Embedding> make_embedding(const FieldPtr& from, std::uint32_t s) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::shared_ptr<const Embedding>> cache;
  const auto key = std::make_tuple(from->p(), from->e(), s);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  if (s < 1) throw std::invalid_argument("embedding: degree must be >= 1");
  auto emb = std::make_shared<Embedding>();
  emb->from = from;
  emb->to = Field::get(from->p(), from->e() * s);
  const Field& T = *emb->to;
  const auto& mod = from->spec().modulus;
  auto eval = [&](Elem x) {
    Elem r = 0, pw = 1;
    for (std::size_t i = 0; i < mod.size(); ++i) {
      r = T.add(r, T.mul(static_cast<Elem>(mod[i]), pw));
      pw = T.mul(pw, x);
    }
    return r;
  };
  bool found = false;
  if (from->e() == 1) {
    emb->gamma = 0;  // modulus is x
    found = true;
  } else {
    const std::uint64_t Q = T.q(), q = from->q();
    const Elem h = T.pow(T.primitive_root(), (Q - 1) / (q - 1));
    Elem x = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
      if (eval(x) == 0 && (!found || x < emb->gamma)) {
        emb->gamma = x;
        found = true;
      }
      x = T.mul(x, h);
    }
  }
  if (!found) throw std::logic_error("embedding: no root of the base modulus found");
  if (from->q() <= (1u << 16)) {
    std::vector<Elem> table(from->q());
    Embedding tmp = *emb;
    for (Elem a = 0; a < from->q(); ++a) table[a] = tmp(a);
    emb->table = std::move(table);
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, ins] = cache.emplace(key, emb);
  return it->second;
}

std::uint64_t mult_order_mod(std::uint64_t q, std::uint64_t n) {
  if (n == 1) return 1;
  std::uint64_t x = q % n, k = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * q) % n);
    ++k;
    if (k > n) throw std::invalid_argument("mult_order_mod: q not invertible mod n");
  }
  return k;
}

}  // namespace symrep
