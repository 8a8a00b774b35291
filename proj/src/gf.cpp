#include "fxcone/gf.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fxcone {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::composite_p: return "CompositeP";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::model_unavailable: return "ModelUnavailable";
    case Errc::not_on_cone: return "NotOnCone";
    case Errc::zero_function: return "ZeroFunction";
    case Errc::principal_character: return "PrincipalCharacter";
    case Errc::non_unimodular: return "NonUnimodular";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2).
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo a nonzero polynomial d.
Poly poly_mod(Poly a, const Poly& d, std::uint32_t p) {
  trim(a);
  const std::size_t dd = d.size() - 1;
  const std::uint64_t lead_inv = inv_mod(d.back(), p);
  while (a.size() > dd) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) {
      const std::uint64_t sub = c * d[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Powers of p, used to decode element indices.
std::vector<std::uint32_t> digit_weights(std::uint32_t p, std::uint32_t n) {
  std::vector<std::uint32_t> w(n);
  std::uint32_t v = 1;
  for (std::uint32_t r = 0; r < n; ++r) {
    w[r] = v;
    v *= p;
  }
  return w;
}

}  // namespace

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p) {
  const std::size_t deg = monic.size() - 1;
  if (deg <= 1) return deg == 1;
  const Poly f(monic.begin(), monic.end());
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly g(d + 1);
      std::uint64_t t = k;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldElem FieldCtx::add_digits(FieldElem a, FieldElem b) const noexcept {
  const std::uint32_t p = params_.p;
  std::uint32_t x = a.idx, y = b.idx, out = 0, w = 1;
  for (std::uint32_t r = 0; r < params_.n; ++r) {
    out += ((x % p + y % p) % p) * w;
    x /= p;
    y /= p;
    w *= p;
  }
  return FieldElem{out};
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.idx == 0) throw Error(Errc::invalid_argument, "inverse of zero");
  const std::uint32_t e = log_[a.idx] == 0 ? 0 : (q_ - 1) - log_[a.idx];
  return FieldElem{exp_[e]};
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const noexcept {
  if (e == 0) return one();
  if (a.idx == 0) return zero();
  const std::uint64_t k = (static_cast<std::uint64_t>(log_[a.idx]) * (e % (q_ - 1))) % (q_ - 1);
  return FieldElem{exp_[k]};
}

FieldElem FieldCtx::from_int(std::int64_t k) const noexcept {
  const std::int64_t p = params_.p;
  return FieldElem{static_cast<std::uint32_t>(((k % p) + p) % p)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldElem a) const {
  std::vector<std::uint32_t> c(params_.n);
  std::uint32_t x = a.idx;
  for (auto& v : c) {
    v = x % params_.p;
    x /= params_.p;
  }
  return c;
}

FieldElem FieldCtx::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != params_.n) throw Error(Errc::invalid_argument, "coefficient vector has wrong length");
  std::uint32_t idx = 0;
  for (std::size_t r = c.size(); r-- > 0;) {
    if (c[r] >= params_.p) throw Error(Errc::invalid_argument, "coefficient out of range");
    idx = idx * params_.p + c[r];
  }
  return FieldElem{idx};
}

std::shared_ptr<const FieldCtx> build_field(std::uint32_t p, std::uint32_t n, std::uint64_t budget) {
  if (p < 3) throw Error(Errc::invalid_argument, "p must be an odd prime");
  if (!is_prime(p)) throw Error(Errc::composite_p, "p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw Error(Errc::invalid_argument, "n must be positive");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q64 *= p;
    if (q64 > budget) {
      std::ostringstream os;
      os << "q = " << p << "^" << n << " exceeds the table budget " << budget;
      throw Error(Errc::budget_exceeded, os.str());
    }
  }
  const auto q = static_cast<std::uint32_t>(q64);

  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  FieldCtx& f = *ctx;
  f.params_.p = p;
  f.params_.n = n;
  f.q_ = q;

  // Smallest monic irreducible, comparing (c_0, c_1, ..., c_{n-1}) with c_0
  // most significant.
  Poly modulus(n + 1, 0);
  modulus[n] = 1;
  bool found = false;
  for (std::uint64_t k = 0; k < q64 && !found; ++k) {
    std::uint64_t t = k;
    for (std::uint32_t r = n; r-- > 0;) {
      modulus[r] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    found = is_irreducible(modulus, p);
  }
  if (!found) throw Error(Errc::invalid_argument, "no irreducible polynomial found");
  f.params_.modulus = modulus;

  const auto weights = digit_weights(p, n);
  auto decode = [&](std::uint32_t idx) {
    Poly c(n);
    for (std::uint32_t r = 0; r < n; ++r) {
      c[r] = idx % p;
      idx /= p;
    }
    return c;
  };
  auto encode = [&](const Poly& c) {
    std::uint32_t idx = 0;
    for (std::size_t r = 0; r < c.size() && r < n; ++r) idx += c[r] * weights[r];
    return idx;
  };
  auto mul_raw = [&](std::uint32_t a, std::uint32_t b) {
    const Poly x = decode(a), y = decode(b);
    Poly prod(2 * n - 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p);
    return encode(poly_mod(prod, modulus, p));
  };

  f.neg_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    Poly c = decode(a);
    for (auto& v : c) v = (p - v) % p;
    f.neg_[a] = encode(c);
  }
  if (q <= 1024) {
    f.add_table_.resize(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        f.add_table_[std::size_t{a} * q + b] = f.add_digits(FieldElem{a}, FieldElem{b}).idx;
  }

  // Primitive element: g^((q-1)/r) != 1 for every prime r | q-1.
  std::vector<std::uint32_t> prime_factors;
  {
    std::uint32_t m = q - 1;
    for (std::uint32_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) prime_factors.push_back(m);
  }
  auto pow_raw = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1, b = a;
    for (; e; e >>= 1) {
      if (e & 1) r = mul_raw(r, b);
      b = mul_raw(b, b);
    }
    return r;
  };
  std::uint32_t gen = 0;
  for (std::uint32_t g = 1; g < q && gen == 0; ++g) {
    bool primitive = true;
    for (std::uint32_t r : prime_factors)
      if (pow_raw(g, (q - 1) / r) == 1) primitive = false;
    if (primitive) gen = g;
  }
  if (gen == 0) throw Error(Errc::invalid_argument, "no primitive element");

  f.exp_.resize(q - 1);
  f.log_.assign(q, 0);
  std::uint32_t v = 1;
  for (std::uint32_t k = 0; k < q - 1; ++k) {
    f.exp_[k] = v;
    f.log_[v] = k;
    v = mul_raw(v, gen);
  }

  f.trace_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    FieldElem y{a}, sum{a};
    for (std::uint32_t r = 1; r < n; ++r) {
      y = f.pow(y, p);
      sum = f.add(sum, y);
    }
    if (sum.idx >= p) throw Error(Errc::invalid_argument, "trace left the prime subfield");
    f.trace_[a] = sum.idx;
  }

  f.zeta_.resize(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    const double t = 2.0 * std::numbers::pi * k / p;
    f.zeta_[k] = {std::cos(t), std::sin(t)};
  }

  if (q % 4 == 1) {
    const FieldElem minus_one = f.neg(FieldCtx::one());
    for (std::uint32_t a = 1; a < q; ++a) {
      if (f.mul(FieldElem{a}, FieldElem{a}) == minus_one) {
        f.sqrt_minus_one_ = FieldElem{a};
        break;
      }
    }
  }
  return ctx;
}

}  // namespace fxcone
