#include "fxcone/xform.hpp"

#include <algorithm>
#include <cmath>

#include "fxcone/parallel.hpp"

namespace fxcone {

namespace {

// Fixed partition of the outer cone loop; each chunk owns a private q^4 table.
std::size_t chunk_count(const ConeCtx& cc, std::size_t bytes_per_entry) {
  const std::size_t n = cc.size();
  if (n * n < (std::size_t{1} << 16)) return 1;
  const std::size_t budget = std::size_t{1} << 28;
  const std::size_t cap = std::max<std::size_t>(1, budget / (cc.ambient_size() * bytes_per_entry));
  return std::min<std::size_t>({16, cap, n});
}

template <class T, class Term>
std::vector<T> convolve(const ConeCtx& cc, Term term) {
  const std::size_t n = cc.size();
  const std::size_t q4 = cc.ambient_size();
  const std::size_t chunks = chunk_count(cc, sizeof(T));
  std::vector<std::vector<T>> partial(chunks);
  parallel_chunks(n, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto& t = partial[c];
    t.assign(q4, T{});
    for (std::size_t a = begin; a < end; ++a)
      for (std::size_t b = 0; b < n; ++b) t[cc.sum_index(a, b)] += term(a, b);
  });
  std::vector<T> out = std::move(partial[0]);
  for (std::size_t c = 1; c < chunks; ++c)
    for (std::size_t u = 0; u < q4; ++u) out[u] += partial[c][u];
  return out;
}

void check_length(const ConeCtx& cc, std::size_t len) {
  if (len != cc.size())
    throw Error(Errc::invalid_argument,
                "cone function has length " + std::to_string(len) + ", expected " + std::to_string(cc.size()));
}

}  // namespace

std::optional<Integer> CyclotomicInt::as_integer() const {
  if (coeff.empty()) return Integer{0};
  for (std::size_t k = 2; k < coeff.size(); ++k)
    if (coeff[k] != coeff[1]) return std::nullopt;
  return coeff.size() == 1 ? coeff[0] : coeff[0] - coeff[1];
}

RepCountTable pair_convolution(const ConeCtx& cc, std::span<const Complex> f) {
  return pair_convolution(cc, f, f);
}

RepCountTable pair_convolution(const ConeCtx& cc, std::span<const Complex> f, std::span<const Complex> g) {
  check_length(cc, f.size());
  check_length(cc, g.size());
  return {convolve<Complex>(cc, [&](std::size_t a, std::size_t b) { return f[a] * g[b]; })};
}

std::vector<std::int64_t> pair_convolution_exact(const ConeCtx& cc, std::span<const std::int64_t> f) {
  check_length(cc, f.size());
  return convolve<std::int64_t>(cc, [&](std::size_t a, std::size_t b) { return f[a] * f[b]; });
}

CyclotomicTable pair_convolution_phase(const ConeCtx& cc, const PhaseFunction& f) {
  check_length(cc, f.exponent.size());
  const std::uint32_t p = f.p;
  const std::size_t n = cc.size();
  CyclotomicTable out{p, std::vector<std::uint32_t>(cc.ambient_size() * p, 0)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      ++out.counts[cc.sum_index(a, b) * p + (f.exponent[a] + f.exponent[b]) % p];
  return out;
}

double quartic_lhs(const RepCountTable& F) {
  double s = 0.0;
  for (const Complex& v : F.table) s += std::norm(v);
  return s;
}

Integer quartic_lhs_exact(std::span<const std::int64_t> F) {
  Integer s = 0;
  for (std::int64_t v : F) s += Integer(v) * v;
  return s;
}

CyclotomicInt quartic_lhs_phase(const CyclotomicTable& F) {
  const std::uint32_t p = F.p;
  std::vector<std::int64_t> d(p, 0);
  const std::size_t cells = F.counts.size() / p;
  for (std::size_t u = 0; u < cells; ++u) {
    const std::uint32_t* c = &F.counts[u * p];
    bool any = false;
    for (std::uint32_t j = 0; j < p && !any; ++j) any = c[j] != 0;
    if (!any) continue;
    // |F(u)|^2 = sum_{j,k} c_j c_k zeta^(j-k).
    for (std::uint32_t j = 0; j < p; ++j) {
      if (!c[j]) continue;
      for (std::uint32_t k = 0; k < p; ++k) d[(j + p - k) % p] += std::int64_t{c[j]} * c[k];
    }
  }
  CyclotomicInt out;
  out.coeff.assign(d.begin(), d.end());
  return out;
}

double mass(std::span<const Complex> f) {
  double s = 0.0;
  for (const Complex& v : f) s += std::norm(v);
  return s;
}

double ratio(const ConeCtx& cc, std::span<const Complex> f) {
  check_length(cc, f.size());
  const double m = mass(f);
  if (!(m > 0.0)) throw Error(Errc::zero_function, "ratio of the zero function");
  return quartic_lhs(pair_convolution(cc, f)) / (m * m);
}

Rational ratio_exact(const ConeCtx& cc, std::span<const std::int64_t> f) {
  check_length(cc, f.size());
  Integer m = 0;
  for (std::int64_t v : f) m += Integer(v) * v;
  if (m == 0) throw Error(Errc::zero_function, "ratio of the zero function");
  return Rational(quartic_lhs_exact(pair_convolution_exact(cc, f)), m * m);
}

Complex extension(const ConeCtx& cc, std::span<const Complex> f, const Point4& x, FieldElem a) {
  check_length(cc, f.size());
  if (a.idx == 0) throw Error(Errc::principal_character, "extension needs a non-principal character");
  const FieldCtx& F = cc.field();
  Complex s = 0.0;
  for (std::size_t k = 0; k < cc.size(); ++k) s += f[k] * F.char_value(a, dot(F, cc.point(k), x));
  return s / static_cast<double>(cc.size());
}

Norms norms(const ConeCtx& cc, std::span<const Complex> f, FieldElem a) {
  check_length(cc, f.size());
  if (a.idx == 0) throw Error(Errc::principal_character, "extension needs a non-principal character");
  const std::size_t q4 = cc.ambient_size();
  const std::size_t chunks = std::min<std::size_t>(64, q4);
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(q4, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t u = begin; u < end; ++u) {
      const double v = std::norm(extension(cc, f, point_from_index(cc.q(), u), a));
      s += v * v;
    }
    partial[c] = s;
  });
  double l4 = 0.0;
  for (double v : partial) l4 += v;
  return {std::sqrt(mass(f) / static_cast<double>(cc.size())), std::pow(l4, 0.25)};
}

Certificate verify_duality(const ConeCtx& cc, std::span<const Complex> f, FieldElem a, double tol) {
  const Norms nm = norms(cc, f, a);
  const double fourier = std::pow(nm.l4_counting, 4);
  const double n = static_cast<double>(cc.size());
  const double factor = static_cast<double>(cc.ambient_size()) / (n * n * n * n);
  const double combinatorial = factor * quartic_lhs(pair_convolution(cc, f));
  Certificate c;
  c.claim_id = "duality-parseval";
  c.q = cc.q();
  c.mode = ArithMode::floating;
  c.observed = fourier;
  c.expected = combinatorial;
  c.tolerance = tol;
  const double scale = std::max(std::abs(fourier), std::abs(combinatorial));
  const double gap = scale > 0 ? std::abs(fourier - combinatorial) / scale : 0.0;
  c.pass = gap <= tol;
  c.metadata = {{"relative_gap", gap}, {"factor", "q^4/|cone|^4"}, {"character", a.idx}};
  return c;
}

ConeFunction symmetrize(const ConeCtx& cc, std::span<const Complex> f) {
  check_length(cc, f.size());
  ConeFunction out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    out[k] = std::sqrt(0.5 * (std::norm(f[k]) + std::norm(f[cc.antipode(k)])));
  return out;
}

Complex quadrilinear_Q(const ConeCtx& cc, std::span<const Complex> f1, std::span<const Complex> f2,
                       std::span<const Complex> f3, std::span<const Complex> f4) {
  // Pair (η1, η3) and (-η2, -η4): both sums equal the same u.
  const RepCountTable a = pair_convolution(cc, f1, f3);
  const RepCountTable b = pair_convolution(cc, f2, f4);
  Complex s = 0.0;
  for (std::size_t u = 0; u < a.table.size(); ++u) s += a.table[u] * std::conj(b.table[u]);
  return s;
}

SharpConstants sharp_constants(std::uint64_t q64) {
  if (q64 < 3) throw Error(Errc::invalid_argument, "sharp constants need q >= 3");
  const Integer q = q64;
  SharpConstants s;
  s.q = q64;
  s.N = q * q * q * q * q + 4 * q * q * q * q - 4 * q * q * q - 6 * q * q + 3 * q + 3;
  const Integer qp = q + 1, qm = q - 1;
  s.C = Rational(s.N, qp * qp * qm);
  s.R4 = Rational(q * q * q * q * s.N, qp * qp * qp * qp * qp * qp * qm * qm * qm);
  s.M = Rational(2 * q * q * q * q - 5 * q * q * q - 5 * q * q + 5 * q + 4, qm * qp * qp);
  s.R = std::pow(to_double(s.R4), 0.25);
  const Integer cone = qm * qp * qp;
  if (s.C != s.R4 * Rational(cone * cone, q * q * q * q))
    throw Error(Errc::invalid_argument, "sharp constant identity failed");
  return s;
}

std::uint32_t character_exponent(const ConeCtx& cc, const CharParam& a, std::size_t k) {
  const FieldCtx& F = cc.field();
  const Point4& x = cc.point(k);
  FieldElem s{};
  for (std::size_t i = 0; i < 4; ++i) s = F.add(s, F.mul(a[i], x.c[i]));
  return F.trace(s);
}

PhaseFunction phase_character(const ConeCtx& cc, const CharParam& a) {
  PhaseFunction f{cc.field().p(), std::vector<std::uint32_t>(cc.size())};
  for (std::size_t k = 0; k < cc.size(); ++k) f.exponent[k] = character_exponent(cc, a, k);
  return f;
}

ConeFunction to_complex(const ConeCtx& cc, const PhaseFunction& f, Complex lambda) {
  check_length(cc, f.exponent.size());
  ConeFunction out(f.exponent.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = lambda * cc.field().zeta(f.exponent[k]);
  return out;
}

ConeFunction character(const ConeCtx& cc, const CharParam& a, Complex lambda) {
  return to_complex(cc, phase_character(cc, a), lambda);
}

}  // namespace fxcone
