#include "fxcone/cone.hpp"

#include <algorithm>
#include <mutex>

namespace fxcone {

std::uint64_t point_index(std::uint32_t q, const Point4& x) noexcept {
  std::uint64_t idx = 0;
  for (std::size_t i = 4; i-- > 0;) idx = idx * q + x.c[i].idx;
  return idx;
}

Point4 point_from_index(std::uint32_t q, std::uint64_t index) noexcept {
  Point4 x;
  for (auto& c : x.c) {
    c = FieldElem{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return x;
}

Point4 point_add(const FieldCtx& f, const Point4& a, const Point4& b) noexcept {
  Point4 r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = f.add(a.c[i], b.c[i]);
  return r;
}

Point4 point_sub(const FieldCtx& f, const Point4& a, const Point4& b) noexcept {
  Point4 r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = f.sub(a.c[i], b.c[i]);
  return r;
}

Point4 point_neg(const FieldCtx& f, const Point4& a) noexcept {
  Point4 r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = f.neg(a.c[i]);
  return r;
}

Point4 point_scale(const FieldCtx& f, FieldElem s, const Point4& a) noexcept {
  Point4 r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = f.mul(s, a.c[i]);
  return r;
}

FieldElem dot(const FieldCtx& f, const Point4& a, const Point4& b) noexcept {
  FieldElem s{};
  for (std::size_t i = 0; i < 4; ++i) s = f.add(s, f.mul(a.c[i], b.c[i]));
  return s;
}

std::string_view model_name(ConeModel m) noexcept {
  switch (m) {
    case ConeModel::product: return "product";
    case ConeModel::quadratic22: return "quadratic22";
    case ConeModel::quadratic31: return "quadratic31";
  }
  return "product";
}

std::optional<ConeModel> parse_model(std::string_view s) noexcept {
  if (s == "product" || s == "ProductForm") return ConeModel::product;
  if (s == "quadratic22" || s == "22" || s == "Quadratic22") return ConeModel::quadratic22;
  if (s == "quadratic31" || s == "31" || s == "Quadratic31") return ConeModel::quadratic31;
  return std::nullopt;
}

bool on_cone(const FieldCtx& f, ConeModel m, const Point4& x) noexcept {
  if (is_zero(x)) return false;
  const auto& [a, b, c, d] = x.c;
  switch (m) {
    case ConeModel::product: return f.mul(a, b) == f.mul(c, d);
    case ConeModel::quadratic22:
      return f.add(f.mul(a, a), f.mul(b, b)) == f.add(f.mul(c, c), f.mul(d, d));
    case ConeModel::quadratic31:
      return f.add(f.add(f.mul(a, a), f.mul(b, b)), f.mul(c, c)) == f.mul(d, d);
  }
  return false;
}

Point4 LinearMap4::apply(const FieldCtx& f, const Point4& x) const noexcept {
  Point4 r;
  for (std::size_t i = 0; i < 4; ++i) {
    FieldElem s{};
    for (std::size_t j = 0; j < 4; ++j) s = f.add(s, f.mul(m[i][j], x.c[j]));
    r.c[i] = s;
  }
  return r;
}

Point4 change_vars_22_to_product(const FieldCtx& f, const Point4& x) noexcept {
  const auto& [a, b, c, d] = x.c;
  return Point4{{f.sub(a, c), f.add(a, c), f.sub(d, b), f.add(d, b)}};
}

Point4 change_vars_product_to_22(const FieldCtx& f, const Point4& z) noexcept {
  const FieldElem half = f.inv(f.from_int(2));
  const auto& [z1, z2, z3, z4] = z.c;
  return Point4{{f.mul(half, f.add(z1, z2)), f.mul(half, f.sub(z4, z3)), f.mul(half, f.sub(z2, z1)),
                 f.mul(half, f.add(z3, z4))}};
}

namespace {

FieldElem require_omega(const FieldCtx& f) {
  auto w = f.sqrt_minus_one();
  if (!w)
    throw Error(Errc::model_unavailable,
                "the (3,1) cone is equivalent to the product cone only when q = 1 mod 4");
  return *w;
}

template <class Fn>
LinearMap4 matrix_of(const FieldCtx& f, Fn&& fn) {
  LinearMap4 m;
  for (std::size_t j = 0; j < 4; ++j) {
    Point4 e;
    e.c[j] = FieldCtx::one();
    const Point4 col = fn(e);
    for (std::size_t i = 0; i < 4; ++i) m.m[i][j] = col.c[i];
  }
  (void)f;
  return m;
}

}  // namespace

Point4 map_31_to_product(const FieldCtx& f, const Point4& x) {
  const FieldElem w = require_omega(f);
  const auto& [a, b, c, d] = x.c;
  const FieldElem wc = f.mul(w, c);
  return Point4{{f.sub(a, d), f.add(a, d), f.sub(wc, b), f.add(wc, b)}};
}

Point4 map_product_to_31(const FieldCtx& f, const Point4& z) {
  const FieldElem w = require_omega(f);
  const FieldElem half = f.inv(f.from_int(2));
  const auto& [z1, z2, z3, z4] = z.c;
  // 1/ω = -ω.
  const FieldElem c = f.mul(f.neg(w), f.mul(half, f.add(z3, z4)));
  return Point4{{f.mul(half, f.add(z1, z2)), f.mul(half, f.sub(z4, z3)), c, f.mul(half, f.sub(z2, z1))}};
}

LinearMap4 model_to_product_matrix(const FieldCtx& f, ConeModel m) {
  switch (m) {
    case ConeModel::product: return matrix_of(f, [](const Point4& e) { return e; });
    case ConeModel::quadratic22:
      return matrix_of(f, [&](const Point4& e) { return change_vars_22_to_product(f, e); });
    case ConeModel::quadratic31:
      return matrix_of(f, [&](const Point4& e) { return map_31_to_product(f, e); });
  }
  return {};
}

LinearMap4 product_to_model_matrix(const FieldCtx& f, ConeModel m) {
  switch (m) {
    case ConeModel::product: return matrix_of(f, [](const Point4& e) { return e; });
    case ConeModel::quadratic22:
      return matrix_of(f, [&](const Point4& e) { return change_vars_product_to_22(f, e); });
    case ConeModel::quadratic31:
      return matrix_of(f, [&](const Point4& e) { return map_product_to_31(f, e); });
  }
  return {};
}

Point4 segre(const FieldCtx& f, const SegreCoords& s) {
  if (s.lambda.idx == 0) throw Error(Errc::invalid_argument, "segre: lambda must be nonzero");
  const FieldElem a1 = s.alpha.first, a2 = s.alpha.second, b1 = s.beta.first, b2 = s.beta.second;
  const FieldElem l = s.lambda;
  return Point4{{f.mul(l, f.mul(a1, b1)), f.mul(l, f.mul(a2, b2)), f.mul(l, f.mul(a1, b2)),
                 f.mul(l, f.mul(a2, b1))}};
}

SegreCoords segre_inverse(const FieldCtx& f, const Point4& x) {
  if (!on_cone(f, ConeModel::product, x)) throw Error(Errc::not_on_cone, "segre_inverse: point is not on the cone");
  const auto& [x1, x2, x3, x4] = x.c;
  if (x1.idx != 0) {
    const FieldElem li = f.inv(x1);
    return {x1, ProjPoint::affine(f.mul(x4, li)), ProjPoint::affine(f.mul(x3, li))};
  }
  // x1 = 0 forces x3 x4 = 0.
  if (x3.idx != 0) return {x3, ProjPoint::affine(f.div(x2, x3)), ProjPoint::infinity()};
  if (x4.idx != 0) return {x4, ProjPoint::infinity(), ProjPoint::affine(f.div(x2, x4))};
  return {x2, ProjPoint::infinity(), ProjPoint::infinity()};
}

std::string_view region_name(PointRegion r) noexcept {
  switch (r) {
    case PointRegion::zero: return "zero";
    case PointRegion::on_cone: return "on_cone";
    case PointRegion::generic: return "generic";
  }
  return "generic";
}

std::uint64_t sigma_count_closed_form(std::uint64_t q, PointRegion r) noexcept {
  switch (r) {
    case PointRegion::zero: return (q + 1) * (q + 1) * (q - 1);
    case PointRegion::on_cone: return 2 * q * q - q - 2;
    case PointRegion::generic: return q * q + q;
  }
  return 0;
}

struct ConeCtx::Lazy {
  std::once_flag sigma_once;
  std::vector<std::uint32_t> sigma;
};

ConeCtx::~ConeCtx() = default;
ConeCtx::ConeCtx(ConeCtx&&) noexcept = default;
ConeCtx& ConeCtx::operator=(ConeCtx&&) noexcept = default;

ConeCtx::ConeCtx(std::shared_ptr<const FieldCtx> field, ConeModel model)
    : field_(std::move(field)), model_(model), lazy_(std::make_unique<Lazy>()) {
  const FieldCtx& f = *field_;
  const std::uint64_t q = f.q();
  q4_ = q * q * q * q;
  to_product_ = model_to_product_matrix(f, model);  // throws model_unavailable
  from_product_ = product_to_model_matrix(f, model);

  ordinal_.assign(q4_, -1);
  for (std::uint64_t idx = 0; idx < q4_; ++idx) {
    const Point4 x = point_from_index(f.q(), idx);
    if (on_cone(f, model, x)) {
      ordinal_[idx] = static_cast<std::int32_t>(points_.size());
      points_.push_back(x);
      index_.push_back(idx);
    }
  }

  const std::size_t n = points_.size();
  const std::uint32_t np1 = f.q() + 1;
  antipode_.resize(n);
  product_.resize(n);
  segre_.resize(n);
  plus_id_.resize(n);
  minus_id_.resize(n);
  planes_plus_.assign(np1, {});
  planes_minus_.assign(np1, {});
  lines_.assign(std::size_t{np1} * np1, {});
  for (std::size_t k = 0; k < n; ++k) {
    antipode_[k] = static_cast<std::uint32_t>(ordinal_[point_index(f.q(), point_neg(f, points_[k]))]);
    product_[k] = to_product_.apply(f, points_[k]);
    segre_[k] = segre_inverse(f, product_[k]);
    plus_id_[k] = segre_[k].alpha.ordinal(f.q());
    minus_id_[k] = segre_[k].beta.ordinal(f.q());
    planes_plus_[plus_id_[k]].push_back(static_cast<std::uint32_t>(k));
    planes_minus_[minus_id_[k]].push_back(static_cast<std::uint32_t>(k));
    lines_[line_id(k)].push_back(static_cast<std::uint32_t>(k));
  }
}

std::optional<std::uint32_t> ConeCtx::ordinal_of(const Point4& x) const noexcept {
  for (const auto& c : x.c)
    if (c.idx >= q()) return std::nullopt;
  const std::int64_t o = ordinal_[point_index(q(), x)];
  if (o < 0) return std::nullopt;
  return static_cast<std::uint32_t>(o);
}

std::uint64_t ConeCtx::sum_index(std::size_t a, std::size_t b) const noexcept {
  const FieldCtx& f = *field_;
  const Point4& x = points_[a];
  const Point4& y = points_[b];
  const std::uint64_t q = f.q();
  return f.add(x.c[0], y.c[0]).idx +
         q * (f.add(x.c[1], y.c[1]).idx + q * (f.add(x.c[2], y.c[2]).idx + q * f.add(x.c[3], y.c[3]).idx));
}

std::uint64_t ConeCtx::index_add(std::uint64_t a, std::uint64_t b) const noexcept {
  return point_index(q(), point_add(*field_, point_from_index(q(), a), point_from_index(q(), b)));
}

PointRegion ConeCtx::region(const Point4& xi) const noexcept {
  if (is_zero(xi)) return PointRegion::zero;
  return on_cone(*field_, model_, xi) ? PointRegion::on_cone : PointRegion::generic;
}

PointRegion ConeCtx::region_of_index(std::uint64_t index) const noexcept {
  if (index == 0) return PointRegion::zero;
  return ordinal_[index] >= 0 ? PointRegion::on_cone : PointRegion::generic;
}

std::span<const std::uint32_t> ConeCtx::sigma_table() const {
  std::call_once(lazy_->sigma_once, [this] {
    std::vector<std::uint32_t> t(q4_, 0);
    const std::size_t n = points_.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) ++t[sum_index(a, b)];
    lazy_->sigma = std::move(t);
  });
  return lazy_->sigma;
}

std::uint64_t ConeCtx::sigma_count(const Point4& xi) const { return sigma_table()[point_index(q(), xi)]; }

std::vector<std::pair<std::uint32_t, std::uint32_t>> ConeCtx::sigma_pairs(const Point4& xi) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t a = 0; a < points_.size(); ++a) {
    const std::int64_t b = ordinal_[point_index(q(), point_sub(*field_, xi, points_[a]))];
    if (b >= 0) out.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  }
  return out;
}

HSet ConeCtx::h_set(std::size_t ord) const {
  if (ord >= points_.size()) throw Error(Errc::not_on_cone, "h_set: ordinal is not a cone point");
  HSet h;
  const std::uint32_t a = plus_id_[ord], b = minus_id_[ord];
  for (std::uint32_t k : planes_plus_[a]) (minus_id_[k] == b ? h.line : h.h_plus).push_back(k);
  for (std::uint32_t k : planes_minus_[b])
    if (plus_id_[k] != a) h.h_minus.push_back(k);
  return h;
}

std::vector<std::uint32_t> ConeCtx::h_set_by_definition(const Point4& xi) const {
  const FieldCtx& f = *field_;
  const Point4 x = to_product_.apply(f, xi);
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const Point4 d = point_sub(f, x, product_[k]);
    if (f.mul(d.c[0], d.c[1]) == f.mul(d.c[2], d.c[3])) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

}  // namespace fxcone
