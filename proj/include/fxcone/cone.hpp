#pragma once

// The punctured cone in F_q^4 in its three linear models, the Segre
// parametrization of the product model, and the incidence structure (planes,
// lines, H sets, pair sets) that the quartic estimates are built on.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fxcone/gf.hpp"

namespace fxcone {

struct Point4 {
  std::array<FieldElem, 4> c{};

  friend constexpr auto operator<=>(const Point4&, const Point4&) = default;
};

// idx(c0) + idx(c1) q + idx(c2) q^2 + idx(c3) q^3.
std::uint64_t point_index(std::uint32_t q, const Point4& x) noexcept;
Point4 point_from_index(std::uint32_t q, std::uint64_t index) noexcept;

Point4 point_add(const FieldCtx& f, const Point4& a, const Point4& b) noexcept;
Point4 point_sub(const FieldCtx& f, const Point4& a, const Point4& b) noexcept;
Point4 point_neg(const FieldCtx& f, const Point4& a) noexcept;
Point4 point_scale(const FieldCtx& f, FieldElem s, const Point4& a) noexcept;
FieldElem dot(const FieldCtx& f, const Point4& a, const Point4& b) noexcept;
inline bool is_zero(const Point4& x) noexcept { return x == Point4{}; }

enum class ConeModel {
  product,      // η1 η2 = η3 η4
  quadratic22,  // η1² + η2² = η3² + η4²
  quadratic31,  // η1² + η2² + η3² = η4²
};

std::string_view model_name(ConeModel m) noexcept;
// Accepts "product", "quadratic22"/"22", "quadratic31"/"31".
std::optional<ConeModel> parse_model(std::string_view s) noexcept;

// Quadratic-form membership; the origin is never on the cone.
bool on_cone(const FieldCtx& f, ConeModel m, const Point4& x) noexcept;

struct LinearMap4 {
  std::array<std::array<FieldElem, 4>, 4> m{};  // row-major

  Point4 apply(const FieldCtx& f, const Point4& x) const noexcept;
};

// (η1,η2,η3,η4) -> (η1-η3, η1+η3, η4-η2, η4+η2) and its inverse.
Point4 change_vars_22_to_product(const FieldCtx& f, const Point4& x) noexcept;
Point4 change_vars_product_to_22(const FieldCtx& f, const Point4& z) noexcept;

// With ω² = -1, (η1,η2,η3,η4) -> (η1-η4, η1+η4, ωη3-η2, ωη3+η2), which sends
// the (3,1) form onto the product form. Throws model_unavailable if q = 3 mod 4.
Point4 map_31_to_product(const FieldCtx& f, const Point4& x);
Point4 map_product_to_31(const FieldCtx& f, const Point4& z);

// Matrix of the linear map taking the given model's coordinates to product form.
LinearMap4 model_to_product_matrix(const FieldCtx& f, ConeModel m);
LinearMap4 product_to_model_matrix(const FieldCtx& f, ConeModel m);

// Normalized point of P^1: (1, y) or (0, 1).
struct ProjPoint {
  FieldElem first = FieldCtx::one();
  FieldElem second{};

  static ProjPoint affine(FieldElem y) noexcept { return {FieldCtx::one(), y}; }
  static ProjPoint infinity() noexcept { return {FieldElem{0}, FieldCtx::one()}; }
  bool is_infinity() const noexcept { return first.idx == 0; }
  // y.idx for (1, y); q for (0, 1).
  std::uint32_t ordinal(std::uint32_t q) const noexcept { return is_infinity() ? q : second.idx; }
  static ProjPoint from_ordinal(std::uint32_t q, std::uint32_t ord) noexcept {
    return ord == q ? infinity() : affine(FieldElem{ord});
  }

  friend constexpr auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

struct SegreCoords {
  FieldElem lambda = FieldCtx::one();
  ProjPoint alpha;
  ProjPoint beta;

  friend constexpr auto operator<=>(const SegreCoords&, const SegreCoords&) = default;
};

// (λα1β1, λα2β2, λα1β2, λα2β1). Throws invalid_argument for λ = 0.
Point4 segre(const FieldCtx& f, const SegreCoords& c);
// Inverse on the product cone; throws not_on_cone otherwise.
SegreCoords segre_inverse(const FieldCtx& f, const Point4& x);

enum class PointRegion { zero, on_cone, generic };
std::string_view region_name(PointRegion r) noexcept;

// Pair-set sizes for the three regions of F_q^4.
std::uint64_t sigma_count_closed_form(std::uint64_t q, PointRegion r) noexcept;
inline std::uint64_t cone_size_closed_form(std::uint64_t q) noexcept { return (q - 1) * (q + 1) * (q + 1); }

struct HSet {
  std::vector<std::uint32_t> h_plus;   // same α, β' != β
  std::vector<std::uint32_t> h_minus;  // same β, α' != α
  std::vector<std::uint32_t> line;     // same α and β
};

// Immutable enumeration of the cone in one model. Points are kept in model
// coordinates, sorted by point index; all incidence structure is given in
// terms of cone ordinals and comes from the Segre coordinates of the
// product-form image, so it applies unchanged to every model.
class ConeCtx {
 public:
  ConeCtx(std::shared_ptr<const FieldCtx> field, ConeModel model = ConeModel::product);
  ~ConeCtx();
  ConeCtx(ConeCtx&&) noexcept;
  ConeCtx& operator=(ConeCtx&&) noexcept;

  const FieldCtx& field() const noexcept { return *field_; }
  std::shared_ptr<const FieldCtx> field_ptr() const noexcept { return field_; }
  ConeModel model() const noexcept { return model_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  std::uint64_t ambient_size() const noexcept { return q4_; }
  std::size_t size() const noexcept { return points_.size(); }

  const Point4& point(std::size_t ord) const noexcept { return points_[ord]; }
  std::span<const Point4> points() const noexcept { return points_; }
  std::uint64_t index(std::size_t ord) const noexcept { return index_[ord]; }
  // -1 when the point is not on the cone.
  std::int64_t ordinal_of_index(std::uint64_t index) const noexcept { return ordinal_[index]; }
  std::optional<std::uint32_t> ordinal_of(const Point4& x) const noexcept;
  // Ordinal of the cone point whose product-form image is z.
  std::optional<std::uint32_t> ordinal_of_product(const Point4& z) const noexcept {
    return ordinal_of(from_product_.apply(*field_, z));
  }
  // Point index of point(a) + point(b).
  std::uint64_t sum_index(std::size_t a, std::size_t b) const noexcept;
  std::uint64_t index_add(std::uint64_t a, std::uint64_t b) const noexcept;

  std::uint32_t antipode(std::size_t ord) const noexcept { return antipode_[ord]; }
  const Point4& product_image(std::size_t ord) const noexcept { return product_[ord]; }
  const SegreCoords& segre_coords(std::size_t ord) const noexcept { return segre_[ord]; }
  const LinearMap4& to_product() const noexcept { return to_product_; }
  const LinearMap4& from_product() const noexcept { return from_product_; }

  // Plane ids are P^1 ordinals in [0, q]: A+ fixes α, A- fixes β.
  std::uint32_t plane_plus_id(std::size_t ord) const noexcept { return plus_id_[ord]; }
  std::uint32_t plane_minus_id(std::size_t ord) const noexcept { return minus_id_[ord]; }
  std::uint32_t line_id(std::size_t ord) const noexcept {
    return plus_id_[ord] * (q() + 1) + minus_id_[ord];
  }
  std::span<const std::uint32_t> plane_plus(std::uint32_t id) const noexcept { return planes_plus_[id]; }
  std::span<const std::uint32_t> plane_minus(std::uint32_t id) const noexcept { return planes_minus_[id]; }
  std::span<const std::uint32_t> line(std::uint32_t id) const noexcept { return lines_[id]; }
  std::size_t plane_count() const noexcept { return planes_plus_.size(); }

  PointRegion region(const Point4& xi) const noexcept;
  PointRegion region_of_index(std::uint64_t index) const noexcept;

  // |Σ_ξ| from a dense table filled by the ordered-pair loop on first use.
  std::uint64_t sigma_count(const Point4& xi) const;
  std::span<const std::uint32_t> sigma_table() const;
  // Ordered pairs (a, b) of ordinals with point(a) + point(b) = ξ.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sigma_pairs(const Point4& xi) const;

  // Throws not_on_cone when ord is out of range.
  HSet h_set(std::size_t ord) const;
  // Ordinals η on the cone with (ξ-η) on the cone or zero, tested straight
  // from the product-form defining equation; ξ may be any point.
  std::vector<std::uint32_t> h_set_by_definition(const Point4& xi) const;

 private:
  struct Lazy;

  std::shared_ptr<const FieldCtx> field_;
  ConeModel model_;
  std::uint64_t q4_ = 0;
  LinearMap4 to_product_;
  LinearMap4 from_product_;
  std::vector<Point4> points_;
  std::vector<std::uint64_t> index_;
  std::vector<std::int32_t> ordinal_;
  std::vector<std::uint32_t> antipode_;
  std::vector<Point4> product_;
  std::vector<SegreCoords> segre_;
  std::vector<std::uint32_t> plus_id_;
  std::vector<std::uint32_t> minus_id_;
  std::vector<std::vector<std::uint32_t>> planes_plus_;
  std::vector<std::vector<std::uint32_t>> planes_minus_;
  std::vector<std::vector<std::uint32_t>> lines_;
  std::unique_ptr<Lazy> lazy_;
};

}  // namespace fxcone
