#include "vpe/distance.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vpe/error.hpp"
#include "vpe/kernels.hpp"

namespace vpe {
namespace {

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::table, "table"},
    {Family::euclidean, "euclidean"},
    {Family::lp_frac, "lp_frac"},
    {Family::kl, "kl"},
    {Family::itakura_saito, "itakura_saito"},
    {Family::sq_euclidean, "sq_euclidean"},
    {Family::symmetrized, "symmetrized"},
    {Family::product, "product"},
};

void require_coords(const PointSpace& space, Family family) {
  if (!space.has_coords()) {
    throw Error(ErrorKind::DomainViolation,
                std::string(to_string(family)) + " distance needs point coordinates");
  }
}

void require_positive_coords(const PointSpace& space, Family family) {
  require_coords(space, family);
  for (PointIndex i = 0; i < space.size(); ++i) {
    for (double c : space.coords(i)) {
      if (!(c > 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::DomainViolation,
                    std::string(to_string(family)) + " requires strictly positive coordinates; point '" +
                        space.id(i) + "' has " + std::to_string(c));
      }
    }
  }
}

void require_probability_vectors(const PointSpace& space) {
  require_positive_coords(space, Family::kl);
  for (PointIndex i = 0; i < space.size(); ++i) {
    double total = 0.0;
    for (double c : space.coords(i)) total += c;
    if (std::abs(total - 1.0) > kKlNormalizationTol) {
      throw Error(ErrorKind::DomainViolation,
                  "kl requires coordinates summing to 1; point '" + space.id(i) + "' sums to " +
                      std::to_string(total));
    }
  }
}

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

double lp_frac_distance(std::span<const double> a, std::span<const double> b, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::pow(std::abs(a[i] - b[i]), p);
  return std::pow(sum, 1.0 / p);
}

double kl_divergence(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * std::log(a[i] / b[i]);
  return sum;
}

double itakura_saito_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ratio = a[i] / b[i];
    sum += ratio - std::log(ratio) - 1.0;
  }
  return sum;
}

void DistanceSpec::materialize(const std::vector<double>& rows) {
  const std::size_t n = size();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      const double v = rows[x * n + y];
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::AxiomViolation, "d(" + space_->id(x) + "," + space_->id(y) +
                                                   ") = " + std::to_string(v) +
                                                   " is not a finite nonnegative real");
      }
      if (x == y && v != 0.0) {
        throw Error(ErrorKind::AxiomViolation,
                    "identity axiom: d(" + space_->id(x) + "," + space_->id(x) + ") must be 0");
      }
      if (x != y && v == 0.0) {
        throw Error(ErrorKind::AxiomViolation, "identity axiom: d(" + space_->id(x) + "," +
                                                   space_->id(y) + ") = 0 for distinct points");
      }
    }
  }
  rows_ = rows;
  cols_.resize(n * n);
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) cols_[y * n + x] = rows_[x * n + y];
  }
}

double DistanceSpec::product_eval(PointIndex a, PointIndex b) const {
  const std::size_t m = inner_->size();
  const PointIndex x = a / m, y = a % m;
  const PointIndex xp = b / m, yp = b % m;
  return (*inner_)(xp, x) + (*inner_)(yp, y);
}

double DistanceSpec::evaluate(std::string_view x, std::string_view y) const {
  return (*this)(space_->index_of(x), space_->index_of(y));
}

void DistanceSpec::column_to(PointIndex target, std::span<double> out) const {
  const std::size_t n = size();
  if (!cols_.empty()) {
    std::copy_n(cols_.begin() + static_cast<std::ptrdiff_t>(target * n), n, out.begin());
    return;
  }
  // rho((x, y), (x', y')) = d(x', x) + d(y', y); rows of the base table are d(x', .)
  const std::size_t m = inner_->size();
  const auto base = inner_->matrix();
  const PointIndex xp = target / m, yp = target % m;
  for (PointIndex x = 0; x < m; ++x) {
    const double dx = base[xp * m + x];
    for (PointIndex y = 0; y < m; ++y) out[x * m + y] = dx + base[yp * m + y];
  }
}

DistanceSpec make_builtin(Family family, const BuiltinParams& params, SpacePtr space) {
  if (!space) throw Error(ErrorKind::BadParameter, "distance needs a point space");
  DistanceSpec spec;
  spec.family_ = family;
  spec.space_ = std::move(space);
  const PointSpace& sp = *spec.space_;
  const std::size_t n = sp.size();
  std::vector<double> rows(n * n, 0.0);

  auto fill = [&](auto&& formula) {
    for (PointIndex x = 0; x < n; ++x) {
      for (PointIndex y = 0; y < n; ++y) {
        rows[x * n + y] = x == y ? 0.0 : formula(sp.coords(x), sp.coords(y));
      }
    }
  };

  switch (family) {
    case Family::table: {
      if (params.matrix.size() != n) {
        throw Error(ErrorKind::BadParameter, "table has " + std::to_string(params.matrix.size()) +
                                                 " rows for a space of " + std::to_string(n) +
                                                 " points");
      }
      for (PointIndex x = 0; x < n; ++x) {
        if (params.matrix[x].size() != n) {
          throw Error(ErrorKind::BadParameter, "table row " + std::to_string(x) + " has " +
                                                   std::to_string(params.matrix[x].size()) +
                                                   " entries, expected " + std::to_string(n));
        }
        for (PointIndex y = 0; y < n; ++y) rows[x * n + y] = params.matrix[x][y];
      }
      break;
    }
    case Family::lp_frac: {
      if (!params.p || !(*params.p > 0.0 && *params.p < 1.0)) {
        throw Error(ErrorKind::BadParameter, "lp_frac exponent must lie in (0, 1)");
      }
      require_coords(sp, family);
      spec.p_ = params.p;
      const double p = *params.p;
      fill([p](auto a, auto b) { return lp_frac_distance(a, b, p); });
      break;
    }
    case Family::euclidean:
      require_coords(sp, family);
      fill([](auto a, auto b) { return std::sqrt(kernels::active().squared_distance(a, b)); });
      break;
    case Family::sq_euclidean:
      require_coords(sp, family);
      fill([](auto a, auto b) { return kernels::active().squared_distance(a, b); });
      break;
    case Family::kl:
      require_probability_vectors(sp);
      fill([](auto a, auto b) { return kl_divergence(a, b); });
      break;
    case Family::itakura_saito:
      require_positive_coords(sp, family);
      fill([](auto a, auto b) { return itakura_saito_distance(a, b); });
      break;
    case Family::symmetrized:
    case Family::product:
      throw Error(ErrorKind::BadParameter, std::string(to_string(family)) +
                                               " is derived from another spec, not a builtin");
  }
  spec.materialize(rows);
  return spec;
}

DistanceSpec symmetrize(const DistanceSpec& spec, double w_right, double w_left) {
  if (!(w_right >= 0.0) || !(w_left >= 0.0) || !std::isfinite(w_right) || !std::isfinite(w_left) ||
      w_right + w_left <= 0.0) {
    throw Error(ErrorKind::BadParameter, "symmetrization weights must be nonnegative, not both zero");
  }
  if (spec.family() == Family::product) {
    throw Error(ErrorKind::BadParameter, "cannot symmetrize a product distance");
  }
  DistanceSpec out;
  out.family_ = Family::symmetrized;
  out.space_ = spec.space_ptr();
  out.weights_ = {w_right, w_left};
  out.inner_ = std::make_shared<const DistanceSpec>(spec);
  const std::size_t n = spec.size();
  std::vector<double> rows(n * n);
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      const double fwd = spec(x, y), back = spec(y, x);
      rows[x * n + y] = w_right == w_left ? w_right * (fwd + back) : w_right * fwd + w_left * back;
    }
  }
  out.materialize(rows);
  return out;
}

DistanceSpec product_distance(const DistanceSpec& spec) {
  if (spec.family() == Family::product) {
    throw Error(ErrorKind::BadParameter, "nested product distances are not supported");
  }
  DistanceSpec out;
  out.family_ = Family::product;
  out.space_ = make_pair_space(spec.space());
  out.inner_ = std::make_shared<const DistanceSpec>(spec);
  return out;
}

double min_positive_distance(const DistanceSpec& spec) {
  if (spec.family() == Family::product) return min_positive_distance(*spec.inner());
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = spec.size();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (x != y) best = std::min(best, spec(x, y));
    }
  }
  return best;
}

}  // namespace vpe
