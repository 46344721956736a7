#include "ionfield/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ionfield/errors.hpp"

namespace ionfield {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, std::string_view field, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(field) + "." + name, "must be positive and finite");
  }
}

}  // namespace

void validate_kernel(const KernelSpec& spec, std::string_view field) {
  std::visit(Overloaded{
                 [&](const RegularizedNewtonian& k) {
                   if (k.dimension < 2) {
                     throw ValidationError(std::string(field) + ".d", "dimension must be >= 2");
                   }
                   require_positive(k.a, field, "a");
                 },
                 [&](const RegularizedPower& k) {
                   if (!(k.eta >= 0.0) || !std::isfinite(k.eta)) {
                     throw ValidationError(std::string(field) + ".eta",
                                           "must be non-negative and finite");
                   }
                   require_positive(k.exponent, field, "k");
                   require_positive(k.a, field, "a");
                 },
                 [&](const Log2DCoulomb& k) { require_positive(k.a, field, "a"); },
                 [&](const VanDerWaals& k) {
                   require_positive(k.correlation_length, field, "l_c");
                   require_positive(k.a, field, "a");
                 },
                 [](const ExpDecay&) {},
                 [](const ZeroKernel&) {},
             },
             spec);
}

bool is_identically_zero(const KernelSpec& spec) noexcept {
  if (std::holds_alternative<ZeroKernel>(spec)) return true;
  if (const auto* p = std::get_if<RegularizedPower>(&spec)) return p->eta == 0.0;
  return false;
}

std::string_view kernel_type_name(const KernelSpec& spec) noexcept {
  return std::visit(Overloaded{
                        [](const RegularizedNewtonian&) { return "regularized_newtonian"; },
                        [](const RegularizedPower&) { return "regularized_power"; },
                        [](const Log2DCoulomb&) { return "log2d_coulomb"; },
                        [](const ExpDecay&) { return "exp_decay"; },
                        [](const VanDerWaals&) { return "van_der_waals"; },
                        [](const ZeroKernel&) { return "zero"; },
                    },
                    spec);
}

double eval_kernel(const KernelSpec& spec, double distance) {
  const double r2 = distance * distance;
  return std::visit(
      Overloaded{
          [&](const RegularizedNewtonian& k) {
            const double s = r2 + k.a * k.a;
            if (k.dimension == 2) return -0.5 * std::log(s);
            return std::pow(s, -0.5 * (k.dimension - 2));
          },
          [&](const RegularizedPower& k) {
            if (k.eta == 0.0) return 0.0;
            return k.eta * std::pow(r2 + k.a * k.a, -0.5 * k.exponent);
          },
          [&](const Log2DCoulomb& k) {
            return -std::log(std::sqrt(r2 + k.a * k.a)) / (2.0 * std::numbers::pi);
          },
          [&](const ExpDecay&) { return std::exp(-std::abs(distance)); },
          [&](const VanDerWaals& k) {
            const double lc = k.correlation_length;
            return std::exp(-std::abs(distance) / lc) / (std::sqrt(r2 + k.a * k.a) / lc);
          },
          [](const ZeroKernel&) { return 0.0; },
      },
      spec);
}

KernelTable KernelTable::build(const KernelSpec& spec, const Grid& grid) {
  validate_kernel(spec, "kernel");
  KernelTable t;
  t.spec_ = spec;
  t.grid_ = grid;
  const int n = grid.cells_per_axis();
  t.span_ = static_cast<std::size_t>(2 * n - 1);
  const double h = grid.spacing();
  if (grid.dim() == 1) {
    t.values_.resize(t.span_);
    for (int o = -(n - 1); o <= n - 1; ++o) {
      t.values_[static_cast<std::size_t>(o + n - 1)] = eval_kernel(spec, o * h);
    }
  } else {
    t.values_.resize(t.span_ * t.span_);
    for (int ox = -(n - 1); ox <= n - 1; ++ox) {
      const double dx = ox * h;
      for (int oy = -(n - 1); oy <= n - 1; ++oy) {
        const double dy = oy * h;
        t.values_[static_cast<std::size_t>(ox + n - 1) * t.span_ +
                  static_cast<std::size_t>(oy + n - 1)] = eval_kernel(spec, std::sqrt(dx * dx + dy * dy));
      }
    }
  }
  for (double v : t.values_) {
    if (!std::isfinite(v)) throw ValidationError("kernel", "kernel table has non-finite entries");
    if (v != 0.0) t.all_zero_ = false;
  }
  return t;
}

KernelTable build_table(const KernelSpec& spec, const Grid& grid) {
  return KernelTable::build(spec, grid);
}

}  // namespace ionfield
