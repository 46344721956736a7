#include "ionfield/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionfield/errors.hpp"

namespace ionfield {

Grid Grid::make(int dim, double half_width, int cells_per_axis) {
  if (dim != 1 && dim != 2) {
    throw ValidationError("grid.dim", "dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("grid.L", "half width must be positive and finite");
  }
  if (cells_per_axis < 2 || cells_per_axis % 2 != 0) {
    throw ValidationError("grid.N", "cells per axis must be a positive even integer, got " +
                                        std::to_string(cells_per_axis));
  }
  return Grid(dim, half_width, cells_per_axis, 2.0 * half_width / cells_per_axis);
}

Grid build_grid(int dim, double half_width, int cells_per_axis) {
  return Grid::make(dim, half_width, cells_per_axis);
}

double Grid::center_radius_squared(std::size_t flat) const noexcept {
  if (dim_ == 1) {
    const double x = center(static_cast<int>(flat));
    return x * x;
  }
  const auto n = static_cast<std::size_t>(cells_);
  const double x = center(static_cast<int>(flat / n));
  const double y = center(static_cast<int>(flat % n));
  return x * x + y * y;
}

std::vector<double> Grid::centers() const {
  std::vector<double> out(static_cast<std::size_t>(cells_));
  for (int j = 0; j < cells_; ++j) out[static_cast<std::size_t>(j)] = center(j);
  return out;
}

void State::check_consistent() const {
  if (species.empty()) throw ValidationError("species", "at least one species is required");
  for (std::size_t m = 0; m < species.size(); ++m) {
    if (species[m].values.size() != grid.cell_count()) {
      throw ValidationError("species[" + std::to_string(m) + "]",
                            "field length does not match the grid cell count");
    }
  }
}

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double total_mass(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.cell_count()) {
    throw ValidationError("field", "field length does not match the grid cell count");
  }
  return grid.cell_measure() * compensated_sum(values);
}

Field average_blocks(std::span<const double> values, int dim, int fine_cells, int ratio) {
  if (ratio < 1 || fine_cells % ratio != 0) {
    throw ValidationError("grid.N", "fine grid is not an integer refinement of the coarse grid");
  }
  const int coarse = fine_cells / ratio;
  if (dim == 1) {
    Field out(static_cast<std::size_t>(coarse));
    for (int c = 0; c < coarse; ++c) {
      double s = 0.0;
      for (int r = 0; r < ratio; ++r) s += values[static_cast<std::size_t>(c * ratio + r)];
      out[static_cast<std::size_t>(c)] = s / ratio;
    }
    return out;
  }
  const auto nf = static_cast<std::size_t>(fine_cells);
  const auto nc = static_cast<std::size_t>(coarse);
  Field out(nc * nc);
  const double weight = static_cast<double>(ratio) * ratio;
  for (std::size_t cj = 0; cj < nc; ++cj) {
    for (std::size_t ck = 0; ck < nc; ++ck) {
      double s = 0.0;
      for (std::size_t rj = 0; rj < static_cast<std::size_t>(ratio); ++rj) {
        const std::size_t row = (cj * static_cast<std::size_t>(ratio) + rj) * nf;
        for (std::size_t rk = 0; rk < static_cast<std::size_t>(ratio); ++rk) {
          s += values[row + ck * static_cast<std::size_t>(ratio) + rk];
        }
      }
      out[cj * nc + ck] = s / weight;
    }
  }
  return out;
}

Field restrict_to(std::span<const double> fine, const Grid& fine_grid, const Grid& coarse_grid) {
  if (fine_grid.dim() != coarse_grid.dim() || fine_grid.half_width() != coarse_grid.half_width()) {
    throw ValidationError("grid", "grids do not cover the same box");
  }
  const int nf = fine_grid.cells_per_axis();
  const int nc = coarse_grid.cells_per_axis();
  if (nf < nc || nf % nc != 0) {
    throw ValidationError("grid.N", "fine grid is not nested in the coarse grid");
  }
  const int ratio = nf / nc;
  if ((ratio & (ratio - 1)) != 0) {
    throw ValidationError("grid.N", "grid nesting ratio must be a power of two");
  }
  if (fine.size() != fine_grid.cell_count()) {
    throw ValidationError("field", "field length does not match the fine grid");
  }
  return average_blocks(fine, fine_grid.dim(), nf, ratio);
}

ErrorNorms error_norms(std::span<const Field> a, std::span<const Field> b, const Grid& grid) {
  if (a.size() != b.size()) throw ValidationError("field", "species count mismatch");
  ErrorNorms out;
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m].size() != grid.cell_count() || b[m].size() != grid.cell_count()) {
      throw ValidationError("field", "field length does not match the grid cell count");
    }
    for (std::size_t j = 0; j < a[m].size(); ++j) {
      const double d = std::abs(a[m][j] - b[m][j]);
      out.linf = std::max(out.linf, d);
      sum1 += d;
      sum2 += d * d;
    }
  }
  out.l1 = grid.cell_measure() * sum1;
  out.l2 = std::sqrt(grid.cell_measure() * sum2);
  return out;
}

ErrorNorms error_norms(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  const Field fa(a.begin(), a.end());
  const Field fb(b.begin(), b.end());
  return error_norms(std::span<const Field>(&fa, 1), std::span<const Field>(&fb, 1), grid);
}

}  // namespace ionfield
