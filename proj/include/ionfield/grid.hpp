#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ionfield {

using Field = std::vector<double>;

/// Uniform cell partition of the box [-L, L]^dim with N cells per axis.
///
/// Cells are indexed from 0; in 2D the flat index is j * N + k where j runs
/// along x and k along y, so a fixed-j slab of N values is contiguous in y.
class Grid {
 public:
  Grid() = default;

  /// Throws ValidationError unless dim is 1 or 2, L > 0 and N >= 2 is even.
  static Grid make(int dim, double half_width, int cells_per_axis);

  int dim() const noexcept { return dim_; }
  double half_width() const noexcept { return half_width_; }
  int cells_per_axis() const noexcept { return cells_; }
  double spacing() const noexcept { return spacing_; }

  std::size_t cell_count() const noexcept {
    return dim_ == 1 ? static_cast<std::size_t>(cells_)
                     : static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_);
  }

  /// Lebesgue measure of one cell (dx or dx * dy).
  double cell_measure() const noexcept { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }

  double center(int j) const noexcept { return -half_width_ + (j + 0.5) * spacing_; }

  std::size_t index(int j, int k) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_) +
           static_cast<std::size_t>(k);
  }

  /// Squared distance of the cell center from the origin.
  double center_radius_squared(std::size_t flat) const noexcept;

  std::vector<double> centers() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(int dim, double half_width, int cells, double spacing)
      : dim_(dim), half_width_(half_width), cells_(cells), spacing_(spacing) {}

  int dim_ = 1;
  double half_width_ = 1.0;
  int cells_ = 2;
  double spacing_ = 1.0;
};

/// Same as Grid::make; kept as a free function for symmetry with the rest of
/// the module's operations.
Grid build_grid(int dim, double half_width, int cells_per_axis);

/// Concentration cell averages of one ionic species.
struct SpeciesField {
  int valence = 0;
  Field values;
};

struct State {
  Grid grid;
  std::vector<SpeciesField> species;
  double time = 0.0;

  /// Throws ValidationError when a species does not match the grid.
  void check_consistent() const;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values) noexcept;

/// cell_measure * sum of the cell averages.
double total_mass(std::span<const double> values, const Grid& grid);

/// Block averages of `ratio` consecutive cells per axis. `values` lives on a
/// grid of `fine_cells` cells per axis.
Field average_blocks(std::span<const double> values, int dim, int fine_cells, int ratio);

/// Coarse-grid cell averages of a fine-grid field. The grids must cover the
/// same box and nest by a power-of-two ratio.
Field restrict_to(std::span<const double> fine, const Grid& fine_grid, const Grid& coarse_grid);

struct ErrorNorms {
  double linf = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

/// Discrete l-infinity, l1 and l2 distances. The multi-species overload sums
/// over species inside the l1/l2 norms and maximises across species for l-inf.
ErrorNorms error_norms(std::span<const double> a, std::span<const double> b, const Grid& grid);
ErrorNorms error_norms(std::span<const Field> a, std::span<const Field> b, const Grid& grid);

}  // namespace ionfield
