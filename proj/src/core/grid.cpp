#include "llg/core/grid.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <vector>

#include "llg/core/error.hpp"

namespace llg {

struct Grid::Tables {
  std::once_flag once;
  std::array<std::vector<double>, 3> axis;
  std::vector<double> xi2;
  std::vector<double> xi;
  std::vector<double> mask;
};

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, std::array<int, 3> sizes, std::array<double, 3> lengths)
    : dim_(dim), sizes_(sizes), lengths_(lengths), tables_(std::make_shared<Tables>()) {
  if (dim < 1 || dim > 3) throw ConfigError("grid dimension must be 1, 2 or 3");
  for (int j = 0; j < 3; ++j) {
    if (j < dim) {
      if (sizes_[j] < 8 || !is_power_of_two(sizes_[j]))
        throw ConfigError("grid sizes must be powers of two >= 8");
      if (!(lengths_[j] > 0) || !std::isfinite(lengths_[j]))
        throw ConfigError("grid periods must be positive and finite");
    } else {
      sizes_[j] = 1;
      lengths_[j] = 1.0;
    }
  }
  count_ = static_cast<std::size_t>(sizes_[0]) * sizes_[1] * sizes_[2];
}

Grid Grid::cube(int dim, int points, double length) {
  return Grid(dim, {points, points, points}, {length, length, length});
}

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (int j = 0; j < dim_; ++j) v *= spacing(j);
  return v;
}

double Grid::volume() const noexcept {
  double v = 1.0;
  for (int j = 0; j < dim_; ++j) v *= lengths_[j];
  return v;
}

int Grid::mode(int axis, int index) const noexcept {
  const int n = sizes_[axis];
  if (n == 1) return 0;
  return index < n / 2 ? index : index - n;
}

double Grid::wavenumber(int axis, int index) const noexcept {
  if (sizes_[axis] == 1) return 0.0;
  return 2 * std::numbers::pi * mode(axis, index) / lengths_[axis];
}

double Grid::min_wavenumber() const noexcept {
  double best = 0.0;
  for (int j = 0; j < dim_; ++j) {
    const double k = 2 * std::numbers::pi / lengths_[j];
    if (best == 0.0 || k < best) best = k;
  }
  return best;
}

double Grid::max_wavenumber_norm() const noexcept {
  double s = 0.0;
  for (int j = 0; j < dim_; ++j) {
    const double k = std::numbers::pi * sizes_[j] / lengths_[j];
    s += k * k;
  }
  return std::sqrt(s);
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const noexcept {
  const int i2 = static_cast<int>(flat % sizes_[2]);
  flat /= sizes_[2];
  const int i1 = static_cast<int>(flat % sizes_[1]);
  const int i0 = static_cast<int>(flat / sizes_[1]);
  return {i0, i1, i2};
}

Wavevector Grid::wavevector(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  return {wavenumber(0, idx[0]), wavenumber(1, idx[1]), wavenumber(2, idx[2])};
}

const Grid::Tables& Grid::tables() const {
  Tables& t = *tables_;
  std::call_once(t.once, [&] {
    for (int j = 0; j < 3; ++j) {
      t.axis[j].resize(sizes_[j]);
      for (int i = 0; i < sizes_[j]; ++i) t.axis[j][i] = wavenumber(j, i);
    }
    t.xi2.resize(count_);
    t.xi.resize(count_);
    t.mask.resize(count_);
    std::size_t p = 0;
    for (int i0 = 0; i0 < sizes_[0]; ++i0) {
      const double k0 = t.axis[0][i0];
      const bool in0 = 3 * std::abs(mode(0, i0)) <= sizes_[0];
      for (int i1 = 0; i1 < sizes_[1]; ++i1) {
        const double k1 = t.axis[1][i1];
        const bool in1 = sizes_[1] == 1 || 3 * std::abs(mode(1, i1)) <= sizes_[1];
        for (int i2 = 0; i2 < sizes_[2]; ++i2, ++p) {
          const double k2 = t.axis[2][i2];
          const bool in2 = sizes_[2] == 1 || 3 * std::abs(mode(2, i2)) <= sizes_[2];
          t.xi2[p] = k0 * k0 + k1 * k1 + k2 * k2;
          t.xi[p] = std::sqrt(t.xi2[p]);
          t.mask[p] = (in0 && in1 && in2) ? 1.0 : 0.0;
        }
      }
    }
  });
  return t;
}

std::span<const double> Grid::xi_squared() const { return tables().xi2; }
std::span<const double> Grid::xi_norm() const { return tables().xi; }
std::span<const double> Grid::axis_wavenumbers(int axis) const { return tables().axis[axis]; }
std::span<const double> Grid::dealias_mask() const { return tables().mask; }

bool Grid::operator==(const Grid& other) const noexcept {
  return dim_ == other.dim_ && sizes_ == other.sizes_ && lengths_ == other.lengths_;
}

std::string Grid::describe() const {
  std::ostringstream os;
  for (int j = 0; j < dim_; ++j) os << (j ? "x" : "") << sizes_[j];
  os << " (n=" << dim_ << ")";
  return os.str();
}

}  // namespace llg
