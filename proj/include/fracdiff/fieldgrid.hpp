#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

// Periodic spatial discretisation of R^N (N = 1 or 2) on [-L, L]^N with M
// points per axis, and the heat semigroup diagonalised in Fourier space.

namespace fracdiff::fieldgrid {

struct GridSpec {
  int dim = 1;           // 1 or 2
  double half_width = 20.0;  // L
  std::size_t points = 64;   // M, power of two >= 16

  GridSpec() = default;
  GridSpec(int dim_, double half_width_, std::size_t points_);

  std::size_t n_points() const { return dim == 1 ? points : points * points; }
  double spacing() const { return 2.0 * half_width / static_cast<double>(points); }
  double cell_volume() const;
  // coordinate of index i along one axis, x in [-L, L)
  double coord(std::size_t i) const {
    return -half_width + spacing() * static_cast<double>(i);
  }
  // squared wavenumber |k|^2 of the flat mode index (k in (pi/L) Z)
  double mode_lambda(std::size_t flat) const;

  bool operator==(const GridSpec&) const = default;
};

class GridField {
 public:
  GridField() = default;
  explicit GridField(GridSpec spec, double fill = 0.0);
  GridField(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  // row-major index of (i) or (i, j)
  double& at(std::size_t i, std::size_t j) { return v_[i * spec_.points + j]; }
  double at(std::size_t i, std::size_t j) const { return v_[i * spec_.points + j]; }

 private:
  GridSpec spec_;
  std::vector<double> v_;
};

// in-place complex FFT over the grid layout (row-major for dim 2)
void fft_forward(const GridSpec& spec, std::vector<std::complex<double>>& data);
void fft_inverse(const GridSpec& spec, std::vector<std::complex<double>>& data);

std::vector<std::complex<double>> to_spectrum(const GridField& f);
GridField from_spectrum(const GridSpec& spec, std::vector<std::complex<double>> spec_data);

// e^{t Laplace} f: multiplication by e^{-|k|^2 t} on each mode
GridField heat_apply(const GridField& f, double t);

// discrete L^p norm with cell volume (2L/M)^N; p = infinity() gives max|f|
double lp_norm(const GridField& f, double p);

// distinct |k|^2 values and the map mode -> distinct index (shared by the
// subordination operators and the solver to dedupe symbol evaluations)
struct ModeTable {
  std::vector<double> lambda;        // distinct |k|^2, ascending
  std::vector<std::size_t> index_of; // flat mode -> index into lambda
};
const ModeTable& mode_table(const GridSpec& spec);

// CSV snapshot, header "x,value" or "x,y,value", row-major
void write_csv(std::ostream& os, const GridField& f);

}  // namespace fracdiff::fieldgrid
