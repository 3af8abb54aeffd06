#include "fracdiff/fieldgrid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace fracdiff::fieldgrid {

namespace {

bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// plans are cached per (dim, M, direction); fftw plan creation is not
// thread-safe, execution via the new-array interface is
fftw_plan get_plan(const GridSpec& spec, int sign) {
  struct Key {
    int dim;
    std::size_t m;
    int sign;
    bool operator<(const Key& o) const {
      return std::tie(dim, m, sign) < std::tie(o.dim, o.m, o.sign);
    }
  };
  static std::map<Key, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(fftw_mutex());
  Key key{spec.dim, spec.points, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int n = static_cast<int>(spec.points);
  std::vector<std::complex<double>> tmp(spec.n_points());
  auto* ptr = reinterpret_cast<fftw_complex*>(tmp.data());
  fftw_plan plan = spec.dim == 1
                       ? fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                       : fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

void run_fft(const GridSpec& spec, std::vector<std::complex<double>>& data, int sign) {
  if (data.size() != spec.n_points())
    throw std::invalid_argument("fft: data size does not match grid");
  fftw_plan plan = get_plan(spec, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

GridSpec::GridSpec(int dim_, double half_width_, std::size_t points_)
    : dim(dim_), half_width(half_width_), points(points_) {
  if (dim != 1 && dim != 2) throw std::domain_error("GridSpec: dim must be 1 or 2");
  if (!(half_width > 0.0)) throw std::domain_error("GridSpec: half_width must be > 0");
  if (points < 16 || !is_pow2(points))
    throw std::domain_error("GridSpec: points must be a power of two >= 16");
}

double GridSpec::cell_volume() const {
  const double h = spacing();
  return dim == 1 ? h : h * h;
}

namespace {
// signed frequency index for FFT bin i of an M-point transform
inline long signed_freq(std::size_t i, std::size_t m) {
  return i < m / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(m);
}
}  // namespace

double GridSpec::mode_lambda(std::size_t flat) const {
  const double k0 = M_PI / half_width;
  if (dim == 1) {
    const long f = signed_freq(flat, points);
    return k0 * k0 * static_cast<double>(f * f);
  }
  const long fi = signed_freq(flat / points, points);
  const long fj = signed_freq(flat % points, points);
  return k0 * k0 * static_cast<double>(fi * fi + fj * fj);
}

GridField::GridField(GridSpec spec, double fill) : spec_(spec), v_(spec.n_points(), fill) {}

GridField::GridField(GridSpec spec, std::vector<double> values)
    : spec_(spec), v_(std::move(values)) {
  if (v_.size() != spec_.n_points())
    throw std::invalid_argument("GridField: values size does not match grid");
}

void fft_forward(const GridSpec& spec, std::vector<std::complex<double>>& data) {
  run_fft(spec, data, FFTW_FORWARD);
}

void fft_inverse(const GridSpec& spec, std::vector<std::complex<double>>& data) {
  run_fft(spec, data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(spec.n_points());
  for (auto& c : data) c *= scale;
}

std::vector<std::complex<double>> to_spectrum(const GridField& f) {
  std::vector<std::complex<double>> data(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) data[i] = f[i];
  fft_forward(f.spec(), data);
  return data;
}

GridField from_spectrum(const GridSpec& spec, std::vector<std::complex<double>> data) {
  fft_inverse(spec, data);
  GridField out(spec);
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return out;
}

GridField heat_apply(const GridField& f, double t) {
  if (!(t >= 0.0)) throw std::domain_error("heat_apply: t must be >= 0");
  if (t == 0.0) return f;
  auto spec_data = to_spectrum(f);
  const auto& mt = mode_table(f.spec());
  std::vector<double> sym(mt.lambda.size());
  for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = std::exp(-mt.lambda[i] * t);
  for (std::size_t i = 0; i < spec_data.size(); ++i) spec_data[i] *= sym[mt.index_of[i]];
  return from_spectrum(f.spec(), std::move(spec_data));
}

double lp_norm(const GridField& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::fabs(f[i]));
    return m;
  }
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1 or infinity");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(std::fabs(f[i]), p);
  return std::pow(acc * f.spec().cell_volume(), 1.0 / p);
}

const ModeTable& mode_table(const GridSpec& spec) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, std::size_t>, ModeTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(spec.dim, spec.half_width, spec.points);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ModeTable mt;
  const std::size_t n = spec.n_points();
  mt.index_of.resize(n);
  std::map<double, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = spec.mode_lambda(i);
    auto [pos, inserted] = seen.emplace(lam, 0);
    (void)inserted;
    mt.index_of[i] = 0;  // fill after all lambdas known
  }
  std::size_t idx = 0;
  for (auto& [lam, slot] : seen) {
    slot = idx++;
    mt.lambda.push_back(lam);
  }
  for (std::size_t i = 0; i < n; ++i) mt.index_of[i] = seen[spec.mode_lambda(i)];
  return cache.emplace(key, std::move(mt)).first->second;
}

void write_csv(std::ostream& os, const GridField& f) {
  const GridSpec& g = f.spec();
  char buf[96];
  if (g.dim == 1) {
    os << "x,value\n";
    for (std::size_t i = 0; i < g.points; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.coord(i), f[i]);
      os << buf;
    }
  } else {
    os << "x,y,value\n";
    for (std::size_t i = 0; i < g.points; ++i)
      for (std::size_t j = 0; j < g.points; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.coord(i), g.coord(j),
                      f.at(i, j));
        os << buf;
      }
  }
}

}  // namespace fracdiff::fieldgrid
