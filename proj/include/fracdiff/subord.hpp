#pragma once

#include <memory>
#include <optional>

#include "fracdiff/fieldgrid.hpp"
#include "fracdiff/specfun.hpp"

// The subordinated solution operators
//   P_a(t) u0 = int_0^inf phi_a(th) T(t^a th) u0 dth,
//   S_a(t) u0 = a int_0^inf th phi_a(th) T(t^a th) u0 dth,
// with two interchangeable evaluation paths:
//   ml_symbol          E_{a,1}(-|k|^2 t^a) resp. E_{a,a}(-|k|^2 t^a) per mode
//   wright_quadrature  the subordination integral by the phi_a Gauss rule
// The ml path is the solver default; the wright path validates the
// subordination representation itself.

namespace fracdiff::subord {

enum class Path { ml_symbol, wright_quadrature };

class SubordOperator {
 public:
  explicit SubordOperator(double alpha, Path path = Path::ml_symbol,
                          std::size_t quad_nodes = 64);

  double alpha() const { return alpha_; }
  Path path() const { return path_; }

  // scalar symbols at squared wavenumber lambda >= 0
  double symbol_p(double lambda, double t) const;
  double symbol_s(double lambda, double t) const;

  fieldgrid::GridField p_apply(const fieldgrid::GridField& f, double t) const;
  fieldgrid::GridField s_apply(const fieldgrid::GridField& f, double t) const;

  const specfun::WrightQuadrature* quadrature() const {
    return quad_ ? &*quad_ : nullptr;
  }

 private:
  fieldgrid::GridField apply(const fieldgrid::GridField& f, double t, bool s_kind) const;

  double alpha_;
  Path path_;
  specfun::MittagLeffler ml1_, mla_;
  std::optional<specfun::WrightQuadrature> quad_;
};

}  // namespace fracdiff::subord
