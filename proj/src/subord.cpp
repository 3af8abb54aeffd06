#include "fracdiff/subord.hpp"

#include <cmath>
#include <stdexcept>

namespace fracdiff::subord {

SubordOperator::SubordOperator(double alpha, Path path, std::size_t quad_nodes)
    : alpha_(alpha),
      path_(path),
      ml1_(alpha, 1.0),
      mla_(alpha, alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("SubordOperator: alpha must be in (0,1)");
  if (path_ == Path::wright_quadrature)
    quad_.emplace(specfun::WrightParams{alpha}, quad_nodes);
}

double SubordOperator::symbol_p(double lambda, double t) const {
  const double z = lambda * std::pow(t, alpha_);
  if (path_ == Path::ml_symbol) return ml1_(-z);
  return quad_->integrate([&](double th) { return std::exp(-z * th); });
}

double SubordOperator::symbol_s(double lambda, double t) const {
  const double z = lambda * std::pow(t, alpha_);
  if (path_ == Path::ml_symbol) return mla_(-z);
  return alpha_ * quad_->integrate([&](double th) { return th * std::exp(-z * th); });
}

fieldgrid::GridField SubordOperator::apply(const fieldgrid::GridField& f, double t,
                                           bool s_kind) const {
  if (!(t >= 0.0)) throw std::domain_error("SubordOperator: t must be >= 0");
  if (t == 0.0 && !s_kind) return f;  // P_a(0) is the identity
  auto spec_data = fieldgrid::to_spectrum(f);
  const auto& mt = fieldgrid::mode_table(f.spec());
  std::vector<double> sym(mt.lambda.size());
  for (std::size_t i = 0; i < sym.size(); ++i)
    sym[i] = s_kind ? symbol_s(mt.lambda[i], t) : symbol_p(mt.lambda[i], t);
  for (std::size_t i = 0; i < spec_data.size(); ++i) spec_data[i] *= sym[mt.index_of[i]];
  return fieldgrid::from_spectrum(f.spec(), std::move(spec_data));
}

fieldgrid::GridField SubordOperator::p_apply(const fieldgrid::GridField& f, double t) const {
  return apply(f, t, false);
}

fieldgrid::GridField SubordOperator::s_apply(const fieldgrid::GridField& f, double t) const {
  return apply(f, t, true);
}

}  // namespace fracdiff::subord
