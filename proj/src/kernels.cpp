#include "kernels.hpp"

#include <cmath>

#include "errors.hpp"

namespace frcone {

void FRParams::validate() const {
  if (n < 2) throw DomainError("dimension n must be at least 2");
}

void SpaceSpec::validate() const {
  for (std::size_t i = 0; i < 2; ++i) {
    if (p[i] < 1) throw DomainError("p exponents must satisfy p >= 1");
    if (q[i] < 1) throw DomainError("q exponents must satisfy q >= 1");
    if (alpha[i] <= -1) throw DomainError("alpha weights must exceed -1");
    if (beta[i] <= -1) throw DomainError("beta weights must exceed -1");
  }
}

std::complex<double> cpow(std::complex<double> base, const Rational& exponent) {
  return cpow(base, to_double(exponent));
}

std::complex<double> cpow(std::complex<double> base, double exponent) {
  if (base.imag() == 0.0 && !(base.real() > 0.0)) {
    throw BranchCutError("complex power requested on the closed negative real axis");
  }
  if (exponent == 0.0) return 1.0;
  return std::exp(exponent * std::log(base));
}

FactorKernel::FactorKernel(const FRParams& params, Factor factor)
    : b_(to_double(params.b[index(factor)])), c_(to_double(params.c[index(factor)])) {}

std::complex<double> FactorKernel::holomorphic(TubeView z, TubeView u) const {
  const double weight = b_ == 0.0 ? 1.0 : std::pow(g_of(u), b_);
  if (c_ == 0.0) return weight;
  return weight * cpow(q_conj_difference(z, u), -c_);
}

double FactorKernel::modulus(TubeView z, TubeView u) const {
  const double weight = b_ == 0.0 ? 1.0 : std::pow(g_of(u), b_);
  if (c_ == 0.0) return weight;
  return weight * std::pow(std::abs(q_conj_difference(z, u)), -c_);
}

std::complex<double> kernel_T(const TubePoint& z, const TubePoint& u, Factor factor, const FRParams& params) {
  params.validate();
  return FactorKernel(params, factor).holomorphic(view(z), view(u));
}

double kernel_S(const TubePoint& z, const TubePoint& u, Factor factor, const FRParams& params) {
  params.validate();
  return FactorKernel(params, factor).modulus(view(z), view(u));
}

AdjointResult adjoint_params(const FRParams& params, const SpaceSpec& spaces) {
  params.validate();
  spaces.validate();
  AdjointResult out;
  out.params.n = params.n;
  for (std::size_t i = 0; i < 2; ++i) {
    out.params.a[i] = params.b[i] - spaces.alpha[i];
    out.params.b[i] = params.a[i] + spaces.beta[i];
    out.params.c[i] = params.c[i];
  }
  bool finite = true;
  for (std::size_t i = 0; i < 2; ++i) finite = finite && spaces.p[i] > 1 && spaces.q[i] > 1;
  if (finite) {
    SpaceSpec dual;
    for (std::size_t i = 0; i < 2; ++i) {
      dual.p[i] = Rational(1) / conjugate_reciprocal(spaces.q[i]);
      dual.q[i] = Rational(1) / conjugate_reciprocal(spaces.p[i]);
      dual.alpha[i] = spaces.beta[i];
      dual.beta[i] = spaces.alpha[i];
    }
    out.spaces = dual;
  }
  return out;
}

}  // namespace frcone
