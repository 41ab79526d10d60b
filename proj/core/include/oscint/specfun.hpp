#pragma once
#include "oscint/types.hpp"

namespace oscint {

enum class Side { Left, Right };
const char* to_string(Side s);

// D(x) = exp(-x^2) \int_0^x exp(t^2) dt
double dawson(double x);

// Faddeeva w(z) = exp(-z^2) erfc(-iz); accurate for Im z >= 0, extended below by
// w(z) = 2 exp(-z^2) - w(-z).
cplx faddeeva_w(cplx z);

// G^{l/r}(zeta) = (1/2 pi i) \int_R exp(-w^2/2)/(zeta - w) dw, the line passing
// the pole on the requested side.
cplx g_gauss(cplx zeta, Side side);

// G^{l/r} for rho(w) = r w^2/2; reference line k R with k = (-1/r)^{1/2}
// (principal branch), oriented towards Re > 0.
cplx g_general(cplx r, cplx zeta, Side side);

// Left iff Im(e^{-i pi/4} zeta_hat) > 0
Side branch_select(cplx zeta_hat);

}  // namespace oscint
