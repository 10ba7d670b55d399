#pragma once

#include "fiotk/grid.hpp"

namespace fiotk {

// f^(xi_k) = (L/N)^n sum_x f(x) e^{-i xi_k . x}
Spectrum forward_transform(const GridField& f);
// f(x) = L^{-n} sum_k f^(xi_k) e^{i xi_k . x}
GridField inverse_transform(const Spectrum& spectrum);

GridField apply_multiplier(const GridField& f, const SpectralMultiplier& m);
Spectrum multiply(const Spectrum& s, const SpectralMultiplier& m);

GridField bessel_potential(const GridField& f, double s);
SpectralMultiplier bessel_multiplier(const GridSpec& spec, double s);

// Riemann-sum L^p norm; p in (1, inf).
double lp_norm(const GridField& f, double p);
// Same quadrature without the range restriction; used for sup-norm style diagnostics.
double lp_norm_unchecked(const GridField& f, double p);
double l2_norm(const GridField& f);
double spectral_l2_norm(const Spectrum& s);

}  // namespace fiotk
