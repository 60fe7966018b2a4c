#pragma once

#include "fusionkz/kz.hpp"

namespace fusionkz {

/// Implicit Gauss-Legendre Runge-Kutta scheme with s stages (order 2s).
struct GaussLegendre {
    std::size_t stages = 0;
    XVector c;
    XMatrix a;
    XVector b;
};

GaussLegendre gauss_legendre(std::size_t stages, mpfr_prec_t bits);

struct OdeOptions {
    std::size_t stages = 8;
    std::size_t max_steps = 20000;
    /// Local error target per unit length; 0 selects 2^-(bits-16).
    double tolerance = 0;
};

struct Transport {
    XMatrix matrix; ///< phi(z_end) = matrix * phi(z_start)
    std::size_t steps = 0;
    std::size_t rejected = 0;
    Real error_estimate;
};

/// Propagator of dphi/dz = (A/z - B/(1-z)) phi along [z_start, z_end] in
/// (0, 1), integrated block by block with adaptive step doubling.
Transport ode_transport(const KZSystem &sys, const Rational &z_start, const Rational &z_end,
                        mpfr_prec_t bits, const OdeOptions &options = {});

XVector ode_oracle(const KZSystem &sys, const Rational &z_start, const Rational &z_end,
                   const XVector &initial, mpfr_prec_t bits, const OdeOptions &options = {});

} // namespace fusionkz
