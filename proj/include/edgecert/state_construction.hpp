#pragma once

#include <utility>

#include "edgecert/params.hpp"
#include "edgecert/state_assembly.hpp"

namespace edgecert {

/// The partial-transposed state: 2n-3 corank-one blocks on the anti-diagonal
/// label families plus r on e_11, ..., e_nn. Requires params.r.
StateAssembly assemble_rho_gamma(const ParamSet& params, GenericityPolicy policy = GenericityPolicy::Require);

/// partial_transpose of the above, decomposed into connected blocks. The
/// block holding e_11, ..., e_nn is tagged "D"; the others "path".
StateAssembly assemble_rho(const ParamSet& params, GenericityPolicy policy = GenericityPolicy::Require);

/// The (e_11, ..., e_nn) block of rho at loading r (r unset counts as 0):
/// D_{jk} = rho^Gamma[(k,j),(j,k)], read off the blocks without building rho.
/// Genericity is not checked here.
HermitianMatrix extract_D(const ParamSet& params);

/// The rank-one-kernel 4 x 4 construction with a prescribed product-free
/// kernel for rho. Requires p > 0, 0 < r < 1, |alpha_angle| < pi/4.
struct AlternativePair {
  StateAssembly rho;
  StateAssembly rho_gamma;
};
AlternativePair assemble_alternative_4x4(double p, double r, double alpha_angle);

/// A and B of that construction (A on (e11,e22,e33,e44) of rho, B on
/// (e14,e23,e32,e41) of rho^Gamma).
HermitianMatrix alternative_A(double alpha_angle);
HermitianMatrix alternative_B(double p, double r, double alpha_angle);

}  // namespace edgecert
