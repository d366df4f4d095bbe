#ifndef KEPLERGEO_POISSON_HPP
#define KEPLERGEO_POISSON_HPP

#include "keplergeo/scalar_field.hpp"

namespace keplergeo {

// Sign convention used throughout: with the two-form dp_i ^ dx^i and the
// Hamiltonian field defined by omega(X_f) = -df,
//
//   {f,g} = X_f(g) = sum_i (df/dp_i dg/dx^i - df/dx^i dg/dp_i),
//
// so {x^i, p_i} = -1.  This is the unique choice under which the rotational
// charges close as {J_i,J_j} = -eps_ijk J_k and the quadratic charges as
// {A_i,A_j} = +H eps_ijk J_k.
inline constexpr const char* kBracketConvention = "{f,g} = X_f(g), omega(X_f) = -df";

/// Poisson bracket {f,g} at a point.
inline double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& at) {
    const PhaseGradient gf = checked_gradient(f, at);
    const PhaseGradient gg = checked_gradient(g, at);
    return dot(gf.d_momentum, gg.d_position) - dot(gf.d_position, gg.d_momentum);
}

/// Hamiltonian vector field of f: dx_i = df/dp_i, dp_i = -df/dx^i.
inline PhaseVelocity hamiltonian_vector_field(const ScalarField& f, const PhasePoint& at) {
    const PhaseGradient g = checked_gradient(f, at);
    return {g.d_momentum, -g.d_position};
}

/// Directional derivative of g along the flow of f; zero iff g is conserved.
inline double flow_derivative(const ScalarField& f, const ScalarField& g, const PhasePoint& at) {
    return poisson_bracket(f, g, at);
}

}  // namespace keplergeo

#endif
