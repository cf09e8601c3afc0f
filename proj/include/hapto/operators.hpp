#pragma once

#include "hapto/grid.hpp"

namespace hapto {

/// Second-order central-difference Laplacian with homogeneous-Neumann
/// boundary (ghost-cell reflection, zero boundary-face flux). Conservative:
/// the volume-weighted sum of the result telescopes to zero.
Field laplacian(const Field& f);

/// Conservative upwind discretization of -div(u grad v). Face velocity is the
/// face-centered difference of v; the face value of u is upwinded on the sign
/// of that velocity; boundary faces carry zero flux.
Field haptotaxis_divergence(const Field& u, const Field& v);

/// Midpoint quadrature: sum of cell values times cell volume.
double integrate(const Field& f);

/// Midpoint quadrature of |grad v|^4 with grad v reconstructed at cell
/// centers by central differences; the normal component is set to zero in
/// boundary cells (consistent with dv/dnu = 0).
double grad_quartic_norm(const Field& v);

FieldNorms field_norms(const Field& f);

/// Largest |face-centered difference of v| / spacing over all interior faces,
/// i.e. the maximal advective speed seen by the taxis flux.
double max_face_speed(const Field& v);

}  // namespace hapto
