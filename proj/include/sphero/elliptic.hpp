#pragma once

// Jacobi elliptic functions and the incomplete elliptic integral of the first
// kind in the *parameter* convention:
//
//   F(m, theta) = integral_0^theta dt / sqrt(1 - m sin^2 t),
//   sn(m, F(m, theta)) = sin(theta).
//
// m is the squared modulus (m = k^2). All functions throw DomainError for
// m >= 1 or non-finite m. Negative m is accepted.

namespace sphero {

/// F(m, theta) for any real theta, using F(m, theta + pi) = F(m, theta) + 2 K(m).
double elliptic_F(double m, double theta);

/// Complete integral K(m) = F(m, pi/2).
double elliptic_K(double m);

/// Jacobi amplitude am(m, u), the continuous inverse of theta -> F(m, theta).
/// Computed by the descending Landen (AGM) scale.
double jacobi_am(double m, double u);

/// sn(m, u) = sin(am(m, u)).
double jacobi_sn(double m, double u);

/// dn(m, u) = sqrt(1 - m sn^2(m, u)).
double jacobi_dn(double m, double u);

/// Carlson's symmetric integral R_F(x, y, z); at most one argument may be 0.
double carlson_rf(double x, double y, double z);

}  // namespace sphero
