//! Special functions and arithmetic functions used by every other module:
//! Gamma, the zeta family, Bernoulli polynomials, Bessel J0/J1/Y0/K0 and
//! complex K, and the sieve-backed integer functions.

pub mod arith;
pub mod bernoulli;
pub mod bessel;
pub mod gamma;
pub mod zeta;

pub use arith::{
    arithmetic, chebyshev_psi, divisor_count, divisors, ensure_sieve, factorize, gcd, lcm,
    lcm_upto, liouville, mangoldt, mobius, mobius_table, omega_distinct, r3, r3_table, sigma,
    sigma1_table, ArithKind, SIEVE_DEFAULT, SIEVE_ENV_VAR, SIEVE_HARD_CAP,
};
pub use bernoulli::{bernoulli_number, bernoulli_poly, bernoulli_poly_rational};
pub use bessel::{bessel_k_complex, bessel_real, BesselKind, KOrder};
pub use gamma::{gamma_complex, gamma_real, ln_gamma_real};
pub use zeta::{eta, hurwitz_zeta, riemann_zeta, zeta2, zeta_family, ZetaKind};
