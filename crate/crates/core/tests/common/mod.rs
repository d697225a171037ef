#![allow(dead_code)]

use rand::Rng;
use selfproj::linalg::{QMatrix, Rational};
use selfproj::selfproj::cayley_point;

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

/// `(Id_k | R)` with `R` the Cayley transform of a random skew matrix.
pub fn random_cayley(k: usize, rng: &mut impl Rng) -> QMatrix {
    let upper: Vec<Rational> = (0..k * (k - 1) / 2).map(|_| small_rational(rng)).collect();
    cayley_point(k, &upper)
}
