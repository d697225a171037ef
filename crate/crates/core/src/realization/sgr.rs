use std::sync::Arc;

use super::{poly_det, RealizationError};
use crate::linalg::{QMatrix, Rational};
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// `det nu(X)` for a generic `3 x 6` matrix `X`, whose columns are points on
/// a conic exactly when this vanishes.
#[derive(Clone, Debug)]
pub struct SgrVanishing {
    ring: Arc<Ring>,
    det: Polynomial,
}

impl SgrVanishing {
    pub fn polynomial(&self) -> &Polynomial {
        &self.det
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn evaluate(&self, x: &QMatrix) -> Result<Rational, RealizationError> {
        if (x.rows(), x.cols()) != (3, 6) {
            return Err(RealizationError::Unsupported { k: x.rows(), n: x.cols() });
        }
        let point: Vec<Rational> = x.entries().to_vec();
        Ok(self.det.evaluate(&point))
    }
}

pub fn sgr_vanishing_test(k: usize, n: usize) -> Result<SgrVanishing, RealizationError> {
    if (k, n) != (3, 6) {
        return Err(RealizationError::Unsupported { k, n });
    }
    let names: Vec<String> = (0..k)
        .flat_map(|i| (0..n).map(move |j| format!("x{}_{}", i + 1, j + 1)))
        .collect();
    let ring = Ring::new(names, MonomialOrder::GRevLex)?;
    let x = |i: usize, j: usize| Polynomial::var(&ring, i * n + j);
    let mut rows = Vec::new();
    for a in 0..k {
        for b in a..k {
            rows.push((0..n).map(|j| &x(a, j) * &x(b, j)).collect::<Vec<_>>());
        }
    }
    let det = poly_det(&ring, &rows);
    Ok(SgrVanishing { ring, det })
}
