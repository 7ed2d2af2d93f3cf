//! Ridge-regularized logistic regression fitted by Newton's method.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const MAX_ITER: usize = 50;

/// Fitted coefficients; the first one is the intercept.
#[derive(Debug, Clone)]
pub(crate) struct Logistic {
    pub coef: Vec<f64>,
}

impl Logistic {
    /// `design` is row-major with an explicit leading column of ones.
    /// The intercept is not penalized.
    pub fn fit(design: &DMatrix<f64>, labels: &[bool], ridge: f64) -> Result<Self> {
        let (n, d) = design.shape();
        if n != labels.len() {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: labels.len(),
            });
        }
        let y = DVector::from_iterator(n, labels.iter().map(|&l| if l { 1.0 } else { 0.0 }));
        let mut penalty = DMatrix::<f64>::identity(d, d) * ridge;
        penalty[(0, 0)] = 0.0;
        let mut w = DVector::<f64>::zeros(d);
        for _ in 0..MAX_ITER {
            let eta = design * &w;
            let p = eta.map(sigmoid);
            let weights = p.map(|v| (v * (1.0 - v)).max(1e-12));
            let grad = design.transpose() * (&p - &y) + &penalty * &w;
            let mut weighted = design.clone();
            for (r, mut row) in weighted.row_iter_mut().enumerate() {
                row *= weights[r];
            }
            let hessian = design.transpose() * weighted + &penalty;
            let Some(chol) = hessian.clone().cholesky() else {
                return Err(Error::Singular(
                    "logistic Hessian is not positive definite".into(),
                ));
            };
            let step = chol.solve(&grad);
            w -= &step;
            if step.amax() < 1e-9 {
                break;
            }
        }
        Ok(Self {
            coef: w.iter().copied().collect(),
        })
    }

    pub fn decision(&self, row: &[f64]) -> f64 {
        self.coef.iter().zip(row).map(|(c, x)| c * x).sum()
    }
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}
