//! Ordinary-least-squares baseline over the five linguistic features.
//!
//! Small and closed-form: center the design matrix, solve the 5×5 normal
//! equations by Gaussian elimination with partial pivoting, and fall back
//! to a tiny ridge term when the system is singular (collinear or constant
//! feature columns).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DIM: usize = 5;

/// Fitted linear model `y = w·x + b` over the five-feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    /// One weight per feature, in feature-vector order.
    pub coefficients: [f64; DIM],
    /// Intercept.
    pub intercept: f64,
}

/// Fits by OLS on centered data; needs at least 6 rows.
///
/// A singular normal matrix (for example a constant or duplicated feature
/// column) is retried with ridge regularization `λ = 1e-8` on the
/// diagonal, scaled by the matrix magnitude so the penalty clears the
/// solver's relative pivot threshold at any corpus size; if even that
/// fails the fit reports a numeric error.
pub fn linreg_fit(rows: &[[f64; DIM]], targets: &[f64]) -> Result<LinearModel> {
    if rows.len() != targets.len() {
        return Err(Error::validation(format!(
            "{} feature rows but {} targets",
            rows.len(),
            targets.len()
        )));
    }
    if rows.len() < DIM + 1 {
        return Err(Error::validation(format!(
            "need at least {} rows to fit {DIM} coefficients, got {}",
            DIM + 1,
            rows.len()
        )));
    }
    for row in rows {
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("non-finite feature value"));
        }
    }
    if targets.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("non-finite target value"));
    }

    let n = rows.len() as f64;
    let mut mean_x = [0.0; DIM];
    for row in rows {
        for (m, v) in mean_x.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean_x {
        *m /= n;
    }
    let mean_y = targets.iter().sum::<f64>() / n;

    // Normal equations on centered data: (XcᵀXc) w = Xcᵀ yc.
    let mut gram = [[0.0; DIM]; DIM];
    let mut moment = [0.0; DIM];
    for (row, &y) in rows.iter().zip(targets) {
        let mut centered = [0.0; DIM];
        for i in 0..DIM {
            centered[i] = row[i] - mean_x[i];
        }
        let yc = y - mean_y;
        for i in 0..DIM {
            for j in 0..DIM {
                gram[i][j] += centered[i] * centered[j];
            }
            moment[i] += centered[i] * yc;
        }
    }

    let coefficients = match solve(gram, moment) {
        Some(w) => w,
        None => {
            // The ridge must beat the solver's pivot threshold of
            // 1e-12 × scale, so the penalty is relative to the same scale.
            let scale = gram
                .iter()
                .flatten()
                .fold(0.0f64, |acc, v| acc.max(v.abs()))
                .max(1.0);
            let mut ridged = gram;
            for (i, row) in ridged.iter_mut().enumerate() {
                row[i] += 1e-8 * scale;
            }
            solve(ridged, moment).ok_or_else(|| {
                Error::numeric("normal equations are singular even with ridge regularization")
            })?
        }
    };

    let intercept = mean_y
        - coefficients
            .iter()
            .zip(&mean_x)
            .map(|(w, m)| w * m)
            .sum::<f64>();
    Ok(LinearModel {
        coefficients,
        intercept,
    })
}

/// Applies the fitted model to one feature row.
pub fn linreg_predict(model: &LinearModel, row: &[f64; DIM]) -> f64 {
    model
        .coefficients
        .iter()
        .zip(row)
        .map(|(w, x)| w * x)
        .sum::<f64>()
        + model.intercept
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve(mut a: [[f64; DIM]; DIM], mut b: [f64; DIM]) -> Option<[f64; DIM]> {
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);

    for col in 0..DIM {
        let pivot_row = (col..DIM)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .expect("non-empty range");
        if a[pivot_row][col].abs() < 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        let pivot_values = a[col];
        for row in col + 1..DIM {
            let factor = a[row][col] / pivot_values[col];
            for (k, pivot_value) in pivot_values.iter().enumerate().skip(col) {
                a[row][k] -= factor * pivot_value;
            }
            b[row] -= factor * b[col];
        }
    }

    let mut x = [0.0; DIM];
    for col in (0..DIM).rev() {
        let tail: f64 = (col + 1..DIM).map(|k| a[col][k] * x[k]).sum();
        x[col] = (b[col] - tail) / a[col][col];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
