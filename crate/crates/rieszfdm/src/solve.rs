//! Direct solution of the assembled system.
//!
//! The two Dirichlet rows are eliminated exactly first, so the boundary
//! entries of the returned solution carry the prescribed values bit for bit.
//! The remaining interior block goes through Gaussian elimination with
//! partial pivoting. Everything is deterministic: no pivoting ties are
//! broken by anything but index order, and no parallelism is involved.

use crate::discretize::AssembledSystem;
use crate::error::{Error, Result};

/// Pivots smaller than this magnitude are treated as exact zeros.
const PIVOT_FLOOR: f64 = 1e-300;

/// Solved profile with its grid, inputs, and the achieved residual.
#[derive(Debug, Clone)]
pub struct Solution {
    pub domain: crate::discretize::Domain1D,
    pub params: crate::kernel::FractionalParams,
    pub scheme: crate::kernel::SchemeWeights,
    pub bc: crate::discretize::DirichletBC,
    pub values: Vec<f64>,
    pub residual_inf: f64,
}

/// Solve A T = b by LU factorization with partial pivoting.
///
/// Expects the system shape produced by [`crate::discretize::assemble`]:
/// identity first and last rows. Those unknowns are substituted exactly and
/// only the interior block is factorized.
pub fn lu_solve(system: &AssembledSystem) -> Result<Solution> {
    let size = system.size();
    let n = size - 1;
    let matrix = &system.matrix;
    assert!(
        is_identity_row(matrix.row(0), 0) && is_identity_row(matrix.row(n), n),
        "lu_solve expects the boundary identity rows produced by assemble"
    );

    if matrix.data().iter().any(|v| !v.is_finite())
        || system.rhs.iter().any(|v| !v.is_finite())
    {
        return Err(Error::NonFinite);
    }

    let g_left = system.rhs[0];
    let g_right = system.rhs[n];
    let m = n - 1;

    // Interior block and right hand side with the known boundary columns
    // moved over.
    let mut a = vec![0.0; m * m];
    let mut b = vec![0.0; m];
    for i in 0..m {
        let row = matrix.row(i + 1);
        a[i * m..(i + 1) * m].copy_from_slice(&row[1..=m]);
        b[i] = system.rhs[i + 1] - row[0] * g_left - row[size - 1] * g_right;
    }

    // Factorize in place.
    for col in 0..m {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * m + col].abs();
        for r in col + 1..m {
            let mag = a[r * m + col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag < PIVOT_FLOOR {
            return Err(Error::SingularMatrix { step: col, pivot: a[pivot_row * m + col] });
        }
        if pivot_row != col {
            for j in 0..m {
                a.swap(col * m + j, pivot_row * m + j);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * m + col];
        let b_col = b[col];
        for r in col + 1..m {
            let factor = a[r * m + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[r * m + col] = 0.0;
            let (head, tail) = a.split_at_mut(r * m);
            let src = &head[col * m + col + 1..col * m + m];
            let dst = &mut tail[col + 1..m];
            for (d, s) in dst.iter_mut().zip(src) {
                *d -= factor * s;
            }
            b[r] -= factor * b_col;
        }
    }

    // Back substitution.
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let mut acc = b[i];
        for j in i + 1..m {
            acc -= a[i * m + j] * x[j];
        }
        x[i] = acc / a[i * m + i];
    }

    let mut values = Vec::with_capacity(size);
    values.push(g_left);
    values.extend_from_slice(&x);
    values.push(g_right);
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }

    let residual = residual_inf(system, &values)?;
    Ok(Solution {
        domain: system.domain,
        params: *system.params(),
        scheme: *system.scheme(),
        bc: system.bc,
        values,
        residual_inf: residual,
    })
}

/// Infinity norm of A values - b, evaluated matrix-free from the weight
/// table plus the two boundary rows.
pub fn residual_inf(system: &AssembledSystem, values: &[f64]) -> Result<f64> {
    let size = system.size();
    if values.len() != size {
        return Err(Error::DimensionMismatch { expected: size, got: values.len() });
    }
    let n = size - 1;
    let table = &system.table;
    let bc = system.bc;
    let mut worst = (values[0] - bc.left()).abs().max((values[n] - bc.right()).abs());
    for i in 1..n {
        let mut acc = 0.0;
        for (j, &v) in values.iter().enumerate() {
            acc += table.weight(j as i64 - i as i64) * v;
        }
        acc += bc.left() * table.tail_left(i) + bc.right() * table.tail_right(n - i);
        worst = worst.max(acc.abs());
    }
    Ok(worst)
}

fn is_identity_row(row: &[f64], diag: usize) -> bool {
    row.iter().enumerate().all(|(j, &v)| v == if j == diag { 1.0 } else { 0.0 })
}
