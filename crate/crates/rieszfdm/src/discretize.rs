//! Uniform grid, Dirichlet boundary data, and assembly of the dense linear
//! system for the steady-state problem.
//!
//! On N+1 nodes the stationary equation becomes one scheme row per interior
//! node: sum_j w_{j-i} T_j plus the boundary-folded tails. Everything beyond
//! the domain is pinned to the boundary values, which turns the two infinite
//! stencil halves into gL * sL_i and gR * sR_{N-i} with the closed-form tail
//! sums. Rows 0 and N are unscaled identity rows carrying the Dirichlet data,
//! so the matrix is Toeplitz inside a one-row border.

use crate::error::{Error, Result};
use crate::kernel::{FractionalParams, SchemeWeights, WeightTable};

/// Interval [left, right] split into `cells` uniform cells (cells + 1 nodes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain1D {
    left: f64,
    right: f64,
    cells: usize,
}

impl Domain1D {
    pub fn new(left: f64, right: f64, cells: usize) -> Result<Self> {
        if !left.is_finite() || !right.is_finite() || left >= right || cells < 2 {
            return Err(Error::InvalidDomain { left, right, cells });
        }
        Ok(Self { left, right, cells })
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Number of nodes, cells + 1; at least 3 by construction, so there is
    /// no empty case.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.cells + 1
    }

    pub fn step(&self) -> f64 {
        (self.right - self.left) / self.cells as f64
    }

    /// Node coordinate x_i; the endpoints are returned exactly.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i <= self.cells);
        if i == 0 {
            self.left
        } else if i == self.cells {
            self.right
        } else {
            self.left + i as f64 * self.step()
        }
    }

    /// All node coordinates in ascending order.
    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.cells).map(|i| self.node(i)).collect()
    }
}

/// Dirichlet data: the prescribed temperatures at the two boundary nodes,
/// also used as the frozen value of every virtual node beyond each boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletBC {
    left: f64,
    right: f64,
}

impl DirichletBC {
    pub fn new(left: f64, right: f64) -> Result<Self> {
        if !left.is_finite() || !right.is_finite() {
            return Err(Error::InvalidBoundary { left, right });
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    /// Boundary data seen from the mirrored domain.
    pub fn mirrored(&self) -> Self {
        Self { left: self.right, right: self.left }
    }
}

/// Nodal values paired with the grid they live on.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    domain: Domain1D,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(domain: Domain1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::DimensionMismatch { expected: domain.len(), got: values.len() });
        }
        Ok(Self { domain, values })
    }

    pub fn domain(&self) -> &Domain1D {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.data
    }
}

/// The assembled bordered-Toeplitz system A T = b together with the weight
/// table it was built from, kept for matrix-free residual evaluation.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub domain: Domain1D,
    pub bc: DirichletBC,
    pub table: WeightTable,
    pub matrix: DenseMatrix,
    pub rhs: Vec<f64>,
}

impl AssembledSystem {
    /// Number of unknowns, nodes on the grid.
    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn params(&self) -> &FractionalParams {
        self.table.params()
    }

    pub fn scheme(&self) -> &SchemeWeights {
        self.table.scheme()
    }
}

/// Discrete Riesz-Feller derivative of `f` at the interior nodes, boundary
/// values standing in for everything outside the domain.
///
/// Returns cells - 1 entries, one per interior node i = 1..cells:
/// (sum_{j=0}^{N} w_{j-i} f_j + gL sL_i + gR sR_{N-i}) / h^alpha.
/// The table must cover offsets up to the cell count.
pub fn apply_riesz_feller(
    f: &GridFunction,
    table: &WeightTable,
    bc: DirichletBC,
) -> Result<Vec<f64>> {
    let n = f.domain().cells();
    if table.kmax() < n {
        return Err(Error::TableTooSmall { kmax: table.kmax(), needed: n });
    }
    let values = f.values();
    let h_alpha = f.domain().step().powf(table.params().alpha());
    let mut out = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut acc = 0.0;
        for (j, &v) in values.iter().enumerate() {
            acc += table.weight(j as i64 - i as i64) * v;
        }
        acc += bc.left() * table.tail_left(i) + bc.right() * table.tail_right(n - i);
        out.push(acc / h_alpha);
    }
    Ok(out)
}

/// Build the dense system for given parameters and boundary data.
///
/// Row 0 and row N are identity rows with the boundary values on the right
/// hand side. Interior row i holds w_{j-i} in column j; its right hand side
/// collects the boundary-folded tails, -(gL sL_i + gR sR_{N-i}). The common
/// 1/h^alpha factor is cancelled from both sides.
pub fn assemble(
    domain: &Domain1D,
    params: &FractionalParams,
    scheme: &SchemeWeights,
    bc: DirichletBC,
) -> Result<AssembledSystem> {
    let n = domain.cells();
    let table = WeightTable::build(params, scheme, n)?;
    let size = domain.len();
    let mut matrix = DenseMatrix::zeros(size);
    let mut rhs = vec![0.0; size];

    matrix.set(0, 0, 1.0);
    rhs[0] = bc.left();
    matrix.set(n, n, 1.0);
    rhs[n] = bc.right();

    // The node index drives the stencil offset and both tail lookups, so the
    // explicit loop reads better than iterator chaining here.
    #[allow(clippy::needless_range_loop)]
    for i in 1..n {
        let row = matrix.row_mut(i);
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = table.weight(j as i64 - i as i64);
        }
        rhs[i] = -(bc.left() * table.tail_left(i) + bc.right() * table.tail_right(n - i));
    }

    Ok(AssembledSystem { domain: *domain, bc, table, matrix, rhs })
}
