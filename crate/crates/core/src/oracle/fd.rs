//! Crank-Nicolson in time, fourth-order centered differences in space, with
//! ghost points at x = 0 resolving the Dirichlet and Neumann data and a clamped
//! far end `y(L) = y_x(L) = 0`. A posteriori far-field leakage is reported.

use super::banded::{BandMatrix, BandedError};
use super::stencil::fd_weights;
use crate::complex_plane::SpectralParams;
use crate::transforms::BoundaryDatum;
use crate::C64;

#[derive(Debug, thiserror::Error)]
pub enum FdError {
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("far-field leakage {0:.3e} exceeds the budget {1:.3e}; enlarge L or shorten T")]
    Leakage(f64, f64),
    #[error("linear solver breakdown: {0}")]
    Solver(#[from] BandedError),
}

#[derive(Debug, Clone, Copy)]
pub struct FdGrid {
    pub length: f64,
    pub nx: usize,
    pub dt: f64,
    pub nt: usize,
    /// keep every `store_every`-th field row (traces are kept at every step)
    pub store_every: usize,
}

impl FdGrid {
    pub fn new(length: f64, nx: usize, dt: f64, nt: usize) -> Result<Self, FdError> {
        Self::with_stride(length, nx, dt, nt, 1)
    }

    pub fn with_stride(
        length: f64,
        nx: usize,
        dt: f64,
        nt: usize,
        store_every: usize,
    ) -> Result<Self, FdError> {
        if !(length >= 10.0) {
            return Err(FdError::BadGrid(format!("length must be at least 10, got {length}")));
        }
        if nx < 200 {
            return Err(FdError::BadGrid(format!("nx must be at least 200, got {nx}")));
        }
        if !(dt > 0.0) || nt == 0 {
            return Err(FdError::BadGrid(format!("need dt > 0 and nt > 0, got {dt}, {nt}")));
        }
        if store_every == 0 {
            return Err(FdError::BadGrid("store_every must be positive".into()));
        }
        Ok(FdGrid { length, nx, dt, nt, store_every })
    }

    pub fn h(&self) -> f64 {
        self.length / self.nx as f64
    }

    pub fn t_final(&self) -> f64 {
        self.dt * self.nt as f64
    }

    pub fn x_nodes(&self) -> Vec<f64> {
        (0..=self.nx).map(|j| j as f64 * self.h()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct FdSolution {
    pub grid: FdGrid,
    pub times: Vec<f64>,
    /// field[time][node], node 0..=nx
    pub field: Vec<Vec<C64>>,
    /// one-sided fourth-order traces y_xx(0, t)
    pub g2: Vec<C64>,
    /// one-sided fourth-order traces y_xxx(0, t)
    pub g3: Vec<C64>,
    /// max near-boundary magnitude relative to the field maximum
    pub leakage: f64,
}

impl FdSolution {
    pub fn row_at(&self, t: f64) -> Option<&[C64]> {
        let idx = (t / self.grid.dt).round() as usize;
        if idx < self.times.len() && (self.times[idx] - t).abs() <= 1e-9 * (1.0 + t.abs()) {
            Some(&self.field[idx])
        } else {
            None
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.field
            .iter()
            .flat_map(|row| row.iter().map(|v| v.norm()))
            .fold(0.0, f64::max)
    }
}

/// Extrapolation weights for ghost values from a degree-6 polynomial matching
/// value and first derivative at the boundary plus five interior nodes:
/// `y(-m h) = a_m·y(0) + b_m·(h·y'(0)) + Σ_j c_m[j]·y(j h)`, m = 1, 2.
struct GhostWeights {
    a: [f64; 2],
    b: [f64; 2],
    c: [[f64; 5]; 2],
}

fn ghost_weights() -> GhostWeights {
    // Solve the 5x5 Vandermonde block for powers 2..6 at nodes 1..5.
    let mut mat = [[0.0_f64; 5]; 5];
    for (row, j) in (1..=5).enumerate() {
        for i in 0..5 {
            mat[row][i] = (j as f64).powi(i as i32 + 2);
        }
    }
    let solve5 = |m: &[[f64; 5]; 5], rhs: &[f64; 5]| -> [f64; 5] {
        let mut a = *m;
        let mut b = *rhs;
        for col in 0..5 {
            let piv = (col..5).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
            a.swap(col, piv);
            b.swap(col, piv);
            for row in col + 1..5 {
                let f = a[row][col] / a[col][col];
                for k in col..5 {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
        let mut x = [0.0; 5];
        for row in (0..5).rev() {
            let mut acc = b[row];
            for k in row + 1..5 {
                acc -= a[row][k] * x[k];
            }
            x[row] = acc / a[row][row];
        }
        x
    };
    let ghost_from_coeffs = |coeffs: &[f64; 5], a0: f64, a1: f64, m: f64| -> f64 {
        let mut v = a0 + a1 * (-m);
        for (i, ci) in coeffs.iter().enumerate() {
            v += ci * (-m).powi(i as i32 + 2);
        }
        v
    };

    let mut w = GhostWeights { a: [0.0; 2], b: [0.0; 2], c: [[0.0; 5]; 2] };
    // unit response to y(0)
    let rhs = [-1.0; 5];
    let coeffs = solve5(&mat, &rhs);
    for m in 0..2 {
        w.a[m] = ghost_from_coeffs(&coeffs, 1.0, 0.0, (m + 1) as f64);
    }
    // unit response to h·y'(0)
    let rhs: [f64; 5] = std::array::from_fn(|j| -((j + 1) as f64));
    let coeffs = solve5(&mat, &rhs);
    for m in 0..2 {
        w.b[m] = ghost_from_coeffs(&coeffs, 0.0, 1.0, (m + 1) as f64);
    }
    // unit response to each interior node
    for j in 0..5 {
        let mut rhs = [0.0; 5];
        rhs[j] = 1.0;
        let coeffs = solve5(&mat, &rhs);
        for m in 0..2 {
            w.c[m][j] = ghost_from_coeffs(&coeffs, 0.0, 0.0, (m + 1) as f64);
        }
    }
    w
}

const D4_W: [f64; 7] = [-1.0 / 6.0, 2.0, -13.0 / 2.0, 28.0 / 3.0, -13.0 / 2.0, 2.0, -1.0 / 6.0];
const D2_W: [f64; 5] = [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0];

struct Discretization {
    a_mat: BandMatrix,
    /// boundary-data response of each row: contribution `d0[r]·g0(t) + d1[r]·g1(t)`
    d0: Vec<C64>,
    d1: Vec<C64>,
}

/// Assemble `A = i(α D4 + β D2)` on the interior unknowns with ghost elimination.
fn assemble(p: &SpectralParams, grid: &FdGrid) -> Discretization {
    let n = grid.nx;
    let h = grid.h();
    let nun = n - 1; // unknowns are nodes 1..=n-1
    let gw = ghost_weights();
    let mut a_mat = BandMatrix::zeros(nun, 4, 4);
    let mut d0 = vec![C64::new(0.0, 0.0); nun];
    let mut d1 = vec![C64::new(0.0, 0.0); nun];
    let ih4 = C64::i() * p.alpha() / h.powi(4);
    let ih2 = C64::i() * p.beta() / (h * h);

    for j in 1..n {
        let row = j - 1;
        for off in -3i64..=3 {
            let mut coeff = ih4 * D4_W[(off + 3) as usize];
            if (-2..=2).contains(&off) {
                coeff += ih2 * D2_W[(off + 2) as usize];
            }
            let idx = j as i64 + off;
            if idx >= 1 && idx <= (n - 1) as i64 {
                a_mat.add(row, idx as usize - 1, coeff);
            } else if idx == 0 {
                d0[row] += coeff;
            } else if idx < 0 {
                let m = (-idx) as usize - 1; // ghost index 0 or 1
                d0[row] += coeff * gw.a[m];
                d1[row] += coeff * gw.b[m] * h;
                for (jj, cw) in gw.c[m].iter().enumerate() {
                    a_mat.add(row, jj, coeff * *cw);
                }
            } else if idx > n as i64 {
                let m = (idx - n as i64) as usize - 1;
                for (jj, cw) in gw.c[m].iter().enumerate() {
                    a_mat.add(row, n - 1 - (jj + 1), coeff * *cw);
                }
            }
            // idx == n: clamped to zero, no contribution
        }
    }
    Discretization { a_mat, d0, d1 }
}

/// Leakage budget relative to the field maximum.
pub const LEAKAGE_BUDGET: f64 = 1e-6;

/// General driver: optional initial state (interior nodes 1..=nx-1), optional
/// forcing, boundary data as closures. `fd_solve` is the zero-initial wrapper.
pub fn fd_evolve(
    p: &SpectralParams,
    grid: &FdGrid,
    g0: &dyn Fn(f64) -> C64,
    g1: &dyn Fn(f64) -> C64,
    init: Option<&[C64]>,
    forcing: Option<&dyn Fn(f64, f64) -> C64>,
) -> Result<FdSolution, FdError> {
    let n = grid.nx;
    let nun = n - 1;
    let dt = grid.dt;
    let h = grid.h();
    let disc = assemble(p, grid);

    // M± = I ± (dt/2) A
    let mut m_minus = BandMatrix::zeros(nun, 4, 4);
    let mut m_plus = BandMatrix::zeros(nun, 4, 4);
    for i in 0..nun {
        for j in i.saturating_sub(4)..=(i + 4).min(nun - 1) {
            let a = disc.a_mat.get(i, j);
            let half = a * (0.5 * dt);
            let diag = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            m_minus.set(i, j, diag - half);
            m_plus.set(i, j, diag + half);
        }
    }
    let lu = m_minus.factorize()?;

    let mut u: Vec<C64> = match init {
        Some(v) => {
            assert_eq!(v.len(), nun, "initial state must cover interior nodes");
            v.to_vec()
        }
        None => vec![C64::new(0.0, 0.0); nun],
    };

    let bvec = |t: f64| -> (C64, C64) { (g0(t), g1(t)) };
    let mut field = Vec::with_capacity(grid.nt + 1);
    let mut times = Vec::with_capacity(grid.nt + 1);
    let full_row = |u: &[C64], t: f64| -> Vec<C64> {
        let mut row = Vec::with_capacity(n + 1);
        row.push(g0(t));
        row.extend_from_slice(u);
        row.push(C64::new(0.0, 0.0));
        row
    };
    field.push(full_row(&u, 0.0));
    times.push(0.0);

    for step in 0..grid.nt {
        let t0 = step as f64 * dt;
        let t1 = (step + 1) as f64 * dt;
        let mut rhs = m_plus.matvec(&u);
        let (g0_0, g1_0) = bvec(t0);
        let (g0_1, g1_1) = bvec(t1);
        for r in 0..nun {
            rhs[r] += (disc.d0[r] * (g0_0 + g0_1) + disc.d1[r] * (g1_0 + g1_1)) * (0.5 * dt);
        }
        if let Some(f) = forcing {
            for r in 0..nun {
                let x = (r + 1) as f64 * h;
                rhs[r] += (f(x, t0) + f(x, t1)) * (0.5 * dt);
            }
        }
        lu.solve(&mut rhs);
        u = rhs;
        field.push(full_row(&u, t1));
        times.push(t1);
    }

    // traces by one-sided fourth-order stencils (6 nodes for y_xx, 7 for y_xxx)
    let xs6: Vec<f64> = (0..6).map(|j| j as f64 * h).collect();
    let xs7: Vec<f64> = (0..7).map(|j| j as f64 * h).collect();
    let w2 = fd_weights(0.0, &xs6, 2).swap_remove(2);
    let w3 = fd_weights(0.0, &xs7, 3).swap_remove(3);
    let g2: Vec<C64> = field
        .iter()
        .map(|row| w2.iter().zip(row.iter()).map(|(w, v)| v * *w).sum())
        .collect();
    let g3: Vec<C64> = field
        .iter()
        .map(|row| w3.iter().zip(row.iter()).map(|(w, v)| v * *w).sum())
        .collect();

    let max_abs = field
        .iter()
        .flat_map(|row| row.iter().map(|v| v.norm()))
        .fold(0.0, f64::max);
    let near_edge = field
        .iter()
        .flat_map(|row| row[n - 10..n].iter().map(|v| v.norm()))
        .fold(0.0, f64::max);
    let leakage = if max_abs > 0.0 { near_edge / max_abs } else { 0.0 };

    Ok(FdSolution { grid: *grid, times, field, g2, g3, leakage })
}

/// Solve the IBVP with zero initial datum and the given boundary data, and fail
/// if the dispersive field reaches the truncation boundary.
pub fn fd_solve(
    p: &SpectralParams,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    grid: &FdGrid,
) -> Result<FdSolution, FdError> {
    let sol = fd_evolve(p, grid, &|t| g0.eval(t), &|t| g1.eval(t), None, None)?;
    if sol.leakage > LEAKAGE_BUDGET {
        return Err(FdError::Leakage(sol.leakage, LEAKAGE_BUDGET));
    }
    Ok(sol)
}
