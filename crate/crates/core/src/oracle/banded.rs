//! Complex banded LU factorization with partial pivoting (LAPACK band storage).

use crate::C64;

#[derive(Debug, thiserror::Error)]
pub enum BandedError {
    #[error("matrix is numerically singular at column {0}")]
    Singular(usize),
}

/// Band matrix with `kl` subdiagonals and `ku` superdiagonals, column-major band
/// storage with `kl` extra rows for pivoting fill-in: entry `(i, j)` lives at
/// `ab[j * ldab + (kl + ku + i - j)]`.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    ab: Vec<C64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        BandMatrix { n, kl, ku, ab: vec![C64::new(0.0, 0.0); ldab * n] }
    }

    fn ldab(&self) -> usize {
        2 * self.kl + self.ku + 1
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        if i + self.ku >= j && j + self.kl >= i {
            self.ab[j * self.ldab() + (self.kl + self.ku + i - j)]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        assert!(i + self.ku >= j && j + self.kl >= i, "({i},{j}) outside band");
        let idx = j * self.ldab() + (self.kl + self.ku + i - j);
        self.ab[idx] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: C64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let j_lo = i.saturating_sub(self.kl);
            let j_hi = (i + self.ku).min(self.n - 1);
            let mut acc = C64::new(0.0, 0.0);
            for j in j_lo..=j_hi {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// LU-factorize in place with partial pivoting.
    pub fn factorize(mut self) -> Result<BandedLu, BandedError> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let ldab = self.ldab();
        let kv = kl + ku; // superdiagonal count in factor storage
        let mut ipiv = vec![0usize; n];
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            // pivot search over rows j..=j+km of column j
            let mut jp = 0usize;
            let mut best = self.ab[j * ldab + kv].norm();
            for p in 1..=km {
                let mag = self.ab[j * ldab + kv + p].norm();
                if mag > best {
                    best = mag;
                    jp = p;
                }
            }
            ipiv[j] = j + jp;
            if best == 0.0 {
                return Err(BandedError::Singular(j));
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for col in j..=ju {
                    let a = col * ldab + kv + j - col;
                    let b = col * ldab + kv + j + jp - col;
                    self.ab.swap(a, b);
                }
            }
            if km > 0 {
                let pivot = self.ab[j * ldab + kv];
                for p in 1..=km {
                    self.ab[j * ldab + kv + p] /= pivot;
                }
                for col in j + 1..=ju {
                    let ujcol = self.ab[col * ldab + kv + j - col];
                    if ujcol != C64::new(0.0, 0.0) {
                        for p in 1..=km {
                            let l = self.ab[j * ldab + kv + p];
                            self.ab[col * ldab + kv + j + p - col] -= l * ujcol;
                        }
                    }
                }
            }
        }
        Ok(BandedLu { n, kl, ku, ab: self.ab, ipiv })
    }
}

#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    ab: Vec<C64>,
    ipiv: Vec<usize>,
}

impl BandedLu {
    pub fn solve(&self, b: &mut [C64]) {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let ldab = 2 * kl + ku + 1;
        let kv = kl + ku;
        // forward substitution with row swaps
        for j in 0..n {
            let p = self.ipiv[j];
            if p != j {
                b.swap(j, p);
            }
            let km = kl.min(n - 1 - j);
            for i in 1..=km {
                let l = self.ab[j * ldab + kv + i];
                let bj = b[j];
                b[j + i] -= l * bj;
            }
        }
        // back substitution
        for j in (0..n).rev() {
            b[j] /= self.ab[j * ldab + kv];
            let i_lo = j.saturating_sub(kv);
            let bj = b[j];
            for i in i_lo..j {
                let u = self.ab[j * ldab + kv + i - j];
                b[i] -= u * bj;
            }
        }
    }
}
