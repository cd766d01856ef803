//! Smith normal form over the integers with checked 64-bit arithmetic.

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    /// Nonzero invariant factors d_1 | d_2 | … (all positive).
    pub factors: Vec<i64>,
    /// The diagonal form D.
    pub diagonal: IntMatrix,
    /// Unimodular U, V with U · M · V = D, when tracking was requested.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn mul_add(a: i64, q: i64, b: i64) -> Result<i64> {
    // a - q * b
    q.checked_mul(b)
        .and_then(|p| a.checked_sub(p))
        .ok_or(Error::Overflow)
}

struct State {
    m: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl State {
    fn rows(&self) -> usize {
        self.m.len()
    }
    fn cols(&self) -> usize {
        self.m.first().map_or(0, |r| r.len())
    }

    /// row[dst] -= q * row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for mat in std::iter::once(&mut self.m).chain(self.u.as_mut()) {
            for c in 0..mat[0].len() {
                mat[dst][c] = mul_add(mat[dst][c], q, mat[src][c])?;
            }
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for mat in std::iter::once(&mut self.m).chain(self.v.as_mut()) {
            for row in mat.iter_mut() {
                row[dst] = mul_add(row[dst], q, row[src])?;
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        if let Some(u) = self.u.as_mut() {
            u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.m.iter_mut() {
            row.swap(a, b);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    fn negate_row(&mut self, r: usize) -> Result<()> {
        for mat in std::iter::once(&mut self.m).chain(self.u.as_mut()) {
            for x in mat[r].iter_mut() {
                *x = x.checked_neg().ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for r in t..self.rows() {
            for c in t..self.cols() {
                let a = self.m[r][c].unsigned_abs();
                if a != 0 && best.is_none_or(|(b, _, _)| a < b) {
                    best = Some((a, r, c));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }
}

/// Computes the Smith normal form, optionally recording U and V.
pub fn smith_normal_form(m: &[Vec<i64>], track: bool) -> Result<Snf> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("matrix rows have unequal lengths".into()));
    }
    let mut st = State {
        m: m.to_vec(),
        u: track.then(|| identity(rows)),
        v: track.then(|| identity(cols)),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((r, c)) = st.min_entry(t) else { break };
        st.swap_rows(t, r);
        st.swap_cols(t, c);
        loop {
            let p = st.m[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let q = st.m[r][t] / p;
                if q != 0 {
                    st.row_op(r, t, q)?;
                }
                dirty |= st.m[r][t] != 0;
            }
            for c in t + 1..cols {
                let q = st.m[t][c] / p;
                if q != 0 {
                    st.col_op(c, t, q)?;
                }
                dirty |= st.m[t][c] != 0;
            }
            if !dirty {
                // enforce divisibility of the remaining block by the pivot
                let bad = (t + 1..rows)
                    .find(|&r| (t + 1..cols).any(|c| st.m[r][c] % p != 0));
                match bad {
                    Some(r) => st.row_op(t, r, -1)?,
                    None => break,
                }
            }
            // move the smallest entry of row/column t back to the pivot
            let mut best = (st.m[t][t].unsigned_abs(), t, t);
            for r in t + 1..rows {
                let a = st.m[r][t].unsigned_abs();
                if a != 0 && a < best.0 {
                    best = (a, r, t);
                }
            }
            for c in t + 1..cols {
                let a = st.m[t][c].unsigned_abs();
                if a != 0 && a < best.0 {
                    best = (a, t, c);
                }
            }
            st.swap_rows(t, best.1);
            st.swap_cols(t, best.2);
        }
        if st.m[t][t] < 0 {
            st.negate_row(t)?;
        }
        t += 1;
    }
    let factors = (0..rows.min(cols))
        .map(|i| st.m[i][i])
        .take_while(|&d| d != 0)
        .collect();
    Ok(Snf {
        factors,
        diagonal: st.m,
        transforms: st.u.zip(st.v),
    })
}

/// Integer matrix product with overflow detection.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<IntMatrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i64, |acc, k| {
                        row[k]
                            .checked_mul(b[k][j])
                            .and_then(|p| acc.checked_add(p))
                            .ok_or(Error::Overflow)
                    })
                })
                .collect()
        })
        .collect()
}
