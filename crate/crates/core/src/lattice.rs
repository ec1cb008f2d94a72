//! Small integer linear algebra: Smith/Hermite forms and exact solving.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i128>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], c: i64) -> Vec<i64> {
    a.iter().map(|x| x * c).collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Coefficients `c` with `sum_i c_i * basis[i] = target`, if the target lies
/// in the rational span of the (linearly independent) basis.
pub fn solve_coefficients(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Q>> {
    let k = basis.len();
    if k == 0 {
        return target.iter().all(|x| *x == 0).then(Vec::new);
    }
    let n = target.len();
    // Augmented system in the columns basis[0..k] | target, rows = coordinates.
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = basis.iter().map(|b| Q::from_integer(b[r] as i128)).collect();
            row.push(Q::from_integer(target[r] as i128));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for col in 0..k {
        let p = (pivot_row..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..=k {
                    let d = a[pivot_row][c] * f;
                    a[r][c] -= d;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][k]).collect())
}

/// Integer coordinates of `target` in the basis, if they exist.
pub fn integer_coefficients(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    solve_coefficients(basis, target)?.into_iter().map(|c| c.is_integer().then(|| c.to_integer() as i64)).collect()
}

/// The quotient `Z^n / span(generators)` presented by integer invariants.
///
/// `apply(x)` returns one coordinate per invariant factor: torsion
/// coordinates are reduced modulo their factor, free coordinates are
/// pairings with a Hermite-reduced basis of the annihilator of the
/// generators. Two vectors have the same class iff `apply` agrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    rows: Vec<Vec<i64>>,
    moduli: Vec<i64>,
}

impl QuotientMap {
    pub fn new(n: usize, generators: &[Vec<i64>]) -> Self {
        let k = generators.len();
        // a: n x k with generators as columns; u tracks row operations.
        let mut a: Vec<Vec<i64>> = (0..n).map(|r| generators.iter().map(|g| g[r]).collect()).collect();
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut t = 0;
        while t < k.min(n) {
            // pick the smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for r in t..n {
                for c in t..k {
                    if a[r][c] != 0 && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { break };
            a.swap(t, br);
            u.swap(t, br);
            for row in a.iter_mut() {
                row.swap(t, bc);
            }
            let mut done = true;
            let p = a[t][t];
            for r in t + 1..n {
                let f = a[r][t] / p;
                if f != 0 {
                    for c in 0..k {
                        a[r][c] -= f * a[t][c];
                    }
                    for c in 0..n {
                        u[r][c] -= f * u[t][c];
                    }
                }
                if a[r][t] != 0 {
                    done = false;
                }
            }
            for c in t + 1..k {
                let f = a[t][c] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[c] -= f * row[t];
                    }
                }
                if a[t][c] != 0 {
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // divisibility condition d_t | every remaining entry
            let mut fixed = true;
            'outer: for r in t + 1..n {
                for c in t + 1..k {
                    if a[r][c] % p != 0 {
                        for cc in 0..k {
                            a[t][cc] += a[r][cc];
                        }
                        for cc in 0..n {
                            u[t][cc] += u[r][cc];
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                if a[t][t] < 0 {
                    for c in 0..k {
                        a[t][c] = -a[t][c];
                    }
                    for c in 0..n {
                        u[t][c] = -u[t][c];
                    }
                }
                t += 1;
            }
        }
        let mut rows = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..t {
            if a[i][i] > 1 {
                rows.push(u[i].clone());
                moduli.push(a[i][i]);
            }
        }
        let free: Vec<Vec<i64>> = u[t..].to_vec();
        for r in hermite_rows(free) {
            rows.push(r);
            moduli.push(0);
        }
        Self { rows, moduli }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .zip(&self.moduli)
            .map(|(r, &m)| {
                let d = dot(r, x);
                if m == 0 {
                    d
                } else {
                    d.mod_floor(&m)
                }
            })
            .collect()
    }

    /// Invariant factors; `0` marks a free summand.
    /// One linear form per invariant factor.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Row-style Hermite normal form with positive pivots; zero rows dropped.
pub fn hermite_rows(mut m: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let Some(ncols) = m.first().map(|r| r.len()) else {
        return m;
    };
    let mut out_row = 0;
    for col in 0..ncols {
        if out_row >= m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (out_row..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            m.swap(out_row, piv);
            let mut clean = true;
            for r in out_row + 1..m.len() {
                let f = m[r][col] / m[out_row][col];
                if f != 0 {
                    let pr = m[out_row].clone();
                    for (x, y) in m[r].iter_mut().zip(&pr) {
                        *x -= f * y;
                    }
                }
                if m[r][col] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[out_row][col] != 0 {
            if m[out_row][col] < 0 {
                for x in m[out_row].iter_mut() {
                    *x = -*x;
                }
            }
            let pr = m[out_row].clone();
            for r in 0..out_row {
                let f = Integer::div_floor(&m[r][col], &pr[col]);
                if f != 0 {
                    for (x, y) in m[r].iter_mut().zip(&pr) {
                        *x -= f * y;
                    }
                }
            }
            out_row += 1;
        }
    }
    m.truncate(out_row);
    m
}

/// Identity matrix helper.
pub fn identity(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, x)).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect()).collect()
}

pub fn is_nonneg(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
