//! Exact linear algebra over rationals: elimination, rank, solving, kernels,
//! integer Hermite normal form, and Fourier-Motzkin feasibility.

use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-reduces `m` in place (fraction-free is unnecessary at this scale).
/// Returns the pivot column of each eliminated row.
fn row_echelon(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    row_echelon(&mut m).len()
}

/// Solves `A x = b` for possibly non-square `A` (rows of `a`).
/// Returns `None` when the system is inconsistent; free variables are set to 0.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut m);
    // Inconsistent iff a pivot landed in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Determinant of a square rational matrix.
pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut acc = Rat::from_integer(BigInt::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            acc = -acc;
        }
        let piv = m[c][c].clone();
        acc *= &piv;
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..n {
                    let sub = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
    }
    acc
}

/// A nonzero vector orthogonal to every row of `rows` (each of length `n`),
/// or `None` if the rows span the full space.
pub fn kernel_vector(rows: &[Vec<Rat>], n: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = row_echelon(&mut m);
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rat::zero(); n];
    v[free] = Rat::from_integer(BigInt::from(1));
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free].clone();
    }
    Some(v)
}

/// Row-style Hermite normal form of the lattice spanned by integer `rows`.
///
/// The result is in echelon form with positive pivots and the entries above
/// each pivot reduced into `[0, pivot)`; zero rows are dropped. Equal lattices
/// produce identical output.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        // Euclidean elimination on column c below row r.
        loop {
            let mut nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            nz.sort_by_key(|&i| m[i][c].abs());
            let p = nz[0];
            m.swap(r, p);
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let mut again = false;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for j in 0..cols {
                        let sub = &q * &m[r][j];
                        m[i][j] -= sub;
                    }
                    if !m[i][c].is_zero() {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            // Reduce the entries above the pivot.
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let sub = &q * &m[r][j];
                        m[i][j] -= sub;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// One linear constraint `coeffs . x (<|<=) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rhs, strict: false }
    }
    pub fn lt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rhs, strict: true }
    }

    fn normalized(mut self) -> Self {
        // Scale so the largest absolute coefficient is 1; keeps FM products small.
        let max = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|x| x.abs())
            .max();
        if let Some(max) = max {
            if !max.is_zero() {
                for x in self.coeffs.iter_mut() {
                    *x = &*x / &max;
                }
                self.rhs = &self.rhs / &max;
            }
        }
        self
    }
}

/// Exact feasibility of a conjunction of linear constraints in `n` variables
/// by Fourier-Motzkin elimination. Handles strict and weak inequalities.
pub fn feasible(mut cons: Vec<Constraint>, n: usize) -> bool {
    for var in (0..n).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for c in cons {
            match c.coeffs[var].cmp(&Rat::zero()) {
                std::cmp::Ordering::Greater => pos.push(c),
                std::cmp::Ordering::Less => neg.push(c),
                std::cmp::Ordering::Equal => rest.push(c),
            }
        }
        for p in &pos {
            for q in &neg {
                // p: a x <= b (a>0), q: c x <= d (c<0); combine to drop x.
                let a = &p.coeffs[var];
                let c = &q.coeffs[var];
                let mut coeffs = Vec::with_capacity(var);
                for j in 0..var {
                    coeffs.push(&p.coeffs[j] * -c + &q.coeffs[j] * a);
                }
                let rhs = &p.rhs * -c + &q.rhs * a;
                let comb = Constraint {
                    coeffs,
                    rhs,
                    strict: p.strict || q.strict,
                }
                .normalized();
                if !rest.contains(&comb) {
                    rest.push(comb);
                }
            }
        }
        for c in rest.iter_mut() {
            c.coeffs.truncate(var);
        }
        rest.dedup();
        cons = rest;
    }
    cons.iter().all(|c| {
        if c.strict {
            Rat::zero() < c.rhs
        } else {
            Rat::zero() <= c.rhs
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 1], &[2, 2]])), 1);
        assert_eq!(det(&m(&[&[2, 0], &[0, 3]])), int(6));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let x = solve(&m(&[&[1, 1], &[1, -1]]), &[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(solve(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(3)]).is_none());
    }

    #[test]
    fn kernel() {
        let v = kernel_vector(&m(&[&[1, 1, 0]]), 3).unwrap();
        assert!(v.iter().any(|x| !x.is_zero()));
        assert_eq!(&v[0] + &v[1], Rat::zero());
        assert!(kernel_vector(&m(&[&[1, 0], &[0, 1]]), 2).is_none());
    }

    #[test]
    fn hnf_canonical() {
        let big = |x: i64| BigInt::from(x);
        let a = hnf(&[vec![big(2), big(0)], vec![big(0), big(1)]]);
        let b = hnf(&[vec![big(2), big(1)], vec![big(2), big(-1)], vec![big(4), big(0)]]);
        // Both generate the lattice {(x, y) : x even}... the second: (2,1),(2,-1) -> (0,2),(2,1).
        assert_eq!(a, vec![vec![big(2), big(0)], vec![big(0), big(1)]]);
        assert_eq!(b, vec![vec![big(2), big(1)], vec![big(0), big(2)]]);
    }

    #[test]
    fn fm_feasibility() {
        // x > 0, x < 1 is feasible; x > 0, x < 0 is not.
        let f = vec![
            Constraint::lt(vec![int(-1)], int(0)),
            Constraint::lt(vec![int(1)], int(1)),
        ];
        assert!(feasible(f, 1));
        let g = vec![
            Constraint::lt(vec![int(-1)], int(0)),
            Constraint::lt(vec![int(1)], int(0)),
        ];
        assert!(!feasible(g, 1));
        // Boundary: x >= 1/2, x <= 1/2 feasible; strict version infeasible.
        let h = vec![
            Constraint::le(vec![int(-1)], rat(-1, 2)),
            Constraint::le(vec![int(1)], rat(1, 2)),
        ];
        assert!(feasible(h.clone(), 1));
        let mut hs = h;
        hs[0].strict = true;
        assert!(!feasible(hs, 1));
    }
}
