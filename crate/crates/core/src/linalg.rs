//! Gaussian elimination over the prime field `Z_m`.

use crate::pauli::QuditDim;

/// Incrementally built reduced row-echelon basis that remembers how every
/// stored row is expressed in terms of the inserted vectors.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    m: QuditDim,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<u8>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(m: QuditDim, width: usize) -> Self {
        Echelon {
            m,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `(residual, coeffs)` with `v = residual + sum_j coeffs[j] * input_j`.
    pub fn reduce(&self, v: &[u8]) -> (Vec<u8>, Vec<u8>) {
        debug_assert_eq!(v.len(), self.width);
        let m = self.m;
        let mut r = v.to_vec();
        let mut coeffs = vec![0u8; self.inserted];
        for (row, (&p, combo)) in self.rows.iter().zip(self.pivots.iter().zip(&self.combos)) {
            let f = r[p];
            if f == 0 {
                continue;
            }
            let nf = m.neg(f);
            for (a, &b) in r.iter_mut().zip(row) {
                *a = m.add(*a, m.mul(nf, b));
            }
            for (c, &b) in coeffs.iter_mut().zip(combo) {
                *c = m.add(*c, m.mul(f, b));
            }
        }
        (r, coeffs)
    }

    #[cfg(test)]
    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).0.iter().all(|&a| a == 0)
    }

    /// Inserts `v`. On linear dependence returns the coefficients `c` with
    /// `v = sum_j c[j] * input_j` over the previously inserted vectors.
    pub fn insert(&mut self, v: &[u8]) -> Result<(), Vec<u8>> {
        let m = self.m;
        let (mut r, coeffs) = self.reduce(v);
        let Some(p) = r.iter().position(|&a| a != 0) else {
            return Err(coeffs);
        };
        // new row = (v - sum coeffs*inputs) scaled
        let idx = self.inserted;
        self.inserted += 1;
        for combo in &mut self.combos {
            combo.push(0);
        }
        let mut combo: Vec<u8> = coeffs.iter().map(|&c| m.neg(c)).collect();
        combo.push(1);
        let inv = m.inv(r[p]);
        for a in &mut r {
            *a = m.mul(*a, inv);
        }
        for c in &mut combo {
            *c = m.mul(*c, inv);
        }
        debug_assert_eq!(combo.len(), idx + 1);
        for ((row, &_q), other) in self
            .rows
            .iter_mut()
            .zip(self.pivots.iter())
            .zip(self.combos.iter_mut())
        {
            let f = row[p];
            if f == 0 {
                continue;
            }
            let nf = m.neg(f);
            for (a, &b) in row.iter_mut().zip(&r) {
                *a = m.add(*a, m.mul(nf, b));
            }
            for (a, &b) in other.iter_mut().zip(&combo) {
                *a = m.add(*a, m.mul(nf, b));
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.combos.push(combo);
        Ok(())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: QuditDim, a: &mut [Vec<u8>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(sel) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, sel);
        let inv = m.inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = m.mul(*v, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let nf = m.neg(row[c]);
            for (v, &b) in row.iter_mut().zip(&pivot_row) {
                *v = m.add(*v, m.mul(nf, b));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : A v = 0}` for `A` with `width` columns.
pub(crate) fn kernel(m: QuditDim, a: &[Vec<u8>], width: usize) -> Vec<Vec<u8>> {
    let mut a: Vec<Vec<u8>> = a.to_vec();
    let pivots = rref(m, &mut a, width);
    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u8; width];
        v[free] = 1;
        for (row, &p) in a.iter().zip(&pivots) {
            v[p] = m.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Some solution `t` of `A t = b`, if one exists.
pub(crate) fn solve(m: QuditDim, a: &[Vec<u8>], b: &[u8], unknowns: usize) -> Option<Vec<u8>> {
    let mut aug: Vec<Vec<u8>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(m, &mut aug, unknowns + 1);
    if pivots.last() == Some(&unknowns) {
        return None;
    }
    let mut t = vec![0u8; unknowns];
    for (row, &p) in aug.iter().zip(&pivots) {
        t[p] = row[unknowns];
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(m: QuditDim, a: &[u8], b: &[u8]) -> u8 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| m.add(acc, m.mul(x, y)))
    }

    #[test]
    fn echelon_reports_dependencies() {
        let m = QuditDim::new(3).unwrap();
        let mut e = Echelon::new(m, 3);
        e.insert(&[1, 2, 0]).unwrap();
        e.insert(&[0, 1, 1]).unwrap();
        // 2*(1,2,0) + (0,1,1) = (2,2,1)
        let dep = e.insert(&[2, 2, 1]).unwrap_err();
        assert_eq!(dep, vec![2, 1]);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[1, 0, 1]));
        assert!(!e.contains(&[0, 0, 1]));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = QuditDim::new(5).unwrap();
        let a = vec![vec![1, 2, 3, 4], vec![0, 1, 1, 1]];
        let k = kernel(m, &a, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                assert_eq!(dot(m, row, v), 0);
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QuditDim::QUBIT;
        let a = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let t = solve(m, &a, &[1, 0], 3).unwrap();
        assert_eq!(dot(m, &a[0], &t), 1);
        assert_eq!(dot(m, &a[1], &t), 0);
        let a = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(m, &a, &[1, 0], 2).is_none());
    }
}
