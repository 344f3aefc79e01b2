//! Dense complex matrices and state vectors over `m`-level qudits.
//!
//! Basis index digits are qudit values, qudit 0 most significant.

use num_complex::Complex64;

use crate::pauli::PauliOperator;

pub type C64 = Complex64;

/// `e^(2 pi i t / m)`.
pub fn root_of_unity(t: i64, m: u32) -> C64 {
    let m = m as i64;
    let t = t.rem_euclid(m);
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / m as f64)
}

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Matrix::zeros(dim);
        for i in 0..dim {
            out.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        out
    }

    /// `None` unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Option<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut out = Matrix::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            out.data[i * entries.len() + i] = e;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let dst = &mut out.data[i * d..(i + 1) * d];
                for (o, &b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut out = Matrix::zeros(d);
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * d + j * b + l] = s * other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Largest entrywise distance.
    pub fn max_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U U^dag - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_diff(&Matrix::identity(self.dim))
    }

    /// `U V U^dag V^dag`.
    pub fn group_commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).mul(&self.adjoint()).mul(&other.adjoint())
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let d = self.dim;
        (0..d)
            .map(|i| self.data[i * d..(i + 1) * d].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Digit of qudit `q` in basis index `i`.
fn digit(i: usize, q: usize, n: usize, m: usize) -> usize {
    i / m.pow((n - 1 - q) as u32) % m
}

/// Applies `gate` to the listed qudits, the first listed qudit being the
/// most significant digit of the gate's index.
pub fn apply_gate(state: &mut [C64], m: usize, n: usize, qudits: &[usize], gate: &Matrix) {
    let local = gate.dim();
    debug_assert_eq!(local, m.pow(qudits.len() as u32));
    let strides: Vec<usize> = qudits.iter().map(|&q| m.pow((n - 1 - q) as u32)).collect();
    let offsets: Vec<usize> = (0..local)
        .map(|l| {
            let mut rest = l;
            let mut off = 0;
            for t in (0..qudits.len()).rev() {
                off += (rest % m) * strides[t];
                rest /= m;
            }
            off
        })
        .collect();
    let mut buf = vec![C64::new(0.0, 0.0); local];
    for base in 0..state.len() {
        if qudits.iter().any(|&q| digit(base, q, n, m) != 0) {
            continue;
        }
        for (b, &off) in buf.iter_mut().zip(&offsets) {
            *b = state[base + off];
        }
        for (r, &off) in offsets.iter().enumerate() {
            state[base + off] = (0..local).map(|c| gate.get(r, c) * buf[c]).sum();
        }
    }
}

/// `tau^phase X^x Z^z`, with `X|j> = |j+1>`, `Z|j> = omega^j |j>` and
/// `tau = e^(i pi / m)`.
pub fn apply_pauli(state: &[C64], p: &PauliOperator) -> Vec<C64> {
    let m = p.dim().get() as usize;
    let n = p.num_qudits();
    let phase = C64::from_polar(1.0, std::f64::consts::PI * p.phase_exponent() as f64 / m as f64);
    let omegas: Vec<C64> = (0..m).map(|t| root_of_unity(t as i64, m as u32)).collect();
    let x: Vec<usize> = (0..n).map(|q| p.x(q) as usize).collect();
    let z: Vec<usize> = (0..n).map(|q| p.z(q) as usize).collect();
    let mut out = vec![C64::new(0.0, 0.0); state.len()];
    for (j, &amp) in state.iter().enumerate() {
        if amp == C64::new(0.0, 0.0) {
            continue;
        }
        let mut target = 0usize;
        let mut w = 0usize;
        for q in 0..n {
            let d = digit(j, q, n, m);
            w += z[q] * d;
            target = target * m + (d + x[q]) % m;
        }
        out[target] += phase * omegas[w % m] * amp;
    }
    out
}

/// Dense matrix of a single-qudit `X^a Z^b`.
pub fn single_pauli(m: u32, a: u8, b: u8) -> Matrix {
    let d = m as usize;
    let mut out = Matrix::zeros(d);
    for j in 0..d {
        out.set((j + a as usize) % d, j, root_of_unity((b as usize * j) as i64, m));
    }
    out
}

/// Dense matrix of a whole Pauli operator, phase included.
pub fn pauli_matrix(p: &PauliOperator) -> Matrix {
    let m = p.dim().get() as usize;
    let d = m.pow(p.num_qudits() as u32);
    let mut out = Matrix::zeros(d);
    for j in 0..d {
        let mut e = vec![C64::new(0.0, 0.0); d];
        e[j] = C64::new(1.0, 0.0);
        let col = apply_pauli(&e, p);
        for (i, v) in col.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::QuditDim;

    #[test]
    fn qutrit_clock_and_shift() {
        // Z X = omega X Z
        let x = single_pauli(3, 1, 0);
        let z = single_pauli(3, 0, 1);
        let lhs = z.mul(&x);
        let rhs = x.mul(&z).scale(root_of_unity(1, 3));
        assert!(lhs.max_diff(&rhs) < 1e-12);
        // X^2 X = I
        let x2 = single_pauli(3, 2, 0);
        assert!(x2.mul(&x).max_diff(&Matrix::identity(3)) < 1e-12);
    }

    #[test]
    fn pauli_matrix_matches_kron() {
        let p = PauliOperator::parse("XZ", 2).unwrap();
        let dense = pauli_matrix(&p);
        let kron = single_pauli(2, 1, 0).kron(&single_pauli(2, 0, 1));
        assert!(dense.max_diff(&kron) < 1e-12);
        let y = PauliOperator::parse("Y", 2).unwrap();
        let want = Matrix::from_rows(vec![
            vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(pauli_matrix(&y).max_diff(&want) < 1e-12);
        let _ = QuditDim::QUBIT;
    }

    #[test]
    fn gate_application_matches_kron() {
        let h = Matrix::from_rows(vec![
            vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)],
        ])
        .unwrap()
        .scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let state: Vec<C64> = (0..8).map(|i| C64::new(i as f64, -(i as f64) / 2.0)).collect();
        let mut a = state.clone();
        apply_gate(&mut a, 2, 3, &[1], &h);
        let full = Matrix::identity(2).kron(&h).kron(&Matrix::identity(2));
        let b = full.apply(&state);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-12));
        // reversed qudit order on a two-qudit gate
        let cx = single_pauli(2, 1, 0);
        let mut two = Matrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                two.set(i, j, if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
                two.set(2 + i, 2 + j, cx.get(i, j));
            }
        }
        let mut c = state.clone();
        apply_gate(&mut c, 2, 3, &[2, 0], &two);
        let mut expect = vec![C64::new(0.0, 0.0); 8];
        for (i, &amp) in state.iter().enumerate() {
            let flip = if i & 1 == 1 { i ^ 4 } else { i };
            expect[flip] = amp;
        }
        assert!(c.iter().zip(&expect).all(|(x, y)| (x - y).norm() < 1e-12));
    }
}
