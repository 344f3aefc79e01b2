//! Qudit Pauli operators in symplectic form.
//!
//! An operator is stored as `tau^phase * X^x Z^z` where `tau = exp(i*pi/m)`, so
//! `omega = tau^2` and, for qubits, `tau = i`. The phase exponent is kept mod
//! `2m`. Qubit operators keep their `x`/`z` parts in packed machine words,
//! larger primes use one byte per site.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qudit dimension {0} is not a prime below 256")]
    CompositeDimension(u32),
    #[error("empty Pauli string")]
    Empty,
    #[error("unexpected character {ch:?} at offset {offset}")]
    UnexpectedChar { ch: char, offset: usize },
    #[error("exponent {exponent} at offset {offset} is not below the qudit dimension {m}")]
    ExponentTooLarge { exponent: u64, m: u8, offset: usize },
    #[error("phase annotation {0:?} cannot be represented for this qudit dimension")]
    PhaseNotRepresentable(String),
    #[error("operators act on {left} and {right} qudits")]
    LengthMismatch { left: usize, right: usize },
    #[error("operators have qudit dimensions {left} and {right}")]
    DimensionMismatch { left: u8, right: u8 },
    #[error("partition covers {partition} qudits but the operator acts on {operator}")]
    PartitionSize { partition: usize, operator: usize },
}

/// A prime qudit dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuditDim(u8);

impl QuditDim {
    pub const QUBIT: QuditDim = QuditDim(2);

    pub fn new(m: u32) -> Result<Self, PauliError> {
        if m < 2 || m > 255 || !(2..m).take_while(|d| d * d <= m).all(|d| m % d != 0) {
            return Err(PauliError::CompositeDimension(m));
        }
        Ok(QuditDim(m as u8))
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_qubit(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub(crate) fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub(crate) fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub(crate) fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse of a non-zero residue.
    pub(crate) fn inv(self, a: u8) -> u8 {
        debug_assert!(a % self.0 != 0);
        // Fermat: a^(m-2)
        let m = self.0 as u32;
        let mut result = 1u32;
        let mut base = a as u32 % m;
        let mut e = m - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        result as u8
    }
}

impl fmt::Display for QuditDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Sites {
    /// m = 2: bit i of word i/64.
    Packed { x: Vec<u64>, z: Vec<u64> },
    /// m > 2: one residue per site.
    Bytes { x: Vec<u8>, z: Vec<u8> },
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

/// An `n`-qudit Pauli operator over a prime qudit dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    dim: QuditDim,
    n: usize,
    phase: u16,
    sites: Sites,
}

impl PauliOperator {
    pub fn identity(n: usize, dim: QuditDim) -> Self {
        assert!(n >= 1, "a Pauli operator acts on at least one qudit");
        let sites = if dim.is_qubit() {
            Sites::Packed {
                x: vec![0; words(n)],
                z: vec![0; words(n)],
            }
        } else {
            Sites::Bytes {
                x: vec![0; n],
                z: vec![0; n],
            }
        };
        PauliOperator {
            dim,
            n,
            phase: 0,
            sites,
        }
    }

    /// Builds `X^x Z^z` (phase exponent 0); entries are reduced mod `m`.
    pub fn from_xz(x: &[u8], z: &[u8], dim: QuditDim) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        if x.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut p = Self::identity(x.len(), dim);
        for i in 0..x.len() {
            p.set_site(i, x[i] % dim.0, z[i] % dim.0);
        }
        Ok(p)
    }

    /// Single-site `X^a Z^b` on qudit `q` of an `n`-qudit register.
    pub fn single(n: usize, q: usize, a: u8, b: u8, dim: QuditDim) -> Self {
        let mut p = Self::identity(n, dim);
        p.set_site(q, a % dim.0, b % dim.0);
        p
    }

    #[inline]
    pub fn num_qudits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> QuditDim {
        self.dim
    }

    /// Phase exponent of `tau = exp(i*pi/m)`, in `0..2m`.
    #[inline]
    pub fn phase_exponent(&self) -> u16 {
        self.phase
    }

    /// Phase as a power of `omega_m`, when it is one.
    pub fn omega_exponent(&self) -> Option<u8> {
        (self.phase % 2 == 0).then_some((self.phase / 2) as u8)
    }

    pub fn with_phase_exponent(mut self, tau_exponent: u16) -> Self {
        self.phase = tau_exponent % (2 * self.dim.0 as u16);
        self
    }

    #[inline]
    pub fn x(&self, i: usize) -> u8 {
        match &self.sites {
            Sites::Packed { x, .. } => ((x[i / 64] >> (i % 64)) & 1) as u8,
            Sites::Bytes { x, .. } => x[i],
        }
    }

    #[inline]
    pub fn z(&self, i: usize) -> u8 {
        match &self.sites {
            Sites::Packed { z, .. } => ((z[i / 64] >> (i % 64)) & 1) as u8,
            Sites::Bytes { z, .. } => z[i],
        }
    }

    pub fn x_vec(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    pub fn z_vec(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.z(i)).collect()
    }

    pub(crate) fn set_site(&mut self, i: usize, a: u8, b: u8) {
        match &mut self.sites {
            Sites::Packed { x, z } => {
                let (w, bit) = (i / 64, 1u64 << (i % 64));
                x[w] = (x[w] & !bit) | if a & 1 == 1 { bit } else { 0 };
                z[w] = (z[w] & !bit) | if b & 1 == 1 { bit } else { 0 };
            }
            Sites::Bytes { x, z } => {
                x[i] = a;
                z[i] = b;
            }
        }
    }

    #[inline]
    pub fn acts_on(&self, i: usize) -> bool {
        self.x(i) != 0 || self.z(i) != 0
    }

    pub fn is_identity(&self) -> bool {
        match &self.sites {
            Sites::Packed { x, z } => x.iter().chain(z).all(|&w| w == 0),
            Sites::Bytes { x, z } => x.iter().chain(z).all(|&v| v == 0),
        }
    }

    /// Number of qudits acted on non-trivially.
    pub fn qudit_weight(&self) -> usize {
        match &self.sites {
            Sites::Packed { x, z } => x
                .iter()
                .zip(z)
                .map(|(a, b)| (a | b).count_ones() as usize)
                .sum(),
            Sites::Bytes { .. } => (0..self.n).filter(|&i| self.acts_on(i)).count(),
        }
    }

    /// Qudits acted on non-trivially, ascending.
    pub fn qudit_support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.acts_on(i)).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PauliError> {
        if self.dim != other.dim {
            return Err(PauliError::DimensionMismatch {
                left: self.dim.0,
                right: other.dim.0,
            });
        }
        if self.n != other.n {
            return Err(PauliError::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// The product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_compatible(other)?;
        let m = self.dim;
        let modulus = 2 * m.0 as u16;
        // X^a Z^b X^c Z^d = omega^{b.c} X^{a+c} Z^{b+d}
        let cross = self.z_dot_x(other);
        let phase = (self.phase + other.phase + 2 * cross as u16) % modulus;
        let sites = match (&self.sites, &other.sites) {
            (Sites::Packed { x: x1, z: z1 }, Sites::Packed { x: x2, z: z2 }) => Sites::Packed {
                x: x1.iter().zip(x2).map(|(a, b)| a ^ b).collect(),
                z: z1.iter().zip(z2).map(|(a, b)| a ^ b).collect(),
            },
            (Sites::Bytes { x: x1, z: z1 }, Sites::Bytes { x: x2, z: z2 }) => Sites::Bytes {
                x: x1.iter().zip(x2).map(|(&a, &b)| m.add(a, b)).collect(),
                z: z1.iter().zip(z2).map(|(&a, &b)| m.add(a, b)).collect(),
            },
            _ => unreachable!("storage is determined by the dimension"),
        };
        Ok(PauliOperator {
            dim: m,
            n: self.n,
            phase,
            sites,
        })
    }

    /// `sum_i z_self[i] * x_other[i] mod m`.
    fn z_dot_x(&self, other: &Self) -> u8 {
        match (&self.sites, &other.sites) {
            (Sites::Packed { z: z1, .. }, Sites::Packed { x: x2, .. }) => {
                let ones: u32 = z1.iter().zip(x2).map(|(a, b)| (a & b).count_ones()).sum();
                (ones & 1) as u8
            }
            (Sites::Bytes { z: z1, .. }, Sites::Bytes { x: x2, .. }) => {
                let m = self.dim.0 as u32;
                (z1.iter()
                    .zip(x2)
                    .map(|(&a, &b)| a as u32 * b as u32)
                    .sum::<u32>()
                    % m) as u8
            }
            _ => unreachable!("storage is determined by the dimension"),
        }
    }

    /// Exponent `lambda` of the group commutator `p q p^-1 q^-1 = omega^lambda I`.
    ///
    /// `lambda = sum_i (z_p[i] x_q[i] - x_p[i] z_q[i]) mod m`, so that
    /// `[X, Z] = omega^-1`.
    pub fn symplectic_product(&self, other: &Self) -> Result<u8, PauliError> {
        self.check_compatible(other)?;
        Ok(self.symplectic_unchecked(other))
    }

    #[inline]
    pub(crate) fn symplectic_unchecked(&self, other: &Self) -> u8 {
        let m = self.dim;
        m.add(self.z_dot_x(other), m.neg(other.z_dot_x(self)))
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, PauliError> {
        Ok(self.symplectic_product(other)? == 0)
    }

    /// `self^k`, computed by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n, self.dim);
        for _ in 0..k {
            acc = acc.multiply(self).expect("same shape");
        }
        acc
    }

    /// Indices of the parts on which the operator acts non-trivially.
    pub fn support(&self, partition: &Partition) -> Result<Vec<usize>, PauliError> {
        if partition.num_qudits() != self.n {
            return Err(PauliError::PartitionSize {
                partition: partition.num_qudits(),
                operator: self.n,
            });
        }
        let mut hit = vec![false; partition.num_parts()];
        for q in 0..self.n {
            if self.acts_on(q) {
                hit[partition.part_of(q)] = true;
            }
        }
        Ok(hit
            .iter()
            .enumerate()
            .filter_map(|(i, &h)| h.then_some(i))
            .collect())
    }

    /// `|support(partition)|`.
    pub fn weight(&self, partition: &Partition) -> Result<usize, PauliError> {
        self.support(partition).map(|s| s.len())
    }

    /// Concatenated `(x | z)` symplectic vector.
    pub(crate) fn symplectic_vector(&self) -> Vec<u8> {
        let mut v = self.x_vec();
        v.extend(self.z_vec());
        v
    }

    pub(crate) fn from_symplectic(v: &[u8], dim: QuditDim) -> Self {
        let n = v.len() / 2;
        Self::from_xz(&v[..n], &v[n..], dim).expect("even-length symplectic vector")
    }

    /// Same operator with the phase dropped.
    pub fn unphased(&self) -> Self {
        let mut p = self.clone();
        p.phase = 0;
        p
    }

    /// Parses the Pauli string grammar for qudit dimension `m`.
    ///
    /// `pauli := phase? site+`, `site := 'I' | 'X' | 'Y' | 'Z' | 'X' digits ('Z' digits)? | 'Z' digits`.
    /// An exponent-carrying `X` immediately followed by an exponent-carrying `Z`
    /// forms one site (`X2Z1`); whitespace ends a site and is otherwise ignored.
    /// The optional phase prefix is `[+|-][i][w<k>]` (`i` only for qubits).
    pub fn parse(s: &str, m: u32) -> Result<Self, PauliError> {
        let dim = QuditDim::new(m)?;
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].1.is_whitespace() {
                *pos += 1;
            }
        };
        let modulus = 2 * dim.0 as u16;
        let mut phase: u16 = 0;
        skip_ws(&mut pos);
        if pos < chars.len() && (chars[pos].1 == '+' || chars[pos].1 == '-') {
            if chars[pos].1 == '-' {
                phase = (phase + dim.0 as u16) % modulus;
            }
            pos += 1;
        }
        if pos < chars.len() && chars[pos].1 == 'i' {
            if !dim.is_qubit() {
                return Err(PauliError::PhaseNotRepresentable("i".into()));
            }
            phase = (phase + 1) % modulus;
            pos += 1;
        }
        if pos < chars.len() && chars[pos].1 == 'w' {
            pos += 1;
            let (k, next) = read_digits(&chars, pos).ok_or(PauliError::UnexpectedChar {
                ch: chars.get(pos).map_or('\0', |c| c.1),
                offset: chars.get(pos).map_or(s.len(), |c| c.0),
            })?;
            phase = ((phase as u64 + 2 * (k % dim.0 as u64)) % modulus as u64) as u16;
            pos = next;
        }

        let mut sites: Vec<(u8, u8, u16)> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let (offset, ch) = chars[pos];
            pos += 1;
            let exponent = |pos: &mut usize| -> Result<Option<u8>, PauliError> {
                match read_digits(&chars, *pos) {
                    None => Ok(None),
                    Some((e, next)) => {
                        if e >= dim.0 as u64 {
                            return Err(PauliError::ExponentTooLarge {
                                exponent: e,
                                m: dim.0,
                                offset: chars[*pos].0,
                            });
                        }
                        *pos = next;
                        Ok(Some(e as u8))
                    }
                }
            };
            match ch {
                'I' => sites.push((0, 0, 0)),
                'Y' => {
                    // Y = iXZ for qubits, XZ otherwise
                    let extra = if dim.is_qubit() { 1 } else { 0 };
                    sites.push((1, 1, extra));
                }
                'X' => match exponent(&mut pos)? {
                    None => sites.push((1, 0, 0)),
                    Some(a) => {
                        let mut b = 0;
                        if pos < chars.len() && chars[pos].1 == 'Z' {
                            if let Some((_, _)) = read_digits(&chars, pos + 1) {
                                pos += 1;
                                b = exponent(&mut pos)?.expect("digits present");
                            }
                        }
                        sites.push((a, b, 0));
                    }
                },
                'Z' => {
                    let b = exponent(&mut pos)?.unwrap_or(1);
                    sites.push((0, b, 0));
                }
                other => return Err(PauliError::UnexpectedChar { ch: other, offset }),
            }
        }
        if sites.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut p = Self::identity(sites.len(), dim);
        for (i, &(a, b, extra)) in sites.iter().enumerate() {
            p.set_site(i, a, b);
            phase = (phase + extra) % modulus;
        }
        p.phase = phase;
        Ok(p)
    }
}

fn read_digits(chars: &[(usize, char)], start: usize) -> Option<(u64, usize)> {
    let mut pos = start;
    let mut value: u64 = 0;
    while pos < chars.len() && chars[pos].1.is_ascii_digit() {
        value = value
            .saturating_mul(10)
            .saturating_add(chars[pos].1.to_digit(10).unwrap() as u64);
        pos += 1;
    }
    (pos > start).then_some((value, pos))
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.dim.0 as u16;
        let modulus = 2 * m;
        if self.dim.is_qubit() {
            let ys = (0..self.n).filter(|&i| self.x(i) == 1 && self.z(i) == 1).count() as u16;
            // each Y absorbs one factor of i
            let phase = (self.phase + 3 * (ys % 4)) % 4;
            f.write_str(["", "i", "-", "-i"][phase as usize])?;
            for i in 0..self.n {
                f.write_str(match (self.x(i), self.z(i)) {
                    (0, 0) => "I",
                    (1, 0) => "X",
                    (0, 1) => "Z",
                    _ => "Y",
                })?;
            }
            return Ok(());
        }
        let mut phase = self.phase % modulus;
        if phase % 2 != 0 {
            // odd powers of tau are -omega^k for odd m
            f.write_str("-")?;
            phase = (phase + m) % modulus;
        }
        if phase != 0 {
            write!(f, "w{} ", phase / 2)?;
        }
        for i in 0..self.n {
            if i > 0 {
                f.write_str(" ")?;
            }
            match (self.x(i), self.z(i)) {
                (0, 0) => f.write_str("I")?,
                (a, 0) => write!(f, "X{a}")?,
                (0, b) => write!(f, "Z{b}")?,
                (a, b) => write!(f, "X{a}Z{b}")?,
            }
        }
        Ok(())
    }
}

/// Parses with `m = 2`.
impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse(s, 2).unwrap()
    }

    #[test]
    fn parses_identity_and_five_qubit_generator() {
        let id = p("IIIII");
        assert!(id.is_identity());
        assert_eq!(id.num_qudits(), 5);
        let g = p("XZZXI");
        assert_eq!(g.x_vec(), vec![1, 0, 0, 1, 0]);
        assert_eq!(g.z_vec(), vec![0, 1, 1, 0, 0]);
        assert_eq!(g.phase_exponent(), 0);
    }

    #[test]
    fn qutrit_exponent_syntax() {
        let x2 = PauliOperator::parse("X2", 3).unwrap();
        assert_eq!(x2.x_vec(), vec![2]);
        let x = PauliOperator::parse("X", 3).unwrap();
        assert!(x2.multiply(&x).unwrap().is_identity());
        assert_eq!(x2.multiply(&x).unwrap().phase_exponent(), 0);

        let joined = PauliOperator::parse("X2Z1 I", 3).unwrap();
        assert_eq!(joined.num_qudits(), 2);
        assert_eq!((joined.x(0), joined.z(0)), (2, 1));
        let split = PauliOperator::parse("X2 Z1", 3).unwrap();
        assert_eq!(split.num_qudits(), 2);
        let bare = PauliOperator::parse("XZ", 3).unwrap();
        assert_eq!(bare.num_qudits(), 2);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(PauliOperator::parse("", 2), Err(PauliError::Empty));
        assert!(matches!(
            PauliOperator::parse("XQ", 2),
            Err(PauliError::UnexpectedChar { ch: 'Q', offset: 1 })
        ));
        assert!(matches!(
            PauliOperator::parse("X3", 3),
            Err(PauliError::ExponentTooLarge { exponent: 3, .. })
        ));
        assert_eq!(
            PauliOperator::parse("X", 4),
            Err(PauliError::CompositeDimension(4))
        );
        assert!(PauliOperator::parse("iX", 3).is_err());
    }

    #[test]
    fn products() {
        let x = p("XII");
        assert!(x.multiply(&x).unwrap().is_identity());
        let id = p("III");
        assert_eq!(x.multiply(&id).unwrap(), x);

        // Z X = omega X Z on a qutrit
        let z = PauliOperator::parse("Z", 3).unwrap();
        let x = PauliOperator::parse("X", 3).unwrap();
        let zx = z.multiply(&x).unwrap();
        assert_eq!((zx.x(0), zx.z(0)), (1, 1));
        assert_eq!(zx.omega_exponent(), Some(1));

        // qubits: X Z = -i Y
        let xz = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(xz.to_string(), "-iY");
        assert_eq!(p("Y").multiply(&p("Y")).unwrap().to_string(), "I");
    }

    #[test]
    fn symplectic_products() {
        let a = p("XZZXI");
        let b = p("IXZZX");
        assert_eq!(a.symplectic_product(&a).unwrap(), 0);
        assert_eq!(a.symplectic_product(&b).unwrap(), 0);
        let x = PauliOperator::parse("X", 3).unwrap();
        let z = PauliOperator::parse("Z", 3).unwrap();
        assert_eq!(x.symplectic_product(&z).unwrap(), 2);
        assert_eq!(z.symplectic_product(&x).unwrap(), 1);
        assert!(a.symplectic_product(&p("XX")).is_err());
    }

    #[test]
    fn supports() {
        let x12 = p("XXII");
        let single = Partition::single_qudits(4);
        assert_eq!(x12.support(&single).unwrap(), vec![0, 1]);
        let coarse = Partition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        assert_eq!(x12.support(&coarse).unwrap(), vec![0]);
        assert!(p("IIII").support(&single).unwrap().is_empty());
        assert!(p("XX").support(&single).is_err());
    }

    #[test]
    fn display_roundtrip_examples() {
        for s in ["XZZXI", "-iY", "iXYZ", "-ZZ"] {
            assert_eq!(p(s).to_string(), s);
        }
        let q = PauliOperator::parse("w2 X2Z1 Z2 I", 3).unwrap();
        assert_eq!(PauliOperator::parse(&q.to_string(), 3).unwrap(), q);
    }

    fn arb_pauli(m: u32, n: usize) -> impl Strategy<Value = PauliOperator> {
        (
            proptest::collection::vec(0..m as u8, n),
            proptest::collection::vec(0..m as u8, n),
            0..(2 * m as u16),
        )
            .prop_map(move |(x, z, ph)| {
                PauliOperator::from_xz(&x, &z, QuditDim::new(m).unwrap())
                    .unwrap()
                    .with_phase_exponent(ph)
            })
    }

    fn arb_pair() -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..70).prop_flat_map(|(m, n)| {
            (arb_pauli(m, n), arb_pauli(m, n))
        })
    }

    proptest! {
        #[test]
        fn symplectic_is_antisymmetric((a, b) in arb_pair()) {
            let m = a.dim();
            prop_assert_eq!(
                a.symplectic_product(&b).unwrap(),
                m.neg(b.symplectic_product(&a).unwrap())
            );
        }

        #[test]
        fn support_of_product_within_union((a, b) in arb_pair()) {
            let part = Partition::single_qudits(a.num_qudits());
            let sa = a.support(&part).unwrap();
            let sb = b.support(&part).unwrap();
            for i in a.multiply(&b).unwrap().support(&part).unwrap() {
                prop_assert!(sa.contains(&i) || sb.contains(&i));
            }
        }

        #[test]
        fn display_parse_roundtrip((a, _b) in arb_pair()) {
            let m = a.dim().get() as u32;
            prop_assert_eq!(PauliOperator::parse(&a.to_string(), m).unwrap(), a);
        }

        #[test]
        fn qubit_operators_square_to_plus_minus_identity(a in arb_pauli(2, 9)) {
            let sq = a.multiply(&a).unwrap();
            prop_assert!(sq.is_identity());
            prop_assert!(sq.phase_exponent() % 2 == 0);
        }
    }
}
