//! Explicit finite abelian groups `Z_{n1} x ... x Z_{nk}`.
//!
//! Elements and characters are both addressed by a mixed-radix index with the
//! first cycle varying fastest, so `(x_1, ..., x_k)` encodes to
//! `x_1 + n_1 * (x_2 + n_2 * (...))`. The dual group is identified with the
//! group itself: the character with index `m` is
//! `x -> exp(2 pi i sum_j m_j x_j / n_j)`.
//!
//! Haar measure on `G` is counting measure and the dual carries counting
//! measure scaled by `1/|G|`, which makes Parseval exact.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest group order accepted unless a caller asks for something else.
pub const DEFAULT_ORDER_CAP: usize = 1 << 22;

/// Modulus tolerance for [`arg_norm`].
pub const UNIT_TOLERANCE: f64 = 1e-9;

pub type GroupRef = Arc<FinAbGroup>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    cycles: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
    /// lcm of the cycle lengths; every character value is an `exponent`-th root of unity.
    exponent: usize,
    /// `exponent / n_j` for each cycle.
    phase_scale: Vec<usize>,
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cycles.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FinAbGroup {
    pub fn new(cycles: &[usize]) -> Result<GroupRef> {
        Self::with_cap(cycles, DEFAULT_ORDER_CAP)
    }

    pub fn cyclic(n: usize) -> Result<GroupRef> {
        Self::new(&[n])
    }

    pub fn with_cap(cycles: &[usize], cap: usize) -> Result<GroupRef> {
        if cycles.is_empty() {
            return Err(Error::InvalidGroup("at least one cycle is required".into()));
        }
        if let Some(&n) = cycles.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("cycle length {n} is below 2")));
        }
        let order: u128 = cycles.iter().map(|&n| n as u128).product();
        if order > cap as u128 {
            return Err(Error::OrderCap { order, cap });
        }
        let order = order as usize;
        let mut strides = Vec::with_capacity(cycles.len());
        let mut stride = 1;
        for &n in cycles {
            strides.push(stride);
            stride *= n;
        }
        let exponent = cycles.iter().fold(1, |acc, &n| acc / gcd(acc, n) * n);
        let phase_scale = cycles.iter().map(|&n| exponent / n).collect();
        Ok(Arc::new(FinAbGroup {
            cycles: cycles.to_vec(),
            strides,
            order,
            exponent,
            phase_scale,
        }))
    }

    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn encode(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::OutOfRange(format!(
                "tuple {coords:?} has {} coordinates, group {self:?} has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        let mut index = 0;
        for ((&x, &n), &s) in coords.iter().zip(&self.cycles).zip(&self.strides) {
            if x >= n {
                return Err(Error::OutOfRange(format!("coordinate {x} not below {n}")));
            }
            index += x * s;
        }
        Ok(index)
    }

    /// Encodes signed coordinates, reducing each modulo its cycle.
    pub fn encode_signed(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::OutOfRange(format!(
                "tuple {coords:?} does not match rank {}",
                self.rank()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.cycles)
            .zip(&self.strides)
            .map(|((&x, &n), &s)| x.rem_euclid(n as i64) as usize * s)
            .sum())
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.rank()];
        self.decode_into(index, &mut out);
        out
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &n) in out.iter_mut().zip(&self.cycles) {
            *slot = index % n;
            index /= n;
        }
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.cycles.len() == 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for (&n, &s) in self.cycles.iter().zip(&self.strides) {
            let d = a % n + b % n;
            out += if d >= n { d - n } else { d } * s;
            a /= n;
            b /= n;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        if self.cycles.len() == 1 {
            return if a == 0 { 0 } else { self.order - a };
        }
        let mut a = a;
        let mut out = 0;
        for (&n, &s) in self.cycles.iter().zip(&self.strides) {
            let d = a % n;
            out += if d == 0 { 0 } else { n - d } * s;
            a /= n;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// `k * a` for any integer `k`.
    pub fn mul_idx(&self, k: i64, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        for (&n, &s) in self.cycles.iter().zip(&self.strides) {
            let d = (a % n) as i128 * k as i128;
            out += d.rem_euclid(n as i128) as usize * s;
            a /= n;
        }
        out
    }

    /// Per-coordinate weights of character `m`: `gamma_m(x) = exp(2 pi i (sum_j w_j x_j) / exponent)`.
    pub fn character_weights(&self, m: usize) -> Vec<usize> {
        let mut m = m;
        self.cycles
            .iter()
            .zip(&self.phase_scale)
            .map(|(&n, &scale)| {
                let w = (m % n) * scale;
                m /= n;
                w
            })
            .collect()
    }

    /// Phase numerator of `gamma_m(x)` in `0..exponent`.
    #[inline]
    pub fn phase(&self, m: usize, x: usize) -> usize {
        if self.cycles.len() == 1 {
            return ((m as u64 * x as u64) % self.order as u64) as usize;
        }
        let (mut m, mut x) = (m, x);
        let mut acc: u64 = 0;
        for (&n, &scale) in self.cycles.iter().zip(&self.phase_scale) {
            acc += ((m % n) * (x % n) % n * scale) as u64;
            m /= n;
            x /= n;
        }
        (acc % self.exponent as u64) as usize
    }

    /// `||gamma_m(x)||`, the circle norm of the character value, computed exactly
    /// from the phase numerator.
    #[inline]
    pub fn character_norm(&self, m: usize, x: usize) -> f64 {
        let p = self.phase(m, x);
        p.min(self.exponent - p) as f64 / self.exponent as f64
    }

    pub fn character_value(&self, m: usize, x: usize) -> Complex64 {
        let theta = 2.0 * PI * self.phase(m, x) as f64 / self.exponent as f64;
        Complex64::from_polar(1.0, theta)
    }

    pub fn element(self: &Arc<Self>, coords: &[usize]) -> Result<GroupElement> {
        Ok(GroupElement { group: Arc::clone(self), index: self.encode(coords)? })
    }

    pub fn element_at(self: &Arc<Self>, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::OutOfRange(format!("index {index} not below order {}", self.order)));
        }
        Ok(GroupElement { group: Arc::clone(self), index })
    }

    pub fn zero(self: &Arc<Self>) -> GroupElement {
        GroupElement { group: Arc::clone(self), index: 0 }
    }

    pub fn character(self: &Arc<Self>, coords: &[usize]) -> Result<Character> {
        Ok(Character { group: Arc::clone(self), index: self.encode(coords)? })
    }

    pub fn character_at(self: &Arc<Self>, index: usize) -> Result<Character> {
        if index >= self.order {
            return Err(Error::OutOfRange(format!("index {index} not below order {}", self.order)));
        }
        Ok(Character { group: Arc::clone(self), index })
    }

    pub fn trivial_character(self: &Arc<Self>) -> Character {
        Character { group: Arc::clone(self), index: 0 }
    }
}

pub(crate) fn ensure_same(a: &GroupRef, b: &GroupRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.cycles == b.cycles {
        Ok(())
    } else {
        Err(Error::GroupMismatch { left: a.cycles.clone(), right: b.cycles.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    group: GroupRef,
    index: usize,
}

impl GroupElement {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coords(&self) -> Vec<usize> {
        self.group.decode(self.index)
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement { group: Arc::clone(&self.group), index: self.group.neg_idx(self.index) }
    }
}

/// Componentwise sum modulo the cycle lengths.
pub fn add(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    ensure_same(&a.group, &b.group)?;
    Ok(GroupElement { group: Arc::clone(&a.group), index: a.group.add_idx(a.index, b.index) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: GroupRef,
    index: usize,
}

impl Character {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coords(&self) -> Vec<usize> {
        self.group.decode(self.index)
    }

    /// Pointwise product of characters, i.e. addition in the dual group.
    pub fn product(&self, other: &Character) -> Result<Character> {
        ensure_same(&self.group, &other.group)?;
        Ok(Character { group: Arc::clone(&self.group), index: self.group.add_idx(self.index, other.index) })
    }

    pub fn conj(&self) -> Character {
        Character { group: Arc::clone(&self.group), index: self.group.neg_idx(self.index) }
    }
}

pub fn eval_character(gamma: &Character, x: &GroupElement) -> Result<Complex64> {
    ensure_same(&gamma.group, &x.group)?;
    Ok(gamma.group.character_value(gamma.index, x.index))
}

/// `(2 pi)^-1 |Arg z|` with `Arg` taking values in `(-pi, pi]`.
pub fn arg_norm(z: Complex64) -> Result<f64> {
    let modulus = z.norm();
    if (modulus - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NonUnit { modulus });
    }
    Ok(z.arg().abs() / (2.0 * PI))
}
