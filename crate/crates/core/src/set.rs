//! Dense subsets of a finite abelian group and their Minkowski arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier;
use crate::group::{ensure_same, GroupElement, GroupRef};

/// Enumeration guard for [`prog`].
pub const PROG_GENERATOR_LIMIT: usize = 24;

/// A subset of a group (or of its dual, which shares the same indexing) stored
/// as a bit vector over the mixed-radix enumeration.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupSet {
    group: GroupRef,
    words: Vec<u64>,
    len: usize,
}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupSet")
            .field("group", &self.group)
            .field("elements", &self.indices())
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumsetStrategy {
    /// Pick by the size crossover `|A||B| > 64 |G| log2 |G|`.
    Auto,
    Direct,
    Spectral,
}

impl GroupSet {
    pub fn empty(group: &GroupRef) -> Self {
        GroupSet { group: Arc::clone(group), words: vec![0; group.order().div_ceil(64)], len: 0 }
    }

    pub fn full(group: &GroupRef) -> Self {
        let mut s = Self::empty(group);
        for i in 0..group.order() {
            s.insert(i);
        }
        s
    }

    pub fn singleton(group: &GroupRef, index: usize) -> Result<Self> {
        Self::from_indices(group, [index])
    }

    pub fn zero(group: &GroupRef) -> Self {
        let mut s = Self::empty(group);
        s.insert(0);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &GroupRef, indices: I) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in indices {
            if i >= group.order() {
                return Err(Error::OutOfRange(format!("index {i} not below order {}", group.order())));
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_elements(group: &GroupRef, tuples: &[Vec<usize>]) -> Result<Self> {
        let mut s = Self::empty(group);
        for t in tuples {
            s.insert(group.encode(t)?);
        }
        Ok(s)
    }

    pub fn from_group_elements(group: &GroupRef, elements: &[GroupElement]) -> Result<Self> {
        let mut s = Self::empty(group);
        for e in elements {
            ensure_same(group, e.group())?;
            s.insert(e.index());
        }
        Ok(s)
    }

    /// `{-r, ..., r}` in a cyclic group.
    pub fn interval(group: &GroupRef, r: usize) -> Result<Self> {
        if group.rank() != 1 {
            return Err(Error::InvalidParameter(format!(
                "interval shorthand needs a cyclic group, got {group:?}"
            )));
        }
        let n = group.order() as i64;
        let r = r as i64;
        Self::from_indices(group, (-r..=r).map(|x| x.rem_euclid(n) as usize))
    }

    /// `{-r, ..., r}^k`, the word-metric ball for the standard generators.
    pub fn cube(group: &GroupRef, r: usize) -> Self {
        let gens: Vec<usize> = group.strides().to_vec();
        multiples_sum(group, &gens, r as i64)
    }

    pub(crate) fn insert(&mut self, i: usize) {
        let (w, mask) = (i / 64, 1u64 << (i % 64));
        if self.words[w] & mask == 0 {
            self.words[w] |= mask;
            self.len += 1;
        }
    }

    pub(crate) fn from_words(group: &GroupRef, words: Vec<u64>) -> Self {
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        GroupSet { group: Arc::clone(group), words, len }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.group.order() && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Counting measure.
    pub fn measure(&self) -> f64 {
        self.len as f64
    }

    /// Normalized counting measure, used when the set lives in the dual.
    pub fn dual_measure(&self) -> f64 {
        self.len as f64 / self.group.order() as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn elements(&self) -> Vec<Vec<usize>> {
        self.iter().map(|i| self.group.decode(i)).collect()
    }

    pub fn indicator(&self) -> Vec<f64> {
        (0..self.group.order()).map(|i| if self.contains(i) { 1.0 } else { 0.0 }).collect()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|i| self.contains(self.group.neg_idx(i)))
    }

    pub fn is_full(&self) -> bool {
        self.len == self.group.order()
    }

    fn check(&self, other: &GroupSet) -> Result<()> {
        ensure_same(&self.group, &other.group)
    }

    pub fn is_subset(&self, other: &GroupSet) -> Result<bool> {
        self.check(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &GroupSet) -> Result<bool> {
        self.check(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0))
    }

    fn zip_words(&self, other: &GroupSet, f: impl Fn(u64, u64) -> u64) -> Result<GroupSet> {
        self.check(other)?;
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        Ok(GroupSet::from_words(&self.group, words))
    }

    pub fn union(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn without(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    /// `t + A`.
    pub fn translate(&self, t: usize) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for a in self.iter() {
            out.insert(self.group.add_idx(a, t));
        }
        out
    }

    pub fn negate(&self) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for a in self.iter() {
            out.insert(self.group.neg_idx(a));
        }
        out
    }

    /// Minkowski sum `A + B`.
    pub fn sumset(&self, other: &GroupSet) -> Result<GroupSet> {
        sumset_with(self, other, SumsetStrategy::Auto)
    }

    /// `A - B`.
    pub fn difference_set(&self, other: &GroupSet) -> Result<GroupSet> {
        self.sumset(&other.negate())
    }

    /// The n-fold sumset `nA`.
    pub fn iterate(&self, n: usize) -> Result<GroupSet> {
        iterate(n, self)
    }
}

pub fn sumset(a: &GroupSet, b: &GroupSet) -> Result<GroupSet> {
    sumset_with(a, b, SumsetStrategy::Auto)
}

pub fn negate(a: &GroupSet) -> GroupSet {
    a.negate()
}

fn spectral_pays_off(a: &GroupSet, b: &GroupSet) -> bool {
    let order = a.group.order() as f64;
    (a.len() as f64) * (b.len() as f64) > 64.0 * order * order.log2().max(1.0)
}

pub fn sumset_with(a: &GroupSet, b: &GroupSet, strategy: SumsetStrategy) -> Result<GroupSet> {
    a.check(b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(GroupSet::empty(&a.group));
    }
    let spectral = match strategy {
        SumsetStrategy::Auto => spectral_pays_off(a, b),
        SumsetStrategy::Direct => false,
        SumsetStrategy::Spectral => true,
    };
    if spectral {
        let counts = fourier::convolve_indicators(a, b)?;
        return GroupSet::from_indices(
            &a.group,
            counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i),
        );
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = GroupSet::empty(&a.group);
    let large_idx = large.indices();
    for x in small.iter() {
        for &y in &large_idx {
            out.insert(a.group.add_idx(x, y));
        }
        if out.is_full() {
            break;
        }
    }
    Ok(out)
}

/// `nA` by repeated doubling; `iterate(1, A) = A`.
pub fn iterate(n: usize, a: &GroupSet) -> Result<GroupSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("iterate needs n >= 1".into()));
    }
    let mut result: Option<GroupSet> = None;
    let mut power = a.clone();
    let mut n = n;
    loop {
        if n & 1 == 1 {
            result = Some(match result {
                None => power.clone(),
                Some(r) => r.sumset(&power)?,
            });
        }
        n >>= 1;
        if n == 0 {
            break;
        }
        power = power.sumset(&power)?;
    }
    Ok(result.expect("n >= 1"))
}

/// Sum over `gens` of `{-l g, ..., l g}`.
fn multiples_sum(group: &GroupRef, gens: &[usize], l: i64) -> GroupSet {
    let mut acc = GroupSet::zero(group);
    for &t in gens {
        let mut line = GroupSet::empty(group);
        for s in -l..=l {
            line.insert(group.mul_idx(s, t));
        }
        acc = sumset(&acc, &line).expect("same group");
    }
    acc
}

/// `Prog(T, L) = { sum_t s_t t : |s_t| <= L }`.
pub fn prog(t: &[GroupElement], l: usize) -> Result<GroupSet> {
    let group = match t.first() {
        Some(e) => Arc::clone(e.group()),
        None => {
            return Err(Error::InvalidParameter(
                "prog over an empty generator list needs an explicit group; use prog_indices".into(),
            ))
        }
    };
    let idx: Vec<usize> = t
        .iter()
        .map(|e| ensure_same(&group, e.group()).map(|_| e.index()))
        .collect::<Result<_>>()?;
    prog_indices(&group, &idx, l)
}

pub fn prog_indices(group: &GroupRef, t: &[usize], l: usize) -> Result<GroupSet> {
    if t.len() > PROG_GENERATOR_LIMIT {
        return Err(Error::Guard { what: "prog generator count", limit: PROG_GENERATOR_LIMIT, got: t.len() });
    }
    if let Some(&bad) = t.iter().find(|&&x| x >= group.order()) {
        return Err(Error::OutOfRange(format!("generator index {bad}")));
    }
    Ok(multiples_sum(group, t, l as i64))
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub measure: usize,
    pub bound: f64,
    pub satisfied: bool,
    pub in_window: bool,
}

/// `mu(nA)` against `n^d mu(A)` for `n = 1..=n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    pub base_measure: usize,
    pub group_order: usize,
    pub d: f64,
    /// First `n` of the hypothesis window `n >= d ln d`.
    pub window_start: usize,
    pub rows: Vec<GrowthRow>,
}

impl GrowthProfile {
    /// Every row inside the hypothesis window satisfies the bound.
    pub fn hypothesis_holds(&self) -> bool {
        self.rows.iter().filter(|r| r.in_window).all(|r| r.satisfied)
    }

    pub fn first_violation(&self) -> Option<&GrowthRow> {
        self.rows.iter().find(|r| r.in_window && !r.satisfied)
    }
}

/// `max(2, ceil(d ln d))`, natural log.
pub fn hypothesis_window_start(d: f64) -> usize {
    let raw = if d > 1.0 { (d * d.ln()).ceil() } else { 0.0 };
    (raw as usize).max(2)
}

/// Measures of `A, 2A, ..., n_max A`, stopping early once the sequence stabilizes.
pub fn iterated_measures(a: &GroupSet, n_max: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(n_max);
    let mut current = a.clone();
    out.push(current.len());
    while out.len() < n_max {
        let next = current.sumset(a)?;
        let stable = next.len() == current.len();
        current = next;
        out.push(current.len());
        if stable {
            let last = current.len();
            out.resize(n_max, last);
        }
    }
    Ok(out)
}

pub fn growth_profile(a: &GroupSet, d: f64, n_max: usize) -> Result<GrowthProfile> {
    if a.is_empty() {
        return Err(Error::EmptySet("growth profile base set"));
    }
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 2, got {n_max}")));
    }
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("dimension must be positive, got {d}")));
    }
    let window_start = hypothesis_window_start(d);
    let base = a.len();
    let rows = iterated_measures(a, n_max)?
        .into_iter()
        .enumerate()
        .map(|(i, measure)| {
            let n = i + 1;
            let bound = (n as f64).powf(d) * base as f64;
            GrowthRow { n, measure, bound, satisfied: measure as f64 <= bound, in_window: n >= window_start }
        })
        .collect();
    Ok(GrowthProfile { base_measure: base, group_order: a.group.order(), d, window_start, rows })
}
