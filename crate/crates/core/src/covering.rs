//! Greedy covering constructions: Ruzsa covers of `2B - 2B` and Chang covers
//! by `B'`-dissociated sets. Works equally in `G` and in the dual.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{ensure_same, GroupElement, GroupRef};
use crate::set::{prog_indices, GroupSet};

/// Maximum size of a dissociated set before enumeration is refused.
pub const DISSOCIATION_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    Ruzsa,
    Chang,
}

#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub kind: CoverKind,
    pub group: GroupRef,
    /// Covering set, as indices, in the order the greedy scan chose them.
    pub t: Vec<usize>,
    pub containment_verified: bool,
    /// `None` when the size bound does not apply (Chang precondition failed).
    pub size_bound_verified: Option<bool>,
    /// Chang: `mu(kB + B') < 2^k mu(B')`. Ruzsa: always `None`.
    pub precondition_held: Option<bool>,
    pub k: Option<usize>,
    pub b_measure: usize,
    pub b_prime_measure: Option<usize>,
    /// Chang: `mu(kB + B')`. Ruzsa: `mu(2B)`.
    pub growth_measure: usize,
    pub empirical_constant: Option<f64>,
    /// Greedy stopped at the dissociation guard.
    pub partial: bool,
}

impl CoverCertificate {
    pub fn is_valid(&self) -> bool {
        self.containment_verified && self.size_bound_verified == Some(true) && !self.partial
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.t.iter().map(|&i| self.group.element_at(i).expect("index below order")).collect()
    }

    pub fn size(&self) -> usize {
        self.t.len()
    }
}

impl Serialize for CoverCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let t: Vec<Vec<usize>> = self.t.iter().map(|&i| self.group.decode(i)).collect();
        let mut st = serializer.serialize_struct("CoverCertificate", 12)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("group", self.group.cycles())?;
        st.serialize_field("t", &t)?;
        st.serialize_field("containment_verified", &self.containment_verified)?;
        st.serialize_field("size_bound_verified", &self.size_bound_verified)?;
        st.serialize_field("precondition_held", &self.precondition_held)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("b_measure", &self.b_measure)?;
        st.serialize_field("b_prime_measure", &self.b_prime_measure)?;
        st.serialize_field("growth_measure", &self.growth_measure)?;
        st.serialize_field("empirical_constant", &self.empirical_constant)?;
        st.serialize_field("partial", &self.partial)?;
        st.end()
    }
}

/// Greedy maximal `B`-separated subset `T` of `2B - 2B`, so that `2B - 2B ⊆ T + B - B`.
pub fn ruzsa_cover(b: &GroupSet) -> Result<CoverCertificate> {
    if b.is_empty() {
        return Err(Error::EmptySet("Ruzsa cover base"));
    }
    let g = b.group();
    let b_minus_b = b.difference_set(b)?;
    let two_b = b.sumset(b)?;
    let target = two_b.difference_set(&two_b)?;
    let mut covered = GroupSet::empty(g);
    let mut t = Vec::new();
    for x in target.iter() {
        if !covered.contains(x) {
            t.push(x);
            covered = covered.union(&b_minus_b.translate(x))?;
        }
    }
    let t_set = GroupSet::from_indices(g, t.iter().copied())?;
    let containment_verified = target.is_subset(&t_set.sumset(&b_minus_b)?)?;
    // the translates t + B are disjoint and lie in 3B - 2B
    let packing_room = target.sumset(b)?.len();
    let size_bound_verified = t.len() * b.len() <= packing_room;
    let doubling = (two_b.len() as f64 / b.len() as f64).log2();
    let empirical_constant = (doubling > 0.0 && t.len() > 1).then(|| (t.len() as f64).log2() / doubling);
    Ok(CoverCertificate {
        kind: CoverKind::Ruzsa,
        group: g.clone(),
        t,
        containment_verified,
        size_bound_verified: Some(size_bound_verified),
        precondition_held: None,
        k: None,
        b_measure: b.len(),
        b_prime_measure: None,
        growth_measure: two_b.len(),
        empirical_constant,
        partial: false,
    })
}

pub fn is_dissociated(t: &[GroupElement], b_prime: &GroupSet) -> Result<bool> {
    for x in t {
        ensure_same(x.group(), b_prime.group())?;
    }
    let idx: Vec<usize> = t.iter().map(GroupElement::index).collect();
    is_dissociated_indices(&idx, b_prime)
}

/// The translates `sigma.T + B'` over `sigma in {0,1}^T` are pairwise disjoint.
pub fn is_dissociated_indices(t: &[usize], b_prime: &GroupSet) -> Result<bool> {
    if t.len() > DISSOCIATION_LIMIT {
        return Err(Error::Guard { what: "dissociated set size", limit: DISSOCIATION_LIMIT, got: t.len() });
    }
    if t.iter().any(|&x| x >= b_prime.group().order()) {
        return Err(Error::OutOfRange("dissociation candidate outside the group".into()));
    }
    if b_prime.is_empty() {
        return Ok(true);
    }
    let mut union = b_prime.clone();
    for &x in t {
        if !extend_dissociated(&mut union, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `union` holds `sigma.T + B'` over all `sigma`; extends it by `x` if that keeps disjointness.
fn extend_dissociated(union: &mut GroupSet, x: usize) -> Result<bool> {
    let shifted = union.translate(x);
    if !union.is_disjoint(&shifted)? {
        return Ok(false);
    }
    *union = union.union(&shifted)?;
    Ok(true)
}

/// Greedy maximal `B'`-dissociated `T ⊆ B`, verified against `B ⊆ Prog(T,1) + B' - B'`.
pub fn chang_cover(b: &GroupSet, b_prime: &GroupSet, k: usize) -> Result<CoverCertificate> {
    ensure_same(b.group(), b_prime.group())?;
    if k == 0 {
        return Err(Error::InvalidParameter("Chang cover needs k >= 1".into()));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("Chang cover base"));
    }
    if b_prime.is_empty() {
        return Err(Error::EmptySet("Chang cover auxiliary set"));
    }
    let g = b.group();
    let growth_measure = b.iterate(k)?.sumset(b_prime)?.len();
    let precondition_held = k >= 64 || (growth_measure as f64) < 2f64.powi(k as i32) * b_prime.len() as f64;

    let mut union = b_prime.clone();
    let mut t = Vec::new();
    let mut partial = false;
    for x in b.iter() {
        if t.len() == DISSOCIATION_LIMIT {
            let shifted = union.translate(x);
            if union.is_disjoint(&shifted)? {
                partial = true;
                break;
            }
            continue;
        }
        if extend_dissociated(&mut union, x)? {
            t.push(x);
        }
    }
    let cover = prog_indices(g, &t, 1)?.sumset(&b_prime.difference_set(b_prime)?)?;
    let containment_verified = b.is_subset(&cover)?;
    Ok(CoverCertificate {
        kind: CoverKind::Chang,
        group: g.clone(),
        size_bound_verified: precondition_held.then_some(t.len() <= k),
        empirical_constant: Some(t.len() as f64 / k as f64),
        t,
        containment_verified,
        precondition_held: Some(precondition_held),
        k: Some(k),
        b_measure: b.len(),
        b_prime_measure: Some(b_prime.len()),
        growth_measure,
        partial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinAbGroup;
    use proptest::prelude::*;

    fn set(g: &GroupRef, xs: &[i64]) -> GroupSet {
        GroupSet::from_indices(g, xs.iter().map(|&x| g.encode_signed(&[x]).unwrap())).unwrap()
    }

    fn range(g: &GroupRef, r: i64) -> GroupSet {
        set(g, &(-r..=r).collect::<Vec<_>>())
    }

    /// Dissociativity by enumerating all `3^|T| - 1` nonzero signed sums against `B' - B'`.
    fn dissociated_oracle(g: &GroupRef, t: &[usize], b_prime: &GroupSet) -> bool {
        let diff = b_prime.difference_set(b_prime).unwrap();
        let n = t.len() as u32;
        let zero_code = (3usize.pow(n) - 1) / 2;
        (0..3usize.pow(n)).filter(|&c| c != zero_code).all(|mut code| {
            let mut s = 0;
            for &x in t {
                s = g.add_idx(s, g.mul_idx((code % 3) as i64 - 1, x));
                code /= 3;
            }
            !diff.contains(s)
        }) || b_prime.is_empty()
    }

    #[test]
    fn ruzsa_examples() {
        let z32 = FinAbGroup::cyclic(32).unwrap();
        let b = range(&z32, 2);
        let cert = ruzsa_cover(&b).unwrap();
        assert!(cert.is_valid());
        assert_eq!(b.sumset(&b).unwrap().difference_set(&b.sumset(&b).unwrap()).unwrap(), range(&z32, 8));
        // exhaustive containment and separation oracle
        let bb = range(&z32, 4);
        for x in -8i64..=8 {
            let xi = z32.encode_signed(&[x]).unwrap();
            assert!(cert.t.iter().any(|&t| bb.contains(z32.sub_idx(xi, t))));
        }
        for (i, &s) in cert.t.iter().enumerate() {
            for &u in &cert.t[..i] {
                assert!(b.translate(s).is_disjoint(&b.translate(u)).unwrap());
            }
        }

        let z12 = FinAbGroup::cyclic(12).unwrap();
        let h = set(&z12, &[0, 3, 6, 9]);
        let cert = ruzsa_cover(&h).unwrap();
        assert_eq!(cert.t, vec![0]);
        assert!(cert.is_valid());

        let cert = ruzsa_cover(&GroupSet::zero(&z12)).unwrap();
        assert_eq!(cert.t, vec![0]);
        assert!(ruzsa_cover(&GroupSet::empty(&z12)).is_err());
    }

    #[test]
    fn dissociation_examples() {
        let z16 = FinAbGroup::cyclic(16).unwrap();
        let zero = GroupSet::zero(&z16);
        let e = |i| z16.element_at(i).unwrap();
        assert!(is_dissociated(&[], &zero).unwrap());
        assert!(is_dissociated(&[e(1), e(3)], &zero).unwrap());
        assert!(!is_dissociated(&[e(1), e(2), e(3)], &zero).unwrap());
        assert!(!is_dissociated(&[e(4), e(4)], &zero).unwrap());
        assert!(!is_dissociated(&[e(1), e(3)], &range(&z16, 1)).unwrap());
        let too_many: Vec<usize> = (0..21).collect();
        let big = FinAbGroup::cyclic(1 << 22).unwrap();
        assert!(matches!(
            is_dissociated_indices(&too_many, &GroupSet::zero(&big)),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn chang_examples() {
        let z64 = FinAbGroup::cyclic(64).unwrap();
        let b = range(&z64, 4);
        let b_prime = range(&z64, 8);
        let cert = chang_cover(&b, &b_prime, 3).unwrap();
        assert_eq!(cert.precondition_held, Some(true));
        assert_eq!(cert.growth_measure, 41);
        assert!(cert.is_valid());
        assert!(cert.t.len() <= 3);

        // B ⊆ B' - B' needs nothing
        let cert = chang_cover(&range(&z64, 3), &range(&z64, 2), 1).unwrap();
        assert!(cert.t.is_empty() && cert.containment_verified);

        let cert = chang_cover(&GroupSet::zero(&z64), &b_prime, 1).unwrap();
        assert!(cert.t.is_empty() && cert.is_valid());

        assert!(chang_cover(&b, &b_prime, 0).is_err());
    }

    #[test]
    fn certificate_json_uses_tuples() {
        let g = FinAbGroup::new(&[4, 4]).unwrap();
        let cert = chang_cover(&GroupSet::full(&g), &GroupSet::zero(&g), 5).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["kind"], "chang");
        assert_eq!(json["t"][0], serde_json::json!([1, 0]));
        assert_eq!(json["containment_verified"], true);
    }

    #[test]
    fn chang_spec_sized_instance() {
        // 3B + B' = {-20..20} for B = {-4..4}, B' = {-8..8}
        let z64 = FinAbGroup::cyclic(64).unwrap();
        let lhs = range(&z64, 4).iterate(3).unwrap().sumset(&range(&z64, 8)).unwrap();
        assert_eq!(lhs, range(&z64, 20));
        assert_eq!(lhs.len(), 41);
    }

    #[test]
    fn chang_precondition_failure_is_flagged() {
        let z64 = FinAbGroup::cyclic(64).unwrap();
        let cert = chang_cover(&range(&z64, 20), &GroupSet::zero(&z64), 1).unwrap();
        assert_eq!(cert.precondition_held, Some(false));
        assert_eq!(cert.size_bound_verified, None);
        assert!(cert.containment_verified);
        assert!(!cert.is_valid());
    }

    #[test]
    fn chang_in_a_product_group() {
        let g = FinAbGroup::new(&[2, 2, 2, 2, 2, 2]).unwrap();
        let b = GroupSet::full(&g);
        let cert = chang_cover(&b, &GroupSet::zero(&g), 7).unwrap();
        assert_eq!(cert.t.len(), 6);
        assert!(cert.is_valid());
        assert!(is_dissociated_indices(&cert.t, &GroupSet::zero(&g)).unwrap());
    }

    proptest! {
        #[test]
        fn dissociation_matches_signed_sums(t in prop::collection::vec(0usize..40, 0..6), bp in prop::collection::vec(0usize..40, 1..4)) {
            let g = FinAbGroup::cyclic(40).unwrap();
            let b_prime = GroupSet::from_indices(&g, bp).unwrap();
            prop_assert_eq!(is_dissociated_indices(&t, &b_prime).unwrap(), dissociated_oracle(&g, &t, &b_prime));
        }

        #[test]
        fn dissociation_is_antitone(t in prop::collection::vec(0usize..48, 0..5), bp in prop::collection::vec(0usize..48, 1..4), extra in 0usize..48) {
            let g = FinAbGroup::new(&[4, 12]).unwrap();
            let small = GroupSet::from_indices(&g, bp).unwrap();
            let mut large = small.clone();
            large.insert(extra);
            if is_dissociated_indices(&t, &large).unwrap() {
                prop_assert!(is_dissociated_indices(&t, &small).unwrap());
            }
        }

        #[test]
        fn covers_are_theorems(b in prop::collection::vec(0usize..60, 1..8), bp in prop::collection::vec(0usize..60, 1..6), k in 1usize..6) {
            let g = FinAbGroup::new(&[6, 10]).unwrap();
            let b = GroupSet::from_indices(&g, b).unwrap();
            let b_prime = GroupSet::from_indices(&g, bp).unwrap();
            let chang = chang_cover(&b, &b_prime, k).unwrap();
            prop_assert!(chang.containment_verified);
            prop_assert!(is_dissociated_indices(&chang.t, &b_prime).unwrap());
            if chang.precondition_held == Some(true) {
                prop_assert!(chang.is_valid());
            }
            prop_assert!(ruzsa_cover(&b).unwrap().is_valid());
            let again = chang_cover(&b, &b_prime, k).unwrap();
            prop_assert_eq!(again.t, chang.t);
        }
    }
}
