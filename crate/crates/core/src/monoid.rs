//! The dual monoid: simples are the divisors of `c`, and every element has a
//! left-greedy normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;
use crate::divisors::{divisor_from_partition, partition_join, partition_meet, AnnularPartition};
use crate::error::{Error, Result};
use crate::notation::parse_factor_list;
use crate::perm::PeriodicPermutation;

/// A divisor of `c`. The Coxeter system is not stored; operations take it
/// explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simple(PeriodicPermutation);

impl Simple {
    pub fn new(sys: &CoxeterSystem, perm: PeriodicPermutation) -> Result<Self> {
        if perm.n() != sys.n() {
            return Err(Error::PeriodMismatch(perm.n(), sys.n()));
        }
        if !sys.divides_c(&perm)? {
            return Err(Error::NotADivisor(perm.to_string()));
        }
        Ok(Self(perm))
    }

    pub fn identity(n: usize) -> Self {
        Self(PeriodicPermutation::identity(n))
    }

    pub fn perm(&self) -> &PeriodicPermutation {
        &self.0
    }

    pub fn into_perm(self) -> PeriodicPermutation {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn length(&self) -> usize {
        self.0.reflection_length().expect("simples lie in W")
    }

    pub fn partition(&self) -> AnnularPartition {
        AnnularPartition::of_permutation(&self.0).expect("simples have at most one infinite pair")
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Simple({})", self.0)
    }
}

/// A monoid element in left-greedy normal form. No factor is the identity,
/// and each factor is the largest simple dividing the product of it and the
/// factors after it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoidElement {
    factors: Vec<Simple>,
}

impl MonoidElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Caller guarantees `factors` is already in left-greedy normal form.
    pub(crate) fn from_normal_form(factors: Vec<Simple>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[Simple] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Simple> {
        self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of normal form factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reflection length, additive over factors.
    pub fn length(&self) -> usize {
        self.factors.iter().map(Simple::length).sum()
    }

    /// Image in `W`.
    pub fn perm(&self, n: usize) -> Result<PeriodicPermutation> {
        self.factors
            .iter()
            .try_fold(PeriodicPermutation::identity(n), |acc, f| acc.compose(f.perm()))
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl CoxeterSystem {
    pub fn simple(&self, perm: PeriodicPermutation) -> Result<Simple> {
        Simple::new(self, perm)
    }

    pub fn parse_simple(&self, s: &str) -> Result<Simple> {
        Simple::new(self, PeriodicPermutation::parse(self.n(), s)?)
    }

    /// The Garside element `c`.
    pub fn delta(&self) -> Simple {
        Simple(self.c().clone())
    }

    /// Simples joined by `·` or `.`, normalized.
    pub fn parse_element(&self, s: &str) -> Result<MonoidElement> {
        let factors = parse_factor_list(self.n(), s)?
            .into_iter()
            .map(|p| Simple::new(self, p))
            .collect::<Result<Vec<_>>>()?;
        self.normalize(factors)
    }

    /// `a⁻¹c`, so that `a · right_complement(a) = c`.
    pub fn right_complement(&self, a: &Simple) -> Simple {
        Simple(a.0.inverse().compose(self.c()).expect("periods agree"))
    }

    /// `ca⁻¹`, so that `left_complement(a) · a = c`.
    pub fn left_complement(&self, a: &Simple) -> Simple {
        Simple(self.c().compose(&a.0.inverse()).expect("periods agree"))
    }

    /// `c a c⁻¹`.
    pub fn tau(&self, a: &Simple) -> Simple {
        self.tau_power(a, 1)
    }

    pub fn tau_inverse(&self, a: &Simple) -> Simple {
        self.tau_power(a, -1)
    }

    /// `c^k a c^-k`.
    pub fn tau_power(&self, a: &Simple, k: i64) -> Simple {
        Simple(
            a.0.conjugate_by(&self.c().pow(k).expect("c^k overflowed"))
                .expect("periods agree"),
        )
    }

    pub fn tau_element(&self, u: &MonoidElement, k: i64) -> MonoidElement {
        let ck = self.c().pow(k).expect("c^k overflowed");
        let factors = u
            .factors
            .iter()
            .map(|a| Simple(a.0.conjugate_by(&ck).expect("periods agree")))
            .collect();
        MonoidElement { factors }
    }

    /// Greatest common divisor of two simples, by intersecting their block
    /// partitions. Fails only when the divisors of `c` do not form a lattice.
    pub fn meet(&self, a: &Simple, b: &Simple) -> Result<Simple> {
        if a.0.divides(&b.0)? {
            return Ok(a.clone());
        }
        if b.0.divides(&a.0)? {
            return Ok(b.clone());
        }
        let part = partition_meet(self, &a.partition(), &b.partition())?;
        Ok(Simple(divisor_from_partition(self, &part)?))
    }

    /// Least common multiple of two simples, by merging blocks until the
    /// partition is non-crossing.
    pub fn join(&self, a: &Simple, b: &Simple) -> Result<Simple> {
        let part = partition_join(self, &a.partition(), &b.partition())?;
        Ok(Simple(divisor_from_partition(self, &part)?))
    }

    /// `a ≼ b` among simples.
    pub fn simple_divides(&self, a: &Simple, b: &Simple) -> bool {
        a.0.divides(&b.0).expect("simples lie in W")
    }

    /// Left-greedy normal form of the product of `factors`.
    pub fn normalize(&self, factors: Vec<Simple>) -> Result<MonoidElement> {
        let mut fs: Vec<Simple> = factors.into_iter().filter(|s| !s.is_identity()).collect();
        let limit = fs.len() * fs.len() + 2;
        for _ in 0..limit {
            let mut changed = false;
            for i in (0..fs.len().saturating_sub(1)).rev() {
                let t = self.meet(&self.right_complement(&fs[i]), &fs[i + 1])?;
                if t.is_identity() {
                    continue;
                }
                fs[i] = Simple(fs[i].0.compose(&t.0)?);
                fs[i + 1] = Simple(t.0.inverse().compose(&fs[i + 1].0)?);
                changed = true;
            }
            fs.retain(|s| !s.is_identity());
            if !changed {
                return Ok(MonoidElement { factors: fs });
            }
        }
        unreachable!("left-greedy sliding did not stabilize")
    }

    /// Right-greedy normal form: each factor is the largest simple right
    /// dividing the product of the factors up to it.
    pub fn right_normalize(&self, factors: Vec<Simple>) -> Result<Vec<Simple>> {
        let mut fs: Vec<Simple> = factors.into_iter().filter(|s| !s.is_identity()).collect();
        let limit = fs.len() * fs.len() + 2;
        for _ in 0..limit {
            let mut changed = false;
            for i in 0..fs.len().saturating_sub(1) {
                let t = self.meet(&fs[i], &self.left_complement(&fs[i + 1]))?;
                if t.is_identity() {
                    continue;
                }
                fs[i] = Simple(fs[i].0.compose(&t.0.inverse())?);
                fs[i + 1] = Simple(t.0.compose(&fs[i + 1].0)?);
                changed = true;
            }
            fs.retain(|s| !s.is_identity());
            if !changed {
                return Ok(fs);
            }
        }
        unreachable!("right-greedy sliding did not stabilize")
    }

    pub fn multiply(&self, u: &MonoidElement, v: &MonoidElement) -> Result<MonoidElement> {
        let mut fs = u.factors.clone();
        fs.extend(v.factors.iter().cloned());
        self.normalize(fs)
    }

    pub fn element_of(&self, a: &Simple) -> MonoidElement {
        if a.is_identity() {
            MonoidElement::identity()
        } else {
            MonoidElement {
                factors: vec![a.clone()],
            }
        }
    }

    /// Least `k` with `u ≼ c^k`: the number of normal form factors.
    pub fn divides_power_of_c(&self, u: &MonoidElement) -> usize {
        u.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys3() -> CoxeterSystem {
        CoxeterSystem::standard(3).unwrap()
    }

    fn s(sys: &CoxeterSystem, text: &str) -> Simple {
        sys.parse_simple(text).unwrap()
    }

    #[test]
    fn complements() {
        let sys = sys3();
        let id = Simple::identity(3);
        assert_eq!(sys.right_complement(&id), sys.delta());
        assert!(sys.right_complement(&sys.delta()).is_identity());
        let r = sys.right_complement(&s(&sys, "(2,3)"));
        assert_eq!(r.perm().window(), &[-2, 2, 6]);
        assert_eq!(r.to_string(), "(1)[-1](3)[1]");
        assert_eq!(r.length(), 2);
        let l = sys.left_complement(&s(&sys, "(2,3)"));
        assert_eq!(l.perm().compose(&PeriodicPermutation::parse(3, "(2,3)").unwrap()).unwrap(), *sys.c());
    }

    #[test]
    fn tau_examples() {
        let sys = sys3();
        assert_eq!(sys.tau(&sys.delta()), sys.delta());
        assert_eq!(sys.tau(&s(&sys, "(2,3)")), s(&sys, "(3,5)"));
        assert_eq!(sys.tau(&s(&sys, "(3,5)")), s(&sys, "(2,3)"));
        let r = s(&sys, "(1,2)");
        assert_eq!(sys.tau(&r), s(&sys, "(1,6)"));
        assert_eq!(sys.tau_power(&r, 2), s(&sys, "(1,11)"));
        assert_eq!(sys.tau_inverse(&sys.tau(&r)), r);
    }

    #[test]
    fn meet_and_join_examples() {
        let sys = sys3();
        let a = s(&sys, "(2,3)");
        let b = s(&sys, "(3,5)");
        assert!(sys.meet(&a, &Simple::identity(3)).unwrap().is_identity());
        assert!(sys.meet(&a, &b).unwrap().is_identity());
        assert_eq!(sys.meet(&sys.delta(), &a).unwrap(), a);
        assert_eq!(sys.join(&a, &b).unwrap(), sys.delta());
        let sys5 = CoxeterSystem::standard(5).unwrap();
        assert_eq!(
            sys5.join(&s(&sys5, "(2,3)"), &s(&sys5, "(4,5)")).unwrap(),
            s(&sys5, "(2,3)(4,5)")
        );
        let two = CoxeterSystem::from_sides(4, &[1, 2]).unwrap();
        assert!(matches!(
            two.join(&s(&two, "(1,2)"), &s(&two, "(2,5)")),
            Err(Error::NoLcm { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        let sys = sys3();
        let a = sys.element_of(&s(&sys, "(2,3)"));
        assert_eq!(sys.multiply(&a, &MonoidElement::identity()).unwrap(), a);
        let aa = sys.multiply(&a, &a).unwrap();
        assert_eq!(aa.to_string(), "(2,3)·(2,3)");
        assert_eq!(sys.divides_power_of_c(&aa), 2);
        let comp = sys.element_of(&s(&sys, "(1)[-1](3)[1]"));
        let prod = sys.multiply(&a, &comp).unwrap();
        assert_eq!(prod.factors(), &[sys.delta()]);
        assert_eq!(sys.divides_power_of_c(&MonoidElement::identity()), 0);
        assert_eq!(sys.divides_power_of_c(&a), 1);
    }

    #[test]
    fn parse_elements() {
        let sys = sys3();
        let u = sys.parse_element("(2,3)·(1)[-1](3)[1]").unwrap();
        assert_eq!(u.to_string(), "(1)[-1](2,3)[1]");
        assert_eq!(u.factors(), &[sys.delta()]);
        assert!(sys.parse_element("").unwrap().is_identity());
        assert!(matches!(
            sys.parse_element("(2,6)"),
            Err(Error::NotADivisor(_))
        ));
    }
}
