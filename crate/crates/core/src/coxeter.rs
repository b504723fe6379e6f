//! Coxeter elements of `W` and their atoms.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{residue, Cycle, CycleExpr, PeriodicPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Xi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomKind {
    Mixed,
    BothX,
    BothXi,
    NotAtom,
}

impl AtomKind {
    pub fn is_atom(self) -> bool {
        self != AtomKind::NotAtom
    }
}

impl fmt::Display for AtomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomKind::Mixed => "mixed",
            AtomKind::BothX => "both-X",
            AtomKind::BothXi => "both-Xi",
            AtomKind::NotAtom => "not-atom",
        })
    }
}

/// A reflection `(x, y)` with `x < y`, tagged with its classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub x: i64,
    pub y: i64,
    pub kind: AtomKind,
}

impl Atom {
    pub fn perm(&self, n: usize) -> PeriodicPermutation {
        PeriodicPermutation::reflection(n, self.x, self.y).expect("atom endpoints are distinct mod n")
    }
}

/// Which of the three shapes a length `n - 1` divisor of `c` has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Codim1Form {
    /// One finite cycle through every residue.
    SingleCycle,
    /// A finite cycle in `X`; the infinite pair keeps all of `Ξ`.
    SplitX,
    /// A finite cycle in `Ξ`; the infinite pair keeps all of `X`.
    SplitXi,
}

/// A Coxeter element `c` together with its residue split `X ⊔ Ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterSystem {
    n: usize,
    c: PeriodicPermutation,
    x: Vec<i64>,
    xi: Vec<i64>,
    side: Vec<Side>,
    order: Option<Vec<usize>>,
}

impl CoxeterSystem {
    /// `c = s_{i_1} s_{i_2} ... s_{i_n}` for `order = [i_1, ..., i_n]`.
    pub fn from_word(order: &[usize]) -> Result<Self> {
        let n = order.len();
        if n < 2 {
            return Err(Error::MalformedOrder(format!(
                "need at least 2 generators, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &i in order {
            if i == 0 || i > n {
                return Err(Error::MalformedOrder(format!("index {i} not in 1..={n}")));
            }
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::MalformedOrder(format!("index {i} repeated")));
            }
        }
        let mut c = PeriodicPermutation::identity(n);
        for &i in order {
            let s = PeriodicPermutation::reflection(n, i as i64, i as i64 + 1)?;
            c = c.compose(&s)?;
        }
        let mut sys = Self::from_element(c)?;
        sys.order = Some(order.to_vec());
        Ok(sys)
    }

    /// `c = s_1 s_2 ... s_n = (2, ..., n)[1](1)[-1]`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "a Coxeter system needs n >= 2, got {n}"
            )));
        }
        Self::from_word(&(1..=n).collect::<Vec<_>>())
    }

    /// The Coxeter element `(X sorted)[1](Ξ reversed)[-1]` for the given `X`
    /// residues.
    pub fn from_sides(n: usize, x: &[i64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "a Coxeter system needs n >= 2, got {n}"
            )));
        }
        let xs: BTreeSet<i64> = x.iter().map(|&r| residue(r, n)).collect();
        if xs.len() != x.len() {
            return Err(Error::InvalidArgument("repeated X residue".into()));
        }
        if xs.is_empty() || xs.len() == n {
            return Err(Error::InvalidArgument("X and Xi must both be non-empty".into()));
        }
        let xis: Vec<i64> = (1..=n as i64).filter(|r| !xs.contains(r)).rev().collect();
        let expr = CycleExpr {
            cycles: vec![
                Cycle {
                    entries: xs.into_iter().collect(),
                    shift: 1,
                },
                Cycle {
                    entries: xis,
                    shift: -1,
                },
            ],
        };
        Self::from_element(PeriodicPermutation::from_cycles(n, &expr)?)
    }

    /// Reads the split off an element of the form `(a,...,l)[1](λ,...,α)[-1]`.
    pub fn from_element(c: PeriodicPermutation) -> Result<Self> {
        let n = c.n();
        let orbits = c.orbit_decomposition();
        let malformed = || Error::InvalidArgument(format!("{c} is not a Coxeter element"));
        if orbits.orbits.len() != 2 {
            return Err(malformed());
        }
        let (plus, minus) = match (orbits.orbits[0].shift, orbits.orbits[1].shift) {
            (1, -1) => (&orbits.orbits[0], &orbits.orbits[1]),
            (-1, 1) => (&orbits.orbits[1], &orbits.orbits[0]),
            _ => return Err(malformed()),
        };
        let first = plus.cycle[0];
        let increasing = plus.cycle.windows(2).all(|p| p[0] < p[1])
            && *plus.cycle.last().unwrap() < first + n as i64;
        let decreasing = minus.cycle.windows(2).all(|p| p[0] > p[1])
            && *minus.cycle.last().unwrap() > minus.cycle[0] - n as i64;
        if !increasing || !decreasing {
            return Err(malformed());
        }
        let mut x = plus.residues(n);
        let mut xi = minus.residues(n);
        x.sort_unstable();
        xi.sort_unstable();
        let mut side = vec![Side::Xi; n];
        for &r in &x {
            side[r as usize - 1] = Side::X;
        }
        Ok(Self {
            n,
            c,
            x,
            xi,
            side,
            order: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &PeriodicPermutation {
        &self.c
    }

    /// Residues of `X` in `1..=n`, increasing.
    pub fn x(&self) -> &[i64] {
        &self.x
    }

    /// Residues of `Ξ` in `1..=n`, increasing.
    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    pub fn order(&self) -> Option<&[usize]> {
        self.order.as_deref()
    }

    pub fn side(&self, z: i64) -> Side {
        self.side[residue(z, self.n) as usize - 1]
    }

    pub fn side_residues(&self, side: Side) -> &[i64] {
        match side {
            Side::X => &self.x,
            Side::Xi => &self.xi,
        }
    }

    /// `Ξ = {1} + nZ`, which is the case exactly for `c = s_1 ... s_n`.
    pub fn is_standard(&self) -> bool {
        self.xi == [1]
    }

    /// The divisor poset is a lattice exactly when one side is a single residue.
    pub fn has_lattice(&self) -> bool {
        self.x.len() == 1 || self.xi.len() == 1
    }

    pub fn classify_atom(&self, x: i64, y: i64) -> Result<AtomKind> {
        if residue(x, self.n) == residue(y, self.n) {
            return Err(Error::RepeatedResidue(x, y));
        }
        let near = (y - x).abs() < self.n as i64;
        Ok(match (self.side(x), self.side(y)) {
            (Side::X, Side::Xi) | (Side::Xi, Side::X) => AtomKind::Mixed,
            (Side::X, Side::X) if near => AtomKind::BothX,
            (Side::Xi, Side::Xi) if near => AtomKind::BothXi,
            _ => AtomKind::NotAtom,
        })
    }

    /// Atoms `(x, y)` with `x` in `1..=n` and `max(x, lo) <= y <= hi`.
    pub fn atoms_in_window(&self, lo: i64, hi: i64) -> Vec<Atom> {
        let mut out = Vec::new();
        for x in 1..=self.n as i64 {
            for y in (x + 1).max(lo)..=hi {
                if let Ok(kind) = self.classify_atom(x, y) {
                    if kind.is_atom() {
                        out.push(Atom { x, y, kind });
                    }
                }
            }
        }
        out
    }

    /// `p ≼ c`.
    pub fn divides_c(&self, p: &PeriodicPermutation) -> Result<bool> {
        p.divides(&self.c)
    }

    /// Length `n - 1` divisors `c r` with window entries in `[1 - n, 2n]`.
    pub fn codim1_divisors(&self) -> Vec<PeriodicPermutation> {
        let n = self.n as i64;
        let mut found = BTreeSet::new();
        for atom in self.atoms_in_window(1, 5 * n) {
            let d = self
                .c
                .compose(&atom.perm(self.n))
                .expect("periods agree");
            if d.window().iter().all(|&v| (1 - n..=2 * n).contains(&v)) {
                found.insert(d);
            }
        }
        found.into_iter().collect()
    }

    /// Shape of a length `n - 1` divisor, or `None` if `d` has none of the
    /// three shapes.
    pub fn codim1_form(&self, d: &PeriodicPermutation) -> Option<Codim1Form> {
        let orbits = d.orbit_decomposition();
        let nontrivial: Vec<_> = orbits
            .orbits
            .iter()
            .filter(|o| o.len() > 1 || o.shift != 0)
            .collect();
        let infinite: Vec<_> = nontrivial.iter().filter(|o| !o.is_finite()).collect();
        match infinite.len() {
            0 => {
                (nontrivial.len() == 1 && nontrivial[0].len() == self.n)
                    .then_some(Codim1Form::SingleCycle)
            }
            2 => {
                let residues_on = |shift: i64| -> BTreeSet<i64> {
                    infinite
                        .iter()
                        .filter(|o| o.shift == shift)
                        .flat_map(|o| o.residues(self.n))
                        .collect()
                };
                let plus = residues_on(1);
                let minus = residues_on(-1);
                let x: BTreeSet<i64> = self.x.iter().copied().collect();
                let xi: BTreeSet<i64> = self.xi.iter().copied().collect();
                let rest = orbits.orbits.iter().filter(|o| o.is_finite());
                // every residue outside the infinite pair sits in one finite class
                if rest.count() != 1 {
                    return None;
                }
                if minus == xi && plus.is_subset(&x) && plus.len() < x.len() {
                    Some(Codim1Form::SplitX)
                } else if plus == x && minus.is_subset(&xi) && minus.len() < xi.len() {
                    Some(Codim1Form::SplitXi)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c = {} (n = {}, X = {:?}, Xi = {:?})", self.c, self.n, self.x, self.xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(n: usize, s: &str) -> PeriodicPermutation {
        PeriodicPermutation::parse(n, s).unwrap()
    }

    #[test]
    fn standard_systems() {
        let sys = CoxeterSystem::standard(3).unwrap();
        assert_eq!(sys.c().window(), &[-2, 3, 5]);
        assert_eq!(sys.x(), &[2, 3]);
        assert_eq!(sys.xi(), &[1]);
        assert!(sys.is_standard());

        let sys = CoxeterSystem::standard(4).unwrap();
        assert_eq!(sys.x(), &[2, 3, 4]);
        assert_eq!(sys.xi(), &[1]);

        let sys = CoxeterSystem::standard(2).unwrap();
        assert_eq!(sys.c().window(), &[-1, 4]);
        assert_eq!(sys.c(), &p(2, "(2)[1](1)[-1]"));
        assert!(CoxeterSystem::standard(1).is_err());
    }

    #[test]
    fn malformed_orders() {
        assert!(matches!(
            CoxeterSystem::from_word(&[1, 1, 3]),
            Err(Error::MalformedOrder(_))
        ));
        assert!(matches!(
            CoxeterSystem::from_word(&[1, 4, 2]),
            Err(Error::MalformedOrder(_))
        ));
        assert!(matches!(
            CoxeterSystem::from_word(&[1]),
            Err(Error::MalformedOrder(_))
        ));
    }

    #[test]
    fn two_sided_system_from_some_order() {
        let target = CoxeterSystem::from_sides(4, &[1, 2]).unwrap();
        assert_eq!(target.c(), &p(4, "(1,2)[1](4,3)[-1]"));
        let hit = (1..=4usize)
            .permutations(4)
            .map(|o| CoxeterSystem::from_word(&o).unwrap())
            .find(|s| s.c() == target.c())
            .expect("some order realizes X = {1,2}");
        assert_eq!(hit.x(), &[1, 2]);
        assert_eq!(hit.xi(), &[3, 4]);
    }

    #[test]
    fn every_order_has_two_orbit_form() {
        for n in 2..=6usize {
            for order in (1..=n).permutations(n) {
                let sys = CoxeterSystem::from_word(&order).unwrap();
                assert_eq!(sys.c().reflection_length().unwrap(), n);
                let back = CoxeterSystem::from_sides(n, sys.x()).unwrap();
                assert_eq!(back.c(), sys.c());
            }
        }
    }

    #[test]
    fn classification_examples() {
        let sys = CoxeterSystem::standard(3).unwrap();
        assert_eq!(sys.classify_atom(2, 3).unwrap(), AtomKind::BothX);
        assert_eq!(sys.classify_atom(1, 5).unwrap(), AtomKind::Mixed);
        assert_eq!(sys.classify_atom(2, 6).unwrap(), AtomKind::NotAtom);
        assert_eq!(sys.classify_atom(2, 5), Err(Error::RepeatedResidue(2, 5)));
    }

    #[test]
    fn atoms_in_small_windows() {
        let sys = CoxeterSystem::standard(3).unwrap();
        let got: Vec<(i64, i64)> = sys
            .atoms_in_window(1, 6)
            .iter()
            .map(|a| (a.x, a.y))
            .collect();
        assert_eq!(
            got,
            vec![(1, 2), (1, 3), (1, 5), (1, 6), (2, 3), (2, 4), (3, 4), (3, 5)]
        );
        let sys = CoxeterSystem::standard(2).unwrap();
        let got: Vec<(i64, i64)> = sys
            .atoms_in_window(1, 4)
            .iter()
            .map(|a| (a.x, a.y))
            .collect();
        assert_eq!(got, vec![(1, 2), (1, 4), (2, 3)]);
    }

    #[test]
    fn mixed_atoms_grow_linearly() {
        let sys = CoxeterSystem::standard(4).unwrap();
        let counts: Vec<usize> = (1..6)
            .map(|k| sys.atoms_in_window(1, 4 * k).len())
            .collect();
        let steps: Vec<usize> = counts.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(steps.iter().skip(1).all(|&s| s == steps[1]), "{counts:?}");
        assert!(steps[1] > 0);
    }

    #[test]
    fn codim1_shapes() {
        for n in 2..=5 {
            let sys = CoxeterSystem::standard(n).unwrap();
            let ds = sys.codim1_divisors();
            assert!(!ds.is_empty());
            for d in &ds {
                assert_eq!(d.reflection_length().unwrap(), n - 1);
                assert!(sys.divides_c(d).unwrap());
                assert!(sys.codim1_form(d).is_some(), "{d}");
            }
            if n == 2 {
                assert!(ds
                    .iter()
                    .all(|d| sys.codim1_form(d) == Some(Codim1Form::SingleCycle)));
            }
        }
        let sys = CoxeterSystem::from_sides(4, &[1, 2]).unwrap();
        let forms: BTreeSet<_> = sys
            .codim1_divisors()
            .iter()
            .map(|d| format!("{:?}", sys.codim1_form(d).unwrap()))
            .collect();
        assert_eq!(forms.len(), 3);
    }
}
