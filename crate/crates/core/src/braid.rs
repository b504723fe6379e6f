//! The group of fractions of the dual monoid, which is the Artin group of
//! type Ã(n-1). Elements are kept as `c^k · P` with `P` a normal form not
//! divisible by `c`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::monoid::{MonoidElement, Simple};
use crate::notation::Letter;
use crate::perm::{Cycle, CycleExpr, PeriodicPermutation};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    delta: i64,
    positive: MonoidElement,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn delta_power(&self) -> i64 {
        self.delta
    }

    pub fn positive(&self) -> &MonoidElement {
        &self.positive
    }

    pub fn is_identity(&self) -> bool {
        self.delta == 0 && self.positive.is_identity()
    }

    /// Lies in the monoid.
    pub fn is_positive(&self) -> bool {
        self.delta >= 0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c^{}", self.delta)?;
        if !self.positive.is_identity() {
            write!(f, " · {}", self.positive)?;
        }
        Ok(())
    }
}

/// `a⁻¹ b` with `a` and `b` having no common left divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub denominator: MonoidElement,
    pub numerator: MonoidElement,
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]^-1 · [{}]", self.denominator, self.numerator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauOrbit {
    Finite(Vec<Simple>),
    ExceedsMax(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerPresentation {
    pub h: i64,
    /// Rank of the claimed type B diagram, `gcd(h, n - 1)`.
    pub rank: usize,
    /// Diagram order; the last generator is the one on the double edge.
    pub generators: Vec<Simple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub left: usize,
    pub right: usize,
    /// 2 for commuting pairs, 3 or 4 for braid relations.
    pub length: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBReport {
    pub relations: Vec<RelationCheck>,
    /// Generator `i` commutes with `c^h`.
    pub commutes_with_power: Vec<bool>,
}

impl TypeBReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds) && self.commutes_with_power.iter().all(|&b| b)
    }
}

/// Defining relations of the Artin group of type Ã(n-1) on `s_1, ..., s_n`,
/// indices read cyclically. There are none for `n = 2`.
pub fn artin_relations(n: usize) -> Vec<(Vec<Letter>, Vec<Letter>)> {
    let s = |index| Letter {
        index,
        inverse: false,
    };
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let adjacent = j == i + 1 || (i == 1 && j == n);
            if adjacent {
                out.push((vec![s(i), s(j), s(i)], vec![s(j), s(i), s(j)]));
            } else {
                out.push((vec![s(i), s(j)], vec![s(j), s(i)]));
            }
        }
    }
    out
}

pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter()
        .rev()
        .map(|l| Letter {
            index: l.index,
            inverse: !l.inverse,
        })
        .collect()
}

impl CoxeterSystem {
    fn canonical(&self, mut delta: i64, positive: MonoidElement) -> GroupElement {
        let c = self.delta();
        let mut factors = positive.into_factors();
        let lead = factors.iter().take_while(|f| **f == c).count();
        factors.drain(..lead);
        delta += lead as i64;
        GroupElement {
            delta,
            positive: MonoidElement::from_normal_form(factors),
        }
    }

    pub fn group_from_element(&self, u: &MonoidElement) -> GroupElement {
        self.canonical(0, u.clone())
    }

    pub fn group_from_simple(&self, a: &Simple) -> GroupElement {
        self.canonical(0, self.element_of(a))
    }

    pub fn group_delta_power(&self, k: i64) -> GroupElement {
        GroupElement {
            delta: k,
            positive: MonoidElement::identity(),
        }
    }

    /// `c^a P c^b Q = c^(a+b) τ^-b(P) Q`.
    pub fn group_multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let moved = self.tau_element(&g.positive, -h.delta);
        let product = self.multiply(&moved, &h.positive)?;
        Ok(self.canonical(g.delta + h.delta, product))
    }

    /// For a simple `a`, `a⁻¹ = c⁻¹ τ(a⁻¹c)`.
    pub fn simple_inverse(&self, a: &Simple) -> GroupElement {
        let rest = self.tau(&self.right_complement(a));
        self.canonical(-1, self.element_of(&rest))
    }

    pub fn group_inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        let mut acc = self.group_delta_power(-g.delta);
        for a in g.positive.factors() {
            acc = self.group_multiply(&self.simple_inverse(a), &acc)?;
        }
        Ok(acc)
    }

    pub fn group_power(&self, g: &GroupElement, k: i64) -> Result<GroupElement> {
        let base = if k < 0 {
            self.group_inverse(g)?
        } else {
            g.clone()
        };
        let mut acc = GroupElement::identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.group_multiply(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Image in `W`.
    pub fn group_image(&self, g: &GroupElement) -> Result<PeriodicPermutation> {
        self.c().pow(g.delta)?.compose(&g.positive.perm(self.n())?)
    }

    /// `s_i` is the atom `(i, i+1)`; needs `c = s_1 ... s_n`.
    pub fn generator(&self, letter: Letter) -> Result<GroupElement> {
        if !self.is_standard() {
            return Err(Error::RequiresStandard);
        }
        let n = self.n();
        if letter.index == 0 || letter.index > n {
            return Err(Error::GeneratorOutOfRange {
                index: letter.index,
                n,
            });
        }
        let i = letter.index as i64;
        let atom = Simple::new(self, PeriodicPermutation::reflection(n, i, i + 1)?)?;
        Ok(if letter.inverse {
            self.simple_inverse(&atom)
        } else {
            self.group_from_simple(&atom)
        })
    }

    pub fn from_artin_word(&self, word: &[Letter]) -> Result<GroupElement> {
        let mut acc = GroupElement::identity();
        for &letter in word {
            acc = self.group_multiply(&acc, &self.generator(letter)?)?;
        }
        Ok(acc)
    }

    /// `a⁻¹ b` in lowest terms.
    pub fn to_fraction(&self, g: &GroupElement) -> Fraction {
        if g.delta >= 0 {
            let mut factors = vec![self.delta(); g.delta as usize];
            factors.extend(g.positive.factors().iter().cloned());
            return Fraction {
                denominator: MonoidElement::identity(),
                numerator: MonoidElement::from_normal_form(factors),
            };
        }
        // c^-m x_1 ... x_r = (A_m ... A_1)⁻¹ x_(m+1) ... x_r with
        // A_i = τ^-(m-i)(x_i⁻¹ c), taking x_i = 1 past the end.
        let m = g.delta.unsigned_abs() as usize;
        let xs = g.positive.factors();
        let identity = Simple::identity(self.n());
        let denominator = (1..=m)
            .rev()
            .map(|i| {
                let x = xs.get(i - 1).unwrap_or(&identity);
                self.tau_power(&self.right_complement(x), -((m - i) as i64))
            })
            .collect();
        let numerator = xs.iter().skip(m).cloned().collect();
        Fraction {
            denominator: MonoidElement::from_normal_form(denominator),
            numerator: MonoidElement::from_normal_form(numerator),
        }
    }

    pub fn from_fraction(&self, f: &Fraction) -> Result<GroupElement> {
        let a = self.group_from_element(&self.normalize(f.denominator.factors().to_vec())?);
        let b = self.group_from_element(&self.normalize(f.numerator.factors().to_vec())?);
        self.group_multiply(&self.group_inverse(&a)?, &b)
    }

    /// `u ≼ v` in the monoid: `u⁻¹v` is positive.
    pub fn monoid_divides(&self, u: &MonoidElement, v: &MonoidElement) -> Result<bool> {
        let gu = self.group_from_element(u);
        let gv = self.group_from_element(v);
        Ok(self
            .group_multiply(&self.group_inverse(&gu)?, &gv)?
            .is_positive())
    }

    /// `r·t = (rtr)·r` in the monoid, for atoms `r ≠ t` with `rt ≼ c`.
    pub fn check_dual_relation(&self, r: &Simple, t: &Simple) -> Result<bool> {
        if r.length() != 1 || t.length() != 1 || r == t {
            return Err(Error::InvalidArgument(format!(
                "{r} and {t} must be distinct atoms"
            )));
        }
        let rt = r.perm().compose(t.perm())?;
        if !self.divides_c(&rt)? {
            return Err(Error::InvalidArgument(format!("{r}·{t} does not divide c")));
        }
        let rtr = Simple::new(self, rt.compose(r.perm())?)?;
        let left = self.normalize(vec![r.clone(), t.clone()])?;
        let right = self.normalize(vec![rtr, r.clone()])?;
        Ok(left == right)
    }

    pub fn tau_orbit(&self, r: &Simple, max: usize) -> TauOrbit {
        let mut orbit = vec![r.clone()];
        let mut cur = self.tau(r);
        while cur != *r {
            if orbit.len() >= max {
                return TauOrbit::ExceedsMax(max);
            }
            orbit.push(cur.clone());
            cur = self.tau(&cur);
        }
        TauOrbit::Finite(orbit)
    }

    /// Generators of the centralizer of `c^h`: with `k = gcd(h, n-1)`,
    /// `x_1 = 2, ..., x_(n-1) = n` the consecutive points of `X` and
    /// `ξ_0 = 1`, the `i`-th generator (`i < k`) is the product of the
    /// `(x_(i+mk), x_(i+1+mk))`, and the last is `(ξ_0)[-1](x_k, x_2k, ..., x_(n-1))[1]`.
    pub fn centralizer_generators(&self, h: i64) -> Result<CentralizerPresentation> {
        if !self.is_standard() {
            return Err(Error::RequiresStandard);
        }
        if h < 1 {
            return Err(Error::InvalidArgument(format!("h must be >= 1, got {h}")));
        }
        let n = self.n();
        let m = n - 1;
        let k = gcd(h.unsigned_abs() as usize, m);
        // x_j for j >= 1, continuing past n - 1 by translation
        let x = |j: usize| -> i64 {
            let q = (j - 1) / m;
            let r = (j - 1) % m;
            2 + r as i64 + (q * n) as i64
        };
        let mut generators = Vec::with_capacity(k);
        for i in 1..k {
            let cycles = (0..m / k)
                .map(|step| Cycle {
                    entries: vec![x(i + step * k), x(i + 1 + step * k)],
                    shift: 0,
                })
                .collect();
            let p = PeriodicPermutation::from_cycles(n, &CycleExpr { cycles })?;
            generators.push(Simple::new(self, p)?);
        }
        let last = CycleExpr {
            cycles: vec![
                Cycle {
                    entries: vec![1],
                    shift: -1,
                },
                Cycle {
                    entries: (1..=m / k).map(|step| x(step * k)).collect(),
                    shift: 1,
                },
            ],
        };
        generators.push(Simple::new(self, PeriodicPermutation::from_cycles(n, &last)?)?);
        Ok(CentralizerPresentation {
            h,
            rank: k,
            generators,
        })
    }

    /// `g h g ... = h g h ...` with `length` letters on each side.
    pub fn braid_relation_holds(&self, g: &Simple, h: &Simple, length: usize) -> Result<bool> {
        let side = |a: &Simple, b: &Simple| {
            let word = (0..length)
                .map(|i| if i % 2 == 0 { a.clone() } else { b.clone() })
                .collect();
            self.normalize(word)
        };
        Ok(side(g, h)? == side(h, g)?)
    }

    pub fn check_type_b_relations(&self, pres: &CentralizerPresentation) -> Result<TypeBReport> {
        let gens = &pres.generators;
        let k = gens.len();
        let mut relations = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let length = if j == i + 1 {
                    if j == k - 1 {
                        4
                    } else {
                        3
                    }
                } else {
                    2
                };
                let holds = self.braid_relation_holds(&gens[i], &gens[j], length)?;
                relations.push(RelationCheck {
                    left: i,
                    right: j,
                    length,
                    holds,
                });
            }
        }
        let power = self.group_delta_power(pres.h);
        let commutes_with_power = gens
            .iter()
            .map(|g| {
                let g = self.group_from_simple(g);
                Ok(self.group_multiply(&g, &power)? == self.group_multiply(&power, &g)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TypeBReport {
            relations,
            commutes_with_power,
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
