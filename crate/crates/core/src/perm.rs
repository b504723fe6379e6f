//! n-periodic permutations of the integers.
//!
//! A permutation `w` with `w(x + n) = w(x) + n` is stored by its window
//! `[w(1), ..., w(n)]`. Products follow the functional convention: in `v * w`
//! the right factor `w` acts first.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Window = SmallVec<[i64; 8]>;

/// Splits `x` as `r + q*n` with `r` in `1..=n`.
#[inline]
pub fn split(x: i64, n: usize) -> (i64, i64) {
    let n = n as i64;
    let r = (x - 1).rem_euclid(n) + 1;
    (r, (x - r) / n)
}

/// The representative of `x` modulo `n` in `1..=n`.
#[inline]
pub fn residue(x: i64, n: usize) -> i64 {
    split(x, n).0
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PeriodicPermutation {
    window: Window,
}

impl TryFrom<Vec<i64>> for PeriodicPermutation {
    type Error = Error;

    fn try_from(window: Vec<i64>) -> Result<Self> {
        Self::from_window(&window)
    }
}

impl From<PeriodicPermutation> for Vec<i64> {
    fn from(p: PeriodicPermutation) -> Self {
        p.window.to_vec()
    }
}

impl PeriodicPermutation {
    /// Builds a permutation from its window, checking bijectivity and that the
    /// total displacement is a multiple of `n`.
    pub fn from_window(window: &[i64]) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let mut seen: SmallVec<[Option<i64>; 8]> = SmallVec::from_elem(None, n);
        let mut displacement: i64 = 0;
        for (i, &v) in window.iter().enumerate() {
            let r = residue(v, n) as usize - 1;
            if let Some(prev) = seen[r] {
                return Err(Error::RepeatedResidue(prev, v));
            }
            seen[r] = Some(v);
            displacement = displacement
                .checked_add(v - (i as i64 + 1))
                .ok_or(Error::Overflow)?;
        }
        if displacement % n as i64 != 0 {
            return Err(Error::FractionalShift);
        }
        Ok(Self {
            window: Window::from_slice(window),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "period must be positive");
        Self {
            window: (1..=n as i64).collect(),
        }
    }

    /// The reflection `(a, b)`, exchanging `a + kn` and `b + kn` for every `k`.
    pub fn reflection(n: usize, a: i64, b: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let (ra, qa) = split(a, n);
        let (rb, qb) = split(b, n);
        if ra == rb {
            return Err(Error::RepeatedResidue(a, b));
        }
        let mut window: Window = (1..=n as i64).collect();
        let n64 = n as i64;
        window[ra as usize - 1] = b.checked_sub(qa * n64).ok_or(Error::Overflow)?;
        window[rb as usize - 1] = a.checked_sub(qb * n64).ok_or(Error::Overflow)?;
        Ok(Self { window })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.window.len()
    }

    #[inline]
    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn try_apply(&self, x: i64) -> Result<i64> {
        let n = self.n();
        let (r, q) = split(x, n);
        q.checked_mul(n as i64)
            .and_then(|t| t.checked_add(self.window[r as usize - 1]))
            .ok_or(Error::Overflow)
    }

    /// Evaluates `w(x)`. Panics on overflow; see [`Self::try_apply`].
    #[inline]
    pub fn apply(&self, x: i64) -> i64 {
        self.try_apply(x).expect("integer overflow evaluating permutation")
    }

    /// The product `self * other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::PeriodMismatch(self.n(), other.n()));
        }
        let window = other
            .window
            .iter()
            .map(|&y| self.try_apply(y))
            .collect::<Result<Window>>()?;
        Ok(Self { window })
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut window: Window = SmallVec::from_elem(0, n);
        for (i, &y) in self.window.iter().enumerate() {
            let (r, q) = split(y, n);
            window[r as usize - 1] = i as i64 + 1 - q * n as i64;
        }
        Self { window }
    }

    /// `self^k` for any integer `k`, by repeated squaring.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// `by * self * by^-1`.
    pub fn conjugate_by(&self, by: &Self) -> Result<Self> {
        by.compose(self)?.compose(&by.inverse())
    }

    /// The shift morphism `(1/n) * sum (w(i) - i)`; zero exactly on `W`.
    pub fn shift(&self) -> i64 {
        let total: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &v)| v - (i as i64 + 1))
            .sum();
        total / self.n() as i64
    }

    pub fn is_in_w(&self) -> bool {
        self.shift() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i64 + 1)
    }

    /// Largest `|w(i) - i|` over the window.
    pub fn max_displacement(&self) -> i64 {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &v)| (v - (i as i64 + 1)).abs())
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn require_w(&self) -> Result<()> {
        let shift = self.shift();
        if shift != 0 {
            return Err(Error::NotInW {
                perm: self.to_string(),
                shift,
            });
        }
        Ok(())
    }

    pub fn orbit_decomposition(&self) -> OrbitDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for r in 1..=n as i64 {
            if seen[r as usize - 1] {
                continue;
            }
            seen[r as usize - 1] = true;
            let mut cycle = vec![r];
            let mut x = r;
            let shift = loop {
                let y = self.apply(x);
                let (ry, _) = split(y, n);
                if ry == r {
                    break (y - r) / n as i64;
                }
                seen[ry as usize - 1] = true;
                cycle.push(y);
                x = y;
            };
            orbits.push(Orbit { cycle, shift });
        }
        OrbitDecomposition { n, orbits }
    }

    /// Number of orbit classes modulo `n`, fixed points included.
    pub fn nu(&self) -> usize {
        self.orbit_decomposition().orbits.len()
    }

    /// Largest number of disjoint-support factors in `W` whose product is `self`.
    pub fn kappa(&self) -> Result<usize> {
        self.require_w()?;
        self.orbit_decomposition().kappa()
    }

    /// `n + nu - 2 kappa`.
    pub fn reflection_length(&self) -> Result<usize> {
        self.require_w()?;
        let orbits = self.orbit_decomposition();
        let kappa = orbits.kappa()?;
        Ok(self.n() + orbits.orbits.len() - 2 * kappa)
    }

    /// `self ≼ w`: `l(self) + l(self^-1 w) = l(w)`. Left and right divisibility
    /// agree in `W` because the length is conjugation invariant.
    pub fn divides(&self, w: &Self) -> Result<bool> {
        if self.n() != w.n() {
            return Err(Error::PeriodMismatch(self.n(), w.n()));
        }
        let lv = self.reflection_length()?;
        let lw = w.reflection_length()?;
        if lv > lw {
            return Ok(false);
        }
        let rest = self.inverse().compose(w)?;
        Ok(lv + rest.reflection_length()? == lw)
    }

    /// `w = v'' self` with additive lengths.
    pub fn right_divides(&self, w: &Self) -> Result<bool> {
        let lv = self.reflection_length()?;
        let lw = w.reflection_length()?;
        if lv > lw {
            return Ok(false);
        }
        let rest = w.compose(&self.inverse())?;
        Ok(rest.reflection_length()? + lv == lw)
    }

    pub fn to_cycle_expr(&self) -> CycleExpr {
        let cycles = self
            .orbit_decomposition()
            .orbits
            .into_iter()
            .filter(|o| o.cycle.len() > 1 || o.shift != 0)
            .map(|o| Cycle {
                entries: o.cycle,
                shift: o.shift,
            })
            .collect();
        CycleExpr { cycles }
    }

    /// The product of the disjoint cycles in `expr`.
    pub fn from_cycles(n: usize, expr: &CycleExpr) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let n64 = n as i64;
        let mut window: Window = (1..=n64).collect();
        let mut owner: Vec<Option<i64>> = vec![None; n];
        for cycle in &expr.cycles {
            let len = cycle.entries.len();
            for (j, &e) in cycle.entries.iter().enumerate() {
                let (r, q) = split(e, n);
                if let Some(prev) = owner[r as usize - 1] {
                    return Err(Error::RepeatedResidue(prev, e));
                }
                owner[r as usize - 1] = Some(e);
                let target = if j + 1 < len {
                    cycle.entries[j + 1]
                } else {
                    cycle.shift
                        .checked_mul(n64)
                        .and_then(|t| t.checked_add(cycle.entries[0]))
                        .ok_or(Error::Overflow)?
                };
                window[r as usize - 1] = q
                    .checked_mul(n64)
                    .and_then(|t| target.checked_sub(t))
                    .ok_or(Error::Overflow)?;
            }
        }
        Self::from_window(&window)
    }

    /// Reads cycle notation `(a,b,...)[h]...`, window notation `w:[...]`, or `id`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        crate::notation::parse_permutation(n, s)
    }
}

impl Mul for &PeriodicPermutation {
    type Output = PeriodicPermutation;

    /// Panics on period mismatch or overflow; use [`PeriodicPermutation::compose`]
    /// for the checked product.
    fn mul(self, rhs: Self) -> PeriodicPermutation {
        self.compose(rhs).expect("permutation product")
    }
}

impl fmt::Display for PeriodicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expr = self.to_cycle_expr();
        if expr.cycles.is_empty() {
            f.write_str("id")
        } else {
            write!(f, "{expr}")
        }
    }
}

impl fmt::Debug for PeriodicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} w:{:?}", self, self.window.as_slice())
    }
}

/// One orbit class: `cycle[0]` is the smallest residue of the class in `1..=n`
/// and `cycle[j] = w^j(cycle[0])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub cycle: Vec<i64>,
    pub shift: i64,
}

impl Orbit {
    pub fn residues(&self, n: usize) -> Vec<i64> {
        let mut r: Vec<i64> = self.cycle.iter().map(|&x| residue(x, n)).collect();
        r.sort_unstable();
        r
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.shift == 0
    }

    pub fn is_fixed_point(&self) -> bool {
        self.cycle.len() == 1 && self.shift == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub n: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn nu(&self) -> usize {
        self.orbits.len()
    }

    pub fn total_shift(&self) -> i64 {
        self.orbits.iter().map(|o| o.shift).sum()
    }

    pub fn infinite(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| !o.is_finite())
    }

    /// Finite classes plus the largest number of zero-sum groups the nonzero
    /// shifts can be split into.
    pub fn kappa(&self) -> Result<usize> {
        let finite = self.orbits.iter().filter(|o| o.is_finite()).count();
        let nonzero: Vec<i64> = self.infinite().map(|o| o.shift).collect();
        Ok(finite + max_zero_sum_parts(&nonzero)?)
    }
}

const KAPPA_LIMIT: usize = 20;

/// Maximum number of blocks in a partition of `values` (which must sum to 0)
/// into zero-sum blocks. Subset DP: order the elements so each block is a
/// contiguous run; `best[mask]` counts the zero-sum prefixes.
pub(crate) fn max_zero_sum_parts(values: &[i64]) -> Result<usize> {
    let m = values.len();
    if m == 0 {
        return Ok(0);
    }
    if m > KAPPA_LIMIT {
        return Err(Error::KappaTooLarge(m));
    }
    let full = (1usize << m) - 1;
    let mut sum = vec![0i64; full + 1];
    let mut best = vec![0u8; full + 1];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        sum[mask] = sum[mask & (mask - 1)] + values[low];
        let mut top = 0u8;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            top = top.max(best[mask ^ (1 << i)]);
        }
        best[mask] = top + u8::from(sum[mask] == 0);
    }
    Ok(best[full] as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub entries: Vec<i64>,
    pub shift: i64,
}

/// Disjoint cycles, printed as `(a,b,...,l)[h]`; the shift is omitted when 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleExpr {
    pub cycles: Vec<Cycle>,
}

impl CycleExpr {
    pub fn parse(s: &str) -> Result<Self> {
        crate::notation::parse_cycle_expr(s)
    }
}

impl fmt::Display for CycleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, e) in c.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")?;
            if c.shift != 0 {
                write!(f, "[{}]", c.shift)?;
            }
        }
        Ok(())
    }
}
