//! Divisors of `c` as annular non-crossing partitions.
//!
//! A divisor of `c` is a product of pairwise non-crossing elementary divisors,
//! one per nontrivial block of its orbit partition. Finite blocks are sets of
//! integers taken up to translation by `n`; the periodic block (at most one) is
//! a set of residues.
//!
//! Crossing is decided in the strip model: the points of `X + nZ` sit on one
//! boundary line in increasing order, those of `Ξ + nZ` on the other, and
//! closing the strip into a disk gives the cyclic order "X increasing, then Ξ
//! decreasing". Two blocks cross when some translates of them interleave in
//! that cyclic order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Side};
use crate::error::{Error, Result};
use crate::notation::parse_partition_blocks;
use crate::perm::{residue, split, Cycle, CycleExpr, PeriodicPermutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    /// Residues in `1..=n`, increasing; stands for all their translates.
    Periodic(Vec<i64>),
    /// Integers with distinct residues, increasing, smallest in `1..=n`.
    Finite(Vec<i64>),
}

impl Block {
    pub fn finite(n: usize, elements: &[i64]) -> Result<Self> {
        let mut v = elements.to_vec();
        v.sort_unstable();
        check_distinct_residues(n, &v)?;
        if let Some(&min) = v.first() {
            let (_, q) = split(min, n);
            let shift = q * n as i64;
            v.iter_mut().for_each(|z| *z -= shift);
        }
        Ok(Block::Finite(v))
    }

    pub fn periodic(n: usize, residues: &[i64]) -> Result<Self> {
        check_distinct_residues(n, residues)?;
        let mut v: Vec<i64> = residues.iter().map(|&z| residue(z, n)).collect();
        v.sort_unstable();
        Ok(Block::Periodic(v))
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Block::Periodic(_))
    }

    pub fn elements(&self) -> &[i64] {
        match self {
            Block::Periodic(v) | Block::Finite(v) => v,
        }
    }

    pub fn len(&self) -> usize {
        self.elements().len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements().is_empty()
    }

    pub fn residues(&self, n: usize) -> Vec<i64> {
        self.elements().iter().map(|&z| residue(z, n)).collect()
    }

    /// Elements on each side, increasing.
    fn sides(&self, sys: &CoxeterSystem) -> (Vec<i64>, Vec<i64>) {
        self.elements()
            .iter()
            .partition(|&&z| sys.side(z) == Side::X)
    }

    /// The elementary divisor whose orbit is this block.
    pub fn elementary(&self, sys: &CoxeterSystem) -> ElementaryDivisor {
        let (xs, xis) = self.sides(sys);
        match self {
            Block::Finite(_) => ElementaryDivisor::Finite { xs, xis },
            Block::Periodic(_) => ElementaryDivisor::InfinitePair { xs, xis },
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, z) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{z}")?;
        }
        f.write_str("}")?;
        if self.is_periodic() {
            f.write_str("*")?;
        }
        Ok(())
    }
}

fn check_distinct_residues(n: usize, v: &[i64]) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut owner: BTreeMap<i64, i64> = BTreeMap::new();
    for &z in v {
        if let Some(prev) = owner.insert(residue(z, n), z) {
            return Err(Error::RepeatedResidue(prev, z));
        }
    }
    Ok(())
}

/// Position of `z` on the boundary of the strip closed into a disk.
fn boundary_key(sys: &CoxeterSystem, z: i64) -> (u8, i64) {
    match sys.side(z) {
        Side::X => (0, z),
        Side::Xi => (1, -z),
    }
}

/// Whether two disjoint finite point sets interleave on the boundary circle.
fn interleave(sys: &CoxeterSystem, a: &[i64], b: &[i64]) -> bool {
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let mut pts: Vec<((u8, i64), bool)> = a
        .iter()
        .map(|&z| (boundary_key(sys, z), false))
        .chain(b.iter().map(|&z| (boundary_key(sys, z), true)))
        .collect();
    pts.sort_unstable();
    let changes = (0..pts.len())
        .filter(|&i| pts[i].1 != pts[(i + 1) % pts.len()].1)
        .count();
    changes >= 4
}

fn translate(v: &[i64], by: i64) -> Vec<i64> {
    v.iter().map(|z| z + by).collect()
}

/// Translates `j` for which `b + jn` might interleave with `a`.
fn translate_range(n: usize, a: &[i64], b: &[i64]) -> std::ops::RangeInclusive<i64> {
    let n = n as i64;
    let (amin, amax) = (a[0], a[a.len() - 1]);
    let (bmin, bmax) = (b[0], b[b.len() - 1]);
    ((amin - bmax).div_euclid(n) - 1)..=((amax - bmin).div_euclid(n) + 2)
}

fn periodic_points(n: usize, residues: &[i64], lo: i64, hi: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (lo..=hi)
        .filter(|&z| residues.contains(&residue(z, n)))
        .collect();
    out.sort_unstable();
    out
}

/// The first `j` for which `b + jn` interleaves with `a`.
fn crossing_translate(sys: &CoxeterSystem, a: &[i64], b: &[i64]) -> Option<i64> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let n = sys.n() as i64;
    translate_range(sys.n(), a, b).find(|&j| interleave(sys, a, &translate(b, j * n)))
}

pub fn blocks_cross(sys: &CoxeterSystem, a: &Block, b: &Block) -> Result<bool> {
    let n = sys.n();
    let ra: BTreeSet<i64> = a.residues(n).into_iter().collect();
    if b.residues(n).iter().any(|r| ra.contains(r)) {
        return Err(Error::OverlappingBlocks(a.to_string(), b.to_string()));
    }
    Ok(match (a, b) {
        (Block::Periodic(_), Block::Periodic(_)) => !a.is_empty() && !b.is_empty(),
        (Block::Periodic(p), Block::Finite(f)) | (Block::Finite(f), Block::Periodic(p)) => {
            if f.is_empty() || p.is_empty() {
                return Ok(false);
            }
            let lo = f[0] - n as i64;
            let hi = f[f.len() - 1] + n as i64;
            interleave(sys, &periodic_points(n, p, lo, hi), f)
        }
        (Block::Finite(fa), Block::Finite(fb)) => crossing_translate(sys, fa, fb).is_some(),
    })
}

/// A finite block crosses one of its own translates.
pub fn self_crossing(sys: &CoxeterSystem, block: &Block) -> bool {
    match block {
        Block::Periodic(_) => false,
        Block::Finite(v) if v.len() < 2 => false,
        Block::Finite(v) => {
            let n = sys.n() as i64;
            let reach = (v[v.len() - 1] - v[0]) / n + 2;
            (1..=reach).any(|j| interleave(sys, v, &translate(v, j * n)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementaryDivisor {
    /// `(a_1, ..., a_h, α_k, ..., α_1)`.
    Finite { xs: Vec<i64>, xis: Vec<i64> },
    /// `(a_1, ..., a_h)[1](α_k, ..., α_1)[-1]`, entries are residues.
    InfinitePair { xs: Vec<i64>, xis: Vec<i64> },
}

impl ElementaryDivisor {
    pub fn is_finite(&self) -> bool {
        matches!(self, ElementaryDivisor::Finite { .. })
    }

    pub fn xs(&self) -> &[i64] {
        match self {
            ElementaryDivisor::Finite { xs, .. } | ElementaryDivisor::InfinitePair { xs, .. } => xs,
        }
    }

    pub fn xis(&self) -> &[i64] {
        match self {
            ElementaryDivisor::Finite { xis, .. }
            | ElementaryDivisor::InfinitePair { xis, .. } => xis,
        }
    }

    /// `h + k - 1` for a finite cycle, `h + k` for an infinite pair.
    pub fn length(&self) -> usize {
        let hk = self.xs().len() + self.xis().len();
        if self.is_finite() {
            hk - 1
        } else {
            hk
        }
    }

    pub fn cycle_expr(&self) -> CycleExpr {
        let down: Vec<i64> = self.xis().iter().rev().copied().collect();
        let cycles = match self {
            ElementaryDivisor::Finite { xs, .. } => vec![Cycle {
                entries: xs.iter().copied().chain(down).collect(),
                shift: 0,
            }],
            ElementaryDivisor::InfinitePair { xs, .. } => vec![
                Cycle {
                    entries: xs.clone(),
                    shift: 1,
                },
                Cycle {
                    entries: down,
                    shift: -1,
                },
            ],
        };
        CycleExpr { cycles }
    }

    pub fn perm(&self, n: usize) -> Result<PeriodicPermutation> {
        PeriodicPermutation::from_cycles(n, &self.cycle_expr())
    }

    pub fn block(&self, n: usize) -> Result<Block> {
        let all: Vec<i64> = self.xs().iter().chain(self.xis()).copied().collect();
        if self.is_finite() {
            Block::finite(n, &all)
        } else {
            Block::periodic(n, &all)
        }
    }
}

impl fmt::Display for ElementaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycle_expr().fmt(f)
    }
}

/// Nontrivial blocks of a partition of `Z` closed under translation by `n`.
/// Residues missing from every block are singletons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnnularPartition {
    n: usize,
    blocks: Vec<Block>,
}

impl AnnularPartition {
    /// Drops singleton finite blocks, checks that residues are not shared and
    /// that at most one block is periodic.
    pub fn new(n: usize, blocks: Vec<Block>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let mut blocks: Vec<Block> = blocks
            .into_iter()
            .filter(|b| b.is_periodic() || b.len() > 1)
            .collect();
        blocks.sort();
        let periodic = blocks.iter().filter(|b| b.is_periodic()).count();
        if periodic > 1 {
            return Err(Error::TooManyPeriodicBlocks(periodic));
        }
        let mut owner: BTreeMap<i64, usize> = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for r in b.residues(n) {
                if let Some(j) = owner.insert(r, i) {
                    return Err(Error::OverlappingBlocks(
                        blocks[j].to_string(),
                        b.to_string(),
                    ));
                }
            }
        }
        Ok(Self { n, blocks })
    }

    pub fn discrete(n: usize) -> Self {
        Self {
            n,
            blocks: Vec::new(),
        }
    }

    /// Reads `{2,3}/{1,4}*`; `{}` or the empty string is the discrete partition.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let blocks = parse_partition_blocks(s)?
            .into_iter()
            .map(|raw| {
                if raw.periodic {
                    Block::periodic(n, &raw.elements)
                } else {
                    Block::finite(n, &raw.elements)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, blocks)
    }

    /// The orbit partition of `p`, provided `p` has zero or two infinite
    /// orbit classes.
    pub fn of_permutation(p: &PeriodicPermutation) -> Option<Self> {
        let n = p.n();
        let orbits = p.orbit_decomposition();
        let mut blocks = Vec::new();
        let mut infinite = Vec::new();
        let mut count = 0;
        for o in &orbits.orbits {
            if o.is_finite() {
                if o.len() > 1 {
                    blocks.push(Block::finite(n, &o.cycle).ok()?);
                }
            } else {
                count += 1;
                infinite.extend(o.residues(n));
            }
        }
        match count {
            0 => {}
            2 => blocks.push(Block::periodic(n, &infinite).ok()?),
            _ => return None,
        }
        Self::new(n, blocks).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn periodic_block(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.is_periodic())
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every block of `self` lies in one block (or translate) of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        let n = self.n;
        let mut owner: BTreeMap<i64, &Block> = BTreeMap::new();
        for b in &other.blocks {
            for r in b.residues(n) {
                owner.insert(r, b);
            }
        }
        self.blocks.iter().all(|b| {
            let rs = b.residues(n);
            let Some(&target) = owner.get(&rs[0]) else {
                return false;
            };
            match (b, target) {
                (Block::Finite(_), Block::Periodic(_)) | (Block::Periodic(_), Block::Periodic(_)) => {
                    rs.iter().all(|r| owner.get(r) == Some(&target))
                }
                (Block::Periodic(_), Block::Finite(_)) => false,
                (Block::Finite(v), Block::Finite(t)) => {
                    let anchor = t.iter().find(|&&z| residue(z, n) == rs[0]).unwrap();
                    let shift = v[0] - anchor;
                    let lifted: BTreeSet<i64> = t.iter().map(|z| z + shift).collect();
                    v.iter().all(|z| lifted.contains(z))
                }
            }
        })
    }

    /// Checks the conditions for being the orbit partition of a divisor of `c`.
    pub fn validate(&self, sys: &CoxeterSystem) -> Result<()> {
        if sys.n() != self.n {
            return Err(Error::PeriodMismatch(sys.n(), self.n));
        }
        for b in &self.blocks {
            if let Block::Periodic(_) = b {
                let (xs, xis) = b.sides(sys);
                if xs.is_empty() || xis.is_empty() {
                    return Err(Error::OneSidedPeriodicBlock(b.to_string()));
                }
            }
            if self_crossing(sys, b) {
                return Err(Error::SelfCrossingBlock(b.to_string()));
            }
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                if blocks_cross(sys, a, b)? {
                    return Err(Error::CrossingBlocks(a.to_string(), b.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn is_noncrossing(&self, sys: &CoxeterSystem) -> bool {
        self.validate(sys).is_ok()
    }

    pub fn elementary_divisors(&self, sys: &CoxeterSystem) -> Vec<ElementaryDivisor> {
        self.blocks.iter().map(|b| b.elementary(sys)).collect()
    }
}

impl fmt::Display for AnnularPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("{}");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The divisor of `c` whose orbit partition is `part`.
pub fn divisor_from_partition(
    sys: &CoxeterSystem,
    part: &AnnularPartition,
) -> Result<PeriodicPermutation> {
    part.validate(sys)?;
    let cycles = part
        .elementary_divisors(sys)
        .iter()
        .flat_map(|e| e.cycle_expr().cycles)
        .collect();
    PeriodicPermutation::from_cycles(sys.n(), &CycleExpr { cycles })
}

pub fn partition_of_divisor(p: &PeriodicPermutation) -> Option<AnnularPartition> {
    AnnularPartition::of_permutation(p)
}

/// One elementary divisor per nontrivial block of the orbit partition of `p`.
pub fn elementary_factors(
    sys: &CoxeterSystem,
    p: &PeriodicPermutation,
) -> Result<Vec<ElementaryDivisor>> {
    if !sys.divides_c(p)? {
        return Err(Error::NotADivisor(p.to_string()));
    }
    let part = AnnularPartition::of_permutation(p)
        .ok_or_else(|| Error::NotADivisor(p.to_string()))?;
    Ok(part.elementary_divisors(sys))
}

/// Coarsest common refinement of two divisor partitions.
pub fn partition_meet(
    sys: &CoxeterSystem,
    a: &AnnularPartition,
    b: &AnnularPartition,
) -> Result<AnnularPartition> {
    let n = sys.n();
    let n64 = n as i64;
    let mut blocks = Vec::new();
    let mut split_periodic = None;
    for ba in &a.blocks {
        for bb in &b.blocks {
            match (ba, bb) {
                (Block::Finite(fa), Block::Finite(fb)) => {
                    for j in translate_range(n, fa, fb) {
                        let moved: BTreeSet<i64> = translate(fb, j * n64).into_iter().collect();
                        let common: Vec<i64> =
                            fa.iter().copied().filter(|z| moved.contains(z)).collect();
                        if common.len() > 1 {
                            blocks.push(Block::finite(n, &common)?);
                        }
                    }
                }
                (Block::Finite(f), Block::Periodic(p)) | (Block::Periodic(p), Block::Finite(f)) => {
                    let common: Vec<i64> = f
                        .iter()
                        .copied()
                        .filter(|&z| p.contains(&residue(z, n)))
                        .collect();
                    blocks.push(Block::finite(n, &common)?);
                }
                (Block::Periodic(pa), Block::Periodic(pb)) => {
                    let common: Vec<i64> = pa.iter().copied().filter(|r| pb.contains(r)).collect();
                    let block = Block::Periodic(common.clone());
                    let (xs, xis) = block.sides(sys);
                    if !xs.is_empty() && !xis.is_empty() {
                        blocks.push(block);
                    } else if common.len() > 1 {
                        split_periodic = Some(common);
                    }
                }
            }
        }
    }
    let Some(common) = split_periodic else {
        return AnnularPartition::new(n, blocks);
    };
    // A one-sided run of residues can be cut into a finite block at any of
    // its points; each cut is maximal and none is largest.
    let m = common.len();
    let candidates = (0..m)
        .map(|i| {
            let run: Vec<i64> = (0..m)
                .map(|k| common[(i + k) % m] + if i + k >= m { n64 } else { 0 })
                .collect();
            let mut bs = blocks.clone();
            bs.push(Block::finite(n, &run)?);
            let part = AnnularPartition::new(n, bs)?;
            Ok(divisor_from_partition(sys, &part)?.to_string())
        })
        .collect::<Result<Vec<_>>>()?;
    Err(Error::NoUniqueMeet { candidates })
}

#[derive(Clone, Debug)]
enum Class {
    Finite(Vec<i64>),
    Periodic(Vec<i64>),
}

impl Class {
    fn block(&self, n: usize) -> Block {
        match self {
            Class::Finite(v) => Block::finite(n, v).expect("class residues are distinct"),
            Class::Periodic(v) => Block::periodic(n, v).expect("class residues are distinct"),
        }
    }

    fn residues(&self, n: usize) -> Vec<i64> {
        match self {
            Class::Finite(v) | Class::Periodic(v) => v.iter().map(|&z| residue(z, n)).collect(),
        }
    }
}

/// Union-find style closure used by the join: classes of residues, each
/// either a finite set of integers or periodic.
#[derive(Clone)]
struct Closure<'a> {
    sys: &'a CoxeterSystem,
    classes: Vec<Class>,
}

enum Completion<'a> {
    Done(AnnularPartition),
    /// A one-sided periodic class (containing `anchor`) that can be closed
    /// up with any of the `missing` residues.
    Branch {
        closure: Closure<'a>,
        anchor: i64,
        missing: Vec<i64>,
    },
}

impl<'a> Closure<'a> {
    fn new(sys: &'a CoxeterSystem) -> Self {
        let classes = (1..=sys.n() as i64).map(|r| Class::Finite(vec![r])).collect();
        Self { sys, classes }
    }

    fn n(&self) -> usize {
        self.sys.n()
    }

    fn locate(&self, z: i64) -> (usize, Option<i64>) {
        let n = self.n();
        let r = residue(z, n);
        for (i, c) in self.classes.iter().enumerate() {
            match c {
                Class::Periodic(v) if v.contains(&r) => return (i, None),
                Class::Finite(v) => {
                    if let Some(&e) = v.iter().find(|&&e| residue(e, n) == r) {
                        return (i, Some((z - e) / n as i64));
                    }
                }
                _ => {}
            }
        }
        unreachable!("every residue has a class")
    }

    fn make_periodic(&mut self, i: usize) {
        let rs = self.classes[i].residues(self.n());
        self.classes[i] = Class::Periodic(rs);
    }

    fn merge(&mut self, i: usize, j: usize, class: Class) {
        let (lo, hi) = (i.min(j), i.max(j));
        self.classes.remove(hi);
        self.classes[lo] = class;
    }

    /// Puts `z1` and `z2` in the same block.
    fn unite(&mut self, z1: i64, z2: i64) {
        let n = self.n() as i64;
        let (i1, t1) = self.locate(z1);
        let (i2, t2) = self.locate(z2);
        if i1 == i2 {
            if let (Some(t1), Some(t2)) = (t1, t2) {
                if t1 != t2 {
                    self.make_periodic(i1);
                }
            }
            return;
        }
        let merged = match (&self.classes[i1], &self.classes[i2], t1, t2) {
            (Class::Finite(a), Class::Finite(b), Some(t1), Some(t2)) => {
                let mut v = a.clone();
                v.extend(translate(b, (t2 - t1) * n));
                Class::Finite(v)
            }
            (a, b, _, _) => {
                let mut rs = a.residues(self.n());
                rs.extend(b.residues(self.n()));
                Class::Periodic(rs)
            }
        };
        self.merge(i1, i2, merged);
    }

    fn absorb(&mut self, block: &Block) {
        let v = block.elements();
        for &z in &v[1..] {
            self.unite(v[0], z);
        }
        if block.is_periodic() {
            let (i, _) = self.locate(v[0]);
            self.make_periodic(i);
        }
    }

    /// One merge forced by crossings; false once the classes are stable.
    fn step(&mut self) -> bool {
        let sys = self.sys;
        let n = self.n();
        for i in 0..self.classes.len() {
            if let Class::Finite(_) = self.classes[i] {
                if self_crossing(sys, &self.classes[i].block(n)) {
                    self.make_periodic(i);
                    return true;
                }
            }
        }
        let periodic: Vec<usize> = (0..self.classes.len())
            .filter(|&i| matches!(self.classes[i], Class::Periodic(_)))
            .collect();
        if periodic.len() > 1 {
            let a = self.classes[periodic[0]].residues(n)[0];
            let b = self.classes[periodic[1]].residues(n)[0];
            self.unite(a, b);
            return true;
        }
        for i in 0..self.classes.len() {
            for j in i + 1..self.classes.len() {
                let (bi, bj) = (self.classes[i].block(n), self.classes[j].block(n));
                match (&bi, &bj) {
                    (Block::Finite(a), Block::Finite(b)) => {
                        if let Some(t) = crossing_translate(sys, a, b) {
                            self.unite(a[0], b[0] + t * n as i64);
                            return true;
                        }
                    }
                    _ => {
                        if blocks_cross(sys, &bi, &bj).expect("classes are disjoint") {
                            self.unite(bi.elements()[0], bj.elements()[0]);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn stabilize(&mut self) {
        while self.step() {}
    }

    fn complete(mut self) -> Completion<'a> {
        loop {
            self.stabilize();
            let n = self.n();
            let Some(i) = self
                .classes
                .iter()
                .position(|c| matches!(c, Class::Periodic(_)))
            else {
                break;
            };
            let block = self.classes[i].block(n);
            let (xs, xis) = block.sides(self.sys);
            let missing = if xs.is_empty() {
                self.sys.side_residues(Side::X)
            } else if xis.is_empty() {
                self.sys.side_residues(Side::Xi)
            } else {
                break;
            };
            if missing.len() > 1 {
                let missing = missing.to_vec();
                return Completion::Branch {
                    closure: self,
                    anchor: block.elements()[0],
                    missing,
                };
            }
            self.unite(block.elements()[0], missing[0]);
        }
        let n = self.n();
        let blocks = self.classes.iter().map(|c| c.block(n)).collect();
        Completion::Done(AnnularPartition::new(n, blocks).expect("closure classes are disjoint"))
    }
}

/// Finest valid partition coarser than both, or the minimal candidates when
/// there are several.
pub fn partition_join(
    sys: &CoxeterSystem,
    a: &AnnularPartition,
    b: &AnnularPartition,
) -> Result<AnnularPartition> {
    if a.n() != sys.n() || b.n() != sys.n() {
        return Err(Error::PeriodMismatch(a.n(), b.n()));
    }
    let mut closure = Closure::new(sys);
    for block in a.blocks.iter().chain(&b.blocks) {
        closure.absorb(block);
    }
    match closure.complete() {
        Completion::Done(p) => Ok(p),
        Completion::Branch {
            closure,
            anchor,
            missing,
        } => {
            let mut options = Vec::new();
            for r in missing {
                let mut c = closure.clone();
                c.unite(anchor, r);
                match c.complete() {
                    Completion::Done(p) => options.push(p),
                    Completion::Branch { .. } => {
                        unreachable!("the periodic class now meets both sides")
                    }
                }
            }
            let minimal: Vec<&AnnularPartition> = options
                .iter()
                .filter(|p| !options.iter().any(|q| q != *p && q.refines(p)))
                .collect();
            if minimal.len() == 1 {
                return Ok(minimal[0].clone());
            }
            let witnesses = minimal
                .iter()
                .map(|p| Ok(divisor_from_partition(sys, p)?.to_string()))
                .collect::<Result<Vec<_>>>()?;
            Err(Error::NoLcm { witnesses })
        }
    }
}
