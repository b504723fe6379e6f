//! Brute-force checks over a finite window of `W`.
//!
//! Everything here works with elements whose window values lie in
//! `[1 - periods·n, (periods + 1)·n]` and never calls the closed forms it is
//! checking, except as the other side of a comparison.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::TauOrbit;
use crate::coxeter::{AtomKind, CoxeterSystem};
use crate::divisors::{divisor_from_partition, AnnularPartition};
use crate::error::{Error, Result};
use crate::monoid::Simple;
use crate::perm::{residue, PeriodicPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindowConfig {
    pub n: usize,
    pub periods: i64,
    pub depth: usize,
}

impl WindowConfig {
    pub fn new(n: usize, periods: i64, depth: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        if periods < 2 {
            return Err(Error::InvalidArgument(format!(
                "periods must be at least 2, got {periods}"
            )));
        }
        Ok(Self { n, periods, depth })
    }

    pub fn lo(&self) -> i64 {
        1 - self.periods * self.n as i64
    }

    pub fn hi(&self) -> i64 {
        (self.periods + 1) * self.n as i64
    }

    pub fn contains(&self, w: &PeriodicPermutation) -> bool {
        w.window().iter().all(|&v| (self.lo()..=self.hi()).contains(&v))
    }

    pub fn widened(&self) -> Self {
        Self {
            periods: self.periods + 1,
            ..*self
        }
    }
}

impl fmt::Display for WindowConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} window=[{}, {}] depth={}",
            self.n,
            self.lo(),
            self.hi(),
            self.depth
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub elements: Vec<String>,
}

/// One check: what ran, on which window, and the outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub config: WindowConfig,
    pub status: Status,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl CheckRecord {
    fn new(name: &str, config: WindowConfig, failures: Vec<Witness>, detail: String) -> Self {
        let status = if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        let detail = if failures.len() > 1 {
            format!("{detail}; {} failures", failures.len())
        } else {
            detail
        };
        Self {
            name: name.to_string(),
            config,
            status,
            detail,
            witness: failures.into_iter().next(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}] {}", self.status, self.name, self.config, self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {} {}", w.description, w.elements.join(", "))?;
        }
        Ok(())
    }
}

fn witness(description: impl Into<String>, elements: &[&dyn fmt::Display]) -> Witness {
    Witness {
        description: description.into(),
        elements: elements.iter().map(|e| e.to_string()).collect(),
    }
}

/// Every element of `W` whose window lies in the box.
pub fn box_elements(cfg: &WindowConfig) -> Vec<PeriodicPermutation> {
    fn rec(
        n: usize,
        lo: i64,
        hi: i64,
        cur: &mut Vec<i64>,
        used: &mut Vec<bool>,
        out: &mut Vec<PeriodicPermutation>,
    ) {
        if cur.len() == n - 1 {
            // the last value is forced by the zero shift condition
            let last = (1..=n as i64).sum::<i64>() - cur.iter().sum::<i64>();
            if (lo..=hi).contains(&last) && !used[residue(last, n) as usize - 1] {
                cur.push(last);
                out.push(PeriodicPermutation::from_window(cur).expect("valid window"));
                cur.pop();
            }
            return;
        }
        for v in lo..=hi {
            let r = residue(v, n) as usize - 1;
            if used[r] {
                continue;
            }
            used[r] = true;
            cur.push(v);
            rec(n, lo, hi, cur, used, out);
            cur.pop();
            used[r] = false;
        }
    }
    let mut out = Vec::new();
    rec(
        cfg.n,
        cfg.lo(),
        cfg.hi(),
        &mut Vec::new(),
        &mut vec![false; cfg.n],
        &mut out,
    );
    out
}

/// Reflections `(x, y)` whose window lies in the box.
pub fn window_reflections(cfg: &WindowConfig) -> Vec<PeriodicPermutation> {
    let n = cfg.n as i64;
    let mut out = BTreeSet::new();
    for x in 1..=n {
        for y in cfg.lo()..=cfg.hi() {
            if residue(x, cfg.n) == residue(y, cfg.n) {
                continue;
            }
            let r = PeriodicPermutation::reflection(cfg.n, x, y).expect("distinct residues");
            if cfg.contains(&r) {
                out.insert(r);
            }
        }
    }
    out.into_iter().collect()
}

/// Distance from the identity of every element within `cfg.depth` steps,
/// moving only through elements of the box.
pub fn bfs_ball(cfg: &WindowConfig) -> HashMap<PeriodicPermutation, usize> {
    let gens = window_reflections(cfg);
    let mut dist = HashMap::new();
    let id = PeriodicPermutation::identity(cfg.n);
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if d == cfg.depth {
            continue;
        }
        for r in &gens {
            let next = r.compose(&w).expect("periods agree");
            if cfg.contains(&next) && !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Reflection length by bidirectional search inside the box.
pub fn bfs_reflection_length(cfg: &WindowConfig, w: &PeriodicPermutation) -> Result<usize> {
    if w.n() != cfg.n {
        return Err(Error::PeriodMismatch(cfg.n, w.n()));
    }
    w.require_w()?;
    if !cfg.contains(w) {
        return Err(Error::NotReachable(format!("{w} lies outside {cfg}")));
    }
    if w.is_identity() {
        return Ok(0);
    }
    let gens = window_reflections(cfg);
    let mut from_id: HashMap<PeriodicPermutation, usize> =
        HashMap::from([(PeriodicPermutation::identity(cfg.n), 0)]);
    let mut from_w: HashMap<PeriodicPermutation, usize> = HashMap::from([(w.clone(), 0)]);
    let mut front_id = vec![PeriodicPermutation::identity(cfg.n)];
    let mut front_w = vec![w.clone()];
    let (mut depth_id, mut depth_w) = (0, 0);
    while depth_id + depth_w < cfg.depth {
        // expand the smaller side
        let (front, seen, other, depth) = if front_id.len() <= front_w.len() {
            (&mut front_id, &mut from_id, &from_w, &mut depth_id)
        } else {
            (&mut front_w, &mut from_w, &from_id, &mut depth_w)
        };
        *depth += 1;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for u in front.iter() {
            for r in &gens {
                let v = r.compose(u).expect("periods agree");
                if !cfg.contains(&v) || seen.contains_key(&v) {
                    continue;
                }
                if let Some(&d) = other.get(&v) {
                    best = Some(best.map_or(*depth + d, |b: usize| b.min(*depth + d)));
                }
                seen.insert(v.clone(), *depth);
                next.push(v);
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        if next.is_empty() {
            break;
        }
        *front = next;
    }
    Err(Error::NotReachable(format!("{w} not reached within {cfg}")))
}

/// Divisors of `c` in the box, grown from the identity by left
/// multiplication with atoms.
pub fn enumerate_divisors(sys: &CoxeterSystem, cfg: &WindowConfig) -> Result<Vec<Simple>> {
    if sys.n() != cfg.n {
        return Err(Error::PeriodMismatch(cfg.n, sys.n()));
    }
    let atoms: Vec<PeriodicPermutation> = sys
        .atoms_in_window(cfg.lo(), cfg.hi())
        .iter()
        .map(|a| a.perm(cfg.n))
        .filter(|a| cfg.contains(a))
        .collect();
    let id = PeriodicPermutation::identity(cfg.n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            for a in &atoms {
                let v = a.compose(u)?;
                if cfg.contains(&v) && !seen.contains(&v) && sys.divides_c(&v)? {
                    seen.insert(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().map(|p| sys.simple(p)).collect::<Result<_>>()?)
}

/// Reflection length against the search distance, for everything within
/// `cfg.depth` of the identity.
pub fn length_formula(cfg: &WindowConfig) -> Result<CheckRecord> {
    let ball = bfs_ball(cfg);
    let mut failures = Vec::new();
    for (w, &d) in &ball {
        let l = w.reflection_length()?;
        if l != d {
            failures.push(witness(
                format!("closed form {l}, search distance {d}"),
                &[w],
            ));
        }
    }
    failures.sort_by(|a, b| a.elements.cmp(&b.elements));
    Ok(CheckRecord::new(
        "length-formula",
        *cfg,
        failures,
        format!("{} elements", ball.len()),
    ))
}

/// Classification of reflections against divisibility of `c`.
pub fn atom_characterization(sys: &CoxeterSystem, cfg: &WindowConfig) -> Result<CheckRecord> {
    let mut failures = Vec::new();
    let mut count = 0;
    for x in 1..=cfg.n as i64 {
        for y in cfg.lo()..=cfg.hi() {
            if residue(x, cfg.n) == residue(y, cfg.n) {
                continue;
            }
            count += 1;
            let kind = sys.classify_atom(x, y)?;
            let r = PeriodicPermutation::reflection(cfg.n, x, y)?;
            let divides = sys.divides_c(&r)?;
            if kind.is_atom() != divides {
                failures.push(witness(format!("classified {kind}, divides c: {divides}"), &[&r]));
            }
        }
    }
    Ok(CheckRecord::new(
        "atom-characterization",
        *cfg,
        failures,
        format!("{count} reflections, c = {}", sys.c()),
    ))
}

fn divisor_by_blocks(sys: &CoxeterSystem, w: &PeriodicPermutation) -> bool {
    AnnularPartition::of_permutation(w)
        .and_then(|part| divisor_from_partition(sys, &part).ok())
        .is_some_and(|d| d == *w)
}

fn crossing_mismatches(
    sys: &CoxeterSystem,
    cfg: &WindowConfig,
) -> Result<(usize, usize, Vec<Witness>)> {
    let (mut checked, mut divisors) = (0, 0);
    let mut failures = Vec::new();
    for w in box_elements(cfg) {
        if w.reflection_length()? > cfg.n {
            continue;
        }
        checked += 1;
        let lhs = sys.divides_c(&w)?;
        let rhs = divisor_by_blocks(sys, &w);
        divisors += lhs as usize;
        if lhs != rhs {
            failures.push(witness(
                format!("divides c: {lhs}, non-crossing blocks: {rhs}"),
                &[&w],
            ));
        }
    }
    Ok((checked, divisors, failures))
}

/// Divisibility of `c` against the non-crossing block description, at the
/// given window and one period wider.
pub fn crossing_equivalence(sys: &CoxeterSystem, cfg: &WindowConfig) -> Result<CheckRecord> {
    let (checked, divisors, mut failures) = crossing_mismatches(sys, cfg)?;
    let wide = cfg.widened();
    let (wide_checked, wide_divisors, wide_failures) = crossing_mismatches(sys, &wide)?;
    failures.extend(wide_failures);
    Ok(CheckRecord::new(
        "crossing-equivalence",
        *cfg,
        failures,
        format!(
            "{checked} elements ({divisors} divisors), widened: {wide_checked} ({wide_divisors})"
        ),
    ))
}

/// Minimal elements of `set` under `le`.
fn minimal<'a>(set: &[&'a Simple], le: impl Fn(&Simple, &Simple) -> bool) -> Vec<&'a Simple> {
    set.iter()
        .filter(|&&m| set.iter().all(|&d| d == m || !le(d, m)))
        .copied()
        .collect()
}

/// Lattice property of the windowed divisors of `c`, balance of `c` and
/// cancellation on a sample. A failure is a finding: the witness names a
/// pair with several minimal common multiples.
pub fn lattice_certificate(sys: &CoxeterSystem, cfg: &WindowConfig) -> Result<CheckRecord> {
    let divs = enumerate_divisors(sys, cfg)?;
    let le = |a: &Simple, b: &Simple| sys.simple_divides(a, b);
    // failures keyed by the total length of the pair, shortest reported first
    let mut ranked: Vec<(usize, Witness)> = Vec::new();
    let mut pairs = 0;
    for (i, a) in divs.iter().enumerate() {
        for b in &divs[i..] {
            pairs += 1;
            let rank = a.length() + b.length();
            let multiples: Vec<&Simple> =
                divs.iter().filter(|d| le(a, d) && le(b, d)).collect();
            let divisors: Vec<&Simple> =
                divs.iter().filter(|d| le(d, a) && le(d, b)).collect();
            match sys.join(a, b) {
                Ok(j) => {
                    if !(le(a, &j) && le(b, &j) && multiples.iter().all(|d| le(&j, d))) {
                        ranked.push((rank, witness("join is not least", &[a, b, &j])));
                    }
                }
                Err(Error::NoLcm { witnesses }) => {
                    let ws = witnesses
                        .iter()
                        .map(|w| sys.simple(PeriodicPermutation::parse(cfg.n, w)?))
                        .collect::<Result<Vec<_>>>()?;
                    let sound = ws.len() >= 2
                        && ws.iter().all(|w| le(a, w) && le(b, w))
                        && ws.iter().all(|w| ws.iter().all(|v| v == w || !le(v, w)))
                        && multiples.iter().all(|d| ws.iter().any(|w| le(w, d)));
                    if !sound {
                        ranked.push((rank, witness("unsound lcm witnesses", &[a, b])));
                        continue;
                    }
                    let mins = minimal(&multiples, le);
                    let mut elements = vec![a.to_string(), b.to_string()];
                    elements.extend(mins.iter().map(|m| m.to_string()));
                    ranked.push((
                        rank,
                        Witness {
                            description: format!(
                                "{} minimal common multiples of lengths {:?}",
                                mins.len(),
                                mins.iter().map(|m| m.length()).collect::<Vec<_>>()
                            ),
                            elements,
                        },
                    ));
                }
                Err(e) => return Err(e),
            }
            match sys.meet(a, b) {
                Ok(m) => {
                    if !(le(&m, a) && le(&m, b) && divisors.iter().all(|d| le(d, &m))) {
                        ranked.push((rank, witness("meet is not greatest", &[a, b, &m])));
                    }
                }
                Err(Error::NoUniqueMeet { .. }) => {
                    let maxs = minimal(&divisors, |x, y| le(y, x));
                    let mut elements = vec![a.to_string(), b.to_string()];
                    elements.extend(maxs.iter().map(|m| m.to_string()));
                    ranked.push((
                        rank,
                        Witness {
                            description: format!("{} maximal common divisors", maxs.len()),
                            elements,
                        },
                    ));
                }
                Err(e) => return Err(e),
            }
        }
    }
    ranked.sort_by_key(|(rank, _)| *rank);
    let mut failures: Vec<Witness> = ranked.into_iter().map(|(_, w)| w).collect();
    // c is balanced: left and right divisors agree
    let c = sys.c();
    for w in box_elements(cfg) {
        if w.divides(c)? != w.right_divides(c)? {
            failures.push(witness("left and right divisibility of c differ", &[&w]));
        }
    }
    // cancellation on a sample: x·a = x·b or a·x = b·x forces a = b
    let sample: Vec<&Simple> = divs.iter().take(24).collect();
    for x in &sample {
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i + 1..] {
                let one = |s: &Simple| sys.element_of(s);
                let xa = sys.multiply(&one(x), &one(a))?;
                let xb = sys.multiply(&one(x), &one(b))?;
                let ax = sys.multiply(&one(a), &one(x))?;
                let bx = sys.multiply(&one(b), &one(x))?;
                if xa == xb || ax == bx {
                    failures.push(witness("cancellation fails", &[x, a, b]));
                }
            }
        }
    }
    Ok(CheckRecord::new(
        "lattice-certificate",
        *cfg,
        failures,
        format!("{} divisors, {pairs} pairs, c = {}", divs.len(), sys.c()),
    ))
}

/// `r·t = rtr·r` for every pair of windowed atoms with `rt ≼ c`.
pub fn dual_presentation(sys: &CoxeterSystem, cfg: &WindowConfig) -> Result<CheckRecord> {
    let atoms: Vec<Simple> = sys
        .atoms_in_window(cfg.lo(), cfg.hi())
        .iter()
        .map(|a| sys.simple(a.perm(cfg.n)))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut pairs = 0;
    for r in &atoms {
        for t in &atoms {
            if r == t || !sys.divides_c(&r.perm().compose(t.perm())?)? {
                continue;
            }
            pairs += 1;
            if !sys.check_dual_relation(r, t)? {
                failures.push(witness("r·t differs from rtr·r", &[r, t]));
            }
        }
    }
    Ok(CheckRecord::new(
        "dual-presentation",
        *cfg,
        failures,
        format!("{pairs} pairs"),
    ))
}

/// Orbit sizes of atoms `(x, y)` with `x` in `1..=n` under conjugation by `c`.
pub fn tau_orbits(sys: &CoxeterSystem, cfg: &WindowConfig, max: usize) -> Result<CheckRecord> {
    let mut failures = Vec::new();
    let mut count = 0;
    for atom in sys.atoms_in_window(1, 2 * cfg.n as i64) {
        count += 1;
        let a = sys.simple(atom.perm(cfg.n))?;
        let expected = match atom.kind {
            AtomKind::BothX => Some(sys.x().len()),
            AtomKind::BothXi => Some(sys.xi().len()),
            _ => None,
        };
        let ok = match (sys.tau_orbit(&a, max), expected) {
            (TauOrbit::Finite(o), Some(k)) => o.len() == k,
            (TauOrbit::ExceedsMax(_), None) => true,
            _ => false,
        };
        if !ok {
            failures.push(witness(format!("{} atom, unexpected orbit", atom.kind), &[&a]));
        }
    }
    Ok(CheckRecord::new(
        "tau-orbits",
        *cfg,
        failures,
        format!("{count} atoms, cap {max}"),
    ))
}

/// The checks run by `selfcheck`: every window-based check for the
/// standard Coxeter element.
pub fn run_all(n: usize, periods: i64) -> Result<Vec<CheckRecord>> {
    let cfg = WindowConfig::new(n, periods, n)?;
    let sys = CoxeterSystem::standard(n)?;
    let mut out = Vec::new();
    if n <= 4 {
        out.push(length_formula(&cfg)?);
        out.push(crossing_equivalence(&sys, &cfg)?);
        out.push(lattice_certificate(&sys, &cfg)?);
    }
    out.push(atom_characterization(&sys, &cfg)?);
    if n <= 5 {
        out.push(dual_presentation(&sys, &cfg)?);
    }
    out.push(tau_orbits(&sys, &cfg, 100)?);
    Ok(out)
}

/// Centralizer of `power` in the windowed part of `W`, and the subgroup
/// generated by `gens` inside the box (closure under multiplication by
/// generators, kept inside the box).
pub fn centralizer_in_window(
    cfg: &WindowConfig,
    power: &PeriodicPermutation,
    gens: &[PeriodicPermutation],
) -> Result<(HashSet<PeriodicPermutation>, HashSet<PeriodicPermutation>)> {
    let mut central = HashSet::new();
    for w in box_elements(cfg) {
        if w.compose(power)? == power.compose(&w)? {
            central.insert(w);
        }
    }
    let mut steps: Vec<PeriodicPermutation> = gens.to_vec();
    steps.extend(gens.iter().map(|g| g.inverse()));
    let id = PeriodicPermutation::identity(cfg.n);
    let mut generated = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(u) = queue.pop_front() {
        for g in &steps {
            let v = g.compose(&u)?;
            if cfg.contains(&v) && generated.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    Ok((central, generated))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_matches_filter() {
        let cfg = WindowConfig::new(3, 2, 3).unwrap();
        let elems = box_elements(&cfg);
        assert!(elems.iter().all(|w| cfg.contains(w) && w.is_in_w()));
        let set: HashSet<_> = elems.iter().collect();
        assert_eq!(set.len(), elems.len());
        assert!(set.contains(&PeriodicPermutation::identity(3)));
        assert!(WindowConfig::new(3, 1, 3).is_err());
    }

    #[test]
    fn bfs_examples() {
        let cfg = WindowConfig::new(3, 2, 3).unwrap();
        let id = PeriodicPermutation::identity(3);
        assert_eq!(bfs_reflection_length(&cfg, &id).unwrap(), 0);
        let c = CoxeterSystem::standard(3).unwrap().c().clone();
        assert_eq!(bfs_reflection_length(&cfg, &c).unwrap(), 3);
        let r = PeriodicPermutation::parse(3, "(1,5)").unwrap();
        assert_eq!(bfs_reflection_length(&cfg, &r).unwrap(), 1);
        let shallow = WindowConfig::new(3, 2, 2).unwrap();
        assert!(matches!(bfs_reflection_length(&shallow, &c), Err(Error::NotReachable(_))));
    }

    #[test]
    fn divisors_match_box() {
        for n in 2..=3 {
            let sys = CoxeterSystem::standard(n).unwrap();
            let cfg = WindowConfig::new(n, 2, n).unwrap();
            let grown: BTreeSet<_> = enumerate_divisors(&sys, &cfg)
                .unwrap()
                .into_iter()
                .map(Simple::into_perm)
                .collect();
            let brute: BTreeSet<_> = box_elements(&cfg)
                .into_iter()
                .filter(|w| sys.divides_c(w).unwrap())
                .collect();
            assert_eq!(grown, brute);
            assert!(grown.contains(sys.c()));
        }
    }

    #[test]
    fn small_checks_pass() {
        let sys = CoxeterSystem::standard(3).unwrap();
        let cfg = WindowConfig::new(3, 2, 3).unwrap();
        assert!(length_formula(&cfg).unwrap().passed());
        assert!(crossing_equivalence(&sys, &cfg).unwrap().passed());
        assert!(lattice_certificate(&sys, &cfg).unwrap().passed());
        assert!(dual_presentation(&sys, &cfg).unwrap().passed());
        assert!(tau_orbits(&sys, &cfg, 100).unwrap().passed());
        assert!(atom_characterization(&sys, &cfg).unwrap().passed());
    }
}
