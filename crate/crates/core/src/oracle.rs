//! Exhaustive enumerators giving reference counts for every generating
//! function in the crate.
//!
//! Perfect matchings are built by pairing the smallest uncovered vertex with
//! each larger uncovered vertex; partial matchings additionally let that
//! vertex stay unpaired. Work is split across the choices for vertex 1, and
//! the per-branch tallies are merged by key, so results do not depend on the
//! thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::kernel::{self, NONE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    MatchingsByGenus,
    IrreducibleShadowsByGenus,
    GammaMatchings,
    ShapesByArcsAndOnearcs,
    StructuresByLength,
}

impl CountKind {
    fn key_names(self) -> &'static [&'static str] {
        match self {
            CountKind::MatchingsByGenus | CountKind::IrreducibleShadowsByGenus => &["genus", "arcs"],
            CountKind::GammaMatchings => &["max_component_genus", "arcs"],
            CountKind::ShapesByArcsAndOnearcs => &["arcs", "one_arcs"],
            CountKind::StructuresByLength => &["length", "arcs"],
        }
    }
}

/// Exact counts keyed by small integer tuples; absent keys count zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub kind: CountKind,
    pub gamma: Option<usize>,
    pub tau: Option<usize>,
    pub allow_one_arcs: Option<bool>,
    counts: BTreeMap<Vec<usize>, BigUint>,
}

impl CountTable {
    fn new(kind: CountKind) -> Self {
        CountTable {
            kind,
            gamma: None,
            tau: None,
            allow_one_arcs: None,
            counts: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: Vec<usize>, count: u64) {
        if count > 0 {
            *self.counts.entry(key).or_default() += count;
        }
    }

    pub fn get(&self, key: &[usize]) -> BigUint {
        self.counts.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &BigUint)> {
        self.counts.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Sum of the counts whose key satisfies `pred`.
    pub fn sum_where(&self, pred: impl Fn(&[usize]) -> bool) -> BigUint {
        self.counts
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.kind.key_names().join(",");
        out.push_str(",count\n");
        for (k, v) in &self.counts {
            for x in k {
                let _ = write!(out, "{x},");
            }
            let _ = writeln!(out, "{v}");
        }
        out
    }
}

/// Upper limits on enumeration size, per kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub matchings: usize,
    pub irreducible_shadows: usize,
    pub gamma_matchings: usize,
    pub shapes: usize,
    pub structures: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            matchings: 9,
            irreducible_shadows: 8,
            gamma_matchings: 9,
            shapes: 7,
            structures: 12,
        }
    }
}

/// Kernels use 32-bit point masks.
const MAX_POINTS: usize = 32;

fn check_cap(what: &'static str, requested: usize, cap: usize, points: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::CapExceeded {
            what,
            requested,
            cap,
        });
    }
    if points > MAX_POINTS {
        return Err(Error::InvalidArgument(format!(
            "{what}: {points} points exceed the enumerator limit of {MAX_POINTS}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Walk {
    n: usize,
    partial: bool,
    no_stacked_pairs: bool,
    no_one_arcs: bool,
}

type Tally = BTreeMap<(usize, usize), u64>;

impl Walk {
    fn run<F>(self, leaf: F) -> Tally
    where
        F: Fn(&[u8]) -> Option<(usize, usize)> + Sync,
    {
        let n = self.n;
        if n == 0 {
            return leaf(&[]).map(|k| (k, 1)).into_iter().collect();
        }
        let p = vec![NONE; n];
        let mut first: Vec<Option<usize>> = (1..n).filter(|&j| self.allowed(&p, 0, j)).map(Some).collect();
        if self.partial {
            first.insert(0, None);
        }
        first
            .into_par_iter()
            .map(|choice| {
                let mut p = vec![NONE; n];
                let mut t = Tally::new();
                if let Some(j) = choice {
                    p[0] = j as u8;
                    p[j] = 0;
                }
                self.descend(&mut p, 1, &leaf, &mut t);
                t
            })
            .reduce(Tally::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            })
    }

    #[inline]
    fn allowed(&self, p: &[u8], i: usize, j: usize) -> bool {
        if self.no_one_arcs && j == i + 1 {
            return false;
        }
        // (i-1, j+1) already present would make (i, j) its stacked partner
        !(self.no_stacked_pairs && i > 0 && j + 1 < self.n && p[i - 1] as usize == j + 1)
    }

    fn descend<F>(&self, p: &mut [u8], mut i: usize, leaf: &F, t: &mut Tally)
    where
        F: Fn(&[u8]) -> Option<(usize, usize)>,
    {
        while i < self.n && p[i] != NONE {
            i += 1;
        }
        if i == self.n {
            if let Some(k) = leaf(p) {
                *t.entry(k).or_default() += 1;
            }
            return;
        }
        if self.partial {
            self.descend(p, i + 1, leaf, t);
        }
        for j in (i + 1)..self.n {
            if p[j] != NONE || !self.allowed(p, i, j) {
                continue;
            }
            p[i] = j as u8;
            p[j] = i as u8;
            self.descend(p, i + 1, leaf, t);
            p[i] = NONE;
            p[j] = NONE;
        }
    }
}

fn full_mask(p: &[u8]) -> u32 {
    p.iter()
        .enumerate()
        .filter(|(_, &q)| q != NONE)
        .fold(0, |m, (i, _)| m | (1 << i))
}

fn max_component_genus_fast(p: &[u8]) -> usize {
    let total = kernel::genus_of(p, full_mask(p));
    // a nonzero total genus of 1 lives in one component
    if total <= 1 {
        total as usize
    } else {
        kernel::max_component_genus(p) as usize
    }
}

#[derive(Clone, Debug, Default)]
pub struct Oracle {
    pub caps: Caps,
}

impl Oracle {
    pub fn new(caps: Caps) -> Self {
        Oracle { caps }
    }

    /// All `(2m-1)!!` matchings on `2m` points, keyed by `(genus, m)`.
    pub fn count_matchings_by_genus(&self, m: usize) -> Result<CountTable> {
        check_cap("matchings", m, self.caps.matchings, 2 * m)?;
        let walk = Walk {
            n: 2 * m,
            partial: false,
            no_stacked_pairs: false,
            no_one_arcs: false,
        };
        let tally = walk.run(|p| Some((kernel::genus_of(p, full_mask(p)) as usize, m)));
        let mut t = CountTable::new(CountKind::MatchingsByGenus);
        for ((g, a), c) in tally {
            t.add(vec![g, a], c);
        }
        Ok(t)
    }

    /// Irreducible shadows with `m` arcs, keyed by `(genus, m)`.
    pub fn count_irreducible_shadows(&self, m: usize) -> Result<CountTable> {
        check_cap("irreducible_shadows", m, self.caps.irreducible_shadows, 2 * m)?;
        let walk = Walk {
            n: 2 * m,
            partial: false,
            no_stacked_pairs: true,
            // a 1-arc crosses nothing
            no_one_arcs: true,
        };
        let tally = walk.run(|p| {
            (m >= 2 && kernel::is_connected_crossing(p))
                .then(|| (kernel::genus_of(p, full_mask(p)) as usize, m))
        });
        let mut t = CountTable::new(CountKind::IrreducibleShadowsByGenus);
        for ((g, a), c) in tally {
            t.add(vec![g, a], c);
        }
        Ok(t)
    }

    /// Matchings with `m` arcs keyed by `(largest irreducible-component
    /// genus, m)`; the empty matching and noncrossing ones have key 0.
    pub fn count_matchings_by_component_genus(&self, m: usize) -> Result<CountTable> {
        check_cap("gamma_matchings", m, self.caps.gamma_matchings, 2 * m)?;
        let walk = Walk {
            n: 2 * m,
            partial: false,
            no_stacked_pairs: false,
            no_one_arcs: false,
        };
        let tally = walk.run(|p| Some((max_component_genus_fast(p), m)));
        let mut t = CountTable::new(CountKind::GammaMatchings);
        for ((g, a), c) in tally {
            t.add(vec![g, a], c);
        }
        Ok(t)
    }

    pub fn count_gamma_matchings(&self, gamma: usize, m: usize) -> Result<BigUint> {
        let t = self.count_matchings_by_component_genus(m)?;
        Ok(t.sum_where(|k| k[0] <= gamma))
    }

    /// Stack-free gamma-matchings with at most `max_arcs` arcs, keyed by
    /// `(arcs, one_arcs)`.
    pub fn count_shapes(&self, gamma: usize, max_arcs: usize) -> Result<CountTable> {
        check_cap("shapes", max_arcs, self.caps.shapes, 2 * max_arcs)?;
        let mut t = CountTable::new(CountKind::ShapesByArcsAndOnearcs);
        t.gamma = Some(gamma);
        for m in 0..=max_arcs {
            let walk = Walk {
                n: 2 * m,
                partial: false,
                no_stacked_pairs: true,
                no_one_arcs: false,
            };
            let tally = walk.run(|p| {
                (max_component_genus_fast(p) <= gamma).then(|| (m, kernel::one_arcs(p) as usize))
            });
            for ((a, e), c) in tally {
                t.add(vec![a, e], c);
            }
        }
        Ok(t)
    }

    /// Partial matchings on `1..=n` for every length up to `max_len` that are
    /// `tau`-canonical gamma-diagrams, keyed by `(length, arcs)`.
    pub fn count_structures_table(
        &self,
        tau: usize,
        gamma: usize,
        max_len: usize,
        allow_one_arcs: bool,
    ) -> Result<CountTable> {
        check_cap("structures", max_len, self.caps.structures, max_len)?;
        let mut t = CountTable::new(CountKind::StructuresByLength);
        t.gamma = Some(gamma);
        t.tau = Some(tau);
        t.allow_one_arcs = Some(allow_one_arcs);
        for n in 0..=max_len {
            let walk = Walk {
                n,
                partial: true,
                no_stacked_pairs: false,
                no_one_arcs: !allow_one_arcs,
            };
            let tally = walk.run(|p| {
                let ok = (kernel::min_stack(p) == u32::MAX || kernel::min_stack(p) as usize >= tau)
                    && max_component_genus_fast(p) <= gamma;
                ok.then(|| (n, kernel::arcs_of(p).1))
            });
            for ((len, a), c) in tally {
                t.add(vec![len, a], c);
            }
        }
        Ok(t)
    }

    pub fn count_structures(
        &self,
        tau: usize,
        gamma: usize,
        n: usize,
        allow_one_arcs: bool,
    ) -> Result<BigUint> {
        check_cap("structures", n, self.caps.structures, n)?;
        let walk = Walk {
            n,
            partial: true,
            no_stacked_pairs: false,
            no_one_arcs: !allow_one_arcs,
        };
        let tally = walk.run(|p| {
            let s = kernel::min_stack(p);
            (s == u32::MAX || s as usize >= tau) && max_component_genus_fast(p) <= gamma
        }
        .then_some((0, 0)));
        Ok(tally.values().map(|&c| BigUint::from(c)).sum::<BigUint>())
    }
}

/// `(2m-1)!!`, the number of perfect matchings on `2m` points.
pub fn double_factorial_odd(m: usize) -> BigUint {
    (1..=m).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(2 * k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{classify, Diagram};

    fn o() -> Oracle {
        Oracle::default()
    }

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn matchings_by_genus_small() {
        let t = o().count_matchings_by_genus(0).unwrap();
        assert_eq!(t.get(&[0, 0]), u(1));
        let t = o().count_matchings_by_genus(2).unwrap();
        assert_eq!((t.get(&[0, 2]), t.get(&[1, 2])), (u(2), u(1)));
        let t = o().count_matchings_by_genus(3).unwrap();
        assert_eq!((t.get(&[0, 3]), t.get(&[1, 3])), (u(5), u(10)));
        for m in 0..=7 {
            assert_eq!(o().count_matchings_by_genus(m).unwrap().total(), double_factorial_odd(m));
        }
    }

    #[test]
    fn irreducible_shadows_small() {
        assert_eq!(o().count_irreducible_shadows(1).unwrap().total(), u(0));
        assert_eq!(o().count_irreducible_shadows(2).unwrap().get(&[1, 2]), u(1));
        assert_eq!(o().count_irreducible_shadows(3).unwrap().get(&[1, 3]), u(2));
        let t = o().count_irreducible_shadows(4).unwrap();
        assert_eq!((t.get(&[1, 4]), t.get(&[2, 4])), (u(1), u(17)));
        for m in 0..=6 {
            for (k, _) in o().count_irreducible_shadows(m).unwrap().iter() {
                let g = k[0];
                assert!(m >= 2 * g && m + 2 <= 6 * g);
            }
        }
    }

    #[test]
    fn gamma_matchings_small() {
        assert_eq!(o().count_gamma_matchings(1, 0).unwrap(), u(1));
        assert_eq!(o().count_gamma_matchings(1, 2).unwrap(), u(3));
        assert_eq!(o().count_gamma_matchings(1, 3).unwrap(), u(15));
        // genus-1 gamma-matchings, checked against an earlier census
        let h1 = [1, 1, 3, 15, 88, 547, 3538];
        for (m, &h) in h1.iter().enumerate() {
            assert_eq!(o().count_gamma_matchings(1, m).unwrap(), u(h));
        }
        for m in 0..=5 {
            assert_eq!(o().count_gamma_matchings(2, m).unwrap(), double_factorial_odd(m));
        }
    }

    #[test]
    fn shapes_small() {
        let t = o().count_shapes(1, 2).unwrap();
        assert_eq!(t.get(&[0, 0]), u(1));
        assert_eq!(t.get(&[1, 1]), u(1));
        assert_eq!(t.get(&[1, 0]), u(0));
        assert_eq!(t.get(&[2, 2]), u(1));
        assert_eq!(t.get(&[2, 0]), u(1));
        assert_eq!(t.get(&[2, 1]), u(0));
    }

    #[test]
    fn structures_small() {
        for tau in 1..=3 {
            assert_eq!(o().count_structures(tau, 1, 0, false).unwrap(), u(1));
        }
        assert_eq!(o().count_structures(1, 1, 3, false).unwrap(), u(2));
        assert_eq!(o().count_structures(1, 1, 4, false).unwrap(), u(5));
        assert_eq!(o().count_structures(1, 1, 2, true).unwrap(), u(2));
        let t = o().count_structures_table(1, 1, 6, false).unwrap();
        for n in 0..=6 {
            assert_eq!(t.sum_where(|k| k[0] == n), o().count_structures(1, 1, n, false).unwrap());
        }
        assert_eq!(t.get(&[3, 1]), u(1));
    }

    /// Walk every partial matching through the plain `classify`.
    fn slow_structures(tau: usize, gamma: usize, n: usize, allow: bool) -> u64 {
        fn rec(n: usize, v: usize, used: &mut Vec<bool>, arcs: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
            let mut v = v;
            while v <= n && used[v] {
                v += 1;
            }
            if v > n {
                f(arcs);
                return;
            }
            used[v] = true;
            rec(n, v + 1, used, arcs, f);
            for w in (v + 1)..=n {
                if !used[w] {
                    used[w] = true;
                    arcs.push((v, w));
                    rec(n, v + 1, used, arcs, f);
                    arcs.pop();
                    used[w] = false;
                }
            }
            used[v] = false;
        }
        let mut count = 0;
        let mut used = vec![false; n + 1];
        rec(n, 1, &mut used, &mut Vec::new(), &mut |arcs| {
            let d = Diagram::new(n, arcs.iter().copied()).unwrap();
            if classify(&d, gamma, tau, allow) {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn structures_agree_with_plain_classify() {
        for (tau, gamma, allow) in [(1, 1, false), (2, 1, false), (1, 1, true), (3, 2, false), (2, 2, true)] {
            for n in 0..=9 {
                assert_eq!(
                    o().count_structures(tau, gamma, n, allow).unwrap(),
                    u(slow_structures(tau, gamma, n, allow)),
                    "tau={tau} gamma={gamma} allow={allow} n={n}"
                );
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let small = Oracle::new(Caps {
            matchings: 3,
            ..Caps::default()
        });
        assert!(matches!(
            small.count_matchings_by_genus(4),
            Err(Error::CapExceeded { requested: 4, cap: 3, .. })
        ));
        assert!(o().count_structures(1, 1, 13, false).is_err());
    }

    #[test]
    fn csv_export() {
        let t = o().count_matchings_by_genus(2).unwrap();
        assert_eq!(t.to_csv(), "genus,arcs,count\n0,2,2\n1,2,1\n");
    }

    #[test]
    fn thread_count_does_not_matter() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| o().count_matchings_by_component_genus(6).unwrap());
        let b = four.install(|| o().count_matchings_by_component_genus(6).unwrap());
        assert_eq!(a, b);
    }
}
