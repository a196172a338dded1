//! Arc diagrams on a backbone `1..=n`, their genus, shadows and irreducible
//! components, and the predicates defining gamma-structures.
//!
//! Vertices are 1-based in the public API. The [`kernel`] submodule holds the
//! bitmask routines used by the exhaustive enumerators; it works on 0-based
//! partner arrays and is checked against the plain implementations here.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Labeled arc diagram: arcs `(i, j)` with `1 <= i < j <= n`, each vertex in
/// at most one arc. Arcs are kept sorted by left endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// A diagram whose every vertex is covered by an arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching(Diagram);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowDecomposition {
    pub components: Vec<Matching>,
    pub genera: Vec<usize>,
}

fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

impl Diagram {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut used = vec![false; n + 1];
        let mut out = Vec::new();
        for (a, b) in arcs {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if i == 0 || j > n || i == j {
                return Err(Error::InvalidArgument(format!(
                    "arc ({a},{b}) is not inside 1..={n}"
                )));
            }
            if used[i] || used[j] {
                return Err(Error::InvalidArgument(format!(
                    "arc ({i},{j}) shares an endpoint with another arc"
                )));
            }
            used[i] = true;
            used[j] = true;
            out.push((i, j));
        }
        out.sort_unstable();
        Ok(Diagram { n, arcs: out })
    }

    pub fn empty(n: usize) -> Self {
        Diagram {
            n,
            arcs: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn is_matching(&self) -> bool {
        2 * self.arcs.len() == self.n
    }

    /// `partner[v]` for `v` in `1..=n`; index 0 unused.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n + 1];
        for &(i, j) in &self.arcs {
            p[i] = Some(j);
            p[j] = Some(i);
        }
        p
    }

    pub fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
        crossing(a, b)
    }

    pub fn one_arc_count(&self) -> usize {
        self.arcs.iter().filter(|(i, j)| j - i == 1).count()
    }

    /// Arc counts of all maximal stacks `(i,j), (i+1,j-1), ...`; an isolated
    /// arc is a stack with one arc.
    pub fn stack_sizes(&self) -> Vec<usize> {
        let p = self.partners();
        let mut sizes = Vec::new();
        for &(i, j) in &self.arcs {
            let continues_outer = i > 1 && j < self.n && p[i - 1] == Some(j + 1);
            if continues_outer {
                continue;
            }
            let mut len = 1;
            while i + len < j - len && p[i + len] == Some(j - len) {
                len += 1;
            }
            sizes.push(len);
        }
        sizes
    }

    pub fn is_stack_free(&self) -> bool {
        self.stack_sizes().iter().all(|&s| s == 1)
    }

    /// The arcs as a perfect matching on their own endpoints, relabeled to
    /// `1..=2k` in backbone order.
    pub fn to_matching(&self) -> Matching {
        relabel(&self.arcs)
    }

    pub fn genus(&self) -> usize {
        genus(&self.to_matching())
    }

    /// Two-line text form: `n`, then whitespace-separated `i-j` arcs.
    pub fn to_text(&self) -> String {
        let arcs: Vec<String> = self.arcs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        format!("{}\n{}\n", self.n, arcs.join(" "))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut arcs = Vec::new();
        for line in lines {
            for tok in line.split_whitespace() {
                let (a, b) = tok
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("bad arc {tok:?}, expected i-j")))?;
                let a: usize = a
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad arc {tok:?}")))?;
                let b: usize = b
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad arc {tok:?}")))?;
                arcs.push((a, b));
            }
        }
        Diagram::new(n, arcs)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs.iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "[{}] {{{}}}", self.n, arcs.join(","))
    }
}

impl Matching {
    pub fn new(arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let d = Diagram::new(2 * arcs.len(), arcs)?;
        Ok(Matching(d))
    }

    pub fn empty() -> Self {
        Matching(Diagram::empty(0))
    }

    pub fn from_diagram(d: Diagram) -> Result<Self> {
        if !d.is_matching() {
            return Err(Error::InvalidArgument(format!("{d} is not a perfect matching")));
        }
        Ok(Matching(d))
    }

    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.0.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.0.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.arcs.is_empty()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn relabel(arcs: &[(usize, usize)]) -> Matching {
    let pts: BTreeSet<usize> = arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
    let rank = |v: usize| pts.range(..v).count() + 1;
    let arcs: Vec<_> = arcs.iter().map(|&(i, j)| (rank(i), rank(j))).collect();
    Matching::new(arcs).expect("relabeling preserves validity")
}

/// Number of boundary components: cycles of `alpha . rho` on `1..=2a`, where
/// `rho(i) = i + 1 (mod 2a)` acts first and `alpha` is the arc involution.
pub fn boundary_components(m: &Matching) -> usize {
    let n = m.0.n;
    if n == 0 {
        return 1;
    }
    let p = m.0.partners();
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            let next = if x == n { 1 } else { x + 1 };
            x = p[next].expect("perfect matching");
        }
    }
    cycles
}

/// Genus `(a + 1 - r) / 2` of the fatgraph of a matching with `a` arcs and
/// `r` boundary components.
pub fn genus(m: &Matching) -> usize {
    let a = m.arc_count();
    if a == 0 {
        return 0;
    }
    let r = boundary_components(m);
    debug_assert!(r <= a + 1 && (a + 1 - r) % 2 == 0);
    (a + 1 - r) / 2
}

/// Removes noncrossing arcs and isolated vertices, then collapses stacks
/// until none remain.
pub fn shadow(d: &Diagram) -> Matching {
    let crossing_arcs: Vec<_> = d
        .arcs
        .iter()
        .copied()
        .filter(|&a| d.arcs.iter().any(|&b| crossing(a, b)))
        .collect();
    let mut m = relabel(&crossing_arcs);
    loop {
        let p = m.0.partners();
        let inner = m
            .arcs()
            .iter()
            .find(|&&(i, j)| i + 1 < j - 1 && p[i + 1] == Some(j - 1))
            .map(|&(i, j)| (i + 1, j - 1));
        match inner {
            Some(drop) => {
                let rest: Vec<_> = m.arcs().iter().copied().filter(|&a| a != drop).collect();
                m = relabel(&rest);
            }
            None => return m,
        }
    }
}

/// Connected components of the crossing graph of `arcs`, as index sets,
/// ordered by the smallest left endpoint they contain.
fn crossing_components(arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let k = arcs.len();
    let mut comp = vec![usize::MAX; k];
    let mut out = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for b in 0..k {
                if comp[b] == usize::MAX && crossing(arcs[a], arcs[b]) {
                    comp[b] = id;
                    members.push(b);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn irreducible_components(d: &Diagram) -> ShadowDecomposition {
    let sh = shadow(d);
    let mut components = Vec::new();
    let mut genera = Vec::new();
    for members in crossing_components(sh.arcs()) {
        let arcs: Vec<_> = members.iter().map(|&i| sh.arcs()[i]).collect();
        let m = relabel(&arcs);
        genera.push(genus(&m));
        components.push(m);
    }
    ShadowDecomposition { components, genera }
}

/// Every arc crosses another arc and no two arcs form a stack.
pub fn is_shadow(m: &Matching) -> bool {
    let arcs = m.arcs();
    arcs.iter().all(|&a| arcs.iter().any(|&b| crossing(a, b))) && m.0.is_stack_free()
}

/// Nonempty with a connected crossing graph.
pub fn is_irreducible(m: &Matching) -> bool {
    !m.is_empty() && crossing_components(m.arcs()).len() == 1
}

/// Whether `d` is a `tau`-canonical `gamma`-diagram (and, without
/// `allow_one_arcs`, free of arcs `(i, i+1)`).
pub fn classify(d: &Diagram, gamma: usize, tau: usize, allow_one_arcs: bool) -> bool {
    if !allow_one_arcs && d.one_arc_count() > 0 {
        return false;
    }
    if d.stack_sizes().iter().any(|&s| s < tau) {
        return false;
    }
    irreducible_components(d).genera.iter().all(|&g| g <= gamma)
}

/// Bitmask kernels for exhaustive enumeration over at most 32 points.
///
/// Points are 0-based positions; `partner[x]` is the other endpoint of the
/// arc at `x`, or `NONE` for an unpaired vertex.
pub(crate) mod kernel {
    pub const NONE: u8 = u8::MAX;

    /// Boundary cycles of the matching restricted to the points in `mask`
    /// (a union of whole arcs).
    #[inline]
    pub fn boundary_cycles(partner: &[u8], mask: u32) -> u32 {
        if mask == 0 {
            return 1;
        }
        let first = mask.trailing_zeros();
        let mut seen = 0u32;
        let mut cycles = 0;
        let mut rest = mask;
        while rest != 0 {
            let start = rest.trailing_zeros();
            cycles += 1;
            let mut x = start;
            loop {
                seen |= 1 << x;
                // next point of the mask after x, cyclically
                let above = mask & !(((2u64 << x) - 1) as u32);
                let y = if above != 0 {
                    above.trailing_zeros()
                } else {
                    first
                };
                x = partner[y as usize] as u32;
                if x == start {
                    break;
                }
            }
            rest = mask & !seen;
        }
        cycles
    }

    #[inline]
    pub fn genus_of(partner: &[u8], mask: u32) -> u32 {
        let arcs = mask.count_ones() / 2;
        if arcs == 0 {
            return 0;
        }
        (arcs + 1 - boundary_cycles(partner, mask)) / 2
    }

    /// Left endpoints of the arcs, in backbone order.
    #[inline]
    pub fn arcs_of(partner: &[u8]) -> ([(u8, u8); 16], usize) {
        let mut arcs = [(0u8, 0u8); 16];
        let mut k = 0;
        for (x, &p) in partner.iter().enumerate() {
            if p != NONE && (p as usize) > x {
                arcs[k] = (x as u8, p);
                k += 1;
            }
        }
        (arcs, k)
    }

    /// Genus of each crossing-graph component with at least two arcs.
    #[inline]
    pub fn for_each_component_genus(partner: &[u8], mut f: impl FnMut(u32)) {
        for_each_component_mask(partner, |mask| f(genus_of(partner, mask)));
    }

    /// Point masks of the crossing-graph components with at least two arcs.
    #[inline]
    pub fn for_each_component_mask(partner: &[u8], mut f: impl FnMut(u32)) {
        let (arcs, k) = arcs_of(partner);
        let mut adj = [0u16; 16];
        for a in 0..k {
            let j = arcs[a].1;
            for b in (a + 1)..k {
                let (p, q) = arcs[b];
                // arcs sorted by left endpoint, so arcs[a].0 < p
                if p < j && j < q {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
        }
        let mut unvisited: u16 = if k == 16 { u16::MAX } else { (1u16 << k) - 1 };
        while unvisited != 0 {
            let s = unvisited.trailing_zeros() as usize;
            if adj[s] == 0 {
                unvisited &= !(1 << s);
                continue;
            }
            let mut comp: u16 = 1 << s;
            let mut frontier: u16 = 1 << s;
            while frontier != 0 {
                let a = frontier.trailing_zeros() as usize;
                frontier &= !(1 << a);
                let new = adj[a] & !comp;
                comp |= new;
                frontier |= new;
            }
            unvisited &= !comp;
            let mut mask = 0u32;
            let mut c = comp;
            while c != 0 {
                let a = c.trailing_zeros() as usize;
                c &= c - 1;
                mask |= (1 << arcs[a].0) | (1 << arcs[a].1);
            }
            f(mask);
        }
    }

    pub fn max_component_genus(partner: &[u8]) -> u32 {
        let mut m = 0;
        for_each_component_genus(partner, |g| m = m.max(g));
        m
    }

    /// Whether some arc `(i, j)` has `(i+1, j-1)` as an arc too.
    #[inline]
    #[cfg(test)]
    pub fn has_stacked_pair(partner: &[u8]) -> bool {
        partner.iter().enumerate().any(|(i, &j)| {
            j != NONE && (j as usize) > i + 2 && partner[i + 1] == j - 1
        })
    }

    /// Smallest maximal stack size (in arcs); `u32::MAX` for no arcs.
    pub fn min_stack(partner: &[u8]) -> u32 {
        let n = partner.len();
        let mut best = u32::MAX;
        for (i, &j) in partner.iter().enumerate() {
            if j == NONE || (j as usize) < i {
                continue;
            }
            let j = j as usize;
            if i > 0 && j + 1 < n && partner[i - 1] as usize == j + 1 {
                continue;
            }
            let mut len = 1usize;
            while i + len < j - len && partner[i + len] as usize == j - len {
                len += 1;
            }
            best = best.min(len as u32);
        }
        best
    }

    pub fn one_arcs(partner: &[u8]) -> u32 {
        partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| j != NONE && j as usize == i + 1)
            .count() as u32
    }

    /// Nonempty with a connected crossing graph.
    pub fn is_connected_crossing(partner: &[u8]) -> bool {
        let (_, k) = arcs_of(partner);
        match k {
            0 => return false,
            1 => return true,
            _ => {}
        }
        let mut comps = 0;
        let mut covered = 0;
        for_each_component_mask(partner, |mask| {
            comps += 1;
            covered += mask.count_ones() / 2;
        });
        comps == 1 && covered as usize == k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(arcs: &[(usize, usize)]) -> Matching {
        Matching::new(arcs.iter().copied()).unwrap()
    }

    fn d(n: usize, arcs: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&Matching::empty()), 0);
        assert_eq!(genus(&m(&[(1, 2)])), 0);
        assert_eq!(genus(&m(&[(1, 3), (2, 4)])), 1);
        assert_eq!(genus(&m(&[(1, 4), (2, 3)])), 0);
        assert_eq!(boundary_components(&m(&[(1, 4), (2, 3)])), 3);
        assert_eq!(genus(&m(&[(1, 4), (2, 5), (3, 6)])), 1);
        assert_eq!(genus(&m(&[(1, 5), (2, 6), (3, 7), (4, 8)])), 2);
    }

    #[test]
    fn rejects_bad_diagrams() {
        assert!(Diagram::new(4, [(1, 3), (3, 4)]).is_err());
        assert!(Diagram::new(3, [(1, 4)]).is_err());
        assert!(Diagram::new(3, [(2, 2)]).is_err());
        assert!(Matching::from_diagram(d(3, &[(1, 3)])).is_err());
    }

    #[test]
    fn shadow_examples() {
        assert!(shadow(&d(6, &[(1, 6), (2, 5), (3, 4)])).is_empty());
        assert_eq!(shadow(&d(4, &[(1, 3), (2, 4)])), m(&[(1, 3), (2, 4)]));
        // stacked crossing collapses to the 2-crossing; isolated vertices and
        // the noncrossing arc vanish
        let big = d(11, &[(1, 5), (2, 4), (3, 8), (6, 7), (9, 11)]);
        assert_eq!(shadow(&big), m(&[(1, 3), (2, 4)]));
        let stacked = d(8, &[(1, 5), (2, 6), (3, 8), (4, 7)]);
        assert_eq!(shadow(&stacked), m(&[(1, 4), (2, 5), (3, 6)]));
        assert_eq!(genus(&shadow(&stacked)), stacked.genus());
    }

    #[test]
    fn components_examples() {
        let e = irreducible_components(&Diagram::empty(0));
        assert!(e.components.is_empty() && e.genera.is_empty());
        let one = irreducible_components(&d(4, &[(1, 3), (2, 4)]));
        assert_eq!(one.genera, vec![1]);
        let two = irreducible_components(&d(8, &[(1, 3), (2, 4), (5, 7), (6, 8)]));
        assert_eq!(two.genera, vec![1, 1]);
        assert_eq!(d(8, &[(1, 3), (2, 4), (5, 7), (6, 8)]).genus(), 2);
    }

    #[test]
    fn classify_examples() {
        assert!(classify(&d(3, &[(1, 3)]), 1, 1, false));
        assert!(!classify(&d(2, &[(1, 2)]), 1, 1, false));
        assert!(classify(&d(2, &[(1, 2)]), 1, 1, true));
        assert!(classify(&d(4, &[(1, 3), (2, 4)]), 1, 1, false));
        assert!(!classify(&d(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]), 1, 1, false));
        assert!(classify(&d(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]), 2, 1, false));
        assert!(classify(&Diagram::empty(0), 1, 3, false));
        // stack sizes
        assert!(!classify(&d(5, &[(1, 5)]), 1, 2, false));
        assert!(classify(&d(5, &[(1, 5), (2, 4)]), 1, 2, false));
    }

    #[test]
    fn shadow_predicates() {
        let x = m(&[(1, 3), (2, 4)]);
        assert!(is_shadow(&x) && is_irreducible(&x));
        assert!(!is_shadow(&m(&[(1, 4), (2, 3)])));
        let t = m(&[(1, 4), (2, 5), (3, 6)]);
        assert!(is_shadow(&t) && is_irreducible(&t));
        let pair = m(&[(1, 3), (2, 4), (5, 7), (6, 8)]);
        assert!(is_shadow(&pair) && !is_irreducible(&pair));
        assert!(!is_irreducible(&Matching::empty()));
    }

    #[test]
    fn text_format() {
        let x = Diagram::parse("5\n1-3 2-5\n").unwrap();
        assert_eq!(x, d(5, &[(1, 3), (2, 5)]));
        assert_eq!(Diagram::parse(&x.to_text()).unwrap(), x);
        assert_eq!(Diagram::parse("3\n").unwrap(), Diagram::empty(3));
        assert!(Diagram::parse("3\n1:2").is_err());
        assert!(Diagram::parse("").is_err());
    }

    #[test]
    fn stacks() {
        let x = d(19, &[(1, 19), (2, 18), (3, 17), (4, 16), (5, 9), (6, 8), (10, 15), (11, 14), (12, 13)]);
        let mut s = x.stack_sizes();
        s.sort();
        assert_eq!(s, vec![2, 3, 4]);
        assert_eq!(x.one_arc_count(), 1);
    }

    /// Random diagram on `n` vertices: covered vertices chosen by `cover`,
    /// paired in the order given by `keys`.
    fn random_diagram(cover: &[bool], keys: &[u32]) -> Diagram {
        let mut pts: Vec<usize> = (1..=cover.len()).filter(|&v| cover[v - 1]).collect();
        if pts.len() % 2 == 1 {
            pts.pop();
        }
        pts.sort_by_key(|&v| keys[v - 1]);
        let arcs: Vec<_> = pts.chunks(2).map(|c| (c[0], c[1])).collect();
        Diagram::new(cover.len(), arcs).unwrap()
    }

    fn partner_array(d: &Diagram) -> Vec<u8> {
        let mut p = vec![kernel::NONE; d.n()];
        for &(i, j) in d.arcs() {
            p[i - 1] = (j - 1) as u8;
            p[j - 1] = (i - 1) as u8;
        }
        p
    }

    /// Peels irreducible pieces off the original diagram one at a time,
    /// taking the shadow of each piece separately.
    fn iterative_genera(d: &Diagram) -> Vec<usize> {
        let mut arcs = d.arcs().to_vec();
        let mut out = Vec::new();
        loop {
            let comps = crossing_components(&arcs);
            let Some(piece) = comps.into_iter().find(|c| c.len() >= 2) else {
                break;
            };
            let piece_arcs: Vec<_> = piece.iter().map(|&i| arcs[i]).collect();
            let sh = shadow(&Diagram::new(d.n(), piece_arcs.iter().copied()).unwrap());
            assert!(is_shadow(&sh) && is_irreducible(&sh));
            out.push(genus(&sh));
            arcs.retain(|a| !piece_arcs.contains(a));
        }
        out.sort_unstable();
        out
    }

    use proptest::prelude::*;

    fn diagrams() -> impl Strategy<Value = Diagram> {
        (0usize..=16).prop_flat_map(|n| {
            (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<u32>(), n))
                .prop_map(|(c, k)| random_diagram(&c, &k))
        })
    }

    proptest! {
        #[test]
        fn kernel_agrees_with_plain_routines(d in diagrams()) {
            let p = partner_array(&d);
            let full: u32 = p.iter().enumerate()
                .filter(|(_, &q)| q != kernel::NONE)
                .fold(0, |m, (i, _)| m | (1 << i));
            let mut k_genera = Vec::new();
            kernel::for_each_component_genus(&p, |g| k_genera.push(g as usize));
            k_genera.sort_unstable();
            let mut genera = irreducible_components(&d).genera;
            genera.sort_unstable();
            prop_assert_eq!(&k_genera, &genera);
            prop_assert_eq!(kernel::genus_of(&p, full) as usize, d.genus());
            prop_assert_eq!(kernel::one_arcs(&p) as usize, d.one_arc_count());
            let min_stack = d.stack_sizes().into_iter().min().map_or(u32::MAX, |s| s as u32);
            prop_assert_eq!(kernel::min_stack(&p), min_stack);
            prop_assert_eq!(kernel::has_stacked_pair(&p), !d.is_stack_free());
            let m = d.to_matching();
            prop_assert_eq!(kernel::is_connected_crossing(&partner_array(m.diagram())), is_irreducible(&m));
        }

        #[test]
        fn genus_is_additive_over_components(d in diagrams()) {
            let dec = irreducible_components(&d);
            prop_assert_eq!(dec.genera.iter().sum::<usize>(), d.genus());
            prop_assert_eq!(genus(&shadow(&d)), d.genus());
            prop_assert!(2 * d.genus() <= d.arcs().len());
        }

        #[test]
        fn shadow_is_idempotent(d in diagrams()) {
            let s = shadow(&d);
            prop_assert!(is_shadow(&s));
            prop_assert_eq!(shadow(s.diagram()), s.clone());
            for (c, g) in irreducible_components(&d).components.iter().zip(irreducible_components(&d).genera) {
                prop_assert!(is_shadow(c) && is_irreducible(c));
                prop_assert!(g >= 1);
                // an irreducible shadow of genus g has between 2g and 6g-2 arcs
                prop_assert!(c.arc_count() >= 2 * g && c.arc_count() <= 6 * g - 2);
            }
        }

        #[test]
        fn peeling_matches_one_shot_decomposition(d in diagrams()) {
            let mut genera = irreducible_components(&d).genera;
            genera.sort_unstable();
            prop_assert_eq!(iterative_genera(&d), genera);
        }
    }
}
