//! Device-to-switch partitioning.
//!
//! [`rsb_optimized`] is the production path: sort vertices by Fiedler
//! component, peel off the first `n_ports * floor(d/2)` as one branch and
//! recurse until every block fits a switch. [`split`] implements the four
//! single-cut strategies (bisection, sign, ratio, gap) on a Fiedler vector.
//! [`brute_force_min_cut`] exhaustively enumerates small instances and is
//! the optimality oracle for tests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fiedler::{fiedler, FiedlerOutcome, FiedlerResult};
use crate::graph::SymmetricGraph;
use crate::spectrum::laplacian;

/// Exhaustive search guard.
pub const BRUTE_FORCE_MAX: usize = 12;

/// Assignment of every device to exactly one switch group.
///
/// Group order and the order of vertices inside a group carry the
/// serialization produced by the recursion; `groups` are disjoint and cover
/// `0..n`, each at most `capacity` strong.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    n: usize,
    capacity: usize,
    groups: Vec<Vec<usize>>,
    disconnected: bool,
}

impl Partition {
    pub fn new(n: usize, capacity: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = alloc::vec![0usize; n];
        for (gi, group) in groups.iter().enumerate() {
            if group.len() > capacity {
                return Err(Error::GroupTooLarge {
                    group: gi + 1,
                    size: group.len(),
                    capacity,
                });
            }
            for &v in group {
                if v >= n {
                    return Err(Error::BadCoverage { vertex: v + 1 });
                }
                seen[v] += 1;
            }
        }
        if let Some(v) = seen.iter().position(|&c| c != 1) {
            return Err(Error::BadCoverage { vertex: v + 1 });
        }
        Ok(Self { n, capacity, groups, disconnected: false })
    }

    fn with_disconnected(mut self, disconnected: bool) -> Self {
        self.disconnected = disconnected;
        self
    }

    /// Baseline layout: consecutive index blocks of `capacity` devices.
    pub fn consecutive_blocks(n: usize, capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::BadPartitionParams { n_ports: 0, d_switches: 1 });
        }
        let groups = (0..n)
            .collect::<Vec<_>>()
            .chunks(capacity)
            .map(|c| c.to_vec())
            .collect();
        Partition::new(n, capacity, groups)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Group index of each vertex.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = alloc::vec![0usize; self.n];
        for (gi, group) in self.groups.iter().enumerate() {
            for &v in group {
                a[v] = gi;
            }
        }
        a
    }

    /// Groups flattened in order: the vertex serialization.
    pub fn serialization(&self) -> Vec<usize> {
        self.groups.iter().flatten().copied().collect()
    }

    /// True when some recursion level saw a disconnected subgraph and fell
    /// back to component packing.
    pub fn disconnected_input(&self) -> bool {
        self.disconnected
    }
}

/// Cut metrics of a partition over a symmetric graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CutReport {
    /// Total weight crossing group boundaries, each unordered pair once.
    pub cut_size: f64,
    /// Crossing weight per unordered group pair (0-based group indices).
    pub pair_flows: BTreeMap<(usize, usize), f64>,
    /// Cut ratio c / min(|V1|, |V2|); present only for two-group partitions.
    pub ratio: Option<f64>,
}

pub fn cut_size(g: &SymmetricGraph, p: &Partition) -> Result<CutReport> {
    if p.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: p.n() });
    }
    let assignment = p.assignment();
    let k = p.groups().len();
    let mut pair_flows = BTreeMap::new();
    for a in 0..k {
        for b in (a + 1)..k {
            pair_flows.insert((a, b), 0.0);
        }
    }
    let mut cut = 0.0;
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            let (a, b) = (assignment[i], assignment[j]);
            if a != b {
                let w = g.get(i, j);
                cut += w;
                let key = (a.min(b), a.max(b));
                *pair_flows.get_mut(&key).expect("pair preinserted") += w;
            }
        }
    }
    let ratio = if k == 2 {
        let smaller = p.groups().iter().map(Vec::len).min().unwrap_or(0);
        (smaller > 0).then(|| cut / smaller as f64)
    } else {
        None
    };
    Ok(CutReport { cut_size: cut, pair_flows, ratio })
}

/// Choice of splitting value s for a single Fiedler cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// s = median of the components.
    Bisection,
    /// s = 0.
    Sign,
    /// s minimizing the weighted cut ratio over prefix cuts.
    Ratio,
    /// s in the largest gap of the sorted components.
    Gap,
}

/// Two-way split: `above` holds vertices with u_i > s.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub above: Vec<usize>,
    pub below: Vec<usize>,
    pub splitting_value: f64,
    /// Set when the requested strategy emptied one side and the split fell
    /// back to halving the sorted order.
    pub fell_back: bool,
}

fn crossing_weight(g: &SymmetricGraph, side: &[bool]) -> f64 {
    let mut w = 0.0;
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            if side[i] != side[j] {
                w += g.get(i, j);
            }
        }
    }
    w
}

pub fn split(f: &FiedlerResult, strategy: SplitStrategy, g: &SymmetricGraph) -> Result<Split> {
    let n = f.vector.len();
    if n != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: n });
    }
    if n < 2 {
        return Err(Error::TooFewVertices { n });
    }
    let sorted: Vec<f64> = f.ordering.iter().map(|&v| f.vector[v]).collect();

    let s = match strategy {
        SplitStrategy::Bisection => Some(median(&sorted)),
        SplitStrategy::Sign => Some(0.0),
        SplitStrategy::Gap => largest_gap_midpoint(&sorted),
        SplitStrategy::Ratio => best_ratio_threshold(f, g, &sorted),
    };

    if let Some(s) = s {
        let above: Vec<usize> = (0..n).filter(|&i| f.vector[i] > s).collect();
        let below: Vec<usize> = (0..n).filter(|&i| f.vector[i] <= s).collect();
        if !above.is_empty() && !below.is_empty() {
            return Ok(Split { above, below, splitting_value: s, fell_back: false });
        }
    }

    // fall back to halving the sorted order
    let half = n / 2;
    let mut below: Vec<usize> = f.ordering[..half].to_vec();
    let mut above: Vec<usize> = f.ordering[half..].to_vec();
    below.sort_unstable();
    above.sort_unstable();
    let splitting_value = (sorted[half.saturating_sub(1)] + sorted[half]) / 2.0;
    Ok(Split { above, below, splitting_value, fell_back: true })
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn largest_gap_midpoint(sorted: &[f64]) -> Option<f64> {
    let mut best: Option<(f64, usize)> = None;
    for k in 0..sorted.len() - 1 {
        let gap = sorted[k + 1] - sorted[k];
        if best.map_or(true, |(bg, _)| gap > bg) {
            best = Some((gap, k));
        }
    }
    best.filter(|&(gap, _)| gap > 0.0)
        .map(|(_, k)| (sorted[k] + sorted[k + 1]) / 2.0)
}

/// Ratio cut: phi = crossing weight / min(|V1|, |V2|), minimized over the
/// n-1 prefix cuts of the sorted order (skipping ties a threshold cannot
/// realize). The crossing weight is the weighted sum, consistent with the
/// cut size definition.
fn best_ratio_threshold(
    f: &FiedlerResult,
    g: &SymmetricGraph,
    sorted: &[f64],
) -> Option<f64> {
    let n = sorted.len();
    let mut side = alloc::vec![false; n]; // true = below threshold
    let mut best: Option<(f64, f64)> = None; // (phi, s)
    for k in 1..n {
        side[f.ordering[k - 1]] = true;
        if sorted[k - 1] == sorted[k] {
            continue;
        }
        let phi = crossing_weight(g, &side) / (k.min(n - k)) as f64;
        let s = (sorted[k - 1] + sorted[k]) / 2.0;
        if best.map_or(true, |(bp, _)| phi < bp) {
            best = Some((phi, s));
        }
    }
    best.map(|(_, s)| s)
}

/// Recursive spectral bisection sized to the fabric: `n_ports` device ports
/// per switch, `d_switches` switches.
pub fn rsb_optimized(
    g: &SymmetricGraph,
    n_ports: usize,
    d_switches: usize,
) -> Result<Partition> {
    if n_ports < 1 || d_switches < 1 {
        return Err(Error::BadPartitionParams { n_ports, d_switches });
    }
    if g.n() > n_ports * d_switches {
        return Err(Error::InfeasibleCapacity { devices: g.n(), slots: n_ports * d_switches });
    }
    let mut groups = Vec::new();
    let mut disconnected = false;
    recurse(g, (0..g.n()).collect(), n_ports, d_switches, &mut groups, &mut disconnected)?;
    Ok(Partition::new(g.n(), n_ports, groups)?.with_disconnected(disconnected))
}

fn recurse(
    g: &SymmetricGraph,
    vertices: Vec<usize>,
    n_ports: usize,
    d: usize,
    out: &mut Vec<Vec<usize>>,
    disconnected: &mut bool,
) -> Result<()> {
    if vertices.len() <= n_ports {
        out.push(vertices);
        return Ok(());
    }
    if d < 2 {
        return Err(Error::InfeasibleCapacity { devices: vertices.len(), slots: n_ports * d });
    }

    // ascending global index, so the sign convention anchors to the lowest
    // vertex of the subgraph
    let mut sorted_vs = vertices;
    sorted_vs.sort_unstable();
    let sub = g.induced(&sorted_vs);

    let ordering: Vec<usize> = if sub.is_edgeless() {
        // any assignment has cut 0; keep index order
        *disconnected = true;
        sorted_vs.clone()
    } else {
        match fiedler(&laplacian(&sub))? {
            FiedlerOutcome::Connected(r) => {
                r.ordering.iter().map(|&local| sorted_vs[local]).collect()
            }
            FiedlerOutcome::Disconnected { components } => {
                *disconnected = true;
                let comps: Vec<Vec<usize>> = components
                    .into_iter()
                    .map(|c| c.into_iter().map(|local| sorted_vs[local]).collect())
                    .collect();
                return pack_components(g, comps, n_ports, d, out, disconnected);
            }
        }
    };

    let k = (n_ports * (d / 2)).min(ordering.len() - 1);
    let left = ordering[..k].to_vec();
    let right = ordering[k..].to_vec();
    recurse(g, left, n_ports, d / 2, out, disconnected)?;
    recurse(g, right, n_ports, d - d / 2, out, disconnected)
}

/// Disconnected subgraph: partition each component independently and pack
/// whole components onto switches greedily by size (first-fit decreasing).
/// A component larger than one switch is first bisected recursively on its
/// own; its blocks enter the packing like any whole component.
fn pack_components(
    g: &SymmetricGraph,
    mut comps: Vec<Vec<usize>>,
    n_ports: usize,
    d: usize,
    out: &mut Vec<Vec<usize>>,
    disconnected: &mut bool,
) -> Result<()> {
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    let mut atoms: Vec<Vec<usize>> = Vec::new();
    for comp in comps {
        if comp.len() > n_ports {
            let need = comp.len().div_ceil(n_ports);
            let mut blocks = Vec::new();
            recurse(g, comp, n_ports, need, &mut blocks, disconnected)?;
            atoms.extend(blocks);
        } else {
            atoms.push(comp);
        }
    }
    atoms.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then(a.iter().min().cmp(&b.iter().min()))
    });

    // first-fit decreasing into at most d switches
    let mut bins: Vec<Vec<usize>> = Vec::new();
    let mut overflow: Vec<usize> = Vec::new();
    for atom in atoms {
        match bins.iter().position(|bin| bin.len() + atom.len() <= n_ports) {
            Some(i) => bins[i].extend(atom),
            None if bins.len() < d => bins.push(atom),
            None => overflow.extend(atom),
        }
    }
    // rare packing failure: distribute leftovers over the remaining room in
    // index order, accepting cuts inside a component to stay feasible
    if !overflow.is_empty() {
        overflow.sort_unstable();
        for v in overflow {
            match bins.iter().position(|bin| bin.len() < n_ports) {
                Some(i) => bins[i].push(v),
                None if bins.len() < d => bins.push(alloc::vec![v]),
                None => return Err(Error::InfeasibleCapacity { devices: 1, slots: 0 }),
            }
        }
    }
    out.extend(bins);
    Ok(())
}

/// Exhaustive minimum-cut assignment into at most `d_switches` groups of at
/// most `n_ports` vertices. Ties resolve to the lexicographically smallest
/// assignment vector. Test oracle; guarded to `n <= 12`.
pub fn brute_force_min_cut(
    g: &SymmetricGraph,
    n_ports: usize,
    d_switches: usize,
) -> Result<Partition> {
    if n_ports < 1 || d_switches < 1 {
        return Err(Error::BadPartitionParams { n_ports, d_switches });
    }
    let n = g.n();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooLargeForBruteForce { n, max: BRUTE_FORCE_MAX });
    }
    if n > n_ports * d_switches {
        return Err(Error::InfeasibleCapacity { devices: n, slots: n_ports * d_switches });
    }

    struct Search<'g> {
        g: &'g SymmetricGraph,
        n_ports: usize,
        d: usize,
        assign: Vec<usize>,
        sizes: Vec<usize>,
        best: Option<(f64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn go(&mut self, v: usize, cut_so_far: f64) {
            if let Some((best, _)) = &self.best {
                // the cut only grows along a branch
                if cut_so_far > *best {
                    return;
                }
            }
            if v == self.g.n() {
                let better = match &self.best {
                    None => true,
                    Some((best, _)) => cut_so_far < *best,
                };
                if better {
                    self.best = Some((cut_so_far, self.assign.clone()));
                }
                return;
            }
            let used = self.assign.iter().copied().max().map_or(0, |m| m + 1);
            for group in 0..=used.min(self.d - 1) {
                if group == self.sizes.len() {
                    self.sizes.push(0);
                }
                if self.sizes[group] == self.n_ports {
                    continue;
                }
                let mut added = 0.0;
                for u in 0..v {
                    if self.assign[u] != group {
                        added += self.g.get(u, v);
                    }
                }
                self.sizes[group] += 1;
                self.assign.push(group);
                self.go(v + 1, cut_so_far + added);
                self.assign.pop();
                self.sizes[group] -= 1;
            }
        }
    }

    let mut search = Search {
        g,
        n_ports,
        d: d_switches,
        assign: Vec::with_capacity(n),
        sizes: Vec::new(),
        best: None,
    };
    search.go(0, 0.0);
    let (_, assign) = search.best.expect("feasible by the capacity guard");
    let group_count = assign.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = alloc::vec![Vec::new(); group_count];
    for (v, &gi) in assign.iter().enumerate() {
        groups[gi].push(v);
    }
    Partition::new(n, n_ports, groups)
}
