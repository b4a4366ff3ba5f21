//! Brute-force ground truth for tiny instances, and instance enumeration.
//!
//! The search walks edges in canonical order, trying every unused label
//! (largest first) and both directions. A vertex's sum is final once its last
//! incident edge is placed, so a branch is abandoned as soon as two finished
//! vertices tie. Edge 0 is always oriented forward: reversing every arc
//! negates every sum, so the solution set is closed under global reversal and
//! this halves the search without losing anything up to that symmetry.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{CaterpillarSpec, Direction, Label, LabeledOrientation};

/// Largest instance the oracle will accept, whatever the budget says.
pub const MAX_EDGES_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_edges: usize,
    pub node_limit: Option<u64>,
    pub time_limit_hint: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_edges: 9,
            node_limit: None,
            time_limit_hint: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {m} edges, above the limit of {max}")]
    TooLarge { m: usize, max: usize },
    #[error("max_edges {0} exceeds the hard cap of {MAX_EDGES_CAP}")]
    CapExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(LabeledOrientation),
    NotFound,
    BudgetExceeded,
}

/// Totals from a full enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub solutions: u64,
    pub nodes: u64,
    /// False when the node or time limit cut the search short.
    pub complete: bool,
}

struct OutOfBudget;

struct Enumerator<'t> {
    n: usize,
    ends: Vec<(usize, usize)>,
    completes: Vec<Vec<usize>>,
    prune: bool,
    dirs: Vec<Direction>,
    labels: Vec<Label>,
    used: Vec<bool>,
    sums: Vec<i64>,
    /// Finished vertices per sum value, offset by `offset`.
    taken: Vec<bool>,
    offset: i64,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    target: Option<(&'t [Direction], &'t [Label])>,
}

impl<'t> Enumerator<'t> {
    fn new(
        spec: &CaterpillarSpec,
        budget: &SearchBudget,
        prune: bool,
    ) -> Result<Self, OracleError> {
        if budget.max_edges > MAX_EDGES_CAP {
            return Err(OracleError::CapExceeded(budget.max_edges));
        }
        let m = spec.edge_count();
        if m > budget.max_edges {
            return Err(OracleError::TooLarge {
                m,
                max: budget.max_edges,
            });
        }
        let n = spec.vertex_count();
        let ends: Vec<(usize, usize)> = (0..m).map(|i| spec.arc(i, Direction::Forward)).collect();
        let mut last_edge = vec![0usize; n];
        for (i, &(a, b)) in ends.iter().enumerate() {
            last_edge[a] = last_edge[a].max(i);
            last_edge[b] = last_edge[b].max(i);
        }
        let mut completes = vec![Vec::new(); m];
        for (v, &e) in last_edge.iter().enumerate() {
            completes[e].push(v);
        }
        let offset = (m * (m + 1) / 2) as i64;
        Ok(Self {
            n,
            ends,
            completes,
            prune,
            dirs: vec![Direction::Forward; m],
            labels: vec![0; m],
            used: vec![false; m + 1],
            sums: vec![0; n],
            taken: vec![false; 2 * offset as usize + 1],
            offset,
            nodes: 0,
            node_limit: budget.node_limit,
            deadline: budget.time_limit_hint.map(|d| Instant::now() + d),
            target: None,
        })
    }

    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|lim| self.nodes > lim) {
            return Err(OutOfBudget);
        }
        if self.nodes & 0xffff == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(OutOfBudget);
        }
        Ok(())
    }

    fn place(&mut self, e: usize, dir: Direction, label: Label, sign: i64) {
        let (lo, hi) = self.ends[e];
        let (tail, head) = match dir {
            Direction::Forward => (lo, hi),
            Direction::Backward => (hi, lo),
        };
        self.sums[head] += sign * label as i64;
        self.sums[tail] -= sign * label as i64;
    }

    fn all_distinct(&mut self) -> bool {
        let mut ok = true;
        let mut marked = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let slot = (self.sums[v] + self.offset) as usize;
            if self.taken[slot] {
                ok = false;
                break;
            }
            self.taken[slot] = true;
            marked.push(slot);
        }
        for slot in marked {
            self.taken[slot] = false;
        }
        ok
    }

    fn run<F>(&mut self, step: usize, visit: &mut F) -> Result<ControlFlow<()>, OutOfBudget>
    where
        F: FnMut(&[Direction], &[Label]) -> ControlFlow<()>,
    {
        let m = self.labels.len();
        if step == m {
            if !self.prune && !self.all_distinct() {
                return Ok(ControlFlow::Continue(()));
            }
            return Ok(visit(&self.dirs, &self.labels));
        }
        let dir_choices: &[Direction] = if step == 0 {
            &[Direction::Forward]
        } else {
            &[Direction::Forward, Direction::Backward]
        };
        for label in (1..=m as Label).rev() {
            if self.used[label as usize] {
                continue;
            }
            if let Some((_, tl)) = self.target {
                if tl[step] != label {
                    continue;
                }
            }
            for &dir in dir_choices {
                if let Some((td, _)) = self.target {
                    if td[step] != dir {
                        continue;
                    }
                }
                self.tick()?;
                self.used[label as usize] = true;
                self.dirs[step] = dir;
                self.labels[step] = label;
                self.place(step, dir, label, 1);

                let mut marked = 0;
                let mut ok = true;
                if self.prune {
                    for i in 0..self.completes[step].len() {
                        let v = self.completes[step][i];
                        let slot = (self.sums[v] + self.offset) as usize;
                        if self.taken[slot] {
                            ok = false;
                            break;
                        }
                        self.taken[slot] = true;
                        marked += 1;
                    }
                }
                let flow = if ok {
                    self.run(step + 1, visit)?
                } else {
                    ControlFlow::Continue(())
                };
                for i in 0..marked {
                    let v = self.completes[step][i];
                    self.taken[(self.sums[v] + self.offset) as usize] = false;
                }
                self.place(step, dir, label, -1);
                self.used[label as usize] = false;
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Exhaustive search for any antimagic labeled orientation of `spec`.
pub fn brute_force_antimagic(
    spec: &CaterpillarSpec,
    budget: &SearchBudget,
) -> Result<OracleOutcome, OracleError> {
    let mut search = Enumerator::new(spec, budget, true)?;
    let mut found = None;
    let result = search.run(0, &mut |dirs, labels| {
        found = Some(LabeledOrientation::new(dirs.to_vec(), labels.to_vec()));
        ControlFlow::Break(())
    });
    Ok(match (result, found) {
        (_, Some(lo)) => OracleOutcome::Found(lo),
        (Err(OutOfBudget), None) => OracleOutcome::BudgetExceeded,
        (Ok(_), None) => OracleOutcome::NotFound,
    })
}

/// Calls `visit` with every solution whose edge 0 points forward. With
/// `prune` off, ties are only detected once all edges are placed.
pub fn for_each_solution<F>(
    spec: &CaterpillarSpec,
    budget: &SearchBudget,
    prune: bool,
    mut visit: F,
) -> Result<SearchStats, OracleError>
where
    F: FnMut(&[Direction], &[Label]),
{
    let mut search = Enumerator::new(spec, budget, prune)?;
    let mut solutions = 0u64;
    let result = search.run(0, &mut |dirs, labels| {
        solutions += 1;
        visit(dirs, labels);
        ControlFlow::Continue(())
    });
    Ok(SearchStats {
        solutions,
        nodes: search.nodes,
        complete: result.is_ok(),
    })
}

/// Whether the enumeration reaches `lo` (or its global reversal, when edge 0
/// of `lo` points backward). The walk follows `lo`'s choices through the same
/// pruned search, so a `true` answer means no pruning rule cut it off.
pub fn contains_solution(
    spec: &CaterpillarSpec,
    lo: &LabeledOrientation,
    budget: &SearchBudget,
) -> Result<bool, OracleError> {
    if lo.len() != spec.edge_count() || !lo.is_complete() || lo.is_empty() {
        return Ok(false);
    }
    let lo = if lo.direction(0) == Direction::Backward {
        lo.reversed()
    } else {
        lo.clone()
    };
    let labels: Vec<Label> = lo.labels().iter().map(|l| l.expect("complete")).collect();
    let mut search = Enumerator::new(spec, budget, true)?;
    search.target = Some((lo.directions(), &labels));
    let mut hit = false;
    let _ = search.run(0, &mut |_, _| {
        hit = true;
        ControlFlow::Break(())
    });
    Ok(hit)
}

/// Bounds for [`enumerate_specs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecBounds {
    pub p_max: usize,
    pub k_max: usize,
    pub s_max: usize,
}

/// Nondecreasing sequences of length `len` over `1..=n`, lexicographically.
struct Multisets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Multisets {
    fn new(n: usize, len: usize) -> Self {
        Self {
            n,
            cur: (n >= 1 || len == 0).then(|| vec![1; len]),
        }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let out = cur.clone();
        if let Some(i) = cur.iter().rposition(|&x| x < self.n) {
            let mut next = cur;
            let v = next[i] + 1;
            for x in &mut next[i..] {
                *x = v;
            }
            self.cur = Some(next);
        }
        Some(out)
    }
}

/// Every instance with `2 <= p <= p_max`, `2 <= k <= k_max`, `1 <= s <= s_max`
/// and any attachment multiset, ordered by `(p, k, s, legs)`.
pub fn enumerate_specs(bounds: SpecBounds) -> impl Iterator<Item = CaterpillarSpec> {
    (2..=bounds.p_max).flat_map(move |p| {
        (2..=bounds.k_max).flat_map(move |k| {
            (1..=bounds.s_max).flat_map(move |s| {
                Multisets::new(p - 1, s).map(move |legs| {
                    CaterpillarSpec::new(p, k, legs).expect("enumerated spec is valid")
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_antimagic;
    use std::collections::BTreeSet;

    fn binom(n: usize, r: usize) -> usize {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn smallest_instance_found() {
        let spec = CaterpillarSpec::new(2, 2, vec![1]).unwrap();
        match brute_force_antimagic(&spec, &SearchBudget::default()).unwrap() {
            OracleOutcome::Found(lo) => assert_eq!(verify_antimagic(&spec, &lo), Ok(())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn too_large_rejected() {
        let spec = CaterpillarSpec::new(6, 3, vec![2, 2, 5]).unwrap();
        assert_eq!(
            brute_force_antimagic(&spec, &SearchBudget::default()),
            Err(OracleError::TooLarge { m: 15, max: 9 })
        );
        let budget = SearchBudget {
            max_edges: 20,
            ..Default::default()
        };
        assert_eq!(
            brute_force_antimagic(&spec, &budget),
            Err(OracleError::CapExceeded(20))
        );
    }

    #[test]
    fn node_limit_reported() {
        let spec = CaterpillarSpec::new(3, 2, vec![1, 2, 2]).unwrap();
        let budget = SearchBudget {
            max_edges: 9,
            node_limit: Some(2),
            time_limit_hint: None,
        };
        assert_eq!(
            brute_force_antimagic(&spec, &budget).unwrap(),
            OracleOutcome::BudgetExceeded
        );
    }

    #[test]
    fn enumeration_examples() {
        let specs: Vec<_> = enumerate_specs(SpecBounds {
            p_max: 2,
            k_max: 2,
            s_max: 1,
        })
        .collect();
        assert_eq!(specs, vec![CaterpillarSpec::new(2, 2, vec![1]).unwrap()]);
        let specs: Vec<_> = enumerate_specs(SpecBounds {
            p_max: 3,
            k_max: 2,
            s_max: 1,
        })
        .collect();
        assert_eq!(
            specs,
            vec![
                CaterpillarSpec::new(2, 2, vec![1]).unwrap(),
                CaterpillarSpec::new(3, 2, vec![1]).unwrap(),
                CaterpillarSpec::new(3, 2, vec![2]).unwrap(),
            ]
        );
        assert_eq!(Multisets::new(3, 2).count(), 6);
    }

    #[test]
    fn enumeration_counts_match_stars_and_bars() {
        let bounds = SpecBounds {
            p_max: 8,
            k_max: 5,
            s_max: 4,
        };
        let specs: Vec<_> = enumerate_specs(bounds).collect();
        let per_k: usize = (2..=8)
            .map(|p| (1..=4).map(|s| binom(p - 1 + s - 1, s)).sum::<usize>())
            .sum();
        assert_eq!(specs.len(), per_k * 4);
        let unique: BTreeSet<_> = specs.iter().collect();
        assert_eq!(unique.len(), specs.len());
    }

    #[test]
    fn membership_follows_reversal() {
        let spec = CaterpillarSpec::new(2, 2, vec![1]).unwrap();
        let OracleOutcome::Found(lo) =
            brute_force_antimagic(&spec, &SearchBudget::default()).unwrap()
        else {
            panic!()
        };
        let budget = SearchBudget::default();
        assert!(contains_solution(&spec, &lo, &budget).unwrap());
        assert!(contains_solution(&spec, &lo.reversed(), &budget).unwrap());
        // all arcs forward along a path-like tree ties the two ends of the spine
        let bad = LabeledOrientation::new(vec![Direction::Forward; 4], vec![1, 2, 3, 4]);
        assert_eq!(
            verify_antimagic(&spec, &bad).is_ok(),
            contains_solution(&spec, &bad, &budget).unwrap()
        );
    }
}
