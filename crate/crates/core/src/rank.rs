//! Exact rank (minimum generating-set size) by exhaustive subset search.
//!
//! In a finite monoid a product is invertible only if every factor is, so
//! the invertible members of any generating set generate the whole group of
//! units `U`. Once `U` is available, a non-unit generator `a` may be swapped
//! for any `u a v` with `u, v` in `U` without changing what is generated. The
//! default search therefore fixes one minimum generating set of `U` and then
//! chooses non-unit generators among representatives of the double cosets
//! `U a U`. Both reductions are exact.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::monoid::TransformationMonoid;
use crate::transform::Transformation;

pub const DEFAULT_RANK_DEADLINE: Duration = Duration::from_secs(600);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RankOutcome {
    /// `rank` is the minimum; `witness` generates the target.
    Exact {
        rank: usize,
        witness: Vec<Transformation>,
    },
    /// No generating subset of size at most `searched_up_to` exists among the
    /// candidates searched, or the deadline cut the search short.
    Unknown {
        searched_up_to: usize,
        timed_out: bool,
    },
}

impl RankOutcome {
    pub fn rank(&self) -> Option<usize> {
        match self {
            RankOutcome::Exact { rank, .. } => Some(*rank),
            RankOutcome::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RankOptions {
    pub max_subset_size: usize,
    /// Restrict generators to this pool instead of the whole target.
    pub candidate_pool: Option<Vec<Transformation>>,
    pub deadline: Option<Duration>,
}

impl RankOptions {
    pub fn new(max_subset_size: usize) -> Self {
        Self {
            max_subset_size,
            candidate_pool: None,
            deadline: Some(DEFAULT_RANK_DEADLINE),
        }
    }
}

/// Smallest `k <= max_subset_size` such that some `k`-subset of the
/// candidates generates `target`.
pub fn rank_exact(
    target: &TransformationMonoid,
    max_subset_size: usize,
    candidate_pool: Option<&[Transformation]>,
) -> RankOutcome {
    let options = RankOptions {
        candidate_pool: candidate_pool.map(<[_]>::to_vec),
        ..RankOptions::new(max_subset_size)
    };
    rank_with_options(target, &options)
}

pub fn rank_with_options(target: &TransformationMonoid, options: &RankOptions) -> RankOutcome {
    let search = Search::new(target, options.deadline);
    match &options.candidate_pool {
        None => search.reduced(options.max_subset_size),
        Some(pool) => search.plain(pool, options.max_subset_size),
    }
}

struct Search<'a> {
    target: &'a TransformationMonoid,
    units: Vec<usize>,
    started: Instant,
    deadline: Option<Duration>,
}

/// Right multiplication by one element, as a map on element indices.
type RightAction = Vec<usize>;

enum Step {
    Found(Vec<usize>),
    Exhausted,
    TimedOut,
}

impl<'a> Search<'a> {
    fn new(target: &'a TransformationMonoid, deadline: Option<Duration>) -> Self {
        Self {
            target,
            units: target.unit_indices(),
            started: Instant::now(),
            deadline,
        }
    }

    fn timed_out(&self) -> bool {
        self.deadline.is_some_and(|d| self.started.elapsed() > d)
    }

    fn action(&self, element: usize) -> RightAction {
        let g = &self.target.elements()[element];
        self.target
            .elements()
            .iter()
            .map(|e| {
                self.target
                    .index_of(&e.then(g))
                    .expect("candidates are members of the target")
            })
            .collect()
    }

    /// Size of the submonoid generated by the given right actions.
    fn generated_size(&self, actions: &[&RightAction], identity: usize, stop_at: usize) -> usize {
        let mut seen = vec![false; self.target.len()];
        let mut queue = vec![identity];
        seen[identity] = true;
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head];
            head += 1;
            for action in actions {
                let next = action[current];
                if !seen[next] {
                    seen[next] = true;
                    queue.push(next);
                    if queue.len() >= stop_at {
                        return queue.len();
                    }
                }
            }
        }
        queue.len()
    }

    fn identity_index(&self) -> usize {
        let id = Transformation::identity(self.target.degree()).expect("valid degree");
        self.target.index_of(&id).expect("monoids contain the identity")
    }

    /// First `k`-subset of `pool` (by position) accepted by `accept`.
    fn first_subset(
        &self,
        pool: &[usize],
        k: usize,
        mut accept: impl FnMut(&[usize]) -> bool,
    ) -> Step {
        let mut positions: Vec<usize> = (0..k).collect();
        if k > pool.len() {
            return Step::Exhausted;
        }
        let mut checked = 0u64;
        loop {
            let subset: Vec<usize> = positions.iter().map(|&p| pool[p]).collect();
            if accept(&subset) {
                return Step::Found(subset);
            }
            checked += 1;
            if checked.is_multiple_of(256) && self.timed_out() {
                return Step::TimedOut;
            }
            if !next_combination(&mut positions, pool.len()) {
                return Step::Exhausted;
            }
        }
    }

    fn reduced(&self, max_k: usize) -> RankOutcome {
        let identity = self.identity_index();
        let unit_pool: Vec<usize> = self.units.iter().copied().filter(|&u| u != identity).collect();
        let unit_actions: Vec<RightAction> = (0..self.target.len())
            .map(|i| if self.units.contains(&i) { self.action(i) } else { Vec::new() })
            .collect();

        // minimum generating set of the group of units
        let mut unit_gens = None;
        for k in 0..=max_k.min(unit_pool.len()) {
            let step = self.first_subset(&unit_pool, k, |subset| {
                let acts: Vec<&RightAction> = subset.iter().map(|&i| &unit_actions[i]).collect();
                self.generated_size(&acts, identity, usize::MAX) == self.units.len()
            });
            match step {
                Step::Found(s) => {
                    unit_gens = Some(s);
                    break;
                }
                Step::Exhausted => continue,
                Step::TimedOut => {
                    return RankOutcome::Unknown {
                        searched_up_to: k.saturating_sub(1),
                        timed_out: true,
                    }
                }
            }
        }
        let Some(unit_gens) = unit_gens else {
            return RankOutcome::Unknown {
                searched_up_to: max_k,
                timed_out: false,
            };
        };

        let reps = self.double_coset_representatives(&unit_actions);
        let rep_actions: Vec<RightAction> = reps.iter().map(|&r| self.action(r)).collect();
        let base: Vec<&RightAction> = unit_gens.iter().map(|&u| &unit_actions[u]).collect();
        let positions: Vec<usize> = (0..reps.len()).collect();
        let total = self.target.len();

        for extra in 0..=max_k.saturating_sub(unit_gens.len()) {
            let k = unit_gens.len() + extra;
            let step = self.first_subset(&positions, extra, |subset| {
                let mut acts = base.clone();
                acts.extend(subset.iter().map(|&p| &rep_actions[p]));
                self.generated_size(&acts, identity, total) == total
            });
            match step {
                Step::Found(subset) => {
                    let mut witness: Vec<usize> = unit_gens.clone();
                    witness.extend(subset.iter().map(|&p| reps[p]));
                    return self.exact(k, &witness);
                }
                Step::Exhausted => {}
                Step::TimedOut => {
                    return RankOutcome::Unknown {
                        searched_up_to: k.saturating_sub(1),
                        timed_out: true,
                    }
                }
            }
        }
        RankOutcome::Unknown {
            searched_up_to: max_k,
            timed_out: false,
        }
    }

    /// One representative (smallest index) of each double coset `U a U` of a non-unit `a`.
    fn double_coset_representatives(&self, unit_actions: &[RightAction]) -> Vec<usize> {
        let n = self.target.len();
        let mut assigned = vec![false; n];
        for &u in &self.units {
            assigned[u] = true;
        }
        let mut reps = Vec::new();
        for a in 0..n {
            if assigned[a] {
                continue;
            }
            reps.push(a);
            let mut stack = vec![a];
            assigned[a] = true;
            while let Some(x) = stack.pop() {
                let xe = &self.target.elements()[x];
                for &u in &self.units {
                    // right multiplication by a unit
                    let right = unit_actions[u][x];
                    // left multiplication by a unit
                    let left = self
                        .target
                        .index_of(&self.target.elements()[u].then(xe))
                        .expect("closed under products");
                    for y in [right, left] {
                        if !assigned[y] {
                            assigned[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        reps
    }

    fn plain(&self, pool: &[Transformation], max_k: usize) -> RankOutcome {
        let identity = self.identity_index();
        let mut indices: Vec<usize> = pool
            .iter()
            .filter_map(|t| self.target.index_of(t))
            .filter(|&i| i != identity)
            .collect();
        indices.sort_unstable();
        indices.dedup();
        let actions: Vec<RightAction> = indices.iter().map(|&i| self.action(i)).collect();
        let unit_count = self.units.len();
        let total = self.target.len();
        let positions: Vec<usize> = (0..indices.len()).collect();

        for k in 0..=max_k {
            let step = self.first_subset(&positions, k, |subset| {
                // skip subsets whose invertible members generate a proper subgroup
                let unit_acts: Vec<&RightAction> = subset
                    .iter()
                    .filter(|&&p| self.target.elements()[indices[p]].is_permutation())
                    .map(|&p| &actions[p])
                    .collect();
                if self.generated_size(&unit_acts, identity, usize::MAX) != unit_count {
                    return false;
                }
                let acts: Vec<&RightAction> = subset.iter().map(|&p| &actions[p]).collect();
                self.generated_size(&acts, identity, total) == total
            });
            match step {
                Step::Found(subset) => {
                    let witness: Vec<usize> = subset.iter().map(|&p| indices[p]).collect();
                    return self.exact(k, &witness);
                }
                Step::Exhausted => {}
                Step::TimedOut => {
                    return RankOutcome::Unknown {
                        searched_up_to: k.saturating_sub(1),
                        timed_out: true,
                    }
                }
            }
        }
        RankOutcome::Unknown {
            searched_up_to: max_k,
            timed_out: false,
        }
    }

    fn exact(&self, rank: usize, witness: &[usize]) -> RankOutcome {
        RankOutcome::Exact {
            rank,
            witness: witness
                .iter()
                .map(|&i| self.target.elements()[i].clone())
                .collect(),
        }
    }
}

/// Advances `positions` to the next `k`-combination of `0..n` in
/// lexicographic order; returns false after the last one.
fn next_combination(positions: &mut [usize], n: usize) -> bool {
    let k = positions.len();
    for i in (0..k).rev() {
        if positions[i] < n - k + i {
            positions[i] += 1;
            for j in i + 1..k {
                positions[j] = positions[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_class, EndoClass};
    use crate::monoid::{generate, is_generating_set};

    #[test]
    fn combinations_are_enumerated_in_order() {
        let mut p = vec![0, 1];
        let mut seen = vec![p.clone()];
        while next_combination(&mut p, 4) {
            seen.push(p.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn trivial_monoid_has_rank_zero() {
        let m = enumerate_class(1, EndoClass::End).unwrap();
        assert_eq!(rank_exact(&m, 1, None).rank(), Some(0));
        let id = vec![("i".into(), Transformation::identity(3).unwrap())];
        let m = generate(&id).unwrap();
        assert_eq!(rank_exact(&m, 1, None).rank(), Some(0));
    }

    #[test]
    fn small_star_ranks() {
        let end3 = enumerate_class(3, EndoClass::End).unwrap();
        assert_eq!(rank_exact(&end3, 3, None).rank(), Some(2));
        let end4 = enumerate_class(4, EndoClass::End).unwrap();
        let outcome = rank_exact(&end4, 4, None);
        assert_eq!(outcome.rank(), Some(4));
        if let RankOutcome::Exact { witness, .. } = outcome {
            assert!(is_generating_set(&end4, &witness).unwrap());
        }
        assert_eq!(
            rank_exact(&end4, 2, None),
            RankOutcome::Unknown {
                searched_up_to: 2,
                timed_out: false
            }
        );
    }

    #[test]
    fn reduced_and_plain_searches_agree() {
        for (n, class) in [
            (3, EndoClass::End),
            (3, EndoClass::StrongWeakEnd),
            (3, EndoClass::WeakEnd),
            (4, EndoClass::End),
        ] {
            let m = enumerate_class(n, class).unwrap();
            let reduced = rank_exact(&m, 4, None).rank();
            let plain = rank_exact(&m, 4, Some(m.elements())).rank();
            assert_eq!(reduced, plain, "n={n} class={class}");
        }
    }

    #[test]
    fn restricted_pool_can_be_insufficient() {
        let end4 = enumerate_class(4, EndoClass::End).unwrap();
        let units: Vec<_> = end4
            .elements()
            .iter()
            .filter(|e| e.is_permutation())
            .cloned()
            .collect();
        assert!(rank_exact(&end4, 6, Some(&units)).rank().is_none());
    }

    #[test]
    fn zero_deadline_reports_timeout_or_answers() {
        let wend4 = enumerate_class(4, EndoClass::WeakEnd).unwrap();
        let options = RankOptions {
            max_subset_size: 5,
            candidate_pool: Some(wend4.elements().to_vec()),
            deadline: Some(Duration::ZERO),
        };
        match rank_with_options(&wend4, &options) {
            RankOutcome::Unknown { timed_out, .. } => assert!(timed_out),
            RankOutcome::Exact { rank, .. } => assert_eq!(rank, 5),
        }
    }
}
