//! Brute-force enumeration of the group ball by breadth-first search.
//!
//! Element identification here deliberately does not call the reduction
//! engine. Each element is represented by the complete set of its reduced
//! expressions (one replacement-closure class); a candidate word is matched
//! by walking its own closure: hitting a known reduced word identifies the
//! element, hitting a repeated letter pair identifies a drop to the ball two
//! levels down. The engine and the oracle therefore only agree if both
//! implement the rewriting theory correctly, which is the point.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::caps::Caps;
use crate::coxeter::matrix::{CoxLabel, CoxeterSystem, Gen};
use crate::coxeter::words::Word;
use crate::error::{Error, Result};

pub type ElementId = usize;

/// Ball of radius `radius` in the group, with one adjacency row per element.
#[derive(Debug, Clone)]
pub struct CayleyOracle {
    radius: usize,
    normal_forms: Vec<Word>,
    /// `adjacency[id][s]` is the element `id * s`, None when outside the ball.
    adjacency: Vec<Vec<Option<ElementId>>>,
    /// Element ids grouped by word length.
    levels: Vec<Vec<ElementId>>,
}

/// What a candidate word turned out to be.
enum Identified {
    Known(ElementId),
    Drop(Vec<Gen>),
    /// Reduced and previously unseen; carries the full closure.
    New(HashSet<Vec<Gen>>),
}

fn find_square(word: &[Gen]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).find(|&i| word[i] == word[i + 1])
}

/// Replacement neighbors, re-implemented locally so the oracle does not share
/// code paths with the engine it checks.
fn neighbors(system: &CoxeterSystem, word: &[Gen]) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    let n = word.len();
    for i in 0..n {
        let s = word[i];
        for t in system.generators() {
            if t == s {
                continue;
            }
            let m = match system.label(s, t) {
                CoxLabel::Finite(m) => m as usize,
                CoxLabel::Infinite => continue,
            };
            if i + m > n {
                continue;
            }
            let ok = (0..m).all(|k| word[i + k] == if k % 2 == 0 { s } else { t });
            if !ok {
                continue;
            }
            let mut next = word.to_vec();
            for k in 0..m {
                next[i + k] = if k % 2 == 0 { t } else { s };
            }
            out.push(next);
        }
    }
    out
}

/// Walks the closure of `word`; `known` maps every reduced word of every
/// element enumerated so far to its id.
fn identify(
    system: &CoxeterSystem,
    word: &[Gen],
    known: &HashMap<Vec<Gen>, ElementId>,
    caps: &Caps,
) -> Result<Identified> {
    if let Some(&id) = known.get(word) {
        return Ok(Identified::Known(id));
    }
    if let Some(pos) = find_square(word) {
        let mut dropped = word.to_vec();
        dropped.drain(pos..pos + 2);
        return Ok(Identified::Drop(dropped));
    }
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    seen.insert(word.to_vec());
    let mut queue: VecDeque<Vec<Gen>> = VecDeque::new();
    queue.push_back(word.to_vec());
    while let Some(current) = queue.pop_front() {
        for next in neighbors(system, &current) {
            if seen.contains(&next) {
                continue;
            }
            if let Some(&id) = known.get(&next) {
                return Ok(Identified::Known(id));
            }
            if let Some(pos) = find_square(&next) {
                let mut dropped = next;
                dropped.drain(pos..pos + 2);
                return Ok(Identified::Drop(dropped));
            }
            if seen.len() >= caps.max_ball {
                return Err(Error::CapExceeded(format!(
                    "oracle closure grew past {} words",
                    caps.max_ball
                )));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(Identified::New(seen))
}

impl CoxeterSystem {
    /// Enumerates the ball of the given radius. Errors when a cap is hit.
    pub fn cayley_oracle(&self, radius: usize, caps: &Caps) -> Result<CayleyOracle> {
        if radius > caps.max_radius {
            return Err(Error::CapExceeded(format!(
                "radius {radius} exceeds cap {}",
                caps.max_radius
            )));
        }
        let gens: Vec<Gen> = self.generators().collect();
        let mut normal_forms: Vec<Word> = vec![Word::empty()];
        let mut adjacency: Vec<Vec<Option<ElementId>>> = vec![vec![None; gens.len()]];
        let mut levels: Vec<Vec<ElementId>> = vec![vec![0]];
        let mut known: HashMap<Vec<Gen>, ElementId> = HashMap::new();
        known.insert(Vec::new(), 0);

        for level in 1..=radius {
            let mut created: Vec<ElementId> = Vec::new();
            let parents = levels[level - 1].clone();
            for &parent in &parents {
                for (gi, &s) in gens.iter().enumerate() {
                    let mut candidate = normal_forms[parent].letters().to_vec();
                    candidate.push(s);
                    match identify(self, &candidate, &known, caps)? {
                        Identified::Known(id) => {
                            adjacency[parent][gi] = Some(id);
                        }
                        Identified::Drop(dropped) => {
                            let id = *known.get(&dropped).ok_or_else(|| {
                                Error::Internal(format!(
                                    "dropped word {:?} missing two levels down",
                                    dropped
                                ))
                            })?;
                            adjacency[parent][gi] = Some(id);
                        }
                        Identified::New(closure) => {
                            if normal_forms.len() >= caps.max_ball {
                                return Err(Error::CapExceeded(format!(
                                    "ball grew past {} elements",
                                    caps.max_ball
                                )));
                            }
                            let id = normal_forms.len();
                            let normal = closure
                                .iter()
                                .min()
                                .cloned()
                                .expect("closure nonempty");
                            for w in closure {
                                known.insert(w, id);
                            }
                            normal_forms.push(Word::new(normal));
                            adjacency.push(vec![None; gens.len()]);
                            adjacency[parent][gi] = Some(id);
                            adjacency[id][gi] = Some(parent);
                            created.push(id);
                        }
                    }
                }
            }
            if created.is_empty() {
                levels.push(Vec::new());
                break;
            }
            levels.push(created);
        }

        // adjacency between same-or-lower levels may still be missing on the
        // lower endpoint's row; walk every pair once more to close it
        let total = normal_forms.len();
        for id in 0..total {
            for (gi, &s) in gens.iter().enumerate() {
                if adjacency[id][gi].is_some() {
                    continue;
                }
                let mut candidate = normal_forms[id].letters().to_vec();
                candidate.push(s);
                if candidate.len() > radius {
                    // may still drop back inside; identify decides
                    if let Identified::Drop(dropped) = identify(self, &candidate, &known, caps)? {
                        if let Some(&other) = known.get(&dropped) {
                            adjacency[id][gi] = Some(other);
                            continue;
                        }
                    }
                }
                if let Some(&other) = known.get(&candidate) {
                    adjacency[id][gi] = Some(other);
                    continue;
                }
                match identify(self, &candidate, &known, caps)? {
                    Identified::Known(other) => adjacency[id][gi] = Some(other),
                    Identified::Drop(dropped) => {
                        adjacency[id][gi] = known.get(&dropped).copied();
                    }
                    Identified::New(_) => {
                        // genuinely outside the ball
                    }
                }
            }
        }

        while levels.len() <= radius {
            levels.push(Vec::new());
        }
        Ok(CayleyOracle {
            radius,
            normal_forms,
            adjacency,
            levels,
        })
    }
}

impl CayleyOracle {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn element_count(&self) -> usize {
        self.normal_forms.len()
    }

    pub fn count_at(&self, length: usize) -> usize {
        self.levels.get(length).map_or(0, |l| l.len())
    }

    pub fn normal_form(&self, id: ElementId) -> &Word {
        &self.normal_forms[id]
    }

    pub fn length(&self, id: ElementId) -> usize {
        self.normal_forms[id].len()
    }

    pub fn neighbor(&self, id: ElementId, s: Gen) -> Option<ElementId> {
        self.adjacency[id][usize::from(s)]
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        0..self.normal_forms.len()
    }

    /// Follows the word letter by letter from the identity. Total for words
    /// no longer than the radius, since prefixes can never leave the ball.
    pub fn identify_word(&self, letters: &[Gen]) -> Option<ElementId> {
        let mut id = 0;
        for &s in letters {
            id = self.neighbor(id, s)?;
        }
        Some(id)
    }

    /// True when the ball is the whole group: the outermost level is empty or
    /// every boundary product folds back inside.
    pub fn exhausted(&self) -> bool {
        if self.levels[self.radius].is_empty() {
            return true;
        }
        self.levels[self.radius]
            .iter()
            .all(|&id| self.adjacency[id].iter().all(|n| n.is_some()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn radius_zero_is_identity_only() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 3], vec![3, 1]]).unwrap();
        let oracle = sys.cayley_oracle(0, &caps()).unwrap();
        assert_eq!(oracle.element_count(), 1);
    }

    #[test]
    fn infinite_dihedral_ball_radius_two() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]]).unwrap();
        let oracle = sys.cayley_oracle(2, &caps()).unwrap();
        assert_eq!(oracle.element_count(), 5);
        assert_eq!(oracle.count_at(2), 2);
        assert!(!oracle.exhausted());
    }

    #[test]
    fn one_infinite_label_rank3_radius_two() {
        let sys = CoxeterSystem::from_raw(&[
            vec![1, 0, 3],
            vec![0, 1, 3],
            vec![3, 3, 1],
        ])
        .unwrap();
        let oracle = sys.cayley_oracle(2, &caps()).unwrap();
        assert_eq!(oracle.element_count(), 10);
    }

    #[test]
    fn finite_dihedral_exhausts() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 3], vec![3, 1]]).unwrap();
        let oracle = sys.cayley_oracle(4, &caps()).unwrap();
        assert_eq!(oracle.element_count(), 6);
        assert!(oracle.exhausted());
        // the longest element has both reduced words pointing back down
        let top: Vec<_> = oracle
            .ids()
            .filter(|&id| oracle.length(id) == 3)
            .collect();
        assert_eq!(top.len(), 1);
    }

    #[test]
    fn identify_word_walks_adjacency() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 3], vec![3, 1]]).unwrap();
        let oracle = sys.cayley_oracle(3, &caps()).unwrap();
        let id = oracle.identify_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(oracle.normal_form(id).letters(), &[1, 0]);
    }

    #[test]
    fn radius_cap_is_enforced() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(sys.cayley_oracle(13, &caps()).is_err());
    }
}
