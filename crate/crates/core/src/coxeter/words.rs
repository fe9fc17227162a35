//! Word calculus via elementary rewriting: deletion of a repeated letter pair
//! and replacement of an alternating run of length m(s,t) by the dual run.
//! A word is reduced iff no sequence of these moves shortens it, and all
//! reduced expressions of one element are connected by the replacement moves
//! alone. That gives a complete (if exponential) decision procedure for the
//! word problem, which is exactly what the desk-scale checks need.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::caps::Caps;
use crate::coxeter::matrix::{CoxLabel, CoxeterSystem, Gen, GenSet};
use crate::error::{Error, Result};

/// A word in the generators, not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters actually used, as a set.
    pub fn support(&self) -> GenSet {
        self.0.iter().copied().collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// A group element, stored as its canonical reduced word: shortest length,
/// ties broken lexicographically by generator index. Only constructible
/// through `CoxeterSystem::reduce` and friends, so the invariant holds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupElement {
    word: Word,
}

impl GroupElement {
    pub(crate) fn from_normal_form(word: Word) -> Self {
        GroupElement { word }
    }

    pub fn identity() -> Self {
        GroupElement { word: Word::empty() }
    }

    /// A single generator; one letter is always its own normal form.
    pub fn generator(s: Gen) -> Self {
        GroupElement {
            word: Word::new(vec![s]),
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn support(&self) -> GenSet {
        self.word.support()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// Outcome of exploring the replacement-closure of a word.
enum ClosureScan {
    /// Some word in the closure contains a repeated adjacent letter at `pos`.
    Square { word: Vec<Gen>, pos: usize },
    /// Closure exhausted without finding a deletion: the word is reduced and
    /// the closure is its complete set of reduced expressions.
    Closed(HashSet<Vec<Gen>>),
}

/// Pushes every single-replacement neighbor of `word` into `out`: wherever an
/// alternating (s,t,s,...) run of length m(s,t) starts, swap it for the
/// (t,s,t,...) run.
pub(crate) fn replacement_neighbors(
    system: &CoxeterSystem,
    word: &[Gen],
    out: &mut Vec<Vec<Gen>>,
) {
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
            if m < 2 || i + m > n {
                continue;
            }
            let mut alternates = true;
            for k in 0..m {
                let expected = if k % 2 == 0 { s } else { t };
                if word[i + k] != expected {
                    alternates = false;
                    break;
                }
            }
            if !alternates {
                continue;
            }
            let mut next = word.to_vec();
            for k in 0..m {
                next[i + k] = if k % 2 == 0 { t } else { s };
            }
            out.push(next);
        }
    }
}

fn find_square(word: &[Gen]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).find(|&i| word[i] == word[i + 1])
}

/// Breadth-first closure under replacement moves, stopping early when any
/// visited word admits a deletion.
fn scan_closure(system: &CoxeterSystem, start: &[Gen], caps: &Caps) -> Result<ClosureScan> {
    if let Some(pos) = find_square(start) {
        return Ok(ClosureScan::Square { word: start.to_vec(), pos });
    }
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    let mut queue: VecDeque<Vec<Gen>> = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    let mut buffer = Vec::new();
    while let Some(word) = queue.pop_front() {
        buffer.clear();
        replacement_neighbors(system, &word, &mut buffer);
        for next in buffer.drain(..) {
            if seen.contains(&next) {
                continue;
            }
            if let Some(pos) = find_square(&next) {
                return Ok(ClosureScan::Square { word: next, pos });
            }
            if seen.len() >= caps.max_ball {
                return Err(Error::CapExceeded(format!(
                    "rewriting closure grew past {} words",
                    caps.max_ball
                )));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(ClosureScan::Closed(seen))
}

impl CoxeterSystem {
    /// Canonical form of an arbitrary word: repeatedly close under
    /// replacements, delete the first repeated pair found, and finish with
    /// the lexicographically least word of the final closure.
    pub fn reduce_capped(&self, word: &Word, caps: &Caps) -> Result<GroupElement> {
        for &g in word.letters() {
            self.check_gen(g)?;
        }
        let mut current = word.letters().to_vec();
        loop {
            match scan_closure(self, &current, caps)? {
                ClosureScan::Square { mut word, pos } => {
                    word.drain(pos..pos + 2);
                    current = word;
                }
                ClosureScan::Closed(closure) => {
                    let normal = closure
                        .into_iter()
                        .min()
                        .expect("closure contains the input word");
                    return Ok(GroupElement::from_normal_form(Word::new(normal)));
                }
            }
        }
    }

    /// `reduce_capped` with the default caps. Words at desk scale never hit
    /// them.
    pub fn reduce(&self, word: &Word) -> GroupElement {
        self.reduce_capped(word, &Caps::default())
            .expect("default caps suffice for desk-scale words")
    }

    /// Every reduced expression of `g`, i.e. the replacement closure of its
    /// normal form.
    pub fn reduced_expressions(&self, g: &GroupElement, caps: &Caps) -> Result<Vec<Word>> {
        match scan_closure(self, g.word().letters(), caps)? {
            ClosureScan::Square { .. } => Err(Error::Internal(format!(
                "normal form {} admits a deletion",
                g
            ))),
            ClosureScan::Closed(set) => {
                let mut words: Vec<Word> = set.into_iter().map(Word::new).collect();
                words.sort();
                Ok(words)
            }
        }
    }

    pub fn words_equal(&self, a: &Word, b: &Word) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut letters = a.word().letters().to_vec();
        letters.extend_from_slice(b.word().letters());
        self.reduce(&Word::new(letters))
    }

    pub fn multiply_capped(
        &self,
        a: &GroupElement,
        b: &GroupElement,
        caps: &Caps,
    ) -> Result<GroupElement> {
        let mut letters = a.word().letters().to_vec();
        letters.extend_from_slice(b.word().letters());
        self.reduce_capped(&Word::new(letters), caps)
    }

    pub fn right_multiply(&self, a: &GroupElement, s: Gen) -> GroupElement {
        let mut letters = a.word().letters().to_vec();
        letters.push(s);
        self.reduce(&Word::new(letters))
    }

    pub fn right_multiply_capped(
        &self,
        a: &GroupElement,
        s: Gen,
        caps: &Caps,
    ) -> Result<GroupElement> {
        let mut letters = a.word().letters().to_vec();
        letters.push(s);
        self.reduce_capped(&Word::new(letters), caps)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let mut letters = a.word().letters().to_vec();
        letters.reverse();
        self.reduce(&Word::new(letters))
    }

    pub fn element_from_letters(&self, letters: &[Gen]) -> GroupElement {
        self.reduce(&Word::new(letters.to_vec()))
    }

    /// Standard-parabolic membership: the canonical reduced word of an
    /// element of W_I only uses letters of I. Tested against the oracle.
    pub fn in_parabolic(&self, g: &GroupElement, set: &GenSet) -> bool {
        g.word().letters().iter().all(|s| set.contains(s))
    }

    /// Elements of the standard parabolic on `letters` up to length
    /// `max_len`, or all of them when `max_len` is None (the caller must
    /// know the parabolic is finite; the ball cap backstops mistakes).
    /// Sorted by length, then lexicographically.
    pub fn parabolic_ball(
        &self,
        letters: &GenSet,
        max_len: Option<usize>,
        caps: &Caps,
    ) -> Result<Vec<GroupElement>> {
        for &s in letters {
            self.check_gen(s)?;
        }
        let mut ball = vec![GroupElement::identity()];
        let mut seen: HashSet<GroupElement> = ball.iter().cloned().collect();
        let mut frontier = ball.clone();
        let mut level = 0;
        while !frontier.is_empty() && max_len.map_or(true, |cap| level < cap) {
            let mut next = Vec::new();
            for g in &frontier {
                for &s in letters {
                    let product = self.right_multiply_capped(g, s, caps)?;
                    if product.len() > g.len() && seen.insert(product.clone()) {
                        next.push(product);
                    }
                }
            }
            ball.extend(next.iter().cloned());
            if ball.len() > caps.max_ball {
                return Err(Error::CapExceeded(format!(
                    "parabolic ball grew past {} elements",
                    caps.max_ball
                )));
            }
            frontier = next;
            level += 1;
        }
        ball.sort_by(|a, b| (a.len(), a.word()).cmp(&(b.len(), b.word())));
        Ok(ball)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(m: u64) -> CoxeterSystem {
        CoxeterSystem::from_raw(&[vec![1, m], vec![m, 1]]).unwrap()
    }

    #[test]
    fn deletes_square() {
        let sys = dihedral(3);
        let g = sys.reduce(&Word::new(vec![0, 0]));
        assert!(g.is_identity());
    }

    #[test]
    fn braid_then_delete() {
        // with m(s,t)=3 the word stst rewrites to ts
        let sys = dihedral(3);
        let g = sys.reduce(&Word::new(vec![0, 1, 0, 1]));
        assert_eq!(g.word().letters(), &[1, 0]);
    }

    #[test]
    fn infinite_label_leaves_alternating_word_alone() {
        let sys = dihedral(0);
        let g = sys.reduce(&Word::new(vec![0, 1, 0, 1]));
        assert_eq!(g.word().letters(), &[0, 1, 0, 1]);
    }

    #[test]
    fn normal_form_prefers_lex_least() {
        // in the commuting case both orders are reduced; 0.1 wins over 1.0
        let sys = dihedral(2);
        let g = sys.reduce(&Word::new(vec![1, 0]));
        assert_eq!(g.word().letters(), &[0, 1]);
    }

    #[test]
    fn words_equal_examples() {
        let sys3 = dihedral(3);
        assert!(sys3.words_equal(&Word::new(vec![0, 1, 0]), &Word::new(vec![1, 0, 1])));
        let sys_inf = dihedral(0);
        assert!(!sys_inf.words_equal(&Word::new(vec![0, 1]), &Word::new(vec![1, 0])));
    }

    #[test]
    fn multiply_cancels_inverse_pair() {
        for m in [0u64, 2, 3, 4] {
            let sys = dihedral(m);
            let a = sys.element_from_letters(&[0, 1]);
            let b = sys.element_from_letters(&[1, 0]);
            assert!(sys.multiply(&a, &b).is_identity(), "m = {m}");
        }
    }

    #[test]
    fn inverse_reverses() {
        let sys = CoxeterSystem::from_raw(&[
            vec![1, 0, 3],
            vec![0, 1, 3],
            vec![3, 3, 1],
        ])
        .unwrap();
        let g = sys.element_from_letters(&[0, 1, 2, 0]);
        let inv = sys.inverse(&g);
        assert!(sys.multiply(&g, &inv).is_identity());
        assert!(sys.multiply(&inv, &g).is_identity());
    }

    #[test]
    fn reduced_expressions_of_longest_dihedral_element() {
        let sys = dihedral(3);
        let g = sys.element_from_letters(&[0, 1, 0]);
        let words = sys.reduced_expressions(&g, &Caps::default()).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0].letters(), &[0, 1, 0]);
        assert_eq!(words[1].letters(), &[1, 0, 1]);
    }
}
