//! Detection of the two diagram shapes the stabilizer machinery needs: a
//! split S = J ⊔ K with K pairwise-infinite and J∪{s} spherical (shape A),
//! or a partition into spherical parts with infinite labels across parts
//! (shape B).

use std::fmt;

use itertools::Itertools;

use crate::coxeter::matrix::{format_genset, CoxLabel, CoxeterSystem, Gen, GenSet};
use crate::error::{Error, Result};

/// Rank-3 case tag: how many of the three labels are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank3Case {
    NoInfinity,
    OneInfinity,
    TwoInfinity,
    AllInfinity,
}

impl Rank3Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Rank3Case::NoInfinity => "none",
            Rank3Case::OneInfinity => "one-infinity",
            Rank3Case::TwoInfinity => "two-infinity",
            Rank3Case::AllInfinity => "all-infinity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionVerdict {
    /// S = J ⊔ K, |K| >= 2, m = ∞ inside K, J ∪ {s} spherical for s ∈ K.
    ConditionA { j: GenSet, k: GenSet },
    /// S partitioned into >= 2 spherical parts, m = ∞ across parts.
    ConditionB { parts: Vec<GenSet> },
    /// Every label finite.
    TwoSpherical,
    Unknown,
}

impl fmt::Display for ConditionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionVerdict::ConditionA { j, k } => {
                write!(f, "A(J={}, K={})", format_genset(j), format_genset(k))
            }
            ConditionVerdict::ConditionB { parts } => {
                let rendered: Vec<String> = parts.iter().map(format_genset).collect();
                write!(f, "B({})", rendered.join(", "))
            }
            ConditionVerdict::TwoSpherical => write!(f, "TwoSpherical"),
            ConditionVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: ConditionVerdict,
    /// Present exactly for rank-3 systems.
    pub rank3_case: Option<Rank3Case>,
}

fn infinite(system: &CoxeterSystem, s: Gen, t: Gen) -> bool {
    system.label(s, t) == CoxLabel::Infinite
}

fn spherical(system: &CoxeterSystem, set: &GenSet) -> bool {
    system
        .spherical_order(set)
        .expect("subset of S is in range")
        .is_spherical
}

impl CoxeterSystem {
    /// Classifies the system. The shape-A search prefers the largest K and
    /// breaks ties lexicographically; K never equals all of S, since in that
    /// case every part of the shape-B singleton partition says the same
    /// thing with J empty.
    pub fn classify_condition(&self) -> Classification {
        let rank = self.rank();
        let gens: Vec<Gen> = self.generators().collect();

        let mut verdict = None;
        // shape A: K runs over subsets of size rank-1 down to 2, lex order
        'search: for size in (2..rank).rev() {
            for combo in gens.iter().copied().combinations(size) {
                let k: GenSet = combo.iter().copied().collect();
                if !combo
                    .iter()
                    .tuple_combinations()
                    .all(|(&s, &t)| infinite(self, s, t))
                {
                    continue;
                }
                let j: GenSet = gens.iter().copied().filter(|g| !k.contains(g)).collect();
                let all_spherical = k.iter().all(|&s| {
                    let mut js = j.clone();
                    js.insert(s);
                    spherical(self, &js)
                });
                if all_spherical {
                    verdict = Some(ConditionVerdict::ConditionA { j, k });
                    break 'search;
                }
            }
        }

        // shape B: connected components of the finite-label graph; labels
        // across distinct components are infinite by construction
        if verdict.is_none() {
            let parts = self.finite_label_components();
            if parts.len() >= 2 && parts.iter().all(|p| spherical(self, p)) {
                verdict = Some(ConditionVerdict::ConditionB { parts });
            }
        }

        let has_infinity = gens
            .iter()
            .tuple_combinations()
            .any(|(&s, &t)| infinite(self, s, t));
        let verdict = verdict.unwrap_or(if has_infinity {
            ConditionVerdict::Unknown
        } else {
            ConditionVerdict::TwoSpherical
        });

        let rank3_case = (rank == 3).then(|| {
            let count = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .filter(|&&(s, t)| infinite(self, s, t))
                .count();
            match count {
                0 => Rank3Case::NoInfinity,
                1 => Rank3Case::OneInfinity,
                2 => Rank3Case::TwoInfinity,
                _ => Rank3Case::AllInfinity,
            }
        });

        Classification { verdict, rank3_case }
    }

    /// Connected components of the graph whose edges are the finite labels,
    /// each as a sorted set, ordered by smallest member.
    pub fn finite_label_components(&self) -> Vec<GenSet> {
        let gens: Vec<Gen> = self.generators().collect();
        let mut assigned = vec![false; gens.len()];
        let mut parts = Vec::new();
        for start in 0..gens.len() {
            if assigned[start] {
                continue;
            }
            let mut part = GenSet::new();
            let mut stack = vec![start];
            assigned[start] = true;
            while let Some(u) = stack.pop() {
                part.insert(gens[u]);
                for v in 0..gens.len() {
                    if !assigned[v] && u != v && !infinite(self, gens[u], gens[v]) {
                        assigned[v] = true;
                        stack.push(v);
                    }
                }
            }
            parts.push(part);
        }
        parts
    }

    /// Re-checks a classification predicate by predicate, independently of
    /// how it was found.
    pub fn verify_classification(&self, classification: &Classification) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidWitness(msg));
        match &classification.verdict {
            ConditionVerdict::ConditionA { j, k } => {
                let mut union = j.clone();
                union.extend(k.iter().copied());
                if union != self.full_set() || !j.is_disjoint(k) {
                    return bad(format!(
                        "J={} and K={} do not partition S",
                        format_genset(j),
                        format_genset(k)
                    ));
                }
                if k.len() < 2 {
                    return bad(format!("K={} has fewer than 2 members", format_genset(k)));
                }
                for (&s, &t) in k.iter().tuple_combinations() {
                    if !infinite(self, s, t) {
                        return bad(format!("m({s},{t}) is finite inside K"));
                    }
                }
                for &s in k {
                    let mut js = j.clone();
                    js.insert(s);
                    if !spherical(self, &js) {
                        return bad(format!("{} is not spherical", format_genset(&js)));
                    }
                }
                Ok(())
            }
            ConditionVerdict::ConditionB { parts } => {
                if parts.len() < 2 {
                    return bad("fewer than 2 parts".into());
                }
                let mut union = GenSet::new();
                let mut total = 0;
                for p in parts {
                    total += p.len();
                    union.extend(p.iter().copied());
                }
                if union != self.full_set() || total != self.rank() {
                    return bad("parts do not partition S".into());
                }
                for p in parts {
                    if !spherical(self, p) {
                        return bad(format!("part {} is not spherical", format_genset(p)));
                    }
                }
                for (a, b) in parts.iter().tuple_combinations() {
                    for &s in a {
                        for &t in b {
                            if !infinite(self, s, t) {
                                return bad(format!("m({s},{t}) is finite across parts"));
                            }
                        }
                    }
                }
                Ok(())
            }
            ConditionVerdict::TwoSpherical => {
                for (&s, &t) in self.full_set().iter().tuple_combinations() {
                    if infinite(self, s, t) {
                        return bad(format!("m({s},{t}) = inf in a two-spherical claim"));
                    }
                }
                Ok(())
            }
            ConditionVerdict::Unknown => Ok(()),
        }
    }
}
