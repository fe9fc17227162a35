//! Finiteness and order of standard parabolic subgroups, decided by matching
//! connected diagram components against the finite-type catalogue.

use std::fmt;

use crate::coxeter::matrix::{CoxLabel, CoxeterSystem, Gen, GenSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl GroupOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, GroupOrder::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Verdict on one generator subset: whether the parabolic it generates is
/// finite, and its order when it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalReport {
    pub subset: GenSet,
    pub is_spherical: bool,
    pub order: GroupOrder,
}

fn factorial(n: u64) -> u64 {
    (2..=n).product()
}

/// Order of the component on the vertex list `verts` (connected in the
/// diagram restricted to labels >= 3), or Infinite when it is not of finite
/// type.
fn component_order(system: &CoxeterSystem, verts: &[Gen]) -> GroupOrder {
    let n = verts.len();
    if n == 1 {
        return GroupOrder::Finite(2);
    }
    // any infinite label kills finiteness immediately
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match system.label(verts[i], verts[j]) {
                CoxLabel::Infinite => return GroupOrder::Infinite,
                CoxLabel::Finite(m) if m >= 3 => edges.push((i, j, m)),
                CoxLabel::Finite(_) => {}
            }
        }
    }
    if n == 2 {
        let m = u64::from(edges[0].2);
        return GroupOrder::Finite(2 * m);
    }
    // a finite-type diagram is a tree; the component is connected, so a
    // surplus edge means a cycle
    if edges.len() != n - 1 {
        return GroupOrder::Infinite;
    }
    let mut degree = vec![0usize; n];
    let mut incident: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for &(i, j, m) in &edges {
        degree[i] += 1;
        degree[j] += 1;
        incident[i].push((j, m));
        incident[j].push((i, m));
    }
    if degree.iter().any(|&d| d >= 4) {
        return GroupOrder::Infinite;
    }
    let branches: Vec<usize> = (0..n).filter(|&i| degree[i] == 3).collect();
    if branches.len() >= 2 {
        return GroupOrder::Infinite;
    }

    let nn = n as u64;
    if branches.is_empty() {
        // path: walk from one endpoint collecting the label sequence
        let start = (0..n).find(|&i| degree[i] == 1).expect("path endpoint");
        let mut labels = Vec::with_capacity(n - 1);
        let mut prev = usize::MAX;
        let mut here = start;
        while labels.len() < n - 1 {
            let &(next, m) = incident[here]
                .iter()
                .find(|&&(v, _)| v != prev)
                .expect("path continues");
            labels.push(m);
            prev = here;
            here = next;
        }
        let big: Vec<u32> = labels.iter().copied().filter(|&m| m > 3).collect();
        return match big.as_slice() {
            [] => GroupOrder::Finite(factorial(nn + 1)),
            [4] if n == 4 && labels[1] == 4 => GroupOrder::Finite(1152),
            [4] if labels[0] == 4 || labels[n - 2] == 4 => {
                GroupOrder::Finite((1u64 << nn) * factorial(nn))
            }
            [5] if n == 3 && (labels[0] == 5 || labels[1] == 5) => GroupOrder::Finite(120),
            [5] if n == 4 && (labels[0] == 5 || labels[2] == 5) => GroupOrder::Finite(14400),
            _ => GroupOrder::Infinite,
        };
    }

    // single branch vertex: all labels must be 3 and the three leg lengths
    // must be (1,1,r), (1,2,2), (1,2,3) or (1,2,4)
    if edges.iter().any(|&(_, _, m)| m != 3) {
        return GroupOrder::Infinite;
    }
    let b = branches[0];
    let mut legs: Vec<u64> = incident[b]
        .iter()
        .map(|&(first, _)| {
            let mut len = 1u64;
            let mut prev = b;
            let mut here = first;
            while let Some(&(next, _)) = incident[here].iter().find(|&&(v, _)| v != prev) {
                len += 1;
                prev = here;
                here = next;
            }
            len
        })
        .collect();
    legs.sort_unstable();
    match (legs[0], legs[1], legs[2]) {
        (1, 1, _) => GroupOrder::Finite((1u64 << (nn - 1)) * factorial(nn)),
        (1, 2, 2) => GroupOrder::Finite(51840),
        (1, 2, 3) => GroupOrder::Finite(2903040),
        (1, 2, 4) => GroupOrder::Finite(696729600),
        _ => GroupOrder::Infinite,
    }
}

impl CoxeterSystem {
    /// Classifies the standard parabolic on `subset` as finite or infinite
    /// and computes its exact order in the finite case.
    pub fn spherical_order(&self, subset: &GenSet) -> Result<SphericalReport> {
        for &s in subset {
            self.check_gen(s)?;
        }
        let verts: Vec<Gen> = subset.iter().copied().collect();
        // connected components of the diagram restricted to subset, where
        // vertices are joined iff the label is not 2
        let mut comp = vec![usize::MAX; verts.len()];
        let mut count = 0;
        for i in 0..verts.len() {
            if comp[i] != usize::MAX {
                continue;
            }
            let mut stack = vec![i];
            comp[i] = count;
            while let Some(u) = stack.pop() {
                for v in 0..verts.len() {
                    if comp[v] == usize::MAX && self.label(verts[u], verts[v]) != CoxLabel::Finite(2)
                    {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        let mut order = GroupOrder::Finite(1);
        for c in 0..count {
            let members: Vec<Gen> = verts
                .iter()
                .zip(&comp)
                .filter(|&(_, &cc)| cc == c)
                .map(|(&v, _)| v)
                .collect();
            order = match (order, component_order(self, &members)) {
                (GroupOrder::Finite(a), GroupOrder::Finite(b)) => {
                    let prod = a.checked_mul(b).ok_or_else(|| {
                        Error::Internal("finite parabolic order overflows u64".into())
                    })?;
                    GroupOrder::Finite(prod)
                }
                _ => GroupOrder::Infinite,
            };
            if order == GroupOrder::Infinite {
                break;
            }
        }
        Ok(SphericalReport {
            subset: subset.clone(),
            is_spherical: order.is_finite(),
            order,
        })
    }

    /// Convenience wrapper: is W_subset finite?
    pub fn is_spherical(&self, subset: &GenSet) -> Result<bool> {
        Ok(self.spherical_order(subset)?.is_spherical)
    }
}
