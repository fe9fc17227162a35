//! Exhaustive check of the block-factorization property: fix a sequence
//! t_1,…,t_m of generators with infinite labels between consecutive entries
//! and let J be the remaining generators. With W̃_i = W_{J∪{t_i}} \ W_J,
//! every product w_1⋯w_m (w_i ∈ W̃_i) must have every one of its reduced
//! expressions split positionally into m segments, segment i using only
//! letters of J∪{t_i} and containing t_i, and must satisfy ℓ(w) ≥ m.
//!
//! Since each segment of a reduced word is itself reduced, "segment i lands
//! in W̃_i" is a purely letterwise condition, so the split test is a small
//! dynamic program over (segment index, position).

use crate::caps::Caps;
use crate::coxeter::matrix::{CoxLabel, CoxeterSystem, Gen, GenSet};
use crate::coxeter::words::GroupElement;
use crate::error::{Error, Result};
use crate::report::LemmaReport;

/// Nonidentity elements of W_{letters} whose support meets `required`, up to
/// the length bound, ordered by (length, word).
fn block_elements(
    system: &CoxeterSystem,
    letters: &GenSet,
    required: Gen,
    max_len: usize,
    caps: &Caps,
) -> Result<Vec<GroupElement>> {
    Ok(system
        .parabolic_ball(letters, Some(max_len), caps)?
        .into_iter()
        .filter(|g| g.support().contains(&required))
        .collect())
}

/// True when `letters` splits into `blocks.len()` consecutive nonempty
/// segments, the i-th inside alphabet blocks[i].0 and containing blocks[i].1.
fn splits_into_blocks(letters: &[Gen], blocks: &[(GenSet, Gen)]) -> bool {
    let n = letters.len();
    let m = blocks.len();
    // reachable[i][p]: first i segments consumed exactly p letters
    let mut reachable = vec![vec![false; n + 1]; m + 1];
    reachable[0][0] = true;
    for i in 0..m {
        let (alphabet, required) = &blocks[i];
        for p in 0..n {
            if !reachable[i][p] {
                continue;
            }
            let mut seen_required = false;
            for q in p..n {
                if !alphabet.contains(&letters[q]) {
                    break;
                }
                if letters[q] == *required {
                    seen_required = true;
                }
                if seen_required {
                    reachable[i + 1][q + 1] = true;
                }
            }
        }
    }
    reachable[m][n]
}

/// Checks the block-factorization property for every product of total length
/// at most `length_cap`. The consecutive labels m(t_i, t_{i+1}) must all be
/// infinite.
pub fn check_block_factorization(
    system: &CoxeterSystem,
    t_seq: &[Gen],
    length_cap: usize,
    caps: &Caps,
) -> Result<LemmaReport> {
    if t_seq.is_empty() {
        return Err(Error::Precondition("empty pivot sequence".into()));
    }
    for &t in t_seq {
        system.check_gen(t)?;
    }
    for pair in t_seq.windows(2) {
        if system.label(pair[0], pair[1]) != CoxLabel::Infinite {
            return Err(Error::Precondition(format!(
                "m({},{}) = {} is finite between consecutive pivots",
                pair[0],
                pair[1],
                system.label(pair[0], pair[1])
            )));
        }
    }
    let m = t_seq.len();
    let pivot_set: GenSet = t_seq.iter().copied().collect();
    let j: GenSet = system
        .generators()
        .filter(|g| !pivot_set.contains(g))
        .collect();

    let mut report = LemmaReport::pass("block-factorization");
    if length_cap < m {
        // no admissible product fits under the cap
        return Ok(report);
    }

    let mut blocks: Vec<(GenSet, Gen)> = Vec::with_capacity(m);
    let mut block_lists: Vec<Vec<GroupElement>> = Vec::with_capacity(m);
    for &t in t_seq {
        let mut alphabet = j.clone();
        alphabet.insert(t);
        block_lists.push(block_elements(
            system,
            &alphabet,
            t,
            length_cap - (m - 1),
            caps,
        )?);
        blocks.push((alphabet, t));
    }

    // depth-first over tuples with a shared length budget
    let mut stack: Vec<(usize, GroupElement, usize)> = vec![(0, GroupElement::identity(), 0)];
    while let Some((i, product, used)) = stack.pop() {
        if i == m {
            report.count("products", 1);
            if product.len() < m {
                report.fail(format!(
                    "product {product} has length {} < {m}",
                    product.len()
                ));
                continue;
            }
            let expressions = system.reduced_expressions(&product, caps)?;
            report.count("reduced-expressions", expressions.len() as u64);
            for expr in &expressions {
                if !splits_into_blocks(expr.letters(), &blocks) {
                    report.fail(format!(
                        "reduced expression {expr} of {product} does not split"
                    ));
                }
            }
            continue;
        }
        let budget = length_cap - used - (m - 1 - i);
        for w in &block_lists[i] {
            if w.len() > budget {
                break;
            }
            let next = system.multiply_capped(&product, w, caps)?;
            stack.push((i + 1, next, used + w.len()));
        }
    }
    Ok(report)
}
