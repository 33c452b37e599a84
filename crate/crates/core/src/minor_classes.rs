//! Shared tables of the minors that involve the last Toeplitz entry.
//!
//! Minors with identical determinant polynomials forbid identical values, so
//! grouping them once per order lets every forbidden-set computation evaluate
//! one representative per class instead of one per minor. Tables are built
//! lazily from the symbolic machinery and cached per order.

use crate::symbolic::{MultiPoly, SymbolicContext};
use crate::toeplitz::{minors_involving_last, MinorIndex};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub(crate) struct Class {
    /// Shared determinant polynomial (raw indeterminates for `raw` classes,
    /// substituted `x_1 = x_2 = 1` for `normalized` ones).
    pub poly: MultiPoly,
    /// Every member with this determinant, in enumeration order.
    pub members: Vec<MinorIndex>,
}

impl Class {
    pub fn representative(&self) -> &MinorIndex {
        &self.members[0]
    }
}

pub(crate) struct ClassTable {
    pub gamma: usize,
    /// Classes by raw determinant polynomial, ordered by first appearance.
    pub raw: Vec<Class>,
    /// Classes by determinant after `x_1 = x_2 = 1`, ordered by first
    /// appearance. Sound for prefixes normalized to `a_1 = a_2 = 1`.
    pub normalized: Vec<Class>,
}

fn group_by_poly(polys: Vec<(MultiPoly, MinorIndex)>) -> Vec<Class> {
    let mut order: Vec<Class> = Vec::new();
    let mut seen: HashMap<MultiPoly, usize> = HashMap::new();
    for (poly, idx) in polys {
        match seen.get(&poly) {
            Some(&slot) => order[slot].members.push(idx),
            None => {
                seen.insert(poly.clone(), order.len());
                order.push(Class {
                    poly,
                    members: vec![idx],
                });
            }
        }
    }
    order
}

fn build(gamma: usize) -> ClassTable {
    let members = minors_involving_last(gamma);
    let mut ctx = SymbolicContext::new(gamma);
    let mut raw_pairs = Vec::with_capacity(members.len());
    let mut norm_pairs = Vec::with_capacity(members.len());
    for idx in members {
        let det = ctx.det(&idx).expect("enumerated minor is in range");
        raw_pairs.push(((*det).clone(), idx.clone()));
        norm_pairs.push((det.substitute_ones(), idx));
    }
    ClassTable {
        gamma,
        raw: group_by_poly(raw_pairs),
        normalized: group_by_poly(norm_pairs),
    }
}

/// Cached class table for one order. Building the order-10 table takes a few
/// seconds of symbolic work; everything else is instant.
pub(crate) fn class_table(gamma: usize) -> Arc<ClassTable> {
    const CACHED: usize = 12;
    static TABLES: OnceLock<Vec<OnceLock<Arc<ClassTable>>>> = OnceLock::new();
    static OVERFLOW: OnceLock<Mutex<HashMap<usize, Arc<ClassTable>>>> = OnceLock::new();
    if gamma <= CACHED {
        let tables = TABLES.get_or_init(|| (0..=CACHED).map(|_| OnceLock::new()).collect());
        return tables[gamma].get_or_init(|| Arc::new(build(gamma))).clone();
    }
    let overflow = OVERFLOW.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = overflow.lock().unwrap();
    map.entry(gamma).or_insert_with(|| Arc::new(build(gamma))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_distinct_counts() {
        // Normalized class counts for small orders equal the census bound.
        for (gamma, expect) in [(3usize, 2u64), (4, 4), (5, 10), (6, 26), (7, 76)] {
            let t = class_table(gamma);
            assert_eq!(t.normalized.len() as u64, expect, "gamma={gamma}");
            assert_eq!(t.raw.len() as u64, expect, "gamma={gamma}");
        }
    }

    #[test]
    fn members_partition_the_enumeration() {
        let t = class_table(6);
        let total: usize = t.raw.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, minors_involving_last(6).len());
        let total: usize = t.normalized.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, minors_involving_last(6).len());
    }
}
