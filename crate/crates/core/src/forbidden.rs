//! Forbidden sets: the values of the next Toeplitz entry that kill a minor.
//!
//! For a fixed first-column prefix `(a_1, ..., a_{gamma-1})`, every minor of
//! the order-gamma matrix that involves `a_gamma` has determinant
//! `c * a_gamma + d` with `c`, `d` determined by the prefix. When `c != 0`
//! the minor forbids exactly one value, `-d/c`; when `c = 0` and `d != 0` it
//! forbids nothing; when both vanish the minor is identically zero and no
//! extension can ever repair it (the prefix is *dead*).
//!
//! [`forbidden_set`] collects the forbidden values with per-minor provenance.
//! [`paper_set`] evaluates, for orders 4..=6, literal closed-form expression
//! lists for the same sets (indexed in reading order, so e.g. "expression 13"
//! of the order-6 list is addressable), as an independent cross-check.

use crate::error::{Error, Result};
use crate::minor_classes::class_table;
use crate::prime_field::{FieldElement, PrimeField};
use crate::toeplitz::{det_from_first_column, MinorIndex};
use serde::Serialize;
use std::collections::BTreeMap;

/// The set of values of `a_gamma` that annihilate some minor, for one prefix.
#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenSet {
    pub gamma: usize,
    pub field: PrimeField,
    pub prefix: Vec<FieldElement>,
    /// Forbidden values, ascending.
    pub values: Vec<FieldElement>,
    /// For each forbidden value, the minors that force it (size, then
    /// row/column lexicographic order).
    pub provenance: BTreeMap<u64, Vec<MinorIndex>>,
    /// True when some minor involving `a_gamma` is identically zero at this
    /// prefix, so every extension fails.
    pub dead: bool,
    /// The identically-zero minors behind a `dead` verdict.
    pub dead_minors: Vec<MinorIndex>,
}

impl ForbiddenSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, v: FieldElement) -> bool {
        self.values.binary_search(&v).is_ok()
    }
}

fn minor_order_key(m: &MinorIndex) -> (usize, Vec<usize>, Vec<usize>) {
    (m.size(), m.rows.clone(), m.cols.clone())
}

/// Computes the forbidden set for `a_gamma` given `(a_1, ..., a_{gamma-1})`.
///
/// Minors sharing a determinant polynomial are evaluated once through a
/// shared representative; provenance still lists every member.
pub fn forbidden_set(
    field: PrimeField,
    prefix: &[FieldElement],
    gamma: usize,
) -> Result<ForbiddenSet> {
    if gamma == 0 {
        return Err(Error::InvalidTask("gamma must be at least 1".into()));
    }
    if prefix.len() != gamma - 1 {
        return Err(Error::PrefixLength {
            expected: gamma - 1,
            got: prefix.len(),
        });
    }
    if prefix.iter().any(|e| e.modulus() != field.modulus()) {
        return Err(Error::InvalidTask(
            "prefix entries must belong to the given field".into(),
        ));
    }
    if gamma >= 2 && prefix[0].is_zero() {
        return Err(Error::InvalidTask("prefix must have a_1 != 0".into()));
    }
    let p = field.modulus();
    let table = class_table(gamma);

    // First column with the trial value of a_gamma appended.
    let mut col0: Vec<u64> = prefix.iter().map(|e| e.value()).collect();
    col0.push(0);
    let mut col1 = col0.clone();
    *col1.last_mut().unwrap() = 1;

    let mut provenance: BTreeMap<u64, Vec<MinorIndex>> = BTreeMap::new();
    let mut dead_minors = Vec::new();
    for class in &table.raw {
        let rep = class.representative();
        let d = det_from_first_column(&col0, p, &rep.rows, &rep.cols);
        let cd = det_from_first_column(&col1, p, &rep.rows, &rep.cols);
        let c = field.element(cd) - field.element(d);
        if c.is_zero() {
            if d == 0 {
                dead_minors.extend(class.members.iter().cloned());
            }
            continue;
        }
        let v = crate::prime_field::solve_linear(c, field.element(d))?;
        provenance
            .entry(v.value())
            .or_default()
            .extend(class.members.iter().cloned());
    }
    for list in provenance.values_mut() {
        list.sort_by_key(minor_order_key);
    }
    dead_minors.sort_by_key(minor_order_key);
    let values = provenance.keys().map(|&v| field.element(v)).collect();
    Ok(ForbiddenSet {
        gamma,
        field,
        prefix: prefix.to_vec(),
        values,
        provenance,
        dead: !dead_minors.is_empty(),
        dead_minors,
    })
}

/// The extensions that keep every minor nonzero: the complement of the
/// forbidden values, ascending. Errors when the prefix is dead.
pub fn extension_candidates(fs: &ForbiddenSet) -> Result<Vec<FieldElement>> {
    if fs.dead {
        return Err(Error::DeadPrefix);
    }
    let mut out = Vec::new();
    let mut forbidden = fs.values.iter().peekable();
    for v in fs.field.elements() {
        if forbidden.peek().is_some_and(|f| **f == v) {
            forbidden.next();
        } else {
            out.push(v);
        }
    }
    Ok(out)
}

struct ExprCtx {
    field: PrimeField,
}

impl ExprCtx {
    fn c(&self, v: i64) -> FieldElement {
        self.field.element_signed(v)
    }

    fn frac(
        &self,
        index: usize,
        expr: &'static str,
        num: FieldElement,
        den: FieldElement,
    ) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::DenominatorVanishes { index, expr });
        }
        Ok(num * den.inv()?)
    }
}

/// Literal closed-form forbidden sets for orders 4, 5 and 6.
///
/// `tail` holds the normalized prefix entries after `a_1 = a_2 = 1`, i.e.
/// `(a_3)`, `(a_3, a_4)`, or `(a_3, a_4, a_5)`. Expressions are transcribed
/// in reading order; the order-6 list has 26 expressions and, for example,
/// expression 13 is `-1 + 4a_3 - 3a_4 - 3a_3^2 + 2a_5 + 2a_3a_4`. Returns
/// the sorted distinct values; reports which expression's denominator
/// vanished when a precondition fails.
pub fn paper_set(field: PrimeField, gamma: usize, tail: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let expected = match gamma {
        4 | 5 | 6 => gamma - 3,
        _ => {
            return Err(Error::InvalidTask(
                "closed-form sets exist for gamma in {4, 5, 6}".into(),
            ))
        }
    };
    if tail.len() != expected {
        return Err(Error::PrefixLength {
            expected,
            got: tail.len(),
        });
    }
    let ctx = ExprCtx { field };
    let exprs: Vec<FieldElement> = match gamma {
        4 => {
            let a3 = tail[0];
            vec![ctx.c(0), a3, a3 * a3, ctx.c(2) * a3 - ctx.c(1)]
        }
        5 => {
            let (a3, a4) = (tail[0], tail[1]);
            let a3sq = a3 * a3;
            vec![
                ctx.c(0),
                a4,
                a3 * a4,
                a3sq,
                ctx.frac(5, "a4^2/a3", a4 * a4, a3)?,
                a3sq - a3 + a4,
                -a3sq + a3 * a4 + a4,
                ctx.c(2) * a4 - a3,
                ctx.frac(
                    9,
                    "(a3^3 - 2*a3*a4 + a4^2)/(a3 - 1)",
                    a3sq * a3 - ctx.c(2) * a3 * a4 + a4 * a4,
                    a3 - ctx.c(1),
                )?,
                a3sq - ctx.c(3) * a3 + ctx.c(2) * a4 + ctx.c(1),
            ]
        }
        6 => {
            let (a3, a4, a5) = (tail[0], tail[1], tail[2]);
            let (a3sq, a4sq, a5sq) = (a3 * a3, a4 * a4, a5 * a5);
            let two = ctx.c(2);
            let three = ctx.c(3);
            vec![
                ctx.c(0),
                a5,
                a3 * a4,
                a4sq,
                ctx.frac(5, "a5^2/a4", a5sq, a4)?,
                ctx.frac(
                    6,
                    "(a5^2 - 2*a3*a4*a5 + a4^3)/(a4 - a3^2)",
                    a5sq - two * a3 * a4 * a5 + a4sq * a4,
                    a4 - a3sq,
                )?,
                ctx.frac(
                    7,
                    "(a3*a5 - a4^2 + a4*a5)/a3",
                    a3 * a5 - a4sq + a4 * a5,
                    a3,
                )?,
                a5 - a3 * a4 + a4sq,
                a5 - a3 * a4 + a3 * a5,
                ctx.frac(
                    10,
                    "(a4*a5 + a3^2*a5 - a3*a4^2 - a5^2)/(a3 - a4)",
                    a4 * a5 + a3sq * a5 - a3 * a4sq - a5sq,
                    a3 - a4,
                )?,
                ctx.frac(
                    11,
                    "(a3*a5 + a4^2 - a3^2*a4 - a4*a5)/(1 - a3)",
                    a3 * a5 + a4sq - a3sq * a4 - a4 * a5,
                    ctx.c(1) - a3,
                )?,
                ctx.frac(
                    12,
                    "(a5 - 2*a3*a4 + a3^3 + 2*a4^2 - a3^2*a4 - a4*a5)/(1 - a3)",
                    a5 - two * a3 * a4 + a3sq * a3 + two * a4sq - a3sq * a4 - a4 * a5,
                    ctx.c(1) - a3,
                )?,
                ctx.c(-1) + ctx.c(4) * a3 - three * a4 - three * a3sq + two * a5 + two * a3 * a4,
                a3 * a5,
                a3 * (two * a5 - a3 * a4),
                a3 * (a4 - a3sq + a5),
                ctx.frac(17, "a4*a5/a3", a4 * a5, a3)?,
                -(a4 - a3sq - a5 + a3sq * a3 - a3 * a5),
                -(a4 - a3sq - two * a5 + two * a3 * a4 - a4sq),
                -a3sq + two * a3 * a4,
                -a4 + two * a5,
                -a3sq + a5 + a3 * a4,
                -a4 + a5 + a3 * a4,
                a3 - two * a4 - a3sq + two * a5 + a3 * a4,
                a3 - a4 - two * a3sq + a5 + two * a3 * a4,
                ctx.frac(
                    26,
                    "(2*a3*a5 + a4^2 - 3*a3^2*a4 + a3^4 - 2*a4*a5 - 2*a3^2*a5 + 2*a3*a4^2 + a5^2)/(1 - 2*a3 + a4)",
                    two * a3 * a5 + a4sq - three * a3sq * a4 + a3sq * a3sq
                        - two * a4 * a5
                        - two * a3sq * a5
                        + two * a3 * a4sq
                        + a5sq,
                    ctx.c(1) - two * a3 + a4,
                )?,
            ]
        }
        _ => unreachable!(),
    };
    let mut values: Vec<FieldElement> = exprs;
    values.sort();
    values.dedup();
    Ok(values)
}
