//! Closed-form decisions for multiplication maps `m -> m·a` on finitely
//! generated abelian groups.
//!
//! On a cyclic factor `Z/d` with `g = gcd(|a|, d)` the image of `a` is `Z/(d/g)`,
//! and both the kernel and the cokernel are `Z/g`. On a free factor the image is
//! `Z` for `a != 0`; the kernel is `Z` only for `a = 0`; the cokernel is `Z/|a|`.
//! Everything else follows by summing over factors. Since every invariant factor
//! divides the exponent `e`, `gcd(a, d) = gcd(a mod e, d)` and scalar sweeps over
//! a finite group only need `a` in `0..e`.

use std::fmt;

use crate::abgroup::{canonicalize, iso_eq, FgAbGroup};
use crate::arith;

/// Multiplication by `scalar` on `domain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulMap {
    pub domain: FgAbGroup,
    pub scalar: i64,
}

impl MulMap {
    pub fn new(domain: FgAbGroup, scalar: i64) -> Self {
        Self { domain, scalar }
    }

    pub fn image(&self) -> FgAbGroup {
        image_mul(&self.domain, self.scalar)
    }

    pub fn kernel(&self) -> FgAbGroup {
        ann_mul(&self.domain, self.scalar)
    }

    pub fn cokernel(&self) -> FgAbGroup {
        coker_mul(&self.domain, self.scalar)
    }

    pub fn is_morphic(&self) -> bool {
        is_a_morphic(&self.domain, self.scalar)
    }
}

/// Outcome of a weakly-morphic test. A failing verdict carries a scalar that
/// can be re-checked with [`is_a_morphic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphicVerdict {
    pub holds: bool,
    pub witness: Option<i64>,
}

impl MorphicVerdict {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: i64) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }
}

fn canon(orders: Vec<u64>, free_rank: usize) -> FgAbGroup {
    canonicalize(&orders, free_rank).expect("invariant factor exceeds u64")
}

/// The subgroup `M·a`.
pub fn image_mul(m: &FgAbGroup, a: i64) -> FgAbGroup {
    let abs = a.unsigned_abs();
    let orders = m
        .invariant_factors()
        .iter()
        .map(|&d| d / arith::gcd(abs, d))
        .collect();
    let free = if a == 0 { 0 } else { m.free_rank() };
    canon(orders, free)
}

/// The annihilator `Ann_M(a) = { m : m·a = 0 }`.
pub fn ann_mul(m: &FgAbGroup, a: i64) -> FgAbGroup {
    let abs = a.unsigned_abs();
    let orders = m
        .invariant_factors()
        .iter()
        .map(|&d| arith::gcd(abs, d))
        .collect();
    let free = if a == 0 { m.free_rank() } else { 0 };
    canon(orders, free)
}

/// The quotient `M / M·a`.
///
/// # Panics
///
/// If the quotient has an invariant factor past `u64::MAX`, which can only
/// happen for huge `|a|` on a group with free rank.
pub fn coker_mul(m: &FgAbGroup, a: i64) -> FgAbGroup {
    let abs = a.unsigned_abs();
    let mut orders: Vec<u64> = m
        .invariant_factors()
        .iter()
        .map(|&d| arith::gcd(abs, d))
        .collect();
    let mut free = 0;
    match abs {
        0 => free = m.free_rank(),
        1 => {}
        _ => orders.extend(std::iter::repeat_n(abs, m.free_rank())),
    }
    canon(orders, free)
}

/// `M / M·a ≅ Ann_M(a)`.
pub fn is_a_morphic(m: &FgAbGroup, a: i64) -> bool {
    iso_eq(&coker_mul(m, a), &ann_mul(m, a))
}

/// Decides whether `m` is `a`-morphic for every integer `a`.
///
/// For a finite group every residue class of `a` modulo the exponent `e` is
/// covered: the predicate only depends on `gcd(a, e)`, so one representative
/// per divisor of `e` is evaluated and the reported witness is the least
/// failing `a` in `0..e`. Groups with free rank are never weakly-morphic; the
/// witness is `e + 1` for the torsion exponent `e`, a scalar coprime to the
/// torsion that is injective but not surjective on the free part.
pub fn is_weakly_morphic(m: &FgAbGroup) -> MorphicVerdict {
    let e = m.torsion_exponent();
    if m.free_rank() > 0 {
        let witness = e
            .checked_add(1)
            .and_then(|w| i64::try_from(w).ok())
            .expect("torsion exponent too large for an i64 witness");
        return MorphicVerdict::fail(witness);
    }
    let failing = arith::divisors(e)
        .into_iter()
        .map(|g| if g == e { 0 } else { g })
        .filter(|&a| !is_a_morphic(m, a as i64))
        .min();
    match failing {
        Some(a) => MorphicVerdict::fail(a as i64),
        None => MorphicVerdict::pass(),
    }
}

/// Morphic classification for finitely generated groups: finite, and each
/// primary component is `(Z/p^k)^n`.
pub fn is_morphic_fg(m: &FgAbGroup) -> bool {
    m.free_rank() == 0 && m.primary_decomposition().is_homogeneous()
}

/// Whether some integer `x` satisfies `m·a = m·a²·x` for all `m`, i.e. the
/// multiplication map is a (strongly) regular element.
///
/// The free part forces `a ∈ {0, 1, -1}`; on the torsion part this is the
/// solvability of `a ≡ a²x (mod e)`, i.e. `gcd(a, e) = gcd(a², e)`.
pub fn is_mul_regular(m: &FgAbGroup, a: i64) -> bool {
    if m.free_rank() > 0 && a.unsigned_abs() > 1 {
        return false;
    }
    let e = m.torsion_exponent();
    let r = arith::abs_mod(a, e);
    let r2 = ((r as u128 * r as u128) % e as u128) as u64;
    arith::gcd(r, e) == arith::gcd(r2, e)
}

/// Direct summands of `m` up to isomorphism, the trivial group and `m`
/// itself included. Order follows free rank, then the per-prime sub-partitions.
pub fn direct_summands(m: &FgAbGroup) -> Vec<FgAbGroup> {
    let pd = m.primary_decomposition();
    let mut torsion_parts: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
    for (&p, parts) in &pd.components {
        let subs = sub_multisets(parts);
        torsion_parts = torsion_parts
            .into_iter()
            .flat_map(|prefix| {
                subs.iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.push((p, s.clone()));
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for rank in 0..=m.free_rank() {
        for t in &torsion_parts {
            let orders: Vec<u64> = t
                .iter()
                .flat_map(|(p, s)| s.iter().map(move |&e| p.pow(e)))
                .collect();
            out.push(canon(orders, rank));
        }
    }
    out
}

/// Sub-multisets of a descending partition, each kept descending.
fn sub_multisets(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in parts {
        match groups.last_mut() {
            Some((v, n)) if *v == p => *n += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (v, n) in groups {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=n).map(move |k| {
                    let mut s = prefix.clone();
                    s.extend(std::iter::repeat_n(v, k));
                    s
                })
            })
            .collect();
    }
    out
}

/// Result of scanning finite groups for a weakly-morphic group with a
/// summand that is not weakly-morphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandScan {
    pub max_order: u64,
    pub classes_scanned: usize,
    pub weakly_morphic_classes: usize,
    pub summands_checked: usize,
    /// `(group, summand)` pairs where the summand fails.
    pub counterexamples: Vec<(FgAbGroup, FgAbGroup)>,
}

impl fmt::Display for SummandScan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "summand scan up to order {}: {} classes, {} weakly-morphic, {} summands checked, {} counterexamples",
            self.max_order,
            self.classes_scanned,
            self.weakly_morphic_classes,
            self.summands_checked,
            self.counterexamples.len()
        )?;
        write!(
            f,
            "note: every finite abelian group is weakly-morphic, so a finite scan cannot \
             produce a counterexample; the question remains open for infinite modules"
        )
    }
}

/// Checks that every direct summand of every weakly-morphic group of order
/// at most `max_order` is weakly-morphic.
pub fn weakly_morphic_summand_scan(max_order: u64) -> SummandScan {
    let mut scan = SummandScan {
        max_order,
        classes_scanned: 0,
        weakly_morphic_classes: 0,
        summands_checked: 0,
        counterexamples: Vec::new(),
    };
    for g in crate::abgroup::enumerate_groups(max_order) {
        scan.classes_scanned += 1;
        if !is_weakly_morphic(&g).holds {
            continue;
        }
        scan.weakly_morphic_classes += 1;
        for s in direct_summands(&g) {
            scan.summands_checked += 1;
            if !is_weakly_morphic(&s).holds {
                scan.counterexamples.push((g.clone(), s));
            }
        }
    }
    scan
}
