//! Finitely generated abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix};

/// Isomorphism class `Z^r + Z/d1 + ... + Z/dk` with `2 <= d1 | d2 | ... | dk`.
///
/// Two values compare equal exactly when the groups are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<u64>,
}

/// Cardinality of a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Per-prime exponent partitions of the torsion part, parts descending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimaryDecomposition {
    pub components: BTreeMap<u64, Vec<u32>>,
}

impl PrimaryDecomposition {
    /// Recombines the primary components into ascending invariant factors,
    /// pairing the largest exponents of every prime together.
    pub fn recombine(&self) -> Vec<u64> {
        let len = self.components.values().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..len)
            .map(|i| {
                self.components
                    .iter()
                    .filter_map(|(&p, parts)| parts.get(i).map(|&e| p.pow(e)))
                    .product()
            })
            .collect();
        factors.reverse();
        factors
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True when every prime's partition has all parts equal, i.e. each
    /// primary component is a power of a single cyclic group.
    pub fn is_homogeneous(&self) -> bool {
        self.components
            .values()
            .all(|parts| parts.windows(2).all(|w| w[0] == w[1]))
    }
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Overflow(format!("invariant factor {x}")))
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        canonicalize(&[n], 0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// The torsion subgroup.
    pub fn torsion(&self) -> FgAbGroup {
        Self {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            return GroupOrder::Infinite;
        }
        GroupOrder::Finite(
            self.invariant_factors
                .iter()
                .map(|&d| BigUint::from(d))
                .product(),
        )
    }

    /// Order as a machine integer; `None` for infinite groups or orders past `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Largest invariant factor (1 for the trivial group), `None` when infinite.
    pub fn exponent(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion_exponent())
    }

    /// Exponent of the torsion subgroup, defined for every group.
    pub fn torsion_exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Primary decomposition of the torsion part. The free rank is not recorded.
    pub fn primary_decomposition(&self) -> PrimaryDecomposition {
        let mut components: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        // Largest factor first so that each partition comes out descending.
        for &d in self.invariant_factors.iter().rev() {
            for (p, e) in arith::factorize(d) {
                components.entry(p).or_default().push(e);
            }
        }
        PrimaryDecomposition { components }
    }

    pub fn from_primary(free_rank: usize, decomposition: &PrimaryDecomposition) -> Self {
        Self {
            free_rank,
            invariant_factors: decomposition.recombine(),
        }
    }
}

impl fmt::Display for FgAbGroup {
    /// Canonical expression, e.g. `Z^2 + Z/2 + Z/6`; the trivial group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", terms.join(" + "))
    }
}

/// Normalizes `Z^free_rank + Z/n1 + ... + Z/nk` (any order, any `ni >= 1`)
/// into invariant-factor form.
pub fn canonicalize(cyclic_orders: &[u64], free_rank: usize) -> Result<FgAbGroup> {
    if let Some(&bad) = cyclic_orders.iter().find(|&&n| n == 0) {
        return Err(Error::Domain(format!(
            "cyclic order must be positive, got {bad}"
        )));
    }
    let nontrivial: Vec<u64> = cyclic_orders.iter().copied().filter(|&n| n > 1).collect();
    let torsion = from_relations(&IntMatrix::diagonal(&nontrivial))?;
    Ok(FgAbGroup {
        free_rank,
        invariant_factors: torsion.invariant_factors,
    })
}

/// The cokernel `Z^g / colspan(rel)` of a `g`-row relation matrix.
pub fn from_relations(rel: &IntMatrix) -> Result<FgAbGroup> {
    let res = snf(rel);
    let diag = res.invariant_factors();
    let mut invariant_factors = Vec::with_capacity(diag.len());
    for d in &diag {
        if !d.is_one() {
            invariant_factors.push(to_u64(d)?);
        }
    }
    Ok(FgAbGroup {
        free_rank: rel.rows() - diag.len(),
        invariant_factors,
    })
}

pub fn iso_eq(g: &FgAbGroup, h: &FgAbGroup) -> bool {
    g == h
}

/// External direct sum.
///
/// # Panics
///
/// If an invariant factor of the sum exceeds `u64::MAX`.
pub fn direct_sum(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let orders: Vec<u64> = g
        .invariant_factors
        .iter()
        .chain(&h.invariant_factors)
        .copied()
        .collect();
    canonicalize(&orders, g.free_rank + h.free_rank)
        .expect("invariant factor of a direct sum exceeds u64")
}

/// Every finite abelian group of order at most `max_order`, once each,
/// ordered by group order and then lexicographically by invariant factors.
pub fn enumerate_groups(max_order: u64) -> impl Iterator<Item = FgAbGroup> {
    (1..=max_order).flat_map(groups_of_order)
}

/// All isomorphism classes of abelian groups of order exactly `n`.
pub fn groups_of_order(n: u64) -> Vec<FgAbGroup> {
    let mut decompositions = vec![PrimaryDecomposition::default()];
    for (p, e) in arith::factorize(n) {
        let parts = arith::partitions(e);
        decompositions = decompositions
            .iter()
            .flat_map(|d| {
                parts.iter().map(move |part| {
                    let mut d = d.clone();
                    d.components.insert(p, part.clone());
                    d
                })
            })
            .collect();
    }
    let mut groups: Vec<FgAbGroup> = decompositions
        .iter()
        .map(|d| FgAbGroup::from_primary(0, d))
        .collect();
    groups.sort_by(|a, b| a.invariant_factors.cmp(&b.invariant_factors));
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn g(orders: &[u64], rank: usize) -> FgAbGroup {
        canonicalize(orders, rank).unwrap()
    }

    /// Multiset of element orders of `Z/n1 + ... + Z/nk`, by brute enumeration.
    fn element_orders(orders: &[u64]) -> BTreeMap<u64, usize> {
        let mut counts = BTreeMap::new();
        let total: u64 = orders.iter().product();
        for idx in 0..total {
            let mut rest = idx;
            let mut ord = 1u64;
            for &n in orders {
                let x = rest % n;
                rest /= n;
                let o = n / arith::gcd(x, n);
                ord = num_integer::lcm(ord, o);
            }
            *counts.entry(ord).or_insert(0) += 1;
        }
        counts
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(g(&[2, 4], 0).invariant_factors(), &[2, 4]);
        assert_eq!(g(&[2, 4, 3], 0).invariant_factors(), &[2, 12]);
        assert_eq!(
            element_orders(&[2, 4, 3]),
            element_orders(g(&[2, 4, 3], 0).invariant_factors())
        );
        let z = g(&[], 1);
        assert_eq!((z.free_rank(), z.invariant_factors()), (1, &[][..]));
        assert_eq!(g(&[1, 1, 5], 0).invariant_factors(), &[5]);
    }

    #[test]
    fn canonicalize_rejects_zero_order() {
        assert!(matches!(canonicalize(&[2, 0], 0), Err(Error::Domain(_))));
    }

    #[test]
    fn from_relations_examples() {
        let d = from_relations(&IntMatrix::diagonal(&[2i64, 4])).unwrap();
        assert_eq!(d, g(&[2, 4], 0));
        let r = from_relations(&IntMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]).unwrap()).unwrap();
        assert_eq!(r, g(&[2, 4], 0));
        let free = from_relations(&IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(free, FgAbGroup::free(2));
    }

    #[test]
    fn relations_round_trip() {
        let grp = g(&[2, 6, 12], 2);
        let mut rel = IntMatrix::zeros(5, 3);
        for (i, &d) in grp.invariant_factors().iter().enumerate() {
            rel.set(i, i, d.into());
        }
        assert_eq!(from_relations(&rel).unwrap(), grp);
    }

    #[test]
    fn iso_examples() {
        assert!(iso_eq(&g(&[6], 0), &g(&[2, 3], 0)));
        assert_eq!(element_orders(&[6]), element_orders(&[2, 3]));
        assert!(!iso_eq(&g(&[2, 2], 0), &g(&[4], 0)));
        assert_ne!(element_orders(&[2, 2]), element_orders(&[4]));
        let x = g(&[3, 9], 1);
        assert!(iso_eq(&x, &x));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&g(&[2], 0), &g(&[4], 0)), g(&[2, 4], 0));
        let x = g(&[4, 8], 1);
        assert_eq!(direct_sum(&x, &FgAbGroup::trivial()), x);
        assert_eq!(direct_sum(&g(&[2], 0), &g(&[3], 0)), g(&[6], 0));
        assert_eq!(direct_sum(&FgAbGroup::free(1), &FgAbGroup::free(2)), FgAbGroup::free(3));
    }

    #[test]
    fn order_exponent_decomposition() {
        let m = g(&[2, 4], 0);
        assert_eq!(m.order(), GroupOrder::Finite(8u32.into()));
        assert_eq!(m.exponent(), Some(4));
        assert_eq!(m.primary_decomposition().components, BTreeMap::from([(2, vec![2, 1])]));

        let t = FgAbGroup::trivial();
        assert_eq!(t.order(), GroupOrder::Finite(1u32.into()));
        assert_eq!(t.exponent(), Some(1));
        assert!(t.primary_decomposition().is_empty());

        let m = g(&[2, 12], 0);
        let pd = m.primary_decomposition();
        assert_eq!(pd.components, BTreeMap::from([(2, vec![2, 1]), (3, vec![1])]));
        assert_eq!(pd.recombine(), vec![2, 12]);

        assert_eq!(FgAbGroup::free(1).order(), GroupOrder::Infinite);
        assert_eq!(g(&[5], 1).exponent(), None);
    }

    #[test]
    fn enumeration_small_orders() {
        let all: Vec<FgAbGroup> = enumerate_groups(4).collect();
        assert_eq!(all.len(), 5);
        let expected = [
            g(&[], 0),
            g(&[2], 0),
            g(&[3], 0),
            g(&[2, 2], 0),
            g(&[4], 0),
        ];
        assert_eq!(all, expected);
        assert_eq!(enumerate_groups(1).collect::<Vec<_>>(), vec![FgAbGroup::trivial()]);
        assert_eq!(groups_of_order(16).len(), 5);
    }

    #[test]
    fn enumeration_counts_match_partition_products() {
        // Independent count: number of partitions of each prime exponent.
        for n in 1..=200u64 {
            let expected: usize = arith::factorize(n)
                .iter()
                .map(|&(_, e)| arith::partitions(e).len())
                .product();
            let groups = groups_of_order(n);
            assert_eq!(groups.len(), expected, "order {n}");
            for grp in &groups {
                assert_eq!(grp.order_u64(), Some(n));
            }
        }
        assert_eq!(enumerate_groups(8).count(), 11);
        assert_eq!(enumerate_groups(16).count(), 25);
    }

    #[test]
    fn iso_agrees_with_element_orders_up_to_24() {
        let groups: Vec<FgAbGroup> = enumerate_groups(24).collect();
        for a in &groups {
            for b in &groups {
                let brute = element_orders(a.invariant_factors()) == element_orders(b.invariant_factors());
                assert_eq!(iso_eq(a, b), brute, "{a} vs {b}");
            }
        }
        // Non-canonical presentations land on the same class as their element-order profile.
        for orders in [vec![2u64, 3, 4], vec![6, 10], vec![4, 6, 9], vec![12, 2]] {
            let canon = g(&orders, 0);
            assert_eq!(element_orders(&orders), element_orders(canon.invariant_factors()));
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(g(&[2, 4], 0).to_string(), "Z/2 + Z/4");
        assert_eq!(g(&[6], 2).to_string(), "Z^2 + Z/6");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
    }
}
