//! Element-level ground truth for small finite abelian groups.
//!
//! Groups are presented as `Z/n1 + ... + Z/nk` (not necessarily canonical) and
//! endomorphisms as integer matrices whose column `j` is the image of the
//! generator `e_j`. Nothing here consults the closed forms in [`crate::morphic`].

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::abgroup::{from_relations, FgAbGroup};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, mat_mul, snf, IntMatrix};

/// Default cap on the number of endomorphisms an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// `Z/n1 + ... + Z/nk`; elements are tuples of residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePresentation {
    orders: Vec<u64>,
}

impl FinitePresentation {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Domain("cyclic orders must be positive".into()));
        }
        Ok(Self { orders })
    }

    /// Presentation by the invariant factors of a finite group.
    pub fn from_group(g: &FgAbGroup) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::Domain(format!("{g} is infinite")));
        }
        Self::new(g.invariant_factors().to_vec())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Group order.
    ///
    /// # Panics
    ///
    /// If the order does not fit in a `u64`.
    pub fn order(&self) -> u64 {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .expect("presentation order exceeds u64")
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    /// The isomorphism class this presentation describes.
    pub fn group(&self) -> FgAbGroup {
        crate::abgroup::canonicalize(&self.orders, 0).expect("presentation factors fit u64")
    }

    /// All elements, in mixed-radix order with the first coordinate fastest.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(move |mut idx| {
            self.orders
                .iter()
                .map(|&n| {
                    let x = idx % n;
                    idx /= n;
                    x
                })
                .collect()
        })
    }

    /// Element multiplied by an integer scalar.
    pub fn scale(&self, x: &[u64], a: i64) -> Vec<u64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&xi, &n)| mul_mod(xi, reduce(a, n), n))
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect()
    }

    fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.orders)
    }
}

fn reduce(a: i64, n: u64) -> u64 {
    (a as i128).rem_euclid(n as i128) as u64
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// An endomorphism of a [`FinitePresentation`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endo {
    presentation: FinitePresentation,
    /// Row-major `k×k`, entry `(i, j)` reduced into `0..n_i`.
    matrix: Vec<u64>,
}

impl Endo {
    /// Validates the homomorphism condition `n_j · A_ij ≡ 0 (mod n_i)` and
    /// reduces the entries.
    pub fn new(presentation: FinitePresentation, rows: &[Vec<i64>]) -> Result<Self> {
        let k = presentation.rank();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Shape(format!("endomorphism matrix must be {k}x{k}")));
        }
        let n = presentation.orders();
        let mut matrix = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let r = reduce(v, n[i]);
                if mul_mod(r, n[j] % n[i], n[i]) != 0 {
                    return Err(Error::Domain(format!(
                        "entry ({i}, {j}) = {v} does not define a homomorphism Z/{} -> Z/{}",
                        n[j], n[i]
                    )));
                }
                matrix.push(r);
            }
        }
        Ok(Self {
            presentation,
            matrix,
        })
    }

    /// Multiplication by `a`.
    pub fn multiplication(presentation: &FinitePresentation, a: i64) -> Self {
        let k = presentation.rank();
        let mut matrix = vec![0; k * k];
        for (i, &n) in presentation.orders().iter().enumerate() {
            matrix[i * k + i] = reduce(a, n);
        }
        Self {
            presentation: presentation.clone(),
            matrix,
        }
    }

    pub fn identity(presentation: &FinitePresentation) -> Self {
        Self::multiplication(presentation, 1)
    }

    pub fn zero(presentation: &FinitePresentation) -> Self {
        Self::multiplication(presentation, 0)
    }

    pub fn presentation(&self) -> &FinitePresentation {
        &self.presentation
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[i * self.presentation.rank() + j]
    }

    pub fn satisfies_congruences(&self) -> bool {
        let n = self.presentation.orders();
        let k = n.len();
        (0..k).all(|i| (0..k).all(|j| mul_mod(self.entry(i, j), n[j] % n[i], n[i]) == 0))
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let n = self.presentation.orders();
        let k = n.len();
        (0..k)
            .map(|i| {
                let s: u128 = (0..k)
                    .map(|j| self.entry(i, j) as u128 * x[j] as u128)
                    .sum();
                (s % n[i] as u128) as u64
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        if self.presentation != other.presentation {
            return Err(Error::Shape("endomorphisms of different presentations".into()));
        }
        let n = self.presentation.orders();
        let k = n.len();
        let mut matrix = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let s: u128 = (0..k)
                    .map(|l| self.entry(i, l) as u128 * other.entry(l, j) as u128)
                    .sum();
                matrix[i * k + j] = (s % n[i] as u128) as u64;
            }
        }
        Ok(Endo {
            presentation: self.presentation.clone(),
            matrix,
        })
    }

    fn int_matrix(&self) -> IntMatrix {
        let k = self.presentation.rank();
        let data = self.matrix.iter().map(|&v| BigInt::from(v)).collect();
        IntMatrix::new(k, k, data).expect("square endomorphism matrix")
    }

    /// Basis (as columns) of the lattice `{ c ∈ Z^k : A·c ≡ 0 (mod n) }`,
    /// i.e. the preimage of the kernel in `Z^k`.
    fn kernel_lattice(&self) -> IntMatrix {
        let k = self.presentation.rank();
        let stacked = self
            .int_matrix()
            .hcat(&self.presentation.relation_matrix())
            .expect("same row count");
        // Solutions (c, y) of A·c + diag(n)·y = 0; projecting to c is injective.
        integer_kernel(&stacked).top_rows(k)
    }
}

/// `∏_{i,j} gcd(n_i, m_j)`, the number of homomorphisms `p -> q`.
pub fn hom_count(p: &FinitePresentation, q: &FinitePresentation) -> BigUint {
    p.orders()
        .iter()
        .flat_map(|&n| q.orders().iter().map(move |&m| BigUint::from(n.gcd(&m))))
        .product()
}

/// Lazily enumerates every endomorphism of `p` exactly once.
pub fn enumerate_endos(
    p: &FinitePresentation,
    budget: u64,
) -> Result<impl Iterator<Item = Endo> + '_> {
    let count = hom_count(p, p);
    if count > BigUint::from(budget) {
        return Err(Error::Budget { count, budget });
    }
    let n = p.orders();
    let k = n.len();
    // Cell (i, j) admits the multiples of n_i / gcd(n_i, n_j) below n_i.
    let radices: Vec<u64> = (0..k * k).map(|c| n[c / k].gcd(&n[c % k])).collect();
    let steps: Vec<u64> = (0..k * k).map(|c| n[c / k] / radices[c]).collect();
    let total: u64 = radices.iter().product();
    Ok((0..total).map(move |mut idx| {
        let matrix = radices
            .iter()
            .zip(&steps)
            .map(|(&r, &s)| {
                let digit = idx % r;
                idx /= r;
                digit * s
            })
            .collect();
        Endo {
            presentation: p.clone(),
            matrix,
        }
    }))
}

/// Isomorphism class of `f(M)`.
pub fn endo_image(f: &Endo) -> FgAbGroup {
    // Z^k maps onto the image; the relation lattice is the kernel lattice.
    from_relations(&f.kernel_lattice()).expect("image of a small group")
}

/// Isomorphism class of `ker f`.
pub fn endo_kernel(f: &Endo) -> FgAbGroup {
    // ker f = L / diag(n)Z^k where L is the kernel lattice with basis B.
    // Express diag(n) in the basis: B·Y = diag(n), then ker f ≅ coker(Y).
    let basis = f.kernel_lattice();
    let k = basis.rows();
    let res = snf(&basis);
    let mut w = mat_mul(&res.u, &f.presentation.relation_matrix()).expect("square");
    for i in 0..k {
        let d = res.s.get(i, i).clone();
        for j in 0..k {
            let (q, r) = w.get(i, j).div_rem(&d);
            debug_assert!(r == BigInt::from(0), "diag(n) lies in the kernel lattice");
            w.set(i, j, q);
        }
    }
    let y = mat_mul(&res.v, &w).expect("square");
    from_relations(&y).expect("kernel of a small group")
}

/// Isomorphism class of `M / f(M)`.
pub fn endo_coker(f: &Endo) -> FgAbGroup {
    let rel = f
        .presentation
        .relation_matrix()
        .hcat(&f.int_matrix())
        .expect("same row count");
    from_relations(&rel).expect("cokernel of a small group")
}

/// `M / f(M) ≅ ker f`.
pub fn is_endo_morphic(f: &Endo) -> bool {
    endo_coker(f) == endo_kernel(f)
}

/// First endomorphism (in enumeration order) that is not morphic.
pub fn find_non_morphic_endo(p: &FinitePresentation, budget: u64) -> Result<Option<Endo>> {
    Ok(enumerate_endos(p, budget)?.find(|f| !is_endo_morphic(f)))
}

/// Every endomorphism is morphic, checked by enumeration under [`DEFAULT_BUDGET`].
pub fn brute_is_morphic(p: &FinitePresentation) -> Result<bool> {
    brute_is_morphic_with_budget(p, DEFAULT_BUDGET)
}

pub fn brute_is_morphic_with_budget(p: &FinitePresentation, budget: u64) -> Result<bool> {
    Ok(find_non_morphic_endo(p, budget)?.is_none())
}

/// Every multiplication map `a = 0..exponent` is morphic.
pub fn brute_is_weakly_morphic(p: &FinitePresentation) -> bool {
    (0..p.exponent()).all(|a| is_endo_morphic(&Endo::multiplication(p, a as i64)))
}

/// Least `x` in `0..exponent` with `m·a = m·a²·x` for every element `m`.
pub fn regular_witness_search(p: &FinitePresentation, a: i64) -> Option<u64> {
    let a = a as i128;
    let elements: Vec<Vec<u64>> = p.elements().collect();
    (0..p.exponent()).find(|&x| {
        let b = a * a * x as i128;
        elements.iter().all(|m| {
            m.iter().zip(p.orders()).all(|(&mi, &n)| {
                let n = n as i128;
                (mi as i128 * a).rem_euclid(n) == (mi as i128 * b.rem_euclid(n)).rem_euclid(n)
            })
        })
    })
}

pub fn image_set(f: &Endo) -> BTreeSet<Vec<u64>> {
    f.presentation.elements().map(|x| f.apply(&x)).collect()
}

pub fn kernel_set(f: &Endo) -> BTreeSet<Vec<u64>> {
    f.presentation
        .elements()
        .filter(|x| f.apply(x).iter().all(|&v| v == 0))
        .collect()
}

/// `im φ = ker ψ` and `im ψ = ker φ` as sets of elements, so that
/// `... -ψ-> M -φ-> M -ψ-> M -φ-> ...` is exact.
pub fn is_exact_pair(phi: &Endo, psi: &Endo) -> bool {
    image_set(phi) == kernel_set(psi) && image_set(psi) == kernel_set(phi)
}

/// An endomorphism `ψ` with `ker ψ = M·a` and `ψ(M) = Ann_M(a)`, or `None`
/// when `M` is not `a`-morphic.
///
/// On each cyclic summand `Z/n` of the presentation, multiplication by
/// `n / gcd(a, n)` has kernel `gcd(a, n)·Z/n = (Z/n)·a` and image
/// `(n / gcd(a, n))·Z/n = Ann(a)`; the diagonal sum of these is tried first.
/// Enumeration under `budget` is the fallback.
pub fn lemma_x_witness_with_budget(
    p: &FinitePresentation,
    a: i64,
    budget: u64,
) -> Result<Option<Endo>> {
    let phi = Endo::multiplication(p, a);
    if !is_endo_morphic(&phi) {
        return Ok(None);
    }
    let k = p.rank();
    let rows: Vec<Vec<i64>> = p
        .orders()
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let g = reduce(a, n).gcd(&n);
            let mut row = vec![0i64; k];
            row[i] = (n / g) as i64;
            row
        })
        .collect();
    let psi = Endo::new(p.clone(), &rows)?;
    if is_exact_pair(&phi, &psi) {
        return Ok(Some(psi));
    }
    Ok(enumerate_endos(p, budget)?.find(|psi| is_exact_pair(&phi, psi)))
}

pub fn lemma_x_witness(p: &FinitePresentation, a: i64) -> Result<Option<Endo>> {
    lemma_x_witness_with_budget(p, a, DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::canonicalize;

    fn pres(orders: &[u64]) -> FinitePresentation {
        FinitePresentation::new(orders.to_vec()).unwrap()
    }

    fn g(orders: &[u64]) -> FgAbGroup {
        canonicalize(orders, 0).unwrap()
    }

    #[test]
    fn endo_counts() {
        assert_eq!(enumerate_endos(&pres(&[2, 4]), DEFAULT_BUDGET).unwrap().count(), 32);
        for n in 1..=12 {
            assert_eq!(enumerate_endos(&pres(&[n]), DEFAULT_BUDGET).unwrap().count(), n as usize);
        }
        assert_eq!(enumerate_endos(&pres(&[]), DEFAULT_BUDGET).unwrap().count(), 1);
    }

    #[test]
    fn budget_refusal_reports_count() {
        let err = enumerate_endos(&pres(&[2, 2, 2, 2, 2]), 1000).err().unwrap();
        assert_eq!(
            err,
            Error::Budget {
                count: BigUint::from(1u64 << 25),
                budget: 1000
            }
        );
    }

    #[test]
    fn hom_count_examples() {
        assert_eq!(hom_count(&pres(&[2]), &pres(&[3])), BigUint::from(1u32));
        assert_eq!(hom_count(&pres(&[2, 4]), &pres(&[2, 4])), BigUint::from(32u32));
        assert_eq!(hom_count(&pres(&[2]), &pres(&[4])), BigUint::from(2u32));
    }

    #[test]
    fn image_kernel_cokernel_examples() {
        let p = pres(&[2, 4]);
        let id = Endo::identity(&p);
        assert_eq!(endo_image(&id), g(&[2, 4]));
        assert_eq!(endo_kernel(&id), FgAbGroup::trivial());
        assert_eq!(endo_coker(&id), FgAbGroup::trivial());

        let two = Endo::multiplication(&p, 2);
        assert_eq!(endo_image(&two), g(&[2]));
        assert_eq!(endo_kernel(&two), g(&[2, 2]));
        assert_eq!(endo_coker(&two), g(&[2, 2]));

        let zero = Endo::zero(&p);
        assert_eq!(endo_image(&zero), FgAbGroup::trivial());
        assert_eq!(endo_kernel(&zero), g(&[2, 4]));
    }

    #[test]
    fn morphic_endo_examples() {
        let p = pres(&[2, 4]);
        assert!(is_endo_morphic(&Endo::identity(&p)));
        assert!(is_endo_morphic(&Endo::multiplication(&p, 2)));
        // e1 -> 0, e2 -> (1, 0)
        let f = Endo::new(p.clone(), &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(endo_image(&f), g(&[2]));
        assert_eq!(endo_coker(&f), g(&[4]));
        assert_eq!(endo_kernel(&f), g(&[2, 2]));
        assert!(!is_endo_morphic(&f));
    }

    #[test]
    fn constructor_rejects_non_homomorphisms() {
        // Z/2 -> Z/4 must land in {0, 2}.
        assert!(matches!(
            Endo::new(pres(&[2, 4]), &[vec![1, 0], vec![1, 1]]),
            Err(Error::Domain(_))
        ));
        assert!(Endo::new(pres(&[2, 4]), &[vec![1, 0], vec![2, 1]]).is_ok());
        assert!(matches!(
            Endo::new(pres(&[2, 4]), &[vec![1, 0]]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn brute_predicates() {
        let p = pres(&[2, 4]);
        assert!(!brute_is_morphic(&p).unwrap());
        assert!(brute_is_weakly_morphic(&p));
        for orders in [&[4][..], &[2, 2][..]] {
            let p = pres(orders);
            assert!(brute_is_morphic(&p).unwrap());
            assert!(brute_is_weakly_morphic(&p));
        }
    }

    #[test]
    fn regular_witnesses() {
        assert_eq!(regular_witness_search(&pres(&[4]), 2), None);
        assert_eq!(regular_witness_search(&pres(&[6]), 2), Some(2));
        for orders in [&[2][..], &[2, 4], &[3, 9], &[5]] {
            assert_eq!(regular_witness_search(&pres(orders), 1), Some(1));
        }
        assert_eq!(regular_witness_search(&pres(&[]), 1), Some(0));
        assert_eq!(regular_witness_search(&pres(&[6]), -2), Some(1));
    }

    #[test]
    fn lemma_x_examples() {
        let p = pres(&[2, 4]);
        let psi = lemma_x_witness(&p, 2).unwrap().unwrap();
        let phi = Endo::multiplication(&p, 2);
        let ma: BTreeSet<Vec<u64>> = [vec![0, 0], vec![0, 2]].into();
        assert_eq!(kernel_set(&psi), ma);
        assert_eq!(image_set(&psi), kernel_set(&phi));

        let psi = lemma_x_witness(&p, 1).unwrap().unwrap();
        assert_eq!(psi, Endo::zero(&p));

        let p4 = pres(&[4]);
        let psi = lemma_x_witness(&p4, 2).unwrap().unwrap();
        assert_eq!(psi, Endo::multiplication(&p4, 2));
    }

    #[test]
    fn lemma_x_construction_needs_no_enumeration() {
        let p = pres(&[2, 4, 3]);
        for a in -6..12 {
            let psi = lemma_x_witness_with_budget(&p, a, 0).unwrap().unwrap();
            assert!(is_exact_pair(&Endo::multiplication(&p, a), &psi));
        }
    }

    /// The congruence description of Hom is cross-checked against additivity of
    /// every generator assignment, for all presentations of order at most 12.
    #[test]
    fn congruence_constraint_matches_exhaustive_maps() {
        let mut presentations: Vec<Vec<u64>> = vec![vec![1], vec![1, 4], vec![3, 1]];
        for a in 2..=12u64 {
            presentations.push(vec![a]);
            for b in 2..=12 / a {
                presentations.push(vec![a, b]);
                for c in 2..=12 / (a * b) {
                    presentations.push(vec![a, b, c]);
                }
            }
        }
        for orders in presentations {
            let p = pres(&orders);
            let elements: Vec<Vec<u64>> = p.elements().collect();
            let k = orders.len();
            let mut valid = BTreeSet::new();
            // Every assignment of generator images, as k tuples of elements.
            let total = (elements.len() as u64).pow(k as u32);
            for mut idx in 0..total {
                let images: Vec<&Vec<u64>> = (0..k)
                    .map(|_| {
                        let e = &elements[(idx % elements.len() as u64) as usize];
                        idx /= elements.len() as u64;
                        e
                    })
                    .collect();
                let map = |x: &[u64]| -> Vec<u64> {
                    let mut acc = vec![0u64; k];
                    for (j, &xj) in x.iter().enumerate() {
                        for _ in 0..xj {
                            acc = p.add(&acc, images[j]);
                        }
                    }
                    acc
                };
                let additive = elements.iter().all(|x| {
                    elements
                        .iter()
                        .all(|y| map(&p.add(x, y)) == p.add(&map(x), &map(y)))
                });
                if additive {
                    let table: Vec<Vec<u64>> = elements.iter().map(|x| map(x)).collect();
                    valid.insert(table);
                }
            }
            // Compare as functions: a generator of order 1 admits many matrices
            // for the same map, and the enumeration must list each map once.
            let tables: Vec<Vec<Vec<u64>>> = enumerate_endos(&p, DEFAULT_BUDGET)
                .unwrap()
                .map(|f| elements.iter().map(|x| f.apply(x)).collect())
                .collect();
            let enumerated: BTreeSet<Vec<Vec<u64>>> = tables.iter().cloned().collect();
            assert_eq!(tables.len(), enumerated.len(), "duplicates for {orders:?}");
            assert_eq!(valid, enumerated, "presentation {orders:?}");
        }
    }
}
