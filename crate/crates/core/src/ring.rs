//! Base rings `Z`, `Z/n` and finite products of `Z/n_i`, and modules over them.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::abgroup::{direct_sum, FgAbGroup};
use crate::arith;
use crate::error::{Error, Result};
use crate::morphic::{is_a_morphic, is_weakly_morphic};
use crate::oracle::{endo_coker, endo_kernel, Endo, FinitePresentation};

/// Cap on the number of scalar tuples [`product_module_check`] evaluates.
pub const PRODUCT_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Modular(u64),
    /// `Z/n1 × ... × Z/nk`, nonempty.
    Product(Vec<u64>),
}

impl BaseRing {
    pub fn modular(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Z/0 is Z; use Integers".into()));
        }
        Ok(Self::Modular(n))
    }

    pub fn product(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::Domain(
                "product ring needs at least one component, each n >= 1".into(),
            ));
        }
        Ok(Self::Product(moduli))
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Modular(n) => write!(f, "Z/{n}"),
            BaseRing::Product(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("Z/{n}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// A finitely generated abelian group viewed as a module over a [`BaseRing`].
/// Over a product ring there is one group per ring component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModule {
    ring: BaseRing,
    groups: Vec<FgAbGroup>,
}

fn check_compatible(n: u64, g: &FgAbGroup) -> Result<()> {
    match g.exponent() {
        Some(e) if n % e == 0 => Ok(()),
        _ => Err(Error::Domain(format!("{g} is not a Z/{n}-module"))),
    }
}

impl RingModule {
    pub fn over_integers(group: FgAbGroup) -> Self {
        Self {
            ring: BaseRing::Integers,
            groups: vec![group],
        }
    }

    /// `group` as a `Z/n`-module; its exponent must divide `n`.
    pub fn over_modular(n: u64, group: FgAbGroup) -> Result<Self> {
        let ring = BaseRing::modular(n)?;
        check_compatible(n, &group)?;
        Ok(Self {
            ring,
            groups: vec![group],
        })
    }

    /// `M1 × ... × Mk` over `Z/n1 × ... × Z/nk`.
    pub fn product(components: Vec<(u64, FgAbGroup)>) -> Result<Self> {
        let ring = BaseRing::product(components.iter().map(|(n, _)| *n).collect())?;
        for (n, g) in &components {
            check_compatible(*n, g)?;
        }
        Ok(Self {
            ring,
            groups: components.into_iter().map(|(_, g)| g).collect(),
        })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    /// The underlying group (the first component for product rings).
    pub fn group(&self) -> &FgAbGroup {
        &self.groups[0]
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    /// Splits a product-ring module into its `Z/n_i`-module components.
    pub fn components(&self) -> Vec<RingModule> {
        match &self.ring {
            BaseRing::Product(ns) => ns
                .iter()
                .zip(&self.groups)
                .map(|(&n, g)| RingModule {
                    ring: BaseRing::Modular(n),
                    groups: vec![g.clone()],
                })
                .collect(),
            _ => vec![self.clone()],
        }
    }
}

/// Nonnegative generator of `Ann_Z(M)`: the exponent for finite `M`, else `0`.
pub fn ann_ring(m: &FgAbGroup) -> u64 {
    m.exponent().unwrap_or(0)
}

/// The ring of multiplication maps, `Z / Ann_Z(M)`.
pub fn s_m_ring(m: &FgAbGroup) -> BaseRing {
    match ann_ring(m) {
        0 => BaseRing::Integers,
        e => BaseRing::Modular(e),
    }
}

/// Least `x` in `0..n` with `a ≡ a²·x (mod n)`.
pub fn ring_regular_witness(n: u64, a: u64) -> Option<u64> {
    let a = a as u128 % n as u128;
    let a2 = a * a % n as u128;
    (0..n).find(|&x| (a2 * x as u128) % n as u128 == a)
}

/// `Z/n` is (von Neumann) regular iff `n` is squarefree; `Z` is not.
pub fn is_regular_ring(r: &BaseRing) -> bool {
    match r {
        BaseRing::Integers => false,
        BaseRing::Modular(n) => arith::is_squarefree(*n),
        BaseRing::Product(ns) => ns.iter().all(|&n| arith::is_squarefree(n)),
    }
}

/// `M/Ma ≅ Ann_M(a)` for every scalar of the base ring.
///
/// Over `Z/n` the action factors through `Z -> Z/n`, so the scalars
/// `0..n` cover the ring. Over a product ring the predicate is evaluated
/// per component.
pub fn is_weakly_morphic_over(m: &RingModule) -> bool {
    match &m.ring {
        BaseRing::Integers => is_weakly_morphic(m.group()).holds,
        BaseRing::Modular(n) => (0..*n).all(|a| is_a_morphic(m.group(), a as i64)),
        BaseRing::Product(_) => m.components().iter().all(is_weakly_morphic_over),
    }
}

/// Evaluates weak morphicity of `∏ M_i` over `∏ Z/n_i` directly, by running
/// every scalar tuple `(a_1, ..., a_k)` through the element-level oracle, and
/// fails with [`Error::Disagreement`] unless the answer equals the
/// conjunction of the componentwise predicates.
pub fn product_module_check(components: &[RingModule]) -> Result<bool> {
    let mut moduli = Vec::with_capacity(components.len());
    let mut blocks = Vec::new();
    for c in components {
        match c.ring {
            BaseRing::Modular(n) => moduli.push(n),
            _ => {
                return Err(Error::Domain(format!(
                    "product components must be Z/n-modules, got a module over {}",
                    c.ring
                )))
            }
        }
        blocks.push(FinitePresentation::from_group(c.group())?);
    }
    let tuples: BigUint = moduli.iter().map(|&n| BigUint::from(n)).product();
    if tuples > BigUint::from(PRODUCT_BUDGET) {
        return Err(Error::Budget {
            count: tuples,
            budget: PRODUCT_BUDGET,
        });
    }

    let orders: Vec<u64> = blocks.iter().flat_map(|b| b.orders().to_vec()).collect();
    let total = FinitePresentation::new(orders)?;
    let k = total.rank();
    let owner: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| std::iter::repeat_n(i, b.rank()))
        .collect();

    let count: u64 = moduli.iter().product();
    let mut direct = true;
    for mut idx in 0..count {
        let scalars: Vec<i64> = moduli
            .iter()
            .map(|&n| {
                let a = idx % n;
                idx /= n;
                a as i64
            })
            .collect();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut row = vec![0; k];
                row[i] = scalars[owner[i]];
                row
            })
            .collect();
        let phi = Endo::new(total.clone(), &rows)?;
        if endo_coker(&phi) != endo_kernel(&phi) {
            direct = false;
            break;
        }
    }

    let componentwise = components.iter().all(is_weakly_morphic_over);
    if direct != componentwise {
        return Err(Error::Disagreement(format!(
            "product predicate {direct} but componentwise conjunction {componentwise}"
        )));
    }
    Ok(direct)
}

/// Identifies `∏ Z/n_i` with `Z/∏n_i` for pairwise coprime `n_i`, carrying the
/// module `∏ M_i` to `⊕ M_i`.
pub fn crt_identify(components: &[RingModule]) -> Result<RingModule> {
    let mut n = 1u64;
    let mut group = FgAbGroup::trivial();
    for c in components {
        let BaseRing::Modular(ni) = c.ring else {
            return Err(Error::Domain("CRT needs Z/n components".into()));
        };
        if n.gcd(&ni) != 1 {
            return Err(Error::Domain(format!(
                "moduli are not pairwise coprime ({ni} shares a factor with {n})"
            )));
        }
        n = n
            .checked_mul(ni)
            .ok_or_else(|| Error::Overflow("product of moduli".into()))?;
        group = direct_sum(&group, c.group());
    }
    RingModule::over_modular(n, group)
}
