//! The hyperoperation on `D_2n`
//!
//! ```text
//! x o y = { xy, xy^-1, a, a^-1, a^2, a^-2, b }
//! ```
//!
//! together with the commutation relation it induces and exhaustive checks
//! of the two Hv-group axioms (weak associativity and reproduction).
//!
//! Other hyperoperations can be plugged in through [`Hyperoperation`]; only
//! the one above ships.

use rayon::prelude::*;

use crate::dihedral::{GroupCtx, GroupElement};
use crate::error::{Error, Result};

/// A finite set of group elements, sorted in global element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperProduct {
    members: Vec<GroupElement>,
}

impl HyperProduct {
    pub fn from_elements(elements: impl IntoIterator<Item = GroupElement>) -> Self {
        let mut members: Vec<_> = elements.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        HyperProduct { members }
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_superset_of(&self, other: &HyperProduct) -> bool {
        other.members.iter().all(|&x| self.contains(x))
    }

    pub fn union(&self, other: &HyperProduct) -> HyperProduct {
        HyperProduct::from_elements(self.members.iter().chain(&other.members).copied())
    }
}

/// A hyperoperation `D_2n x D_2n -> P*(D_2n)`.
pub trait Hyperoperation: Sync {
    fn group(&self) -> GroupCtx;

    fn hyper_product(&self, x: GroupElement, y: GroupElement) -> HyperProduct;
}

/// The Hv-group `(D_2n, o)` with its fixed elements `{a, a^-1, a^2, a^-2, b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HvGroupCtx {
    group: GroupCtx,
    fixed_set: HyperProduct,
}

impl HvGroupCtx {
    pub fn new(group: GroupCtx) -> Self {
        // Collisions (n <= 4) collapse: n = 2 gives {e, a, b}.
        let fixed_set = HyperProduct::from_elements([
            group.rotation(1),
            group.rotation(-1),
            group.rotation(2),
            group.rotation(-2),
            group.reflection(0),
        ]);
        HvGroupCtx { group, fixed_set }
    }

    pub fn with_n(n: u32) -> Result<Self> {
        Ok(Self::new(GroupCtx::new(n)?))
    }

    pub fn group(&self) -> GroupCtx {
        self.group
    }

    pub fn fixed_set(&self) -> &HyperProduct {
        &self.fixed_set
    }
}

impl Hyperoperation for HvGroupCtx {
    fn group(&self) -> GroupCtx {
        self.group
    }

    fn hyper_product(&self, x: GroupElement, y: GroupElement) -> HyperProduct {
        let g = &self.group;
        let xy = g.multiply(x, y);
        let xy_inv = g.multiply(x, g.inverse(y));
        let mut members = Vec::with_capacity(self.fixed_set.len() + 2);
        members.extend_from_slice(self.fixed_set.members());
        members.push(xy);
        members.push(xy_inv);
        HyperProduct::from_elements(members)
    }
}

/// `U o V`, the union of `x o y` over `x in U`, `y in V`.
pub fn hyper_product_sets<H: Hyperoperation + ?Sized>(
    op: &H,
    left: &[GroupElement],
    right: &[GroupElement],
) -> Result<HyperProduct> {
    if left.is_empty() || right.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut all = Vec::new();
    for &x in left {
        for &y in right {
            all.extend_from_slice(op.hyper_product(x, y).members());
        }
    }
    Ok(HyperProduct::from_elements(all))
}

/// `x o y == y o x` as sets.
pub fn commutes<H: Hyperoperation + ?Sized>(op: &H, x: GroupElement, y: GroupElement) -> bool {
    x == y || op.hyper_product(x, y) == op.hyper_product(y, x)
}

/// Precomputed commutation relation over all of `D_2n`, indexed by
/// [`GroupCtx::index_of`].
#[derive(Debug, Clone)]
pub struct CommutationTable {
    group: GroupCtx,
    table: Vec<bool>,
}

impl CommutationTable {
    pub fn new<H: Hyperoperation + ?Sized>(op: &H) -> Self {
        let group = op.group();
        let els = group.elements();
        let m = els.len();
        let products: Vec<Vec<HyperProduct>> = els
            .iter()
            .map(|&x| els.iter().map(|&y| op.hyper_product(x, y)).collect())
            .collect();
        let mut table = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = i == j || products[i][j] == products[j][i];
            }
        }
        CommutationTable { group, table }
    }

    pub fn group(&self) -> GroupCtx {
        self.group
    }

    #[inline]
    pub fn commutes_idx(&self, i: usize, j: usize) -> bool {
        self.table[i * self.group.order() + j]
    }

    pub fn commutes(&self, x: GroupElement, y: GroupElement) -> bool {
        self.commutes_idx(self.group.index_of(x), self.group.index_of(y))
    }
}

/// Largest `n` accepted by the exhaustive axiom checks.
pub const AXIOM_MAX_N: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakAssociativityReport {
    pub holds: bool,
    pub triples_checked: u64,
    /// Lexicographically smallest failing `(s, t, u)` by element index.
    pub witness: Option<(GroupElement, GroupElement, GroupElement)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproductionReport {
    pub holds: bool,
    /// Smallest `x` with `x o J != J` or `J o x != J`.
    pub witness: Option<GroupElement>,
}

/// Element sets as bitmasks over element indices; `2n <= 128`.
struct ProductTable {
    order: usize,
    masks: Vec<u128>,
}

impl ProductTable {
    fn new<H: Hyperoperation + ?Sized>(op: &H) -> Result<Self> {
        let g = op.group();
        if g.n() > AXIOM_MAX_N {
            return Err(Error::SizeGuard {
                what: "axiom check n",
                len: g.n() as usize,
                max: AXIOM_MAX_N as usize,
            });
        }
        let els = g.elements();
        let masks = els
            .iter()
            .flat_map(|&x| els.iter().map(move |&y| (x, y)))
            .map(|(x, y)| {
                op.hyper_product(x, y)
                    .members()
                    .iter()
                    .fold(0u128, |m, &z| m | 1u128 << g.index_of(z))
            })
            .collect();
        Ok(ProductTable {
            order: els.len(),
            masks,
        })
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> u128 {
        self.masks[i * self.order + j]
    }

    fn left_mul(&self, i: usize, set: u128) -> u128 {
        bits(set).fold(0, |acc, j| acc | self.get(i, j))
    }

    fn right_mul(&self, set: u128, j: usize) -> u128 {
        bits(set).fold(0, |acc, i| acc | self.get(i, j))
    }
}

fn bits(mut set: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(i)
        }
    })
}

/// Checks `s o (t o u) ∩ (s o t) o u != ∅` for every triple.
pub fn check_weak_associativity<H: Hyperoperation + ?Sized>(
    op: &H,
) -> Result<WeakAssociativityReport> {
    let table = ProductTable::new(op)?;
    let m = table.order;
    let witness = (0..m)
        .into_par_iter()
        .find_map_first(|s| {
            for t in 0..m {
                let st = table.get(s, t);
                for u in 0..m {
                    let left = table.left_mul(s, table.get(t, u));
                    let right = table.right_mul(st, u);
                    if left & right == 0 {
                        return Some((s, t, u));
                    }
                }
            }
            None
        });
    let g = op.group();
    Ok(WeakAssociativityReport {
        holds: witness.is_none(),
        triples_checked: (m as u64).pow(3),
        witness: witness.map(|(s, t, u)| (g.element_at(s), g.element_at(t), g.element_at(u))),
    })
}

/// Checks `x o J = J = J o x` for every `x`.
pub fn check_reproduction<H: Hyperoperation + ?Sized>(op: &H) -> Result<ReproductionReport> {
    let table = ProductTable::new(op)?;
    let m = table.order;
    let full = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    let witness = (0..m).into_par_iter().find_first(|&x| {
        table.left_mul(x, full) != full || table.right_mul(full, x) != full
    });
    Ok(ReproductionReport {
        holds: witness.is_none(),
        witness: witness.map(|x| op.group().element_at(x)),
    })
}
