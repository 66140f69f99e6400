//! Finitely generated abelian groups presented as an ambient free group
//! modulo a relation lattice.
//!
//! A group is `Z^n / L` for a sublattice `L ⊆ Z^n` kept in canonical
//! Hermite form, so equal groups have identical representations. Subgroups
//! are intermediate lattices `L ⊆ M ⊆ Z^n`, also canonical. Storing
//! subgroups as lattices rather than element sets keeps the infinite
//! ambient case (free part plus torsion) uniform with the finite one.

use crate::intlinalg::{hnf, lattice_member, snf, IntMatrix, LinAlgError};
use crate::par;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Default cap on group order for subgroup enumeration. Unbounded
/// enumeration of a user-supplied group is a foot-gun.
pub const DEFAULT_ORDER_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("relation matrix has {got} columns, ambient rank is {expected}")]
    ColumnCountMismatch { expected: usize, got: usize },
    #[error("coordinate vector has length {got}, ambient rank is {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("the group is infinite (free rank {free_rank}), so it has infinitely many subgroups")]
    InfiniteGroup { free_rank: usize },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: BigInt, bound: u64 },
    #[error("infinitely many intermediate subgroups: the quotient {quotient} has positive free rank")]
    InfinitelyMany { quotient: GroupStructure },
    #[error("divisor count needs a positive integer, got {0}")]
    NonPositive(BigInt),
}

impl From<LinAlgError> for AbelianError {
    fn from(e: LinAlgError) -> Self {
        match e {
            LinAlgError::DimensionMismatch { expected, got } => {
                AbelianError::AmbientMismatch { expected, got }
            }
            other => panic!("unexpected linear algebra failure: {other}"),
        }
    }
}

/// Invariant-factor decomposition: `Z^free_rank ⊕ Z/t₁ ⊕ Z/t₂ ⊕ …` with
/// the torsion factors forming a divisibility chain, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupStructure {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl GroupStructure {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Element of a finitely generated abelian group, stored as a coset
/// representative in ambient coordinates. Two elements are equal iff their
/// difference lies in the relation lattice; see
/// [`FgAbelianGroup::elements_equal`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub coordinates: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(coordinates: Vec<BigInt>) -> Self {
        Self { coordinates }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![BigInt::zero(); rank])
    }
}

/// Subgroup of `Z^n / L`, stored as the intermediate lattice
/// `L ⊆ M ⊆ Z^n` in canonical Hermite form. Equal subgroups have
/// byte-identical representations, and the derived ordering is the
/// deterministic listing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    lattice: IntMatrix,
}

impl Subgroup {
    /// Canonicalizes arbitrary generating rows into a subgroup lattice
    /// without checking that the relation lattice is contained in it.
    /// Use [`FgAbelianGroup::subgroup_generated`] unless deliberately
    /// constructing an inconsistent lattice (e.g. as a negative control
    /// for the verifier).
    pub fn from_rows_unchecked(
        ambient_rank: usize,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<Self, AbelianError> {
        let m = IntMatrix::from_rows_with_cols(ambient_rank, rows)?;
        Ok(Self {
            lattice: hnf(&m).lattice_basis(),
        })
    }

    /// Canonical basis of the intermediate lattice.
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn ambient_rank(&self) -> usize {
        self.lattice.cols()
    }

    /// Whether the subgroup is the whole group, i.e. the lattice is `Z^n`.
    pub fn is_full(&self) -> bool {
        self.lattice.is_identity()
    }

    /// True iff the element's coordinate vector lies in the lattice.
    pub fn contains(&self, e: &GroupElement) -> Result<bool, AbelianError> {
        if e.coordinates.len() != self.ambient_rank() {
            return Err(AbelianError::AmbientMismatch {
                expected: self.ambient_rank(),
                got: e.coordinates.len(),
            });
        }
        Ok(lattice_member(&self.lattice, &e.coordinates)?)
    }

    /// Smallest subgroup containing both operands.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup, AbelianError> {
        let stacked = self.lattice.vstack(&other.lattice).map_err(|_| {
            AbelianError::AmbientMismatch {
                expected: self.ambient_rank(),
                got: other.ambient_rank(),
            }
        })?;
        Ok(Subgroup {
            lattice: hnf(&stacked).lattice_basis(),
        })
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.lattice.rows() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.lattice.cols() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.lattice.at(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Finitely generated abelian group `Z^n / L`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgAbelianGroup {
    ambient_rank: usize,
    relation_lattice: IntMatrix,
}

impl FgAbelianGroup {
    /// Builds `Z^n / ⟨rows of relations⟩`, canonicalizing the relations.
    pub fn from_relations(
        ambient_rank: usize,
        relations: &IntMatrix,
    ) -> Result<Self, AbelianError> {
        if relations.cols() != ambient_rank {
            return Err(AbelianError::ColumnCountMismatch {
                expected: ambient_rank,
                got: relations.cols(),
            });
        }
        Ok(Self {
            ambient_rank,
            relation_lattice: hnf(relations).lattice_basis(),
        })
    }

    /// The free group `Z^n`.
    pub fn free(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            relation_lattice: IntMatrix::empty(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relation_lattice(&self) -> &IntMatrix {
        &self.relation_lattice
    }

    pub fn element(&self, coordinates: Vec<BigInt>) -> Result<GroupElement, AbelianError> {
        if coordinates.len() != self.ambient_rank {
            return Err(AbelianError::AmbientMismatch {
                expected: self.ambient_rank,
                got: coordinates.len(),
            });
        }
        Ok(GroupElement::new(coordinates))
    }

    /// Coset equality: the difference of representatives lies in the
    /// relation lattice.
    pub fn elements_equal(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<bool, AbelianError> {
        if a.coordinates.len() != self.ambient_rank || b.coordinates.len() != self.ambient_rank {
            return Err(AbelianError::AmbientMismatch {
                expected: self.ambient_rank,
                got: a.coordinates.len().max(b.coordinates.len()),
            });
        }
        let diff: Vec<BigInt> = a
            .coordinates
            .iter()
            .zip(&b.coordinates)
            .map(|(x, y)| x - y)
            .collect();
        Ok(lattice_member(&self.relation_lattice, &diff)?)
    }

    /// Invariant factors of the group: torsion chain and free rank.
    pub fn invariant_factors(&self) -> GroupStructure {
        let sf = snf(&self.relation_lattice);
        let rank = sf
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count();
        let torsion = sf
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        GroupStructure {
            torsion,
            free_rank: self.ambient_rank - rank,
        }
    }

    /// A finitely generated abelian group has finitely many subgroups iff
    /// it is finite, i.e. its free rank is zero.
    pub fn has_finitely_many_subgroups(&self) -> bool {
        self.invariant_factors().is_finite()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.invariant_factors().order()
    }

    /// Subgroup generated by the relation lattice together with the given
    /// elements. Any generating set with the same span yields a
    /// byte-identical result.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Result<Subgroup, AbelianError> {
        let mut rows = self.relation_lattice.row_vecs();
        for g in gens {
            if g.coordinates.len() != self.ambient_rank {
                return Err(AbelianError::AmbientMismatch {
                    expected: self.ambient_rank,
                    got: g.coordinates.len(),
                });
            }
            rows.push(g.coordinates.clone());
        }
        Subgroup::from_rows_unchecked(self.ambient_rank, rows)
    }

    /// The trivial subgroup (just the relation lattice).
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            lattice: self.relation_lattice.clone(),
        }
    }

    /// The whole group as a subgroup (lattice `Z^n`).
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            lattice: IntMatrix::identity(self.ambient_rank),
        }
    }

    /// Quotient by a subgroup: `Z^n / M`. Coordinates pass through
    /// unchanged, so elements of the quotient use the same representatives.
    pub fn quotient(&self, h: &Subgroup) -> Result<FgAbelianGroup, AbelianError> {
        if h.ambient_rank() != self.ambient_rank {
            return Err(AbelianError::AmbientMismatch {
                expected: self.ambient_rank,
                got: h.ambient_rank(),
            });
        }
        Ok(FgAbelianGroup {
            ambient_rank: self.ambient_rank,
            relation_lattice: h.lattice.clone(),
        })
    }

    /// One representative per element of a finite group, in a fixed order.
    ///
    /// Representatives are mixed-radix tuples against the Smith basis,
    /// mapped back to ambient coordinates.
    pub fn element_representatives(&self) -> Result<Vec<GroupElement>, AbelianError> {
        self.element_representatives_bounded(DEFAULT_ORDER_BOUND)
    }

    pub fn element_representatives_bounded(
        &self,
        bound: u64,
    ) -> Result<Vec<GroupElement>, AbelianError> {
        let n = self.ambient_rank;
        let sf = snf(&self.relation_lattice);
        let rank = sf
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count();
        if rank < n {
            return Err(AbelianError::InfiniteGroup {
                free_rank: n - rank,
            });
        }
        let order: BigInt = sf.invariant_factors.iter().product();
        if order > BigInt::from(bound) {
            return Err(AbelianError::BoundExceeded { order, bound });
        }
        let dims: Vec<u64> = sf
            .invariant_factors
            .iter()
            .map(|d| u64::try_from(d).expect("factor bounded by order"))
            .collect();
        let v_inv = sf.v.inverse_unimodular().expect("V is unimodular");

        let count = usize::try_from(&order).expect("order within bound");
        let mut out = Vec::with_capacity(count);
        let mut c = vec![0u64; n];
        loop {
            let coordinates: Vec<BigInt> = (0..n)
                .map(|j| (0..n).map(|i| BigInt::from(c[i]) * v_inv.at(i, j)).sum())
                .collect();
            out.push(GroupElement::new(coordinates));
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(out);
                }
                c[i] += 1;
                if c[i] < dims[i] {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    /// All subgroups of a finite group, complete and duplicate-free, in
    /// the deterministic lattice order.
    ///
    /// Fixpoint closure: start from the cyclic subgroups of all elements,
    /// and close under pairwise join until stable. Joins within a round may
    /// run in parallel; the result order does not depend on that.
    pub fn enumerate_subgroups(&self) -> Result<Vec<Subgroup>, AbelianError> {
        self.enumerate_subgroups_bounded(DEFAULT_ORDER_BOUND)
    }

    pub fn enumerate_subgroups_bounded(&self, bound: u64) -> Result<Vec<Subgroup>, AbelianError> {
        let reps = self.element_representatives_bounded(bound)?;
        let cyclic: Vec<IntMatrix> = par::map_collect(&reps, |e| {
            let mut rows = self.relation_lattice.row_vecs();
            rows.push(e.coordinates.clone());
            let m = IntMatrix::from_rows_with_cols(self.ambient_rank, rows)
                .expect("representative has ambient length");
            hnf(&m).lattice_basis()
        });
        let mut set: BTreeSet<IntMatrix> = cyclic.into_iter().collect();
        loop {
            let lattices: Vec<IntMatrix> = set.iter().cloned().collect();
            let mut pairs = Vec::new();
            for i in 0..lattices.len() {
                for j in i + 1..lattices.len() {
                    pairs.push((i, j));
                }
            }
            let joined: Vec<IntMatrix> = par::map_collect(&pairs, |&(i, j)| {
                let stacked = lattices[i]
                    .vstack(&lattices[j])
                    .expect("equal ambient rank");
                hnf(&stacked).lattice_basis()
            });
            let before = set.len();
            set.extend(joined);
            if set.len() == before {
                break;
            }
        }
        Ok(set
            .into_iter()
            .map(|lattice| Subgroup { lattice })
            .collect())
    }

    /// Subgroups of the group containing `n`, obtained by enumerating the
    /// subgroups of the quotient; the lattices pull back unchanged.
    pub fn subgroups_containing(&self, n: &Subgroup) -> Result<Vec<Subgroup>, AbelianError> {
        self.subgroups_containing_bounded(n, DEFAULT_ORDER_BOUND)
    }

    pub fn subgroups_containing_bounded(
        &self,
        n: &Subgroup,
        bound: u64,
    ) -> Result<Vec<Subgroup>, AbelianError> {
        let q = self.quotient(n)?;
        match q.enumerate_subgroups_bounded(bound) {
            Ok(subs) => Ok(subs),
            Err(AbelianError::InfiniteGroup { .. }) => Err(AbelianError::InfinitelyMany {
                quotient: q.invariant_factors(),
            }),
            Err(other) => Err(other),
        }
    }
}

/// Number of positive divisors of a positive integer.
pub fn count_divisors(l: &BigInt) -> Result<BigInt, AbelianError> {
    if !l.is_positive() {
        return Err(AbelianError::NonPositive(l.clone()));
    }
    let mut n = l.clone();
    let mut count = BigInt::one();
    let mut p = BigInt::from(2);
    while (&p * &p) <= n {
        if n.is_multiple_of(&p) {
            let mut exp = 0u32;
            while n.is_multiple_of(&p) {
                n /= &p;
                exp += 1;
            }
            count *= BigInt::from(exp + 1);
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        count *= BigInt::from(2);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn group(n: usize, relations: &[&[i64]]) -> FgAbelianGroup {
        let m = if relations.is_empty() {
            IntMatrix::empty(n)
        } else {
            IntMatrix::from_i64_rows(relations)
        };
        FgAbelianGroup::from_relations(n, &m).unwrap()
    }

    fn structure(torsion: &[i64], free_rank: usize) -> GroupStructure {
        GroupStructure {
            torsion: torsion.iter().map(|&t| big(t)).collect(),
            free_rank,
        }
    }

    #[test]
    fn group_from_single_relation_is_z2() {
        let g = group(1, &[&[2]]);
        assert_eq!(g.invariant_factors(), structure(&[2], 0));
    }

    #[test]
    fn group_z_plus_torsion() {
        let g = group(2, &[&[0, 3]]);
        assert_eq!(g.invariant_factors(), structure(&[3], 1));
    }

    #[test]
    fn group_with_no_relations_is_free() {
        let g = group(2, &[]);
        assert_eq!(g.invariant_factors(), structure(&[], 2));
        assert_eq!(g, FgAbelianGroup::free(2));
    }

    #[test]
    fn relation_column_mismatch_is_rejected() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2, 3]]);
        assert!(matches!(
            FgAbelianGroup::from_relations(2, &m),
            Err(AbelianError::ColumnCountMismatch { .. })
        ));
    }

    #[test]
    fn invariant_factors_diagonal_relations() {
        let g = group(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(g.invariant_factors(), structure(&[2, 2], 0));
        assert_eq!(g.order(), Some(big(4)));
    }

    #[test]
    fn invariant_factors_nondiagonal_relations() {
        let g = group(2, &[&[2, 4], &[6, 8]]);
        assert_eq!(g.invariant_factors(), structure(&[2, 4], 0));
    }

    #[test]
    fn finiteness_criterion() {
        assert!(group(1, &[&[4]]).has_finitely_many_subgroups());
        assert!(!group(1, &[]).has_finitely_many_subgroups());
        assert!(group(0, &[]).has_finitely_many_subgroups());
    }

    #[test]
    fn subgroup_generated_by_nothing_is_trivial() {
        let g = group(2, &[&[0, 2]]);
        let h = g.subgroup_generated(&[]).unwrap();
        assert_eq!(h, g.trivial_subgroup());
    }

    #[test]
    fn subgroup_generated_index_two() {
        // Z + Z/2, generated by (1,0): index 2.
        let g = group(2, &[&[0, 2]]);
        let h = g
            .subgroup_generated(&[GroupElement::from_i64s(&[1, 0])])
            .unwrap();
        assert_eq!(
            h.lattice(),
            &IntMatrix::from_i64_rows(&[&[1, 0], &[0, 2]])
        );
        assert_eq!(g.quotient(&h).unwrap().order(), Some(big(2)));
        assert!(!h.is_full());
    }

    #[test]
    fn subgroup_generated_spanning_is_full() {
        let g = group(2, &[&[0, 2]]);
        let h = g
            .subgroup_generated(&[
                GroupElement::from_i64s(&[1, 0]),
                GroupElement::from_i64s(&[0, 1]),
            ])
            .unwrap();
        assert!(h.is_full());
    }

    #[test]
    fn subgroup_generated_is_canonical() {
        let g = group(3, &[&[0, 0, 4]]);
        let a = g
            .subgroup_generated(&[
                GroupElement::from_i64s(&[1, 2, 0]),
                GroupElement::from_i64s(&[0, 3, 1]),
            ])
            .unwrap();
        // reordered and unimodularly recombined generators
        let b = g
            .subgroup_generated(&[
                GroupElement::from_i64s(&[1, 5, 1]),  // g1 + g2
                GroupElement::from_i64s(&[0, 3, 1]),  // g2
                GroupElement::from_i64s(&[-1, 1, 1]), // g2 - g1
            ])
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn contains_zero_always() {
        let g = group(2, &[&[2, 0], &[0, 2]]);
        let h = g.trivial_subgroup();
        assert!(h.contains(&GroupElement::zero(2)).unwrap());
    }

    #[test]
    fn contains_independent_generator_fails() {
        let g = group(2, &[&[2, 0], &[0, 2]]);
        let h = g
            .subgroup_generated(&[GroupElement::from_i64s(&[1, 0])])
            .unwrap();
        assert!(!h.contains(&GroupElement::from_i64s(&[0, 1])).unwrap());
    }

    #[test]
    fn contains_uses_relations() {
        // In Z + Z/2: 2·(1,1) = (2,2) ≡ (2,0) mod (0,2).
        let g = group(2, &[&[0, 2]]);
        let h = g
            .subgroup_generated(&[GroupElement::from_i64s(&[1, 1])])
            .unwrap();
        assert!(h.contains(&GroupElement::from_i64s(&[2, 0])).unwrap());
        assert!(!h.contains(&GroupElement::from_i64s(&[1, 0])).unwrap());
    }

    #[test]
    fn contains_rejects_wrong_rank() {
        let g = group(2, &[&[0, 2]]);
        let h = g.trivial_subgroup();
        assert!(matches!(
            h.contains(&GroupElement::from_i64s(&[1])),
            Err(AbelianError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn quotient_by_full_group_is_trivial() {
        let g = group(2, &[&[0, 2]]);
        let q = g.quotient(&g.full_subgroup()).unwrap();
        assert!(q.invariant_factors().is_trivial());
    }

    #[test]
    fn quotient_by_cartan_row_lattice() {
        let g = FgAbelianGroup::free(1);
        let h = g
            .subgroup_generated(&[GroupElement::from_i64s(&[2])])
            .unwrap();
        let q = g.quotient(&h).unwrap();
        assert_eq!(q.invariant_factors(), structure(&[2], 0));
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_the_group() {
        let g = group(2, &[&[2, 4], &[6, 8]]);
        let q = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(q, g);
    }

    #[test]
    fn elements_equal_mod_relations() {
        let g = group(2, &[&[0, 2]]);
        assert!(g
            .elements_equal(
                &GroupElement::from_i64s(&[1, 3]),
                &GroupElement::from_i64s(&[1, 1]),
            )
            .unwrap());
        assert!(!g
            .elements_equal(
                &GroupElement::from_i64s(&[1, 2]),
                &GroupElement::from_i64s(&[1, 1]),
            )
            .unwrap());
    }

    #[test]
    fn representatives_of_klein_four() {
        let g = group(2, &[&[2, 0], &[0, 2]]);
        let reps = g.element_representatives().unwrap();
        assert_eq!(reps.len(), 4);
        // pairwise distinct as cosets
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.elements_equal(&reps[i], &reps[j]).unwrap(), i == j);
            }
        }
    }

    #[test]
    fn representatives_require_finite_group() {
        let g = group(2, &[&[0, 2]]);
        assert!(matches!(
            g.element_representatives(),
            Err(AbelianError::InfiniteGroup { free_rank: 1 })
        ));
    }

    #[test]
    fn enumerate_klein_four_has_five_subgroups() {
        let g = group(2, &[&[2, 0], &[0, 2]]);
        let subs = g.enumerate_subgroups().unwrap();
        assert_eq!(subs.len(), 5);
        // sorted, duplicate-free
        for w in subs.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn enumerate_z4_has_three_subgroups() {
        let g = group(1, &[&[4]]);
        assert_eq!(g.enumerate_subgroups().unwrap().len(), 3);
    }

    #[test]
    fn enumerate_cyclic_matches_divisor_count() {
        for m in 1..=30i64 {
            let g = group(1, &[&[m]]);
            let subs = g.enumerate_subgroups().unwrap();
            assert_eq!(
                BigInt::from(subs.len()),
                count_divisors(&big(m)).unwrap(),
                "Z/{m}"
            );
        }
    }

    #[test]
    fn enumerate_infinite_group_fails() {
        let g = group(1, &[]);
        assert!(matches!(
            g.enumerate_subgroups(),
            Err(AbelianError::InfiniteGroup { .. })
        ));
    }

    #[test]
    fn enumerate_respects_order_bound() {
        let g = group(1, &[&[101]]);
        assert!(matches!(
            g.enumerate_subgroups_bounded(100),
            Err(AbelianError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn subgroups_containing_full_group() {
        let g = group(2, &[&[0, 2]]);
        let subs = g.subgroups_containing(&g.full_subgroup()).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(subs[0].is_full());
    }

    #[test]
    fn subgroups_containing_e6_count() {
        // Z + Z/3 over the span of (1,0): two intermediate subgroups.
        let g = group(2, &[&[0, 3]]);
        let n = g
            .subgroup_generated(&[GroupElement::from_i64s(&[1, 0])])
            .unwrap();
        assert_eq!(g.subgroups_containing(&n).unwrap().len(), 2);
    }

    #[test]
    fn subgroups_containing_in_z() {
        let g = FgAbelianGroup::free(1);
        let n = g
            .subgroup_generated(&[GroupElement::from_i64s(&[2])])
            .unwrap();
        let subs = g.subgroups_containing(&n).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].lattice(), &IntMatrix::from_i64_rows(&[&[1]]));
        assert_eq!(subs[1].lattice(), &IntMatrix::from_i64_rows(&[&[2]]));
    }

    #[test]
    fn subgroups_containing_infinite_quotient() {
        let g = FgAbelianGroup::free(2);
        let n = g.trivial_subgroup();
        match g.subgroups_containing(&n) {
            Err(AbelianError::InfinitelyMany { quotient }) => {
                assert_eq!(quotient, structure(&[], 2));
            }
            other => panic!("expected InfinitelyMany, got {other:?}"),
        }
    }

    #[test]
    fn containing_matches_quotient_enumeration() {
        let g = group(3, &[&[0, 2, 0], &[0, 0, 2]]);
        let n = g
            .subgroup_generated(&[GroupElement::from_i64s(&[1, 0, 0])])
            .unwrap();
        let direct = g.subgroups_containing(&n).unwrap();
        assert_eq!(direct.len(), 5);
        let q = g.quotient(&n).unwrap();
        let via_quotient = q.enumerate_subgroups().unwrap();
        let a: Vec<_> = direct.iter().map(Subgroup::lattice).collect();
        let b: Vec<_> = via_quotient.iter().map(Subgroup::lattice).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(count_divisors(&big(1)).unwrap(), big(1));
        assert_eq!(count_divisors(&big(12)).unwrap(), big(6));
        assert_eq!(count_divisors(&big(7)).unwrap(), big(2));
        assert_eq!(count_divisors(&big(200)).unwrap(), big(12));
        assert!(matches!(
            count_divisors(&big(0)),
            Err(AbelianError::NonPositive(_))
        ));
    }

    #[test]
    fn structure_display() {
        assert_eq!(structure(&[], 0).to_string(), "0");
        assert_eq!(structure(&[2], 1).to_string(), "Z x Z/2");
        assert_eq!(structure(&[2, 4], 0).to_string(), "Z/2 x Z/4");
        assert_eq!(structure(&[], 3).to_string(), "Z^3");
    }

    #[test]
    fn subgroup_display_is_compact() {
        let g = group(2, &[&[0, 2]]);
        let h = g
            .subgroup_generated(&[GroupElement::from_i64s(&[1, 0])])
            .unwrap();
        assert_eq!(h.to_string(), "[[1, 0], [0, 2]]");
        assert_eq!(FgAbelianGroup::free(2).trivial_subgroup().to_string(), "[]");
    }
}
