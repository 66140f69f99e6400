//! Finite presentations of essentially small exact categories and the
//! classification of their dense (co)resolving subcategories.
//!
//! Objects live in a Krull–Schmidt setting: an object is a multiplicity
//! vector over named indecomposables, a short exact sequence is a triple of
//! such vectors, and a presentation carries a distinguished generator
//! family. The Grothendieck group K₀ is the free group on the
//! indecomposables modulo `sub − mid + ext` for each listed sequence.
//!
//! Dense subcategories closed under two-of-three for short exact sequences
//! correspond bijectively to subgroups of K₀ containing the image of the
//! generator family; [`classify`] computes that index set, and
//! [`verify_bijection`] brute-forces the correspondence on all objects with
//! multiplicities up to a bound.

use crate::abelian::{AbelianError, FgAbelianGroup, GroupElement, GroupStructure, Subgroup};
use crate::intlinalg::IntMatrix;
use crate::par;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExcatError {
    #[error("duplicate indecomposable name {0:?}")]
    DuplicateName(String),
    #[error("multiplicity vector has length {got}, presentation has {expected} indecomposables")]
    BadVector { expected: usize, got: usize },
    #[error("unknown indecomposable {0:?}")]
    UnknownIndecomposable(String),
    #[error("auto-generating split sequences requires ses_complete_bound")]
    SplitNeedsBound,
    #[error(
        "infinitely many dense (co)resolving subcategories: K0 modulo the generator image is {quotient}"
    )]
    InfinitelyMany { quotient: GroupStructure },
    #[error("SES list is complete only up to {available:?}, but bound {required} was requested")]
    IncompleteSes {
        required: u64,
        available: Option<u64>,
    },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Short exact sequence `sub ↣ mid ↠ ext`, each object a multiplicity
/// vector over the presentation's indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ses {
    pub sub: Vec<u64>,
    pub mid: Vec<u64>,
    pub ext: Vec<u64>,
}

impl Ses {
    pub fn new(sub: Vec<u64>, mid: Vec<u64>, ext: Vec<u64>) -> Self {
        Self { sub, mid, ext }
    }

    fn vectors(&self) -> [&[u64]; 3] {
        [&self.sub, &self.mid, &self.ext]
    }
}

/// Finite presentation of an essentially small exact category.
///
/// `ses_complete_bound`, when set, asserts that `ses_list` contains every
/// short exact sequence among objects whose multiplicities are all at most
/// that bound. The list may contain additional sequences beyond the bound;
/// completeness is a floor, not a cap. The bounded verifier needs the
/// assertion to make closure checking sound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCatPresentation {
    indecomposables: Vec<String>,
    ses_list: Vec<Ses>,
    generators: Vec<Vec<u64>>,
    ses_complete_bound: Option<u64>,
}

impl ExactCatPresentation {
    pub fn new(
        indecomposables: Vec<String>,
        ses_list: Vec<Ses>,
        generators: Vec<Vec<u64>>,
        ses_complete_bound: Option<u64>,
    ) -> Result<Self, ExcatError> {
        let n = indecomposables.len();
        let mut seen = BTreeSet::new();
        for name in &indecomposables {
            if !seen.insert(name) {
                return Err(ExcatError::DuplicateName(name.clone()));
            }
        }
        for s in &ses_list {
            for v in s.vectors() {
                if v.len() != n {
                    return Err(ExcatError::BadVector {
                        expected: n,
                        got: v.len(),
                    });
                }
            }
        }
        for g in &generators {
            if g.len() != n {
                return Err(ExcatError::BadVector {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        Ok(Self {
            indecomposables,
            ses_list,
            generators,
            ses_complete_bound,
        })
    }

    pub fn indecomposables(&self) -> &[String] {
        &self.indecomposables
    }

    /// Number of indecomposables, i.e. the ambient rank of K₀.
    pub fn rank(&self) -> usize {
        self.indecomposables.len()
    }

    pub fn ses_list(&self) -> &[Ses] {
        &self.ses_list
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn ses_complete_bound(&self) -> Option<u64> {
        self.ses_complete_bound
    }

    /// Largest multiplicity appearing in any single generator object.
    pub fn max_generator_multiplicity(&self) -> u64 {
        self.generators
            .iter()
            .flat_map(|g| g.iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn check_vector(&self, v: &[u64]) -> Result<(), ExcatError> {
        if v.len() != self.rank() {
            return Err(ExcatError::BadVector {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// The Grothendieck group of a presentation. The class map is the linear
/// extension of "indecomposable ↦ ambient basis vector", so an object's
/// class is its multiplicity vector read as coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Result {
    group: FgAbelianGroup,
}

impl K0Result {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn class_of(&self, object: &[u64]) -> Result<GroupElement, ExcatError> {
        if object.len() != self.group.ambient_rank() {
            return Err(ExcatError::BadVector {
                expected: self.group.ambient_rank(),
                got: object.len(),
            });
        }
        Ok(GroupElement::new(
            object.iter().map(|&x| BigInt::from(x)).collect(),
        ))
    }
}

/// One dense (co)resolving subcategory, represented by the subgroup of K₀
/// its objects generate. The subgroup always contains the generator image.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DenseClass {
    pub subgroup: Subgroup,
}

/// Which closure axiom to read the classification against. A dense
/// subcategory closed under kernels of admissible epimorphisms is closed
/// under cokernels of admissible monomorphisms and vice versa, so the two
/// variants classify identically; the flag exists so callers can assert
/// that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Resolving,
    Coresolving,
}

/// Grothendieck group: `Z^n` modulo `sub − mid + ext` over the SES list.
pub fn k0(p: &ExactCatPresentation) -> K0Result {
    let n = p.rank();
    let rows: Vec<Vec<BigInt>> = p
        .ses_list
        .iter()
        .map(|s| {
            (0..n)
                .map(|i| BigInt::from(s.sub[i]) - BigInt::from(s.mid[i]) + BigInt::from(s.ext[i]))
                .collect()
        })
        .collect();
    let relations = IntMatrix::from_rows_with_cols(n, rows).expect("validated vectors");
    K0Result {
        group: FgAbelianGroup::from_relations(n, &relations).expect("matching column count"),
    }
}

/// Subgroup of K₀ generated by the classes of the generator family.
pub fn generator_image(p: &ExactCatPresentation, k: &K0Result) -> Subgroup {
    let gens: Vec<GroupElement> = p
        .generators
        .iter()
        .map(|g| k.class_of(g).expect("validated vectors"))
        .collect();
    k.group
        .subgroup_generated(&gens)
        .expect("validated vectors")
}

/// Classifies the dense (co)resolving subcategories: one class per
/// subgroup of K₀ containing the generator image. Fails with
/// [`ExcatError::InfinitelyMany`] when that index set is infinite, i.e.
/// when K₀ modulo the generator image has positive free rank.
pub fn classify(p: &ExactCatPresentation, variant: Variant) -> Result<Vec<DenseClass>, ExcatError> {
    let _ = variant;
    let k = k0(p);
    let image = generator_image(p, &k);
    match k.group.subgroups_containing(&image) {
        Ok(subs) => Ok(subs
            .into_iter()
            .map(|subgroup| DenseClass { subgroup })
            .collect()),
        Err(AbelianError::InfinitelyMany { quotient }) => {
            Err(ExcatError::InfinitelyMany { quotient })
        }
        Err(other) => Err(other.into()),
    }
}

/// Membership oracle of a dense class: an object belongs iff its K₀ class
/// lies in the class's subgroup.
pub fn g_membership(
    p: &ExactCatPresentation,
    class: &DenseClass,
    object: &[u64],
) -> Result<bool, ExcatError> {
    p.check_vector(object)?;
    let e = GroupElement::new(object.iter().map(|&x| BigInt::from(x)).collect());
    Ok(class.subgroup.contains(&e)?)
}

/// Subgroup of K₀ generated by the classes of the listed objects (together
/// with the K₀ relations, which every subgroup contains by construction).
pub fn f_subgroup(p: &ExactCatPresentation, objects: &[Vec<u64>]) -> Result<Subgroup, ExcatError> {
    let k = k0(p);
    let mut elems = Vec::with_capacity(objects.len());
    for v in objects {
        p.check_vector(v)?;
        elems.push(k.class_of(v)?);
    }
    Ok(k.group.subgroup_generated(&elems)?)
}

/// True iff every object within reach of the completeness bound admits a
/// listed short exact sequence onto it whose middle term is a finite direct
/// sum of generator objects. The scan runs over objects with
/// multiplicities at most `ses_complete_bound − max generator
/// multiplicity`; the zero object is always covered.
pub fn verify_generator(p: &ExactCatPresentation) -> Result<bool, ExcatError> {
    let Some(bound) = p.ses_complete_bound else {
        return Err(ExcatError::IncompleteSes {
            required: 0,
            available: None,
        });
    };
    let limit = bound.saturating_sub(p.max_generator_multiplicity());
    let targets = bounded_vectors(p.rank(), limit);
    let ok = par::map_collect(&targets, |v| {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        p.ses_list
            .iter()
            .any(|s| &s.ext == v && is_nonneg_combination(&s.mid, &p.generators))
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Per-class results of the bounded brute-force verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCheck {
    pub subgroup: Subgroup,
    /// Members of the class with all multiplicities ≤ bound, in
    /// lexicographic order.
    pub members: Vec<Vec<u64>>,
    /// Two-of-three closure under every listed SES inside the bound.
    pub ses_closure_ok: bool,
    /// Closure under direct sums that stay inside the bound.
    pub sum_closure_ok: bool,
    /// Every object within half the bound is dominated by a member.
    pub density_ok: bool,
    /// The members generate exactly this subgroup, and the subgroup's
    /// bounded members are exactly this set. Skipped (true) below the
    /// applicability bound.
    pub roundtrip_ok: bool,
    /// No bounded non-member generates the same subgroup when adjoined.
    pub maximality_ok: bool,
    pub failures: Vec<String>,
}

impl ClassCheck {
    pub fn passed(&self) -> bool {
        self.ses_closure_ok
            && self.sum_closure_ok
            && self.density_ok
            && self.roundtrip_ok
            && self.maximality_ok
    }
}

/// Report of [`verify_bijection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub bound: u64,
    /// Roundtrip and injectivity checks need the bound to reach twice the
    /// largest generator multiplicity; below that they are skipped.
    pub roundtrip_applicable: bool,
    pub classes: Vec<ClassCheck>,
    /// Distinct classes have distinct bounded member sets. Skipped (true)
    /// below the applicability bound.
    pub injectivity_ok: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.injectivity_ok && self.classes.iter().all(ClassCheck::passed)
    }
}

/// Runs the bounded checks for a single subgroup, which need not come from
/// [`classify`] — handing in a deliberately corrupted subgroup is the
/// intended negative control.
pub fn check_class(
    p: &ExactCatPresentation,
    class: &DenseClass,
    bound: u64,
) -> Result<ClassCheck, ExcatError> {
    let n = p.rank();
    if class.subgroup.ambient_rank() != n {
        return Err(ExcatError::BadVector {
            expected: n,
            got: class.subgroup.ambient_rank(),
        });
    }
    let mut failures = Vec::new();
    let vectors = bounded_vectors(n, bound);
    let flags = par::map_collect(&vectors, |v| {
        g_membership(p, class, v).expect("vector lengths validated")
    });
    let members: Vec<Vec<u64>> = vectors
        .iter()
        .zip(&flags)
        .filter(|(_, &m)| m)
        .map(|(v, _)| v.clone())
        .collect();
    let member_set: BTreeSet<&Vec<u64>> = members.iter().collect();

    // (a) two-of-three over every listed SES inside the bound
    let mut ses_closure_ok = true;
    for s in p.ses_list() {
        if s.vectors().iter().any(|v| !within(v, bound)) {
            continue;
        }
        let m = [
            member_set.contains(&s.sub),
            member_set.contains(&s.mid),
            member_set.contains(&s.ext),
        ];
        let violated = (m[0] && m[2] && !m[1]) || (m[0] && m[1] && !m[2]) || (m[1] && m[2] && !m[0]);
        if violated {
            ses_closure_ok = false;
            failures.push(format!(
                "ses closure violated at {:?} >-> {:?} ->> {:?}",
                s.sub, s.mid, s.ext
            ));
        }
    }

    // (b) closure under direct sums inside the bound
    let mut sum_closure_ok = true;
    'sums: for (i, v) in members.iter().enumerate() {
        for w in &members[i..] {
            let sum: Vec<u64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
            if within(&sum, bound) && !member_set.contains(&sum) {
                sum_closure_ok = false;
                failures.push(format!("sum closure violated at {v:?} + {w:?}"));
                break 'sums;
            }
        }
    }

    // (c) bounded density: everything within half the bound is dominated
    // by a member (half avoids false negatives at the boundary, where the
    // complement would overflow the bound)
    let mut density_ok = true;
    for v in bounded_vectors(n, bound / 2) {
        let dominated = members
            .iter()
            .any(|s| s.iter().zip(&v).all(|(a, b)| a >= b));
        if !dominated {
            density_ok = false;
            failures.push(format!("density violated at {v:?}"));
            break;
        }
    }

    // (d) roundtrip: members generate the subgroup back, and the generated
    // subgroup's bounded members are the same set
    let applicable = bound >= 2 * p.max_generator_multiplicity();
    let mut roundtrip_ok = true;
    if applicable {
        let regenerated = f_subgroup(p, &members)?;
        if regenerated != class.subgroup {
            roundtrip_ok = false;
            failures.push(format!(
                "members generate {regenerated}, not {}",
                class.subgroup
            ));
        } else {
            let reclass = DenseClass {
                subgroup: regenerated,
            };
            let remembers: Vec<Vec<u64>> = vectors
                .iter()
                .filter(|v| g_membership(p, &reclass, v).expect("validated"))
                .cloned()
                .collect();
            if remembers != members {
                roundtrip_ok = false;
                failures.push("bounded members changed after regeneration".to_string());
            }
        }
    }

    // maximality: adjoining any bounded non-member grows the subgroup
    let mut maximality_ok = true;
    for (v, &is_member) in vectors.iter().zip(&flags) {
        if is_member {
            continue;
        }
        let extra = Subgroup::from_rows_unchecked(
            n,
            vec![v.iter().map(|&x| BigInt::from(x)).collect()],
        )?;
        if class.subgroup.join(&extra)? == class.subgroup {
            maximality_ok = false;
            failures.push(format!("non-member {v:?} does not enlarge the subgroup"));
            break;
        }
    }

    Ok(ClassCheck {
        subgroup: class.subgroup.clone(),
        members,
        ses_closure_ok,
        sum_closure_ok,
        density_ok,
        roundtrip_ok,
        maximality_ok,
        failures,
    })
}

/// Brute-force verification of the classification on all objects with
/// multiplicities at most `bound`: closure checks, bounded density,
/// roundtrip and injectivity per class. Requires the SES list to be
/// complete up to the bound.
pub fn verify_bijection(
    p: &ExactCatPresentation,
    bound: u64,
) -> Result<VerificationReport, ExcatError> {
    match p.ses_complete_bound {
        Some(avail) if avail >= bound => {}
        available => {
            return Err(ExcatError::IncompleteSes {
                required: bound,
                available,
            })
        }
    }
    let classes = classify(p, Variant::Resolving)?;
    let checks: Vec<ClassCheck> = classes
        .iter()
        .map(|c| check_class(p, c, bound))
        .collect::<Result<_, _>>()?;

    let roundtrip_applicable = bound >= 2 * p.max_generator_multiplicity();
    let mut injectivity_ok = true;
    if roundtrip_applicable {
        for i in 0..checks.len() {
            for j in i + 1..checks.len() {
                if checks[i].members == checks[j].members {
                    injectivity_ok = false;
                }
            }
        }
    }

    Ok(VerificationReport {
        bound,
        roundtrip_applicable,
        classes: checks,
        injectivity_ok,
    })
}

/// All multiplicity vectors of length `n` with entries ≤ `bound`,
/// lexicographically ordered.
pub fn bounded_vectors(n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        out.push(v.clone());
        // increment from the least significant (last) coordinate
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
        if v.iter().all(|&x| x == 0) {
            return out;
        }
    }
}

fn within(v: &[u64], bound: u64) -> bool {
    v.iter().all(|&x| x <= bound)
}

/// Whether `target` is a finite N-linear combination of the generator
/// vectors.
fn is_nonneg_combination(target: &[u64], gens: &[Vec<u64>]) -> bool {
    if target.iter().all(|&x| x == 0) {
        return true;
    }
    let Some((g, rest)) = gens.split_first() else {
        return false;
    };
    if g.iter().all(|&x| x == 0) {
        return is_nonneg_combination(target, rest);
    }
    let kmax = target
        .iter()
        .zip(g)
        .filter(|(_, &gi)| gi > 0)
        .map(|(&ti, &gi)| ti / gi)
        .min()
        .unwrap_or(0);
    for k in 0..=kmax {
        let remainder: Vec<u64> = target.iter().zip(g).map(|(&ti, &gi)| ti - k * gi).collect();
        if is_nonneg_combination(&remainder, rest) {
            return true;
        }
    }
    false
}

/// Human-readable label for a multiplicity vector, e.g. `R^2+I`.
pub fn object_label(names: &[String], v: &[u64]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(v)
        .filter(|(_, &k)| k > 0)
        .map(|(name, &k)| {
            if k == 1 {
                name.clone()
            } else {
                format!("{name}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// On-disk presentation schema. Objects are maps from indecomposable name
/// to multiplicity; omitted names default to 0. With `include_split`, all
/// split sequences up to `ses_complete_bound` are appended automatically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    pub indecomposables: Vec<String>,
    #[serde(default)]
    pub ses: Vec<SesEntry>,
    #[serde(default)]
    pub generators: Vec<BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ses_complete_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub include_split: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SesEntry {
    #[serde(default)]
    pub sub: BTreeMap<String, u64>,
    #[serde(default)]
    pub mid: BTreeMap<String, u64>,
    #[serde(default)]
    pub ext: BTreeMap<String, u64>,
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<ExactCatPresentation, ExcatError> {
        let names = self.indecomposables.clone();
        let to_vec = |map: &BTreeMap<String, u64>| -> Result<Vec<u64>, ExcatError> {
            for key in map.keys() {
                if !names.contains(key) {
                    return Err(ExcatError::UnknownIndecomposable(key.clone()));
                }
            }
            Ok(names
                .iter()
                .map(|name| map.get(name).copied().unwrap_or(0))
                .collect())
        };

        let mut ses_list = Vec::with_capacity(self.ses.len());
        for entry in &self.ses {
            ses_list.push(Ses::new(
                to_vec(&entry.sub)?,
                to_vec(&entry.mid)?,
                to_vec(&entry.ext)?,
            ));
        }
        if self.include_split {
            let Some(bound) = self.ses_complete_bound else {
                return Err(ExcatError::SplitNeedsBound);
            };
            let present: BTreeSet<Ses> = ses_list.iter().cloned().collect();
            let objects = bounded_vectors(names.len(), bound);
            for x in &objects {
                for y in &objects {
                    let sum: Vec<u64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                    if !within(&sum, bound) {
                        continue;
                    }
                    let split = Ses::new(x.clone(), sum, y.clone());
                    if !present.contains(&split) {
                        ses_list.push(split);
                    }
                }
            }
        }
        let generators = self
            .generators
            .iter()
            .map(to_vec)
            .collect::<Result<Vec<_>, _>>()?;
        ExactCatPresentation::new(names, ses_list, generators, self.ses_complete_bound)
    }
}
