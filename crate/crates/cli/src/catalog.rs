//! Built-in catalog of two-dimensional simple singularities.
//!
//! Each entry carries the Grothendieck group of the module category with
//! the class of the ring as the first free coordinate, plus the closed-form
//! number of dense resolving subcategories. The closed form is an
//! assertion, not a lookup: reports always recompute the count by subgroup
//! enumeration and check the two agree.

use num_bigint::BigInt;

use denseclass::abelian::{
    count_divisors, AbelianError, FgAbelianGroup, GroupElement, GroupStructure,
};
use denseclass::intlinalg::IntMatrix;

/// One catalog row.
#[derive(Debug, Clone)]
pub struct SingularityEntry {
    /// `a_n`, `d_n_even`, `d_n_odd`, `e6`, `e7` or `e8`.
    pub type_tag: &'static str,
    /// Display label, e.g. `a_5`, `d_6`, `e_8`.
    pub label: String,
    pub parameter: Option<u64>,
    /// K₀ of the module category; the designated class of the ring is the
    /// first coordinate.
    pub k0: FgAbelianGroup,
    pub designated: GroupElement,
    /// Closed-form count of dense resolving subcategories.
    pub expected_count: BigInt,
}

impl SingularityEntry {
    fn new(
        type_tag: &'static str,
        label: String,
        parameter: Option<u64>,
        torsion: &[i64],
        expected_count: BigInt,
    ) -> Self {
        let ambient = 1 + torsion.len();
        let rows: Vec<Vec<BigInt>> = torsion
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                (0..ambient)
                    .map(|j| {
                        if j == i + 1 {
                            BigInt::from(t)
                        } else {
                            BigInt::from(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let relations = IntMatrix::from_rows_with_cols(ambient, rows).expect("diagonal rows");
        let k0 = FgAbelianGroup::from_relations(ambient, &relations).expect("valid relations");
        let mut designated = vec![BigInt::from(0); ambient];
        designated[0] = BigInt::from(1);
        Self {
            type_tag,
            label,
            parameter,
            k0,
            designated: GroupElement::new(designated),
            expected_count,
        }
    }

    pub fn k0_structure(&self) -> GroupStructure {
        self.k0.invariant_factors()
    }

    /// Count of subgroups of K₀ containing the class of the ring,
    /// recomputed by enumeration.
    pub fn recomputed_count(&self) -> Result<BigInt, AbelianError> {
        let span = self.k0.subgroup_generated(std::slice::from_ref(&self.designated))?;
        Ok(BigInt::from(self.k0.subgroups_containing(&span)?.len()))
    }
}

/// Builds the entry for a singularity type. `n` is required for `a_n`
/// (n ≥ 1) and `d_n` (n ≥ 4) and must be absent for the exceptional types.
pub fn entry(type_tag: &str, n: Option<u64>) -> Result<SingularityEntry, String> {
    match (type_tag, n) {
        ("a_n", Some(n)) if n >= 1 => {
            let torsion = i64::try_from(n + 1).map_err(|_| "parameter too large".to_string())?;
            Ok(SingularityEntry::new(
                "a_n",
                format!("a_{n}"),
                Some(n),
                &[torsion],
                count_divisors(&BigInt::from(n + 1)).expect("n + 1 >= 2"),
            ))
        }
        ("a_n", _) => Err("type a_n needs --n with n >= 1".to_string()),
        ("d_n", Some(n)) if n >= 4 => Ok(if n % 2 == 0 {
            SingularityEntry::new("d_n_even", format!("d_{n}"), Some(n), &[2, 2], BigInt::from(5))
        } else {
            SingularityEntry::new("d_n_odd", format!("d_{n}"), Some(n), &[4], BigInt::from(3))
        }),
        ("d_n", _) => Err("type d_n needs --n with n >= 4".to_string()),
        ("e6", None) => Ok(SingularityEntry::new(
            "e6",
            "e_6".to_string(),
            None,
            &[3],
            BigInt::from(2),
        )),
        ("e7", None) => Ok(SingularityEntry::new(
            "e7",
            "e_7".to_string(),
            None,
            &[2],
            BigInt::from(2),
        )),
        ("e8", None) => Ok(SingularityEntry::new(
            "e8",
            "e_8".to_string(),
            None,
            &[],
            BigInt::from(1),
        )),
        ("e6" | "e7" | "e8", Some(_)) => {
            Err(format!("type {type_tag} does not take a parameter"))
        }
        _ => Err(format!(
            "unknown singularity type {type_tag:?} (expected a_n, d_n, e6, e7 or e8)"
        )),
    }
}

/// The full table up to parameter `max_n`: all `a_n` and `d_n` rows in
/// range plus the exceptional rows.
pub fn all_entries(max_n: u64) -> Vec<SingularityEntry> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(entry("a_n", Some(n)).expect("in range"));
    }
    for n in 4..=max_n.max(3) {
        out.push(entry("d_n", Some(n)).expect("in range"));
    }
    out.push(entry("e6", None).expect("exceptional"));
    out.push(entry("e7", None).expect("exceptional"));
    out.push(entry("e8", None).expect("exceptional"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts_match_enumeration() {
        for e in all_entries(8) {
            assert_eq!(
                e.recomputed_count().unwrap(),
                e.expected_count,
                "{}",
                e.label
            );
        }
    }

    #[test]
    fn a5_counts_divisors_of_six() {
        let e = entry("a_n", Some(5)).unwrap();
        assert_eq!(e.expected_count, BigInt::from(4));
        assert_eq!(e.k0_structure().to_string(), "Z x Z/6");
    }

    #[test]
    fn d_parity_split() {
        let even = entry("d_n", Some(6)).unwrap();
        assert_eq!(even.type_tag, "d_n_even");
        assert_eq!(even.k0_structure().to_string(), "Z x Z/2 x Z/2");
        assert_eq!(even.expected_count, BigInt::from(5));
        let odd = entry("d_n", Some(7)).unwrap();
        assert_eq!(odd.type_tag, "d_n_odd");
        assert_eq!(odd.k0_structure().to_string(), "Z x Z/4");
        assert_eq!(odd.expected_count, BigInt::from(3));
    }

    #[test]
    fn e8_is_free_with_one_class() {
        let e = entry("e8", None).unwrap();
        assert_eq!(e.k0_structure().to_string(), "Z");
        assert_eq!(e.recomputed_count().unwrap(), BigInt::from(1));
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        assert!(entry("a_n", Some(0)).is_err());
        assert!(entry("a_n", None).is_err());
        assert!(entry("d_n", Some(3)).is_err());
        assert!(entry("e8", Some(1)).is_err());
        assert!(entry("b_n", Some(2)).is_err());
    }
}
