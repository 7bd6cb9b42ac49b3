//! Weak conjugacy and the twisted-multiplicity decision procedure at the
//! level of characters.

use alloc::vec::Vec;

use crate::character::{
    character_inner, induce, induce_linear, mackey_inner, permutation_character, ClassFunction,
    LinearCharacter,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GassmannReport {
    pub weakly_conjugate: bool,
    pub conjugate: bool,
    /// Some `g` with `g H1 g^-1 = H2`.
    pub conjugator: Option<usize>,
    /// `(|c ∩ H1|, |c ∩ H2|)` for every class `c` of `G`.
    pub class_profile: Vec<(usize, usize)>,
    /// Whether `Ind_{H1} 1 = Ind_{H2} 1` as class functions.
    pub induced_equal: bool,
    /// `a[i][j] = <Ind_{Hj} 1, Ind_{Hi} 1>`.
    pub a_matrix: [[u64; 2]; 2],
}

/// Decides weak conjugacy three ways (class intersection counts, induced
/// trivial characters, Mackey counts) and requires them to agree.
pub fn weak_conjugacy(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Result<GassmannReport> {
    let mut profile = alloc::vec![(0usize, 0usize); g.class_count()];
    for &x in h1.members() {
        profile[g.class_of(x)].0 += 1;
    }
    for &x in h2.members() {
        profile[g.class_of(x)].1 += 1;
    }
    let by_classes = profile.iter().all(|(a, b)| a == b);

    let ind1 = induce(g, h1, &ClassFunction::trivial(h1.as_group()))?;
    let ind2 = induce(g, h2, &ClassFunction::trivial(h2.as_group()))?;
    if ind1 != permutation_character(g, h1)? || ind2 != permutation_character(g, h2)? {
        return Err(Error::CrossCheck(
            "induced trivial character differs from the fixed-coset count".into(),
        ));
    }
    let induced_equal = ind1 == ind2;
    if induced_equal != by_classes {
        return Err(Error::CrossCheck(
            "induced-character equality disagrees with class intersection counts".into(),
        ));
    }

    let t1 = LinearCharacter::trivial(h1.as_group());
    let t2 = LinearCharacter::trivial(h2.as_group());
    let a = a_matrix(g, h1, &t1, h2, &t2)?;
    let conjugator = g.are_conjugate_subgroups(h1, h2)?;
    let conjugate = conjugator.is_some();
    if conjugate && !by_classes {
        return Err(Error::CrossCheck("conjugate subgroups that are not weakly conjugate".into()));
    }
    if by_classes && !(a[0][0] == a[1][0] && a[0][1] == a[1][1]) {
        return Err(Error::CrossCheck("weakly conjugate pair with unequal a-matrix".into()));
    }
    Ok(GassmannReport {
        weakly_conjugate: by_classes,
        conjugate,
        conjugator,
        class_profile: profile,
        induced_equal,
        a_matrix: a,
    })
}

/// `a[i][j] = <Ind_{Hj} chi_j, Ind_{Hi} chi_i>` by Mackey's formula.
pub fn a_matrix(
    g: &FiniteGroup,
    h1: &Subgroup,
    chi1: &LinearCharacter,
    h2: &Subgroup,
    chi2: &LinearCharacter,
) -> Result<[[u64; 2]; 2]> {
    let a11 = mackey_inner(g, h1, chi1, h1, chi1)?;
    let a22 = mackey_inner(g, h2, chi2, h2, chi2)?;
    let a12 = mackey_inner(g, h2, chi2, h1, chi1)?;
    let a21 = mackey_inner(g, h1, chi1, h2, chi2)?;
    if a12 != a21 {
        return Err(Error::CrossCheck(alloc::format!(
            "a-matrix is not symmetric: a12 = {a12}, a21 = {a21}"
        )));
    }
    Ok([[a11, a12], [a21, a22]])
}

/// The twisted-multiplicity criterion: `a11 = a21` and `a12 = a22`,
/// cross-checked against equality of the induced characters.
pub fn solo_test(
    g: &FiniteGroup,
    h1: &Subgroup,
    chi1: &LinearCharacter,
    h2: &Subgroup,
    chi2: &LinearCharacter,
) -> Result<bool> {
    let a = a_matrix(g, h1, chi1, h2, chi2)?;
    let by_multiplicities = a[0][0] == a[1][0] && a[0][1] == a[1][1];
    let direct = induce_linear(g, h1, chi1)? == induce_linear(g, h2, chi2)?;
    if by_multiplicities != direct {
        return Err(Error::CrossCheck(
            "multiplicity criterion disagrees with induced-character equality".into(),
        ));
    }
    Ok(direct)
}

/// One orbit of `K` on `G/H`: the double coset `K s H` and its size
/// `[K : K ∩ s H s^-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitPart {
    pub representative: usize,
    pub index: usize,
}

/// Decomposition of `Res_K Ind_H 1` into transitive permutation
/// representations, one per double coset `K s H`.
pub fn res_ind_decomposition(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<OrbitPart>> {
    let parts: Vec<OrbitPart> = g
        .double_cosets(k, h)?
        .into_iter()
        .map(|d| OrbitPart {
            representative: d.representative,
            index: d.size / h.order(),
        })
        .collect();
    let total: usize = parts.iter().map(|p| p.index).sum();
    if total != h.index() {
        return Err(Error::CrossCheck("orbit sizes do not sum to the index".into()));
    }
    Ok(parts)
}

/// `<Ind_{H1} 1, Ind_{H2} 1>` computed directly from class functions.
pub fn permutation_inner(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Result<u64> {
    character_inner(g, &permutation_character(g, h1)?, &permutation_character(g, h2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::character::linear_characters;

    #[test]
    fn gassmann_pair_is_weakly_but_not_conjugate() {
        let t = catalog::gassmann();
        let r = weak_conjugacy(&t.group, &t.h1, &t.h2).unwrap();
        assert!(r.weakly_conjugate);
        assert!(!r.conjugate);
        let a = r.a_matrix;
        assert!(a[0][0] == a[0][1] && a[0][1] == a[1][0] && a[1][0] == a[1][1]);
        let t1 = LinearCharacter::trivial(t.h1.as_group());
        let t2 = LinearCharacter::trivial(t.h2.as_group());
        assert!(solo_test(&t.group, &t.h1, &t1, &t.h2, &t2).unwrap());
    }

    #[test]
    fn klein_subgroups_are_not_weakly_conjugate() {
        let t = catalog::klein_pair();
        let r = weak_conjugacy(&t.group, &t.h1, &t.h2).unwrap();
        assert!(!r.weakly_conjugate && !r.conjugate);
    }

    #[test]
    fn conjugate_pair_passes_with_transported_character() {
        let t = catalog::s3_transpositions();
        let r = weak_conjugacy(&t.group, &t.h1, &t.h2).unwrap();
        assert!(r.weakly_conjugate && r.conjugate);
        let x = r.conjugator.unwrap();
        for chi in linear_characters(t.h1.as_group()).unwrap() {
            let moved = chi.transport(&t.group, &t.h1, &t.h2, x).unwrap();
            assert!(solo_test(&t.group, &t.h1, &chi, &t.h2, &moved).unwrap());
        }
    }

    #[test]
    fn s4_cyclic_and_klein_differ() {
        let t = catalog::s4_cyclic_klein();
        let t1 = LinearCharacter::trivial(t.h1.as_group());
        let t2 = LinearCharacter::trivial(t.h2.as_group());
        let a = a_matrix(&t.group, &t.h1, &t1, &t.h2, &t2).unwrap();
        // Both index-6 double coset counts are 3; only the V4 diagonal differs.
        assert_eq!(a, [[3, 3], [3, 6]]);
        assert!(!solo_test(&t.group, &t.h1, &t1, &t.h2, &t2).unwrap());
    }

    #[test]
    fn res_ind_parts() {
        let t = catalog::s3_transpositions();
        let mut parts: Vec<usize> = res_ind_decomposition(&t.group, &t.h1, &t.h1)
            .unwrap()
            .iter()
            .map(|p| p.index)
            .collect();
        parts.sort_unstable();
        assert_eq!(parts, alloc::vec![1, 2]);
        let e = t.group.trivial_subgroup();
        let parts = res_ind_decomposition(&t.group, &e, &t.h1).unwrap();
        assert_eq!(parts.iter().map(|p| p.index).sum::<usize>(), 6);
        assert_eq!(
            permutation_inner(&t.group, &t.h1, &t.h1).unwrap(),
            t.group.double_cosets(&t.h1, &t.h1).unwrap().len() as u64
        );
    }
}
