//! Monomial representations: every `rho(g)` is a permutation matrix with
//! root-of-unity entries.

use alloc::vec::Vec;

use crate::character::{ClassFunction, LinearCharacter};
use crate::cyclo::CyclotomicField;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// `rho(g) e_i = zeta_m^{phase(g, i)} e_{perm(g, i)}` for every element `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRep {
    group_id: u64,
    order: usize,
    dim: usize,
    modulus: u64,
    perm: Vec<u32>,
    phase: Vec<u32>,
}

impl MonomialRep {
    /// Builds a representation from per-element data and checks it is a
    /// homomorphism on all (generator, element) pairs.
    pub fn new(g: &FiniteGroup, dim: usize, modulus: u64, perm: Vec<u32>, phase: Vec<u32>) -> Result<Self> {
        if perm.len() != g.order() * dim || phase.len() != perm.len() || modulus == 0 {
            return Err(Error::MalformedCharacter("monomial data has the wrong size".into()));
        }
        let rep = Self {
            group_id: g.id(),
            order: g.order(),
            dim,
            modulus,
            perm,
            phase,
        };
        rep.check_homomorphism(g)?;
        Ok(rep)
    }

    fn check_homomorphism(&self, g: &FiniteGroup) -> Result<()> {
        let m = self.modulus;
        for x in 0..self.order {
            let mut seen = alloc::vec![false; self.dim];
            for i in 0..self.dim {
                let j = self.perm[x * self.dim + i] as usize;
                if j >= self.dim || seen[j] || self.phase[x * self.dim + i] as u64 >= m {
                    return Err(Error::MalformedCharacter("rho(g) is not monomial".into()));
                }
                seen[j] = true;
            }
        }
        for &s in g.generator_indices() {
            for x in 0..self.order {
                let sx = g.mul(s, x);
                for i in 0..self.dim {
                    let (j, a) = self.act(x, i);
                    let (k, b) = self.act(s, j);
                    let (k2, c) = self.act(sx, i);
                    if k != k2 || (a as u64 + b as u64) % m != c as u64 {
                        return Err(Error::MalformedCharacter("not a homomorphism".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            group_id: g.id(),
            order: g.order(),
            dim: 1,
            modulus: 1,
            perm: alloc::vec![0; g.order()],
            phase: alloc::vec![0; g.order()],
        }
    }

    pub fn from_linear(g: &FiniteGroup, chi: &LinearCharacter) -> Result<Self> {
        if chi.group_id() != g.id() {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            group_id: g.id(),
            order: g.order(),
            dim: 1,
            modulus: chi.modulus(),
            perm: alloc::vec![0; g.order()],
            phase: chi.exponents().to_vec(),
        })
    }

    /// `Ind_H^G rho` on the basis `g_i ⊗ e_j` (index `i * dim + j`):
    /// `g (g_i ⊗ v) = g_{g(i)} ⊗ rho(h_{g,i}) v`.
    pub fn induced(g: &FiniteGroup, h: &Subgroup, rho: &MonomialRep) -> Result<Self> {
        if h.parent_id() != g.id() {
            return Err(Error::NotSubgroup);
        }
        if rho.group_id != h.as_group().id() {
            return Err(Error::GroupMismatch);
        }
        let table = g.cosets(h)?;
        let n = table.index();
        let d = rho.dim;
        let dim = n * d;
        let mut perm = Vec::with_capacity(g.order() * dim);
        let mut phase = Vec::with_capacity(g.order() * dim);
        for x in 0..g.order() {
            for i in 0..n {
                let target = table.act(x, i);
                let local = h
                    .local_index(table.cocycle(x, i))
                    .expect("cocycle lies in the subgroup");
                for j in 0..d {
                    let (k, a) = rho.act(local, j);
                    perm.push((target * d + k) as u32);
                    phase.push(a);
                }
            }
        }
        Self::new(g, dim, rho.modulus, perm, phase)
    }

    pub fn induced_linear(g: &FiniteGroup, h: &Subgroup, chi: &LinearCharacter) -> Result<Self> {
        Self::induced(g, h, &Self::from_linear(h.as_group(), chi)?)
    }

    /// The permutation representation on `G/H`.
    pub fn permutation(g: &FiniteGroup, h: &Subgroup) -> Result<Self> {
        Self::induced(g, h, &Self::trivial(h.as_group()))
    }

    pub fn regular(g: &FiniteGroup) -> Result<Self> {
        Self::permutation(g, &g.trivial_subgroup())
    }

    pub fn restrict(&self, g: &FiniteGroup, h: &Subgroup) -> Result<Self> {
        if self.group_id != g.id() || h.parent_id() != g.id() {
            return Err(Error::GroupMismatch);
        }
        let d = self.dim;
        let mut perm = Vec::with_capacity(h.order() * d);
        let mut phase = Vec::with_capacity(h.order() * d);
        for &x in h.members() {
            perm.extend_from_slice(&self.perm[x * d..(x + 1) * d]);
            phase.extend_from_slice(&self.phase[x * d..(x + 1) * d]);
        }
        Self::new(h.as_group(), d, self.modulus, perm, phase)
    }

    fn rescaled_phases(&self, target: u64) -> Vec<u32> {
        let f = (target / self.modulus) as u32;
        self.phase.iter().map(|&a| a * f).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group_id != other.group_id {
            return Err(Error::GroupMismatch);
        }
        let m = num_integer::lcm(self.modulus, other.modulus);
        let (pa, pb) = (self.rescaled_phases(m), other.rescaled_phases(m));
        let (da, db) = (self.dim, other.dim);
        let dim = da + db;
        let mut perm = Vec::with_capacity(self.order * dim);
        let mut phase = Vec::with_capacity(self.order * dim);
        for x in 0..self.order {
            perm.extend_from_slice(&self.perm[x * da..(x + 1) * da]);
            phase.extend_from_slice(&pa[x * da..(x + 1) * da]);
            perm.extend(other.perm[x * db..(x + 1) * db].iter().map(|&j| j + da as u32));
            phase.extend_from_slice(&pb[x * db..(x + 1) * db]);
        }
        Ok(Self {
            group_id: self.group_id,
            order: self.order,
            dim,
            modulus: m,
            perm,
            phase,
        })
    }

    /// Tensor product on the basis `e_i ⊗ f_j` (index `i * dim_b + j`).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.group_id != other.group_id {
            return Err(Error::GroupMismatch);
        }
        let m = num_integer::lcm(self.modulus, other.modulus);
        let (pa, pb) = (self.rescaled_phases(m), other.rescaled_phases(m));
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut perm = Vec::with_capacity(self.order * dim);
        let mut phase = Vec::with_capacity(self.order * dim);
        for x in 0..self.order {
            for i in 0..da {
                for j in 0..db {
                    let (a, b) = (x * da + i, x * db + j);
                    perm.push(self.perm[a] * db as u32 + other.perm[b]);
                    phase.push(((pa[a] as u64 + pb[b] as u64) % m) as u32);
                }
            }
        }
        Ok(Self {
            group_id: self.group_id,
            order: self.order,
            dim,
            modulus: m,
            perm,
            phase,
        })
    }

    /// Complex conjugate representation.
    pub fn conjugate(&self) -> Self {
        let m = self.modulus as u32;
        Self {
            phase: self.phase.iter().map(|&a| (m - a) % m).collect(),
            ..self.clone()
        }
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(j, a)` with `rho(x) e_i = zeta^a e_j`.
    #[inline]
    pub fn act(&self, x: usize, i: usize) -> (usize, u32) {
        let k = x * self.dim + i;
        (self.perm[k] as usize, self.phase[k])
    }

    pub fn character(&self, g: &FiniteGroup) -> Result<ClassFunction> {
        if self.group_id != g.id() {
            return Err(Error::GroupMismatch);
        }
        let field = CyclotomicField::new(self.modulus)?;
        let m = self.modulus as usize;
        let values = (0..g.class_count())
            .map(|c| {
                let x = g.class_representative(c);
                let mut counts = alloc::vec![0i64; m];
                for i in 0..self.dim {
                    let (j, a) = self.act(x, i);
                    if i == j {
                        counts[a as usize] += 1;
                    }
                }
                field.from_root_counts(&counts)
            })
            .collect();
        ClassFunction::new(g, values)
    }

    /// A basis of the vectors fixed by `rho(K)`, one per `K`-orbit on the
    /// coordinates whose stabilizer acts trivially on its line. Entries are
    /// `None` (zero) or `Some(a)` for `zeta^a`; supports are disjoint.
    pub fn fixed_vectors(&self, g: &FiniteGroup, k: &Subgroup) -> Result<Vec<Vec<Option<u32>>>> {
        if self.group_id != g.id() || k.parent_id() != g.id() {
            return Err(Error::GroupMismatch);
        }
        let mut seen = alloc::vec![false; self.dim];
        let mut out = Vec::new();
        for i in 0..self.dim {
            if seen[i] {
                continue;
            }
            let mut v: Vec<Option<u32>> = alloc::vec![None; self.dim];
            let mut consistent = true;
            for &x in k.members() {
                let (j, a) = self.act(x, i);
                seen[j] = true;
                match v[j] {
                    None => v[j] = Some(a),
                    Some(b) if b != a => consistent = false,
                    Some(_) => {}
                }
            }
            if consistent {
                out.push(v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::character::{character_inner, induce_linear, linear_characters, permutation_character};

    #[test]
    fn induced_character_matches_formula() {
        let t = catalog::s4_cyclic_klein();
        for chi in linear_characters(t.h1.as_group()).unwrap() {
            let rho = MonomialRep::induced_linear(&t.group, &t.h1, &chi).unwrap();
            assert_eq!(rho.dim(), 6);
            assert_eq!(
                rho.character(&t.group).unwrap(),
                induce_linear(&t.group, &t.h1, &chi).unwrap()
            );
        }
        let perm = MonomialRep::permutation(&t.group, &t.h2).unwrap();
        assert_eq!(
            perm.character(&t.group).unwrap(),
            permutation_character(&t.group, &t.h2).unwrap()
        );
    }

    #[test]
    fn fixed_vectors_count_trivial_multiplicity() {
        let t = catalog::gerst();
        let whole = t.group.whole();
        for chi in linear_characters(t.h1.as_group()).unwrap() {
            let rho = MonomialRep::induced_linear(&t.group, &t.h1, &chi).unwrap();
            let mult = character_inner(
                &t.group,
                &rho.character(&t.group).unwrap(),
                &crate::character::ClassFunction::trivial(&t.group),
            )
            .unwrap();
            assert_eq!(rho.fixed_vectors(&t.group, &whole).unwrap().len() as u64, mult);
        }
    }

    #[test]
    fn tensor_and_sum_characters() {
        let t = catalog::s3_transpositions();
        let chars = linear_characters(t.h1.as_group()).unwrap();
        let a = MonomialRep::induced_linear(&t.group, &t.h1, &chars[1]).unwrap();
        let b = MonomialRep::regular(&t.group).unwrap();
        let ca = a.character(&t.group).unwrap();
        let cb = b.character(&t.group).unwrap();
        assert_eq!(a.tensor(&b).unwrap().character(&t.group).unwrap(), ca.tensor(&cb).unwrap());
        assert_eq!(a.direct_sum(&b).unwrap().character(&t.group).unwrap(), ca.add(&cb).unwrap());
        assert_eq!(a.conjugate().character(&t.group).unwrap(), ca.conjugate());
    }
}
