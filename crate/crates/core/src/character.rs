//! Class functions, linear characters and the induction calculus.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::abelian::Abelianization;
use crate::cyclo::{Cyclotomic, CyclotomicField};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Groups up to this order get every Mackey evaluation cross-checked against
/// the direct inner product of induced characters.
pub const MACKEY_CROSS_CHECK_LIMIT: usize = 1000;

/// A function constant on conjugacy classes, one value per class in the
/// class order of its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    group_id: u64,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(g: &FiniteGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != g.class_count() {
            return Err(Error::MalformedCharacter(alloc::format!(
                "{} values for {} classes",
                values.len(),
                g.class_count()
            )));
        }
        Ok(Self {
            group_id: g.id(),
            values,
        })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::constant(g, Cyclotomic::one())
    }

    pub fn constant(g: &FiniteGroup, v: Cyclotomic) -> Self {
        Self {
            group_id: g.id(),
            values: alloc::vec![v; g.class_count()],
        }
    }

    /// Character of the regular representation.
    pub fn regular(g: &FiniteGroup) -> Self {
        let mut values = alloc::vec![Cyclotomic::zero(); g.class_count()];
        values[0] = Cyclotomic::from_integer(g.order() as i64);
        Self {
            group_id: g.id(),
            values,
        }
    }

    /// Builds a class function from per-element values, checking that they
    /// are constant on classes.
    pub fn from_element_values(g: &FiniteGroup, f: impl Fn(usize) -> Cyclotomic) -> Result<Self> {
        let mut values = Vec::with_capacity(g.class_count());
        for class in g.classes() {
            let v = f(class[0]);
            for &x in &class[1..] {
                if f(x) != v {
                    return Err(Error::MalformedCharacter(
                        "values are not constant on a conjugacy class".into(),
                    ));
                }
            }
            values.push(v);
        }
        Ok(Self {
            group_id: g.id(),
            values,
        })
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at_class(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    pub fn value(&self, g: &FiniteGroup, x: usize) -> &Cyclotomic {
        &self.values[g.class_of(x)]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group_id == other.group_id {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn on(&self, g: &FiniteGroup) -> Result<()> {
        if self.group_id == g.id() {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            group_id: self.group_id,
            values,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.map(|v| v.scale(q))
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.try_mul(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            group_id: self.group_id,
            values,
        })
    }

    /// Complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.map(Cyclotomic::conj)
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        Self {
            group_id: self.group_id,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }
}

/// `<f1, f2> = 1/|G| sum_g f1(g) conj(f2(g))`.
pub fn inner_product(g: &FiniteGroup, f1: &ClassFunction, f2: &ClassFunction) -> Result<BigRational> {
    f1.on(g)?;
    f2.on(g)?;
    let mut acc = Cyclotomic::zero();
    for c in 0..g.class_count() {
        let term = f1.values[c].try_mul(&f2.values[c].conj())?;
        let size = BigRational::from_integer(BigInt::from(g.class_size(c)));
        acc = acc.try_add(&term.scale(&size))?;
    }
    let total = acc.to_rational().ok_or_else(|| {
        Error::MalformedCharacter("inner product is not rational".into())
    })?;
    Ok(total / BigRational::from_integer(BigInt::from(g.order())))
}

/// Inner product of two genuine characters: a nonnegative integer.
pub fn character_inner(g: &FiniteGroup, f1: &ClassFunction, f2: &ClassFunction) -> Result<u64> {
    let q = inner_product(g, f1, f2)?;
    if !q.is_integer() || q.is_negative() {
        return Err(Error::MalformedCharacter(alloc::format!(
            "inner product {q} of characters is not a nonnegative integer"
        )));
    }
    q.to_integer()
        .to_u64()
        .ok_or_else(|| Error::TooLarge("inner product".into()))
}

/// `Ind_H^G chi`, via `Ind chi(g) = |C_G(g)| / |H| * sum over H-classes c
/// inside the G-class of g of |c| chi(c)`.
pub fn induce(g: &FiniteGroup, h: &Subgroup, chi: &ClassFunction) -> Result<ClassFunction> {
    if h.parent_id() != g.id() {
        return Err(Error::NotSubgroup);
    }
    let hg = h.as_group();
    chi.on(hg)?;
    let mut acc: Vec<Cyclotomic> = alloc::vec![Cyclotomic::zero(); g.class_count()];
    for c in 0..hg.class_count() {
        let parent = h.parent_index(hg.class_representative(c));
        let k = g.class_of(parent);
        let size = BigRational::from_integer(BigInt::from(hg.class_size(c)));
        acc[k] = acc[k].try_add(&chi.values[c].scale(&size))?;
    }
    let values: Vec<Cyclotomic> = acc
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.scale(&BigRational::new(
                BigInt::from(g.centralizer_order(k)),
                BigInt::from(h.order()),
            ))
        })
        .collect();
    let out = ClassFunction {
        group_id: g.id(),
        values,
    };
    let expected = chi.degree().scale(&BigRational::from_integer(BigInt::from(h.index())));
    if out.degree() != &expected {
        return Err(Error::CrossCheck("degree of induced character".into()));
    }
    Ok(out)
}

/// `Res_H^G f`.
pub fn restrict(g: &FiniteGroup, f: &ClassFunction, h: &Subgroup) -> Result<ClassFunction> {
    if h.parent_id() != g.id() {
        return Err(Error::NotSubgroup);
    }
    f.on(g)?;
    let hg = h.as_group();
    let values = (0..hg.class_count())
        .map(|c| f.value(g, h.parent_index(hg.class_representative(c))).clone())
        .collect();
    Ok(ClassFunction {
        group_id: hg.id(),
        values,
    })
}

/// Permutation character of `G` on `G/H`, counted directly as fixed cosets.
pub fn permutation_character(g: &FiniteGroup, h: &Subgroup) -> Result<ClassFunction> {
    let table = g.cosets(h)?;
    let values = (0..g.class_count())
        .map(|c| {
            let x = g.class_representative(c);
            let fixed = (0..table.index()).filter(|&i| table.act(x, i) == i).count();
            Cyclotomic::from_integer(fixed as i64)
        })
        .collect();
    Ok(ClassFunction {
        group_id: g.id(),
        values,
    })
}

/// A homomorphism `H -> mu_m`, stored as an exponent per element of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    group_id: u64,
    modulus: u64,
    exponents: Vec<u32>,
}

impl LinearCharacter {
    pub fn trivial(h: &FiniteGroup) -> Self {
        Self {
            group_id: h.id(),
            modulus: 1,
            exponents: alloc::vec![0; h.order()],
        }
    }

    /// Builds a character from exponents, checking multiplicativity.
    pub fn new(h: &FiniteGroup, modulus: u64, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != h.order() || modulus == 0 {
            return Err(Error::MalformedCharacter("wrong number of exponents".into()));
        }
        let chi = Self {
            group_id: h.id(),
            modulus,
            exponents,
        };
        chi.check_multiplicative(h)?;
        Ok(chi)
    }

    fn check_multiplicative(&self, h: &FiniteGroup) -> Result<()> {
        let m = self.modulus;
        for &s in h.generator_indices() {
            for x in 0..h.order() {
                let lhs = self.exponents[h.mul(s, x)] as u64;
                let rhs = (self.exponents[s] as u64 + self.exponents[x] as u64) % m;
                if lhs != rhs {
                    return Err(Error::MalformedCharacter("not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `chi(x) = exp(2 pi i e / m)` with `e = exponent(x)`.
    pub fn exponent(&self, x: usize) -> u32 {
        self.exponents[x]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.exponents.iter().fold(1, |acc, &e| {
            let o = self.modulus / num_integer::gcd(self.modulus, e as u64);
            num_integer::lcm(acc, o)
        })
    }

    pub fn value(&self, x: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.modulus, self.exponents[x] as i64)
            .expect("linear character modulus within cap")
    }

    /// Whether `chi(x)` equals `other(y)` as roots of unity.
    pub fn value_eq(&self, x: usize, other: &Self, y: usize) -> bool {
        let l = num_integer::lcm(self.modulus, other.modulus);
        let a = self.exponents[x] as u64 * (l / self.modulus);
        let b = other.exponents[y] as u64 * (l / other.modulus);
        a % l == b % l
    }

    pub fn conjugate(&self) -> Self {
        let m = self.modulus as u32;
        Self {
            group_id: self.group_id,
            modulus: self.modulus,
            exponents: self.exponents.iter().map(|&e| (m - e) % m).collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.group_id != other.group_id {
            return Err(Error::GroupMismatch);
        }
        let l = num_integer::lcm(self.modulus, other.modulus);
        let (a, b) = (l / self.modulus, l / other.modulus);
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&x, &y)| ((x as u64 * a + y as u64 * b) % l) as u32)
            .collect();
        Ok(Self {
            group_id: self.group_id,
            modulus: l,
            exponents,
        })
    }

    pub fn to_class_function(&self, h: &FiniteGroup) -> Result<ClassFunction> {
        if h.id() != self.group_id {
            return Err(Error::GroupMismatch);
        }
        let field = CyclotomicField::new(self.modulus)?;
        let values = (0..h.class_count())
            .map(|c| field.root(self.exponents[h.class_representative(c)] as i64))
            .collect();
        Ok(ClassFunction {
            group_id: h.id(),
            values,
        })
    }

    /// The character `y -> chi(g^-1 y g)` of `g H g^-1`.
    pub fn transport(
        &self,
        g: &FiniteGroup,
        h: &Subgroup,
        conj: &Subgroup,
        x: usize,
    ) -> Result<Self> {
        if h.as_group().id() != self.group_id {
            return Err(Error::GroupMismatch);
        }
        let xinv = g.inv(x);
        let mut exponents = Vec::with_capacity(conj.order());
        for &y in conj.members() {
            let back = g.conjugate_by(xinv, y);
            let local = h.local_index(back).ok_or(Error::NotSubgroup)?;
            exponents.push(self.exponents[local]);
        }
        Self::new(conj.as_group(), self.modulus, exponents)
    }
}

/// All `|H^ab|` linear characters of `h`, trivial first.
///
/// Character `t` has abelianization coordinates `c` given by the mixed-radix
/// digits of `t` (last coordinate fastest) and sends `x` to
/// `exp(2 pi i sum_i c_i x_i / d_i)`.
pub fn linear_characters(h: &FiniteGroup) -> Result<Vec<LinearCharacter>> {
    let ab = Abelianization::compute(h)?;
    linear_characters_from(h, &ab)
}

pub fn linear_characters_from(h: &FiniteGroup, ab: &Abelianization) -> Result<Vec<LinearCharacter>> {
    let m = ab.exponent();
    let total = ab.order();
    let k = ab.rank();
    let mut out = Vec::with_capacity(total as usize);
    for t in 0..total {
        let mut digits = alloc::vec![0u64; k];
        let mut rest = t;
        for i in (0..k).rev() {
            digits[i] = rest % ab.divisors()[i];
            rest /= ab.divisors()[i];
        }
        let exponents = (0..h.order())
            .map(|x| {
                let mut e = 0u64;
                for i in 0..k {
                    let d = ab.divisors()[i];
                    e += digits[i] * ab.coordinate(x, i) as u64 * (m / d);
                }
                (e % m) as u32
            })
            .collect();
        out.push(LinearCharacter::new(h, m, exponents)?);
    }
    Ok(out)
}

/// `Ind_H^G` of a linear character, accumulating roots of unity per class.
pub fn induce_linear(g: &FiniteGroup, h: &Subgroup, chi: &LinearCharacter) -> Result<ClassFunction> {
    if h.parent_id() != g.id() {
        return Err(Error::NotSubgroup);
    }
    if h.as_group().id() != chi.group_id {
        return Err(Error::GroupMismatch);
    }
    let m = chi.modulus as usize;
    let field: Arc<CyclotomicField> = CyclotomicField::new(chi.modulus)?;
    let mut counts = alloc::vec![0i64; g.class_count() * m];
    for (local, &parent) in h.members().iter().enumerate() {
        counts[g.class_of(parent) * m + chi.exponents[local] as usize] += 1;
    }
    let values = (0..g.class_count())
        .map(|k| {
            field.from_root_counts(&counts[k * m..(k + 1) * m]).scale(&BigRational::new(
                BigInt::from(g.centralizer_order(k)),
                BigInt::from(h.order()),
            ))
        })
        .collect();
    Ok(ClassFunction {
        group_id: g.id(),
        values,
    })
}

/// `<Ind_{H1} chi1, Ind_{H2} chi2>` by Mackey's formula: one term per double
/// coset `H2 s H1`, equal to 1 when `k -> chi1(s^-1 k s)` and `chi2` agree on
/// `H2 ∩ s H1 s^-1`.
pub fn mackey_inner(
    g: &FiniteGroup,
    h1: &Subgroup,
    chi1: &LinearCharacter,
    h2: &Subgroup,
    chi2: &LinearCharacter,
) -> Result<u64> {
    if chi1.group_id != h1.as_group().id() || chi2.group_id != h2.as_group().id() {
        return Err(Error::GroupMismatch);
    }
    let mut total = 0u64;
    for dc in g.double_cosets(h2, h1)? {
        let s = dc.representative;
        let sinv = g.inv(s);
        let agree = h2.members().iter().enumerate().all(|(local2, &k)| {
            let back = g.conjugate_by(sinv, k);
            match h1.local_index(back) {
                Some(local1) => chi1.value_eq(local1, chi2, local2),
                None => true,
            }
        });
        total += u64::from(agree);
    }
    if g.order() <= MACKEY_CROSS_CHECK_LIMIT {
        let direct = character_inner(
            g,
            &induce_linear(g, h1, chi1)?,
            &induce_linear(g, h2, chi2)?,
        )?;
        if direct != total {
            return Err(Error::CrossCheck(alloc::format!(
                "Mackey sum {total} differs from direct inner product {direct}"
            )));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use num_traits::Zero;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn s4() -> FiniteGroup {
        FiniteGroup::generate(4, &[p(4, "(0 1)"), p(4, "(0 1 2 3)")]).unwrap()
    }

    #[test]
    fn linear_character_counts() {
        let v4 = FiniteGroup::generate(4, &[p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")]).unwrap();
        assert_eq!(linear_characters(&v4).unwrap().len(), 4);
        let chars = linear_characters(&s4()).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        let c7 = FiniteGroup::generate(7, &[p(7, "(0 1 2 3 4 5 6)")]).unwrap();
        let chars = linear_characters(&c7).unwrap();
        assert_eq!(chars.len(), 7);
        assert!(chars.iter().skip(1).all(|c| c.order() == 7));
    }

    #[test]
    fn regular_character_is_induced_trivial() {
        let g = s4();
        let e = g.trivial_subgroup();
        let ind = induce(&g, &e, &ClassFunction::trivial(e.as_group())).unwrap();
        assert_eq!(ind, ClassFunction::regular(&g));
        let reg = ClassFunction::regular(&g);
        assert_eq!(character_inner(&g, &reg, &reg).unwrap(), 24);
    }

    #[test]
    fn induced_trivial_is_permutation_character() {
        let g = s4();
        let h = g.subgroup_from_perms(&[p(4, "(0 1 2 3)")]).unwrap();
        let ind = induce(&g, &h, &ClassFunction::trivial(h.as_group())).unwrap();
        assert_eq!(ind, permutation_character(&g, &h).unwrap());
        let lin = induce_linear(&g, &h, &LinearCharacter::trivial(h.as_group())).unwrap();
        assert_eq!(ind, lin);
    }

    #[test]
    fn tensor_with_conjugate_is_trivial() {
        let c5 = FiniteGroup::generate(5, &[p(5, "(0 1 2 3 4)")]).unwrap();
        for chi in linear_characters(&c5).unwrap() {
            let f = chi.to_class_function(&c5).unwrap();
            assert_eq!(f.tensor(&f.conjugate()).unwrap(), ClassFunction::trivial(&c5));
            assert!(chi.tensor(&chi.conjugate()).unwrap().is_trivial());
        }
    }

    #[test]
    fn mackey_matches_direct_on_s4_subgroups() {
        let g = s4();
        let subs = [
            g.subgroup_from_perms(&[p(4, "(0 1 2 3)")]).unwrap(),
            g.subgroup_from_perms(&[p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")]).unwrap(),
            g.subgroup_from_perms(&[p(4, "(0 1)"), p(4, "(2 3)")]).unwrap(),
            g.subgroup_from_perms(&[p(4, "(0 1 2)")]).unwrap(),
        ];
        for a in &subs {
            for b in &subs {
                for ca in linear_characters(a.as_group()).unwrap() {
                    for cb in linear_characters(b.as_group()).unwrap() {
                        // The cross-check inside mackey_inner does the work.
                        mackey_inner(&g, a, &ca, b, &cb).unwrap();
                    }
                }
            }
        }
        let triv = LinearCharacter::trivial(subs[0].as_group());
        let dc = g.double_cosets(&subs[0], &subs[0]).unwrap().len() as u64;
        assert_eq!(mackey_inner(&g, &subs[0], &triv, &subs[0], &triv).unwrap(), dc);
    }

    #[test]
    fn frobenius_reciprocity_small() {
        let g = s4();
        let h = g.subgroup_from_perms(&[p(4, "(0 1 2 3)")]).unwrap();
        let f = ClassFunction::regular(&g).add(&ClassFunction::trivial(&g)).unwrap();
        for chi in linear_characters(h.as_group()).unwrap() {
            let cf = chi.to_class_function(h.as_group()).unwrap();
            let lhs = inner_product(&g, &induce(&g, &h, &cf).unwrap(), &f).unwrap();
            let rhs = inner_product(h.as_group(), &cf, &restrict(&g, &f, &h).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn group_mismatch_is_reported() {
        let a = s4();
        let b = s4();
        let fa = ClassFunction::trivial(&a);
        let fb = ClassFunction::trivial(&b);
        assert_eq!(inner_product(&a, &fa, &fb).unwrap_err(), Error::GroupMismatch);
        assert!(!fa.is_zero());
        assert!(fa.sub(&fa).unwrap().is_zero());
        assert!(BigRational::zero() <= inner_product(&a, &fa, &fa).unwrap());
    }
}
