//! Explicit `G`-modules over `Q` or `F_ell`, homological wideness and the
//! permutation-module embedding condition, the closed-form action characters
//! of surface groups, and the Seifert-Weber module.

use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::character::{inner_product, linear_characters, permutation_character, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{identity, inverse, mat_mul, mat_vec, nullspace, rank, Field, Matrix, PrimeField, Rationals};
use crate::perm::Permutation;

/// Default number of candidate vectors tried before a search gives up.
pub const DEFAULT_SEARCH_BUDGET: usize = 15_625;

/// A linear action of an enumerated group on `F^d`, by column vectors.
#[derive(Clone, Debug)]
pub struct GModule<F: Field> {
    field: F,
    group_id: u64,
    dim: usize,
    generators: Vec<Matrix<F::Elem>>,
    elements: Vec<Matrix<F::Elem>>,
}

impl GModule<PrimeField> {
    /// Module over `F_ell` with `ell` coprime to `|G|`.
    pub fn modular(g: &FiniteGroup, ell: u64, dim: usize, generators: Vec<Matrix<u64>>) -> Result<Self> {
        if g.order() as u64 % ell == 0 {
            return Err(Error::EllDividesOrder { ell, order: g.order() });
        }
        Self::modular_any_characteristic(g, ell, dim, generators)
    }

    /// Like [`GModule::modular`] but accepts `ell | |G|`. Only the structural
    /// checks apply; the embedding criteria need coprimality and refuse
    /// such modules themselves.
    pub fn modular_any_characteristic(
        g: &FiniteGroup,
        ell: u64,
        dim: usize,
        generators: Vec<Matrix<u64>>,
    ) -> Result<Self> {
        let field = PrimeField::new(ell)
            .ok_or_else(|| Error::InvalidModule(alloc::format!("{ell} is not a prime below 2^31")))?;
        let generators = generators
            .into_iter()
            .map(|m| Matrix {
                data: m.data.iter().map(|&x| x % ell).collect(),
                ..m
            })
            .collect();
        Self::new(field, g, dim, generators)
    }

    pub fn ell(&self) -> u64 {
        self.field.modulus()
    }
}

impl GModule<Rationals> {
    pub fn rational(g: &FiniteGroup, dim: usize, generators: Vec<Matrix<BigRational>>) -> Result<Self> {
        Self::new(Rationals, g, dim, generators)
    }

    /// Reduction modulo `ell` of an `ell`-integral module.
    pub fn reduce(&self, g: &FiniteGroup, ell: u64) -> Result<GModule<PrimeField>> {
        let field = PrimeField::new(ell)
            .ok_or_else(|| Error::InvalidModule(alloc::format!("{ell} is not a prime below 2^31")))?;
        let p = BigInt::from(ell);
        let mut gens = Vec::with_capacity(self.generators.len());
        for m in &self.generators {
            let mut data = Vec::with_capacity(m.data.len());
            for q in &m.data {
                if q.denom().is_multiple_of(&p) {
                    return Err(Error::FieldMismatch(alloc::format!("entry {q} is not {ell}-integral")));
                }
                let num = q.numer().mod_floor(&p).to_u64().expect("reduced residue");
                let den = q.denom().mod_floor(&p).to_u64().expect("reduced residue");
                data.push(field.mul(&num, &field.inv(&den)));
            }
            gens.push(Matrix { rows: m.rows, cols: m.cols, data });
        }
        GModule::modular(g, ell, self.dim, gens)
    }
}

impl<F: Field + Clone> GModule<F> {
    /// Builds the module from one matrix per generator of `g` (in the order
    /// of [`FiniteGroup::generators`]) and checks that the assignment extends
    /// to a homomorphism: the matrix of every element is propagated along the
    /// Cayley graph and every edge is checked.
    pub fn new(field: F, g: &FiniteGroup, dim: usize, generators: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if generators.len() != g.generators().len() {
            return Err(Error::InvalidModule(alloc::format!(
                "{} matrices for {} generators",
                generators.len(),
                g.generators().len()
            )));
        }
        for (i, m) in generators.iter().enumerate() {
            if m.rows != dim || m.cols != dim {
                return Err(Error::InvalidModule(alloc::format!("matrix {i} is not {dim}x{dim}")));
            }
            if rank(&field, m) != dim {
                return Err(Error::InvalidModule(alloc::format!("matrix {i} is singular")));
            }
        }
        let n = g.order();
        let mut elements: Vec<Option<Matrix<F::Elem>>> = alloc::vec![None; n];
        elements[0] = Some(identity(&field, dim));
        let mut queue = alloc::vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, m) in g.generator_indices().iter().zip(&generators) {
                let y = g.mul(*s, x);
                let my = mat_mul(&field, m, elements[x].as_ref().expect("visited"));
                match &elements[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::InvalidModule(
                            "generator matrices do not satisfy the group relations".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        elements[y] = Some(my);
                        queue.push(y);
                    }
                }
            }
        }
        if queue.len() != n {
            return Err(Error::InvalidModule("generators do not reach every element".into()));
        }
        Ok(Self {
            field,
            group_id: g.id(),
            dim,
            generators,
            elements: elements.into_iter().map(|m| m.expect("visited")).collect(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn generator_matrices(&self) -> &[Matrix<F::Elem>] {
        &self.generators
    }

    pub fn matrix(&self, x: usize) -> &Matrix<F::Elem> {
        &self.elements[x]
    }

    pub fn act(&self, x: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        mat_vec(&self.field, &self.elements[x], v)
    }

    pub fn trace(&self, x: usize) -> F::Elem {
        let m = &self.elements[x];
        (0..self.dim).fold(self.field.zero(), |acc, i| self.field.add(&acc, m.get(i, i)))
    }

    fn check(&self, g: &FiniteGroup) -> Result<()> {
        if g.id() == self.group_id {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// The module restricted to a subgroup, as a module for `h.as_group()`.
    pub fn restrict(&self, g: &FiniteGroup, h: &Subgroup) -> Result<Self> {
        self.check(g)?;
        if h.parent_id() != g.id() {
            return Err(Error::NotSubgroup);
        }
        let elements: Vec<Matrix<F::Elem>> = h.members().iter().map(|&x| self.elements[x].clone()).collect();
        let generators = h.generators().iter().map(|&x| self.elements[x].clone()).collect();
        Ok(Self {
            field: self.field.clone(),
            group_id: h.as_group().id(),
            dim: self.dim,
            generators,
            elements,
        })
    }

    /// Basis of the vectors fixed by every element of `h`.
    pub fn fixed_subspace(&self, g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Vec<F::Elem>>> {
        self.check(g)?;
        if h.parent_id() != g.id() {
            return Err(Error::NotSubgroup);
        }
        let d = self.dim;
        let gens = h.generators();
        if gens.is_empty() {
            return Ok(nullspace(&self.field, &Matrix::filled(0, d, self.field.zero())));
        }
        let mut stacked = Matrix::filled(gens.len() * d, d, self.field.zero());
        for (k, &x) in gens.iter().enumerate() {
            let m = &self.elements[x];
            for i in 0..d {
                for j in 0..d {
                    let mut v = m.get(i, j).clone();
                    if i == j {
                        v = self.field.sub(&v, &self.field.one());
                    }
                    stacked.set(k * d + i, j, v);
                }
            }
        }
        Ok(nullspace(&self.field, &stacked))
    }

    /// Rank of the vectors `x v` for `x` in `elements`.
    pub fn orbit_rank(&self, elements: &[usize], v: &[F::Elem]) -> usize {
        let rows: Vec<Vec<F::Elem>> = elements.iter().map(|&x| self.act(x, v)).collect();
        rank(&self.field, &Matrix::from_rows(&rows, self.dim))
    }

    /// Whether `G v` spans a copy of the regular representation.
    pub fn is_cyclic_vector(&self, g: &FiniteGroup, v: &[F::Elem]) -> Result<bool> {
        self.check(g)?;
        let all: Vec<usize> = (0..g.order()).collect();
        Ok(v.len() == self.dim && self.orbit_rank(&all, v) == g.order())
    }

    /// Whether `v` is fixed by `h1` and its translates by the coset
    /// representatives of `G/H1` are linearly independent.
    pub fn is_star_witness(&self, g: &FiniteGroup, h1: &Subgroup, v: &[F::Elem]) -> Result<bool> {
        self.check(g)?;
        if v.len() != self.dim {
            return Ok(false);
        }
        for &x in h1.generators() {
            if self.act(x, v) != v {
                return Ok(false);
            }
        }
        let reps = g.cosets(h1)?.reps;
        Ok(self.orbit_rank(&reps, v) == reps.len())
    }
}

/// Outcome of a witness search.
#[derive(Clone, Debug, PartialEq)]
pub enum Search<V> {
    Found(V),
    /// No witness exists, for the stated reason.
    Absent(Certificate),
    /// The budget ran out first.
    Unknown { candidates: usize },
}

impl<V> Search<V> {
    pub fn found(&self) -> Option<&V> {
        match self {
            Search::Found(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `dim M < |G|`.
    DimensionTooSmall { dim: usize, order: usize },
    /// A subgroup `C` with `dim M^C < [G : C]`, which the regular module
    /// would exceed.
    FixedSpaceTooSmall { subgroup_order: usize, fixed_dim: usize, index: usize },
    /// An element `x` with `rank(x - 1) < |G| - [G : <x>]`, the rank it has
    /// on the regular module.
    MovedSpaceTooSmall { element_order: usize, moved_dim: usize, needed: usize },
    /// `dim M^{H1} < |H1\G/H1|`: an embedding of `Ind 1` needs at least one
    /// fixed dimension per double coset.
    TooFewFixedVectors { fixed_dim: usize, double_cosets: usize },
    /// Every candidate in the relevant space was tried.
    Exhausted { candidates: usize },
}

/// Nonzero vectors of `F^d` with coefficients drawn from `digits`, by
/// increasing support size, then support, then digit pattern.
fn candidates<E: Clone>(zero: E, digits: &[E], d: usize) -> impl Iterator<Item = Vec<E>> + '_ {
    let b = digits.len();
    (1..=d).flat_map(move |w| {
        let zero = zero.clone();
        Subsets::new(d, w).flat_map(move |support| {
            let zero = zero.clone();
            let total = b.checked_pow(w as u32).unwrap_or(usize::MAX);
            (0..total).map(move |mut code| {
                let mut v = alloc::vec![zero.clone(); d];
                for &i in &support {
                    v[i] = digits[code % b].clone();
                    code /= b;
                }
                v
            })
        })
    })
}

/// `w`-subsets of `0..d` in lexicographic order.
struct Subsets {
    d: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(d: usize, w: usize) -> Self {
        Self {
            d,
            current: (w <= d).then(|| (0..w).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let w = out.len();
        let mut next = out.clone();
        let mut i = w;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.d - w + i {
                next[i] += 1;
                for j in i + 1..w {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Coefficient sets for the candidate sweep, plus whether the sweep over
/// them is exhaustive.
pub trait SearchField: Field + Clone {
    fn digits(&self) -> (Vec<Self::Elem>, bool);
}

impl SearchField for PrimeField {
    fn digits(&self) -> (Vec<u64>, bool) {
        ((1..self.modulus()).collect(), true)
    }
}

impl SearchField for Rationals {
    fn digits(&self) -> (Vec<BigRational>, bool) {
        ([1, -1, 2, -2].iter().map(|&n| self.from_i64(n)).collect(), false)
    }
}

fn combine<F: Field>(f: &F, basis: &[Vec<F::Elem>], coeffs: &[F::Elem], d: usize) -> Vec<F::Elem> {
    let mut v = alloc::vec![f.zero(); d];
    for (b, c) in basis.iter().zip(coeffs) {
        if f.is_zero(c) {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x = f.add(x, &f.mul(c, y));
        }
    }
    v
}

/// Cyclic subgroups `<x>`, one per subgroup.
fn cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for x in 1..g.order() {
        let h = g.subgroup(&[x]);
        if !seen.contains(&h.members().to_vec()) {
            seen.push(h.members().to_vec());
            out.push(h);
        }
    }
    out
}

/// Looks for a vector whose orbit spans a copy of the regular module.
///
/// Absence is certified by dimension counts (the whole module, then fixed
/// and moved spaces of cyclic subgroups) or by exhausting a finite field; over `Q`
/// an unsuccessful sweep is inconclusive.
pub fn contains_regular<F: SearchField>(g: &FiniteGroup, m: &GModule<F>, budget: usize) -> Result<Search<Vec<F::Elem>>> {
    m.check(g)?;
    let n = g.order();
    let d = m.dim();
    if d < n {
        return Ok(Search::Absent(Certificate::DimensionTooSmall { dim: d, order: n }));
    }
    for c in cyclic_subgroups(g) {
        let fixed = m.fixed_subspace(g, &c)?.len();
        if fixed < c.index() {
            return Ok(Search::Absent(Certificate::FixedSpaceTooSmall {
                subgroup_order: c.order(),
                fixed_dim: fixed,
                index: c.index(),
            }));
        }
        if d - fixed < n - c.index() {
            return Ok(Search::Absent(Certificate::MovedSpaceTooSmall {
                element_order: c.order(),
                moved_dim: d - fixed,
                needed: n - c.index(),
            }));
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let f = m.field();
    let (digits, exhaustive) = f.digits();
    let mut tried = 0;
    for v in candidates(f.zero(), &digits, d) {
        if tried == budget {
            return Ok(Search::Unknown { candidates: tried });
        }
        tried += 1;
        if m.orbit_rank(&all, &v) == n {
            return Ok(Search::Found(v));
        }
    }
    Ok(if exhaustive {
        Search::Absent(Certificate::Exhausted { candidates: tried })
    } else {
        Search::Unknown { candidates: tried }
    })
}

/// Looks for an `H1`-fixed vector whose translates under `G/H1` are
/// independent, i.e. an embedding `F[G/H1] -> M`, which in coprime
/// characteristic splits off.
pub fn condition_star(
    g: &FiniteGroup,
    h1: &Subgroup,
    m: &GModule<PrimeField>,
    budget: usize,
) -> Result<Search<Vec<u64>>> {
    m.check(g)?;
    let ell = m.ell();
    if g.order() as u64 % ell == 0 {
        return Err(Error::EllDividesOrder { ell, order: g.order() });
    }
    let fixed = m.fixed_subspace(g, h1)?;
    let double_cosets = g.double_cosets(h1, h1)?.len();
    if fixed.len() < double_cosets {
        return Ok(Search::Absent(Certificate::TooFewFixedVectors {
            fixed_dim: fixed.len(),
            double_cosets,
        }));
    }
    let reps = g.cosets(h1)?.reps;
    let f = m.field();
    let (digits, _) = f.digits();
    let mut tried = 0;
    for coeffs in candidates(0, &digits, fixed.len()) {
        if tried == budget {
            return Ok(Search::Unknown { candidates: tried });
        }
        tried += 1;
        let v = combine(f, &fixed, &coeffs, m.dim());
        if m.orbit_rank(&reps, &v) == reps.len() {
            return Ok(Search::Found(v));
        }
    }
    Ok(Search::Absent(Certificate::Exhausted { candidates: tried }))
}

/// `sum_{h in H1} h v`: a condition-(*) witness built from a cyclic vector.
pub fn star_witness_from_cyclic<F: Field + Clone>(
    g: &FiniteGroup,
    h1: &Subgroup,
    m: &GModule<F>,
    v: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    m.check(g)?;
    let f = m.field();
    let mut w = alloc::vec![f.zero(); m.dim()];
    for &h in h1.members() {
        for (x, y) in w.iter_mut().zip(m.act(h, v)) {
            *x = f.add(x, &y);
        }
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct WidenessReport {
    pub homologically_wide: Search<Vec<u64>>,
    /// One entry per subgroup passed in.
    pub condition_star: Vec<Search<Vec<u64>>>,
}

/// Decides wideness and condition (*) for each subgroup, and checks that a
/// cyclic vector always yields condition (*).
pub fn wideness_report(
    g: &FiniteGroup,
    m: &GModule<PrimeField>,
    subgroups: &[Subgroup],
    budget: usize,
) -> Result<WidenessReport> {
    let wide = contains_regular(g, m, budget)?;
    let mut stars = Vec::with_capacity(subgroups.len());
    for h in subgroups {
        let mut star = condition_star(g, h, m, budget)?;
        if let Some(v) = wide.found() {
            let w = star_witness_from_cyclic(g, h, m, v)?;
            if !m.is_star_witness(g, h, &w)? {
                return Err(Error::CrossCheck("averaged cyclic vector is not a condition (*) witness".into()));
            }
            match star {
                Search::Absent(_) => {
                    return Err(Error::CrossCheck("wide module fails condition (*)".into()));
                }
                Search::Unknown { .. } => star = Search::Found(w),
                Search::Found(_) => {}
            }
        }
        stars.push(star);
    }
    Ok(WidenessReport {
        homologically_wide: wide,
        condition_star: stars,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wideness {
    Wide,
    NotWide,
    /// The closed-form criterion is only sufficient and does not apply.
    Inconclusive,
}

/// Character of the action on `H_1` of a surface, with the verdict.
#[derive(Clone, Debug)]
pub struct ActionCharacter {
    pub character: ClassFunction,
    /// Euler characteristic of the covering surface.
    pub euler_characteristic: i64,
    /// `<h, lambda>` for every linear character `lambda` of `G`.
    pub linear_multiplicities: Vec<BigRational>,
    pub verdict: Wideness,
}

fn linear_multiplicities(g: &FiniteGroup, h: &ClassFunction) -> Result<Vec<BigRational>> {
    linear_characters(g)?
        .iter()
        .map(|lambda| inner_product(g, h, &lambda.to_class_function(g)?))
        .collect()
}

fn trivial_plus_regular(g: &FiniteGroup, a: i64, k: &BigRational) -> Result<ClassFunction> {
    ClassFunction::trivial(g)
        .scale(&BigRational::from_integer(BigInt::from(a)))
        .add(&ClassFunction::regular(g).scale(k))
}

/// `h = 2 - (chi_M / |G|) rho_reg` for a free action on a closed
/// orientable surface of Euler characteristic `chi_m`.
///
/// The verdict is read off the multiplicities: an irreducible `pi` occurs in
/// `h` with multiplicity `2 [pi = 1] + k dim pi`, `k = -chi_M/|G|`, and `h`
/// contains the regular module iff this is at least `dim pi` for all `pi`.
pub fn surface_action_character(g: &FiniteGroup, chi_m: i64) -> Result<ActionCharacter> {
    let order = g.order();
    if chi_m % order as i64 != 0 {
        return Err(Error::NotDivisible { value: chi_m, divisor: order });
    }
    let k = -chi_m / order as i64;
    let h = trivial_plus_regular(g, 2, &BigRational::from_integer(BigInt::from(k)))?;
    let expected_e = Cyclotomic::from_integer(2 - chi_m);
    let expected_other = Cyclotomic::from_integer(2);
    for x in 0..order {
        let want = if x == 0 { &expected_e } else { &expected_other };
        if h.value(g, x) != want {
            return Err(Error::CrossCheck("surface character differs from its closed form".into()));
        }
    }
    let wide = if order == 1 { 2 + k >= 1 } else { k >= 1 };
    Ok(ActionCharacter {
        linear_multiplicities: linear_multiplicities(g, &h)?,
        character: h,
        euler_characteristic: chi_m,
        verdict: if wide { Wideness::Wide } else { Wideness::NotWide },
    })
}

/// `h = 2 - chi_Q rho_reg + sum_i (rho_reg - Ind_{C_i} 1)` for an action
/// with quotient of Euler characteristic `chi_quotient`, branched over one
/// point per cyclic stabilizer `C_i`. Wide when `chi_quotient < 0`, else
/// inconclusive.
pub fn orbifold_action_character(
    g: &FiniteGroup,
    chi_quotient: i64,
    branch: &[Subgroup],
) -> Result<ActionCharacter> {
    let order = g.order() as i64;
    let mut h = trivial_plus_regular(g, 2, &BigRational::from_integer(BigInt::from(-chi_quotient)))?;
    let mut chi_m = order * chi_quotient;
    for c in branch {
        if c.parent_id() != g.id() {
            return Err(Error::NotSubgroup);
        }
        if !c.members().iter().any(|&x| g.element_order(x) == c.order()) {
            return Err(Error::NotCyclic);
        }
        let term = ClassFunction::regular(g).sub(&permutation_character(g, c)?)?;
        h = h.add(&term)?;
        chi_m -= order - c.index() as i64;
    }
    let dim = h.degree().to_integer().expect("integral degree");
    if dim != BigInt::from(2 - chi_m) {
        return Err(Error::CrossCheck("orbifold character degree violates Riemann-Hurwitz".into()));
    }
    let multiplicities = linear_multiplicities(g, &h)?;
    if chi_quotient < 0 && multiplicities.iter().any(|m| m < &BigRational::from_integer(1.into())) {
        return Err(Error::CrossCheck("wide orbifold action misses a linear character".into()));
    }
    Ok(ActionCharacter {
        character: h,
        euler_characteristic: chi_m,
        linear_multiplicities: multiplicities,
        verdict: if chi_quotient < 0 { Wideness::Wide } else { Wideness::Inconclusive },
    })
}

/// The Seifert-Weber module and the checks on it.
#[derive(Clone, Debug)]
pub struct SeifertWeber {
    /// The matrix group, realized by its left-regular permutation action.
    pub group: FiniteGroup,
    pub module: GModule<PrimeField>,
    pub relations_hold: bool,
    pub order: usize,
    /// Class sizes agree with those of `S_5`.
    pub class_sizes_match_s5: bool,
    /// Traces at representatives of the 5-regular classes `(), (ab), (abc),
    /// (abcd), (ab)(cd), (ab)(cde)`: the words `1, r, r c^-1 r c, r c,
    /// r c r c, r c^-1 r c r c^-1`, as residues in `-2..=2`.
    pub traces: [i64; 6],
    pub expected_traces: [i64; 6],
    /// `(order, class size)` of each representative.
    pub representative_classes: [(usize, usize); 6],
    /// Order of the word `c^-1 r c^2 r c`, which is 5, so that word is not
    /// a representative of `(ab)(cd)`.
    pub c_inv_r_c2_r_c_order: usize,
    /// `(1,1,0)` is cyclic for `<r>`.
    pub r_cyclic: bool,
    /// `(1,0,0)` is cyclic for `<c r c^-1 r>`.
    pub crcr_cyclic: bool,
    /// `|<c r c^-1 r>|`.
    pub crcr_order: usize,
    /// Invariant factors of `H_1(M, Z)`, recorded, not derived.
    pub integral_homology: [u64; 3],
}

impl SeifertWeber {
    pub fn all_checks_pass(&self) -> bool {
        self.relations_hold
            && self.order == 120
            && self.class_sizes_match_s5
            && self.traces == self.expected_traces
            && self.representative_classes == S5_REGULAR_CLASSES
            && self.r_cyclic
            && self.crcr_cyclic
    }
}

/// `(order, class size)` for `(), (ab), (abc), (abcd), (ab)(cd), (ab)(cde)`.
const S5_REGULAR_CLASSES: [(usize, usize); 6] = [(1, 1), (2, 10), (3, 20), (4, 30), (2, 15), (6, 20)];

const SW_R: [u64; 9] = [4, 2, 4, 0, 0, 2, 0, 3, 0];
const SW_C: [u64; 9] = [0, 1, 0, 0, 0, 1, 1, 2, 3];

fn class_size_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut sizes: Vec<usize> = (0..g.class_count()).map(|c| g.class_size(c)).collect();
    sizes.sort_unstable();
    sizes
}

pub fn seifert_weber() -> Result<SeifertWeber> {
    let f = PrimeField::new(5).expect("5 is prime");
    let r = Matrix { rows: 3, cols: 3, data: SW_R.to_vec() };
    let c = Matrix { rows: 3, cols: 3, data: SW_C.to_vec() };
    let id = identity(&f, 3);
    let pow = |m: &Matrix<u64>, k: usize| (0..k).fold(id.clone(), |acc, _| mat_mul(&f, &acc, m));
    let relations_hold = pow(&r, 2) == id && pow(&c, 5) == id;

    let mut elements = alloc::vec![id.clone()];
    let mut index: HashMap<Vec<u64>, u32> = HashMap::new();
    index.insert(id.data.clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for s in [&r, &c] {
            let y = mat_mul(&f, s, &elements[head]);
            if !index.contains_key(&y.data) {
                if elements.len() >= 10_000 {
                    return Err(Error::CapExceeded { cap: 10_000 });
                }
                index.insert(y.data.clone(), elements.len() as u32);
                elements.push(y);
            }
        }
        head += 1;
    }
    let regular = |s: &Matrix<u64>| {
        let images = elements.iter().map(|x| index[&mat_mul(&f, s, x).data]).collect();
        Permutation::from_images(images).expect("left multiplication is a bijection")
    };
    let degree = elements.len();
    let group = FiniteGroup::generate(degree, &[regular(&r), regular(&c)])?;
    let module = GModule::modular_any_characteristic(&group, 5, 3, alloc::vec![r.clone(), c.clone()])?;

    let s5 = FiniteGroup::generate(
        5,
        &[
            Permutation::parse_cycles(5, "(0 1)")?,
            Permutation::parse_cycles(5, "(0 1 2 3 4)")?,
        ],
    )?;
    let class_sizes_match_s5 = class_size_profile(&group) == class_size_profile(&s5);

    let ci = inverse(&f, &c).expect("c is invertible");
    let word = |w: &[&Matrix<u64>]| w.iter().fold(id.clone(), |acc, m| mat_mul(&f, &acc, m));
    let reps = [
        id.clone(),
        r.clone(),
        word(&[&r, &ci, &r, &c]),
        word(&[&r, &c]),
        word(&[&r, &c, &r, &c]),
        word(&[&r, &ci, &r, &c, &r, &ci]),
    ];
    let mut traces = [0i64; 6];
    for (t, m) in traces.iter_mut().zip(&reps) {
        let tr = (m.data[0] + m.data[4] + m.data[8]) % 5;
        *t = if tr > 2 { tr as i64 - 5 } else { tr as i64 };
    }
    let expected_traces = [3i64, -1, 0, 1, -1, 2].map(|t| if t > 2 { t - 5 } else { t });
    let mut representative_classes = [(0usize, 0usize); 6];
    for (slot, m) in representative_classes.iter_mut().zip(&reps) {
        let x = index[&m.data] as usize;
        let perm = Permutation::from_images((0..degree).map(|i| index[&mat_mul(&f, &elements[x], &elements[i]).data]).collect())?;
        let gi = group.index_of(&perm).expect("left multiplication lies in the group");
        *slot = (group.element_order(gi), group.class_size(group.class_of(gi)));
    }
    let listed = word(&[&ci, &r, &c, &c, &r, &c]);
    let c_inv_r_c2_r_c_order = (1..=120)
        .find(|&k| pow(&listed, k) == id)
        .expect("element of a group of order 120");

    let r_idx = group.generator_indices()[0];
    let c_idx = group.generator_indices()[1];
    let crcr = group.mul(group.mul(c_idx, r_idx), group.mul(group.inv(c_idx), r_idx));
    let r_sub = group.subgroup(&[r_idx]);
    let crcr_sub = group.subgroup(&[crcr]);
    let on_r = module.restrict(&group, &r_sub)?;
    let on_crcr = module.restrict(&group, &crcr_sub)?;
    let r_cyclic = on_r.is_cyclic_vector(r_sub.as_group(), &[1, 1, 0])?;
    let crcr_cyclic = on_crcr.is_cyclic_vector(crcr_sub.as_group(), &[1, 0, 0])?;

    Ok(SeifertWeber {
        order: group.order(),
        group,
        module,
        relations_hold,
        class_sizes_match_s5,
        traces,
        expected_traces,
        representative_classes,
        c_inv_r_c2_r_c_order,
        r_cyclic,
        crcr_cyclic,
        crcr_order: crcr_sub.order(),
        integral_homology: [5, 5, 5],
    })
}

/// Restricts a module over a group of order divisible by `ell` to a
/// subgroup of coprime order, where the embedding criteria apply.
pub fn coprime_restriction(
    g: &FiniteGroup,
    m: &GModule<PrimeField>,
    h: &Subgroup,
) -> Result<GModule<PrimeField>> {
    if h.order() as u64 % m.ell() == 0 {
        return Err(Error::EllDividesOrder { ell: m.ell(), order: h.order() });
    }
    m.restrict(g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn cyclic(k: usize) -> FiniteGroup {
        let images: Vec<u32> = (0..k as u32).map(|i| (i + 1) % k as u32).collect();
        FiniteGroup::generate(k, &[Permutation::from_images(images).unwrap()]).unwrap()
    }

    /// Permutation module on the points of `g`'s natural action.
    fn natural(g: &FiniteGroup, ell: u64) -> GModule<PrimeField> {
        let d = g.degree();
        let gens = g
            .generators()
            .iter()
            .map(|s| {
                let mut m = Matrix::filled(d, d, 0u64);
                for i in 0..d {
                    m.set(s.apply(i), i, 1);
                }
                m
            })
            .collect();
        GModule::modular(g, ell, d, gens).unwrap()
    }

    fn regular_module(g: &FiniteGroup, ell: u64) -> GModule<PrimeField> {
        let n = g.order();
        let gens = g
            .generator_indices()
            .iter()
            .map(|&s| {
                let mut m = Matrix::filled(n, n, 0u64);
                for x in 0..n {
                    m.set(g.mul(s, x), x, 1);
                }
                m
            })
            .collect();
        GModule::modular(g, ell, n, gens).unwrap()
    }

    #[test]
    fn rejects_bad_modules() {
        let g = cyclic(3);
        let bad = Matrix { rows: 1, cols: 1, data: alloc::vec![2u64] };
        assert!(matches!(GModule::modular(&g, 5, 1, alloc::vec![bad]), Err(Error::InvalidModule(_))));
        let ok = Matrix { rows: 1, cols: 1, data: alloc::vec![1u64] };
        assert!(matches!(
            GModule::modular(&g, 3, 1, alloc::vec![ok]),
            Err(Error::EllDividesOrder { ell: 3, order: 3 })
        ));
    }

    #[test]
    fn trivial_group_any_vector_is_cyclic() {
        let g = FiniteGroup::generate(1, &[]).unwrap();
        let m = GModule::modular(&g, 7, 2, Vec::new()).unwrap();
        let v = contains_regular(&g, &m, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(v.found(), Some(&alloc::vec![1, 0]));
    }

    #[test]
    fn regular_module_is_wide_and_satisfies_star() {
        let t = catalog::s3_transpositions();
        let g = &t.group;
        let m = regular_module(g, 5);
        let subs = [t.h1.clone(), g.trivial_subgroup(), g.whole(), g.subgroup(&[g.generator_indices()[1]])];
        let report = wideness_report(g, &m, &subs, DEFAULT_SEARCH_BUDGET).unwrap();
        let v = report.homologically_wide.found().unwrap();
        assert!(m.is_cyclic_vector(g, v).unwrap());
        for (h, s) in subs.iter().zip(&report.condition_star) {
            assert!(m.is_star_witness(g, h, s.found().unwrap()).unwrap());
        }
    }

    #[test]
    fn translates_of_cyclic_vectors_are_cyclic() {
        let t = catalog::s3_transpositions();
        let m = regular_module(&t.group, 7);
        let v = contains_regular(&t.group, &m, 100).unwrap().found().unwrap().clone();
        for x in 0..t.group.order() {
            assert!(m.is_cyclic_vector(&t.group, &m.act(x, &v)).unwrap());
        }
    }

    #[test]
    fn small_modules_are_certified_absent() {
        let t = catalog::s3_transpositions();
        let g = &t.group;
        let triv = GModule::modular(g, 5, 1, alloc::vec![Matrix::filled(1, 1, 1); g.generators().len()]).unwrap();
        assert!(condition_star(g, &t.h1, &triv, 100).unwrap().is_absent());
        assert!(contains_regular(g, &triv, 100).unwrap().is_absent());
        // The natural 3-dimensional permutation module is Ind_{<(1 2)>} 1 itself.
        let nat = natural(g, 5);
        let stab = g.subgroup_from_perms(&[p(3, "(1 2)")]).unwrap();
        assert!(condition_star(g, &stab, &nat, 100).unwrap().found().is_some());
        assert!(condition_star(g, &g.trivial_subgroup(), &nat, 10_000).unwrap().is_absent());
        // Six copies of the trivial module have dimension |G| but no regular orbit.
        let six = GModule::modular(g, 5, 6, alloc::vec![identity(&PrimeField::new(5).unwrap(), 6); 2]).unwrap();
        assert!(matches!(
            contains_regular(g, &six, 100).unwrap(),
            Search::Absent(Certificate::MovedSpaceTooSmall { .. })
        ));
    }

    #[test]
    fn rational_module_reduces_consistently() {
        let g = cyclic(4);
        let r = |n: i64| BigRational::from_integer(n.into());
        // Regular representation of Z/4 over Q.
        let mut m = Matrix::filled(4, 4, r(0));
        for i in 0..4 {
            m.set((i + 1) % 4, i, r(1));
        }
        let q = GModule::rational(&g, 4, alloc::vec![m]).unwrap();
        let over_q = contains_regular(&g, &q, 1000).unwrap();
        let over_5 = contains_regular(&g, &q.reduce(&g, 5).unwrap(), 1000).unwrap();
        assert!(over_q.found().is_some() && over_5.found().is_some());
        let half = Matrix { rows: 1, cols: 1, data: alloc::vec![BigRational::new(1.into(), 5.into())] };
        let bad = GModule { field: Rationals, group_id: g.id(), dim: 1, generators: alloc::vec![half.clone()], elements: alloc::vec![half] };
        assert!(matches!(bad.reduce(&g, 5), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn surface_examples() {
        let z2 = cyclic(2);
        let h = surface_action_character(&z2, -4).unwrap();
        assert_eq!(h.character.value(&z2, 0), &Cyclotomic::from_integer(6));
        assert_eq!(h.character.value(&z2, 1), &Cyclotomic::from_integer(2));
        assert_eq!(h.verdict, Wideness::Wide);
        assert_eq!(surface_action_character(&z2, 0).unwrap().verdict, Wideness::NotWide);
        assert_eq!(surface_action_character(&z2, 2).unwrap().verdict, Wideness::NotWide);
        assert!(matches!(
            surface_action_character(&cyclic(4), -2),
            Err(Error::NotDivisible { value: -2, divisor: 4 })
        ));
        let torus = surface_action_character(&z2, 0).unwrap();
        assert!(torus.linear_multiplicities.iter().any(|m| m < &BigRational::from_integer(1.into())));
    }

    #[test]
    fn orbifold_examples() {
        let z2 = cyclic(2);
        let whole = z2.whole();
        let h = orbifold_action_character(&z2, -1, &[whole.clone(), whole.clone()]).unwrap();
        assert_eq!(h.verdict, Wideness::Wide);
        assert_eq!(h.character.value(&z2, 0), &Cyclotomic::from_integer(6));
        assert!(h.linear_multiplicities.iter().all(|m| m >= &BigRational::from_integer(1.into())));
        assert_eq!(h.euler_characteristic, -4);
        let plain = orbifold_action_character(&z2, -2, &[]).unwrap();
        let surf = surface_action_character(&z2, -4).unwrap();
        assert_eq!(plain.character, surf.character);
        let with_trivial = orbifold_action_character(&z2, -2, &[z2.trivial_subgroup()]).unwrap();
        assert_eq!(with_trivial.character, surf.character);
        assert_eq!(orbifold_action_character(&z2, 0, &[]).unwrap().verdict, Wideness::Inconclusive);
        let klein = FiniteGroup::generate(4, &[p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")]).unwrap();
        assert_eq!(orbifold_action_character(&klein, -1, &[klein.whole()]).unwrap_err(), Error::NotCyclic);
    }

    #[test]
    fn seifert_weber_checks() {
        let sw = seifert_weber().unwrap();
        assert!(sw.relations_hold);
        assert_eq!(sw.order, 120);
        assert!(sw.class_sizes_match_s5);
        assert_eq!(sw.traces, [-2, -1, 0, 1, -1, 2]);
        assert_eq!(sw.representative_classes, S5_REGULAR_CLASSES);
        assert_eq!(sw.c_inv_r_c2_r_c_order, 5);
        assert_eq!(sw.traces[1], -1);
        assert!(sw.r_cyclic && sw.crcr_cyclic);
        assert_eq!(sw.crcr_order, 3);
        assert!(sw.all_checks_pass());
        assert!(matches!(
            condition_star(&sw.group, &sw.group.trivial_subgroup(), &sw.module, 10),
            Err(Error::EllDividesOrder { ell: 5, order: 120 })
        ));
    }

    #[test]
    fn seifert_weber_restrictions_are_wide() {
        let sw = seifert_weber().unwrap();
        let g = &sw.group;
        let r = g.subgroup(&[g.generator_indices()[0]]);
        let m = coprime_restriction(g, &sw.module, &r).unwrap();
        let found = contains_regular(r.as_group(), &m, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(m.is_cyclic_vector(r.as_group(), found.found().unwrap()).unwrap());
        let c = g.subgroup(&[g.generator_indices()[1]]);
        assert!(coprime_restriction(g, &sw.module, &c).is_err());
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(3, 3).count(), 1);
        assert_eq!(candidates(0u64, &[1, 2, 3, 4], 3).count(), 124);
    }
}
