//! The wreath product `G~ = C^n x| G` (`C = Z/ell`, `G` permuting the `n`
//! cosets of `H1`), its subgroups `H~_i = C^n x| H_i`, and the isometry test
//! that decides conjugacy of `H1`, `H2` by comparing multiplicities of
//! induced linear characters.
//!
//! `G~` is never enumerated by the test itself. A linear character of
//! `C^n x| H` is `(k, h) -> zeta^<a, k> chi(h)` with `a` constant on the
//! `H`-orbits of coordinates, and the inner product of two induced linear
//! characters is a sum over double cosets of the base group.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::Abelianization;
use crate::catalog;
use crate::character::{character_inner, induce_linear, linear_characters, ClassFunction, LinearCharacter};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{CosetTable, DoubleCoset, FiniteGroup, Subgroup};
use crate::linalg::is_prime;
use crate::monomial::MonomialRep;
use crate::perm::Permutation;

/// Largest `|G~|` for the dense comparison route.
pub const DENSE_CAP: u64 = 100_000;
/// Largest `ell^n |G|` for the monomial-structure brute force.
pub const BRUTE_FORCE_CAP: u64 = 1_000_000;

/// Smallest prime `ell >= 3` not dividing `order`.
pub fn choose_ell(order: u64) -> u64 {
    choose_ell_big(&BigUint::from(order))
}

pub fn choose_ell_big(order: &BigUint) -> u64 {
    (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| !(order % p).is_zero())
        .expect("some prime does not divide a finite order")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    fn idx(self) -> usize {
        match self {
            Side::One => 0,
            Side::Two => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsometryOptions {
    pub ell: Option<u64>,
    /// Allow `ell = 2` and check weak conjugacy of `H~1`, `H~2` first.
    pub pintonello: bool,
    /// Accept an explicit `ell` dividing `|G|`. The group-theoretic
    /// statements (solitary characters, the Mackey fast path) do not need
    /// coprimality; only the passage to covers does.
    pub allow_shared_factor: bool,
}

/// `(k, h) -> zeta_ell^<a, k> chi(h)` on `C^n x| H_side`, where
/// `a = scale * 1_support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathCharacter {
    pub side: Side,
    pub scale: u32,
    pub support: Vec<usize>,
    pub base_index: usize,
    pub base: LinearCharacter,
}

impl WreathCharacter {
    pub fn exponent_vector(&self, n: usize) -> Vec<u32> {
        let mut a = alloc::vec![0; n];
        for &j in &self.support {
            a[j] = self.scale;
        }
        a
    }
}

/// Shared data for one `(G, H1, H2, ell)`.
#[derive(Debug)]
pub struct WreathContext<'a> {
    g: &'a FiniteGroup,
    h: [&'a Subgroup; 2],
    ell: u64,
    pintonello: bool,
    table: CosetTable,
    orbits: [Vec<Vec<usize>>; 2],
    base_characters: [Vec<LinearCharacter>; 2],
    /// `double_cosets[y][x]` lists `H_y \ G / H_x`.
    double_cosets: [[Vec<DoubleCoset>; 2]; 2],
}

impl<'a> WreathContext<'a> {
    pub fn new(g: &'a FiniteGroup, h1: &'a Subgroup, h2: &'a Subgroup, options: IsometryOptions) -> Result<Self> {
        if h1.parent_id() != g.id() || h2.parent_id() != g.id() {
            return Err(Error::NotSubgroup);
        }
        let order = g.order() as u64;
        let ell = match options.ell {
            Some(ell) => ell,
            None if options.pintonello => 2,
            None => choose_ell(order),
        };
        if ell < 2 || !is_prime(ell) {
            return Err(Error::Unsupported(alloc::format!("ell = {ell} is not a prime")));
        }
        if ell == 2 && !options.pintonello {
            return Err(Error::EllTooSmall(ell));
        }
        if order % ell == 0 && !(options.allow_shared_factor && options.ell.is_some()) {
            return Err(Error::EllDividesOrder { ell, order: order as usize });
        }
        if options.ell.is_none() && !options.pintonello && ell > 2 * order.max(2) {
            return Err(Error::CrossCheck(alloc::format!("ell = {ell} exceeds 2|G|")));
        }
        let table = g.cosets(h1)?;
        let orbits = [orbits_on(&table, h1), orbits_on(&table, h2)];
        let base_characters = [linear_characters(h1.as_group())?, linear_characters(h2.as_group())?];
        let dc = |y: &Subgroup, x: &Subgroup| g.double_cosets(y, x);
        let double_cosets = [[dc(h1, h1)?, dc(h1, h2)?], [dc(h2, h1)?, dc(h2, h2)?]];
        Ok(Self {
            g,
            h: [h1, h2],
            ell,
            pintonello: options.pintonello,
            table,
            orbits,
            base_characters,
            double_cosets,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.g
    }

    pub fn subgroup(&self, side: Side) -> &Subgroup {
        self.h[side.idx()]
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn pintonello(&self) -> bool {
        self.pintonello
    }

    /// `n = [G : H1]`, the number of copies of `C`.
    pub fn n(&self) -> usize {
        self.table.index()
    }

    pub fn coset_table(&self) -> &CosetTable {
        &self.table
    }

    /// `|G~| = ell^n |G|`.
    pub fn wreath_order(&self) -> BigUint {
        BigUint::from(self.ell).pow(self.n() as u32) * BigUint::from(self.g.order())
    }

    /// Orbits of `H_side` on the coordinates `G/H1`.
    pub fn orbits(&self, side: Side) -> &[Vec<usize>] {
        &self.orbits[side.idx()]
    }

    pub fn base_characters(&self, side: Side) -> &[LinearCharacter] {
        &self.base_characters[side.idx()]
    }

    /// `|(C^n x| H)^ab| = ell^(#orbits) |H^ab|`.
    pub fn abelianization_order(&self, side: Side) -> BigUint {
        BigUint::from(self.ell).pow(self.orbits(side).len() as u32)
            * BigUint::from(self.base_characters(side).len())
    }

    /// Size of the character family searched on each side, `ell |H^ab|`.
    pub fn family_size(&self, side: Side) -> u64 {
        self.ell * self.base_characters(side).len() as u64
    }

    /// Number of multiplicity equalities the test may need.
    pub fn budget(&self) -> u64 {
        let ab = self.base_characters(Side::Two).len() as u64;
        if self.pintonello {
            2 + 2 * self.ell * ab
        } else {
            2 * self.ell * ab
        }
    }

    /// `Xi(k, h) = zeta_ell^{k_1}` on `H~1`.
    pub fn solitary_character(&self) -> Result<WreathCharacter> {
        if self.ell == 2 && !self.pintonello {
            return Err(Error::EllTooSmall(2));
        }
        Ok(WreathCharacter {
            side: Side::One,
            scale: 1,
            support: alloc::vec![0],
            base_index: 0,
            base: self.base_characters[0][0].clone(),
        })
    }

    /// Coordinates carrying the family's exponent vectors: the first
    /// coordinate fixed by `H_side`, else the orbit of coordinate 0.
    pub fn family_support(&self, side: Side) -> Vec<usize> {
        let orbits = self.orbits(side);
        orbits
            .iter()
            .filter(|o| o.len() == 1)
            .min_by_key(|o| o[0])
            .unwrap_or(&orbits[0])
            .clone()
    }

    /// The `ell |H_side^ab|` characters `(k, h) -> zeta^(c sum_{j in O} k_j) chi(h)`,
    /// ordered by `c` and then by base character.
    ///
    /// When `H1` and `H2` are conjugate, the transport of `Xi` lies in the
    /// family (its exponent vector is `e_j` for a coordinate `j` fixed by
    /// `H2`, and all such `j` give transports of `Xi`).
    pub fn character_family(&self, side: Side) -> Vec<WreathCharacter> {
        let support = self.family_support(side);
        let mut out = Vec::with_capacity(self.family_size(side) as usize);
        for scale in 0..self.ell as u32 {
            for (i, chi) in self.base_characters(side).iter().enumerate() {
                out.push(WreathCharacter {
                    side,
                    scale,
                    support: support.clone(),
                    base_index: i,
                    base: chi.clone(),
                });
            }
        }
        out
    }

    pub fn trivial_character(&self, side: Side) -> WreathCharacter {
        WreathCharacter {
            side,
            scale: 0,
            support: Vec::new(),
            base_index: 0,
            base: self.base_characters(side)[0].clone(),
        }
    }

    fn check_character(&self, x: &WreathCharacter) -> Result<()> {
        if x.base.group_id() != self.subgroup(x.side).as_group().id() {
            return Err(Error::MalformedCharacter("base character on the wrong subgroup".into()));
        }
        if x.scale as u64 >= self.ell || x.support.iter().any(|&j| j >= self.n()) {
            return Err(Error::MalformedCharacter("exponent vector out of range".into()));
        }
        let a = x.exponent_vector(self.n());
        let h = self.subgroup(x.side);
        for &s in h.generators() {
            if (0..self.n()).any(|j| a[self.table.act(s, j)] != a[j]) {
                return Err(Error::MalformedCharacter(
                    "exponent vector is not constant on subgroup orbits".into(),
                ));
            }
        }
        Ok(())
    }

    /// `<Ind_{H~x} x, Ind_{H~y} y>` by Mackey's formula over `H_y \ G / H_x`.
    /// The term for `s` is 1 iff `Phi(s) a_x = a_y` and
    /// `chi_x(s^-1 k s) = chi_y(k)` on `H_y ∩ s H_x s^-1`.
    pub fn induced_inner(&self, x: &WreathCharacter, y: &WreathCharacter) -> Result<u64> {
        self.check_character(x)?;
        self.check_character(y)?;
        let n = self.n();
        let (ax, ay) = (x.exponent_vector(n), y.exponent_vector(n));
        let (hx, hy) = (self.subgroup(x.side), self.subgroup(y.side));
        let mut total = 0;
        for dc in &self.double_cosets[y.side.idx()][x.side.idx()] {
            let s = dc.representative;
            if (0..n).any(|j| ay[self.table.act(s, j)] != ax[j]) {
                continue;
            }
            let sinv = self.g.inv(s);
            let agree = hy.members().iter().enumerate().all(|(ly, &k)| {
                match hx.local_index(self.g.conjugate_by(sinv, k)) {
                    Some(lx) => x.base.value_eq(lx, &y.base, ly),
                    None => true,
                }
            });
            total += u64::from(agree);
        }
        Ok(total)
    }

    /// Runs both multiplicity comparisons for one candidate on side 2.
    pub fn evaluate(&self, xi: &WreathCharacter, a11: u64, chi: &WreathCharacter) -> Result<CandidateOutcome> {
        let a21 = self.induced_inner(xi, chi)?;
        let a12 = self.induced_inner(chi, xi)?;
        if a12 != a21 {
            return Err(Error::CrossCheck("wreath a-matrix is not symmetric".into()));
        }
        let first = a11 == a21;
        let a22 = self.induced_inner(chi, chi)?;
        Ok(CandidateOutcome {
            a12,
            a21,
            a22,
            comparisons: if first { 2 } else { 1 },
            witness: first && a12 == a22,
        })
    }
}

fn orbits_on(table: &CosetTable, h: &Subgroup) -> Vec<Vec<usize>> {
    let n = table.index();
    let mut seen = alloc::vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        for &x in h.members() {
            let j = table.act(x, start);
            if !seen[j] {
                seen[j] = true;
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateOutcome {
    pub a12: u64,
    pub a21: u64,
    pub a22: u64,
    /// Equalities evaluated: the second is skipped when the first fails.
    pub comparisons: u32,
    pub witness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: usize,
    pub scale: u32,
    pub support: Vec<usize>,
    pub base_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryVerdict {
    pub equivalent: bool,
    pub ell: u64,
    pub pintonello: bool,
    pub n: usize,
    pub witness: Option<Witness>,
    pub checks_performed: u64,
    pub budget: u64,
    pub characters_examined: usize,
    pub a11: u64,
    /// Pintonello mode only: whether `H~1`, `H~2` passed the weak
    /// conjugacy precheck.
    pub lifted_weakly_conjugate: Option<bool>,
    /// Group-level conjugator the verdict was checked against.
    pub conjugator: Option<usize>,
}

/// Decides whether `H1`, `H2` are conjugate by the multiplicity test on
/// `G~`, evaluating candidates one at a time.
pub fn isometry_test(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup, options: IsometryOptions) -> Result<IsometryVerdict> {
    let ctx = WreathContext::new(g, h1, h2, options)?;
    run_isometry(&ctx, |ctx, xi, a11, family| {
        let mut out = Vec::new();
        for chi in family {
            let r = ctx.evaluate(xi, a11, chi);
            let stop = matches!(r, Ok(CandidateOutcome { witness: true, .. }) | Err(_));
            out.push(r);
            if stop {
                break;
            }
        }
        out
    })
}

/// Runs the test with a caller-supplied evaluator (for example a parallel
/// one). The evaluator may return outcomes for any prefix of the family that
/// contains the first witness; the verdict only depends on that prefix.
pub fn run_isometry<F>(ctx: &WreathContext<'_>, evaluate_all: F) -> Result<IsometryVerdict>
where
    F: FnOnce(&WreathContext<'_>, &WreathCharacter, u64, &[WreathCharacter]) -> Vec<Result<CandidateOutcome>>,
{
    let xi = ctx.solitary_character()?;
    let a11 = ctx.induced_inner(&xi, &xi)?;
    let budget = ctx.budget();
    let conjugator = ctx.g.are_conjugate_subgroups(ctx.h[0], ctx.h[1])?;
    let mut checks = 0u64;
    let mut lifted_weak = None;

    let verdict = |equivalent: bool, witness: Option<Witness>, checks: u64, examined: usize, lifted_weak| {
        if equivalent != conjugator.is_some() {
            return Err(Error::CrossCheck(alloc::format!(
                "isometry verdict {equivalent} disagrees with subgroup conjugacy"
            )));
        }
        if checks > budget {
            return Err(Error::CrossCheck(alloc::format!(
                "{checks} comparisons exceed the budget {budget}"
            )));
        }
        Ok(IsometryVerdict {
            equivalent,
            ell: ctx.ell,
            pintonello: ctx.pintonello,
            n: ctx.n(),
            witness,
            checks_performed: checks,
            budget,
            characters_examined: examined,
            a11,
            lifted_weakly_conjugate: lifted_weak,
            conjugator,
        })
    };

    if ctx.pintonello {
        let (t1, t2) = (ctx.trivial_character(Side::One), ctx.trivial_character(Side::Two));
        let b11 = ctx.induced_inner(&t1, &t1)?;
        let b21 = ctx.induced_inner(&t1, &t2)?;
        checks += 1;
        let mut weak = b11 == b21;
        if weak {
            let b12 = ctx.induced_inner(&t2, &t1)?;
            let b22 = ctx.induced_inner(&t2, &t2)?;
            checks += 1;
            weak = b12 == b22;
        }
        lifted_weak = Some(weak);
        if !weak {
            return verdict(false, None, checks, 0, lifted_weak);
        }
    }

    let family = ctx.character_family(Side::Two);
    let outcomes = evaluate_all(ctx, &xi, a11, &family);
    let mut examined = 0;
    for (index, r) in outcomes.into_iter().enumerate() {
        let o = r?;
        examined += 1;
        checks += o.comparisons as u64;
        if o.witness {
            let chi = &family[index];
            let w = Witness {
                index,
                scale: chi.scale,
                support: chi.support.clone(),
                base_index: chi.base_index,
            };
            return verdict(true, Some(w), checks, examined, lifted_weak);
        }
    }
    if examined < family.len() {
        return Err(Error::CrossCheck("evaluator stopped before a witness".into()));
    }
    verdict(false, None, checks, examined, lifted_weak)
}

/// `G~` realized as a permutation group on `n ell + deg(G)` points: point
/// `i ell + c` is `(coset i, c in Z/ell)` and `(k, g)` sends it to
/// `(g(i), c + k_{g(i)})`; the last `deg(G)` points carry `G` itself.
#[derive(Debug)]
pub struct DenseWreath {
    pub group: FiniteGroup,
    pub subgroups: [Subgroup; 2],
    n: usize,
    ell: u64,
    base_degree: usize,
    base_ids: [u64; 2],
}

impl DenseWreath {
    pub fn new(ctx: &WreathContext<'_>) -> Result<Self> {
        Self::with_cap(ctx, DENSE_CAP)
    }

    pub fn with_cap(ctx: &WreathContext<'_>, cap: u64) -> Result<Self> {
        let order = ctx.wreath_order();
        if order > BigUint::from(cap) {
            return Err(Error::TooLarge(alloc::format!("|G~| = {order} exceeds {cap}")));
        }
        let n = ctx.n();
        let unit = |j: usize| {
            let mut k = alloc::vec![0u32; n];
            k[j] = 1;
            k
        };
        let zero = alloc::vec![0u32; n];
        let mut gens: Vec<Permutation> = (0..n).map(|j| wreath_perm(ctx, &unit(j), 0)).collect();
        gens.extend(ctx.g.generator_indices().iter().map(|&s| wreath_perm(ctx, &zero, s)));
        let degree = n * ctx.ell as usize + ctx.g.degree();
        let group = FiniteGroup::generate_capped(degree, &gens, cap as usize)?;
        if BigUint::from(group.order()) != order {
            return Err(Error::CrossCheck(alloc::format!(
                "dense wreath product has order {}, expected {order}",
                group.order()
            )));
        }
        let sub = |h: &Subgroup| {
            let mut gens: Vec<Permutation> = (0..n).map(|j| wreath_perm(ctx, &unit(j), 0)).collect();
            gens.extend(h.generators().iter().map(|&x| wreath_perm(ctx, &zero, x)));
            group.subgroup_from_perms(&gens)
        };
        let subgroups = [sub(ctx.h[0])?, sub(ctx.h[1])?];
        Ok(Self {
            group,
            subgroups,
            n,
            ell: ctx.ell,
            base_degree: ctx.g.degree(),
            base_ids: [ctx.h[0].as_group().id(), ctx.h[1].as_group().id()],
        })
    }

    pub fn subgroup(&self, side: Side) -> &Subgroup {
        &self.subgroups[side.idx()]
    }

    /// Splits an element of `G~` into `(k, g)` with `g` an index of `G`.
    pub fn decode(&self, ctx: &WreathContext<'_>, x: usize) -> (Vec<u32>, usize) {
        let p = self.group.element(x);
        let ell = self.ell as usize;
        let offset = self.n * ell;
        let images = (0..self.base_degree)
            .map(|q| (p.apply(offset + q) - offset) as u32)
            .collect();
        let gp = Permutation::from_images(images).expect("base block is a permutation");
        let g = ctx.g.index_of(&gp).expect("base block lies in G");
        let mut k = alloc::vec![0u32; self.n];
        for i in 0..self.n {
            let img = p.apply(i * ell);
            k[img / ell] = (img % ell) as u32;
        }
        (k, g)
    }

    /// Index of the element `(k, g)`.
    pub fn element_index(&self, ctx: &WreathContext<'_>, k: &[u32], g: usize) -> usize {
        self.group
            .index_of(&wreath_perm(ctx, k, g))
            .expect("every pair (k, g) lies in the wreath product")
    }

    /// The linear character of `H~_side` described by `x`.
    pub fn lift(&self, ctx: &WreathContext<'_>, x: &WreathCharacter) -> Result<LinearCharacter> {
        let side = x.side.idx();
        if x.base.group_id() != self.base_ids[side] {
            return Err(Error::GroupMismatch);
        }
        let h = ctx.subgroup(x.side);
        let hh = &self.subgroups[side];
        let m = num_integer::lcm(self.ell, x.base.modulus());
        let a = x.exponent_vector(self.n);
        let exponents = hh
            .members()
            .iter()
            .map(|&y| {
                let (k, g) = self.decode(ctx, y);
                let local = h.local_index(g).expect("base part lies in H");
                let dot: u64 = a.iter().zip(&k).map(|(&ai, &ki)| ai as u64 * ki as u64).sum();
                let e = dot * (m / self.ell) + x.base.exponent(local) as u64 * (m / x.base.modulus());
                (e % m) as u32
            })
            .collect();
        LinearCharacter::new(hh.as_group(), m, exponents)
    }

    /// `<Ind x, Ind y>` from induced class functions on the enumerated `G~`.
    pub fn induced_inner(&self, ctx: &WreathContext<'_>, x: &WreathCharacter, y: &WreathCharacter) -> Result<u64> {
        let ix = induce_linear(&self.group, self.subgroup(x.side), &self.lift(ctx, x)?)?;
        let iy = induce_linear(&self.group, self.subgroup(y.side), &self.lift(ctx, y)?)?;
        character_inner(&self.group, &ix, &iy)
    }
}

fn wreath_perm(ctx: &WreathContext<'_>, k: &[u32], g: usize) -> Permutation {
    let n = ctx.n();
    let ell = ctx.ell as usize;
    let gp = ctx.g.element(g);
    let mut images = Vec::with_capacity(n * ell + ctx.g.degree());
    for i in 0..n {
        let j = ctx.table.act(g, i);
        for c in 0..ell {
            images.push((j * ell + (c + k[j] as usize) % ell) as u32);
        }
    }
    let offset = (n * ell) as u32;
    images.extend(gp.images().iter().map(|&q| q + offset));
    Permutation::from_images(images).expect("wreath element is a bijection")
}

/// Compares every fast-path inner product among `Xi`, the trivial
/// characters and both character families with the dense computation.
/// Returns the number of inner products compared.
pub fn dense_agreement(ctx: &WreathContext<'_>) -> Result<usize> {
    let dense = DenseWreath::new(ctx)?;
    for side in [Side::One, Side::Two] {
        let ab = Abelianization::compute(dense.subgroup(side).as_group())?;
        if BigUint::from(ab.order()) != ctx.abelianization_order(side) {
            return Err(Error::CrossCheck(alloc::format!(
                "|H~^ab| = {} but the orbit formula gives {}",
                ab.order(),
                ctx.abelianization_order(side)
            )));
        }
    }
    let mut chars = alloc::vec![ctx.solitary_character()?, ctx.trivial_character(Side::One), ctx.trivial_character(Side::Two)];
    chars.extend(ctx.character_family(Side::One));
    chars.extend(ctx.character_family(Side::Two));
    let induced: Vec<ClassFunction> = chars
        .iter()
        .map(|x| induce_linear(&dense.group, dense.subgroup(x.side), &dense.lift(ctx, x)?))
        .collect::<Result<_>>()?;
    let mut compared = 0;
    for (i, x) in chars.iter().enumerate() {
        for (j, y) in chars.iter().enumerate() {
            let fast = ctx.induced_inner(x, y)?;
            let slow = character_inner(&dense.group, &induced[i], &induced[j])?;
            if fast != slow {
                return Err(Error::CrossCheck(alloc::format!(
                    "fast inner product {fast} differs from dense {slow} for characters {i}, {j}"
                )));
            }
            compared += 1;
        }
    }
    Ok(compared)
}

/// Outcome of the monomial-structure brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub unique: bool,
    pub wreath_order: u64,
    pub subgroups_examined: usize,
    pub conjugacy_classes: usize,
    /// Distinct monomial structures up to `G~`-set isomorphism, each as the
    /// sorted list of `[G~ : K]` over its orbits of lines.
    pub structures: Vec<Vec<usize>>,
    /// `|psi(e_1)|^2 - (n-2)^2`, certified positive.
    pub inequality_gap: String,
}

/// Confirms on a tiny instance that `Ind Xi` has a single monomial
/// structure: every decomposition `Ind Xi = sum_k Ind_{K_k} lambda_k` with
/// `sum [G~ : K_k] = n` uses a single subgroup conjugate to `H~1`.
pub fn solitary_uniqueness_bruteforce(ctx: &WreathContext<'_>) -> Result<UniquenessReport> {
    if ctx.ell == 2 {
        return Err(Error::Unsupported(
            "ell = 2: Ind Xi need not have a unique monomial structure".into(),
        ));
    }
    let order = ctx.wreath_order();
    let order_u64 = order
        .to_u64()
        .filter(|&o| o <= BRUTE_FORCE_CAP)
        .ok_or_else(|| Error::TooLarge(alloc::format!("|G~| = {order} exceeds {BRUTE_FORCE_CAP}")))?;
    let n = ctx.n();
    let dense = DenseWreath::with_cap(ctx, BRUTE_FORCE_CAP)?;
    let gt = &dense.group;
    let h1t = dense.subgroup(Side::One);
    let xi = ctx.solitary_character()?;
    let xi_lift = dense.lift(ctx, &xi)?;
    let rho = MonomialRep::induced_linear(gt, h1t, &xi_lift)?;
    let psi = rho.character(gt)?;
    if psi != induce_linear(gt, h1t, &xi_lift)? {
        return Err(Error::CrossCheck("monomial matrices disagree with the induced character".into()));
    }

    // psi at (e_1, 1) is zeta + (n - 1); |psi|^2 - (n-2)^2 = (n-1)|1 + zeta|^2.
    let mut e1 = alloc::vec![0u32; n];
    e1[0] = 1;
    let x = gt
        .index_of(&wreath_perm(ctx, &e1, 0))
        .ok_or_else(|| Error::CrossCheck("(e_1, 1) missing from G~".into()))?;
    let value = psi.value(gt, x).clone();
    let zeta = Cyclotomic::root_of_unity(ctx.ell, 1)?;
    let expected = &zeta + &Cyclotomic::from_integer(n as i64 - 1);
    if value != expected {
        return Err(Error::CrossCheck(alloc::format!("psi(e_1) = {value}, expected {expected}")));
    }
    let gap = &value.abs_squared() - &Cyclotomic::from_integer((n as i64 - 2).pow(2));
    let one_plus_zeta = &Cyclotomic::one() + &zeta;
    let formula = &one_plus_zeta.abs_squared() * &Cyclotomic::from_integer(n as i64 - 1);
    if gap != formula || (n > 1 && one_plus_zeta.is_zero()) {
        return Err(Error::CrossCheck("character inequality certificate failed".into()));
    }
    if n == 1 {
        return Ok(UniquenessReport {
            unique: true,
            wreath_order: order_u64,
            subgroups_examined: 1,
            conjugacy_classes: 1,
            structures: alloc::vec![alloc::vec![1]],
            inequality_gap: String::from("1 > -1"),
        });
    }

    let subgroups = gt.low_index_subgroups(n, 50_000_000)?;
    let mut reps: Vec<Subgroup> = Vec::new();
    for k in &subgroups {
        let mut known = false;
        for r in &reps {
            if gt.are_conjugate_subgroups(r, k)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(k.clone());
        }
    }
    let h1_class = reps
        .iter()
        .position(|r| gt.are_conjugate_subgroups(r, h1t).ok().flatten().is_some())
        .ok_or_else(|| Error::CrossCheck("H~1 not among the low-index subgroups".into()))?;

    struct Piece {
        class: usize,
        index: usize,
        induced: ClassFunction,
    }
    let mut pieces = Vec::new();
    for (class, k) in reps.iter().enumerate() {
        for lambda in linear_characters(k.as_group())? {
            let induced = induce_linear(gt, k, &lambda)?;
            let norm = character_inner(gt, &induced, &induced)?;
            if character_inner(gt, &induced, &psi)? >= norm {
                pieces.push(Piece {
                    class,
                    index: k.index(),
                    induced,
                });
            }
        }
    }

    let mut structures: Vec<Vec<usize>> = Vec::new();
    let mut class_sets: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn dfs(
        pieces: &[Piece],
        start: usize,
        remaining: usize,
        target: &ClassFunction,
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if remaining == 0 {
            if target.is_zero() {
                let mut classes: Vec<usize> = chosen.iter().map(|&i| pieces[i].class).collect();
                classes.sort_unstable();
                if !found.contains(&classes) {
                    found.push(classes);
                }
            }
            return Ok(());
        }
        for i in start..pieces.len() {
            if pieces[i].index > remaining {
                continue;
            }
            let rest = target.sub(&pieces[i].induced)?;
            chosen.push(i);
            dfs(pieces, i, remaining - pieces[i].index, &rest, chosen, found)?;
            chosen.pop();
        }
        Ok(())
    }
    dfs(&pieces, 0, n, &psi, &mut chosen, &mut class_sets)?;
    for set in &class_sets {
        let mut idx: Vec<usize> = set.iter().map(|&c| reps[c].index()).collect();
        idx.sort_unstable();
        structures.push(idx);
    }
    let unique = class_sets.len() == 1 && class_sets[0] == alloc::vec![h1_class];
    Ok(UniquenessReport {
        unique,
        wreath_order: order_u64,
        subgroups_examined: subgroups.len(),
        conjugacy_classes: reps.len(),
        structures,
        inequality_gap: alloc::format!("{gap}"),
    })
}

/// One executable row of the table of examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub name: String,
    pub group_order: u64,
    pub subgroup_order: u64,
    pub ell: u64,
    pub dimension: u64,
    pub budget: u64,
    pub reference: [u64; 5],
}

impl TableRow {
    pub fn computed(&self) -> [u64; 5] {
        [self.group_order, self.subgroup_order, self.ell, self.dimension, self.budget]
    }

    pub fn matches(&self) -> bool {
        self.computed() == self.reference
    }
}

/// The `(p^3)!` row, evaluated from closed formulas only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KomatsuRow {
    pub p: u64,
    pub group_order: BigUint,
    pub subgroup_order: u64,
    /// `|H^ab|` of the unitriangular group, computed by enumeration.
    pub subgroup_abelianization: u64,
    pub ell: u64,
    pub ell_bound: u64,
    pub dimension: BigUint,
    pub budget: u64,
    pub budget_bound: u64,
    /// `(leading digit, power of ten)` of `|G|` and of the dimension.
    pub group_magnitude: (u32, usize),
    pub dimension_magnitude: (u32, usize),
}

impl KomatsuRow {
    /// Compares with the reference `p = 3` values: `|G| ≈ 10^28`, `|H| = 27`,
    /// `ell = 29`, dimension `≈ 4 10^26`, 522 equalities.
    pub fn matches_reference_p3(&self) -> bool {
        self.p == 3
            && self.group_magnitude.1 == 28
            && self.subgroup_order == 27
            && self.ell == 29
            && self.dimension_magnitude == (4, 26)
            && self.budget == 522
    }
}

fn magnitude(x: &BigUint) -> (u32, usize) {
    let digits = x.to_str_radix(10);
    let lead = digits.as_bytes()[0] - b'0';
    (lead as u32, digits.len() - 1)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// The unitriangular group `U_3(F_p)` acting on `F_p^3`.
pub fn heisenberg(p: u64) -> Result<FiniteGroup> {
    if !is_prime(p) || p > 7 {
        return Err(Error::Unsupported(alloc::format!("Heisenberg group for p = {p}")));
    }
    let size = (p * p * p) as usize;
    let matrix = |m: [[u64; 3]; 3]| {
        let images = (0..size as u64)
            .map(|v| {
                let x = [v % p, (v / p) % p, v / (p * p)];
                let y: Vec<u64> = (0..3)
                    .map(|r| (m[r][0] * x[0] + m[r][1] * x[1] + m[r][2] * x[2]) % p)
                    .collect();
                (y[0] + y[1] * p + y[2] * p * p) as u32
            })
            .collect();
        Permutation::from_images(images).expect("unipotent matrix is invertible")
    };
    FiniteGroup::generate(
        size,
        &[
            matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            matrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        ],
    )
}

pub fn komatsu_row(p: u64) -> Result<KomatsuRow> {
    let h = heisenberg(p)?;
    let ab = Abelianization::compute(&h)?.order();
    let m = p * p * p;
    let group_order = factorial(m);
    let ell = choose_ell_big(&group_order);
    let dimension = factorial(m - 1);
    Ok(KomatsuRow {
        p,
        subgroup_order: h.order() as u64,
        subgroup_abelianization: ab,
        ell,
        ell_bound: 2 * m - 3,
        budget: 2 * ell * ab,
        budget_bound: 2 * p * p * (2 * m - 3),
        group_magnitude: magnitude(&group_order),
        dimension_magnitude: magnitude(&dimension),
        group_order,
        dimension,
    })
}

/// Recomputes the executable rows from the catalog groups.
pub fn table1() -> Result<Vec<TableRow>> {
    let specs: [(catalog::Triple, bool, [u64; 5]); 5] = [
        (catalog::gerst(), false, [32, 4, 3, 8, 24]),
        (catalog::gassmann(), false, [720, 4, 7, 180, 56]),
        (catalog::brooks_tse(), false, [168, 24, 5, 7, 20]),
        (catalog::barden_kang(), false, [96, 8, 5, 12, 80]),
        (catalog::guralnick(3)?, true, [243, 9, 2, 27, 38]),
    ];
    let mut rows = Vec::new();
    for (t, pintonello, reference) in specs {
        let ctx = WreathContext::new(
            &t.group,
            &t.h1,
            &t.h2,
            IsometryOptions {
                pintonello,
                ..IsometryOptions::default()
            },
        )?;
        if t.h1.order() != t.h2.order() {
            return Err(Error::CrossCheck(alloc::format!("{}: |H1| != |H2|", t.name)));
        }
        rows.push(TableRow {
            name: t.name.clone(),
            group_order: t.group.order() as u64,
            subgroup_order: t.h1.order() as u64,
            ell: ctx.ell(),
            dimension: t.h2.index() as u64,
            budget: ctx.budget(),
            reference,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> IsometryOptions {
        IsometryOptions::default()
    }

    fn ell3() -> IsometryOptions {
        IsometryOptions {
            ell: Some(3),
            allow_shared_factor: true,
            ..IsometryOptions::default()
        }
    }

    #[test]
    fn ell_choices() {
        assert_eq!(choose_ell(720), 7);
        assert_eq!(choose_ell(168), 5);
        assert_eq!(choose_ell(32), 3);
        assert_eq!(choose_ell(1), 3);
        assert_eq!(choose_ell_big(&factorial(27)), 29);
    }

    #[test]
    fn solitary_character_shape() {
        let t = catalog::s3_transpositions();
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, opts()).unwrap();
        let xi = ctx.solitary_character().unwrap();
        assert_eq!(xi.exponent_vector(3), alloc::vec![1, 0, 0]);
        assert!(xi.base.is_trivial());
        let two = IsometryOptions {
            ell: Some(2),
            ..IsometryOptions::default()
        };
        assert!(matches!(WreathContext::new(&t.group, &t.h1, &t.h2, two), Err(Error::EllTooSmall(2))));
    }

    #[test]
    fn family_sizes() {
        let t = catalog::gassmann();
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, opts()).unwrap();
        assert_eq!(ctx.ell(), 7);
        assert_eq!(ctx.character_family(Side::Two).len(), 28);
        assert_eq!(ctx.budget(), 56);
        let t = catalog::brooks_tse();
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, opts()).unwrap();
        assert_eq!(ctx.character_family(Side::Two).len(), 10);
        let g = catalog::s3_transpositions().group;
        let whole = g.whole();
        let ctx = WreathContext::new(&g, &whole, &whole, opts()).unwrap();
        assert_eq!(ctx.ell(), 5);
        assert_eq!(ctx.character_family(Side::Two).len(), 5 * 2);
        assert_eq!(ctx.n(), 1);
    }

    #[test]
    fn gassmann_pair_is_not_equivalent() {
        let t = catalog::gassmann();
        let v = isometry_test(&t.group, &t.h1, &t.h2, opts()).unwrap();
        assert!(!v.equivalent);
        assert_eq!(v.budget, 56);
        assert!(v.checks_performed <= 56);
        assert_eq!(v.characters_examined, 28);
    }

    #[test]
    fn conjugate_pair_is_equivalent() {
        let t = catalog::s3_transpositions();
        let five = IsometryOptions {
            ell: Some(5),
            ..IsometryOptions::default()
        };
        let v = isometry_test(&t.group, &t.h1, &t.h2, five).unwrap();
        assert!(v.equivalent);
        let w = v.witness.unwrap();
        assert_eq!((w.scale, w.base_index), (1, 0));
        let same = isometry_test(&t.group, &t.h1, &t.h1, opts()).unwrap();
        assert!(same.equivalent);
    }

    #[test]
    fn fast_path_matches_dense_route() {
        let t = catalog::s3_transpositions();
        assert!(matches!(
            WreathContext::new(&t.group, &t.h1, &t.h2, IsometryOptions { allow_shared_factor: false, ..ell3() }),
            Err(Error::EllDividesOrder { .. })
        ));
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, ell3()).unwrap();
        assert_eq!(ctx.wreath_order(), BigUint::from(162u32));
        assert!(dense_agreement(&ctx).unwrap() > 0);
        let t = catalog::klein_pair();
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, opts()).unwrap();
        assert!(dense_agreement(&ctx).unwrap() > 0);
    }

    #[test]
    fn abelianization_counts_orbits() {
        // H1 = <(0 1)> fixes the coset H1 and swaps the other two, so the
        // lifted abelianization has order 3^2 * 2, not 3 * 2.
        let t = catalog::s3_transpositions();
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, ell3()).unwrap();
        assert_eq!(ctx.orbits(Side::One).len(), 2);
        assert_eq!(ctx.abelianization_order(Side::One), BigUint::from(18u32));
    }

    #[test]
    fn brute_force_uniqueness() {
        let t = catalog::s3_transpositions();
        let ctx = WreathContext::new(&t.group, &t.h1, &t.h2, ell3()).unwrap();
        let r = solitary_uniqueness_bruteforce(&ctx).unwrap();
        assert!(r.unique, "{r:?}");
        assert_eq!(r.wreath_order, 162);
        let two = WreathContext::new(&t.group, &t.h1, &t.h2, IsometryOptions { ell: Some(2), pintonello: true, allow_shared_factor: true }).unwrap();
        assert!(matches!(solitary_uniqueness_bruteforce(&two), Err(Error::Unsupported(_))));
    }

    #[test]
    fn guralnick_in_pintonello_mode() {
        let t = catalog::guralnick(3).unwrap();
        let weak = crate::gassmann::weak_conjugacy(&t.group, &t.h1, &t.h2).unwrap();
        let v = isometry_test(&t.group, &t.h1, &t.h2, IsometryOptions { pintonello: true, ..opts() }).unwrap();
        assert!(!v.equivalent);
        assert_eq!((v.ell, v.budget), (2, 38));
        assert_eq!(v.lifted_weakly_conjugate, Some(weak.weakly_conjugate));
        let std = isometry_test(&t.group, &t.h1, &t.h2, opts()).unwrap();
        assert_eq!((std.ell, std.budget), (5, 90));
        assert!(!std.equivalent);
        assert!(weak.weakly_conjugate && !weak.conjugate);
        assert!(v.checks_performed <= 38);
    }

    #[test]
    fn cyclic_brute_force_variants() {
        let g = FiniteGroup::generate(4, &[Permutation::parse_cycles(4, "(0 1 2 3)").unwrap()]).unwrap();
        let subgroups = g.low_index_subgroups(4, 1000).unwrap();
        assert_eq!(subgroups.len(), 3);
        for h in &subgroups {
            let ctx = WreathContext::new(&g, h, h, opts()).unwrap();
            let r = solitary_uniqueness_bruteforce(&ctx).unwrap();
            assert!(r.unique, "index {}: {r:?}", h.index());
        }
    }

    #[test]
    fn table_rows_match() {
        for row in table1().unwrap() {
            assert!(row.matches(), "{row:?}");
        }
        let k = komatsu_row(3).unwrap();
        assert_eq!(k.subgroup_abelianization, 9);
        assert_eq!(k.budget_bound, 918);
        assert!(k.matches_reference_p3(), "{k:?}");
    }
}
