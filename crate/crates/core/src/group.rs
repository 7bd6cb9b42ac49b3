//! Fully enumerated permutation groups, their subgroups, cosets and
//! conjugacy classes.
//!
//! Every group is closed eagerly: elements are stored in breadth-first
//! discovery order from the (sorted) generators, identity first, so every
//! index-based choice made downstream is reproducible.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements of an enumerated group.
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 20;

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 1024;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    id: u64,
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<u32>,
}

impl FiniteGroup {
    /// Closes `generators` under composition with the default element cap.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::generate_capped(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_capped(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut sorted: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        sorted.sort();
        sorted.dedup();

        let identity = Permutation::identity(degree);
        let mut elements = alloc::vec![identity.clone()];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            for s in &sorted {
                let y = s.compose(&elements[head]);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            head += 1;
        }
        Ok(Self::assemble(degree, generators.to_vec(), elements, index))
    }

    /// Builds a group from an element list that is already closed, with the
    /// identity first. Used for subgroups, whose elements are kept in parent
    /// order.
    fn from_closed(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements[0].is_identity());
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Self::assemble(degree, generators, elements, index)
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
    ) -> Self {
        let n = elements.len();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| index[g] as usize).collect();
        let mut group = Self {
            id: fresh_id(),
            degree,
            generators,
            generator_indices,
            elements,
            index,
            inverses,
            table: None,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let p = group.elements[a].compose(&group.elements[b]);
                    table.push(group.index[&p]);
                }
            }
            group.table = Some(table);
        }
        group.compute_classes();
        group
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = alloc::vec![u32::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let gens: Vec<usize> = self.nontrivial_generator_indices();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            let mut members = alloc::vec![start];
            class_of[start] = c;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.conjugate_by(s, x);
                    if class_of[y] == u32::MAX {
                        class_of[y] = c;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    fn nontrivial_generator_indices(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = self
            .generator_indices
            .iter()
            .copied()
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Unique identity of this group value, used to reject mixing class
    /// functions and subgroups between different groups.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate_by(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elements[a].order()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Smallest element index in the class.
    pub fn class_representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.class_size(c)
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    fn check(&self, h: &Subgroup) -> Result<()> {
        if h.parent_id == self.id {
            Ok(())
        } else {
            Err(Error::NotSubgroup)
        }
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, generators: &[usize]) -> Subgroup {
        let n = self.order();
        let mut mask = alloc::vec![false; n];
        mask[0] = true;
        let mut members = alloc::vec![0usize];
        let gens: Vec<usize> = generators.iter().copied().filter(|&g| g != 0).collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &s in &gens {
                let y = self.mul(s, x);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        self.subgroup_from_parts(mask, generators.to_vec())
    }

    /// Subgroup generated by permutations, which must all lie in the group.
    pub fn subgroup_from_perms(&self, generators: &[Permutation]) -> Result<Subgroup> {
        let mut idx = Vec::with_capacity(generators.len());
        for g in generators {
            idx.push(self.index_of(g).ok_or(Error::NotSubgroup)?);
        }
        Ok(self.subgroup(&idx))
    }

    /// Subgroup with the given membership mask, which must be closed. A
    /// generating set is picked greedily in index order.
    pub fn subgroup_from_mask(&self, mask: Vec<bool>) -> Subgroup {
        let mut gens = Vec::new();
        let mut span = alloc::vec![false; self.order()];
        span[0] = true;
        let mut current = alloc::vec![0usize];
        for x in 0..self.order() {
            if mask[x] && !span[x] {
                gens.push(x);
                let sub = self.subgroup(&gens);
                for &m in &sub.members {
                    span[m] = true;
                }
                current = sub.members;
            }
        }
        debug_assert_eq!(current.len(), mask.iter().filter(|&&b| b).count());
        self.subgroup_from_parts(mask, gens)
    }

    fn subgroup_from_parts(&self, mask: Vec<bool>, generators: Vec<usize>) -> Subgroup {
        let members: Vec<usize> = (0..self.order()).filter(|&i| mask[i]).collect();
        let elements: Vec<Permutation> = members.iter().map(|&m| self.elements[m].clone()).collect();
        let gen_perms = generators.iter().map(|&g| self.elements[g].clone()).collect();
        let group = FiniteGroup::from_closed(self.degree, gen_perms, elements);
        assert_eq!(
            self.order() % members.len(),
            0,
            "Lagrange violated: |H| does not divide |G|"
        );
        Subgroup {
            parent_id: self.id,
            parent_order: self.order(),
            members,
            mask,
            generators,
            group,
        }
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_parts(alloc::vec![true; self.order()], self.generator_indices.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = alloc::vec![false; self.order()];
        mask[0] = true;
        self.subgroup_from_parts(mask, Vec::new())
    }

    /// `g H g^-1`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Result<Subgroup> {
        self.check(h)?;
        let gens: Vec<usize> = h.generators.iter().map(|&x| self.conjugate_by(g, x)).collect();
        let mut mask = alloc::vec![false; self.order()];
        for &m in &h.members {
            mask[self.conjugate_by(g, m)] = true;
        }
        Ok(self.subgroup_from_parts(mask, gens))
    }

    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        self.check(h)?;
        Ok(self.nontrivial_generator_indices().iter().all(|&g| {
            h.generators
                .iter()
                .all(|&x| h.contains(self.conjugate_by(g, x)))
        }))
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        let mask = (0..self.order()).map(|i| a.mask[i] && b.mask[i]).collect();
        Ok(self.subgroup_from_mask(mask))
    }

    /// Left coset table of `h`: representatives `g_1 = e, .., g_n` (each the
    /// smallest element index of its coset) and, for every `g` and `i`, the
    /// pair `(g(i), h_{g,i})` with `g g_i = g_{g(i)} h_{g,i}`.
    pub fn cosets(&self, h: &Subgroup) -> Result<CosetTable> {
        self.check(h)?;
        let order = self.order();
        let mut coset_of = alloc::vec![u32::MAX; order];
        let mut reps = Vec::new();
        for x in 0..order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in &h.members {
                coset_of[self.mul(x, m)] = c;
            }
        }
        let n = reps.len();
        let rep_inverses: Vec<usize> = reps.iter().map(|&r| self.inv(r)).collect();
        let mut action = Vec::with_capacity(order * n);
        let mut cocycle = Vec::with_capacity(order * n);
        for g in 0..order {
            for &gi in &reps {
                let x = self.mul(g, gi);
                let j = coset_of[x] as usize;
                action.push(j as u32);
                cocycle.push(self.mul(rep_inverses[j], x) as u32);
            }
        }
        Ok(CosetTable {
            reps,
            coset_of,
            action,
            cocycle,
        })
    }

    /// Double cosets `H1 x H2`, each with its smallest element as
    /// representative, in increasing representative order.
    pub fn double_cosets(&self, h1: &Subgroup, h2: &Subgroup) -> Result<Vec<DoubleCoset>> {
        self.check(h1)?;
        self.check(h2)?;
        let order = self.order();
        let mut seen = alloc::vec![false; order];
        let mut out = Vec::new();
        for x in 0..order {
            if seen[x] {
                continue;
            }
            let mut size = 0;
            for &a in &h1.members {
                let ax = self.mul(a, x);
                for &b in &h2.members {
                    let y = self.mul(ax, b);
                    if !seen[y] {
                        seen[y] = true;
                        size += 1;
                    }
                }
            }
            out.push(DoubleCoset {
                representative: x,
                size,
            });
        }
        Ok(out)
    }

    /// Largest normal subgroup of `G` contained in `h`, computed as the kernel
    /// of the action on left cosets and cross-checked against the
    /// intersection of all conjugates.
    pub fn normal_core(&self, h: &Subgroup) -> Result<Subgroup> {
        let table = self.cosets(h)?;
        let n = table.index();
        let kernel_mask: Vec<bool> = (0..self.order())
            .map(|g| (0..n).all(|i| table.act(g, i) == i))
            .collect();
        let mut conj_mask = h.mask.clone();
        for &gi in &table.reps {
            let ginv = self.inv(gi);
            for x in 0..self.order() {
                if conj_mask[x] && !h.mask[self.conjugate_by(ginv, x)] {
                    conj_mask[x] = false;
                }
            }
        }
        if kernel_mask != conj_mask {
            return Err(Error::CrossCheck(
                "normal core: coset-action kernel differs from intersection of conjugates".into(),
            ));
        }
        let core = self.subgroup_from_mask(kernel_mask);
        let core_index = self.order() / core.order();
        if !index_within_factorial(core_index, n) {
            return Err(Error::CrossCheck(alloc::format!(
                "normal core index {core_index} exceeds {n}!"
            )));
        }
        Ok(core)
    }

    /// Returns some `g` with `g H1 g^-1 = H2`, scanning `g` in index order.
    pub fn are_conjugate_subgroups(&self, h1: &Subgroup, h2: &Subgroup) -> Result<Option<usize>> {
        self.check(h1)?;
        self.check(h2)?;
        if h1.order() != h2.order() {
            return Ok(None);
        }
        Ok((0..self.order()).find(|&g| {
            h1.generators
                .iter()
                .all(|&x| h2.contains(self.conjugate_by(g, x)))
        }))
    }

    /// Normal closure of a set of elements.
    pub fn normal_closure(&self, elements: &[usize]) -> Subgroup {
        let gens = self.nontrivial_generator_indices();
        let mut current = self.subgroup(elements);
        loop {
            let mut extra: Vec<usize> = Vec::new();
            for &g in &gens {
                for &x in &current.generators {
                    let y = self.conjugate_by(g, x);
                    if !current.contains(y) && !extra.contains(&y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            let mut all = current.generators.clone();
            all.extend(extra);
            current = self.subgroup(&all);
        }
    }

    /// Derived subgroup: normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.nontrivial_generator_indices();
        let mut commutators = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                if c != 0 {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure(&commutators)
    }
}

impl FiniteGroup {
    /// Every subgroup of index at most `max_index`, found by enumerating
    /// transitive actions on `1..=max_index` points with canonically numbered
    /// points (one action per subgroup, the subgroup being the stabilizer of
    /// point 0). Fails with `TooLarge` after `node_budget` search nodes.
    pub fn low_index_subgroups(&self, max_index: usize, node_budget: usize) -> Result<Vec<Subgroup>> {
        let gens = self.nontrivial_generator_indices();
        let mut order_list = Vec::with_capacity(self.order());
        let mut seen = alloc::vec![false; self.order()];
        seen[0] = true;
        order_list.push(0);
        let mut head = 0;
        while head < order_list.len() {
            for &s in &gens {
                let y = self.mul(s, order_list[head]);
                if !seen[y] {
                    seen[y] = true;
                    order_list.push(y);
                }
            }
            head += 1;
        }
        let mut search = LowIndex {
            group: self,
            gens,
            order_list,
            max: max_index.max(1),
            point_of: alloc::vec![UNSET; self.order()],
            action: Vec::new(),
            image_used: Vec::new(),
            used: 1,
            trail: Vec::new(),
            found: Vec::new(),
            nodes: 0,
            budget: node_budget,
        };
        let slots = search.gens.len() * search.max;
        search.action = alloc::vec![UNSET; slots];
        search.image_used = alloc::vec![false; slots];
        search.point_of[0] = 0;
        search.run(0)?;
        Ok(search
            .found
            .into_iter()
            .map(|mask| self.subgroup_from_mask(mask))
            .collect())
    }
}

const UNSET: u32 = u32::MAX;

enum Undo {
    Point(usize),
    Action(usize),
    Used(usize),
}

struct LowIndex<'a> {
    group: &'a FiniteGroup,
    gens: Vec<usize>,
    order_list: Vec<usize>,
    max: usize,
    point_of: Vec<u32>,
    /// `action[s * max + p]`: image of point `p` under generator `s`.
    action: Vec<u32>,
    image_used: Vec<bool>,
    used: usize,
    trail: Vec<Undo>,
    found: Vec<Vec<bool>>,
    nodes: usize,
    budget: usize,
}

impl LowIndex<'_> {
    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail entry") {
                Undo::Point(x) => self.point_of[x] = UNSET,
                Undo::Action(slot) => {
                    let q = self.action[slot] as usize;
                    let s = slot / self.max;
                    self.image_used[s * self.max + q] = false;
                    self.action[slot] = UNSET;
                }
                Undo::Used(old) => self.used = old,
            }
        }
    }

    fn set_action(&mut self, s: usize, p: usize, q: usize) {
        let slot = s * self.max + p;
        self.action[slot] = q as u32;
        self.image_used[s * self.max + q] = true;
        self.trail.push(Undo::Action(slot));
    }

    fn set_point(&mut self, x: usize, q: usize) {
        self.point_of[x] = q as u32;
        self.trail.push(Undo::Point(x));
    }

    fn run(&mut self, mut pair: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::TooLarge(alloc::format!(
                "low-index search exceeded {} nodes",
                self.budget
            )));
        }
        let mark = self.trail.len();
        let ng = self.gens.len();
        let total = self.order_list.len() * ng;
        while pair < total {
            let x = self.order_list[pair / ng];
            let s = pair % ng;
            let y = self.group.mul(self.gens[s], x);
            let p = self.point_of[x] as usize;
            let slot = s * self.max + p;
            let image = self.action[slot];
            if image != UNSET {
                if self.point_of[y] == UNSET {
                    self.set_point(y, image as usize);
                } else if self.point_of[y] != image {
                    self.undo_to(mark);
                    return Ok(());
                }
            } else if self.point_of[y] != UNSET {
                let q = self.point_of[y] as usize;
                if self.image_used[s * self.max + q] {
                    self.undo_to(mark);
                    return Ok(());
                }
                self.set_action(s, p, q);
            } else {
                let limit = if self.used < self.max { self.used + 1 } else { self.used };
                for q in 0..limit {
                    if q < self.used && self.image_used[s * self.max + q] {
                        continue;
                    }
                    let inner = self.trail.len();
                    if q == self.used {
                        self.trail.push(Undo::Used(self.used));
                        self.used += 1;
                    }
                    self.set_action(s, p, q);
                    self.set_point(y, q);
                    let result = self.run(pair + 1);
                    self.undo_to(inner);
                    result?;
                }
                self.undo_to(mark);
                return Ok(());
            }
            pair += 1;
        }
        self.found.push(self.point_of.iter().map(|&q| q == 0).collect());
        self.undo_to(mark);
        Ok(())
    }
}

fn index_within_factorial(index: usize, n: usize) -> bool {
    let mut f: usize = 1;
    for k in 2..=n {
        f = match f.checked_mul(k) {
            Some(v) => v,
            None => return true,
        };
        if f >= index {
            return true;
        }
    }
    f >= index
}

/// A subgroup of an enumerated group, closed at construction.
///
/// Carries its own [`FiniteGroup`] whose element `i` is parent element
/// `members()[i]`; members are sorted by parent index.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_id: u64,
    parent_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Vec<usize>,
    group: FiniteGroup,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.order()
    }

    pub fn parent_id(&self) -> u64 {
        self.parent_id
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, parent_index: usize) -> bool {
        self.mask[parent_index]
    }

    /// Parent indices of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The subgroup as a standalone group.
    pub fn as_group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Position of a parent element inside [`Self::as_group`].
    pub fn local_index(&self, parent_index: usize) -> Option<usize> {
        self.members.binary_search(&parent_index).ok()
    }

    pub fn parent_index(&self, local: usize) -> usize {
        self.members[local]
    }

    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.parent_id == other.parent_id && self.members == other.members
    }
}

#[derive(Clone, Debug)]
pub struct CosetTable {
    /// Coset representatives `g_1 = e, .., g_n` as parent element indices.
    pub reps: Vec<usize>,
    /// Coset number of every element.
    pub coset_of: Vec<u32>,
    action: Vec<u32>,
    cocycle: Vec<u32>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// `g(i)`: the coset `g g_i H`.
    #[inline]
    pub fn act(&self, g: usize, i: usize) -> usize {
        self.action[g * self.reps.len() + i] as usize
    }

    /// `h_{g,i} = g_{g(i)}^-1 g g_i`, an element of `H`.
    #[inline]
    pub fn cocycle(&self, g: usize, i: usize) -> usize {
        self.cocycle[g * self.reps.len() + i] as usize
    }

    /// Permutation of the cosets induced by `g`.
    pub fn permutation(&self, g: usize) -> Permutation {
        let n = self.reps.len();
        Permutation::from_images(self.action[g * n..(g + 1) * n].to_vec())
            .expect("coset action is a bijection")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(3, &[p(3, "(0 1)"), p(3, "(0 1 2)")]).unwrap()
    }

    #[test]
    fn low_index_subgroup_counts() {
        let s4 = FiniteGroup::generate(4, &[p(4, "(0 1)"), p(4, "(0 1 2 3)")]).unwrap();
        // S4, A4, three D8 and four S3.
        let subs = s4.low_index_subgroups(4, 1 << 20).unwrap();
        assert_eq!(subs.len(), 9);
        assert!(subs.iter().all(|h| h.index() <= 4));
        // Every subgroup of S3 has index at most 6.
        assert_eq!(s3().low_index_subgroups(6, 1 << 20).unwrap().len(), 6);
        let trivial = FiniteGroup::generate(2, &[]).unwrap();
        assert_eq!(trivial.low_index_subgroups(3, 10).unwrap().len(), 1);
    }

    #[test]
    fn enumerates_catalog_examples() {
        let s6 = FiniteGroup::generate(6, &[p(6, "(0 1)"), p(6, "(0 1 2 3 4 5)")]).unwrap();
        assert_eq!(s6.order(), 720);
        assert_eq!(s6.class_count(), 11);
        let trivial = FiniteGroup::generate(3, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        let v4 = FiniteGroup::generate(4, &[p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
    }

    #[test]
    fn enumeration_errors() {
        let err = FiniteGroup::generate_capped(6, &[p(6, "(0 1)"), p(6, "(0 1 2 3 4 5)")], 100);
        assert_eq!(err.unwrap_err(), Error::CapExceeded { cap: 100 });
        let err = FiniteGroup::generate(3, &[p(3, "(0 1)"), p(4, "(0 1)")]);
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn identity_first_and_classes_partition() {
        let g = s3();
        assert!(g.element(0).is_identity());
        assert_eq!(g.classes()[0], alloc::vec![0]);
        let total: usize = g.classes().iter().map(Vec::len).sum();
        assert_eq!(total, g.order());
        assert_eq!(g.class_count(), 3);
    }

    #[test]
    fn s3_cosets_of_transposition() {
        let g = s3();
        let h = g.subgroup_from_perms(&[p(3, "(0 1)")]).unwrap();
        let t = g.cosets(&h).unwrap();
        assert_eq!(t.index(), 3);
        assert_eq!(t.reps[0], 0);
        let c = g.index_of(&p(3, "(0 1 2)")).unwrap();
        let perm = t.permutation(c);
        assert_eq!(perm.cycle_type(), alloc::vec![3]);
        for x in 0..g.order() {
            for i in 0..3 {
                let lhs = g.mul(x, t.reps[i]);
                let rhs = g.mul(t.reps[t.act(x, i)], t.cocycle(x, i));
                assert_eq!(lhs, rhs);
                assert!(h.contains(t.cocycle(x, i)));
            }
        }
        let whole = g.whole();
        let t = g.cosets(&whole).unwrap();
        assert_eq!(t.reps, alloc::vec![0]);
    }

    #[test]
    fn double_coset_examples() {
        let v4 = FiniteGroup::generate(4, &[p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")]).unwrap();
        let a = v4.subgroup_from_perms(&[p(4, "(0 1)(2 3)")]).unwrap();
        let b = v4.subgroup_from_perms(&[p(4, "(0 2)(1 3)")]).unwrap();
        let dc = v4.double_cosets(&a, &b).unwrap();
        assert_eq!(dc.len(), 1);
        assert_eq!(dc[0].size, 4);

        let g = s3();
        let h = g.subgroup_from_perms(&[p(3, "(0 1)")]).unwrap();
        let mut sizes: Vec<usize> = g.double_cosets(&h, &h).unwrap().iter().map(|d| d.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, alloc::vec![2, 4]);

        let e = g.trivial_subgroup();
        let dc = g.double_cosets(&e, &e).unwrap();
        assert_eq!(dc.len(), 6);
        assert!(dc.iter().all(|d| d.size == 1));
        let dc = g.double_cosets(&h, &e).unwrap();
        assert_eq!(dc.len(), 3);
        assert!(dc.iter().all(|d| d.size == 2));
    }

    #[test]
    fn normal_cores() {
        let g = s3();
        let h = g.subgroup_from_perms(&[p(3, "(0 1)")]).unwrap();
        assert_eq!(g.normal_core(&h).unwrap().order(), 1);
        let a3 = g.subgroup_from_perms(&[p(3, "(0 1 2)")]).unwrap();
        assert!(g.normal_core(&a3).unwrap().same_members(&a3));
        let s4 = FiniteGroup::generate(4, &[p(4, "(0 1)"), p(4, "(0 1 2 3)")]).unwrap();
        let a4 = s4
            .subgroup_from_perms(&[p(4, "(0 1 2)"), p(4, "(1 2 3)")])
            .unwrap();
        assert_eq!(a4.order(), 12);
        assert!(s4.normal_core(&a4).unwrap().same_members(&a4));
    }

    #[test]
    fn conjugacy_of_subgroups() {
        let g = s3();
        let a = g.subgroup_from_perms(&[p(3, "(0 1)")]).unwrap();
        let b = g.subgroup_from_perms(&[p(3, "(0 2)")]).unwrap();
        let c = g.are_conjugate_subgroups(&a, &b).unwrap().unwrap();
        assert!(g.conjugate_subgroup(&a, c).unwrap().same_members(&b));
        assert_eq!(g.are_conjugate_subgroups(&a, &a).unwrap(), Some(0));

        let t = catalog::gassmann();
        assert_eq!(t.group.are_conjugate_subgroups(&t.h1, &t.h2).unwrap(), None);
    }

    #[test]
    fn foreign_subgroup_is_rejected() {
        let g = s3();
        let other = s3();
        let h = other.trivial_subgroup();
        assert_eq!(g.cosets(&h).unwrap_err(), Error::NotSubgroup);
        assert!(g.index_of(&p(3, "(0 1)")).is_some());
        let s4 = FiniteGroup::generate(4, &[p(4, "(0 1)")]).unwrap();
        assert_eq!(
            s4.subgroup_from_perms(&[p(4, "(1 2)")]).unwrap_err(),
            Error::NotSubgroup
        );
    }

    #[test]
    fn derived_subgroup_of_s4_is_a4() {
        let s4 = FiniteGroup::generate(4, &[p(4, "(0 1)"), p(4, "(0 1 2 3)")]).unwrap();
        assert_eq!(s4.derived_subgroup().order(), 12);
    }
}
