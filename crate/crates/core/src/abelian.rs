//! Abelianization of an enumerated group via Smith normal form of the
//! abelianized Cayley-graph relators.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// `H / [H, H]` written as `Z/d_1 x .. x Z/d_k` with `d_1 | d_2 | .. | d_k`
/// and every `d_i > 1`, together with the coordinates of each element.
#[derive(Clone, Debug)]
pub struct Abelianization {
    divisors: Vec<u64>,
    coords: Vec<u32>,
}

impl Abelianization {
    pub fn compute(h: &FiniteGroup) -> Result<Self> {
        let mut gens: Vec<usize> = h
            .generator_indices()
            .iter()
            .copied()
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let r = gens.len();
        let order = h.order();
        if r == 0 {
            return Ok(Self {
                divisors: Vec::new(),
                coords: Vec::new(),
            });
        }

        // Word vectors along a breadth-first spanning tree of the Cayley graph.
        let mut words: Vec<Option<Vec<i128>>> = alloc::vec![None; order];
        words[0] = Some(alloc::vec![0; r]);
        let mut queue = alloc::vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (j, &s) in gens.iter().enumerate() {
                let y = h.mul(s, x);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w[j] += 1;
                    words[y] = Some(w);
                    queue.push(y);
                }
            }
        }
        let words: Vec<Vec<i128>> = words.into_iter().map(|w| w.unwrap()).collect();

        let mut basis = Echelon::new(r);
        for x in 0..order {
            for (j, &s) in gens.iter().enumerate() {
                let y = h.mul(s, x);
                let mut rel = words[x].clone();
                rel[j] += 1;
                for (k, v) in rel.iter_mut().enumerate() {
                    *v -= words[y][k];
                }
                basis.insert(rel)?;
            }
        }
        let a = basis.into_square()?;
        let (diag, v) = smith(a)?;

        let mut divisors = Vec::new();
        let mut columns = Vec::new();
        for (i, &d) in diag.iter().enumerate() {
            if d > 1 {
                divisors.push(u64::try_from(d).map_err(|_| overflow())?);
                columns.push(i);
            }
        }
        let k = divisors.len();
        let mut coords = Vec::with_capacity(order * k);
        for w in &words {
            for (&c, &d) in columns.iter().zip(&divisors) {
                let mut s: i128 = 0;
                for (row, &wi) in w.iter().enumerate() {
                    s = s
                        .checked_add(wi.checked_mul(v[row][c]).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
                coords.push(s.rem_euclid(d as i128) as u32);
            }
        }
        let ab = Self { divisors, coords };
        ab.cross_check(h, &gens)?;
        Ok(ab)
    }

    fn cross_check(&self, h: &FiniteGroup, gens: &[usize]) -> Result<()> {
        let derived = h.derived_subgroup();
        if derived.order() * self.order() as usize != h.order() {
            return Err(Error::CrossCheck(alloc::format!(
                "abelianization order {} disagrees with |H|/|[H,H]| = {}",
                self.order(),
                h.order() / derived.order()
            )));
        }
        for x in 0..h.order() {
            for &s in gens {
                let y = h.mul(s, x);
                for i in 0..self.rank() {
                    let d = self.divisors[i];
                    let lhs = self.coordinate(y, i) as u64;
                    let rhs = (self.coordinate(s, i) as u64 + self.coordinate(x, i) as u64) % d;
                    if lhs != rhs {
                        return Err(Error::CrossCheck(
                            "abelianization coordinates are not a homomorphism".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Invariant factors `d_1 | .. | d_k`, all greater than one.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    /// Exponent of the abelianization (1 for perfect groups).
    pub fn exponent(&self) -> u64 {
        self.divisors.last().copied().unwrap_or(1)
    }

    /// Coordinate `i` of element `x` in `Z/d_i`.
    #[inline]
    pub fn coordinate(&self, x: usize, i: usize) -> u32 {
        self.coords[x * self.rank() + i]
    }
}

fn overflow() -> Error {
    Error::TooLarge("integer overflow in Smith normal form".into())
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn axpy(y: &mut [i128], a: i128, x: &[i128]) -> Result<()> {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = yi
            .checked_add(a.checked_mul(xi).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
    }
    Ok(())
}

/// Integer row-echelon basis kept in Hermite form while rows are inserted.
struct Echelon {
    cols: usize,
    /// Row with pivot in column `c`, if any.
    rows: Vec<Option<Vec<i128>>>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: alloc::vec![None; cols],
        }
    }

    fn insert(&mut self, mut v: Vec<i128>) -> Result<()> {
        for c in 0..self.cols {
            if v[c] == 0 {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[c] = Some(v);
                    return self.normalize();
                }
                Some(mut b) => {
                    let (g, x, y) = ext_gcd(b[c], v[c]);
                    let (bc, vc) = (b[c] / g, v[c] / g);
                    let mut nb: Vec<i128> = alloc::vec![0; self.cols];
                    axpy(&mut nb, x, &b)?;
                    axpy(&mut nb, y, &v)?;
                    let mut nv: Vec<i128> = alloc::vec![0; self.cols];
                    axpy(&mut nv, bc, &v)?;
                    axpy(&mut nv, -vc, &b)?;
                    b = nb;
                    v = nv;
                    debug_assert_eq!(v[c], 0);
                    self.rows[c] = Some(b);
                }
            }
        }
        self.normalize()
    }

    /// Reduces every entry right of a pivot modulo the pivot of its column,
    /// which keeps entries bounded.
    fn normalize(&mut self) -> Result<()> {
        for r in 0..self.cols {
            for c in r + 1..self.cols {
                self.reduce_entry(r, c)?;
            }
        }
        Ok(())
    }

    fn reduce_entry(&mut self, r: usize, c: usize) -> Result<()> {
        let Some(pivot_row) = self.rows[c].clone() else {
            return Ok(());
        };
        let Some(row) = self.rows[r].as_mut() else {
            return Ok(());
        };
        let q = row[c].div_euclid(pivot_row[c]);
        if q != 0 {
            axpy(row, -q, &pivot_row)?;
        }
        Ok(())
    }

    fn into_square(self) -> Result<Vec<Vec<i128>>> {
        self.rows
            .into_iter()
            .map(|r| {
                r.ok_or_else(|| {
                    Error::CrossCheck("relator lattice is not of full rank".into())
                })
            })
            .collect()
    }
}

/// Smith normal form of a nonsingular square matrix. Returns the diagonal and
/// the unimodular column transform `V` with `U A V = D`.
fn smith(mut a: Vec<Vec<i128>>) -> Result<(Vec<i128>, Vec<Vec<i128>>)> {
    let n = a.len();
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let swap_cols = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    let col_axpy = |m: &mut Vec<Vec<i128>>, dst: usize, q: i128, src: usize| -> Result<()> {
        for row in m.iter_mut() {
            row[dst] = row[dst]
                .checked_sub(q.checked_mul(row[src]).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        Ok(())
    };

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::CrossCheck("singular relator matrix".into()));
            };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / p;
                if q != 0 {
                    let src = a[t].clone();
                    axpy(&mut a[i], -q, &src)?;
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    col_axpy(&mut a, j, q, t)?;
                    col_axpy(&mut v, j, q, t)?;
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match offending {
                Some(i) => {
                    let src = a[i].clone();
                    axpy(&mut a[t], 1, &src)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            a[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(((0..n).map(|i| a[i][i]).collect(), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn symmetric_group_has_order_two_abelianization() {
        let s4 = FiniteGroup::generate(4, &[p(4, "(0 1)"), p(4, "(0 1 2 3)")]).unwrap();
        let ab = Abelianization::compute(&s4).unwrap();
        assert_eq!(ab.divisors(), &[2]);
    }

    #[test]
    fn abelian_groups_are_their_own_abelianization() {
        let g = FiniteGroup::generate(7, &[p(7, "(0 1)(2 3)"), p(7, "(4 5 6)"), p(7, "(0 2)(1 3)")])
            .unwrap();
        let ab = Abelianization::compute(&g).unwrap();
        assert_eq!(ab.order(), 12);
        assert_eq!(ab.divisors(), &[2, 6]);
        let c = FiniteGroup::generate(5, &[p(5, "(0 1 2 3 4)")]).unwrap();
        assert_eq!(Abelianization::compute(&c).unwrap().divisors(), &[5]);
        let t = FiniteGroup::generate(2, &[]).unwrap();
        assert_eq!(Abelianization::compute(&t).unwrap().order(), 1);
    }

    #[test]
    fn heisenberg_mod_three() {
        // Upper unitriangular 3x3 matrices over F_3 acting on the 27 vectors.
        let act = |m: [[u32; 3]; 3]| {
            let images = (0..27u32)
                .map(|x| {
                    let v = [x / 9, (x / 3) % 3, x % 3];
                    let w: Vec<u32> =
                        (0..3).map(|i| (0..3).map(|j| m[i][j] * v[j]).sum::<u32>() % 3).collect();
                    w[0] * 9 + w[1] * 3 + w[2]
                })
                .collect();
            Permutation::from_images(images).unwrap()
        };
        let x = act([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let y = act([[1, 0, 0], [0, 1, 1], [0, 0, 1]]);
        let g = FiniteGroup::generate(27, &[x, y]).unwrap();
        assert_eq!(g.order(), 27);
        let ab = Abelianization::compute(&g).unwrap();
        assert_eq!(ab.divisors(), &[3, 3]);
    }

    #[test]
    fn perfect_group() {
        let a5 = FiniteGroup::generate(5, &[p(5, "(0 1 2)"), p(5, "(0 1 2 3 4)")]).unwrap();
        assert_eq!(a5.order(), 60);
        let ab = Abelianization::compute(&a5).unwrap();
        assert_eq!(ab.order(), 1);
        assert_eq!(ab.exponent(), 1);
    }
}
