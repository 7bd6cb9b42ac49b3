//! Built-in groups and subgroup pairs.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;

/// A group with two subgroups of equal index.
#[derive(Clone, Debug)]
pub struct Triple {
    pub name: String,
    pub group: FiniteGroup,
    pub h1: Subgroup,
    pub h2: Subgroup,
}

fn cycles(degree: usize, text: &str) -> Permutation {
    Permutation::parse_cycles(degree, text).expect("built-in permutation")
}

fn from_cycles(name: &str, degree: usize, gens: &[&str], h1: &[&str], h2: &[&str]) -> Triple {
    let perms = |list: &[&str]| list.iter().map(|s| cycles(degree, s)).collect::<Vec<_>>();
    let group = FiniteGroup::generate(degree, &perms(gens)).expect("built-in group");
    let h1 = group.subgroup_from_perms(&perms(h1)).expect("built-in subgroup");
    let h2 = group.subgroup_from_perms(&perms(h2)).expect("built-in subgroup");
    Triple {
        name: name.into(),
        group,
        h1,
        h2,
    }
}

/// `S_6` with two Klein four-groups that meet every class equally.
pub fn gassmann() -> Triple {
    from_cycles(
        "Gassmann",
        6,
        &["(0 1)", "(0 1 2 3 4 5)"],
        &["(0 1)(2 3)", "(0 2)(1 3)"],
        &["(0 1)(2 3)", "(0 1)(4 5)"],
    )
}

fn affine_z8(a: usize, b: usize) -> Permutation {
    Permutation::from_images((0..8).map(|x| ((a * x + b) % 8) as u32).collect())
        .expect("unit multiplier")
}

/// The affine group `x -> ax + b` of `Z/8`, order 32, with the multiplier
/// group and its twist by translation by 4 on the non-trivial classes mod 4.
pub fn gerst() -> Triple {
    let group = FiniteGroup::generate(8, &[affine_z8(1, 1), affine_z8(3, 0), affine_z8(5, 0)])
        .expect("built-in group");
    let h1 = group
        .subgroup_from_perms(&[affine_z8(3, 0), affine_z8(5, 0)])
        .expect("built-in subgroup");
    let h2 = group
        .subgroup_from_perms(&[affine_z8(3, 4), affine_z8(5, 4)])
        .expect("built-in subgroup");
    Triple {
        name: "Gerst".into(),
        group,
        h1,
        h2,
    }
}

/// `GL(3, 2)` acting on the seven nonzero vectors of `F_2^3` (vector with
/// bits `x1 + 2 x2 + 4 x3` is point `v - 1`), with the stabilizer of `e1`
/// and the matrices whose first row is `(1, 0, 0)`.
pub fn brooks_tse() -> Triple {
    let matrix_perm = |m: [[u8; 3]; 3]| {
        let images = (1..8u8)
            .map(|v| {
                let x = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
                let mut w = 0u8;
                for (i, row) in m.iter().enumerate() {
                    let bit = (row[0] * x[0] + row[1] * x[1] + row[2] * x[2]) & 1;
                    w |= bit << i;
                }
                (w - 1) as u32
            })
            .collect();
        Permutation::from_images(images).expect("invertible matrix")
    };
    let gens = [
        matrix_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        matrix_perm([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
        matrix_perm([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        matrix_perm([[1, 0, 0], [0, 1, 0], [0, 1, 1]]),
    ];
    let group = FiniteGroup::generate(7, &gens).expect("built-in group");
    // Column j of the matrix is the image of e_j, i.e. of point 2^j - 1.
    let column = |p: &Permutation, j: usize| p.apply((1 << j) - 1) as u32 + 1;
    let first_column_e1 = |p: &Permutation| column(p, 0) == 1;
    let first_row_e1 =
        |p: &Permutation| column(p, 0) & 1 == 1 && column(p, 1) & 1 == 0 && column(p, 2) & 1 == 0;
    let mask1 = group.elements().iter().map(first_column_e1).collect();
    let mask2 = group.elements().iter().map(first_row_e1).collect();
    let h1 = group.subgroup_from_mask(mask1);
    let h2 = group.subgroup_from_mask(mask2);
    Triple {
        name: "Brooks-Tse".into(),
        group,
        h1,
        h2,
    }
}

/// `A x| H` with `A = Z/p^2 x Z/p` and `H = Z/p x Z/p`, realized by its left
/// regular action on `p^5` points.
///
/// The generators of `H` act by `(1,0) -> (1,1), (0,1) -> (p,1)` and
/// `(1,0) -> (p+1,0), (0,1) -> (0,1)`. `H_1 = H` and
/// `H_2 = <((0,0),(1,0)), ((p,0),(0,1))>`.
pub fn guralnick(p: u64) -> Result<Triple> {
    if p < 3 || p % 2 == 0 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::Unsupported(alloc::format!("p = {p} is not an odd prime")));
    }
    let size = p.checked_pow(5).filter(|&s| s <= 3125).ok_or_else(|| {
        Error::TooLarge(alloc::format!("Guralnick group for p = {p}"))
    })?;
    let (p2, p) = (p * p, p);
    // Element ((x, y), (s, t)) has index ((x * p + y) * p + s) * p + t.
    let encode = |x: u64, y: u64, s: u64, t: u64| (((x * p + y) * p + s) * p + t) as u32;
    let decode = |i: u64| (i / (p * p * p), (i / (p * p)) % p, (i / p) % p, i % p);
    let act = |s: u64, t: u64, (mut x, mut y): (u64, u64)| {
        for _ in 0..t {
            x = (x * (p + 1)) % p2;
        }
        for _ in 0..s {
            (x, y) = ((x + p * y) % p2, (x + y) % p);
        }
        (x, y)
    };
    let mul = |a: (u64, u64, u64, u64), b: (u64, u64, u64, u64)| {
        let (bx, by) = act(a.2, a.3, (b.0, b.1));
        ((a.0 + bx) % p2, (a.1 + by) % p, (a.2 + b.2) % p, (a.3 + b.3) % p)
    };
    let left = |g: (u64, u64, u64, u64)| {
        let images = (0..size)
            .map(|i| {
                let (x, y, s, t) = mul(g, decode(i));
                encode(x, y, s, t)
            })
            .collect();
        Permutation::from_images(images).expect("left translation is a bijection")
    };
    let degree = size as usize;
    let gens = [
        left((1, 0, 0, 0)),
        left((0, 1, 0, 0)),
        left((0, 0, 1, 0)),
        left((0, 0, 0, 1)),
    ];
    let group = FiniteGroup::generate(degree, &gens)?;
    if group.order() as u64 != size {
        return Err(Error::CrossCheck("Guralnick group has the wrong order".into()));
    }
    let h1 = group.subgroup_from_perms(&[left((0, 0, 1, 0)), left((0, 0, 0, 1))])?;
    let h2 = group.subgroup_from_perms(&[left((0, 0, 1, 0)), left((p, 0, 0, 1))])?;
    Ok(Triple {
        name: alloc::format!("Guralnick p={p}"),
        group,
        h1,
        h2,
    })
}

/// `A_4 x Z/2 x Z/4` on `4 + 2 + 4` points, with two subgroups isomorphic
/// to `Z/2 x Z/4` of index 12: the graphs of two homomorphisms
/// `Z/2 x Z/4 -> V_4` that agree on the `Z/2` factor and differ on `Z/4`.
pub fn barden_kang() -> Triple {
    from_cycles(
        "Barden-Kang",
        10,
        &["(0 1 2)", "(1 2 3)", "(4 5)", "(6 7 8 9)"],
        &["(0 2)(1 3)(4 5)", "(0 3)(1 2)(6 7 8 9)"],
        &["(0 2)(1 3)(4 5)", "(0 1)(2 3)(6 7 8 9)"],
    )
}

/// `S_4` with a cyclic and a Klein subgroup of order 4 (different cycle types).
pub fn s4_cyclic_klein() -> Triple {
    from_cycles(
        "S4 cyclic vs Klein",
        4,
        &["(0 1)", "(0 1 2 3)"],
        &["(0 1 2 3)"],
        &["(0 1)(2 3)", "(0 2)(1 3)"],
    )
}

/// `S_3` with two conjugate transposition subgroups.
pub fn s3_transpositions() -> Triple {
    from_cycles(
        "S3 transpositions",
        3,
        &["(0 1)", "(0 1 2)"],
        &["(0 1)"],
        &["(0 2)"],
    )
}

/// The Klein four-group with two distinct subgroups of order 2.
pub fn klein_pair() -> Triple {
    from_cycles(
        "Klein four",
        4,
        &["(0 1)(2 3)", "(0 2)(1 3)"],
        &["(0 1)(2 3)"],
        &["(0 2)(1 3)"],
    )
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "gassmann",
    "gerst",
    "brooks-tse",
    "barden-kang",
    "guralnick3",
    "s4-cyclic-klein",
    "s3-transpositions",
    "klein",
];

pub fn by_name(name: &str) -> Result<Triple> {
    Ok(match name {
        "gassmann" => gassmann(),
        "gerst" => gerst(),
        "brooks-tse" => brooks_tse(),
        "barden-kang" => barden_kang(),
        "guralnick3" => guralnick(3)?,
        "s4-cyclic-klein" => s4_cyclic_klein(),
        "s3-transpositions" => s3_transpositions(),
        "klein" => klein_pair(),
        other => return Err(Error::Parse(alloc::format!("unknown example {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_indices() {
        let cases = [
            (gassmann(), 720, 4),
            (gerst(), 32, 4),
            (brooks_tse(), 168, 24),
            (barden_kang(), 96, 8),
            (guralnick(3).unwrap(), 243, 9),
            (s4_cyclic_klein(), 24, 4),
            (s3_transpositions(), 6, 2),
            (klein_pair(), 4, 2),
        ];
        for (t, g, h) in cases {
            assert_eq!(t.group.order(), g, "{}", t.name);
            assert_eq!(t.h1.order(), h, "{}", t.name);
            assert_eq!(t.h2.order(), h, "{}", t.name);
        }
    }

    #[test]
    fn guralnick_rejects_bad_primes() {
        assert!(guralnick(2).is_err());
        assert!(guralnick(9).is_err());
        assert!(matches!(guralnick(17), Err(Error::TooLarge(_))));
    }
}
