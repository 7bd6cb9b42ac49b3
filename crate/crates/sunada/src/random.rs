//! Seeded random groups, subgroups, characters and voltage graphs.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sunada_core::character::{linear_characters, LinearCharacter};
use sunada_core::graph::{VoltageEdge, VoltageGraph};
use sunada_core::monomial::MonomialRep;
use sunada_core::{FiniteGroup, Permutation, Subgroup};

use crate::error::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn permutation(rng: &mut impl Rng, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for i in (1..degree).rev() {
        images.swap(i, rng.random_range(0..=i));
    }
    Permutation::from_images(images).expect("a shuffle is a bijection")
}

/// A group generated by one to three random permutations of degree
/// `3..=max_degree`, with `2 <= |G| <= max_order`.
pub fn group(rng: &mut impl Rng, max_degree: usize, max_order: usize) -> FiniteGroup {
    loop {
        let degree = rng.random_range(3..=max_degree.max(3));
        let count = rng.random_range(1..=3);
        let gens: Vec<Permutation> = (0..count).map(|_| permutation(rng, degree)).collect();
        if let Ok(g) = FiniteGroup::generate_capped(degree, &gens, max_order) {
            if g.order() >= 2 && g.order() <= max_order {
                return g;
            }
        }
    }
}

/// A subgroup generated by up to two random elements.
pub fn subgroup(rng: &mut impl Rng, g: &FiniteGroup) -> Subgroup {
    let count = rng.random_range(0..=2);
    let gens: Vec<usize> = (0..count).map(|_| rng.random_range(0..g.order())).collect();
    g.subgroup(&gens)
}

/// A pair of subgroups; half of the time the second is a random conjugate
/// of the first.
pub fn subgroup_pair(rng: &mut impl Rng, g: &FiniteGroup) -> Result<(Subgroup, Subgroup)> {
    let h1 = subgroup(rng, g);
    let h2 = if rng.random_bool(0.5) {
        g.conjugate_subgroup(&h1, rng.random_range(0..g.order()))?
    } else {
        subgroup(rng, g)
    };
    Ok((h1, h2))
}

pub fn character(rng: &mut impl Rng, h: &FiniteGroup) -> Result<LinearCharacter> {
    let all = linear_characters(h)?;
    Ok(all.choose(rng).expect("the trivial character exists").clone())
}

fn random_induced(rng: &mut impl Rng, g: &FiniteGroup, max_dim: usize) -> Result<(MonomialRep, String)> {
    loop {
        let h = subgroup(rng, g);
        if h.index() > max_dim {
            continue;
        }
        let chi = character(rng, h.as_group())?;
        let rho = MonomialRep::induced_linear(g, &h, &chi)?;
        return Ok((rho, format!("Ind(|H|={}, chi order {})", h.order(), chi.order())));
    }
}

/// `Ind_H^G chi` for random `H` and `chi`, sometimes summed with or
/// tensored by a second such representation, of dimension at most
/// `max_dim`.
pub fn monomial_rep(rng: &mut impl Rng, g: &FiniteGroup, max_dim: usize) -> Result<(MonomialRep, String)> {
    let (a, la) = random_induced(rng, g, max_dim)?;
    match rng.random_range(0..4) {
        0 => {
            let (b, lb) = random_induced(rng, g, max_dim)?;
            if a.dim() + b.dim() <= max_dim {
                return Ok((a.direct_sum(&b)?, format!("{la} + {lb}")));
            }
        }
        1 => {
            let (b, lb) = random_induced(rng, g, max_dim)?;
            if a.dim() * b.dim() <= max_dim {
                return Ok((a.tensor(&b)?, format!("{la} x {lb}")));
            }
        }
        _ => {}
    }
    Ok((a, la))
}

/// A connected base graph: a bouquet of `1..=3` loops, or a random
/// connected multigraph on up to `max_vertices` vertices, with random
/// voltages.
pub fn voltage_graph(rng: &mut impl Rng, g: &FiniteGroup, max_vertices: usize) -> Result<VoltageGraph> {
    let vertices = if rng.random_bool(0.5) { 1 } else { rng.random_range(1..=max_vertices.max(1)) };
    let mut edges = Vec::new();
    for v in 1..vertices {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..rng.random_range(1..=3) {
        edges.push((rng.random_range(0..vertices), rng.random_range(0..vertices)));
    }
    let edges = edges
        .into_iter()
        .map(|(tail, head)| VoltageEdge { tail, head, voltage: rng.random_range(0..g.order()) })
        .collect();
    Ok(VoltageGraph::new(g, vertices, edges)?)
}

/// A bouquet whose loops carry the group generators plus `extra` random
/// elements, so every cover is connected.
pub fn generating_bouquet(rng: &mut impl Rng, g: &FiniteGroup, extra: usize) -> Result<VoltageGraph> {
    let mut voltages = g.generator_indices().to_vec();
    voltages.extend((0..extra).map(|_| rng.random_range(0..g.order())));
    Ok(VoltageGraph::bouquet(g, &voltages)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_bounded() {
        let (mut a, mut b) = (rng(7), rng(7));
        for _ in 0..10 {
            let g = group(&mut a, 6, 120);
            assert!(g.order() <= 120 && g.order() >= 2);
            assert_eq!(g.order(), group(&mut b, 6, 120).order());
            let (rho, _) = monomial_rep(&mut a, &g, 16).unwrap();
            assert!(rho.dim() <= 16);
            let _ = monomial_rep(&mut b, &g, 16).unwrap();
            let x = voltage_graph(&mut a, &g, 4).unwrap();
            assert!(x.vertex_count() <= 4);
            let _ = voltage_graph(&mut b, &g, 4).unwrap();
        }
    }
}
