//! The discrete spectral bench: exact kernels and floating-point spectra of
//! twisted Laplacians on voltage-graph covers.

use rayon::prelude::*;
use serde::Serialize;
use sunada_core::character::{character_inner, ClassFunction, LinearCharacter};
use sunada_core::gassmann::weak_conjugacy;
use sunada_core::graph::{
    build_wreath_cover, expected_kernel, graph_homology_module, kernel_multiplicity, schreier_pair, schreier_voltage_graph,
    twisted_laplacian, verify_solo_bench, wreath_solo_comparison, TwistedOperator, VoltageGraph,
};
use sunada_core::homwide::{condition_star, Search};
use sunada_core::monomial::MonomialRep;
use sunada_core::wreath::choose_ell;
use sunada_core::{Error as CoreError, FiniteGroup, Subgroup};

use crate::error::Result;
use crate::random;
use crate::spectrum::{spectrum, trace_check, Spectrum, TraceCheck};

/// Exact kernel of one twisted operator against `<rho, 1>`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelCase {
    pub group_order: usize,
    pub representation: String,
    pub vertices: usize,
    pub size: usize,
    pub kernel: usize,
    /// `<Res_K rho, 1>` for the holonomy group `K`.
    pub expected: u64,
    pub cover_connected: bool,
    /// `<rho, 1>` over the whole group.
    pub trivial_multiplicity: u64,
    pub prime: u64,
    pub pass: bool,
}

pub fn kernel_case(x: &VoltageGraph, g: &FiniteGroup, rho: &MonomialRep, label: &str, cap: usize) -> Result<KernelCase> {
    let op = twisted_laplacian(x, g, rho, cap)?;
    let report = kernel_multiplicity(&op)?;
    let expected = expected_kernel(x, g, rho)?;
    let cover_connected = x.cover_is_connected(g, &g.trivial_subgroup())?;
    let trivial_multiplicity = character_inner(g, &rho.character(g)?, &ClassFunction::trivial(g))?;
    let pass = report.dimension as u64 == expected && (!cover_connected || expected == trivial_multiplicity);
    Ok(KernelCase {
        group_order: g.order(),
        representation: label.to_owned(),
        vertices: x.vertex_count(),
        size: op.size(),
        kernel: report.dimension,
        expected,
        cover_connected,
        trivial_multiplicity,
        prime: report.prime,
        pass,
    })
}

fn instance_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `count` random (group, base graph, monomial representation) instances
/// with operator size at most `max_size`, each seeded from `seed` and its
/// index so the result does not depend on scheduling.
pub fn random_kernel_cases(seed: u64, count: usize, max_size: usize) -> Result<Vec<KernelCase>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::rng(instance_seed(seed, i));
            let g = random::group(&mut rng, 6, 120);
            let x = random::voltage_graph(&mut rng, &g, 4)?;
            let max_dim = (max_size / x.vertex_count()).min(128);
            let (rho, label) = random::monomial_rep(&mut rng, &g, max_dim)?;
            kernel_case(&x, &g, &rho, &label, max_size)
        })
        .collect()
}

/// Two operators compared exactly (entries, kernels, traces) and by
/// spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub size: usize,
    pub exactly_equal: bool,
    pub kernels: [usize; 2],
    pub exact_traces_equal: bool,
    pub max_deviation: Option<f64>,
    pub trace_checks: [TraceCheck; 2],
    pub pass: bool,
}

fn compare(name: String, a: &TwistedOperator, b: &TwistedOperator, exact: bool, tol: f64) -> Result<IdentityCheck> {
    let (sa, sb) = (spectrum(a)?, spectrum(b)?);
    compare_with(name, a, b, &sa, &sb, exact, tol)
}

fn compare_with(
    name: String,
    a: &TwistedOperator,
    b: &TwistedOperator,
    sa: &Spectrum,
    sb: &Spectrum,
    exact: bool,
    tol: f64,
) -> Result<IdentityCheck> {
    let exactly_equal = a.exactly_equal(b)?;
    let kernels = [kernel_multiplicity(a)?.dimension, kernel_multiplicity(b)?.dimension];
    let exact_traces_equal = a.trace()? == b.trace()? && a.trace_of_square()? == b.trace_of_square()?;
    let max_deviation = sa.max_deviation(sb);
    let trace_checks = [trace_check(a, sa, tol)?, trace_check(b, sb, tol)?];
    let pass = (!exact || exactly_equal)
        && kernels[0] == kernels[1]
        && exact_traces_equal
        && max_deviation.is_some_and(|d| d <= tol)
        && trace_checks.iter().all(|t| t.pass);
    Ok(IdentityCheck {
        name,
        size: a.size(),
        exactly_equal,
        kernels,
        exact_traces_equal,
        max_deviation,
        trace_checks,
        pass,
    })
}

/// `Delta_{Ind rho}` on the base against `Delta_rho` on the intermediate
/// cover `H \ (G-cover)`.
pub fn snt_check(x: &VoltageGraph, g: &FiniteGroup, h: &Subgroup, rho: &MonomialRep, tol: f64, cap: usize) -> Result<IdentityCheck> {
    let down = twisted_laplacian(x, g, &MonomialRep::induced(g, h, rho)?, cap)?;
    let graph = schreier_voltage_graph(x, g, h)?;
    let up = twisted_laplacian(&graph, h.as_group(), rho, cap)?;
    compare(format!("induction from |H| = {}", h.order()), &down, &up, true, tol)
}

/// `Delta_reg` against the ordinary Laplacian of the `G`-cover.
pub fn regular_check(x: &VoltageGraph, g: &FiniteGroup, tol: f64, cap: usize) -> Result<IdentityCheck> {
    let reg = twisted_laplacian(x, g, &MonomialRep::regular(g)?, cap)?;
    let cover = sunada_core::graph::cayley_cover(x, g)?.laplacian(cap)?;
    compare("regular representation".into(), &reg, &cover, true, tol)
}

/// `Sp(rho1 + rho2) = Sp(rho1) + Sp(rho2)` as multisets.
pub fn direct_sum_check(
    x: &VoltageGraph,
    g: &FiniteGroup,
    rho1: &MonomialRep,
    rho2: &MonomialRep,
    tol: f64,
    cap: usize,
) -> Result<IdentityCheck> {
    let sum = twisted_laplacian(x, g, &rho1.direct_sum(rho2)?, cap)?;
    let parts = [twisted_laplacian(x, g, rho1, cap)?, twisted_laplacian(x, g, rho2, cap)?];
    let joined = spectrum(&parts[0])?.union(&spectrum(&parts[1])?);
    let s = spectrum(&sum)?;
    let max_deviation = s.max_deviation(&joined);
    let kernels = [
        kernel_multiplicity(&sum)?.dimension,
        kernel_multiplicity(&parts[0])?.dimension + kernel_multiplicity(&parts[1])?.dimension,
    ];
    let exact_traces_equal = sum.trace()? == parts[0].trace()?.try_add(&parts[1].trace()?)?
        && sum.trace_of_square()? == parts[0].trace_of_square()?.try_add(&parts[1].trace_of_square()?)?;
    let trace_checks = [trace_check(&sum, &s, tol)?, trace_check(&sum, &joined, tol)?];
    let pass = kernels[0] == kernels[1]
        && exact_traces_equal
        && max_deviation.is_some_and(|d| d <= tol)
        && trace_checks.iter().all(|t| t.pass);
    Ok(IdentityCheck {
        name: "direct sum".into(),
        size: sum.size(),
        exactly_equal: false,
        kernels,
        exact_traces_equal,
        max_deviation,
        trace_checks,
        pass,
    })
}

/// The spectral identities on random connected-cover instances: induction
/// (on a random subgroup and character), the regular representation, and
/// direct sums.
pub fn random_identity_checks(seed: u64, count: usize, tol: f64, cap: usize) -> Result<Vec<IdentityCheck>> {
    let checks: Vec<Vec<IdentityCheck>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::rng(instance_seed(seed ^ 0x5eed, i));
            let g = random::group(&mut rng, 5, 60);
            let x = random::generating_bouquet(&mut rng, &g, i % 2)?;
            let h = random::subgroup(&mut rng, &g);
            let chi = random::character(&mut rng, h.as_group())?;
            let rho = MonomialRep::from_linear(h.as_group(), &chi)?;
            let (r1, _) = random::monomial_rep(&mut rng, &g, 24)?;
            let (r2, _) = random::monomial_rep(&mut rng, &g, 24)?;
            Ok(vec![
                snt_check(&x, &g, &h, &rho, tol, cap)?,
                regular_check(&x, &g, tol, cap)?,
                direct_sum_check(&x, &g, &r1, &r2, tol, cap)?,
            ])
        })
        .collect::<Result<_>>()?;
    Ok(checks.into_iter().flatten().collect())
}

/// Schreier covers of a pair of subgroups: exact traces, spectra and the
/// group-level certificate.
#[derive(Clone, Debug, Serialize)]
pub struct SunadaReport {
    pub vertices: [usize; 2],
    pub connected: [bool; 2],
    pub weakly_conjugate: bool,
    pub conjugate: bool,
    pub exact_traces: [String; 2],
    pub exact_traces_of_squares: [String; 2],
    pub exact_traces_equal: bool,
    pub kernels: [usize; 2],
    pub max_deviation: Option<f64>,
    pub isospectral: bool,
    pub trace_checks: [TraceCheck; 2],
    /// Closed-walk profiles differ, so the covers are not isomorphic.
    pub walk_profiles_differ: bool,
    /// Eigenvalues of the first cover, rounded to 12 decimals.
    pub spectrum: Vec<f64>,
    pub pass: bool,
}

pub fn sunada_bench(x: &VoltageGraph, g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup, tol: f64, cap: usize) -> Result<SunadaReport> {
    let pair = schreier_pair(x, g, h1, h2, cap)?;
    let weak = weak_conjugacy(g, h1, h2)?;
    let [l1, l2] = &pair.laplacians;
    let (s1, s2) = (spectrum(l1)?, spectrum(l2)?);
    let max_deviation = s1.max_deviation(&s2);
    let exact_traces_equal = pair.traces[0] == pair.traces[1] && pair.traces_of_squares[0] == pair.traces_of_squares[1];
    let trace_checks = [trace_check(l1, &s1, tol)?, trace_check(l2, &s2, tol)?];
    let isospectral = max_deviation.is_some_and(|d| d <= tol) && exact_traces_equal;
    let kernels = [kernel_multiplicity(l1)?.dimension, kernel_multiplicity(l2)?.dimension];
    let pass = trace_checks.iter().all(|t| t.pass)
        && (!weak.weakly_conjugate || (isospectral && kernels[0] == kernels[1]))
        && weak.conjugate == pair.conjugate
        && (!pair.walk_profiles_differ || !pair.conjugate);
    Ok(SunadaReport {
        vertices: [pair.covers[0].vertices, pair.covers[1].vertices],
        connected: pair.connected,
        weakly_conjugate: weak.weakly_conjugate,
        conjugate: pair.conjugate,
        exact_traces: pair.traces.clone().map(|t| t.to_string()),
        exact_traces_of_squares: pair.traces_of_squares.clone().map(|t| t.to_string()),
        exact_traces_equal,
        kernels,
        max_deviation,
        isospectral,
        trace_checks,
        walk_profiles_differ: pair.walk_profiles_differ,
        spectrum: s1.rounded(),
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotReport {
    pub i: usize,
    pub j: usize,
    pub size: usize,
    pub kernel: usize,
    pub mackey: u64,
}

/// The four operators `chi_i-bar ⊗ Res_{H_i} Ind_{H_j} chi_j` for one pair
/// of characters.
#[derive(Clone, Debug, Serialize)]
pub struct SoloReport {
    pub slots: Vec<SlotReport>,
    pub kernels_agree: bool,
    pub induced_equal: bool,
    /// `Sp(11) = Sp(21)` and `Sp(12) = Sp(22)` within tolerance.
    pub spectra_agree: bool,
    pub pass: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn solo_bench(
    x: &VoltageGraph,
    g: &FiniteGroup,
    h1: &Subgroup,
    chi1: &LinearCharacter,
    h2: &Subgroup,
    chi2: &LinearCharacter,
    tol: f64,
    cap: usize,
) -> Result<SoloReport> {
    let bench = verify_solo_bench(x, g, h1, chi1, h2, chi2, cap)?;
    let spectra: Vec<Spectrum> = bench.slots.iter().map(|s| spectrum(&s.operator)).collect::<Result<_>>()?;
    let spectra_agree = spectra[0].matches(&spectra[1], tol) && spectra[2].matches(&spectra[3], tol);
    let pass = bench.kernels_agree == bench.induced_equal && (!bench.induced_equal || spectra_agree);
    Ok(SoloReport {
        slots: bench
            .slots
            .iter()
            .map(|s| SlotReport {
                i: s.i,
                j: s.j,
                size: s.operator.size(),
                kernel: s.kernel.dimension,
                mackey: s.mackey,
            })
            .collect(),
        kernels_agree: bench.kernels_agree,
        induced_equal: bench.induced_equal,
        spectra_agree,
        pass,
    })
}

/// Random `(G, H1, H2, chi1, chi2)` with `|G| <= max_order` on generating
/// bouquets; the solo criterion must agree with induced characters.
pub fn random_solo_cases(seed: u64, count: usize, max_order: usize, tol: f64, cap: usize) -> Result<Vec<SoloReport>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::rng(instance_seed(seed ^ 0x5010, i));
            loop {
                let g = random::group(&mut rng, 5, max_order);
                let x = random::generating_bouquet(&mut rng, &g, 0)?;
                let (h1, h2) = random::subgroup_pair(&mut rng, &g)?;
                if h1.index() * h2.index() > cap {
                    continue;
                }
                let chi1 = random::character(&mut rng, h1.as_group())?;
                let chi2 = random::character(&mut rng, h2.as_group())?;
                return solo_bench(&x, &g, &h1, &chi1, &h2, &chi2, tol, cap);
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub kernels: [usize; 4],
    pub mackey: [u64; 4],
    pub spectral_witness: bool,
    pub group_witness: bool,
}

/// Realization of the wreath cover and the spectral solo comparison on it.
#[derive(Clone, Debug, Serialize)]
pub struct WreathReport {
    pub ell: u64,
    pub n: usize,
    pub homology_dimension: usize,
    pub witness: Vec<u64>,
    pub wreath_order: usize,
    pub cover_vertices: usize,
    pub cover_edges: usize,
    pub connected: bool,
    pub deck_free: bool,
    pub quotient_is_g_cover: bool,
    pub phi_matches: bool,
    pub monodromy_matches: bool,
    pub candidates: Vec<CandidateReport>,
    pub group_verdict: bool,
    pub spectral_verdict: bool,
    /// For the first spectral witness, `Sp(11) = Sp(21)` and
    /// `Sp(12) = Sp(22)`.
    pub witness_spectra_agree: Option<bool>,
    pub pass: bool,
}

pub fn wreath_bench(
    x: &VoltageGraph,
    g: &FiniteGroup,
    h1: &Subgroup,
    h2: &Subgroup,
    ell: Option<u64>,
    budget: usize,
    tol: f64,
    cap: usize,
) -> Result<WreathReport> {
    let ell = ell.unwrap_or_else(|| choose_ell(g.order() as u64));
    let hom = graph_homology_module(x, g, ell)?;
    let witness = match condition_star(g, h1, &hom.module, budget)? {
        Search::Found(v) => v,
        Search::Absent(c) => {
            return Err(CoreError::NotAWitness(format!("condition (*) fails: {c:?}")).into());
        }
        Search::Unknown { candidates } => {
            return Err(CoreError::NotAWitness(format!("no witness among {candidates} candidates")).into());
        }
    };
    let cover = build_wreath_cover(x, g, h1, &hom, &witness)?;
    let cmp = wreath_solo_comparison(x, g, h1, h2, &cover, cap)?;
    let witness_spectra_agree = cmp
        .witness_slots
        .as_ref()
        .map(|slots| -> Result<bool> {
            let s: Vec<Spectrum> = slots.iter().map(|s| spectrum(&s.operator)).collect::<Result<_>>()?;
            Ok(s[0].matches(&s[1], tol) && s[2].matches(&s[3], tol))
        })
        .transpose()?;
    let candidates: Vec<CandidateReport> = cmp
        .candidates
        .iter()
        .map(|c| CandidateReport {
            kernels: c.kernels,
            mackey: c.mackey,
            spectral_witness: c.spectral_witness,
            group_witness: c.group_witness,
        })
        .collect();
    let pass = cover.all_checks_pass()
        && cmp.group_verdict == cmp.spectral_verdict
        && candidates.iter().all(|c| c.spectral_witness == c.group_witness)
        && witness_spectra_agree != Some(false);
    Ok(WreathReport {
        ell,
        n: cover.n,
        homology_dimension: hom.module.dim(),
        witness,
        wreath_order: cover.wreath.order(),
        cover_vertices: cover.cover.vertices,
        cover_edges: cover.cover.edges.len(),
        connected: cover.connected,
        deck_free: cover.deck_free,
        quotient_is_g_cover: cover.quotient_is_g_cover,
        phi_matches: cover.phi_matches,
        monodromy_matches: cover.monodromy_matches,
        candidates,
        group_verdict: cmp.group_verdict,
        spectral_verdict: cmp.spectral_verdict,
        witness_spectra_agree,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DEFAULT_TOLERANCE;
    use sunada_core::catalog;
    use sunada_core::graph::DEFAULT_OPERATOR_CAP;

    #[test]
    fn random_kernels_small_batch() {
        let cases = random_kernel_cases(3, 12, 256).unwrap();
        assert_eq!(cases.len(), 12);
        assert!(cases.iter().all(|c| c.pass && c.size <= 256), "{cases:?}");
        let again = random_kernel_cases(3, 12, 256).unwrap();
        assert_eq!(
            cases.iter().map(|c| (c.size, c.kernel)).collect::<Vec<_>>(),
            again.iter().map(|c| (c.size, c.kernel)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn identities_hold() {
        let checks = random_identity_checks(11, 4, DEFAULT_TOLERANCE, 1024).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
    }

    #[test]
    fn conjugate_pair_is_isospectral() {
        let t = catalog::s3_transpositions();
        let x = VoltageGraph::bouquet(&t.group, t.group.generator_indices()).unwrap();
        let r = sunada_bench(&x, &t.group, &t.h1, &t.h2, DEFAULT_TOLERANCE, DEFAULT_OPERATOR_CAP).unwrap();
        assert!(r.pass && r.isospectral && r.conjugate && !r.walk_profiles_differ);
        let t1 = LinearCharacter::trivial(t.h1.as_group());
        let t2 = LinearCharacter::trivial(t.h2.as_group());
        let s = solo_bench(&x, &t.group, &t.h1, &t1, &t.h2, &t2, DEFAULT_TOLERANCE, 1000).unwrap();
        assert!(s.pass && s.spectra_agree && s.kernels_agree);
    }

    #[test]
    fn random_solo_agrees() {
        let cases = random_solo_cases(5, 6, 24, DEFAULT_TOLERANCE, 400).unwrap();
        assert!(cases.iter().all(|c| c.pass));
    }
}
