//! Floating-point spectra of twisted operators, backed by exact traces.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::Serialize;
use sunada_core::graph::TwistedOperator;
use sunada_core::Cyclotomic;

use crate::error::{Error, Result};

/// Default relative tolerance for comparing eigenvalues.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const MAX_SWEEPS: usize = 10_000;

/// Eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

fn real_part(z: &Cyclotomic) -> f64 {
    z.to_complex_with(|k, m| {
        let (s, c) = (std::f64::consts::TAU * k as f64 / m as f64).sin_cos();
        (c, s)
    })
    .0
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Self { eigenvalues }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Runs of eigenvalues within `tol` (relative) of their neighbour.
    pub fn clusters(&self, tol: f64) -> Vec<Cluster> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.eigenvalues {
            match out.last_mut() {
                Some((sum, count, last)) if close(*last, x, tol) => {
                    *sum += x;
                    *count += 1;
                    *last = x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter()
            .map(|(sum, multiplicity, _)| Cluster { value: sum / multiplicity as f64, multiplicity })
            .collect()
    }

    /// Number of eigenvalues within `tol` of zero.
    pub fn zero_multiplicity(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|x| x.abs() <= tol).count()
    }

    /// Largest relative deviation between matched eigenvalues, or `None`
    /// if the sizes differ.
    pub fn max_deviation(&self, other: &Self) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
                .fold(0.0, f64::max)
        })
    }

    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        self.max_deviation(other).is_some_and(|d| d <= tol)
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.eigenvalues.iter().chain(&other.eigenvalues).copied().collect())
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    /// Eigenvalues rounded to 12 significant decimals, for reports.
    pub fn rounded(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&x| round12(x)).collect()
    }
}

pub fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn root_values(m: u64) -> Vec<Complex<f64>> {
    (0..m)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / m as f64;
            Complex::new(t.cos(), t.sin())
        })
        .collect()
}

/// The operator as a dense complex matrix.
pub fn float_shadow(op: &TwistedOperator) -> DMatrix<Complex<f64>> {
    let roots = root_values(op.modulus());
    let mut a = DMatrix::zeros(op.size(), op.size());
    for (r, c, counts) in op.entries() {
        a[(r, c)] = counts
            .iter()
            .zip(&roots)
            .filter(|(&k, _)| k != 0)
            .map(|(&k, z)| z * k as f64)
            .sum();
    }
    a
}

/// Eigenvalues of the Hermitian operator.
pub fn spectrum(op: &TwistedOperator) -> Result<Spectrum> {
    let n = op.size();
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let eigen = if op.modulus() <= 2 {
        let mut a = DMatrix::<f64>::zeros(n, n);
        for (r, c, counts) in op.entries() {
            a[(r, c)] = counts.iter().enumerate().map(|(k, &x)| if k == 0 { x as f64 } else { -x as f64 }).sum();
        }
        SymmetricEigen::try_new(a, f64::EPSILON, MAX_SWEEPS).map(|e| e.eigenvalues.as_slice().to_vec())
    } else {
        SymmetricEigen::try_new(float_shadow(op), f64::EPSILON, MAX_SWEEPS).map(|e| e.eigenvalues.as_slice().to_vec())
    };
    eigen.map(Spectrum::new).ok_or(Error::ConvergenceFailure)
}

/// `sum lambda` and `sum lambda^2` against the exact `tr A`, `tr A^2`.
#[derive(Clone, Debug, Serialize)]
pub struct TraceCheck {
    pub trace: String,
    pub trace_of_square: String,
    pub eigenvalue_sum: f64,
    pub eigenvalue_square_sum: f64,
    pub pass: bool,
}

pub fn trace_check(op: &TwistedOperator, spectrum: &Spectrum, tol: f64) -> Result<TraceCheck> {
    let t = op.trace()?;
    let t2 = op.trace_of_square()?;
    let (tf, t2f) = (real_part(&t), real_part(&t2));
    let (s, s2) = (spectrum.sum(), spectrum.sum_of_squares());
    // Summation error grows with the size; the identities themselves are exact.
    let slack = tol * (op.size().max(1) as f64);
    Ok(TraceCheck {
        trace: t.to_string(),
        trace_of_square: t2.to_string(),
        eigenvalue_sum: s,
        eigenvalue_square_sum: s2,
        pass: close(s, tf, slack.max(tol)) && close(s2, t2f, slack.max(tol)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sunada_core::graph::{twisted_laplacian, Multigraph, VoltageEdge, VoltageGraph};
    use sunada_core::monomial::MonomialRep;
    use sunada_core::{FiniteGroup, Permutation};

    #[test]
    fn small_graphs() {
        let g = FiniteGroup::generate(1, &[]).unwrap();
        let point = VoltageGraph::new(&g, 1, vec![]).unwrap();
        let op = twisted_laplacian(&point, &g, &MonomialRep::trivial(&g), 10).unwrap();
        assert_eq!(spectrum(&op).unwrap().eigenvalues, vec![0.0]);
        let k2 = Multigraph { vertices: 2, edges: vec![(0, 1)] }.laplacian(10).unwrap();
        let s = spectrum(&k2).unwrap();
        assert!(s.matches(&Spectrum::new(vec![0.0, 2.0]), 1e-12));
        assert!(trace_check(&k2, &s, DEFAULT_TOLERANCE).unwrap().pass);
    }

    #[test]
    fn complex_operator_is_hermitian() {
        let z3 = FiniteGroup::generate(3, &[Permutation::parse_cycles(3, "(0 1 2)").unwrap()]).unwrap();
        let x = VoltageGraph::new(&z3, 1, vec![VoltageEdge { tail: 0, head: 0, voltage: 1 }]).unwrap();
        let reg = MonomialRep::regular(&z3).unwrap();
        let chi = sunada_core::character::linear_characters(&z3).unwrap();
        let total = chi.iter().fold(Spectrum::new(vec![]), |acc, c| {
            let rho = MonomialRep::from_linear(&z3, c).unwrap();
            let op = twisted_laplacian(&x, &z3, &rho, 10).unwrap();
            let a = float_shadow(&op);
            assert!((a.adjoint() - &a).norm() < 1e-12);
            acc.union(&spectrum(&op).unwrap())
        });
        let full = spectrum(&twisted_laplacian(&x, &z3, &reg, 10).unwrap()).unwrap();
        // The 3-cycle: 0, 3, 3.
        assert!(full.matches(&total, 1e-9));
        assert_eq!(full.clusters(1e-9).iter().map(|c| c.multiplicity).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(full.zero_multiplicity(1e-9), 1);
    }

    #[test]
    fn comparison_helpers() {
        let a = Spectrum::new(vec![2.0, 0.0]);
        assert_eq!(a.eigenvalues, vec![0.0, 2.0]);
        assert_eq!(a.max_deviation(&Spectrum::new(vec![0.0])), None);
        assert!(!a.matches(&Spectrum::new(vec![0.0, 2.1]), 1e-9));
        assert_eq!(round12(1.0 + 1e-14), 1.0);
        assert_eq!(round12(-1e-15), 0.0);
    }
}
