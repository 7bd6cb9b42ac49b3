//! Parallel evaluation of the isometry test's character loop.

use rayon::prelude::*;
use sunada_core::wreath::{run_isometry, IsometryOptions, IsometryVerdict, WreathContext};
use sunada_core::{FiniteGroup, Subgroup};

use crate::error::{Error, Result};

/// A pool with `jobs` threads, or rayon's default when `jobs` is `None`.
pub fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    builder.build().map_err(|e| Error::Usage(e.to_string()))
}

/// Same verdict as the sequential test. All candidates are evaluated in
/// parallel and collected in family order, so the first witness and the
/// comparison count do not depend on scheduling.
pub fn isometry_parallel(
    g: &FiniteGroup,
    h1: &Subgroup,
    h2: &Subgroup,
    options: IsometryOptions,
) -> Result<IsometryVerdict> {
    let ctx = WreathContext::new(g, h1, h2, options)?;
    Ok(run_isometry(&ctx, |ctx, xi, a11, family| {
        family.par_iter().map(|chi| ctx.evaluate(xi, a11, chi)).collect()
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sunada_core::catalog;
    use sunada_core::wreath::isometry_test;

    #[test]
    fn matches_sequential() {
        for t in [catalog::s3_transpositions(), catalog::s4_cyclic_klein(), catalog::klein_pair()] {
            let opts = IsometryOptions::default();
            let a = isometry_test(&t.group, &t.h1, &t.h2, opts).unwrap();
            let b = pool(Some(3)).unwrap().install(|| isometry_parallel(&t.group, &t.h1, &t.h2, opts)).unwrap();
            assert_eq!(a, b, "{}", t.name);
        }
    }
}
