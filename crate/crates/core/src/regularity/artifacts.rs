use std::sync::{Arc, OnceLock};

use super::{RegularityError, Window};
use crate::corealg::{AlgebraPresentation, Side};
use crate::gbasis::{load_or_compute, GbCache, GbLimits, GradedAlgebra, GroebnerBasis};
use crate::resolution::{
    ext_into_algebra, resolve_presented, resolve_source, trivial_module, BettiTable, ExtTable, PresentedSource,
    Resolution,
};
use crate::series::{hilbert_rational, hilbert_truncated, HilbertSeries, RationalSeries};

#[derive(Clone, Debug, Default)]
pub struct ArtifactOptions {
    pub window: Window,
    pub limits: GbLimits,
    pub cache: Option<GbCache>,
}

/// Everything computed once per algebra: Gröbner basis, graded tables, the resolution of the
/// trivial left module, Ext(k, A), and the Hilbert series.
#[derive(Debug)]
pub struct AlgebraArtifacts {
    presentation: Arc<AlgebraPresentation>,
    gb: Arc<GroebnerBasis>,
    ga: Arc<GradedAlgebra>,
    options: ArtifactOptions,
    resolution: Resolution,
    ext: ExtTable,
    hilbert: HilbertSeries,
    opposite: OnceLock<Arc<GradedAlgebra>>,
}

impl AlgebraArtifacts {
    pub fn compute(a: Arc<AlgebraPresentation>, options: &ArtifactOptions) -> Result<AlgebraArtifacts, RegularityError> {
        let w = options.window;
        let d_gb = w.d_gb.max(w.d_max.max(0) as u32);
        let gb = Arc::new(load_or_compute(&a, d_gb, &options.limits, options.cache.as_ref())?);
        let ga = Arc::new(GradedAlgebra::new(gb.clone(), w.d_max.max(0) as u32)?);
        let resolution = resolve_presented(&ga, &trivial_module(&a), w.i_max, w.d_max)?;
        let ext = ext_into_algebra(&resolution)?;
        let hilbert = if gb.is_complete() {
            HilbertSeries::Rational(hilbert_rational(&gb)?)
        } else {
            HilbertSeries::Truncated(hilbert_truncated(&gb, d_gb)?)
        };
        Ok(AlgebraArtifacts {
            presentation: a,
            gb,
            ga,
            options: options.clone(),
            resolution,
            ext,
            hilbert,
            opposite: OnceLock::new(),
        })
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.presentation
    }

    pub fn label(&self) -> &str {
        self.presentation.label()
    }

    pub fn gb(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    pub fn ga(&self) -> &Arc<GradedAlgebra> {
        &self.ga
    }

    pub fn window(&self) -> Window {
        self.options.window
    }

    pub fn options(&self) -> &ArtifactOptions {
        &self.options
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    pub fn ext(&self) -> &ExtTable {
        &self.ext
    }

    pub fn hilbert(&self) -> &HilbertSeries {
        &self.hilbert
    }

    pub fn rational_hilbert(&self) -> Option<&RationalSeries> {
        match &self.hilbert {
            HilbertSeries::Rational(r) => Some(r),
            HilbertSeries::Truncated(_) => None,
        }
    }

    /// Betti table of the trivial left module.
    pub fn betti(&self) -> BettiTable {
        self.resolution.betti_table()
    }

    /// Tables of the opposite algebra through the same degree, built on first use.
    pub fn opposite_ga(&self) -> Result<Arc<GradedAlgebra>, RegularityError> {
        if let Some(g) = self.opposite.get() {
            return Ok(g.clone());
        }
        let op = Arc::new(self.presentation.opposite());
        let w = self.options.window;
        let gb = Arc::new(load_or_compute(&op, self.gb.truncation(), &self.options.limits, self.options.cache.as_ref())?);
        let ga = Arc::new(GradedAlgebra::new(gb, w.d_max.max(0) as u32)?);
        Ok(self.opposite.get_or_init(|| ga).clone())
    }

    /// Betti table of the trivial right module, resolved over the opposite algebra.
    pub fn right_betti(&self) -> Result<BettiTable, RegularityError> {
        let op_ga = self.opposite_ga()?;
        let op = op_ga.gb().presentation().clone();
        let w = self.options.window;
        let src = PresentedSource::new(op_ga.clone(), &trivial_module(&op), w.d_max)?;
        let label = format!("k over {} (right)", self.label());
        let r = resolve_source(&op_ga, &src, w.i_max, w.d_max, label, Side::Right)?;
        Ok(r.betti_table())
    }
}
