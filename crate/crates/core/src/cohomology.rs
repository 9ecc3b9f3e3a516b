//! Ext, Hochschild and Tate-Hochschild cohomology, Gorenstein and
//! Cohen-Macaulay tests, and the consolidated report on an algebra.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraRef;
use crate::complete::{complete_resolution, CompleteResolution};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;
use crate::module::{shared, CornerOrbits, FdModule};
use crate::resolution::{
    detect_periodicity, minimal_resolution_with, PeriodicityCertificate, ProjComplex, Resolution, SearchOptions,
};

/// Default bound on injective dimensions in the Gorenstein test.
pub const DEFAULT_GORENSTEIN_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohomologyKind {
    Ext,
    Hochschild,
    TateHochschild,
}

/// Dimensions `dims[i - lo]` of a cohomology theory in degrees `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub kind: CohomologyKind,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub field: FieldSpec,
    pub n_max: usize,
    pub p_max: usize,
    pub seed: u64,
}

impl CohomologyTable {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn get(&self, deg: i64) -> Option<usize> {
        usize::try_from(deg - self.lo).ok().and_then(|i| self.dims.get(i)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().enumerate().map(|(i, &d)| (self.lo + i as i64, d))
    }
}

/// Cohomology of `Hom_A(T, N)` in the given degrees.
///
/// Degree `i` needs `d_{i+1}` and `d_i`; when `bounded_below` is set the
/// complex is taken to vanish below its first term.
pub fn hom_cohomology<F: Field>(
    cx: &ProjComplex<F>,
    n: &FdModule<F>,
    degrees: RangeInclusive<i64>,
    bounded_below: bool,
    exec: Exec,
) -> Result<Vec<usize>> {
    let a = &cx.algebra;
    if !crate::algebra::same_algebra(a, n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo > hi {
        return Ok(Vec::new());
    }
    let first = if bounded_below && lo <= cx.lo { cx.lo } else { lo - 1 };
    if first < cx.lo || hi + 1 > cx.hi() || (bounded_below && lo < cx.lo) {
        return Err(Error::WindowTooSmall(format!(
            "degrees {lo}..{hi} need terms {}..{} but the complex spans {}..{}",
            first.min(lo - 1),
            hi + 1,
            cx.lo,
            cx.hi()
        )));
    }
    let corners = CornerOrbits::new(n);
    let cochain_dim =
        |deg: i64| -> usize { cx.term(deg).map_or(0, |t| t.summands.iter().map(|&k| corners.corner_dim(k)).sum()) };
    // rank of δ : C^{deg-1} -> C^deg induced by d_deg
    let diff_degrees: Vec<i64> = ((first + 1).max(cx.lo + 1)..=hi + 1).collect();
    let ranks = exec.map(&diff_degrees, |&deg| {
        let images = cx.generator_images(deg).expect("in window");
        let target = cx.term(deg - 1).expect("in window");
        if images.is_empty() || target.is_zero() {
            return 0;
        }
        corners.pullback_matrix(a, target, &images, n.dim()).rank()
    });
    let rank_of = |deg: i64| -> usize {
        match diff_degrees.iter().position(|&d| d == deg) {
            Some(i) => ranks[i],
            None => 0,
        }
    };
    Ok((lo..=hi).map(|i| cochain_dim(i) - rank_of(i + 1) - rank_of(i)).collect())
}

/// `P_0 <- ... <- P_upto` from a resolution, padded with zeros past a finite
/// projective dimension.
pub fn resolution_complex<F: Field>(res: &Resolution<F>, upto: usize) -> Result<ProjComplex<F>> {
    let a = res.algebra();
    let f = a.field();
    let mut terms = Vec::with_capacity(upto + 1);
    for k in 0..=upto {
        terms.push(res.term(k).ok_or_else(|| Error::WindowTooSmall(format!("resolution term {k} not computed")))?);
    }
    let diffs = (1..=upto)
        .map(|k| match res.differential(k) {
            Some(d) => d.clone(),
            None => Matrix::zeros(f, terms[k - 1].dim(a), terms[k].dim(a)),
        })
        .collect();
    Ok(ProjComplex { algebra: a.clone(), lo: 0, terms, diffs })
}

/// `dim Ext^i(M, N)` for `i = 0..=max_degree` from a resolution of `M`.
pub fn ext_dims_from<F: Field>(
    res: &Resolution<F>,
    n: &FdModule<F>,
    max_degree: usize,
    exec: Exec,
) -> Result<Vec<usize>> {
    let cx = resolution_complex(res, max_degree + 1)?;
    hom_cohomology(&cx, n, 0..=max_degree as i64, true, exec)
}

/// `dim Ext^i_A(M, N)` for `i = 0..=max_degree`.
pub fn ext_dims<F: Field>(m: &FdModule<F>, n: &FdModule<F>, max_degree: usize, exec: Exec) -> Result<Vec<usize>> {
    let res = minimal_resolution_with(m, max_degree + 1, exec);
    ext_dims_from(&res, n, max_degree, exec)
}

/// `dim HH^i(A)` for `i = 0..=max_degree`.
pub fn hh_dims<F: Field>(a: &AlgebraRef<F>, max_degree: usize, exec: Exec) -> Result<Vec<usize>> {
    let env = shared(a.enveloping());
    let m = FdModule::regular_bimodule(a, env)?;
    ext_dims(&m, &m, max_degree, exec)
}

/// `Ext^i_A(M, A) = 0` for `i = 1..=bound`.
pub fn cm_test<F: Field>(m: &FdModule<F>, bound: usize, exec: Exec) -> Result<bool> {
    if bound == 0 {
        return Ok(true);
    }
    let regular = FdModule::regular(m.algebra().clone());
    let dims = ext_dims(m, &regular, bound, exec)?;
    Ok(dims[1..].iter().all(|&d| d == 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "value")]
pub enum GorensteinStatus {
    Gorenstein(usize),
    NotGorensteinUpTo(usize),
}

/// Injective dimensions of `A` as a left and as a right module, each known
/// only up to `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub bound: usize,
    pub status: GorensteinStatus,
}

impl GorensteinReport {
    pub fn dimension(&self) -> Option<usize> {
        match self.status {
            GorensteinStatus::Gorenstein(d) => Some(d),
            GorensteinStatus::NotGorensteinUpTo(_) => None,
        }
    }
}

fn bounded_pd<F: Field>(m: &FdModule<F>, bound: usize, exec: Exec) -> Option<usize> {
    let res = minimal_resolution_with(m, bound, exec);
    res.projective_dimension.filter(|&d| d <= bound)
}

/// Computes `id(_A A)` and `id(A_A)` up to `bound` through projective
/// dimensions of the duals.
pub fn gorenstein_report<F: Field>(a: &AlgebraRef<F>, bound: usize, exec: Exec) -> Result<GorensteinReport> {
    let op = shared(a.opposite());
    let left = bounded_pd(&FdModule::regular(a.clone()).dual(op.clone())?, bound, exec);
    let right = bounded_pd(&FdModule::regular(op).dual(a.clone())?, bound, exec);
    let status = match (left, right) {
        (Some(l), Some(r)) if l == r => GorensteinStatus::Gorenstein(l),
        (Some(l), Some(r)) => {
            return Err(Error::Inconsistency(format!("left injective dimension {l} differs from right {r}")))
        }
        _ => GorensteinStatus::NotGorensteinUpTo(bound),
    };
    Ok(GorensteinReport { left, right, bound, status })
}

/// Vanishing range used to recognise Cohen-Macaulay modules over a
/// `d`-Gorenstein algebra.
pub fn cm_bound(d: usize) -> usize {
    d.max(8)
}

fn least_cm_shift(ext: &[usize], limit: usize, width: usize) -> Option<usize> {
    (0..=limit).find(|&r| (r + 1..=r + width).all(|i| ext.get(i) == Some(&0)))
}

/// Least `r` with `Ω^r(M)` Cohen-Macaulay, over an algebra of Gorenstein
/// dimension `d` (so `r <= d`).
pub fn gorenstein_dimension<F: Field>(m: &FdModule<F>, d: usize, exec: Exec) -> Result<usize> {
    let width = cm_bound(d);
    let regular = FdModule::regular(m.algebra().clone());
    let ext = ext_dims(m, &regular, d + width, exec)?;
    least_cm_shift(&ext, d, width)
        .ok_or_else(|| Error::Inconsistency(format!("no syzygy of index at most {d} is Cohen-Macaulay")))
}

/// Bounds and seeds shared by the analyses below.
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub search: SearchOptions,
    pub gorenstein_bound: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { search: SearchOptions::default(), gorenstein_bound: DEFAULT_GORENSTEIN_BOUND }
    }
}

/// `A` as an `A^e`-module with a minimal resolution and its periodicity certificate.
#[derive(Clone, Debug)]
pub struct BimoduleResolution<F: Field> {
    pub algebra: AlgebraRef<F>,
    pub enveloping: AlgebraRef<F>,
    pub module: FdModule<F>,
    pub resolution: Resolution<F>,
    pub certificate: Option<PeriodicityCertificate<F>>,
}

impl<F: Field> BimoduleResolution<F> {
    /// Resolves to length at least `min_length` and searches for a period.
    pub fn new(a: &AlgebraRef<F>, opts: &SearchOptions, min_length: usize) -> Result<Self> {
        let enveloping = shared(a.enveloping());
        let module = FdModule::regular_bimodule(a, enveloping.clone())?;
        let resolution = minimal_resolution_with(&module, opts.resolution_length().max(min_length), opts.exec);
        let certificate = detect_periodicity(&resolution, opts)?;
        Ok(BimoduleResolution { algebra: a.clone(), enveloping, module, resolution, certificate })
    }

    pub fn certificate(&self, opts: &SearchOptions) -> Result<&PeriodicityCertificate<F>> {
        self.certificate.as_ref().ok_or(Error::NoCertificate { n_max: opts.n_max, p_max: opts.p_max })
    }

    /// `dim HH^i` for `i = 0..=max_degree`.
    pub fn hh_dims(&self, max_degree: usize, exec: Exec) -> Result<Vec<usize>> {
        ext_dims_from(&self.resolution, &self.module, max_degree, exec)
    }

    /// The complete resolution over `lo-1..=hi+1` and the Tate-Hochschild
    /// dimensions in `lo..=hi`.
    pub fn tate(&self, lo: i64, hi: i64, opts: &SearchOptions) -> Result<(CompleteResolution<F>, Vec<usize>)> {
        let cert = self.certificate(opts)?;
        let t = complete_resolution(&self.resolution, cert, lo - 1, hi + 1)?;
        if t.is_zero() {
            return Ok((t, vec![0; (hi - lo + 1).max(0) as usize]));
        }
        let dims = hom_cohomology(&t.window, &self.module, lo..=hi, false, opts.exec)?;
        Ok((t, dims))
    }
}

fn table(kind: CohomologyKind, lo: i64, dims: Vec<usize>, field: FieldSpec, opts: &SearchOptions) -> CohomologyTable {
    CohomologyTable { kind, lo, dims, field, n_max: opts.n_max, p_max: opts.p_max, seed: opts.seed }
}

/// `dim HH^i(A)` for `i = 0..=max_degree` as a table.
pub fn hh_table<F: Field>(a: &AlgebraRef<F>, max_degree: usize, opts: &SearchOptions) -> Result<CohomologyTable> {
    let dims = hh_dims(a, max_degree, opts.exec)?;
    Ok(table(CohomologyKind::Hochschild, 0, dims, a.field().spec(), opts))
}

/// `dim HH^i_sg(A)` for `i = lo..=hi`.
pub fn tate_hh_dims<F: Field>(a: &AlgebraRef<F>, lo: i64, hi: i64, opts: &SearchOptions) -> Result<CohomologyTable> {
    let needed = usize::try_from(hi + 2).unwrap_or(0);
    let b = BimoduleResolution::new(a, opts, needed)?;
    let (_, dims) = b.tate(lo, hi, opts)?;
    Ok(table(CohomologyKind::TateHochschild, lo, dims, a.field().spec(), opts))
}

/// A yes/no check over a range of degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeCheck {
    pub from: i64,
    pub to: i64,
    pub holds: bool,
}

/// Soundness of the computed bimodule resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionChecks {
    pub length: usize,
    pub d_squared_zero: bool,
    pub minimal: bool,
    pub exact: bool,
}

impl ResolutionChecks {
    pub fn of<F: Field>(res: &Resolution<F>, exec: Exec) -> Self {
        ResolutionChecks {
            length: res.length(),
            d_squared_zero: res.d_squared_zero(),
            minimal: res.is_minimal(),
            exact: res.is_exact(exec),
        }
    }

    pub fn passes(&self) -> bool {
        self.d_squared_zero && self.minimal && self.exact
    }
}

/// `n >= d`, and whether `n = d` matches a simple `S` with `Ext^n(S, A) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCheck {
    pub n: usize,
    pub d: usize,
    pub holds: bool,
    /// `dim Ext^n_A(S_v, A)` for each vertex `v`.
    pub ext_at_n: Vec<usize>,
    pub witness_simple: Option<usize>,
    pub equality_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub gorenstein: GorensteinReport,
    pub n: usize,
    pub p: usize,
    /// The bimodule resolution is finite, so the complete resolution vanishes.
    pub finite_projective_dimension: bool,
    /// Projective dimension of `A` over `A^e`, which is the global dimension of `A`.
    pub global_dimension: Option<usize>,
    pub resolution: ResolutionChecks,
    pub hochschild: CohomologyTable,
    pub tate: CohomologyTable,
    /// `dim HH^i_sg = dim HH^{i+p}_sg` across the window.
    pub tate_periodic: RangeCheck,
    pub complete_resolution_exact: bool,
    pub totally_acyclic: Option<bool>,
    /// The comparison map `T -> P` below the splice, required to exist when `A` is Gorenstein.
    pub comparison_map: Option<bool>,
    pub lower_bound: Option<LowerBoundCheck>,
    pub gorenstein_dimension: Option<usize>,
    /// Injective dimension of `A^e`, when `A` is Gorenstein.
    pub enveloping_gorenstein: Option<usize>,
    /// Number of consecutive vanishing `Ext^i(-, A^e)` required of a Cohen-Macaulay module.
    pub cm_width: usize,
    /// `Ω^n(A)` is Cohen-Macaulay over `A^e`.
    pub periodic_syzygy_cm: Option<bool>,
    /// `HH^i = HH^i_sg` for `gdim < i` inside the window.
    pub stable_range: Option<RangeCheck>,
    /// Degree of the invertible periodicity element, the detected period.
    pub chi_degree: Option<usize>,
    /// The detected period is not certified as the least degree of an invertible element.
    pub chi_degree_minimality_open: bool,
    pub notes: Vec<String>,
}

/// Runs the full analysis of `A` over degrees `lo..=hi`.
pub fn main_theorem_report<F: Field>(
    a: &AlgebraRef<F>,
    lo: i64,
    hi: i64,
    opts: &AnalysisOptions,
) -> Result<MainTheoremReport> {
    if hi < lo || hi < 0 {
        return Err(Error::WindowTooSmall(format!("range {lo}..{hi} must contain a non-negative degree")));
    }
    let search = &opts.search;
    let exec = search.exec;
    let field = a.field().spec();
    let gorenstein = gorenstein_report(a, opts.gorenstein_bound, exec)?;
    let d = gorenstein.dimension();

    let env_d = match d {
        Some(_) => {
            gorenstein_report(&shared(a.enveloping()), opts.gorenstein_bound.max(2 * d.unwrap_or(0)), exec)?.dimension()
        }
        None => None,
    };
    let width = cm_bound(env_d.unwrap_or(0));
    let b = BimoduleResolution::new(a, search, (hi + 2) as usize)?;
    let resolution = ResolutionChecks::of(&b.resolution, exec);
    let cert = b.certificate(search)?;
    let (n, p) = (cert.n, cert.p);
    let mut notes = Vec::new();

    let hh = b.hh_dims(hi as usize, exec)?;
    let hochschild = table(CohomologyKind::Hochschild, 0, hh, field, search);
    let (t, tate_dims) = b.tate(lo, hi, search)?;
    let tate = table(CohomologyKind::TateHochschild, lo, tate_dims, field, search);
    let tate_periodic =
        RangeCheck { from: lo, to: hi, holds: (lo..=hi - p as i64).all(|i| tate.get(i) == tate.get(i + p as i64)) };
    let complete_resolution_exact = t.is_exact(exec);
    let totally_acyclic = match d {
        Some(_) if !t.is_zero() => {
            let regular = FdModule::regular(b.enveloping.clone());
            Some(hom_cohomology(&t.window, &regular, lo..=hi, false, exec)?.iter().all(|&x| x == 0))
        }
        Some(_) => Some(true),
        None => None,
    };
    let comparison_map = match (d, &t.theta) {
        (None, None) => {
            notes.push(
                "no comparison map from the complete resolution to the resolution exists below the splice".into(),
            );
            None
        }
        _ => Some(t.theta_is_chain_map(&b.resolution)),
    };

    let mut lower_bound = None;
    let mut gorenstein_dim = None;
    let mut periodic_syzygy_cm = None;
    let mut stable_range = None;
    match (d, env_d) {
        (Some(d), Some(de)) => {
            let regular = FdModule::regular(a.clone());
            let ext_at_n = (0..a.num_idempotents())
                .map(|v| {
                    let s = FdModule::simple(a.clone(), v)?;
                    Ok(ext_dims(&s, &regular, n, exec)?[n])
                })
                .collect::<Result<Vec<_>>>()?;
            let witness_simple = ext_at_n.iter().position(|&x| x != 0);
            lower_bound = Some(LowerBoundCheck {
                n,
                d,
                holds: n >= d,
                equality_matches: (n == d) == witness_simple.is_some(),
                ext_at_n,
                witness_simple,
            });

            let env_regular = FdModule::regular(b.enveloping.clone());
            let top = (de + width).max(n + width);
            let res = if b.resolution.length() > top || b.resolution.projective_dimension.is_some() {
                b.resolution.clone()
            } else {
                minimal_resolution_with(&b.module, top + 1, exec)
            };
            let ext = ext_dims_from(&res, &env_regular, top, exec)?;
            let r = least_cm_shift(&ext, de, width)
                .ok_or_else(|| Error::Inconsistency(format!("no syzygy of index at most {de} is Cohen-Macaulay")))?;
            gorenstein_dim = Some(r);
            periodic_syzygy_cm = Some((n + 1..=n + width).all(|i| ext[i] == 0));
            let from = (r as i64 + 1).max(lo).max(0);
            stable_range =
                Some(RangeCheck { from, to: hi, holds: (from..=hi).all(|i| hochschild.get(i) == tate.get(i)) });
        }
        _ => notes.push(format!(
            "injective dimension exceeds {} on at least one side; the main theorem does not apply",
            opts.gorenstein_bound
        )),
    }
    let finite = cert.is_trivial();
    if finite {
        notes.push("the bimodule resolution is finite, so Tate-Hochschild cohomology vanishes".into());
    }
    let chi_degree = (!finite).then_some(p);
    if chi_degree.is_some() {
        notes.push(
            "the period is the least detected one; minimality of the degree of the invertible element is not certified"
                .into(),
        );
    }
    Ok(MainTheoremReport {
        gorenstein,
        n,
        p,
        finite_projective_dimension: finite,
        global_dimension: b.resolution.projective_dimension,
        resolution,
        hochschild,
        tate,
        tate_periodic,
        complete_resolution_exact,
        totally_acyclic,
        comparison_map,
        lower_bound,
        gorenstein_dimension: gorenstein_dim,
        enveloping_gorenstein: env_d,
        cm_width: width,
        periodic_syzygy_cm,
        stable_range,
        chi_degree,
        chi_degree_minimality_open: chi_degree.is_some(),
        notes,
    })
}
