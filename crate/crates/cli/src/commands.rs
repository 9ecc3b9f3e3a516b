use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Result};
use serde_json::json;
use tate_syzygy::bardzell::{bardzell_multiplicities, bimodule_endpoint_pairs};
use tate_syzygy::cohomology::{gorenstein_report, hh_table, main_theorem_report, AnalysisOptions, MainTheoremReport};
use tate_syzygy::module::shared;
use tate_syzygy::resolution::minimal_resolution_with;
use tate_syzygy::tensor_check::{tensor_resolution_check, TensorCheckOptions};
use tate_syzygy::{Error, Exec, FdModule, Field, FieldSpec, SearchOptions};

use crate::input::{dispatch, AlgebraDump, Input, Job};
use crate::report::{
    AlgebraInfo, AnalysisReport, Check, GorensteinInfo, InputInfo, Periodicity, ResolveReport, Table,
    TensorCheckOutput, Term, SCHEMA,
};
use crate::CliError;

pub fn search_options(seed: u64, n_max: usize, p_max: usize, sequential: bool) -> SearchOptions {
    let exec = if sequential { Exec::Sequential } else { Exec::default() };
    SearchOptions { n_max, p_max, trials: None, seed, exec }
}

fn input_info(input: &Input, field: FieldSpec) -> InputInfo {
    InputInfo { name: input.name.clone(), digest: input.digest.clone(), field }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn timings(enabled: bool, start: Instant) -> Option<BTreeMap<String, u64>> {
    enabled.then(|| BTreeMap::from([("total".to_string(), elapsed_ms(start))]))
}

enum Body {
    Full(Box<MainTheoremReport>),
    /// No periodicity certificate within the bounds.
    Partial(GorensteinInfo, Table),
}

struct AnalyzeJob<'a> {
    input: &'a Input,
    lo: i64,
    hi: i64,
    opts: AnalysisOptions,
}

impl Job for AnalyzeJob<'_> {
    type Output = (AlgebraInfo, Body);

    fn run<F: Field>(self, field: &F) -> Result<Self::Output> {
        let a = shared(self.input.algebra(field)?);
        let info =
            AlgebraInfo { dim: a.dim(), idempotents: a.num_idempotents(), vertices: self.input.vertex_labels(&a) };
        match main_theorem_report(&a, self.lo, self.hi, &self.opts) {
            Ok(r) => Ok((info, Body::Full(Box::new(r)))),
            Err(Error::NoCertificate { .. }) => {
                let g = gorenstein_report(&a, self.opts.gorenstein_bound, self.opts.search.exec)?;
                let hh = hh_table(&a, self.hi.max(0) as usize, &self.opts.search)?;
                Ok((info, Body::Partial((&g).into(), (&hh).into())))
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// Gorenstein test, periodicity, HH and Tate-HH tables over `lo..=hi`, and the invariant checks.
pub fn analyze(
    input: &Input,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    opts: &AnalysisOptions,
    record_timings: bool,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    let (algebra, body) = dispatch(field, AnalyzeJob { input, lo, hi, opts: *opts })?;
    let search = &opts.search;
    let mut report = AnalysisReport {
        schema: SCHEMA.into(),
        input: input_info(input, field),
        algebra,
        gorenstein: GorensteinInfo {
            status: String::new(),
            d: None,
            left: None,
            right: None,
            bound: opts.gorenstein_bound,
        },
        periodicity: None,
        tables: Vec::new(),
        checks: Vec::new(),
        notes: Vec::new(),
        timings_ms: None,
    };
    match body {
        Body::Partial(g, hh) => {
            report.gorenstein = g;
            report.tables.push(hh);
            report.notes.push(format!(
                "no periodicity certificate with n <= {}, p <= {}; Tate-Hochschild cohomology not computed",
                search.n_max, search.p_max
            ));
        }
        Body::Full(r) => fill(&mut report, &r, lo, hi, search),
    }
    report.timings_ms = timings(record_timings, start);
    Ok(report)
}

fn fill(report: &mut AnalysisReport, r: &MainTheoremReport, lo: i64, hi: i64, search: &SearchOptions) {
    report.gorenstein = (&r.gorenstein).into();
    report.periodicity = Some(Periodicity {
        n: r.n,
        p: r.p,
        seed: search.seed,
        n_max: search.n_max,
        p_max: search.p_max,
        finite: r.finite_projective_dimension,
        global_dimension: r.global_dimension,
        gorenstein_dimension: r.gorenstein_dimension,
        chi_degree: r.chi_degree,
        chi_degree_minimality_open: r.chi_degree_minimality_open,
    });
    report.tables.push((&r.hochschild).into());
    report.tables.push((&r.tate).into());

    let res = &r.resolution;
    let checks = &mut report.checks;
    checks.push(Check::new("resolution_d_squared_zero", res.d_squared_zero).with("length", res.length));
    checks.push(Check::new("resolution_minimal", res.minimal).with("length", res.length));
    checks.push(Check::new("resolution_exact", res.exact).with("length", res.length));
    let g = &r.gorenstein;
    let sides_agree = match (g.left, g.right) {
        (Some(l), Some(rt)) => l == rt,
        _ => true,
    };
    checks.push(Check::new("injective_dimensions_agree", sides_agree).with("bound", g.bound));
    checks.push(
        Check::new("complete_resolution_exact", r.complete_resolution_exact).with("range", json!([lo - 1, hi + 1])),
    );
    if let Some(c) = r.comparison_map {
        checks.push(Check::new("comparison_map_is_chain_map", c));
    }
    checks.push(
        Check::new("tate_periodic", r.tate_periodic.holds)
            .with("p", r.p)
            .with("range", json!([r.tate_periodic.from, r.tate_periodic.to])),
    );
    if let Some(t) = r.totally_acyclic {
        checks.push(Check::new("totally_acyclic", t).with("range", json!([lo, hi])));
    }
    if r.finite_projective_dimension {
        let zero = r.tate.dims.iter().all(|&d| d == 0);
        checks.push(
            Check::new("finite_global_dimension_tate_vanishes", zero)
                .with("global_dimension", json!(r.global_dimension)),
        );
    }
    if let Some(lb) = &r.lower_bound {
        checks.push(Check::new("first_periodic_syzygy_at_least_d", lb.holds).with("n", lb.n).with("d", lb.d));
        let witness = lb.witness_simple.map(|v| report.algebra.vertices[v].clone());
        checks.push(
            Check::new("equality_criterion", lb.equality_matches)
                .with("n", lb.n)
                .with("ext_n_simple_regular", json!(lb.ext_at_n))
                .with("witness_simple", json!(witness)),
        );
    }
    if let Some(cm) = r.periodic_syzygy_cm {
        checks.push(
            Check::new("periodic_syzygy_cohen_macaulay", cm)
                .with("n", r.n)
                .with("width", r.cm_width)
                .with("enveloping_injective_dimension", json!(r.enveloping_gorenstein)),
        );
    }
    if let Some(s) = r.stable_range {
        checks.push(
            Check::new("stable_range_agrees", s.holds)
                .with("gorenstein_dimension", json!(r.gorenstein_dimension))
                .with("range", json!([s.from, s.to])),
        );
    }
    report.notes.extend(r.notes.iter().cloned());
}

/// The module to resolve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleChoice {
    RegularBimodule,
    Simple(String),
    Projective(String),
}

impl ModuleChoice {
    pub fn parse(words: &[String]) -> Result<Self, CliError> {
        match words {
            [k] if k == "regular-bimodule" => Ok(ModuleChoice::RegularBimodule),
            [k, v] if k == "simple" => Ok(ModuleChoice::Simple(v.clone())),
            [k, v] if k == "projective" => Ok(ModuleChoice::Projective(v.clone())),
            _ => Err(CliError::BadModule(words.join(" "))),
        }
    }

    fn describe(&self) -> String {
        match self {
            ModuleChoice::RegularBimodule => "regular bimodule".into(),
            ModuleChoice::Simple(v) => format!("simple S_{v}"),
            ModuleChoice::Projective(v) => format!("projective P_{v}"),
        }
    }
}

fn vertex(labels: &[String], name: &str) -> Result<usize, CliError> {
    labels
        .iter()
        .position(|l| l == name)
        .or_else(|| name.parse::<usize>().ok().filter(|&i| i < labels.len() && !labels.contains(&i.to_string())))
        .ok_or_else(|| CliError::UnknownVertex(name.to_string()))
}

struct ResolveJob<'a> {
    input: &'a Input,
    module: &'a ModuleChoice,
    length: usize,
    bardzell: bool,
    exec: Exec,
}

struct Resolved {
    terms: Vec<Term>,
    syzygy_dims: Vec<usize>,
    projective_dimension: Option<usize>,
    bardzell: Option<Vec<Vec<(String, String)>>>,
    checks: Vec<Check>,
}

impl Job for ResolveJob<'_> {
    type Output = Resolved;

    fn run<F: Field>(self, field: &F) -> Result<Resolved> {
        let a = shared(self.input.algebra(field)?);
        let labels = self.input.vertex_labels(&a);
        let count = a.num_idempotents();
        let m = match self.module {
            ModuleChoice::RegularBimodule => FdModule::regular_bimodule(&a, shared(a.enveloping()))?,
            ModuleChoice::Simple(v) => FdModule::simple(a.clone(), vertex(&labels, v)?)?,
            ModuleChoice::Projective(v) => FdModule::projective(a.clone(), vertex(&labels, v)?)?,
        };
        let bimodule = *self.module == ModuleChoice::RegularBimodule;
        if self.bardzell && !bimodule {
            return Err(CliError::BardzellNeedsBimodule.into());
        }
        let res = minimal_resolution_with(&m, self.length, self.exec);
        let pairs = |k: usize| res.term(k).map(|t| bimodule_endpoint_pairs(&t.summands, count)).unwrap_or_default();
        let terms = res
            .terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let summands = if bimodule {
                    pairs(k).iter().map(|&(u, v)| format!("({},{})", labels[u], labels[v])).collect()
                } else {
                    let mut s = t.summands.clone();
                    s.sort();
                    s.iter().map(|&i| format!("P_{}", labels[i])).collect()
                };
                Term { degree: k, dim: t.dim(res.algebra()), summands }
            })
            .collect();
        let length = res.length();
        let mut checks = vec![
            Check::new("d_squared_zero", res.d_squared_zero()).with("length", length),
            Check::new("minimal", res.is_minimal()).with("length", length),
            Check::new("exact", res.is_exact(self.exec)).with("length", length),
        ];
        let mut bardzell = None;
        if self.bardzell {
            let p = self.input.presentation().ok_or(CliError::BardzellNeedsPresentation)?;
            if !p.is_monomial() {
                return Err(Error::NonMonomial.into());
            }
            let oracle = bardzell_multiplicities(p, self.length)?;
            let agrees = (0..=self.length).all(|k| pairs(k) == oracle.get(k).cloned().unwrap_or_default());
            checks.push(Check::new("bardzell_agreement", agrees).with("max_degree", self.length));
            let named = |(u, v): &(usize, usize)| (labels[*u].clone(), labels[*v].clone());
            bardzell = Some(oracle.iter().map(|l| l.iter().map(named).collect()).collect());
        }
        Ok(Resolved {
            terms,
            syzygy_dims: res.syzygy_dims(),
            projective_dimension: res.projective_dimension,
            bardzell,
            checks,
        })
    }
}

/// Minimal resolution of the chosen module up to `P_length`.
pub fn resolve(
    input: &Input,
    field: FieldSpec,
    module: &ModuleChoice,
    length: usize,
    bardzell: bool,
    exec: Exec,
    record_timings: bool,
) -> Result<ResolveReport> {
    let start = Instant::now();
    let r = dispatch(field, ResolveJob { input, module, length, bardzell, exec })?;
    Ok(ResolveReport {
        schema: SCHEMA.into(),
        input: input_info(input, field),
        module: module.describe(),
        length,
        terms: r.terms,
        syzygy_dims: r.syzygy_dims,
        projective_dimension: r.projective_dimension,
        bardzell: r.bardzell,
        checks: r.checks,
        timings_ms: timings(record_timings, start),
    })
}

struct TensorJob<'a> {
    a: &'a Input,
    b: &'a Input,
}

impl Job for TensorJob<'_> {
    type Output = (usize, usize, AlgebraDump);

    fn run<F: Field>(self, field: &F) -> Result<Self::Output> {
        let a = self.a.algebra(field)?;
        let b = self.b.algebra(field)?;
        let t = a.tensor(&b)?;
        Ok((a.dim(), b.dim(), AlgebraDump::of(&t)))
    }
}

/// `A ⊗ B` as a dump, with the dimensions of the factors.
pub fn tensor(a: &Input, b: &Input, field: FieldSpec) -> Result<(usize, usize, AlgebraDump)> {
    dispatch(field, TensorJob { a, b })
}

pub fn write_tensor(a: &Input, b: &Input, field: FieldSpec, out: &Path) -> Result<String> {
    let (da, db, dump) = tensor(a, b, field)?;
    let dim = dump.labels.len();
    if dim != da * db {
        bail!("tensor product has dimension {dim}, expected {da} * {db}");
    }
    std::fs::write(out, serde_json::to_string_pretty(&dump)? + "\n")?;
    Ok(format!(
        "wrote {} (field {}, dim {} = {} * {}, vertices: {})\n",
        out.display(),
        dump.field,
        dim,
        da,
        db,
        dump.idempotents.len()
    ))
}

struct TensorCheckJob<'a> {
    a: &'a Input,
    b: &'a Input,
    opts: TensorCheckOptions,
}

impl Job for TensorCheckJob<'_> {
    type Output = tate_syzygy::tensor_check::TensorCheckReport;

    fn run<F: Field>(self, field: &F) -> Result<Self::Output> {
        let a = shared(self.a.algebra(field)?);
        let b = shared(self.b.algebra(field)?);
        Ok(tensor_resolution_check(&a, &b, &self.opts)?)
    }
}

/// Checks the total complex of the bimodule resolutions of a periodic `a`
/// and a `b` of finite global dimension.
pub fn tensor_check(
    a: &Input,
    b: &Input,
    field: FieldSpec,
    opts: &TensorCheckOptions,
    record_timings: bool,
) -> Result<TensorCheckOutput> {
    let start = Instant::now();
    let r = dispatch(field, TensorCheckJob { a, b, opts: *opts })?;
    let (n, p) = (r.global_dimension, r.period);
    let mut checks = vec![
        Check::new("convolution", r.convolution).with("length", r.length),
        Check::new("d_squared_zero", r.d_squared_zero).with("length", r.length),
        Check::new("minimal", r.minimal).with("length", r.length),
        Check::new("exact", r.exact).with("length", r.length),
        Check::new("resolves_tensor_product", r.resolves),
        Check::new("syzygy_gluing", r.glued).with("n", n).with("p", p).with("gluing", json!(r.gluing)),
    ];
    if let Some(d) = &r.direct {
        checks.push(Check::new("direct_term_dims", d.term_dims_match).with("length", r.length));
        checks.push(
            Check::new("direct_periodicity", d.agrees)
                .with("n", json!(d.n))
                .with("p", json!(d.p))
                .with("seed", opts.search.seed),
        );
    }
    Ok(TensorCheckOutput {
        schema: SCHEMA.into(),
        inputs: vec![input_info(a, field), input_info(b, field)],
        period: p,
        global_dimension: n,
        length: r.length,
        gluing: r.gluing,
        term_dims: r.term_dims.clone(),
        direct_term_dims: r.direct.map(|d| d.term_dims),
        checks,
        timings_ms: timings(record_timings, start),
    })
}
