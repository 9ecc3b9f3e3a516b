use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tate_syzygy::cohomology::{CohomologyKind, CohomologyTable, GorensteinReport, GorensteinStatus};
use tate_syzygy::FieldSpec;

pub const SCHEMA: &str = "tate-syzygy/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputInfo {
    pub name: String,
    pub digest: String,
    pub field: FieldSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraInfo {
    pub dim: usize,
    pub idempotents: usize,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinInfo {
    pub status: String,
    pub d: Option<usize>,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub bound: usize,
}

impl From<&GorensteinReport> for GorensteinInfo {
    fn from(g: &GorensteinReport) -> Self {
        let status = match g.status {
            GorensteinStatus::Gorenstein(_) => "gorenstein",
            GorensteinStatus::NotGorensteinUpTo(_) => "not_gorenstein_up_to",
        };
        GorensteinInfo { status: status.into(), d: g.dimension(), left: g.left, right: g.right, bound: g.bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub n_max: usize,
    pub p_max: usize,
    /// The bimodule resolution is finite.
    pub finite: bool,
    pub global_dimension: Option<usize>,
    /// Least `r` with `Ω^r(A)` Cohen-Macaulay over `A^e`.
    pub gorenstein_dimension: Option<usize>,
    pub chi_degree: Option<usize>,
    pub chi_degree_minimality_open: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub kind: CohomologyKind,
    pub range: (i64, i64),
    pub dims: Vec<usize>,
    pub field: FieldSpec,
    pub n_max: usize,
    pub p_max: usize,
    pub seed: u64,
}

impl From<&CohomologyTable> for Table {
    fn from(t: &CohomologyTable) -> Self {
        Table {
            kind: t.kind,
            range: (t.lo, t.hi()),
            dims: t.dims.clone(),
            field: t.field,
            n_max: t.n_max,
            p_max: t.p_max,
            seed: t.seed,
        }
    }
}

impl Table {
    pub fn get(&self, deg: i64) -> Option<usize> {
        usize::try_from(deg - self.range.0).ok().and_then(|i| self.dims.get(i)).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, pass: bool) -> Self {
        Check { name: name.into(), params: BTreeMap::new(), pass }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub input: InputInfo,
    pub algebra: AlgebraInfo,
    pub gorenstein: GorensteinInfo,
    pub periodicity: Option<Periodicity>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl AnalysisReport {
    pub fn table(&self, kind: CohomologyKind) -> Option<&Table> {
        self.tables.iter().find(|t| t.kind == kind)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        failed(&self.checks)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input      {} ({})", self.input.name, &self.input.digest[..16]);
        let _ = writeln!(s, "field      {}", self.input.field);
        let _ = writeln!(
            s,
            "algebra    dim {}, {} vertices ({})",
            self.algebra.dim,
            self.algebra.idempotents,
            self.algebra.vertices.join(" ")
        );
        let g = &self.gorenstein;
        let side = |x: Option<usize>| x.map_or_else(|| format!("> {}", g.bound), |d| d.to_string());
        match g.d {
            Some(d) => {
                let _ = writeln!(s, "gorenstein yes, d = {d}");
            }
            None => {
                let _ = writeln!(
                    s,
                    "gorenstein not within bound {} (left id {}, right id {})",
                    g.bound,
                    side(g.left),
                    side(g.right)
                );
            }
        }
        match &self.periodicity {
            Some(p) if p.finite => {
                let _ = writeln!(s, "period     none: finite global dimension {}", p.global_dimension.unwrap_or(p.n));
            }
            Some(p) => {
                let _ =
                    writeln!(s, "period     Ω^{} ≅ Ω^{}, n = {}, p = {} (seed {})", p.n + p.p, p.n, p.n, p.p, p.seed);
                if let Some(r) = p.gorenstein_dimension {
                    let _ = writeln!(s, "G-dim      {r} (A over A^e)");
                }
            }
            None => {
                let _ = writeln!(s, "period     not found within the search bounds");
            }
        }
        for t in &self.tables {
            let _ = writeln!(s);
            let _ = writeln!(s, "{}", table_title(t.kind));
            let (lo, hi) = t.range;
            let degs: Vec<String> = (lo..=hi).map(|i| i.to_string()).collect();
            let w = degs.iter().map(String::len).chain(t.dims.iter().map(|d| d.to_string().len())).max().unwrap_or(1);
            let _ = writeln!(s, "  i    {}", degs.iter().map(|d| format!("{d:>w$}")).collect::<Vec<_>>().join(" "));
            let _ = writeln!(s, "  dim  {}", t.dims.iter().map(|d| format!("{d:>w$}")).collect::<Vec<_>>().join(" "));
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "checks");
            render_checks(&mut s, &self.checks);
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        if let Some(t) = &self.timings_ms {
            let _ = writeln!(s);
            for (k, v) in t {
                let _ = writeln!(s, "time {k:<12} {v} ms");
            }
        }
        s
    }
}

fn table_title(kind: CohomologyKind) -> &'static str {
    match kind {
        CohomologyKind::Ext => "Ext",
        CohomologyKind::Hochschild => "Hochschild cohomology HH^i",
        CohomologyKind::TateHochschild => "Tate-Hochschild cohomology HH^i_sg",
    }
}

pub fn failed(checks: &[Check]) -> Vec<&str> {
    checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
}

pub fn render_checks(s: &mut String, checks: &[Check]) {
    for c in checks {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "  [{}] {:<28} {}", if c.pass { "pass" } else { "FAIL" }, c.name, params.join(" "));
    }
}

/// A minimal resolution of one module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub schema: String,
    pub input: InputInfo,
    pub module: String,
    pub length: usize,
    pub terms: Vec<Term>,
    pub syzygy_dims: Vec<usize>,
    pub projective_dimension: Option<usize>,
    /// Endpoint pairs predicted by the associated paths, per degree.
    pub bardzell: Option<Vec<Vec<(String, String)>>>,
    pub checks: Vec<Check>,
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub degree: usize,
    pub dim: usize,
    /// Summands written `e_v` (one-sided) or `(source, target)` (bimodules).
    pub summands: Vec<String>,
}

impl ResolveReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input   {} ({})", self.input.name, &self.input.digest[..16]);
        let _ = writeln!(s, "module  {} over field {}", self.module, self.input.field);
        let _ = writeln!(s);
        let _ = writeln!(s, "  k  dim P_k  dim Ω^(k+1)  summands");
        for t in &self.terms {
            let syz = self.syzygy_dims.get(t.degree + 1).map_or("-".to_string(), |d| d.to_string());
            let _ = writeln!(s, "{:>3}  {:>7}  {:>11}  {}", t.degree, t.dim, syz, t.summands.join(" "));
        }
        match self.projective_dimension {
            Some(d) => {
                let _ = writeln!(s, "projective dimension {d}");
            }
            None => {
                let _ = writeln!(s, "no vanishing syzygy up to degree {}", self.length);
            }
        }
        if let Some(b) = &self.bardzell {
            let _ = writeln!(s);
            let _ = writeln!(s, "associated paths");
            for (k, pairs) in b.iter().enumerate() {
                let pairs: Vec<String> = pairs.iter().map(|(u, v)| format!("({u},{v})")).collect();
                let _ = writeln!(s, "{k:>3}  {}", pairs.join(" "));
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "checks");
        render_checks(&mut s, &self.checks);
        s
    }
}

/// Totality check of a tensor product of bimodule resolutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorCheckOutput {
    pub schema: String,
    pub inputs: Vec<InputInfo>,
    pub period: usize,
    pub global_dimension: usize,
    pub length: usize,
    pub gluing: tate_syzygy::tensor_check::Gluing,
    pub term_dims: Vec<usize>,
    pub direct_term_dims: Option<Vec<usize>>,
    pub checks: Vec<Check>,
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl TensorCheckOutput {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in &self.inputs {
            let _ = writeln!(s, "input   {} ({})", i.name, &i.digest[..16]);
        }
        let _ = writeln!(
            s,
            "period p = {} of the first factor, global dimension n = {} of the second",
            self.period, self.global_dimension
        );
        let _ = writeln!(s, "gluing  {:?}", self.gluing);
        let _ = writeln!(s, "term dims {:?}", self.term_dims);
        if let Some(d) = &self.direct_term_dims {
            let _ = writeln!(s, "direct    {d:?}");
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "checks");
        render_checks(&mut s, &self.checks);
        s
    }
}
