//! The total complex of two bimodule resolutions and the periodicity of
//! `Ω^n(Λ ⊗ Γ)` for periodic `Λ` and `Γ` of global dimension `n`.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraRef;
use crate::cohomology::{resolution_complex, BimoduleResolution};
use crate::complete::periodic_resolution;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{shared, FdModule, ProjModule};
use crate::resolution::{detect_periodicity, minimal_resolution_with, ProjComplex, SearchOptions};

#[derive(Clone, Copy, Debug)]
pub struct TensorCheckOptions {
    /// Highest degree of the total complex that is checked.
    pub length: usize,
    /// Bound on the global dimension of the second factor.
    pub global_dimension_bound: usize,
    /// Also resolve `Λ ⊗ Γ` directly over its enveloping algebra and compare.
    pub direct: bool,
    pub search: SearchOptions,
}

impl Default for TensorCheckOptions {
    fn default() -> Self {
        TensorCheckOptions { length: 8, global_dimension_bound: 12, direct: true, search: SearchOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gluing {
    /// `p` even: `d_{n+p+1} = d_{n+1}` entrywise.
    Literal,
    /// `p` odd: `D d_{n+p+1} = d_{n+1} D` with `D` the diagonal sign matrix.
    Signed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectComparison {
    pub term_dims: Vec<usize>,
    pub term_dims_match: bool,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorCheckReport {
    pub period: usize,
    pub global_dimension: usize,
    pub length: usize,
    pub gluing: Gluing,
    pub term_dims: Vec<usize>,
    pub convolution: bool,
    pub d_squared_zero: bool,
    pub minimal: bool,
    pub exact: bool,
    pub resolves: bool,
    pub glued: bool,
    pub direct: Option<DirectComparison>,
}

impl TensorCheckReport {
    pub fn passes(&self) -> bool {
        self.convolution
            && self.d_squared_zero
            && self.minimal
            && self.exact
            && self.resolves
            && self.glued
            && self.direct.as_ref().is_none_or(|d| d.agrees)
    }
}

/// Coordinates of `⊕_i P_{r-i} ⊗ Q_i`: block `i`, then summands of `P`
/// (outer) and `Q` (inner), then basis positions in the same order.
struct Layout {
    blocks: Vec<Block>,
    dim: usize,
    summands: Vec<usize>,
}

struct Block {
    i: usize,
    a: usize,
    /// `start[l][m]`: first coordinate of the summand pair `(l, m)`.
    start: Vec<Vec<usize>>,
    q_len: Vec<usize>,
    /// Coordinate of `P_a` -> (summand, position).
    p_coord: Vec<(usize, usize)>,
    q_coord: Vec<(usize, usize)>,
}

impl Block {
    fn coord(&self, l: usize, x: usize, m: usize, y: usize) -> usize {
        self.start[l][m] + x * self.q_len[m] + y
    }
}

fn coord_table<F: Field>(t: &ProjModule, a: &AlgebraRef<F>) -> Vec<(usize, usize)> {
    let mut table = Vec::new();
    for (l, &k) in t.summands.iter().enumerate() {
        table.extend((0..a.right_basis(k).len()).map(|x| (l, x)));
    }
    table
}

fn layout<F: Field>(r: usize, p: &ProjComplex<F>, q: &ProjComplex<F>, q_count: usize) -> Layout {
    let (pa, qa) = (&p.algebra, &q.algebra);
    let mut blocks = Vec::new();
    let mut summands = Vec::new();
    let mut dim = 0;
    for i in 0..=r.min(q.hi() as usize) {
        let a = r - i;
        let (Some(pt), Some(qt)) = (p.term(a as i64), q.term(i as i64)) else { continue };
        let q_len: Vec<usize> = qt.summands.iter().map(|&m| qa.right_basis(m).len()).collect();
        let mut start = Vec::with_capacity(pt.summands.len());
        for &l in &pt.summands {
            let lx = pa.right_basis(l).len();
            let mut row = Vec::with_capacity(qt.summands.len());
            for (mi, &m) in qt.summands.iter().enumerate() {
                row.push(dim);
                summands.push(l * q_count + m);
                dim += lx * q_len[mi];
            }
            start.push(row);
        }
        let p_coord = coord_table(pt, pa);
        let q_coord = coord_table(qt, qa);
        blocks.push(Block { i, a, start, q_len, p_coord, q_coord });
    }
    Layout { blocks, dim, summands }
}

/// `d_r` of the total complex, with `(-1)^a id ⊗ d^Q` on `P_a ⊗ Q_i`.
fn total_differential<F: Field>(
    f: &F,
    src: &Layout,
    tgt: &Layout,
    p: &ProjComplex<F>,
    q: &ProjComplex<F>,
) -> Matrix<F> {
    let mut out = Matrix::zeros(f, tgt.dim, src.dim);
    let find = |i: usize| tgt.blocks.iter().find(|b| b.i == i);
    for b in &src.blocks {
        let dp = if b.a >= 1 { p.diff(b.a as i64) } else { None };
        let dq = if b.i >= 1 { q.diff(b.i as i64) } else { None };
        let sign = if b.a % 2 == 0 { f.one() } else { f.neg(&f.one()) };
        for (pc, &(l, x)) in b.p_coord.iter().enumerate() {
            for (qc, &(m, y)) in b.q_coord.iter().enumerate() {
                let col = b.coord(l, x, m, y);
                if let (Some(d), Some(t)) = (dp, find(b.i)) {
                    for row in 0..d.rows() {
                        let c = d.get(row, pc);
                        if !f.is_zero(c) {
                            let (l2, x2) = t.p_coord[row];
                            out.set(t.coord(l2, x2, m, y), col, c.clone());
                        }
                    }
                }
                if let (Some(d), Some(t)) = (dq, b.i.checked_sub(1).and_then(find)) {
                    for row in 0..d.rows() {
                        let c = d.get(row, qc);
                        if !f.is_zero(c) {
                            let (m2, y2) = t.q_coord[row];
                            let cell = t.coord(l, x, m2, y2);
                            let v = f.add(out.get(cell, col), &f.mul(&sign, c));
                            out.set(cell, col, v);
                        }
                    }
                }
            }
        }
    }
    out
}

fn sign_matrix<F: Field>(f: &F, l: &Layout, n: usize) -> Matrix<F> {
    let mut d = Matrix::zeros(f, l.dim, l.dim);
    for b in &l.blocks {
        let s = if (n + b.i).is_multiple_of(2) { f.one() } else { f.neg(&f.one()) };
        let end = b.start.iter().flatten().copied().min().unwrap_or(0);
        let size: usize = b.p_coord.len() * b.q_coord.len();
        for c in end..end + size {
            d.set(c, c, s.clone());
        }
    }
    d
}

/// The total complex `P ⊗ Q` in degrees `0..=length` over `Λ^e ⊗ Γ^e`.
pub fn total_complex<F: Field>(
    e: &AlgebraRef<F>,
    p: &ProjComplex<F>,
    q: &ProjComplex<F>,
    length: usize,
) -> ProjComplex<F> {
    let q_count = q.algebra.num_idempotents();
    let layouts: Vec<Layout> = (0..=length).map(|r| layout(r, p, q, q_count)).collect();
    let f = e.field();
    let diffs = (1..=length).map(|r| total_differential(f, &layouts[r], &layouts[r - 1], p, q)).collect();
    let terms = layouts.into_iter().map(|l| ProjModule::new(l.summands)).collect();
    ProjComplex { algebra: e.clone(), lo: 0, terms, diffs }
}

/// Builds `P ⊗ Q` from a periodic `Λ` and a `Γ` of finite global dimension
/// and checks it against the claimed periodicity `Ω^{n+p} ≅ Ω^n`.
pub fn tensor_resolution_check<F: Field>(
    lambda: &AlgebraRef<F>,
    gamma: &AlgebraRef<F>,
    opts: &TensorCheckOptions,
) -> Result<TensorCheckReport> {
    if lambda.field().spec() != gamma.field().spec() {
        return Err(Error::FieldMismatch(lambda.field().spec().to_string(), gamma.field().spec().to_string()));
    }
    let f = lambda.field();
    let search = &opts.search;
    let lam = BimoduleResolution::new(lambda, search, opts.length + 1)?;
    let cert = lam.certificate(search)?;
    if cert.n != 0 || cert.is_trivial() {
        return Err(Error::Hypothesis(format!(
            "first factor is not periodic: first periodic syzygy {}, finite: {}",
            cert.n,
            cert.is_trivial()
        )));
    }
    let p = cert.p;

    let gamma_env = shared(gamma.enveloping());
    let gm = FdModule::regular_bimodule(gamma, gamma_env.clone())?;
    let gres = minimal_resolution_with(&gm, opts.global_dimension_bound, search.exec);
    let n = gres.projective_dimension.filter(|&d| d <= opts.global_dimension_bound).ok_or_else(|| {
        Error::Hypothesis(format!("second factor has global dimension above {}", opts.global_dimension_bound))
    })?;

    let length = opts.length.max(n + p + 1);
    let pc = periodic_resolution(&lam.resolution, cert, length)?;
    let qc = resolution_complex(&gres, n)?;
    let e = shared(lam.enveloping.tensor(&gamma_env)?);
    let total = total_complex(&e, &pc, &qc, length);

    let term_dims = total.term_dims();
    let pd = pc.term_dims();
    let qd = qc.term_dims();
    let convolution = (0..=length).all(|r| term_dims[r] == (0..=r.min(n)).map(|i| pd[r - i] * qd[i]).sum::<usize>());
    let d_squared_zero = total.d_squared_zero();
    let minimal = total.is_minimal();
    let exact = total.is_exact_interior(search.exec);
    let resolves = term_dims[0] - total.diffs[0].rank() == lambda.dim() * gamma.dim();

    let q_count = gamma_env.num_idempotents();
    let (gluing, glued) = if p % 2 == 0 {
        (Gluing::Literal, total.diff((n + p + 1) as i64) == total.diff((n + 1) as i64))
    } else {
        let lay = |r: usize| layout(r, &pc, &qc, q_count);
        let d_src = sign_matrix(f, &lay(n + 1), n);
        let d_tgt = sign_matrix(f, &lay(n), n);
        let big = total.diff((n + p + 1) as i64).expect("in range");
        let small = total.diff((n + 1) as i64).expect("in range");
        let same_terms = total.term((n + p) as i64) == total.term(n as i64)
            && total.term((n + p + 1) as i64) == total.term((n + 1) as i64);
        (Gluing::Signed, same_terms && d_tgt.mul(big) == small.mul(&d_src))
    };

    let direct = if opts.direct {
        let a = shared(lambda.tensor(gamma)?);
        let direct = BimoduleResolution::new(&a, search, length)?;
        let dims: Vec<usize> =
            (0..=length).map(|k| direct.resolution.term(k).map_or(0, |t| t.dim(&direct.enveloping))).collect();
        let cert = detect_periodicity(&direct.resolution, search)?;
        let (dn, dp) = match &cert {
            Some(c) if !c.is_trivial() => (Some(c.n), Some(c.p)),
            _ => (None, None),
        };
        let term_dims_match = dims == term_dims;
        Some(DirectComparison {
            agrees: term_dims_match && dn == Some(n) && dp == Some(p),
            term_dims: dims,
            term_dims_match,
            n: dn,
            p: dp,
        })
    } else {
        None
    };

    Ok(TensorCheckReport {
        period: p,
        global_dimension: n,
        length,
        gluing,
        term_dims,
        convolution,
        d_squared_zero,
        minimal,
        exact,
        resolves,
        glued,
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisAlgebra;
    use crate::field::{PrimeField, Rationals};
    use crate::presentation::{gamma_presentation, parse_presentation};

    const KX2: &str = "vertices 1\narrow x : 1 -> 1\nrelation x*x\n";

    fn kx2<F: Field>(f: F) -> AlgebraRef<F> {
        let p = parse_presentation(KX2).unwrap().with_field(f.spec());
        shared(BasisAlgebra::from_presentation(&p, &f, 30).unwrap())
    }

    fn gamma<F: Field>(n: usize, f: F) -> AlgebraRef<F> {
        shared(BasisAlgebra::from_presentation(&gamma_presentation(n, f.spec()), &f, 30).unwrap())
    }

    #[test]
    fn odd_period_uses_signs() {
        let f = PrimeField::new(2).unwrap();
        let r = tensor_resolution_check(&kx2(f), &gamma(1, f), &TensorCheckOptions::default()).unwrap();
        assert_eq!((r.period, r.global_dimension, r.gluing), (1, 1, Gluing::Signed));
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn odd_characteristic_has_even_period() {
        let f = PrimeField::new(3).unwrap();
        let r = tensor_resolution_check(&kx2(f), &gamma(1, f), &TensorCheckOptions::default()).unwrap();
        assert_eq!(r.gluing, Gluing::Literal);
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn even_period_is_literal() {
        let r = tensor_resolution_check(&kx2(Rationals), &gamma(1, Rationals), &TensorCheckOptions::default()).unwrap();
        assert_eq!((r.period, r.gluing), (2, Gluing::Literal));
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn point_factor_reproduces_the_resolution() {
        let f = Rationals;
        let r = tensor_resolution_check(&kx2(f), &gamma(0, f), &TensorCheckOptions::default()).unwrap();
        assert_eq!(r.global_dimension, 0);
        assert!(r.term_dims.iter().all(|&d| d == 4));
        assert!(r.passes());
    }

    #[test]
    fn hypotheses_are_checked() {
        let f = Rationals;
        let g = gamma(1, f);
        assert!(matches!(tensor_resolution_check(&g, &g, &TensorCheckOptions::default()), Err(Error::Hypothesis(_))));
        let l2 = shared(
            BasisAlgebra::from_presentation(
                &parse_presentation("vertices 1 2\narrow a : 1 -> 1\narrow b : 1 -> 2\nrelation a*a\n").unwrap(),
                &f,
                30,
            )
            .unwrap(),
        );
        assert!(matches!(tensor_resolution_check(&l2, &g, &TensorCheckOptions::default()), Err(Error::Hypothesis(_))));
    }
}
