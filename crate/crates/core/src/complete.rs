//! Periodic complete resolutions spliced from a periodicity certificate.

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{CornerOrbits, FdModule, ProjModule};
use crate::resolution::{PeriodicityCertificate, ProjComplex, Resolution};

/// A window `T_lo, ..., T_hi` of a complete resolution together with the
/// comparison map `θ : T -> P` in degrees `0..n`.
///
/// `T_j = P_j` for `j >= n`. Below `n` the segment `P_n, ..., P_{n+p-1}` repeats,
/// glued by `P_n -> Ω^n ≅ Ω^{n+p} ⊆ P_{n+p-1}`.
#[derive(Clone, Debug)]
pub struct CompleteResolution<F: Field> {
    pub n: usize,
    pub p: usize,
    pub window: ProjComplex<F>,
    /// `theta[j] : T_j -> P_j` for `0 <= j < n`; identity from `n` on.
    pub theta: Option<Vec<Matrix<F>>>,
    /// `P_n -> P_{n+p-1}`, the differential `d^T_n`.
    pub glue: Matrix<F>,
}

/// `T_j` and `d^T_j` read off a resolution and the gluing map.
struct Splice<'a, F: Field> {
    res: &'a Resolution<F>,
    n: i64,
    p: i64,
    glue: &'a Matrix<F>,
}

impl<F: Field> Splice<'_, F> {
    fn source_index(&self, j: i64) -> usize {
        if j >= self.n {
            j as usize
        } else {
            (self.n + (j - self.n).rem_euclid(self.p)) as usize
        }
    }

    fn term(&self, j: i64) -> Result<ProjModule> {
        let k = self.source_index(j);
        self.res.term(k).ok_or_else(|| Error::WindowTooSmall(format!("resolution term {k} not computed")))
    }

    fn diff(&self, j: i64) -> Result<Matrix<F>> {
        let k = if j > self.n {
            j as usize
        } else {
            match (j - self.n).rem_euclid(self.p) {
                0 => return Ok(self.glue.clone()),
                r => (self.n + r) as usize,
            }
        };
        match self.res.differential(k) {
            Some(d) => Ok(d.clone()),
            None if self.res.projective_dimension.is_some() => {
                let f = self.res.algebra().field();
                let a = self.res.algebra();
                Ok(Matrix::zeros(f, self.term(j - 1)?.dim(a), self.term(j)?.dim(a)))
            }
            None => Err(Error::WindowTooSmall(format!("differential {k} not computed"))),
        }
    }
}

/// Builds `T` over degrees `lo..=hi` from a verified certificate.
pub fn complete_resolution<F: Field>(
    res: &Resolution<F>,
    cert: &PeriodicityCertificate<F>,
    lo: i64,
    hi: i64,
) -> Result<CompleteResolution<F>> {
    let a = res.algebra().clone();
    let f = a.field().clone();
    if hi < lo {
        return Err(Error::WindowTooSmall(format!("empty window {lo}..{hi}")));
    }
    if cert.is_trivial() {
        let count = (hi - lo + 1) as usize;
        let window = ProjComplex {
            algebra: a,
            lo,
            terms: vec![ProjModule::default(); count],
            diffs: vec![Matrix::zeros(&f, 0, 0); count - 1],
        };
        let glue = Matrix::zeros(&f, 0, 0);
        return Ok(CompleteResolution { n: cert.n, p: cert.p, window, theta: Some(Vec::new()), glue });
    }
    cert.verify(res)?;
    // P_n -> Ω^n -> Ω^{n+p} ⊆ P_{n+p-1}.
    let phi_inv =
        cert.witness.inverse().ok_or_else(|| Error::InvalidCertificate("witness is not invertible".into()))?;
    let pi_n = res.cover_map(cert.n).ok_or_else(|| Error::WindowTooSmall(format!("cover of syzygy {}", cert.n)))?;
    let kernel = res
        .syzygies
        .get(cert.n + cert.p - 1)
        .ok_or_else(|| Error::WindowTooSmall(format!("syzygy {} not computed", cert.n + cert.p)))?;
    let glue = kernel.basis.mul(&phi_inv.matrix).mul(&pi_n);
    let splice = Splice { res, n: cert.n as i64, p: cert.p as i64, glue: &glue };

    let terms = (lo..=hi).map(|j| splice.term(j)).collect::<Result<Vec<_>>>()?;
    let diffs = (lo + 1..=hi).map(|j| splice.diff(j)).collect::<Result<Vec<_>>>()?;
    let window = ProjComplex { algebra: a, lo, terms, diffs };
    let theta = comparison_map(&splice);
    Ok(CompleteResolution { n: cert.n, p: cert.p, window, theta, glue })
}

/// Solves for `θ_j`, `j = n-1, ..., 0`, with `d_{j+1} θ_{j+1} = θ_j d^T_{j+1}`.
fn comparison_map<F: Field>(s: &Splice<'_, F>) -> Option<Vec<Matrix<F>>> {
    let res = s.res;
    let a = res.algebra();
    let f = a.field();
    let n = s.n as usize;
    let mut thetas: Vec<Matrix<F>> = vec![Matrix::zeros(f, 0, 0); n];
    let mut upper: Option<Matrix<F>> = None;
    for j in (0..n).rev() {
        let t_j = s.term(j as i64).ok()?;
        let t_up = s.term(j as i64 + 1).ok()?;
        let d_t = s.diff(j as i64 + 1).ok()?;
        let p_j = res.term_module(j);
        let target_dim = p_j.dim();
        let d_p = res.differential(j + 1)?;
        let rhs_full = match &upper {
            None => d_p.clone(),
            Some(th) => d_p.mul(th),
        };
        let gens = t_up.generator_coords(a);
        let images: Vec<Vec<F::Elem>> = gens.iter().map(|&c| d_t.column(c)).collect();
        let corners = CornerOrbits::new(p_j);
        let sys = corners.pullback_matrix(a, &t_j, &images, target_dim);
        let mut rhs = Vec::with_capacity(gens.len() * target_dim);
        for &c in &gens {
            rhs.extend(rhs_full.column(c));
        }
        let t = sys.solve(&rhs).ok()??;
        let mut off = 0;
        let mut gen_images = Vec::new();
        for &k in &t_j.summands {
            let d = corners.corner_dim(k);
            gen_images.push(corners.bases[k].mul_vec(&t[off..off + d]));
            off += d;
        }
        let theta = t_j.map_from_images(p_j, &gen_images);
        thetas[j] = theta.clone();
        upper = Some(theta);
    }
    Some(thetas)
}

impl<F: Field> CompleteResolution<F> {
    pub fn algebra(&self) -> &AlgebraRef<F> {
        &self.window.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.window.terms.iter().all(ProjModule::is_zero)
    }

    /// Exact at every interior degree of the window, with `d² = 0`.
    pub fn is_exact(&self, exec: Exec) -> bool {
        self.window.d_squared_zero() && self.window.is_exact_interior(exec)
    }

    /// `dim T_j = dim T_{j+p}` for all `j < n` in the window.
    pub fn is_periodic_below_splice(&self) -> bool {
        let dims = self.window.term_dims();
        let lo = self.window.lo;
        (0..dims.len()).all(|i| {
            let j = lo + i as i64;
            let k = i + self.p;
            j >= self.n as i64 || k >= dims.len() || dims[i] == dims[k]
        })
    }

    /// Checks the chain-map equations `d_{j+1} θ_{j+1} = θ_j d^T_{j+1}` for `0 <= j < n`.
    pub fn theta_is_chain_map(&self, res: &Resolution<F>) -> bool {
        let Some(thetas) = &self.theta else { return false };
        if self.is_zero() {
            return true;
        }
        let s = Splice { res, n: self.n as i64, p: self.p as i64, glue: &self.glue };
        (0..self.n).all(|j| {
            let (Some(d_p), Ok(d_t)) = (res.differential(j + 1), s.diff(j as i64 + 1)) else {
                return false;
            };
            let left = if j + 1 == self.n { d_p.clone() } else { d_p.mul(&thetas[j + 1]) };
            left == thetas[j].mul(&d_t)
        })
    }

    /// Cokernel dimensions `dim Ω_i(T) = dim T_i - rank d_{i+1}` for interior degrees.
    pub fn cokernel_dims(&self) -> Vec<(i64, usize)> {
        let dims = self.window.term_dims();
        (0..self.window.diffs.len())
            .map(|i| (self.window.lo + i as i64, dims[i] - self.window.diffs[i].rank()))
            .collect()
    }
}

/// `P_0 <- P_1 <- ... <- P_length` with `P_{j+p} = P_j` and `d_{j+p} = d_j`
/// for `j >= 1`, for a module with `Ω^p ≅ Ω^0`. It is the negative part of
/// the complete resolution, shifted up.
pub fn periodic_resolution<F: Field>(
    res: &Resolution<F>,
    cert: &PeriodicityCertificate<F>,
    length: usize,
) -> Result<ProjComplex<F>> {
    if cert.n != 0 || cert.is_trivial() {
        return Err(Error::Hypothesis(format!(
            "module is not periodic (first periodic syzygy {}, period {})",
            cert.n, cert.p
        )));
    }
    let p = cert.p as i64;
    let lo = -p * (length as i64 / p + 1);
    let mut window = complete_resolution(res, cert, lo, lo + length as i64)?.window;
    window.lo = 0;
    Ok(window)
}

/// Applies `Hom(-, A)` for the regular module and checks that the result is
/// exact at every degree of `degrees` (which needs one degree of slack on each side).
pub fn verify_total_acyclicity<F: Field>(
    t: &CompleteResolution<F>,
    degrees: std::ops::RangeInclusive<i64>,
    exec: Exec,
) -> Result<bool> {
    if t.is_zero() {
        return Ok(true);
    }
    let regular = FdModule::regular(t.algebra().clone());
    let dims = crate::cohomology::hom_cohomology(&t.window, &regular, degrees, false, exec)?;
    Ok(dims.iter().all(|&d| d == 0))
}
