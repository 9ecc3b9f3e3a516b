//! Minimal projective resolutions, syzygies and eventual periodicity.

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{
    cover_of_span, iso_search, FdModule, HomSpace, IsoOutcome, ModPresentation, ModuleMap, ProjModule, Subspace,
};

/// Default search bounds for periodicity detection.
pub const DEFAULT_N_MAX: usize = 12;
pub const DEFAULT_P_MAX: usize = 12;

/// A bounded complex of projectives: `terms[j]` sits in degree `lo + j` and
/// `diffs[j]` maps `terms[j + 1] -> terms[j]` (in projective coordinates).
#[derive(Clone, Debug)]
pub struct ProjComplex<F: Field> {
    pub algebra: AlgebraRef<F>,
    pub lo: i64,
    pub terms: Vec<ProjModule>,
    pub diffs: Vec<Matrix<F>>,
}

impl<F: Field> ProjComplex<F> {
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, deg: i64) -> Option<&ProjModule> {
        usize::try_from(deg - self.lo).ok().and_then(|i| self.terms.get(i))
    }

    /// `d_deg : T_deg -> T_{deg-1}`.
    pub fn diff(&self, deg: i64) -> Option<&Matrix<F>> {
        usize::try_from(deg - self.lo - 1).ok().and_then(|i| self.diffs.get(i))
    }

    /// Generator images of `d_deg` in the coordinates of `T_{deg-1}`.
    pub fn generator_images(&self, deg: i64) -> Option<Vec<Vec<F::Elem>>> {
        let d = self.diff(deg)?;
        let src = self.term(deg)?;
        Some(src.generator_coords(&self.algebra).iter().map(|&c| d.column(c)).collect())
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim(&self.algebra)).collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// No differential reaches a degree-0 coordinate of its target.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().enumerate().all(|(j, d)| {
            let rows = self.terms[j].generator_coords(&self.algebra);
            rows.iter().all(|&r| d.row(r).iter().all(|x| self.algebra.field().is_zero(x)))
        })
    }

    /// Exactness at every interior term, by ranks.
    pub fn is_exact_interior(&self, exec: Exec) -> bool {
        let ranks = exec.map(&self.diffs, |d| d.rank());
        let dims = self.term_dims();
        (1..self.terms.len().saturating_sub(1)).all(|j| dims[j] - ranks[j - 1] == ranks[j])
    }
}

/// A minimal projective resolution `P_L -> ... -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub module: FdModule<F>,
    pub terms: Vec<ProjModule>,
    pub augmentation: Matrix<F>,
    /// `differentials[k - 1] = d_k : P_k -> P_{k-1}`.
    pub differentials: Vec<Matrix<F>>,
    /// `syzygies[k - 1] = Ω^k ⊆ P_{k-1}`.
    pub syzygies: Vec<Subspace<F>>,
    /// Set when some syzygy vanished within the computed length.
    pub projective_dimension: Option<usize>,
    modules: Vec<FdModule<F>>,
}

/// Computes `P_0, ..., P_length` (fewer if a syzygy vanishes) and `Ω^{length+1}`.
pub fn minimal_resolution<F: Field>(m: &FdModule<F>, length: usize) -> Resolution<F> {
    minimal_resolution_with(m, length, Exec::default())
}

pub fn minimal_resolution_with<F: Field>(m: &FdModule<F>, length: usize, exec: Exec) -> Resolution<F> {
    let a = m.algebra().clone();
    let cover = m.projective_cover();
    let ker = cover.map.kernel_basis_with(exec.for_work(cover.map.rows() * cover.map.cols() * cover.map.cols()));
    let mut res = Resolution {
        module: m.clone(),
        modules: vec![cover.proj.to_module(&a)],
        terms: vec![cover.proj],
        augmentation: cover.map,
        differentials: Vec::new(),
        syzygies: vec![Subspace::from_span(&ker)],
        projective_dimension: None,
    };
    for k in 1..=length {
        let syz = &res.syzygies[k - 1];
        if syz.dim() == 0 {
            break;
        }
        let x = &res.modules[k - 1];
        let cover = cover_of_span(x, &syz.basis);
        let work = cover.map.rows() * cover.map.cols() * cover.map.cols();
        let ker = cover.map.kernel_basis_with(exec.for_work(work));
        res.modules.push(cover.proj.to_module(&a));
        res.terms.push(cover.proj);
        res.differentials.push(cover.map);
        res.syzygies.push(Subspace::from_span(&ker));
    }
    if res.syzygies.last().is_some_and(|s| s.dim() == 0) {
        res.projective_dimension = Some(res.terms.len() - 1);
    }
    if m.is_zero() {
        res.projective_dimension = Some(0);
    }
    res
}

impl<F: Field> Resolution<F> {
    pub fn algebra(&self) -> &AlgebraRef<F> {
        self.module.algebra()
    }

    /// Index of the last computed term.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term_module(&self, k: usize) -> &FdModule<F> {
        &self.modules[k]
    }

    pub fn differential(&self, k: usize) -> Option<&Matrix<F>> {
        if k == 0 {
            None
        } else {
            self.differentials.get(k - 1)
        }
    }

    /// Term `P_k`, the zero module beyond a finite projective dimension.
    pub fn term(&self, k: usize) -> Option<ProjModule> {
        match self.terms.get(k) {
            Some(t) => Some(t.clone()),
            None if self.projective_dimension.is_some() => Some(ProjModule::default()),
            None => None,
        }
    }

    /// Number of syzygies known: `Ω^0 .. Ω^{syzygy_count() - 1}`.
    pub fn syzygy_count(&self) -> usize {
        self.syzygies.len() + 1
    }

    pub fn syzygy_dim(&self, k: usize) -> Option<usize> {
        if k == 0 {
            return Some(self.module.dim());
        }
        match self.syzygies.get(k - 1) {
            Some(s) => Some(s.dim()),
            None if self.projective_dimension.is_some() => Some(0),
            None => None,
        }
    }

    pub fn syzygy_dims(&self) -> Vec<usize> {
        (0..self.syzygy_count()).map(|k| self.syzygy_dim(k).expect("known")).collect()
    }

    /// `Ω^k` as a module in the reduced coordinates of its subspace basis.
    pub fn syzygy_module(&self, k: usize) -> Option<FdModule<F>> {
        if k == 0 {
            return Some(self.module.clone());
        }
        match self.syzygies.get(k - 1) {
            Some(s) => Some(self.modules[k - 1].restrict(s)),
            None if self.projective_dimension.is_some() => Some(FdModule::zero(self.algebra().clone())),
            None => None,
        }
    }

    /// The cover `P_k -> Ω^k` in the coordinates of `Ω^k`.
    pub fn cover_map(&self, k: usize) -> Option<Matrix<F>> {
        if k == 0 {
            return Some(self.augmentation.clone());
        }
        let d = self.differentials.get(k - 1)?;
        Some(self.syzygies[k - 1].coords_matrix(d))
    }

    /// Presentation `P_{k+1} -> P_k -> Ω^k -> 0`.
    pub fn presentation(&self, k: usize) -> Option<ModPresentation<F>> {
        let proj = self.terms.get(k)?.clone();
        let pi = self.cover_map(k)?;
        let relations = match self.differentials.get(k) {
            Some(d) => {
                let src = &self.terms[k + 1];
                src.summands
                    .iter()
                    .copied()
                    .zip(src.generator_coords(self.algebra()).iter().map(|&c| d.column(c)))
                    .collect()
            }
            None if self.syzygies[k].dim() == 0 => Vec::new(),
            None => return None,
        };
        Some(ModPresentation { proj, pi, relations })
    }

    /// The complex `P_0 <- P_1 <- ... <- P_L` (augmentation dropped).
    pub fn complex(&self) -> ProjComplex<F> {
        ProjComplex {
            algebra: self.algebra().clone(),
            lo: 0,
            terms: self.terms.clone(),
            diffs: self.differentials.clone(),
        }
    }

    /// `ε d_1 = 0` and `d_k d_{k+1} = 0`.
    pub fn d_squared_zero(&self) -> bool {
        let first = match self.differentials.first() {
            Some(d1) => self.augmentation.mul(d1).is_zero(),
            None => true,
        };
        first && self.complex().d_squared_zero()
    }

    /// `im d_k ⊆ rad P_{k-1}` for every `k`, and `ker ε ⊆ rad P_0`.
    pub fn is_minimal(&self) -> bool {
        let a = self.algebra();
        let top_ok = self.terms[0].multiplicities(a.num_idempotents()) == self.module.top();
        top_ok && self.complex().is_minimal()
    }

    /// Exactness at `M` and at every `P_k` with `k < L`, and the final kernel agrees with `Ω^{L+1}`.
    pub fn is_exact(&self, exec: Exec) -> bool {
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim(self.algebra())).collect();
        let mut ranks = vec![self.augmentation.rank()];
        ranks.extend(exec.map(&self.differentials, |d| d.rank()));
        if ranks[0] != self.module.dim() {
            return false;
        }
        (0..self.terms.len()).all(|k| {
            let kernel = dims[k] - ranks[k];
            match ranks.get(k + 1) {
                Some(&r) => kernel == r,
                None => kernel == self.syzygies[k].dim(),
            }
        })
    }

    /// Endpoint multiplicities of each term: `counts[k][i]` copies of `A e_i` in `P_k`.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        let n = self.algebra().num_idempotents();
        self.terms.iter().map(|t| t.multiplicities(n)).collect()
    }
}

/// `Ω^steps(M)`.
pub fn syzygy<F: Field>(m: &FdModule<F>, steps: usize) -> FdModule<F> {
    if steps == 0 {
        return m.clone();
    }
    minimal_resolution(m, steps - 1).syzygy_module(steps).expect("computed")
}

/// `Ω^{n+p}(M) ≅ Ω^n(M)` with an explicit isomorphism `Ω^{n+p} -> Ω^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityCertificate<F: Field> {
    pub n: usize,
    pub p: usize,
    pub witness: ModuleMap<F>,
    pub seed: u64,
}

impl<F: Field> PeriodicityCertificate<F> {
    /// Re-verifies the witness against the syzygies of `res`.
    pub fn verify(&self, res: &Resolution<F>) -> Result<()> {
        let src = res
            .syzygy_module(self.n + self.p)
            .ok_or_else(|| Error::InvalidCertificate("resolution too short".into()))?;
        let tgt = res.syzygy_module(self.n).ok_or_else(|| Error::InvalidCertificate("resolution too short".into()))?;
        if !self.witness.is_invertible() {
            return Err(Error::InvalidCertificate("witness is not invertible".into()));
        }
        if !self.witness.intertwines(&src, &tgt) {
            return Err(Error::InvalidCertificate("witness is not a module map".into()));
        }
        Ok(())
    }

    /// Whether the certificate records a vanishing syzygy (finite projective dimension).
    pub fn is_trivial(&self) -> bool {
        self.witness.matrix.rows() == 0
    }
}

/// Options for periodicity detection.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub n_max: usize,
    pub p_max: usize,
    pub trials: Option<usize>,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { n_max: DEFAULT_N_MAX, p_max: DEFAULT_P_MAX, trials: None, seed: 0, exec: Exec::default() }
    }
}

impl SearchOptions {
    /// Resolution length needed to test every `(n, p)` within bounds.
    pub fn resolution_length(&self) -> usize {
        self.n_max + self.p_max
    }
}

fn pair_seed(seed: u64, n: usize, p: usize) -> u64 {
    seed ^ ((n as u64) << 32 | p as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Tests `Ω^{n+p} ≅ Ω^n`; returns the witness `Ω^{n+p} -> Ω^n` when one is found.
pub fn syzygy_iso<F: Field>(
    res: &Resolution<F>,
    n: usize,
    p: usize,
    opts: &SearchOptions,
) -> Result<Option<ModuleMap<F>>> {
    let a = res.algebra();
    let (Some(dn), Some(dnp)) = (res.syzygy_dim(n), res.syzygy_dim(n + p)) else {
        return Err(Error::WindowTooSmall(format!("syzygy {} not computed", n + p)));
    };
    if dn != dnp {
        return Ok(None);
    }
    let count = a.num_idempotents();
    let top = |k: usize| res.term(k).map(|t| t.multiplicities(count));
    if top(n) != top(n + p) {
        return Ok(None);
    }
    let src = res.syzygy_module(n).expect("computed");
    let tgt = res.syzygy_module(n + p).expect("computed");
    let pres = res.presentation(n).ok_or_else(|| Error::WindowTooSmall(format!("presentation of syzygy {n}")))?;
    let trials = opts.trials.unwrap_or_else(|| crate::module::default_trials(a.field()));
    let hom = HomSpace::with_presentation(pres, src.dim(), &tgt)?;
    match iso_search(hom, &src, &tgt, trials, pair_seed(opts.seed, n, p))? {
        IsoOutcome::Isomorphic(f) => {
            let w = f.inverse().ok_or_else(|| Error::Inconsistency("certified isomorphism has no inverse".into()))?;
            if !w.intertwines(&tgt, &src) {
                return Err(Error::Inconsistency("inverse witness is not a module map".into()));
            }
            Ok(Some(w))
        }
        _ => Ok(None),
    }
}

/// Least `p <= p_max` with `Ω^{n+p} ≅ Ω^n`; candidates passing the dimension
/// filter are tested concurrently.
pub fn least_period_at<F: Field>(
    res: &Resolution<F>,
    n: usize,
    opts: &SearchOptions,
) -> Result<Option<(usize, ModuleMap<F>)>> {
    let known = res.syzygy_count();
    let dim = |k: usize| res.syzygy_dim(k);
    let candidates: Vec<usize> = (1..=opts.p_max)
        .filter(|&p| n + p < known || res.projective_dimension.is_some())
        .filter(|&p| (0..p).filter(|&i| n + p + i < known).all(|i| dim(n + i) == dim(n + p + i)))
        .collect();
    let results = opts.exec.map(&candidates, |&p| syzygy_iso(res, n, p, opts));
    for (p, r) in candidates.iter().zip(results) {
        if let Some(w) = r? {
            return Ok(Some((*p, w)));
        }
    }
    Ok(None)
}

/// Least `n <= n_max`, then least `p <= p_max`, with `Ω^{n+p}(M) ≅ Ω^n(M)`.
pub fn detect_periodicity<F: Field>(
    res: &Resolution<F>,
    opts: &SearchOptions,
) -> Result<Option<PeriodicityCertificate<F>>> {
    let f = res.algebra().field();
    if let Some(z) = (0..res.syzygy_count()).find(|&k| res.syzygy_dim(k) == Some(0)) {
        if z <= opts.n_max {
            let empty = ModuleMap { matrix: Matrix::zeros(f, 0, 0) };
            return Ok(Some(PeriodicityCertificate { n: z, p: 1, witness: empty, seed: opts.seed }));
        }
        return Ok(None);
    }
    for n in 0..=opts.n_max {
        if let Some((p, witness)) = least_period_at(res, n, opts)? {
            let cert = PeriodicityCertificate { n, p, witness, seed: opts.seed };
            cert.verify(res)?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Resolves `m` far enough and runs [`detect_periodicity`].
pub fn detect_eventual_periodicity<F: Field>(
    m: &FdModule<F>,
    opts: &SearchOptions,
) -> Result<(Resolution<F>, Option<PeriodicityCertificate<F>>)> {
    let res = minimal_resolution_with(m, opts.resolution_length(), opts.exec);
    let cert = detect_periodicity(&res, opts)?;
    Ok((res, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisAlgebra;
    use crate::field::{PrimeField, Rationals};
    use crate::module::shared;
    use crate::presentation::{gamma_presentation, parse_presentation};
    use crate::FieldSpec;

    const KX2: &str = "vertices 1\narrow x : 1 -> 1\nrelation x*x\n";
    const LAMBDA2: &str = "vertices 1 2\narrow a : 1 -> 1\narrow b : 1 -> 2\nrelation a*a\n";

    fn bimodule<F: Field>(text: &str, field: F) -> FdModule<F> {
        let p = parse_presentation(text).unwrap().with_field(field.spec());
        let a = BasisAlgebra::from_presentation(&p, &field, 30).unwrap();
        let env = shared(a.enveloping());
        FdModule::regular_bimodule(&a, env).unwrap()
    }

    #[test]
    fn kx2_over_f2() {
        let m = bimodule(KX2, PrimeField::new(2).unwrap());
        let res = minimal_resolution(&m, 4);
        assert_eq!(res.complex().term_dims(), vec![4; 5]);
        assert_eq!(res.syzygy_dims(), vec![2; 6]);
        assert!(res.d_squared_zero() && res.is_minimal() && res.is_exact(Exec::Sequential));
    }

    #[test]
    fn projectives_resolve_immediately() {
        let p = parse_presentation(LAMBDA2).unwrap();
        let a = shared(BasisAlgebra::from_presentation(&p, &Rationals, 30).unwrap());
        let res = minimal_resolution(&FdModule::projective(a.clone(), 0).unwrap(), 3);
        assert_eq!(res.projective_dimension, Some(0));
        assert_eq!(res.terms.len(), 1);
        let s1 = FdModule::simple(a.clone(), 0).unwrap();
        assert_eq!(syzygy(&s1, 1).dim(), 3);
        assert_eq!(syzygy(&FdModule::projective(a, 1).unwrap(), 1).dim(), 0);
    }

    #[test]
    fn gamma1_simple_has_length_one() {
        let g = gamma_presentation(1, FieldSpec::Rationals);
        let a = shared(BasisAlgebra::from_presentation(&g, &Rationals, 30).unwrap());
        let res = minimal_resolution(&FdModule::simple(a, 0).unwrap(), 5);
        assert_eq!(res.projective_dimension, Some(1));
    }

    #[test]
    fn kx2_periods_depend_on_characteristic() {
        let opts = SearchOptions { n_max: 3, p_max: 3, ..Default::default() };
        let (res, cert) = detect_eventual_periodicity(&bimodule(KX2, PrimeField::new(2).unwrap()), &opts).unwrap();
        let cert = cert.unwrap();
        assert_eq!((cert.n, cert.p), (0, 1));
        cert.verify(&res).unwrap();
        let (res, cert) = detect_eventual_periodicity(&bimodule(KX2, Rationals), &opts).unwrap();
        let cert = cert.unwrap();
        assert_eq!((cert.n, cert.p), (0, 2));
        cert.verify(&res).unwrap();
    }

    #[test]
    fn lambda2_first_periodic_syzygy() {
        let opts = SearchOptions { n_max: 4, p_max: 4, ..Default::default() };
        let (res, cert) = detect_eventual_periodicity(&bimodule(LAMBDA2, Rationals), &opts).unwrap();
        let cert = cert.unwrap();
        assert_eq!(cert.n, 2);
        assert!(syzygy_iso(&res, 2, 2, &opts).unwrap().is_some());
        assert!(res.d_squared_zero() && res.is_minimal() && res.is_exact(Exec::default()));
    }

    #[test]
    fn finite_projective_dimension_certificate() {
        let g = gamma_presentation(1, FieldSpec::Rationals);
        let a = BasisAlgebra::from_presentation(&g, &Rationals, 30).unwrap();
        let env = shared(a.enveloping());
        let m = FdModule::regular_bimodule(&a, env).unwrap();
        let (res, cert) = detect_eventual_periodicity(&m, &SearchOptions::default()).unwrap();
        assert_eq!(res.projective_dimension, Some(1));
        let cert = cert.unwrap();
        assert!(cert.is_trivial());
        assert_eq!(cert.n, 2);
    }
}
