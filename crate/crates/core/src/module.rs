//! Finite-dimensional modules, projective covers, Hom spaces and
//! isomorphism certificates.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{same_algebra, AlgebraRef, BasisAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};

/// Default number of random trials for [`iso_test`] over `field`.
pub fn default_trials<F: Field>(field: &F) -> usize {
    match field.order() {
        Some(q) if q < 32003 => 256,
        _ => 64,
    }
}

/// A subspace of `k^n` stored as a reduced column basis: column `j` has a 1
/// in row `pivots[j]` and zeros in the other pivot rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    pub basis: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// The column span of `span`.
    pub fn from_span(span: &Matrix<F>) -> Self {
        let f = span.field().clone();
        let (r, pivots) = span.transpose().rref();
        let rows = span.rows();
        let cols: Vec<Vec<F::Elem>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { basis: Matrix::from_columns(&f, rows, &cols), pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of every column of `m`, whose columns lie in the subspace.
    pub fn coords_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        m.select_rows(&self.pivots)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.basis.field();
        let back = self.basis.mul_vec(&self.coords(v));
        back.iter().zip(v).all(|(a, b)| f.sub(a, b) == f.zero())
    }
}

/// A left module over a [`BasisAlgebra`], stored through the action of the
/// algebra's generators (idempotents, then degree-one elements).
#[derive(Clone, Debug)]
pub struct FdModule<F: Field> {
    algebra: AlgebraRef<F>,
    dim: usize,
    gens: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for FdModule<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dim == other.dim && self.gens == other.gens
    }
}

impl<F: Field> FdModule<F> {
    /// Validates shapes and that the idempotents act as a complete set of
    /// orthogonal projections.
    pub fn new(algebra: AlgebraRef<F>, dim: usize, gens: Vec<Matrix<F>>) -> Result<Self> {
        if gens.len() != algebra.num_generators() {
            return Err(Error::DimensionMismatch { expected: algebra.num_generators(), found: gens.len() });
        }
        if let Some(g) = gens.iter().find(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: g.rows().max(g.cols()) });
        }
        let m = FdModule { algebra, dim, gens };
        if !m.idempotents_act_correctly() {
            return Err(Error::MalformedAlgebra("idempotents do not act as a complete orthogonal set".into()));
        }
        Ok(m)
    }

    fn from_parts_unchecked(algebra: AlgebraRef<F>, dim: usize, gens: Vec<Matrix<F>>) -> Self {
        FdModule { algebra, dim, gens }
    }

    pub fn zero(algebra: AlgebraRef<F>) -> Self {
        let f = algebra.field().clone();
        let gens = (0..algebra.num_generators()).map(|_| Matrix::zeros(&f, 0, 0)).collect();
        FdModule { algebra, dim: 0, gens }
    }

    pub fn algebra(&self) -> &AlgebraRef<F> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn generator_actions(&self) -> &[Matrix<F>] {
        &self.gens
    }
    pub fn idempotent_action(&self, k: usize) -> &Matrix<F> {
        &self.gens[k]
    }

    fn gen_index(&self, b: usize) -> usize {
        let a = &self.algebra;
        if a.degree(b) == 0 {
            a.idempotents().iter().position(|&e| e == b).expect("degree-0 basis elements are idempotents")
        } else {
            a.num_idempotents() + a.arrows().binary_search(&b).expect("degree-one element")
        }
    }

    /// Action matrix of an arbitrary basis element.
    pub fn action(&self, b: usize) -> Matrix<F> {
        match self.algebra.factor(b) {
            None => self.gens[self.gen_index(b)].clone(),
            Some((g, r)) => self.gens[self.gen_index(g)].mul(&self.action(r)),
        }
    }

    /// `ρ(b) v` for every `b` in `right_basis(k)`, assuming `e_k v = v`.
    pub fn orbit(&self, k: usize, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let a = &self.algebra;
        let mut slot: Vec<Option<Vec<F::Elem>>> = vec![None; a.dim()];
        for &b in a.by_degree() {
            if a.right_idem(b) != k {
                continue;
            }
            slot[b] = Some(match a.factor(b) {
                None => v.to_vec(),
                Some((g, r)) => self.gens[self.gen_index(g)].mul_vec(slot[r].as_ref().expect("degree order")),
            });
        }
        a.right_basis(k).iter().map(|&b| slot[b].take().expect("filled")).collect()
    }

    /// `ρ(b) B` for every `b` in `right_basis(k)`.
    pub fn orbit_matrix(&self, k: usize, base: &Matrix<F>) -> Vec<Matrix<F>> {
        let a = &self.algebra;
        let mut slot: Vec<Option<Matrix<F>>> = vec![None; a.dim()];
        for &b in a.by_degree() {
            if a.right_idem(b) != k {
                continue;
            }
            slot[b] = Some(match a.factor(b) {
                None => base.clone(),
                Some((g, r)) => self.gens[self.gen_index(g)].mul(slot[r].as_ref().expect("degree order")),
            });
        }
        a.right_basis(k).iter().map(|&b| slot[b].take().expect("filled")).collect()
    }

    fn idempotents_act_correctly(&self) -> bool {
        let f = self.field();
        let n = self.algebra.num_idempotents();
        let mut sum = Matrix::zeros(f, self.dim, self.dim);
        for i in 0..n {
            for j in 0..n {
                let p = self.gens[i].mul(&self.gens[j]);
                let expect = if i == j { self.gens[i].clone() } else { Matrix::zeros(f, self.dim, self.dim) };
                if p != expect {
                    return false;
                }
            }
            sum = sum.add(&self.gens[i]);
        }
        sum == Matrix::identity(f, self.dim)
    }

    /// Checks `ρ(x)ρ(y) = ρ(xy)` on all basis pairs (exhaustive when
    /// `dim(A)^2 * dim(M)^2 <= limit`, otherwise on the generator pairs).
    pub fn respects_multiplication(&self, limit: usize) -> bool {
        let a = &self.algebra;
        let f = self.field();
        let n = a.dim();
        let elems: Vec<usize> = if n * n * self.dim * self.dim <= limit { (0..n).collect() } else { a.generators() };
        let actions: Vec<Matrix<F>> = (0..n).map(|b| self.action(b)).collect();
        let combo = |s: &[(usize, F::Elem)]| {
            let mut acc = Matrix::zeros(f, self.dim, self.dim);
            for (b, c) in s {
                acc = acc.add(&actions[*b].scale(c));
            }
            acc
        };
        let unit_ok = {
            let mut sum = Matrix::zeros(f, self.dim, self.dim);
            for &e in a.idempotents() {
                sum = sum.add(&actions[e]);
            }
            sum == Matrix::identity(f, self.dim)
        };
        unit_ok && elems.iter().all(|&x| elems.iter().all(|&y| actions[x].mul(&actions[y]) == combo(a.product(x, y))))
    }

    /// The left regular module `A` with basis coordinates.
    pub fn regular(algebra: AlgebraRef<F>) -> Self {
        let f = algebra.field().clone();
        let n = algebra.dim();
        let gens = algebra
            .generators()
            .iter()
            .map(|&g| {
                let mut m = Matrix::zeros(&f, n, n);
                for b in 0..n {
                    for (c, x) in algebra.product(g, b) {
                        m.set(*c, b, x.clone());
                    }
                }
                m
            })
            .collect();
        Self::from_parts_unchecked(algebra, n, gens)
    }

    /// `A` as a left module over `A^e = A ⊗ A^op`, acting by `(x ⊗ y)·m = x m y`.
    pub fn regular_bimodule(a: &BasisAlgebra<F>, enveloping: AlgebraRef<F>) -> Result<Self> {
        let n = a.dim();
        if enveloping.dim() != n * n || enveloping.num_idempotents() != a.num_idempotents().pow(2) {
            return Err(Error::AlgebraMismatch);
        }
        let f = a.field().clone();
        let gens = enveloping
            .generators()
            .iter()
            .map(|&k| {
                let (i, j) = (k / n, k % n);
                let mut m = Matrix::zeros(&f, n, n);
                for b in 0..n {
                    for (c, x) in a.product(i, b) {
                        for (d, y) in a.product(*c, j) {
                            let v = f.mul_add(m.get(*d, b), x, y);
                            m.set(*d, b, v);
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_parts_unchecked(enveloping, n, gens))
    }

    /// The simple module at idempotent `k`.
    pub fn simple(algebra: AlgebraRef<F>, k: usize) -> Result<Self> {
        let count = algebra.num_idempotents();
        if k >= count {
            return Err(Error::BadIdempotent { index: k, count });
        }
        let f = algebra.field().clone();
        let gens = (0..algebra.num_generators())
            .map(|g| if g == k { Matrix::identity(&f, 1) } else { Matrix::zeros(&f, 1, 1) })
            .collect();
        Ok(Self::from_parts_unchecked(algebra, 1, gens))
    }

    /// The indecomposable projective `A e_k`.
    pub fn projective(algebra: AlgebraRef<F>, k: usize) -> Result<Self> {
        let count = algebra.num_idempotents();
        if k >= count {
            return Err(Error::BadIdempotent { index: k, count });
        }
        Ok(ProjModule::new(vec![k]).to_module(&algebra))
    }

    /// The k-dual, a module over `opposite` (which must be the opposite of this module's algebra).
    pub fn dual(&self, opposite: AlgebraRef<F>) -> Result<Self> {
        let a = &self.algebra;
        if opposite.dim() != a.dim() || opposite.generators() != a.generators() {
            return Err(Error::AlgebraMismatch);
        }
        let gens = self.gens.iter().map(Matrix::transpose).collect();
        Ok(Self::from_parts_unchecked(opposite, self.dim, gens))
    }

    /// Restriction to an invariant subspace.
    pub fn restrict(&self, sub: &Subspace<F>) -> Self {
        let gens = self.gens.iter().map(|g| sub.coords_matrix(&g.mul(&sub.basis))).collect();
        Self::from_parts_unchecked(self.algebra.clone(), sub.dim(), gens)
    }

    /// Whether the column span of `span` is closed under the action.
    pub fn is_invariant(&self, span: &Matrix<F>) -> bool {
        let sub = Subspace::from_span(span);
        self.gens.iter().all(|g| {
            let img = g.mul(&sub.basis);
            (0..img.cols()).all(|c| sub.contains(&img.column(c)))
        })
    }

    /// Spanning columns of `rad(A) · S` for the subspace spanned by `span`.
    pub fn radical_span(&self, span: &Matrix<F>) -> Matrix<F> {
        let f = self.field();
        let k = self.algebra.num_idempotents();
        let mut out = Matrix::zeros(f, self.dim, 0);
        for g in &self.gens[k..] {
            out = out.hstack(&g.mul(span));
        }
        out
    }

    /// `rad M` together with its inclusion into `M`.
    pub fn radical(&self) -> (Self, Matrix<F>) {
        let rad = Subspace::from_span(&self.radical_span(&Matrix::identity(self.field(), self.dim)));
        (self.restrict(&rad), rad.basis)
    }

    /// `dim e_k (M / rad M)` for each idempotent.
    pub fn top(&self) -> Vec<usize> {
        let rad = self.radical_span(&Matrix::identity(self.field(), self.dim));
        (0..self.algebra.num_idempotents()).map(|k| self.gens[k].rank() - self.gens[k].mul(&rad).rank()).collect()
    }

    /// Projective cover of `M`.
    pub fn projective_cover(&self) -> Cover<F> {
        cover_of_span(self, &Matrix::identity(self.field(), self.dim))
    }
}

/// `⊕_l A e_{k_l}`; coordinates run through `right_basis(k_l)` for each summand in turn.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProjModule {
    pub summands: Vec<usize>,
}

impl ProjModule {
    pub fn new(summands: Vec<usize>) -> Self {
        ProjModule { summands }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn dim<F: Field>(&self, a: &BasisAlgebra<F>) -> usize {
        self.summands.iter().map(|&k| a.right_basis(k).len()).sum()
    }

    pub fn offsets<F: Field>(&self, a: &BasisAlgebra<F>) -> Vec<usize> {
        let mut acc = 0;
        self.summands
            .iter()
            .map(|&k| {
                let o = acc;
                acc += a.right_basis(k).len();
                o
            })
            .collect()
    }

    /// Coordinates of the summand generators `e_{k_l}`.
    pub fn generator_coords<F: Field>(&self, a: &BasisAlgebra<F>) -> Vec<usize> {
        self.offsets(a).iter().zip(&self.summands).map(|(o, &k)| o + a.position(a.idempotents()[k])).collect()
    }

    /// Coordinates of the radical complement (degree-0 positions), i.e. the generators.
    pub fn degree_zero_coords<F: Field>(&self, a: &BasisAlgebra<F>) -> Vec<usize> {
        self.generator_coords(a)
    }

    /// Multiplicity of each idempotent among the summands.
    pub fn multiplicities(&self, count: usize) -> Vec<usize> {
        let mut m = vec![0; count];
        for &k in &self.summands {
            m[k] += 1;
        }
        m
    }

    pub fn to_module<F: Field>(&self, a: &AlgebraRef<F>) -> FdModule<F> {
        let f = a.field().clone();
        let n = self.dim(a);
        let offsets = self.offsets(a);
        let gens = a
            .generators()
            .iter()
            .map(|&g| {
                let mut m = Matrix::zeros(&f, n, n);
                for (&k, &o) in self.summands.iter().zip(&offsets) {
                    for (pos, &b) in a.right_basis(k).iter().enumerate() {
                        for (c, x) in a.product(g, b) {
                            m.set(o + a.position(*c), o + pos, x.clone());
                        }
                    }
                }
                m
            })
            .collect();
        FdModule::from_parts_unchecked(a.clone(), n, gens)
    }

    /// Matrix (in coordinates of `target`) of the module map sending the
    /// generator of summand `l` to `images[l]`.
    pub fn map_from_images<F: Field>(&self, target: &FdModule<F>, images: &[Vec<F::Elem>]) -> Matrix<F> {
        let a = target.algebra();
        let mut cols = Vec::with_capacity(self.dim(a));
        for (&k, v) in self.summands.iter().zip(images) {
            cols.extend(target.orbit(k, v));
        }
        Matrix::from_columns(a.field(), target.dim(), &cols)
    }
}

/// A projective cover `P -> S` of a submodule `S` of some ambient module.
#[derive(Clone, Debug)]
pub struct Cover<F: Field> {
    pub proj: ProjModule,
    /// Generator images in ambient coordinates.
    pub generators: Vec<Vec<F::Elem>>,
    /// The map `P -> ambient`.
    pub map: Matrix<F>,
}

/// Projective cover of the submodule of `ambient` spanned by the columns of `span`.
pub fn cover_of_span<F: Field>(ambient: &FdModule<F>, span: &Matrix<F>) -> Cover<F> {
    let a = ambient.algebra();
    let f = a.field();
    let count = a.num_idempotents();
    // e_k rad(S) is spanned by g S over the arrows g with e_k g = g.
    let arrow_images: Vec<(usize, Matrix<F>)> =
        a.arrows().iter().enumerate().map(|(i, &g)| (a.left_idem(g), ambient.gens[count + i].mul(span))).collect();
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    for k in 0..count {
        let e = ambient.idempotent_action(k);
        let mut ech = Echelon::new(f, ambient.dim());
        for (_, img) in arrow_images.iter().filter(|(l, _)| *l == k) {
            for c in 0..img.cols() {
                ech.insert(&img.column(c));
            }
        }
        let es = e.mul(span);
        for c in 0..es.cols() {
            let v = es.column(c);
            if ech.insert(&v).is_some() {
                summands.push(k);
                generators.push(v);
            }
        }
    }
    let proj = ProjModule::new(summands);
    let map = proj.map_from_images(ambient, &generators);
    Cover { proj, generators, map }
}

/// A module homomorphism given by its matrix in the two coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    pub matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn intertwines(&self, source: &FdModule<F>, target: &FdModule<F>) -> bool {
        if self.matrix.rows() != target.dim() || self.matrix.cols() != source.dim() {
            return false;
        }
        source
            .generator_actions()
            .iter()
            .zip(target.generator_actions())
            .all(|(s, t)| self.matrix.mul(s) == t.mul(&self.matrix))
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.rows()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.matrix.rows() == 0 && self.matrix.cols() == 0 {
            return Some(self.clone());
        }
        self.matrix.inverse().map(|matrix| ModuleMap { matrix })
    }
}

/// A finite presentation `P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ModPresentation<F: Field> {
    pub proj: ProjModule,
    /// `P_0 -> M` in the coordinates of `M`.
    pub pi: Matrix<F>,
    /// Generators of `ker pi` (idempotent, coordinates in `P_0`).
    pub relations: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> ModPresentation<F> {
    pub fn of(m: &FdModule<F>) -> Self {
        let c0 = m.projective_cover();
        let a = m.algebra();
        let p0 = c0.proj.to_module(a);
        let ker = c0.map.kernel_basis();
        let c1 = cover_of_span(&p0, &ker);
        let relations = c1.proj.summands.iter().copied().zip(c1.generators).collect();
        ModPresentation { proj: c0.proj, pi: c0.map, relations }
    }
}

/// Bases of `e_k N` and their orbits `ρ(b) B_k`, shared by Hom and Ext computations.
#[derive(Clone, Debug)]
pub struct CornerOrbits<F: Field> {
    pub bases: Vec<Matrix<F>>,
    pub orbits: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> CornerOrbits<F> {
    pub fn new(n: &FdModule<F>) -> Self {
        let count = n.algebra().num_idempotents();
        let bases: Vec<Matrix<F>> = (0..count)
            .map(|k| {
                let e = n.idempotent_action(k);
                let idx = e.independent_columns();
                e.select_columns(&idx)
            })
            .collect();
        let orbits = bases.iter().enumerate().map(|(k, b)| n.orbit_matrix(k, b)).collect();
        CornerOrbits { bases, orbits }
    }

    pub fn corner_dim(&self, k: usize) -> usize {
        self.bases[k].cols()
    }

    /// Matrix of `Hom(P, N) -> Hom(Q, N)` induced by a map `Q -> P` whose
    /// generator images (in `P` coordinates) are `images`, using
    /// `Hom(⊕ A e_k, N) = ⊕ e_k N`. Rows are indexed by `(summand of Q, N coords)`.
    pub fn pullback_matrix(
        &self,
        algebra: &BasisAlgebra<F>,
        p: &ProjModule,
        images: &[Vec<F::Elem>],
        n_dim: usize,
    ) -> Matrix<F> {
        let f = algebra.field();
        let offsets = p.offsets(algebra);
        let col_off: Vec<usize> = {
            let mut acc = 0;
            p.summands
                .iter()
                .map(|&k| {
                    let o = acc;
                    acc += self.corner_dim(k);
                    o
                })
                .collect()
        };
        let width: usize = p.summands.iter().map(|&k| self.corner_dim(k)).sum();
        let mut out = Matrix::zeros(f, images.len() * n_dim, width);
        for (m, w) in images.iter().enumerate() {
            for (l, &k) in p.summands.iter().enumerate() {
                let d = self.corner_dim(k);
                if d == 0 {
                    continue;
                }
                for (pos, orb) in self.orbits[k].iter().enumerate() {
                    let c = &w[offsets[l] + pos];
                    if f.is_zero(c) {
                        continue;
                    }
                    for r in 0..n_dim {
                        for j in 0..d {
                            let x = orb.get(r, j);
                            if !f.is_zero(x) {
                                let cell = (m * n_dim + r, col_off[l] + j);
                                let v = f.mul_add(out.get(cell.0, cell.1), c, x);
                                out.set(cell.0, cell.1, v);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// `Hom_A(M, N)` computed from a presentation of `M`.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pres: ModPresentation<F>,
    corners: CornerOrbits<F>,
    /// Columns: a basis of the solution space in corner coordinates.
    solutions: Matrix<F>,
    source_dim: usize,
    target_dim: usize,
    independent: Vec<usize>,
    pi_inv: Option<Matrix<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn new(m: &FdModule<F>, n: &FdModule<F>) -> Result<Self> {
        Self::with_presentation(ModPresentation::of(m), m.dim(), n)
    }

    pub fn with_presentation(pres: ModPresentation<F>, source_dim: usize, n: &FdModule<F>) -> Result<Self> {
        let a = n.algebra();
        let corners = CornerOrbits::new(n);
        let images: Vec<Vec<F::Elem>> = pres.relations.iter().map(|r| r.1.clone()).collect();
        let sys = corners.pullback_matrix(a, &pres.proj, &images, n.dim());
        let solutions = sys.kernel_basis();
        let independent = pres.pi.independent_columns();
        if independent.len() != source_dim {
            return Err(Error::Inconsistency("presentation map is not surjective".into()));
        }
        let pi_inv = pres.pi.select_columns(&independent).inverse();
        if source_dim > 0 && pi_inv.is_none() {
            return Err(Error::Inconsistency("presentation map has no section".into()));
        }
        Ok(HomSpace { pres, corners, solutions, source_dim, target_dim: n.dim(), independent, pi_inv })
    }

    pub fn dim(&self) -> usize {
        self.solutions.cols()
    }

    /// The map determined by corner coordinates `t`.
    pub fn map_from_coords(&self, t: &[F::Elem]) -> ModuleMap<F> {
        let f = self.solutions.field();
        if self.source_dim == 0 {
            return ModuleMap { matrix: Matrix::zeros(f, self.target_dim, 0) };
        }
        let mut cols = Vec::with_capacity(self.independent.len());
        let mut off = 0;
        let mut blocks = Vec::new();
        for &k in &self.pres.proj.summands {
            let d = self.corners.corner_dim(k);
            blocks.push(t[off..off + d].to_vec());
            off += d;
        }
        let mut coord_cols: Vec<Vec<F::Elem>> = Vec::new();
        for (l, &k) in self.pres.proj.summands.iter().enumerate() {
            for orb in &self.corners.orbits[k] {
                coord_cols.push(orb.mul_vec(&blocks[l]));
            }
        }
        for &c in &self.independent {
            cols.push(coord_cols[c].clone());
        }
        let fp = Matrix::from_columns(f, self.target_dim, &cols);
        ModuleMap { matrix: fp.mul(self.pi_inv.as_ref().expect("section")) }
    }

    pub fn basis(&self) -> Vec<ModuleMap<F>> {
        (0..self.dim()).map(|j| self.map_from_coords(&self.solutions.column(j))).collect()
    }

    /// A random element, coefficients drawn from `rng`.
    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> ModuleMap<F> {
        let f = self.solutions.field();
        let coeffs: Vec<F::Elem> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.map_from_coords(&self.solutions.mul_vec(&coeffs))
    }
}

/// Basis of `Hom_A(m, n)`.
pub fn hom_space<F: Field>(m: &FdModule<F>, n: &FdModule<F>) -> Result<Vec<ModuleMap<F>>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(HomSpace::new(m, n)?.basis())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome<F: Field> {
    /// A verified invertible module map `m -> n`.
    Isomorphic(ModuleMap<F>),
    /// Definite: dimensions, tops or Hom spaces rule out an isomorphism.
    NotIsomorphic(String),
    /// No invertible map among the sampled ones.
    NoWitness { trials: usize },
}

impl<F: Field> IsoOutcome<F> {
    pub fn witness(&self) -> Option<&ModuleMap<F>> {
        match self {
            IsoOutcome::Isomorphic(w) => Some(w),
            _ => None,
        }
    }
}

/// Looks for an isomorphism `m -> n` by sampling `Hom(m, n)`. Positive answers carry a checked certificate.
pub fn iso_test<F: Field>(m: &FdModule<F>, n: &FdModule<F>, trials: usize, seed: u64) -> Result<IsoOutcome<F>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoOutcome::NotIsomorphic(format!("dimensions {} and {}", m.dim(), n.dim())));
    }
    if m.top() != n.top() {
        return Ok(IsoOutcome::NotIsomorphic("tops differ".into()));
    }
    let f = m.field();
    if m == n {
        let id = ModuleMap { matrix: Matrix::identity(f, m.dim()) };
        return Ok(IsoOutcome::Isomorphic(id));
    }
    iso_search(HomSpace::new(m, n)?, m, n, trials, seed)
}

pub(crate) fn iso_search<F: Field>(
    hom: HomSpace<F>,
    m: &FdModule<F>,
    n: &FdModule<F>,
    trials: usize,
    seed: u64,
) -> Result<IsoOutcome<F>> {
    if m.dim() == 0 && n.dim() == 0 {
        return Ok(IsoOutcome::Isomorphic(ModuleMap { matrix: Matrix::zeros(m.field(), 0, 0) }));
    }
    if hom.dim() == 0 {
        return Ok(IsoOutcome::NotIsomorphic("Hom space is zero".into()));
    }
    let accept = |w: ModuleMap<F>| (w.is_invertible() && w.intertwines(m, n)).then_some(w);
    for w in hom.basis() {
        if let Some(w) = accept(w) {
            return Ok(IsoOutcome::Isomorphic(w));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        if let Some(w) = accept(hom.random(&mut rng)) {
            return Ok(IsoOutcome::Isomorphic(w));
        }
    }
    Ok(IsoOutcome::NoWitness { trials })
}

/// Wraps an algebra for module constructors.
pub fn shared<F: Field>(a: BasisAlgebra<F>) -> AlgebraRef<F> {
    Arc::new(a)
}
