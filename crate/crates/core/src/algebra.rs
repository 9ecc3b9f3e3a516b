//! Finite-dimensional algebras given by a basis and structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::presentation::{enumerate_basis, Presentation, Sparse};

/// A graded basic algebra: an ordered basis, sparse structure constants and
/// a complete set of primitive orthogonal idempotents spanning degree 0.
///
/// Every basis element `b` satisfies `e_i b e_j = b` for exactly one pair of
/// idempotents, and every element of positive degree factors as `g · r` with
/// `g` of degree one. Modules only store the action of the generators
/// (idempotents followed by the degree-one elements) and recover the rest
/// through these factorisations.
#[derive(Clone, Debug)]
pub struct BasisAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    table: Vec<Sparse<F>>,
    idempotents: Vec<usize>,
    degree: Vec<usize>,
    left_idem: Vec<usize>,
    right_idem: Vec<usize>,
    arrows: Vec<usize>,
    factor: Vec<Option<(usize, usize)>>,
    right_basis: Vec<Vec<usize>>,
    position: Vec<usize>,
    by_degree: Vec<usize>,
}

impl<F: Field> PartialEq for BasisAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.table == other.table
            && self.idempotents == other.idempotents
            && self.degree == other.degree
    }
}

impl<F: Field> BasisAlgebra<F> {
    /// Builds an algebra from raw structure constants, deriving the Peirce
    /// data and the factorisations. `table[i * dim + j]` is the product of
    /// basis elements `i` and `j`.
    pub fn from_parts(
        field: F,
        labels: Vec<String>,
        table: Vec<Sparse<F>>,
        idempotents: Vec<usize>,
        degree: Vec<usize>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: table.len() });
        }
        if degree.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: degree.len() });
        }
        if let Some(&(b, _)) = table.iter().flatten().find(|(b, _)| *b >= dim) {
            return Err(Error::MalformedAlgebra(format!("basis index {b} out of range")));
        }
        let one = field.one();
        let is_exactly = |entry: &Sparse<F>, b: usize| entry.len() == 1 && entry[0].0 == b && entry[0].1 == one;
        for (k, &e) in idempotents.iter().enumerate() {
            if e >= dim || degree[e] != 0 {
                return Err(Error::MalformedAlgebra(format!("idempotent {k} is not a degree-0 basis element")));
            }
        }
        let mut left_idem = vec![usize::MAX; dim];
        let mut right_idem = vec![usize::MAX; dim];
        for b in 0..dim {
            for (k, &e) in idempotents.iter().enumerate() {
                let l = &table[e * dim + b];
                if is_exactly(l, b) {
                    if left_idem[b] != usize::MAX {
                        return Err(Error::MalformedAlgebra(format!("`{}` is fixed by two idempotents", labels[b])));
                    }
                    left_idem[b] = k;
                } else if !l.is_empty() {
                    return Err(Error::MalformedAlgebra(format!("`{}` is not Peirce-homogeneous", labels[b])));
                }
                let r = &table[b * dim + e];
                if is_exactly(r, b) {
                    if right_idem[b] != usize::MAX {
                        return Err(Error::MalformedAlgebra(format!("`{}` is fixed by two idempotents", labels[b])));
                    }
                    right_idem[b] = k;
                } else if !r.is_empty() {
                    return Err(Error::MalformedAlgebra(format!("`{}` is not Peirce-homogeneous", labels[b])));
                }
            }
            if left_idem[b] == usize::MAX || right_idem[b] == usize::MAX {
                return Err(Error::MalformedAlgebra(format!("idempotents do not sum to one on `{}`", labels[b])));
            }
        }
        let degree0 = (0..dim).filter(|&b| degree[b] == 0).count();
        if degree0 != idempotents.len() {
            return Err(Error::MalformedAlgebra("degree-0 part is not spanned by the idempotents".into()));
        }
        for b in 0..dim {
            for c in 0..dim {
                for (x, _) in &table[b * dim + c] {
                    if degree[*x] != degree[b] + degree[c] {
                        return Err(Error::MalformedAlgebra("multiplication is not graded".into()));
                    }
                }
            }
        }
        let arrows: Vec<usize> = (0..dim).filter(|&b| degree[b] == 1).collect();
        let mut factor = vec![None; dim];
        for b in 0..dim {
            if degree[b] == 0 {
                continue;
            }
            let found = arrows.iter().find_map(|&g| {
                (0..dim).find(|&r| degree[r] + 1 == degree[b] && is_exactly(&table[g * dim + r], b)).map(|r| (g, r))
            });
            match found {
                Some(f) => factor[b] = Some(f),
                None => {
                    return Err(Error::MalformedAlgebra(format!(
                        "`{}` is not a product of a degree-one element and a basis element",
                        labels[b]
                    )))
                }
            }
        }
        let mut right_basis = vec![Vec::new(); idempotents.len()];
        let mut position = vec![0; dim];
        for b in 0..dim {
            position[b] = right_basis[right_idem[b]].len();
            right_basis[right_idem[b]].push(b);
        }
        let mut by_degree: Vec<usize> = (0..dim).collect();
        by_degree.sort_by_key(|&b| degree[b]);
        Ok(BasisAlgebra {
            field,
            labels,
            table,
            idempotents,
            degree,
            left_idem,
            right_idem,
            arrows,
            factor,
            right_basis,
            position,
            by_degree,
        })
    }

    /// The quotient `kQ/I` with the path basis and vertex idempotents.
    pub fn from_presentation(p: &Presentation, field: &F, length_bound: usize) -> Result<Self> {
        let basis = enumerate_basis(p, field, length_bound)?;
        let dim = basis.dim();
        let labels = basis.paths.iter().map(|q| basis.quiver.path_label(q)).collect();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(basis.multiply(i, j));
            }
        }
        let idempotents = (0..basis.quiver.vertices.len()).collect();
        let degree = (0..dim).map(|i| basis.degree(i)).collect();
        Self::from_parts(field.clone(), labels, table, idempotents, degree)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }
    pub fn degree(&self, b: usize) -> usize {
        self.degree[b]
    }
    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }
    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }
    /// Degree-one basis elements; together with the idempotents they generate the algebra.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    /// Idempotents followed by arrows: the elements whose action a module stores.
    pub fn generators(&self) -> Vec<usize> {
        self.idempotents.iter().chain(&self.arrows).copied().collect()
    }
    pub fn num_generators(&self) -> usize {
        self.idempotents.len() + self.arrows.len()
    }
    /// Index `k` with `e_k b = b`.
    pub fn left_idem(&self, b: usize) -> usize {
        self.left_idem[b]
    }
    /// Index `k` with `b e_k = b`.
    pub fn right_idem(&self, b: usize) -> usize {
        self.right_idem[b]
    }
    /// `b = g · r` with `g` of degree one, for `b` of positive degree.
    pub fn factor(&self, b: usize) -> Option<(usize, usize)> {
        self.factor[b]
    }
    /// Basis of `A e_k`, in basis order.
    pub fn right_basis(&self, k: usize) -> &[usize] {
        &self.right_basis[k]
    }
    /// Position of `b` inside `right_basis(right_idem(b))`.
    pub fn position(&self, b: usize) -> usize {
        self.position[b]
    }
    /// All basis indices sorted by degree (stable).
    pub fn by_degree(&self) -> &[usize] {
        &self.by_degree
    }
    pub fn table(&self) -> &[Sparse<F>] {
        &self.table
    }
    pub fn product(&self, i: usize, j: usize) -> &Sparse<F> {
        &self.table[i * self.dim() + j]
    }

    /// Multiplies two coordinate vectors.
    pub fn mul_elems(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !f.is_zero(a)) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !f.is_zero(b)) {
                let ab = f.mul(a, b);
                for (k, c) in self.product(i, j) {
                    out[*k] = f.mul_add(&out[*k], &ab, c);
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for &e in &self.idempotents {
            v[e] = self.field.one();
        }
        v
    }

    /// Columns span the radical (all basis elements of positive degree).
    pub fn radical_basis(&self) -> Matrix<F> {
        let f = &self.field;
        let cols: Vec<Vec<F::Elem>> = (0..self.dim())
            .filter(|&b| self.degree[b] > 0)
            .map(|b| {
                let mut v = vec![f.zero(); self.dim()];
                v[b] = f.one();
                v
            })
            .collect();
        Matrix::from_columns(f, self.dim(), &cols)
    }

    pub fn radical_dim(&self) -> usize {
        self.degree.iter().filter(|&&d| d > 0).count()
    }

    /// Checks `(xy)z = x(yz)` on all basis triples when `dim <= exhaustive`,
    /// otherwise on `samples` seeded random triples.
    pub fn is_associative(&self, exhaustive: usize, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let n = self.dim();
        let unit = |b: usize| {
            let mut v = vec![self.field.zero(); n];
            v[b] = self.field.one();
            v
        };
        let check = |x: usize, y: usize, z: usize| {
            let (ex, ey, ez) = (unit(x), unit(y), unit(z));
            self.mul_elems(&self.mul_elems(&ex, &ey), &ez) == self.mul_elems(&ex, &self.mul_elems(&ey, &ez))
        };
        if n <= exhaustive {
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| check(x, y, z))))
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..samples).all(|_| check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)))
        }
    }

    /// `e_i e_j = δ_ij e_i` and `Σ e_i` acts as the identity on every basis element.
    pub fn idempotents_complete(&self) -> bool {
        let f = &self.field;
        let orth = self.idempotents.iter().all(|&a| {
            self.idempotents.iter().all(|&b| {
                let p = self.product(a, b);
                if a == b {
                    p.len() == 1 && p[0].0 == a && f.is_one(&p[0].1)
                } else {
                    p.is_empty()
                }
            })
        });
        let unit = self.unit();
        orth && (0..self.dim()).all(|b| {
            let mut v = vec![f.zero(); self.dim()];
            v[b] = f.one();
            self.mul_elems(&unit, &v) == v && self.mul_elems(&v, &unit) == v
        })
    }

    /// Same basis, multiplication `x ∘ y = y x`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.table[j * n + i].clone());
            }
        }
        Self::from_parts(self.field.clone(), self.labels.clone(), table, self.idempotents.clone(), self.degree.clone())
            .expect("opposite of a valid algebra")
    }

    /// `self ⊗ other` with basis index `i * dim(other) + j` for `x_i ⊗ y_j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.field.spec() != other.field.spec() {
            return Err(Error::FieldMismatch(self.field.spec().to_string(), other.field.spec().to_string()));
        }
        let f = &self.field;
        let (da, db) = (self.dim(), other.dim());
        let n = da * db;
        let mut labels = Vec::with_capacity(n);
        let mut degree = Vec::with_capacity(n);
        for i in 0..da {
            for j in 0..db {
                labels.push(format!("{}(x){}", self.labels[i], other.labels[j]));
                degree.push(self.degree[i] + other.degree[j]);
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..da {
            for j in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        let mut entry = Vec::new();
                        for (x, c) in self.product(i, i2) {
                            for (y, d) in other.product(j, j2) {
                                entry.push((x * db + y, f.mul(c, d)));
                            }
                        }
                        entry.sort_by_key(|e| e.0);
                        table.push(entry);
                    }
                }
            }
        }
        let idempotents =
            self.idempotents.iter().flat_map(|&a| other.idempotents.iter().map(move |&b| a * db + b)).collect();
        Self::from_parts(f.clone(), labels, table, idempotents, degree)
    }

    /// `Λ^e = Λ ⊗ Λ^op`; idempotent `e_u ⊗ e_v` has index `u * count + v`.
    pub fn enveloping(&self) -> Self {
        self.tensor(&self.opposite()).expect("same field")
    }
}

/// Shared handle used by modules.
pub type AlgebraRef<F> = Arc<BasisAlgebra<F>>;

pub fn same_algebra<F: Field>(a: &BasisAlgebra<F>, b: &BasisAlgebra<F>) -> bool {
    std::ptr::eq(a, b) || a == b
}
