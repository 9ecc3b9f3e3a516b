//! Quiver presentations: the `.alg` text format and path-basis enumeration.
//!
//! Products follow the composition convention: `pq` means "first `q`, then
//! `p`", so the text `a*b*a` is the path that applies `a`, then `b`, then `a`.
//! A [`Path`] stores its arrows in written order (`arrows[0]` is applied last).
//!
//! ```text
//! field F 2
//! vertices 1 2
//! arrow a : 1 -> 1
//! arrow b : 1 -> 2
//! relation a*a
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;

/// Length bound used when callers do not supply one.
pub const DEFAULT_LENGTH_BOUND: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Builds the path `arrows` (written order), or `None` if not composable.
    pub fn path(&self, arrows: Vec<usize>) -> Option<Path> {
        let source = self.arrows[*arrows.last()?].source;
        for w in arrows.windows(2) {
            if self.arrows[w[1]].target != self.arrows[w[0]].source {
                return None;
            }
        }
        Some(Path { source, arrows })
    }

    pub fn path_target(&self, p: &Path) -> usize {
        p.arrows.first().map_or(p.source, |&a| self.arrows[a].target)
    }

    /// `pq`: first `q`, then `p`. Zero (`None`) when `target(q) != source(p)`.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.path_target(q) != p.source {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend(&q.arrows);
        Some(Path { source: q.source, arrows })
    }

    /// Basis order: by length, then lexicographically by arrow labels.
    pub fn path_cmp(&self, p: &Path, q: &Path) -> Ordering {
        p.len().cmp(&q.len()).then_with(|| {
            if p.is_trivial() {
                return p.source.cmp(&q.source);
            }
            let lp = p.arrows.iter().map(|&a| self.arrows[a].name.as_str());
            let lq = q.arrows.iter().map(|&a| self.arrows[a].name.as_str());
            lp.cmp(lq)
        })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e{}", self.vertices[p.source]);
        }
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A path in a quiver. `source` is the vertex where it starts; for a
/// trivial path it is the vertex of the idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, arrows: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A linear combination of parallel paths of equal length, set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(BigRational, Path)>,
}

impl Relation {
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
    pub fn len(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }
}

/// A quiver with length-homogeneous relations over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    /// Renders the presentation back into the `.alg` format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self.field {
            FieldSpec::Rationals => s.push_str("field Q\n"),
            FieldSpec::PrimeField(p) => {
                let _ = writeln!(s, "field F {p}");
            }
        }
        let _ = writeln!(s, "vertices {}", self.quiver.vertices.join(" "));
        for a in &self.quiver.arrows {
            let _ = writeln!(
                s,
                "arrow {} : {} -> {}",
                a.name, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            );
        }
        for r in &self.relations {
            let mut line = String::new();
            for (i, (c, p)) in r.terms.iter().enumerate() {
                let neg = c.is_negative();
                if i > 0 {
                    line.push_str(if neg { " - " } else { " + " });
                } else if neg {
                    line.push('-');
                }
                let a = c.abs();
                if !a.is_one() {
                    let _ = write!(line, "{a}*");
                }
                line.push_str(&self.quiver.path_label(p));
            }
            let _ = writeln!(s, "relation {line}");
        }
        s
    }
}

/// The presentation of `Γ_n`: the linear quiver `0 -> 1 -> ... -> n` with all
/// consecutive compositions set to zero.
pub fn gamma_presentation(n: usize, field: FieldSpec) -> Presentation {
    let vertices = (0..=n).map(|i| i.to_string()).collect();
    let arrows = (0..n).map(|i| Arrow { name: format!("a{i}"), source: i, target: i + 1 }).collect();
    let quiver = Quiver { vertices, arrows };
    let relations = (0..n.saturating_sub(1))
        .map(|i| Relation { terms: vec![(BigRational::one(), Path { source: i, arrows: vec![i + 1, i] })] })
        .collect();
    Presentation { field, quiver, relations }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn tokenize(s: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = chars[start..i].iter().collect();
            out.push((Tok::Num(n.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^=".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct RelParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    quiver: &'a Quiver,
}

impl RelParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }
    fn err(&self, msg: &str) -> Error {
        syntax(self.line, self.col(), msg)
    }

    /// `side := [sign] term (sign term)*`
    fn side(&mut self, sign: i32, out: &mut Vec<(BigRational, Vec<usize>)>) -> Result<()> {
        let mut s = sign;
        match self.peek() {
            Some(Tok::Sym('-')) => {
                s = -s;
                self.pos += 1;
            }
            Some(Tok::Sym('+')) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, p) = self.term()?;
            out.push((if s < 0 { -c } else { c }, p));
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    s = sign;
                    self.pos += 1;
                }
                Some(Tok::Sym('-')) => {
                    s = -sign;
                    self.pos += 1;
                }
                _ => return Ok(()),
            }
        }
    }

    /// `term := [num ['/' num] ['*']] factor ('*' factor)*`
    fn term(&mut self) -> Result<(BigRational, Vec<usize>)> {
        let mut coef = BigRational::one();
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut den = BigInt::one();
            if let Some(Tok::Sym('/')) = self.peek() {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Num(d)) if !d.is_zero() => {
                        den = d;
                        self.pos += 1;
                    }
                    _ => return Err(self.err("expected nonzero denominator")),
                }
            }
            coef = BigRational::new(n, den);
            if let Some(Tok::Sym('*')) = self.peek() {
                self.pos += 1;
            }
        }
        let mut arrows = Vec::new();
        loop {
            let col = self.col();
            let name = match self.peek().cloned() {
                Some(Tok::Ident(name)) => name,
                _ => return Err(self.err("expected an arrow name")),
            };
            self.pos += 1;
            let a =
                self.quiver.arrow_index(&name).ok_or(Error::UnknownArrow { line: self.line, name: name.clone() })?;
            let mut reps = 1usize;
            if let Some(Tok::Sym('^')) = self.peek() {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Num(k)) => {
                        reps = k.try_into().map_err(|_| syntax(self.line, col, "exponent too large"))?;
                        self.pos += 1;
                    }
                    _ => return Err(self.err("expected exponent")),
                }
            }
            arrows.extend(std::iter::repeat_n(a, reps));
            if let Some(Tok::Sym('*')) = self.peek() {
                self.pos += 1;
            } else {
                return Ok((coef, arrows));
            }
        }
    }
}

/// Parses the `.alg` format. Lines are `field`, `vertices`, `arrow` and
/// `relation` declarations; `#` starts a comment. The field defaults to `Q`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field = FieldSpec::Rationals;
    let mut quiver = Quiver::default();
    let mut pending: Vec<(usize, usize, String)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed.trim_end(), ""));
        let rest_col = lead + kw.len() + 2;
        match kw {
            "field" => {
                let spec = rest.split_whitespace().collect::<String>();
                field = spec.parse().map_err(|e| match e {
                    Error::NotPrime(p) => Error::NotPrime(p),
                    _ => syntax(line, rest_col, format!("bad field `{}`", rest.trim())),
                })?;
            }
            "vertices" => {
                for v in rest.split_whitespace() {
                    if quiver.vertex_index(v).is_some() {
                        return Err(Error::DuplicateLabel { line, name: v.to_string() });
                    }
                    quiver.vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, rest_col, "expected `arrow <name> : <src> -> <tgt>`"))?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    return Err(syntax(line, rest_col, format!("bad arrow name `{name}`")));
                }
                if !name.starts_with(|c: char| c.is_alphabetic() || c == '_') {
                    return Err(syntax(line, rest_col, "arrow names must start with a letter"));
                }
                let (s, t) =
                    ends.split_once("->").ok_or_else(|| syntax(line, rest_col + name.len(), "expected `->`"))?;
                let (s, t) = (s.trim(), t.trim());
                let source = quiver.vertex_index(s).ok_or(Error::UnknownVertex { line, name: s.to_string() })?;
                let target = quiver.vertex_index(t).ok_or(Error::UnknownVertex { line, name: t.to_string() })?;
                if quiver.arrow_index(name).is_some() {
                    return Err(Error::DuplicateLabel { line, name: name.to_string() });
                }
                quiver.arrows.push(Arrow { name: name.to_string(), source, target });
            }
            "relation" => pending.push((line, rest_col, rest.to_string())),
            other => {
                return Err(syntax(line, lead + 1, format!("unknown declaration `{other}`")));
            }
        }
    }

    let mut relations = Vec::new();
    for (line, col, body) in pending {
        if let Some(r) = parse_relation(&quiver, &body, line, col)? {
            relations.push(r);
        }
    }
    Ok(Presentation { field, quiver, relations })
}

fn parse_relation(quiver: &Quiver, body: &str, line: usize, col: usize) -> Result<Option<Relation>> {
    let toks = tokenize(body, line, col)?;
    if toks.is_empty() {
        return Err(syntax(line, col, "empty relation"));
    }
    let end_col = col + body.chars().count();
    let mut p = RelParser { toks, pos: 0, line, end_col, quiver };
    let mut raw = Vec::new();
    p.side(1, &mut raw)?;
    if let Some(Tok::Sym('=')) = p.peek() {
        p.pos += 1;
        p.side(-1, &mut raw)?;
    }
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token"));
    }

    let mut combined: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    let mut shape: Option<(usize, usize, usize, String)> = None;
    for (c, arrows) in raw {
        let label = arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*");
        let path = quiver.path(arrows.clone()).ok_or_else(|| Error::NotComposable { line, path: label.clone() })?;
        let this = (path.len(), path.source, quiver.path_target(&path));
        if this.0 < 2 {
            return Err(Error::NonHomogeneous { line, msg: format!("`{label}` has length {} < 2", this.0) });
        }
        if let Some((len, s, t, first)) = &shape {
            if *len != this.0 {
                return Err(Error::NonHomogeneous {
                    line,
                    msg: format!("`{first}` has length {len}, `{label}` has length {}", this.0),
                });
            }
            if (*s, *t) != (this.1, this.2) {
                return Err(Error::NonParallel {
                    line,
                    msg: format!("`{first}` and `{label}` have different endpoints"),
                });
            }
        } else {
            shape = Some((this.0, this.1, this.2, label));
        }
        *combined.entry(arrows).or_insert_with(BigRational::zero) += c;
    }
    let source = shape.map(|s| s.1).unwrap_or(0);
    let terms: Vec<_> =
        combined.into_iter().filter(|(_, c)| !c.is_zero()).map(|(arrows, c)| (c, Path { source, arrows })).collect();
    Ok((!terms.is_empty()).then_some(Relation { terms }))
}

// ---------------------------------------------------------------------------
// Basis enumeration

/// Sparse vector over basis indices.
pub type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// A combination of paths, each given by its arrows.
type PathCombination<F> = Vec<(Vec<usize>, <F as Field>::Elem)>;

/// Path basis of `kQ/I` with normal forms of every nonzero path.
#[derive(Clone, Debug)]
pub struct PathBasis<F: Field> {
    pub field: F,
    pub quiver: Quiver,
    /// Normal-form paths in basis order; the first entries are the vertex idempotents.
    pub paths: Vec<Path>,
    /// Normal form of every path that survives in the quotient, keyed by its arrows.
    normal_forms: HashMap<Vec<usize>, Sparse<F>>,
    /// Highest length carrying a nonzero class.
    pub top_degree: usize,
}

impl<F: Field> PathBasis<F> {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.paths[i].len()
    }

    /// Reduces an arbitrary path to a combination of basis paths.
    pub fn reduce(&self, p: &Path) -> Sparse<F> {
        if p.is_trivial() {
            return vec![(p.source, self.field.one())];
        }
        self.normal_forms.get(&p.arrows).cloned().unwrap_or_default()
    }

    /// Product of basis elements `i * j` in the quotient.
    pub fn multiply(&self, i: usize, j: usize) -> Sparse<F> {
        match self.quiver.compose(&self.paths[i], &self.paths[j]) {
            Some(p) => self.reduce(&p),
            None => Vec::new(),
        }
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|q| q == p)
    }
}

/// Enumerates a basis of `kQ/I` degree by degree.
///
/// In each length `l` the paths whose proper prefix and suffix survive are
/// reduced modulo the degree-`l` part of the ideal, spanned by the relations
/// of length `l` together with `a·I_{l-1}` and `I_{l-1}·a` for arrows `a`.
/// Normal forms are the non-pivot paths when columns are sorted from the
/// largest path down.
pub fn enumerate_basis<F: Field>(p: &Presentation, field: &F, length_bound: usize) -> Result<PathBasis<F>> {
    if field.spec() != p.field {
        return Err(Error::FieldMismatch(field.spec().to_string(), p.field.to_string()));
    }
    let q = &p.quiver;
    let bound = length_bound.max(1);
    let rels: Vec<Vec<(F::Elem, Vec<usize>)>> = p
        .relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, path)| Ok((field.from_fraction(c.numer(), c.denom())?, path.arrows.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut paths: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    // Normal forms in terms of paths (arrow vectors); converted to basis indices at the end.
    let mut nf_paths: HashMap<Vec<usize>, PathCombination<F>> = HashMap::new();
    let mut alive: Vec<Vec<usize>> = Vec::new();
    // Rows of I_{l-1} as sparse combinations of paths.
    let mut ideal_prev: Vec<PathCombination<F>> = Vec::new();
    let mut top_degree = 0;

    for a in 0..q.arrows.len() {
        nf_paths.insert(vec![a], vec![(vec![a], field.one())]);
        alive.push(vec![a]);
    }
    let mut level_paths: Vec<Path> = (0..q.arrows.len()).map(|a| q.path(vec![a]).expect("arrow")).collect();
    level_paths.sort_by(|x, y| q.path_cmp(x, y));
    if !level_paths.is_empty() {
        top_degree = 1;
    }
    paths.extend(level_paths);

    let mut len = 1;
    while !alive.is_empty() {
        if len >= bound {
            return Err(Error::InfiniteDimensional { bound });
        }
        len += 1;
        let alive_set: HashSet<&Vec<usize>> = alive.iter().collect();
        // Candidate columns: a·u with u alive and the prefix alive.
        let mut cols: Vec<Path> = Vec::new();
        for u in &alive {
            let t = q.arrows[u[0]].target;
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.source != t {
                    continue;
                }
                let mut w = Vec::with_capacity(len);
                w.push(a);
                w.extend(u);
                if alive_set.contains(&w[..len - 1].to_vec()) {
                    cols.push(q.path(w).expect("composable by construction"));
                }
            }
        }
        cols.sort_by(|x, y| q.path_cmp(y, x));
        let col_of: HashMap<&Vec<usize>, usize> = cols.iter().enumerate().map(|(i, c)| (&c.arrows, i)).collect();

        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        let mut push_row = |terms: &mut dyn Iterator<Item = (Vec<usize>, F::Elem)>| {
            let mut row = vec![field.zero(); cols.len()];
            let mut any = false;
            for (w, c) in terms {
                if let Some(&j) = col_of.get(&w) {
                    row[j] = field.add(&row[j], &c);
                    any = true;
                }
            }
            if any && row.iter().any(|x| !field.is_zero(x)) {
                rows.push(row);
            }
        };
        for r in rels.iter().filter(|r| r[0].1.len() == len) {
            push_row(&mut r.iter().map(|(c, w)| (w.clone(), c.clone())));
        }
        for v in &ideal_prev {
            for (a, arrow) in q.arrows.iter().enumerate() {
                let left = v.iter().filter(|(w, _)| q.arrows[w[0]].target == arrow.source).map(|(w, c)| {
                    let mut x = vec![a];
                    x.extend(w);
                    (x, c.clone())
                });
                push_row(&mut left.collect::<Vec<_>>().into_iter());
                let right =
                    v.iter().filter(|(w, _)| q.arrows[*w.last().unwrap()].source == arrow.target).map(|(w, c)| {
                        let mut x = w.clone();
                        x.push(a);
                        (x, c.clone())
                    });
                push_row(&mut right.collect::<Vec<_>>().into_iter());
            }
        }

        let (red, pivots) = if rows.is_empty() {
            (Matrix::zeros(field, 0, cols.len()), Vec::new())
        } else {
            Matrix::from_rows(field, cols.len(), rows).rref()
        };
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        let normal: Vec<usize> = (0..cols.len()).filter(|c| !pivot_set.contains(c)).collect();

        alive.clear();
        for &j in &normal {
            nf_paths.insert(cols[j].arrows.clone(), vec![(cols[j].arrows.clone(), field.one())]);
            alive.push(cols[j].arrows.clone());
        }
        ideal_prev.clear();
        for (i, &pc) in pivots.iter().enumerate() {
            let nf: Vec<(Vec<usize>, F::Elem)> = normal
                .iter()
                .filter(|&&j| !field.is_zero(red.get(i, j)))
                .map(|&j| (cols[j].arrows.clone(), field.neg(red.get(i, j))))
                .collect();
            if !nf.is_empty() {
                nf_paths.insert(cols[pc].arrows.clone(), nf);
                alive.push(cols[pc].arrows.clone());
            }
            let row: Vec<(Vec<usize>, F::Elem)> = (pc..cols.len())
                .filter(|&j| !field.is_zero(red.get(i, j)))
                .map(|j| (cols[j].arrows.clone(), red.get(i, j).clone()))
                .collect();
            ideal_prev.push(row);
        }
        let mut level: Vec<Path> = normal.iter().map(|&j| cols[j].clone()).collect();
        level.sort_by(|x, y| q.path_cmp(x, y));
        if !level.is_empty() {
            top_degree = len;
        }
        paths.extend(level);
    }

    let index: HashMap<&Vec<usize>, usize> =
        paths.iter().enumerate().filter(|(_, p)| !p.is_trivial()).map(|(i, p)| (&p.arrows, i)).collect();
    let normal_forms =
        nf_paths.iter().map(|(k, v)| (k.clone(), v.iter().map(|(w, c)| (index[w], c.clone())).collect())).collect();
    Ok(PathBasis { field: field.clone(), quiver: q.clone(), paths, normal_forms, top_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    const LAMBDA2: &str = "field Q\nvertices 1 2\narrow a : 1 -> 1\narrow b : 1 -> 2\nrelation a*a\n";
    const LAMBDA1: &str = "vertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation a*b*a\n";
    const A47: &str = "vertices 1 2\narrow a : 1 -> 1\narrow b : 1 -> 2\narrow g : 2 -> 2\n\
                       relation a*a\nrelation g*g\nrelation b*a - g*b\n";

    fn labels<F: Field>(b: &PathBasis<F>) -> Vec<String> {
        b.paths.iter().map(|p| b.quiver.path_label(p)).collect()
    }

    #[test]
    fn parses_lambda2() {
        let p = parse_presentation(LAMBDA2).unwrap();
        assert_eq!(p.quiver.vertices.len(), 2);
        assert_eq!(p.quiver.arrows.len(), 2);
        assert_eq!(p.relations.len(), 1);
        assert!(p.is_monomial());
    }

    #[test]
    fn parses_point_algebra() {
        let p = parse_presentation("field Q\nvertices 1\n").unwrap();
        assert!(p.relations.is_empty());
        let b = enumerate_basis(&p, &Rationals, 30).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn accepts_parallel_difference() {
        let p = parse_presentation(A47).unwrap();
        assert_eq!(p.relations.len(), 3);
        assert!(!p.is_monomial());
        let r = &p.relations[2];
        assert_eq!(r.len(), 2);
        assert_eq!(r.terms.len(), 2);
    }

    #[test]
    fn reports_errors() {
        let base = "vertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\n";
        assert!(matches!(
            parse_presentation(&format!("{base}relation a*b - a\n")),
            Err(Error::NonHomogeneous { line: 4, .. })
        ));
        assert!(matches!(
            parse_presentation(&format!("{base}relation a*b - b*a\n")),
            Err(Error::NonParallel { line: 4, .. })
        ));
        assert!(matches!(parse_presentation(&format!("{base}relation a*a\n")), Err(Error::NotComposable { .. })));
        assert!(matches!(parse_presentation(&format!("{base}relation a*c\n")), Err(Error::UnknownArrow { .. })));
        assert!(matches!(parse_presentation("vertices 1\narrow a : 1 -> 3\n"), Err(Error::UnknownVertex { .. })));
        assert!(matches!(parse_presentation("field F 6\n"), Err(Error::NotPrime(6))));
        let err = parse_presentation(&format!("{base}relation a*b $\n")).unwrap_err();
        assert_eq!(err, Error::Syntax { line: 4, col: 14, msg: "unexpected character `$`".into() });
        assert!(matches!(parse_presentation("bogus 1\n"), Err(Error::Syntax { line: 1, col: 1, .. })));
    }

    #[test]
    fn coefficients_and_equations() {
        let src = "vertices 1 2\narrow a : 1 -> 1\narrow b : 1 -> 2\narrow g : 2 -> 2\nrelation 2*b*a = 1/2 g*b\n";
        let p = parse_presentation(src).unwrap();
        let coeffs: Vec<String> = p.relations[0].terms.iter().map(|t| t.0.to_string()).collect();
        assert_eq!(coeffs, vec!["2", "-1/2"]);
        let again = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn lambda2_basis() {
        let p = parse_presentation(LAMBDA2).unwrap();
        let b = enumerate_basis(&p, &Rationals, 30).unwrap();
        assert_eq!(labels(&b), vec!["e1", "e2", "a", "b", "b*a"]);
    }

    #[test]
    fn lambda1_basis() {
        let p = parse_presentation(LAMBDA1).unwrap();
        let b = enumerate_basis(&p, &Rationals, 30).unwrap();
        assert_eq!(labels(&b), vec!["e1", "e2", "a", "b", "a*b", "b*a", "b*a*b"]);
        // a∘b∘a vanishes, b∘a∘b survives.
        let q = &b.quiver;
        let aba = q.path(vec![0, 1, 0]).unwrap();
        assert!(b.reduce(&aba).is_empty());
        let bab = q.path(vec![1, 0, 1]).unwrap();
        assert_eq!(b.reduce(&bab), vec![(6, Rationals.one())]);
    }

    #[test]
    fn gamma1_and_a47() {
        let g = gamma_presentation(1, FieldSpec::Rationals);
        assert_eq!(enumerate_basis(&g, &Rationals, 30).unwrap().dim(), 3);
        let p = parse_presentation(A47).unwrap();
        let b = enumerate_basis(&p, &Rationals, 30).unwrap();
        assert_eq!(b.dim(), 6);
        // b*a and g*b agree in the quotient; the smaller one is the normal form.
        let q = &b.quiver;
        let ba = b.reduce(&q.path(vec![1, 0]).unwrap());
        let gb = b.reduce(&q.path(vec![2, 1]).unwrap());
        assert_eq!(ba, gb);
    }

    #[test]
    fn compose_convention() {
        let p = parse_presentation(LAMBDA1).unwrap();
        let q = &p.quiver;
        let a = q.path(vec![0]).unwrap();
        let b = q.path(vec![1]).unwrap();
        // a: 1 -> 2, so e2 ∘ a = a while e1 ∘ a = 0.
        assert_eq!(q.compose(&Path::trivial(1), &a), Some(a.clone()));
        assert_eq!(q.compose(&Path::trivial(0), &a), None);
        assert_eq!(q.compose(&b, &a).unwrap().arrows, vec![1, 0]);
        assert!(q.compose(&a, &a).is_none());
    }

    #[test]
    fn infinite_dimension_detected() {
        let p = parse_presentation("vertices 1\narrow x : 1 -> 1\n").unwrap();
        assert_eq!(enumerate_basis(&p, &Rationals, 6).unwrap_err(), Error::InfiniteDimensional { bound: 6 });
        let p = parse_presentation("vertices 1\narrow x : 1 -> 1\nrelation x^4\n").unwrap();
        assert_eq!(enumerate_basis(&p, &Rationals, 30).unwrap().dim(), 4);
    }

    #[test]
    fn field_must_match() {
        let p = parse_presentation(LAMBDA2).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(enumerate_basis(&p, &f2, 30), Err(Error::FieldMismatch(..))));
        let p = p.with_field(FieldSpec::PrimeField(2));
        assert_eq!(enumerate_basis(&p, &f2, 30).unwrap().dim(), 5);
    }

    #[test]
    fn gamma_generator_round_trips() {
        let g = gamma_presentation(3, FieldSpec::PrimeField(5));
        let again = parse_presentation(&g.to_text()).unwrap();
        assert_eq!(again, g);
        let b = enumerate_basis(&g, &PrimeField::new(5).unwrap(), 30).unwrap();
        assert_eq!(b.dim(), 4 + 3);
    }
}
