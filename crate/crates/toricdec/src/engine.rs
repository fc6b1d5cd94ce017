//! Degreewise evaluation of fine-graded module expressions.
//!
//! A module expression is a tree over monomial-matrix maps between
//! shifted free modules. At a fixed fine degree every node evaluates to
//! a finite-dimensional rational subquotient of the ambient free
//! module's degree piece: a span and a relations row space over the
//! monomial basis. Since the grading is fine, a degree piece of a free
//! module has at most one basis element per generator, so all the linear
//! algebra stays tiny.
//!
//! Pieces are cached behind a concurrent map keyed by node identity, so
//! shared subexpressions are evaluated once even when sweeps run in
//! parallel.

use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::cox::GradingSetup;
use crate::error::{Error, Result};
use crate::fan::Cone;
use crate::ideal::MonomialIdeal;
use crate::matrix::{intersect_row_spaces, rat_int, solve_left, QMat, Rat};

pub type Multidegree = Vec<i64>;

fn add(a: &[i64], b: &[i64]) -> Multidegree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Multidegree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(+)_i S(-a_i)`: generator `e_i` sits in fine degree `a_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModuleSpec {
    num_vars: usize,
    shifts: Vec<Multidegree>,
}

impl FreeModuleSpec {
    pub fn new(num_vars: usize, shifts: Vec<Multidegree>) -> Result<Self> {
        for s in &shifts {
            if s.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "shift {:?} does not have {} coordinates",
                    s, num_vars
                )));
            }
        }
        Ok(FreeModuleSpec { num_vars, shifts })
    }

    /// Rank-one free module with a given generator degree.
    pub fn single(shift: Multidegree) -> Self {
        FreeModuleSpec { num_vars: shift.len(), shifts: vec![shift] }
    }

    /// `S^n` with all generators in degree zero.
    pub fn standard(num_vars: usize, rank: usize) -> Self {
        FreeModuleSpec { num_vars, shifts: vec![vec![0; num_vars]; rank] }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[Multidegree] {
        &self.shifts
    }

    fn shifted_down(&self, by: &[i64]) -> FreeModuleSpec {
        FreeModuleSpec {
            num_vars: self.num_vars,
            shifts: self.shifts.iter().map(|s| sub(s, by)).collect(),
        }
    }

    /// Monomial basis labels of the degree piece: generator `i`
    /// contributes `x^(a - shift_i) e_i` when the exponent is nonnegative.
    pub fn basis(&self, degree: &[i64]) -> Vec<BasisLabel> {
        let mut out = Vec::new();
        for (i, s) in self.shifts.iter().enumerate() {
            let e = sub(degree, s);
            if e.iter().all(|&x| x >= 0) {
                out.push(BasisLabel { gen: i, exponents: e });
            }
        }
        out
    }
}

/// `x^exponents * e_gen`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisLabel {
    pub gen: usize,
    pub exponents: Multidegree,
}

/// Nonzero monomial matrix entry: `coeff * x^exponents`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialEntry {
    pub coeff: Rat,
    pub exponents: Multidegree,
}

impl MonomialEntry {
    pub fn new(coeff: Rat, exponents: Multidegree) -> Self {
        MonomialEntry { coeff, exponents }
    }

    pub fn var(v: usize, num_vars: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[v] = 1;
        MonomialEntry { coeff: Rat::one(), exponents: e }
    }

    pub fn constant(coeff: Rat, num_vars: usize) -> Self {
        MonomialEntry { coeff, exponents: vec![0; num_vars] }
    }
}

/// A degree-preserving map of shifted free modules. Columns index the
/// source generators, rows index the target generators; the nonzero
/// entry `(i, j)` must be homogeneous: its exponent vector equals
/// `source.shift_j - target.shift_i` and is componentwise nonnegative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialMatrix {
    source: FreeModuleSpec,
    target: FreeModuleSpec,
    /// `entries[row][col]`
    entries: Vec<Vec<Option<MonomialEntry>>>,
}

impl MonomialMatrix {
    pub fn new(
        source: FreeModuleSpec,
        target: FreeModuleSpec,
        entries: Vec<Vec<Option<MonomialEntry>>>,
    ) -> Result<Self> {
        if source.num_vars() != target.num_vars() {
            return Err(Error::DimensionMismatch(
                "source and target live over different rings".into(),
            ));
        }
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "entry grid is not {} x {}",
                target.rank(),
                source.rank()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let Some(e) = e else { continue };
                if e.coeff.is_zero() {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({i},{j}) has a zero coefficient; use None"
                    )));
                }
                let want = sub(&source.shifts[j], &target.shifts[i]);
                if e.exponents != want {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({i},{j}) has exponents {:?}, homogeneity requires {:?}",
                        e.exponents, want
                    )));
                }
                if want.iter().any(|&x| x < 0) {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({i},{j}) would need negative exponents {:?}",
                        want
                    )));
                }
            }
        }
        Ok(MonomialMatrix { source, target, entries })
    }

    /// The zero map from the zero module into `target`.
    pub fn zero_into(target: FreeModuleSpec) -> Self {
        let rows = target.rank();
        MonomialMatrix {
            source: FreeModuleSpec { num_vars: target.num_vars(), shifts: Vec::new() },
            target,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn source(&self) -> &FreeModuleSpec {
        &self.source
    }

    pub fn target(&self) -> &FreeModuleSpec {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&MonomialEntry> {
        self.entries[i][j].as_ref()
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    /// Exact product `self * inner` (apply `inner` first). Homogeneity
    /// makes every entry of the product collapse to a single monomial.
    pub fn compose(&self, inner: &MonomialMatrix) -> Result<MonomialMatrix> {
        if inner.target != self.source {
            return Err(Error::AmbientMismatch(
                "composition: inner target differs from outer source".into(),
            ));
        }
        let mut entries = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut row = Vec::with_capacity(inner.cols());
            for k in 0..inner.cols() {
                let mut acc: Option<MonomialEntry> = None;
                for j in 0..self.cols() {
                    let (Some(a), Some(b)) = (self.entry(i, j), inner.entry(j, k)) else {
                        continue;
                    };
                    let exps = add(&a.exponents, &b.exponents);
                    let coeff = &a.coeff * &b.coeff;
                    acc = match acc {
                        None => Some(MonomialEntry { coeff, exponents: exps }),
                        Some(mut cur) => {
                            debug_assert_eq!(cur.exponents, exps, "homogeneity");
                            cur.coeff += coeff;
                            Some(cur)
                        }
                    };
                }
                row.push(acc.filter(|e| !e.coeff.is_zero()));
            }
            entries.push(row);
        }
        MonomialMatrix::new(inner.source.clone(), self.target.clone(), entries)
    }

    /// Matrix of the induced linear map at one fine degree. Rows index
    /// the source basis, columns the target basis; the map acts as
    /// `v -> v * M` on row vectors.
    pub fn map_at(&self, degree: &[i64]) -> QMat {
        let src = self.source.basis(degree);
        let tgt = self.target.basis(degree);
        let mut tgt_pos = vec![None; self.target.rank()];
        for (p, l) in tgt.iter().enumerate() {
            tgt_pos[l.gen] = Some(p);
        }
        let mut m = QMat::zeros(src.len(), tgt.len());
        for (p, l) in src.iter().enumerate() {
            for i in 0..self.rows() {
                let Some(e) = self.entry(i, l.gen) else { continue };
                let q = tgt_pos[i].expect("homogeneous entries always land in the basis");
                m.set(p, q, e.coeff.clone());
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
enum Node {
    Free(FreeModuleSpec),
    Image(MonomialMatrix),
    Kernel(MonomialMatrix),
    Cokernel(MonomialMatrix),
    /// Pushforward of a submodule along a monomial matrix.
    Apply(MonomialMatrix, ModuleExpr),
    Intersection(Vec<ModuleExpr>),
    Sum(Vec<ModuleExpr>),
    Quotient(ModuleExpr, ModuleExpr),
    Colon { sub: ModuleExpr, within: ModuleExpr, exponents: Multidegree },
    Shift(ModuleExpr, Multidegree),
    /// The zero submodule of an expression (span = its relations).
    ZeroOf(ModuleExpr),
}

/// A fine-graded module expression. Cloning is cheap; nodes are shared.
#[derive(Clone, Debug)]
pub struct ModuleExpr {
    node: Arc<Node>,
}

impl ModuleExpr {
    fn wrap(node: Node) -> Self {
        ModuleExpr { node: Arc::new(node) }
    }

    pub fn free(spec: FreeModuleSpec) -> Self {
        Self::wrap(Node::Free(spec))
    }

    pub fn image(m: MonomialMatrix) -> Self {
        Self::wrap(Node::Image(m))
    }

    pub fn kernel(m: MonomialMatrix) -> Self {
        Self::wrap(Node::Kernel(m))
    }

    pub fn cokernel(m: MonomialMatrix) -> Self {
        Self::wrap(Node::Cokernel(m))
    }

    pub fn apply(m: MonomialMatrix, sub: ModuleExpr) -> Result<Self> {
        if sub.ambient() != *m.source() {
            return Err(Error::AmbientMismatch(
                "pushforward: submodule does not live in the map's source".into(),
            ));
        }
        Ok(Self::wrap(Node::Apply(m, sub)))
    }

    pub fn intersection(children: Vec<ModuleExpr>) -> Result<Self> {
        let Some(first) = children.first() else {
            return Err(Error::AmbientMismatch("empty intersection".into()));
        };
        let amb = first.ambient();
        if children.iter().any(|c| c.ambient() != amb) {
            return Err(Error::AmbientMismatch(
                "intersection members live in different ambient modules".into(),
            ));
        }
        Ok(Self::wrap(Node::Intersection(children)))
    }

    pub fn sum(children: Vec<ModuleExpr>) -> Result<Self> {
        let Some(first) = children.first() else {
            return Err(Error::AmbientMismatch("empty sum".into()));
        };
        let amb = first.ambient();
        if children.iter().any(|c| c.ambient() != amb) {
            return Err(Error::AmbientMismatch(
                "sum members live in different ambient modules".into(),
            ));
        }
        Ok(Self::wrap(Node::Sum(children)))
    }

    pub fn quotient(expr: ModuleExpr, sub: ModuleExpr) -> Result<Self> {
        if expr.ambient() != sub.ambient() {
            return Err(Error::AmbientMismatch(
                "quotient: submodule lives in a different ambient module".into(),
            ));
        }
        Ok(Self::wrap(Node::Quotient(expr, sub)))
    }

    /// `(sub : x^exponents)` computed inside `within`.
    pub fn colon(sub: ModuleExpr, within: ModuleExpr, exponents: Multidegree) -> Result<Self> {
        if sub.ambient() != within.ambient() {
            return Err(Error::AmbientMismatch(
                "colon: submodule lives in a different ambient module".into(),
            ));
        }
        if exponents.iter().any(|&x| x < 0) {
            return Err(Error::DimensionMismatch(
                "colon exponents must be nonnegative".into(),
            ));
        }
        Ok(Self::wrap(Node::Colon { sub, within, exponents }))
    }

    pub fn shift(expr: ModuleExpr, by: Multidegree) -> Self {
        Self::wrap(Node::Shift(expr, by))
    }

    pub fn zero_of(expr: ModuleExpr) -> Self {
        Self::wrap(Node::ZeroOf(expr))
    }

    /// The ambient free module the expression's pieces live in.
    pub fn ambient(&self) -> FreeModuleSpec {
        match &*self.node {
            Node::Free(s) => s.clone(),
            Node::Image(m) | Node::Cokernel(m) => m.target().clone(),
            Node::Kernel(m) => m.source().clone(),
            Node::Apply(m, _) => m.target().clone(),
            Node::Intersection(cs) | Node::Sum(cs) => cs[0].ambient(),
            Node::Quotient(e, _) => e.ambient(),
            Node::Colon { within, .. } => within.ambient(),
            Node::Shift(e, by) => e.ambient().shifted_down(by),
            Node::ZeroOf(e) => e.ambient(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.ambient().num_vars()
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.node) as usize
    }
}

/// Exact subquotient of one fine-degree piece of the ambient free module.
/// `span` and `relations` are canonical reduced row bases with
/// `relations` contained in `span`; the piece is their quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPiece {
    pub degree: Multidegree,
    pub ambient: Vec<BasisLabel>,
    pub span: QMat,
    pub relations: QMat,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.span.rows() - self.relations.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Representative rows completing the relations to a basis of the span.
    pub fn quotient_basis(&self) -> QMat {
        let mut acc = self.relations.clone();
        let mut rank = acc.rank();
        let mut rows = Vec::new();
        for r in self.span.row_vecs() {
            let cand = {
                let mut m = acc.clone();
                m.push_row(r.clone());
                m
            };
            let new_rank = cand.rank();
            if new_rank > rank {
                rows.push(r.clone());
                acc = cand;
                rank = new_rank;
            }
        }
        QMat::from_rows(self.ambient.len(), rows)
    }

    /// Coordinates of an ambient vector in the quotient basis; `None` if
    /// the vector lies outside the span.
    pub fn quotient_coords(&self, basis: &QMat, v: &[Rat]) -> Option<Vec<Rat>> {
        let m = self.relations.stack(basis);
        let x = solve_left(&m, v)?;
        Some(x[self.relations.rows()..].to_vec())
    }

    /// Same span and relations in the same ambient basis.
    pub fn same_subquotient(&self, other: &GradedPiece) -> bool {
        self.ambient == other.ambient
            && self.span == other.span
            && self.relations == other.relations
    }
}

/// A linear map between the quotient pieces of two degrees, expressed in
/// their quotient bases. Acts on row vectors: `v -> v * matrix`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub matrix: QMat,
    pub src_dim: usize,
    pub dst_dim: usize,
}

impl InducedMap {
    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.src_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.dst_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.src_dim == self.dst_dim && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn compose(&self, then: &InducedMap) -> InducedMap {
        InducedMap {
            matrix: self.matrix.mul(&then.matrix),
            src_dim: self.src_dim,
            dst_dim: then.dst_dim,
        }
    }
}

/// Result of a chart localization: the colimit of degree pieces along
/// multiplication by the chart monomial, certified by bijective
/// transition steps, or flagged inconclusive when `k_max` is exhausted.
#[derive(Clone, Debug)]
pub struct ChartPiece {
    pub m: Vec<i64>,
    pub start_degree: Multidegree,
    pub step: Multidegree,
    pub dims: Vec<usize>,
    pub k_star: Option<usize>,
    pub piece: Option<Arc<GradedPiece>>,
}

impl ChartPiece {
    pub fn conclusive(&self) -> bool {
        self.k_star.is_some()
    }

    pub fn dim(&self) -> Option<usize> {
        self.k_star.map(|k| self.dims[k])
    }
}

/// Evaluator with a concurrent piece cache. The cache keeps a strong
/// reference to every expression it has seen, so node addresses remain
/// stable for the cache's lifetime.
#[derive(Default)]
pub struct Engine {
    cache: DashMap<(usize, Multidegree), (ModuleExpr, Arc<GradedPiece>)>,
}

impl Engine {
    pub fn new() -> Self {
        Engine { cache: DashMap::new() }
    }

    pub fn piece(&self, expr: &ModuleExpr, degree: &[i64]) -> Result<Arc<GradedPiece>> {
        if degree.len() != expr.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "degree {:?} does not have {} coordinates",
                degree,
                expr.num_vars()
            )));
        }
        let key = (expr.key(), degree.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.1.clone());
        }
        let piece = Arc::new(self.compute(expr, degree)?);
        self.cache.insert(key, (expr.clone(), piece.clone()));
        Ok(piece)
    }

    pub fn dim(&self, expr: &ModuleExpr, degree: &[i64]) -> Result<usize> {
        Ok(self.piece(expr, degree)?.dim())
    }

    fn compute(&self, expr: &ModuleExpr, degree: &[i64]) -> Result<GradedPiece> {
        let ambient_spec = expr.ambient();
        let ambient = ambient_spec.basis(degree);
        let n = ambient.len();
        let piece = match &*expr.node {
            Node::Free(_) => GradedPiece {
                degree: degree.to_vec(),
                ambient,
                span: QMat::identity(n),
                relations: QMat::empty(n),
            },
            Node::Image(m) => {
                let rows = m.map_at(degree);
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: rows.rref().mat,
                    relations: QMat::empty(n),
                }
            }
            Node::Kernel(m) => {
                let map = m.map_at(degree);
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: map.left_kernel().rref().mat,
                    relations: QMat::empty(n),
                }
            }
            Node::Cokernel(m) => {
                let rows = m.map_at(degree);
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: QMat::identity(n),
                    relations: rows.rref().mat,
                }
            }
            Node::Apply(m, sub) => {
                let inner = self.piece(sub, degree)?;
                if inner.relations.rows() != 0 {
                    return Err(Error::AmbientMismatch(
                        "pushforward needs a submodule, got a proper subquotient".into(),
                    ));
                }
                let map = m.map_at(degree);
                let mut rows = Vec::new();
                for r in inner.span.row_vecs() {
                    rows.push(map.apply_row(r));
                }
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: QMat::from_rows(n, rows).rref().mat,
                    relations: QMat::empty(n),
                }
            }
            Node::Intersection(children) => {
                let pieces: Vec<Arc<GradedPiece>> =
                    children.iter().map(|c| self.piece(c, degree)).collect::<Result<_>>()?;
                let rel = pieces[0].relations.clone();
                for p in &pieces[1..] {
                    if p.relations != rel {
                        return Err(Error::AmbientMismatch(
                            "intersection members carry different relations".into(),
                        ));
                    }
                }
                let mut span = pieces[0].span.clone();
                for p in &pieces[1..] {
                    span = intersect_row_spaces(&span, &p.span);
                }
                // relations stay inside every member, hence inside the meet
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: span.stack(&rel).rref().mat,
                    relations: rel,
                }
            }
            Node::Sum(children) => {
                let pieces: Vec<Arc<GradedPiece>> =
                    children.iter().map(|c| self.piece(c, degree)).collect::<Result<_>>()?;
                let rel = pieces[0].relations.clone();
                for p in &pieces[1..] {
                    if p.relations != rel {
                        return Err(Error::AmbientMismatch(
                            "sum members carry different relations".into(),
                        ));
                    }
                }
                let mut span = QMat::empty(n);
                for p in &pieces {
                    span = span.stack(&p.span);
                }
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: span.rref().mat,
                    relations: rel,
                }
            }
            Node::Quotient(e, s) => {
                let pe = self.piece(e, degree)?;
                let ps = self.piece(s, degree)?;
                let span_r = pe.span.rref();
                if !span_r.contains_row_space(&ps.span) {
                    return Err(Error::AmbientMismatch(
                        "quotient: submodule does not lie inside the module".into(),
                    ));
                }
                let new_rel = ps.span.stack(&pe.relations).rref().mat;
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: pe.span.clone(),
                    relations: new_rel,
                }
            }
            Node::Colon { sub, within, exponents } => {
                let pw = self.piece(within, degree)?;
                let shifted = add(degree, exponents);
                let ps = self.piece(sub, &shifted)?;
                let mult = ambient_mult_matrix(&ambient_spec, degree, exponents);
                // v in span(within) with v * mult inside span(sub)
                let images = {
                    let mut rows = Vec::new();
                    for r in pw.span.row_vecs() {
                        rows.push(mult.apply_row(r));
                    }
                    QMat::from_rows(ps.span.cols(), rows)
                };
                let sub_r = ps.span.rref();
                // relations of the ambient module must already satisfy the colon
                for r in pw.relations.row_vecs() {
                    if !sub_r.contains(&mult.apply_row(r)) {
                        return Err(Error::AmbientMismatch(
                            "colon: submodule does not contain the ambient relations".into(),
                        ));
                    }
                }
                let stacked = images.stack(&ps.span);
                let lk = stacked.left_kernel();
                let mut rows = Vec::new();
                for k in lk.row_vecs() {
                    let x = &k[..pw.span.rows()];
                    let v = pw.span.apply_row(x);
                    if v.iter().any(|t| !t.is_zero()) {
                        rows.push(v);
                    }
                }
                let span = QMat::from_rows(n, rows).stack(&pw.relations).rref().mat;
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span,
                    relations: pw.relations.clone(),
                }
            }
            Node::Shift(e, by) => {
                let inner = self.piece(e, &add(degree, by))?;
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: inner.span.clone(),
                    relations: inner.relations.clone(),
                }
            }
            Node::ZeroOf(e) => {
                let inner = self.piece(e, degree)?;
                GradedPiece {
                    degree: degree.to_vec(),
                    ambient,
                    span: inner.relations.clone(),
                    relations: inner.relations.clone(),
                }
            }
        };
        debug_assert_eq!(piece.ambient.len(), piece.span.cols());
        debug_assert!(piece.span.rows() >= piece.relations.rows());
        Ok(piece)
    }

    /// The multiplication map `x^c : piece(a) -> piece(a + c)` in the
    /// quotient bases of the two pieces.
    pub fn mult_map(&self, expr: &ModuleExpr, degree: &[i64], c: &[i64]) -> Result<InducedMap> {
        if c.iter().any(|&x| x < 0) {
            return Err(Error::DimensionMismatch(
                "multiplication exponents must be nonnegative".into(),
            ));
        }
        let spec = expr.ambient();
        let p1 = self.piece(expr, degree)?;
        let shifted = add(degree, c);
        let p2 = self.piece(expr, &shifted)?;
        let mult = ambient_mult_matrix(&spec, degree, c);
        let b1 = p1.quotient_basis();
        let b2 = p2.quotient_basis();
        let mut rows = Vec::new();
        for r in b1.row_vecs() {
            let img = mult.apply_row(r);
            let coords = p2.quotient_coords(&b2, &img).ok_or_else(|| {
                Error::Internal(format!(
                    "multiplication image leaves the span at degree {:?}",
                    shifted
                ))
            })?;
            rows.push(coords);
        }
        Ok(InducedMap {
            matrix: QMat::from_rows(b2.rows(), rows),
            src_dim: b1.rows(),
            dst_dim: b2.rows(),
        })
    }

    /// Localized degree piece on the chart of a maximal cone: the colimit
    /// of `piece(div(m) + k * a(sigma))` along multiplication by the
    /// chart monomial `x(sigma)`. The scan stops at the first `k` whose
    /// transition is bijective with the following transition bijective as
    /// well; without such a step up to `k_max` the result is flagged
    /// inconclusive rather than claimed.
    pub fn chart_piece(
        &self,
        setup: &GradingSetup,
        expr: &ModuleExpr,
        cone: &Cone,
        m: &[i64],
        k_max: usize,
    ) -> Result<ChartPiece> {
        let fan = setup.require_fan()?;
        if m.len() != fan.dim() {
            return Err(Error::DimensionMismatch(format!(
                "character has dimension {}, lattice has rank {}",
                m.len(),
                fan.dim()
            )));
        }
        let start: Multidegree = (0..setup.num_vars()).map(|rho| fan.pairing(m, rho)).collect();
        let step = setup.chart_monomial_exponents(cone);
        let mut dims = Vec::new();
        let mut k_star = None;
        let mut stable: Option<Arc<GradedPiece>> = None;
        let mut transitions: Vec<bool> = Vec::new();
        let upto = k_max.max(2);
        for k in 0..=upto {
            let d = add(&start, &step.iter().map(|&s| s * k as i64).collect::<Vec<_>>());
            dims.push(self.piece(expr, &d)?.dim());
            if k > 0 {
                let prev =
                    add(&start, &step.iter().map(|&s| s * (k - 1) as i64).collect::<Vec<_>>());
                transitions.push(self.mult_map(expr, &prev, &step)?.is_bijective());
            }
            if k >= 2 && k_star.is_none() && transitions[k - 2] && transitions[k - 1] {
                let kk = k - 2;
                k_star = Some(kk);
                let d0 =
                    add(&start, &step.iter().map(|&s| s * kk as i64).collect::<Vec<_>>());
                stable = Some(self.piece(expr, &d0)?);
                break;
            }
        }
        Ok(ChartPiece { m: m.to_vec(), start_degree: start, step, dims, k_star, piece: stable })
    }
}

/// Ambient multiplication by `x^c` as a basis relabeling matrix from the
/// degree-`a` basis to the degree-`a+c` basis.
fn ambient_mult_matrix(spec: &FreeModuleSpec, degree: &[i64], c: &[i64]) -> QMat {
    let src = spec.basis(degree);
    let tgt = spec.basis(&add(degree, c));
    let mut tgt_pos = vec![None; spec.rank()];
    for (p, l) in tgt.iter().enumerate() {
        tgt_pos[l.gen] = Some(p);
    }
    let mut m = QMat::zeros(src.len(), tgt.len());
    for (p, l) in src.iter().enumerate() {
        let q = tgt_pos[l.gen].expect("mult target basis element exists");
        m.set(p, q, Rat::one());
    }
    m
}

/// Fitting ideal of the `(rows - k)`-minors of a monomial matrix. When
/// every relevant minor is a scalar times a monomial the result is a
/// monomial ideal; otherwise the offending minor is reported.
pub enum FittingIdeal {
    Monomial(MonomialIdeal),
    NonMonomial { size: usize, rows: Vec<usize>, cols: Vec<usize> },
}

pub const MINOR_EXPANSION_BOUND: usize = 6;

pub fn fitting_ideal(m: &MonomialMatrix, k: usize) -> Result<FittingIdeal> {
    fitting_ideal_bounded(m, k, MINOR_EXPANSION_BOUND)
}

pub fn fitting_ideal_bounded(m: &MonomialMatrix, k: usize, bound: usize) -> Result<FittingIdeal> {
    if m.rows() > bound || m.cols() > bound {
        return Err(Error::MinorBoundExceeded { rows: m.rows(), cols: m.cols(), bound });
    }
    let nvars = m.source().num_vars();
    let size = m.rows().saturating_sub(k);
    if size == 0 {
        return Ok(FittingIdeal::Monomial(MonomialIdeal::unit(nvars)));
    }
    if size > m.rows() || size > m.cols() {
        return Ok(FittingIdeal::Monomial(MonomialIdeal::zero(nvars)));
    }
    let mut gens = Vec::new();
    for rows in subsets(m.rows(), size) {
        for cols in subsets(m.cols(), size) {
            match minor_poly(m, &rows, &cols) {
                Poly::Zero => {}
                Poly::Monomial(exponents) => gens.push(exponents),
                Poly::Mixed => {
                    return Ok(FittingIdeal::NonMonomial { size, rows, cols });
                }
            }
        }
    }
    Ok(FittingIdeal::Monomial(MonomialIdeal::new(nvars, gens)?))
}

/// Are all minors, of every size, scalar multiples of monomials (or zero)?
pub fn minors_all_monomial(m: &MonomialMatrix) -> Result<bool> {
    minors_all_monomial_bounded(m, MINOR_EXPANSION_BOUND)
}

pub fn minors_all_monomial_bounded(m: &MonomialMatrix, bound: usize) -> Result<bool> {
    if m.rows() > bound || m.cols() > bound {
        return Err(Error::MinorBoundExceeded { rows: m.rows(), cols: m.cols(), bound });
    }
    for size in 1..=m.rows().min(m.cols()) {
        for rows in subsets(m.rows(), size) {
            for cols in subsets(m.cols(), size) {
                if matches!(minor_poly(m, &rows, &cols), Poly::Mixed) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

enum Poly {
    Zero,
    Monomial(Multidegree),
    Mixed,
}

/// Determinant of a square submatrix as a sparse polynomial, collapsed to
/// the three cases the callers care about.
fn minor_poly(m: &MonomialMatrix, rows: &[usize], cols: &[usize]) -> Poly {
    use std::collections::BTreeMap;
    let n = rows.len();
    let mut acc: BTreeMap<Multidegree, Rat> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // iterate permutations (n <= 6)
    fn permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>, even: bool) {
        if k == perm.len() {
            out.push((perm.clone(), even));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            let flip = i != k;
            permutations(k + 1, perm, out, even ^ flip);
            perm.swap(k, i);
        }
    }
    let mut perms = Vec::new();
    permutations(0, &mut perm, &mut perms, true);
    'outer: for (p, even) in perms {
        let mut coeff = Rat::one();
        let mut exps = vec![0i64; m.source().num_vars()];
        for (r, &pr) in p.iter().enumerate() {
            match m.entry(rows[r], cols[pr]) {
                None => continue 'outer,
                Some(e) => {
                    coeff *= &e.coeff;
                    for (t, x) in exps.iter_mut().zip(&e.exponents) {
                        *t += x;
                    }
                }
            }
        }
        if !even {
            coeff = -coeff;
        }
        let slot = acc.entry(exps).or_insert_with(Rat::zero);
        *slot += coeff;
    }
    acc.retain(|_, c| !c.is_zero());
    match acc.len() {
        0 => Poly::Zero,
        1 => Poly::Monomial(acc.into_iter().next().unwrap().0),
        _ => Poly::Mixed,
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Convenience: `rat_int` re-export for building matrices in callers.
pub fn coeff(n: i64) -> Rat {
    rat_int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Rat {
        rat_int(1)
    }

    /// S = k[x0, x1, x2], a single free generator in degree 0.
    fn free_s(nvars: usize) -> ModuleExpr {
        ModuleExpr::free(FreeModuleSpec::standard(nvars, 1))
    }

    #[test]
    fn free_pieces() {
        let e = free_s(3);
        let eng = Engine::new();
        assert_eq!(eng.dim(&e, &[1, 0, 0]).unwrap(), 1);
        assert_eq!(eng.dim(&e, &[0, 0, 0]).unwrap(), 1);
        assert_eq!(eng.dim(&e, &[-1, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn homogeneity_enforced() {
        let src = FreeModuleSpec::new(2, vec![vec![1, 0]]).unwrap();
        let tgt = FreeModuleSpec::standard(2, 1);
        // entry must be x0 exactly
        assert!(MonomialMatrix::new(
            src.clone(),
            tgt.clone(),
            vec![vec![Some(MonomialEntry::new(one(), vec![0, 1]))]],
        )
        .is_err());
        assert!(MonomialMatrix::new(
            src,
            tgt,
            vec![vec![Some(MonomialEntry::new(one(), vec![1, 0]))]],
        )
        .is_ok());
    }

    /// The multiplication map x0: S(-e0) -> S as a matrix.
    fn times_var(nvars: usize, v: usize) -> MonomialMatrix {
        let mut shift = vec![0; nvars];
        shift[v] = 1;
        MonomialMatrix::new(
            FreeModuleSpec::new(nvars, vec![shift]).unwrap(),
            FreeModuleSpec::standard(nvars, 1),
            vec![vec![Some(MonomialEntry::var(v, nvars))]],
        )
        .unwrap()
    }

    #[test]
    fn rank_nullity_on_free_maps() {
        // quotient ring piece dims: S/<x0> has dim 1 exactly when a0 = 0
        let m = times_var(2, 0);
        let eng = Engine::new();
        let coker = ModuleExpr::cokernel(m.clone());
        let ker = ModuleExpr::kernel(m.clone());
        let img = ModuleExpr::image(m.clone());
        let src = ModuleExpr::free(m.source().clone());
        for a in 0..4i64 {
            for b in 0..4i64 {
                let d = vec![a, b];
                let dk = eng.dim(&ker, &d).unwrap();
                let di = eng.dim(&img, &d).unwrap();
                let ds = eng.dim(&src, &d).unwrap();
                assert_eq!(dk + di, ds, "rank-nullity at {:?}", d);
                let dc = eng.dim(&coker, &d).unwrap();
                assert_eq!(dc, usize::from(a == 0));
            }
        }
    }

    #[test]
    fn mult_map_identity_and_commutation() {
        let e = free_s(2);
        let eng = Engine::new();
        let id = eng.mult_map(&e, &[1, 1], &[0, 0]).unwrap();
        assert!(id.is_bijective());
        // multiplication by x then y equals y then x
        let xy = eng
            .mult_map(&e, &[0, 0], &[1, 0])
            .unwrap()
            .compose(&eng.mult_map(&e, &[1, 0], &[0, 1]).unwrap());
        let yx = eng
            .mult_map(&e, &[0, 0], &[0, 1])
            .unwrap()
            .compose(&eng.mult_map(&e, &[0, 1], &[1, 0]).unwrap());
        assert_eq!(xy.matrix, yx.matrix);
    }

    #[test]
    fn quotient_and_zero() {
        let m = times_var(2, 0);
        let s = ModuleExpr::free(FreeModuleSpec::standard(2, 1));
        let q = ModuleExpr::quotient(s.clone(), ModuleExpr::image(m)).unwrap();
        let eng = Engine::new();
        assert_eq!(eng.dim(&q, &[0, 2]).unwrap(), 1);
        assert_eq!(eng.dim(&q, &[1, 2]).unwrap(), 0);
        let z = ModuleExpr::zero_of(q.clone());
        assert_eq!(eng.dim(&z, &[0, 2]).unwrap(), 0);
    }

    #[test]
    fn colon_matches_ideal_colon() {
        // I = <x0^2, x1> inside S = k[x0, x1]; (I : x0) = <x0, x1>
        let nvars = 2;
        let tgt = FreeModuleSpec::standard(nvars, 1);
        let src = FreeModuleSpec::new(nvars, vec![vec![2, 0], vec![0, 1]]).unwrap();
        let m = MonomialMatrix::new(
            src,
            tgt.clone(),
            vec![vec![
                Some(MonomialEntry::new(one(), vec![2, 0])),
                Some(MonomialEntry::new(one(), vec![0, 1])),
            ]],
        )
        .unwrap();
        let ideal_expr = ModuleExpr::image(m);
        let s = ModuleExpr::free(tgt);
        let colon = ModuleExpr::colon(ideal_expr, s.clone(), vec![1, 0]).unwrap();
        let eng = Engine::new();
        let want = MonomialIdeal::new(nvars, vec![vec![1, 0], vec![0, 1]]).unwrap();
        for a in 0..4i64 {
            for b in 0..4i64 {
                let d = vec![a, b];
                let dim = eng.dim(&colon, &d).unwrap();
                assert_eq!(dim, usize::from(want.contains_monomial(&d)), "at {:?}", d);
            }
        }
    }

    #[test]
    fn shift_convention() {
        // Shift by e0: piece at degree d equals piece of the original at d + e0
        let e = free_s(2);
        let sh = ModuleExpr::shift(e.clone(), vec![1, 0]);
        let eng = Engine::new();
        assert_eq!(eng.dim(&sh, &[-1, 0]).unwrap(), 1);
        assert_eq!(eng.dim(&sh, &[-2, 0]).unwrap(), 0);
        assert_eq!(eng.dim(&sh, &[0, 0]).unwrap(), 1);
    }

    #[test]
    fn fitting_examples() {
        // diag(x, y)
        let nvars = 2;
        let src = FreeModuleSpec::new(nvars, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let tgt = FreeModuleSpec::standard(nvars, 2);
        let m = MonomialMatrix::new(
            src,
            tgt,
            vec![
                vec![Some(MonomialEntry::var(0, nvars)), None],
                vec![None, Some(MonomialEntry::var(1, nvars))],
            ],
        )
        .unwrap();
        match fitting_ideal(&m, 0).unwrap() {
            FittingIdeal::Monomial(i) => assert_eq!(i.gens(), &[vec![1, 1]]),
            _ => panic!("expected monomial"),
        }
        match fitting_ideal(&m, 1).unwrap() {
            FittingIdeal::Monomial(i) => {
                assert_eq!(i.gens(), &[vec![0, 1], vec![1, 0]])
            }
            _ => panic!("expected monomial"),
        }
        // identity matrix: Fitt_0 = <1>
        let id = MonomialMatrix::new(
            FreeModuleSpec::standard(nvars, 2),
            FreeModuleSpec::standard(nvars, 2),
            vec![
                vec![Some(MonomialEntry::constant(one(), nvars)), None],
                vec![None, Some(MonomialEntry::constant(one(), nvars))],
            ],
        )
        .unwrap();
        match fitting_ideal(&id, 0).unwrap() {
            FittingIdeal::Monomial(i) => assert!(i.is_unit()),
            _ => panic!("expected monomial"),
        }
    }

    #[test]
    fn minor_bound_enforced() {
        let spec = FreeModuleSpec::standard(1, 7);
        let entries = vec![vec![None; 7]; 7];
        let m = MonomialMatrix::new(spec.clone(), spec, entries).unwrap();
        assert!(matches!(
            minors_all_monomial(&m),
            Err(Error::MinorBoundExceeded { .. })
        ));
    }
}
