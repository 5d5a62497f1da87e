//! Chain complexes of finitely generated free modules over a ring context.
//!
//! A map of free modules `R^a -> R^b` is an `a x b` matrix acting on the
//! right of row vectors, and composition is left to right, so composites
//! are ordinary matrix products.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groupring::{GroupRingElement, RingContext, Verdict, Witness};
use crate::intmat::IntMatrix;

/// Dense matrix of group-ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrMatrix {
    context: Arc<RingContext>,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GrMatrix {
    pub fn zeros(context: Arc<RingContext>, rows: usize, cols: usize) -> GrMatrix {
        let entries = (0..rows * cols).map(|_| GroupRingElement::zero(context.clone())).collect();
        GrMatrix { context, rows, cols, entries }
    }

    pub fn identity(context: Arc<RingContext>, n: usize) -> GrMatrix {
        let mut m = GrMatrix::zeros(context.clone(), n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one(context.clone()));
        }
        m
    }

    /// Diagonal matrix `e * I_n`.
    pub fn scalar(e: &GroupRingElement, n: usize) -> GrMatrix {
        let mut m = GrMatrix::zeros(e.context().clone(), n, n);
        for i in 0..n {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(
        context: Arc<RingContext>,
        rows: Vec<Vec<GroupRingElement>>,
    ) -> Result<GrMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        for row in &rows {
            for e in row {
                if e.context() != &context {
                    return Err(Error::ContextMismatch);
                }
            }
        }
        Ok(GrMatrix { context, rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.context
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingElement) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> impl Iterator<Item = &GroupRingElement> {
        self.entries.iter()
    }

    /// Matrix product; implements "apply self, then other".
    pub fn mat_mul(&self, other: &GrMatrix) -> Result<GrMatrix> {
        if self.context != other.context {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = GrMatrix::zeros(self.context.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_structurally_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_structurally_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    let cur = out.get(i, j).add(&prod)?;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &GrMatrix) -> Result<GrMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix addition shape".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).add(other.get(i, j))?);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GrMatrix) -> Result<GrMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GrMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.neg();
        }
        out
    }

    pub fn scale_int(&self, n: &BigInt) -> GrMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scalar_mul(n);
        }
        out
    }

    /// Assembles a matrix from a grid of blocks. Row/column partition sizes
    /// are taken from the blocks themselves and must be consistent.
    pub fn from_blocks(context: Arc<RingContext>, blocks: &[Vec<&GrMatrix>]) -> Result<GrMatrix> {
        let block_cols = blocks.first().map_or(0, |r| r.len());
        if blocks.iter().any(|r| r.len() != block_cols) {
            return Err(Error::Dimension("ragged block grid".into()));
        }
        let row_sizes: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let col_sizes: Vec<usize> =
            (0..block_cols).map(|j| blocks[0][j].cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                if b.rows != row_sizes[bi] || b.cols != col_sizes[bj] {
                    return Err(Error::Dimension("inconsistent block sizes".into()));
                }
                if b.context != context {
                    return Err(Error::ContextMismatch);
                }
            }
        }
        let total_rows: usize = row_sizes.iter().sum();
        let total_cols: usize = col_sizes.iter().sum();
        let mut out = GrMatrix::zeros(context, total_rows, total_cols);
        let mut roff = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut coff = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(roff + i, coff + j, b.get(i, j).clone());
                    }
                }
                coff += col_sizes[bj];
            }
            roff += row_sizes[bi];
        }
        Ok(out)
    }

    /// Leading submatrix consisting of whole blocks, given the block
    /// partition of rows and columns.
    pub fn leading_blocks(
        &self,
        row_sizes: &[usize],
        col_sizes: &[usize],
        block_rows: usize,
        block_cols: usize,
    ) -> Result<GrMatrix> {
        let r: usize = row_sizes.iter().take(block_rows).sum();
        let c: usize = col_sizes.iter().take(block_cols).sum();
        if r > self.rows || c > self.cols {
            return Err(Error::Dimension("leading submatrix too large".into()));
        }
        let mut out = GrMatrix::zeros(self.context.clone(), r, c);
        for i in 0..r {
            for j in 0..c {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Entrywise augmentation to an integer matrix.
    pub fn augment(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).augment();
            }
        }
        m
    }

    /// Entrywise re-normalization in another context over the same alphabet.
    pub fn into_context(&self, target: &Arc<RingContext>) -> Result<GrMatrix> {
        let mut out = GrMatrix::zeros(target.clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).into_context(target)?);
            }
        }
        Ok(out)
    }

    /// Entrywise witness image: a `rows*d x cols*d` integer block matrix.
    pub fn witness_image(&self, w: &Witness) -> Result<IntMatrix> {
        let d = w.dim();
        let mut out = IntMatrix::zeros(self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let img = w.evaluate(self.get(i, j))?;
                for a in 0..d {
                    for b in 0..d {
                        out[(i * d + a, j * d + b)] = img[(a, b)].clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Verdict summary over all entries.
    pub fn zero_verdicts(&self) -> VerdictCounts {
        let mut counts = VerdictCounts::default();
        for e in &self.entries {
            match e.is_zero_verdict() {
                Verdict::Zero => counts.zero += 1,
                Verdict::Nonzero => counts.nonzero += 1,
                Verdict::Inconclusive => counts.inconclusive += 1,
            }
        }
        counts
    }
}

impl fmt::Display for GrMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerdictCounts {
    pub zero: usize,
    pub nonzero: usize,
    pub inconclusive: usize,
}

impl VerdictCounts {
    pub fn all_zero(&self) -> bool {
        self.nonzero == 0 && self.inconclusive == 0
    }

    pub fn refuted(&self) -> bool {
        self.nonzero > 0
    }
}

/// Verification strength of a chain-condition or homotopy check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStatus {
    /// Every entry reduced to zero under a complete normal form.
    VerifiedSymbolic,
    /// No refutation: augmented identities exact, witness images zero where
    /// a witness exists, remaining verdicts inconclusive.
    VerifiedAugmented,
    Failed,
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyStatus::VerifiedSymbolic => write!(f, "verified-symbolic"),
            VerifyStatus::VerifiedAugmented => write!(f, "verified-augmented+witness"),
            VerifyStatus::Failed => write!(f, "failed"),
        }
    }
}

/// One degree (or square) worth of checking.
#[derive(Debug, Clone)]
pub struct DegreeCheck {
    pub label: String,
    pub verdicts: VerdictCounts,
    pub augmented_zero: bool,
    /// None when the context carries no witness.
    pub witness_zero: Option<bool>,
}

impl DegreeCheck {
    pub fn of_matrix(label: String, m: &GrMatrix) -> DegreeCheck {
        let verdicts = m.zero_verdicts();
        let augmented_zero = m.augment().is_zero();
        let witness_zero = m
            .context()
            .witness()
            .map(|w| m.witness_image(w).map(|img| img.is_zero()).unwrap_or(false));
        DegreeCheck { label, verdicts, augmented_zero, witness_zero }
    }

    pub fn status(&self) -> VerifyStatus {
        if self.verdicts.refuted() || !self.augmented_zero || self.witness_zero == Some(false) {
            VerifyStatus::Failed
        } else if self.verdicts.inconclusive == 0 {
            VerifyStatus::VerifiedSymbolic
        } else {
            VerifyStatus::VerifiedAugmented
        }
    }
}

/// Aggregated report over several checks.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub checks: Vec<DegreeCheck>,
}

impl CheckReport {
    pub fn push(&mut self, c: DegreeCheck) {
        self.checks.push(c);
    }

    pub fn status(&self) -> VerifyStatus {
        let mut status = VerifyStatus::VerifiedSymbolic;
        for c in &self.checks {
            match c.status() {
                VerifyStatus::Failed => return VerifyStatus::Failed,
                VerifyStatus::VerifiedAugmented => status = VerifyStatus::VerifiedAugmented,
                VerifyStatus::VerifiedSymbolic => {}
            }
        }
        status
    }

    pub fn failures(&self) -> impl Iterator<Item = &DegreeCheck> {
        self.checks.iter().filter(|c| c.status() == VerifyStatus::Failed)
    }
}

/// A bounded complex of free modules, stored as a finite degree window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    context: Arc<RingContext>,
    min_degree: i64,
    ranks: Vec<usize>,
    /// differential leaving degree j, for `min_degree < j <= max_degree`
    diffs: HashMap<i64, GrMatrix>,
}

impl FreeComplex {
    pub fn new(
        context: Arc<RingContext>,
        min_degree: i64,
        ranks: Vec<usize>,
        diffs: Vec<GrMatrix>,
    ) -> Result<FreeComplex> {
        if ranks.is_empty() {
            return Err(Error::Validation("complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        let mut map = HashMap::new();
        for (i, d) in diffs.into_iter().enumerate() {
            let j = min_degree + 1 + i as i64;
            if d.rows != ranks[i + 1] || d.cols != ranks[i] {
                return Err(Error::Dimension(format!(
                    "differential at degree {j} is {}x{}, expected {}x{}",
                    d.rows,
                    d.cols,
                    ranks[i + 1],
                    ranks[i]
                )));
            }
            if d.context() != &context {
                return Err(Error::ContextMismatch);
            }
            map.insert(j, d);
        }
        Ok(FreeComplex { context, min_degree, ranks, diffs: map })
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.context
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, degree: i64) -> usize {
        if degree < self.min_degree || degree > self.max_degree() {
            return 0;
        }
        self.ranks[(degree - self.min_degree) as usize]
    }

    /// The differential leaving `degree`; None when either side is empty.
    pub fn differential(&self, degree: i64) -> Option<&GrMatrix> {
        self.diffs.get(&degree)
    }

    /// Degree shift by `s` with differentials scaled by `(-1)^s`.
    pub fn suspend(&self, s: u32) -> FreeComplex {
        let sign = if s % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        let diffs = self
            .diffs
            .iter()
            .map(|(j, d)| (j + s as i64, d.scale_int(&sign)))
            .collect();
        FreeComplex {
            context: self.context.clone(),
            min_degree: self.min_degree + s as i64,
            ranks: self.ranks.clone(),
            diffs,
        }
    }

    /// Base change along a quotient of the same alphabet: `P (x) S`.
    /// Ranks are unchanged; every entry is re-normalized in `target`.
    pub fn reduce(&self, target: &Arc<RingContext>) -> Result<FreeComplex> {
        let mut diffs = HashMap::new();
        for (j, d) in &self.diffs {
            diffs.insert(*j, d.into_context(target)?);
        }
        Ok(FreeComplex {
            context: target.clone(),
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            diffs,
        })
    }

    /// Chain condition `D_{j+1} D_j = 0` at every composable pair.
    pub fn check_complex(&self) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        for j in self.min_degree + 2..=self.max_degree() {
            if let (Some(above), Some(below)) = (self.differential(j), self.differential(j - 1)) {
                let prod = above.mat_mul(below)?;
                report.push(DegreeCheck::of_matrix(format!("d{}·d{}", j, j - 1), &prod));
            }
        }
        Ok(report)
    }
}

/// A degreewise map of complexes with commuting squares.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    /// component at degree j: a (source rank) x (target rank) matrix
    components: HashMap<i64, GrMatrix>,
}

impl ChainMap {
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        components: HashMap<i64, GrMatrix>,
    ) -> Result<ChainMap> {
        for (j, f) in &components {
            if f.rows != source.rank(*j) || f.cols != target.rank(*j) {
                return Err(Error::Dimension(format!(
                    "component at degree {j} is {}x{}, expected {}x{}",
                    f.rows,
                    f.cols,
                    source.rank(*j),
                    target.rank(*j)
                )));
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn component(&self, degree: i64) -> Option<&GrMatrix> {
        self.components.get(&degree)
    }

    fn component_or_zero(&self, degree: i64) -> GrMatrix {
        match self.components.get(&degree) {
            Some(m) => m.clone(),
            None => GrMatrix::zeros(
                self.target.context().clone(),
                self.source.rank(degree),
                self.target.rank(degree),
            ),
        }
    }

    /// Commuting squares `f_j d^target_j = d^source_j f_{j-1}`.
    pub fn verify(&self) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        let lo = self.source.min_degree().min(self.target.min_degree());
        let hi = self.source.max_degree().max(self.target.max_degree());
        for j in lo + 1..=hi {
            let f_j = self.component_or_zero(j);
            let f_prev = self.component_or_zero(j - 1);
            let lhs = match self.target.differential(j) {
                Some(d) => f_j.mat_mul(d)?,
                None => GrMatrix::zeros(
                    self.target.context().clone(),
                    self.source.rank(j),
                    self.target.rank(j - 1),
                ),
            };
            let rhs = match self.source.differential(j) {
                Some(d) => d.mat_mul(&f_prev)?,
                None => GrMatrix::zeros(
                    self.target.context().clone(),
                    self.source.rank(j),
                    self.target.rank(j - 1),
                ),
            };
            let diff = lhs.sub(&rhs)?;
            if diff.rows == 0 || diff.cols == 0 {
                continue;
            }
            report.push(DegreeCheck::of_matrix(format!("square at degree {j}"), &diff));
        }
        Ok(report)
    }
}

/// The mapping cone `Con(f)_i = A_{i-1} (+) B_i` with block differential
/// `[[-d^A, -f], [0, d^B]]`. With `strict`, refuses chain maps whose
/// squares can be refuted.
pub fn mapping_cone(f: &ChainMap, strict: bool) -> Result<FreeComplex> {
    if strict {
        let rep = f.verify()?;
        if rep.status() == VerifyStatus::Failed {
            return Err(Error::UnverifiedChainMap);
        }
    }
    let ctx = f.target.context().clone();
    let a = &f.source;
    let b = &f.target;
    let min = (a.min_degree() + 1).min(b.min_degree());
    let max = (a.max_degree() + 1).max(b.max_degree());
    let mut ranks = Vec::new();
    for j in min..=max {
        ranks.push(a.rank(j - 1) + b.rank(j));
    }
    let mut diffs = Vec::new();
    for j in min + 1..=max {
        // rows: A_{j-1} then B_j; cols: A_{j-2} then B_{j-1}
        let (ra, rb) = (a.rank(j - 1), b.rank(j));
        let (ca, cb) = (a.rank(j - 2), b.rank(j - 1));
        let mut m = GrMatrix::zeros(ctx.clone(), ra + rb, ca + cb);
        if let Some(da) = a.differential(j - 1) {
            let nda = da.neg();
            for i in 0..ra.min(nda.rows) {
                for c in 0..ca {
                    m.set(i, c, nda.get(i, c).clone());
                }
            }
        }
        let fc = f.component_or_zero(j - 1);
        for i in 0..ra {
            for c in 0..cb {
                m.set(i, ca + c, fc.get(i, c).neg());
            }
        }
        if let Some(db) = b.differential(j) {
            for i in 0..rb {
                for c in 0..cb {
                    m.set(ra + i, ca + c, db.get(i, c).clone());
                }
            }
        }
        diffs.push(m);
    }
    FreeComplex::new(ctx, min, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{ngk, parse_element, Normalizer, RingLabel};
    use crate::words::{parse_word, Alphabet};
    use proptest::prelude::*;

    fn free_ctx() -> Arc<RingContext> {
        RingContext::free(Alphabet::new(&["t"]).unwrap())
    }

    fn cyclic_ctx(m: i64) -> Arc<RingContext> {
        RingContext::new(
            Alphabet::new(&["t"]).unwrap(),
            Normalizer::FiniteCyclicOrder { orders: vec![BigInt::from(m)] },
            None,
            RingLabel::Quotient,
        )
        .unwrap()
    }

    fn cyclic_seed(m: i64) -> FreeComplex {
        let ctx = free_ctx();
        let d1 = GrMatrix::from_rows(
            ctx.clone(),
            vec![vec![parse_element("t - 1", &ctx).unwrap()]],
        )
        .unwrap();
        let _ = m;
        FreeComplex::new(ctx, 0, vec![1, 1], vec![d1]).unwrap()
    }

    #[test]
    fn mat_mul_identity() {
        let ctx = free_ctx();
        let a = GrMatrix::from_rows(
            ctx.clone(),
            vec![vec![parse_element("t - 1", &ctx).unwrap(), parse_element("2", &ctx).unwrap()]],
        )
        .unwrap();
        let i2 = GrMatrix::identity(ctx.clone(), 2);
        assert_eq!(a.mat_mul(&i2).unwrap(), a);
    }

    #[test]
    fn cyclic_product_reduces_to_zero() {
        let m = 6;
        let q = cyclic_ctx(m);
        let t = parse_word("t", q.alphabet()).unwrap();
        let d2 = GrMatrix::from_rows(
            q.clone(),
            vec![vec![ngk(&q, &t, &BigInt::from(m - 1)).unwrap()]],
        )
        .unwrap();
        let d1 = GrMatrix::from_rows(q.clone(), vec![vec![parse_element("t - 1", &q).unwrap()]])
            .unwrap();
        let prod = d2.mat_mul(&d1).unwrap();
        assert!(prod.get(0, 0).is_structurally_zero());
        assert_eq!(prod.augment(), IntMatrix::zeros(1, 1));
    }

    #[test]
    fn suspension_signs() {
        let c = cyclic_seed(5);
        let s1 = c.suspend(1);
        assert_eq!(s1.min_degree(), 1);
        assert_eq!(
            s1.differential(2).unwrap().get(0, 0),
            &c.differential(1).unwrap().get(0, 0).neg()
        );
        let s2 = c.suspend(2);
        assert_eq!(s2.differential(3).unwrap(), c.differential(1).unwrap());
        assert_eq!(s1.suspend(1), s2);
    }

    #[test]
    fn reduce_keeps_ranks_and_kills_x() {
        let ctx = free_ctx();
        let m = 4;
        let e = parse_element(&format!("t^{m} - 1"), &ctx).unwrap();
        let c = FreeComplex::new(
            ctx.clone(),
            0,
            vec![1, 1],
            vec![GrMatrix::from_rows(ctx, vec![vec![e]]).unwrap()],
        )
        .unwrap();
        let q = cyclic_ctx(m);
        let r = c.reduce(&q).unwrap();
        assert_eq!(r.rank(0), 1);
        assert_eq!(r.rank(1), 1);
        assert!(r.differential(1).unwrap().get(0, 0).is_structurally_zero());
    }

    #[test]
    fn cone_of_zero_map_is_direct_sum() {
        let c = cyclic_seed(5);
        let f = ChainMap::new(c.suspend(0), c.clone(), HashMap::new()).unwrap();
        let cone = mapping_cone(&f, false).unwrap();
        for j in cone.min_degree()..=cone.max_degree() {
            assert_eq!(cone.rank(j), c.rank(j - 1) + c.rank(j));
        }
    }

    #[test]
    fn corrupted_complex_reports_failure() {
        let q = cyclic_ctx(4);
        let one = GroupRingElement::one(q.clone());
        let d1 = GrMatrix::from_rows(q.clone(), vec![vec![one.clone()]]).unwrap();
        let d2 = GrMatrix::from_rows(q.clone(), vec![vec![one]]).unwrap();
        let c = FreeComplex::new(q, 0, vec![1, 1, 1], vec![d1, d2]).unwrap();
        let rep = c.check_complex().unwrap();
        assert_eq!(rep.status(), VerifyStatus::Failed);
        assert_eq!(rep.failures().count(), 1);
    }

    prop_compose! {
        fn arb_matrix(rows: usize, cols: usize)
            (vals in prop::collection::vec(-3i64..=3, rows * cols))
            -> Vec<i64>
        {
            vals
        }
    }

    proptest! {
        /// Cone ranks and block placement for random small complexes;
        /// the chain-map squares are not assumed, so verification is off.
        #[test]
        fn cone_shape(ranks_a in prop::collection::vec(1usize..=3, 2..=4),
                      vals in prop::collection::vec(-2i64..=2, 64)) {
            let ctx = free_ctx();
            let mut diffs = Vec::new();
            let mut vi = 0;
            for w in ranks_a.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let mut m = GrMatrix::zeros(ctx.clone(), hi, lo);
                for i in 0..hi {
                    for j in 0..lo {
                        let v = vals[vi % vals.len()];
                        vi += 1;
                        m.set(i, j, GroupRingElement::from_int(ctx.clone(), v));
                    }
                }
                diffs.push(m);
            }
            let a = FreeComplex::new(ctx.clone(), 0, ranks_a.clone(), diffs).unwrap();
            let b = a.clone();
            let f = ChainMap::new(
                a.clone(), b.clone(),
                (0..ranks_a.len() as i64)
                    .map(|j| (j, GrMatrix::identity(ctx.clone(), a.rank(j))))
                    .collect()).unwrap();
            let cone = mapping_cone(&f, false).unwrap();
            for j in cone.min_degree()..=cone.max_degree() {
                prop_assert_eq!(cone.rank(j), a.rank(j - 1) + b.rank(j));
            }
            // block placement: the A-part of the differential is -d^A
            for j in cone.min_degree() + 1..=cone.max_degree() {
                if let (Some(cd), Some(da)) = (cone.differential(j), a.differential(j - 1)) {
                    for i in 0..da.rows {
                        for c in 0..da.cols {
                            prop_assert_eq!(cd.get(i, c).clone(), da.get(i, c).neg());
                        }
                    }
                }
            }
        }
    }
}
