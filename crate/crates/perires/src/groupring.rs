//! Integral group rings with pluggable normal-form strategies.
//!
//! Elements are finite integer combinations of [`Word`]s, kept in normal form
//! under the owning [`RingContext`]'s normalizer. Equality testing therefore
//! ranges from exact (complete normalizers) to refutation-only
//! (representation witnesses), captured by the [`Verdict`] lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::words::{Alphabet, Parser, Word};

pub const DEFAULT_REWRITE_CAP: usize = 1_000_000;

/// Outcome of a zero test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    Nonzero,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Zero => write!(f, "zero"),
            Verdict::Nonzero => write!(f, "nonzero"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Evaluation of words into an integer matrix algebra. Refutation-only:
/// a nonzero image certifies a nonzero element, a zero image proves nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    matrices: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
    dim: usize,
}

impl Witness {
    pub fn new(matrices: Vec<IntMatrix>) -> Result<Witness> {
        let dim = match matrices.first() {
            Some(m) => m.rows,
            None => return Err(Error::BadWitness),
        };
        let mut inverses = Vec::with_capacity(matrices.len());
        for m in &matrices {
            if m.rows != dim || m.cols != dim {
                return Err(Error::BadWitness);
            }
            inverses.push(m.unimodular_inverse()?);
        }
        Ok(Witness { matrices, inverses, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.dim);
        for s in w.syllables() {
            if s.gen >= self.matrices.len() {
                return Err(Error::BadWitness);
            }
            let base = if s.exp.is_negative() {
                &self.inverses[s.gen]
            } else {
                &self.matrices[s.gen]
            };
            acc = acc.mul(&pow_big(base, &s.exp.abs())?)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, e: &GroupRingElement) -> Result<IntMatrix> {
        let mut acc = IntMatrix::zeros(self.dim, self.dim);
        for (w, c) in e.terms() {
            acc = acc.add(&self.evaluate_word(w)?.scale(c))?;
        }
        Ok(acc)
    }
}

fn pow_big(m: &IntMatrix, e: &BigInt) -> Result<IntMatrix> {
    let mut result = IntMatrix::identity(m.rows);
    let mut base = m.clone();
    let (_, bytes) = e.to_bytes_le();
    let bits = e.bits();
    for i in 0..bits {
        if bytes[(i / 8) as usize] >> (i % 8) & 1 == 1 {
            result = result.mul(&base)?;
        }
        if i + 1 < bits {
            base = base.mul(&base)?;
        }
    }
    Ok(result)
}

/// Normal-form strategy for one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalizer {
    /// Free group: the freely reduced word is the normal form.
    FreeReduction,
    /// Direct product of cyclic groups, one order per generator (0 = infinite).
    FiniteCyclicOrder { orders: Vec<BigInt> },
    /// Heisenberg-type collection on a 3-letter alphabet `[x, y, z]` with
    /// `[x,y] = z` central and `z^k = 1` when `z_order = k > 0`.
    /// Normal form `x^a y^b z^c`.
    PolycyclicCollection { z_order: BigInt },
    /// `<S, U | S^{kp} = U^{kq} = 1, S^p = U^q>` on a 2-letter alphabet,
    /// with `central_order = k` (0 = the unquotiented `<S, U | S^p = U^q>`).
    /// Normal form: central power of `S^p` times an alternating word in the
    /// coset representatives `S^i` (0 < i < p) and `U^j` (0 < j < q).
    AmalgamOfCyclics { p: BigInt, q: BigInt, central_order: BigInt },
    /// User-supplied string rewriting on letters; complete only if declared
    /// confluent. Exceeding the step cap reports an inconclusive
    /// normalization instead of diverging.
    RewritingSystem { rules: Vec<(Word, Word)>, confluent: bool, step_cap: usize },
    /// No normalization beyond free reduction; the witness alone carries
    /// the (refutation-only) zero test.
    RepresentationWitness(Witness),
}

impl Normalizer {
    /// True when the normal form decides equality (sound and complete).
    pub fn complete(&self) -> bool {
        match self {
            Normalizer::FreeReduction
            | Normalizer::FiniteCyclicOrder { .. }
            | Normalizer::PolycyclicCollection { .. }
            | Normalizer::AmalgamOfCyclics { .. } => true,
            Normalizer::RewritingSystem { confluent, .. } => *confluent,
            Normalizer::RepresentationWitness(_) => false,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Normalizer::FreeReduction => "free_reduction",
            Normalizer::FiniteCyclicOrder { .. } => "finite_cyclic_order",
            Normalizer::PolycyclicCollection { .. } => "polycyclic_collection",
            Normalizer::AmalgamOfCyclics { .. } => "amalgam_of_cyclics",
            Normalizer::RewritingSystem { .. } => "rewriting_system",
            Normalizer::RepresentationWitness(_) => "representation_witness",
        }
    }

    fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            Normalizer::FiniteCyclicOrder { orders } => {
                if orders.len() != alphabet.len() {
                    return Err(Error::Validation(
                        "finite_cyclic_order needs one order per generator".into(),
                    ));
                }
                if orders.iter().any(|o| o.is_negative()) {
                    return Err(Error::Validation("generator orders must be >= 0".into()));
                }
            }
            Normalizer::PolycyclicCollection { z_order } => {
                if alphabet.len() != 3 {
                    return Err(Error::Validation(
                        "polycyclic_collection expects exactly three generators".into(),
                    ));
                }
                if z_order.is_negative() {
                    return Err(Error::Validation("z_order must be >= 0".into()));
                }
            }
            Normalizer::AmalgamOfCyclics { p, q, central_order } => {
                if alphabet.len() != 2 {
                    return Err(Error::Validation(
                        "amalgam_of_cyclics expects exactly two generators".into(),
                    ));
                }
                if !p.is_positive() || !q.is_positive() || central_order.is_negative() {
                    return Err(Error::Validation("amalgam parameters out of range".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn normalize(&self, w: &Word) -> Result<Word> {
        match self {
            Normalizer::FreeReduction | Normalizer::RepresentationWitness(_) => Ok(w.clone()),
            Normalizer::FiniteCyclicOrder { orders } => {
                let ab = w.alphabet().clone();
                let mut exps = vec![BigInt::zero(); ab.len()];
                for s in w.syllables() {
                    exps[s.gen] += &s.exp;
                }
                for (e, o) in exps.iter_mut().zip(orders) {
                    if o.is_positive() {
                        *e = e.mod_floor(o);
                    }
                }
                Ok(Word::from_syllables(
                    ab,
                    exps.into_iter().enumerate().map(|(g, e)| (g, e)),
                ))
            }
            Normalizer::PolycyclicCollection { z_order } => {
                let ab = w.alphabet().clone();
                let (mut a, mut b, mut c) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
                for s in w.syllables() {
                    match s.gen {
                        0 => {
                            // y^b x^e = x^e y^b z^{-eb}
                            c -= &s.exp * &b;
                            a += &s.exp;
                        }
                        1 => b += &s.exp,
                        2 => c += &s.exp,
                        _ => unreachable!("validated three-letter alphabet"),
                    }
                }
                if z_order.is_positive() {
                    c = c.mod_floor(z_order);
                }
                Ok(Word::from_syllables(ab, [(0usize, a), (1, b), (2, c)]))
            }
            Normalizer::AmalgamOfCyclics { p, q, central_order } => {
                normalize_amalgam(w, p, q, central_order)
            }
            Normalizer::RewritingSystem { rules, confluent: _, step_cap } => {
                rewrite_normalize(w, rules, *step_cap)
            }
        }
    }
}

fn normalize_amalgam(w: &Word, p: &BigInt, q: &BigInt, k: &BigInt) -> Result<Word> {
    let ab = w.alphabet().clone();
    // central exponent counts powers of S^p = U^q
    let mut central = BigInt::zero();
    let mut stack: Vec<(usize, BigInt)> = Vec::new();
    for s in w.syllables() {
        let bound = if s.gen == 0 { p } else { q };
        let mut n = s.exp.clone();
        if let Some(top) = stack.last() {
            if top.0 == s.gen {
                n += &stack.pop().unwrap().1;
            }
        }
        let (e, r) = n.div_mod_floor(bound);
        central += e;
        if !r.is_zero() {
            stack.push((s.gen, r));
        }
    }
    if k.is_positive() {
        central = central.mod_floor(k);
    }
    let mut sylls: Vec<(usize, BigInt)> = Vec::with_capacity(stack.len() + 1);
    sylls.push((0usize, p * central));
    sylls.extend(stack);
    Ok(Word::from_syllables(ab, sylls))
}

fn rewrite_normalize(w: &Word, rules: &[(Word, Word)], step_cap: usize) -> Result<Word> {
    let to_letters = |x: &Word| x.letters().map_err(|_| Error::RewriteCapExceeded);
    let mut letters = to_letters(w)?;
    free_reduce_letters(&mut letters);
    let compiled: Vec<(Vec<(usize, i8)>, Vec<(usize, i8)>)> = rules
        .iter()
        .map(|(l, r)| Ok((to_letters(l)?, to_letters(r)?)))
        .collect::<Result<_>>()?;
    let mut steps = 0usize;
    'outer: loop {
        for start in 0..letters.len() {
            // leftmost position, longest matching rule
            let mut best: Option<usize> = None;
            for (ri, (lhs, _)) in compiled.iter().enumerate() {
                if lhs.is_empty() || start + lhs.len() > letters.len() {
                    continue;
                }
                if letters[start..start + lhs.len()] == lhs[..] {
                    match best {
                        Some(b) if compiled[b].0.len() >= lhs.len() => {}
                        _ => best = Some(ri),
                    }
                }
            }
            if let Some(ri) = best {
                let (lhs, rhs) = &compiled[ri];
                let mut next = letters[..start].to_vec();
                next.extend_from_slice(rhs);
                next.extend_from_slice(&letters[start + lhs.len()..]);
                free_reduce_letters(&mut next);
                letters = next;
                steps += 1;
                if steps > step_cap {
                    return Err(Error::RewriteCapExceeded);
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(Word::from_syllables(
        w.alphabet().clone(),
        letters.into_iter().map(|(g, s)| (g, BigInt::from(s))),
    ))
}

fn free_reduce_letters(letters: &mut Vec<(usize, i8)>) {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
    for &(g, s) in letters.iter() {
        if let Some(&(tg, ts)) = out.last() {
            if tg == g && ts == -s {
                out.pop();
                continue;
            }
        }
        out.push((g, s));
    }
    *letters = out;
}

/// Which ring in the construction this context models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingLabel {
    Free,
    Group,
    Quotient,
}

impl fmt::Display for RingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingLabel::Free => write!(f, "free"),
            RingLabel::Group => write!(f, "group G"),
            RingLabel::Quotient => write!(f, "quotient"),
        }
    }
}

/// An integral group ring: alphabet + normal-form strategy + optional
/// refutation witness.
#[derive(Debug, PartialEq, Eq)]
pub struct RingContext {
    alphabet: Arc<Alphabet>,
    normalizer: Normalizer,
    witness: Option<Witness>,
    label: RingLabel,
}

impl RingContext {
    pub fn new(
        alphabet: Arc<Alphabet>,
        normalizer: Normalizer,
        witness: Option<Witness>,
        label: RingLabel,
    ) -> Result<Arc<RingContext>> {
        normalizer.validate(&alphabet)?;
        if let Some(w) = &witness {
            if w.matrices.len() != alphabet.len() {
                return Err(Error::BadWitness);
            }
        }
        if let Normalizer::RepresentationWitness(w) = &normalizer {
            if w.matrices.len() != alphabet.len() {
                return Err(Error::BadWitness);
            }
        }
        Ok(Arc::new(RingContext { alphabet, normalizer, witness, label }))
    }

    pub fn free(alphabet: Arc<Alphabet>) -> Arc<RingContext> {
        RingContext::new(alphabet, Normalizer::FreeReduction, None, RingLabel::Free)
            .expect("free context is always valid")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn normalizer(&self) -> &Normalizer {
        &self.normalizer
    }

    pub fn label(&self) -> RingLabel {
        self.label
    }

    /// The refutation witness, whether standalone or the normalizer itself.
    pub fn witness(&self) -> Option<&Witness> {
        if let Some(w) = &self.witness {
            return Some(w);
        }
        if let Normalizer::RepresentationWitness(w) = &self.normalizer {
            return Some(w);
        }
        None
    }

    pub fn complete(&self) -> bool {
        self.normalizer.complete()
    }

    pub fn normalize(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.normalizer.normalize(w)
    }
}

/// A finite integer combination of normal-form words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    context: Arc<RingContext>,
    support: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero(context: Arc<RingContext>) -> GroupRingElement {
        GroupRingElement { context, support: BTreeMap::new() }
    }

    pub fn one(context: Arc<RingContext>) -> GroupRingElement {
        let w = Word::identity(context.alphabet().clone());
        let mut support = BTreeMap::new();
        support.insert(w, BigInt::one());
        GroupRingElement { context, support }
    }

    pub fn from_word(context: Arc<RingContext>, w: &Word) -> Result<GroupRingElement> {
        GroupRingElement::from_terms(context, [(w.clone(), BigInt::one())])
    }

    pub fn from_int(context: Arc<RingContext>, n: impl Into<BigInt>) -> GroupRingElement {
        let n = n.into();
        let mut support = BTreeMap::new();
        if !n.is_zero() {
            support.insert(Word::identity(context.alphabet().clone()), n);
        }
        GroupRingElement { context, support }
    }

    pub fn from_terms(
        context: Arc<RingContext>,
        terms: impl IntoIterator<Item = (Word, BigInt)>,
    ) -> Result<GroupRingElement> {
        let mut support: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            let n = context.normalize(&w)?;
            let entry = support.entry(n.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                support.remove(&n);
            }
        }
        Ok(GroupRingElement { context, support })
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.context
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.support.iter()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.support.is_empty()
    }

    fn check_context(&self, other: &GroupRingElement) -> Result<()> {
        if self.context != other.context {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_context(other)?;
        let mut support = self.support.clone();
        for (w, c) in &other.support {
            let entry = support.entry(w.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                support.remove(w);
            }
        }
        Ok(GroupRingElement { context: self.context.clone(), support })
    }

    pub fn neg(&self) -> GroupRingElement {
        let support = self.support.iter().map(|(w, c)| (w.clone(), -c)).collect();
        GroupRingElement { context: self.context.clone(), support }
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, n: &BigInt) -> GroupRingElement {
        if n.is_zero() {
            return GroupRingElement::zero(self.context.clone());
        }
        let support = self.support.iter().map(|(w, c)| (w.clone(), c * n)).collect();
        GroupRingElement { context: self.context.clone(), support }
    }

    pub fn mul(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_context(other)?;
        let mut terms = Vec::with_capacity(self.support.len() * other.support.len());
        for (u, a) in &self.support {
            for (v, b) in &other.support {
                terms.push((u.mul(v)?, a * b));
            }
        }
        GroupRingElement::from_terms(self.context.clone(), terms)
    }

    /// Sum of coefficients; the canonical augmentation onto the integers.
    pub fn augment(&self) -> BigInt {
        self.support.values().sum()
    }

    /// Zero test at the strongest available level.
    pub fn is_zero_verdict(&self) -> Verdict {
        if self.support.is_empty() {
            return Verdict::Zero;
        }
        if self.context.complete() {
            return Verdict::Nonzero;
        }
        if !self.augment().is_zero() {
            return Verdict::Nonzero;
        }
        if let Some(w) = self.context.witness() {
            match w.evaluate(self) {
                Ok(img) if !img.is_zero() => return Verdict::Nonzero,
                _ => {}
            }
        }
        Verdict::Inconclusive
    }

    /// Re-normalizes every support word in `target`; the map induced by a
    /// quotient when the target context quotients this one.
    pub fn into_context(&self, target: &Arc<RingContext>) -> Result<GroupRingElement> {
        if target.alphabet() != self.context.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        GroupRingElement::from_terms(
            target.clone(),
            self.support.iter().map(|(w, c)| (w.clone(), c.clone())),
        )
    }
}

/// `N(g, k) = 1 + g + ... + g^k`.
pub fn ngk(context: &Arc<RingContext>, g: &Word, k: &BigInt) -> Result<GroupRingElement> {
    if k.is_negative() {
        return Err(Error::Validation("ngk requires k >= 0".into()));
    }
    let mut terms = Vec::new();
    let mut power = Word::identity(context.alphabet().clone());
    let mut i = BigInt::zero();
    loop {
        terms.push((power.clone(), BigInt::one()));
        if &i == k {
            break;
        }
        power = power.mul(g)?;
        i += 1;
    }
    GroupRingElement::from_terms(context.clone(), terms)
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.support.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Parses the group-ring expression grammar:
/// `expr := signed ('+' signed | '-' signed)*`,
/// `signed := int? atomexpr | int`,
/// `atomexpr := 'N(' word ',' int ')' | word`.
pub fn parse_element(text: &str, context: &Arc<RingContext>) -> Result<GroupRingElement> {
    let mut p = Parser::new(text, context.alphabet().clone());
    let mut acc = parse_signed(&mut p, context)?;
    loop {
        p.skip_ws();
        match p.peek() {
            Some(b'+') => {
                p.expect(b'+')?;
                let t = parse_signed(&mut p, context)?;
                acc = acc.add(&t)?;
            }
            Some(b'-') => {
                p.expect(b'-')?;
                let t = parse_signed(&mut p, context)?;
                acc = acc.sub(&t)?;
            }
            Some(_) => return Err(p.err("expected `+`, `-`, or end of expression")),
            None => break,
        }
    }
    Ok(acc)
}

fn parse_signed(p: &mut Parser, context: &Arc<RingContext>) -> Result<GroupRingElement> {
    p.skip_ws();
    let starts_int = match p.peek() {
        Some(c) if c.is_ascii_digit() => true,
        Some(b'-') => true,
        _ => false,
    };
    if starts_int {
        let save = p.pos;
        let n = p.int()?;
        // optional '*' then an atom; a bare int is a scalar
        let had_star = p.eat(b'*');
        match p.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' => {
                let atom = parse_atomexpr(p, context)?;
                Ok(atom.scalar_mul(&n))
            }
            _ if had_star => Err(p.err("expected word after `*`")),
            _ => {
                let _ = save;
                Ok(GroupRingElement::from_int(context.clone(), n))
            }
        }
    } else {
        parse_atomexpr(p, context)
    }
}

fn parse_atomexpr(p: &mut Parser, context: &Arc<RingContext>) -> Result<GroupRingElement> {
    p.skip_ws();
    // lookahead for the N( form
    let save = p.pos;
    if matches!(p.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_') {
        let name = p.name();
        if name == "N" && p.peek() == Some(b'(') {
            p.expect(b'(')?;
            let g = p.word()?;
            p.expect(b',')?;
            let k = p.int()?;
            p.expect(b')')?;
            return ngk(context, &g, &k);
        }
        p.pos = save;
    }
    let w = p.word()?;
    GroupRingElement::from_word(context.clone(), &w)
}
