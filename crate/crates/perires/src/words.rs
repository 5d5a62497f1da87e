//! Freely reduced words over a finite alphabet.
//!
//! Words are stored in exponent-collected form: a sequence of syllables
//! `(generator, exponent)` with nonzero exponents and distinct adjacent
//! generators. The empty sequence is the identity. Exponents are
//! arbitrary-precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Bound on letter-level expansion of `(multi-syllable word)^n`.
const MAX_POW_EXPANSION: u64 = 1 << 20;

/// A finite ordered set of generator names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Alphabet>> {
        let mut seen = std::collections::HashSet::new();
        let mut owned = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_valid_name(n) {
                return Err(Error::Validation(format!("invalid generator name `{n}`")));
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::Validation(format!("duplicate generator name `{n}`")));
            }
            owned.push(n.to_string());
        }
        Ok(Arc::new(Alphabet { names: owned }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One exponent-collected factor of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: BigInt,
}

/// A freely reduced word; element of the free group on its alphabet.
#[derive(Debug, Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    syllables: Vec<Syllable>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables && self.alphabet == other.alphabet
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.syllables.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        // shortlex-ish: syllable count, then syllable sequence
        self.syllables
            .len()
            .cmp(&other.syllables.len())
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl Word {
    pub fn identity(alphabet: Arc<Alphabet>) -> Word {
        Word { alphabet, syllables: Vec::new() }
    }

    pub fn generator(alphabet: Arc<Alphabet>, index: usize) -> Word {
        assert!(index < alphabet.len(), "generator index out of range");
        Word {
            alphabet,
            syllables: vec![Syllable { gen: index, exp: BigInt::one() }],
        }
    }

    pub fn generator_pow(alphabet: Arc<Alphabet>, index: usize, exp: impl Into<BigInt>) -> Word {
        assert!(index < alphabet.len(), "generator index out of range");
        let exp = exp.into();
        if exp.is_zero() {
            return Word::identity(alphabet);
        }
        Word { alphabet, syllables: vec![Syllable { gen: index, exp }] }
    }

    /// Builds a word from raw syllables, applying free reduction.
    pub fn from_syllables(
        alphabet: Arc<Alphabet>,
        syllables: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for (gen, exp) in syllables {
            assert!(gen < alphabet.len(), "generator index out of range");
            push_reduced(&mut out, gen, exp);
        }
        Word { alphabet, syllables: out }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, counting exponent magnitudes.
    pub fn letter_len(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exp.abs()).sum()
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_reduced(&mut out, s.gen, s.exp.clone());
        }
        Ok(Word { alphabet: self.alphabet.clone(), syllables: out })
    }

    pub fn inv(&self) -> Word {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable { gen: s.gen, exp: -s.exp.clone() })
            .collect();
        Word { alphabet: self.alphabet.clone(), syllables }
    }

    pub fn pow(&self, n: &BigInt) -> Result<Word> {
        if n.is_zero() || self.is_identity() {
            return Ok(Word::identity(self.alphabet.clone()));
        }
        if self.syllables.len() == 1 {
            let s = &self.syllables[0];
            return Ok(Word::generator_pow(self.alphabet.clone(), s.gen, &s.exp * n));
        }
        let base = if n.is_negative() { self.inv() } else { self.clone() };
        let reps = u64::try_from(n.abs()).map_err(|_| Error::ExponentTooLarge)?;
        if reps.saturating_mul(self.syllables.len() as u64) > MAX_POW_EXPANSION {
            return Err(Error::ExponentTooLarge);
        }
        let mut acc = Word::identity(self.alphabet.clone());
        for _ in 0..reps {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Expands the word into single letters `(gen, ±1)`.
    pub fn letters(&self) -> Result<Vec<(usize, i8)>> {
        let mut out = Vec::new();
        for s in &self.syllables {
            let reps = u64::try_from(s.exp.abs()).map_err(|_| Error::ExponentTooLarge)?;
            if out.len() as u64 + reps > MAX_POW_EXPANSION {
                return Err(Error::ExponentTooLarge);
            }
            let sign: i8 = if s.exp.is_negative() { -1 } else { 1 };
            for _ in 0..reps {
                out.push((s.gen, sign));
            }
        }
        Ok(out)
    }
}

fn push_reduced(out: &mut Vec<Syllable>, gen: usize, exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.gen == gen {
            last.exp += exp;
            if last.exp.is_zero() {
                out.pop();
            }
            return;
        }
    }
    out.push(Syllable { gen, exp });
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.alphabet.name(s.gen))?;
            if !s.exp.is_one() {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// Parses the word grammar:
/// `word := term ('*' term)* | '1'`, `term := atom ('^' int)?`,
/// `atom := NAME | '(' word ')'`, `int := '-'? [0-9]+`.
pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<Word> {
    let mut p = Parser::new(text, alphabet.clone());
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

pub(crate) struct Parser {
    pub bytes: Vec<u8>,
    pub pos: usize,
    alphabet: Arc<Alphabet>,
}

impl Parser {
    pub(crate) fn new(text: &str, alphabet: Arc<Alphabet>) -> Parser {
        Parser { bytes: text.as_bytes().to_vec(), pos: 0, alphabet }
    }

    pub(crate) fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    pub(crate) fn word(&mut self) -> Result<Word> {
        self.skip_ws();
        // bare '1' denotes the identity when it stands alone as the word
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Word::identity(self.alphabet.clone()));
        }
        let mut w = self.term()?;
        while self.eat(b'*') {
            let t = self.term()?;
            w = w.mul(&t)?;
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.eat(b'^') {
            let n = self.int()?;
            atom.pow(&n)
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.name();
                match self.alphabet.index_of(&name) {
                    Some(i) => Ok(Word::generator(self.alphabet.clone(), i)),
                    None => Err(Error::UnknownGenerator(name)),
                }
            }
            _ => Err(self.err("expected generator name or `(`")),
        }
    }

    pub(crate) fn name(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    pub(crate) fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Arc<Alphabet> {
        Alphabet::new(&["a", "b", "c", "d"]).unwrap()
    }

    fn w(s: &str) -> Word {
        parse_word(s, &ab()).unwrap()
    }

    #[test]
    fn free_reduction() {
        let x = w("a");
        assert!(x.mul(&x.inv()).unwrap().is_identity());
        assert_eq!(w("a^2*b").mul(&w("b^-1*a")).unwrap(), w("a^3"));
    }

    #[test]
    fn torus_knot_relator_shape() {
        let r = w("a^7").mul(&w("b^-3")).unwrap();
        assert_eq!(r, w("a^7*b^-3"));
        assert_eq!(r.syllables().len(), 2);
    }

    #[test]
    fn inverse_examples() {
        assert!(w("1").inv().is_identity());
        assert_eq!(w("a^2*b^-1").inv(), w("b*a^-2"));
        // commutator inverse
        assert_eq!(w("a*b*a^-1*b^-1").inv(), w("b*a*b^-1*a^-1"));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("a^3*b^-2").to_string(), "a^3*b^-2");
        assert_eq!(w("(a*b)^-1"), w("b^-1*a^-1"));
        assert_eq!(w("a*b*a^-1*b^-1").syllables().len(), 4);
        assert_eq!(w("  a *\tb"), w("a*b"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_word("e", &ab()), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_word("a^", &ab()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("(a", &ab()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("a b", &ab()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn alphabet_mismatch() {
        let other = Alphabet::new(&["x"]).unwrap();
        let u = Word::generator(other, 0);
        assert!(matches!(w("a").mul(&u), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(&["1x"]).is_err());
        assert!(Alphabet::new(&["x", "x"]).is_err());
        assert!(Alphabet::new(&["x_1", "Delta"]).is_ok());
    }

    prop_compose! {
        fn arb_word(max_sylls: usize)
            (sylls in prop::collection::vec((0usize..4, -5i64..=5), 0..max_sylls))
            -> Word
        {
            Word::from_syllables(ab(), sylls.into_iter().map(|(g, e)| (g, BigInt::from(e))))
        }
    }

    proptest! {
        #[test]
        fn associativity(u in arb_word(8), v in arb_word(8), t in arb_word(8)) {
            let l = u.mul(&v).unwrap().mul(&t).unwrap();
            let r = u.mul(&v.mul(&t).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn identity_and_inverse(u in arb_word(10)) {
            let e = Word::identity(ab());
            prop_assert_eq!(u.mul(&e).unwrap(), u.clone());
            prop_assert_eq!(e.mul(&u).unwrap(), u.clone());
            prop_assert!(u.mul(&u.inv()).unwrap().is_identity());
            prop_assert!(u.inv().mul(&u).unwrap().is_identity());
            prop_assert_eq!(u.inv().inv(), u);
        }

        #[test]
        fn print_parse_roundtrip(u in arb_word(10)) {
            let printed = u.to_string();
            let reparsed = parse_word(&printed, &ab()).unwrap();
            prop_assert_eq!(reparsed, u);
        }
    }
}
