//! Fox free differential calculus on free-group words.
//!
//! The derivative with respect to a generator is the unique derivation
//! `D(uv) = D(u) + u.D(v)` with `D(x_j) = delta_ij`. On exponent-collected
//! syllables the closed forms are
//! `D(x^n) = N(x, n-1)` for `n > 0` and `D(x^n) = -x^n N(x, |n|-1)` for
//! `n < 0`, so large powers stay cheap.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::complex::GrMatrix;
use crate::error::{Error, Result};
use crate::groupring::{ngk, GroupRingElement, RingContext};
use crate::words::Word;

/// Fox derivative of `w` with respect to generator `gen`, in the free ring.
pub fn fox_derivative(
    free_ctx: &Arc<RingContext>,
    w: &Word,
    gen: usize,
) -> Result<GroupRingElement> {
    if w.alphabet() != free_ctx.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if gen >= free_ctx.alphabet().len() {
        return Err(Error::UnknownGenerator(format!("#{gen}")));
    }
    let mut acc = GroupRingElement::zero(free_ctx.clone());
    let mut prefix = Word::identity(free_ctx.alphabet().clone());
    for s in w.syllables() {
        if s.gen == gen {
            let d = syllable_derivative(free_ctx, s.gen, &s.exp)?;
            let pref = GroupRingElement::from_word(free_ctx.clone(), &prefix)?;
            acc = acc.add(&pref.mul(&d)?)?;
        }
        prefix = prefix.mul(&Word::generator_pow(
            free_ctx.alphabet().clone(),
            s.gen,
            s.exp.clone(),
        ))?;
    }
    Ok(acc)
}

fn syllable_derivative(
    free_ctx: &Arc<RingContext>,
    gen: usize,
    exp: &BigInt,
) -> Result<GroupRingElement> {
    let g = Word::generator(free_ctx.alphabet().clone(), gen);
    if exp.is_positive() {
        ngk(free_ctx, &g, &(exp - BigInt::one()))
    } else {
        let gn = Word::generator_pow(free_ctx.alphabet().clone(), gen, exp.clone());
        let head = GroupRingElement::from_word(free_ctx.clone(), &gn)?;
        let tail = ngk(free_ctx, &g, &(exp.abs() - BigInt::one()))?;
        Ok(head.mul(&tail)?.neg())
    }
}

/// Verifies the fundamental formula `w - 1 = sum_i (dw/dx_i)(x_i - 1)`
/// exactly in the free ring. Holds for every word; exposed as a self-test.
pub fn fundamental_check(free_ctx: &Arc<RingContext>, w: &Word) -> Result<bool> {
    let mut sum = GroupRingElement::zero(free_ctx.clone());
    for i in 0..free_ctx.alphabet().len() {
        let d = fox_derivative(free_ctx, w, i)?;
        let gi = Word::generator(free_ctx.alphabet().clone(), i);
        let gm1 = GroupRingElement::from_word(free_ctx.clone(), &gi)?
            .sub(&GroupRingElement::one(free_ctx.clone()))?;
        sum = sum.add(&d.mul(&gm1)?)?;
    }
    let lhs = GroupRingElement::from_word(free_ctx.clone(), w)?
        .sub(&GroupRingElement::one(free_ctx.clone()))?;
    Ok(sum == lhs)
}

/// The map induced by the canonical quotient: re-normalizes coefficients
/// of a free-ring element in the target context.
pub fn induced_map(
    a: &GroupRingElement,
    target: &Arc<RingContext>,
) -> Result<GroupRingElement> {
    a.into_context(target)
}

/// The (#relators x #generators) matrix of quotient-mapped Fox derivatives.
pub fn fox_jacobian(
    free_ctx: &Arc<RingContext>,
    relators: &[Word],
    target: &Arc<RingContext>,
) -> Result<GrMatrix> {
    let k = free_ctx.alphabet().len();
    let mut rows = Vec::with_capacity(relators.len());
    for r in relators {
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            row.push(induced_map(&fox_derivative(free_ctx, r, i)?, target)?);
        }
        rows.push(row);
    }
    GrMatrix::from_rows(target.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{parse_element, Normalizer, RingLabel};
    use crate::words::{parse_word, Alphabet};
    use proptest::prelude::*;

    fn ctx4() -> Arc<RingContext> {
        RingContext::free(Alphabet::new(&["a", "b", "c", "d"]).unwrap())
    }

    fn d(ctx: &Arc<RingContext>, w: &str, g: usize) -> GroupRingElement {
        fox_derivative(ctx, &parse_word(w, ctx.alphabet()).unwrap(), g).unwrap()
    }

    #[test]
    fn defining_cases() {
        let ctx = ctx4();
        assert_eq!(d(&ctx, "a", 0), GroupRingElement::one(ctx.clone()));
        assert!(d(&ctx, "a", 1).is_structurally_zero());
    }

    #[test]
    fn power_closed_form() {
        let ctx = ctx4();
        let p = 5;
        let expect = parse_element("1 + a + a^2 + a^3 + a^4", &ctx).unwrap();
        assert_eq!(d(&ctx, &format!("a^{p}"), 0), expect);
        assert_eq!(d(&ctx, "b^-1", 1), parse_element("-b^-1", &ctx).unwrap());
        assert_eq!(
            d(&ctx, "a^-3", 0),
            parse_element("-a^-1 - a^-2 - a^-3", &ctx).unwrap()
        );
    }

    /// Letter-by-letter oracle for the derivative, straight from the
    /// derivation law; the closed-form implementation must agree with it.
    fn oracle(ctx: &Arc<RingContext>, w: &Word, gen: usize) -> GroupRingElement {
        let mut acc = GroupRingElement::zero(ctx.clone());
        let mut prefix = Word::identity(ctx.alphabet().clone());
        for (g, sign) in w.letters().unwrap() {
            let letter = Word::generator_pow(ctx.alphabet().clone(), g, sign as i64);
            if g == gen {
                let dl = if sign > 0 {
                    GroupRingElement::one(ctx.clone())
                } else {
                    GroupRingElement::from_word(ctx.clone(), &letter).unwrap().neg()
                };
                let pref = GroupRingElement::from_word(ctx.clone(), &prefix).unwrap();
                acc = acc.add(&pref.mul(&dl).unwrap()).unwrap();
            }
            prefix = prefix.mul(&letter).unwrap();
        }
        acc
    }

    #[test]
    fn commutator_derivatives() {
        let ctx = ctx4();
        assert_eq!(
            d(&ctx, "a*b*a^-1*b^-1", 0),
            parse_element("1 - a*b*a^-1", &ctx).unwrap()
        );
        assert_eq!(
            d(&ctx, "a*b*a^-1*b^-1", 1),
            parse_element("a - a*b*a^-1*b^-1", &ctx).unwrap()
        );
        assert!(fundamental_check(&ctx, &parse_word("a*b*a^-1*b^-1", ctx.alphabet()).unwrap())
            .unwrap());
    }

    #[test]
    fn fundamental_edge_cases() {
        let ctx = ctx4();
        assert!(fundamental_check(&ctx, &Word::identity(ctx.alphabet().clone())).unwrap());
        assert!(fundamental_check(&ctx, &parse_word("a^7*b^-3", ctx.alphabet()).unwrap()).unwrap());
    }

    #[test]
    fn induced_map_examples() {
        let free = ctx4();
        let one = GroupRingElement::one(free.clone());
        let cyc2 = RingContext::new(
            Alphabet::new(&["a", "b", "c", "d"]).unwrap(),
            Normalizer::FiniteCyclicOrder {
                orders: vec![2.into(), 0.into(), 0.into(), 0.into()],
            },
            None,
            RingLabel::Quotient,
        )
        .unwrap();
        assert_eq!(induced_map(&one, &cyc2).unwrap(), GroupRingElement::one(cyc2.clone()));
        let e = parse_element("a + a^-1", &free).unwrap();
        assert_eq!(induced_map(&e, &cyc2).unwrap(), parse_element("2*a", &cyc2).unwrap());
    }

    prop_compose! {
        fn arb_word()(sylls in prop::collection::vec((0usize..4, -4i64..=4), 0..8)) -> Word {
            Word::from_syllables(
                Alphabet::new(&["a", "b", "c", "d"]).unwrap(),
                sylls.into_iter().map(|(g, e)| (g, BigInt::from(e))))
        }
    }

    proptest! {
        #[test]
        fn matches_letter_oracle(w in arb_word(), g in 0usize..4) {
            let ctx = ctx4();
            prop_assert_eq!(d(&ctx, &w.to_string(), g), oracle(&ctx, &w, g));
        }

        #[test]
        fn derivation_law(u in arb_word(), v in arb_word(), g in 0usize..4) {
            let ctx = ctx4();
            let uv = u.mul(&v).unwrap();
            let lhs = fox_derivative(&ctx, &uv, g).unwrap();
            let du = fox_derivative(&ctx, &u, g).unwrap();
            let dv = fox_derivative(&ctx, &v, g).unwrap();
            let ue = GroupRingElement::from_word(ctx.clone(), &u).unwrap();
            let rhs = du.add(&ue.mul(&dv).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_rule(w in arb_word(), g in 0usize..4) {
            let ctx = ctx4();
            let lhs = fox_derivative(&ctx, &w.inv(), g).unwrap();
            let winv = GroupRingElement::from_word(ctx.clone(), &w.inv()).unwrap();
            let rhs = winv.mul(&fox_derivative(&ctx, &w, g).unwrap()).unwrap().neg();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fundamental_formula_random(w in arb_word()) {
            let ctx = ctx4();
            prop_assert!(fundamental_check(&ctx, &w).unwrap());
        }
    }
}
