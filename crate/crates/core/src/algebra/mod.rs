//! Exact operator-ordering algebra on words in X and P.
//!
//! Elements are polynomials in the noncommuting symbols `X`, `P` with
//! coefficients that are Gaussian rationals times nonnegative powers of ħ,
//! kept in normal order (every X to the left of every P). The single
//! rewrite `P X -> X P - iħ` generates the whole calculus; the closed-form
//! reordering used by [`OpPoly::mul`] is
//! `P^b X^a = Σ_k k! C(b,k) C(a,k) (-iħ)^k X^{a-k} P^{b-k}`,
//! and [`normal_order_word`] re-derives the same normal forms by literal
//! one-swap rewriting, which is the reference the closed form is tested
//! against.
//!
//! All arithmetic is exact; nothing in this module touches floating point
//! except the convenience evaluator [`crehan_spectrum`].

mod text;

pub use text::{format_op, parse_op};

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Total-degree cap for symbolic operations; bounds memory on adversarial
/// inputs without getting in the way of anything desk-scale.
pub const MAX_DEGREE: u32 = 64;

/// Exact complex rational `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self { re: BigRational::from_integer(BigInt::from(v)), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self { re: BigRational::new(BigInt::from(num), BigInt::from(den)), im: BigRational::zero() }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn neg(&self) -> Self {
        Self { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `(-i)^k`.
    pub fn neg_i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Self::one(),
            1 => Self { re: BigRational::zero(), im: -BigRational::one() },
            2 => Self { re: -BigRational::one(), im: BigRational::zero() },
            _ => Self::i(),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Good enough for display-scale magnitudes; exact work never leaves
    // BigRational.
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

pub(crate) fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for v in 2..=n as u64 {
        acc *= BigInt::from(v);
    }
    acc
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn ratio_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc = &acc * base;
    }
    acc
}

/// Polynomial in ħ with Gaussian-rational coefficients, keyed by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HbarPoly {
    coeffs: BTreeMap<u32, GaussRat>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        Self { coeffs }
    }

    pub fn term(c: GaussRat, hbar_exp: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(hbar_exp, c);
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &GaussRat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.coeffs {
            let entry = self.coeffs.entry(*e).or_insert_with(GaussRat::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                self.coeffs.remove(e);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let add = Self::term(c1.mul(c2), e1 + e2);
                out.add_assign(&add);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.coeffs {
            out.add_assign(&Self::term(v.mul(c), *e));
        }
        out
    }

    pub fn shift_hbar(&self, by: u32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    /// Coefficient conjugation; ħ itself is real and untouched.
    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    /// Numeric value at a given ħ.
    pub fn eval(&self, hbar: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.coeffs {
            let (cr, ci) = c.to_f64();
            let h = hbar.powi(*e as i32);
            re += cr * h;
            im += ci * h;
        }
        (re, im)
    }
}

/// Normal-ordered operator polynomial: a sum of `coeff(ħ) · X^a P^b` terms
/// keyed by `(a, b)`. The canonical form keeps no zero coefficients, which
/// makes structural equality semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpPoly {
    terms: BTreeMap<(u32, u32), HbarPoly>,
}

impl OpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, HbarPoly::constant(GaussRat::one()))
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, HbarPoly::constant(GaussRat::one()))
    }

    pub fn p() -> Self {
        Self::monomial(0, 1, HbarPoly::constant(GaussRat::one()))
    }

    pub fn monomial(x_exp: u32, p_exp: u32, coeff: HbarPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((x_exp, p_exp), coeff);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &HbarPoly)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x_exp: u32, p_exp: u32) -> HbarPoly {
        self.terms.get(&(x_exp, p_exp)).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            let entry = self.terms.entry(*k).or_default();
            entry.add_assign(v);
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect() }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let s = v.scale(c);
            if !s.is_zero() {
                out.terms.insert(*k, s);
            }
        }
        out
    }

    pub fn scale_hbar(&self, c: &HbarPoly) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let s = v.mul(c);
            if !s.is_zero() {
                out.terms.insert(*k, s);
            }
        }
        out
    }

    /// Normal-ordered product. Rejects results whose total degree would
    /// exceed [`MAX_DEGREE`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let deg = self.total_degree() + other.total_degree();
        if deg > MAX_DEGREE {
            return Err(Error::DegreeCap(deg, MAX_DEGREE));
        }
        let mut out = Self::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let coeff = c1.mul(c2);
                // X^{a1} (P^{b1} X^{a2}) P^{b2} with the closed-form swap.
                let kmax = (*b1).min(*a2);
                for k in 0..=kmax {
                    let comb = GaussRat::from_rational(BigRational::from_integer(
                        factorial(k) * binomial(*b1, k) * binomial(*a2, k),
                    ))
                    .mul(&GaussRat::neg_i_pow(k));
                    let term_coeff = coeff.scale(&comb).shift_hbar(k);
                    out.add_assign(&Self::monomial(a1 + a2 - k, b1 + b2 - k, term_coeff));
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.add(&other.mul(self)?))
    }

    /// Formal adjoint: reverse each word and conjugate its coefficient,
    /// then restore normal order. X and P are individually self-adjoint.
    pub fn formal_adjoint(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            // (X^a P^b)^* = P^b X^a.
            let reordered = reorder_p_x(*b, *a);
            out.add_assign(&reordered.scale_hbar(&c.conj()));
        }
        out
    }

    /// Numeric coefficient of `X^a P^b` at a given ħ.
    pub fn coeff_at(&self, x_exp: u32, p_exp: u32, hbar: f64) -> (f64, f64) {
        self.coeff(x_exp, p_exp).eval(hbar)
    }
}

/// Normal form of `P^b X^a` via the closed-form swap identity.
fn reorder_p_x(b: u32, a: u32) -> OpPoly {
    let mut out = OpPoly::zero();
    for k in 0..=b.min(a) {
        let comb = GaussRat::from_rational(BigRational::from_integer(
            factorial(k) * binomial(b, k) * binomial(a, k),
        ))
        .mul(&GaussRat::neg_i_pow(k));
        out.add_assign(&OpPoly::monomial(a - k, b - k, HbarPoly::term(comb, k)));
    }
    out
}

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    X,
    P,
}

/// Normal-orders a word by literal rewriting: repeatedly replace the first
/// adjacent `P X` with `X P` plus a `-iħ`-weighted deletion, until every
/// word is sorted. This is the reference procedure everything else is
/// checked against; it is exponential in the worst case and capped at
/// [`MAX_DEGREE`] letters.
pub fn normal_order_word(word: &[Letter]) -> Result<OpPoly> {
    normal_order_word_with(word, |_| 0)
}

/// Strategy-parametrized variant of [`normal_order_word`]: `choose` picks
/// which of the currently available `P X` inversions to rewrite (its
/// argument is the inversion count; the return value is taken modulo it).
/// Any strategy must reach the same normal form; tests exercise this with
/// randomized choices.
pub fn normal_order_word_with(word: &[Letter], mut choose: impl FnMut(usize) -> usize) -> Result<OpPoly> {
    if word.len() > MAX_DEGREE as usize {
        return Err(Error::DegreeCap(word.len() as u32, MAX_DEGREE));
    }
    let mut out = OpPoly::zero();
    // Work items: (word, accumulated coefficient).
    let mut stack: Vec<(Vec<Letter>, HbarPoly)> =
        vec![(word.to_vec(), HbarPoly::constant(GaussRat::one()))];
    while let Some((w, coeff)) = stack.pop() {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] == Letter::P && w[i + 1] == Letter::X)
            .collect();
        if inversions.is_empty() {
            let a = w.iter().filter(|&&l| l == Letter::X).count() as u32;
            let b = w.len() as u32 - a;
            out.add_assign(&OpPoly::monomial(a, b, coeff));
            continue;
        }
        let i = inversions[choose(inversions.len()) % inversions.len()];
        // Swap branch: ... X P ...
        let mut swapped = w.clone();
        swapped[i] = Letter::X;
        swapped[i + 1] = Letter::P;
        stack.push((swapped, coeff.clone()));
        // Deletion branch: drop both letters, multiply by -iħ.
        let mut deleted = Vec::with_capacity(w.len() - 2);
        deleted.extend_from_slice(&w[..i]);
        deleted.extend_from_slice(&w[i + 2..]);
        let minus_i = GaussRat::i().neg();
        stack.push((deleted, coeff.scale(&minus_i).shift_hbar(1)));
    }
    Ok(out)
}

/// Quantization schemes for classical monomials `x^m p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantScheme {
    Weyl,
    BornJordan,
    Tau(BigRational),
}

/// `∫₀¹ (1-τ)^k τ^{n-k} dτ = k!(n-k)!/(n+1)!`, the weight that turns the
/// τ-family into the equal-weight Born–Jordan rule.
pub fn beta_average_coefficient(k: u32, n: u32) -> BigRational {
    BigRational::new(factorial(k) * factorial(n - k), factorial(n + 1))
}

/// Orders the classical monomial `x^m p^n` under the given scheme:
///
/// * τ-rule: `Σ_k C(n,k) (1-τ)^k τ^{n-k} P^k X^m P^{n-k}`;
/// * Weyl is the τ-rule at τ = 1/2, equivalently
///   `2^{-n} Σ_k C(n,k) P^{n-k} X^m P^k`;
/// * Born–Jordan is the equal-weight average
///   `(n+1)^{-1} Σ_k P^{n-k} X^m P^k`, equivalently the Beta-weighted
///   τ-family average.
pub fn quantize_monomial(m: u32, n: u32, scheme: &QuantScheme) -> Result<OpPoly> {
    if m + n > MAX_DEGREE {
        return Err(Error::DegreeCap(m + n, MAX_DEGREE));
    }
    match scheme {
        QuantScheme::Tau(tau) => {
            let mut out = OpPoly::zero();
            let one_minus = &BigRational::one() - tau;
            for k in 0..=n {
                let w = BigRational::from_integer(binomial(n, k))
                    * ratio_pow(&one_minus, k)
                    * ratio_pow(tau, n - k);
                if w.is_zero() {
                    continue;
                }
                let word = sandwich(k, m, n - k);
                out.add_assign(&word.scale(&GaussRat::from_rational(w)));
            }
            Ok(out)
        }
        QuantScheme::Weyl => {
            quantize_monomial(m, n, &QuantScheme::Tau(BigRational::new(1.into(), 2.into())))
        }
        QuantScheme::BornJordan => {
            let mut out = OpPoly::zero();
            let w = GaussRat::from_rational(BigRational::new(1.into(), (n as i64 + 1).into()));
            for k in 0..=n {
                out.add_assign(&sandwich(k, m, n - k).scale(&w));
            }
            Ok(out)
        }
    }
}

/// Normal form of `P^k X^m P^j`.
fn sandwich(k: u32, m: u32, j: u32) -> OpPoly {
    let mut out = OpPoly::zero();
    for ((a, b), c) in reorder_p_x(k, m).terms {
        out.add_assign(&OpPoly::monomial(a, b + j, c));
    }
    out
}

/// Orders a classical polynomial given as `(m, n, coefficient)` monomials.
pub fn quantize_polynomial(terms: &[(u32, u32, GaussRat)], scheme: &QuantScheme) -> Result<OpPoly> {
    let mut out = OpPoly::zero();
    for (m, n, c) in terms {
        out.add_assign(&quantize_monomial(*m, *n, scheme)?.scale(c));
    }
    Ok(out)
}

/// Closed-form spectrum of the Born–Jordan-ordered cubic oscillator
/// `E_N = (N + 1/2)ħ + λħ(2N+1)³ + λħ(2N+1)(3αħ² - 4)`, exact arithmetic.
pub fn crehan_spectrum_exact(
    n_level: u32,
    lambda: &BigRational,
    alpha: &BigRational,
    hbar: &BigRational,
) -> BigRational {
    let two_n_plus_1 = BigRational::from_integer(BigInt::from(2 * n_level as i64 + 1));
    let half = BigRational::new(1.into(), 2.into());
    let n_rat = BigRational::from_integer(BigInt::from(n_level as i64));
    let three = BigRational::from_integer(3.into());
    let four = BigRational::from_integer(4.into());
    let first = (&n_rat + &half) * hbar;
    let second = lambda * hbar * ratio_pow(&two_n_plus_1, 3);
    let third = lambda * hbar * &two_n_plus_1 * (three * alpha * hbar * hbar - four);
    first + second + third
}

/// Floating-point convenience wrapper around [`crehan_spectrum_exact`]'s
/// formula.
pub fn crehan_spectrum(n_level: u32, lambda: f64, alpha: f64, hbar: f64) -> f64 {
    let tn = 2.0 * n_level as f64 + 1.0;
    (n_level as f64 + 0.5) * hbar + lambda * hbar * tn.powi(3) + lambda * hbar * tn * (3.0 * alpha * hbar * hbar - 4.0)
}
