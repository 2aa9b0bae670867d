//! The ring `Z[2cos(π/N)]` inside the real cyclotomic field, with exact
//! integer arithmetic modulo the minimal polynomial.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};

type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if rem.len() < b.len() {
        assert!(rem.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// Integer coefficients of the cyclotomic polynomial `Φ_n`.
pub(crate) fn cyclotomic(n: u64) -> Poly {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

/// Dickson polynomials `D_k(x)` with `D_k(z + 1/z) = z^k + z^-k`.
pub(crate) fn dickson(k: usize) -> Poly {
    let mut prev: Poly = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur: Poly = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = poly_mul(&cur, &[BigInt::zero(), BigInt::one()]);
        next.resize(next.len().max(prev.len()), BigInt::zero());
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        trim(&mut next);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of `2cos(π/N)`, monic with integer coefficients.
pub(crate) fn minimal_polynomial(n: u64) -> Poly {
    assert!(n >= 1);
    if n == 1 {
        // 2cos(π) = -2
        return vec![BigInt::from(2), BigInt::one()];
    }
    // Φ_{2N}(z) is palindromic of degree 2m; z^-m Φ_{2N}(z) = a_m + Σ a_{m+k} D_k(z + 1/z)
    let phi = cyclotomic(2 * n);
    let m = (phi.len() - 1) / 2;
    let mut out: Poly = vec![phi[m].clone()];
    for k in 1..=m {
        let d = dickson(k);
        out.resize(out.len().max(d.len()), BigInt::zero());
        for (i, c) in d.iter().enumerate() {
            out[i] += &phi[m + k] * c;
        }
    }
    trim(&mut out);
    out
}

/// The ring `Z[ζ]`, `ζ = 2cos(π/N)`, with power basis `1, ζ, …, ζ^(d-1)`.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    n: u64,
    modulus: Poly,
    /// `ζ^k · 2^PREC`, rounded, for `k < degree`.
    powers: Vec<BigInt>,
}

const PREC: u64 = 256;

/// `poly(x / 2^prec) · 2^prec` with `x` in fixed point.
fn eval_fixed(poly: &[BigInt], x: &BigInt, prec: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = ((acc * x) >> prec) + (c << prec);
    }
    acc
}

/// `2cos(π/N)` in fixed point, by bisection on the minimal polynomial.
fn root_fixed(n: u64, modulus: &[BigInt], prec: u64) -> BigInt {
    let z = 2.0 * (std::f64::consts::PI / n as f64).cos();
    let fixed = |x: f64| BigInt::from_f64(x * 2f64.powi(52)).expect("finite") << (prec - 52);
    let mut eps = 1e-9;
    let (mut lo, mut hi) = loop {
        let (lo, hi) = (fixed(z - eps), fixed(z + eps));
        if eval_fixed(modulus, &lo, prec).sign() != eval_fixed(modulus, &hi, prec).sign() {
            break (lo, hi);
        }
        eps *= 4.0;
        assert!(eps < 1e-2, "no sign change near 2cos(pi/{n})");
    };
    let lo_sign = eval_fixed(modulus, &lo, prec).sign();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        if eval_fixed(modulus, &mid, prec).sign() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn fixed_powers(n: u64, modulus: &[BigInt], prec: u64) -> Vec<BigInt> {
    let d = modulus.len() - 1;
    let z = root_fixed(n, modulus, prec);
    let mut out = vec![BigInt::one() << prec];
    while out.len() < d {
        let next = (out.last().unwrap() * &z) >> prec;
        out.push(next);
    }
    out
}

/// Sign of `Σ c_k ζ^k` from fixed-point powers, or `None` if the error bound
/// does not separate it from zero.
fn sign_fixed(coeffs: &[BigInt], powers: &[BigInt]) -> Option<Ordering> {
    let mut acc = BigInt::zero();
    let mut bound = BigInt::one();
    for (k, (c, z)) in coeffs.iter().zip(powers).enumerate() {
        acc += c * z;
        // each power is within (k+1)·2^k units of its true value
        bound += c.abs() * BigInt::from((k as u64 + 1) << k.min(60));
    }
    (acc.abs() > bound).then(|| acc.sign().cmp(&num_bigint::Sign::NoSign))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    /// Exactly `degree` coefficients.
    coeffs: Vec<BigInt>,
}

impl NumberField {
    pub fn new(n: u64) -> Arc<NumberField> {
        let modulus = minimal_polynomial(n);
        let powers = fixed_powers(n, &modulus, PREC);
        Arc::new(NumberField { n, modulus, powers })
    }

    /// Smallest field containing `2cos(π/m)` for every listed order.
    pub fn for_orders(orders: &[u32]) -> Arc<NumberField> {
        let n = orders
            .iter()
            .filter(|&&m| m >= 4)
            .fold(1u64, |acc, &m| acc.lcm(&(m as u64)));
        NumberField::new(n)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, mut p: Poly) -> FieldElement {
        let d = self.degree();
        trim(&mut p);
        while p.len() > d {
            let top = p.len() - 1;
            let c = p[top].clone();
            for (j, mj) in self.modulus.iter().enumerate() {
                p[top - d + j] -= &c * mj;
            }
            trim(&mut p);
        }
        p.resize(d, BigInt::zero());
        FieldElement { coeffs: p }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn from_int(&self, k: i64) -> FieldElement {
        self.reduce(vec![BigInt::from(k)])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// `2cos(jπ/N)`.
    pub fn two_cos_multiple(&self, j: u64) -> FieldElement {
        self.reduce(dickson(j as usize))
    }

    /// `2cos(π/m)`; requires `m ≤ 3` or `m | N`.
    pub fn two_cos_pi_over(&self, m: u32) -> FieldElement {
        match m {
            1 => self.from_int(-2),
            2 => self.zero(),
            3 => self.one(),
            _ => {
                assert_eq!(self.n % m as u64, 0, "2cos(pi/{m}) outside the field");
                self.two_cos_multiple(self.n / m as u64)
            }
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    /// Sign of `a` as a real number, for the embedding `ζ = 2cos(π/N)`.
    pub fn sign(&self, a: &FieldElement) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        if let Some(s) = sign_fixed(&a.coeffs, &self.powers) {
            return s;
        }
        let mut prec = 2 * PREC;
        loop {
            let powers = fixed_powers(self.n, &self.modulus, prec);
            if let Some(s) = sign_fixed(&a.coeffs, &powers) {
                return s;
            }
            prec *= 2;
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        self.reduce(poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}z")?,
                _ => write!(f, "{c}z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
