//! Table-driven arithmetic in GF(q) for prime powers q.
//!
//! Elements are labels `0..q`. For q = p^e with e > 1 a label encodes the
//! coefficient vector of a polynomial of degree < e over GF(p) in base p
//! (`label = c0 + c1*p + ...`), reduced by a fixed monic irreducible modulus.
//! The default moduli live in `data/moduli.txt`.

use std::fmt;

use crate::error::{Error, Result};

/// Field element label.
pub type Elem = u8;

const MODULI: &str = include_str!("../data/moduli.txt");

/// Largest order representable with one byte per label.
pub const MAX_ORDER: u32 = 256;

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// The configured default modulus for `q`, constant term first.
///
/// Prime fields return the degree-one polynomial `x`.
pub fn default_modulus(q: u32) -> Option<Vec<u32>> {
    let (_, e) = prime_power(q)?;
    if e == 1 {
        return Some(vec![0, 1]);
    }
    MODULI
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .find_map(|l| {
            let nums: Vec<u32> = l
                .split_whitespace()
                .filter_map(|t| t.parse().ok())
                .collect();
            (nums.first() == Some(&q)).then(|| nums[3..].to_vec())
        })
}

/// Every order with a built-in modulus, including all primes up to `limit`.
pub fn supported_orders(limit: u32) -> Vec<u32> {
    (2..=limit)
        .filter(|&q| default_modulus(q).is_some())
        .collect()
}

/// Complete arithmetic tables for one finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    neg: Vec<Elem>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("q", &self.q)
            .field("modulus", &self.modulus_id())
            .finish()
    }
}

impl FieldTable {
    /// Builds GF(q) with the default modulus for `q`.
    pub fn new(q: u32) -> Result<Self> {
        let (_, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::OrderOutOfRange(q));
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            default_modulus(q).ok_or(Error::MissingModulus(q))?
        };
        Self::with_modulus(q, &modulus)
    }

    /// Builds GF(q) reducing by `modulus` (coefficients over GF(p), constant
    /// term first, monic of degree e). Prime fields ignore the coefficients
    /// beyond checking the degree.
    pub fn with_modulus(q: u32, modulus: &[u32]) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::OrderOutOfRange(q));
        }
        let bad = |reason: &str| Error::BadModulus {
            q,
            reason: reason.to_string(),
        };
        if modulus.len() != e as usize + 1 {
            return Err(bad("degree does not match the extension degree"));
        }
        if modulus[e as usize] != 1 {
            return Err(bad("modulus must be monic"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(bad("coefficient not reduced mod p"));
        }
        let qs = q as usize;
        let digits = |label: u32| -> Vec<u32> {
            let mut v = vec![0; e as usize];
            let mut x = label;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let label = |d: &[u32]| d.iter().rev().fold(0, |acc, &c| acc * p + c);

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = label(&sum) as Elem;
                let prod = if e == 1 {
                    (a * b) % p
                } else {
                    label(&poly_mul_mod(&da, &db, modulus, p))
                };
                mul[(a * q + b) as usize] = prod as Elem;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or_else(|| bad("modulus is reducible"))? as Elem;
            }
        }
        Ok(Self {
            q,
            p,
            e,
            modulus: modulus.to_vec(),
            add,
            mul,
            inv,
            neg,
        })
    }

    /// Parses a modulus identifier as written in certificate headers.
    pub fn from_modulus_id(q: u32, id: &str) -> Result<Self> {
        match id {
            "prime" | "default" => {
                let f = Self::new(q)?;
                if id == "prime" && f.e != 1 {
                    return Err(Error::BadModulus {
                        q,
                        reason: "\"prime\" given for a non-prime order".into(),
                    });
                }
                Ok(f)
            }
            poly => {
                let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
                Self::with_modulus(
                    q,
                    &parse_poly(poly, p).map_err(|reason| Error::BadModulus { q, reason })?,
                )
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `prime` for prime fields, otherwise the modulus written as `x^3+x+1`.
    pub fn modulus_id(&self) -> String {
        if self.e == 1 {
            "prime".into()
        } else {
            format_poly(&self.modulus)
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0 by convention.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, mut k: u32) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a*b + c*d + e*f` in the field.
    #[inline]
    pub fn eval_bilinear(&self, a: Elem, b: Elem, c: Elem, d: Elem, e: Elem, f: Elem) -> Elem {
        self.add(self.add(self.mul(a, b), self.mul(c, d)), self.mul(e, f))
    }

    /// Converts a possibly negative integer to a label. Nonnegative values
    /// must already be labels; `-k` maps to the additive inverse of label `k`,
    /// which is the residue of `-k` mod p whenever q is prime.
    pub fn label(&self, value: i64) -> Result<Elem> {
        let out_of_range = Error::LabelOutOfRange {
            label: value,
            q: self.q,
        };
        let magnitude = value.unsigned_abs();
        if magnitude >= self.q as u64 {
            return Err(out_of_range);
        }
        let l = magnitude as Elem;
        Ok(if value < 0 { self.neg(l) } else { l })
    }
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = a.len();
    let mut r = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    for k in (e..2 * e).rev() {
        let c = r[k];
        if c != 0 {
            for (t, &m) in modulus.iter().enumerate() {
                let idx = k - e + t;
                r[idx] = (r[idx] + (p - c) * m) % p;
            }
        }
    }
    r.truncate(e);
    r
}

/// Formats coefficients (constant first) as `x^3+x+1`, `x^2+2x+2`.
pub fn format_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && k > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Inverse of [`format_poly`]; coefficients are reduced mod `p`.
pub fn parse_poly(text: &str, p: u32) -> std::result::Result<Vec<u32>, String> {
    let mut coeffs: Vec<u32> = Vec::new();
    for term in text.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(format!("empty term in {text:?}"));
        }
        let (coef, power) = match term.find('x') {
            None => (term, 0),
            Some(pos) => {
                let power = match &term[pos + 1..] {
                    "" => 1,
                    rest => rest
                        .strip_prefix('^')
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| format!("bad exponent in {term:?}"))?,
                };
                (&term[..pos], power)
            }
        };
        let c = match coef.trim_end_matches('*') {
            "" => 1,
            s => s
                .parse::<u32>()
                .map_err(|_| format!("bad coefficient in {term:?}"))?,
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = (coeffs[power] + c) % p;
    }
    Ok(coeffs)
}
