//! Table-driven arithmetic in GF(q) for the small orders used by the geometry
//! layer: primes up to 7 and the prime squares 4 and 9.
//!
//! Elements are the integers `0..q`. For `q = p^2` the element `i` is the
//! polynomial `c0 + c1*x` with `i = c0 + c1*p`, reduced modulo a fixed monic
//! irreducible quadratic (`x^2 + x + 1` for GF(4), `x^2 + 1` for GF(9)).

use crate::error::{Error, Result};

pub type Elem = u8;

/// Which table lookup [`Field::apply`] should perform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    q: u8,
    p: u8,
    h: u8,
    /// Monic modulus, coefficients low to high. `None` for prime fields.
    modulus: Option<Vec<u8>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q` into `(p, h)` with `q = p^h`, for the orders this module handles.
fn prime_power(q: u32) -> Option<(u8, u8)> {
    if q > 9 {
        return None;
    }
    if is_prime(q) {
        return Some((q as u8, 1));
    }
    (2..=3u32).find(|&p| p * p == q).map(|p| (p as u8, 2))
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let modulus = if h == 1 {
            for a in 0..n {
                for b in 0..n {
                    add[a * n + b] = ((a + b) % n) as u8;
                    mul[a * n + b] = ((a * b) % n) as u8;
                }
            }
            None
        } else {
            let pm = p as usize;
            let (m0, m1) = first_irreducible_quadratic(pm);
            let split = |i: usize| (i % pm, i / pm);
            for a in 0..n {
                let (a0, a1) = split(a);
                for b in 0..n {
                    let (b0, b1) = split(b);
                    add[a * n + b] = ((a0 + b0) % pm + ((a1 + b1) % pm) * pm) as u8;
                    // (a0 + a1 x)(b0 + b1 x) with x^2 = -m1 x - m0
                    let c0 = a0 * b0;
                    let c1 = a0 * b1 + a1 * b0;
                    let c2 = a1 * b1;
                    let r0 = (c0 + c2 * (pm - m0)) % pm;
                    let r1 = (c1 + c2 * ((pm - m1) % pm)) % pm;
                    mul[a * n + b] = (r0 + r1 * pm) as u8;
                }
            }
            Some(vec![m0 as u8, m1 as u8, 1])
        };
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8;
            }
        }
        Ok(Field {
            q: q as u8,
            p,
            h,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.h as u32
    }

    /// Coefficients (low to high) of the reduction polynomial for extension fields.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
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

    /// Inverse of a nonzero element. Callers in hot loops guarantee `a != 0`.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn checked_inv(&self, a: Elem) -> Result<Elem> {
        self.check(a as u32)?;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, e: u32) -> Elem {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    fn check(&self, a: u32) -> Result<Elem> {
        if a < self.q as u32 {
            Ok(a as Elem)
        } else {
            Err(Error::ElementOutOfRange {
                elem: a,
                q: self.q as u32,
            })
        }
    }

    /// Range-checked entry point for a single operation.
    pub fn apply(&self, op: FieldOp, a: u32, b: Option<u32>) -> Result<Elem> {
        let a = self.check(a)?;
        let b = b.map(|b| self.check(b)).transpose()?;
        match op {
            FieldOp::Add => Ok(self.add(a, b.ok_or(Error::MissingOperand)?)),
            FieldOp::Mul => Ok(self.mul(a, b.ok_or(Error::MissingOperand)?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.checked_inv(a),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

/// Smallest `(m0, m1)` (ordered by `m1`, then `m0`) with `x^2 + m1 x + m0`
/// irreducible over the prime field of order `p`.
fn first_irreducible_quadratic(p: usize) -> (usize, usize) {
    for m1 in 0..p {
        for m0 in 1..p {
            let has_root = (0..p).any(|x| (x * x + m1 * x + m0) % p == 0);
            if !has_root {
                return (m0, m1);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

/// GF(q^d) for d in {2, 3}, represented as coefficient vectors over a base
/// [`Field`] modulo a monic irreducible polynomial. Used only by the
/// algebraic constructions, so it favours clarity over speed.
#[derive(Clone, Debug)]
pub struct Extension<'f> {
    base: &'f Field,
    /// Monic modulus without its leading coefficient, low to high.
    modulus: Vec<Elem>,
}

impl<'f> Extension<'f> {
    pub fn new(base: &'f Field, degree: usize) -> Self {
        assert!(
            (2..=3).contains(&degree),
            "root test only certifies irreducibility for degree <= 3"
        );
        let q = base.order() as usize;
        let total = q.pow(degree as u32);
        // a polynomial of degree <= 3 is irreducible iff it has no root
        let modulus = (0..total)
            .map(|code| digits(code, q, degree))
            .find(|low| {
                base.elements().all(|x| {
                    let mut acc = 1u8; // leading coefficient
                    for &c in low.iter().rev() {
                        acc = base.add(base.mul(acc, x), c);
                    }
                    acc != 0
                })
            })
            .expect("an irreducible polynomial exists for every degree");
        Extension { base, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len()
    }

    pub fn base(&self) -> &Field {
        self.base
    }

    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<Elem> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// The class of `x`, a generator over the base field.
    pub fn generator(&self) -> Vec<Elem> {
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    /// Every element, in order of its base-q code.
    pub fn elements(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let q = self.base.order() as usize;
        let d = self.degree();
        (0..q.pow(d as u32)).map(move |code| digits(code, q, d))
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = self.base;
        let d = self.degree();
        let mut prod = vec![0u8; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        // x^d = -(m0 + m1 x + ... )
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, &m) in self.modulus.iter().enumerate() {
                let idx = top - d + k;
                prod[idx] = f.sub(prod[idx], f.mul(c, m));
            }
        }
        prod.truncate(d);
        prod
    }
}

fn digits(mut code: usize, base: usize, len: usize) -> Vec<Elem> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut() {
        *slot = (code % base) as u8;
        code /= base;
    }
    out
}
