//! Exact arithmetic in GF(p^n).
//!
//! Elements are packed coefficient vectors with respect to the power basis of a
//! fixed monic irreducible modulus: the element `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`
//! is stored as the integer `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`. The integer
//! order of that packing is the canonical enumeration order used everywhere
//! ("first nonsquare", "first trace-one element", point indices, ...).
//!
//! Multiplication goes through exp/log tables over the first primitive element;
//! addition is digit-wise (XOR in characteristic 2).

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_ORDER: u64 = 1 << 20;

/// A field element, valid only together with the [`FieldCtx`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Position of the element in the canonical enumeration.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^n` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p as u32, n))
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Dense polynomials over GF(p), low-degree coefficient first.
mod poly {
    pub fn digits(mut k: u64, p: u32, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for d in out.iter_mut() {
            *d = (k % p as u64) as u32;
            k /= p as u64;
        }
        out
    }

    pub fn pack(c: &[u32], p: u32) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    /// Remainder of `a` modulo `b` (`b` nonzero).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let db = degree(b).expect("division by the zero polynomial");
        let lead_inv = inv_mod(b[db], p) as u64;
        let mut r = a.to_vec();
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let factor = r[dr] as u64 * lead_inv % p as u64;
            let shift = dr - db;
            for (i, &bc) in b[..=db].iter().enumerate() {
                let sub = factor * bc as u64 % p as u64;
                r[i + shift] = ((r[i + shift] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.truncate(db.max(1));
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n <= 1 {
            return n == 1;
        }
        for d in 1..=n / 2 {
            for k in 0..(p as u64).pow(d as u32) {
                let mut g = digits(k, p, d);
                g.push(1);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
struct Subfield {
    field: FieldCtx,
    /// `embed[s]` is the image of subfield element `s`.
    embed: Vec<Fe>,
    /// Inverse of `embed`, `u32::MAX` off the subfield.
    restrict: Vec<u32>,
}

/// GF(p^n) with a fixed modulus. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fe,
    /// `exp[i] = g^i` for `i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Bit `i` holds Tr(x^i); only meaningful for p = 2.
    trace_mask: u32,
    subfield: Option<Box<Subfield>>,
}

impl FieldCtx {
    /// Builds GF(p^n) over the least monic irreducible polynomial of degree `n`,
    /// least meaning smallest packed value `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::TooLarge { p: p as u64, n });
        };
        let mut ctx = Self::build_tables(p, n, q as u32);
        if n.is_multiple_of(2) {
            ctx.subfield = Some(Box::new(ctx.build_subfield()?));
        }
        Ok(ctx)
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, n)
    }

    fn build_tables(p: u32, n: u32, q: u32) -> Self {
        let modulus = (0..(q as u64))
            .map(|k| {
                let mut f = poly::digits(k, p, n as usize);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .unwrap_or_else(|| panic!("no irreducible polynomial of degree {n} over GF({p})"));

        let slow_mul = |a: u32, b: u32| -> u32 {
            let pa = poly::digits(a as u64, p, n as usize);
            let pb = poly::digits(b as u64, p, n as usize);
            let prod = poly::mul(&pa, &pb, p);
            let mut r = poly::rem(&prod, &modulus, p);
            r.resize(n as usize, 0);
            poly::pack(&r, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let (mut r, mut b) = (1u32, a);
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let len = 2 * (q as usize - 1);
        let mut exp = vec![0u32; len.max(2)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(len) {
            *slot = cur;
            if i < q as usize - 1 {
                log[cur as usize] = i as u32;
            }
            cur = slow_mul(cur, generator);
        }
        if q == 2 {
            exp = vec![1, 1];
        }

        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            generator: Fe(generator),
            exp,
            log,
            trace_mask: 0,
            subfield: None,
        };
        if p == 2 {
            ctx.trace_mask = (0..n)
                .filter(|&i| ctx.trace_by_definition(Fe(1 << i)) == Fe::ONE)
                .fold(0, |m, i| m | (1 << i));
        }
        ctx
    }

    fn build_subfield(&self) -> Result<Subfield> {
        let field = FieldCtx::new(self.p, self.n / 2)?;
        // Any root of the subfield modulus generates the fixed field of x -> x^sqrt(q).
        let root = self
            .elements()
            .find(|&r| {
                let mut acc = Fe::ZERO;
                for &c in field.modulus.iter().rev() {
                    acc = self.add(self.mul(acc, r), self.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("subfield modulus splits in the extension");
        let mut embed = Vec::with_capacity(field.q as usize);
        let mut restrict = vec![u32::MAX; self.q as usize];
        for s in field.elements() {
            let img = field
                .coeffs(s)
                .iter()
                .rev()
                .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, root), self.from_int(c as i64)));
            restrict[img.0 as usize] = s.0;
            embed.push(img);
        }
        Ok(Subfield {
            field,
            embed,
            restrict,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the exp/log tables are built on.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// `sqrt(q)` when `n` is even.
    pub fn sqrt_order(&self) -> Option<u32> {
        self.subfield.as_ref().map(|s| s.field.q)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    pub fn element(&self, index: u32) -> Option<Fe> {
        (index < self.q).then_some(Fe(index))
    }

    /// Integer `k` reduced into the prime field.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        poly::digits(a.0 as u64, self.p, self.n as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() != self.n as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::BadCoefficients { q: self.q });
        }
        Ok(Fe(poly::pack(c, self.p)))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let p = self.p;
        if self.n == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let p = self.p;
        if self.n == 1 {
            return Fe(p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Fe(self.exp[(self.q - 1 - self.log[a.0 as usize]) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut r, mut b) = (Fe::ONE, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// True iff `a = t^2` for some `t`. Always true in characteristic 2.
    pub fn is_square(&self, a: Fe) -> bool {
        if self.p == 2 || a.is_zero() {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == Fe::ONE
    }

    /// Unique square root in characteristic 2.
    pub fn sqrt_char2(&self, a: Fe) -> Result<Fe> {
        if self.p != 2 {
            return Err(Error::OddCharacteristic(self.p));
        }
        Ok(self.pow(a, self.q as u64 / 2))
    }

    /// First element, in canonical order, that is not a square.
    pub fn find_nonsquare(&self) -> Result<Fe> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self
            .elements()
            .find(|&a| !self.is_square(a))
            .expect("half of the nonzero elements are nonsquares"))
    }

    /// Absolute trace GF(2^n) -> GF(2).
    pub fn abs_trace(&self, a: Fe) -> Result<u8> {
        if self.p != 2 {
            return Err(Error::OddCharacteristic(self.p));
        }
        Ok(self.trace_bit(a))
    }

    /// Trace through the precomputed linear functional; caller guarantees p = 2.
    #[inline]
    pub(crate) fn trace_bit(&self, a: Fe) -> u8 {
        debug_assert_eq!(self.p, 2);
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// `a + a^2 + ... + a^(2^(n-1))`, evaluated in the field.
    fn trace_by_definition(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut cur = a;
        for _ in 0..self.n {
            acc = self.add(acc, cur);
            cur = self.mul(cur, cur);
        }
        acc
    }

    /// First element, in canonical order, with absolute trace 1.
    pub fn find_trace_one(&self) -> Result<Fe> {
        if self.p != 2 {
            return Err(Error::OddCharacteristic(self.p));
        }
        Ok(self
            .elements()
            .find(|&a| self.trace_bit(a) == 1)
            .expect("trace is onto GF(2)"))
    }

    /// GF(sqrt(q)) as its own context, when n is even.
    pub fn subfield(&self) -> Result<&FieldCtx> {
        self.subfield
            .as_ref()
            .map(|s| &s.field)
            .ok_or(Error::OddDegree(self.n))
    }

    /// Image of a GF(sqrt(q)) element under the fixed embedding.
    pub fn subfield_embed(&self, a_sub: Fe) -> Result<Fe> {
        let s = self.subfield.as_ref().ok_or(Error::OddDegree(self.n))?;
        s.embed
            .get(a_sub.0 as usize)
            .copied()
            .ok_or(Error::BadCoefficients { q: s.field.q })
    }

    /// Preimage under the embedding, if `a` lies in GF(sqrt(q)).
    pub fn subfield_restrict(&self, a: Fe) -> Option<Fe> {
        let s = self.subfield.as_ref()?;
        let r = s.restrict[a.0 as usize];
        (r != u32::MAX).then_some(Fe(r))
    }

    /// Embedded copy of GF(sqrt(q)), in subfield canonical order.
    pub fn subfield_elements(&self) -> Result<&[Fe]> {
        self.subfield
            .as_ref()
            .map(|s| s.embed.as_slice())
            .ok_or(Error::OddDegree(self.n))
    }

    #[inline]
    pub fn in_subfield(&self, a: Fe) -> bool {
        self.subfield_restrict(a).is_some()
    }

    /// `a^(sqrt(q)+1)`, expressed in the subfield context.
    pub fn norm_to_subfield(&self, a: Fe) -> Result<Fe> {
        let r = self.sqrt_order().ok_or(Error::OddDegree(self.n))?;
        let norm = self.pow(a, r as u64 + 1);
        Ok(self
            .subfield_restrict(norm)
            .expect("norm lands in the fixed field of the sqrt(q)-Frobenius"))
    }

    /// Human-readable polynomial form, e.g. `x^2+2`.
    pub fn format(&self, a: Fe) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        terms.join("+")
    }
}
