//! Exact arithmetic in GF(p^r) with full discrete-log tables.
//!
//! Elements are coefficient vectors in the power basis of a root `α` of a
//! primitive polynomial, packed into a single integer code
//! `c0 + c1*p + ... + c_{r-1}*p^{r-1}`. The primitive polynomial is the
//! lexicographically smallest one (coefficients compared from the constant
//! term up), found by deterministic search, so a field is reproducible from
//! `(p, r)` alone.


use crate::error::{Error, Result};

/// Default bound on the field/ring order; everything in this crate is desk scale.
pub const DEFAULT_SIZE_BOUND: u64 = 1_000_000;

/// A nonzero or zero element of GF(p^r), packed as a base-p integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) u64);

impl FieldElem {
    /// The packed base-p coefficient code; matches `GroupView` element codes.
    pub fn code(self) -> u64 {
        self.0
    }
}

/// The finite field GF(p^r) with a fixed primitive element and dlog tables.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u64,
    r: usize,
    q: u64,
    /// Monic primitive polynomial, constant term first, length r+1.
    modulus: Vec<u64>,
    /// exp_table[t] = code of α^t, for t in 0..q-1.
    exp_table: Vec<u64>,
    /// log_table[code] = t for nonzero codes; log_table[0] is a sentinel.
    log_table: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over GF(p), used only while searching for the modulus.
mod poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        // m is monic
        let mut a = a.to_vec();
        trim(&mut a);
        while a.len() >= m.len() {
            let lead = a[a.len() - 1];
            let shift = a.len() - m.len();
            for (i, &mc) in m.iter().enumerate() {
                let idx = i + shift;
                a[idx] = (a[idx] + p - lead * mc % p) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic so rem applies
            let lead = *b.last().unwrap();
            let inv = mod_inv(lead, p);
            let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
            let r = rem(&a, &monic, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mod_inv(a: u64, p: u64) -> u64 {
        // p prime, a != 0
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }
}

fn is_irreducible(f: &[u64], p: u64, r: usize) -> bool {
    if r == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^{p^r} == x mod f
    let mut xp = x.clone();
    for _ in 0..r {
        xp = poly::powmod(&xp, p, f, p);
    }
    if xp != poly::rem(&x, f, p) {
        return false;
    }
    // gcd(x^{p^{r/l}} - x, f) == 1 for every prime l | r
    for l in prime_factors(r as u64) {
        let steps = r / l as usize;
        let mut xq = x.clone();
        for _ in 0..steps {
            xq = poly::powmod(&xq, p, f, p);
        }
        // xq - x
        let mut diff = xq;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly::trim(&mut diff);
        let g = poly::gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn root_has_full_order(f: &[u64], p: u64, q: u64) -> bool {
    let x = vec![0, 1];
    if poly::powmod(&x, q - 1, f, p) != vec![1] {
        return false;
    }
    for l in prime_factors(q - 1) {
        if poly::powmod(&x, (q - 1) / l, f, p) == vec![1] {
            return false;
        }
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^r) with the lexicographically smallest monic primitive polynomial.
    pub fn new(p: u64, r: usize) -> Result<FieldCtx> {
        Self::with_bound(p, r, DEFAULT_SIZE_BOUND)
    }

    pub fn with_bound(p: u64, r: usize, bound: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(r >= 1, "extension degree must be positive");
        let mut q: u64 = 1;
        for _ in 0..r {
            q = q.checked_mul(p).filter(|&v| v <= bound).ok_or(Error::SizeExceeded {
                order: u64::MAX,
                bound,
            })?;
        }
        let modulus = find_primitive_polynomial(p, r, q);
        // Build exp/log tables by iterating powers of x modulo the modulus.
        let mut exp_table = Vec::with_capacity((q - 1) as usize);
        let mut log_table = vec![u32::MAX; q as usize];
        let mut cur = vec![1u64]; // α^0
        for t in 0..q - 1 {
            let code = pack(&cur, p, r);
            exp_table.push(code);
            log_table[code as usize] = t as u32;
            cur = poly::mulmod(&cur, &[0, 1], &modulus, p);
        }
        debug_assert_eq!(pack(&cur, p, r), 1, "α must have order exactly q-1");
        Ok(FieldCtx {
            p,
            r,
            q,
            modulus,
            exp_table,
            log_table,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first (length r+1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The fixed primitive element α.
    pub fn alpha(&self) -> FieldElem {
        FieldElem(self.exp_table[1 % (self.q - 1) as usize])
    }

    /// α^t.
    pub fn exp(&self, t: u64) -> FieldElem {
        FieldElem(self.exp_table[(t % (self.q - 1)) as usize])
    }

    pub fn dlog(&self, a: FieldElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DlogOfZero);
        }
        Ok(self.log_table[a.0 as usize] as u64)
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        let mut c = a.0;
        let mut out = Vec::with_capacity(self.r);
        for _ in 0..self.r {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        assert!(coeffs.len() <= self.r);
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c % self.p;
        }
        FieldElem(code)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut code = 0u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut scale = 1u64;
        for _ in 0..self.r {
            code += (x % self.p + y % self.p) % self.p * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        FieldElem(code)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let mut code = 0u64;
        let mut x = a.0;
        let mut scale = 1u64;
        for _ in 0..self.r {
            code += (self.p - x % self.p) % self.p * scale;
            x /= self.p;
            scale *= self.p;
        }
        FieldElem(code)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let la = self.log_table[a.0 as usize] as u64;
        let lb = self.log_table[b.0 as usize] as u64;
        self.exp(la + lb)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DlogOfZero);
        }
        let la = self.log_table[a.0 as usize] as u64;
        Ok(self.exp((self.q - 1 - la) % (self.q - 1)))
    }

    pub fn pow(&self, a: FieldElem, k: u64) -> FieldElem {
        if a.0 == 0 {
            return if k == 0 { FieldElem(1) } else { FieldElem(0) };
        }
        let la = self.log_table[a.0 as usize] as u64;
        self.exp(la % (self.q - 1) * (k % (self.q - 1)) % (self.q - 1))
    }

    /// All q elements in enumeration order: zero first, then α^0, α^1, ...
    pub fn elements(&self) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.q as usize);
        out.push(FieldElem(0));
        out.extend(self.exp_table.iter().map(|&c| FieldElem(c)));
        out
    }

    /// The cosets C_i = { α^t : t ≡ i (mod e) } of the e-th powers in GF(q)^*.
    pub fn cyclotomic_classes(&self, e: u64) -> Result<Vec<Vec<FieldElem>>> {
        if e == 0 || (self.q - 1) % e != 0 {
            return Err(Error::DoesNotDivide {
                divisor: e,
                of: self.q - 1,
            });
        }
        let mut classes = vec![Vec::with_capacity(((self.q - 1) / e) as usize); e as usize];
        for (t, &code) in self.exp_table.iter().enumerate() {
            classes[t % e as usize].push(FieldElem(code));
        }
        Ok(classes)
    }

    /// The cyclotomic number (i,j)_e = |(C_i + 1) ∩ C_j|, by direct enumeration of C_i.
    pub fn cyclotomic_number(&self, e: u64, i: u64, j: u64) -> Result<u64> {
        if e == 0 || (self.q - 1) % e != 0 {
            return Err(Error::DoesNotDivide {
                divisor: e,
                of: self.q - 1,
            });
        }
        if i >= e || j >= e {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                bound: e,
            });
        }
        let one = self.one();
        let mut count = 0;
        let mut t = i;
        while t < self.q - 1 {
            let shifted = self.add(self.exp(t), one);
            if shifted.0 != 0 && self.log_table[shifted.0 as usize] as u64 % e == j {
                count += 1;
            }
            t += e;
        }
        Ok(count)
    }
}

fn pack(coeffs: &[u64], p: u64, r: usize) -> u64 {
    let mut code = 0u64;
    for k in (0..r).rev() {
        code = code * p + coeffs.get(k).copied().unwrap_or(0);
    }
    code
}

fn find_primitive_polynomial(p: u64, r: usize, q: u64) -> Vec<u64> {
    // Candidates ordered lexicographically on (c0, c1, ..., c_{r-1}).
    let mut coeffs = vec![0u64; r];
    loop {
        let mut f: Vec<u64> = coeffs.clone();
        f.push(1); // monic
        if f[0] != 0 && is_irreducible(&f, p, r) && root_has_full_order(&f, p, q) {
            return f;
        }
        // increment, last coefficient fastest
        let mut k = r;
        loop {
            assert!(k > 0, "no primitive polynomial found, which cannot happen");
            k -= 1;
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
        }
    }
}

/// The three-case uniform cyclotomy formula.
///
/// Requires e >= 3, e | p^m - 1, and -1 a power of p modulo e. Then p^m is a
/// perfect square with a root s ≡ 1 (mod e) (s may be negative) and
/// η = (s-1)/e determines every cyclotomic number of order e.
pub fn uniform_cyclotomic_number(p: u64, m: u32, e: u64, i: u64, j: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e < 3 {
        return Err(Error::ConditionsNotMet(format!("e = {e} < 3")));
    }
    let pm = p.checked_pow(m).expect("p^m overflows");
    if (pm - 1) % e != 0 {
        return Err(Error::DoesNotDivide {
            divisor: e,
            of: pm - 1,
        });
    }
    if i >= e || j >= e {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            bound: e,
        });
    }
    // -1 must be a power of p modulo e
    let mut pow = 1 % e;
    let minus_one = (e - 1) % e;
    let mut found = e == 1;
    for _ in 0..e {
        if pow == minus_one {
            found = true;
            break;
        }
        pow = pow * (p % e) % e;
    }
    if !found {
        return Err(Error::ConditionsNotMet(format!(
            "-1 is not a power of {p} modulo {e}"
        )));
    }
    let root = (pm as f64).sqrt().round() as u64;
    if root * root != pm {
        return Err(Error::ConditionsNotMet(format!("{pm} is not a perfect square")));
    }
    // Pick the square root of p^m that is ≡ 1 (mod e); it may be the negative one.
    let s: i64 = if root % e == 1 {
        root as i64
    } else if (e - root % e) % e == 1 % e {
        -(root as i64)
    } else {
        return Err(Error::ConditionsNotMet(format!(
            "neither square root of {pm} is 1 mod {e}"
        )));
    };
    let eta = (s - 1) / e as i64;
    debug_assert_eq!((s - 1) % e as i64, 0);
    let value: i64 = if i == 0 && j == 0 {
        eta * eta - (e as i64 - 3) * eta - 1
    } else if i == j || i == 0 || j == 0 {
        eta * eta + eta
    } else {
        eta * eta
    };
    assert!(value >= 0, "uniform cyclotomic number must be non-negative");
    Ok(value as u64)
}
