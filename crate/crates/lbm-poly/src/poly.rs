use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{is_one, Rational};
use crate::vars::Vars;

pub const MAX_VARS: usize = 11;

/// Exponent vector, indexed by `Vars::index`. Negative entries are allowed
/// only for Laurent variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub [i16; MAX_VARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; MAX_VARS])
    }

    pub fn exp(&self, i: usize) -> i16 {
        self.0[i]
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut out = [0i16; MAX_VARS];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k] + other.0[k];
        }
        Mono(out)
    }

    fn div(&self, other: &Mono) -> Mono {
        let mut out = [0i16; MAX_VARS];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k] - other.0[k];
        }
        Mono(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("no value assigned to `{0}`")]
    MissingAssignment(&'static str),
    #[error("negative power of `{0}` evaluated at zero")]
    PoleAtZero(&'static str),
    #[error("cannot substitute negative power of `{0}`")]
    NegativePower(&'static str),
    #[error("odd power of `{0}` in an even substitution")]
    OddPower(&'static str),
}

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S: Vars> {
    terms: BTreeMap<Mono, Rational>,
    _vars: PhantomData<S>,
}

impl<S: Vars> Default for Poly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Vars> Poly<S> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new(), _vars: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Mono::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::rational::int(n))
    }

    pub fn var(v: S) -> Self {
        Self::monomial(Rational::one(), &[(v, 1)])
    }

    pub fn term(c: Rational, m: Mono) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(c: Rational, powers: &[(S, i16)]) -> Self {
        let mut m = Mono::one();
        for &(v, e) in powers {
            m.0[v.index()] += e;
        }
        Self::term(c, m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of an exact monomial (zero if absent).
    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn mentions(&self, v: S) -> bool {
        self.terms.keys().any(|m| m.0[v.index()] != 0)
    }

    pub fn max_degree(&self, v: S) -> Option<i16> {
        self.terms.keys().map(|m| m.0[v.index()]).max()
    }

    pub fn min_degree(&self, v: S) -> Option<i16> {
        self.terms.keys().map(|m| m.0[v.index()]).min()
    }

    /// Total degree of every term restricted to `vars`, if all terms agree.
    pub fn homogeneous_degree(&self, vars: &[S]) -> Option<i32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: i32 = vars.iter().map(|v| m.0[v.index()] as i32).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
            _vars: PhantomData,
        }
    }

    /// Multiplies by `c * v^e` without a general product.
    pub fn scale_mono(&self, c: &Rational, v: S, e: i16) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let i = v.index();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| {
                    let mut m = *m;
                    m.0[i] += e;
                    (m, k * c)
                })
                .collect(),
            _vars: PhantomData,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: S) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                let mut m2 = *m;
                m2.0[i] -= 1;
                out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Exact quotient `self / q`; errors if a remainder would be left.
    pub fn div_exact(&self, q: &Self) -> Result<Self, PolyError> {
        let (lq_m, lq_c) = q.terms.iter().next_back().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if q.len() == 1 {
            let inv = lq_c.recip();
            let mut out = Self::zero();
            for (m, c) in &self.terms {
                let d = m.div(lq_m);
                check_exponents::<S>(&d)?;
                out.add_term(d, c * &inv);
            }
            return Ok(out);
        }
        // Quotient exponents are bounded by the extreme exponents of the
        // operands, which also bounds the loop for Laurent variables.
        let mut lower = [0i16; MAX_VARS];
        for v in S::all() {
            let i = v.index();
            lower[i] = self.min_degree(v).unwrap_or(0) - q.max_degree(v).unwrap_or(0);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.terms.iter().next_back() {
            let d = rm.div(lq_m);
            check_exponents::<S>(&d)?;
            if (0..S::COUNT).any(|i| d.0[i] < lower[i]) {
                return Err(PolyError::NotDivisible);
            }
            let c = rc / lq_c;
            let t = Self::term(c.clone(), d);
            rem -= &(&t * q);
            quot.add_term(d, c);
        }
        Ok(quot)
    }

    pub fn eval(&self, assignment: &[(S, Rational)]) -> Result<Rational, PolyError> {
        let mut vals: [Option<&Rational>; MAX_VARS] = [None; MAX_VARS];
        for (v, r) in assignment {
            vals[v.index()] = Some(r);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in S::all() {
                let e = m.0[v.index()];
                if e == 0 {
                    continue;
                }
                let x = vals[v.index()].ok_or(PolyError::MissingAssignment(v.name()))?;
                if e < 0 && x.is_zero() {
                    return Err(PolyError::PoleAtZero(v.name()));
                }
                t *= rpow(x, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating evaluation; `values` is indexed by `Vars::index`.
    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.0.iter().enumerate().take(S::COUNT) {
                    if e != 0 {
                        t *= values[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Replaces `v` by `sub`. Only nonnegative powers of `v` may occur.
    pub fn subs(&self, v: S, sub: &Self) -> Result<Self, PolyError> {
        self.subs_with(v, sub, 1)
    }

    /// Replaces `v^2` by `sub`; every power of `v` must be even.
    pub fn subs_square(&self, v: S, sub: &Self) -> Result<Self, PolyError> {
        self.subs_with(v, sub, 2)
    }

    fn subs_with(&self, v: S, sub: &Self, step: i16) -> Result<Self, PolyError> {
        let i = v.index();
        let mut powers: Vec<Self> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e < 0 {
                return Err(PolyError::NegativePower(v.name()));
            }
            if e % step != 0 {
                return Err(PolyError::OddPower(v.name()));
            }
            let k = (e / step) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * sub;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[i] = 0;
            for (pm, pc) in &powers[k].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        Ok(out)
    }

    /// Maps every exponent vector through `f`, summing collisions.
    pub fn map_monomials<T: Vars>(&self, f: impl Fn(&Mono) -> Mono) -> Poly<T> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }
}

fn check_exponents<S: Vars>(m: &Mono) -> Result<(), PolyError> {
    for v in S::all() {
        if m.0[v.index()] < 0 && !S::laurent(v) {
            return Err(PolyError::NotDivisible);
        }
    }
    Ok(())
}

fn rpow(x: &Rational, e: i16) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl<'a, S: Vars> Add<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &'a Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<S: Vars> Add for Poly<S> {
    type Output = Poly<S>;
    fn add(mut self, rhs: Poly<S>) -> Poly<S> {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'a, S: Vars> AddAssign<&'a Poly<S>> for Poly<S> {
    fn add_assign(&mut self, rhs: &'a Poly<S>) {
        self.add_assign_ref(rhs);
    }
}

impl<S: Vars> AddAssign for Poly<S> {
    fn add_assign(&mut self, rhs: Poly<S>) {
        self.add_assign_ref(&rhs);
    }
}

impl<'a, S: Vars> Sub<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &'a Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Vars> Sub for Poly<S> {
    type Output = Poly<S>;
    fn sub(mut self, rhs: Poly<S>) -> Poly<S> {
        self -= &rhs;
        self
    }
}

impl<'a, S: Vars> SubAssign<&'a Poly<S>> for Poly<S> {
    fn sub_assign(&mut self, rhs: &'a Poly<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a, S: Vars> Mul<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &'a Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<S: Vars> Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Poly<S>) -> Poly<S> {
        &self * &rhs
    }
}

impl<'a, S: Vars> Add<&'a Poly<S>> for Poly<S> {
    type Output = Poly<S>;
    fn add(mut self, rhs: &'a Poly<S>) -> Poly<S> {
        self.add_assign_ref(rhs);
        self
    }
}

impl<'a, S: Vars> Sub<&'a Poly<S>> for Poly<S> {
    type Output = Poly<S>;
    fn sub(mut self, rhs: &'a Poly<S>) -> Poly<S> {
        self -= rhs;
        self
    }
}

impl<'a, S: Vars> Mul<&'a Poly<S>> for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &'a Poly<S>) -> Poly<S> {
        &self * rhs
    }
}

impl<S: Vars> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
            _vars: PhantomData,
        }
    }
}

impl<S: Vars> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -(self.clone())
    }
}

impl<S: Vars> fmt::Display for Poly<S> {
    /// Terms in descending lexicographic exponent order, e.g.
    /// `3*rho*u^2 - rho*lambda^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !is_one(&a) || m.is_one() {
                factors.push(a.to_string());
            }
            for v in S::all() {
                match m.0[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<S: Vars> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
