// SPDX-License-Identifier: Apache-2.0

//! Dense univariate polynomials over Q, lowest degree first.

use num_traits::{One, Zero};

use crate::arith::{rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(pub Vec<Rat>);

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial a + b t.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(|| rat(0))
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Rat) -> UPoly {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![rat(0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::constant(rat(1));
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(rat(0), |acc, c| acc * x + c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lead = d.lead();
        if r.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![rat(0); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Rat::one() / l))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    /// Rational roots of a polynomial, found from the linear factors of its squarefree part.
    pub fn rational_roots(&self) -> Vec<Rat> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.degree() < 1 {
            return Vec::new();
        }
        // clear denominators
        let l = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let lowest = ints.iter().position(|c| !c.is_zero()).unwrap();
        let mut roots = Vec::new();
        if lowest > 0 {
            roots.push(rat(0));
        }
        let ints = &ints[lowest..];
        if ints.len() < 2 {
            return roots;
        }
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let pd = crate::factor::divisors(&a0);
        let qd = crate::factor::divisors(&an);
        let mut seen = std::collections::BTreeSet::new();
        for p in &pd {
            for q in &qd {
                for s in [1i64, -1] {
                    let r = Rat::new(p * BigInt::from(s), q.clone());
                    if seen.insert(r.clone()) && self.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}
