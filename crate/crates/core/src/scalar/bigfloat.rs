//! Extended-precision complex arithmetic for the oracle paths.
//!
//! A thin layer over `astro_float_num::BigFloat`. All operations go through an
//! [`Ext`] context which owns the working precision and the constants cache.

use astro_float_num::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;
use std::cell::RefCell;

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Complex number with big-float components.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Working precision plus the constants cache.
pub struct Ext {
    bits: usize,
    cc: RefCell<Consts>,
}

impl Ext {
    /// Context carrying `digits` decimal digits plus 64 guard bits.
    pub fn with_digits(digits: u32) -> Self {
        let bits = (digits as f64 * LOG2_10).ceil() as usize + 64;
        let bits = bits.div_ceil(64) * 64;
        Ext {
            bits,
            cc: RefCell::new(Consts::new().expect("constants cache")),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn cplx(&self, z: Complex64) -> BigComplex {
        BigComplex {
            re: self.real(z.re),
            im: self.real(z.im),
        }
    }

    pub fn from_real(&self, x: BigFloat) -> BigComplex {
        BigComplex {
            re: x,
            im: self.real(0.0),
        }
    }

    pub fn zero(&self) -> BigComplex {
        self.cplx(Complex64::new(0.0, 0.0))
    }

    pub fn one(&self) -> BigComplex {
        self.cplx(Complex64::new(1.0, 0.0))
    }

    pub fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(self.bits, RM)
    }

    /// Parse a decimal literal at working precision.
    pub fn parse(&self, s: &str) -> BigFloat {
        BigFloat::parse(
            s,
            astro_float_num::Radix::Dec,
            self.bits,
            RM,
            &mut self.cc.borrow_mut(),
        )
    }

    // ---- real helpers ----

    pub fn radd(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn rsub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn rmul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn rdiv(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn rexp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.cc.borrow_mut())
    }

    pub fn rln(&self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc.borrow_mut())
    }

    pub fn rsqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    /// atan2 with the principal range (−π, π].
    pub fn atan2(&self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let half_pi = self.rdiv(&self.pi(), &self.int(2));
        if x.is_zero() {
            return if y.is_negative() {
                half_pi.neg()
            } else if y.is_zero() {
                self.real(0.0)
            } else {
                half_pi
            };
        }
        let base = self.rdiv(y, x).atan(self.bits, RM, &mut self.cc.borrow_mut());
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.rsub(&base, &self.pi())
        } else {
            self.radd(&base, &self.pi())
        }
    }

    // ---- complex arithmetic ----

    pub fn add(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.radd(&a.re, &b.re),
            im: self.radd(&a.im, &b.im),
        }
    }

    pub fn sub(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.rsub(&a.re, &b.re),
            im: self.rsub(&a.im, &b.im),
        }
    }

    pub fn neg(&self, a: &BigComplex) -> BigComplex {
        BigComplex {
            re: a.re.neg(),
            im: a.im.neg(),
        }
    }

    pub fn mul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.rsub(&self.rmul(&a.re, &b.re), &self.rmul(&a.im, &b.im)),
            im: self.radd(&self.rmul(&a.re, &b.im), &self.rmul(&a.im, &b.re)),
        }
    }

    pub fn scale(&self, a: &BigComplex, k: &BigFloat) -> BigComplex {
        BigComplex {
            re: self.rmul(&a.re, k),
            im: self.rmul(&a.im, k),
        }
    }

    pub fn norm_sqr(&self, a: &BigComplex) -> BigFloat {
        self.radd(&self.rmul(&a.re, &a.re), &self.rmul(&a.im, &a.im))
    }

    pub fn abs(&self, a: &BigComplex) -> BigFloat {
        self.rsqrt(&self.norm_sqr(a))
    }

    pub fn div(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let d = self.norm_sqr(b);
        let re = self.radd(&self.rmul(&a.re, &b.re), &self.rmul(&a.im, &b.im));
        let im = self.rsub(&self.rmul(&a.im, &b.re), &self.rmul(&a.re, &b.im));
        BigComplex {
            re: self.rdiv(&re, &d),
            im: self.rdiv(&im, &d),
        }
    }

    pub fn exp(&self, a: &BigComplex) -> BigComplex {
        let m = self.rexp(&a.re);
        let c = a.im.cos(self.bits, RM, &mut self.cc.borrow_mut());
        let s = a.im.sin(self.bits, RM, &mut self.cc.borrow_mut());
        BigComplex {
            re: self.rmul(&m, &c),
            im: self.rmul(&m, &s),
        }
    }

    /// Principal logarithm.
    pub fn ln(&self, a: &BigComplex) -> BigComplex {
        let half = self.real(0.5);
        let n = self.norm_sqr(a);
        let re = self.rmul(&self.rln(&n), &half);
        let im = self.atan2(&a.im, &a.re);
        BigComplex { re, im }
    }

    /// Principal square root.
    pub fn sqrt(&self, a: &BigComplex) -> BigComplex {
        if a.re.is_zero() && a.im.is_zero() {
            return self.zero();
        }
        let r = self.abs(a);
        let half = self.real(0.5);
        let two = self.int(2);
        if !a.re.is_negative() {
            let re = self.rsqrt(&self.rmul(&self.radd(&r, &a.re), &half));
            let im = self.rdiv(&a.im, &self.rmul(&two, &re));
            BigComplex { re, im }
        } else {
            let mut im = self.rsqrt(&self.rmul(&self.rsub(&r, &a.re), &half));
            if a.im.is_negative() {
                im = im.neg();
            }
            let re = self.rdiv(&a.im, &self.rmul(&two, &im));
            BigComplex { re, im }
        }
    }

    /// exp(s · Log z), principal branch.
    pub fn pow(&self, z: &BigComplex, s: &BigComplex) -> BigComplex {
        let l = self.ln(z);
        let e = self.mul(s, &l);
        self.exp(&e)
    }
}

/// Round a big float to the nearest f64 (saturating to ±inf / 0).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0);
    let next = if words.len() >= 2 {
        words[words.len() - 2]
    } else {
        0
    };
    // Mantissa in [1/2, 1) as top/2^64 + next/2^128.
    let m = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
    let v = scale_pow2(m, e);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn scale_pow2(mut m: f64, mut e: i32) -> f64 {
    // Step in chunks so intermediate powers of two never overflow.
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
        if m.is_infinite() {
            return m;
        }
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
        if m == 0.0 {
            return 0.0;
        }
    }
    m * 2f64.powi(e)
}

impl BigComplex {
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}
