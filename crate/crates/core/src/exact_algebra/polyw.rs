use super::coeff::Coefficient;
use super::rational::{binom, qi, Rational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in the Mellin covariable w with [`Coefficient`] coefficients,
/// stored in ascending degree without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyW {
    c: Vec<Coefficient>,
}

impl PolyW {
    pub fn new(mut c: Vec<Coefficient>) -> PolyW {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        PolyW { c }
    }
    pub fn zero() -> PolyW {
        PolyW { c: vec![] }
    }
    pub fn constant(k: Coefficient) -> PolyW {
        PolyW::new(vec![k])
    }
    pub fn one() -> PolyW {
        PolyW::constant(Coefficient::one())
    }
    /// The monomial w.
    pub fn w() -> PolyW {
        PolyW::new(vec![Coefficient::zero(), Coefficient::one()])
    }
    /// w - c
    pub fn linear(c: Coefficient) -> PolyW {
        PolyW::new(vec![-c, Coefficient::one()])
    }
    /// Polynomial with integer coefficients, ascending degree.
    pub fn from_ints(v: &[i64]) -> PolyW {
        PolyW::new(v.iter().map(|&n| Coefficient::int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.c
    }
    pub fn coeff(&self, k: usize) -> Coefficient {
        self.c.get(k).cloned().unwrap_or_else(Coefficient::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree, or -1 for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.c.len() as i32 - 1
    }

    pub fn scale(&self, k: &Coefficient) -> PolyW {
        PolyW::new(self.c.iter().map(|x| x * k).collect())
    }
    pub fn scale_q(&self, k: &Rational) -> PolyW {
        PolyW::new(self.c.iter().map(|x| x.scale(k)).collect())
    }

    pub fn eval(&self, x: &Coefficient) -> Coefficient {
        let mut acc = Coefficient::zero();
        for k in self.c.iter().rev() {
            acc = &(&acc * x) + k;
        }
        acc
    }
    pub fn eval_q(&self, x: &Rational) -> Coefficient {
        self.eval(&Coefficient::from_rational(x.clone()))
    }

    /// p(w + m).
    pub fn shift(&self, m: &Coefficient) -> PolyW {
        let mut out = PolyW::zero();
        let lin = PolyW::new(vec![m.clone(), Coefficient::one()]);
        for k in self.c.iter().rev() {
            out = &(&out * &lin) + &PolyW::constant(k.clone());
        }
        out
    }
    pub fn shift_int(&self, m: i64) -> PolyW {
        self.shift(&Coefficient::int(m))
    }

    pub fn derivative(&self) -> PolyW {
        PolyW::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x.scale(&qi(k as i64)))
                .collect(),
        )
    }

    /// Divide by (w - c): returns (quotient, remainder).
    pub fn div_linear(&self, c: &Coefficient) -> (PolyW, Coefficient) {
        if self.c.is_empty() {
            return (PolyW::zero(), Coefficient::zero());
        }
        let n = self.c.len();
        let mut q = vec![Coefficient::zero(); n - 1];
        let mut carry = Coefficient::zero();
        for k in (0..n).rev() {
            let v = &self.c[k] + &(&carry * c);
            if k == 0 {
                return (PolyW::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Taylor coefficients about w = c: p(c + x) = sum_k out[k] x^k.
    pub fn taylor_at(&self, c: &Coefficient) -> Vec<Coefficient> {
        self.shift(c).c
    }

    /// Apply a map to every coefficient.
    pub fn map(&self, f: impl Fn(&Coefficient) -> Coefficient) -> PolyW {
        PolyW::new(self.c.iter().map(f).collect())
    }

    /// Expand (w - c)^m.
    pub fn linear_pow(c: &Coefficient, m: u32) -> PolyW {
        let lin = PolyW::linear(c.clone());
        let mut acc = PolyW::one();
        for _ in 0..m {
            acc = &acc * &lin;
        }
        acc
    }

    /// Coefficients of (a + x)^(-m) as a series in x, for a unit constant a.
    pub(crate) fn inv_linear_series(a: &Coefficient, m: u32, order: usize) -> Option<Vec<Coefficient>> {
        let ainv = a.inverse()?;
        let mq = qi(-(m as i64));
        let mut out = Vec::with_capacity(order + 1);
        let base = ainv.pow(m);
        let mut apow = base;
        for k in 0..=order {
            out.push(apow.scale(&binom(&mq, k as u32)));
            apow = &apow * &ainv;
        }
        Some(out)
    }

    pub fn render(&self) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let wpart = match k {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{k}"),
            };
            let cs = x.render();
            let term = if k == 0 {
                cs
            } else if x.is_one() {
                wpart
            } else if cs == "-1" {
                format!("-{wpart}")
            } else if x.n_terms() > 1 {
                format!("({cs})*{wpart}")
            } else {
                format!("{cs}*{wpart}")
            };
            parts.push(term);
        }
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        s
    }
}

impl<'a, 'b> Add<&'b PolyW> for &'a PolyW {
    type Output = PolyW;
    fn add(self, o: &'b PolyW) -> PolyW {
        let n = self.c.len().max(o.c.len());
        PolyW::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}
impl<'a, 'b> Sub<&'b PolyW> for &'a PolyW {
    type Output = PolyW;
    fn sub(self, o: &'b PolyW) -> PolyW {
        let n = self.c.len().max(o.c.len());
        PolyW::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}
impl<'a, 'b> Mul<&'b PolyW> for &'a PolyW {
    type Output = PolyW;
    fn mul(self, o: &'b PolyW) -> PolyW {
        if self.is_zero() || o.is_zero() {
            return PolyW::zero();
        }
        let mut c = vec![Coefficient::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        PolyW::new(c)
    }
}
impl<'a> Neg for &'a PolyW {
    type Output = PolyW;
    fn neg(self) -> PolyW {
        PolyW::new(self.c.iter().map(|x| -x).collect())
    }
}
impl Add for PolyW {
    type Output = PolyW;
    fn add(self, o: PolyW) -> PolyW {
        &self + &o
    }
}
impl Sub for PolyW {
    type Output = PolyW;
    fn sub(self, o: PolyW) -> PolyW {
        &self - &o
    }
}
impl Mul for PolyW {
    type Output = PolyW;
    fn mul(self, o: PolyW) -> PolyW {
        &self * &o
    }
}
impl Neg for PolyW {
    type Output = PolyW;
    fn neg(self) -> PolyW {
        -&self
    }
}

impl fmt::Display for PolyW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
impl fmt::Debug for PolyW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
