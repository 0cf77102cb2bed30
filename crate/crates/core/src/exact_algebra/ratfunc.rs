use super::coeff::Coefficient;
use super::polyw::PolyW;
use super::rational::{as_i64, Rational};
use super::AlgebraError;
use num::{Integer, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Rational function N(w) / prod (w - c)^m with integer roots c.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFuncW {
    num: PolyW,
    den: BTreeMap<i64, u32>,
}

impl RatFuncW {
    pub fn new(num: PolyW, den: BTreeMap<i64, u32>) -> RatFuncW {
        let mut f = RatFuncW { num, den };
        f.den.retain(|_, m| *m > 0);
        f.reduce();
        f
    }
    pub fn zero() -> RatFuncW {
        RatFuncW::default()
    }
    pub fn one() -> RatFuncW {
        RatFuncW::from_poly(PolyW::one())
    }
    pub fn constant(c: Coefficient) -> RatFuncW {
        RatFuncW::from_poly(PolyW::constant(c))
    }
    pub fn from_poly(p: PolyW) -> RatFuncW {
        RatFuncW { num: p, den: BTreeMap::new() }
    }
    /// num / prod (w - r) over the listed roots (repeats allowed).
    pub fn from_roots(num: PolyW, roots: &[i64]) -> RatFuncW {
        let mut den = BTreeMap::new();
        for &r in roots {
            *den.entry(r).or_insert(0) += 1;
        }
        RatFuncW::new(num, den)
    }
    /// 1 / p for a polynomial that splits into integer linear factors.
    pub fn recip_poly(p: &PolyW) -> Result<RatFuncW, AlgebraError> {
        let (lead, roots) = integer_roots(p)?;
        let inv = lead.recip();
        Ok(RatFuncW::from_roots(PolyW::constant(Coefficient::from_rational(inv)), &roots))
    }

    pub fn numerator(&self) -> &PolyW {
        &self.num
    }
    pub fn denominator(&self) -> &BTreeMap<i64, u32> {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn den_degree(&self) -> u32 {
        self.den.values().sum()
    }
    pub fn den_poly(&self) -> PolyW {
        let mut acc = PolyW::one();
        for (r, m) in &self.den {
            acc = &acc * &PolyW::linear_pow(&Coefficient::int(*r), *m);
        }
        acc
    }

    /// Cancel every denominator root that is also a root of the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let roots: Vec<i64> = self.den.keys().copied().collect();
        for r in roots {
            let c = Coefficient::int(r);
            loop {
                let m = self.den[&r];
                if m == 0 {
                    break;
                }
                let (qt, rem) = self.num.div_linear(&c);
                if !rem.is_zero() {
                    break;
                }
                self.num = qt;
                *self.den.get_mut(&r).unwrap() -= 1;
            }
        }
        self.den.retain(|_, m| *m > 0);
    }

    /// Multiset of poles after reduction.
    pub fn pole_set(&self) -> BTreeMap<i64, u32> {
        self.den.clone()
    }

    /// (T^m f)(w) = f(w + m); every pole c moves to c - m.
    pub fn shift(&self, m: i64) -> RatFuncW {
        RatFuncW {
            num: self.num.shift_int(m),
            den: self.den.iter().map(|(r, k)| (r - m, *k)).collect(),
        }
    }

    pub fn scale(&self, k: &Coefficient) -> RatFuncW {
        if k.is_zero() {
            return RatFuncW::zero();
        }
        RatFuncW { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &PolyW) -> RatFuncW {
        RatFuncW::new(&self.num * p, self.den.clone())
    }

    /// Divide by a polynomial splitting into integer linear factors.
    pub fn div_poly(&self, p: &PolyW) -> Result<RatFuncW, AlgebraError> {
        Ok(self * &RatFuncW::recip_poly(p)?)
    }

    /// Apply a map to the numerator coefficients (e.g. substitution).
    pub fn map_coeffs(&self, f: impl Fn(&Coefficient) -> Coefficient) -> RatFuncW {
        RatFuncW::new(self.num.map(f), self.den.clone())
    }

    /// d/dw.
    pub fn derivative(&self) -> RatFuncW {
        // (N/D)' = N'/D - N * sum_c m_c/(w-c) / D
        let mut out = RatFuncW::new(self.num.derivative(), self.den.clone());
        for (r, m) in &self.den {
            let mut den = self.den.clone();
            *den.get_mut(r).unwrap() += 1;
            let term = RatFuncW::new(self.num.scale(&Coefficient::int(*m as i64)), den);
            out = &out - &term;
        }
        out
    }

    /// Value at a non-pole point.
    pub fn eval(&self, w0: &Coefficient) -> Coefficient {
        let mut d = Coefficient::one();
        for (r, m) in &self.den {
            d = &d * &(w0 - &Coefficient::int(*r)).pow(*m);
        }
        let inv = d.inverse().expect("evaluation at a pole or at a non-unit point");
        &self.num.eval(w0) * &inv
    }

    /// Taylor coefficients of (w - c)^m f(w) about w = c through `order`,
    /// where m is the multiplicity of c (0 if not a pole).
    fn cofactor_taylor(&self, c: i64, order: usize) -> Vec<Coefficient> {
        let cc = Coefficient::int(c);
        let mut series = self.num.taylor_at(&cc);
        series.resize(order + 1, Coefficient::zero());
        series.truncate(order + 1);
        for (r, m) in &self.den {
            if *r == c {
                continue;
            }
            let a = Coefficient::int(c - r);
            let inv = PolyW::inv_linear_series(&a, *m, order).expect("distinct integer roots");
            series = truncated_mul(&series, &inv, order);
        }
        series
    }

    /// Coefficient of (w - c)^(-k) in the Laurent expansion at c (k >= 1).
    pub fn laurent_coeff(&self, c: i64, k: u32) -> Coefficient {
        let m = self.den.get(&c).copied().unwrap_or(0);
        if k == 0 || k > m {
            return Coefficient::zero();
        }
        let idx = (m - k) as usize;
        self.cofactor_taylor(c, idx)[idx].clone()
    }

    /// Residue at a simple pole; zero at a regular point.
    pub fn residue_at(&self, c: i64) -> Result<Coefficient, AlgebraError> {
        match self.den.get(&c).copied().unwrap_or(0) {
            0 => Ok(Coefficient::zero()),
            1 => Ok(self.laurent_coeff(c, 1)),
            m => Err(AlgebraError::MultiplePole { pole: c, multiplicity: m }),
        }
    }

    /// Residue at any pole, including the 1/(w-c) Laurent coefficient at
    /// multiple poles.
    pub fn laurent_residue(&self, c: i64) -> Coefficient {
        self.laurent_coeff(c, 1)
    }

    /// Partial fraction terms (root, k, coeff) meaning coeff / (w - root)^k.
    pub fn partial_fractions(&self) -> Result<Vec<(i64, u32, Coefficient)>, AlgebraError> {
        if self.num.degree() >= self.den_degree() as i32 {
            return Err(AlgebraError::Degree {
                num_degree: self.num.degree(),
                den_degree: self.den_degree(),
            });
        }
        let mut out = Vec::new();
        for (r, m) in &self.den {
            let tay = self.cofactor_taylor(*r, (*m - 1) as usize);
            for k in (1..=*m).rev() {
                let c = tay[(*m - k) as usize].clone();
                if !c.is_zero() {
                    out.push((*r, k, c));
                }
            }
        }
        Ok(out)
    }

    /// Rebuild a rational function from partial fraction terms.
    pub fn from_partial_fractions(terms: &[(i64, u32, Coefficient)]) -> RatFuncW {
        let mut acc = RatFuncW::zero();
        for (r, k, c) in terms {
            let mut den = BTreeMap::new();
            den.insert(*r, *k);
            acc = &acc + &RatFuncW::new(PolyW::constant(c.clone()), den);
        }
        acc
    }

    pub fn render(&self) -> String {
        let n = self.num.render();
        if self.den.is_empty() {
            return n;
        }
        let n = if self.num.degree() > 0 || self.num.coeff(0).n_terms() > 1 {
            format!("({n})")
        } else {
            n
        };
        let mut d = String::new();
        for (r, m) in self.den.iter().rev() {
            let f = match r.cmp(&0) {
                std::cmp::Ordering::Equal => "w".to_string(),
                std::cmp::Ordering::Greater => format!("(w-{r})"),
                std::cmp::Ordering::Less => format!("(w+{})", -r),
            };
            if *m == 1 {
                d.push_str(&f);
            } else {
                d.push_str(&format!("{f}^{m}"));
            }
        }
        format!("{n}/({d})")
    }
}

fn truncated_mul(a: &[Coefficient], b: &[Coefficient], order: usize) -> Vec<Coefficient> {
    let mut out = vec![Coefficient::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Split a polynomial with rational coefficients into leading coefficient
/// and integer roots (with repetition). Fails if it does not split over Z.
pub fn integer_roots(p: &PolyW) -> Result<(Rational, Vec<i64>), AlgebraError> {
    let mut rat: Vec<Rational> = Vec::new();
    for c in p.coeffs() {
        rat.push(c.as_rational().ok_or_else(|| AlgebraError::NotSplit(p.render()))?);
    }
    if rat.is_empty() {
        return Err(AlgebraError::NotSplit(p.render()));
    }
    let lead = rat.last().unwrap().clone();
    let mut cur = p.clone();
    let mut roots = Vec::new();
    while cur.degree() > 0 {
        let coeffs: Vec<Rational> = cur.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
        if coeffs[0].is_zero() {
            roots.push(0);
            cur = cur.div_linear(&Coefficient::zero()).0;
            continue;
        }
        // clear denominators; integer roots divide the constant term
        let l = coeffs.iter().fold(num::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let c0 = (&coeffs[0] * Rational::from_integer(l)).to_integer().abs();
        let c0 = c0.to_i64().ok_or_else(|| AlgebraError::NotSplit(p.render()))?;
        let mut found = None;
        let mut d = 1i64;
        while d * d <= c0 && found.is_none() {
            if c0 % d == 0 {
                for cand in [d, -d, c0 / d, -(c0 / d)] {
                    if cur.eval(&Coefficient::int(cand)).is_zero() {
                        found = Some(cand);
                        break;
                    }
                }
            }
            d += 1;
        }
        match found {
            Some(r) => {
                roots.push(r);
                cur = cur.div_linear(&Coefficient::int(r)).0;
            }
            None => return Err(AlgebraError::NotSplit(p.render())),
        }
    }
    Ok((lead, roots))
}

/// Integer value of a coefficient, if it is one.
pub fn coeff_as_i64(c: &Coefficient) -> Option<i64> {
    c.as_rational().and_then(|r| as_i64(&r))
}

impl<'a, 'b> Add<&'b RatFuncW> for &'a RatFuncW {
    type Output = RatFuncW;
    fn add(self, o: &'b RatFuncW) -> RatFuncW {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (r, m) in &o.den {
            let e = den.entry(*r).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |f: &RatFuncW| {
            let mut p = f.num.clone();
            for (r, m) in &den {
                let have = f.den.get(r).copied().unwrap_or(0);
                if *m > have {
                    p = &p * &PolyW::linear_pow(&Coefficient::int(*r), m - have);
                }
            }
            p
        };
        let num = &lift(self) + &lift(o);
        RatFuncW::new(num, den)
    }
}
impl<'a, 'b> Sub<&'b RatFuncW> for &'a RatFuncW {
    type Output = RatFuncW;
    fn sub(self, o: &'b RatFuncW) -> RatFuncW {
        self + &(-o)
    }
}
impl<'a, 'b> Mul<&'b RatFuncW> for &'a RatFuncW {
    type Output = RatFuncW;
    fn mul(self, o: &'b RatFuncW) -> RatFuncW {
        if self.is_zero() || o.is_zero() {
            return RatFuncW::zero();
        }
        let mut den = self.den.clone();
        for (r, m) in &o.den {
            *den.entry(*r).or_insert(0) += m;
        }
        RatFuncW::new(&self.num * &o.num, den)
    }
}
impl<'a> Neg for &'a RatFuncW {
    type Output = RatFuncW;
    fn neg(self) -> RatFuncW {
        RatFuncW { num: -&self.num, den: self.den.clone() }
    }
}
impl Add for RatFuncW {
    type Output = RatFuncW;
    fn add(self, o: RatFuncW) -> RatFuncW {
        &self + &o
    }
}
impl Sub for RatFuncW {
    type Output = RatFuncW;
    fn sub(self, o: RatFuncW) -> RatFuncW {
        &self - &o
    }
}
impl Mul for RatFuncW {
    type Output = RatFuncW;
    fn mul(self, o: RatFuncW) -> RatFuncW {
        &self * &o
    }
}
impl Neg for RatFuncW {
    type Output = RatFuncW;
    fn neg(self) -> RatFuncW {
        -&self
    }
}

impl fmt::Display for RatFuncW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
impl fmt::Debug for RatFuncW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
