use super::coeff::{Coefficient, Gen};
use super::polyw::PolyW;
use super::ratfunc::RatFuncW;
use super::AlgebraError;
use std::collections::BTreeMap;
use std::fmt;

/// A root a*l + b of a denominator factor, linear in the sector index l.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinRoot {
    pub a: i64,
    pub b: i64,
}

impl LinRoot {
    pub fn new(a: i64, b: i64) -> LinRoot {
        LinRoot { a, b }
    }
    pub fn at(&self, l: i64) -> i64 {
        self.a * l + self.b
    }
    pub fn as_coeff(&self) -> Coefficient {
        &Coefficient::gen(Gen::L).scale(&super::rational::qi(self.a)) + &Coefficient::int(self.b)
    }
}

impl fmt::Display for LinRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_coeff().render())
    }
}

/// Rational function in w whose numerator may involve l and whose roots are
/// linear in l: the sector-generic form of a restricted symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LRatFunc {
    pub num: PolyW,
    pub den: BTreeMap<LinRoot, u32>,
}

/// A closed form num(l) / prod(a*l + b) produced by a generic residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericValue {
    pub num: Coefficient,
    pub den: Vec<LinRoot>,
}

impl LRatFunc {
    pub fn new(num: PolyW, roots: &[LinRoot]) -> LRatFunc {
        let mut den = BTreeMap::new();
        for r in roots {
            *den.entry(*r).or_insert(0) += 1;
        }
        LRatFunc { num, den }
    }

    pub fn mul(&self, o: &LRatFunc) -> LRatFunc {
        let mut den = self.den.clone();
        for (r, m) in &o.den {
            *den.entry(*r).or_insert(0) += m;
        }
        LRatFunc { num: &self.num * &o.num, den }
    }

    /// Sum with a common denominator (no cancellation attempted).
    pub fn add(&self, o: &LRatFunc) -> LRatFunc {
        let mut den = self.den.clone();
        for (r, m) in &o.den {
            let e = den.entry(*r).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |f: &LRatFunc| {
            let mut p = f.num.clone();
            for (r, m) in &den {
                let have = f.den.get(r).copied().unwrap_or(0);
                if *m > have {
                    p = &p * &PolyW::linear_pow(&r.as_coeff(), m - have);
                }
            }
            p
        };
        LRatFunc { num: &lift(self) + &lift(o), den }
    }

    /// (T^m f)(w) = f(w + m).
    pub fn shift(&self, m: i64) -> LRatFunc {
        LRatFunc {
            num: self.num.shift_int(m),
            den: self.den.iter().map(|(r, k)| (LinRoot::new(r.a, r.b - m), *k)).collect(),
        }
    }

    pub fn instantiate(&self, l: i64) -> RatFuncW {
        let lv = Coefficient::int(l);
        let num = self.num.map(|c| c.subs(Gen::L, &lv));
        let mut den = BTreeMap::new();
        for (r, m) in &self.den {
            *den.entry(r.at(l)).or_insert(0) += m;
        }
        RatFuncW::new(num, den)
    }

    /// Residue at the root `p`, as a closed form in l. Requires `p` to be a
    /// simple root of the stored denominator as a function of l.
    pub fn residue_generic(&self, p: LinRoot) -> Result<GenericValue, AlgebraError> {
        let m = self.den.get(&p).copied().unwrap_or(0);
        if m == 0 {
            return Ok(GenericValue { num: Coefficient::zero(), den: vec![] });
        }
        if m > 1 {
            return Err(AlgebraError::MultiplePole { pole: p.b, multiplicity: m });
        }
        let num = self.num.eval(&p.as_coeff());
        let mut den = Vec::new();
        let mut scalar = Coefficient::one();
        for (r, k) in &self.den {
            if *r == p {
                continue;
            }
            let diff = LinRoot::new(p.a - r.a, p.b - r.b);
            for _ in 0..*k {
                if diff.a == 0 {
                    if diff.b == 0 {
                        return Err(AlgebraError::MultiplePole { pole: p.b, multiplicity: 2 });
                    }
                    scalar = scalar.scale(&super::rational::q(1, diff.b));
                } else {
                    den.push(diff);
                }
            }
        }
        Ok(GenericValue { num: &num * &scalar, den })
    }
}

impl GenericValue {
    pub fn eval(&self, l: i64) -> Option<Coefficient> {
        let mut d = super::rational::qi(1);
        for r in &self.den {
            let v = r.at(l);
            if v == 0 {
                return None;
            }
            d *= super::rational::qi(v);
        }
        Some(self.num.subs(Gen::L, &Coefficient::int(l)).scale(&d.recip()))
    }

    /// Sum over a common (unreduced) denominator.
    pub fn add(&self, o: &GenericValue) -> GenericValue {
        let prod = |v: &[LinRoot]| v.iter().fold(Coefficient::one(), |acc, r| &acc * &r.as_coeff());
        let num = &(&self.num * &prod(&o.den)) + &(&o.num * &prod(&self.den));
        let mut den = self.den.clone();
        den.extend(o.den.iter().copied());
        GenericValue { num, den }
    }

    /// Substitute l -> l + k.
    pub fn shift_index(&self, k: i64) -> GenericValue {
        let lv = &Coefficient::gen(Gen::L) + &Coefficient::int(k);
        GenericValue {
            num: self.num.subs(Gen::L, &lv),
            den: self.den.iter().map(|r| LinRoot::new(r.a, r.b + r.a * k)).collect(),
        }
    }

    /// Equality as rational functions of l, by cross multiplication.
    pub fn equals(&self, o: &GenericValue) -> bool {
        let prod = |v: &[LinRoot]| v.iter().fold(Coefficient::one(), |acc, r| &acc * &r.as_coeff());
        &self.num * &prod(&o.den) == &o.num * &prod(&self.den)
    }

    pub fn render(&self) -> String {
        if self.den.is_empty() {
            return self.num.render();
        }
        let d: Vec<String> = self.den.iter().map(|r| format!("({})", r.as_coeff().render())).collect();
        format!("({})/({})", self.num.render(), d.join("*"))
    }
}
