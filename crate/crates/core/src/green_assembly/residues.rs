use super::terms::{extra_residues, templates, GreenId, SymRef};
use super::GreenError;
use crate::exact_algebra::{parse_coefficient, Coefficient, GenericValue, LinRoot};
use crate::parametrix_engine::{compute_d, generic_d};
use crate::symbol_model::{build_c, CKind, CovPoly, Eta};
use rayon::prelude::*;
use serde::Deserialize;
use std::collections::{BTreeMap, BTreeSet};

/// One eta-component of Res(T^m d^(k)_{n,j}, pole) on sector l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRecord {
    pub green: GreenId,
    pub sym: SymRef,
    pub pole: i64,
    pub l: u32,
    pub eta: Eta,
    pub value: Coefficient,
}

/// Residue of every eta-component of T^m d on sector l; zero components
/// are omitted.
pub fn residue_of(sym: &SymRef, pole: i64, l: u32) -> Result<BTreeMap<Eta, Coefficient>, GreenError> {
    let d = compute_d(sym.k, sym.n, sym.j, l)?.shift(sym.shift);
    let mut out = BTreeMap::new();
    for (e, r) in &d.value {
        let v = r.residue_at(pole)?;
        if !v.is_zero() {
            out.insert(*e, v);
        }
    }
    Ok(out)
}

/// The (symbol, pole) pairs a Green symbol needs: its templates plus the
/// third-order entries listed with them.
pub fn required_residues(id: GreenId) -> Vec<(SymRef, i64)> {
    let mut set: BTreeSet<(SymRef, i64)> = templates(id).into_iter().map(|t| (t.sym, t.pole)).collect();
    set.extend(extra_residues(id));
    set.into_iter().collect()
}

/// All residues needed by the listed Green symbols on sectors 0..=l_max.
pub fn residue_table_for(ids: &[GreenId], l_max: u32) -> Result<Vec<ResidueRecord>, GreenError> {
    let jobs: Vec<(GreenId, SymRef, i64, u32)> = ids
        .iter()
        .flat_map(|id| {
            required_residues(*id).into_iter().flat_map(move |(s, p)| (0..=l_max).map(move |l| (*id, s, p, l)))
        })
        .collect();
    let parts: Result<Vec<Vec<ResidueRecord>>, GreenError> = jobs
        .par_iter()
        .map(|&(green, sym, pole, l)| {
            Ok(residue_of(&sym, pole, l)?
                .into_iter()
                .map(|(eta, value)| ResidueRecord { green, sym, pole, l, eta, value })
                .collect())
        })
        .collect();
    Ok(parts?.into_iter().flatten().collect())
}

/// Residue table of every Green symbol on sectors 0..=l_max.
pub fn residue_table(l_max: u32) -> Result<Vec<ResidueRecord>, GreenError> {
    residue_table_for(&GreenId::ALL, l_max)
}

/// A sector-generic residue: factor(eta) * value(l) for l >= l_min.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRecord {
    pub sym: SymRef,
    pub pole: LinRoot,
    pub l_min: u32,
    pub factor: CovPoly,
    pub value: GenericValue,
}

/// Split a generic symbol into an eta factor and a constant it absorbs.
fn generic_parts(sym: &SymRef) -> Option<(CovPoly, Coefficient, crate::exact_algebra::LRatFunc)> {
    let (cov, rat) = generic_d(sym.k, sym.n, sym.j)?;
    if cov.degree() <= 0 {
        Some((CovPoly::one(), cov.coeff(&[0; 3]), rat.shift(sym.shift)))
    } else {
        Some((cov, Coefficient::one(), rat.shift(sym.shift)))
    }
}

/// Res(T^m d, pole(l)) as a closed form in l.
pub fn generic_residue(sym: &SymRef, pole: LinRoot, l_min: u32) -> Result<GenericRecord, GreenError> {
    let (factor, c, rat) = generic_parts(sym).ok_or(GreenError::NoGenericForm(sym.label()))?;
    let v = rat.residue_generic(pole)?;
    Ok(GenericRecord { sym: *sym, pole, l_min, factor, value: GenericValue { num: &v.num * &c, den: v.den } })
}

// ---- transcribed residue tables -------------------------------------------

#[derive(Clone, Debug, Deserialize)]
pub struct FixedRow {
    pub green: String,
    pub sym: [i64; 4],
    pub pole: i64,
    pub factor: String,
    pub sectors: BTreeMap<u32, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GenericTerm {
    pub num: String,
    pub den: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GenericRow {
    pub green: String,
    pub sym: [i64; 4],
    pub pole: [i64; 2],
    pub l_min: u32,
    pub factor: String,
    pub value: Vec<GenericTerm>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MRowPart {
    pub offset: u32,
    pub value: Vec<GenericTerm>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MRow {
    pub green: String,
    pub sym: [i64; 4],
    pub factor: String,
    pub parts: Vec<MRowPart>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ResidueFixture {
    pub fixed: Vec<FixedRow>,
    pub generic: Vec<GenericRow>,
    pub m_rows: Vec<MRow>,
}

pub const RESIDUE_FIXTURE: &str = include_str!("../../fixtures/appendix_d.json");

pub fn load_fixture() -> Result<ResidueFixture, GreenError> {
    serde_json::from_str(RESIDUE_FIXTURE).map_err(|e| GreenError::Fixture(e.to_string()))
}

fn sym_of(s: &[i64; 4]) -> SymRef {
    SymRef::new(s[0] as u32, s[1] as u32, s[2] as u32, s[3])
}

pub fn parse_factor(s: &str) -> Result<CovPoly, GreenError> {
    match s {
        "1" => Ok(CovPoly::one()),
        "C0" => Ok(build_c(CKind::C0)),
        "iC1" => Ok(build_c(CKind::C1).scale(&crate::exact_algebra::c_gen(crate::exact_algebra::Gen::I))),
        _ => Err(GreenError::Fixture(format!("unknown factor {s}"))),
    }
}

fn parse(s: &str) -> Result<Coefficient, GreenError> {
    parse_coefficient(s).map_err(|e| GreenError::Fixture(e.to_string()))
}

fn parse_generic(v: &[GenericTerm]) -> Result<GenericValue, GreenError> {
    let mut acc = GenericValue { num: Coefficient::zero(), den: vec![] };
    for t in v {
        let g = GenericValue { num: parse(&t.num)?, den: t.den.iter().map(|d| LinRoot::new(d[0], d[1])).collect() };
        acc = acc.add(&g);
    }
    Ok(acc)
}

/// One computed-versus-transcribed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCheck {
    pub green: String,
    pub label: String,
    pub l: Option<u32>,
    pub computed: String,
    pub expected: String,
    /// computed minus expected, exact where both sides are explicit
    pub diff: String,
    pub ok: bool,
}

fn hom_diff(a: &BTreeMap<Eta, Coefficient>, b: &BTreeMap<Eta, Coefficient>) -> String {
    let mut d = a.clone();
    for (e, c) in b {
        let v = &d.get(e).cloned().unwrap_or_default() - c;
        if v.is_zero() {
            d.remove(e);
        } else {
            d.insert(*e, v);
        }
    }
    hom_render(&d)
}

fn generic_diff(a: &GenericValue, b: &GenericValue, ok: bool) -> String {
    if ok {
        return "0".into();
    }
    a.add(&GenericValue { num: -b.num.clone(), den: b.den.clone() }).render()
}

fn hom_render(h: &BTreeMap<Eta, Coefficient>) -> String {
    let mut p = CovPoly::zero();
    for (e, c) in h {
        p.add_term(*e, c.clone());
    }
    p.render()
}

/// Compare every transcribed entry with the recomputed residue: fixed rows on
/// sectors 0..=l_max (entries absent from a row must vanish), generic rows as
/// closed forms and instantiated, m-rows per sector.
pub fn compare_fixture(l_max: u32) -> Result<Vec<ResidueCheck>, GreenError> {
    let fx = load_fixture()?;
    let mut out = Vec::new();
    for row in &fx.fixed {
        let sym = sym_of(&row.sym);
        let factor = parse_factor(&row.factor)?;
        for l in 0..=l_max {
            let got = residue_of(&sym, row.pole, l)?;
            let v = match row.sectors.get(&l) {
                Some(s) => parse(s)?,
                None => Coefficient::zero(),
            };
            let want: BTreeMap<Eta, Coefficient> =
                factor.scale(&v).terms().map(|(e, c)| (*e, c.clone())).collect();
            out.push(ResidueCheck {
                green: row.green.clone(),
                label: format!("Res({}, {})", sym.label(), row.pole),
                l: Some(l),
                computed: hom_render(&got),
                expected: hom_render(&want),
                diff: hom_diff(&got, &want),
                ok: got == want,
            });
        }
    }
    for row in &fx.generic {
        let sym = sym_of(&row.sym);
        let pole = LinRoot::new(row.pole[0], row.pole[1]);
        let rec = generic_residue(&sym, pole, row.l_min)?;
        let want = parse_generic(&row.value)?;
        let factor = parse_factor(&row.factor)?;
        let label = format!("Res({}, {})", sym.label(), pole);
        out.push(ResidueCheck {
            green: row.green.clone(),
            label: label.clone(),
            l: None,
            computed: rec.value.render(),
            expected: want.render(),
            diff: generic_diff(&rec.value, &want, rec.value.equals(&want)),
            ok: rec.value.equals(&want) && rec.factor == factor,
        });
        for l in row.l_min..=l_max {
            let got = residue_of(&sym, pole.at(l as i64), l)?;
            let wv = want.eval(l as i64).unwrap_or_default();
            let w: BTreeMap<Eta, Coefficient> = factor.scale(&wv).terms().map(|(e, c)| (*e, c.clone())).collect();
            out.push(ResidueCheck {
                green: row.green.clone(),
                label: label.clone(),
                l: Some(l),
                computed: hom_render(&got),
                expected: hom_render(&w),
                diff: hom_diff(&got, &w),
                ok: got == w,
            });
        }
    }
    for row in &fx.m_rows {
        let sym = sym_of(&row.sym);
        let factor = parse_factor(&row.factor)?;
        let parts: Vec<(u32, GenericValue)> =
            row.parts.iter().map(|p| Ok((p.offset, parse_generic(&p.value)?))).collect::<Result<_, GreenError>>()?;
        for m in 0..=l_max {
            for l in 0..=l_max {
                let wv = parts
                    .iter()
                    .find(|(o, _)| m + o == l)
                    .and_then(|(_, g)| g.eval(m as i64))
                    .unwrap_or_default();
                let got = residue_of(&sym, -(m as i64), l)?;
                let w: BTreeMap<Eta, Coefficient> =
                    factor.scale(&wv).terms().map(|(e, c)| (*e, c.clone())).collect();
                out.push(ResidueCheck {
                    green: row.green.clone(),
                    label: format!("Res({}, -{m})", sym.label()),
                    l: Some(l),
                    computed: hom_render(&got),
                    expected: hom_render(&w),
                    diff: hom_diff(&got, &w),
                ok: got == w,
                });
            }
        }
    }
    Ok(out)
}

/// The m-indexed rows specialised to m = l - offset must equal the generic
/// single-sector rows at the pole offset - l.
pub fn m_row_consistency() -> Result<Vec<ResidueCheck>, GreenError> {
    let fx = load_fixture()?;
    let mut out = Vec::new();
    for row in &fx.m_rows {
        for part in &row.parts {
            let g = parse_generic(&part.value)?.shift_index(-(part.offset as i64));
            let pole = [-1, part.offset as i64];
            if let Some(single) = fx.generic.iter().find(|r| r.sym == row.sym && r.pole == pole) {
                let s = parse_generic(&single.value)?;
                out.push(ResidueCheck {
                    green: row.green.clone(),
                    label: format!("Res({}, {}) from the m-row", sym_of(&row.sym).label(), LinRoot::new(-1, pole[1])),
                    l: None,
                    computed: g.render(),
                    expected: s.render(),
                    diff: generic_diff(&g, &s, g.equals(&s)),
                    ok: g.equals(&s),
                });
            }
        }
    }
    Ok(out)
}
