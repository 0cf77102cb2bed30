use super::output::{fmt_float, NumericRendering, OutputRecord, Status};
use super::{Case, CliError, EdgeArg};
use crate::exact_algebra::{c_gen, q, qi, Coefficient, Gen, PolyW, Rational};
use crate::green_assembly::{compare_fixture, theorem1_table, EdgeKind, GreenId};
use crate::mellin_verify::{
    boundary_functional, cusp_coefficient, molecule_z2, noninteracting_u, quadrature_functional, single_center_limit,
    verify_green_action, CutoffSpec,
};
use crate::parametrix_engine::{compute_d, in_range, pole_census, Side};
use crate::series_engine::{expand_potential, max_order, printed_taylor, Edge, MoleculeParams, SeriesError, TaylorTarget};
use crate::symbol_model::Eta;
use std::ops::RangeInclusive;

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn series_err(e: SeriesError) -> CliError {
    match e {
        SeriesError::Order { .. } => CliError::Usage(e.to_string()),
        e => internal(e),
    }
}

fn check_order(order: usize) -> Result<(), CliError> {
    let max = max_order();
    if order > max {
        return Err(CliError::Usage(format!("order {order} exceeds the cap {max} (EDGEGREEN_MAX_ORDER)")));
    }
    Ok(())
}

fn status(ok: bool) -> Option<Status> {
    Some(if ok { Status::Pass } else { Status::Fail })
}

fn edges(e: Option<EdgeArg>) -> Vec<EdgeKind> {
    match e {
        Some(EdgeArg::En) => vec![EdgeKind::En],
        Some(EdgeArg::Ee) => vec![EdgeKind::Ee],
        None => vec![EdgeKind::En, EdgeKind::Ee],
    }
}

pub fn cmd_expand(
    target: &str,
    order: usize,
    z: Option<&Rational>,
    za: Option<&Coefficient>,
    zb: Option<&Coefficient>,
) -> Result<OutputRecord, CliError> {
    let mut t = TaylorTarget::parse(target).ok_or_else(|| CliError::Usage(format!("unknown target '{target}'")))?;
    check_order(order)?;
    let mut rec = OutputRecord::new("expand", &["power", "coefficient", "printed", "diff"])
        .param("target", target)
        .param("order", order)
        .exact(&["coefficient", "diff"]);
    if let TaylorTarget::Molecule(p) = &mut t {
        if let Some(a) = za {
            p.za = a.clone();
            rec = rec.param("za", a);
        }
        if let Some(b) = zb {
            p.zb = b.clone();
            rec = rec.param("zb", b);
        }
    } else if za.is_some() || zb.is_some() {
        return Err(CliError::Usage("--za/--zb apply to the molecule target only".into()));
    }
    let subs = |c: &Coefficient| match z {
        Some(v) => c.subs(Gen::Z, &Coefficient::from_rational(v.clone())),
        None => c.clone(),
    };
    if let Some(v) = z {
        rec = rec.param("Z", v);
    }
    let s = t.expand(order).map_err(series_err)?;
    let printed = printed_taylor().map_err(internal)?.remove(target).unwrap_or_default();
    let mut all_ok = true;
    for k in 0..=order {
        let c = subs(&s.coeff(k as i32));
        let (p, d) = match printed.get(k) {
            Some(p) => {
                let p = subs(p);
                let d = &c - &p;
                all_ok &= d.is_zero();
                (p.render(), d.render())
            }
            None => ("-".into(), "-".into()),
        };
        rec.push(vec![format!("r^{k}"), c.render(), p, d]);
    }
    if !printed.is_empty() {
        rec.status = status(all_ok);
    }
    Ok(rec)
}

fn eta_label(e: &Eta) -> String {
    let names = ["tau", "Theta", "Phi"];
    let m: Vec<String> = (0..3)
        .filter(|k| e[*k] > 0)
        .map(|k| if e[k] == 1 { format!("(r*{})", names[k]) } else { format!("(r*{})^{}", names[k], e[k]) })
        .collect();
    if m.is_empty() {
        "1".into()
    } else {
        m.join("*")
    }
}

pub fn cmd_symbols(level: u32, sectors: RangeInclusive<u32>, order: usize) -> Result<OutputRecord, CliError> {
    if level > 2 {
        return Err(CliError::Usage(format!("level {level} outside 0..=2")));
    }
    check_order(order)?;
    let mut rec = OutputRecord::new("symbols", &["symbol", "l", "component", "value", "poles"])
        .param("level", level)
        .param("sector", format!("{}..={}", sectors.start(), sectors.end()))
        .param("order", order);
    for l in sectors {
        for n in 0..=order as u32 {
            for j in 0..=order as u32 {
                if !in_range(level, n, j) {
                    continue;
                }
                let d = compute_d(level, n, j, l).map_err(internal)?;
                if d.is_zero() {
                    rec.push(vec![d.label(), l.to_string(), "-".into(), "0".into(), "-".into()]);
                }
                for (e, r) in &d.value {
                    let poles: Vec<String> = r
                        .pole_set()
                        .iter()
                        .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{p}^{m}") })
                        .collect();
                    rec.push(vec![d.label(), l.to_string(), eta_label(e), r.render(), poles.join(" ")]);
                }
            }
        }
    }
    Ok(rec)
}

pub fn cmd_residues(green: &str, l_max: u32, sectors: Option<RangeInclusive<u32>>) -> Result<OutputRecord, CliError> {
    let filter = if green == "all" {
        None
    } else {
        Some(GreenId::parse(green).map_err(|e| CliError::Usage(e.to_string()))?.name())
    };
    let max = max_order() as u32;
    if l_max > max {
        return Err(CliError::Usage(format!("l-max {l_max} exceeds the cap {max} (EDGEGREEN_MAX_ORDER)")));
    }
    let mut rec = OutputRecord::new("residues", &["green", "residue", "l", "computed", "printed", "diff"])
        .param("green", green)
        .param("l_max", l_max);
    if let Some(s) = &sectors {
        rec = rec.param("sector", format!("{}..={}", s.start(), s.end()));
    }
    let checks = compare_fixture(l_max).map_err(internal)?;
    let mut ok = true;
    for c in checks {
        if filter.is_some_and(|g| g != c.green) {
            continue;
        }
        let keep = match (&sectors, c.l) {
            (Some(s), Some(l)) => s.contains(&l),
            (Some(_), None) => false,
            (None, _) => true,
        };
        if !keep {
            continue;
        }
        ok &= c.ok;
        let l = c.l.map_or("generic".to_string(), |l| l.to_string());
        rec.push(vec![c.green, c.label, l, c.computed, c.expected, c.diff]);
    }
    rec.status = status(ok);
    Ok(rec)
}

pub fn cmd_theorem1(edge: Option<EdgeArg>) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("theorem1", &["edge", "form", "l", "n", "power", "derived", "printed", "diff"])
        .param("edge", edge.map_or("en,ee", |e| if e == EdgeArg::En { "en" } else { "ee" }))
        .exact(&["derived", "printed", "diff"]);
    let mut ok = true;
    for e in edges(edge) {
        let tab = theorem1_table(e).map_err(internal)?;
        ok &= tab.is_exact();
        let name = e.name().to_string();
        for (label, d, p) in [("Z1", &tab.z1, &tab.printed_z1), ("Z2", &tab.z2, &tab.printed_z2)] {
            let row = vec![name.clone(), "constant".into(), "-".into(), "-".into(), label.into()];
            rec.push([row, vec![d.render(), p.render(), (d - p).render()]].concat());
        }
        for (form, rows) in [("symbolic", &tab.symbolic), ("substituted", &tab.rows)] {
            for r in rows {
                for k in 0..3 {
                    rec.push(vec![
                        name.clone(),
                        form.into(),
                        r.l.to_string(),
                        r.n.to_string(),
                        format!("r^{k}"),
                        r.derived[k].render(),
                        r.printed[k].render(),
                        r.diff[k].render(),
                    ]);
                }
            }
        }
        for (l, res) in &tab.residuals {
            let d = if res.is_zero() { "0" } else { "nonzero" };
            let row = vec![name.clone(), "residual".into(), l.to_string(), "-".into(), "-".into()];
            rec.push([row, vec![d.into(), "0".into(), d.into()]].concat());
        }
    }
    rec.status = status(ok);
    Ok(rec)
}

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub case: Case,
    pub l: Option<u32>,
    pub z: Option<Rational>,
    pub tol: f64,
    pub gamma: Rational,
    pub edge: Option<EdgeArg>,
    pub za: Coefficient,
    pub zb: Coefficient,
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<OutputRecord, CliError> {
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(CliError::Usage(format!("tolerance {} must be positive", a.tol)));
    }
    if a.gamma <= q(1, 2) || a.gamma >= q(3, 2) {
        return Err(CliError::Usage(format!("gamma = {} must lie in (1/2, 3/2)", a.gamma)));
    }
    let rec = match a.case {
        Case::Noninteracting => verify_noninteracting(a)?,
        Case::Cusp => verify_cusp(a)?,
        Case::Molecule => verify_molecule(a)?,
        Case::Poles => verify_poles(a)?,
        Case::Functionals => verify_functionals(a)?,
    };
    Ok(rec)
}

fn sectors_for(a: &VerifyArgs, max: u32) -> Result<Vec<u32>, CliError> {
    match a.l {
        Some(l) if l > max => Err(CliError::Usage(format!("l = {l} outside the supported sectors 0..={max}"))),
        Some(l) => Ok(vec![l]),
        None => Ok((0..=max).collect()),
    }
}

fn charges(a: &VerifyArgs) -> Vec<Rational> {
    match &a.z {
        Some(z) => vec![z.clone()],
        None => (1..=3).map(qi).collect(),
    }
}

fn verify_noninteracting(a: &VerifyArgs) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("verify", &["l", "Z", "power", "Gu", "u", "residual"]).param("case", "noninteracting");
    if let Some(l) = a.l {
        rec = rec.param("l", l);
    }
    if let Some(z) = &a.z {
        rec = rec.param("Z", z);
    }
    let mut ok = true;
    for l in sectors_for(a, 2)? {
        for z in charges(a) {
            let rep = verify_green_action(l, z.clone()).map_err(internal)?;
            ok &= rep.is_zero();
            for k in 0..rep.residual.len() {
                rec.push(vec![
                    l.to_string(),
                    z.to_string(),
                    format!("r^{k}"),
                    rep.gu[k].render(),
                    rep.u[k].render(),
                    rep.residual[k].render(),
                ]);
            }
        }
    }
    rec.status = status(ok);
    Ok(rec)
}

fn verify_cusp(a: &VerifyArgs) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("verify", &["edge", "l", "derived", "expected", "diff"])
        .param("case", "cusp")
        .exact(&["derived", "expected", "diff"]);
    let mut ok = true;
    for e in edges(a.edge) {
        for l in sectors_for(a, 1)? {
            let got = cusp_coefficient(e, l).map_err(internal)?;
            // -Z/(l+1) at a nucleus, 1/(2(l+1)) between electrons
            let want = match e {
                EdgeKind::En => -c_gen(Gen::Z).scale(&q(1, l as i64 + 1)),
                EdgeKind::Ee => Coefficient::from_rational(q(1, 2 * (l as i64 + 1))),
            };
            let (got, want) = match &a.z {
                Some(z) => {
                    let z = Coefficient::from_rational(z.clone());
                    (got.subs(Gen::Z, &z), want.subs(Gen::Z, &z))
                }
                None => (got, want),
            };
            let d = &got - &want;
            ok &= d.is_zero();
            rec.push(vec![e.name().into(), l.to_string(), got.render(), want.render(), d.render()]);
        }
    }
    rec.status = status(ok);
    Ok(rec)
}

fn verify_molecule(a: &VerifyArgs) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("verify", &["quantity", "derived", "expected", "diff"])
        .param("case", "molecule")
        .param("za", &a.za)
        .param("zb", &a.zb)
        .exact(&["derived"]);
    let mut ok = true;
    let mut push = |rec: &mut OutputRecord, name: &str, got: Coefficient, want: Option<Coefficient>| match want {
        Some(w) => {
            let d = &got - &w;
            ok &= d.is_zero();
            rec.push(vec![name.into(), got.render(), w.render(), d.render()]);
        }
        None => rec.push(vec![name.into(), got.render(), "-".into(), "-".into()]),
    };
    let m = molecule_z2(&a.za, &a.zb).map_err(internal)?;
    push(&mut rec, "Z1", m.z1, Some(-a.za.clone()));
    let one = Coefficient::one();
    let h2 = (a.za == one && a.zb == one).then(|| -Coefficient::one());
    push(&mut rec, "Z2+tE", m.z2_plus_te, h2);
    let generic = expand_potential(&Edge::Molecule(MoleculeParams::symbolic()), 0).map_err(series_err)?;
    push(&mut rec, "generic r^0", generic.coeff(0), Some(-c_gen(Gen::Za)));
    let single = single_center_limit(&a.za, 2).map_err(internal)?;
    let atom = expand_potential(&Edge::En, 2).map_err(series_err)?;
    for k in 0..=2 {
        let want = atom.coeff(k).subs(Gen::Z, &a.za);
        push(&mut rec, &format!("single-center r^{k}"), single.coeff(k), Some(want));
    }
    rec.status = status(ok);
    Ok(rec)
}

fn verify_poles(a: &VerifyArgs) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("verify", &["symbol", "l", "pole", "multiplicity", "side"])
        .param("case", "poles")
        .param("gamma", &a.gamma);
    let l_max = a.l.unwrap_or(5);
    let reps = pole_census(&[0, 1, 2], l_max, &a.gamma).map_err(internal)?;
    let mut ok = true;
    for r in &reps {
        for (p, m) in &r.poles {
            let side = r.sides[p];
            if *m > 1 {
                ok &= r.l == 0 && (*p == 3 || *p == 4) && side == Side::Right;
            }
            let side = if side == Side::Right { "right" } else { "left" };
            rec.push(vec![r.symbol.clone(), r.l.to_string(), p.to_string(), m.to_string(), side.into()]);
        }
    }
    rec.status = status(ok);
    Ok(rec)
}

/// h-forms and evaluation points whose functionals are cutoff-independent.
const FUNCTIONAL_CASES: [(u32, [i64; 3], i64); 3] = [(0, [0, -1, 1], 0), (1, [-2, -1, 1], -1), (2, [-6, -1, 1], -2)];
pub const FUNCTIONAL_TIMES: [f64; 3] = [0.5, 1.0, 2.0];

fn verify_functionals(a: &VerifyArgs) -> Result<OutputRecord, CliError> {
    let precision = 12;
    let mut rec = OutputRecord::new("verify", &["l", "Z", "t", "cutoff", "boundary", "quadrature", "rel_error"])
        .param("case", "functionals")
        .param("tol", a.tol);
    rec.numeric = Some(NumericRendering {
        precision,
        columns: ["boundary", "quadrature", "rel_error"].iter().map(|s| s.to_string()).collect(),
    });
    let cutoffs = [CutoffSpec::default(), CutoffSpec::new(q(1, 4), q(3, 2)).map_err(internal)?];
    let sectors = sectors_for(a, 2)?;
    let mut ok = true;
    for (l, p, w0) in FUNCTIONAL_CASES {
        if !sectors.contains(&l) {
            continue;
        }
        let p = PolyW::from_ints(&p);
        for z in charges(a) {
            let u = noninteracting_u(l, z.clone()).map_err(internal)?;
            let exact = boundary_functional(&p, w0, &u.series).map_err(internal)?;
            for t in FUNCTIONAL_TIMES {
                let e = exact.eval_real(&|_| t) * (-u.z_f64() * t).exp();
                for c in &cutoffs {
                    let n = quadrature_functional(&p, w0, &u, t, c, a.tol * 1e-2).map_err(internal)?.value;
                    let rel = ((n - e) / e).abs();
                    ok &= rel <= a.tol;
                    rec.push(vec![
                        l.to_string(),
                        z.to_string(),
                        t.to_string(),
                        format!("[{}, {}]", c.r_a, c.r_b),
                        fmt_float(e, precision),
                        fmt_float(n, precision),
                        fmt_float(rel, 3),
                    ]);
                }
            }
        }
    }
    rec.status = status(ok);
    Ok(rec)
}
