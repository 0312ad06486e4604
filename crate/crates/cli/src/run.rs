use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use koszulab::completion::{adic_tower, gm_adjunction_check, local_homology_tower, local_homology_tower_in, TowerVerdict};
use koszulab::duality::graded_local_duality_check;
use koszulab::groebner::Power;
use koszulab::koszul::koszul_complex;
use koszulab::localcoh::{
    essential_nullity_check, local_cohomology_graded, proregularity_check, EssentialNullityCertificate, Method,
    ProregularityCertificate, Verdict,
};
use koszulab::modcat::{ext_module, free_resolution};
use koszulab::text::{parse_ideal, parse_module, parse_ring, parse_sequence, parse_window};
use koszulab::{Error, FpModule, FreeComplex, Ideal, Matrix, ModuleMap, Polynomial, Ring};

use crate::args::{Command, Common};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Undecided = 3,
}

impl Outcome {
    fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Usage => "usage",
            Outcome::Undecided => "undecided",
        }
    }
}

pub enum Failure {
    Usage(String),
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub outcome: Outcome,
}

type Run<T> = Result<T, Failure>;

/// Points at the offending character when the error carries a position.
fn input_error(flag: &str, text: &str, e: Error) -> Failure {
    match &e {
        Error::Syntax { pos, .. } | Error::UnknownVariable { pos, .. } => {
            let p = (*pos).min(text.len());
            let col = text.get(..p).map_or(p, |s| s.chars().count());
            Failure::Usage(format!("error: --{flag}: {e}\n  {text}\n  {}^", " ".repeat(col)))
        }
        _ => Failure::Usage(format!("error: --{flag}: {e}")),
    }
}

fn engine(e: Error) -> Failure {
    Failure::Usage(format!("error: {e}"))
}

fn ring_of(c: &Common) -> Run<Arc<Ring>> {
    parse_ring(&c.ring).map_err(|e| input_error("ring", &c.ring, e))
}

fn module(ring: &Arc<Ring>, flag: &str, text: &str) -> Run<FpModule> {
    parse_module(ring, text).map_err(|e| input_error(flag, text, e))
}

fn sequence(ring: &Arc<Ring>, text: &str) -> Run<Vec<Polynomial>> {
    parse_sequence(ring, text).map_err(|e| input_error("seq", text, e))
}

fn ideal(ring: &Arc<Ring>, text: &str) -> Run<Ideal> {
    parse_ideal(ring, text).map_err(|e| input_error("ideal", text, e))
}

fn window(text: &str) -> Run<(i64, i64)> {
    parse_window(text).map_err(|e| input_error("window", text, e))
}

fn opt_window(text: &Option<String>) -> Run<Option<(i64, i64)>> {
    text.as_deref().map(window).transpose()
}

fn envelope(cmd: &str, outcome: Outcome, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(1));
    map.insert("command".into(), json!(cmd));
    map.insert("outcome".into(), json!(outcome.label()));
    match body {
        Value::Object(b) => map.extend(b),
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

fn report(cmd: &str, outcome: Outcome, body: Value, text: String) -> Report {
    Report {
        json: envelope(cmd, outcome, body),
        text,
        outcome,
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn free_text(twists: &[i64]) -> String {
    if twists.is_empty() {
        return "0".into();
    }
    twists.iter().map(|a| format!("R({})", -a)).collect::<Vec<_>>().join(" + ")
}

/// `[degree, stage, dim]` rows; stage 0 for a single module.
fn hilbert_rows(m: &FpModule, w: (i64, i64), stage: i64) -> Run<Vec<[i64; 3]>> {
    (w.0..=w.1)
        .map(|d| Ok([d, stage, m.hilbert_value(d).map_err(engine)? as i64]))
        .collect()
}

fn table_text(rows: &[[i64; 3]]) -> String {
    let mut s = String::new();
    for [d, _, dim] in rows {
        let _ = writeln!(s, "  {d:>4}  {dim}");
    }
    s
}

fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Certified => Outcome::Pass,
        Verdict::Undecided => Outcome::Undecided,
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Certified => "certified",
        Verdict::Undecided => "undecided",
    }
}

pub fn dispatch(cmd: &Command) -> Run<Report> {
    let name = cmd.name();
    match cmd {
        Command::Gb { common, ideal: text } => {
            let r = ring_of(common)?;
            let i = ideal(&r, text)?;
            let gb = i.groebner_basis().map_err(engine)?.to_vec();
            let mut out = String::new();
            for g in &gb {
                let _ = writeln!(out, "{g}");
            }
            let body = json!({ "ring": r.to_string(), "generators": strings(i.generators()), "groebner_basis": strings(&gb) });
            Ok(report(name, Outcome::Pass, body, out))
        }
        Command::Nf { common, ideal: text, poly } => {
            let r = ring_of(common)?;
            let i = ideal(&r, text)?;
            let f = r.poly(poly).map_err(|e| input_error("poly", poly, e))?;
            let nf = i.normal_form(&f).map_err(engine)?;
            let body = json!({ "ring": r.to_string(), "poly": f.to_string(), "normal_form": nf.to_string(), "member": nf.is_zero() });
            Ok(report(name, Outcome::Pass, body, format!("{nf}\n")))
        }
        Command::Quotient { common, ideal: text, poly, power } => {
            let r = ring_of(common)?;
            let i = ideal(&r, text)?;
            let f = r.poly(poly).map_err(|e| input_error("poly", poly, e))?;
            let k = match power.trim() {
                "inf" | "infinity" => Power::Infinity,
                p => match p.parse::<u32>() {
                    Ok(k) if k > 0 => Power::Finite(k),
                    _ => return Err(Failure::Usage(format!("error: --power: expected a positive integer or `inf`, got `{p}`"))),
                },
            };
            let q = i.quotient(&f, k).map_err(engine)?;
            let gb = q.ideal.groebner_basis().map_err(engine)?.to_vec();
            let mut out = format!("exponent {}\n", q.exponent);
            for g in &gb {
                let _ = writeln!(out, "{g}");
            }
            let body = json!({
                "ring": r.to_string(),
                "saturation": matches!(k, Power::Infinity),
                "exponent": q.exponent,
                "groebner_basis": strings(&gb),
            });
            Ok(report(name, Outcome::Pass, body, out))
        }
        Command::Resolve { common, module: text, length } => {
            let r = ring_of(common)?;
            let m = module(&r, "module", text)?;
            let len = length.map_or(r.nvars() + 1, |l| l as usize);
            let res = free_resolution(&m, len).map_err(engine)?;
            let twists: Vec<Vec<i64>> = (0..=res.len()).map(|k| res.twists(k)).collect();
            let maps: Vec<String> = res.maps().iter().map(Matrix::to_string).collect();
            let mut out = String::new();
            for (k, t) in twists.iter().enumerate() {
                let _ = writeln!(out, "F{k}: {}", free_text(t));
                if let Some(d) = maps.get(k) {
                    let _ = writeln!(out, "  d{} = {d}", k + 1);
                }
            }
            let body = json!({ "ring": r.to_string(), "module": res.module().to_string(), "ranks": res.ranks(), "twists": twists, "maps": maps });
            Ok(report(name, Outcome::Pass, body, out))
        }
        Command::Ext { common, module: text, into, index, window: w } => {
            let r = ring_of(common)?;
            let m = module(&r, "module", text)?;
            let n = module(&r, "into", into)?;
            let w = opt_window(w)?;
            let e = ext_module(&m, &n, *index).map_err(engine)?;
            let zero = e.is_zero().map_err(engine)?;
            let mut out = format!("Ext^{index} = {}\n", if zero { "0".to_string() } else { e.to_string() });
            let hilbert = match w {
                Some(w) => {
                    let rows = hilbert_rows(&e, w, 0)?;
                    out.push_str(&table_text(&rows));
                    Some(rows)
                }
                None => None,
            };
            let body = json!({ "ring": r.to_string(), "index": index, "module": e.to_string(), "zero": zero, "hilbert": hilbert });
            Ok(report(name, Outcome::Pass, body, out))
        }
        Command::Hilbert { common, module: text, window: w } => {
            let r = ring_of(common)?;
            let m = module(&r, "module", text)?;
            let w = window(w)?;
            m.require_graded().map_err(engine)?;
            let rows = hilbert_rows(&m, w, 0)?;
            let body = json!({ "ring": r.to_string(), "module": m.to_string(), "window": w, "hilbert": rows });
            Ok(report(name, Outcome::Pass, body, table_text(&rows)))
        }
        Command::Koszul { common, seq, module: text, power, window: w } => {
            let r = ring_of(common)?;
            let t = sequence(&r, seq)?;
            let m = module(&r, "module", text)?;
            let w = opt_window(w)?;
            let k = koszul_complex(&t, *power, Some(&m)).map_err(engine)?;
            let d2 = k.d_squared_is_zero().map_err(engine)?;
            let mut out = format!("{k}d^2 = 0: {d2}\n");
            let mut cohomology = Vec::new();
            for n in k.degrees() {
                let h = k.homology(n).map_err(engine)?;
                let zero = h.is_zero().map_err(engine)?;
                let _ = writeln!(out, "H^{n} = {}", if zero { "0".to_string() } else { h.to_string() });
                let hilbert = match w {
                    Some(w) => {
                        let rows = hilbert_rows(&h, w, *power as i64)?;
                        out.push_str(&table_text(&rows));
                        Some(rows)
                    }
                    None => None,
                };
                cohomology.push(json!({ "index": n, "rank": k.rank(n), "zero": zero, "module": h.to_string(), "hilbert": hilbert }));
            }
            let outcome = if d2 { Outcome::Pass } else { Outcome::Fail };
            let body = json!({ "ring": r.to_string(), "sequence": strings(&t), "r": power, "ranks": k.ranks(), "d_squared_zero": d2, "cohomology": cohomology });
            Ok(report(name, outcome, body, out))
        }
        Command::Proreg { common, seq, rmax, smax } => {
            let r = ring_of(common)?;
            let t = sequence(&r, seq)?;
            let cert = proregularity_check(&t, *rmax, smax.unwrap_or(rmax + 4)).map_err(engine)?;
            let mut out = String::new();
            for w in &cert.witnesses {
                let s = w.s.map_or("none".to_string(), |s| s.to_string());
                let _ = writeln!(out, "i={} r={} s={s}", w.i, w.r);
            }
            let _ = writeln!(out, "verdict: {}", verdict_label(cert.verdict));
            Ok(report(name, verdict_outcome(cert.verdict), serde_json::to_value(&cert).expect("reports serialize"), out))
        }
        Command::Essnull { common, seq, module: text, index, rmax, smax } => {
            let r = ring_of(common)?;
            let t = sequence(&r, seq)?;
            let p = module(&r, "module", text)?;
            let cert = essential_nullity_check(&t, &p, *index, *rmax, smax.unwrap_or(rmax + 4)).map_err(engine)?;
            let mut out = String::new();
            for w in &cert.witnesses {
                let s = w.s.map_or("none".to_string(), |s| s.to_string());
                let _ = writeln!(out, "r={} s={s}", w.r);
            }
            let _ = writeln!(out, "verdict: {}", verdict_label(cert.verdict));
            Ok(report(name, verdict_outcome(cert.verdict), serde_json::to_value(&cert).expect("reports serialize"), out))
        }
        Command::Localcoh { common, module: text, seq, index, window: w, stage_max, method } => {
            let r = ring_of(common)?;
            let m = module(&r, "module", text)?;
            let t = match seq {
                Some(s) => sequence(&r, s)?,
                None => r.vars_as_polys(),
            };
            let w = window(w)?;
            let method: Method = method
                .parse()
                .map_err(|_| Failure::Usage(format!("error: --method: unknown method `{method}`")))?;
            let tab = local_cohomology_graded(&m, &t, *index, w, *stage_max, method).map_err(engine)?;
            let mut out = String::new();
            for row in &tab.rows {
                let v = row.value.map_or("unstable".to_string(), |v| v.to_string());
                let _ = writeln!(out, "  {:>4}  {v}  {:?}", row.degree, row.dims);
            }
            let outcome = if tab.all_stable() { Outcome::Pass } else { Outcome::Undecided };
            Ok(report(name, outcome, serde_json::to_value(&tab).expect("reports serialize"), out))
        }
        Command::Complete { common, module: text, ideal: itext, nmax, window: w } => {
            let r = ring_of(common)?;
            let m = module(&r, "module", text)?;
            let i = ideal(&r, itext)?;
            let w = opt_window(w)?;
            let tower = adic_tower(&m, &i, *nmax).map_err(engine)?;
            let sum = tower.summary(w).map_err(engine)?;
            let mut out = String::new();
            for (n, d) in sum.dims.iter().enumerate() {
                let d = d.map_or("infinite".to_string(), |d| d.to_string());
                let _ = writeln!(out, "stage {}: dim {d}", n + 1);
            }
            let _ = writeln!(out, "transitions surjective: {}", tower.all_surjective());
            let outcome = if tower.all_surjective() { Outcome::Pass } else { Outcome::Fail };
            Ok(report(name, outcome, serde_json::to_value(&sum).expect("reports serialize"), out))
        }
        Command::Lochom { common, seq, module: text, rmax, window: w } => {
            let r = ring_of(common)?;
            let t = sequence(&r, seq)?;
            let p = module(&r, "module", text)?;
            let rep = match opt_window(w)? {
                Some(w) => local_homology_tower_in(&t, &p, *rmax, w),
                None => local_homology_tower(&t, &p, *rmax),
            }
            .map_err(engine)?;
            let outcome = match rep.verdict {
                TowerVerdict::Consistent => Outcome::Pass,
                TowerVerdict::Undecided => Outcome::Undecided,
                TowerVerdict::Inconsistent => Outcome::Fail,
            };
            let out = format!(
                "H0 comparison: {}\npro-zero: {}\nMittag-Leffler (degreewise): {}\nverdict: {}\n",
                rep.h0_holds(),
                rep.pro_zero(),
                rep.ml_holds(),
                serde_json::to_value(&rep.verdict).expect("reports serialize").as_str().unwrap_or_default()
            );
            Ok(report(name, outcome, serde_json::to_value(&rep).expect("reports serialize"), out))
        }
        Command::Gmadj { common, seq, module: text, into, rmax } => {
            let r = ring_of(common)?;
            let t = sequence(&r, seq)?;
            let m = module(&r, "module", text)?;
            let f = module(&r, "into", into)?;
            let e = presentation_complex(&m).map_err(engine)?;
            let f = FreeComplex::from_module(&f, 0);
            let rep = gm_adjunction_check(&e, &f, &t, (1, *rmax)).map_err(engine)?;
            let mut out = String::new();
            for s in &rep.stages {
                let _ = writeln!(out, "r={} isomorphism: {}", s.r, s.iso);
            }
            for s in &rep.squares {
                let _ = writeln!(out, "square {}->{} commutes: {}", s.r, s.r + 1, s.commutes);
            }
            let outcome = if rep.passed() { Outcome::Pass } else { Outcome::Fail };
            Ok(report(name, outcome, serde_json::to_value(&rep).expect("reports serialize"), out))
        }
        Command::Duality { common, module: text, window: w, stage_max } => {
            let r = ring_of(common)?;
            let m = module(&r, "module", text)?;
            let w = window(w)?;
            match graded_local_duality_check(&m, w, *stage_max) {
                Ok(tab) => {
                    let mut out = String::new();
                    for e in &tab.entries {
                        let _ = writeln!(out, "  i={} {:>4}  {} {}  {}", e.i, e.degree, e.lhs, e.rhs, if e.pass { "ok" } else { "MISMATCH" });
                    }
                    let _ = writeln!(out, "duality: {}", if tab.passed() { "pass" } else { "fail" });
                    let outcome = if tab.passed() { Outcome::Pass } else { Outcome::Fail };
                    Ok(report(name, outcome, serde_json::to_value(&tab).expect("reports serialize"), out))
                }
                Err(Error::UnstableWindow { stage_max, degrees }) => {
                    let body = json!({ "ring": r.to_string(), "module": m.to_string(), "window": w, "stage_max": stage_max, "unstable_degrees": degrees });
                    let out = format!("undecided: degrees {degrees:?} not stable by stage {stage_max}\n");
                    Ok(report(name, Outcome::Undecided, body, out))
                }
                Err(e) => Err(engine(e)),
            }
        }
        Command::Verify { cert, .. } => verify(name, cert),
    }
}

/// `F₁ → F₀` in degrees `-1, 0`, or `M` itself when it is free.
fn presentation_complex(m: &FpModule) -> koszulab::Result<FreeComplex> {
    let ring = m.ring();
    let rel = m.relations();
    let f0 = FpModule::free(ring, m.twists().to_vec());
    if rel.ncols() == 0 {
        return Ok(FreeComplex::from_module(&f0, 0));
    }
    let f1 = FpModule::free(ring, rel.col_twists().to_vec());
    FreeComplex::from_map(&ModuleMap::new(f1, f0, rel.clone())?, -1)
}

fn read_cert(path: &Path) -> Run<String> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Usage(format!("error: --cert: {}: {e}", path.display())))?;
    Ok(s)
}

fn verify(name: &str, path: &Path) -> Run<Report> {
    let text = read_cert(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("error: --cert: {e}")))?;
    let bad = |e: serde_json::Error| Failure::Usage(format!("error: --cert: not a certificate: {e}"));
    let is_nullity = value.get("index").is_some() && value.get("module").is_some();
    let (kind, ok, verdict) = if is_nullity {
        let cert: EssentialNullityCertificate = serde_json::from_value(value).map_err(bad)?;
        ("essnull", cert.verify().map_err(engine)?, cert.verdict)
    } else {
        let cert: ProregularityCertificate = serde_json::from_value(value).map_err(bad)?;
        ("proreg", cert.verify().map_err(engine)?, cert.verdict)
    };
    let outcome = if ok { verdict_outcome(verdict) } else { Outcome::Fail };
    let body = json!({ "kind": kind, "valid": ok, "verdict": verdict_label(verdict) });
    let out = format!("{kind} certificate {}; verdict {}\n", if ok { "valid" } else { "INVALID" }, verdict_label(verdict));
    Ok(report(name, outcome, body, out))
}
