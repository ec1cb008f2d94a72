use std::fmt::Write as _;
use std::sync::Arc;

use parahoric_core::affweyl::{AffineElt, AffineWeylGroup, Facet};
use parahoric_core::bernstein::{self, BernsteinCoords};
use parahoric_core::hecke::HeckeAlgebra;
use parahoric_core::testfn::{self, TestFunction};
use parahoric_core::{repthy, Coweight, LaurentPoly, Preset, RootDatum, StandardLevi};
use serde::Serialize;

use crate::args::{Command, Common, Format};
use crate::datum_file;
use crate::error::CliError;
use crate::schema::{self, BernsteinJson, EltJson, HeckeTermJson, ReportEntryJson, ReportJson, WeightMultisetJson};

/// Rendered output and whether a hard invariant failed while producing it.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub violation: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, violation: false }
    }
}

pub fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Adm(c) => adm(c),
        Command::Testfn(c) => testfn_report(c),
        Command::CenterCheck(c) => center_check(c),
        Command::Transfer(c) => transfer(c),
        Command::Mults(c) => mults(c),
        Command::CheckAll(c) => check_all(c),
    }
}

pub fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Adm(c)
        | Command::Testfn(c)
        | Command::CenterCheck(c)
        | Command::Transfer(c)
        | Command::Mults(c)
        | Command::CheckAll(c) => c,
    }
}

// ---- argument decoding ----

pub fn load_group(c: &Common) -> Result<Arc<RootDatum>, CliError> {
    if let Some(path) = c.group.strip_prefix("file:") {
        return Ok(Arc::new(datum_file::load_datum(path.as_ref())?));
    }
    let family: Preset = c.group.parse()?;
    let n = c.n.ok_or_else(|| CliError::Usage(format!("--n is required for --group {}", c.group)))?;
    Ok(Arc::new(RootDatum::preset(family, n)?))
}

fn parse_ints(text: &str, what: &str) -> Result<Vec<i64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("cannot parse {what} `{text}`"))))
        .collect()
}

fn parse_mu(rd: &RootDatum, c: &Common) -> Result<Coweight, CliError> {
    let text = c.mu.as_deref().ok_or_else(|| CliError::Usage("--mu is required".into()))?;
    Ok(rd.coweight(&parse_ints(text, "--mu")?)?)
}

fn parse_dominant_mu(rd: &RootDatum, c: &Common) -> Result<Coweight, CliError> {
    let mu = parse_mu(rd, c)?;
    if !rd.is_dominant(&mu) {
        return Err(CliError::Usage(format!("--mu {mu} is not dominant")));
    }
    Ok(mu)
}

fn parse_facet(w: &AffineWeylGroup, c: &Common) -> Result<Facet, CliError> {
    let f = match c.facet.as_deref().map(str::trim) {
        None | Some("iwahori") => Facet::iwahori(),
        Some("special") => w.special_facet(),
        Some(text) => {
            let nodes = parse_ints(text, "--facet")?;
            if nodes.iter().any(|&s| s < 0) {
                return Err(CliError::Usage(format!("negative node in --facet {text}")));
            }
            Facet::new(nodes.into_iter().map(|s| s as usize))
        }
    };
    w.check_facet(&f)?;
    Ok(f)
}

fn parse_levi(rd: &RootDatum, c: &Common) -> Result<StandardLevi, CliError> {
    let Some(text) = c.levi.as_deref() else {
        return Ok(rd.full_levi());
    };
    if text.trim() == "torus" {
        return Ok(StandardLevi::torus());
    }
    let k = rd.semisimple_rank() as i64;
    let idx = parse_ints(text, "--levi")?;
    if let Some(bad) = idx.iter().find(|&&i| i < 1 || i > k) {
        return Err(CliError::Usage(format!("--levi index {bad} is outside 1..={k}")));
    }
    Ok(StandardLevi::new(idx.into_iter().map(|i| (i - 1) as usize)))
}

fn facet_label(f: &Facet) -> String {
    if f.is_iwahori() {
        return "iwahori".into();
    }
    f.nodes().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

fn levi_label(m: &StandardLevi) -> String {
    if m.is_empty() {
        return "torus".into();
    }
    m.indices().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut l = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                l.push_str(cell);
            } else {
                let _ = write!(l, "{cell:<w$}  ");
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn word_text(w: &AffineWeylGroup, x: &AffineElt) -> String {
    w.format_word(x)
}

// ---- adm ----

#[derive(Serialize)]
struct AdmJson {
    group: String,
    mu: Vec<i64>,
    facet: Vec<usize>,
    elements: Vec<EltJson>,
}

fn adm(c: &Common) -> Result<Outcome, CliError> {
    let rd = load_group(c)?;
    let w = AffineWeylGroup::from_arc(rd.clone());
    let mu = parse_dominant_mu(&rd, c)?;
    let f = parse_facet(&w, c)?;
    let elems = if f.is_iwahori() { w.admissible_set(&mu) } else { w.admissible_set_parahoric(&mu, &f)? };
    let out = match c.format {
        Format::Json => to_json(&AdmJson {
            group: rd.name().into(),
            mu: mu.coords().to_vec(),
            facet: f.nodes().collect(),
            elements: elems.iter().map(|x| EltJson::new(&w, x)).collect(),
        }),
        Format::Text => {
            let mut s = format!(
                "Adm({mu}) for {}, facet {}: {} element{}\n",
                rd.name(),
                facet_label(&f),
                elems.len(),
                if elems.len() == 1 { "" } else { "s" }
            );
            let rows: Vec<Vec<String>> =
                elems.iter().map(|x| vec![w.format_elt(x), w.length(x).to_string(), word_text(&w, x)]).collect();
            s.push_str(&table(&["element", "length", "word"], &rows));
            s
        }
    };
    Ok(Outcome::ok(out))
}

// ---- testfn ----

pub fn build_report(alg: &HeckeAlgebra, tf: &TestFunction) -> Result<ReportJson, CliError> {
    let w = alg.group();
    let d = tf.d_mu;
    let entries: Vec<ReportEntryJson> =
        alg.sorted_terms(&tf.element).into_iter().map(|(x, v)| ReportEntryJson::new(w, x, v, d)).collect();
    let integral = tf.element.terms().all(|(_, v)| v.shift_membership(d as i32));
    let support = testfn::support_check(alg, tf, &Facet::iwahori())?;
    let lefschetz = testfn::lefschetz_pairing(alg, &tf.element);
    Ok(ReportJson {
        group: tf.group.name().to_string(),
        mu: tf.mu.coords().to_vec(),
        d_mu: d,
        omega: tf.omega().0,
        entries,
        checks: schema::ChecksJson {
            central: alg.is_central(&tf.element),
            support_contained: support.contained,
            support_equal: support.equal,
            integral,
        },
        lefschetz: schema::poly_to_json(&lefschetz),
        lefschetz_q: lefschetz.to_q_string(),
    })
}

fn testfn_report(c: &Common) -> Result<Outcome, CliError> {
    let rd = load_group(c)?;
    let alg = HeckeAlgebra::equal(AffineWeylGroup::from_arc(rd.clone()));
    let mu = parse_dominant_mu(&rd, c)?;
    let tf = testfn::test_function(&alg, &mu)?;
    let report = build_report(&alg, &tf)?;
    let ch = &report.checks;
    let violation = !(ch.central && ch.support_contained && ch.integral);
    let out = match c.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "test function z_{mu} for {}", rd.name());
            let omega = report.omega.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let _ =
                writeln!(s, "d_mu = {}  omega = [{omega}]  support: {} elements", report.d_mu, report.entries.len());
            let rows: Vec<Vec<String>> = report
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.element.element.clone(),
                        e.element.length.to_string(),
                        e.value.clone(),
                        e.normalized_q.clone(),
                    ]
                })
                .collect();
            s.push_str(&table(&["element", "length", "value", "normalized (q)"], &rows));
            let _ = writeln!(
                s,
                "checks: central={} support_contained={} support_equal={} integral={}",
                ch.central, ch.support_contained, ch.support_equal, ch.integral
            );
            let _ = writeln!(s, "lefschetz: {}", report.lefschetz_q);
            s
        }
    };
    Ok(Outcome { output: out, violation })
}

// ---- center-check ----

#[derive(Serialize)]
struct CenterEntryJson {
    lambda: Vec<i64>,
    central: bool,
    element: Vec<HeckeTermJson>,
}

#[derive(Serialize)]
struct CenterJson {
    group: String,
    results: Vec<CenterEntryJson>,
}

fn center_check(c: &Common) -> Result<Outcome, CliError> {
    let rd = load_group(c)?;
    let alg = HeckeAlgebra::equal(AffineWeylGroup::from_arc(rd.clone()));
    let w = alg.group();
    let lambdas = match c.mu {
        Some(_) => vec![parse_dominant_mu(&rd, c)?],
        None => rd.dominant_coweights(4, 2),
    };
    let mut results = Vec::new();
    for l in &lambdas {
        // bernstein_z refuses non-central sums; rebuild the raw sum to report it
        let mut z = parahoric_core::HeckeElt::zero();
        for x in rd.weyl_orbit(l) {
            z = z.add(&bernstein::theta(&alg, &x)?);
        }
        results.push(CenterEntryJson {
            lambda: l.coords().to_vec(),
            central: alg.is_central(&z),
            element: schema::hecke_to_json(w, &z),
        });
    }
    let violation = results.iter().any(|r| !r.central);
    let out = match c.format {
        Format::Json => to_json(&CenterJson { group: rd.name().into(), results }),
        Format::Text => {
            let mut s = format!("Bernstein elements z_lambda for {}\n", rd.name());
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        Coweight(r.lambda.clone()).to_string(),
                        if r.central { "central".into() } else { "NOT central".into() },
                        r.element.len().to_string(),
                    ]
                })
                .collect();
            s.push_str(&table(&["lambda", "verdict", "terms"], &rows));
            s
        }
    };
    Ok(Outcome { output: out, violation })
}

// ---- transfer ----

#[derive(Serialize)]
struct DivisionJson {
    group: String,
    mu: Vec<i64>,
    omega: i64,
    c: String,
    c_q: String,
}

#[derive(Serialize)]
struct ClassJson {
    class: Vec<i64>,
    c: String,
    c_q: String,
}

#[derive(Serialize)]
struct LeviTransferJson {
    group: String,
    nu: Vec<i64>,
    levi: Vec<usize>,
    classes: Vec<ClassJson>,
}

fn transfer(c: &Common) -> Result<Outcome, CliError> {
    let rd = load_group(c)?;
    let mu = parse_dominant_mu(&rd, c)?;
    if c.division {
        if c.levi.is_some() {
            return Err(CliError::Usage("--division and --levi are exclusive".into()));
        }
        let alg = HeckeAlgebra::equal(AffineWeylGroup::from_arc(rd.clone()));
        let (omega, value) = testfn::anisotropic_transfer(&alg, &mu, None)?;
        let out = match c.format {
            Format::Json => to_json(&DivisionJson {
                group: rd.name().into(),
                mu: mu.coords().to_vec(),
                omega,
                c: schema::poly_to_json(&value),
                c_q: value.to_q_string(),
            }),
            Format::Text => format!("omega={omega}  C = {}\n", value.to_q_string()),
        };
        return Ok(Outcome::ok(out));
    }
    let m = parse_levi(&rd, c)?;
    let classes = testfn::transfer_coefficients(&rd, &mu, &m, None)?;
    let out = match c.format {
        Format::Json => to_json(&LeviTransferJson {
            group: rd.name().into(),
            nu: mu.coords().to_vec(),
            levi: m.indices().map(|i| i + 1).collect(),
            classes: classes
                .iter()
                .map(|(k, v)| ClassJson { class: k.clone(), c: schema::poly_to_json(v), c_q: v.to_q_string() })
                .collect(),
        }),
        Format::Text => {
            let mut s = format!("transfer coefficients of {mu} to the Levi {} of {}\n", levi_label(&m), rd.name());
            let rows: Vec<Vec<String>> =
                classes.iter().map(|(k, v)| vec![format!("{k:?}").replace(' ', ""), v.to_q_string()]).collect();
            s.push_str(&table(&["class", "c"], &rows));
            s
        }
    };
    Ok(Outcome::ok(out))
}

// ---- mults ----

#[derive(Serialize)]
struct BranchingJson {
    highest: Vec<i64>,
    levi: Vec<usize>,
    constituents: Vec<schema::MultEntryJson>,
}

fn mults(c: &Common) -> Result<Outcome, CliError> {
    let rd = load_group(c)?;
    let mu = parse_dominant_mu(&rd, c)?;
    if c.levi.is_some() {
        let m = parse_levi(&rd, c)?;
        let b = repthy::branch_to_levi(&rd, &mu, &m)?;
        let out = match c.format {
            Format::Json => to_json(&BranchingJson {
                highest: mu.coords().to_vec(),
                levi: m.indices().map(|i| i + 1).collect(),
                constituents: b
                    .iter()
                    .map(|(l, k)| schema::MultEntryJson { lambda: l.coords().to_vec(), m: *k })
                    .collect(),
            }),
            Format::Text => {
                let mut s = format!("V_{mu} of {} restricted to the Levi {}\n", rd.name(), levi_label(&m));
                let rows: Vec<Vec<String>> = b.iter().map(|(l, k)| vec![l.to_string(), k.to_string()]).collect();
                s.push_str(&table(&["highest weight", "multiplicity"], &rows));
                s
            }
        };
        return Ok(Outcome::ok(out));
    }
    let ws = repthy::freudenthal(&rd, &mu)?;
    let json = WeightMultisetJson::new(&rd, &ws);
    let out = match c.format {
        Format::Json => to_json(&json),
        Format::Text => {
            let mut s = format!("dominant weights of V_{mu} for {} (dimension {})\n", rd.name(), json.dimension);
            let rows: Vec<Vec<String>> =
                json.mults.iter().map(|e| vec![Coweight(e.lambda.clone()).to_string(), e.m.to_string()]).collect();
            s.push_str(&table(&["weight", "multiplicity"], &rows));
            s
        }
    };
    Ok(Outcome::ok(out))
}

// ---- check-all ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    status: Status,
    detail: String,
}

#[derive(Serialize)]
struct CheckAllJson {
    group: String,
    mu: Vec<i64>,
    coords: BernsteinJson,
    checks: Vec<CheckJson>,
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// `sum_W sign_W m_W coords(z_{M,W})` from branching and Freudenthal on `M`.
fn expected_constant_term(
    rd: &Arc<RootDatum>,
    mu: &Coweight,
    m: &StandardLevi,
    signed: bool,
) -> Result<BernsteinCoords, CliError> {
    let md = rd.levi_datum(m)?;
    let d_v = rd.two_rho_pairing(mu);
    let mut out = BernsteinCoords::new(rd.clone(), m.clone());
    for (wt, k) in repthy::branch_to_levi(rd, mu, m)? {
        let sign: i64 = if signed && (d_v + md.two_rho_pairing(&wt)).rem_euclid(2) == 1 { -1 } else { 1 };
        for (l, c) in repthy::freudenthal(&md, &wt)?.mults {
            out.add(&l, &LaurentPoly::from_int(sign * k as i64 * c as i64));
        }
    }
    Ok(out)
}

fn check_all(c: &Common) -> Result<Outcome, CliError> {
    let rd = load_group(c)?;
    let alg = HeckeAlgebra::equal(AffineWeylGroup::from_arc(rd.clone()));
    let w = alg.group();
    let mu = parse_dominant_mu(&rd, c)?;
    let mut checks: Vec<CheckJson> = Vec::new();
    let mut push =
        |name: &str, status: Status, detail: String| checks.push(CheckJson { name: name.into(), status, detail });

    let tf = match testfn::test_function(&alg, &mu) {
        Ok(tf) => tf,
        Err(e) => {
            push("central", Status::Fail, e.to_string());
            return Ok(render_checks(c, &rd, &mu, None, checks));
        }
    };
    push("central", Status::Pass, format!("{} terms", tf.element.len()));

    let bad: Vec<String> =
        tf.element.terms().filter(|(_, v)| !v.shift_membership(tf.d_mu as i32)).map(|(x, _)| w.format_elt(x)).collect();
    push("integral", verdict(bad.is_empty()), if bad.is_empty() { "all values in Z[q]".into() } else { bad.join(" ") });

    let class = w.omega_component(&AffineElt::translation(mu.clone()));
    push("omega_component", verdict(tf.element.support().all(|x| w.omega_component(x) == class)), format!("[{class}]"));

    let mut facets = vec![Facet::iwahori(), w.special_facet()];
    if c.facet.is_some() {
        facets.push(parse_facet(w, c)?);
    }
    facets.dedup();
    for f in &facets {
        let rep = testfn::support_check(&alg, &tf, f)?;
        let label = facet_label(f);
        push(
            &format!("support_contained[{label}]"),
            verdict(rep.contained),
            format!("{} of {} admissible cosets", rep.support.len(), rep.admissible.len()),
        );
        let status = if rd.is_minuscule(&mu) { verdict(rep.equal) } else { Status::Info };
        push(&format!("support_equal[{label}]"), status, rep.equal.to_string());
    }

    let top = LaurentPoly::v_pow(-(tf.d_mu as i32));
    let extremes_ok = rd.weyl_orbit(&mu).into_iter().all(|l| tf.element.coeff(&AffineElt::translation(l)) == top);
    push("extreme_values", verdict(extremes_ok), format!("v^{}", -tf.d_mu));

    if rd.is_minuscule(&mu) {
        let z = bernstein::bernstein_z(&alg, &mu)?;
        push("minuscule_single_term", verdict(tf.coords.len() == 1 && z == tf.element), String::new());
    }

    let expanded = bernstein::bernstein_expand(&alg, &tf.element)?;
    push("expand_round_trip", verdict(expanded == tf.coords), format!("{} Bernstein terms", tf.coords.len()));

    let lefschetz = testfn::lefschetz_pairing(&alg, &tf.element);
    let dim = repthy::weyl_dimension(&rd, &mu);
    push(
        "lefschetz_dimension",
        verdict(lefschetz.eval_at_one() == dim.into()),
        format!("{} at q = 1, dim V = {dim}", lefschetz.to_q_string()),
    );

    let k = rd.semisimple_rank();
    let mut levis = vec![StandardLevi::torus()];
    if k >= 2 {
        levis.extend((0..k).map(|j| StandardLevi::new((0..k).filter(|&i| i != j))));
    }
    for m in &levis {
        let label = levi_label(m);
        let plain = bernstein::constant_term(&tf.coords, m)?;
        push(
            &format!("constant_term[{label}]"),
            verdict(plain == expected_constant_term(&rd, &mu, m, false)?),
            String::new(),
        );
        let signed = bernstein::signed_constant_term(&tf.coords, m)?;
        push(
            &format!("sign_bookkeeping[{label}]"),
            verdict(signed == expected_constant_term(&rd, &mu, m, true)?),
            String::new(),
        );
    }

    if let Ok((omega, value)) = testfn::anisotropic_transfer(&alg, &mu, None) {
        let row = rd.omega_map().rows()[0].clone();
        let mut expected = LaurentPoly::zero();
        for (nu, m) in &repthy::freudenthal(&rd, &mu)?.mults {
            for v in testfn::transfer_coefficients(&rd, nu, &rd.full_levi(), Some(std::slice::from_ref(&row)))?.values()
            {
                expected += v.scale(&(*m).into());
            }
        }
        push("division_transfer", verdict(value == expected), format!("omega={omega}  C = {}", value.to_q_string()));
    }

    Ok(render_checks(c, &rd, &mu, Some(&tf), checks))
}

fn render_checks(
    c: &Common,
    rd: &RootDatum,
    mu: &Coweight,
    tf: Option<&TestFunction>,
    checks: Vec<CheckJson>,
) -> Outcome {
    let violation = checks.iter().any(|x| x.status == Status::Fail);
    let output = match c.format {
        Format::Json => to_json(&CheckAllJson {
            group: rd.name().into(),
            mu: mu.coords().to_vec(),
            coords: tf.map(|t| BernsteinJson::new(&t.coords)).unwrap_or_else(|| BernsteinJson {
                group: rd.name().into(),
                levi: Vec::new(),
                entries: Vec::new(),
            }),
            checks,
        }),
        Format::Text => {
            let mut s = format!("invariants of z_{mu} for {}\n", rd.name());
            for ch in &checks {
                let tag = match ch.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                let _ = writeln!(s, "{tag}  {}{}{}", ch.name, if ch.detail.is_empty() { "" } else { "  " }, ch.detail);
            }
            let failed = checks.iter().filter(|x| x.status == Status::Fail).count();
            let passed = checks.iter().filter(|x| x.status == Status::Pass).count();
            let _ = writeln!(s, "{passed} passed, {failed} failed");
            s
        }
    };
    Outcome { output, violation }
}
