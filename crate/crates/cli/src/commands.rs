use std::time::Instant;

use serde_json::{json, Value};

use braided_fock::coeff::poly_to_json;
use braided_fock::fock::{
    heis_cleared, heis_prediction, lemma33_closed_form, second_term_closed_form, ApplyOptions,
    FockEngine, PrunedTerm,
};
use braided_fock::modealg::{
    check_modeind, check_moderel, ExchangeRules, ModeElement, NormalOrderer,
};
use braided_fock::rmatrix::{
    admissible_samples, check_braid, check_hecke, check_pybe, check_unitarity, standard_sln_r,
    CheckReport, HeckeData, Op,
};
use braided_fock::wedge::Wedge;
use braided_fock::{Error, LaurentPoly};

use crate::{CheckKind, Config, Failure, Outcome, Rules};

fn rules_name(r: Rules) -> &'static str {
    match r {
        Rules::Theorem21 => "theorem21",
        Rules::Gerv => "gerv",
    }
}

fn hecke_data(cfg: &Config) -> Result<HeckeData, Failure> {
    let Some(path) = &cfg.matrix else {
        return Ok(standard_sln_r(cfg.n.unwrap_or(2) as usize));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not JSON: {e}", path.display())))?;
    let op = Op::from_json(&value).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(n) = cfg.n {
        if n as usize != op.n() {
            return Err(Failure::Usage(format!(
                "--n {n} disagrees with the matrix dimension {}",
                op.n()
            )));
        }
    }
    HeckeData::new(op).map_err(|e| Failure::Usage(e.to_string()))
}

fn exchange_rules(cfg: &Config, data: &HeckeData) -> Result<ExchangeRules, Failure> {
    Ok(ExchangeRules::new(data, cfg.rules.into())?)
}

fn report_text(rep: &CheckReport) -> String {
    let status = if rep.pass { "PASS" } else { "FAIL" };
    let mut out = format!("{} n={}: {status}", rep.check, rep.n);
    if let Some(w) = &rep.witness {
        out.push_str(&format!(
            "\n  witness: row {:?} col {:?} value {}",
            w.row, w.col, w.value
        ));
    }
    if !rep.degrees.is_empty() {
        let parts: Vec<String> = rep.degrees.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("\n  degrees: {}", parts.join(" ")));
    }
    out
}

fn report_outcome(rep: CheckReport) -> Outcome {
    Outcome {
        pass: rep.pass,
        text: report_text(&rep),
        json: serde_json::to_value(&rep).expect("serialisable"),
    }
}

type ModeCheck = fn(&mut NormalOrderer, i64, i64) -> Result<CheckReport, Error>;

fn mode_sweep(
    orderer: &mut NormalOrderer,
    name: &str,
    n: usize,
    cases: &[(i64, i64)],
    check: ModeCheck,
) -> Result<CheckReport, Failure> {
    for &(i, j) in cases {
        let mut rep = check(orderer, i, j)?;
        if !rep.pass {
            if let Some(w) = rep.witness.as_mut() {
                w.value = format!("i={i} j={j}: {}", w.value);
            }
            return Ok(rep);
        }
    }
    let mut rep = CheckReport {
        check: name.to_string(),
        n,
        pass: true,
        witness: None,
        degrees: Default::default(),
    };
    rep.degrees.insert("cases".into(), cases.len() as i64);
    Ok(rep)
}

pub fn check(
    cfg: &Config,
    kind: CheckKind,
    i: Option<i64>,
    j: Option<i64>,
) -> Result<Outcome, Failure> {
    let data = hecke_data(cfg)?;
    let n = data.n;
    let pair = match (i, j) {
        (Some(i), Some(j)) => Some((i, j)),
        (None, None) => None,
        _ => return Err(Failure::Usage("--i and --j must be given together".into())),
    };
    if pair.is_some() && !matches!(kind, CheckKind::Moderel | CheckKind::Modeind) {
        return Err(Failure::Usage("--i/--j only apply to moderel and modeind".into()));
    }
    let rep = match kind {
        CheckKind::Hecke => check_hecke(&data)?,
        CheckKind::Ybe => check_braid(&data)?,
        CheckKind::Pybe => check_pybe(&data)?,
        CheckKind::Unitarity => check_unitarity(&data, &admissible_samples(cfg.seed, 5))?,
        CheckKind::Moderel => {
            let cases = match pair {
                Some((i, j)) if i > j => vec![(i, j)],
                Some(_) => return Err(Failure::Usage("moderel needs i > j".into())),
                None => (-3..=4)
                    .flat_map(|i| (-3..i).map(move |j| (i, j)))
                    .collect(),
            };
            let rules = exchange_rules(cfg, &data)?;
            let mut ord = NormalOrderer::with_budget(&rules, cfg.budget);
            mode_sweep(&mut ord, "moderel", n, &cases, check_moderel)?
        }
        CheckKind::Modeind => {
            let cases = match pair {
                Some((i, j)) if i - j >= 2 => vec![(i, j)],
                Some(_) => return Err(Failure::Usage("modeind needs i - j >= 2".into())),
                None => (-3..=1)
                    .flat_map(|j| (2..=4).map(move |g| (j + g, j)))
                    .collect(),
            };
            let rules = exchange_rules(cfg, &data)?;
            let mut ord = NormalOrderer::with_budget(&rules, cfg.budget);
            mode_sweep(&mut ord, "modeind", n, &cases, check_modeind)?
        }
    };
    Ok(report_outcome(rep))
}

pub fn normal_form(cfg: &Config, expr: &str) -> Result<Outcome, Failure> {
    let data = hecke_data(cfg)?;
    let rules = exchange_rules(cfg, &data)?;
    let x = ModeElement::parse(expr, data.n)?;
    let mut ord = NormalOrderer::with_budget(&rules, cfg.budget);
    let nf = ord.normal_form(&x)?;
    let terms: Vec<Value> = nf
        .terms()
        .map(|(w, c)| {
            let word: Vec<[i64; 2]> = w.iter().map(|g| [g.mode, g.index as i64 + 1]).collect();
            json!({ "coeff": poly_to_json(c), "word": word })
        })
        .collect();
    Ok(Outcome {
        pass: true,
        text: nf.to_string(),
        json: json!({
            "n": data.n,
            "rules": rules_name(cfg.rules),
            "input": expr,
            "normal_form": terms,
            "steps": ord.steps(),
        }),
    })
}

fn pruned_json(pruned: &[PrunedTerm]) -> Value {
    Value::Array(
        pruned
            .iter()
            .map(|p| {
                json!({
                    "shift": p.shift,
                    "column": p.column,
                    "index": p.index + 1,
                    "inserted_mode": p.inserted_mode,
                    "coeff": poly_to_json(&p.coeff),
                    "word": p.word,
                })
            })
            .collect(),
    )
}

fn pruned_text(pruned: &[PrunedTerm]) -> String {
    pruned
        .iter()
        .map(|p| {
            format!(
                "\n  pruned: b{} on column {} index {} -> mode {} ({}) {}",
                p.shift,
                p.column,
                p.index + 1,
                p.inserted_mode,
                p.coeff,
                p.word
            )
        })
        .collect()
}

pub fn heisenberg(cfg: &Config, i: i64, j: i64) -> Result<Outcome, Failure> {
    let data = hecke_data(cfg)?;
    let n = data.n;
    let rules = exchange_rules(cfg, &data)?;
    let mut engine = FockEngine::with_budget(&rules, cfg.budget);
    let opts = ApplyOptions {
        log_pruned: cfg.log_pruned,
        ..ApplyOptions::default()
    };
    let c = engine.commutator_on_vacuum(i, j, &opts)?;
    let prediction = heis_prediction(i, j, n);
    let cleared = c.scalar.as_ref().map(|v| heis_cleared(i, j, n, v));
    let pass = cleared.as_ref().is_some_and(|(l, r)| l == r);
    let extrapolation = i == 3 || j == 3;

    let status = if pass { "PASS" } else { "FAIL" };
    let mut text = format!("[b{i}, b-{j}] on the vacuum, n={n}");
    if extrapolation {
        text.push_str(" (extrapolation)");
    }
    match (&c.scalar, &cleared) {
        (Some(v), Some((l, r))) => {
            text.push_str(&format!("\n  engine:     {v}"));
            text.push_str(&format!("\n  prediction: {prediction}"));
            text.push_str(&format!("\n  cleared:    {l}  vs  {r}"));
        }
        _ => text.push_str(&format!("\n  engine state is not a multiple of the vacuum: {}", c.state)),
    }
    text.push_str(&format!("\n  {status}"));
    if cfg.log_pruned {
        text.push_str(&pruned_text(&c.pruned));
    }

    let mut report = json!({
        "check": "heisenberg",
        "n": n,
        "i": i,
        "j": j,
        "pass": pass,
        "rules": rules_name(cfg.rules),
        "value": c.scalar.as_ref().map(poly_to_json),
        "state": if c.scalar.is_some() { Value::Null } else { c.state.to_json() },
        "prediction": poly_to_json(&prediction),
        "cleared": cleared.as_ref().map(|(l, r)| json!({ "lhs": poly_to_json(l), "rhs": poly_to_json(r) })),
        "label": if extrapolation { json!("extrapolation") } else { Value::Null },
    });
    if cfg.log_pruned {
        report["pruned"] = pruned_json(&c.pruned);
    }
    Ok(Outcome {
        pass,
        text,
        json: report,
    })
}

pub fn lemma33(cfg: &Config) -> Result<Outcome, Failure> {
    let data = hecke_data(cfg)?;
    let n = data.n;
    if n < 2 {
        return Err(Failure::Usage("lemma33 needs n >= 2".into()));
    }
    let rules = exchange_rules(cfg, &data)?;
    let mut engine = FockEngine::with_budget(&rules, cfg.budget);
    let first = engine.lemma33_state()?;
    let second = engine.second_term_state()?;
    let parts = [
        ("lemma33", first, lemma33_closed_form(n)),
        ("second_term", second, second_term_closed_form(n)),
    ];
    let mut pass = true;
    let mut text = format!("n={n}");
    let mut report = json!({ "check": "lemma33", "n": n, "rules": rules_name(cfg.rules) });
    for (name, state, closed) in parts {
        let value = state.scalar_multiple_of_vacuum(0);
        let ok = value.as_ref() == Some(&closed);
        pass &= ok;
        let shown = value
            .as_ref()
            .map_or_else(|| format!("state {state}"), LaurentPoly::to_string);
        let status = if ok { "PASS" } else { "FAIL" };
        text.push_str(&format!("\n  {name}: engine {shown}  closed form {closed}  {status}"));
        report[name] = json!({
            "value": value.as_ref().map(poly_to_json),
            "state": if value.is_some() { Value::Null } else { state.to_json() },
            "closed_form": poly_to_json(&closed),
            "pass": ok,
        });
    }
    report["pass"] = json!(pass);
    Ok(Outcome {
        pass,
        text,
        json: report,
    })
}

fn binomial(n: usize, m: usize) -> usize {
    if m > n {
        return 0;
    }
    (0..m).fold(1, |acc, k| acc * (n - k) / (k + 1))
}

pub fn dims(cfg: &Config) -> Result<Outcome, Failure> {
    let data = hecke_data(cfg)?;
    let n = data.n;
    let wedge = Wedge::new(&data)?;
    let (q0, _) = admissible_samples(cfg.seed, 1).remove(0);
    let dims: Vec<usize> = (0..=n + 1).map(|m| wedge.degree_dimension(m, &q0)).collect();
    let pass = dims.iter().enumerate().all(|(m, &d)| d == binomial(n, m));
    let top = dims.iter().rposition(|&d| d > 0).unwrap_or(0);
    let mut text = format!("n={n} (rank at q = {q0})");
    for (m, d) in dims.iter().enumerate() {
        text.push_str(&format!("\n  degree {m}: {d} (binomial {})", binomial(n, m)));
    }
    text.push_str(&format!(
        "\n  top degree {top}, dimension {}\n  {}",
        dims[top],
        if pass { "PASS" } else { "FAIL" }
    ));
    Ok(Outcome {
        pass,
        text,
        json: json!({
            "check": "dims",
            "n": n,
            "pass": pass,
            "q0": q0.to_string(),
            "dimensions": dims,
            "top_degree": top,
            "top_dimension": dims[top],
        }),
    })
}

pub fn bench(cfg: &Config) -> Result<Outcome, Failure> {
    let data = hecke_data(cfg)?;
    let n = data.n;
    let mut rows: Vec<(&str, bool, f64)> = Vec::new();
    let mut time = |name: &'static str, f: &mut dyn FnMut() -> Result<bool, Failure>| {
        let start = Instant::now();
        let ok = f()?;
        rows.push((name, ok, start.elapsed().as_secs_f64() * 1e3));
        Ok::<(), Failure>(())
    };
    time("hecke", &mut || Ok(check_hecke(&data)?.pass))?;
    time("ybe", &mut || Ok(check_braid(&data)?.pass))?;
    time("pybe", &mut || Ok(check_pybe(&data)?.pass))?;
    let rules = exchange_rules(cfg, &data)?;
    time("moderel", &mut || {
        let mut ord = NormalOrderer::with_budget(&rules, cfg.budget);
        let cases: Vec<(i64, i64)> = (-3..=4).flat_map(|i| (-3..i).map(move |j| (i, j))).collect();
        Ok(mode_sweep(&mut ord, "moderel", n, &cases, check_moderel)?.pass)
    })?;
    for (name, i) in [("heisenberg_1", 1), ("heisenberg_2", 2)] {
        time(name, &mut || {
            let mut engine = FockEngine::with_budget(&rules, cfg.budget);
            let c = engine.commutator_on_vacuum(i, i, &ApplyOptions::default())?;
            Ok(c.scalar == Some(heis_prediction(i, i, n)))
        })?;
    }
    let pass = rows.iter().all(|r| r.1);
    let mut text = format!("n={n}");
    for (name, ok, ms) in &rows {
        let status = if *ok { "PASS" } else { "FAIL" };
        text.push_str(&format!("\n  {name:<14} {ms:>10.3} ms  {status}"));
    }
    let timings: serde_json::Map<String, Value> = rows
        .iter()
        .map(|(name, ok, ms)| (name.to_string(), json!({ "ms": ms, "pass": ok })))
        .collect();
    Ok(Outcome {
        pass,
        text,
        json: json!({ "check": "bench", "n": n, "pass": pass, "timings": timings }),
    })
}
