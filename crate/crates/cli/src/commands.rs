//! The four subcommands.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use jsr_core::bounds::{barabanov_approx_with, conjugation_search, jsr_estimate, EstimateConfig, JsrInterval};
use jsr_core::certificates::{check_bg_el, check_boca_new, check_polbd, CheckConfig, Verdict};
use jsr_core::ultrametric::{check_ultra_boca, ell_bound, padic_jsr_exact_with, padic_nilpotency_report};
use jsr_core::MatrixSet;
use serde_json::{json, Value};

use crate::document::{example, FamilyParams, InputDocument};
use crate::report::{self, num, RunReport};
use crate::{
    CertifyArgs, Cli, CliError, Command, EstimateArgs, ExamplesArgs, PadicArgs, TheoremArg, EXIT_BUDGET,
    EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED,
};

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Estimate(a) => estimate(cli, a, out, err),
        Command::Certify(a) => certify(cli, a, out, err),
        Command::Padic(a) => padic(cli, a, out, err),
        Command::Examples(a) => examples(cli, a, out),
    }
}

fn read_input(path: &Path) -> Result<(Vec<u8>, InputDocument), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let text =
        std::str::from_utf8(&bytes).map_err(|e| CliError::Parse(format!("{}: not UTF-8: {e}", path.display())))?;
    let doc = InputDocument::parse(text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok((bytes, doc))
}

fn diag(cli: &Cli, err: &mut dyn Write, msg: &str) {
    if !cli.quiet {
        let _ = writeln!(err, "{msg}");
    }
}

/// Notes that belong in every report for this document.
fn document_notes(doc: &InputDocument, set_warnings: &[String]) -> Vec<String> {
    let mut notes: Vec<String> = set_warnings.to_vec();
    if let Some(caveat) = doc.source.as_ref().and_then(|s| s.caveat.as_ref()) {
        notes.push(caveat.clone());
    }
    notes
}

fn finish(
    cli: &Cli,
    mut rep: RunReport,
    started: Instant,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    rep.wall_time_s = started.elapsed().as_secs_f64();
    for n in &rep.notes {
        diag(cli, err, &format!("note: {n}"));
    }
    report::write_json(out, &rep)?;
    Ok(())
}

fn estimate_interval(
    s: &MatrixSet,
    depth: usize,
    cli: &Cli,
    norm: crate::NormArg,
    target: Option<f64>,
) -> Result<JsrInterval, CliError> {
    let mut cfg = EstimateConfig::new(depth).norm(norm.spec()).cap(cli.cap);
    if let Some(w) = target {
        cfg = cfg.target_width(w);
    }
    Ok(jsr_estimate(s, &cfg)?)
}

fn estimate(cli: &Cli, a: &EstimateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    let (bytes, doc) = read_input(&a.input)?;
    let s = doc.to_complex_set()?;
    let mut rep = RunReport::new("estimate", &bytes, cli.seed);
    rep.config.insert("depth".into(), json!(a.depth));
    rep.config.insert("norm".into(), json!(a.norm.spec().name()));
    rep.config.insert("cap".into(), json!(cli.cap));
    rep.config.insert("target_width".into(), a.target_width.map_or(Value::Null, num));
    rep.config.insert("conjugation".into(), json!(a.conjugation));
    rep.config.insert("barabanov".into(), json!(a.barabanov));
    rep.notes = document_notes(&doc, s.warnings());

    let iv = estimate_interval(&s, a.depth, cli, a.norm, a.target_width)?;
    rep.results.insert("interval".into(), report::interval(&iv));

    if let Some(iterations) = a.conjugation {
        let c = conjugation_search(&s, iterations)?;
        rep.results.insert(
            "conjugation".into(),
            json!({ "value": num(c.value), "initial": num(c.initial), "g": report::matrix(&c.g) }),
        );
    }
    if let Some(depth) = a.barabanov {
        if iv.upper > 0.0 && iv.upper.is_finite() {
            let p = barabanov_approx_with(&s, iv.upper, depth, cli.cap, cli.seed)?;
            rep.results.insert(
                "barabanov".into(),
                json!({ "rho_hat": num(p.rho_hat()), "depth": p.depth(), "size": p.size(), "slack": num(p.slack()) }),
            );
        } else {
            rep.notes.push("upper bound is 0, so there is no polytope norm to build".into());
        }
    }

    let code = if iv.budget_exceeded() {
        rep.notes.push(format!(
            "budget exceeded: depth clamped to {}; raise --cap or lower --depth for the full run",
            iv.upper_depth
        ));
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    if let Some(path) = &cli.csv {
        report::append_csv(
            path,
            &["command", "input_digest", "seed", "depth", "norm", "lower", "upper", "width", "witness"],
            &[
                "estimate".into(),
                rep.input_digest.clone(),
                cli.seed.to_string(),
                iv.upper_depth.to_string(),
                iv.norm_used.name().into(),
                iv.lower.to_string(),
                iv.upper.to_string(),
                iv.width().to_string(),
                report::word_text(&iv.lower_witness),
            ],
        )?;
    }
    finish(cli, rep, started, out, err)?;
    Ok(code)
}

fn certify(cli: &Cli, a: &CertifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    let (bytes, doc) = read_input(&a.input)?;
    let s = doc.to_complex_set()?;
    let mut rep = RunReport::new("certify", &bytes, cli.seed);
    rep.config.insert("theorem".into(), json!(format!("{:?}", a.theorem).to_lowercase()));
    rep.config.insert("depth".into(), json!(a.depth));
    rep.config.insert("norm".into(), json!(a.norm.spec().name()));
    rep.config.insert("cap".into(), json!(cli.cap));
    if a.theorem == TheoremArg::Bgel {
        rep.config.insert("eps".into(), num(a.eps));
        rep.config.insert("maxlen".into(), json!(a.maxlen));
    }
    rep.notes = document_notes(&doc, s.warnings());

    let iv = estimate_interval(&s, a.depth, cli, a.norm, None)?;
    if iv.budget_exceeded() {
        rep.notes.push(format!("interval depth clamped to {} by the budget", iv.upper_depth));
    }
    let cfg = CheckConfig { cap: cli.cap, ..CheckConfig::default() };
    let t = match a.theorem {
        TheoremArg::Polbd => check_polbd(&s, &iv, &cfg)?,
        TheoremArg::Boca => check_boca_new(&s, &a.norm.spec(), &iv, &cfg)?,
        TheoremArg::Bgel => check_bg_el(&s, &iv, a.eps, a.maxlen, cli.seed, &cfg)?,
    };
    rep.results.insert("interval".into(), report::interval(&iv));
    rep.results.insert("theorem".into(), report::theorem(&t));
    diag(cli, err, &format!("{}: {}", t.theorem.name(), t.verdict));

    if let Some(path) = &cli.csv {
        report::append_csv(
            path,
            &[
                "command",
                "input_digest",
                "seed",
                "theorem",
                "verdict",
                "lhs",
                "rhs_at_lower",
                "rhs_at_upper",
                "lower",
                "upper",
            ],
            &[
                "certify".into(),
                rep.input_digest.clone(),
                cli.seed.to_string(),
                t.theorem.name().into(),
                t.verdict.to_string(),
                t.lhs.to_string(),
                t.rhs_at_lower.to_string(),
                t.rhs_at_upper.to_string(),
                iv.lower.to_string(),
                iv.upper.to_string(),
            ],
        )?;
    }
    finish(cli, rep, started, out, err)?;
    Ok(verdict_exit_code(t.verdict))
}

pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Confirmed => EXIT_OK,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::Refuted => EXIT_REFUTED,
    }
}

fn padic(cli: &Cli, a: &PadicArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    let (bytes, doc) = read_input(&a.input)?;
    let s = doc.to_padic_set(a.prime)?;
    let p = s.prime();
    let mut rep = RunReport::new("padic", &bytes, cli.seed);
    rep.config.insert("prime".into(), json!(p));
    rep.config.insert("cap".into(), json!(cli.cap));

    let jsr = padic_jsr_exact_with(&s, ell_bound(s.dim()), cli.cap)?;
    let boca = check_ultra_boca(&s)?;
    let nil = padic_nilpotency_report(&s);

    rep.results.insert(
        "rho".into(),
        json!({
            "prime": p,
            "magnitude": report::magnitude(&jsr.rho, p),
            "witness": report::word(&jsr.witness),
            "ell": jsr.ell,
            "words": jsr.words.to_string(),
            "levels": jsr.levels.iter().map(|m| report::magnitude_text(m, p)).collect::<Vec<_>>(),
        }),
    );
    let verdict = if boca.holds { Verdict::Confirmed } else { Verdict::Refuted };
    rep.results.insert(
        "ultrametric_boca".into(),
        json!({
            "verdict": verdict.to_string(),
            "lhs": report::magnitude(&boca.lhs, p),
            "rhs": report::magnitude(&boca.rhs, p),
            "set_norm": report::magnitude(&boca.set_norm, p),
            "extremal_word": report::word(&boca.extremal_word),
        }),
    );
    rep.results.insert(
        "nilpotency".into(),
        json!({ "is_nilpotent": nil.is_nilpotent, "algebra_dim": nil.algebra_dim, "chain": nil.chain }),
    );
    diag(cli, err, &format!("rho = {} (witness {:?})", report::magnitude_text(&jsr.rho, p), jsr.witness.indices()));

    if let Some(path) = &cli.csv {
        let (num_e, den_e) =
            jsr.exponent_parts().map_or((String::new(), String::new()), |(n, d)| (n.to_string(), d.to_string()));
        report::append_csv(
            path,
            &[
                "command",
                "input_digest",
                "prime",
                "zero",
                "exponent_numerator",
                "exponent_denominator",
                "witness",
                "nilpotent",
                "boca_verdict",
            ],
            &[
                "padic".into(),
                rep.input_digest.clone(),
                p.to_string(),
                jsr.rho.is_zero().to_string(),
                num_e,
                den_e,
                report::word_text(&jsr.witness),
                nil.is_nilpotent.to_string(),
                verdict.to_string(),
            ],
        )?;
    }
    finish(cli, rep, started, out, err)?;
    Ok(verdict_exit_code(verdict))
}

fn examples(cli: &Cli, a: &ExamplesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = FamilyParams { dim: a.dim, eps: a.eps, samples: a.samples, seed: cli.seed, alphas: a.alphas.clone() };
    let doc = example(a.family, &params)?;
    out.write_all(doc.to_json_string().as_bytes())?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_map_to_exit_codes() {
        assert_eq!(verdict_exit_code(Verdict::Confirmed), 0);
        assert_eq!(verdict_exit_code(Verdict::Inconclusive), 2);
        assert_eq!(verdict_exit_code(Verdict::Refuted), 3);
    }
}
