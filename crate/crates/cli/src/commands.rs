use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use bracket_width::json::{
    ac_tuple_from_value, current_from_value, elem_from_value, matrix_to_json, ACTupleJson,
    CurrentJson, ElemJson, TorusLimitJson,
};
use bracket_width::selftest::{run_selftest, SelftestOptions};
use bracket_width::width::{PairSource, DEFAULT_SPANNING_ATTEMPTS, DEFAULT_STAR_ATTEMPTS};
use bracket_width::{
    obstruction_campaign, sim_triangularizable, single_bracket_solve, spanning_pair, star_seed,
    two_bracket_decompose, CampaignConfig, Current, Elem, Error, LieAlg,
};
use serde_json::{json, Value};

use crate::{
    read_input, render, write_text, AlgebraArgs, CampaignArgs, DecomposeArgs, Failure,
    SelftestArgs, StarArgs, TupleArgs,
};

fn algebra(args: &AlgebraArgs) -> Result<Arc<LieAlg>, Failure> {
    let family = args
        .family
        .ok_or_else(|| Failure::usage("--family is required"))?;
    let n = args.n.ok_or_else(|| Failure::usage("--n is required"))?;
    Ok(LieAlg::build(family, n)?)
}

fn algebra_json(g: &LieAlg) -> Value {
    json!({ "family": g.family(), "n": g.n() })
}

/// `min-nilpotent` (needs `--family`, `--n`) or an inline JSON element; if
/// both the element and the flags name an algebra they must agree.
fn element(args: &AlgebraArgs, text: &str) -> Result<Elem, Failure> {
    if text == "min-nilpotent" {
        return Ok(algebra(args)?.minimal_nilpotent()?);
    }
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Error {
        kind: "parse",
        message: format!("element: invalid JSON: {e}"),
    })?;
    let x = elem_from_value(&v, "element")?;
    if args.family.is_some() || args.n.is_some() {
        let g = algebra(args)?;
        if g.id() != x.parent().id() {
            return Err(Failure::usage(format!(
                "element lies in {} but --family/--n name {}",
                x.parent().id(),
                g.id()
            )));
        }
    }
    Ok(x)
}

fn pair_source(s: &PairSource) -> Value {
    match s {
        PairSource::Principal => json!("principal"),
        PairSource::Random { attempt } => json!({ "random_attempt": attempt }),
    }
}

pub fn decompose(args: &DecomposeArgs, single: bool) -> Result<Value, Failure> {
    let g = algebra(&args.algebra)?;
    let z = match &args.input {
        Some(src) => current_from_value(&g, &read_input(src)?, "")?,
        None => Current::random(&g, args.order, args.height, args.seed)?,
    };
    let name = if single { "decompose1" } else { "decompose2" };
    let default_attempts = if single {
        DEFAULT_STAR_ATTEMPTS
    } else {
        DEFAULT_SPANNING_ATTEMPTS
    };
    let attempts = args.attempts.unwrap_or(default_attempts);
    let mut config = json!({
        "algebra": algebra_json(&g),
        "order": z.order(),
        "attempts": attempts,
        "seed": args.seed,
        "input": args.input.clone().unwrap_or_else(|| "random".into()),
    });
    if args.input.is_none() {
        config["height"] = json!(args.height);
    }
    let input = CurrentJson::from_current(&z);

    if single {
        let sol = match single_bracket_solve(&z, attempts, args.seed) {
            Ok(sol) => sol,
            Err(Error::SeedNotFound {
                attempts,
                consistent,
            }) => {
                return Err(Failure::Inconclusive(json!({
                    "command": name,
                    "config": config,
                    "input": input,
                    "status": "not_found",
                    "attempts": attempts,
                    "consistent_draws": consistent,
                    "note": "no certificate found; inconclusive over Q",
                })))
            }
            Err(e) => return Err(e.into()),
        };
        let verified = sol.x.cbracket(&sol.y)? == z;
        if !verified {
            return Err(Failure::Error {
                kind: "verification",
                message: "single-bracket decomposition failed to re-expand".into(),
            });
        }
        Ok(json!({
            "command": name,
            "config": config,
            "input": input,
            "status": "found",
            "shift": sol.shift,
            "seed_pair": sol.seed.as_ref().map(|s| json!({
                "a": ElemJson::from_elem(s.a()),
                "b": ElemJson::from_elem(s.b()),
            })),
            "x": CurrentJson::from_current(&sol.x),
            "y": CurrentJson::from_current(&sol.y),
            "verified": verified,
        }))
    } else {
        let pair = spanning_pair(&g, attempts, args.seed)?;
        let (x, y) = two_bracket_decompose(&z, &pair)?;
        let order = z.order();
        let back = Current::constant(pair.w1(), order)
            .cbracket(&x)?
            .add(&Current::constant(pair.w2(), order).cbracket(&y)?)?;
        let verified = back == z;
        if !verified {
            return Err(Failure::Error {
                kind: "verification",
                message: "two-bracket decomposition failed to re-expand".into(),
            });
        }
        Ok(json!({
            "command": name,
            "config": config,
            "input": input,
            "pair": {
                "source": pair_source(pair.source()),
                "w1": ElemJson::from_elem(pair.w1()),
                "w2": ElemJson::from_elem(pair.w2()),
                "certificate_rank": pair.certificate_rank(),
            },
            "x": CurrentJson::from_current(&x),
            "y": CurrentJson::from_current(&y),
            "verified": verified,
        }))
    }
}

pub fn check_star(args: &StarArgs) -> Result<Value, Failure> {
    let c = element(&args.algebra, &args.element)?;
    let config = json!({
        "algebra": algebra_json(c.parent()),
        "element": args.element,
        "attempts": args.attempts,
        "seed": args.seed,
    });
    match star_seed(&c, args.attempts, args.seed) {
        Ok(s) => {
            let cc = s.a().common_centralizer(s.b())?.dim();
            let verified = s.a().bracket(s.b())? == c && cc == 0;
            if !verified {
                return Err(Failure::Error {
                    kind: "verification",
                    message: "star seed certificate failed to verify".into(),
                });
            }
            Ok(json!({
                "command": "check-star",
                "config": config,
                "target": ElemJson::from_elem(&c),
                "status": "found",
                "a": ElemJson::from_elem(s.a()),
                "b": ElemJson::from_elem(s.b()),
                "image_sum_rank": s.a().image_sum_rank(s.b())?,
                "common_centralizer_dim": cc,
                "verified": verified,
            }))
        }
        Err(Error::SeedNotFound {
            attempts,
            consistent,
        }) => Err(Failure::Inconclusive(json!({
            "command": "check-star",
            "config": config,
            "target": ElemJson::from_elem(&c),
            "status": "not_found",
            "attempts": attempts,
            "consistent_draws": consistent,
            "note": "no certificate found; inconclusive over Q",
        }))),
        Err(e) => Err(e.into()),
    }
}

pub fn campaign(args: &CampaignArgs) -> Result<Value, Failure> {
    let c = element(&args.algebra, &args.element)?;
    let mut cfg = CampaignConfig::new(args.samples, args.height, args.seed);
    cfg.workers = args.workers;
    let config = json!({
        "algebra": algebra_json(c.parent()),
        "element": args.element,
        "samples": args.samples,
        "height": args.height,
        "seed": args.seed,
    });
    let out = match obstruction_campaign(&c, &cfg) {
        Ok(out) => out,
        Err(Error::NoSamplesAccepted { draws }) => {
            return Err(Failure::Inconclusive(json!({
                "command": "campaign",
                "config": config,
                "status": "no_samples",
                "draws": draws,
            })))
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.jsonl_log {
        let mut text = String::new();
        for rec in &out.log {
            text.push_str(&serde_json::to_string(rec).expect("records serialize"));
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| Failure::Error {
            kind: "io",
            message: format!("{}: {e}", path.display()),
        })?;
    }
    Ok(json!({
        "command": "campaign",
        "config": config,
        "report": out.report,
    }))
}

pub fn ac_verify(args: &TupleArgs) -> Result<Value, Failure> {
    let t = ac_tuple_from_value(&read_input(&args.input)?, "")?;
    let m = t.membership();
    Ok(json!({
        "command": "ac-verify",
        "input": ACTupleJson::from_tuple(&t),
        "member": m.member,
        "residual": matrix_to_json(&m.residual),
        "sim_triangularizable": sim_triangularizable(t.x(), t.y())?,
    }))
}

pub fn torus_limit(args: &TupleArgs) -> Result<Value, Failure> {
    let t = ac_tuple_from_value(&read_input(&args.input)?, "")?;
    let lim = bracket_width::torus_limit(&t)?;
    Ok(json!({
        "command": "torus-limit",
        "input": ACTupleJson::from_tuple(&t),
        "member": t.is_member(),
        "result": TorusLimitJson::from_limit(&lim),
    }))
}

pub fn selftest(args: &SelftestArgs) -> ExitCode {
    let results = run_selftest(SelftestOptions {
        quick: args.quick,
        seed: args.seed,
    });
    let mut table = format!(
        "{:<20} {:<6} {:>7} {:>9}  {}\n",
        "suite", "result", "checks", "ms", "detail"
    );
    for r in &results {
        table.push_str(&format!(
            "{:<20} {:<6} {:>7} {:>9}  {}\n",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.checks,
            r.millis,
            r.detail
        ));
    }
    let all = results.iter().all(|r| r.passed);
    let written = write_text(None, &table).and_then(|_| match &args.output {
        Some(p) => write_text(
            Some(p),
            &render(&json!({
                "command": "selftest",
                "config": { "quick": args.quick, "seed": args.seed },
                "suites": results,
                "passed": all,
            })),
        ),
        None => Ok(()),
    });
    if written.is_err() || !all {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
