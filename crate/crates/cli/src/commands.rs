use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ggs_core::{
    parse_word, sigma_set, Claim, GeneratingTriple, QuotientGroup,
    VerifyOptions,
};
use serde_json::{json, Value};

use crate::cache::{self, CacheKey};
use crate::config::{Format, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;

pub struct Outcome {
    pub output: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, exit: EXIT_OK }
    }
}

fn structured(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

pub fn classify(cfg: &RunConfig) -> Result<Outcome> {
    let v = cfg.vector()?;
    let c = ggs_core::classify(&v);
    let levels: Vec<u32> = match cfg.level {
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    let predicted: Vec<Value> = levels
        .iter()
        .map(|&n| {
            json!({
                "n": n,
                "log_p_order": c.predicted_log_order(n).map(|k| k.to_string()),
                "order": c.predicted_order(n).map(|k| k.to_string()),
            })
        })
        .collect();
    let report = json!({
        "p": v.p(),
        "e": v.entries(),
        "alpha": c.alpha,
        "periodic": c.periodic,
        "symmetric": c.symmetric,
        "t": c.rank_t,
        "gupta_sidki": c.gupta_sidki,
        "predicted": predicted,
    });
    if cfg.format == Format::Structured {
        return Ok(Outcome::ok(structured(&report)));
    }
    let mut s = String::new();
    let _ = writeln!(s, "p = {}, e = {v}", v.p());
    let _ = writeln!(s, "alpha = {}", c.alpha);
    let _ = writeln!(s, "periodic: {}", c.periodic);
    let _ = writeln!(s, "symmetric: {}", c.symmetric);
    let _ = writeln!(s, "t = rank C(e,0) = {}", c.rank_t);
    if c.gupta_sidki {
        let _ = writeln!(s, "Gupta-Sidki 3-group");
    }
    for n in levels {
        match (c.predicted_log_order(n), c.predicted_order(n)) {
            (Some(k), Some(o)) => {
                let _ = writeln!(s, "|G_{n}| = p^{k} = {o}");
            }
            (Some(k), None) => {
                let _ = writeln!(s, "|G_{n}| = p^{k}");
            }
            _ => {
                let _ = writeln!(s, "|G_{n}|: no formula (symmetric vector)");
            }
        }
    }
    Ok(Outcome::ok(s))
}

pub fn enumerate(cfg: &RunConfig, dump: bool, cayley: bool) -> Result<Outcome> {
    let v = cfg.vector()?;
    let n = cfg.level_or(2);
    let g = QuotientGroup::enumerate(&v, n, cfg.budget)?;
    let c = ggs_core::classify(&v);
    let predicted = c.predicted_order(n);
    let formula = match predicted {
        Some(o) if o == g.order() as u128 => "matches",
        Some(_) => "MISMATCH",
        None => "no formula",
    };
    let hist: Vec<Value> = g
        .order_histogram()
        .iter()
        .map(|(o, k)| json!({"order": o, "count": k}))
        .collect();
    let mut report = json!({
        "p": v.p(),
        "e": v.entries(),
        "n": n,
        "order": g.order(),
        "predicted_order": predicted.map(|o| o.to_string()),
        "formula": formula,
        "exponent": g.exponent(),
        "order_histogram": hist,
    });
    if dump {
        let els: Vec<String> = g.elements().map(|x| g.portrait(x).to_string()).collect();
        report["elements"] = json!(els);
    }
    if cayley {
        report["cayley"] = json!(g.cayley_dot());
    }
    if cfg.format == Format::Structured {
        return Ok(Outcome {
            output: structured(&report),
            exit: if formula == "MISMATCH" { EXIT_REFUTED } else { EXIT_OK },
        });
    }
    let mut s = String::new();
    let _ = writeln!(s, "G_{n} for p = {}, e = {v}", v.p());
    let _ = writeln!(s, "|G_{n}| = {}", g.order());
    match predicted {
        Some(o) => {
            let _ = writeln!(s, "formula: {o} ({formula})");
        }
        None => {
            let _ = writeln!(s, "formula: none for symmetric vectors at n >= 3");
        }
    }
    let _ = writeln!(s, "exponent: {}", g.exponent());
    let _ = writeln!(s, "element orders:");
    for (o, k) in g.order_histogram() {
        let _ = writeln!(s, "  {o:>8}: {k}");
    }
    if dump {
        s.push_str(&g.dump());
    }
    if cayley {
        s.push_str(&g.cayley_dot());
    }
    Ok(Outcome {
        output: s,
        exit: if formula == "MISMATCH" { EXIT_REFUTED } else { EXIT_OK },
    })
}

pub struct VerifyArgs {
    pub claim: String,
    pub to: Option<u32>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub no_cache: bool,
}

pub fn verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<Outcome> {
    let claim: Claim = args.claim.parse()?;
    let v = cfg.vector_for(claim)?;
    let opts = VerifyOptions {
        budget: cfg.budget,
        lift_to: args.to,
        x: args.x.clone(),
        y: args.y.clone(),
    };
    let mut extra = Vec::new();
    for (k, val) in [("m", args.to.map(|m| m.to_string())), ("x", args.x.clone()), ("y", args.y.clone())] {
        if let Some(val) = val {
            extra.push((k, val));
        }
    }
    let key = CacheKey {
        claim,
        vector: &v,
        level: cfg.level,
        budget: cfg.budget,
        extra,
    };
    let cache_dir = cfg.cache_dir.as_deref().filter(|_| !args.no_cache);
    let cached = cache_dir.and_then(|d| cache::load(d, &key));
    let cert = match cached {
        Some(c) => c,
        None => {
            let c = ggs_core::verify(claim, &v, cfg.level, &opts)?;
            if let Some(dir) = cache_dir {
                cache::store(dir, &key, &c)?;
            }
            c
        }
    };
    let output = match cfg.format {
        Format::Structured => cert.to_json(),
        Format::Text => cert.to_text(),
    };
    Ok(Outcome {
        output,
        exit: if cert.verdict.is_success() { EXIT_OK } else { EXIT_REFUTED },
    })
}

pub struct SigmaArgs {
    pub x: String,
    pub y: String,
    pub member: Vec<String>,
    pub dump: bool,
}

pub fn sigma(cfg: &RunConfig, args: &SigmaArgs) -> Result<Outcome> {
    let v = cfg.vector()?;
    let n = cfg.level_or(2);
    let g = QuotientGroup::enumerate(&v, n, cfg.budget)?;
    let word = |s: &str| -> Result<u32> {
        let x = parse_word(s, &v, g.shape()).with_context(|| format!("in word {s:?}"))?;
        Ok(g.require(&x)?)
    };
    let t = GeneratingTriple::new(&g, word(&args.x)?, word(&args.y)?)?;
    let s = sigma_set(&t, &g);
    let mut queries = Vec::new();
    for m in &args.member {
        let x = word(m)?;
        queries.push((m.clone(), g.portrait(x).to_string(), s.contains(x)));
    }
    let report = json!({
        "p": v.p(),
        "e": v.entries(),
        "n": n,
        "x": args.x,
        "y": args.y,
        "group_order": g.order(),
        "sigma_size": s.len(),
        "members": queries.iter().map(|(w, enc, inside)| json!({"word": w, "element": enc, "member": inside})).collect::<Vec<_>>(),
        "elements": if args.dump {
            json!(s.members().map(|x| g.portrait(x).to_string()).collect::<Vec<_>>())
        } else {
            Value::Null
        },
    });
    if cfg.format == Format::Structured {
        return Ok(Outcome::ok(structured(&report)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Σ({}, {}) in G_{n} (p = {}, e = {v}, |G_{n}| = {})", args.x, args.y, v.p(), g.order());
    let _ = writeln!(out, "|Σ| = {}", s.len());
    for (w, enc, inside) in &queries {
        let _ = writeln!(out, "{w} = {enc}: {}", if *inside { "in Σ" } else { "not in Σ" });
    }
    if args.dump {
        for x in s.members() {
            let _ = writeln!(out, "{}", g.portrait(x));
        }
    }
    Ok(Outcome::ok(out))
}

pub fn replay(cfg: &RunConfig, file: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cert = ggs_core::Certificate::from_json(&text)?;
    let r = ggs_core::replay(&cert, cfg.budget)?;
    let report = json!({
        "claim": cert.claim,
        "verdict": cert.verdict.to_string(),
        "replayed": r.ok,
        "method": r.method,
        "detail": r.detail,
    });
    let output = match cfg.format {
        Format::Structured => structured(&report),
        Format::Text => format!(
            "{} ({}): {} by {}, {}\n",
            cert.claim,
            cert.verdict,
            if r.ok { "replayed" } else { "REPLAY FAILED" },
            r.method,
            r.detail
        ),
    };
    Ok(Outcome {
        output,
        exit: if r.ok { EXIT_OK } else { EXIT_REFUTED },
    })
}

pub fn claims(cfg: &RunConfig) -> Result<Outcome> {
    let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
    Ok(Outcome::ok(match cfg.format {
        Format::Structured => structured(&json!(ids)),
        Format::Text => {
            let mut s = ids.join("\n");
            s.push('\n');
            s
        }
    }))
}
