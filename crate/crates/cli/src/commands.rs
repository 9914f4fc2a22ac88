use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use pmsign::coloring::{all_colorings, count_colorings_bruteforce, pattern_to_coloring};
use pmsign::components::{count_components_3_with_diagonal, total_from_counts, GridSpec};
use pmsign::enumerate::{admissible_orbits, count_admissible, enumerate_admissible, export_cnf};
use pmsign::exactalg::{format_rational, parse_rational, RationalSymMatrix};
use pmsign::group::{apply_group, canonical_form, positive_singleton_form};
use pmsign::represent::{
    block_diagonal_compose, certificate_from_json, certificate_to_json, leading_signs,
    lpr_diagonal_representative, lpr_transport, search, star_segment_check, sweep_orbits, table1,
    write_database, Certificate, LeadingPattern, SearchConfig, Strategy, Verdict,
};
use pmsign::subset::{cardlex_order, parse_label, Label};
use pmsign::{GroupElement, Order, Permutation, SignPattern};

use crate::{Cli, Command, Output};

fn ok(text: String, json: Value) -> Result<Output> {
    Ok(Output {
        text,
        json,
        success: true,
    })
}

struct Ctx {
    order: Order,
    seed: u64,
}

impl Ctx {
    fn pattern(&self, text: &str) -> Result<SignPattern> {
        SignPattern::parse_in(text, self.order).with_context(|| format!("pattern {text:?}"))
    }

    fn show(&self, s: &SignPattern) -> String {
        s.to_string_in(self.order)
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let ctx = Ctx {
        order: cli.order,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Check { pattern } => check(&ctx, pattern),
        Command::Act {
            pattern,
            swap,
            perm,
            dual,
            negate,
        } => act(
            &ctx,
            pattern,
            swap.as_deref(),
            perm.as_deref(),
            *dual,
            *negate,
        ),
        Command::Minor { pattern, op } => {
            let s = ctx.pattern(pattern)?;
            let (name, set) = match (&op.restrict, &op.delete, &op.contract) {
                (Some(k), _, _) => ("restrict", k),
                (_, Some(k), _) => ("delete", k),
                (_, _, Some(k)) => ("contract", k),
                _ => bail!("one of --restrict, --delete, --contract is required"),
            };
            let k = parse_label(set, s.n())?;
            let m = match name {
                "restrict" => s.restrict(k),
                "delete" => s.delete(k),
                _ => s.contract(k),
            };
            ok(
                ctx.show(&m),
                json!({"operation": name, "set": Label(k).to_string(), "pattern": ctx.show(&m)}),
            )
        }
        Command::Canon { pattern } => canon(&ctx, pattern),
        Command::Enumerate { n, count } => {
            if *count {
                let c = count_admissible(*n)?;
                return ok(c.to_string(), json!({"n": n, "count": c}));
            }
            let all = enumerate_admissible(*n)?;
            let lines: Vec<String> = all.iter().map(|s| ctx.show(s)).collect();
            ok(lines.join("\n"), json!({"n": n, "patterns": lines}))
        }
        Command::Orbits { n, members } => orbits(&ctx, *n, *members),
        Command::Cnf { n } => {
            let cnf = export_cnf(*n)?;
            ok(
                cnf.to_dimacs(),
                json!({"n": n, "variables": cnf.num_vars, "clauses": cnf.clauses}),
            )
        }
        Command::Colorings { n, list } => colorings(&ctx, *n, *list),
        Command::MinorsOfMatrix { matrix } => minors_of_matrix(&ctx, matrix),
        Command::Verify { cert } => verify(&ctx, cert),
        Command::Search {
            pattern,
            search: a,
            strategy,
        } => {
            let s = ctx.pattern(pattern)?;
            let cfg = SearchConfig {
                max_numerator: a.max_num,
                max_denominator: a.max_den,
                attempts: a.attempts,
                seed: ctx.seed,
                strategy: strategy.parse()?,
            };
            cfg.validate()?;
            match search(&s, &cfg) {
                Some(c) => certificate_output(&c),
                None => Ok(Output {
                    text: format!("unresolved after {} attempts", cfg.attempts),
                    json: json!({"pattern": ctx.show(&s), "resolved": false, "attempts": cfg.attempts}),
                    success: false,
                }),
            }
        }
        Command::Sweep { n, search: a, db } => {
            let cfg = SearchConfig {
                max_numerator: a.max_num,
                max_denominator: a.max_den,
                attempts: a.attempts,
                seed: ctx.seed,
                strategy: Strategy::Random,
            };
            sweep(&ctx, *n, &cfg, db.as_deref())
        }
        Command::Compose { certs } => {
            let parts = certs
                .iter()
                .map(|p| read_single_certificate(p))
                .collect::<Result<Vec<_>>>()?;
            let c = block_diagonal_compose(&parts)?;
            certificate_output(&c)
        }
        Command::StarCheck { cert, steps } => {
            let c = read_single_certificate(cert)?;
            let pass = star_segment_check(&c, *steps)?;
            Ok(Output {
                text: if pass { "pass" } else { "fail" }.into(),
                json: json!({"pattern": ctx.show(&c.pattern), "steps": steps, "pass": pass}),
                success: pass,
            })
        }
        Command::Lpr { to, matrix } => {
            let target: LeadingPattern = to.parse()?;
            let m = match matrix {
                None => lpr_diagonal_representative(&target),
                Some(path) => {
                    let m = read_matrix(path)?;
                    let from = leading_signs(&m)?;
                    lpr_transport(&m, &from, &target)?
                }
            };
            ok(
                m.to_string(),
                json!({"leading": leading_signs(&m)?.to_string(), "matrix": m.to_strings()}),
            )
        }
        Command::Components {
            pattern,
            radius,
            step,
            diagonal,
        } => {
            let s = ctx.pattern(pattern)?;
            let grid = GridSpec::new(parse_rational(radius)?, parse_rational(step)?)?;
            let r = count_components_3_with_diagonal(&s, &grid, &parse_rational(diagonal)?)?;
            let mut text = format!(
                "{} components {} cells {} (R={}, step={}; counted inside the box)",
                ctx.show(&s),
                r.count,
                r.cells,
                format_rational(grid.radius()),
                format_rational(grid.step()),
            );
            if let Some(w) = r.warning() {
                let _ = write!(text, "\nwarning: {w}");
            }
            ok(text, r.to_json())
        }
        Command::Table1 {
            step,
            no_components,
        } => table1_cmd(&ctx, step, *no_components),
        Command::Table2 { n } => {
            let a = count_admissible(*n)?;
            let orbits = admissible_orbits(*n, false)?.len();
            ok(
                format!("a_{n} {a}, orbits {orbits}"),
                json!({"n": n, "admissible": a, "orbits": orbits}),
            )
        }
    }
}

fn check(ctx: &Ctx, pattern: &str) -> Result<Output> {
    let s = ctx.pattern(pattern)?;
    Ok(match s.first_violation() {
        None => Output {
            text: "admissible".into(),
            json: json!({"pattern": ctx.show(&s), "admissible": true}),
            success: true,
        },
        Some(d) => Output {
            text: format!("not admissible: diamond {d} fails"),
            json: json!({"pattern": ctx.show(&s), "admissible": false, "diamond": d.to_string()}),
            success: false,
        },
    })
}

fn act(
    ctx: &Ctx,
    pattern: &str,
    swap: Option<&str>,
    perm: Option<&str>,
    dual: bool,
    negate: bool,
) -> Result<Output> {
    let s = ctx.pattern(pattern)?;
    let n = s.n();
    let z = swap.map(|k| parse_label(k, n)).transpose()?.unwrap_or(0);
    let p = match perm {
        Some(text) => {
            let images = text
                .split(',')
                .map(|t| {
                    let v: usize = t
                        .trim()
                        .parse()
                        .with_context(|| format!("bad image {t:?}"))?;
                    v.checked_sub(1).context("images are 1-based")
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::new(images)?
        }
        None => Permutation::identity(n),
    };
    let g = GroupElement::new(z, p)?;
    let mut t = apply_group(&s, &g)?;
    if dual {
        t = t.dual();
    }
    if negate {
        t = t.negate();
    }
    ok(
        ctx.show(&t),
        json!({"pattern": ctx.show(&t), "element": g.to_string(), "dual": dual, "negate": negate}),
    )
}

fn canon(ctx: &Ctx, pattern: &str) -> Result<Output> {
    let s = ctx.pattern(pattern)?;
    let c = canonical_form(&s);
    let size = pmsign::group::orbit(&s).len();
    let mut text = format!("canonical {}\norbit size {size}", ctx.show(&c));
    let mut j = json!({"pattern": ctx.show(&s), "canonical": ctx.show(&c), "orbit_size": size});
    if let Ok((g, t)) = positive_singleton_form(&s) {
        let _ = write!(text, "\npositive singletons {} via {g}", ctx.show(&t));
        j["positive_singleton_form"] = ctx.show(&t).into();
        j["element"] = g.to_string().into();
    }
    ok(text, j)
}

fn orbits(ctx: &Ctx, n: usize, members: bool) -> Result<Output> {
    let reports = admissible_orbits(n, members)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let _ = writeln!(text, "{} {}", ctx.show(&r.representative), r.size);
        let mut row = json!({"representative": ctx.show(&r.representative), "size": r.size});
        if let Some(ms) = &r.members {
            let list: Vec<String> = ms.iter().map(|m| ctx.show(m)).collect();
            for m in &list {
                let _ = writeln!(text, "  {m}");
            }
            row["members"] = list.into();
        }
        rows.push(row);
    }
    let _ = write!(text, "orbits {}", reports.len());
    ok(text, json!({"n": n, "orbits": rows}))
}

fn colorings(ctx: &Ctx, n: usize, list: bool) -> Result<Output> {
    let count = count_colorings_bruteforce(n)?;
    let mut text = format!("colorings {count}");
    let mut j = json!({"n": n, "colorings": count});
    if list {
        let mut rows = Vec::new();
        for c in all_colorings(n)? {
            let s = pmsign::coloring::coloring_to_pattern(&c)?;
            debug_assert_eq!(pattern_to_coloring(&s).ok().as_ref(), Some(&c));
            let colors: String = cardlex_order(n)
                .iter()
                .map(|&k| char::from(b'0' + c.color(k)))
                .collect();
            let _ = write!(text, "\n{colors} {}", ctx.show(&s));
            rows.push(json!({"coloring": colors, "pattern": ctx.show(&s)}));
        }
        j["list"] = rows.into();
    }
    ok(text, j)
}

fn minors_of_matrix(ctx: &Ctx, path: &Path) -> Result<Output> {
    let m = read_matrix(path)?;
    let minors = m.all_principal_minors();
    let mut text = String::new();
    let mut list = Vec::new();
    for &k in cardlex_order(m.n()) {
        let v = format_rational(minors.get(k));
        let _ = writeln!(text, "{} {v}", Label(k));
        list.push(json!([Label(k).to_string(), v]));
    }
    let mut j = json!({"n": m.n(), "minors": list});
    match minors.sign_pattern() {
        Ok(s) => {
            let _ = write!(text, "pattern {}", ctx.show(&s));
            j["pattern"] = ctx.show(&s).into();
        }
        Err(e) => {
            let _ = write!(text, "pattern undefined: {e}");
            j["pattern"] = Value::Null;
        }
    }
    ok(text, j)
}

fn verify(ctx: &Ctx, path: &Path) -> Result<Output> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        bail!("no certificates in {}", path.display());
    }
    let mut out = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for (i, line) in lines.iter().enumerate() {
        let (_, c) = certificate_from_json(line).with_context(|| format!("line {}", i + 1))?;
        let verdict = c.check();
        let msg = match verdict {
            Verdict::Verified => "verified".to_string(),
            Verdict::Vanishing(k) => format!("failed: minor at {} vanishes", Label(k)),
            Verdict::Mismatch(k) => format!("failed: wrong sign at {}", Label(k)),
            Verdict::SizeMismatch => "failed: size mismatch".to_string(),
        };
        all &= verdict.is_verified();
        if lines.len() == 1 {
            out.push_str(&msg);
        } else {
            let _ = writeln!(out, "{} {msg}", ctx.show(&c.pattern));
        }
        rows.push(json!({"pattern": ctx.show(&c.pattern), "verified": verdict.is_verified(), "message": msg}));
    }
    Ok(Output {
        text: out,
        json: json!({"certificates": rows, "all_verified": all}),
        success: all,
    })
}

fn sweep(ctx: &Ctx, n: usize, cfg: &SearchConfig, db: Option<&Path>) -> Result<Output> {
    let r = sweep_orbits(n, cfg)?;
    if let Some(path) = db {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_database(BufWriter::new(f), &r.resolved)?;
    }
    let mut text = format!(
        "n={n} resolved {}/{} (random {}, seeded {}), samples {}",
        r.resolved.len(),
        r.orbits,
        r.random_hits,
        r.seeded_hits,
        r.samples
    );
    for u in &r.unresolved {
        let _ = write!(
            text,
            "\nunresolved {} after {} attempts",
            ctx.show(&u.key),
            u.attempts
        );
    }
    let unresolved: Vec<Value> = r
        .unresolved
        .iter()
        .map(|u| json!({"key": ctx.show(&u.key), "attempts": u.attempts}))
        .collect();
    Ok(Output {
        text,
        json: json!({
            "n": n,
            "orbits": r.orbits,
            "resolved": r.resolved.len(),
            "random_hits": r.random_hits,
            "seeded_hits": r.seeded_hits,
            "samples": r.samples,
            "unresolved": unresolved,
        }),
        success: r.unresolved.is_empty(),
    })
}

fn table1_cmd(ctx: &Ctx, step: &str, no_components: bool) -> Result<Output> {
    let grid = GridSpec::with_step(parse_rational(step)?)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut counts = Vec::new();
    for row in table1() {
        let m = row.matrix();
        let mut c = Certificate::new(row.pattern.clone(), m, Default::default());
        let verified = pmsign::represent::verify_certificate(&mut c).is_verified();
        let off = row.offdiag.map(|v| v.to_string()).join(",");
        let _ = write!(
            text,
            "{} off-diagonal ({off}) orbit {} {}",
            ctx.show(&row.pattern),
            row.orbit_size,
            if verified { "verified" } else { "NOT verified" }
        );
        let mut j = json!({
            "pattern": ctx.show(&row.pattern),
            "offdiag": row.offdiag,
            "orbit_size": row.orbit_size,
            "verified": verified,
        });
        if !no_components {
            let r =
                count_components_3_with_diagonal(&row.pattern, &grid, &pmsign::exactalg::int(1))?;
            let _ = write!(text, " components {}", r.count);
            j["components"] = r.count.into();
            counts.push((row.orbit_size, r.count));
        }
        text.push('\n');
        rows.push(j);
    }
    let mut j = json!({"rows": rows, "grid": pmsign::components::GridJson::from(&grid)});
    if !no_components {
        let total = total_from_counts(&counts)?;
        let _ = write!(text, "total components {total}");
        j["total"] = total.into();
    }
    ok(text.trim_end().to_string(), j)
}

fn certificate_output(c: &Certificate) -> Result<Output> {
    let line = certificate_to_json(c, None);
    let json: Value = serde_json::from_str(&line)?;
    Ok(Output {
        text: line,
        json,
        success: c.verified,
    })
}

fn read_single_certificate(path: &Path) -> Result<Certificate> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .with_context(|| format!("no certificate in {}", path.display()))?;
    Ok(certificate_from_json(line)?.1)
}

/// A matrix file holds rows `[["p/q", ...], ...]`, an object with
/// `"entries"`, or a certificate with `"matrix"`.
fn read_matrix(path: &Path) -> Result<RationalSymMatrix> {
    let f = File::open(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_reader(BufReader::new(f))?;
    let rows = match &v {
        Value::Array(_) => &v,
        Value::Object(o) => o
            .get("entries")
            .or_else(|| o.get("matrix"))
            .context("expected \"entries\" or \"matrix\"")?,
        _ => bail!("unrecognized matrix file"),
    };
    let rows: Vec<Vec<String>> = rows
        .as_array()
        .context("matrix rows must be an array")?
        .iter()
        .map(|r| {
            r.as_array()
                .context("matrix row must be an array")?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => bail!("matrix entries must be strings or integers"),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(RationalSymMatrix::from_strings(&rows)?)
}
