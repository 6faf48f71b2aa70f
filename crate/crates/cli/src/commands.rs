use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use plie_core::correspondence::{orbits, verify_gencorr, verify_tensor, Filter};
use plie_core::counting::{count_report, transversal_k, verify_ne_equals_c, Completeness};
use plie_core::lazard::{bch_terms, gp, verify_ml_properties};
use plie_core::linear::rational_reduce;
use plie_core::report::{all_passed, render};
use plie_core::structures::{parse_tensor, write_tensor};
use plie_core::{Error, Partition, Result, Side, StructureTensor};

use crate::config::RunConfig;

/// Text for stdout and whether every requested check held.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn read_tensor(path: &Path) -> Result<StructureTensor> {
    parse_tensor(&fs::read_to_string(path)?)
}

fn input(cfg: &RunConfig) -> Result<&Path> {
    cfg.input.as_deref().ok_or_else(|| Error::Precondition("no input file given".into()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Predicates of a structure file. With neither `lie` nor `nilpotent` set,
/// all three predicates are requested.
pub fn check(cfg: &RunConfig) -> Result<Outcome> {
    let t = read_tensor(input(cfg)?)?;
    let want_nilpotent = cfg.nilpotent || !cfg.lie;
    let mut s = String::new();
    let _ = writeln!(s, "side {}", t.side());
    let _ = writeln!(s, "shape {}", t.shape());
    let alternating = t.is_alternating();
    let _ = writeln!(s, "alternating {}", yes_no(alternating));
    let jacobi = t.jacobi_holds();
    let note = if t.shape().parts().last().is_some_and(|&l| l >= 2) { " (λ_t ≥ 2)" } else { "" };
    match t.jacobi_violation() {
        None => {
            let _ = writeln!(s, "jacobi yes{note}");
        }
        Some((i, j, k, m)) => {
            let _ = writeln!(s, "jacobi no (witness i={} j={} k={} m={})", i + 1, j + 1, k + 1, m + 1);
        }
    }
    let nilpotent = if alternating && jacobi {
        match t.nilpotency_class() {
            Some(c) => {
                let _ = writeln!(s, "nilpotent yes (class {c})");
                true
            }
            None => {
                let _ = writeln!(s, "nilpotent no");
                false
            }
        }
    } else {
        let _ = writeln!(s, "nilpotent n/a (not Lie)");
        false
    };
    let ok = alternating && jacobi && (!want_nilpotent || nilpotent);
    Ok(Outcome { text: s, ok })
}

/// Orbit representatives of the filtered structures on one shape.
pub fn orbits_cmd(cfg: &RunConfig, alternating: bool) -> Result<Outcome> {
    let shape = cfg.partition.clone().ok_or_else(|| Error::Precondition("orbits needs --partition".into()))?;
    let filter = Filter { alternating: alternating || cfg.lie, jacobi: cfg.lie, nilpotent: cfg.nilpotent };
    let report = orbits(&shape, cfg.p, cfg.side, filter, &cfg.budget)?;
    let summary = report.summary();
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("summary.txt"), &summary)?;
        for (name, body) in report.representative_files() {
            fs::write(dir.join(name), body)?;
        }
    }
    Ok(Outcome::ok(summary))
}

/// The image under `θ`, written to `--out` or returned for stdout.
pub fn correspond(cfg: &RunConfig) -> Result<Outcome> {
    let t = read_tensor(input(cfg)?)?;
    let body = write_tensor(&t.theta());
    match &cfg.out {
        Some(path) => {
            fs::write(path, &body)?;
            Ok(Outcome::ok(format!("wrote {} side={}\n", path.display(), t.side().flip())))
        }
        None => Ok(Outcome::ok(body)),
    }
}

/// The group `gp(T)` with its basic invariants; the table goes to `--out`.
pub fn group(cfg: &RunConfig) -> Result<Outcome> {
    let t = read_tensor(input(cfg)?)?;
    let g = gp(&t, &cfg.budget)?;
    let mut s = String::new();
    let _ = writeln!(s, "order {}", g.order());
    let _ = writeln!(s, "exponent {}", g.exponent());
    let _ = writeln!(s, "type {}", g.group_type()?);
    let _ = writeln!(s, "derived {}", g.derived_subgroup().len());
    let _ = writeln!(s, "class {}", g.nilpotency_class().unwrap_or(0));
    if let Some(path) = &cfg.out {
        fs::write(path, g.to_text())?;
    }
    Ok(Outcome::ok(s))
}

/// Per-partition orbit-sum counts and their total.
pub fn count(cfg: &RunConfig, check_completeness: bool) -> Result<Outcome> {
    cfg.require_p_at_least_n("counting")?;
    let mut t = transversal_k(cfg.p, cfg.n, cfg.input.as_deref(), &cfg.budget)?;
    if check_completeness {
        t.check_completeness(&cfg.budget)?;
    }
    let report = count_report(cfg.p, cfg.n, &t, &cfg.budget, true)?;
    let ok = report.consistent() && report.completeness != Completeness::Incomplete;
    Ok(Outcome { text: report.render(), ok })
}

/// Correspondence, group dictionary and `N_E = C(K)` checks for every
/// partition of `n`, or the single-tensor checks when a file is given.
pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    if let Some(path) = &cfg.input {
        let t = read_tensor(path)?;
        let checks = verify_tensor(&t, &cfg.budget)?;
        let title = format!("tensor {} shape=({}) side={}", path.display(), t.shape(), t.side());
        return Ok(Outcome { text: render(&title, &checks), ok: all_passed(&checks) });
    }
    let shapes = match &cfg.partition {
        Some(l) => vec![l.clone()],
        None => Partition::all(cfg.n),
    };
    let mut s = String::new();
    let mut ok = true;
    for shape in &shapes {
        let r = verify_gencorr(shape, cfg.p, &cfg.budget)?;
        ok &= r.passed();
        s.push_str(&r.render());
    }
    for shape in &shapes {
        let reps = orbits(shape, cfg.p, Side::Ring, Filter::LIE_NILPOTENT, &cfg.budget)?;
        for (k, o) in reps.orbits.iter().enumerate() {
            let t = &o.representative;
            let title = format!("group dictionary p={} shape=({}) rep={k}", cfg.p, shape);
            match t.nilpotency_class() {
                Some(c) if (c as u64) < cfg.p => {
                    let g = gp(t, &cfg.budget)?;
                    let r = verify_ml_properties(&g, t, &cfg.budget)?;
                    ok &= r.passed();
                    s.push_str(&r.render(&title));
                }
                c => {
                    let _ = writeln!(s, "{title}\n  [SKIP] class {} is not below p", c.unwrap_or(0));
                }
            }
        }
    }
    if cfg.partition.is_none() {
        let transversal = transversal_k(cfg.p, cfg.n, None, &cfg.budget)?;
        for (k, alg) in transversal.entries.iter().enumerate() {
            let t = alg.to_tensor(Side::Ring);
            let title = format!("N_E = C(K) p={} n={} entry={k}", cfg.p, cfg.n);
            match t.nilpotency_class() {
                Some(c) if (c as u64) < cfg.p => {
                    let r = verify_ne_equals_c(&gp(&t, &cfg.budget)?, &cfg.budget)?;
                    ok &= r.equal;
                    let status = if r.equal { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "{title}\n  [{status}] N_E={} C(K)={}", r.n_endo, r.c_set);
                    if let Some(w) = r.witness {
                        let _ = writeln!(s, "  witness {w:?}");
                    }
                }
                c => {
                    let _ = writeln!(s, "{title}\n  [SKIP] class {} is not below p", c.unwrap_or(0));
                }
            }
        }
    }
    let _ = writeln!(s, "{}", if ok { "all checks passed" } else { "FAILURES" });
    Ok(Outcome { text: s, ok })
}

/// BCH coefficients up to `class`, optionally reduced modulo `modulus`.
pub fn bch(class: usize, modulus: Option<u64>) -> Result<Outcome> {
    if class == 0 {
        return Err(Error::Precondition("class must be at least 1".into()));
    }
    let series = bch_terms(class);
    let Some(m) = modulus else {
        return Ok(Outcome::ok(series.to_string()));
    };
    let mut s = format!("class={} terms={} modulus={m}\n", series.class, series.terms.len());
    for term in &series.terms {
        let (num, den) =
            term.coeff_i64().ok_or_else(|| Error::Consistency(format!("coefficient {} overflows", term.coeff)))?;
        let r = rational_reduce(num, den, m)?;
        let _ = writeln!(s, "{term}  ≡ {r}");
    }
    Ok(Outcome::ok(s))
}
