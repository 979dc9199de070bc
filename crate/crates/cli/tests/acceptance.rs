//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Pinned tolerances: (4,1) at most 10 s per n = 2000 instance; icosahedron
//! (4,0) refutation under 1 s; icosahedron (3,1) refutation at most 60 s.
//! Everything else is exact.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use dhdecomp::decomp26::{check_26, decompose26, swap_root};
use dhdecomp::decomp32::{check_32, choose_z, context32, decompose32};
use dhdecomp::decomp41::{decompose41, discharge_audit, find_reducible};
use dhdecomp::gen::{self, double_wheel, named_solid, stacked_triangulation, stellate};
use dhdecomp::io::{emit_dh, emit_near, parse_dh, parse_rot};
use dhdecomp::oracle::{exact_decide, min_h, OracleOptions};
use dhdecomp::plane::BoundaryContext;
use dhdecomp::verify::{check_dh, infeasibility_bound_23};
use dhdecomp::NearTriangulation;
use num_rational::Rational64;

const MAX_N2000: Duration = Duration::from_secs(10);
const MAX_ICO_40: Duration = Duration::from_secs(1);
const MAX_ICO_31: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// 500 stacked triangulations (n = 4 and n = 2000 included, the rest drawn
/// from a fixed seed), the three solids and double wheels k = 3..=500.
fn corpus() -> Vec<(String, NearTriangulation)> {
    let mut rng = gen::rng(0x5eed);
    let mut sizes = vec![4, 2000];
    while sizes.len() < 500 {
        sizes.push(4 + gen::pick(&mut rng, 1997));
    }
    let mut out: Vec<(String, NearTriangulation)> = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| (format!("stacked n={n} seed={i}"), stacked_triangulation(n, i as u64)))
        .collect();
    for name in ["tetrahedron", "octahedron", "icosahedron"] {
        out.push((name.to_string(), named_solid(name).unwrap()));
    }
    for k in 3..=500 {
        out.push((format!("double-wheel k={k}"), double_wheel(k)));
    }
    out
}

fn first_failure(fails: &[String]) -> String {
    fails.first().cloned().unwrap_or_default()
}

fn criterion_1(corpus: &[(String, NearTriangulation)]) -> Outcome {
    let mut fails = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, t) in corpus {
        let g = t.graph();
        let start = Instant::now();
        let ok = match decompose41(g) {
            Ok(out) => {
                let d = g.edge_subgraph(|u, v| !out.pair.hedges.contains(&(u, v)));
                check_dh(g, &out.pair, 4, 1).passed() && out.ordering.max_earlier(&d) <= 4
            }
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        if g.n() == 2000 {
            slowest = slowest.max(start.elapsed());
        }
        if !ok {
            fails.push(format!("{name}: check failed"));
        }
    }
    let fast = slowest <= MAX_N2000;
    outcome(
        fails.is_empty() && fast,
        format!(
            "{} graphs, {} failures, n=2000 took {:.2?} (limit {:?}) {}",
            corpus.len(),
            fails.len(),
            slowest,
            MAX_N2000,
            first_failure(&fails)
        ),
    )
}

/// Ordered rootings (x, y) along the outer triangle.
fn rootings(t: &NearTriangulation) -> Vec<(u32, u32)> {
    let b = t.boundary();
    let k = b.len();
    (0..k)
        .flat_map(|i| [(b[i], b[(i + 1) % k]), (b[(i + 1) % k], b[i])])
        .collect()
}

fn criterion_2(corpus: &[(String, NearTriangulation)]) -> Outcome {
    let mut runs = 0;
    let mut fails = Vec::new();
    for (name, t) in corpus {
        for (x, y) in rootings(t) {
            runs += 1;
            let res = choose_z(t, x, y).and_then(|z| {
                let p = decompose32(t, x, y, z, None)?;
                let ctx = context32(t, x, y, z, None)?;
                Ok(check_32(t, &ctx, &p))
            });
            match res {
                Ok(r) if r.passed() => {}
                Ok(r) => fails.push(format!("{name} ({x},{y}): {r}")),
                Err(e) => fails.push(format!("{name} ({x},{y}): {e}")),
            }
        }
    }
    outcome(
        fails.is_empty(),
        format!("{runs} rooted runs, {} failures {}", fails.len(), first_failure(&fails)),
    )
}

fn criterion_3(corpus: &[(String, NearTriangulation)]) -> Outcome {
    let mut runs = 0;
    let mut fails = Vec::new();
    for (name, t) in corpus {
        for (x, y) in rootings(t) {
            runs += 1;
            let z = *t.boundary().iter().find(|&&w| w != x && w != y).unwrap();
            let res = (|| {
                let p = decompose26(t, x, y, z)?;
                let ctx = BoundaryContext::new(t, x, y, z)?;
                let direct = check_26(t, &ctx, &p);
                let q = swap_root(t, &ctx, &p)?;
                let swapped = check_26(t, &BoundaryContext::new(t, y, x, z)?, &q);
                Ok::<_, dhdecomp::DecompError>((direct, swapped))
            })();
            match res {
                Ok((a, b)) if a.passed() && b.passed() => {}
                Ok((a, b)) => fails.push(format!("{name} ({x},{y},{z}): {a}{b}")),
                Err(e) => fails.push(format!("{name} ({x},{y},{z}): {e}")),
            }
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "{runs} rooted runs with swap, {} failures {}",
            fails.len(),
            first_failure(&fails)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut seen = BTreeSet::new();
    let mut small: Vec<NearTriangulation> = Vec::new();
    let mut push = |t: NearTriangulation| {
        if seen.insert(emit_near(&t)) {
            small.push(t);
        }
    };
    for name in ["tetrahedron", "octahedron"] {
        push(named_solid(name).unwrap());
    }
    for k in 3..=7 {
        push(double_wheel(k));
    }
    for seed in 0..40u64 {
        for n in 4..=9 {
            push(stacked_triangulation(n, seed));
        }
    }
    let pruned = OracleOptions::default();
    let exhaustive = OracleOptions::exhaustive();
    let mut fails = Vec::new();
    let mut agreements = 0;
    for t in &small {
        let g = t.graph();
        for (d, h) in [(4, 1), (3, 2), (2, 6)] {
            match exact_decide(g, d, h, &pruned) {
                Ok(dec) if dec.feasible() => {}
                other => fails.push(format!("n={} ({d},{h}): {other:?}", g.n())),
            }
        }
        let (x, y) = (t.boundary()[0], t.boundary()[1]);
        let z = t.boundary()[2];
        let witnesses = [
            (4, 1, decompose41(g).map(|o| o.pair)),
            (3, 2, choose_z(t, x, y).and_then(|z| decompose32(t, x, y, z, None))),
            (2, 6, decompose26(t, x, y, z)),
        ];
        for (d, h, w) in witnesses {
            match w {
                Ok(p) if check_dh(g, &p, d, h).passed() => {}
                Ok(_) => fails.push(format!("n={}: constructive ({d},{h}) witness rejected", g.n())),
                Err(e) => fails.push(format!("n={}: ({d},{h}) {e}", g.n())),
            }
        }
        if g.num_edges() <= 16 {
            for d in 0..=4 {
                for h in 0..=3 {
                    let a = exact_decide(g, d, h, &pruned).map(|x| x.feasible());
                    let b = exact_decide(g, d, h, &exhaustive).map(|x| x.feasible());
                    match (a, b) {
                        (Ok(a), Ok(b)) if a == b => agreements += 1,
                        other => fails.push(format!("n={} ({d},{h}) modes differ: {other:?}", g.n())),
                    }
                }
            }
        }
    }
    outcome(
        small.len() >= 50 && fails.is_empty(),
        format!(
            "{} distinct triangulations, {agreements} pruned/exhaustive agreements, {} failures {}",
            small.len(),
            fails.len(),
            first_failure(&fails)
        ),
    )
}

fn criterion_5() -> Outcome {
    let ico = named_solid("icosahedron").unwrap();
    let g = ico.graph();
    let opts = OracleOptions::default();
    let t = Instant::now();
    let r40 = exact_decide(g, 4, 0, &opts).map(|d| d.feasible());
    let t40 = t.elapsed();
    let t = Instant::now();
    let r31 = exact_decide(g, 3, 1, &opts).map(|d| d.feasible());
    let t31 = t.elapsed();
    let mh = min_h(g, 4, &opts).map(|m| m.h);
    let pass = r40 == Ok(false)
        && t40 < MAX_ICO_40
        && r31 == Ok(false)
        && t31 <= MAX_ICO_31
        && mh == Ok(1);
    outcome(
        pass,
        format!(
            "(4,0) {} in {t40:.2?}, (3,1) {} in {t31:.2?}, min_h(d=4) = {:?}",
            verdict(&r40),
            verdict(&r31),
            mh
        ),
    )
}

fn verdict<E: std::fmt::Debug>(r: &Result<bool, E>) -> String {
    match r {
        Ok(true) => "feasible".into(),
        Ok(false) => "infeasible".into(),
        Err(e) => format!("{e:?}"),
    }
}

fn run_cli(dir: &Path, args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_dhdecomp"))
        .current_dir(dir)
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn criterion_6(dir: &Path) -> Outcome {
    let mut fails = Vec::new();
    for n in [4usize, 12, 20] {
        let s = stellate(stacked_triangulation(n, n as u64).graph()).unwrap();
        let (f, e) = (s.face_vertices.len(), s.graph.num_edges());
        if f != 2 * n - 4 || e != 9 * n - 18 || s.graph.n() != n + f {
            fails.push(format!("n={n}: |F|={f} |E'|={e}"));
        }
    }
    let bound_ok = (3..=500).all(|n| infeasibility_bound_23(n) == (n >= 11));
    if !bound_ok {
        fails.push("counting bound threshold is not n >= 11".into());
    }
    let gen = run_cli(
        dir,
        &["gen", "--family", "stellate", "--name", "icosahedron", "-o", "stell.rot"],
    );
    let dec = run_cli(dir, &["decompose", "--profile", "2,6", "stell.rot", "-o", "stell.dh"]);
    let ver = run_cli(dir, &["verify", "stell.rot", "stell.dh"]);
    if (gen, dec, ver) != (0, 0, 0) {
        fails.push(format!("stellate(icosahedron) exit codes gen={gen} decompose={dec} verify={ver}"));
    }
    outcome(
        fails.is_empty(),
        format!(
            "counts for n in {{4,12,20}}, bound threshold 11, stellate(icosahedron) (2,6) exit {dec}/{ver} {}",
            first_failure(&fails)
        ),
    )
}

fn criterion_7(corpus: &[(String, NearTriangulation)]) -> Outcome {
    let mut fails = Vec::new();
    let target = Rational64::from_integer(-12);
    for (name, t) in corpus {
        let g = t.graph();
        match discharge_audit(g) {
            Ok(tab) if tab.final_total == target && tab.conserved() && !tab.impossible() => {}
            Ok(tab) => fails.push(format!("{name}: total {} located {:?}", tab.final_total, tab.located)),
            Err(e) => fails.push(format!("{name}: {e}")),
        }
        match find_reducible(g) {
            Ok(c) => {
                if let Err(e) = c.validate(g) {
                    fails.push(format!("{name}: located config invalid: {e}"));
                }
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "{} triangulations audited, {} failures {}",
            corpus.len(),
            fails.len(),
            first_failure(&fails)
        ),
    )
}

fn criterion_8(dir: &Path, corpus: &[(String, NearTriangulation)]) -> Outcome {
    let mut fails = Vec::new();
    let runs: [&[&str]; 4] = [
        &["gen", "--family", "stacked", "--n", "300", "--seed", "11"],
        &["gen", "--family", "double-wheel", "--n", "40"],
        &["gen", "--family", "stellate", "--n", "25", "--seed", "3"],
        &["gen", "--family", "solid", "--name", "octahedron"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let a = format!("g{i}a.rot");
        let b = format!("g{i}b.rot");
        run_cli(dir, &[&args[..], &["-o", &a]].concat());
        run_cli(dir, &[&args[..], &["-o", &b]].concat());
        let (ta, tb) = (read(dir, &a), read(dir, &b));
        if ta.is_empty() || ta != tb {
            fails.push(format!("{args:?}: .rot differs"));
        }
        for profile in ["2,6", "3,2", "4,1"] {
            let mut outs = Vec::new();
            for k in 0..2 {
                let o = format!("g{i}_{k}.dh");
                run_cli(dir, &["decompose", "--profile", profile, &a, "-o", &o]);
                outs.push(read(dir, &o));
            }
            if outs[0].is_empty() || outs[0] != outs[1] {
                fails.push(format!("{args:?} {profile}: .dh differs"));
            }
        }
    }
    let mut trips = 0;
    for (name, t) in corpus {
        let text = emit_near(t);
        match parse_rot(&text) {
            Ok(f) => {
                let back = emit_near(&f.near_triangulation().unwrap());
                if back != text || f.near_triangulation().as_ref() != Ok(t) {
                    fails.push(format!("{name}: .rot round trip"));
                }
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
        if t.n() <= 300 {
            let p = decompose41(t.graph()).unwrap().pair;
            let dh = emit_dh(&p, 4, 1, None);
            match parse_dh(&dh) {
                Ok(f) if f.pair == p && emit_dh(&f.pair, f.d, f.h, None) == dh => {}
                _ => fails.push(format!("{name}: .dh round trip")),
            }
        }
        trips += 1;
    }
    outcome(
        fails.is_empty(),
        format!(
            "{} CLI runs repeated, {trips} round trips, {} failures {}",
            runs.len() * 4,
            fails.len(),
            first_failure(&fails)
        ),
    )
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_default()
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let dir = tempfile::TempDir::new().unwrap();
    let corpus = corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("(4,1) decomposition", Box::new(|| criterion_1(&corpus))),
        ("(3,2) decomposition", Box::new(|| criterion_2(&corpus))),
        ("(2,6) decomposition and root swap", Box::new(|| criterion_3(&corpus))),
        ("oracle cross-validation", Box::new(criterion_4)),
        ("icosahedron sharpness", Box::new(criterion_5)),
        ("stellation family", Box::new(|| criterion_6(dir.path()))),
        ("discharging audit", Box::new(|| criterion_7(&corpus))),
        ("determinism and round trips", Box::new(|| criterion_8(dir.path(), &corpus))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        println!(
            "criterion {} {name}: {} [{:.1?}] {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail.trim_end()
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
